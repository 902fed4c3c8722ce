//! The log de Rham complex of a chart, its slices by multidegree, and the
//! cohomology of its completion along a subscheme.
//!
//! A chart has a toric part, a coefficient monoid `Q ⊂ ℤ^d` together with a
//! lattice whose basis `e_1, …, e_k` gives the dlog forms (`d χ^m = Σ c_j(m)
//! χ^m e_j` with `c(m)` the coordinates of `m`), and a list of extra
//! coordinates `u_l`. A `Smooth(c)` coordinate is `z = c + u` with form `dz`;
//! a `ShiftedLog(c)` coordinate is an invertible logged function `x = c + u`
//! with form `dlog x`, so `d u = (c + u) dlog x`. Optional polynomial
//! variables `T_i` with `d T_i = e_{j(i)}` give the stalk model.
//!
//! The subscheme is a monomial ideal `ℐ` of `Q × ℕ^c`. At truncation level
//! `n` the degree `q` space has coefficients modulo `ℐ^{n−q}`, which makes
//! every level an honest complex since `d(ℐ^r) ⊆ ℐ^{r−1} ω¹`.
//!
//! The differential preserves the toric exponent and, for coordinates
//! `Smooth(0)`, the exponent plus the number of `dz_l` factors. These form
//! the slice key; every level splits into finite slices.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::complex::{ChainMap, GradedComplex};
use crate::linalg::rational::RationalMatrix;
use crate::linalg::rational::{q, Q};
use crate::linalg::tower::{tower_cohomology_lazy, Direction, TowerCohomology};
use crate::monoid::{subsets, FsMonoid, Lattice, MonoidIdeal};
use crate::scene::{LogScene, Subscheme};

#[derive(Clone, Debug, PartialEq)]
pub enum Coordinate {
    Smooth(Q),
    ShiftedLog(Q),
}

impl Coordinate {
    fn is_keyed(&self) -> bool {
        matches!(self, Coordinate::Smooth(c) if c.is_zero())
    }
}

/// `χ^m u^a T^β ω_J`: `exponent = (m, a)`, `forms = J` sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormBasis {
    pub exponent: Vec<i64>,
    pub forms: Vec<usize>,
    pub t: Vec<u32>,
}

impl FormBasis {
    pub fn degree(&self) -> usize {
        self.forms.len()
    }

    pub fn t_degree(&self) -> usize {
        self.t.iter().map(|&b| b as usize).sum()
    }
}

/// A finite linear combination of basis forms.
pub type FormVector = BTreeMap<FormBasis, Q>;

#[derive(Clone, Debug)]
pub struct FormModel {
    toric: FsMonoid,
    lattice: Lattice,
    coords: Vec<Coordinate>,
    ideal: MonoidIdeal,
    t_vars: Vec<usize>,
    t_min: usize,
    t_max: usize,
}

impl FormModel {
    pub fn new(
        toric: FsMonoid,
        lattice: Lattice,
        coords: Vec<Coordinate>,
        ideal_generators: Vec<Vec<i64>>,
    ) -> Result<Self> {
        if lattice.ambient_rank != toric.ambient_rank() {
            return Err(Error::ShapeMismatch("form lattice and coefficient monoid live in different ℤ^d".into()));
        }
        for g in toric.generators() {
            if !lattice.contains(g) {
                return Err(Error::ShapeMismatch(format!("coefficient generator {g:?} outside the form lattice")));
            }
        }
        let combined = toric.with_free_factor(coords.len());
        let ideal = MonoidIdeal::new(combined, ideal_generators)?;
        Ok(Self { toric, lattice, coords, ideal, t_vars: Vec::new(), t_min: 0, t_max: 0 })
    }

    /// Chart of a scene. Monomial scenes use `P` with its group and `s`
    /// coordinates `Smooth(0)`. A translated point over a free `P` keeps the
    /// vanishing logged coordinates as the toric part `ℕ^v` and turns the
    /// others into shifted coordinates; `ℐ` is the maximal ideal of the point.
    pub fn for_scene(scene: &LogScene) -> Result<Self> {
        match &scene.subscheme {
            Subscheme::Monomial(ideal) => Self::new(
                scene.monoid.clone(),
                scene.monoid.groupify(),
                vec![Coordinate::Smooth(Q::zero()); scene.smooth_vars],
                ideal.generators().to_vec(),
            ),
            Subscheme::FatPoint(point) => {
                let vanishing = point.vanishing_log();
                let v = vanishing.len();
                let mut coords: Vec<Coordinate> = (0..point.log_values.len())
                    .filter(|i| !vanishing.contains(i))
                    .map(|i| Coordinate::ShiftedLog(point.log_values[i].clone()))
                    .collect();
                coords.extend(point.smooth_values.iter().map(|c| Coordinate::Smooth(c.clone())));
                let toric = FsMonoid::free(v);
                let lattice = toric.groupify();
                let combined = toric.with_free_factor(coords.len());
                let gens = combined.generators().to_vec();
                Self::new(toric, lattice, coords, gens)
            }
        }
    }

    /// Adds variables `T_i` with `d T_i = e_{vars[i]}`, keeping `T`-degrees in `t_min..=t_max`.
    pub fn with_t_variables(mut self, vars: Vec<usize>, t_min: usize, t_max: usize) -> Self {
        self.t_vars = vars;
        self.t_min = t_min;
        self.t_max = t_max;
        self
    }

    pub fn toric(&self) -> &FsMonoid {
        &self.toric
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coordinates(&self) -> &[Coordinate] {
        &self.coords
    }

    pub fn ideal(&self) -> &MonoidIdeal {
        &self.ideal
    }

    pub fn log_rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn omega_rank(&self) -> usize {
        self.log_rank() + self.coords.len()
    }

    /// Length of exponent vectors.
    pub fn exponent_len(&self) -> usize {
        self.toric.ambient_rank() + self.coords.len()
    }

    pub fn form_label(&self, j: usize) -> String {
        let k = self.log_rank();
        if j < k {
            format!("dlog t{}", j + 1)
        } else {
            match self.coords[j - k] {
                Coordinate::Smooth(_) => format!("dz{}", j - k + 1),
                Coordinate::ShiftedLog(_) => format!("dlog x{}", j - k + 1),
            }
        }
    }

    /// Slice key of a basis element.
    pub fn key_of(&self, b: &FormBasis) -> Vec<i64> {
        let d = self.toric.ambient_rank();
        let k = self.log_rank();
        let mut key = b.exponent.clone();
        for (l, c) in self.coords.iter().enumerate() {
            key[d + l] = if c.is_keyed() { b.exponent[d + l] + i64::from(b.forms.contains(&(k + l))) } else { 0 };
        }
        key
    }

    /// `d(χ^m)` as coordinates on the toric form basis.
    pub fn toric_weights(&self, m: &[i64]) -> Result<Vec<i64>> {
        self.lattice.coordinates(m).ok_or_else(|| Error::NotInMonoid(m.to_vec()))
    }

    /// Untruncated differential of a basis element.
    pub fn differential(&self, b: &FormBasis) -> Result<FormVector> {
        let d = self.toric.ambient_rank();
        let k = self.log_rank();
        let mut out = FormVector::new();
        let m = &b.exponent[..d];
        for (j, w) in self.toric_weights(m)?.into_iter().enumerate() {
            if w != 0 {
                push_wedge(&mut out, b.exponent.clone(), &b.forms, j, b.t.clone(), q(w));
            }
        }
        for (l, c) in self.coords.iter().enumerate() {
            let a = b.exponent[d + l];
            if a == 0 {
                continue;
            }
            let mut lowered = b.exponent.clone();
            lowered[d + l] -= 1;
            match c {
                Coordinate::Smooth(_) => push_wedge(&mut out, lowered, &b.forms, k + l, b.t.clone(), q(a)),
                Coordinate::ShiftedLog(c) => {
                    push_wedge(&mut out, lowered, &b.forms, k + l, b.t.clone(), q(a) * c);
                    push_wedge(&mut out, b.exponent.clone(), &b.forms, k + l, b.t.clone(), q(a));
                }
            }
        }
        for (i, &j) in self.t_vars.iter().enumerate() {
            let beta = b.t[i];
            if beta == 0 {
                continue;
            }
            let mut t = b.t.clone();
            t[i] -= 1;
            push_wedge(&mut out, b.exponent.clone(), &b.forms, j, t, q(i64::from(beta)));
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// `ord(m, a)`: the largest `r` with `χ^m u^a ∈ ℐ^r`, `None` outside `Q × ℕ^c`.
    pub fn adic_order(&self, exponent: &[i64], memo: &mut HashMap<Vec<i64>, Option<usize>>) -> Result<Option<usize>> {
        self.ideal.adic_order_memo(exponent, memo)
    }

    /// Basis of the key-`key` slice at level `n`, per degree `0..=rank ω¹`.
    pub fn slice_basis(&self, key: &[i64], n: usize) -> Result<Vec<Vec<FormBasis>>> {
        let d = self.toric.ambient_rank();
        let k = self.log_rank();
        let rank = self.omega_rank();
        let unkeyed: Vec<usize> = (0..self.coords.len()).filter(|&l| !self.coords[l].is_keyed()).collect();
        let t_exps = t_exponents(self.t_vars.len(), self.t_min, self.t_max);
        let mut memo = HashMap::new();
        let mut bases = vec![Vec::new(); rank + 1];
        for (qdeg, basis) in bases.iter_mut().enumerate() {
            if qdeg >= n {
                continue;
            }
            let bound = n - qdeg;
            for forms in subsets(rank, qdeg) {
                let mut exponent = key.to_vec();
                let mut ok = true;
                for (l, c) in self.coords.iter().enumerate() {
                    if c.is_keyed() && forms.contains(&(k + l)) {
                        exponent[d + l] -= 1;
                        ok &= exponent[d + l] >= 0;
                    }
                }
                if !ok {
                    continue;
                }
                for free in bounded_tuples(unkeyed.len(), bound) {
                    let mut e = exponent.clone();
                    for (i, &l) in unkeyed.iter().enumerate() {
                        e[d + l] = free[i];
                    }
                    match self.adic_order(&e, &mut memo)? {
                        Some(o) if o < bound => {}
                        _ => continue,
                    }
                    for t in &t_exps {
                        basis.push(FormBasis { exponent: e.clone(), forms: forms.clone(), t: t.clone() });
                    }
                }
            }
        }
        Ok(bases)
    }

    /// The complex spanned by the given bases, with the differential
    /// projected onto them (terms outside are dropped).
    pub fn complex_on(&self, bases: Vec<Vec<FormBasis>>) -> Result<GradedComplex<FormBasis>> {
        let mut differentials = Vec::with_capacity(bases.len().saturating_sub(1));
        for qdeg in 0..bases.len().saturating_sub(1) {
            let index: HashMap<&FormBasis, usize> = bases[qdeg + 1].iter().enumerate().map(|(i, b)| (b, i)).collect();
            let mut m = RationalMatrix::zeros(bases[qdeg + 1].len(), bases[qdeg].len());
            for (col, b) in bases[qdeg].iter().enumerate() {
                for (target, c) in self.differential(b)? {
                    if let Some(&row) = index.get(&target) {
                        m.add_to(row, col, &c);
                    }
                }
            }
            differentials.push(m);
        }
        GradedComplex::new(0, bases, differentials)
    }

    pub fn slice_complex(&self, key: &[i64], n: usize) -> Result<GradedComplex<FormBasis>> {
        self.complex_on(self.slice_basis(key, n)?)
    }

    /// Stabilized cohomology of the tower `n ↦ slice(key, n)`.
    pub fn slice_tower(&self, key: &[i64], max_level: usize, window: usize) -> Result<TowerCohomology> {
        self.filtered_slice_tower(key, max_level, window, &|_| true)
    }

    /// Tower of the subcomplexes spanned by the basis elements passing `keep`
    /// (which must be closed under the differential).
    pub fn filtered_slice_tower(
        &self,
        key: &[i64],
        max_level: usize,
        window: usize,
        keep: &(dyn Fn(&FormBasis) -> bool + Sync),
    ) -> Result<TowerCohomology> {
        let mut levels: Vec<GradedComplex<FormBasis>> = Vec::new();
        let levels_ref = std::cell::RefCell::new(&mut levels);
        // below this level some form degrees are still empty
        let first = (self.omega_rank() + 1).min(max_level);
        tower_cohomology_lazy(
            first,
            max_level,
            Direction::Inverse,
            window,
            |n| {
                let mut bases = self.slice_basis(key, n)?;
                for b in bases.iter_mut() {
                    b.retain(|x| keep(x));
                }
                let c = self.complex_on(bases)?;
                levels_ref.borrow_mut().push(c.clone());
                Ok(c)
            },
            |n| {
                let levels = levels_ref.borrow();
                let upper = &levels[n + 1 - first];
                let lower = &levels[n - first];
                ChainMap::by_labels(upper, lower)
            },
        )
    }

    /// Keys whose combined grading degree is at most `max_degree`.
    pub fn keys_up_to_degree(&self, max_degree: i64) -> Result<Vec<Vec<i64>>> {
        let d = self.toric.ambient_rank();
        let combined = self.ideal.parent();
        let mut keys: Vec<Vec<i64>> = combined
            .elements_up_to_degree(max_degree)?
            .into_iter()
            .map(|mut e| {
                for (l, c) in self.coords.iter().enumerate() {
                    if !c.is_keyed() {
                        e[d + l] = 0;
                    }
                }
                e
            })
            .collect();
        keys.sort();
        keys.dedup();
        Ok(keys)
    }

    /// Sum over the scanned keys of the stabilized slice cohomology.
    pub fn completed_cohomology(&self, max_level: usize, window: usize) -> Result<CompletedCohomology> {
        let max_degree = self.ideal.max_generator_degree().max(1);
        let keys = self.keys_up_to_degree(max_degree)?;
        let per_key: Vec<Result<(Vec<i64>, TowerCohomology)>> =
            keys.par_iter().map(|key| Ok((key.clone(), self.slice_tower(key, max_level, window)?))).collect();
        let mut dims = vec![0; self.omega_rank() + 1];
        let mut stabilized_at = 1;
        let mut contributions = Vec::new();
        for r in per_key {
            let (key, h) = r?;
            for (qdeg, dim) in dims.iter_mut().enumerate() {
                *dim += h.dim(qdeg as i32);
            }
            stabilized_at = stabilized_at.max(h.stabilized_at);
            if h.dims.iter().any(|&x| x > 0) {
                contributions.push((key, h.dims.clone()));
            }
        }
        Ok(CompletedCohomology { dims, stabilized_at, scanned_keys: keys.len(), contributions })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletedCohomology {
    pub dims: Vec<usize>,
    /// Largest stabilization level over all scanned slices.
    pub stabilized_at: usize,
    pub scanned_keys: usize,
    /// Keys with nonzero stabilized cohomology and their dims.
    pub contributions: Vec<(Vec<i64>, Vec<usize>)>,
}

/// `out += c · χ^e T^t (e_j ∧ ω_J)`.
fn push_wedge(out: &mut FormVector, exponent: Vec<i64>, forms: &[usize], j: usize, t: Vec<u32>, c: Q) {
    let Some((sign, forms)) = wedge_front(j, forms) else {
        return;
    };
    let c = if sign < 0 { -c } else { c };
    *out.entry(FormBasis { exponent, forms, t }).or_insert_with(Q::zero) += c;
}

/// `e_j ∧ e_J = sign · e_{J ∪ j}`, or `None` if `j ∈ J`.
pub fn wedge_front(j: usize, forms: &[usize]) -> Option<(i32, Vec<usize>)> {
    if forms.contains(&j) {
        return None;
    }
    let before = forms.iter().filter(|&&x| x < j).count();
    let mut out = forms.to_vec();
    out.insert(before, j);
    Some((if before % 2 == 0 { 1 } else { -1 }, out))
}

/// Sign sorting a list of distinct indices, and the sorted list.
pub fn sort_with_sign(indices: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

fn t_exponents(vars: usize, t_min: usize, t_max: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in t_min..=t_max {
        for tuple in bounded_tuples(vars, total + 1) {
            if tuple.iter().sum::<i64>() as usize == total {
                out.push(tuple.iter().map(|&x| x as u32).collect());
            }
        }
    }
    out
}

/// Tuples in `ℕ^len` with coordinate sum `< bound`, in lexicographic order.
fn bounded_tuples(len: usize, bound: usize) -> Vec<Vec<i64>> {
    if bound == 0 {
        return Vec::new();
    }
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            let used: i64 = t.iter().sum();
            for x in 0..(bound as i64 - used) {
                let mut u: Vec<i64> = t.clone();
                u.push(x);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Description of `ω¹` for a scene.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaDescription {
    pub log_rank: usize,
    pub smooth_rank: usize,
    pub rank: usize,
    pub labels: Vec<String>,
}

pub fn build_omega(scene: &LogScene) -> Result<OmegaDescription> {
    let model = FormModel::for_scene(scene)?;
    // d² = 0 on the degree-0 generators χ^g
    for g in model.toric.generators() {
        let mut e = g.clone();
        e.extend(std::iter::repeat_n(0, model.coords.len()));
        let b = FormBasis { exponent: e, forms: Vec::new(), t: Vec::new() };
        let mut dd = FormVector::new();
        for (term, c) in model.differential(&b)? {
            for (t2, c2) in model.differential(&term)? {
                *dd.entry(t2).or_insert_with(Q::zero) += c.clone() * c2;
            }
        }
        if dd.values().any(|c| !c.is_zero()) {
            return Err(Error::NotAComplex { degree: 0 });
        }
    }
    let labels = (0..model.omega_rank()).map(|j| model.form_label(j)).collect();
    Ok(OmegaDescription {
        log_rank: scene.log_rank(),
        smooth_rank: scene.smooth_vars,
        rank: scene.omega_rank(),
        labels,
    })
}

/// The multidegree-`key` piece of `ω^• ⊗ O/ℐ^n` for a monomial scene.
pub fn slice_complex(scene: &LogScene, key: &[i64], n: usize) -> Result<GradedComplex<FormBasis>> {
    scene.monomial_ideal()?;
    FormModel::for_scene(scene)?.slice_complex(key, n)
}

/// Dimensions of `ℍ^q(Y, ω^•_{X|̂Y})`, `q = 0..=rank ω¹`.
pub fn completed_cohomology(scene: &LogScene) -> Result<CompletedCohomology> {
    FormModel::for_scene(scene)?.completed_cohomology(scene.options.truncation, scene.options.window)
}

/// `C(ρ, q)` for `q = 0..=max_q`.
pub fn binomial_dims(rho: usize, max_q: usize) -> Vec<usize> {
    (0..=max_q).map(|qdeg| binomial(rho, qdeg)).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim ⋀^q` of the characteristic lattice at the stratum where the
/// generators indexed by `vanishing` vanish, for `q = 0..=rank ω¹`.
pub fn expected_stalk_dims(scene: &LogScene, vanishing: &[usize]) -> Result<Vec<usize>> {
    let gens = scene.monoid.generators().len();
    let face: Vec<usize> = (0..gens).filter(|i| !vanishing.contains(i)).collect();
    let prime = crate::monoid::MonoidPrime::new(scene.monoid.clone(), face)?;
    let rho = crate::monoid::prime_quotient(&prime)?.free_rank;
    Ok(binomial_dims(rho, scene.omega_rank()))
}

/// `ρ` at the point of a scene: vanishing logged coordinates of a fat point,
/// or the full rank of `P^gp` when `Y` is supported at the deep point.
pub fn point_rank(scene: &LogScene) -> Option<usize> {
    match &scene.subscheme {
        Subscheme::FatPoint(p) => Some(p.vanishing_log().len()),
        Subscheme::Monomial(ideal) => supported_at_deep_point(ideal).then(|| scene.log_rank()),
    }
}

/// Whether `√ℐ` is the maximal ideal of `P × ℕ^s`: every generator has a
/// multiple in `ℐ`.
pub fn supported_at_deep_point(ideal: &MonoidIdeal) -> bool {
    let combined = ideal.parent();
    let bound = 1 + ideal.max_generator_degree().max(1) as usize * 2;
    combined.generators().iter().all(|g| {
        (1..=bound as i64).any(|k| {
            let v: Vec<i64> = g.iter().map(|x| x * k).collect();
            ideal.contains(&v).unwrap_or(false)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::q_frac;

    fn quadric() -> FsMonoid {
        FsMonoid::new(2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap()
    }

    #[test]
    fn omega_ranks() {
        let s = LogScene::ncd_origin(2, 2).unwrap();
        let o = build_omega(&s).unwrap();
        assert_eq!(o.rank, 2);
        assert_eq!(o.labels, vec!["dlog t1", "dlog t2"]);
        let s = LogScene::ncd_origin(2, 1).unwrap();
        assert_eq!(build_omega(&s).unwrap().labels, vec!["dlog t1", "dz1"]);
        let s = LogScene::monomial(quadric(), 0, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        assert_eq!(build_omega(&s).unwrap().rank, 2);
    }

    #[test]
    fn differential_of_a_monomial() {
        let s = LogScene::ncd_origin(2, 2).unwrap();
        let m = FormModel::for_scene(&s).unwrap();
        let b = FormBasis { exponent: vec![3, 5], forms: vec![], t: vec![] };
        let d = m.differential(&b).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[&FormBasis { exponent: vec![3, 5], forms: vec![0], t: vec![] }], q(3));
        assert_eq!(d[&FormBasis { exponent: vec![3, 5], forms: vec![1], t: vec![] }], q(5));
    }

    #[test]
    fn line_slices() {
        let s = LogScene::ncd_origin(1, 1).unwrap();
        let c = slice_complex(&s, &[0], 4).unwrap();
        assert_eq!(c.cohomology().dims(), vec![1, 1]);
        let c = slice_complex(&s, &[3], 5).unwrap();
        assert_eq!(c.cohomology().dims(), vec![0, 0]);
        let s = LogScene::ncd_origin(2, 2).unwrap();
        let c = slice_complex(&s, &[0, 0], 4).unwrap();
        assert_eq!((0..=2).map(|q| c.dim(q)).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!(c.cohomology().dims(), vec![1, 2, 1]);
    }

    #[test]
    fn fat_point_scene_is_not_monomial() {
        let s = LogScene::fat_point(FsMonoid::free(1), vec![q(0)], vec![q(1)]).unwrap();
        assert_eq!(slice_complex(&s, &[0], 3).unwrap_err(), Error::NotMonomial);
    }

    #[test]
    fn torus_scenes() {
        for r in 1..=3 {
            let s = LogScene::ncd_origin(r, r).unwrap();
            let h = completed_cohomology(&s).unwrap();
            assert_eq!(h.dims, binomial_dims(r, r), "r = {r}");
            assert_eq!(h.contributions.len(), 1);
        }
    }

    #[test]
    fn quadric_cone_origin() {
        let s = LogScene::monomial(quadric(), 0, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        assert_eq!(completed_cohomology(&s).unwrap().dims, vec![1, 2, 1]);
    }

    #[test]
    fn translated_points() {
        // x logged and vanishing, y smooth with y = 1
        let s = LogScene::fat_point(FsMonoid::free(1), vec![q(0)], vec![q(1)]).unwrap();
        let h = completed_cohomology(&s).unwrap();
        assert_eq!(h.dims, vec![1, 1, 0]);
        assert!(h.stabilized_at <= 8);
        // both logged, y = 1 invertible
        let s = LogScene::fat_point(FsMonoid::free(2), vec![q(0), q(1)], vec![]).unwrap();
        assert_eq!(completed_cohomology(&s).unwrap().dims, vec![1, 1, 0]);
        // every logged coordinate invertible: classical formal de Rham
        let s = LogScene::fat_point(FsMonoid::free(2), vec![q(2), q_frac(-1, 3)], vec![q(0)]).unwrap();
        assert_eq!(completed_cohomology(&s).unwrap().dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn union_of_axes() {
        let s = LogScene::ncd(2, 2, vec![vec![1, 1]]).unwrap();
        assert_eq!(completed_cohomology(&s).unwrap().dims, vec![1, 2, 1]);
        let s = LogScene::ncd(3, 2, vec![vec![1, 1, 0]]).unwrap();
        assert_eq!(completed_cohomology(&s).unwrap().dims, vec![1, 2, 1, 0]);
    }

    #[test]
    fn stalk_dims() {
        let s = LogScene::ncd_origin(2, 2).unwrap();
        assert_eq!(expected_stalk_dims(&s, &[0, 1]).unwrap(), vec![1, 2, 1]);
        assert_eq!(expected_stalk_dims(&s, &[0]).unwrap(), vec![1, 1, 0]);
        assert_eq!(expected_stalk_dims(&s, &[]).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn sorting_signs() {
        assert_eq!(sort_with_sign(&[1, 0]), Some((-1, vec![0, 1])));
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((1, vec![0, 1, 2])));
        assert_eq!(sort_with_sign(&[1, 1]), None);
        assert_eq!(wedge_front(1, &[0, 2]), Some((-1, vec![0, 1, 2])));
    }
}
