//! Weight filtration on log forms along a normal crossing divisor, the
//! formal Poincaré residue onto the strata `D_σ` and its inverse.
//!
//! Coordinates `z_1, …, z_r` are logged (`D = {z_1⋯z_r = 0}`) and
//! `z_{r+1}, …, z_n` are not. A basis form `z^e ω_J` has a pole at `i < r`
//! when `dlog z_i` occurs in `J` and `e_i = 0`; otherwise `z_i dlog z_i = dz_i`.
//! `W_k` is spanned by basis forms with at most `k` poles, and since `d`
//! preserves the pole set, `Gr^W_k` is the span of those with exactly `k`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::derham::{binomial, sort_with_sign, Coordinate, FormBasis, FormModel, FormVector};
use crate::error::{Error, Result};
use crate::linalg::complex::{verify_chain_map, ChainMap, GradedComplex};
use crate::linalg::rational::{RationalMatrix, Q};
use crate::monoid::{subsets, FsMonoid};
use crate::scene::LogScene;

/// A stratum form tagged with its (sorted) stratum `σ`.
pub type StratumForm = (Vec<usize>, FormBasis);

pub type ResidueVector = BTreeMap<StratumForm, Q>;

/// `+1` for sorted `σ`, otherwise the sign of the sorting permutation;
/// `None` for repeated indices.
pub fn orientation(sigma: &[usize]) -> Option<(i32, Vec<usize>)> {
    sort_with_sign(sigma)
}

/// `𝔸^n` with `r` logged coordinates, completed along a monomial ideal of
/// `ℕ^n` (possibly zero, as happens on strata contained in `Y`).
#[derive(Clone, Debug)]
pub struct NcdChart {
    n: usize,
    r: usize,
    ideal: Vec<Vec<i64>>,
    model: FormModel,
}

impl NcdChart {
    pub fn new(n: usize, r: usize, ideal_generators: Vec<Vec<i64>>) -> Result<Self> {
        if r > n {
            return Err(Error::Validation(format!("{r} logged coordinates among {n}")));
        }
        let toric = FsMonoid::free(r);
        let lattice = toric.groupify();
        let model =
            FormModel::new(toric, lattice, vec![Coordinate::Smooth(Q::zero()); n - r], ideal_generators.clone())?;
        Ok(Self { n, r, ideal: ideal_generators, model })
    }

    /// An NCD scene: `P = ℕ^r` with its standard generators in order.
    pub fn from_scene(scene: &LogScene) -> Result<Self> {
        let r = scene.monoid.ambient_rank();
        if scene.monoid.generators() != FsMonoid::free(r).generators() {
            return Err(Error::UnsupportedScene(
                "weights and residues need P = ℕ^r with its standard generators".into(),
            ));
        }
        Self::new(r + scene.smooth_vars, r, scene.monomial_ideal()?.generators().to_vec())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn model(&self) -> &FormModel {
        &self.model
    }

    pub fn ideal_generators(&self) -> &[Vec<i64>] {
        &self.ideal
    }

    pub fn poles(&self, b: &FormBasis) -> Vec<usize> {
        b.forms.iter().copied().filter(|&j| j < self.r && b.exponent[j] == 0).collect()
    }

    pub fn pole_count(&self, b: &FormBasis) -> usize {
        self.poles(b).len()
    }

    /// `D_σ` completed along `Y ∩ D_σ`: coordinates `[n] ∖ σ`, logged
    /// `[r] ∖ σ`, ideal generated by the generators not involving `σ`.
    pub fn stratum(&self, sigma: &[usize]) -> Result<NcdChart> {
        let gens =
            self.ideal.iter().filter(|g| sigma.iter().all(|&i| g[i] == 0)).map(|g| drop_coords(g, sigma)).collect();
        NcdChart::new(self.n - sigma.len(), self.r - sigma.len(), gens)
    }

    /// Basis of `Ŵ_k ∩ ω^q` in the slice `key` at level `level`.
    pub fn weight_filtration(&self, q: usize, k: i64, key: &[i64], level: usize) -> Result<Vec<FormBasis>> {
        if k < 0 {
            return Ok(Vec::new());
        }
        let bases = self.model.slice_basis(key, level)?;
        Ok(bases.get(q).cloned().unwrap_or_default().into_iter().filter(|b| self.pole_count(b) <= k as usize).collect())
    }

    /// `Gr^W_k` of a slice.
    pub fn gr_complex(&self, k: usize, key: &[i64], level: usize) -> Result<GradedComplex<FormBasis>> {
        let mut bases = self.model.slice_basis(key, level)?;
        for b in bases.iter_mut() {
            b.retain(|x| self.pole_count(x) == k);
        }
        self.model.complex_on(bases)
    }

    fn stratum_index(&self, sigma: &[usize], j: usize) -> usize {
        if j < self.r {
            j - sigma.iter().filter(|&&s| s < j).count()
        } else {
            j - sigma.len()
        }
    }

    fn lift_from_stratum(&self, sigma: &[usize], j: usize) -> usize {
        let logged = self.r - sigma.len();
        if j < logged {
            (0..self.r).filter(|i| !sigma.contains(i)).nth(j).expect("index in range")
        } else {
            j + sigma.len()
        }
    }

    /// Residue of one basis form with exactly `k` poles, with its sign.
    fn residue_basis(&self, b: &FormBasis) -> (i32, StratumForm) {
        let sigma = self.poles(b);
        let mut order: Vec<usize> = b.forms.iter().copied().filter(|j| !sigma.contains(j)).collect();
        order.extend(&sigma);
        let (sign, _) = sort_with_sign(&order).expect("distinct form indices");
        let rest: Vec<usize> =
            b.forms.iter().copied().filter(|j| !sigma.contains(j)).map(|j| self.stratum_index(&sigma, j)).collect();
        let exponent = drop_coords(&b.exponent, &sigma);
        (sign, (sigma, FormBasis { exponent, forms: rest, t: b.t.clone() }))
    }

    /// Writes each term as `η ∧ dlog z_σ` and restricts `η` to `D_σ`. Terms
    /// in `W_{k−1}` go to zero.
    pub fn residue(&self, k: usize, v: &FormVector) -> Result<ResidueVector> {
        let mut out = ResidueVector::new();
        for (b, c) in v {
            let poles = self.pole_count(b);
            if poles > k {
                return Err(Error::NotInGr(format!("form with {poles} poles is not in W_{k}")));
            }
            if poles < k || c.is_zero() {
                continue;
            }
            let (sign, target) = self.residue_basis(b);
            let entry = out.entry(target.clone()).or_insert_with(Q::zero);
            *entry += if sign < 0 { -c.clone() } else { c.clone() };
            if entry.is_zero() {
                out.remove(&target);
            }
        }
        Ok(out)
    }

    /// `η ⊗ or(σ) ↦ η̃ ∧ dlog z_σ` for a pole-free form `η` on `D_σ`.
    pub fn rho_bar(&self, sigma: &[usize], eta: &FormBasis, c: &Q) -> Result<FormVector> {
        let (or_sign, sorted) =
            orientation(sigma).ok_or_else(|| Error::Validation(format!("repeated index in stratum {sigma:?}")))?;
        let stratum = self.stratum(&sorted)?;
        if stratum.pole_count(eta) > 0 {
            return Err(Error::NotInGr(format!("{eta:?} has poles on D_{sorted:?}")));
        }
        let mut exponent = Vec::with_capacity(self.n);
        let mut it = eta.exponent.iter();
        for i in 0..self.n {
            exponent.push(if sorted.contains(&i) { 0 } else { *it.next().expect("stratum exponent length") });
        }
        let mut forms: Vec<usize> = eta.forms.iter().map(|&j| self.lift_from_stratum(&sorted, j)).collect();
        forms.extend(&sorted);
        let (sign, forms) = sort_with_sign(&forms).expect("distinct form indices");
        let coefficient = if sign * or_sign < 0 { -c.clone() } else { c.clone() };
        Ok(FormVector::from([(FormBasis { exponent, forms, t: eta.t.clone() }, coefficient)]))
    }

    /// Keys with `|κ| ≤ max_degree` in `ℕ^n`.
    pub fn keys(&self, max_degree: i64) -> Result<Vec<Vec<i64>>> {
        self.model.keys_up_to_degree(max_degree)
    }

    /// `⊕_{|σ| = k} Ω^{•−k}` of the strata through the slice `key`, placed
    /// in total degrees, at source level `level`.
    pub fn stratum_complex(&self, k: usize, key: &[i64], level: usize) -> Result<GradedComplex<StratumForm>> {
        let zero_log: Vec<usize> = (0..self.r).filter(|&i| key[i] == 0).collect();
        let mut pieces = Vec::new();
        for chosen in subsets(zero_log.len(), k) {
            let sigma: Vec<usize> = chosen.iter().map(|&i| zero_log[i]).collect();
            let stratum = self.stratum(&sigma)?;
            let skey = drop_coords(key, &sigma);
            let mut bases =
                if level > k { stratum.model.slice_basis(&skey, level - k)? } else { vec![Vec::new(); self.n - k + 1] };
            for b in bases.iter_mut() {
                b.retain(|x| stratum.pole_count(x) == 0);
            }
            let c = stratum.model.complex_on(bases)?;
            pieces.push((sigma, c));
        }
        let mut bases: Vec<Vec<StratumForm>> = vec![Vec::new(); self.n + 1];
        for (sigma, c) in &pieces {
            for qdeg in c.degrees() {
                for b in c.basis(qdeg).unwrap_or(&[]) {
                    bases[qdeg as usize + k].push((sigma.clone(), b.clone()));
                }
            }
        }
        let mut differentials = Vec::new();
        for p in 0..self.n {
            let mut m = RationalMatrix::zeros(bases[p + 1].len(), bases[p].len());
            let mut row_offset = 0;
            let mut col_offset = 0;
            for (_, c) in &pieces {
                let (rows, cols) = if p >= k { (c.dim((p - k + 1) as i32), c.dim((p - k) as i32)) } else { (0, 0) };
                if p >= k && rows > 0 && cols > 0 {
                    let d = c.differential((p - k) as i32);
                    for i in 0..rows {
                        for j in 0..cols {
                            let x = d.get(i, j);
                            if !x.is_zero() {
                                m.set(row_offset + i, col_offset + j, x.clone());
                            }
                        }
                    }
                }
                row_offset += rows;
                col_offset += cols;
            }
            differentials.push(m);
        }
        if k > 0 {
            for d in differentials.iter_mut().take(k - 1) {
                *d = RationalMatrix::zeros(d.rows(), d.cols());
            }
        }
        GradedComplex::new(0, bases, differentials)
    }

    /// Matrix of the residue from `Gr^W_k` of a slice onto the stratum complex.
    pub fn residue_map(
        &self,
        k: usize,
        source: &GradedComplex<FormBasis>,
        target: &GradedComplex<StratumForm>,
    ) -> Result<ChainMap> {
        let mut components = Vec::new();
        for qdeg in source.degrees() {
            let src = source.basis(qdeg).unwrap_or(&[]);
            let dst = target.basis(qdeg).unwrap_or(&[]);
            let index: HashMap<&StratumForm, usize> = dst.iter().enumerate().map(|(i, l)| (l, i)).collect();
            let mut m = RationalMatrix::zeros(dst.len(), src.len());
            for (col, b) in src.iter().enumerate() {
                let image = self.residue(k, &FormVector::from([(b.clone(), Q::one())]))?;
                for (t, c) in image {
                    let row = *index.get(&t).ok_or_else(|| {
                        Error::ShapeMismatch(format!("residue of {b:?} lands outside the stratum slice"))
                    })?;
                    m.set(row, col, c);
                }
            }
            components.push(m);
        }
        Ok(ChainMap { q_min: source.q_min(), components })
    }
}

fn drop_coords(v: &[i64], sigma: &[usize]) -> Vec<i64> {
    v.iter().enumerate().filter(|(i, _)| !sigma.contains(i)).map(|(_, &x)| x).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueReport {
    pub k: usize,
    pub level: usize,
    pub slices: usize,
    /// `dim Gr^W_k` per degree, summed over slices.
    pub dims: Vec<usize>,
    pub counterexample: Option<String>,
}

impl ResidueReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Per slice with `|κ| ≤ key_degree` at truncation `level`: the residue is a
/// chain map and bijective in every degree, and the residue and `ρ̄` are
/// mutually inverse on bases.
pub fn verify_residue_iso(chart: &NcdChart, k: usize, level: usize, key_degree: i64) -> Result<ResidueReport> {
    let keys = chart.keys(key_degree)?;
    let results: Vec<Result<(Vec<usize>, Option<String>)>> =
        keys.par_iter().map(|key| check_residue_slice(chart, k, key, level)).collect();
    let mut report = ResidueReport { k, level, slices: keys.len(), dims: vec![0; chart.n + 1], counterexample: None };
    for r in results {
        let (dims, failure) = r?;
        for (total, d) in report.dims.iter_mut().zip(dims) {
            *total += d;
        }
        if report.counterexample.is_none() {
            report.counterexample = failure;
        }
    }
    Ok(report)
}

fn check_residue_slice(chart: &NcdChart, k: usize, key: &[i64], level: usize) -> Result<(Vec<usize>, Option<String>)> {
    let source = chart.gr_complex(k, key, level)?;
    let target = chart.stratum_complex(k, key, level)?;
    let dims: Vec<usize> = (0..=chart.n).map(|q| source.dim(q as i32)).collect();
    let f = chart.residue_map(k, &source, &target)?;
    if !verify_chain_map(&f, &source, &target) {
        return Ok((dims, Some(format!("residue is not a chain map on slice {key:?}"))));
    }
    for qdeg in source.degrees() {
        let m = f.component(qdeg).expect("component per degree");
        if m.rows() != m.cols() || m.rank() != m.cols() {
            return Ok((dims, Some(format!("residue is not bijective in degree {qdeg} on slice {key:?}"))));
        }
    }
    for qdeg in source.degrees() {
        for b in source.basis(qdeg).unwrap_or(&[]) {
            let res = chart.residue(k, &FormVector::from([(b.clone(), Q::one())]))?;
            let mut back = FormVector::new();
            for ((sigma, eta), c) in &res {
                for (t, c2) in chart.rho_bar(sigma, eta, c)? {
                    *back.entry(t).or_insert_with(Q::zero) += c2;
                }
            }
            back.retain(|_, c| !c.is_zero());
            if back != FormVector::from([(b.clone(), Q::one())]) {
                return Ok((dims, Some(format!("ρ̄ ∘ residue ≠ id on {b:?}"))));
            }
        }
    }
    for qdeg in target.degrees() {
        for (sigma, eta) in target.basis(qdeg).unwrap_or(&[]) {
            let lifted = chart.rho_bar(sigma, eta, &Q::one())?;
            let res = chart.residue(k, &lifted)?;
            if res != ResidueVector::from([((sigma.clone(), eta.clone()), Q::one())]) {
                return Ok((dims, Some(format!("residue ∘ ρ̄ ≠ id on {eta:?} over D_{sigma:?}"))));
            }
        }
    }
    Ok((dims, None))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrReport {
    pub k: usize,
    /// `dim ℋ^q(Gr^W_k)` for `q = 0..=n`.
    pub dims: Vec<usize>,
    pub stabilized_at: usize,
    /// Number of strata `D_σ`, `|σ| = k`, that meet `Y`.
    pub strata: usize,
    pub expected_at_k: usize,
}

impl GrReport {
    pub fn concentrated(&self) -> bool {
        self.dims.iter().enumerate().all(|(q, &d)| q == self.k || d == 0)
    }

    pub fn passed(&self) -> bool {
        self.concentrated() && self.dims.get(self.k).copied().unwrap_or(0) == self.expected_at_k
    }
}

/// Completed `ℋ^q(Gr^W_k)` by slice towers. Each stratum meeting `Y` is
/// expected to contribute one class in degree `k` (all `Y ∩ D_σ` here are
/// connected and contractible).
pub fn gr_cohomology_concentration(chart: &NcdChart, k: usize, max_level: usize, window: usize) -> Result<GrReport> {
    let max_degree = chart.model.ideal().max_generator_degree().max(1);
    let keys = chart.keys(max_degree)?;
    let keep = |b: &FormBasis| chart.pole_count(b) == k;
    let towers: Vec<Result<_>> =
        keys.par_iter().map(|key| chart.model.filtered_slice_tower(key, max_level, window, &keep)).collect();
    let mut dims = vec![0; chart.n + 1];
    let mut stabilized_at = 1;
    for t in towers {
        let t = t?;
        for (qdeg, d) in dims.iter_mut().enumerate() {
            *d += t.dim(qdeg as i32);
        }
        stabilized_at = stabilized_at.max(t.stabilized_at);
    }
    let strata = if k <= chart.r { binomial(chart.r, k) } else { 0 };
    Ok(GrReport { k, dims, stabilized_at, strata, expected_at_k: strata })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derham::completed_cohomology;
    use crate::linalg::rational::q;

    fn basis(exponent: Vec<i64>, forms: Vec<usize>) -> FormBasis {
        FormBasis { exponent, forms, t: Vec::new() }
    }

    fn origin(n: usize) -> Vec<Vec<i64>> {
        (0..n).map(|i| crate::monoid::unit_vector(n, i)).collect()
    }

    fn axes(n: usize) -> Vec<Vec<i64>> {
        let mut g = vec![0; n];
        g[0] = 1;
        g[1] = 1;
        vec![g]
    }

    #[test]
    fn lattice_is_standard() {
        let chart = NcdChart::new(3, 2, origin(3)).unwrap();
        assert_eq!(chart.model().lattice().coordinates(&[0, 1]), Some(vec![0, 1]));
        assert_eq!(chart.model().form_label(2), "dz1");
    }

    #[test]
    fn residue_examples() {
        // x·dy ∧ dlog z with z logged: x dy ∧ dlog z = −(x · dlog z ∧ dy)
        let chart = NcdChart::new(3, 1, origin(3)).unwrap();
        let v = FormVector::from([(basis(vec![0, 1, 0], vec![0, 2]), q(-1))]);
        let res = chart.residue(1, &v).unwrap();
        assert_eq!(res, ResidueVector::from([((vec![0], basis(vec![1, 0], vec![1])), q(1))]));
        // z·dx ∧ dlog z = dx ∧ dz lies in W_0
        let v = FormVector::from([(basis(vec![1, 0, 0], vec![0, 1]), q(-1))]);
        assert!(chart.residue(1, &v).unwrap().is_empty());
        // dlog z₂ ∧ dlog z₁ = −dlog z₁ ∧ dlog z₂
        let chart = NcdChart::new(2, 2, origin(2)).unwrap();
        let v = FormVector::from([(basis(vec![0, 0], vec![0, 1]), q(-1))]);
        let res = chart.residue(2, &v).unwrap();
        assert_eq!(res, ResidueVector::from([((vec![0, 1], basis(vec![], vec![])), q(-1))]));
        assert!(matches!(chart.residue(1, &v), Err(Error::NotInGr(_))));
    }

    #[test]
    fn rho_bar_orientation() {
        let chart = NcdChart::new(2, 2, origin(2)).unwrap();
        let one = basis(vec![], vec![]);
        assert_eq!(
            chart.rho_bar(&[0, 1], &one, &q(1)).unwrap(),
            FormVector::from([(basis(vec![0, 0], vec![0, 1]), q(1))])
        );
        assert_eq!(
            chart.rho_bar(&[1, 0], &one, &q(1)).unwrap(),
            FormVector::from([(basis(vec![0, 0], vec![0, 1]), q(-1))])
        );
        assert_eq!(orientation(&[2, 0, 1]), Some((1, vec![0, 1, 2])));
        assert_eq!(orientation(&[1, 0]), Some((-1, vec![0, 1])));
        assert_eq!(orientation(&[1, 1]), None);
    }

    #[test]
    fn weight_filtration_extremes() {
        let chart = NcdChart::new(2, 2, origin(2)).unwrap();
        let key = vec![1, 1];
        let all = chart.model().slice_basis(&key, 6).unwrap();
        assert_eq!(chart.weight_filtration(2, 2, &key, 6).unwrap(), all[2]);
        assert!(chart.weight_filtration(2, -1, &key, 6).unwrap().is_empty());
        let w1 = chart.weight_filtration(1, 0, &key, 6).unwrap();
        assert!(w1.iter().all(|b| chart.pole_count(b) == 0));
    }

    #[test]
    fn residue_iso_small_grid() {
        for (n, r, gens) in [(2, 2, origin(2)), (3, 2, axes(3)), (3, 1, origin(3))] {
            let chart = NcdChart::new(n, r, gens).unwrap();
            for k in 0..=r {
                let rep = verify_residue_iso(&chart, k, 4, 2).unwrap();
                assert!(rep.passed(), "n={n} r={r} k={k}: {:?}", rep.counterexample);
            }
        }
        let chart = NcdChart::new(2, 2, origin(2)).unwrap();
        let rep = verify_residue_iso(&chart, 2, 3, 0).unwrap();
        assert_eq!(rep.dims, vec![0, 0, 1]);
    }

    #[test]
    fn gr_concentration_and_total() {
        let chart = NcdChart::new(2, 2, origin(2)).unwrap();
        let dims: Vec<Vec<usize>> =
            (0..=2).map(|k| gr_cohomology_concentration(&chart, k, 8, 2).unwrap()).map(|r| r.dims).collect();
        assert_eq!(dims, vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 1]]);
        let chart = NcdChart::new(2, 2, axes(2)).unwrap();
        let mut total = vec![0; 3];
        for k in 0..=2 {
            let rep = gr_cohomology_concentration(&chart, k, 8, 2).unwrap();
            assert!(rep.passed(), "{rep:?}");
            total[k] = rep.dims[k];
        }
        let scene = LogScene::ncd(2, 2, axes(2)).unwrap();
        assert_eq!(completed_cohomology(&scene).unwrap().dims, total);
    }
}
