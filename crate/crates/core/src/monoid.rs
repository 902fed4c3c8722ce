//! Finitely generated submonoids of ℤ^d, their ideals, faces and groupification.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::linalg::rational::{q, RationalMatrix};
use crate::linalg::snf::{smith_normal_form, IntMatrix};

/// Step budget for membership when no positive grading is available.
pub const UNGRADED_SEARCH_BOUND: usize = 12;

/// Largest coordinate magnitude tried when looking for a positive grading.
const GRADING_SEARCH_RADIUS: i64 = 6;

/// Submonoid of ℤ^d generated by finitely many vectors.
#[derive(Clone)]
pub struct FsMonoid {
    ambient_rank: usize,
    generators: Vec<Vec<i64>>,
    grading: Option<Vec<i64>>,
    membership_cache: Arc<Mutex<HashMap<Vec<i64>, bool>>>,
}

impl fmt::Debug for FsMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FsMonoid")
            .field("ambient_rank", &self.ambient_rank)
            .field("generators", &self.generators)
            .field("grading", &self.grading)
            .finish()
    }
}

impl PartialEq for FsMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.generators == other.generators
    }
}

impl Eq for FsMonoid {}

impl FsMonoid {
    pub fn new(ambient_rank: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        if ambient_rank == 0 {
            return Err(Error::Validation("ambient rank must be positive".into()));
        }
        if generators.is_empty() {
            return Err(Error::Validation("a monoid needs at least one generator".into()));
        }
        for g in &generators {
            if g.len() != ambient_rank {
                return Err(Error::Validation(format!("generator {g:?} is not in ℤ^{ambient_rank}")));
            }
            if g.iter().all(|&x| x == 0) {
                return Err(Error::Validation("zero generator".into()));
            }
        }
        Ok(Self::from_parts(ambient_rank, generators))
    }

    /// The zero monoid `{0} ⊂ ℤ^d`.
    pub fn trivial(ambient_rank: usize) -> Self {
        Self::from_parts(ambient_rank, Vec::new())
    }

    fn from_parts(ambient_rank: usize, generators: Vec<Vec<i64>>) -> Self {
        let grading = if generators.is_empty() {
            Some(vec![1; ambient_rank])
        } else {
            find_positive_grading(ambient_rank, &generators)
        };
        Self { ambient_rank, generators, grading, membership_cache: Arc::default() }
    }

    /// ℕ^r with the standard basis as generators.
    pub fn free(r: usize) -> Self {
        Self::from_parts(r, (0..r).map(|i| unit_vector(r, i)).collect())
    }

    /// `self × ℕ^s`, generators `(g, 0)` followed by `(0, e_j)`.
    pub fn with_free_factor(&self, s: usize) -> Self {
        let d = self.ambient_rank + s;
        let mut gens: Vec<Vec<i64>> =
            self.generators.iter().map(|g| g.iter().copied().chain(std::iter::repeat_n(0, s)).collect()).collect();
        gens.extend((0..s).map(|j| unit_vector(d, self.ambient_rank + j)));
        Self::from_parts(d, gens)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// A vector `w` with `w·g > 0` for every generator, if one exists.
    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn require_grading(&self) -> Result<&[i64]> {
        self.grading().ok_or(Error::NoPositiveGrading)
    }

    /// `w·v` for the positive grading.
    pub fn degree(&self, v: &[i64]) -> Option<i64> {
        self.grading.as_ref().map(|w| dot(w, v))
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        assert_eq!(v.len(), self.ambient_rank, "vector outside the ambient lattice");
        match &self.grading {
            Some(w) => {
                let mut cache = self.membership_cache.lock().expect("membership cache");
                Ok(graded_member(&self.generators, w, v, &mut cache))
            }
            None => ungraded_member(&self.generators, v, UNGRADED_SEARCH_BOUND),
        }
    }

    /// Indices of generators `g` with `−g ∈ P`.
    pub fn unit_generators(&self) -> Result<Vec<usize>> {
        if self.grading.is_some() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let neg: Vec<i64> = g.iter().map(|x| -x).collect();
            if self.contains(&neg)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    pub fn is_unit(&self, v: &[i64]) -> Result<bool> {
        if v.iter().all(|&x| x == 0) {
            return Ok(true);
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        Ok(self.contains(v)? && self.contains(&neg)?)
    }

    /// Elements of P of grading degree at most `max_degree`, sorted.
    pub fn elements_up_to_degree(&self, max_degree: i64) -> Result<Vec<Vec<i64>>> {
        let w = self.require_grading()?;
        let mut seen = BTreeSet::new();
        let zero = vec![0; self.ambient_rank];
        let mut queue = VecDeque::from([zero.clone()]);
        seen.insert(zero);
        while let Some(v) = queue.pop_front() {
            for g in &self.generators {
                let u = add(&v, g);
                if dot(w, &u) <= max_degree && seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn groupify(&self) -> Lattice {
        Lattice::spanned_by(self.ambient_rank, &self.generators)
    }

    /// Checks saturation by enumerating lattice points of `P^gp` in the box
    /// `[−B, B]^d`, `B` the sum of the generators' sup norms, that lie in the
    /// rational cone of P.
    pub fn check_saturated(&self) -> Result<()> {
        let lattice = self.groupify();
        let cone = Cone::new(self, &lattice);
        let bound: i64 = self.generators.iter().map(|g| g.iter().map(|x| x.abs()).max().unwrap_or(0)).sum();
        let d = self.ambient_rank;
        let mut v = vec![-bound; d];
        loop {
            if let Some(c) = lattice.coordinates(&v) {
                if cone.contains_coords(&c) && !self.contains(&v)? {
                    return Err(Error::NotSaturated(v));
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == d {
                    return Ok(());
                }
                if v[i] < bound {
                    v[i] += 1;
                    break;
                }
                v[i] = -bound;
                i += 1;
            }
        }
    }

    /// Whether the generators indexed by `face` span a face of P.
    pub fn is_face(&self, face: &[usize]) -> bool {
        if face.iter().any(|&i| i >= self.generators.len()) {
            return false;
        }
        let lattice = self.groupify();
        let cone = Cone::new(self, &lattice);
        let coords: Vec<Vec<i64>> =
            self.generators.iter().map(|g| lattice.coordinates(g).expect("generator in P^gp")).collect();
        let supporting: Vec<&Vec<i64>> =
            cone.normals.iter().filter(|n| face.iter().all(|&i| dot(n, &coords[i]) == 0)).collect();
        let closure: BTreeSet<usize> =
            (0..self.generators.len()).filter(|&i| supporting.iter().all(|n| dot(n, &coords[i]) == 0)).collect();
        closure == face.iter().copied().collect()
    }
}

/// A ℤ-basis of a subgroup of ℤ^d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub ambient_rank: usize,
    pub basis: Vec<Vec<i64>>,
    /// Invariant factors of the spanning set, as computed by Smith normal form.
    pub invariant_factors: Vec<i64>,
}

impl Lattice {
    pub fn spanned_by(ambient_rank: usize, vectors: &[Vec<i64>]) -> Self {
        if vectors.is_empty() {
            return Self { ambient_rank, basis: Vec::new(), invariant_factors: Vec::new() };
        }
        let a = IntMatrix::from_columns(ambient_rank, vectors);
        let s = smith_normal_form(&a);
        let rank = s.rank();
        // A·V has the same column span as A, and its columns past the rank vanish
        let av = a.mul(&s.v);
        let basis = (0..rank).map(|c| av.column(c)).collect();
        Self { ambient_rank, basis, invariant_factors: s.invariant_factors() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer coordinates of `v` in the basis, `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        if self.basis.is_empty() {
            return v.iter().all(|&x| x == 0).then(Vec::new);
        }
        let cols: Vec<Vec<_>> = self.basis.iter().map(|b| b.iter().map(|&x| q(x)).collect()).collect();
        let m = RationalMatrix::from_columns(self.ambient_rank, &cols);
        let rhs: Vec<_> = v.iter().map(|&x| q(x)).collect();
        let x = m.solve(&rhs)?;
        x.iter()
            .map(|c| c.is_integer().then(|| i64::try_from(c.to_integer()).expect("coordinate fits in i64")))
            .collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Same subgroup of ℤ^d.
    pub fn same_subgroup(&self, other: &Lattice) -> bool {
        self.ambient_rank == other.ambient_rank
            && self.rank() == other.rank()
            && self.basis.iter().all(|b| other.contains(b))
            && other.basis.iter().all(|b| self.contains(b))
    }
}

/// Facet description `{x : n·x ≥ 0}` of the rational cone of P, in
/// `P^gp` coordinates.
struct Cone {
    normals: Vec<Vec<i64>>,
}

impl Cone {
    fn new(p: &FsMonoid, lattice: &Lattice) -> Self {
        let k = lattice.rank();
        let coords: Vec<Vec<i64>> =
            p.generators.iter().map(|g| lattice.coordinates(g).expect("generator in P^gp")).collect();
        let mut normals = BTreeSet::new();
        for subset in subsets(coords.len(), k.saturating_sub(1)) {
            let rows: Vec<Vec<i64>> = subset.iter().map(|&i| coords[i].clone()).collect();
            let m = if rows.is_empty() { RationalMatrix::zeros(0, k) } else { RationalMatrix::from_i64_rows(&rows) };
            if m.rank() != k.saturating_sub(1) {
                continue;
            }
            let ker = m.kernel();
            if ker.cols() != 1 {
                continue;
            }
            let n = primitive_integer_vector(&ker.column(0));
            let signs: Vec<i64> = coords.iter().map(|c| dot(&n, c).signum()).collect();
            if signs.iter().all(|&s| s >= 0) {
                normals.insert(n);
            } else if signs.iter().all(|&s| s <= 0) {
                normals.insert(n.iter().map(|x| -x).collect());
            }
        }
        Self { normals: normals.into_iter().collect() }
    }

    fn contains_coords(&self, c: &[i64]) -> bool {
        self.normals.iter().all(|n| dot(n, c) >= 0)
    }
}

/// Ideal of P generated by finitely many elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidIdeal {
    parent: FsMonoid,
    generators: Vec<Vec<i64>>,
}

impl MonoidIdeal {
    /// Rejects generators outside P and units. The zero ideal (no
    /// generators) is allowed here; callers that need a nonempty Y check it.
    pub fn new(parent: FsMonoid, generators: Vec<Vec<i64>>) -> Result<Self> {
        parent.require_grading()?;
        for g in &generators {
            if g.len() != parent.ambient_rank() {
                return Err(Error::Validation(format!("ideal generator {g:?} has the wrong length")));
            }
            if !parent.contains(g)? {
                return Err(Error::NotInMonoid(g.clone()));
            }
            if parent.is_unit(g)? {
                return Err(Error::ImproperIdeal(g.clone()));
            }
        }
        Ok(Self { parent, generators })
    }

    /// The maximal ideal `P^+`, generated by the generators of P.
    pub fn maximal(parent: FsMonoid) -> Result<Self> {
        let gens = parent.generators().to_vec();
        Self::new(parent, gens)
    }

    pub fn parent(&self) -> &FsMonoid {
        &self.parent
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, m: &[i64]) -> Result<bool> {
        ideal_power_membership(self, 1, m)
    }

    /// Largest `n` with `m ∈ ℐ^n` (`ℐ^0 = P`), `None` if `m ∉ P`.
    pub fn adic_order(&self, m: &[i64]) -> Result<Option<usize>> {
        let mut memo = HashMap::new();
        self.adic_order_memo(m, &mut memo)
    }

    pub(crate) fn adic_order_memo(
        &self,
        m: &[i64],
        memo: &mut HashMap<Vec<i64>, Option<usize>>,
    ) -> Result<Option<usize>> {
        if let Some(&o) = memo.get(m) {
            return Ok(o);
        }
        let result = if !self.parent.contains(m)? {
            None
        } else {
            let mut best = 0;
            for g in &self.generators {
                let rest = sub(m, g);
                if let Some(o) = self.adic_order_memo(&rest, memo)? {
                    best = best.max(o + 1);
                }
            }
            Some(best)
        };
        memo.insert(m.to_vec(), result);
        Ok(result)
    }

    /// Largest grading degree of a generator.
    pub fn max_generator_degree(&self) -> i64 {
        self.generators.iter().filter_map(|g| self.parent.degree(g)).max().unwrap_or(0)
    }
}

/// Whether `χ^m ∈ ℐ^n`, i.e. `m ∈ g_1 + … + g_n + P` for some generators.
pub fn ideal_power_membership(ideal: &MonoidIdeal, n: usize, m: &[i64]) -> Result<bool> {
    Ok(ideal.adic_order(m)?.is_some_and(|o| o >= n))
}

/// A prime ideal of P, described by the generators of its complementary face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPrime {
    parent: FsMonoid,
    face: Vec<usize>,
}

impl MonoidPrime {
    pub fn new(parent: FsMonoid, mut face: Vec<usize>) -> Result<Self> {
        face.sort_unstable();
        face.dedup();
        if !parent.is_face(&face) {
            return Err(Error::NotAFace(face));
        }
        Ok(Self { parent, face })
    }

    pub fn parent(&self) -> &FsMonoid {
        &self.parent
    }

    pub fn face(&self) -> &[usize] {
        &self.face
    }

    pub fn face_generators(&self) -> Vec<Vec<i64>> {
        self.face.iter().map(|&i| self.parent.generators()[i].clone()).collect()
    }

    /// The ideal `𝔭 = P ∖ F`, generated by the generators outside the face.
    pub fn ideal(&self) -> Result<MonoidIdeal> {
        let gens = (0..self.parent.generators().len())
            .filter(|i| !self.face.contains(i))
            .map(|i| self.parent.generators()[i].clone())
            .collect();
        MonoidIdeal::new(self.parent.clone(), gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeQuotient {
    /// Basis of `(P∖𝔭)^gp` in ℤ^d.
    pub face_lattice: Lattice,
    /// Basis of `P^gp` in ℤ^d.
    pub group: Lattice,
    /// Columns: coordinates of the face basis in the `P^gp` basis.
    pub inclusion: Vec<Vec<i64>>,
    /// Invariant factors of the inclusion.
    pub invariant_factors: Vec<i64>,
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<i64>,
}

pub fn prime_quotient(prime: &MonoidPrime) -> Result<PrimeQuotient> {
    let p = prime.parent();
    if !p.is_face(prime.face()) {
        return Err(Error::NotAFace(prime.face().to_vec()));
    }
    let group = p.groupify();
    let face_lattice = Lattice::spanned_by(p.ambient_rank(), &prime.face_generators());
    let inclusion: Vec<Vec<i64>> =
        face_lattice.basis.iter().map(|b| group.coordinates(b).expect("face lies in P^gp")).collect();
    let invariant_factors = if inclusion.is_empty() {
        Vec::new()
    } else {
        smith_normal_form(&IntMatrix::from_columns(group.rank(), &inclusion)).invariant_factors()
    };
    let free_rank = group.rank() - face_lattice.rank();
    let torsion = invariant_factors.iter().copied().filter(|&d| d > 1).collect();
    Ok(PrimeQuotient { face_lattice, group, inclusion, invariant_factors, free_rank, torsion })
}

pub fn groupify(p: &FsMonoid) -> Lattice {
    p.groupify()
}

pub fn membership(p: &FsMonoid, v: &[i64]) -> Result<bool> {
    p.contains(v)
}

fn graded_member(gens: &[Vec<i64>], w: &[i64], v: &[i64], cache: &mut HashMap<Vec<i64>, bool>) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    if dot(w, v) <= 0 {
        return false;
    }
    if let Some(&b) = cache.get(v) {
        return b;
    }
    let found = gens.iter().any(|g| graded_member(gens, w, &sub(v, g), cache));
    cache.insert(v.to_vec(), found);
    found
}

fn ungraded_member(gens: &[Vec<i64>], v: &[i64], bound: usize) -> Result<bool> {
    let zero = vec![0; v.len()];
    if v == zero.as_slice() {
        return Ok(true);
    }
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    for _ in 0..bound {
        let mut next = Vec::new();
        for u in &frontier {
            for g in gens {
                let s = add(u, g);
                if s == v {
                    return Ok(true);
                }
                if seen.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    Err(Error::UnboundedSearch { bound })
}

fn find_positive_grading(d: usize, gens: &[Vec<i64>]) -> Option<Vec<i64>> {
    let positive = |w: &[i64]| gens.iter().all(|g| dot(w, g) > 0);
    let ones = vec![1; d];
    if positive(&ones) {
        return Some(ones);
    }
    for radius in 1..=GRADING_SEARCH_RADIUS {
        if (2 * radius + 1).checked_pow(d as u32).is_none_or(|n| n > 2_000_000) {
            break;
        }
        let mut w = vec![-radius; d];
        loop {
            if w.iter().any(|x| x.abs() == radius) && positive(&w) {
                return Some(w);
            }
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                if w[i] < radius {
                    w[i] += 1;
                    break;
                }
                w[i] = -radius;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    None
}

fn primitive_integer_vector(v: &[crate::linalg::rational::Q]) -> Vec<i64> {
    use num_integer::Integer;
    use num_traits::{One, Signed, ToPrimitive, Zero};
    let lcm = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> =
        v.iter().map(|x| (x * crate::linalg::rational::Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { num_bigint::BigInt::one() } else { g.abs() };
    ints.iter().map(|x| (x / &g).to_i64().expect("normal vector fits in i64")).collect()
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn unit_vector(d: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadric() -> FsMonoid {
        FsMonoid::new(2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap()
    }

    /// Exhaustive oracle: all ℕ-combinations with coefficients ≤ `c`.
    fn combinations(gens: &[Vec<i64>], c: i64) -> BTreeSet<Vec<i64>> {
        let d = gens[0].len();
        let mut out = BTreeSet::from([vec![0; d]]);
        for g in gens {
            let mut next = BTreeSet::new();
            for v in &out {
                for k in 0..=c {
                    next.insert(v.iter().zip(g).map(|(x, y)| x + k * y).collect::<Vec<_>>());
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn groupify_examples() {
        let l = FsMonoid::free(2).groupify();
        assert_eq!(l.rank(), 2);
        assert!(l.same_subgroup(&Lattice::spanned_by(2, &[vec![1, 0], vec![0, 1]])));

        let l = quadric().groupify();
        assert_eq!(l.rank(), 2);
        assert_eq!(l.invariant_factors, vec![1, 2]);
        assert!(l.contains(&[1, 1]) && l.contains(&[2, 0]));
        assert!(!l.contains(&[1, 0]));

        let l = FsMonoid::new(1, vec![vec![2]]).unwrap().groupify();
        assert_eq!(l.basis, vec![vec![2]]);
    }

    #[test]
    fn membership_examples() {
        let p = quadric();
        assert!(p.contains(&[1, 1]).unwrap());
        assert!(!p.contains(&[1, 0]).unwrap());
        assert!(FsMonoid::free(2).contains(&[3, 5]).unwrap());
        assert!(!FsMonoid::free(2).contains(&[-1, 5]).unwrap());
    }

    #[test]
    fn membership_agrees_with_exhaustive_enumeration() {
        let p = quadric();
        let oracle = combinations(p.generators(), 4);
        for a in 0..=4 {
            for b in 0..=4 {
                assert_eq!(p.contains(&[a, b]).unwrap(), oracle.contains(&vec![a, b]), "({a},{b})");
            }
        }
    }

    #[test]
    fn group_without_grading() {
        let z = FsMonoid::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert!(z.grading().is_none());
        assert!(z.contains(&[-3]).unwrap());
        assert_eq!(z.unit_generators().unwrap(), vec![0, 1]);
        let half = FsMonoid::new(2, vec![vec![1, 0], vec![-1, 0], vec![0, 1]]).unwrap();
        assert!(matches!(half.contains(&[0, -1]), Err(Error::UnboundedSearch { .. })));
        assert!(MonoidIdeal::new(half, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn saturation() {
        quadric().check_saturated().unwrap();
        FsMonoid::free(3).check_saturated().unwrap();
        let numerical = FsMonoid::new(1, vec![vec![2], vec![3]]).unwrap();
        assert_eq!(numerical.check_saturated(), Err(Error::NotSaturated(vec![1])));
    }

    #[test]
    fn faces_and_prime_quotients() {
        let n2 = FsMonoid::free(2);
        let pq = prime_quotient(&MonoidPrime::new(n2.clone(), vec![1]).unwrap()).unwrap();
        assert_eq!(pq.face_lattice.basis, vec![vec![0, 1]]);
        assert_eq!(pq.free_rank, 1);

        let pq = prime_quotient(&MonoidPrime::new(n2, vec![]).unwrap()).unwrap();
        assert_eq!(pq.face_lattice.rank(), 0);
        assert_eq!(pq.free_rank, 2);

        let p = quadric();
        assert!(p.is_face(&[0]) && p.is_face(&[2]) && p.is_face(&[]) && p.is_face(&[0, 1, 2]));
        assert!(!p.is_face(&[1]));
        assert!(!p.is_face(&[0, 2]));
        assert_eq!(MonoidPrime::new(p.clone(), vec![1]).unwrap_err(), Error::NotAFace(vec![1]));

        let pq = prime_quotient(&MonoidPrime::new(p, vec![0]).unwrap()).unwrap();
        assert_eq!(pq.face_lattice.basis.len(), 1);
        assert_eq!(pq.invariant_factors, vec![1]);
        assert_eq!(pq.free_rank, 1);
        assert!(pq.torsion.is_empty());
    }

    #[test]
    fn ideal_powers() {
        let n1 = FsMonoid::free(1);
        let i = MonoidIdeal::new(n1, vec![vec![1]]).unwrap();
        assert!(ideal_power_membership(&i, 3, &[5]).unwrap());
        assert!(!ideal_power_membership(&i, 3, &[2]).unwrap());

        let i = MonoidIdeal::new(FsMonoid::free(2), vec![vec![1, 1]]).unwrap();
        assert!(ideal_power_membership(&i, 2, &[2, 3]).unwrap());
        assert!(!ideal_power_membership(&i, 3, &[2, 3]).unwrap());
        assert_eq!(i.adic_order(&[2, 3]).unwrap(), Some(2));
        assert_eq!(i.adic_order(&[-1, 3]).unwrap(), None);
    }

    #[test]
    fn improper_ideals_are_rejected() {
        let p = FsMonoid::free(1);
        assert_eq!(MonoidIdeal::new(p.clone(), vec![vec![0]]), Err(Error::ImproperIdeal(vec![0])));
        assert_eq!(MonoidIdeal::new(p, vec![vec![-1]]), Err(Error::NotInMonoid(vec![-1])));
    }

    #[test]
    fn elements_by_degree() {
        let p = quadric();
        let els = p.elements_up_to_degree(2).unwrap();
        assert_eq!(els, vec![vec![0, 0], vec![0, 2], vec![1, 1], vec![2, 0]]);
    }
}
