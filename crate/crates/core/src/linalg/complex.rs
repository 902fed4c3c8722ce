//! Finite cochain complexes of ℚ-vector spaces and their cohomology.

use num_traits::Zero;

use super::rational::{RationalMatrix, Q};
use crate::error::{Error, Result};

/// A bounded cochain complex `C^{q_min} → … → C^{q_max}`.
///
/// Each space carries a list of basis labels; `differentials[k]` is the
/// matrix of `d: C^{q_min+k} → C^{q_min+k+1}` acting on column vectors.
#[derive(Clone, Debug)]
pub struct GradedComplex<L = String> {
    q_min: i32,
    bases: Vec<Vec<L>>,
    differentials: Vec<RationalMatrix>,
}

impl<L: Clone> GradedComplex<L> {
    /// Checks shapes and `d∘d = 0`.
    pub fn new(q_min: i32, bases: Vec<Vec<L>>, differentials: Vec<RationalMatrix>) -> Result<Self> {
        if bases.is_empty() {
            if !differentials.is_empty() {
                return Err(Error::ShapeMismatch("differentials without spaces".into()));
            }
            return Ok(Self { q_min, bases, differentials });
        }
        if differentials.len() + 1 != bases.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} spaces need {} differentials, got {}",
                bases.len(),
                bases.len() - 1,
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.cols() != bases[k].len() || d.rows() != bases[k + 1].len() {
                return Err(Error::ShapeMismatch(format!(
                    "d^{} is {}x{}, expected {}x{}",
                    q_min + k as i32,
                    d.rows(),
                    d.cols(),
                    bases[k + 1].len(),
                    bases[k].len()
                )));
            }
        }
        for k in 0..differentials.len().saturating_sub(1) {
            if !differentials[k + 1].mul(&differentials[k]).is_zero() {
                return Err(Error::NotAComplex { degree: q_min + k as i32 });
            }
        }
        Ok(Self { q_min, bases, differentials })
    }

    /// Spaces with all differentials zero.
    pub fn with_zero_differentials(q_min: i32, bases: Vec<Vec<L>>) -> Self {
        let differentials = bases.windows(2).map(|w| RationalMatrix::zeros(w[1].len(), w[0].len())).collect();
        Self { q_min, bases, differentials }
    }

    pub fn q_min(&self) -> i32 {
        self.q_min
    }

    pub fn q_max(&self) -> i32 {
        self.q_min + self.bases.len() as i32 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.q_min..=self.q_max()
    }

    pub fn dim(&self, q: i32) -> usize {
        self.basis(q).map_or(0, <[L]>::len)
    }

    pub fn basis(&self, q: i32) -> Option<&[L]> {
        let k = q - self.q_min;
        if k < 0 {
            return None;
        }
        self.bases.get(k as usize).map(Vec::as_slice)
    }

    /// Matrix of `d^q`; a zero matrix of the right shape outside the stored range.
    pub fn differential(&self, q: i32) -> RationalMatrix {
        let k = q - self.q_min;
        if k >= 0 && (k as usize) < self.differentials.len() {
            self.differentials[k as usize].clone()
        } else {
            RationalMatrix::zeros(self.dim(q + 1), self.dim(q))
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|q| sign(q) * self.dim(q) as i64).sum()
    }

    pub fn cohomology(&self) -> Cohomology {
        let groups = self.degrees().map(|q| self.cohomology_at(q)).collect();
        Cohomology { q_min: self.q_min, groups }
    }

    fn cohomology_at(&self, q: i32) -> CohomologyGroup {
        let n = self.dim(q);
        let cycles = self.differential(q).kernel();
        let boundaries = self.differential(q - 1).column_space();
        // pivots among the cycle columns, after all boundary columns, pick representatives
        let stacked = boundaries.hstack(&cycles);
        let (_, pivots) = stacked.rref();
        let reps: Vec<usize> =
            pivots.iter().filter(|&&p| p >= boundaries.cols()).map(|&p| p - boundaries.cols()).collect();
        let representatives = cycles.select_columns(&reps);
        debug_assert_eq!(representatives.rows(), n);
        CohomologyGroup { degree: q, cycles, boundaries, representatives }
    }
}

fn sign(q: i32) -> i64 {
    if q.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `Z^q / B^q` with explicit bases, all as column matrices in `C^q`.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: i32,
    pub cycles: RationalMatrix,
    pub boundaries: RationalMatrix,
    pub representatives: RationalMatrix,
}

impl CohomologyGroup {
    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    /// Coordinates of the class of a cycle in the representative basis.
    /// `None` if `z` is not a cycle.
    pub fn class_of(&self, z: &[Q]) -> Option<Vec<Q>> {
        if self.representatives.rows() == 0 {
            return Some(Vec::new());
        }
        let a = self.boundaries.hstack(&self.representatives);
        let x = a.solve(z)?;
        Some(x[self.boundaries.cols()..].to_vec())
    }
}

#[derive(Clone, Debug)]
pub struct Cohomology {
    pub q_min: i32,
    pub groups: Vec<CohomologyGroup>,
}

impl Cohomology {
    pub fn dim(&self, q: i32) -> usize {
        let k = q - self.q_min;
        if k < 0 {
            return 0;
        }
        self.groups.get(k as usize).map_or(0, CohomologyGroup::dim)
    }

    pub fn group(&self, q: i32) -> Option<&CohomologyGroup> {
        let k = q - self.q_min;
        if k < 0 {
            return None;
        }
        self.groups.get(k as usize)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.groups.iter().map(CohomologyGroup::dim).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().map(|g| sign(g.degree) * g.dim() as i64).sum()
    }
}

/// A degreewise family of matrices `f^q: C^q → D^q`, indexed from `q_min`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub q_min: i32,
    pub components: Vec<RationalMatrix>,
}

impl ChainMap {
    pub fn component(&self, q: i32) -> Option<&RationalMatrix> {
        let k = q - self.q_min;
        if k < 0 {
            return None;
        }
        self.components.get(k as usize)
    }

    pub fn identity<L: Clone>(c: &GradedComplex<L>) -> Self {
        Self { q_min: c.q_min(), components: c.degrees().map(|q| RationalMatrix::identity(c.dim(q))).collect() }
    }

    pub fn zero<L: Clone, M: Clone>(c: &GradedComplex<L>, d: &GradedComplex<M>) -> Self {
        Self { q_min: c.q_min(), components: c.degrees().map(|q| RationalMatrix::zeros(d.dim(q), c.dim(q))).collect() }
    }

    /// Matches basis labels: `f(e) = e'` when `C` and `D` carry the same
    /// label, zero otherwise. Gives the projection onto a quotient and the
    /// inclusion of a subcomplex spanned by basis vectors.
    pub fn by_labels<L: Clone + Eq + std::hash::Hash>(c: &GradedComplex<L>, d: &GradedComplex<L>) -> Self {
        let components = c
            .degrees()
            .map(|q| {
                let src = c.basis(q).unwrap_or(&[]);
                let dst = d.basis(q).unwrap_or(&[]);
                let index: std::collections::HashMap<&L, usize> = dst.iter().enumerate().map(|(i, l)| (l, i)).collect();
                let mut m = RationalMatrix::zeros(dst.len(), src.len());
                for (j, l) in src.iter().enumerate() {
                    if let Some(&i) = index.get(l) {
                        m.set(i, j, Q::from_integer(1.into()));
                    }
                }
                m
            })
            .collect();
        ChainMap { q_min: c.q_min(), components }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let components = (0..other.components.len())
            .map(|k| {
                let q = other.q_min + k as i32;
                let f = self.component(q).expect("composable chain maps");
                f.mul(&other.components[k])
            })
            .collect();
        ChainMap { q_min: other.q_min, components }
    }

    /// Matrix of the map induced on `H^q`, in the representative bases.
    pub fn induced_on_cohomology(&self, source: &Cohomology, target: &Cohomology, q: i32) -> RationalMatrix {
        let (Some(hs), Some(ht)) = (source.group(q), target.group(q)) else {
            return RationalMatrix::zeros(target.dim(q), source.dim(q));
        };
        let Some(f) = self.component(q) else {
            return RationalMatrix::zeros(ht.dim(), hs.dim());
        };
        let cols: Vec<Vec<Q>> = (0..hs.dim())
            .map(|j| {
                let image = f.mul_vec(&hs.representatives.column(j));
                ht.class_of(&image).expect("chain maps send cycles to cycles")
            })
            .collect();
        RationalMatrix::from_columns(ht.dim(), &cols)
    }
}

/// True iff every component has the right shape and `d_D ∘ f = f ∘ d_C`
/// in every degree.
pub fn verify_chain_map<L: Clone, M: Clone>(f: &ChainMap, c: &GradedComplex<L>, d: &GradedComplex<M>) -> bool {
    let lo = c.q_min().min(d.q_min());
    let hi = c.q_max().max(d.q_max());
    let comp = |q: i32| -> RationalMatrix {
        f.component(q).cloned().unwrap_or_else(|| RationalMatrix::zeros(d.dim(q), c.dim(q)))
    };
    for q in lo..=hi {
        let fq = comp(q);
        if fq.rows() != d.dim(q) || fq.cols() != c.dim(q) {
            return false;
        }
    }
    for q in lo..hi {
        let lhs = d.differential(q).mul(&comp(q));
        let rhs = comp(q + 1).mul(&c.differential(q));
        if lhs != rhs && !lhs.sub(&rhs).is_zero() {
            return false;
        }
    }
    true
}

/// Sparse vector helper used by builders: accumulate `(index, coefficient)`
/// pairs into a dense column.
pub fn dense_column(len: usize, entries: impl IntoIterator<Item = (usize, Q)>) -> Vec<Q> {
    let mut v = vec![Q::zero(); len];
    for (i, c) in entries {
        v[i] += c;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::q;

    fn labels(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn identity_differential_is_exact() {
        let c = GradedComplex::new(0, vec![labels(1), labels(1)], vec![RationalMatrix::identity(1)]).unwrap();
        assert_eq!(c.cohomology().dims(), vec![0, 0]);
    }

    #[test]
    fn zero_differentials_keep_every_space() {
        let c = GradedComplex::with_zero_differentials(0, vec![labels(1), labels(2), labels(1)]);
        assert_eq!(c.cohomology().dims(), vec![1, 2, 1]);
    }

    #[test]
    fn koszul_slice_of_the_plane_at_one_one() {
        // ∧^•ℚ² with m ∧ − for m = (1,1): 1 → e1,e2 → e1∧e2
        let d0 = RationalMatrix::from_i64_rows(&[vec![1], vec![1]]);
        // m ∧ e1 = e2∧e1·1 = -e1∧e2, m ∧ e2 = e1∧e2
        let d1 = RationalMatrix::from_i64_rows(&[vec![-1, 1]]);
        let c = GradedComplex::new(0, vec![labels(1), labels(2), labels(1)], vec![d0, d1]).unwrap();
        assert_eq!(c.cohomology().dims(), vec![0, 0, 0]);
    }

    #[test]
    fn rejects_non_complex() {
        let d0 = RationalMatrix::from_i64_rows(&[vec![1]]);
        let d1 = RationalMatrix::from_i64_rows(&[vec![1]]);
        let err = GradedComplex::new(0, vec![labels(1), labels(1), labels(1)], vec![d0, d1]).unwrap_err();
        assert_eq!(err, Error::NotAComplex { degree: 0 });
    }

    #[test]
    fn chain_map_checks() {
        let d0 = RationalMatrix::from_i64_rows(&[vec![2]]);
        let c = GradedComplex::new(0, vec![labels(1), labels(1)], vec![d0]).unwrap();
        assert!(verify_chain_map(&ChainMap::identity(&c), &c, &c));
        assert!(verify_chain_map(&ChainMap::zero(&c, &c), &c, &c));
        let bad = ChainMap { q_min: 0, components: vec![RationalMatrix::identity(1), RationalMatrix::zeros(1, 1)] };
        assert!(!verify_chain_map(&bad, &c, &c));
    }

    #[test]
    fn induced_map_on_cohomology() {
        let c = GradedComplex::with_zero_differentials(0, vec![labels(2)]);
        let h = c.cohomology();
        let f = ChainMap { q_min: 0, components: vec![RationalMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]])] };
        let m = f.induced_on_cohomology(&h, &h, 0);
        assert_eq!(m.rank(), 2);
        assert_eq!(*m.get(0, 1), q(1));
    }
}
