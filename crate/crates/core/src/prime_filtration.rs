//! The filtration of log forms by the number of factors outside a face, its
//! graded pieces, and the polynomial-variable model of the log stalk with
//! its filtration by `T`-degree.
//!
//! For a prime `𝔭` of `P` with face `F = P ∖ 𝔭`, the chart is
//! `ℚ[F]` (the image of `ℚ[P]` where `𝔭` vanishes) carrying the log
//! structure of `P`, so `ω¹ = O ⊗ P^gp`. The `T`-side carries the log
//! structure of `F` on the same ring, `ω¹_T = O ⊗ F^gp`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::derham::{binomial, binomial_dims, supported_at_deep_point, FormBasis, FormModel};
use crate::error::{Error, Result};
use crate::linalg::complex::{ChainMap, GradedComplex};
use crate::linalg::rational::{q, RationalMatrix, Q};
use crate::monoid::{prime_quotient, subsets, unit_vector, FsMonoid, Lattice, MonoidPrime, PrimeQuotient};
use crate::scene::{LogScene, Subscheme};

/// The `T`-side data of a prime.
#[derive(Clone, Debug)]
pub struct TSide {
    pub face: FsMonoid,
    /// `(P ∖ 𝔭)^gp` in ℤ^d.
    pub t_lattice: Lattice,
    pub quotient: PrimeQuotient,
    /// Basis of `(P ∖ 𝔭)^gp` in `P^gp` coordinates.
    pub t_basis: Vec<Vec<i64>>,
    /// Standard vectors of `P^gp` completing `t_basis` to a ℚ-basis; their
    /// images span the quotient.
    pub complement: Vec<Vec<i64>>,
}

pub fn build_t_side(prime: &MonoidPrime) -> Result<TSide> {
    let p = prime.parent();
    let d = p.ambient_rank();
    let face_gens = prime.face_generators();
    let face = if face_gens.is_empty() { FsMonoid::trivial(d) } else { FsMonoid::new(d, face_gens)? };
    let quotient = prime_quotient(prime)?;
    let t_lattice = quotient.face_lattice.clone();
    let t_basis = quotient.inclusion.clone();
    let rho = quotient.group.rank();
    let mut complement = Vec::new();
    let mut current: Vec<Vec<i64>> = t_basis.clone();
    for i in 0..rho {
        let e = unit_vector(rho, i);
        let mut trial = current.clone();
        trial.push(e.clone());
        if RationalMatrix::from_i64_rows(&trial).rank() == trial.len() {
            current = trial;
            complement.push(e);
        }
    }
    Ok(TSide { face, t_lattice, quotient, t_basis, complement })
}

/// Determinant over ℚ.
fn det(mut a: Vec<Vec<Q>>) -> Q {
    let n = a.len();
    let mut result = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            result = -result;
        }
        let p = a[col][col].clone();
        result *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    result
}

/// Coordinates of `u_1 ∧ … ∧ u_q` on the basis `e_J`, `J ∈ subsets(ρ, q)`.
fn wedge_coordinates(rho: usize, vectors: &[Vec<i64>]) -> Vec<Q> {
    subsets(rho, vectors.len())
        .into_iter()
        .map(|rows| det(rows.iter().map(|&r| vectors.iter().map(|v| q(v[r])).collect()).collect()))
        .collect()
}

/// Chart and `T`-side models for the face-filtration graded comparison.
#[derive(Clone, Debug)]
pub struct PrimeFiltrationModel {
    t_side: TSide,
    x_model: FormModel,
    t_model: FormModel,
    rho: usize,
}

impl PrimeFiltrationModel {
    pub fn new(scene: &LogScene, prime: &MonoidPrime) -> Result<Self> {
        if prime.parent() != &scene.monoid {
            return Err(Error::Validation("the prime belongs to a different monoid".into()));
        }
        if scene.smooth_vars > 0 {
            return Err(Error::UnsupportedScene(
                "the face filtration is implemented without smooth coordinates".into(),
            ));
        }
        let ideal = scene.monomial_ideal()?;
        let t_side = build_t_side(prime)?;
        let mut gens = Vec::new();
        for g in ideal.generators() {
            if t_side.face.contains(g)? {
                gens.push(g.clone());
            }
        }
        let group = scene.monoid.groupify();
        let rho = group.rank();
        let x_model = FormModel::new(t_side.face.clone(), group, Vec::new(), gens.clone())?;
        let t_model = FormModel::new(t_side.face.clone(), t_side.t_lattice.clone(), Vec::new(), gens)?;
        Ok(Self { t_side, x_model, t_model, rho })
    }

    pub fn t_side(&self) -> &TSide {
        &self.t_side
    }

    pub fn x_model(&self) -> &FormModel {
        &self.x_model
    }

    pub fn t_model(&self) -> &FormModel {
        &self.t_model
    }

    /// Vectors spanning `F_r ∩ ⋀^q P^gp_ℚ`, in the coordinates `e_J`.
    pub fn filtration_vectors(&self, qdeg: usize, r: i64) -> Vec<Vec<Q>> {
        if r < 0 {
            return Vec::new();
        }
        let w = &self.t_side.complement;
        let t = &self.t_side.t_basis;
        let mut out = Vec::new();
        for a in 0..=qdeg.min(r as usize).min(w.len()) {
            if qdeg - a > t.len() {
                continue;
            }
            for aset in subsets(w.len(), a) {
                for bset in subsets(t.len(), qdeg - a) {
                    let vectors: Vec<Vec<i64>> =
                        aset.iter().map(|&i| w[i].clone()).chain(bset.iter().map(|&j| t[j].clone())).collect();
                    out.push(wedge_coordinates(self.rho, &vectors));
                }
            }
        }
        out
    }

    /// `dim F_r ∩ ⋀^q` from the splitting.
    pub fn filtration_dim(&self, qdeg: usize, r: i64) -> usize {
        if r < 0 {
            return 0;
        }
        let w = self.t_side.complement.len();
        let t = self.t_side.t_basis.len();
        (0..=qdeg.min(r as usize)).map(|a| binomial(w, a) * binomial(t, qdeg - a)).sum()
    }

    /// `φ(w_A ⊗ χ^m ω_B) = χ^m dlog w_A ∧ ω_B` in `e_J` coordinates.
    fn phi(&self, aset: &[usize], t_forms: &[usize]) -> Vec<Q> {
        let vectors: Vec<Vec<i64>> = aset
            .iter()
            .map(|&i| self.t_side.complement[i].clone())
            .chain(t_forms.iter().map(|&j| self.t_side.t_basis[j].clone()))
            .collect();
        wedge_coordinates(self.rho, &vectors)
    }

    /// Keys `m ∈ F` up to the given degree.
    pub fn keys(&self, max_degree: i64) -> Result<Vec<Vec<i64>>> {
        self.x_model.keys_up_to_degree(max_degree)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poin05Report {
    pub r: usize,
    pub slices: usize,
    /// `dim F_r/F_{r−1}` per degree, summed over slices.
    pub dims: Vec<usize>,
    /// `ω¹_T → ω¹ → O ⊗ quotient` has ranks adding up.
    pub ses_exact: bool,
    pub counterexample: Option<String>,
}

impl Poin05Report {
    pub fn passed(&self) -> bool {
        self.ses_exact && self.counterexample.is_none()
    }
}

fn span_contains(span: &[Vec<Q>], extra: &[Vec<Q>], len: usize) -> bool {
    if extra.is_empty() {
        return true;
    }
    let base = RationalMatrix::from_columns(len, span);
    let both = RationalMatrix::from_columns(len, &[span, extra].concat());
    base.rank() == both.rank()
}

/// Per slice `χ^m`, `m ∈ F` of degree `≤ key_degree`, and level `n ≤ max_level`:
/// `F_{r−1} ⊆ F_r` are subcomplexes, and
/// `⋀^r(P^gp/F^gp) ⊗ ω^•_T[−r] → F_r/F_{r−1}` is a chain map and bijective.
pub fn verify_poin05_graded_iso(
    model: &PrimeFiltrationModel,
    r: usize,
    max_level: usize,
    key_degree: i64,
) -> Result<Poin05Report> {
    let keys = model.keys(key_degree)?;
    let t = model.t_side.t_basis.len();
    let ses_exact = RationalMatrix::from_i64_rows(&model.t_side.t_basis).rank() == t
        && t + model.t_side.quotient.free_rank == model.rho;
    let jobs: Vec<(Vec<i64>, usize)> = keys.iter().flat_map(|k| (1..=max_level).map(move |n| (k.clone(), n))).collect();
    let results: Vec<Result<(Vec<usize>, Option<String>)>> =
        jobs.par_iter().map(|(key, n)| check_graded_slice(model, r, key, *n)).collect();
    let mut report =
        Poin05Report { r, slices: jobs.len(), dims: vec![0; model.rho + 1], ses_exact, counterexample: None };
    for res in results {
        let (dims, failure) = res?;
        for (total, d) in report.dims.iter_mut().zip(dims) {
            *total += d;
        }
        if report.counterexample.is_none() {
            report.counterexample = failure;
        }
    }
    Ok(report)
}

fn check_graded_slice(
    model: &PrimeFiltrationModel,
    r: usize,
    key: &[i64],
    n: usize,
) -> Result<(Vec<usize>, Option<String>)> {
    let rho = model.rho;
    let x = model.x_model.slice_complex(key, n)?;
    let w = model.t_side.complement.len();
    let sign = if r.is_multiple_of(2) { Q::one() } else { -Q::one() };
    let left: Option<GradedComplex<FormBasis>> =
        if n > r { Some(model.t_model.slice_complex(key, n - r)?) } else { None };
    let present = |qdeg: usize| x.dim(qdeg as i32) > 0;
    // e_J coordinates → slice basis coordinates
    let subset_index: Vec<HashMap<Vec<usize>, usize>> =
        (0..=rho).map(|qdeg| subsets(rho, qdeg).into_iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let to_slice = |qdeg: usize, v: &[Q]| -> Vec<Q> {
        x.basis(qdeg as i32).unwrap_or(&[]).iter().map(|b| v[subset_index[qdeg][&b.forms]].clone()).collect()
    };
    let fil = |qdeg: usize, level: i64| -> Vec<Vec<Q>> {
        if !present(qdeg) {
            return Vec::new();
        }
        model.filtration_vectors(qdeg, level).iter().map(|v| to_slice(qdeg, v)).collect()
    };
    let mut dims = vec![0; rho + 1];
    for qdeg in 0..=rho {
        let len = x.dim(qdeg as i32);
        let f_r = fil(qdeg, r as i64);
        let f_lower = fil(qdeg, r as i64 - 1);
        // subcomplex property
        if qdeg < rho {
            let next_len = x.dim(qdeg as i32 + 1);
            let d = x.differential(qdeg as i32);
            for (level, span) in [(r as i64, &f_r), (r as i64 - 1, &f_lower)] {
                let images: Vec<Vec<Q>> = span.iter().map(|v| d.mul_vec(v)).collect();
                if !span_contains(&fil(qdeg + 1, level), &images, next_len) {
                    return Ok((
                        dims,
                        Some(format!("F_{level} is not a subcomplex in degree {qdeg} on slice {key:?}")),
                    ));
                }
            }
        }
        // left side in degree qdeg: w_A ⊗ (T-side degree qdeg − r)
        let mut left_cols = Vec::new();
        let mut left_d_cols = Vec::new();
        if let Some(l) = &left {
            if qdeg >= r && present(qdeg) {
                let tq = (qdeg - r) as i32;
                let tb = l.basis(tq).unwrap_or(&[]);
                let td = l.differential(tq);
                let tnext = l.basis(tq + 1).unwrap_or(&[]);
                for aset in subsets(w, r) {
                    for (j, b) in tb.iter().enumerate() {
                        left_cols.push(to_slice(qdeg, &model.phi(&aset, &b.forms)));
                        // φ((−1)^r (id ⊗ d) x) − d φ(x)
                        let mut lhs = vec![Q::zero(); x.dim(qdeg as i32 + 1)];
                        if qdeg < rho && present(qdeg + 1) {
                            for (i, b2) in tnext.iter().enumerate() {
                                let c = td.get(i, j);
                                if c.is_zero() {
                                    continue;
                                }
                                let img = to_slice(qdeg + 1, &model.phi(&aset, &b2.forms));
                                for (s, v) in lhs.iter_mut().zip(img) {
                                    *s += &sign * c * v;
                                }
                            }
                            let dphi = x.differential(qdeg as i32).mul_vec(left_cols.last().expect("just pushed"));
                            for (s, v) in lhs.iter_mut().zip(dphi) {
                                *s -= v;
                            }
                        }
                        left_d_cols.push(lhs);
                    }
                }
            }
        }
        if qdeg < rho && !span_contains(&fil(qdeg + 1, r as i64 - 1), &left_d_cols, x.dim(qdeg as i32 + 1)) {
            return Ok((dims, Some(format!("graded map is not a chain map in degree {qdeg} on slice {key:?}"))));
        }
        let lower_rank = RationalMatrix::from_columns(len, &f_lower).rank();
        let r_rank = RationalMatrix::from_columns(len, &f_r).rank();
        let joined = RationalMatrix::from_columns(len, &[f_lower.clone(), left_cols.clone()].concat()).rank();
        if joined != lower_rank + left_cols.len() || joined != r_rank {
            return Ok((
                dims,
                Some(format!(
                    "graded map is not bijective in degree {qdeg} on slice {key:?}: {} ↦ {} of {}",
                    left_cols.len(),
                    joined - lower_rank,
                    r_rank - lower_rank
                )),
            ));
        }
        dims[qdeg] = left_cols.len();
    }
    Ok((dims, None))
}

/// `O_{X|̂Y,x}[T_1, …, T_ρ] ⊗ ω^•` with `d T_i = dlog t_i`, at a point `x`
/// with characteristic lattice of rank `ρ`.
#[derive(Clone, Debug)]
pub struct LogStalkModel {
    base: FormModel,
    rho: usize,
}

/// Point subschemes only: `Y` supported at the deep point of `P`, or a
/// translated point.
pub fn build_stalk_log_model(scene: &LogScene) -> Result<LogStalkModel> {
    let base = FormModel::for_scene(scene)?;
    if let Subscheme::Monomial(ideal) = &scene.subscheme {
        if !supported_at_deep_point(ideal) {
            return Err(Error::UnsupportedScene("the stalk model needs Y supported at a point".into()));
        }
    }
    let rho = base.log_rank();
    Ok(LogStalkModel { base, rho })
}

impl LogStalkModel {
    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn omega_rank(&self) -> usize {
        self.base.omega_rank()
    }

    /// `T`-degrees in `t_min..=t_max`.
    pub fn with_t_range(&self, t_min: usize, t_max: usize) -> FormModel {
        self.base.clone().with_t_variables((0..self.rho).collect(), t_min, t_max)
    }

    /// `T`-degree `≤ a` at adic level `n`.
    pub fn complex(&self, key: &[i64], a: usize, n: usize) -> Result<GradedComplex<FormBasis>> {
        self.with_t_range(0, a).slice_complex(key, n)
    }

    fn keys(&self) -> Result<Vec<Vec<i64>>> {
        self.base.keys_up_to_degree(self.base.ideal().max_generator_degree().max(1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StalkReport {
    pub dims: Vec<usize>,
    pub stabilized_at: usize,
    /// Bi-image dims per tested bound.
    pub trace: Vec<Vec<usize>>,
}

impl StalkReport {
    pub fn passed(&self) -> bool {
        self.dims.first() == Some(&1) && self.dims.iter().skip(1).all(|&d| d == 0)
    }
}

/// Cohomology of the double tower: at bound `ℓ` the image of
/// `H(C_{ℓ, ℓ+w}) → H(C_{ℓ+w, ℓ})`, where `C_{a,n}` keeps `T`-degree `≤ a`
/// at adic level `n`. Stable once `window` consecutive bounds agree.
pub fn verify_stalk_poincare(model: &LogStalkModel, max_bound: usize, window: usize) -> Result<StalkReport> {
    let keys = model.keys()?;
    let w = window.max(1);
    let first = model.omega_rank() + 1;
    let mut trace: Vec<Vec<usize>> = Vec::new();
    let mut ell = first;
    while ell + w <= max_bound {
        let per_key: Vec<Result<Vec<usize>>> = keys.par_iter().map(|key| bi_image(model, key, ell, w)).collect();
        let mut dims = vec![0; model.omega_rank() + 1];
        for d in per_key {
            for (total, x) in dims.iter_mut().zip(d?) {
                *total += x;
            }
        }
        trace.push(dims);
        if trace.len() >= w && trace[trace.len() - w..].windows(2).all(|p| p[0] == p[1]) {
            let stabilized_at = ell + 1 - w;
            return Ok(StalkReport { dims: trace.last().cloned().expect("nonempty"), stabilized_at, trace });
        }
        ell += 1;
    }
    Err(Error::NotStabilized { max_level: max_bound, trace })
}

fn bi_image(model: &LogStalkModel, key: &[i64], ell: usize, w: usize) -> Result<Vec<usize>> {
    let source = model.complex(key, ell, ell + w)?;
    let target = model.complex(key, ell + w, ell)?;
    let f = ChainMap::by_labels(&source, &target);
    let hs = source.cohomology();
    let ht = target.cohomology();
    Ok((0..=model.omega_rank()).map(|qdeg| f.induced_on_cohomology(&hs, &ht, qdeg as i32).rank()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilReport {
    pub r: usize,
    pub dims: Vec<usize>,
    pub expected: Vec<usize>,
    pub stabilized_at: usize,
}

impl FilReport {
    pub fn passed(&self) -> bool {
        self.dims == self.expected
    }
}

/// Completed cohomology of `Fil_r/Fil_{r−1}` (exactly `T`-degree `r`),
/// against `C(ρ, q) · dim Sym^r ℚ^ρ`.
pub fn verify_fil_graded(model: &LogStalkModel, r: usize, max_level: usize, window: usize) -> Result<FilReport> {
    let h = model.with_t_range(r, r).completed_cohomology(max_level, window)?;
    let sym = if model.rho == 0 { usize::from(r == 0) } else { binomial(model.rho + r - 1, r) };
    let expected = binomial_dims(model.rho, model.omega_rank()).into_iter().map(|d| d * sym).collect();
    Ok(FilReport { r, dims: h.dims, expected, stabilized_at: h.stabilized_at })
}
