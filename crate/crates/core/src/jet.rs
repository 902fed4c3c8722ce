//! Log jet algebras in the ξ-basis, the linearized de Rham complex with its
//! explicit contracting homotopy, and the Čech (cosimplicial) exactness
//! checks on the first two widths.
//!
//! `𝒫^{ν,i}` is free over `O` on the monomials in `ν` blocks of variables
//! `ξ^{(1)}, …, ξ^{(ν)}` (each of length `r`) of total degree at most `i`.
//! For `t_j` with `dlog t_j` a basis of `ω¹`, `u_j = 1 + ξ_j` is the unit
//! with `p_2^*(t_j) = p_1^*(t_j) u_j`.
//!
//! Coface convention for `ν = 2`, with `ξ′` the first block and `ξ″` the
//! second: `δ_0(ξ) = ξ″`, `δ_1(ξ) = ξ′ + ξ″ + ξ′ξ″`, `δ_2(ξ) = ξ′`, and `δ_0`
//! twists coefficients `χ^m ↦ χ^m ∏(1 + ξ′_j)^{m_j}`. For `ν = 1`,
//! `δ_0(χ^m) = χ^m u^m` and `δ_1(χ^m) = χ^m`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::derham::{binomial, wedge_front};
use crate::error::{Error, Result};
use crate::linalg::complex::GradedComplex;
use crate::linalg::rational::{q, RationalMatrix, Q};
use crate::monoid::subsets;
use crate::scene::LogScene;

/// Multi-indices in `ν·r` variables with total degree `≤ i`, graded
/// lexicographic.
pub fn jet_basis(r: usize, i: usize, nu: usize) -> Vec<Vec<u32>> {
    let vars = r * nu;
    let mut out = Vec::new();
    for total in 0..=i {
        let mut level = Vec::new();
        compositions(vars, total, &mut Vec::new(), &mut level);
        out.extend(level);
    }
    out
}

fn compositions(vars: usize, total: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == vars {
        prefix.push(total as u32);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if vars == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for x in (0..=total).rev() {
        prefix.push(x as u32);
        compositions(vars, total - x, prefix, out);
        prefix.pop();
    }
}

fn weight(n: &[u32]) -> usize {
    n.iter().map(|&x| x as usize).sum()
}

/// `ξ^n ⊗ χ^m dlog_I` with `m` in lattice coordinates (all zero for
/// constant forms).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetTerm {
    pub coeff: Vec<i64>,
    pub xi: Vec<u32>,
    pub forms: Vec<usize>,
}

impl JetTerm {
    pub fn constant(xi: Vec<u32>, forms: Vec<usize>) -> Self {
        let r = xi.len();
        Self { coeff: vec![0; r], xi, forms }
    }
}

pub type JetVector = BTreeMap<JetTerm, Q>;

fn add_term(v: &mut JetVector, t: JetTerm, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(t.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        v.remove(&t);
    }
}

/// `L(d)_i(ξ^n ⊗ ω) = Σ_j n_j ξ^{n−e_j} ⊗ dlog t_j ∧ ω + ξ^n ⊗ dω`, landing in
/// `𝒫^{1,i−1} ⊗ ω^{k+1}`.
pub fn linearized_differential(r: usize, i: usize, term: &JetTerm) -> Result<JetVector> {
    assert_eq!(term.xi.len(), r, "jet exponent of the wrong rank");
    let deg = weight(&term.xi);
    if deg > i {
        return Err(Error::DegreeOverflow { degree: deg, order: i });
    }
    let mut out = JetVector::new();
    for j in 0..r {
        let nj = term.xi[j];
        if nj == 0 {
            continue;
        }
        if let Some((sign, forms)) = wedge_front(j, &term.forms) {
            let mut xi = term.xi.clone();
            xi[j] -= 1;
            add_term(&mut out, JetTerm { coeff: term.coeff.clone(), xi, forms }, q(i64::from(nj) * i64::from(sign)));
        }
    }
    if deg < i {
        for (j, &mj) in term.coeff.iter().enumerate() {
            if mj == 0 {
                continue;
            }
            if let Some((sign, forms)) = wedge_front(j, &term.forms) {
                add_term(
                    &mut out,
                    JetTerm { coeff: term.coeff.clone(), xi: term.xi.clone(), forms },
                    q(mj * i64::from(sign)),
                );
            }
        }
    }
    Ok(out)
}

/// Scalar in front of `s_p` on `ξ^α ⊗ dlog_I`, `k = |α|`, `p = |I|`.
pub type HomotopyScale = fn(k: usize, p: usize) -> Q;

pub fn standard_scale(k: usize, p: usize) -> Q {
    if k == 0 {
        Q::new(BigInt::one(), BigInt::from(p))
    } else {
        Q::new(BigInt::one(), BigInt::from(k + p))
    }
}

/// `s_p(ξ^α ⊗ dlog t_{i_1} ∧ … ∧ dlog t_{i_p}) =
/// c · Σ_m (−1)^{m+1} ξ^α ξ_{i_m} ⊗ dlog_{I ∖ i_m}`, for `p ≥ 1`.
pub fn homotopy_s(term: &JetTerm, scale: HomotopyScale) -> JetVector {
    let p = term.forms.len();
    let mut out = JetVector::new();
    if p == 0 {
        return out;
    }
    let c = scale(weight(&term.xi), p);
    for (m, &im) in term.forms.iter().enumerate() {
        let mut xi = term.xi.clone();
        xi[im] += 1;
        let forms: Vec<usize> = term.forms.iter().copied().filter(|&x| x != im).collect();
        let sign = if m % 2 == 0 { q(1) } else { q(-1) };
        add_term(&mut out, JetTerm { coeff: term.coeff.clone(), xi, forms }, sign * &c);
    }
    out
}

/// `s_0`: the coefficient of `ξ^0 ⊗ 1`.
pub fn homotopy_s0(term: &JetTerm) -> Q {
    if term.forms.is_empty() && weight(&term.xi) == 0 {
        Q::one()
    } else {
        Q::zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyReport {
    pub rank: usize,
    pub order: usize,
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `s_0 ∘ d_0 = id` and `d ∘ s + s ∘ d = id` on every basis element
/// of `O → 𝒫^{1,i} → 𝒫^{1,i−1} ⊗ ω¹ → …`.
pub fn verify_homotopy_identities(r: usize, i: usize) -> HomotopyReport {
    verify_homotopy_identities_with(r, i, standard_scale)
}

pub fn verify_homotopy_identities_with(r: usize, i: usize, scale: HomotopyScale) -> HomotopyReport {
    let mut report = HomotopyReport { rank: r, order: i, checked: 1, counterexample: None };
    // s_0 ∘ d_0 on 1 ∈ O: d_0(1) = ξ^0 ⊗ 1
    if homotopy_s0(&JetTerm::constant(vec![0; r], vec![])) != Q::one() {
        report.counterexample = Some("s_0 ∘ d_0 ≠ id on 1".into());
        return report;
    }
    for p in 0..=r.min(i) {
        for forms in subsets(r, p) {
            for xi in jet_basis(r, i - p, 1) {
                report.checked += 1;
                let x = JetTerm::constant(xi, forms.clone());
                let lhs = match homotopy_identity_lhs(r, i, p, &x, scale) {
                    Ok(v) => v,
                    Err(e) => {
                        report.counterexample = Some(format!("{}: {e}", describe(&x)));
                        return report;
                    }
                };
                let mut expected = JetVector::new();
                expected.insert(x.clone(), Q::one());
                if lhs != expected {
                    report.counterexample = Some(format!("d∘s + s∘d ≠ id on {}", describe(&x)));
                    return report;
                }
            }
        }
    }
    report
}

fn homotopy_identity_lhs(r: usize, i: usize, p: usize, x: &JetTerm, scale: HomotopyScale) -> Result<JetVector> {
    let mut out = JetVector::new();
    // d_{p−1} ∘ s_p
    if p == 0 {
        let c = homotopy_s0(x);
        add_term(&mut out, JetTerm::constant(vec![0; r], vec![]), c);
    } else {
        for (t, c) in homotopy_s(x, scale) {
            for (t2, c2) in linearized_differential(r, i - p + 1, &t)? {
                add_term(&mut out, t2, c.clone() * c2);
            }
        }
    }
    // s_{p+1} ∘ d_p
    if i > p {
        for (t, c) in linearized_differential(r, i - p, x)? {
            for (t2, c2) in homotopy_s(&t, scale) {
                add_term(&mut out, t2, c.clone() * c2);
            }
        }
    }
    Ok(out)
}

pub fn describe(t: &JetTerm) -> String {
    let xi = if weight(&t.xi) == 0 {
        "1".to_string()
    } else {
        t.xi.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| if e == 1 { format!("ξ{}", j + 1) } else { format!("ξ{}^{e}", j + 1) })
            .collect::<Vec<_>>()
            .join("·")
    };
    let forms = if t.forms.is_empty() {
        "1".to_string()
    } else {
        t.forms.iter().map(|j| format!("dlog t{}", j + 1)).collect::<Vec<_>>().join("∧")
    };
    format!("{xi} ⊗ {forms}")
}

/// The linearized complex at order `i` as a graded complex: position `p`
/// is `𝒫^{1,i−p} ⊗ ω^p`, forms with the coefficient `χ^m`.
pub fn linearized_complex(r: usize, i: usize, m: &[i64]) -> Result<GradedComplex<JetTerm>> {
    let bases: Vec<Vec<JetTerm>> = (0..=r)
        .map(|p| {
            if p > i {
                return Vec::new();
            }
            subsets(r, p)
                .into_iter()
                .flat_map(|forms| {
                    jet_basis(r, i - p, 1).into_iter().map(move |xi| JetTerm {
                        coeff: m.to_vec(),
                        xi,
                        forms: forms.clone(),
                    })
                })
                .collect()
        })
        .collect();
    let mut differentials = Vec::new();
    for p in 0..r {
        let index: HashMap<&JetTerm, usize> = bases[p + 1].iter().enumerate().map(|(k, t)| (t, k)).collect();
        let mut mat = RationalMatrix::zeros(bases[p + 1].len(), bases[p].len());
        if p < i {
            for (col, t) in bases[p].iter().enumerate() {
                for (t2, c) in linearized_differential(r, i - p, t)? {
                    let row = *index
                        .get(&t2)
                        .ok_or_else(|| Error::ShapeMismatch(format!("{} left the complex", describe(&t2))))?;
                    mat.add_to(row, col, &c);
                }
            }
        }
        differentials.push(mat);
    }
    GradedComplex::new(0, bases, differentials)
}

/// Truncated polynomial in `vars` variables.
pub type Poly = BTreeMap<Vec<u32>, Q>;

fn poly_mul(a: &Poly, b: &Poly, order: usize) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if weight(&e) > order {
                continue;
            }
            let entry = out.entry(e).or_insert_with(Q::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_one(vars: usize) -> Poly {
    Poly::from([(vec![0; vars], Q::one())])
}

fn poly_var(vars: usize, j: usize) -> Poly {
    let mut e = vec![0; vars];
    e[j] = 1;
    Poly::from([(e, Q::one())])
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(e.clone()).or_insert_with(Q::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_scale(a: &Poly, s: &Q) -> Poly {
    let mut out: Poly = a.iter().map(|(e, c)| (e.clone(), c * s)).collect();
    out.retain(|_, c| !c.is_zero());
    out
}

/// `(1 + x)^c` truncated at `order`, generalized binomial for `c < 0`.
fn binomial_series(x: &Poly, c: i64, order: usize, vars: usize) -> Poly {
    let mut out = poly_one(vars);
    let mut power = poly_one(vars);
    let mut coeff = Q::one();
    for k in 1..=order as i64 {
        coeff = coeff * q(c - k + 1) / q(k);
        if coeff.is_zero() {
            break;
        }
        power = poly_mul(&power, x, order);
        out = poly_add(&out, &poly_scale(&power, &coeff));
    }
    out
}

/// A ring map out of `𝒫^{ν−1,i}` into `𝒫^{ν,i}`: images of the `ξ`
/// variables, and optionally a block whose units twist coefficients
/// (`χ^m ↦ χ^m ∏ u_j^{m_j}`).
#[derive(Clone, Debug, PartialEq)]
pub struct Coface {
    pub xi_images: Vec<Poly>,
    pub twist_block: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CofaceVariant {
    Standard,
    /// Middle coface truncated to its first block, `δ_1(ξ) = ξ′`.
    TruncatedMiddle,
}

/// The cofaces into width `nu` (1 or 2) for rank `r`.
pub fn cech_faces(nu: usize, r: usize) -> Result<Vec<Coface>> {
    cech_faces_variant(nu, r, CofaceVariant::Standard)
}

pub fn cech_faces_variant(nu: usize, r: usize, variant: CofaceVariant) -> Result<Vec<Coface>> {
    match nu {
        1 => Ok(vec![
            Coface { xi_images: Vec::new(), twist_block: Some(0) },
            Coface { xi_images: Vec::new(), twist_block: None },
        ]),
        2 => {
            let vars = 2 * r;
            let first = |j: usize| poly_var(vars, j);
            let second = |j: usize| poly_var(vars, r + j);
            let outer0 = (0..r).map(second).collect();
            let middle = (0..r)
                .map(|j| match variant {
                    CofaceVariant::Standard => {
                        let prod = poly_mul(&first(j), &second(j), usize::MAX);
                        poly_add(&poly_add(&first(j), &second(j)), &prod)
                    }
                    CofaceVariant::TruncatedMiddle => first(j),
                })
                .collect();
            let outer2 = (0..r).map(first).collect();
            Ok(vec![
                Coface { xi_images: outer0, twist_block: Some(0) },
                Coface { xi_images: middle, twist_block: None },
                Coface { xi_images: outer2, twist_block: None },
            ])
        }
        _ => Err(Error::WidthUnsupported(nu)),
    }
}

/// Image of `χ^m · f(ξ)` under a coface into width `nu`; returns the
/// polynomial multiplying `χ^m`.
pub fn apply_coface(face: &Coface, r: usize, nu: usize, order: usize, m: &[i64], f: &Poly) -> Poly {
    let vars = r * nu;
    let mut image = Poly::new();
    for (e, c) in f {
        let mut term = poly_one(vars);
        for (j, &ej) in e.iter().enumerate() {
            for _ in 0..ej {
                term = poly_mul(&term, &face.xi_images[j], order);
            }
        }
        image = poly_add(&image, &poly_scale(&term, c));
    }
    if let Some(block) = face.twist_block {
        let mut twist = poly_one(vars);
        for (j, &mj) in m.iter().enumerate() {
            if mj != 0 {
                let x = poly_var(vars, block * r + j);
                twist = poly_mul(&twist, &binomial_series(&x, mj, order, vars), order);
            }
        }
        image = poly_mul(&image, &twist, order);
    }
    image
}

fn monomial_poly(e: &[u32]) -> Poly {
    Poly::from([(e.to_vec(), Q::one())])
}

/// Checks `δ_j δ_i = δ_i δ_{j−1}` (`i < j`) on `O → 𝒫^{2,i}` for the given
/// coefficient exponents, and group-likeness `δ_1(u) = δ_2(u)·δ_0(u)`.
pub fn verify_cosimplicial_identities(
    r: usize,
    i: usize,
    exponents: &[Vec<i64>],
    variant: CofaceVariant,
) -> Result<bool> {
    let f1 = cech_faces_variant(1, r, variant)?;
    let f2 = cech_faces_variant(2, r, variant)?;
    let one1 = poly_one(r);
    for m in exponents {
        let via = |outer: usize, inner: usize| {
            let p = apply_coface(&f1[inner], r, 1, i, m, &one1);
            apply_coface(&f2[outer], r, 2, i, m, &p)
        };
        for (a, b) in [((1, 0), (0, 0)), ((2, 0), (0, 1)), ((2, 1), (1, 1))] {
            if via(a.0, a.1) != via(b.0, b.1) {
                return Ok(false);
            }
        }
    }
    for j in 0..r {
        let u = poly_add(&poly_one(r), &poly_var(r, j));
        let image = |k: usize| apply_coface(&f2[k], r, 2, i, &vec![0; r], &u);
        if image(1) != poly_mul(&image(2), &image(0), i) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechSlice {
    pub exponent: Vec<i64>,
    /// `rank α`, `rank(δ_2 − δ_1)`, `dim 𝒫^{1,i}`.
    pub ranks: (usize, usize, usize),
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechReport {
    pub slices: Vec<CechSlice>,
    pub cosimplicial_identities: bool,
}

impl CechReport {
    pub fn passed(&self) -> bool {
        self.cosimplicial_identities && self.slices.iter().all(|s| s.exact)
    }
}

/// Per slice `χ^m ∉ ℐ^n`: `O → 𝒫^{1,i} → 𝒫^{2,i}` with augmentation
/// `a ↦ a` and differential `δ_2 − δ_1` (the cofaces that fix copy 0) is
/// injective, and exact at `𝒫^{1,i}` when `ν_max = 2`.
pub fn verify_cech_exactness(scene: &LogScene, nu_max: usize, i: usize, n: usize) -> Result<CechReport> {
    verify_cech_exactness_variant(scene, nu_max, i, n, CofaceVariant::Standard)
}

pub fn verify_cech_exactness_variant(
    scene: &LogScene,
    nu_max: usize,
    i: usize,
    n: usize,
    variant: CofaceVariant,
) -> Result<CechReport> {
    if nu_max > 2 {
        return Err(Error::WidthUnsupported(nu_max));
    }
    if scene.smooth_vars > 0 {
        return Err(Error::UnsupportedScene("Čech checks are implemented for purely logarithmic charts".into()));
    }
    let ideal = scene.monomial_ideal()?;
    let lattice = scene.monoid.groupify();
    let r = lattice.rank();
    let max_degree = ideal.max_generator_degree().max(1) * n as i64;
    let mut slices = Vec::new();
    let mut exponents = Vec::new();
    for m in scene.monoid.elements_up_to_degree(max_degree)? {
        if ideal.adic_order(&m)?.is_some_and(|o| o >= n) {
            continue;
        }
        let coords = lattice.coordinates(&m).expect("monoid element in P^gp");
        exponents.push(coords.clone());
        slices.push(cech_slice(r, i, nu_max, &m, &coords, variant)?);
    }
    let cosimplicial_identities = verify_cosimplicial_identities(r, i, &exponents, variant)?;
    Ok(CechReport { slices, cosimplicial_identities })
}

fn cech_slice(
    r: usize,
    i: usize,
    nu_max: usize,
    m: &[i64],
    coords: &[i64],
    variant: CofaceVariant,
) -> Result<CechSlice> {
    let p1 = jet_basis(r, i, 1);
    let p2 = jet_basis(r, i, 2);
    let alpha = {
        let mut a = RationalMatrix::zeros(p1.len(), 1);
        a.set(0, 0, Q::one());
        a
    };
    let rank_alpha = alpha.rank();
    if nu_max < 2 {
        return Ok(CechSlice { exponent: m.to_vec(), ranks: (rank_alpha, 0, p1.len()), exact: rank_alpha == 1 });
    }
    let faces = cech_faces_variant(2, r, variant)?;
    let index: HashMap<&Vec<u32>, usize> = p2.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let mut delta = RationalMatrix::zeros(p2.len(), p1.len());
    for (col, e) in p1.iter().enumerate() {
        let f = monomial_poly(e);
        let img = poly_add(
            &apply_coface(&faces[2], r, 2, i, coords, &f),
            &poly_scale(&apply_coface(&faces[1], r, 2, i, coords, &f), &q(-1)),
        );
        for (e2, c) in img {
            delta.add_to(index[&e2], col, &c);
        }
    }
    let composite_zero = delta.mul(&alpha).is_zero();
    let rank_delta = delta.rank();
    let exact = composite_zero && rank_alpha == 1 && rank_alpha + rank_delta == p1.len();
    Ok(CechSlice { exponent: m.to_vec(), ranks: (rank_alpha, rank_delta, p1.len()), exact })
}

pub fn expected_jet_count(r: usize, i: usize) -> usize {
    binomial(r + i, r)
}
