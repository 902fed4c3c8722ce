//! Combinatorial homotopy models of the Kato–Nakayama space of `Y` and its
//! rational cohomology by Mayer–Vietoris over a closed cover.
//!
//! Each piece of the cover is homotopy equivalent to a real torus whose
//! circle factors are labelled by logged coordinates (or `P^gp` basis
//! vectors). Restriction to a smaller piece keeps the circles whose labels
//! survive.

use std::collections::BTreeSet;

use crate::derham::{binomial, completed_cohomology, supported_at_deep_point};
use crate::error::{Error, Result};
use crate::linalg::complex::GradedComplex;
use crate::linalg::rational::{RationalMatrix, Q};
use crate::monoid::{prime_quotient, subsets, FsMonoid, MonoidPrime};
use crate::scene::{LogScene, Subscheme};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnPiece {
    pub name: String,
    /// Circle labels; the piece is `(S¹)^{circles.len()}` up to homotopy.
    pub circles: Vec<usize>,
}

impl KnPiece {
    pub fn rho(&self) -> usize {
        self.circles.len()
    }
}

/// A nonempty intersection of pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveCell {
    pub members: Vec<usize>,
    pub circles: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnStratModel {
    pub pieces: Vec<KnPiece>,
    pub nerve: Vec<NerveCell>,
}

impl KnStratModel {
    /// Pieces whose intersections are all nonempty, each intersection
    /// carrying the circles common to its members.
    pub fn from_pieces(pieces: Vec<KnPiece>) -> Self {
        let mut nerve = Vec::new();
        for size in 1..=pieces.len() {
            for members in subsets(pieces.len(), size) {
                let mut circles: BTreeSet<usize> = pieces[members[0]].circles.iter().copied().collect();
                for &m in &members[1..] {
                    let other: BTreeSet<usize> = pieces[m].circles.iter().copied().collect();
                    circles = circles.intersection(&other).copied().collect();
                }
                nerve.push(NerveCell { members, circles: circles.into_iter().collect() });
            }
        }
        Self { pieces, nerve }
    }

    pub fn max_rho(&self) -> usize {
        self.pieces.iter().map(KnPiece::rho).max().unwrap_or(0)
    }
}

/// `ρ` at a point where exactly the generators in `face` are invertible.
pub fn kn_point_model(monoid: &FsMonoid, face: &[usize]) -> Result<usize> {
    Ok(prime_quotient(&MonoidPrime::new(monoid.clone(), face.to_vec())?)?.free_rank)
}

pub fn torus_cohomology(rho: usize, qdeg: usize) -> usize {
    binomial(rho, qdeg)
}

/// Minimal `B ⊆ [n]` meeting every generator support: `Y = ⋃ V(z_B)`.
pub fn minimal_vertex_covers(n: usize, generators: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let supports: Vec<Vec<usize>> = generators.iter().map(|g| (0..n).filter(|&i| g[i] != 0).collect()).collect();
    let mut covers: Vec<Vec<usize>> = Vec::new();
    for size in 0..=n {
        for b in subsets(n, size) {
            if !supports.iter().all(|s| s.iter().any(|i| b.contains(i))) {
                continue;
            }
            if covers.iter().any(|c| c.iter().all(|i| b.contains(i))) {
                continue;
            }
            covers.push(b);
        }
    }
    covers
}

pub fn build_kn_model(scene: &LogScene) -> Result<KnStratModel> {
    match &scene.subscheme {
        Subscheme::FatPoint(point) => {
            let circles = point.vanishing_log();
            Ok(KnStratModel::from_pieces(vec![KnPiece { name: "point".into(), circles }]))
        }
        Subscheme::Monomial(ideal) => {
            if scene.is_free_standard() {
                let n = scene.monoid.ambient_rank() + scene.smooth_vars;
                let r = scene.monoid.ambient_rank();
                let pieces = minimal_vertex_covers(n, ideal.generators())
                    .into_iter()
                    .map(|b| KnPiece {
                        name: format!("V(z{:?})", b.iter().map(|i| i + 1).collect::<Vec<_>>()),
                        circles: (0..r).collect(),
                    })
                    .collect();
                Ok(KnStratModel::from_pieces(pieces))
            } else if supported_at_deep_point(ideal) {
                let rho = kn_point_model(&scene.monoid, &[])?;
                Ok(KnStratModel::from_pieces(vec![KnPiece { name: "deep point".into(), circles: (0..rho).collect() }]))
            } else {
                Err(Error::UnsupportedScene(
                    "no Kato–Nakayama model for a non-free monoid with Y between the deep point and X".into(),
                ))
            }
        }
    }
}

/// Restriction `⋀^q ℚ^{from} → ⋀^q ℚ^{to}` keeping surviving labels.
fn restriction(from: &[usize], to: &[usize], qdeg: usize) -> RationalMatrix {
    let src = subsets(from.len(), qdeg);
    let dst = subsets(to.len(), qdeg);
    let mut m = RationalMatrix::zeros(dst.len(), src.len());
    for (j, s) in src.iter().enumerate() {
        let labels: Vec<usize> = s.iter().map(|&i| from[i]).collect();
        let Some(positions) = labels.iter().map(|l| to.iter().position(|x| x == l)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let Some((sign, sorted)) = crate::derham::sort_with_sign(&positions) else {
            continue;
        };
        let i = dst.iter().position(|d| d == &sorted).expect("subset of the target");
        m.set(i, j, Q::from_integer(sign.into()));
    }
    m
}

/// The Čech complex of the `q`-th row: `p ↦ ⊕_{|σ| = p+1} H^q(U_σ)`.
pub fn cech_row(model: &KnStratModel, qdeg: usize) -> Result<GradedComplex<(Vec<usize>, Vec<usize>)>> {
    let max_p = model.pieces.len();
    let mut bases: Vec<Vec<(Vec<usize>, Vec<usize>)>> = Vec::new();
    let mut cells_by_p: Vec<Vec<&NerveCell>> = Vec::new();
    for p in 0..max_p {
        let cells: Vec<&NerveCell> = model.nerve.iter().filter(|c| c.members.len() == p + 1).collect();
        let basis = cells
            .iter()
            .flat_map(|c| subsets(c.circles.len(), qdeg).into_iter().map(|s| (c.members.clone(), s)))
            .collect();
        bases.push(basis);
        cells_by_p.push(cells);
    }
    let mut differentials = Vec::new();
    for p in 0..max_p.saturating_sub(1) {
        let mut m = RationalMatrix::zeros(bases[p + 1].len(), bases[p].len());
        let col_offsets = offsets(&cells_by_p[p], qdeg);
        let row_offsets = offsets(&cells_by_p[p + 1], qdeg);
        for (ti, target) in cells_by_p[p + 1].iter().enumerate() {
            for (i, _) in target.members.iter().enumerate() {
                let face: Vec<usize> =
                    target.members.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
                let si = cells_by_p[p].iter().position(|c| c.members == face).expect("nerve closed under faces");
                let r = restriction(&cells_by_p[p][si].circles, &target.circles, qdeg);
                let sign = if i % 2 == 0 { Q::from_integer(1.into()) } else { Q::from_integer((-1).into()) };
                for a in 0..r.rows() {
                    for b in 0..r.cols() {
                        let v = r.get(a, b);
                        if !num_traits::Zero::is_zero(v) {
                            m.add_to(row_offsets[ti] + a, col_offsets[si] + b, &(&sign * v));
                        }
                    }
                }
            }
        }
        differentials.push(m);
    }
    GradedComplex::new(0, bases, differentials)
}

fn offsets(cells: &[&NerveCell], qdeg: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(cells.len());
    let mut acc = 0;
    for c in cells {
        out.push(acc);
        acc += binomial(c.circles.len(), qdeg);
    }
    out
}

/// `dim H^k(Y^log, ℚ)` as the total of `E_2^{p,q} = Ȟ^p(H^q)` along `p + q = k`.
pub fn mv_betti(model: &KnStratModel) -> Result<Vec<usize>> {
    let top = model.max_rho() + model.pieces.len().saturating_sub(1);
    let mut dims = vec![0; top + 1];
    for qdeg in 0..=model.max_rho() {
        let row = cech_row(model, qdeg)?.cohomology();
        for p in 0..model.pieces.len() {
            dims[p + qdeg] += row.dim(p as i32);
        }
    }
    while dims.len() > 1 && dims.last() == Some(&0) {
        dims.pop();
    }
    Ok(dims)
}

/// `Σ_σ (−1)^{|σ|−1} χ(U_σ)`.
pub fn nerve_euler_characteristic(model: &KnStratModel) -> i64 {
    model
        .nerve
        .iter()
        .map(|c| {
            let chi: i64 = (0..=c.circles.len())
                .map(|q| (if q % 2 == 0 { 1 } else { -1 }) * binomial(c.circles.len(), q) as i64)
                .sum();
            if c.members.len() % 2 == 1 {
                chi
            } else {
                -chi
            }
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    pub algebraic: Vec<usize>,
    pub betti: Vec<usize>,
    pub stabilized_at: usize,
}

impl CompareReport {
    pub fn passed(&self) -> bool {
        let n = self.algebraic.len().max(self.betti.len());
        (0..n).all(|q| self.algebraic.get(q).copied().unwrap_or(0) == self.betti.get(q).copied().unwrap_or(0))
    }

    /// First degree where the two sides differ.
    pub fn mismatch(&self) -> Option<usize> {
        let n = self.algebraic.len().max(self.betti.len());
        (0..n).find(|&q| self.algebraic.get(q).copied().unwrap_or(0) != self.betti.get(q).copied().unwrap_or(0))
    }
}

/// Completed log de Rham cohomology against the Mayer–Vietoris Betti numbers.
pub fn compare_theorem_f00(scene: &LogScene) -> Result<CompareReport> {
    let model = build_kn_model(scene)?;
    let betti = mv_betti(&model)?;
    let h = completed_cohomology(scene)?;
    Ok(CompareReport { algebraic: h.dims, betti, stabilized_at: h.stabilized_at })
}
