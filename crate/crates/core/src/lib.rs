//! Exact computation of the logarithmic de Rham cohomology of affine toric
//! log schemes completed along a subscheme, with the combinatorial and
//! linear-algebra checks that compare it to jet, weight, residue and
//! Kato–Nakayama (Betti) models.

#![allow(clippy::needless_range_loop)]

pub mod betti;
pub mod derham;
pub mod error;
pub mod jet;
pub mod linalg;
pub mod monoid;
pub mod prime_filtration;
pub mod residue;
pub mod scene;

pub use betti::{build_kn_model, compare_theorem_f00, mv_betti, CompareReport, KnStratModel};
pub use derham::{completed_cohomology, CompletedCohomology, FormBasis, FormModel};
pub use error::{Error, Result};
pub use jet::{verify_cech_exactness, verify_homotopy_identities, CechReport, HomotopyReport};
pub use linalg::*;
pub use monoid::{
    groupify, ideal_power_membership, membership, prime_quotient, FsMonoid, Lattice, MonoidIdeal, MonoidPrime,
    PrimeQuotient,
};
pub use prime_filtration::{
    build_stalk_log_model, verify_fil_graded, verify_poin05_graded_iso, verify_stalk_poincare, LogStalkModel,
    PrimeFiltrationModel,
};
pub use residue::{gr_cohomology_concentration, verify_residue_iso, NcdChart};
pub use scene::{FatPoint, LogScene, SceneOptions, Subscheme};
