pub mod complex;
pub mod rational;
pub mod snf;
pub mod tower;

pub use complex::{verify_chain_map, ChainMap, Cohomology, CohomologyGroup, GradedComplex};
pub use rational::{q, q_frac, RationalMatrix, Q};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
pub use tower::{tower_cohomology_lazy, Direction, TowerCohomology, TruncationTower};
