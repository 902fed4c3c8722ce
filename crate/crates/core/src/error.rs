use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("d∘d ≠ 0 between degrees {degree} and {}", degree + 2)]
    NotAComplex { degree: i32 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("tower did not stabilize within {max_level} levels (per-level dims: {trace:?})")]
    NotStabilized { max_level: usize, trace: Vec<Vec<usize>> },

    #[error("membership search exceeded its bound ({bound}) without a positive grading")]
    UnboundedSearch { bound: usize },

    #[error("no strictly positive grading exists on the generators")]
    NoPositiveGrading,

    #[error("generator set {0:?} does not span a face of the monoid")]
    NotAFace(Vec<usize>),

    #[error("monoid is not saturated: {0:?} lies in the cone and the group but not in the monoid")]
    NotSaturated(Vec<i64>),

    #[error("ideal is not proper: generator {0:?} is a unit")]
    ImproperIdeal(Vec<i64>),

    #[error("element {0:?} does not lie in the monoid")]
    NotInMonoid(Vec<i64>),

    #[error("scene has no monomial subscheme")]
    NotMonomial,

    #[error("jet element of degree {degree} exceeds order {order}")]
    DegreeOverflow { degree: usize, order: usize },

    #[error("cosimplicial width {0} is not supported (maximum 2)")]
    WidthUnsupported(usize),

    #[error("class is not reduced modulo the lower weight piece: {0}")]
    NotInGr(String),

    #[error("unsupported scene: {0}")]
    UnsupportedScene(String),

    #[error("invalid scene: {0}")]
    Validation(String),
}
