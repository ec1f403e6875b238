use thiserror::Error;

/// Failure modes shared by every module. Each variant maps to a stable
/// machine-readable code used by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration does not span its ambient space: {0}")]
    NotSpanning(String),
    #[error("no linear functional takes the value 1 on every vector")]
    NoCommonHyperplane,
    #[error("object is not full-dimensional: {0}")]
    NotFullDim(String),
    #[error("dimension {0} exceeds the supported limit {1}")]
    DimLimit(usize, usize),
    #[error("ground set size {0} exceeds the supported limit {1}")]
    SizeLimit(usize, usize),
    #[error("the two fan criteria disagree: {0}")]
    GaleMismatch(String),
    #[error("vectors of simplex {0} are linearly dependent")]
    DependentSimplex(String),
    #[error("the collection does not define a fan")]
    NotAFan,
    #[error("the fan is not complete")]
    NotComplete,
    #[error("the polyhedron is not generic")]
    NotGeneric,
    #[error("delta is not in the relative interior of the cone")]
    DeltaNotInterior,
    #[error("delta is not in the cone")]
    DeltaOutside,
    #[error("stabiliser is infinite: the complementary vectors do not span")]
    Infinite,
    #[error("the quadric system is degenerate")]
    Degenerate,
    #[error("the origin is not in the convex hull of the points")]
    SiegelFail,
    #[error("weak hyperbolicity fails: {0}")]
    WeakHypFail(String),
    #[error("coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("point is not in U(K): zero set {0} is not a face")]
    PointNotInUk(String),
    #[error("point location failed near a wall")]
    LocationAmbiguous,
    #[error("the complex is not pure")]
    NotPure,
    #[error("the datum is not an LVMB datum")]
    NotLvmb,
    #[error("entries are not integers: {0}")]
    NotIntegral(String),
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSpanning(_) => "NOT_SPANNING",
            Error::NoCommonHyperplane => "NO_COMMON_HYPERPLANE",
            Error::NotFullDim(_) => "NOT_FULL_DIM",
            Error::DimLimit(..) => "DIM_LIMIT",
            Error::SizeLimit(..) => "SIZE_LIMIT",
            Error::GaleMismatch(_) => "GALE_MISMATCH",
            Error::DependentSimplex(_) => "DEPENDENT_SIMPLEX",
            Error::NotAFan => "NOT_A_FAN",
            Error::NotComplete => "NOT_COMPLETE",
            Error::NotGeneric => "NOT_GENERIC",
            Error::DeltaNotInterior => "DELTA_NOT_INTERIOR",
            Error::DeltaOutside => "DELTA_OUTSIDE",
            Error::Infinite => "INFINITE",
            Error::Degenerate => "DEGENERATE",
            Error::SiegelFail => "SIEGEL_FAIL",
            Error::WeakHypFail(_) => "WEAK_HYP_FAIL",
            Error::ZeroCoordinate(_) => "ZERO_COORDINATE",
            Error::PointNotInUk(_) => "POINT_NOT_IN_UK",
            Error::LocationAmbiguous => "LOCATION_AMBIGUOUS",
            Error::NotPure => "NOT_PURE",
            Error::NotLvmb => "NOT_LVMB",
            Error::NotIntegral(_) => "NOT_INTEGRAL",
            Error::EmptyPolyhedron => "EMPTY_POLYHEDRON",
            Error::Shape(_) => "SHAPE",
            Error::Parse(_) => "PARSE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
