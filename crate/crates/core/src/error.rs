use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unsupported rank {rank} for Dynkin type {kind}")]
    UnsupportedRank { kind: char, rank: usize },
    #[error("vertex label {0} is out of range")]
    InvalidVertex(usize),
    #[error("quiver has an oriented cycle")]
    Cyclic,
    #[error("quiver is not of Dynkin type")]
    NotDynkin,
    #[error("quiver is not of type A_n with the standard orientation")]
    NotTypeA,
    #[error("dimension vector has {got} coordinates, quiver has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0:?} is not a positive root")]
    NotARoot(Vec<i64>),
    #[error("{e:?} is not coordinatewise below {d:?}")]
    NotBelow { e: Vec<i64>, d: Vec<i64> },
    #[error("could not construct an indecomposable module of dimension {0:?}")]
    ModuleConstruction(Vec<i64>),
    #[error("central charge vanishes on class {0:?}")]
    VanishingCharge(Vec<i64>),
    #[error("charge of simple {0} lies outside the half-plane window (0,1]")]
    ChargeOutsideWindow(usize),
    #[error("invalid slicing chart: {0}")]
    InvalidChart(String),
    #[error("stability condition is not totally stable")]
    NotTotallyStable,
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("Coxeter eigenvalue e^(-2πi/h) not found with multiplicity one")]
    EigenvalueNotFound,
    #[error("phase propagation is inconsistent: {0}")]
    PropagationInconsistency(String),
    #[error("every restart of the optimizer was infeasible")]
    AllRestartsInfeasible,
    #[error("truncation bound must be positive")]
    BadTruncation,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
