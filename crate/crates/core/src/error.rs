use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("need d ≥ k ≥ 2, got d = {d}, k = {k}")]
    InvalidProblem { d: i64, k: i64 },
    #[error("filtration index p = {p} outside 1..={max}")]
    StratumOutOfRange { p: u32, max: u32 },
    #[error("form is identically zero")]
    ZeroForm,
    #[error("singular form: root line of multiplicity {multiplicity} ≥ k = {k}")]
    SingularForm { multiplicity: u32, k: u32 },
    #[error("expected page E^{expected}, got E^{got}")]
    WrongPage { expected: u32, got: u32 },
    #[error("spectral page has an unexpected shape: {0}")]
    UnexpectedPage(String),
    #[error("cannot parse form literal: {0}")]
    Parse(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("coincident roots in root datum")]
    CoincidentRoots,
    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),
    #[error("not a triangulation of the circle: need at least 3 vertices, got {0}")]
    NotACircle(usize),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("complex has {faces} faces, above the cap of {cap}")]
    FaceCap { faces: usize, cap: usize },
    #[error("loop approaches discriminant near t = {t:.6}")]
    LoopApproachesDiscriminant { t: f64 },
    #[error("loop is not closed")]
    NonClosedLoop,
    #[error("loop form {0} does not have only simple real root lines")]
    NotSimpleRoots(String),
    #[error("path construction failed: {0}")]
    PathConstruction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
