use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("block measures must sum to 1 (got {0})")]
    MeasureSum(f64),
    #[error("block measure {index} must be positive (got {value})")]
    NonPositiveMeasure { index: usize, value: f64 },
    #[error("density matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("density out of [0,1] at ({i},{j}): {value}")]
    DensityOutOfRange { i: usize, j: usize, value: f64 },
    #[error("coordinate {0} outside (0,1)")]
    CoordinateOutOfRange(f64),
    #[error("subset fraction out of bounds at {index}: {value} not in [0, {bound}]")]
    SubsetOutOfBounds { index: usize, value: f64, bound: f64 },
    #[error("subset fraction has zero total mass")]
    EmptySubset,
    #[error("breakpoints must start at 1 and strictly decrease within (0,1]")]
    BadBreakpoints,
    #[error("clip parameter must be at least 2 (got {0})")]
    BadClip(u32),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("too many blocks for this operation: {got} > {limit}")]
    TooManyBlocks { got: usize, limit: usize },
    #[error("kappa is infinite; no optimal mass vector exists")]
    KappaInfinite,
    #[error("kappa must be finite and larger than eps for zoom")]
    BadZoomParameters,
    #[error("zoom contract unreachable within the halving budget; best gap {0}")]
    ZoomContractUnreachable(f64),
    #[error("decomposition part g'' must be nonzero")]
    ZeroSecondPart,
    #[error("histogram g = g' + g'' is not admissible (gamma = {0})")]
    NotAdmissible(f64),
    #[error("range violation: {0}")]
    Range(String),
    #[error("invalid model document: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
