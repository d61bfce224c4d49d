use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid bracket: f({lo}) and f({hi}) have the same sign")]
    InvalidBracket { lo: f64, hi: f64 },
    #[error("evaluation failure: {0}")]
    EvaluationFailure(String),
    #[error("singular system")]
    SingularSystem,
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
    #[error("not symmetric")]
    NotSymmetric,
    #[error("unsupported order {0}")]
    UnsupportedOrder(usize),

    #[error("non-unit divisor")]
    NonUnitDivisor,
    #[error("incompatible series: {0}")]
    IncompatibleSeries(String),
    #[error("composition requires nilpotent argument")]
    NonNilpotentArgument,
    #[error("unsupported branch point")]
    UnsupportedBranchPoint,
    #[error("implicit function theorem violated")]
    ImplicitFunctionViolated,
    #[error("divergent iteration")]
    DivergentIteration,
    #[error("precision exhausted")]
    PrecisionExhausted,

    #[error("invalid scaling: {0}")]
    InvalidScaling(String),
    #[error("outside physical branch: {0}")]
    OutsidePhysicalBranch(String),
    #[error("no such bound state: {0}")]
    NoSuchBoundState(String),
    #[error("not available: {0}")]
    NotAvailable(String),
    #[error("no closed form for order {0}; use the numeric series")]
    NoClosedForm(usize),
    #[error("well exceeds box (L = {0} must exceed 2)")]
    WellExceedsBox(f64),
    #[error("degenerate unperturbed levels; use even_cosine")]
    DegenerateLevels,

    #[error("quadrature not converged: {coarse} vs {fine}")]
    QuadratureNotConverged { coarse: f64, fine: f64 },

    #[error("degenerate Padé table entry")]
    DegeneratePade,
    #[error("degenerate system")]
    DegenerateSystem,
    #[error("complex branch: roots {re} ± {im}i")]
    ComplexBranch { re: f64, im: f64 },
    #[error("no two-point approximant at these orders: {0}")]
    NoTwoPoint(String),
    #[error("no reliable estimate: {0}")]
    NoReliableEstimate(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
