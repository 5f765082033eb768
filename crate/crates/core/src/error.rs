use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar variant mismatch: {0}")]
    VariantMismatch(String),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("{0} is not an odd prime")]
    NotPrime(u64),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("generator of degree {generator} exceeds target degree {target}")]
    DegreeTooHigh { generator: i64, target: i64 },

    #[error("the all-zero tuple is not a projective point")]
    ZeroPoint,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("codimension {codim} < 2: {reason}")]
    Codimension { codim: usize, reason: String },

    #[error("twist threshold not met: {reason}")]
    Threshold { reason: String, minimal_m: Option<u32> },

    #[error("generic choice failed after {attempts} attempts (seed {seed}): {reason}")]
    Genericity { seed: u64, attempts: u32, reason: String },

    #[error("speciality unknown: degree {degree} <= 2g-2 = {bound}")]
    Speciality { degree: i64, bound: i64 },

    #[error("geometric position: {0}")]
    GeometricPosition(String),

    #[error("Butler hypothesis violated: slope {slope} <= 2g = {two_g} (margin {margin})")]
    Hypothesis { slope: String, two_g: i64, margin: String },

    #[error("degenerate kernel: h0 = {h0} <= rank = {rank}")]
    DegenerateKernel { h0: i64, rank: i64 },

    #[error("m1^2-1 and m2^2-1 are not coprime (gcd = {gcd})")]
    Coprimality { gcd: i64 },

    #[error("resolution is not minimal: {0}")]
    NonMinimal(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::VariantMismatch(_) => "VARIANT_MISMATCH",
            Error::UnsupportedField(_) => "UNSUPPORTED_FIELD",
            Error::NotPrime(_) => "NOT_PRIME",
            Error::RingMismatch(_) => "RING_MISMATCH",
            Error::DegreeTooHigh { .. } => "DEGREE_TOO_HIGH",
            Error::ZeroPoint => "ZERO_POINT",
            Error::Parse { .. } => "PARSE",
            Error::Codimension { .. } => "CODIMENSION",
            Error::Threshold { .. } => "THRESHOLD",
            Error::Genericity { .. } => "GENERICITY",
            Error::Speciality { .. } => "SPECIALITY",
            Error::GeometricPosition(_) => "GEOMETRIC_POSITION",
            Error::Hypothesis { .. } => "HYPOTHESIS",
            Error::DegenerateKernel { .. } => "DEGENERATE_KERNEL",
            Error::Coprimality { .. } => "COPRIMALITY",
            Error::NonMinimal(_) => "NON_MINIMAL",
            Error::Budget(_) => "BUDGET",
            Error::Input(_) => "INPUT",
            Error::Unsupported(_) => "UNSUPPORTED",
            Error::Io(_) => "IO",
        }
    }

    /// Process exit status used by the CLI and the numeric code used by the C ABI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::VariantMismatch(_) => 10,
            Error::UnsupportedField(_) => 11,
            Error::NotPrime(_) => 12,
            Error::RingMismatch(_) => 13,
            Error::DegreeTooHigh { .. } => 14,
            Error::ZeroPoint => 15,
            Error::Parse { .. } => 16,
            Error::Codimension { .. } => 17,
            Error::Threshold { .. } => 18,
            Error::Genericity { .. } => 19,
            Error::Speciality { .. } => 20,
            Error::GeometricPosition(_) => 21,
            Error::Hypothesis { .. } => 22,
            Error::DegenerateKernel { .. } => 23,
            Error::Coprimality { .. } => 24,
            Error::NonMinimal(_) => 25,
            Error::Budget(_) => 26,
            Error::Input(_) => 27,
            Error::Unsupported(_) => 28,
            Error::Io(_) => 29,
        }
    }
}
