use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sample count {0} must be a power of two and at least 16")]
    BadSampleCount(usize),

    #[error("{len} Taylor coefficients exceed the alias-free limit {limit} for {sample_count} samples")]
    TooManyCoefficients {
        len: usize,
        limit: usize,
        sample_count: usize,
    },

    #[error("coefficient list is empty")]
    EmptyCoefficients,

    #[error("analytic radius {0} must be a number no smaller than 1")]
    BadRadius(f64),

    #[error("point {0} lies outside the guarded disk |z| <= 1 - 1e-8")]
    OutsideDisk(Complex64),

    #[error("negative-frequency content {energy:.3e} exceeds analyticity tolerance {tolerance:.3e}")]
    NotAnalytic { energy: f64, tolerance: f64 },

    #[error("dilation factor {r} is outside (0, {radius}]")]
    DilationOutOfRange { r: f64, radius: f64 },

    #[error("dilation by {0} overflows the Taylor coefficients")]
    DilationOverflow(f64),

    #[error("sample counts differ: {0} vs {1}")]
    SampleCountMismatch(usize, usize),

    #[error("divisor sample {index} has modulus {modulus:.3e}")]
    NearZeroDivisor { index: usize, modulus: f64 },

    #[error("sequence points {first} and {second} coincide")]
    DuplicatePoints { first: usize, second: usize },

    #[error("unknown sequence spec `{0}`")]
    UnknownSequence(String),

    #[error("malformed complex number `{0}`")]
    BadComplex(String),

    #[error("unknown norm spec `{0}`")]
    UnknownNorm(String),

    #[error("expansions need a non-Blaschke sequence, `{0}` is Blaschke")]
    BlaschkeSequence(String),

    #[error("requested {requested} points but the sequence prefix has {available}")]
    PrefixTooShort { requested: usize, available: usize },

    #[error("Toeplitz iterate {step} lost analyticity: {source}")]
    AnalyticityDegraded { step: usize, source: Box<Error> },

    #[error("remainder identity gap {gap:.3e} exceeds {limit:.3e}")]
    IdentityGap { gap: f64, limit: f64 },

    #[error("triangular system diagonal entry {index} has modulus {modulus:.3e}")]
    SingularDiagonal { index: usize, modulus: f64 },

    #[error("bound radius {r} must lie in (1, {radius})")]
    BoundRadius { r: f64, radius: f64 },

    #[error("product of degree {degree} needs more than {sample_count} samples")]
    DegreeTooLarge { degree: usize, sample_count: usize },

    #[error("sequence `{0}` does not record |lambda_n| -> 1")]
    ModulusNotTendingToOne(String),

    #[error("support index {index} is outside 1..={max}")]
    SupportOutOfRange { index: usize, max: usize },

    #[error("{column} = {value:.6e} exceeds C0 * sup = {bound:.6e} at n = {n}")]
    EmbeddingViolated {
        column: String,
        n: usize,
        value: f64,
        bound: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures caused by numerical resolution rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotAnalytic { .. }
                | Error::AnalyticityDegraded { .. }
                | Error::IdentityGap { .. }
                | Error::SingularDiagonal { .. }
                | Error::DilationOverflow(_)
                | Error::EmbeddingViolated { .. }
        )
    }
}
