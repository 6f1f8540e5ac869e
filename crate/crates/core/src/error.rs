use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomials live in rings with {left} and {right} variables")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("Groebner basis computation exceeded the step budget of {0}")]
    StepBudgetExceeded(u64),
    #[error("ideals live in different rings ({left} vs {right} variables)")]
    RingMismatch { left: usize, right: usize },
    #[error("point {0} appears twice")]
    DuplicatePoint(usize),
    #[error("points {0} and {1} of the family coincide identically in e")]
    DuplicatePointFamily(usize, usize),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("generic fiber of the family is not zero-dimensional")]
    NotZeroDimensionalFiber,
    #[error("internal error: flat limit has colength {limit} but the generic fiber has {generic}")]
    InternalLengthMismatch { limit: u64, generic: u64 },
    #[error("internal error: I_({p}) * I_({q}) is not contained in I_({})", p + q)]
    GradedInclusionViolation { p: u32, q: u32 },
    #[error("Samuel differences did not stabilize within k <= {0}")]
    NoStabilization(u32),
    #[error("internal error: multiplicity methods disagree (finite differences {differences}, generic sections {sections})")]
    MethodDisagreement { differences: u64, sections: u64 },
    #[error("no valid generic section found in {0} trials")]
    NoGenericSection(u32),
    #[error("ideal is not supported at the origin alone")]
    NotOriginSupported,
    #[error("ideal is not monomial")]
    NotMonomial,
    #[error("dimension {0} is not supported (at most 4)")]
    UnsupportedDimension(usize),
    #[error("family does not collide at a single point")]
    NotSinglePoint,
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("parse error at byte {position} in `{input}`: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
    #[error("local monomial orders need a truncation degree")]
    LocalOrderWithoutTruncation,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Errors that signal a broken invariant inside the library rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InternalLengthMismatch { .. }
                | Error::GradedInclusionViolation { .. }
                | Error::MethodDisagreement { .. }
        )
    }
}
