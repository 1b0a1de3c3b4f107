use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse factor `{0}`: {1}")]
    Parse(String, String),

    #[error("factor {0} is not normalized: plane dimension must satisfy l <= k - l (use l = {1})")]
    NotNormalized(String, u32),

    #[error("factor {0} is degenerate")]
    Degenerate(String),

    #[error("factor {0} is a reduced case and must be replaced by {1} first")]
    Unreduced(String, String),

    #[error("product has no factors")]
    EmptyProduct,

    #[error("{what} = {value} is out of range ({range})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: String,
    },

    #[error("integration failed: {0}")]
    Integration(String),

    #[error("claim validation failed for {case}: numeric minimum {numeric_min:.12} undercuts closed form {closed_form:.12} at t = {t}")]
    ClaimRejected {
        case: String,
        t: f64,
        numeric_min: f64,
        closed_form: f64,
    },

    #[error("normal vector is not orthogonal to the tangent space (residual {0:.3e})")]
    NotNormal(f64),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
