use thiserror::Error;

/// Errors raised by the geometric and combinatorial operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate set: {0}")]
    DegenerateSet(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid point set: {0}")]
    InvalidPointSet(String),

    #[error("degenerate cap: set not confined to any hemisphere (enclosing ball radius {ball_radius})")]
    DegenerateCap { ball_radius: f64 },

    #[error("great arcs overlap along a common great circle")]
    ArcOverlap,

    #[error("hemisphere precondition violated: {0}")]
    NotInHemisphere(String),

    #[error("size cap exceeded: {what} supports n <= {cap}, got n = {n}")]
    SizeCap {
        what: &'static str,
        cap: usize,
        n: usize,
    },

    /// No open hemisphere contains the sampled set; carries the points that fell outside.
    #[error("theorem preconditions violated: {reason} ({} offending sample points)", .offending.len())]
    Preconditions {
        reason: String,
        offending: Vec<Vec<f64>>,
    },

    #[error("degenerate projection: {0}")]
    ProjectionDegenerate(String),

    #[error("double cover refused: {0} polygon-separation violations present")]
    CoverRefused(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn preconditions(reason: impl Into<String>) -> Self {
        Error::Preconditions {
            reason: reason.into(),
            offending: Vec::new(),
        }
    }
}
