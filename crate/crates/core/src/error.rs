use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid circulant literal `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("order {0} is too small (a circulant needs at least 3 vertices)")]
    OrderTooSmall(u64),

    #[error("step {step} is 0 modulo {modulus}")]
    ZeroStep { step: i64, modulus: u64 },

    #[error("steps fold onto the same value {0}; multigraphs are not supported")]
    DuplicateStep(u64),

    #[error("step set is empty after folding")]
    EmptySteps,

    #[error("graph is disconnected ({components} components) and has no spanning trees")]
    Disconnected { components: u64 },

    #[error("oracle refuses {vertices} vertices (ceiling {ceiling})")]
    CeilingExceeded { vertices: usize, ceiling: usize },

    #[error("closed form could not be certified up to {max_bits} bits: {reason}")]
    Certification { max_bits: usize, reason: String },

    #[error("root refinement did not converge at {bits} bits")]
    NoConvergence { bits: usize },

    #[error("exact polynomial division left a nonzero remainder")]
    InexactDivision,

    #[error("{0}")]
    InvalidArgument(String),

    #[error("decomposition failed for {spec}: {reason}")]
    Decomposition { spec: String, reason: String },

    #[error("quadrature did not reach tolerance (estimate {estimate:e})")]
    Quadrature { estimate: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
