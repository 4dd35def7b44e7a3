use alloc::string::String;
use alloc::vec::Vec;

/// Errors produced by the core crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not upper triangular Toeplitz with unit diagonal: {0}")]
    NotUnitToeplitz(String),

    #[error("measure has all moments equal to zero")]
    ZeroMeasure,

    #[error("need {needed} moments, only {available} available")]
    NotEnoughMoments { needed: usize, available: usize },

    #[error("cannot parse number {0:?}")]
    Parse(String),

    #[error("line {line}: {msg}")]
    Csv { line: usize, msg: String },

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("root finder did not converge (worst scaled residual {worst:e})")]
    RootsNotConverged { worst: f64 },

    #[error("eigenvalue iteration did not converge")]
    EigenNotConverged,

    #[error("singular value iteration did not converge after {sweeps} sweeps")]
    SvdNotConverged { sweeps: usize },

    #[error("nodes {first} and {second} coincide to working precision")]
    NodeCollision { first: usize, second: usize },

    #[error(
        "no degree up to {max_degree} reaches the residual target; best residual per degree: {}",
        fmt_history(.history)
    )]
    DegreeExhausted {
        max_degree: usize,
        history: Vec<(usize, f64)>,
    },

    #[error("polynomial degree {degree} is beyond certified order {max}")]
    BeyondCertifiedOrder { degree: usize, max: usize },

    #[error("node {index} is zero, logarithm undefined")]
    ZeroNode { index: usize },

    #[error("series acceleration needs {needed} terms, cap is {cap}")]
    SeriesCap { needed: usize, cap: usize },

    #[error("adaptive integration did not reach tolerance (estimate {estimate:e})")]
    IntegrationFailed { estimate: f64 },
}

fn fmt_history(h: &[(usize, f64)]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, (d, r)) in h.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "d={d}:{r:.3e}");
    }
    s
}

pub type Result<T> = core::result::Result<T, Error>;
