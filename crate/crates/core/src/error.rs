use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Pauli label {label:?}: {reason}")]
    InvalidLabel { label: String, reason: String },

    #[error("invalid point {input:?}: {reason}")]
    InvalidPoint { input: String, reason: String },

    #[error("operators {first} and {second} do not commute")]
    NonCommuting { first: String, second: String },

    #[error("operators span a subspace of rank {rank}, a maximal commuting set on {n} qubits needs rank {n}")]
    NotMaximal { rank: usize, n: usize },

    #[error("operators act on different numbers of qubits ({first} and {second})")]
    MixedQubitCounts { first: usize, second: usize },

    #[error("{what} supports N in {min}..={max}, got {n}")]
    UnsupportedN {
        what: &'static str,
        n: usize,
        min: usize,
        max: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("Plücker vector violates the isotropy constraint {constraint}")]
    NotLagrangian { constraint: String },

    #[error("all retained principal-minor coordinates vanish")]
    ZeroProjection,

    #[error("point {0} is not the image of any maximal commuting set")]
    NotInImage(String),

    #[error("orbit {orbit} meets the image without being contained in it")]
    MixedOrbit { orbit: usize },
}

pub(crate) fn check_n(what: &'static str, n: usize, min: usize, max: usize) -> Result<()> {
    if (min..=max).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedN { what, n, min, max })
    }
}
