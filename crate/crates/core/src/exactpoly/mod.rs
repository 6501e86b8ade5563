//! Exact univariate polynomials over the rationals: arithmetic, Sturm root
//! counting and isolation, square-free decomposition, resultants, and the
//! root statistics (signed counts, derivative chains, moduli orders) that
//! every realization certificate is built from.

mod resultant;
mod roots;
pub mod sturm;
mod unipoly;

pub use resultant::{determinant, sylvester_matrix, sylvester_resultant};
pub use roots::{
    derivative_chain_scp, expand_factors, moduli_order, signed_root_counts,
    squarefree_decomposition, ModLetter, ModuliOrder, SignedRootCount,
};
pub use sturm::{count_roots_in, isolate_real_roots, Bound, Interval, RootInterval, SturmSequence};
pub use unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial must have degree at least 1")]
    Degree,
    #[error("invalid root: {0}")]
    InvalidRoot(String),
    #[error("invalid complex pair: {0}")]
    InvalidPair(String),
    #[error("multiple real root at level {0}")]
    MultipleRealRoot(usize),
    #[error("zero root at level {0}")]
    ZeroRoot(usize),
    #[error("polynomial is not hyperbolic")]
    NotHyperbolic,
    #[error("two roots have equal moduli")]
    EqualModuli,
    #[error("{0}")]
    Parse(String),
}
