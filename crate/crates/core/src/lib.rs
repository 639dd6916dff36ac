//! Spanning-tree enumeration for circulant graphs.
//!
//! Counts are computed two independent ways: exactly, from the
//! matrix-tree theorem ([`exact`]), and from Chebyshev closed forms
//! evaluated at certified high precision ([`chebyshev`]). The
//! [`arithmetic`] module checks the square-free shape `τ(n) = c·n·a(n)²`
//! and [`mahler`] gives the exponential growth rates as Mahler measures.

pub mod arithmetic;
pub mod chebyshev;
pub mod error;
pub mod exact;
pub mod graph;
pub mod mahler;
mod util;

pub use arithmetic::{decompose, square_free_part, Decomposition};
pub use chebyshev::{tau_even, tau_family, tau_formula, tau_odd};
pub use error::{Error, Result};
pub use exact::{tau_oracle, OracleConfig, TreeCount};
pub use graph::{CirculantSpec, Family, IntegerMatrix, StepFamily};
pub use mahler::{associated_laurent, LaurentSpectrum, MahlerEstimate};
