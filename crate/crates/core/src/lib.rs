//! p-adic and complex incomplete gamma functions.
//!
//! The p-adic side builds `φ_{f_r}` from a generalized exponential, pushes it
//! through the incomplete Mellin transform `L` on Mahler series and rescales
//! by `⟨r⟩^s`.  The complex side integrates the standardized real-parameter
//! integrals numerically.  Both interpolate the rational sequence
//! `Ψ̃(0) = 1, Ψ̃(m) = 1 + (m/r)Ψ̃(m−1)`.

pub mod error;
pub mod exact;
pub mod gamma_complex;
pub mod gamma_padic;
pub mod mahler;
pub mod measure;
pub mod padic;
pub mod scalar;
pub mod series;
pub mod transform;

pub use error::{Error, Result};
pub use exact::{Rational, Valuation};
pub use mahler::{MahlerFn, TailBound};
pub use measure::Measure;
pub use padic::{PadicContext, PadicNumber};
pub use scalar::Scalar;
pub use series::TruncSeries;
