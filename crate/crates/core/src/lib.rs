//! A desk-scale numerical laboratory for the cosine and sine Fourier
//! transforms of bounded-variation functions on the half-line, the Hilbert
//! transforms of their derivatives, and the identities tying them together.
//!
//! The crate is organized as:
//!
//! * [`quadrature`] — adaptive, half-line, oscillatory and principal-value
//!   integration kernels with explicit error estimates and statuses.
//! * [`specfun`] — the sine and cosine integrals `Si`, `Ci`.
//! * [`testfns`] — the registry of closed-form test families `(f, f')`.
//! * [`transforms`] — the operators: cosine/sine transforms, `T`,
//!   full/odd Hilbert transforms, the quotient transform and its Hilbert
//!   transform via the Si/Ci kernel, the tail integral.
//! * [`verify`] — the harness that turns each stated inequality, identity
//!   and decomposition into numbers: norms, ratios, residual grids and
//!   membership verdicts.
//!
//! All computation is direct quadrature at arbitrary points: correctness
//! and error control over speed.

pub mod error;
pub mod quadrature;
pub mod specfun;
pub mod testfns;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
