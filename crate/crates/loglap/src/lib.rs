//! Numerical realization of the logarithmic Laplacian: the explicit diffusion
//! kernel, Riesz-potential Cauchy solver, periodic-grid symbol operators,
//! the Helmholtz and logarithmic-Laplacian fundamental solutions, and an
//! estimate-certification harness with a deterministic report format.

pub mod cauchy;
pub mod error;
pub mod fundsol;
pub mod helmholtz;
pub mod kernel;
pub mod quad;
pub mod riesz;
pub mod special;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
