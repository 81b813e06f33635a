//! Special functions: Gamma family and Bessel J/Y of real order.

mod bessel;
mod gamma;

pub use bessel::{bessel_j, bessel_jy, bessel_y, BesselJy, BesselOrder};
pub use gamma::{digamma, gamma, gamma_prime, gamma_second, ln_gamma, trigamma};
