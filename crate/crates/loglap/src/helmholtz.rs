//! The real radial fundamental solution of -Delta u - u = delta_0 in R^N
//! (N >= 3), built from the Bessel Y composition
//!   Phi_1(r) = -(1/4) (2 pi r)^{1 - N/2} Y_{N/2-1}(r),
//! together with its radial derivative and an ODE residual probe.
//!
//! The literal constant in the Hankel-form solution multiplies a complex
//! field; the real member above reproduces both the near-origin law
//! Gamma(N/2-1)/(4 pi^{N/2}) r^{2-N} and the far-field
//! -sin(r - (N-1) pi/4) / (2 (2 pi r)^{(N-1)/2}), which pins the choice.

use crate::error::{Error, Result};
use crate::kernel::Dimension;
use crate::special::{bessel_jy, gamma, BesselOrder};

const PI: f64 = std::f64::consts::PI;

/// Evaluator bundle for Phi_1 with its near-origin constant.
#[derive(Debug, Clone, Copy)]
pub struct HelmholtzProfile {
    dim: Dimension,
    /// Gamma(N/2-1)/(4 pi^{N/2})
    pub near_constant: f64,
}

impl HelmholtzProfile {
    pub fn new(dim: Dimension) -> Result<Self> {
        if dim.n() < 3 {
            return Err(Error::domain(
                "the Helmholtz fundamental solution is constructed for N >= 3",
            ));
        }
        let half = dim.nf() / 2.0;
        let near_constant = gamma(half - 1.0)? / (4.0 * PI.powf(half));
        Ok(HelmholtzProfile { dim, near_constant })
    }

    pub fn dim(&self) -> &Dimension {
        &self.dim
    }

    pub fn order(&self) -> BesselOrder {
        BesselOrder::new(self.dim.nf() / 2.0 - 1.0).expect("N >= 3 gives nu >= 1/2")
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        phi1(r, &self.dim)
    }

    pub fn eval_prime(&self, r: f64) -> Result<f64> {
        phi1_prime(r, &self.dim)
    }

    /// Far-field amplitude 1/(2 (2 pi)^{(N-1)/2}).
    pub fn far_amplitude(&self) -> f64 {
        0.5 * (2.0 * PI).powf(-(self.dim.nf() - 1.0) / 2.0)
    }

    /// Far-field phase offset (N-1) pi / 4 of -sin(r - phase).
    pub fn far_phase(&self) -> f64 {
        (self.dim.nf() - 1.0) * PI / 4.0
    }
}

/// Phi_1(r) = -(1/4) (2 pi r)^{1-N/2} Y_{N/2-1}(r) for r > 0, N >= 3.
pub fn phi1(r: f64, dim: &Dimension) -> Result<f64> {
    if dim.n() < 3 {
        return Err(Error::domain("phi1 requires N >= 3"));
    }
    if !(r > 0.0) {
        return Err(Error::domain("phi1 requires r > 0"));
    }
    let n = dim.nf();
    let nu = n / 2.0 - 1.0;
    // small radii overflow Y for large order; use the near-origin law where
    // the relative correction is below roundoff
    if r < 1e-9 {
        let half = n / 2.0;
        return Ok(gamma(half - 1.0)? / (4.0 * PI.powf(half)) * r.powf(2.0 - n));
    }
    let y = bessel_jy(nu, r)?.y;
    Ok(-0.25 * (2.0 * PI * r).powf(1.0 - n / 2.0) * y)
}

/// Radial derivative: the recurrence Y'_nu = Y_{nu-1} - (nu/r) Y_nu applied to
/// the composition collapses to Phi_1'(r) = (1/4) (2 pi r)^{1-N/2} Y_{N/2}(r).
pub fn phi1_prime(r: f64, dim: &Dimension) -> Result<f64> {
    if dim.n() < 3 {
        return Err(Error::domain("phi1_prime requires N >= 3"));
    }
    if !(r > 0.0) {
        return Err(Error::domain("phi1_prime requires r > 0"));
    }
    let n = dim.nf();
    if r < 1e-9 {
        let half = n / 2.0;
        let c = gamma(half - 1.0)? / (4.0 * PI.powf(half));
        return Ok(-(n - 2.0) * c * r.powf(1.0 - n));
    }
    let y_next = bessel_jy(n / 2.0, r)?.y;
    Ok(0.25 * (2.0 * PI * r).powf(1.0 - n / 2.0) * y_next)
}

/// |Phi_1'' + (N-1)/r Phi_1' + Phi_1| by fourth-order central differences.
pub fn helmholtz_residual(r: f64, dim: &Dimension) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain("helmholtz_residual requires r > 0"));
    }
    let n = dim.nf();
    let h = (0.0075 * r.min(1.0)).max(1e-4 * r);
    let f = |x: f64| phi1(x, dim);
    let fm2 = f(r - 2.0 * h)?;
    let fm1 = f(r - h)?;
    let f0 = f(r)?;
    let fp1 = f(r + h)?;
    let fp2 = f(r + 2.0 * h)?;
    // fourth-order second derivative
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    // fourth-order first derivative
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    Ok((d2 + (n - 1.0) / r * d1 + f0).abs())
}
