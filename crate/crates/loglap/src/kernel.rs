//! Ambient-dimension constants and the explicit diffusion kernel
//! P_ln(t, x) = P0(t) |x|^{2t-N} of the logarithmic diffusion equation,
//! with its limiting behavior at both ends of the lifespan (0, N/2).

use crate::error::{Error, Result};
use crate::special::{digamma, gamma};

const PI: f64 = std::f64::consts::PI;

/// Ambient dimension N with its derived constants:
/// c_N = pi^{-N/2} Gamma(N/2), rho_N = 2 ln 2 + psi(N/2) + psi(1),
/// omega_N = surface measure of the unit sphere in R^N (so c_N * omega_N = 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dimension {
    n: u32,
    c_n: f64,
    rho_n: f64,
    omega_n: f64,
}

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("dimension N must be >= 1"));
        }
        let half = f64::from(n) / 2.0;
        let c_n = PI.powf(-half) * gamma(half)?;
        let rho_n = 2.0 * std::f64::consts::LN_2 + digamma(half)? + digamma(1.0)?;
        let omega_n = 2.0 / c_n;
        Ok(Dimension {
            n,
            c_n,
            rho_n,
            omega_n,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn nf(&self) -> f64 {
        f64::from(self.n)
    }

    /// c_N = pi^{-N/2} Gamma(N/2) = 2/omega_N.
    pub fn c_n(&self) -> f64 {
        self.c_n
    }

    /// rho_N = 2 ln 2 + psi(N/2) + psi(1).
    pub fn rho_n(&self) -> f64 {
        self.rho_n
    }

    /// omega_N = 2 pi^{N/2} / Gamma(N/2), the (N-1)-sphere surface measure.
    pub fn omega_n(&self) -> f64 {
        self.omega_n
    }

    /// Surface measure of the unit sphere in R^{N-1} (needed by spherical means).
    pub fn omega_lower(&self) -> Result<f64> {
        if self.n < 2 {
            return Err(Error::domain("omega_lower needs N >= 2"));
        }
        let half = (self.nf() - 1.0) / 2.0;
        Ok(2.0 * PI.powf(half) / gamma(half)?)
    }

    /// Volume of the unit ball: omega_N / N.
    pub fn ball_volume(&self) -> f64 {
        self.omega_n / self.nf()
    }
}

/// A point (t, r) in the kernel's domain: 0 < t < N/2, r = |x| > 0.
#[derive(Debug, Clone, Copy)]
pub struct KernelPoint {
    pub t: f64,
    pub r: f64,
}

impl KernelPoint {
    pub fn new(t: f64, r: f64, dim: &Dimension) -> Result<Self> {
        if !(t > 0.0 && t < dim.nf() / 2.0) {
            return Err(Error::domain(format!(
                "kernel lifespan is 0 < t < N/2 = {}, got t = {t}",
                dim.nf() / 2.0
            )));
        }
        if !(r > 0.0) {
            return Err(Error::domain(format!("radius must be positive, got {r}")));
        }
        Ok(KernelPoint { t, r })
    }
}

/// P0(t) = pi^{-N/2} 4^{-t} Gamma((N-2t)/2) / Gamma(t) on (0, N/2).
pub fn p0(t: f64, dim: &Dimension) -> Result<f64> {
    let half_n = dim.nf() / 2.0;
    if !(t > 0.0 && t < half_n) {
        return Err(Error::domain(format!(
            "p0 requires 0 < t < N/2 = {half_n}, got {t}"
        )));
    }
    Ok(PI.powf(-dim.nf() / 2.0) * 4.0_f64.powf(-t) * gamma(half_n - t)? / gamma(t)?)
}

/// Diffusion kernel P_ln(t, x) = P0(t) |x|^{2t-N}.
pub fn kernel_pln(p: KernelPoint, dim: &Dimension) -> Result<f64> {
    Ok(p0(p.t, dim)? * p.r.powf(2.0 * p.t - dim.nf()))
}

/// Limits attached to the kernel:
/// `blowup_limit` = lim_{t->N/2} (N-2t) P0(t) = 2^{1-N} pi^{-N/2} / Gamma(N/2),
/// `p0_prime_zero` = P0'(0) = pi^{-N/2} Gamma(N/2).
#[derive(Debug, Clone, Copy)]
pub struct KernelLimits {
    pub blowup_limit: f64,
    pub p0_prime_zero: f64,
}

pub fn kernel_limit_constants(dim: &Dimension) -> KernelLimits {
    let half = dim.nf() / 2.0;
    let g = gamma(half).expect("N/2 > 0");
    KernelLimits {
        blowup_limit: 2.0_f64.powf(1.0 - dim.nf()) * PI.powf(-half) / g,
        p0_prime_zero: PI.powf(-half) * g,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn dimension_identities() {
        for n in 1..=8 {
            let d = dim(n);
            assert!((d.c_n() * d.omega_n() - 2.0).abs() < 1e-14, "N={n}");
        }
        // omega_3 = 4pi, omega_2 = 2pi, omega_1 = 2
        assert!((dim(3).omega_n() - 4.0 * PI).abs() < 1e-12);
        assert!((dim(2).omega_n() - 2.0 * PI).abs() < 1e-12);
        assert!((dim(1).omega_n() - 2.0).abs() < 1e-12);
        // rho_1 = 2ln2 + psi(1/2) + psi(1) = -2 gamma_E
        assert!((dim(1).rho_n() + 2.0 * 0.577_215_664_901_532_9).abs() < 1e-12);
    }

    #[test]
    fn p0_newtonian_cross_check() {
        // P0(1) at N=3 equals the Newtonian-potential constant 1/(4 pi)
        let v = p0(1.0, &dim(3)).unwrap();
        assert!((v - 1.0 / (4.0 * PI)).abs() < 1e-11 * v, "got {v}");
        assert!((v - 0.079_577_5).abs() < 1e-6);
        // N=4, t=1/2 -> 1/(4 pi^2)
        let v = p0(0.5, &dim(4)).unwrap();
        assert!((v - 1.0 / (4.0 * PI * PI)).abs() < 1e-11 * v);
        assert!((v - 0.025_330_3).abs() < 1e-6);
    }

    #[test]
    fn p0_small_t_slope() {
        // p0(t)/t -> P0'(0) = pi^{-N/2} Gamma(N/2); N=4 value 1/pi^2
        let d = dim(4);
        let v = p0(1e-7, &d).unwrap() / 1e-7;
        let want = kernel_limit_constants(&d).p0_prime_zero;
        assert!((want - 0.101_321_2).abs() < 1e-6);
        assert!((v - want).abs() < 1e-5 * want, "slope {v} vs {want}");
    }

    #[test]
    fn kernel_values_and_monotonicity() {
        let d = dim(3);
        let v = kernel_pln(KernelPoint::new(1.0, 2.0, &d).unwrap(), &d).unwrap();
        assert!((v - 1.0 / (8.0 * PI)).abs() < 1e-12, "got {v}");
        // r = 1 gives p0 itself
        for &t in &[0.3, 0.7, 1.2] {
            let v = kernel_pln(KernelPoint::new(t, 1.0, &d).unwrap(), &d).unwrap();
            assert_eq!(v, p0(t, &d).unwrap());
        }
        // strictly decreasing in r
        let mut prev = f64::INFINITY;
        let mut r = 0.25;
        while r < 16.0 {
            let v = kernel_pln(KernelPoint::new(0.8, r, &d).unwrap(), &d).unwrap();
            assert!(v < prev);
            prev = v;
            r *= 1.5;
        }
    }

    #[test]
    fn blowup_limit_matches_proof_constant() {
        // (N - 2t) * kernel(t, r=1) -> 2^{1-N} pi^{-N/2} / Gamma(N/2) as t -> (N/2)-
        let d = dim(3);
        let want = kernel_limit_constants(&d).blowup_limit;
        assert!((want - 0.050_660_6).abs() < 1e-6);
        let t = 1.5 - 1e-7;
        let v = (3.0 - 2.0 * t) * kernel_pln(KernelPoint::new(t, 1.0, &d).unwrap(), &d).unwrap();
        assert!((v - want).abs() < 1e-5 * want, "{v} vs {want}");
        // N=2 slope constant
        assert!((kernel_limit_constants(&dim(2)).p0_prime_zero - 0.318_309_9).abs() < 1e-6);
    }

    #[test]
    fn blowup_first_order_rate() {
        // (N-2t) p0(t) - L ~ C (N/2 - t): slope measured between 1e-2 and 1e-5
        let d = dim(3);
        let l = kernel_limit_constants(&d).blowup_limit;
        let eps = [1e-2, 1e-3, 1e-4, 1e-5];
        let dev: Vec<f64> = eps
            .iter()
            .map(|&e| {
                let t = 1.5 - e;
                ((3.0 - 2.0 * t) * p0(t, &d).unwrap() - l).abs()
            })
            .collect();
        for i in 0..eps.len() - 1 {
            let rate = (dev[i] / dev[i + 1]).log10();
            assert!(
                (rate - 1.0).abs() < 0.2,
                "first-order rate violated: {rate} between eps {} and {}",
                eps[i],
                eps[i + 1]
            );
        }
    }

    #[test]
    fn marcinkiewicz_surrogate() {
        // lambda^{N/(N-2t)} * meas{ r : P_ln > lambda } constant in lambda
        let d = dim(3);
        let t = 0.6;
        let n = d.nf();
        let p = p0(t, &d).unwrap();
        let mut reference = None;
        for &lambda in &[0.5, 1.0, 5.0, 25.0, 400.0] {
            // level set is the ball of radius (P0/lambda)^{1/(N-2t)}
            let radius = (p / lambda).powf(1.0 / (n - 2.0 * t));
            let meas = d.ball_volume() * radius.powf(n);
            let val = lambda.powf(n / (n - 2.0 * t)) * meas;
            match reference {
                None => reference = Some(val),
                Some(r) => assert!((val - r).abs() < 1e-10 * r, "lambda={lambda}"),
            }
        }
    }

    #[test]
    fn vanishing_at_small_t_bound() {
        // kernel_pln(t, r) <= 2 t pi^{-N/2} Gamma(N/2) r^{2t-N} for t <= 0.1
        for n in [1u32, 2, 3, 4, 6] {
            let d = dim(n);
            let cap = kernel_limit_constants(&d).p0_prime_zero;
            for &t in &[1e-4, 1e-2, 0.1] {
                for &r in &[0.01, 0.5, 1.0, 7.0] {
                    let v = kernel_pln(KernelPoint::new(t, r, &d).unwrap(), &d).unwrap();
                    let bound = 2.0 * t * cap * r.powf(2.0 * t - d.nf());
                    assert!(v <= bound * (1.0 + 1e-12), "N={n}, t={t}, r={r}");
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        let d = dim(3);
        assert!(p0(0.0, &d).is_err());
        assert!(p0(1.5, &d).is_err());
        assert!(p0(-0.3, &d).is_err());
        assert!(KernelPoint::new(0.5, 0.0, &d).is_err());
        assert!(KernelPoint::new(2.0, 1.0, &d).is_err());
    }
}
