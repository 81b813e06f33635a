//! Bessel functions J_nu, Y_nu of real nonnegative order.
//!
//! Layout of the algorithm (Steed/Temme, the classical route):
//! the continued fraction CF1 gives J'_nu/J_nu at the target order;
//! downward recurrence moves an unnormalized J to a low order mu with
//! |mu| <= 1/2; there the pair (Y_mu, Y_{mu+1}) is seeded either by
//! Temme's series (x < 2) or from the Hankel-function logarithmic
//! derivative CF2 (x >= 2, the rigorous form of the modulus/phase
//! route); upward recurrence carries Y to the requested order and the
//! Wronskian fixes J's normalization. The x = 2 switchover is internal;
//! the Wronskian property test validates it.

use crate::error::{Error, Result};
use crate::special::gamma::recip_gamma_1p;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 2.2e-292;
const MAXIT: usize = 20_000;
const XMIN: f64 = 2.0;
const PI: f64 = std::f64::consts::PI;

/// Order holder used by the Helmholtz module (nu = N/2 - 1 there).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder {
    nu: f64,
}

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu >= 0.0) {
            return Err(Error::domain(format!("Bessel order must be >= 0, got {nu}")));
        }
        Ok(BesselOrder { nu })
    }

    pub fn value(self) -> f64 {
        self.nu
    }
}

/// J, Y and their derivatives at a common point.
#[derive(Debug, Clone, Copy)]
pub struct BesselJy {
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
}

/// Temme's auxiliary gamma combinations for |x| <= 1/2:
/// gam1 = (1/Gamma(1-x) - 1/Gamma(1+x))/(2x), gam2 = (1/Gamma(1-x) + 1/Gamma(1+x))/2,
/// gampl = 1/Gamma(1+x), gammi = 1/Gamma(1-x).
fn temme_gammas(x: f64) -> (f64, f64, f64, f64) {
    // both combinations from the even/odd parts of the reciprocal-gamma series,
    // avoiding the cancellation of a direct difference
    use crate::special::gamma::RECIP_GAMMA_SERIES;
    let x2 = x * x;
    let mut odd = 0.0; // sum b_{2m+1} x^{2m}
    let mut even = 0.0; // sum b_{2m} x^{2m}
    // b_k = RECIP_GAMMA_SERIES[k] with b_0 = series[0] corresponding to x^0 of 1/Gamma(1+x)
    for m in (0..RECIP_GAMMA_SERIES.len() / 2).rev() {
        if 2 * m + 1 < RECIP_GAMMA_SERIES.len() {
            odd = odd * x2 + RECIP_GAMMA_SERIES[2 * m + 1];
        }
        even = even * x2 + RECIP_GAMMA_SERIES[2 * m];
    }
    let gam1 = -odd;
    let gam2 = even;
    let gampl = gam2 - x * gam1;
    let gammi = gam2 + x * gam1;
    (gam1, gam2, gampl, gammi)
}

/// J_nu(x), Y_nu(x), J'_nu(x), Y'_nu(x) for nu >= 0, x > 0.
pub fn bessel_jy(nu: f64, x: f64) -> Result<BesselJy> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("bessel_jy requires x > 0, got {x}")));
    }
    if !(nu >= 0.0) {
        return Err(Error::domain(format!("bessel_jy requires nu >= 0, got {nu}")));
    }

    let nl = if x < XMIN {
        (nu + 0.5) as i32
    } else {
        ((nu - x + 1.5) as i32).max(0)
    };
    let xmu = nu - f64::from(nl);
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI; // Wronskian J_mu Y'_mu - J'_mu Y_mu

    // CF1 for J'_nu/J_nu
    let mut isign = 1.0_f64;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            estimate: f64::NAN,
            error_bound: f64::INFINITY,
            context: format!("Bessel CF1 at nu={nu}, x={x}"),
        });
    }

    // downward recurrence of an unnormalized J from nu to xmu
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in (1..=nl).rev() {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl; // J'_mu/J_mu

    let rjmu: f64;
    let mut rymu: f64;
    let mut ry1: f64;
    if x < XMIN {
        // Temme's series for Y_mu, Y_{mu+1}
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let mut d = -x2.ln();
        let mut e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS {
            1.0
        } else {
            pimu2.sin() / pimu2
        };
        let r = PI * pimu2 * fact3 * fact3;
        let mut cc = 1.0;
        d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..=MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cc *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cc * (ff + r * q);
            sum += del;
            let del1 = cc * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NonConvergence {
                estimate: f64::NAN,
                error_bound: f64::INFINITY,
                context: format!("Bessel Temme series at nu={nu}, x={x}"),
            });
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: logarithmic derivative of the Hankel function, p + i q
        let a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut a_run = a;
        let mut ok = false;
        for i in 2..=MAXIT {
            a_run += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a_run * dr + br;
            di = a_run * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a_run / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            let temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NonConvergence {
                estimate: f64::NAN,
                error_bound: f64::INFINITY,
                context: format!("Bessel CF2 at nu={nu}, x={x}"),
            });
        }
        let gam = (p - f) / q;
        let mut rjmu_v = (w / ((p - f) * gam + q)).sqrt();
        rjmu_v = rjmu_v.copysign(rjl);
        rjmu = rjmu_v;
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    let fact = rjmu / rjl;
    let j = rjl1 * fact;
    let jp = rjp1 * fact;
    // upward recurrence for Y
    for i in 1..=nl {
        let rytemp = (xmu + f64::from(i)) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    let y = rymu;
    let yp = nu * xi * rymu - ry1;
    Ok(BesselJy { j, y, jp, yp })
}

/// J_nu(x) for nu >= 0, x >= 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if x == 0.0 {
        if !(nu >= 0.0) {
            return Err(Error::domain(format!("bessel_j requires nu >= 0, got {nu}")));
        }
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if x < 0.0 {
        return Err(Error::domain(format!("bessel_j requires x >= 0, got {x}")));
    }
    // tiny x underflows the CF1 route for large order; series leading term suffices
    if x < 1e-8 && nu > 0.0 {
        let half = 0.5 * x;
        let lead = if nu <= 0.5 {
            half.powf(nu) * recip_gamma_1p(nu)
        } else {
            (nu * half.ln() - ln_gamma_pos(nu + 1.0)).exp()
        };
        return Ok(lead);
    }
    Ok(bessel_jy(nu, x)?.j)
}

fn ln_gamma_pos(x: f64) -> f64 {
    crate::special::gamma::ln_gamma(x).unwrap_or(f64::INFINITY)
}

/// Y_nu(x) for nu >= 0, x > 0.
pub fn bessel_y(nu: BesselOrder, x: f64) -> Result<f64> {
    Ok(bessel_jy(nu.value(), x)?.y)
}
