//! The fundamental solution of the logarithmic Laplacian in R^N (N >= 3):
//!   Phi_ln = u_* + v_1,
//!   u_*(r) = int_0^1 P0(t) r^{2t-N} dt,
//!   v_1(r) = int_0^1 P0(t) (I_{2t} * Phi_1)(r) dt,
//! with the radial gradient and the N = 3 symbol-inverse consistency oracle.
//!
//! The order of integration in v_1 is load-bearing: the inner Riesz
//! convolution against Phi_1 runs first for each t, the t-integral second.
//! Swapping the order (convolving u_* with Phi_1 directly) changes the value,
//! because the oscillatory tails converge only conditionally.

use crate::error::{Error, Result};
use crate::helmholtz::HelmholtzProfile;
use crate::kernel::{p0, Dimension};
use crate::quad::{
    adaptive_with_points, exp_sinh, gauss_legendre, integrate_oscillatory, Oscillation,
    QuadratureSpec,
};
use crate::riesz::{riesz_radial, riesz_radial_gradient, InnerLaw, RadialFunction, Tail};
use crate::special::{digamma, gamma};
use once_cell::sync::OnceCell;

const PI: f64 = std::f64::consts::PI;

/// Phi_ln = u_* + v_1 with cached Helmholtz profiles for the nested quadrature.
pub struct FundamentalSolution {
    dim: Dimension,
    spec: QuadratureSpec,
    inner_spec: QuadratureSpec,
    phi1: RadialFunction,
    phi1_prime: RadialFunction,
    /// c0 = (1/4) pi^{-N/2} Gamma(N/2): Phi_ln(r) ~ c0 r^{-N}/ln^2 r at 0.
    pub c0: f64,
    near: OnceCell<RadialFunction>,
}

/// Crate-facing access to the interpolated Helmholtz profiles.
pub(crate) fn phi1_profiles_for(dim: &Dimension) -> Result<(RadialFunction, RadialFunction)> {
    build_phi1_profiles(dim)
}

fn build_phi1_profiles(dim: &Dimension) -> Result<(RadialFunction, RadialFunction)> {
    let helm = HelmholtzProfile::new(*dim)?;
    let n = dim.nf();
    // log grid below 2, uniform 0.05 steps out to 240 to resolve the oscillation
    let mut grid: Vec<f64> = (0..80)
        .map(|i| 1e-7 * (2.0_f64 / 1e-7).powf(i as f64 / 79.0))
        .collect();
    let mut r = 2.05;
    while r <= 240.0 {
        grid.push(r);
        r += 0.05;
    }
    let values: Result<Vec<f64>> = grid.iter().map(|&r| helm.eval(r)).collect();
    let dvalues: Result<Vec<f64>> = grid.iter().map(|&r| helm.eval_prime(r)).collect();
    let amp = helm.far_amplitude();
    let phase = helm.far_phase();
    let phi1 = RadialFunction::from_samples(
        grid.clone(),
        values?,
        InnerLaw::Power {
            coefficient: helm.near_constant,
            exponent: 2.0 - n,
        },
        Tail::Oscillatory {
            amplitude: -amp,
            exponent: -(n - 1.0) / 2.0,
            frequency: 1.0,
            phase,
        },
    )?;
    let phi1_prime = RadialFunction::from_samples(
        grid,
        dvalues?,
        InnerLaw::Power {
            coefficient: -(n - 2.0) * helm.near_constant,
            exponent: 1.0 - n,
        },
        Tail::Oscillatory {
            amplitude: amp,
            exponent: -(n - 1.0) / 2.0,
            frequency: 1.0,
            phase: (n + 1.0) * PI / 4.0,
        },
    )?;
    Ok((phi1, phi1_prime))
}

impl FundamentalSolution {
    pub fn new(dim: Dimension, spec: QuadratureSpec) -> Result<Self> {
        if dim.n() < 3 {
            return Err(Error::domain(
                "the fundamental solution is constructed for N >= 3",
            ));
        }
        let (phi1, phi1_prime) = build_phi1_profiles(&dim)?;
        let half = dim.nf() / 2.0;
        let c0 = 0.25 * PI.powf(-half) * gamma(half)?;
        // inner Riesz tolerance 10x tighter than the outer t-integral
        let inner_spec = QuadratureSpec {
            abs_tol: 0.1 * spec.abs_tol,
            rel_tol: 0.1 * spec.rel_tol,
            ..spec
        };
        Ok(FundamentalSolution {
            dim,
            spec,
            inner_spec,
            phi1,
            phi1_prime,
            c0,
            near: OnceCell::new(),
        })
    }

    pub fn dim(&self) -> &Dimension {
        &self.dim
    }

    /// u_*(r) = int_0^1 P0(t) r^{2t-N} dt.
    pub fn u_star(&self, r: f64) -> Result<f64> {
        u_star(r, &self.dim, &self.spec)
    }

    /// Radial derivative of u_*: -int_0^1 P0(t) (N-2t) r^{2t-N-1} dt.
    pub fn u_star_prime(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::domain("u_star_prime requires r > 0"));
        }
        let dim = self.dim;
        let n = dim.nf();
        let mut g = |t: f64| {
            if t <= 0.0 || t >= 1.0 {
                return 0.0;
            }
            -p0(t, &dim).unwrap_or(f64::NAN) * (n - 2.0 * t) * r.powf(2.0 * t - n - 1.0)
        };
        let pts: Vec<f64> = (1..=20).map(|k| 2.0_f64.powi(-k)).collect();
        adaptive_with_points(&mut g, 0.0, 1.0, &pts, &self.spec)
    }

    /// v_1(r) = int_0^1 P0(t) (I_{2t} * Phi_1)(r) dt, nested order.
    pub fn v_one(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::domain("v_one requires r > 0"));
        }
        // Gauss-Legendre in v with the grading t = v^2 toward P0 ~ t at 0
        let rule = gauss_legendre(24);
        let mut acc = 0.0;
        for &(x, w) in rule {
            let v = 0.5 * (1.0 + x);
            let t = v * v;
            if t <= 0.0 || t >= 1.0 {
                continue;
            }
            let riesz = riesz_radial(t, &self.phi1, r, &self.dim, &self.inner_spec)?;
            acc += 0.5 * w * 2.0 * v * p0(t, &self.dim)? * riesz;
        }
        Ok(acc)
    }

    /// Radial derivative of v_1 through the gradient of the inner convolution.
    pub fn v_one_prime(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::domain("v_one_prime requires r > 0"));
        }
        let rule = gauss_legendre(24);
        let mut acc = 0.0;
        for &(x, w) in rule {
            let v = 0.5 * (1.0 + x);
            let t = v * v;
            if t <= 0.0 || t >= 1.0 {
                continue;
            }
            let g = riesz_radial_gradient(t, &self.phi1_prime, r, &self.dim, &self.inner_spec)?;
            acc += 0.5 * w * 2.0 * v * p0(t, &self.dim)? * g;
        }
        Ok(acc)
    }

    /// Phi_ln(r) = u_*(r) + v_1(r).
    pub fn phi_ln(&self, r: f64) -> Result<f64> {
        Ok(self.u_star(r)? + self.v_one(r)?)
    }

    /// Radial derivative of Phi_ln.
    pub fn grad_phi_ln(&self, r: f64) -> Result<f64> {
        Ok(self.u_star_prime(r)? + self.v_one_prime(r)?)
    }

    /// Interpolated Phi_ln on (0, 1.3] for repeated near-origin evaluation
    /// (level sets, Orlicz integrals). Built on first use.
    pub fn near_profile(&self) -> Result<&RadialFunction> {
        self.near.get_or_try_init(|| {
            let m = 44;
            let grid: Vec<f64> = (0..m)
                .map(|i| 1e-7 * (1.3_f64 / 1e-7).powf(i as f64 / (m - 1) as f64))
                .collect();
            let mut values = Vec::with_capacity(m);
            for &r in &grid {
                values.push(self.phi_ln(r)?);
            }
            // pad the grid out to 50 with live values so the structural
            // invariant r_max >= 50 holds; the near window stays (0, 1.3]
            let mut grid = grid;
            for &r in &[2.0, 4.0, 8.0, 16.0, 32.0, 50.0] {
                grid.push(r);
                values.push(self.phi_ln(r)?);
            }
            RadialFunction::from_samples(
                grid,
                values,
                InnerLaw::Power {
                    coefficient: self.c0,
                    exponent: -self.dim.nf(),
                },
                Tail::Power {
                    amplitude: 0.0,
                    exponent: -1.0,
                    log_decay: false,
                },
            )
        })
    }

    /// N = 3 consistency oracle: Phi_ln(r) = (1/(2 pi^2 r)) PV int_0^inf
    /// k sin(kr)/(2 ln k) dk, principal value symmetric about k = 1,
    /// oscillatory tail through aligned half-periods.
    pub fn symbol_inverse_oracle(&self, r: f64) -> Result<f64> {
        if self.dim.n() != 3 {
            return Err(Error::domain("the symbol-inverse oracle is the N = 3 route"));
        }
        if !(r > 0.0) {
            return Err(Error::domain("oracle requires r > 0"));
        }
        let g = |k: f64| k * (k * r).sin() / (2.0 * k.ln());
        // paired principal value over k in (0, 2)
        let mut paired = |v: f64| {
            let v = v.max(1e-9);
            g(1.0 + v) + g(1.0 - v)
        };
        let head = adaptive_with_points(&mut paired, 0.0, 1.0, &[1e-6, 1e-3, 1e-1], &self.spec)?;
        let mut tail_fn = |k: f64| g(k);
        let tail = integrate_oscillatory(
            &mut tail_fn,
            2.0,
            Oscillation {
                frequency: r,
                phase: 0.0,
            },
            &self.spec,
        )?;
        Ok((head + tail) / (2.0 * PI * PI * r))
    }

    /// Radial Fourier transform of u_* at frequency k (N = 3 reduction):
    /// (4 pi / k) int_0^inf r u_*(r) sin(kr) dr, which must equal
    /// (1 - k^{-2})/(2 ln k). The r -> 0 region is integrated through the
    /// three-term near-origin expansion of u_* in the variable w = -ln r.
    pub fn fourier_u_star(&self, k: f64) -> Result<f64> {
        if self.dim.n() != 3 {
            return Err(Error::domain("the sine-transform reduction is the N = 3 route"));
        }
        if !(k > 0.0) || (k - 1.0).abs() < 1e-6 {
            return Err(Error::domain("frequency must be positive and away from 1"));
        }
        let dim = self.dim;
        let spec = self.spec;
        let delta: f64 = 1e-6;
        let w0 = -(delta.ln()); // ~13.8
        // near-origin expansion coefficients:
        // u_*(r) = A r^{-1}/ln r + B r^{-3}/ln^2 r + C r^{-1}/ln^2 r + O(r^{-3}/|ln r|^3)
        let p0_at_1 = p0(1.0, &dim)?;
        let p0p_zero = crate::kernel::kernel_limit_constants(&dim).p0_prime_zero;
        // P0'(1) = P0(1) (-ln 4 - psi(N/2 - 1) - psi(1))  [log-derivative of (e 2.1)]
        let p0p_one = p0_at_1
            * (-(4.0_f64.ln()) - digamma(dim.nf() / 2.0 - 1.0)? - digamma(1.0)?);
        let a_coef = 0.5 * p0_at_1;
        let b_coef = 0.25 * p0p_zero;
        let c_coef = -0.25 * p0p_one;
        // head over [0, delta] in w = -ln r:
        // A-term: int_0^delta A sin(kr)/ln r dr = -A int_{w0}^inf sin(k e^-w) e^-w / w dw
        let mut a_term_fn = |w: f64| (k * (-w).exp() * 1.0).sin() * (-w).exp() / w;
        let a_term = -a_coef * exp_sinh(&mut a_term_fn, w0, 1e-13)?;
        // B-term: int_0^delta B r^{-2} sin(kr)/ln^2 r dr
        //       = B k [ 1/w0 + int_{w0}^inf (sinc(k e^-w) - 1)/w^2 dw ]
        let mut b_corr_fn = |w: f64| {
            let x = k * (-w).exp();
            let sinc = if x.abs() < 1e-8 {
                1.0 - x * x / 6.0
            } else {
                x.sin() / x
            };
            (sinc - 1.0) / (w * w)
        };
        let b_term = b_coef * k * (1.0 / w0 + exp_sinh(&mut b_corr_fn, w0, 1e-13)?);
        // C-term: int_0^delta C sin(kr)/ln^2 r dr = C int_{w0}^inf sin(k e^-w) e^-w / w^2 dw
        let mut c_term_fn = |w: f64| (k * (-w).exp()).sin() * (-w).exp() / (w * w);
        let c_term = c_coef * exp_sinh(&mut c_term_fn, w0, 1e-13)?;
        let head_near = a_term + b_term + c_term;
        // body [delta, S] with u_* evaluated live
        let s_cut = 40.0;
        let mut body_fn = |r: f64| r * u_star(r, &dim, &spec).unwrap_or(f64::NAN) * (k * r).sin();
        let pts: Vec<f64> = (0..=12).map(|j| delta * 10.0_f64.powi(j / 2)).collect();
        let body = adaptive_with_points(&mut body_fn, delta, s_cut, &pts, &spec)?;
        // oscillatory tail
        let mut tail_fn = |r: f64| r * u_star(r, &dim, &spec).unwrap_or(f64::NAN) * (k * r).sin();
        let tail = integrate_oscillatory(
            &mut tail_fn,
            s_cut,
            Oscillation {
                frequency: k,
                phase: 0.0,
            },
            &spec,
        )?;
        Ok(4.0 * PI / k * (head_near + body + tail))
    }
}

/// Free-function form of u_*: one-dimensional quadrature of P0(t) r^{2t-N}.
pub fn u_star(r: f64, dim: &Dimension, spec: &QuadratureSpec) -> Result<f64> {
    if dim.n() < 3 {
        return Err(Error::domain("u_star requires N >= 3 (P0(1) must be finite)"));
    }
    if !(r > 0.0) {
        return Err(Error::domain("u_star requires r > 0"));
    }
    let n = dim.nf();
    let dim = *dim;
    let mut g = |t: f64| {
        if t <= 0.0 || t >= 1.0 {
            return 0.0;
        }
        p0(t, &dim).unwrap_or(f64::NAN) * r.powf(2.0 * t - n)
    };
    // graded splits resolve the exponential factor e^{2 t ln r} on both sides
    let pts: Vec<f64> = (1..=20)
        .flat_map(|j| {
            let f = 2.0_f64.powi(-j);
            [f, 1.0 - f]
        })
        .collect();
    adaptive_with_points(&mut g, 0.0, 1.0, &pts, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::adaptive;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default().with_tols(1e-8, 1e-8)
    }

    fn solution(n: u32) -> FundamentalSolution {
        FundamentalSolution::new(dim(n), spec()).unwrap()
    }

    #[test]
    fn u_star_at_one_matches_independent_rule() {
        // independent oracle: 80-point Gauss-Legendre on the t-integral
        for n in [3u32, 4, 5] {
            let d = dim(n);
            let rule = gauss_legendre(80);
            let mut reference = 0.0;
            for &(x, w) in rule {
                let t = 0.5 * (1.0 + x);
                reference += 0.5 * w * p0(t, &d).unwrap();
            }
            let got = u_star(1.0, &d, &spec()).unwrap();
            assert!(
                ((got - reference) / reference).abs() < 1e-10,
                "N={n}: {got} vs {reference}"
            );
        }
    }

    #[test]
    fn u_star_near_origin_band() {
        // u_* r^N ln^2 r -> Gamma(N/2)/(4 pi^{N/2}) within 30% at e^-5, 10% at e^-10
        let d = dim(3);
        let want = gamma(1.5).unwrap() / (4.0 * PI.powf(1.5));
        assert!((want - 0.039_788_7).abs() < 1e-6);
        let s = spec();
        let r5 = (-5.0_f64).exp();
        let v5 = u_star(r5, &d, &s).unwrap() * r5.powi(3) * 25.0;
        assert!((v5 - want).abs() < 0.30 * want, "e^-5: {v5} vs {want}");
        let r10 = (-10.0_f64).exp();
        let v10 = u_star(r10, &d, &s).unwrap() * r10.powi(3) * 100.0;
        assert!((v10 - want).abs() < 0.10 * want, "e^-10: {v10} vs {want}");
    }

    #[test]
    fn u_star_far_field_bound() {
        // 0 < u_* <= c (r^{2-N}/ln r + r^{-N}/ln^2 r) at r = 10, measured c
        let d = dim(3);
        let s = spec();
        let v = u_star(10.0, &d, &s).unwrap();
        assert!(v > 0.0);
        let shape = 10.0_f64.powi(-1) / 10.0_f64.ln() + 10.0_f64.powi(-3) / 10.0_f64.ln().powi(2);
        let c = v / shape;
        assert!(c.is_finite() && c < 10.0, "measured c = {c}");
    }

    #[test]
    fn u_star_monotone_decreasing() {
        let d = dim(4);
        let s = spec();
        let mut prev = f64::INFINITY;
        let mut r = 0.01;
        while r < 30.0 {
            let v = u_star(r, &d, &s).unwrap();
            assert!(v < prev && v > 0.0, "r={r}");
            prev = v;
            r *= 1.7;
        }
    }

    #[test]
    fn v_one_near_origin_bounds() {
        // (N>=4) |v_1| <= c r^{2-N}/(4 ln^2 r); (N=3) |v_1| <= c/(4 r ln^2 r) + c/2
        let r = (-3.0_f64).exp();
        let sol4 = solution(4);
        let v4 = sol4.v_one(r).unwrap().abs();
        let shape4 = r.powi(-2) / (4.0 * 9.0);
        let c4 = v4 / shape4;
        assert!(c4.is_finite() && c4 < 20.0, "N=4 measured c = {c4}");
        let sol3 = solution(3);
        let v3 = sol3.v_one(r).unwrap().abs();
        let shape3 = 1.0 / (4.0 * r * 9.0) + 0.5;
        let c3 = v3 / shape3;
        assert!(c3.is_finite() && c3 < 20.0, "N=3 measured c = {c3}");
    }

    #[test]
    fn v_one_far_field_bound() {
        // |v_1| r^{(N-3)/2} ln r bounded at r = 20, N = 4
        let sol = solution(4);
        let v = sol.v_one(20.0).unwrap().abs();
        let shape = 1.0 / (20.0_f64.powf(0.5) * 20.0_f64.ln());
        let c = v / shape;
        assert!(c.is_finite() && c < 10.0, "measured c = {c}");
    }

    #[test]
    fn phi_ln_near_origin_ratio() {
        // |phi_ln - c0 r^{-N}/ln^2 r| <= c1 r^{-N}/|ln r|^3 at r = e^-6, N = 4
        let sol = solution(4);
        let r = (-6.0_f64).exp();
        let phi = sol.phi_ln(r).unwrap();
        let lead = sol.c0 * r.powi(-4) / 36.0;
        let c1 = (phi - lead).abs() / (r.powi(-4) / 216.0);
        assert!(c1.is_finite() && c1 < 10.0, "measured c1 = {c1}");
        // ratio band
        let ratio = phi / lead;
        assert!(ratio > 0.7 && ratio < 1.3, "ratio {ratio}");
    }

    #[test]
    fn phi_ln_far_field_bound() {
        // |phi_ln| <= c2 r^{(3-N)/2}/ln r at r = 10, N = 5
        let sol = solution(5);
        let v = sol.phi_ln(10.0).unwrap().abs();
        let shape = 10.0_f64.powi(-1) / 10.0_f64.ln();
        let c2 = v / shape;
        assert!(c2.is_finite() && c2 < 10.0, "measured c2 = {c2}");
    }

    #[test]
    fn grad_matches_finite_difference() {
        let sol = solution(4);
        for &r in &[0.5, 2.0, 8.0] {
            let h = 1e-4 * r;
            let fd = (sol.phi_ln(r + h).unwrap() - sol.phi_ln(r - h).unwrap()) / (2.0 * h);
            let grad = sol.grad_phi_ln(r).unwrap();
            assert!(
                ((grad - fd) / fd).abs() < 0.01,
                "r={r}: grad {grad} vs fd {fd}"
            );
        }
    }

    #[test]
    fn gradient_bounds_n4() {
        let sol = solution(4);
        // near origin: |grad| r^{N+1} ln^2 r bounded
        let r = (-5.0_f64).exp();
        let g = sol.grad_phi_ln(r).unwrap().abs();
        let c = g * r.powi(5) * 25.0;
        assert!(c.is_finite() && c < 10.0, "near measured c = {c}");
        // far: |grad| ln r bounded
        let g = sol.grad_phi_ln(30.0).unwrap().abs();
        let c = g * 30.0_f64.ln();
        assert!(c.is_finite() && c < 10.0, "far measured c = {c}");
    }

    #[test]
    fn fourier_identity_u_star() {
        // F(u_*)(k) = (1 - k^{-2})/(2 ln k) at k in {0.5, 2, 5}, 1e-3 relative
        let sol = solution(3);
        for &k in &[0.5_f64, 2.0, 5.0] {
            let got = sol.fourier_u_star(k).unwrap();
            let want = (1.0 - k.powi(-2)) / (2.0 * k.ln());
            assert!(
                ((got - want) / want).abs() < 1e-3,
                "k={k}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn symbol_inverse_oracle_agreement() {
        // u_* + v_1 vs the PV symbol inverse at r in {0.1, 1, 5}, 1e-2 relative
        let sol = solution(3);
        for &r in &[0.1_f64, 1.0, 5.0] {
            let construct = sol.phi_ln(r).unwrap();
            let oracle = sol.symbol_inverse_oracle(r).unwrap();
            assert!(
                ((construct - oracle) / oracle).abs() < 1e-2,
                "r={r}: construct {construct} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn local_integrability() {
        // int_0^1 |phi_ln| r^{N-1} dr stabilizes to 1e-4 under refinement
        let sol = solution(4);
        let near = sol.near_profile().unwrap();
        let n = 4.0;
        let mut vals = Vec::new();
        for &eps_exp in &[6.0, 9.0, 12.0] {
            let eps = (-eps_exp as f64).exp();
            let mut g = |r: f64| near.eval(r).abs() * r.powf(n - 1.0);
            let v = adaptive(&mut g, eps, 1.0, &spec()).unwrap();
            vals.push(v);
        }
        let d1 = (vals[1] - vals[0]).abs();
        let d2 = (vals[2] - vals[1]).abs();
        assert!(d2 < d1, "increments not shrinking: {vals:?}");
        assert!(d2 < 1e-4 * vals[2].abs() + 1e-4, "last increment {d2}");
    }

    #[test]
    fn radial_symmetry_is_structural() {
        // the construction depends on |x| only; two evaluations agree exactly
        let sol = solution(4);
        let a = sol.phi_ln(2.5).unwrap();
        let b = sol.phi_ln(2.5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn low_dimension_refused() {
        assert!(FundamentalSolution::new(dim(2), spec()).is_err());
        assert!(u_star(1.0, &dim(2), &spec()).is_err());
    }
}
