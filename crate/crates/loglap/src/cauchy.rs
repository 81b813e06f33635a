//! Whole-space Cauchy solver for the logarithmic diffusion equation by the
//! representation u_f(t, x) = P0(t) (I_{2t} * f)(x), with the blow-up
//! certificate at t -> N/2 and the three decay-profile certificates.

use crate::error::{Error, Result};
use crate::kernel::{kernel_limit_constants, p0, Dimension};
use crate::quad::{tanh_sinh, QuadratureSpec};
use crate::riesz::{lemma_a1_envelope, riesz_radial, InnerLaw, RadialFunction, Tail};
use crate::verify::{EstimateReport, Sample, Verdict};

/// Solution profile of the Cauchy problem at a fixed time.
#[derive(Debug)]
pub struct CauchySolution {
    pub t: f64,
    pub profile: RadialFunction,
    pub norm_f_l1: f64,
}

impl CauchySolution {
    pub fn eval(&self, r: f64) -> f64 {
        self.profile.eval(r)
    }
}

/// u_f(t, .) = P0(t) I_{2t} * f as a radial profile. The solver accepts any
/// t < N/2; the integrability window 2T <= N is the caller's certificate
/// concern, not a solver restriction.
pub fn solve_cauchy(
    f: &RadialFunction,
    t: f64,
    dim: &Dimension,
    spec: &QuadratureSpec,
) -> Result<CauchySolution> {
    let n = dim.nf();
    if !(t > 0.0 && t < n / 2.0) {
        return Err(Error::domain(format!(
            "solve_cauchy requires 0 < t < N/2, got t = {t}"
        )));
    }
    let p = p0(t, dim)?;
    let norm_f_l1 = f.l1_norm(dim, spec)?;
    // sample the profile on a log grid and keep the exact evaluator
    let f_clone = f.clone();
    let dim_clone = *dim;
    let spec_clone = *spec;
    let tail_amplitude = p * norm_f_l1;
    let profile = RadialFunction::from_fn(
        move |r| {
            p * riesz_radial(t, &f_clone, r, &dim_clone, &spec_clone).unwrap_or(f64::NAN)
        },
        60.0,
        96,
        InnerLaw::Bounded,
        Tail::Power {
            amplitude: tail_amplitude,
            exponent: 2.0 * t - n,
            log_decay: false,
        },
    )?;
    Ok(CauchySolution {
        t,
        profile,
        norm_f_l1,
    })
}

/// The sequence (t_k, (N - 2 t_k) u_f(t_k, x)) approaching t = N/2 from below.
pub fn blowup_rate(
    f: &RadialFunction,
    x_radius: f64,
    times: &[f64],
    dim: &Dimension,
    spec: &QuadratureSpec,
) -> Result<Vec<(f64, f64)>> {
    let n = dim.nf();
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        if !(t > 0.0 && t < n / 2.0) {
            return Err(Error::domain("blowup_rate times must lie in (0, N/2)"));
        }
        let u = p0(t, dim)? * riesz_radial(t, f, x_radius.max(1e-12), dim, spec)?;
        out.push((t, (n - 2.0 * t) * u));
    }
    Ok(out)
}

/// Expected blow-up limit 2 (4 pi)^{-N/2} Gamma(N/2)^{-1} ||f||_1
/// (the constant consistent with (N-2t) P0(t) -> 2^{1-N} pi^{-N/2}/Gamma(N/2)).
pub fn blowup_limit(norm_f_l1: f64, dim: &Dimension) -> f64 {
    kernel_limit_constants(dim).blowup_limit * norm_f_l1
}

/// Which profile class the initial datum belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileClass {
    /// tau < -N (includes compactly supported data)
    CompactOrSteep,
    /// tau in (-N, -2T]
    Intermediate,
    /// tau = -N
    Critical,
}

/// Certify the two-sided profile sandwich for f = (1+|y|)^tau in the declared
/// class: a single constant c must cover a log grid of radii and a set of
/// times, and must be stable when the sample set doubles.
pub fn profile_certificate(
    class: ProfileClass,
    tau: f64,
    dim: &Dimension,
    spec: &QuadratureSpec,
    seed_id: &str,
) -> Result<EstimateReport> {
    let n = dim.nf();
    match class {
        ProfileClass::CompactOrSteep => {
            if !(tau < -n) {
                return Err(Error::domain("steep class requires tau < -N"));
            }
        }
        ProfileClass::Critical => {
            if (tau + n).abs() > 1e-12 {
                return Err(Error::domain("critical class requires tau = -N"));
            }
        }
        ProfileClass::Intermediate => {
            if !(tau > -n && tau < 0.0) {
                return Err(Error::domain("intermediate class requires -N < tau < 0"));
            }
        }
    }
    let f = crate::riesz::power_profile(tau)?;
    let times: Vec<f64> = [0.1, 0.25, 0.4]
        .iter()
        .map(|&frac| frac * n)
        .filter(|&t| t < -tau / 2.0 && t < n / 2.0)
        .collect();
    if times.is_empty() {
        return Err(Error::domain(
            "no admissible times in the integrability window for this tau",
        ));
    }
    // radii: log grid over [0.1, 100]
    let radii = |count: usize| -> Vec<f64> {
        (0..count)
            .map(|i| 0.1 * (1000.0_f64).powf(i as f64 / (count - 1) as f64))
            .collect()
    };
    let mut samples = Vec::new();
    let fit_on = |count: usize, samples: &mut Vec<Sample>| -> Result<f64> {
        let mut c_needed: f64 = 1.0;
        for &t in &times {
            let envelope = lemma_a1_envelope(t, tau, dim)?;
            let p = p0(t, dim)?;
            for &r in &radii(count) {
                // u_f = P0(t) I_{2t} * f; envelope shapes are for the Riesz part
                let riesz_value = riesz_radial(t, &f, r, dim, spec)?;
                // the paper states the sandwich in terms of (1+|x|); the lemma
                // shapes use |x| -- both are compared at the same sample points
                let lo = envelope.lower_shape(r);
                let up = envelope.upper_shape(r);
                if riesz_value <= 0.0 {
                    c_needed = f64::INFINITY;
                } else {
                    c_needed = c_needed.max(lo / riesz_value).max(riesz_value / up);
                }
                samples.push(Sample {
                    x: r,
                    t: Some(t),
                    lhs: riesz_value * p,
                    rhs: up * p,
                });
            }
        }
        Ok(c_needed)
    };
    let mut first = Vec::new();
    let c_half = fit_on(13, &mut first)?;
    let c_full = fit_on(25, &mut samples)?;
    let stable = c_full.is_finite() && (c_full - c_half).abs() <= 0.10 * c_full;
    let verdict = if stable { Verdict::Pass } else { Verdict::Fail };
    Ok(EstimateReport {
        estimate_id: seed_id.to_string(),
        region: "r in [0.1, 100], t in {0.1, 0.25, 0.4} N".to_string(),
        samples,
        measured_constant: c_full,
        verdict,
        tolerance_policy: "single constant over all samples; stability < 10% under doubling"
            .to_string(),
    })
}

/// delta-sequence check: integral of P_ln(t, .) against a radial test
/// function phi, which converges to phi(0) as t -> 0+.
pub fn delta_limit_value(
    phi: &dyn Fn(f64) -> f64,
    t: f64,
    dim: &Dimension,
    spec: &QuadratureSpec,
) -> Result<f64> {
    // int P_ln(t, x) phi(x) dx = P0(t) omega_N int_0^inf s^{2t-1} phi(s) ds
    let n = dim.nf();
    if !(t > 0.0 && t < n / 2.0) {
        return Err(Error::domain("delta_limit_value requires 0 < t < N/2"));
    }
    let p = p0(t, dim)?;
    // head via the Jacobi weight, tail by inversion
    let rule = crate::quad::gauss_jacobi(48, 0.0, 2.0 * t - 1.0)?;
    let mut head = 0.0;
    for &(v, w) in rule.iter() {
        let s = 0.5 * (1.0 + v);
        head += w * phi(s);
    }
    head *= 0.5_f64.powf(2.0 * t);
    let mut tail_fn = |v: f64| {
        if v <= 0.0 {
            return 0.0;
        }
        let s = 1.0 / v;
        s.powf(2.0 * t - 1.0) * phi(s) / (v * v)
    };
    let tail = tanh_sinh(&mut tail_fn, 0.0, 1.0, spec.abs_tol.min(spec.rel_tol))?;
    Ok(p * dim.omega_n() * (head + tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riesz::power_profile;

    const PI: f64 = std::f64::consts::PI;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default().with_tols(1e-9, 1e-9)
    }

    #[test]
    fn ball_datum_newton_value() {
        // f = 1_{B1}, N=3, t=1, r=3 -> (1/(4 pi)) (4 pi/3)/3 = 1/9
        let d = dim(3);
        let f = RadialFunction::ball_indicator(1.0).unwrap();
        let sol = solve_cauchy(&f, 1.0, &d, &spec()).unwrap();
        let got = sol.eval(3.0);
        assert!((1.0_f64 / 9.0 - 0.111_111_1).abs() < 1e-7);
        assert!(
            ((got - 1.0 / 9.0) * 9.0).abs() < 1e-4,
            "got {got}, want 1/9"
        );
        assert!((sol.norm_f_l1 - d.ball_volume()).abs() < 1e-6);
    }

    #[test]
    fn zero_datum() {
        let d = dim(3);
        let f = RadialFunction::from_fn(
            |_| 0.0,
            50.0,
            32,
            InnerLaw::Bounded,
            Tail::Compact { radius: 1.0 },
        )
        .unwrap();
        let sol = solve_cauchy(&f, 0.7, &d, &spec()).unwrap();
        for &r in &[0.5, 1.0, 4.0] {
            assert_eq!(sol.eval(r), 0.0);
        }
    }

    #[test]
    fn mass_comparison_bracket() {
        // r >= 2 R_supp: profile/(p0 r^{2t-N} ||f||) in [3^{2t-N}, 2^{N-2t}]
        let d = dim(3);
        let f = RadialFunction::ball_indicator(1.0).unwrap();
        let t = 0.8;
        let sol = solve_cauchy(&f, t, &d, &spec()).unwrap();
        for &r in &[2.0, 3.5, 8.0] {
            let ratio = sol.eval(r)
                / (p0(t, &d).unwrap() * r.powf(2.0 * t - 3.0) * sol.norm_f_l1);
            let lo = 3.0_f64.powf(2.0 * t - 3.0);
            let hi = 2.0_f64.powf(3.0 - 2.0 * t);
            assert!(ratio >= lo && ratio <= hi, "r={r}: ratio {ratio}");
        }
    }

    #[test]
    fn blowup_certificate_ball() {
        // limit = 0.0506606 * (4 pi / 3) ~ 0.2122066 for f = 1_{B1}, N=3
        let d = dim(3);
        let f = RadialFunction::ball_indicator(1.0).unwrap();
        let l1 = f.l1_norm(&d, &spec()).unwrap();
        let want = blowup_limit(l1, &d);
        assert!((want - 0.212_206_6).abs() < 1e-6, "{want}");
        let seq = blowup_rate(&f, 0.0, &[1.4, 1.45, 1.49, 1.499], &d, &spec()).unwrap();
        // approaching the limit
        let errs: Vec<f64> = seq.iter().map(|&(_, v)| (v - want).abs()).collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
        assert!(errs.last().unwrap() / want < 0.01, "{errs:?}");
        // x-independence at t = N/2 - 1e-3 (absolute agreement 1e-3)
        let t = 1.5 - 1e-3;
        let at0 = blowup_rate(&f, 0.0, &[t], &d, &spec()).unwrap()[0].1;
        let at5 = blowup_rate(&f, 5.0, &[t], &d, &spec()).unwrap()[0].1;
        assert!((at0 - at5).abs() < 1e-3, "{at0} vs {at5}");
        // linearity: doubling f doubles the limit
        assert!((blowup_limit(2.0 * l1, &d) - 2.0 * want).abs() < 1e-14);
    }

    #[test]
    fn profile_certificates_three_classes() {
        let d = dim(3);
        let spec = spec();
        let steep =
            profile_certificate(ProfileClass::CompactOrSteep, -4.0, &d, &spec, "steep").unwrap();
        assert_eq!(steep.verdict, Verdict::Pass, "steep c={}", steep.measured_constant);
        let critical =
            profile_certificate(ProfileClass::Critical, -3.0, &d, &spec, "critical").unwrap();
        assert_eq!(
            critical.verdict,
            Verdict::Pass,
            "critical c={}",
            critical.measured_constant
        );
        let inter =
            profile_certificate(ProfileClass::Intermediate, -2.4, &d, &spec, "intermediate")
                .unwrap();
        assert_eq!(
            inter.verdict,
            Verdict::Pass,
            "intermediate c={}",
            inter.measured_constant
        );
    }

    #[test]
    fn intermediate_class_exponent_by_regression() {
        // f = (1+|y|)^{-2T}, T = 0.4 N: log-log slope of u_f at large r ~ 2t - 2T
        let d = dim(3);
        let n = 3.0;
        let tau = -2.0 * (0.4 * n);
        let f = power_profile(tau).unwrap();
        let t = 0.3;
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for &r in &[20.0, 35.0, 60.0, 100.0] {
            let v = riesz_radial(t, &f, r, &d, &spec()).unwrap();
            xs.push(r.ln());
            ys.push(v.ln());
        }
        // least-squares slope
        let mx = xs.iter().sum::<f64>() / xs.len() as f64;
        let my = ys.iter().sum::<f64>() / ys.len() as f64;
        let slope = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (x - mx) * (y - my))
            .sum::<f64>()
            / xs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();
        let want = 2.0 * t + tau;
        assert!((slope - want).abs() < 0.05, "slope {slope} vs {want}");
    }

    #[test]
    fn semigroup_identity_radial_route() {
        // solve(solve(f, t1), t2) = solve(f, t1 + t2) within 1e-3 relative
        let d = dim(3);
        let spec = spec();
        let f = RadialFunction::ball_indicator(1.0).unwrap();
        for &(t1, t2) in &[(0.2, 0.3), (0.5, 0.5)] {
            let once = solve_cauchy(&f, t1 + t2, &d, &spec).unwrap();
            let first = solve_cauchy(&f, t1, &d, &spec).unwrap();
            let twice = solve_cauchy(&first.profile, t2, &d, &spec).unwrap();
            for &r in &[0.3, 1.0, 2.5, 6.0] {
                let a = twice.eval(r);
                let b = once.eval(r);
                assert!(
                    ((a - b) / b).abs() < 1e-3,
                    "t=({t1},{t2}), r={r}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn delta_limit_richardson() {
        // Gaussian phi (height 1): extrapolated limit within 1e-4 of phi(0) = 1
        let d = dim(3);
        let spec = spec();
        let phi = |r: f64| (-0.5 * r * r).exp();
        let v1 = delta_limit_value(&phi, 1e-2, &d, &spec).unwrap();
        let v2 = delta_limit_value(&phi, 1e-3, &d, &spec).unwrap();
        // first-order Richardson in t
        let extrapolated = (1e-2 * v2 - 1e-3 * v1) / (1e-2 - 1e-3);
        assert!(
            (extrapolated - 1.0).abs() < 1e-4,
            "extrapolated {extrapolated} (v1 {v1}, v2 {v2})"
        );
        // monotone approach
        let v0 = delta_limit_value(&phi, 1e-1, &d, &spec).unwrap();
        assert!((v2 - 1.0).abs() < (v1 - 1.0).abs() && (v1 - 1.0).abs() < (v0 - 1.0).abs());
    }

    #[test]
    fn positivity_and_monotone_dependence() {
        let d = dim(3);
        let spec = spec();
        let f = RadialFunction::from_fn(
            |r| (-r * r).exp(),
            50.0,
            48,
            InnerLaw::Bounded,
            Tail::Power {
                amplitude: 0.0,
                exponent: -10.0,
                log_decay: false,
            },
        )
        .unwrap();
        let g = RadialFunction::from_fn(
            |r| 2.0 * (-0.5 * r * r).exp(),
            50.0,
            48,
            InnerLaw::Bounded,
            Tail::Power {
                amplitude: 0.0,
                exponent: -10.0,
                log_decay: false,
            },
        )
        .unwrap();
        // f <= g pointwise
        let uf = solve_cauchy(&f, 0.6, &d, &spec).unwrap();
        let ug = solve_cauchy(&g, 0.6, &d, &spec).unwrap();
        for &r in &[0.2, 1.0, 3.0, 10.0] {
            let a = uf.eval(r);
            let b = ug.eval(r);
            assert!(a > 0.0 && b > 0.0 && a <= b * (1.0 + 1e-9), "r={r}: {a} vs {b}");
        }
    }

    #[test]
    fn gaussian_1_over_4pi_scaled_limit_constant() {
        // pi^{-2} Gamma(2) constant check reused from the kernel module
        let d = dim(4);
        let k = crate::kernel::kernel_limit_constants(&d);
        assert!((k.p0_prime_zero - 1.0 / (PI * PI)).abs() < 1e-12);
    }
}
