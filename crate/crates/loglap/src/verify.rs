//! Estimate-certification harness: each check samples an inequality on a
//! deterministic grid, fits the single admissible constant, and reports a
//! pass/fail verdict with the samples that produced it. A constant only
//! counts as measured when it stabilizes (< 10% drift) as the sample set
//! doubles, which guards against spurious boundedness on small windows.

use crate::cauchy::delta_limit_value;
use crate::error::{Error, Result};
use crate::fundsol::FundamentalSolution;
use crate::kernel::Dimension;
use crate::quad::{
    adaptive, adaptive_with_points, integrate_oscillatory, tanh_sinh, Oscillation, QuadratureSpec,
};
use crate::riesz::{riesz_radial, InnerLaw, RadialFunction, Tail};
use serde::{Deserialize, Serialize};

const PI: f64 = std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One sampled comparison point of an inequality lhs <= rhs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sample {
    pub x: f64,
    pub t: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

/// Verdict record for one checked estimate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateReport {
    pub estimate_id: String,
    pub region: String,
    pub samples: Vec<Sample>,
    pub measured_constant: f64,
    pub verdict: Verdict,
    pub tolerance_policy: String,
}

impl EstimateReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn stability_verdict(c_half: f64, c_full: f64) -> Verdict {
    if c_full.is_finite() && c_half.is_finite() && (c_full - c_half).abs() <= 0.10 * c_full.abs() {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

const STABILITY_POLICY: &str =
    "single constant over all samples; must stabilize (<10% drift) as the sample set doubles";

// ---------------------------------------------------------------------------
// Level sets of Phi_ln.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelSetPart {
    Near,
    Far,
}

/// Level-set measures of |Phi_ln|:
/// near (lambda > 1): meas{ |Phi_ln,1| > lambda } <= c / (lambda ln^2 lambda),
/// far, N > 3 (lambda < 1): meas <= c lambda^{-2N/(N-3)} |ln lambda|^{-N},
/// far, N = 3: containment radius <= e^{c/lambda - 1}.
pub fn check_levelsets(
    sol: &FundamentalSolution,
    part: LevelSetPart,
    exponent_perturbation: f64,
) -> Result<EstimateReport> {
    let dim = *sol.dim();
    let n = dim.nf();
    match part {
        LevelSetPart::Near => {
            let near = sol.near_profile()?;
            // |Phi_ln| is decreasing on the near window; root-find the level radius
            let level_radius = |lambda: f64| -> f64 {
                let (mut lo, mut hi) = (1e-7_f64, 0.36_f64);
                for _ in 0..80 {
                    let mid = (lo * hi).sqrt();
                    if near.eval(mid).abs() > lambda {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                (lo * hi).sqrt()
            };
            let lambdas_full: Vec<f64> = (0..8).map(|i| 10.0_f64.powf(2.0 + 0.5 * i as f64)).collect();
            let fit = |lams: &[f64], samples: &mut Vec<Sample>| -> f64 {
                let mut c: f64 = 0.0;
                for &lambda in lams {
                    let r = level_radius(lambda);
                    let meas = dim.ball_volume() * r.powf(n);
                    // the meta-variant shifts the lambda exponent of the bound
                    let shape =
                        1.0 / (lambda.powf(1.0 + exponent_perturbation) * lambda.ln().powi(2));
                    c = c.max(meas / shape);
                    samples.push(Sample {
                        x: r,
                        t: None,
                        lhs: meas,
                        rhs: shape,
                    });
                }
                c
            };
            let mut scratch = Vec::new();
            let c_half = fit(&lambdas_full[..4], &mut scratch);
            let mut samples = Vec::new();
            let c_full = fit(&lambdas_full, &mut samples);
            Ok(EstimateReport {
                estimate_id: format!("levelset-near-N{}", dim.n()),
                region: "lambda in [1e2, 10^5.5], level radii inside B_1".into(),
                samples,
                measured_constant: c_full,
                verdict: stability_verdict(c_half, c_full),
                tolerance_policy: STABILITY_POLICY.into(),
            })
        }
        LevelSetPart::Far => {
            // measured far-field envelope constant: |Phi_ln| <= c2 r^{(3-N)/2}/ln r
            let mut c2: f64 = 0.0;
            let mut r = 2.0;
            while r <= 50.0 {
                let v = sol.phi_ln(r)?.abs();
                c2 = c2.max(v * r.powf((n - 3.0) / 2.0) * r.ln());
                r *= 1.5;
            }
            let lambdas_full: Vec<f64> = (0..8).map(|i| 0.02 * 0.6_f64.powi(i)).collect();
            let fit = |lams: &[f64], samples: &mut Vec<Sample>| -> f64 {
                let mut c: f64 = 0.0;
                for &lambda in lams {
                    if n > 3.0 {
                        // envelope radius: c2 r^{(3-N)/2}/ln r = lambda
                        let mut r_lam = 2.0_f64;
                        for _ in 0..200 {
                            let next = (c2 / (lambda * r_lam.ln())).powf(2.0 / (n - 3.0));
                            if (next - r_lam).abs() < 1e-12 * r_lam {
                                r_lam = next;
                                break;
                            }
                            r_lam = next.max(2.0);
                        }
                        let meas = dim.ball_volume() * r_lam.powf(n);
                        let shape = lambda.powf(-2.0 * n / (n - 3.0) - exponent_perturbation)
                            / lambda.ln().abs().powf(n);
                        c = c.max(meas / shape);
                        samples.push(Sample {
                            x: r_lam,
                            t: None,
                            lhs: meas,
                            rhs: shape,
                        });
                    } else {
                        // N = 3: containment radius <= e^{c/lambda - 1}
                        let r_lam = (c2 / lambda).exp();
                        let needed = lambda * (r_lam.ln() + 1.0 + exponent_perturbation * 10.0);
                        c = c.max(needed);
                        samples.push(Sample {
                            x: r_lam,
                            t: None,
                            lhs: r_lam,
                            rhs: (needed / lambda - 1.0).exp(),
                        });
                    }
                }
                c
            };
            let mut scratch = Vec::new();
            let c_half = fit(&lambdas_full[..4], &mut scratch);
            let mut samples = Vec::new();
            let c_full = fit(&lambdas_full, &mut samples);
            Ok(EstimateReport {
                estimate_id: format!("levelset-far-N{}", dim.n()),
                region: "lambda in (0, 0.02], radii >= 2".into(),
                samples,
                measured_constant: c_full,
                verdict: stability_verdict(c_half, c_full),
                tolerance_policy: STABILITY_POLICY.into(),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Orlicz-class membership.
// ---------------------------------------------------------------------------

/// Decide the growth condition int_2^inf M(t)/(t^2 ln^2 t) dt < inf
/// numerically, then test the consistency of int_{B_1} M(|Phi_ln|) dx under
/// grid refinement toward the origin. Convergent condition must produce a
/// stabilizing integral; divergent condition must produce growing increments.
pub fn check_orlicz(
    m: &dyn Fn(f64) -> f64,
    label: &str,
    sol: &FundamentalSolution,
    spec: &QuadratureSpec,
) -> Result<EstimateReport> {
    let dim = *sol.dim();
    let n = dim.nf();
    // condition integral with increasing cutoffs
    let mut cond_vals = Vec::new();
    for &upper in &[1e3_f64, 1e5, 1e7, 1e9] {
        let mut g = |t: f64| m(t) / (t * t * t.ln() * t.ln());
        let pts: Vec<f64> = (1..=8).map(|j| 2.0 * 10.0_f64.powi(j)).filter(|&p| p < upper).collect();
        cond_vals.push(adaptive_with_points(&mut g, 2.0, upper, &pts, spec)?);
    }
    let increments: Vec<f64> = cond_vals.windows(2).map(|w| w[1] - w[0]).collect();
    let condition_holds = increments[increments.len() - 1]
        < 0.5 * increments[0].max(1e-12)
        && *increments.last().unwrap() < 0.05 * cond_vals.last().unwrap().max(1e-12) + 1e-10;
    // radial integral of M(|Phi_ln|) over B_1 under refinement
    let near = sol.near_profile()?;
    let mut vals = Vec::new();
    for &w_exp in &[5.0_f64, 8.0, 11.0, 14.0] {
        let eps = (-w_exp).exp();
        let mut g = |r: f64| m(near.eval(r).abs()) * r.powf(n - 1.0);
        let v = dim.omega_n() * adaptive(&mut g, eps, 1.0, spec)?;
        vals.push(v);
    }
    let incs: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let integral_converges = incs[2] < 0.6 * incs[1] && incs[1] < 0.9 * incs[0].max(1e-300);
    let consistent = condition_holds == integral_converges;
    let samples = vals
        .iter()
        .zip(&[5.0, 8.0, 11.0, 14.0])
        .map(|(&v, &w)| Sample {
            x: (-w as f64).exp(),
            t: None,
            lhs: v,
            rhs: *cond_vals.last().unwrap(),
        })
        .collect();
    Ok(EstimateReport {
        estimate_id: format!("orlicz-{label}-N{}", dim.n()),
        region: "B_1 radial integral, refinement cutoffs e^-5 .. e^-14".into(),
        samples,
        measured_constant: *vals.last().unwrap(),
        verdict: if consistent { Verdict::Pass } else { Verdict::Fail },
        tolerance_policy: format!(
            "condition integral {} => B_1 integral must {}",
            if condition_holds { "converges" } else { "diverges" },
            if condition_holds { "stabilize" } else { "grow" }
        ),
    })
}

// ---------------------------------------------------------------------------
// Dini-modulus continuity of Phi_ln * f.
// ---------------------------------------------------------------------------

/// Radial convolution (g * f)(r) for radial profiles using spherical means of g.
fn radial_convolution(
    g: &RadialFunction,
    f_weight: &RadialFunction,
    r: f64,
    dim: &Dimension,
    spec: &QuadratureSpec,
) -> Result<f64> {
    // int f(y) g(x - y) dy = omega_N int_0^inf s^{N-1} f(s) A_g(r, s) ds
    let n = dim.nf();
    let mut integrand =
        |s: f64| s.powf(n - 1.0) * f_weight.eval(s) * crate::riesz::spherical_mean_pub(g, r, s, dim, spec).unwrap_or(f64::NAN);
    let s_far = (2.0 * r).max(60.0);
    let pts = vec![r, 1.0, 0.5 * r];
    let body = adaptive_with_points(&mut integrand, 0.0, s_far, &pts, spec)?;
    let tail = match g.tail() {
        Tail::Oscillatory {
            frequency, phase, ..
        } => integrate_oscillatory(
            &mut integrand,
            s_far,
            Oscillation {
                frequency: *frequency,
                phase: *phase,
            },
            spec,
        )?,
        _ => {
            let mut h = |v: f64| {
                if v <= 0.0 {
                    return 0.0;
                }
                integrand(s_far / v) * s_far / (v * v)
            };
            tanh_sinh(&mut h, 0.0, 1.0, spec.abs_tol.min(spec.rel_tol))?
        }
    };
    Ok(dim.omega_n() * (body + tail))
}

/// u_* * f via the nested route: int_0^1 P0(t) (I_{2t} * f)(x) dt.
fn u_star_conv(
    f: &RadialFunction,
    r: f64,
    dim: &Dimension,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let rule = crate::quad::gauss_legendre(24);
    let mut acc = 0.0;
    for &(x, w) in rule {
        let v = 0.5 * (1.0 + x);
        let t = v * v;
        if t <= 0.0 || t >= 1.0 {
            continue;
        }
        acc += 0.5 * w * 2.0 * v * crate::kernel::p0(t, dim)? * riesz_radial(t, f, r, dim, spec)?;
    }
    Ok(acc)
}

/// Dini-continuity certificate for Phi_ln * f on B_R with the modulus
/// 1/(1 + ln^2 |x - x'|); the v_1 * f part is additionally held to a
/// Lipschitz modulus. `f` must be in L^1 with (1+|y|)^theta decay.
pub fn check_dini(
    f: &RadialFunction,
    r_cap: f64,
    sol: &FundamentalSolution,
    spec: &QuadratureSpec,
    exponent_perturbation: f64,
) -> Result<EstimateReport> {
    let dim = *sol.dim();
    if dim.n() < 4 {
        return Err(Error::domain("the Dini certificate is stated for N >= 4"));
    }
    // g = Phi_1 * f, then v_1 * f = u_* * (Phi_1 * f)
    let n = dim.nf();
    let phi1_profile = {
        let (p1, _) = crate::fundsol::phi1_profiles_for(&dim)?;
        p1
    };
    let conv_spec = QuadratureSpec {
        abs_tol: 1e-8,
        rel_tol: 1e-8,
        ..*spec
    };
    // sample pairs along a ray: base point x = R/3
    let base = r_cap / 3.0;
    let seps: Vec<f64> = (2..=20).map(|k| 2.0_f64.powi(-k)).collect();
    let mut g_profile_grid: Vec<f64> = Vec::new();
    let mut g_profile_vals: Vec<f64> = Vec::new();
    {
        let mut r = 1e-7;
        while r <= 60.0 {
            g_profile_grid.push(r);
            g_profile_vals.push(radial_convolution(&phi1_profile, f, r, &dim, &conv_spec)?);
            r *= 1.45;
        }
        // refine the oscillatory window with uniform nodes
        let mut r = 2.25;
        while r <= 60.0 {
            g_profile_grid.push(r);
            g_profile_vals.push(radial_convolution(&phi1_profile, f, r, &dim, &conv_spec)?);
            r += 0.5;
        }
    }
    let mut order: Vec<usize> = (0..g_profile_grid.len()).collect();
    order.sort_by(|&a, &b| g_profile_grid[a].partial_cmp(&g_profile_grid[b]).unwrap());
    let grid: Vec<f64> = order.iter().map(|&i| g_profile_grid[i]).collect();
    let vals: Vec<f64> = order.iter().map(|&i| g_profile_vals[i]).collect();
    // far behavior of Phi_1 * f keeps Phi_1's oscillation; fit the amplitude
    let far_amp = vals
        .iter()
        .zip(&grid)
        .rev()
        .take(20)
        .map(|(&v, &r)| v.abs() * r.powf((n - 1.0) / 2.0))
        .fold(0.0_f64, f64::max);
    let g_conv = RadialFunction::from_samples(
        grid,
        vals,
        InnerLaw::Bounded,
        Tail::Oscillatory {
            amplitude: far_amp,
            exponent: -(n - 1.0) / 2.0,
            frequency: 1.0,
            phase: helm_phase(n),
        },
    )?;

    let u_conv_at = |r: f64| -> Result<f64> { u_star_conv(f, r, &dim, &conv_spec) };
    let v_conv_at = |r: f64| -> Result<f64> { u_star_conv(&g_conv, r, &dim, &conv_spec) };

    let fit = |ks: &[f64], samples: &mut Vec<Sample>| -> Result<(f64, f64)> {
        let mut c_dini: f64 = 0.0;
        let mut c_lip: f64 = 0.0;
        for &sep in ks {
            let x1 = base;
            let x2 = base + sep;
            let du = (u_conv_at(x1)? - u_conv_at(x2)?).abs();
            let dv = (v_conv_at(x1)? - v_conv_at(x2)?).abs();
            let total = du + dv;
            let modulus = 1.0 / (1.0 + sep.ln().powi(2))
                * sep.powf(-exponent_perturbation);
            c_dini = c_dini.max(total / modulus);
            if sep >= 9e-4 {
                c_lip = c_lip.max(dv / sep);
            }
            samples.push(Sample {
                x: sep,
                t: None,
                lhs: total,
                rhs: modulus,
            });
        }
        Ok((c_dini, c_lip))
    };
    let mut scratch = Vec::new();
    let half: Vec<f64> = seps.iter().copied().step_by(2).collect();
    let (c_half, _) = fit(&half, &mut scratch)?;
    let mut samples = Vec::new();
    let (c_full, c_lip) = fit(&seps, &mut samples)?;
    let mut verdict = stability_verdict(c_half, c_full);
    if !c_lip.is_finite() {
        verdict = Verdict::Fail;
    }
    Ok(EstimateReport {
        estimate_id: format!("dini-N{}", dim.n()),
        region: format!("pairs in B_{r_cap}, separations 2^-2 .. 2^-20"),
        samples,
        measured_constant: c_full,
        verdict,
        tolerance_policy: format!(
            "{STABILITY_POLICY}; v_1*f Lipschitz constant {c_lip:.3e} measured on separations >= 2^-10"
        ),
    })
}

fn helm_phase(n: f64) -> f64 {
    (n - 1.0) * PI / 4.0
}

// ---------------------------------------------------------------------------
// delta-sequence initial data.
// ---------------------------------------------------------------------------

/// Extrapolated delta-limit: int P_ln(t, x) phi(x) dx -> phi(0).
pub fn check_delta_limit(
    dim: &Dimension,
    spec: &QuadratureSpec,
) -> Result<EstimateReport> {
    let phi = |r: f64| (-0.5 * r * r).exp();
    let ts = [1e-1, 1e-2, 1e-3];
    let mut vals = Vec::new();
    for &t in &ts {
        vals.push(delta_limit_value(&phi, t, dim, spec)?);
    }
    let extrapolated = (ts[1] * vals[2] - ts[2] * vals[1]) / (ts[1] - ts[2]);
    let err = (extrapolated - 1.0).abs();
    let monotone = (vals[2] - 1.0).abs() < (vals[1] - 1.0).abs()
        && (vals[1] - 1.0).abs() < (vals[0] - 1.0).abs();
    let samples = ts
        .iter()
        .zip(&vals)
        .map(|(&t, &v)| Sample {
            x: 0.0,
            t: Some(t),
            lhs: v,
            rhs: 1.0,
        })
        .collect();
    Ok(EstimateReport {
        estimate_id: format!("delta-limit-N{}", dim.n()),
        region: "Gaussian test function, t in {1e-1, 1e-2, 1e-3}".into(),
        samples,
        measured_constant: err,
        verdict: if err < 1e-4 && monotone {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        tolerance_policy: "Richardson-extrapolated limit within 1e-4 of phi(0), monotone approach"
            .into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_limit_passes() {
        let dim = Dimension::new(3).unwrap();
        let spec = QuadratureSpec::default().with_tols(1e-9, 1e-9);
        let report = check_delta_limit(&dim, &spec).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}
