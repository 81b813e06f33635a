//! Quadrature engines: adaptive Gauss pairs, double-exponential rules for
//! endpoint singularities and semi-infinite ranges, Gauss-Legendre and
//! Gauss-Jacobi node generation, and the half-period accelerated evaluation
//! of oscillatory integrals over [a, inf).
//!
//! Plain truncation of an oscillatory tail is not offered: the chunks are
//! aligned with the sign-change zeros of the declared phase and the partial
//! sums go through the epsilon algorithm. Misaligned chunks are known to
//! stabilize on wrong limits for slowly decaying amplitudes.

use crate::error::{Error, Result};
use once_cell::sync::Lazy;
use std::collections::{BinaryHeap, HashMap};
use std::sync::Mutex;

const PI: f64 = std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointMode {
    None,
    AlgebraicSingularity,
    ExponentialDecay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscillatoryMode {
    None,
    HalfPeriodAcceleration,
}

/// Node/weight policy and tolerances for `integrate`.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub endpoint_mode: EndpointMode,
    pub oscillatory_mode: OscillatoryMode,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 4000,
            endpoint_mode: EndpointMode::None,
            oscillatory_mode: OscillatoryMode::None,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) || self.max_subdivisions < 1 {
            return Err(Error::domain(
                "QuadratureSpec requires abs_tol > 0, rel_tol > 0, max_subdivisions >= 1",
            ));
        }
        Ok(())
    }

    pub fn with_tols(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_endpoint(mut self, mode: EndpointMode) -> Self {
        self.endpoint_mode = mode;
        self
    }

    pub fn with_oscillatory(mut self, mode: OscillatoryMode) -> Self {
        self.oscillatory_mode = mode;
        self
    }

    fn tol_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

pub enum UpperLimit {
    Finite(f64),
    Infinite,
}

/// Phase descriptor for oscillatory tails: the integrand changes sign near
/// the zeros of sin(frequency * s - phase), i.e. at s = (phase + k pi)/frequency.
#[derive(Debug, Clone, Copy)]
pub struct Oscillation {
    pub frequency: f64,
    pub phase: f64,
}

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes (Newton on the recurrence), cached per order.
// ---------------------------------------------------------------------------

static GL_CACHE: Lazy<Mutex<HashMap<usize, &'static [(f64, f64)]>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Nodes/weights on [-1, 1] for the n-point Gauss-Legendre rule.
pub fn gauss_legendre(n: usize) -> &'static [(f64, f64)] {
    let mut cache = GL_CACHE.lock().unwrap();
    if let Some(&r) = cache.get(&n) {
        return r;
    }
    // P_n(x) and its derivative by the three-term recurrence
    let legendre = |x: f64| -> (f64, f64) {
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = if x.abs() < 1.0 {
            n as f64 * (x * p1 - p0) / (x * x - 1.0)
        } else {
            f64::INFINITY
        };
        (p1, dp)
    };
    let mut full = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        full.push((x, w));
    }
    full.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    debug_assert_eq!(full.len(), n);
    let leaked: &'static [(f64, f64)] = Box::leak(full.into_boxed_slice());
    cache.insert(n, leaked);
    leaked
}

fn gl_sum(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, rule: &[(f64, f64)]) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in rule {
        acc += w * f(mid + half * x);
    }
    acc * half
}

// ---------------------------------------------------------------------------
// Adaptive integration with an embedded GL15/GL31 pair.
// ---------------------------------------------------------------------------

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err
            .partial_cmp(&other.err)
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

fn eval_segment(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64) -> Result<Segment> {
    let lo = gl_sum(f, a, b, gauss_legendre(15));
    let hi = gl_sum(f, a, b, gauss_legendre(31));
    if !hi.is_finite() || !lo.is_finite() {
        return Err(Error::NonConvergence {
            estimate: lo,
            error_bound: f64::INFINITY,
            context: format!("non-finite integrand on [{a}, {b}]"),
        });
    }
    Ok(Segment {
        a,
        b,
        value: hi,
        err: (hi - lo).abs(),
    })
}

/// Adaptive quadrature on a finite interval; `points` are forced breakpoints.
pub fn adaptive_with_points(
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    b: f64,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if a == b {
        return Ok(0.0);
    }
    let mut cuts: Vec<f64> = vec![a, b];
    cuts.extend(points.iter().copied().filter(|&p| p > a && p < b));
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut err_total = 0.0;
    for w in cuts.windows(2) {
        let seg = eval_segment(f, w[0], w[1])?;
        total += seg.value;
        err_total += seg.err;
        heap.push(seg);
    }
    let mut n_segments = heap.len();
    loop {
        if err_total <= spec.tol_for(total) {
            return Ok(total);
        }
        if n_segments >= spec.max_subdivisions {
            return Err(Error::NonConvergence {
                estimate: total,
                error_bound: err_total,
                context: format!("adaptive quadrature on [{a}, {b}]"),
            });
        }
        let worst = heap.pop().expect("heap cannot be empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval at floating-point resolution; accept its estimate
            total += 0.0;
            err_total -= worst.err;
            continue;
        }
        total -= worst.value;
        err_total -= worst.err;
        let left = eval_segment(f, worst.a, mid)?;
        let right = eval_segment(f, mid, worst.b)?;
        total += left.value + right.value;
        err_total += left.err + right.err;
        heap.push(left);
        heap.push(right);
        n_segments += 1;
    }
}

pub fn adaptive(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    adaptive_with_points(f, a, b, &[], spec)
}

// ---------------------------------------------------------------------------
// Double-exponential rules.
// ---------------------------------------------------------------------------

fn finite_or_zero(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

/// tanh-sinh rule on [a, b]; robust for integrable endpoint singularities.
///
/// Abscissas near the ends are formed as endpoint + distance with the
/// distance computed in exponential form, so a singular endpoint at 0 is
/// resolved down to subnormals instead of saturating at machine epsilon.
pub fn tanh_sinh(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let half = 0.5 * (b - a);
    const U_MAX: f64 = 5.0;
    // node at parameter u > 0: distance from either endpoint is half*d with
    // d = 1 - tanh(sh) = 2 e^{-2 sh}/(1 + e^{-2 sh})
    let pair = |f: &mut dyn FnMut(f64) -> f64, u: f64| -> f64 {
        let sh = 0.5 * PI * u.sinh();
        let em = (-2.0 * sh).exp();
        let d = 2.0 * em / (1.0 + em);
        // sech^2(sh) = 4 e^{-2 sh}/(1 + e^{-2 sh})^2
        let sech2 = 4.0 * em / ((1.0 + em) * (1.0 + em));
        let w = 0.5 * PI * u.cosh() * sech2;
        let x_hi = b - half * d;
        let x_lo = a + half * d;
        w * (finite_or_zero(f(x_hi)) + finite_or_zero(f(x_lo)))
    };
    let mut h = 1.0;
    let mut value = {
        // center node u = 0 carries weight pi/2
        let mut acc = 0.5 * PI * finite_or_zero(f(0.5 * (a + b)));
        let mut k = 1;
        while h * k as f64 <= U_MAX {
            acc += pair(f, h * k as f64);
            k += 1;
        }
        acc * h * half
    };
    for level in 1..=12 {
        h *= 0.5;
        let mut acc = 0.0;
        let mut k = 1;
        while h * k as f64 <= U_MAX {
            acc += pair(f, h * k as f64);
            k += 2;
        }
        let new_value = 0.5 * value + acc * h * half;
        let delta = (new_value - value).abs();
        value = new_value;
        if delta <= tol * (1.0 + value.abs()) && level >= 4 {
            return Ok(value);
        }
    }
    Ok(value)
}

/// exp-sinh rule on [a, inf) for integrands with fast decay.
pub fn exp_sinh(f: &mut dyn FnMut(f64) -> f64, a: f64, tol: f64) -> Result<f64> {
    const U_MAX: f64 = 4.0;
    let mut h = 1.0;
    fn es_eval(f: &mut dyn FnMut(f64) -> f64, a: f64, u: f64) -> f64 {
        let t = 0.5 * PI * u.sinh();
        let x = t.exp();
        let w = 0.5 * PI * u.cosh() * x;
        let v = f(a + x);
        if v.is_finite() {
            w * v
        } else {
            0.0
        }
    }
    let mut value = {
        let mut acc = 0.0;
        let mut k = -((U_MAX / h) as i64);
        while (k as f64) * h <= U_MAX {
            acc += es_eval(f, a, h * k as f64);
            k += 1;
        }
        acc * h
    };
    for level in 1..=12 {
        h *= 0.5;
        let mut acc = 0.0;
        let mut k = -((U_MAX / h) as i64);
        if k % 2 == 0 {
            k += 1;
        }
        while (k as f64) * h <= U_MAX {
            acc += es_eval(f, a, h * k as f64);
            k += 2;
        }
        let new_value = 0.5 * value + acc * h;
        let delta = (new_value - value).abs();
        value = new_value;
        if delta <= tol * (1.0 + value.abs()) && level >= 4 {
            return Ok(value);
        }
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// Gauss-Jacobi nodes via Golub-Welsch (QL with implicit shifts).
// ---------------------------------------------------------------------------

/// QL with implicit shifts on a symmetric tridiagonal matrix, rotating a
/// single row vector `z` along; eigenvalues land in `d`.
fn tqli(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NonConvergence {
                    estimate: f64::NAN,
                    error_bound: f64::INFINITY,
                    context: "tridiagonal QL failed to converge".into(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0_f64, 1.0_f64);
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut fv = s * e[i];
                let b = c * e[i];
                r = fv.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = fv / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                fv = z[i + 1];
                z[i + 1] = s * z[i] + c * fv;
                z[i] = c * z[i] - s * fv;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// n-point Gauss-Jacobi rule for weight (1-x)^alpha (1+x)^beta on [-1, 1].
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<Vec<(f64, f64)>> {
    if n == 0 || alpha <= -1.0 || beta <= -1.0 {
        return Err(Error::domain(
            "gauss_jacobi requires n >= 1, alpha > -1, beta > -1",
        ));
    }
    let ab = alpha + beta;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for (k, dk) in d.iter_mut().enumerate() {
        let kf = k as f64;
        *dk = if alpha == beta {
            0.0
        } else if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
    }
    for k in 1..n {
        let kf = k as f64;
        let b2 = if k == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
        } else {
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                / ((2.0 * kf + ab) * (2.0 * kf + ab) * (2.0 * kf + ab + 1.0) * (2.0 * kf + ab - 1.0))
        };
        e[k - 1] = b2.sqrt();
    }
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    tqli(&mut d, &mut e, &mut z)?;
    // mu0 = 2^{a+b+1} Gamma(a+1) Gamma(b+1) / Gamma(a+b+2)
    let mu0 = (std::f64::consts::LN_2 * (ab + 1.0)
        + crate::special::ln_gamma(alpha + 1.0)?
        + crate::special::ln_gamma(beta + 1.0)?
        - crate::special::ln_gamma(ab + 2.0)?)
    .exp();
    let mut rule: Vec<(f64, f64)> = d
        .iter()
        .zip(z.iter())
        .map(|(&x, &zi)| (x, mu0 * zi * zi))
        .collect();
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(rule)
}

// ---------------------------------------------------------------------------
// Wynn epsilon acceleration.
// ---------------------------------------------------------------------------

/// Accelerate a sequence of partial sums; returns (limit, error estimate).
pub fn wynn_epsilon(partials: &[f64]) -> (f64, f64) {
    let n = partials.len();
    if n == 0 {
        return (0.0, f64::INFINITY);
    }
    if n == 1 {
        return (partials[0], f64::INFINITY);
    }
    let mut prev: Vec<f64> = vec![0.0; n + 1];
    let mut cur: Vec<f64> = partials.to_vec();
    let mut best = *partials.last().unwrap();
    let mut prev_best = f64::INFINITY;
    let mut col = 0usize;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            let inv = if diff == 0.0 { 1e300 } else { 1.0 / diff };
            next.push(prev[i + 1] + inv);
        }
        prev = cur;
        cur = next;
        col += 1;
        if col % 2 == 0 {
            if let Some(&cand) = cur.last() {
                if cand.is_finite() {
                    prev_best = best;
                    best = cand;
                }
            }
        }
    }
    (best, (best - prev_best).abs())
}

// ---------------------------------------------------------------------------
// Oscillatory integrals over [a, inf).
// ---------------------------------------------------------------------------

fn refine_to_sign_change(f: &mut dyn FnMut(f64) -> f64, s0: f64, period: f64) -> f64 {
    // scan several periods ahead for a bracketing pair, then bisect
    let samples = 16usize;
    let lo = s0 + 3.0 * period;
    let mut prev_s = lo;
    let mut prev_v = f(prev_s);
    for i in 1..=2 * samples {
        let s = lo + period * i as f64 / samples as f64;
        let v = f(s);
        if prev_v != 0.0 && v != 0.0 && prev_v.signum() != v.signum() {
            let (mut xa, mut xb) = (prev_s, s);
            let mut fa = prev_v;
            for _ in 0..60 {
                let mid = 0.5 * (xa + xb);
                let fm = f(mid);
                if fm == 0.0 {
                    xa = mid;
                    break;
                }
                if fa.signum() != fm.signum() {
                    xb = mid;
                } else {
                    xa = mid;
                    fa = fm;
                }
            }
            // shift back toward s0 by whole periods
            let zero = 0.5 * (xa + xb);
            let k = ((zero - s0) / period).floor();
            let mut aligned = zero - k * period;
            while aligned > s0 + period {
                aligned -= period;
            }
            return aligned;
        }
        prev_s = s;
        prev_v = v;
    }
    s0
}

/// Integral of an eventually-oscillatory integrand over [a, inf): half-period
/// partition at the zeros of sin(frequency*s - phase) plus epsilon acceleration
/// of the partial sums. The nominal zero grid is refined to an observed sign
/// change of the integrand before chunking.
pub fn integrate_oscillatory(
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    osc: Oscillation,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if !(osc.frequency > 0.0) {
        return Err(Error::domain("oscillation frequency must be positive"));
    }
    let period = PI / osc.frequency;
    // first phase zero strictly beyond a
    let k0 = ((a * osc.frequency - osc.phase) / PI).floor() + 1.0;
    let mut s0 = (osc.phase + k0 * PI) / osc.frequency;
    while s0 <= a {
        s0 += period;
    }
    // Refine the partition origin to an actual sign change of the integrand:
    // composite amplitudes shift the phase, and acceleration of log-slow
    // amplitudes is only reliable when chunks end where the integrand crosses
    // zero (the alignment performs one exact integration by parts).
    s0 = refine_to_sign_change(f, s0, period).max(a + 1e-300);
    if s0 <= a {
        s0 += period;
    }
    let chunk_spec = QuadratureSpec {
        abs_tol: 0.1 * spec.abs_tol,
        rel_tol: 0.1 * spec.rel_tol,
        max_subdivisions: 200,
        ..*spec
    };
    let head = adaptive(f, a, s0, &chunk_spec)?;
    let max_chunks = spec.max_subdivisions.clamp(32, 600);
    let mut partials = Vec::with_capacity(max_chunks);
    let mut sum = 0.0;
    let mut lo = s0;
    let mut best = f64::NAN;
    let mut best_err = f64::INFINITY;
    for j in 0..max_chunks {
        let hi = s0 + period * (j + 1) as f64;
        sum += adaptive(f, lo, hi, &chunk_spec)?;
        lo = hi;
        partials.push(sum);
        if partials.len() >= 6 && partials.len() % 2 == 0 {
            let (val, err) = wynn_epsilon(&partials);
            let tol = spec.tol_for(head + val);
            if err <= tol && (val - best).abs() <= tol {
                return Ok(head + val);
            }
            best = val;
            best_err = err;
        }
    }
    Err(Error::NonConvergence {
        estimate: head + best,
        error_bound: best_err,
        context: format!("oscillatory tail from {a} (frequency {})", osc.frequency),
    })
}

/// Spec-facing entry point for non-oscillatory integrals.
pub fn integrate(
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    b: UpperLimit,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    match b {
        UpperLimit::Finite(b) => match spec.endpoint_mode {
            EndpointMode::None => adaptive(f, a, b, spec),
            EndpointMode::AlgebraicSingularity => {
                tanh_sinh(f, a, b, spec.abs_tol.min(spec.rel_tol))
            }
            EndpointMode::ExponentialDecay => {
                // grade subdivisions toward the left end where the decay starts
                let mut pts = Vec::new();
                let len = b - a;
                let mut frac = 0.5;
                for _ in 0..20 {
                    pts.push(a + len * frac);
                    frac *= 0.5;
                }
                adaptive_with_points(f, a, b, &pts, spec)
            }
        },
        UpperLimit::Infinite => match spec.oscillatory_mode {
            OscillatoryMode::HalfPeriodAcceleration => Err(Error::domain(
                "oscillatory infinite integrals need a phase descriptor; call integrate_oscillatory",
            )),
            OscillatoryMode::None => exp_sinh(f, a, spec.abs_tol.min(spec.rel_tol)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exactness() {
        let spec = QuadratureSpec::default();
        let v = adaptive(&mut |t: f64| t, 0.0, 1.0, &spec).unwrap();
        assert!((v - 0.5).abs() < 1e-14);
        let v = adaptive(&mut |t: f64| t * t * t - 2.0 * t, -1.0, 3.0, &spec).unwrap();
        assert!((v - (81.0 / 4.0 - 1.0 / 4.0 - 9.0 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn algebraic_endpoint_singularity() {
        // int_0^1 t^{-1/2} dt = 2
        let v = tanh_sinh(&mut |t: f64| 1.0 / t.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-10, "got {v}");
        // through the spec-facing switch
        let spec = QuadratureSpec::default().with_endpoint(EndpointMode::AlgebraicSingularity);
        let v = integrate(
            &mut |t: f64| 1.0 / t.sqrt(),
            0.0,
            UpperLimit::Finite(1.0),
            &spec,
        )
        .unwrap();
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn gaussian_tail_to_infinity() {
        // int_0^inf e^{-t^2/2} dt = sqrt(pi/2)
        let spec = QuadratureSpec::default().with_endpoint(EndpointMode::ExponentialDecay);
        let v = integrate(
            &mut |t: f64| (-0.5 * t * t).exp(),
            0.0,
            UpperLimit::Infinite,
            &spec,
        )
        .unwrap();
        assert!((v - (PI / 2.0).sqrt()).abs() < 1e-10, "got {v}");
    }

    #[test]
    fn dirichlet_integral_via_half_periods() {
        // int_0^inf sin(r)/r dr = pi/2
        let spec = QuadratureSpec::default().with_tols(1e-10, 1e-10);
        let v = integrate_oscillatory(
            &mut |r: f64| if r == 0.0 { 1.0 } else { r.sin() / r },
            0.0,
            Oscillation {
                frequency: 1.0,
                phase: 0.0,
            },
            &spec,
        )
        .unwrap();
        assert!((v - PI / 2.0).abs() < 1e-8, "got {v}");
    }

    #[test]
    fn growing_amplitude_abel_value() {
        // int_0^inf sin(r) * r/(r+1) dr ; Abel value is cos(1)*Ci-type combination;
        // cross-check against the identity int_0^inf sin(r) dr - int_0^inf sin(r)/(r+1) dr = 1 - (sin/cos integral)
        // Here we only require internal consistency between two phase-aligned runs.
        let spec = QuadratureSpec::default().with_tols(1e-9, 1e-9);
        let osc = Oscillation {
            frequency: 1.0,
            phase: 0.0,
        };
        let v1 = integrate_oscillatory(&mut |r: f64| r.sin() * r / (r + 1.0), 0.0, osc, &spec)
            .unwrap();
        // int sin(r) r/(r+1) = int sin(r) dr - int sin(r)/(r+1) dr; Abel: int_0^inf sin = 1
        let v2 = integrate_oscillatory(&mut |r: f64| r.sin() / (r + 1.0), 0.0, osc, &spec).unwrap();
        assert!((v1 + v2 - 1.0).abs() < 1e-6, "{v1} + {v2} != 1");
    }

    #[test]
    fn gauss_jacobi_even_weight() {
        // weight (1-x^2)^{1/2} over [-1,1]: integral of 1 is pi/2 (N=5 -> alpha=1)
        let rule = gauss_jacobi(24, 1.0, 1.0).unwrap();
        let total: f64 = rule.iter().map(|&(_, w)| w).sum();
        // mu0 = 2^3 * Gamma(2)^2/Gamma(4) = 8/6 = 4/3
        assert!((total - 4.0 / 3.0).abs() < 1e-12, "got {total}");
        // integrate x^2 against (1-x)(1+x): int x^2 (1-x^2) dx = 2/3 - 2/5 = 4/15
        let v: f64 = rule.iter().map(|&(x, w)| w * x * x).sum();
        assert!((v - 4.0 / 15.0).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn gauss_jacobi_chebyshev_case() {
        // alpha = beta = -1/2: weight (1-x^2)^{-1/2}, total mass pi
        let rule = gauss_jacobi(16, -0.5, -0.5).unwrap();
        let total: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((total - PI).abs() < 1e-12);
        let v: f64 = rule.iter().map(|&(x, w)| w * x * x).sum();
        assert!((v - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn gauss_legendre_matches_known_5pt() {
        let rule = gauss_legendre(5);
        assert_eq!(rule.len(), 5);
        let total: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-14);
        // x^8 over [-1,1] = 2/9 requires >= 5 points
        let v: f64 = rule.iter().map(|&(x, w)| w * x.powi(8)).sum();
        assert!((v - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn nonconvergence_carries_estimate() {
        let spec = QuadratureSpec {
            max_subdivisions: 4,
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            ..QuadratureSpec::default()
        };
        let r = adaptive(&mut |t: f64| (50.0 * t).sin() * t.abs().sqrt(), 0.0, 10.0, &spec);
        match r {
            Err(Error::NonConvergence { estimate, error_bound, .. }) => {
                assert!(estimate.is_finite());
                assert!(error_bound.is_finite());
            }
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }
}
