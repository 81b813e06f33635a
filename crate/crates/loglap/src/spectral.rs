//! Periodic-grid realization of symbol operators: the logarithmic Laplacian
//! (symbol 2 ln|xi|), the fractional Laplacian (|xi|^{2s}) and the Cauchy
//! propagator (|xi|^{-2t}), plus the direct singular-integral evaluation of
//! the logarithmic Laplacian for cross-validation.
//!
//! The zero mode is undefined for all three symbols and is mapped to zero;
//! the operators are therefore meant for mean-zero data, and whole-space
//! comparisons use rapidly decaying mass-zero fields on large boxes.

use crate::error::{Error, Result};
use crate::kernel::Dimension;
use crate::quad::{adaptive_with_points, exp_sinh, QuadratureSpec};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

const PI: f64 = std::f64::consts::PI;

/// Real field on a uniform periodic grid over [-L, L)^d, n points per axis.
#[derive(Debug, Clone)]
pub struct PeriodicField {
    pub d: usize,
    pub box_half_width: f64,
    pub n: usize,
    pub values: Vec<f64>,
}

/// Fourier coefficients of a PeriodicField (row-major, frequency index
/// k_j in [-n/2, n/2), xi = (pi/L) k).
#[derive(Debug, Clone)]
pub struct SpectralField {
    pub d: usize,
    pub box_half_width: f64,
    pub n: usize,
    pub coefficients: Vec<Complex<f64>>,
}

impl PeriodicField {
    pub fn from_fn(
        d: usize,
        box_half_width: f64,
        n: usize,
        f: impl Fn(&[f64]) -> f64,
    ) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return Err(Error::domain("PeriodicField supports d in {1,2,3}"));
        }
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::domain("grid size must be a power of two, >= 16"));
        }
        let h = 2.0 * box_half_width / n as f64;
        let total = n.pow(d as u32);
        let mut values = Vec::with_capacity(total);
        let mut idx = vec![0usize; d];
        let mut point = vec![0.0_f64; d];
        for _ in 0..total {
            for (k, &i) in idx.iter().enumerate() {
                point[k] = -box_half_width + h * i as f64;
            }
            values.push(f(&point));
            for k in (0..d).rev() {
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
            }
        }
        Ok(PeriodicField {
            d,
            box_half_width,
            n,
            values,
        })
    }

    pub fn grid_spacing(&self) -> f64 {
        2.0 * self.box_half_width / self.n as f64
    }

    /// Coordinates of the grid point with the given flat index.
    pub fn point(&self, mut flat: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.d];
        let h = self.grid_spacing();
        for k in (0..self.d).rev() {
            let i = flat % self.n;
            flat /= self.n;
            out[k] = -self.box_half_width + h * i as f64;
        }
        out
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn norm_sup(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
    }

    pub fn norm_l2(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() / self.values.len() as f64).sqrt()
    }

    /// Largest |value| on the box boundary layer (outermost grid shell).
    pub fn boundary_sup(&self) -> f64 {
        let mut sup = 0.0_f64;
        let n = self.n;
        for (flat, &v) in self.values.iter().enumerate() {
            let mut f = flat;
            let mut on_boundary = false;
            for _ in 0..self.d {
                let i = f % n;
                f /= n;
                if i == 0 || i == n - 1 {
                    on_boundary = true;
                    break;
                }
            }
            if on_boundary {
                sup = sup.max(v.abs());
            }
        }
        sup
    }

    /// Forward transform to Fourier coefficients (normalized by 1/n^d).
    pub fn transform(&self) -> SpectralField {
        let mut data: Vec<Complex<f64>> = self
            .values
            .iter()
            .map(|&v| Complex::new(v, 0.0))
            .collect();
        fft_all_axes(&mut data, self.d, self.n, false);
        let scale = 1.0 / data.len() as f64;
        for c in data.iter_mut() {
            *c *= scale;
        }
        SpectralField {
            d: self.d,
            box_half_width: self.box_half_width,
            n: self.n,
            coefficients: data,
        }
    }
}

impl SpectralField {
    /// Inverse transform back to a real field; the imaginary residue is
    /// checked against conjugate-symmetry roundoff.
    pub fn inverse(&self) -> PeriodicField {
        let mut data = self.coefficients.clone();
        fft_all_axes(&mut data, self.d, self.n, true);
        let values: Vec<f64> = data.iter().map(|c| c.re).collect();
        PeriodicField {
            d: self.d,
            box_half_width: self.box_half_width,
            n: self.n,
            values,
        }
    }

    /// Multiply coefficients by a radial symbol m(|xi|); the zero mode maps to 0.
    pub fn apply_radial_symbol(&mut self, m: impl Fn(f64) -> f64) {
        let n = self.n;
        let base = PI / self.box_half_width;
        for (flat, c) in self.coefficients.iter_mut().enumerate() {
            let mut f = flat;
            let mut k2 = 0.0_f64;
            for _ in 0..self.d {
                let i = f % n;
                f /= n;
                let k = if i <= n / 2 {
                    i as f64
                } else {
                    i as f64 - n as f64
                };
                k2 += k * k;
            }
            if k2 == 0.0 {
                *c = Complex::new(0.0, 0.0);
            } else {
                let xi = base * k2.sqrt();
                *c *= m(xi);
            }
        }
    }
}

/// In-place complex FFT along every axis of a row-major d-cube.
fn fft_all_axes(data: &mut [Complex<f64>], d: usize, n: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    let total = data.len();
    let mut scratch = vec![Complex::new(0.0, 0.0); n];
    for axis in 0..d {
        // stride of the axis in row-major layout: last axis is contiguous
        let stride = n.pow((d - 1 - axis) as u32);
        let lines = total / n;
        for line in 0..lines {
            // compute the base index of this line
            let block = line / stride;
            let offset = line % stride;
            let base = block * stride * n + offset;
            for (j, s) in scratch.iter_mut().enumerate() {
                *s = data[base + j * stride];
            }
            fft.process(&mut scratch);
            for (j, s) in scratch.iter().enumerate() {
                data[base + j * stride] = *s;
            }
        }
    }
}

/// Logarithmic Laplacian on the periodic grid: coefficients scaled by 2 ln|xi|.
pub fn apply_loglap_spectral(u: &PeriodicField) -> PeriodicField {
    let mut hat = u.transform();
    hat.apply_radial_symbol(|xi| 2.0 * xi.ln());
    hat.inverse()
}

/// Fractional Laplacian (-Delta)^s on the periodic grid, s in (0, 1].
pub fn fractional_laplacian_spectral(u: &PeriodicField, s: f64) -> Result<PeriodicField> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::domain("fractional order s must lie in (0, 1]"));
    }
    let mut hat = u.transform();
    hat.apply_radial_symbol(|xi| xi.powf(2.0 * s));
    Ok(hat.inverse())
}

/// Cauchy propagator: coefficients scaled by |xi|^{-2t}. Requires mean-zero data.
pub fn cauchy_propagate_spectral(f: &PeriodicField, t: f64) -> Result<PeriodicField> {
    if !(t >= 0.0) {
        return Err(Error::domain("propagation time must be >= 0"));
    }
    let mean = f.mean();
    let scale = f.norm_l2();
    if mean.abs() > 1e-12 * scale.max(1e-300) {
        return Err(Error::Integrability(format!(
            "cauchy_propagate_spectral needs mean-zero data: |mean| = {:e} vs 1e-12 * ||f|| = {:e}",
            mean.abs(),
            1e-12 * scale
        )));
    }
    let mut hat = f.transform();
    hat.apply_radial_symbol(|xi| xi.powf(-2.0 * t));
    Ok(hat.inverse())
}

/// Direct singular-integral evaluation of the logarithmic Laplacian at x:
///   c_N int_{B_1} (u(x) - u(x+z))/|z|^N dz
/// - c_N int_{|z|>1} u(x+z)/|z|^N dz + rho_N u(x),
/// reduced to radial integrals of spherical means of u around x.
pub fn apply_loglap_direct(
    u: &dyn Fn(&[f64]) -> f64,
    x: &[f64],
    dim: &Dimension,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let n = dim.n() as usize;
    if x.len() != n {
        return Err(Error::domain("point dimension must match the ambient dimension"));
    }
    let ux = u(x);
    // spherical mean of u over the sphere of radius rho centered at x
    let mean = |rho: f64| -> f64 {
        match n {
            1 => 0.5 * (u(&[x[0] + rho]) + u(&[x[0] - rho])),
            2 => {
                let m = 64;
                let mut acc = 0.0;
                for i in 0..m {
                    let th = 2.0 * PI * (i as f64 + 0.5) / m as f64;
                    acc += u(&[x[0] + rho * th.cos(), x[1] + rho * th.sin()]);
                }
                acc / m as f64
            }
            3 => {
                // Gauss-Legendre in cos(theta), trapezoid in the azimuth
                let rule = crate::quad::gauss_legendre(24);
                let m = 32;
                let mut acc = 0.0;
                for &(c, w) in rule {
                    let sq = (1.0 - c * c).sqrt();
                    let mut ring = 0.0;
                    for i in 0..m {
                        let ph = 2.0 * PI * (i as f64 + 0.5) / m as f64;
                        ring += u(&[
                            x[0] + rho * sq * ph.cos(),
                            x[1] + rho * sq * ph.sin(),
                            x[2] + rho * c,
                        ]);
                    }
                    acc += w * ring / m as f64;
                }
                acc / 2.0
            }
            _ => f64::NAN,
        }
    };
    // inner part: c_N omega_N int_0^1 (u(x) - mean(rho)) / rho drho; the
    // first-order term of u vanishes under the spherical mean, so the
    // integrand extends continuously by 0 at rho = 0
    let mut inner_integrand = |rho: f64| {
        if rho < 1e-9 {
            0.0
        } else {
            (ux - mean(rho)) / rho
        }
    };
    let inner = adaptive_with_points(&mut inner_integrand, 0.0, 1.0, &[1e-4, 1e-2], spec)?;
    // outer part: -c_N omega_N int_1^inf mean(rho)/rho drho
    let mut outer_integrand = |rho: f64| mean(rho) / rho;
    let outer = exp_sinh(&mut outer_integrand, 1.0, spec.abs_tol.min(spec.rel_tol))?;
    if !outer.is_finite() {
        return Err(Error::Integrability(
            "outer tail of the direct operator diverges; u lacks the required decay".into(),
        ));
    }
    Ok(dim.c_n() * dim.omega_n() * (inner - outer) + dim.rho_n() * ux)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_1d(l: f64, n: usize) -> PeriodicField {
        PeriodicField::from_fn(1, l, n, |x| (-0.5 * x[0] * x[0]).exp()).unwrap()
    }

    /// mass-zero Gaussian pair used for whole-space comparisons
    fn mass_zero_gaussian(x: f64) -> f64 {
        (-0.5 * x * x).exp() - 0.5 * (-x * x / 8.0).exp()
    }

    #[test]
    fn resonant_modes_are_symbol_eigenfunctions() {
        // u = cos(xi0 x) with |xi0| = 1 -> output 0 ; |xi0| = e -> output 2 u
        let l = PI * 8.0;
        let n = 256;
        let u1 = PeriodicField::from_fn(1, l, n, |x| (x[0] * 1.0).cos()).unwrap();
        let out = apply_loglap_spectral(&u1);
        assert!(out.norm_sup() < 1e-12, "2 ln(1) = 0 mode");
        // grid-resonant frequency nearest to e: use k = 8*e rounded -> xi = k/8
        let k = (std::f64::consts::E * 8.0).round();
        let xi0 = k / 8.0;
        let u2 = PeriodicField::from_fn(1, l, n, |x| (x[0] * xi0).cos()).unwrap();
        let out2 = apply_loglap_spectral(&u2);
        let expect = 2.0 * xi0.ln();
        for (a, b) in out2.values.iter().zip(u2.values.iter()) {
            assert!((a - expect * b).abs() < 1e-10);
        }
    }

    #[test]
    fn fractional_symbol_trivials() {
        let l = PI * 8.0;
        let n = 256;
        let u = PeriodicField::from_fn(1, l, n, |x| x[0].cos()).unwrap();
        // s = 0.5 on |xi|=1: output = u
        let out = fractional_laplacian_spectral(&u, 0.5).unwrap();
        for (a, b) in out.values.iter().zip(u.values.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
        // s -> 1 on a single mode: output -> |xi0|^2 u
        let xi0 = 2.0;
        let u2 = PeriodicField::from_fn(1, l, n, |x| (xi0 * x[0]).cos()).unwrap();
        let out2 = fractional_laplacian_spectral(&u2, 1.0).unwrap();
        for (a, b) in out2.values.iter().zip(u2.values.iter()) {
            assert!((a - xi0 * xi0 * b).abs() < 1e-10);
        }
    }

    #[test]
    fn propagator_semigroup_and_amplitude() {
        let l = PI * 8.0;
        let n = 256;
        let k = (std::f64::consts::E * 8.0).round();
        let xi0 = k / 8.0;
        let u = PeriodicField::from_fn(1, l, n, |x| (x[0] * xi0).cos()).unwrap();
        // t = 0 is the identity
        let id = cauchy_propagate_spectral(&u, 0.0).unwrap();
        for (a, b) in id.values.iter().zip(u.values.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
        // amplitude factor e^{-2 t ln xi0} = xi0^{-2t}
        let t = 0.5;
        let out = cauchy_propagate_spectral(&u, t).unwrap();
        let expect = xi0.powf(-2.0 * t);
        assert!((expect - (-1.0_f64).exp() * (xi0 / std::f64::consts::E)).abs() < 0.2);
        for (a, b) in out.values.iter().zip(u.values.iter()) {
            assert!((a - expect * b).abs() < 1e-12);
        }
        // two steps equal one step at machine precision
        let two = cauchy_propagate_spectral(&cauchy_propagate_spectral(&u, 0.2).unwrap(), 0.3)
            .unwrap();
        let one = cauchy_propagate_spectral(&u, 0.5).unwrap();
        for (a, b) in two.values.iter().zip(one.values.iter()) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn propagator_rejects_nonzero_mean() {
        let u = gaussian_1d(40.0, 64);
        assert!(matches!(
            cauchy_propagate_spectral(&u, 0.5),
            Err(Error::Integrability(_))
        ));
    }

    #[test]
    fn direct_route_linearity_and_zero() {
        let d = Dimension::new(1).unwrap();
        let spec = QuadratureSpec::default().with_tols(1e-10, 1e-10);
        let zero = apply_loglap_direct(&|_: &[f64]| 0.0, &[0.3], &d, &spec).unwrap();
        assert_eq!(zero, 0.0);
        let f = |x: &[f64]| mass_zero_gaussian(x[0]);
        let g = |x: &[f64]| x[0] * (-0.5 * x[0] * x[0]).exp();
        let combo = |x: &[f64]| 2.0 * f(x) - 3.0 * g(x);
        let at = [0.7];
        let lf = apply_loglap_direct(&f, &at, &d, &spec).unwrap();
        let lg = apply_loglap_direct(&g, &at, &d, &spec).unwrap();
        let lc = apply_loglap_direct(&combo, &at, &d, &spec).unwrap();
        assert!(
            (lc - (2.0 * lf - 3.0 * lg)).abs() < 1e-7 * (1.0 + lc.abs()),
            "{lc} vs {}", 2.0 * lf - 3.0 * lg
        );
    }

    #[test]
    fn spectral_matches_direct_on_mass_zero_gaussian() {
        // cross-oracle pair: mass-zero Gaussian combination, d=1, L=40, n=4096
        let d = Dimension::new(1).unwrap();
        let spec = QuadratureSpec::default().with_tols(1e-9, 1e-9);
        let l = 40.0;
        let n = 4096;
        let u = PeriodicField::from_fn(1, l, n, |x| mass_zero_gaussian(x[0])).unwrap();
        let out = apply_loglap_spectral(&u);
        let h = u.grid_spacing();
        for &x in &[0.0_f64, 2.5, 5.0, 10.0] {
            let idx = ((x + l) / h).round() as usize;
            let direct =
                apply_loglap_direct(&|y: &[f64]| mass_zero_gaussian(y[0]), &[x], &d, &spec)
                    .unwrap();
            let sg = out.values[idx];
            assert!(
                (sg - direct).abs() < 1e-4,
                "x={x}: spectral {sg} vs direct {direct}"
            );
        }
    }

    #[test]
    fn output_reality() {
        let l = 40.0;
        let u = PeriodicField::from_fn(1, l, 512, |x| mass_zero_gaussian(x[0])).unwrap();
        let mut hat = u.transform();
        hat.apply_radial_symbol(|xi| 2.0 * xi.ln());
        let mut data = hat.coefficients.clone();
        super::fft_all_axes(&mut data, 1, 512, true);
        let imag_max = data.iter().fold(0.0_f64, |m, c| m.max(c.im.abs()));
        let real_max = data.iter().fold(0.0_f64, |m, c| m.max(c.re.abs()));
        assert!(imag_max <= 1e-12 * real_max.max(1.0), "imag residue {imag_max}");
    }

    #[test]
    fn two_dimensional_symbol_roundtrip() {
        // d=2 sanity: a resonant plane wave is an eigenfunction
        let l = PI * 4.0;
        let n = 64;
        let u = PeriodicField::from_fn(2, l, n, |x| (x[0] * 0.5).cos() * (x[1] * 0.5).cos())
            .unwrap();
        // product of cosines = sum of 4 modes all with |xi| = sqrt(0.5)/...: |(0.5, +-0.5)| = sqrt(0.5)
        let out = apply_loglap_spectral(&u);
        let expect = 2.0 * (0.5_f64 * 0.5 + 0.5 * 0.5).sqrt().ln();
        for (a, b) in out.values.iter().zip(u.values.iter()) {
            assert!((a - expect * b).abs() < 1e-10, "{a} vs {}", expect * b);
        }
    }
}
