//! The free-particle packet.
//!
//! With `V = 0`, `cos(ku)cos(kv)` and `sin(ku)sin(kv)` annihilate the
//! hyperbolic operator, so
//!
//! ```text
//! Ψ(u, v) = (2π)^(-1/2) ∫ [A(k) cos(ku) cos(kv) + i B(k) sin(ku) sin(kv)] dk.
//! ```
//!
//! `A` fixes `Ψ(u, 0)` and `B` fixes the slope `∂Ψ/∂v` at `v = 0`. Choosing
//! `B = A` with two Gaussians at `u = ±d` as initial data gives the
//! closed form [`packet_closed`]: four Gaussians riding the lines
//! `u = ±v ± d` with a fixed width.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{integrate_adaptive, ComplexValue, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreePacketParams {
    /// Inverse squared width of each initial Gaussian.
    pub alpha: f64,
    /// Offset of the Gaussians from the origin.
    pub d: f64,
}

impl FreePacketParams {
    pub fn new(alpha: f64, d: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::invalid("alpha > 0", alpha));
        }
        if !(d >= 0.0 && d.is_finite()) {
            return Err(Error::invalid("d >= 0", d));
        }
        Ok(Self { alpha, d })
    }

    /// `α d² > 1`: the two initial Gaussians are well separated.
    pub fn classical_regime(&self) -> bool {
        self.alpha * self.d * self.d > 1.0
    }

    fn gauss(&self, x: f64) -> f64 {
        (-self.alpha * x * x).exp()
    }
}

/// `Ψ(u, 0) = exp(−α(u−d)²) + exp(−α(u+d)²)`.
pub fn initial_condition(u: f64, p: &FreePacketParams) -> f64 {
    p.gauss(u - p.d) + p.gauss(u + p.d)
}

/// Spectral coefficient of the initial data, `√(2/α) exp(−k²/4α) cos(kd)`.
pub fn coefficient_a(k: f64, p: &FreePacketParams) -> f64 {
    (2.0 / p.alpha).sqrt() * (-k * k / (4.0 * p.alpha)).exp() * (k * p.d).cos()
}

/// Pair of spectral densities `A(k)`, `B(k)` of the general solution.
pub struct SpectralDensity<'a> {
    a_of_k: Box<dyn Fn(f64) -> f64 + Send + Sync + 'a>,
    b_of_k: Box<dyn Fn(f64) -> f64 + Send + Sync + 'a>,
}

impl<'a> SpectralDensity<'a> {
    pub fn new<A, B>(a_of_k: A, b_of_k: B) -> Self
    where
        A: Fn(f64) -> f64 + Send + Sync + 'a,
        B: Fn(f64) -> f64 + Send + Sync + 'a,
    {
        Self {
            a_of_k: Box::new(a_of_k),
            b_of_k: Box::new(b_of_k),
        }
    }

    /// The classical-correspondence choice `B = A` for the two-Gaussian data.
    pub fn matched(p: FreePacketParams) -> Self {
        Self::new(move |k| coefficient_a(k, &p), move |k| coefficient_a(k, &p))
    }

    /// Same initial data with zero initial slope (`B = 0`).
    pub fn slopeless(p: FreePacketParams) -> Self {
        Self::new(move |k| coefficient_a(k, &p), |_| 0.0)
    }

    pub fn a(&self, k: f64) -> f64 {
        (self.a_of_k)(k)
    }

    pub fn b(&self, k: f64) -> f64 {
        (self.b_of_k)(k)
    }
}

// Sums of the Gaussians travelling along u + v = ∓d and u − v = ∓d.
fn branch_sums(u: f64, v: f64, p: &FreePacketParams) -> (f64, f64) {
    let plus = p.gauss(u + v + p.d) + p.gauss(u + v - p.d);
    let minus = p.gauss(u - v + p.d) + p.gauss(u - v - p.d);
    (plus, minus)
}

/// Closed-form packet `(1−i)/2 · (P + iM)` where `P` collects the Gaussians
/// in `u + v` and `M` those in `u − v`.
pub fn packet_closed(u: f64, v: f64, p: &FreePacketParams) -> ComplexValue {
    let (plus, minus) = branch_sums(u, v, p);
    ComplexValue::new(0.5 * (plus + minus), 0.5 * (minus - plus))
}

/// `|Ψ|² = ½(P² + M²)`.
pub fn probability_density(u: f64, v: f64, p: &FreePacketParams) -> f64 {
    let (plus, minus) = branch_sums(u, v, p);
    0.5 * (plus * plus + minus * minus)
}

/// `∂Ψ/∂v` at `v = 0`; purely imaginary and odd in `u`.
pub fn initial_slope(u: f64, p: &FreePacketParams) -> ComplexValue {
    let s = (u + p.d) * p.gauss(u + p.d) + (u - p.d) * p.gauss(u - p.d);
    ComplexValue::new(0.0, 2.0 * p.alpha * s)
}

/// Evaluates the spectral integral with the matched densities `B = A`.
pub fn packet_spectral(u: f64, v: f64, p: &FreePacketParams, quad: &QuadratureSpec) -> Result<ComplexValue> {
    packet_spectral_with(u, v, &SpectralDensity::matched(*p), quad)
}

/// Evaluates the spectral integral over `[−tail_cutoff, tail_cutoff]` for
/// arbitrary densities.
pub fn packet_spectral_with(
    u: f64,
    v: f64,
    density: &SpectralDensity<'_>,
    quad: &QuadratureSpec,
) -> Result<ComplexValue> {
    let norm = 1.0 / (2.0 * PI).sqrt();
    let integrand = |k: f64| {
        let (su, cu) = (k * u).sin_cos();
        let (sv, cv) = (k * v).sin_cos();
        ComplexValue::new(density.a(k) * cu * cv, density.b(k) * su * sv)
    };
    let cut = quad.tail_cutoff;
    integrate_adaptive(integrand, -cut, cut, quad).map(|z| z * norm)
}

/// Width and height of the tallest peak of `|Ψ(·, v)|²` for one `α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitSample {
    pub alpha: f64,
    pub fwhm: f64,
    pub crest: f64,
}

/// For each `α` (strictly increasing), the full width at half maximum of
/// the tallest peak of `|Ψ(u, v_probe)|²` and its height.
pub fn classical_limit_scan(alphas: &[f64], d: f64, v_probe: f64) -> Result<Vec<LimitSample>> {
    if alphas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("alphas strictly increasing", format!("{alphas:?}")));
    }
    alphas
        .iter()
        .map(|&alpha| {
            let p = FreePacketParams::new(alpha, d)?;
            Ok(scan_one(&p, v_probe))
        })
        .collect()
}

fn scan_one(p: &FreePacketParams, v: f64) -> LimitSample {
    // Peaks sit at u = ±v ± d; each has FWHM ≈ 1.18/√α.
    let reach = v.abs() + p.d + 8.0 / p.alpha.sqrt();
    let step = 0.002 / p.alpha.sqrt();
    let n = (2.0 * reach / step).ceil() as usize + 1;
    let us: Vec<f64> = (0..n).map(|i| -reach + i as f64 * step).collect();
    let ys: Vec<f64> = us.iter().map(|&u| probability_density(u, v, p)).collect();

    let (peak, crest) =
        ys.iter().copied().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |best, (i, y)| if y > best.1 { (i, y) } else { best },
        );
    let half = 0.5 * crest;

    let mut left = us[0];
    for i in (0..peak).rev() {
        if ys[i] < half {
            left = us[i] + (half - ys[i]) / (ys[i + 1] - ys[i]) * step;
            break;
        }
    }
    let mut right = us[n - 1];
    for i in peak + 1..n {
        if ys[i] < half {
            right = us[i - 1] + (ys[i - 1] - half) / (ys[i - 1] - ys[i]) * step;
            break;
        }
    }
    LimitSample {
        alpha: p.alpha,
        fwhm: right - left,
        crest,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(alpha: f64, d: f64) -> FreePacketParams {
        FreePacketParams::new(alpha, d).unwrap()
    }

    #[test]
    fn param_invariants() {
        assert!(FreePacketParams::new(0.0, 1.0).is_err());
        assert!(FreePacketParams::new(1.0, -0.1).is_err());
        assert!(params(1.0, 2.0).classical_regime());
        assert!(!params(0.2, 2.0).classical_regime());
    }

    #[test]
    fn initial_condition_examples() {
        let p = params(1.0, 2.0);
        assert!((initial_condition(0.0, &p) - 2.0 * (-4.0f64).exp()).abs() < 1e-12);
        assert!((initial_condition(0.0, &p) - 0.0366313).abs() < 1e-7);
        assert_eq!(initial_condition(2.0, &p), 1.0 + (-16.0f64).exp());
        let q = params(3.0, 1.0);
        assert!((initial_condition(-1.7, &q) - initial_condition(1.7, &q)).abs() < 1e-15);
    }

    #[test]
    fn coefficient_examples() {
        assert!((coefficient_a(0.0, &params(1.0, 2.0)) - 2f64.sqrt()).abs() < 1e-15);
        assert!(coefficient_a(PI / 4.0, &params(1.0, 2.0)).abs() < 1e-16);
        let p = params(2.0, 1.0);
        assert_eq!(coefficient_a(-0.8, &p), coefficient_a(0.8, &p));
    }

    #[test]
    fn closed_form_examples() {
        let p = params(1.0, 2.0);
        let z = packet_closed(0.0, 0.0, &p);
        assert!((z.re - 0.0366313).abs() < 1e-7);
        assert_eq!(z.im, 0.0);
        // ½(P² + M²) at (2, 1): P = e^{-25} + e^{-1}, M = e^{-9} + e^{-1}
        let e = |x: f64| (-x).exp();
        let expected = 0.5 * ((e(25.0) + e(1.0)).powi(2) + (e(9.0) + e(1.0)).powi(2));
        assert!((packet_closed(2.0, 1.0, &p).norm_sqr() - expected).abs() < 1e-15);
        assert!((expected - 0.1353807).abs() < 1e-6);
        let q = params(2.0, 1.0);
        let a = packet_closed(1.3, 0.7, &q).norm_sqr();
        let b = packet_closed(-1.3, 0.7, &q).norm_sqr();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn slope_examples() {
        let p = params(1.0, 4.0);
        assert_eq!(initial_slope(0.0, &p), ComplexValue::new(0.0, 0.0));
        let s = initial_slope(4.5, &p);
        assert!((s.im - 0.7788).abs() < 1e-4);
        assert_eq!(initial_slope(2.2, &params(5.0, 1.5)).re, 0.0);
    }

    #[test]
    fn slope_matches_derivative_of_closed_form() {
        let p = params(1.3, 1.1);
        let h = 1e-5;
        for k in 0..40 {
            let u = -4.0 + 0.2 * k as f64;
            let fd = (packet_closed(u, h, &p) - packet_closed(u, -h, &p)) / (2.0 * h);
            assert!((fd - initial_slope(u, &p)).norm() < 1e-8, "u={u}");
        }
    }

    #[test]
    fn spectral_matches_closed_form() {
        let p = params(1.0, 2.0);
        let quad = QuadratureSpec::for_gaussian_spectrum(p.alpha, 1e-11, 1e-11).unwrap();
        for &(u, v) in &[(0.0, 0.0), (2.0, 1.0), (-3.5, 4.2), (5.0, -5.5)] {
            let s = packet_spectral(u, v, &p, &quad).unwrap();
            let c = packet_closed(u, v, &p);
            assert!((s - c).norm() < 1e-8, "({u},{v}): {s} vs {c}");
        }
    }

    #[test]
    fn slopeless_density_gives_real_packet() {
        let p = params(1.0, 2.0);
        let quad = QuadratureSpec::for_gaussian_spectrum(p.alpha, 1e-11, 1e-11).unwrap();
        let dens = SpectralDensity::slopeless(p);
        for &(u, v) in &[(0.3, 0.2), (2.0, 1.0), (-1.0, 3.0)] {
            let z = packet_spectral_with(u, v, &dens, &quad).unwrap();
            assert_eq!(z.im, 0.0);
        }
    }

    #[test]
    fn limit_scan_widths_shrink() {
        let scan = classical_limit_scan(&[1.0, 4.0, 16.0], 2.0, 1.0).unwrap();
        assert_eq!(scan.len(), 3);
        assert!(scan.windows(2).all(|w| w[1].fwhm < w[0].fwhm));
        // an isolated Gaussian exp(-2αx²) has FWHM 2√(ln2 / 2α); at α = 1 the
        // neighbouring ridge two units away still widens the peak by ~3%
        let exact = |alpha: f64| 2.0 * (2f64.ln() / (2.0 * alpha)).sqrt();
        assert!((scan[1].fwhm - exact(4.0)).abs() < 1e-4, "{scan:?}");
        assert!((scan[2].fwhm - exact(16.0)).abs() < 1e-4, "{scan:?}");
        assert!((scan[0].fwhm / exact(1.0) - 1.0).abs() < 0.05);
        assert_eq!(classical_limit_scan(&[5.0], 2.0, 0.5).unwrap().len(), 1);
        assert!(classical_limit_scan(&[4.0, 1.0], 2.0, 0.5).is_err());
    }

    #[test]
    fn crest_is_constant_along_the_path() {
        let a = classical_limit_scan(&[5.0], 2.0, 0.5).unwrap()[0].crest;
        let b = classical_limit_scan(&[5.0], 2.0, 1.5).unwrap()[0].crest;
        assert!((a / b - 1.0).abs() < 0.01);
    }

    proptest! {
        #[test]
        fn closed_form_restricts_to_initial_data(u in -10.0f64..10.0, alpha in 0.1f64..20.0, d in 0.0f64..5.0) {
            let p = params(alpha, d);
            let z = packet_closed(u, 0.0, &p);
            prop_assert!((z.re - initial_condition(u, &p)).abs() < 1e-14);
            prop_assert!(z.im.abs() < 1e-14);
        }

        #[test]
        fn density_reflection_symmetries(u in -6.0f64..6.0, v in -6.0f64..6.0, alpha in 0.1f64..10.0, d in 0.0f64..4.0) {
            let p = params(alpha, d);
            let base = packet_closed(u, v, &p).norm_sqr();
            prop_assert!((packet_closed(-u, v, &p).norm_sqr() - base).abs() < 1e-14);
            prop_assert!((packet_closed(u, -v, &p).norm_sqr() - base).abs() < 1e-14);
            prop_assert!((probability_density(u, v, &p) - base).abs() < 1e-14);
        }
    }
}
