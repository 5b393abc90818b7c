//! The particle-in-a-box packet.
//!
//! Inside `(−L/2, L/2)` the potential vanishes and the walls force
//! Dirichlet conditions, so the free `cos·cos` / `sin·sin` solutions are
//! restricted to the box modes `k_n = nπ/L`:
//!
//! ```text
//! Ψ(u, v) = Σ_{n odd} A(n) cos(k_n u) cos(k_n v) + i Σ_{n even} A(n) sin(k_n u) sin(k_n v)
//! ```
//!
//! `A(n)` is fixed by requiring `Ψ(u, 0)` to reproduce the two-Gaussian
//! initial data. The projection integral ([`coefficient_numeric`]) is the
//! normative route; [`coefficient_closed`] evaluates the published Erfi
//! expression and is kept as a cross-check.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fields::{Field2D, Grid2D};
use crate::numerics::{erfi, integrate_real, ComplexValue, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxPacketParams {
    /// Box width `L`; the walls sit at `±L/2`.
    pub width: f64,
    pub alpha: f64,
    pub d: f64,
    /// Highest mode kept in the series.
    pub n_max: usize,
}

impl BoxPacketParams {
    pub fn new(width: f64, alpha: f64, d: f64, n_max: usize) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::invalid("L > 0", width));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::invalid("alpha > 0", alpha));
        }
        if !(d.abs() < width / 2.0) {
            return Err(Error::invalid("|d| < L/2", d));
        }
        if n_max < 1 {
            return Err(Error::invalid("n_max >= 1", n_max));
        }
        Ok(Self { width, alpha, d, n_max })
    }

    pub fn half_width(&self) -> f64 {
        0.5 * self.width
    }

    /// Two Gaussians at `±d`, the `v = 0` data the series must reproduce.
    pub fn initial_data(&self, u: f64) -> f64 {
        let g = |x: f64| (-self.alpha * x * x).exp();
        g(u - self.d) + g(u + self.d)
    }

    /// Value of the initial data at the walls.
    pub fn wall_leakage(&self) -> f64 {
        self.initial_data(self.half_width())
    }

    fn inside(&self, q: f64) -> bool {
        q.abs() <= self.half_width() * (1.0 + 1e-12)
    }
}

/// Spatial parity of a box mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// Odd `n`: `cos(nπq/L)`.
    Even,
    /// Even `n`: `sin(nπq/L)`.
    Odd,
}

impl Parity {
    pub fn of_mode(n: usize) -> Self {
        if n % 2 == 1 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoefficient {
    pub n: usize,
    pub parity: Parity,
    pub value: ComplexValue,
}

// cos or sin of nπq/L; exactly zero on the walls.
fn mode_trig(n: usize, q: f64, width: f64) -> f64 {
    if q.abs() >= 0.5 * width {
        return 0.0;
    }
    let x = n as f64 * PI * q / width;
    match Parity::of_mode(n) {
        Parity::Even => x.cos(),
        Parity::Odd => x.sin(),
    }
}

/// Orthonormal box eigenfunction `ψ_n(q)`.
pub fn eigenfunction(n: usize, q: f64, width: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n >= 1", n));
    }
    if !(width > 0.0) {
        return Err(Error::invalid("L > 0", width));
    }
    if !(q.abs() <= 0.5 * width * (1.0 + 1e-12)) {
        return Err(Error::Domain(format!(
            "eigenfunction needs |q| <= L/2 = {}, got {q}",
            width / 2.0
        )));
    }
    Ok((2.0 / width).sqrt() * mode_trig(n, q, width))
}

/// The four-Erfi expression for `A(n)`, transcribed as published.
///
/// Fails with [`Error::Overflow`] once `exp((nπ)²/(4αL²))` leaves the
/// f64 range.
pub fn coefficient_closed(n: usize, p: &BoxPacketParams) -> Result<ComplexValue> {
    if n == 0 {
        return Err(Error::invalid("n >= 1", n));
    }
    let i = ComplexValue::i();
    let (l, a, d) = (p.width, p.alpha, p.d);
    let npi = n as f64 * PI;

    let exponent = ComplexValue::new(npi, 0.0) * ComplexValue::new(npi, 4.0 * a * d * l) / (4.0 * a * l * l);
    if exponent.re > 709.0 {
        return Err(Error::Overflow(format!(
            "closed-form A({n}) needs exp({:.1})",
            exponent.re
        )));
    }
    let prefactor = -i * exponent.exp() / (l * (a / PI).sqrt());

    let scale = 2.0 * a.sqrt() * l;
    let arg = |sign: f64, offset: f64| ComplexValue::new(npi, sign * 2.0 * a * l * offset) / scale;
    let e1 = erfi(arg(1.0, d - l))?;
    let e2 = erfi(arg(-1.0, d - l))?;
    let e3 = erfi(arg(-1.0, d + l))?;
    let e4 = erfi(arg(1.0, d + l))?;
    let phase = ComplexValue::from_polar(1.0, 2.0 * d * npi / l);

    let value = prefactor * (-e1 + phase * (e2 - e3) + e4);
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow(format!("closed-form A({n}) is not finite")));
    }
    Ok(value)
}

/// `A(n) = (2/L) ∫ Ψ(u, 0) trig(nπu/L) du` over the box, with `trig = cos`
/// for odd `n` and `sin` for even `n`.
pub fn coefficient_numeric(n: usize, p: &BoxPacketParams, quad: &QuadratureSpec) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n >= 1", n));
    }
    let half = p.half_width();
    let integral = integrate_real(|u| p.initial_data(u) * mode_trig(n, u, p.width), -half, half, quad)?;
    Ok(2.0 / p.width * integral)
}

/// Normative coefficients for `n = 1..=n_max`.
pub fn coefficients(p: &BoxPacketParams, quad: &QuadratureSpec) -> Result<Vec<ModeCoefficient>> {
    (1..=p.n_max)
        .into_par_iter()
        .map(|n| {
            Ok(ModeCoefficient {
                n,
                parity: Parity::of_mode(n),
                value: ComplexValue::new(coefficient_numeric(n, p, quad)?, 0.0),
            })
        })
        .collect()
}

/// Quadrature settings used for the normative coefficients.
pub fn default_quadrature() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-12,
        max_subdivisions: 20_000,
        tail_cutoff: 1.0,
    }
}

fn check_coeffs(p: &BoxPacketParams, coeffs: &[ModeCoefficient]) -> Result<()> {
    if coeffs.len() < p.n_max || coeffs.iter().enumerate().take(p.n_max).any(|(k, c)| c.n != k + 1) {
        return Err(Error::invalid(
            "coefficients cover n = 1..=n_max in order",
            format!("{} coefficients for n_max = {}", coeffs.len(), p.n_max),
        ));
    }
    Ok(())
}

/// Truncated series at one point of the box.
pub fn packet_series(u: f64, v: f64, p: &BoxPacketParams, coeffs: &[ModeCoefficient]) -> Result<ComplexValue> {
    check_coeffs(p, coeffs)?;
    if !(p.inside(u) && p.inside(v)) {
        return Err(Error::Domain(format!(
            "box series needs |u|, |v| <= L/2 = {}, got ({u}, {v})",
            p.half_width()
        )));
    }
    let mut even = ComplexValue::new(0.0, 0.0);
    let mut odd = ComplexValue::new(0.0, 0.0);
    for c in &coeffs[..p.n_max] {
        let term = c.value * (mode_trig(c.n, u, p.width) * mode_trig(c.n, v, p.width));
        match c.parity {
            Parity::Even => even += term,
            Parity::Odd => odd += term,
        }
    }
    Ok(even + ComplexValue::i() * odd)
}

/// Series on a whole grid, using tabulated mode values along each axis.
/// Agrees with [`packet_series`] node by node up to summation order.
pub fn series_field(grid: Grid2D, p: &BoxPacketParams, coeffs: &[ModeCoefficient]) -> Result<Field2D> {
    check_coeffs(p, coeffs)?;
    let (us, vs) = (grid.u_nodes(), grid.v_nodes());
    if let Some(q) = us.iter().chain(&vs).find(|q| !p.inside(**q)) {
        return Err(Error::Domain(format!(
            "box series grid leaves the box: |{q}| > L/2 = {}",
            p.half_width()
        )));
    }
    let table = |xs: &[f64]| -> Vec<f64> {
        xs.iter()
            .flat_map(|&x| (1..=p.n_max).map(move |n| mode_trig(n, x, p.width)))
            .collect()
    };
    let (tu, tv) = (table(&us), table(&vs));
    let n_max = p.n_max;
    let coeffs = &coeffs[..n_max];
    let i = ComplexValue::i();
    let values: Vec<ComplexValue> = (0..grid.n_v)
        .into_par_iter()
        .flat_map_iter(|j| {
            let rv = &tv[j * n_max..(j + 1) * n_max];
            let tu = &tu;
            (0..grid.n_u).map(move |iu| {
                let ru = &tu[iu * n_max..(iu + 1) * n_max];
                let mut even = ComplexValue::new(0.0, 0.0);
                let mut odd = ComplexValue::new(0.0, 0.0);
                for (k, c) in coeffs.iter().enumerate() {
                    let term = c.value * (ru[k] * rv[k]);
                    match c.parity {
                        Parity::Even => even += term,
                        Parity::Odd => odd += term,
                    }
                }
                even + i * odd
            })
        })
        .collect();
    Field2D::from_values(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig_params(n_max: usize) -> BoxPacketParams {
        BoxPacketParams::new(6.0, 5.0, 1.5, n_max).unwrap()
    }

    #[test]
    fn param_invariants() {
        assert!(BoxPacketParams::new(0.0, 5.0, 0.0, 10).is_err());
        assert!(BoxPacketParams::new(4.0, 0.0, 0.0, 10).is_err());
        assert!(BoxPacketParams::new(3.0, 5.0, 1.5, 10).is_err());
        assert!(BoxPacketParams::new(4.0, 5.0, 1.5, 0).is_err());
        assert!(fig_params(10).wall_leakage() < 2e-5);
    }

    #[test]
    fn eigenfunction_examples() {
        assert!((eigenfunction(1, 0.0, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(eigenfunction(1, 1.0, 2.0).unwrap(), 0.0);
        assert_eq!(eigenfunction(3, -1.0, 2.0).unwrap(), 0.0);
        assert!((eigenfunction(2, 0.5, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(eigenfunction(1, 1.5, 2.0).is_err());
        assert!(eigenfunction(0, 0.0, 2.0).is_err());
    }

    #[test]
    fn eigenfunctions_are_orthonormal() {
        let quad = default_quadrature();
        let l = 3.0;
        for m in 1..6 {
            for n in 1..6 {
                let ip = integrate_real(
                    |q| eigenfunction(m, q, l).unwrap() * eigenfunction(n, q, l).unwrap(),
                    -l / 2.0,
                    l / 2.0,
                    &quad,
                )
                .unwrap();
                let expected = if m == n { 1.0 } else { 0.0 };
                assert!((ip - expected).abs() < 1e-12, "<{m}|{n}> = {ip}");
            }
        }
    }

    #[test]
    fn parity_follows_mode_index() {
        assert_eq!(Parity::of_mode(1), Parity::Even);
        assert_eq!(Parity::of_mode(2), Parity::Odd);
        assert_eq!(Parity::of_mode(7), Parity::Even);
    }

    #[test]
    fn numeric_coefficients_vanish_for_sine_modes() {
        let quad = default_quadrature();
        let centred = BoxPacketParams::new(6.0, 5.0, 0.0, 10).unwrap();
        let split = fig_params(10);
        for n in (2..=10).step_by(2) {
            assert!(coefficient_numeric(n, &centred, &quad).unwrap().abs() < 1e-12);
            assert!(coefficient_numeric(n, &split, &quad).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn numeric_coefficient_regression() {
        let a1 = coefficient_numeric(1, &fig_params(1), &default_quadrature()).unwrap();
        assert!((a1 - A1_L6_ALPHA5_D15).abs() < 1e-10, "{a1}");
    }

    // 40-digit quadrature of the projection integral, run outside this crate
    const A1_L6_ALPHA5_D15: f64 = 0.36857891183052084;

    #[test]
    fn parseval_identity() {
        let p = fig_params(200);
        let quad = default_quadrature();
        let coeffs = coefficients(&p, &quad).unwrap();
        let energy: f64 = coeffs.iter().map(|c| c.value.norm_sqr()).sum::<f64>() * p.width / 2.0;
        let direct = integrate_real(|u| p.initial_data(u).powi(2), -3.0, 3.0, &quad).unwrap();
        assert!((energy / direct - 1.0).abs() < 0.01);
    }

    #[test]
    fn series_vanishes_on_walls_and_is_jointly_even() {
        let p = fig_params(60);
        let coeffs = coefficients(&p, &default_quadrature()).unwrap();
        for v in [-2.0, 0.0, 1.3] {
            assert_eq!(packet_series(3.0, v, &p, &coeffs).unwrap(), ComplexValue::new(0.0, 0.0));
            assert_eq!(
                packet_series(v, -3.0, &p, &coeffs).unwrap(),
                ComplexValue::new(0.0, 0.0)
            );
        }
        let a = packet_series(0.4, 0.9, &p, &coeffs).unwrap();
        let b = packet_series(-0.4, -0.9, &p, &coeffs).unwrap();
        assert!((a - b).norm() < 1e-14);
        assert!(packet_series(3.5, 0.0, &p, &coeffs).is_err());
        assert!(packet_series(0.0, 0.0, &fig_params(61), &coeffs).is_err());
    }

    #[test]
    fn series_reproduces_initial_data() {
        let p = fig_params(200);
        let coeffs = coefficients(&p, &default_quadrature()).unwrap();
        let z = packet_series(0.5, 0.0, &p, &coeffs).unwrap();
        assert!((z.re - p.initial_data(0.5)).abs() < 1e-6);
        assert_eq!(z.im, 0.0);
    }

    #[test]
    fn grid_evaluation_matches_pointwise() {
        let p = BoxPacketParams::new(4.0, 5.0, 1.5, 80).unwrap();
        let coeffs = coefficients(&p, &default_quadrature()).unwrap();
        let grid = Grid2D::new(-2.0, 2.0, -2.0, 2.0, 21, 17).unwrap();
        let field = series_field(grid, &p, &coeffs).unwrap();
        for j in 0..grid.n_v {
            for i in 0..grid.n_u {
                let z = packet_series(grid.u(i), grid.v(j), &p, &coeffs).unwrap();
                assert!((field.at(i, j) - z).norm() < 1e-13);
            }
        }
        let outside = Grid2D::new(-2.5, 2.0, -2.0, 2.0, 21, 17).unwrap();
        assert!(series_field(outside, &p, &coeffs).is_err());
    }

    #[test]
    fn closed_form_overflows_for_high_modes() {
        let p = BoxPacketParams::new(4.0, 5.0, 1.5, 400).unwrap();
        assert!(matches!(coefficient_closed(400, &p), Err(Error::Overflow(_))));
        assert!(coefficient_closed(1, &p).is_ok());
    }
}
