//! Checks that certify a packet: the residual of the hyperbolic equation,
//! the probability current and its conservation, the polar (Bohmian)
//! decomposition, half-line uncertainty moments, and ridge tracing.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fields::{diff1, diff2, Axis, Field2D, Grid2D, PhysicalConstants};
use crate::freepacket::FreePacketParams;
use crate::numerics::{integrate_real, ComplexValue, QuadratureSpec};

/// Below this modulus the phase of a field is treated as undefined.
pub const PHASE_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialSpec {
    Free,
    /// Infinite walls at `±width/2`; zero inside.
    Box {
        width: f64,
    },
}

impl PotentialSpec {
    pub fn in_box(width: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::invalid("L > 0", width));
        }
        Ok(PotentialSpec::Box { width })
    }

    fn check_domain(&self, grid: &Grid2D) -> Result<()> {
        if let PotentialSpec::Box { width } = *self {
            let half = 0.5 * width * (1.0 + 1e-12);
            let corners = [grid.u_min, grid.u_max, grid.v_min, grid.v_max];
            if corners.iter().any(|q| q.abs() > half) {
                return Err(Error::Domain(format!(
                    "grid [{}, {}] x [{}, {}] leaves the box of width {width}",
                    grid.u_min, grid.u_max, grid.v_min, grid.v_max
                )));
            }
        }
        Ok(())
    }
}

/// `[−(ħ²/2m)∂²_u + (ħ²/2m)∂²_v + V(u) − V(v)] Ψ` on the grid.
///
/// Both potentials vanish wherever the field is defined, so only the
/// derivative terms contribute. Boundary nodes inherit the copied edge
/// values of [`diff2`]; measure the result with
/// [`Field2D::interior_sup_norm`].
pub fn pde_residual(field: &Field2D, pot: &PotentialSpec, c: &PhysicalConstants) -> Result<Field2D> {
    pot.check_domain(field.grid())?;
    let k = c.kinetic_prefactor();
    let duu = diff2(field, Axis::U);
    let dvv = diff2(field, Axis::V);
    duu.zip_with(&dvv, |a, b| (b - a) * k)
}

/// A pair of fields, one per configuration-space direction.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentField {
    pub u: Field2D,
    pub v: Field2D,
}

impl CurrentField {
    /// The real current `(ħ²/m) Im(Ψ* ∂Ψ)`, i.e. `J / i`. The bilinear
    /// `Ψ*∂Ψ − Ψ∂Ψ*` is purely imaginary, so this loses nothing.
    pub fn observable(&self) -> CurrentField {
        let take_im = |z: ComplexValue| ComplexValue::new(z.im, 0.0);
        CurrentField {
            u: self.u.map(take_im),
            v: self.v.map(take_im),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.u.max_abs().max(self.v.max_abs())
    }
}

/// `J_μ = (ħ²/2m)(Ψ* ∂_μΨ − Ψ ∂_μΨ*)`, with `∂_μ` from [`diff1`].
pub fn probability_current(field: &Field2D, c: &PhysicalConstants) -> CurrentField {
    let k = c.kinetic_prefactor();
    let component = |axis| {
        let d = diff1(field, axis);
        field
            .zip_with(&d, |psi, dpsi| (psi.conj() * dpsi - psi * dpsi.conj()) * k)
            .expect("derivative shares the grid")
    };
    CurrentField {
        u: component(Axis::U),
        v: component(Axis::V),
    }
}

/// Divergence of the current contracted with the signature of the
/// hyperbolic operator: `∂_u J_u − ∂_v J_v`.
///
/// For any solution of `Ψ_uu = Ψ_vv` this vanishes identically; the
/// Euclidean sum `∂_u J_u + ∂_v J_v` does not.
pub fn current_divergence(j: &CurrentField) -> Field2D {
    let du = diff1(&j.u, Axis::U);
    let dv = diff1(&j.v, Axis::V);
    du.zip_with(&dv, |a, b| a - b).expect("components share the grid")
}

/// `Ψ = R e^{iS}` sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarField {
    pub grid: Grid2D,
    /// Modulus `R ≥ 0`.
    pub r: Vec<f64>,
    /// Phase, unwrapped along each `v` row. Zero where `valid` is false.
    pub s: Vec<f64>,
    /// `R > PHASE_THRESHOLD`.
    pub valid: Vec<bool>,
}

impl PolarField {
    pub fn reconstruct(&self) -> Field2D {
        let values = self
            .r
            .iter()
            .zip(&self.s)
            .map(|(&r, &s)| ComplexValue::from_polar(r, s))
            .collect();
        Field2D::from_values(self.grid, values).expect("finite by construction")
    }
}

pub fn polar_decompose(field: &Field2D) -> PolarField {
    let grid = *field.grid();
    let n = grid.len();
    let mut r = Vec::with_capacity(n);
    let mut s = Vec::with_capacity(n);
    let mut valid = Vec::with_capacity(n);
    for j in 0..grid.n_v {
        let mut last: Option<f64> = None;
        for z in field.row(j) {
            let modulus = z.norm();
            r.push(modulus);
            if modulus > PHASE_THRESHOLD {
                let raw = z.arg();
                let phase = match last {
                    Some(prev) => raw + 2.0 * PI * ((prev - raw) / (2.0 * PI)).round(),
                    None => raw,
                };
                last = Some(phase);
                s.push(phase);
                valid.push(true);
            } else {
                s.push(0.0);
                valid.push(false);
            }
        }
    }
    PolarField { grid, r, s, valid }
}

fn wrap(x: f64) -> f64 {
    x - 2.0 * PI * (x / (2.0 * PI)).round()
}

// diff1 stencils applied to phase differences reduced mod 2π; zero wherever
// the stencil touches a node without a defined phase.
fn phase_gradient(polar: &PolarField, axis: Axis) -> Vec<f64> {
    let g = polar.grid;
    let h = g.spacing(axis);
    let (n, stride, count) = match axis {
        Axis::U => (g.n_u, 1, g.n_v),
        Axis::V => (g.n_v, g.n_u, g.n_u),
    };
    let mut out = vec![0.0; g.len()];
    for line in 0..count {
        let start = match axis {
            Axis::U => line * g.n_u,
            Axis::V => line,
        };
        let idx = |k: usize| start + k * stride;
        let ok = |ks: &[usize]| ks.iter().all(|&k| polar.valid[idx(k)]);
        let s = |k: usize| polar.s[idx(k)];
        for k in 0..n {
            out[idx(k)] = if k == 0 {
                if ok(&[0, 1, 2]) {
                    (4.0 * wrap(s(1) - s(0)) - wrap(s(2) - s(0))) / (2.0 * h)
                } else {
                    0.0
                }
            } else if k == n - 1 {
                if ok(&[n - 1, n - 2, n - 3]) {
                    (4.0 * wrap(s(n - 1) - s(n - 2)) - wrap(s(n - 1) - s(n - 3))) / (2.0 * h)
                } else {
                    0.0
                }
            } else if ok(&[k - 1, k, k + 1]) {
                wrap(s(k + 1) - s(k - 1)) / (2.0 * h)
            } else {
                0.0
            };
        }
    }
    out
}

/// Bohmian momenta `p_μ = ħ ∂_μ S`, stored in the real parts. Set `ħ = 1`
/// for the bare phase gradient.
pub fn bohmian_momentum(polar: &PolarField, c: &PhysicalConstants) -> CurrentField {
    let to_field = |grad: Vec<f64>| {
        let values = grad.into_iter().map(|x| ComplexValue::new(c.hbar * x, 0.0)).collect();
        Field2D::from_values(polar.grid, values).expect("finite phase gradients")
    };
    CurrentField {
        u: to_field(phase_gradient(polar, Axis::U)),
        v: to_field(phase_gradient(polar, Axis::V)),
    }
}

/// Position and momentum spread of `Ψ(u, 0)` restricted to `u > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentReport {
    pub mean_u: f64,
    pub var_u: f64,
    pub var_p: f64,
    pub product: f64,
    pub hbar: f64,
}

/// Half-line moments of the free packet at `v = 0`, weight `Ψ(u, 0)²`.
///
/// `Ψ(u, 0)` is real, so `⟨p⟩ = 0` and `(Δp)² = ħ² ∫ Ψ'² / ∫ Ψ²`.
pub fn halfline_moments(p: &FreePacketParams, c: &PhysicalConstants, quad: &QuadratureSpec) -> Result<MomentReport> {
    let (a, d) = (p.alpha, p.d);
    let g = |x: f64| (-a * x * x).exp();
    let psi = |u: f64| g(u - d) + g(u + d);
    let dpsi = |u: f64| -2.0 * a * ((u - d) * g(u - d) + (u + d) * g(u + d));

    // exp(-2α x²) < 1e-39 beyond this distance from the peak
    let upper = d + (45.0 / a).sqrt();
    let weight = |u: f64| psi(u).powi(2);

    let norm = integrate_real(weight, 0.0, upper, quad)?;
    let mean_u = integrate_real(|u| u * weight(u), 0.0, upper, quad)? / norm;
    let var_u = integrate_real(|u| (u - mean_u).powi(2) * weight(u), 0.0, upper, quad)? / norm;
    let kinetic = integrate_real(|u| dpsi(u).powi(2), 0.0, upper, quad)? / norm;
    let var_p = c.hbar * c.hbar * kinetic;
    Ok(MomentReport {
        mean_u,
        var_u,
        var_p,
        product: var_u * var_p,
        hbar: c.hbar,
    })
}

/// Disc of the `(u, v)` plane excluded from ridge tracing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exclusion {
    pub center: (f64, f64),
    pub radius: f64,
}

impl Exclusion {
    pub fn new(u: f64, v: f64, radius: f64) -> Self {
        Self { center: (u, v), radius }
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        (u - self.center.0).hypot(v - self.center.1) < self.radius
    }
}

/// Local maxima of `|Ψ|²` along every `v` row that exceed 10% of the
/// global maximum, refined by a parabola through the three nodes around
/// each maximum. Boundary nodes never qualify.
pub fn ridge_trace(field: &Field2D, exclusions: &[Exclusion]) -> Vec<(f64, f64)> {
    let g = field.grid();
    let density = field.abs2();
    let global = density.iter().copied().fold(0.0, f64::max);
    if global <= 0.0 {
        return Vec::new();
    }
    let floor = 0.1 * global;
    let h = g.h_u();
    let mut out = Vec::new();
    for j in 0..g.n_v {
        let v = g.v(j);
        let row = &density[j * g.n_u..(j + 1) * g.n_u];
        for i in 1..g.n_u - 1 {
            let (l, c, r) = (row[i - 1], row[i], row[i + 1]);
            if c < floor || !(c > l && c >= r) {
                continue;
            }
            let curvature = l - 2.0 * c + r;
            let shift = if curvature < 0.0 {
                0.5 * (l - r) / curvature
            } else {
                0.0
            };
            let u = g.u(i) + shift.clamp(-0.5, 0.5) * h;
            if exclusions.iter().any(|e| e.contains(u, v)) {
                continue;
            }
            out.push((u, v));
        }
    }
    out
}
