//! Configuration-space lattice, complex fields sampled on it, and the
//! finite-difference stencils used by the validation routines.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::ComplexValue;

/// ħ and m. Both default to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::invalid("hbar > 0", hbar));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::invalid("mass > 0", mass));
        }
        Ok(Self { hbar, mass })
    }

    /// ħ²/2m, the coefficient of both second derivatives.
    pub fn kinetic_prefactor(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    U,
    V,
}

/// Uniform rectangular lattice over `[u_min, u_max] × [v_min, v_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub n_u: usize,
    pub n_v: usize,
}

impl Grid2D {
    pub fn new(u_min: f64, u_max: f64, v_min: f64, v_max: f64, n_u: usize, n_v: usize) -> Result<Self> {
        if !(u_min.is_finite() && u_max.is_finite() && u_min < u_max) {
            return Err(Error::invalid("u_min < u_max", format!("[{u_min}, {u_max}]")));
        }
        if !(v_min.is_finite() && v_max.is_finite() && v_min < v_max) {
            return Err(Error::invalid("v_min < v_max", format!("[{v_min}, {v_max}]")));
        }
        if n_u < 3 {
            return Err(Error::invalid("n_u >= 3", n_u));
        }
        if n_v < 3 {
            return Err(Error::invalid("n_v >= 3", n_v));
        }
        Ok(Self {
            u_min,
            u_max,
            v_min,
            v_max,
            n_u,
            n_v,
        })
    }

    /// Square grid over `[lo, hi]²` with spacing `h` (rounded to fit).
    pub fn square_with_spacing(lo: f64, hi: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::invalid("spacing > 0", h));
        }
        let n = ((hi - lo) / h).round() as usize + 1;
        Self::new(lo, hi, lo, hi, n, n)
    }

    pub fn h_u(&self) -> f64 {
        (self.u_max - self.u_min) / (self.n_u - 1) as f64
    }

    pub fn h_v(&self) -> f64 {
        (self.v_max - self.v_min) / (self.n_v - 1) as f64
    }

    pub fn spacing(&self, axis: Axis) -> f64 {
        match axis {
            Axis::U => self.h_u(),
            Axis::V => self.h_v(),
        }
    }

    pub fn u(&self, i: usize) -> f64 {
        self.u_min + i as f64 * self.h_u()
    }

    pub fn v(&self, j: usize) -> f64 {
        self.v_min + j as f64 * self.h_v()
    }

    pub fn len(&self) -> usize {
        self.n_u * self.n_v
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row-major index, `v` outer.
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.n_u + i
    }

    pub fn u_nodes(&self) -> Vec<f64> {
        (0..self.n_u).map(|i| self.u(i)).collect()
    }

    pub fn v_nodes(&self) -> Vec<f64> {
        (0..self.n_v).map(|j| self.v(j)).collect()
    }

    /// Node indices with at least one neighbour on every side.
    pub fn interior(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n_v - 1).flat_map(move |j| (1..self.n_u - 1).map(move |i| (i, j)))
    }

    pub fn is_interior(&self, i: usize, j: usize) -> bool {
        i > 0 && j > 0 && i + 1 < self.n_u && j + 1 < self.n_v
    }
}

/// Complex samples over a [`Grid2D`], stored row-major with `v` outer.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    grid: Grid2D,
    values: Vec<ComplexValue>,
}

impl Field2D {
    pub fn from_values(grid: Grid2D, values: Vec<ComplexValue>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(
                "values length = n_u * n_v",
                format!("{} != {}", values.len(), grid.len()),
            ));
        }
        if let Some(k) = values.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite(format!(
                "node ({}, {})",
                grid.u(k % grid.n_u),
                grid.v(k / grid.n_u)
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid2D) -> Self {
        Self {
            values: vec![ComplexValue::new(0.0, 0.0); grid.len()],
            grid,
        }
    }

    /// Evaluates `f(u_i, v_j)` at every node.
    pub fn sample<F>(grid: Grid2D, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> ComplexValue,
    {
        let mut values = Vec::with_capacity(grid.len());
        for j in 0..grid.n_v {
            let v = grid.v(j);
            values.extend((0..grid.n_u).map(|i| f(grid.u(i), v)));
        }
        Self::from_values(grid, values)
    }

    /// Same as [`Field2D::sample`] with rows evaluated in parallel.
    pub fn sample_par<F>(grid: Grid2D, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> ComplexValue + Sync,
    {
        let values: Vec<ComplexValue> = (0..grid.n_v)
            .into_par_iter()
            .flat_map_iter(|j| {
                let v = grid.v(j);
                let f = &f;
                (0..grid.n_u).map(move |i| f(grid.u(i), v))
            })
            .collect();
        Self::from_values(grid, values)
    }

    /// Fallible sampling, evaluated row-parallel. The first error wins.
    pub fn try_sample_par<F>(grid: Grid2D, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Result<ComplexValue> + Sync,
    {
        let rows: Result<Vec<Vec<ComplexValue>>> = (0..grid.n_v)
            .into_par_iter()
            .map(|j| {
                let v = grid.v(j);
                (0..grid.n_u).map(|i| f(grid.u(i), v)).collect()
            })
            .collect();
        Self::from_values(grid, rows?.into_iter().flatten().collect())
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn values(&self) -> &[ComplexValue] {
        &self.values
    }

    pub fn at(&self, i: usize, j: usize) -> ComplexValue {
        self.values[self.grid.index(i, j)]
    }

    pub fn row(&self, j: usize) -> &[ComplexValue] {
        let start = j * self.grid.n_u;
        &self.values[start..start + self.grid.n_u]
    }

    pub fn map<F: Fn(ComplexValue) -> ComplexValue>(&self, f: F) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Node-wise combination of two fields on the same grid.
    pub fn zip_with<F>(&self, other: &Field2D, f: F) -> Result<Self>
    where
        F: Fn(ComplexValue, ComplexValue) -> ComplexValue,
    {
        if self.grid != other.grid {
            return Err(Error::Domain("fields live on different grids".into()));
        }
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest modulus over nodes not on the grid boundary.
    pub fn interior_sup_norm(&self) -> f64 {
        self.grid
            .interior()
            .map(|(i, j)| self.at(i, j).norm())
            .fold(0.0, f64::max)
    }

    /// Largest modulus over nodes at least `margin` nodes from every edge.
    pub fn sup_norm_within(&self, margin: usize) -> f64 {
        let g = &self.grid;
        if 2 * margin >= g.n_u || 2 * margin >= g.n_v {
            return 0.0;
        }
        (margin..g.n_v - margin)
            .flat_map(|j| (margin..g.n_u - margin).map(move |i| (i, j)))
            .map(|(i, j)| self.at(i, j).norm())
            .fold(0.0, f64::max)
    }

    /// |Ψ|² at every node.
    pub fn abs2(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm_sqr()).collect()
    }
}

// Visits every line of nodes along `axis` as (start offset, stride, count).
fn lines(grid: &Grid2D, axis: Axis) -> Vec<(usize, usize, usize)> {
    match axis {
        Axis::U => (0..grid.n_v).map(|j| (j * grid.n_u, 1, grid.n_u)).collect(),
        Axis::V => (0..grid.n_u).map(|i| (i, grid.n_u, grid.n_v)).collect(),
    }
}

/// First derivative along `axis`: central differences inside, second-order
/// one-sided differences on the two boundary nodes.
pub fn diff1(field: &Field2D, axis: Axis) -> Field2D {
    let grid = field.grid;
    let h = grid.spacing(axis);
    let f = &field.values;
    let mut out = vec![ComplexValue::new(0.0, 0.0); f.len()];
    for (start, stride, n) in lines(&grid, axis) {
        let at = |k: usize| f[start + k * stride];
        for k in 1..n - 1 {
            out[start + k * stride] = (at(k + 1) - at(k - 1)) / (2.0 * h);
        }
        out[start] = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
        out[start + (n - 1) * stride] = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
    }
    Field2D { grid, values: out }
}

/// Second derivative along `axis` with the 3-point stencil. The two
/// boundary nodes carry a copy of their inner neighbour and must not be
/// used in error norms; see [`Field2D::interior_sup_norm`].
pub fn diff2(field: &Field2D, axis: Axis) -> Field2D {
    let grid = field.grid;
    let h = grid.spacing(axis);
    let h2 = h * h;
    let f = &field.values;
    let mut out = vec![ComplexValue::new(0.0, 0.0); f.len()];
    for (start, stride, n) in lines(&grid, axis) {
        let at = |k: usize| f[start + k * stride];
        for k in 1..n - 1 {
            out[start + k * stride] = (at(k + 1) - 2.0 * at(k) + at(k - 1)) / h2;
        }
        out[start] = out[start + stride];
        out[start + (n - 1) * stride] = out[start + (n - 2) * stride];
    }
    Field2D { grid, values: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> ComplexValue {
        ComplexValue::new(x, 0.0)
    }

    #[test]
    fn grid_invariants() {
        assert!(Grid2D::new(1.0, 0.0, 0.0, 1.0, 3, 3).is_err());
        assert!(Grid2D::new(0.0, 1.0, 0.0, 0.0, 3, 3).is_err());
        assert!(Grid2D::new(0.0, 1.0, 0.0, 1.0, 2, 3).is_err());
        let g = Grid2D::new(-1.0, 1.0, 0.0, 4.0, 5, 9).unwrap();
        assert_eq!(g.h_u(), 0.5);
        assert_eq!(g.h_v(), 0.5);
        assert_eq!(g.index(2, 3), 3 * 5 + 2);
    }

    #[test]
    fn sample_zero_and_linear() {
        let g = Grid2D::new(0.0, 1.0, 0.0, 1.0, 3, 3).unwrap();
        let z = Field2D::sample(g, |_, _| re(0.0)).unwrap();
        assert!(z.values().iter().all(|v| *v == re(0.0)));

        let f = Field2D::sample(g, |u, v| re(u + v)).unwrap();
        assert_eq!(f.at(0, 0), re(0.0));
        assert_eq!(f.at(2, 0), re(1.0));
        assert_eq!(f.at(0, 2), re(1.0));
        assert_eq!(f.at(2, 2), re(2.0));
        // v is the outer index
        assert_eq!(f.values()[1], re(0.5));
        assert_eq!(f.values()[3], re(0.5));
    }

    #[test]
    fn sample_readback_is_bit_exact_and_parallel_agrees() {
        let g = Grid2D::new(-3.0, 2.0, -1.0, 1.5, 37, 23).unwrap();
        let f = |u: f64, v: f64| ComplexValue::new((u * v).sin(), (u - v).exp());
        let seq = Field2D::sample(g, f).unwrap();
        let par = Field2D::sample_par(g, f).unwrap();
        assert_eq!(seq, par);
        for j in 0..g.n_v {
            for i in 0..g.n_u {
                assert_eq!(seq.at(i, j), f(g.u(i), g.v(j)));
            }
        }
    }

    #[test]
    fn non_finite_samples_rejected() {
        let g = Grid2D::new(0.0, 1.0, 0.0, 1.0, 3, 3).unwrap();
        assert!(Field2D::sample(g, |u, _| re(1.0 / (u - 0.5))).is_err());
    }

    #[test]
    fn diff1_exact_on_low_degree() {
        let g = Grid2D::new(-1.0, 2.0, 0.0, 1.0, 31, 4).unwrap();
        let c = Field2D::sample(g, |_, _| re(3.0)).unwrap();
        assert!(diff1(&c, Axis::U).max_abs() < 1e-12);

        let lin = Field2D::sample(g, |u, _| re(u)).unwrap();
        let d = diff1(&lin, Axis::U);
        assert!(d.values().iter().all(|z| (z.re - 1.0).abs() < 1e-12));

        let quad = Field2D::sample(g, |u, _| re(u * u)).unwrap();
        let d = diff1(&quad, Axis::U);
        for j in 0..g.n_v {
            for i in 0..g.n_u {
                assert!((d.at(i, j).re - 2.0 * g.u(i)).abs() < 1e-11);
            }
        }
        let dv = diff1(&quad, Axis::V);
        assert!(dv.max_abs() < 1e-12);
    }

    #[test]
    fn diff2_examples() {
        let g = Grid2D::new(0.0, 3.0, -1.0, 1.0, 301, 5).unwrap();
        let c = Field2D::sample(g, |_, _| re(-2.0)).unwrap();
        assert!(diff2(&c, Axis::U).max_abs() < 1e-9);

        let quad = Field2D::sample(g, |_, v| re(v * v)).unwrap();
        let d = diff2(&quad, Axis::V);
        assert!(d.values().iter().all(|z| (z.re - 2.0).abs() < 1e-12));

        let s = Field2D::sample(g, |u, _| re(u.sin())).unwrap();
        let d = diff2(&s, Axis::U);
        for (i, j) in g.interior() {
            assert!((d.at(i, j).re + g.u(i).sin()).abs() < 1e-4);
        }
        // boundary nodes copy their neighbour
        assert_eq!(d.at(0, 2), d.at(1, 2));
        assert_eq!(d.at(300, 2), d.at(299, 2));
    }

    #[test]
    fn diff2_converges_at_second_order() {
        let err = |n: usize| {
            let g = Grid2D::new(0.0, 2.0, 0.0, 1.0, n, 3).unwrap();
            let f = Field2D::sample(g, |u, _| re((1.3 * u).sin() * (-u).exp())).unwrap();
            let d = diff2(&f, Axis::U);
            g.interior()
                .map(|(i, j)| {
                    let u = g.u(i);
                    // (sin(au) e^{-u})'' = e^{-u}((1 - a²) sin(au) - 2a cos(au))
                    let exact = (-u).exp() * ((1.0 - 1.69) * (1.3 * u).sin() - 2.6 * (1.3 * u).cos());
                    (d.at(i, j).re - exact).abs()
                })
                .fold(0.0, f64::max)
        };
        let (coarse, fine) = (err(41), err(81));
        let ratio = coarse / fine;
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn constants_default_and_invariants() {
        let c = PhysicalConstants::default();
        assert_eq!((c.hbar, c.mass), (1.0, 1.0));
        assert!(PhysicalConstants::new(0.0, 1.0).is_err());
        assert!(PhysicalConstants::new(1.0, -1.0).is_err());
        assert_eq!(PhysicalConstants::new(2.0, 4.0).unwrap().kinetic_prefactor(), 0.5);
    }
}
