//! Globally adaptive Gauss–Kronrod (7, 15) quadrature.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::ComplexValue;
use crate::error::{Error, Result};

/// Tolerances for [`integrate_adaptive`] and the truncation point used by
/// callers that integrate over an infinite line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub tail_cutoff: f64,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize, tail_cutoff: f64) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
            tail_cutoff,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Settings whose cutoff put a spectral weight `exp(-k²/4α)` below 1e-18.
    pub fn for_gaussian_spectrum(alpha: f64, abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::invalid("alpha > 0", alpha));
        }
        Self::new(abs_tol, rel_tol, 10_000, 2.0 * alpha.sqrt() * 9.1)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::invalid("abs_tol > 0", self.abs_tol));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::invalid("rel_tol > 0", self.rel_tol));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::invalid("max_subdivisions >= 1", self.max_subdivisions));
        }
        if !(self.tail_cutoff > 0.0) {
            return Err(Error::invalid("tail_cutoff > 0", self.tail_cutoff));
        }
        Ok(())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdivisions: 10_000,
            tail_cutoff: 20.0,
        }
    }
}

// Kronrod abscissae on [0, 1); odd indices are the Gauss-7 nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Panel {
    a: f64,
    b: f64,
    value: ComplexValue,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> ComplexValue,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite(format!("integrand on [{a}, {b}]")));
    }
    let error = ((kronrod - gauss) * half).norm();
    Ok(Panel { a, b, value, error })
}

/// Integrates `f` over `[a, b]`, bisecting the panel with the largest
/// error estimate until the total estimate drops below
/// `max(abs_tol, rel_tol |I|)`. Fails once `max_subdivisions` panels exist.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<ComplexValue>
where
    F: Fn(f64) -> ComplexValue,
{
    spec.validate()?;
    if !(a < b) {
        return Err(Error::Domain(format!(
            "integration bounds must satisfy a < b, got [{a}, {b}]"
        )));
    }
    let first = gauss_kronrod(&f, a, b)?;
    let mut total = first.value;
    let mut total_error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    loop {
        if total_error <= spec.abs_tol.max(spec.rel_tol * total.norm()) {
            return Ok(total);
        }
        if heap.len() >= spec.max_subdivisions {
            return Err(Error::NonConvergence {
                subdivisions: heap.len(),
                estimate: total.norm(),
                error: total_error,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = gauss_kronrod(&f, worst.a, mid)?;
        let right = gauss_kronrod(&f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Re-sum occasionally so cancellation in the running totals cannot drift.
        if heap.len() % 64 == 0 {
            total = heap.iter().map(|p| p.value).sum();
            total_error = heap.iter().map(|p| p.error).sum();
        }
    }
}

/// Real-valued convenience wrapper around [`integrate_adaptive`].
pub fn integrate_real<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_adaptive(|x| ComplexValue::new(f(x), 0.0), a, b, spec).map(|z| z.re)
}
