//! Classical trajectories in the `(u, v)` plane.
//!
//! Each curve pairs two solutions of the same equation of motion with the
//! same energy, so time never appears: `u` is read off as a function of `v`.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};

/// Sign of the relative velocity `β_u / β_v`, or the initial direction of
/// motion in the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heading {
    Positive,
    Negative,
}

impl Heading {
    pub fn sign(self) -> f64 {
        match self {
            Heading::Positive => 1.0,
            Heading::Negative => -1.0,
        }
    }

    pub const BOTH: [Heading; 2] = [Heading::Positive, Heading::Negative];
}

/// Harmonic-oscillator orbit `u = A cos(ωt + δ₁)`, `v = A cos(ωt + δ₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorOrbit {
    pub amplitude: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub omega: f64,
}

impl OscillatorOrbit {
    pub fn new(amplitude: f64, delta1: f64, delta2: f64, omega: f64) -> Result<Self> {
        if !(amplitude > 0.0 && amplitude.is_finite()) {
            return Err(Error::invalid("amplitude > 0", amplitude));
        }
        if !(delta1.is_finite() && delta2.is_finite() && omega.is_finite()) {
            return Err(Error::invalid(
                "finite phases and frequency",
                format!("{delta1}, {delta2}, {omega}"),
            ));
        }
        Ok(Self {
            amplitude,
            delta1,
            delta2,
            omega,
        })
    }

    /// Phase offset `δ₁ − δ₂` reduced to `(−π, π]`.
    pub fn delta(&self) -> f64 {
        let d = (self.delta1 - self.delta2).rem_euclid(2.0 * PI);
        if d > PI {
            d - 2.0 * PI
        } else {
            d
        }
    }

    /// `E = ½ m ω² A²`.
    pub fn energy(&self, mass: f64) -> f64 {
        0.5 * mass * self.omega * self.omega * self.amplitude * self.amplitude
    }
}

/// Both branches `u = cos Δ · v ± sin Δ · √(A² − v²)`.
pub fn oscillator_curve(orbit: &OscillatorOrbit, v: f64) -> Result<(f64, f64)> {
    let a = orbit.amplitude;
    if !(v.abs() <= a) {
        return Err(Error::Domain(format!(
            "oscillator curve needs |v| <= A = {a}, got v = {v}"
        )));
    }
    let (s, c) = orbit.delta().sin_cos();
    let root = ((a - v) * (a + v)).max(0.0).sqrt();
    Ok((c * v + s * root, c * v - s * root))
}

/// Free-particle trajectory through `(u0, v0)` with unit slope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinePath {
    pub heading: Heading,
    pub u0: f64,
    pub v0: f64,
}

pub fn free_path(path: &LinePath, v: f64) -> f64 {
    let s = path.heading.sign();
    s * v + path.u0 - s * path.v0
}

/// Trajectory in the box `[−L/2, L/2]`, reflected elastically at the walls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxReflectedPath {
    pub width: f64,
    pub u0: f64,
    pub heading: Heading,
}

impl BoxReflectedPath {
    pub fn new(width: f64, u0: f64, heading: Heading) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::invalid("L > 0", width));
        }
        if !(u0.abs() < width / 2.0) {
            return Err(Error::invalid("-L/2 < u0 < L/2", u0));
        }
        Ok(Self { width, u0, heading })
    }

    /// Values of `v` at which the path touches a wall, within `[v_lo, v_hi]`.
    pub fn reflection_points(&self, v_lo: f64, v_hi: f64) -> Vec<(f64, f64)> {
        let l = self.width;
        let s = self.heading.sign();
        // unfolded coordinate x = u0 + L/2 + s v hits a wall when x is a multiple of L
        let x_at = |v: f64| self.u0 + l / 2.0 + s * v;
        let (x_lo, x_hi) = {
            let (a, b) = (x_at(v_lo), x_at(v_hi));
            (a.min(b), a.max(b))
        };
        let mut out = Vec::new();
        let mut m = (x_lo / l).ceil() as i64;
        while (m as f64) * l <= x_hi {
            let v = s * (m as f64 * l - self.u0 - l / 2.0);
            let u = if m.rem_euclid(2) == 0 { -l / 2.0 } else { l / 2.0 };
            out.push((u, v));
            m += 1;
        }
        out.sort_by(|a, b| a.1.total_cmp(&b.1));
        out
    }
}

/// Triangle wave of period `2L` starting at `u0` with slope `±1`.
pub fn box_path(path: &BoxReflectedPath, v: f64) -> f64 {
    let l = path.width;
    let x = (path.u0 + l / 2.0 + path.heading.sign() * v).rem_euclid(2.0 * l);
    let folded = if x > l { 2.0 * l - x } else { x };
    folded - l / 2.0
}

/// Perpendicular distance from `(u, v)` to the nearest of `u = ±v ± d`.
pub fn distance_to_free_paths(u: f64, v: f64, d: f64) -> f64 {
    [u - v - d, u - v + d, u + v - d, u + v + d]
        .iter()
        .map(|x| x.abs())
        .fold(f64::INFINITY, f64::min)
        / SQRT_2
}

/// The four free trajectories leaving `u = ±d` at `v = 0` in both directions.
pub fn free_paths_from(d: f64) -> [LinePath; 4] {
    [
        LinePath {
            heading: Heading::Positive,
            u0: d,
            v0: 0.0,
        },
        LinePath {
            heading: Heading::Negative,
            u0: d,
            v0: 0.0,
        },
        LinePath {
            heading: Heading::Positive,
            u0: -d,
            v0: 0.0,
        },
        LinePath {
            heading: Heading::Negative,
            u0: -d,
            v0: 0.0,
        },
    ]
}
