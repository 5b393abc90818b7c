//! Complex error function.
//!
//! Inside the disc `|z| < 2` the Maclaurin series is used directly: its
//! terms never exceed `erfi(2) ≈ 18.6`, so cancellation costs at most one
//! digit. Outside the disc, `erf(z) = 1 - exp(-z²) w(iz)` with the
//! Faddeeva function `w` evaluated by Gautschi's algorithm in the
//! Poppe–Wijers formulation (power series near the origin, Taylor
//! expansion seeded by the Laplace continued fraction in the intermediate
//! zone, plain continued fraction far out).

use std::f64::consts::FRAC_2_SQRT_PI;

use super::ComplexValue;
use crate::error::{Error, Result};

const SERIES_RADIUS: f64 = 2.0;
const MAX_SERIES_TERMS: usize = 200;
// ln(f64::MAX)
const MAX_EXP_ARG: f64 = 709.782712893384;

/// `erf(z)` for complex `z`.
///
/// Exact symmetries are enforced: real input gives a real result, purely
/// imaginary input a purely imaginary one, and `erf(-z) = -erf(z)`.
pub fn erf_complex(z: ComplexValue) -> Result<ComplexValue> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite(format!("erf argument {z}")));
    }
    if z.re < 0.0 || (z.re == 0.0 && z.re.is_sign_negative()) {
        return erf_complex(-z).map(|w| -w);
    }
    let mut out = if z.norm() < SERIES_RADIUS {
        erf_series(z)
    } else {
        erf_via_faddeeva(z)?
    };
    if z.im == 0.0 {
        out.im = 0.0;
    }
    if z.re == 0.0 {
        out.re = 0.0;
    }
    if !(out.re.is_finite() && out.im.is_finite()) {
        return Err(Error::Overflow(format!("erf({z}) exceeds f64 range")));
    }
    Ok(out)
}

/// Imaginary error function, `erfi(z) = -i erf(iz)`.
pub fn erfi(z: ComplexValue) -> Result<ComplexValue> {
    let i = ComplexValue::i();
    erf_complex(i * z).map(|e| -i * e)
}

fn erf_series(z: ComplexValue) -> ComplexValue {
    let minus_z2 = -z * z;
    let mut power = z; // z^(2n+1) (-1)^n / n!
    let mut sum = z;
    for n in 1..MAX_SERIES_TERMS {
        power = power * minus_z2 / n as f64;
        let term = power / (2 * n + 1) as f64;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum * FRAC_2_SQRT_PI
}

// Requires Re z >= 0 so that iz lies in the closed upper half plane.
fn erf_via_faddeeva(z: ComplexValue) -> Result<ComplexValue> {
    let (x, y) = (z.re, z.im);
    // exp(-z²) = exp((y-x)(y+x)) * cis(-2xy)
    let growth = (y - x) * (y + x);
    if growth > MAX_EXP_ARG {
        return Err(Error::Overflow(format!("exp(-z²) for z = {z} needs exp({growth:.1})")));
    }
    let e = ComplexValue::from_polar(growth.exp(), -2.0 * x * y);
    let w = faddeeva(ComplexValue::new(-y, x));
    Ok(ComplexValue::new(1.0, 0.0) - e * w)
}

/// Faddeeva function `w(z) = exp(-z²) erfc(-iz)`, about 14 significant
/// digits over the whole plane (Poppe & Wijers, ACM TOMS 680).
pub fn faddeeva(z: ComplexValue) -> ComplexValue {
    const FACTOR: f64 = FRAC_2_SQRT_PI;

    let (xi, yi) = (z.re, z.im);
    let xabs = xi.abs();
    let yabs = yi.abs();
    let x = xabs / 6.3;
    let y = yabs / 4.4;

    let mut qrho = x * x + y * y;
    let xquad = xabs * xabs - yabs * yabs;
    let yquad = 2.0 * xabs * yabs;

    let (mut u, mut v);
    let near_origin = qrho < 0.085264;
    // exp(-z²) in the first quadrant, kept for the reflection below
    let (mut u2, mut v2) = (0.0, 0.0);

    if near_origin {
        qrho = (1.0 - 0.85 * y) * qrho.sqrt();
        let n = (6.0 + 72.0 * qrho).round() as usize;
        let mut j = 2 * n + 1;
        let mut xsum = 1.0 / j as f64;
        let mut ysum = 0.0;
        for i in (1..=n).rev() {
            j -= 2;
            let xaux = (xsum * xquad - ysum * yquad) / i as f64;
            ysum = (xsum * yquad + ysum * xquad) / i as f64;
            xsum = xaux + 1.0 / j as f64;
        }
        let u1 = -FACTOR * (xsum * yabs + ysum * xabs) + 1.0;
        let v1 = FACTOR * (xsum * xabs - ysum * yabs);
        let daux = (-xquad).exp();
        u2 = daux * yquad.cos();
        v2 = -daux * yquad.sin();
        u = u1 * u2 - v1 * v2;
        v = u1 * v2 + v1 * u2;
    } else {
        let (h, kapn, nu);
        if qrho > 1.0 {
            h = 0.0;
            kapn = 0usize;
            qrho = qrho.sqrt();
            nu = (3.0 + 1442.0 / (26.0 * qrho + 77.0)) as usize;
        } else {
            qrho = (1.0 - y) * (1.0 - qrho).sqrt();
            h = 1.88 * qrho;
            kapn = (7.0 + 34.0 * qrho).round() as usize;
            nu = (16.0 + 26.0 * qrho).round() as usize;
        }
        let taylor = h > 0.0;
        let h2 = 2.0 * h;
        let mut qlambda = if taylor { h2.powi(kapn as i32) } else { 0.0 };

        let (mut rx, mut ry, mut sx, mut sy) = (0.0, 0.0, 0.0, 0.0);
        for n in (0..=nu).rev() {
            let np1 = (n + 1) as f64;
            let tx = yabs + h + np1 * rx;
            let ty = xabs - np1 * ry;
            let c = 0.5 / (tx * tx + ty * ty);
            rx = c * tx;
            ry = c * ty;
            if taylor && n <= kapn {
                let tx = qlambda + sx;
                sx = rx * tx - ry * sy;
                sy = ry * tx + rx * sy;
                qlambda /= h2;
            }
        }
        if taylor {
            u = FACTOR * sx;
            v = FACTOR * sy;
        } else {
            u = FACTOR * rx;
            v = FACTOR * ry;
        }
        if yabs == 0.0 {
            u = (-xabs * xabs).exp();
        }
    }

    if yi < 0.0 {
        if near_origin {
            u2 *= 2.0;
            v2 *= 2.0;
        } else {
            let w1 = 2.0 * (-xquad).exp();
            u2 = w1 * yquad.cos();
            v2 = -w1 * yquad.sin();
        }
        u = u2 - u;
        v = v2 - v;
        if xi > 0.0 {
            v = -v;
        }
    } else if xi < 0.0 {
        v = -v;
    }
    ComplexValue::new(u, v)
}
