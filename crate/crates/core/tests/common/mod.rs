//! Independent reference implementations shared by the integration tests.

#![allow(dead_code)]

use hyperwave_core::ComplexValue;

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }

    pub fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }

    pub fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    pub fn div_f64(self, d: f64) -> Self {
        let q1 = self.hi / d;
        let r = self.sub(Self::from_f64(q1).mul(Self::from_f64(d)));
        let q2 = r.hi / d;
        let r = r.sub(Self::from_f64(q2).mul(Self::from_f64(d)));
        let q3 = r.hi / d;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }.add(Self::from_f64(q3))
    }
}

#[derive(Debug, Clone, Copy)]
struct DdComplex {
    re: DoubleDouble,
    im: DoubleDouble,
}

impl DdComplex {
    fn mul(self, o: Self) -> Self {
        Self {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    fn add(self, o: Self) -> Self {
        Self {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    fn div_f64(self, d: f64) -> Self {
        Self {
            re: self.re.div_f64(d),
            im: self.im.div_f64(d),
        }
    }

    fn magnitude(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
}

// 2/√π to 32 digits, split into two doubles.
const TWO_OVER_SQRT_PI: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::FRAC_2_SQRT_PI,
    lo: 1.533545961316588e-17,
};

/// Maclaurin series of erf in double-double arithmetic, summed until the
/// term drops below 1e-34 of the partial sum (never fewer than 30 terms).
pub fn erf_series(z: ComplexValue) -> ComplexValue {
    let z = DdComplex {
        re: DoubleDouble::from_f64(z.re),
        im: DoubleDouble::from_f64(z.im),
    };
    let minus_z2 = {
        let sq = z.mul(z);
        DdComplex {
            re: sq.re.neg(),
            im: sq.im.neg(),
        }
    };
    let mut term = z;
    let mut sum = z;
    for n in 1..200 {
        term = term.mul(minus_z2).div_f64(n as f64);
        let contribution = term.div_f64((2 * n + 1) as f64);
        sum = sum.add(contribution);
        if n >= 30 && contribution.magnitude() < 1e-34 * sum.magnitude() {
            break;
        }
    }
    let scale = DdComplex {
        re: TWO_OVER_SQRT_PI,
        im: DoubleDouble::ZERO,
    };
    let r = sum.mul(scale);
    ComplexValue::new(r.re.to_f64(), r.im.to_f64())
}

#[test]
fn double_double_sum_carries_low_part() {
    let a = DoubleDouble::from_f64(1.0).add(DoubleDouble::from_f64(1e-20));
    assert_eq!(a.sub(DoubleDouble::from_f64(1.0)).to_f64(), 1e-20);
    let third = DoubleDouble::from_f64(1.0).div_f64(3.0);
    let back = third.mul(DoubleDouble::from_f64(3.0)).sub(DoubleDouble::from_f64(1.0));
    assert!(back.to_f64().abs() < 1e-31);
}
