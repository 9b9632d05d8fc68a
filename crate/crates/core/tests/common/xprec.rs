//! Double-double arithmetic (~32 significant digits) and the defining power
//! series evaluated with it. Test-only oracle: shares no code with the crate.

#![allow(dead_code)]

use std::ops::{Add, Div, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
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

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };

    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn sqrt(self) -> Dd {
        let s = self.hi.sqrt();
        // one Newton step
        let (p, e) = two_prod(s, s);
        let r = (self.hi - p - e + self.lo) / (2.0 * s);
        let (hi, lo) = quick_two_sum(s, r);
        Dd { hi, lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + Dd {
            hi: -o.hi,
            lo: -o.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::from(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::from(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from(q3)
    }
}

/// e^z by its Taylor series, z >= 0 and small enough not to overflow.
pub fn exp(z: f64) -> Dd {
    let zz = Dd::from(z);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term = term * zz / Dd::from(k);
        if term.hi < 1e-34 * sum.hi {
            return sum;
        }
        sum = sum + term;
    }
}

/// I_ν(z) = Σ (z/2)^{2k+ν} / (k! (k+ν)!).
pub fn bessel_i(nu: u32, z: f64) -> Dd {
    let half = Dd::from(z) / Dd::from(2.0);
    let mut term = Dd::ONE;
    for k in 1..=nu {
        term = term * half / Dd::from(k as f64);
    }
    let q = half * half;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term = term * q / Dd::from(k * (k + nu as f64));
        if term.hi < 1e-34 * sum.hi {
            return sum;
        }
        sum = sum + term;
    }
}

/// L_0(z) = Σ (z/2)^{2k+1} / Γ(k+3/2)², with Γ(3/2)² = π/4.
pub fn struve_l0(z: f64) -> Dd {
    let half = Dd::from(z) / Dd::from(2.0);
    let mut term = half * Dd::from(4.0) / Dd::PI;
    let q = half * half;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        let g = Dd::from(k + 0.5);
        term = term * q / (g * g);
        if term.hi < 1e-34 * sum.hi {
            return sum;
        }
        sum = sum + term;
    }
}

pub fn bessel_i_scaled(nu: u32, z: f64) -> f64 {
    (bessel_i(nu, z) / exp(z)).to_f64()
}

pub fn struve_l0_scaled(z: f64) -> f64 {
    (struve_l0(z) / exp(z)).to_f64()
}

/// Absolutely continuous part of the telegraph density, written directly
/// from its Bessel form in double-double.
pub fn telegraph_ac(x: f64, t: f64, lambda: f64, c: f64) -> f64 {
    let (x, t, l, c) = (Dd::from(x), Dd::from(t), Dd::from(lambda), Dd::from(c));
    let ct = c * t;
    let s = (ct * ct - x * x).sqrt();
    let w = (l / c * s).to_f64();
    let i0 = bessel_i(0, w);
    let i1 = bessel_i(1, w);
    let lt = (l * t).to_f64();
    let bracket = i0 + ct / s * i1;
    (l / (Dd::from(2.0) * c) * bracket / exp(lt)).to_f64()
}

/// Marginal density of the planar flight in double-double.
pub fn marginal(x: f64, t: f64, lambda: f64, c: f64) -> f64 {
    let (xd, td, l, cd) = (Dd::from(x), Dd::from(t), Dd::from(lambda), Dd::from(c));
    let ct = cd * td;
    let s = (ct * ct - xd * xd).sqrt();
    let w = (l / cd * s).to_f64();
    let lt = (l * td).to_f64();
    let e = exp(lt);
    let circle = Dd::ONE / (Dd::PI * s * e);
    let bulk = l / (Dd::from(2.0) * cd) * (bessel_i(0, w) + struve_l0(w)) / e;
    (circle + bulk).to_f64()
}
