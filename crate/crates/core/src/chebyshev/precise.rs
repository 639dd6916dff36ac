//! Complex numbers over binary big floats at a caller-chosen precision.

use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_base::SquareRoot;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_complex::Complex64;

/// Binary floating point with round-half-even.
pub type Real = FBig<HalfEven, 2>;

pub fn real_zero(precision: usize) -> Real {
    Real::ZERO.with_precision(precision).value()
}

pub fn real_int(v: &IBig, precision: usize) -> Real {
    Real::from(v.clone()).with_precision(precision).value()
}

pub fn real_f64(v: f64, precision: usize) -> Real {
    Real::try_from(v)
        .expect("finite f64")
        .with_precision(precision)
        .value()
}

/// `2^e` at the given precision.
pub fn real_pow2(e: isize, precision: usize) -> Real {
    Real::from_parts(IBig::ONE, e)
        .with_precision(precision)
        .value()
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

pub fn real_abs(x: &Real) -> Real {
    if x.sign() == dashu_base::Sign::Negative {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Natural log of a positive value.
pub fn real_ln(x: &Real) -> Real {
    x.ln()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(precision: usize) -> Self {
        Complex::new(real_zero(precision), real_zero(precision))
    }

    pub fn from_real(re: Real) -> Self {
        let p = re.precision();
        Complex::new(re, real_zero(p))
    }

    pub fn from_int(v: &IBig, precision: usize) -> Self {
        Complex::from_real(real_int(v, precision))
    }

    pub fn from_f64(re: f64, im: f64, precision: usize) -> Self {
        Complex::new(real_f64(re, precision), real_f64(im, precision))
    }

    pub fn from_c64(z: Complex64, precision: usize) -> Self {
        Complex::from_f64(z.re, z.im, precision)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    /// Re-rounds both parts to `precision` bits (extends or shrinks).
    pub fn with_precision(&self, precision: usize) -> Self {
        let fit = |x: &Real| {
            if x.precision() > precision || x.precision() == 0 {
                x.clone().with_precision(precision).value()
            } else {
                Real::from_repr(x.repr().clone(), dashu_float::Context::new(precision))
            }
        };
        Complex::new(fit(&self.re), fit(&self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.repr().is_zero() && self.im.repr().is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        if self.im.repr().is_zero() {
            return real_abs(&self.re);
        }
        if self.re.repr().is_zero() {
            return real_abs(&self.im);
        }
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &Real) -> Self {
        Complex::new(&self.re * k, &self.im * k)
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Complex::new(&self.re / &d, -(&self.im / &d))
    }

    /// Principal square root (branch cut on the negative real axis).
    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        let two = real_int(&IBig::from(2), self.precision());
        if self.re.sign() != dashu_base::Sign::Negative {
            let t = ((&r + &self.re) / &two).sqrt();
            let im = &self.im / (&t * &two);
            Complex::new(t, im)
        } else {
            let t = ((&r - &self.re) / &two).sqrt();
            let re = real_abs(&self.im) / (&t * &two);
            let im = if self.im.sign() == dashu_base::Sign::Negative {
                -t
            } else {
                t
            };
            Complex::new(re, im)
        }
    }

    /// `self^n` by repeated squaring.
    pub fn powu(&self, mut n: u64) -> Self {
        let p = self.precision();
        let mut acc = Complex::from_real(real_int(&IBig::ONE, p));
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let d = rhs.norm_sqr();
        let num = self * &rhs.conj();
        Complex::new(&num.re / &d, &num.im / &d)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re.clone(), -self.im.clone())
    }
}
