//! Dense univariate polynomials over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu_base::{Abs, BitTest, Gcd, Signed, UnsignedAbs};
use dashu_int::IBig;

use crate::error::{Error, Result};

/// Integer polynomial, coefficients lowest degree first. The leading
/// coefficient is nonzero; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<IBig>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<IBig>) -> Self {
        while coeffs.last().is_some_and(|c| *c == IBig::ZERO) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| IBig::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<IBig>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c·x^k`
    pub fn monomial(c: impl Into<IBig>, k: usize) -> Self {
        let mut coeffs = vec![IBig::ZERO; k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    /// `x - a`
    pub fn linear_root(a: impl Into<IBig>) -> Self {
        Self::new(vec![-a.into(), IBig::ONE])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[IBig] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> IBig {
        self.coeffs.get(k).cloned().unwrap_or(IBig::ZERO)
    }

    pub fn leading(&self) -> IBig {
        self.coeffs.last().cloned().unwrap_or(IBig::ZERO)
    }

    pub fn eval(&self, x: &IBig) -> IBig {
        self.coeffs
            .iter()
            .rev()
            .fold(IBig::ZERO, |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * IBig::from(k))
                .collect(),
        )
    }

    pub fn scale(&self, c: &IBig) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![IBig::ZERO; k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Division that must be exact over the integers.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Result<Self> {
        let (quot, rem) = self.div_rem_integral(divisor)?;
        if !rem.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(quot)
    }

    /// Long division in which every leading-coefficient quotient is an
    /// integer; fails with [`Error::InexactDivision`] otherwise.
    fn div_rem_integral(&self, divisor: &IntPolynomial) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::InvalidArgument("division by the zero polynomial".into()))?;
        let lead = divisor.leading();
        let mut rem = self.clone();
        let mut quot = vec![IBig::ZERO; self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let top = rem.leading();
            if &top % &lead != IBig::ZERO {
                return Err(Error::InexactDivision);
            }
            let c = top / &lead;
            rem = &rem - &divisor.scale(&c).shift(dr - dd);
            quot[dr - dd] = c;
        }
        Ok((Self::new(quot), rem))
    }

    /// `lc(b)^m · self mod b` for the minimal `m` the elimination needs.
    fn pseudo_rem(&self, divisor: &IntPolynomial) -> Self {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let top = rem.leading();
            rem = &rem.scale(&lead) - &divisor.scale(&top).shift(dr - dd);
        }
        rem
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> IBig {
        self.coeffs
            .iter()
            .filter(|c| **c != IBig::ZERO)
            .fold(IBig::ZERO, |acc, c| IBig::from(acc.gcd(c)))
    }

    /// `self / content`, normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &IntPolynomial) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Square-free factorization `f = c · Π g_i^i` of the primitive part,
    /// returned as `(g_i, i)` for each nonconstant `g_i`.
    pub fn square_free_decomposition(&self) -> Vec<(IntPolynomial, usize)> {
        let f = self.primitive_part();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut g = f.gcd(&f.derivative());
        let mut w = f.div_exact(&g).expect("gcd divides f");
        let mut out = Vec::new();
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&g);
            let z = w.div_exact(&y).expect("gcd divides w");
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i));
            }
            g = g.div_exact(&y).expect("gcd divides g");
            w = y;
            i += 1;
        }
        out
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().value()).collect()
    }

    /// Largest coefficient magnitude in bits.
    pub fn height_bits(&self) -> usize {
        self.coeffs
            .iter()
            .map(|c| c.clone().unsigned_abs().bit_len())
            .max()
            .unwrap_or(0)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![IBig::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if *c == IBig::ZERO {
                continue;
            }
            let mag = c.clone().abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = k == 0 || mag != IBig::ONE;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}
