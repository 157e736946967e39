//! Scalar backends.
//!
//! Two coefficient types implement [`Coeff`]: [`Exact`], a complex number
//! with arbitrary-precision rational parts, and [`Float`], a binary64
//! complex number. Algebraic identities are meant to be checked on the
//! exact backend; the float backend rounds like ordinary `f64` arithmetic.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational-complex scalar.
pub type Exact = Complex<BigRational>;
/// Binary64 complex scalar.
pub type Float = Complex64;

/// Which arithmetic a scalar type uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

/// Field operations shared by both scalar backends.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    /// The imaginary unit.
    fn i() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(re: &BigRational, im: &BigRational) -> Self;
    /// Converts a float; exact for the exact backend (binary64 values are dyadic).
    fn from_f64(re: f64, im: f64) -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn is_real(&self) -> bool;
    fn to_c64(&self) -> Complex64;
    /// Natural log of the modulus; `-inf` for zero.
    fn ln_abs(&self) -> f64;
    /// Exact real and imaginary parts, when the backend has them.
    fn rational_parts(&self) -> Option<(BigRational, BigRational)>;

    fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    fn powi(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
}

/// Natural log of a nonzero big integer's absolute value.
pub(crate) fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        n.abs().to_f64().map_or(f64::INFINITY, f64::ln)
    } else {
        let shift = bits - 900;
        let top: BigInt = n.abs() >> shift;
        top.to_f64().map_or(f64::INFINITY, f64::ln) + shift as f64 * std::f64::consts::LN_2
    }
}

pub(crate) fn ln_abs_rational(r: &BigRational) -> f64 {
    if r.is_zero() {
        f64::NEG_INFINITY
    } else {
        ln_bigint(r.numer()) - ln_bigint(r.denom())
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let Some(v) = r.to_f64() {
        if v.is_finite() && v != 0.0 {
            return v;
        }
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * ln_abs_rational(r).exp()
}

impl Coeff for Exact {
    const BACKEND: Backend = Backend::Exact;

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }
    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(n.into()), BigRational::zero())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }
    fn from_rational(re: &BigRational, im: &BigRational) -> Self {
        Complex::new(re.clone(), im.clone())
    }
    fn from_f64(re: f64, im: f64) -> Self {
        let conv = |x: f64| BigRational::from_float(x).unwrap_or_else(BigRational::zero);
        Complex::new(conv(re), conv(im))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
    fn rational_parts(&self) -> Option<(BigRational, BigRational)> {
        Some((self.re.clone(), self.im.clone()))
    }
    fn ln_abs(&self) -> f64 {
        if self.im.is_zero() {
            ln_abs_rational(&self.re)
        } else if self.re.is_zero() {
            ln_abs_rational(&self.im)
        } else {
            let sq = &self.re * &self.re + &self.im * &self.im;
            0.5 * ln_abs_rational(&sq)
        }
    }
}

impl Coeff for Float {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn from_rational(re: &BigRational, im: &BigRational) -> Self {
        Complex64::new(rational_to_f64(re), rational_to_f64(im))
    }
    fn from_f64(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
    fn rational_parts(&self) -> Option<(BigRational, BigRational)> {
        None
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn is_real(&self) -> bool {
        self.im == 0.0
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn ln_abs(&self) -> f64 {
        self.norm().ln()
    }
}

/// Parses `"num/den"`, an integer, or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Formats a rational as `"num/den"`, or `"num"` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact real rational as an [`Exact`] scalar.
pub fn real(r: BigRational) -> Exact {
    Complex::new(r, BigRational::zero())
}

/// Shorthand for the exact scalar `num/den`.
pub fn q(num: i64, den: i64) -> Exact {
    Exact::from_ratio(num, den)
}

/// Natural log of `n!`.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["3", "-1/2", "7/3", "0"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(
            parse_rational("-0.25").unwrap(),
            BigRational::new((-1).into(), 4.into())
        );
        assert_eq!(parse_rational("4/8").unwrap(), BigRational::new(1.into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn ln_abs_handles_huge_rationals() {
        let big = BigInt::from(10).pow(500);
        let r = BigRational::from_integer(big);
        assert!((ln_abs_rational(&r) - 500.0 * 10f64.ln()).abs() < 1e-9);
        let c = Exact::from_ratio(3, 4) + Exact::i() * Exact::from_ratio(1, 1);
        assert!((c.ln_abs() - 1.25f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn float_from_exact() {
        assert_eq!(q(1, 4).to_c64(), Complex64::new(0.25, 0.0));
        assert_eq!(Exact::from_f64(0.5, -2.0), Complex::new(parse_rational("1/2").unwrap(), parse_rational("-2").unwrap()));
    }
}
