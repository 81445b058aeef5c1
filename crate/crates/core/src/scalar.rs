//! Exact Gaussian-rational scalars `a + b·i` with `a, b ∈ ℚ`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// A complex number with exact rational real and imaginary parts.
///
/// `BigRational` keeps both parts gcd-reduced with a positive denominator, so
/// derived equality is structural equality of the reduced form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactComplex {
    re: BigRational,
    im: BigRational,
}

impl ExactComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactComplex { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        ExactComplex::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        ExactComplex::new(BigRational::new(BigInt::from(num), BigInt::from(den)), BigRational::zero())
    }

    pub fn from_real(re: BigRational) -> Self {
        ExactComplex { re, im: BigRational::zero() }
    }

    pub fn i() -> Self {
        ExactComplex::from_ints(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero() && !self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactComplex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(ExactComplex::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ExactComplex::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Whether the leading nonzero part is negative. Used by printers to pull
    /// a sign out of a coefficient.
    pub fn is_negative_leading(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_complex64(&self) -> num_complex::Complex64 {
        let (re, im) = self.to_f64_pair();
        num_complex::Complex64::new(re, im)
    }

    pub fn factorial(n: u32) -> Self {
        let mut acc = BigInt::one();
        for k in 2..=n {
            acc *= k;
        }
        ExactComplex::from_real(BigRational::from_integer(acc))
    }

    /// `n·self` for a machine integer `n`.
    pub fn scale_int(&self, n: i64) -> Self {
        let k = BigRational::from_integer(n.into());
        ExactComplex::new(&self.re * &k, &self.im * &k)
    }
}

impl Zero for ExactComplex {
    fn zero() -> Self {
        ExactComplex::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactComplex {
    fn one() -> Self {
        ExactComplex::from_ints(1, 0)
    }
}

impl From<i64> for ExactComplex {
    fn from(v: i64) -> Self {
        ExactComplex::from_ints(v, 0)
    }
}

impl From<BigRational> for ExactComplex {
    fn from(v: BigRational) -> Self {
        ExactComplex::from_real(v)
    }
}

// Total order by (re, im); only used for canonical key ordering.
impl Ord for ExactComplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for ExactComplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl<'a> Div<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    /// Panics on division by zero, like the rational type underneath.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &ExactComplex) -> ExactComplex {
        let inv = rhs.inv().expect("division by zero ExactComplex");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactComplex {
            type Output = ExactComplex;
            fn $m(self, rhs: ExactComplex) -> ExactComplex {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactComplex> for ExactComplex {
            type Output = ExactComplex;
            fn $m(self, rhs: &ExactComplex) -> ExactComplex {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re, -self.im)
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&ExactComplex> for ExactComplex {
    fn add_assign(&mut self, rhs: &ExactComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ExactComplex> for ExactComplex {
    fn sub_assign(&mut self, rhs: &ExactComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ExactComplex> for ExactComplex {
    fn mul_assign(&mut self, rhs: &ExactComplex) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Compact Gaussian-rational notation used in problem files: `3/2+1/2i`,
/// `-i`, `2`, `1/2i`.
impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.im == BigRational::one() {
            write!(f, "i")
        } else if self.im == -BigRational::one() {
            write!(f, "-i")
        } else {
            fmt_rational(&self.im, f)?;
            write!(f, "i")
        }
    }
}

impl fmt::Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str, offset: usize) -> Result<BigRational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::new(offset, format!("invalid rational '{s}'"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ParseError::new(offset, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for ExactComplex {
    type Err = ParseError;

    /// Parses the compact notation produced by `Display`. Whitespace is
    /// ignored.
    fn from_str(text: &str) -> Result<Self, ParseError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ParseError::new(0, "empty scalar"));
        }
        if let Some(body) = s.strip_suffix('i') {
            // Split at the last sign that is not the leading one.
            let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(k, _)| k).last();
            let (re_part, im_part) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("", body),
            };
            let re = if re_part.is_empty() { BigRational::zero() } else { parse_rational(re_part, 0)? };
            let im = match im_part {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                other => parse_rational(other.strip_prefix('+').unwrap_or(other), re_part.len())?,
            };
            Ok(ExactComplex::new(re, im))
        } else {
            Ok(ExactComplex::from_real(parse_rational(&s, 0)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> ExactComplex {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(
            c("3/2+1/2i"),
            ExactComplex::new(BigRational::new(3.into(), 2.into()), BigRational::new(1.into(), 2.into()))
        );
        assert_eq!(c("-i"), ExactComplex::from_ints(0, -1));
        assert_eq!(c("i"), ExactComplex::i());
        assert_eq!(c("2"), ExactComplex::from(2));
        assert_eq!(c("-1/2i"), ExactComplex::new(BigRational::zero(), BigRational::new((-1).into(), 2.into())));
        assert_eq!(c("1-i"), ExactComplex::from_ints(1, -1));
        assert_eq!(c(" 4/6 "), ExactComplex::rational(2, 3));
        assert!("1/0".parse::<ExactComplex>().is_err());
        assert!("abc".parse::<ExactComplex>().is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["3/2+1/2i", "-i", "i", "2", "-7/3", "1-2i", "-1/2-1/3i", "0"] {
            assert_eq!(c(s).to_string(), s);
            assert_eq!(c(&c(s).to_string()), c(s));
        }
    }

    #[test]
    fn field_ops() {
        let a = c("1+2i");
        let b = c("3-i");
        assert_eq!(&a * &b, c("5+5i"));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(c("i").pow(2), c("-1"));
        assert_eq!(ExactComplex::zero().inv(), None);
        assert_eq!(ExactComplex::factorial(5), c("120"));
    }
}
