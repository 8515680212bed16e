//! Exact complex scalars `p/q + (r/s)i` over arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// A Gaussian rational: both parts are reduced fractions with positive
/// denominators, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a real scalar. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
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

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(Self::from_real(self.re.recip()));
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussianRational { re: &self.re / &norm, im: -(&self.im / &norm) })
    }

    /// Total bit length of the four integers; used to rank pivot candidates.
    pub fn bit_size(&self) -> u64 {
        self.re.numer().bits()
            + self.re.denom().bits()
            + self.im.numer().bits()
            + self.im.denom().bits()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_real(BigRational::one())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;

    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;

    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;

    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.is_zero() || rhs.is_zero() {
            return GaussianRational::zero();
        }
        if self.is_real() && rhs.is_real() {
            return GaussianRational::from_real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;

    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.recip().expect("division by zero Gaussian rational");
        self * &inv
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;

    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;

    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

fn write_frac(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text form: `"3"`, `"-1/2"`, `"2i"`, `"1/2-3/4i"`. A unit
/// imaginary part is written with its coefficient (`"1i"`, `"-1i"`).
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write_frac(f, &self.re);
        }
        if !self.re.is_zero() {
            write_frac(f, &self.re)?;
            if !self.im.is_negative() {
                f.write_str("+")?;
            }
        }
        write_frac(f, &self.im)?;
        f.write_str("i")
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_frac(text: &str, whole: &str) -> Result<BigRational, Error> {
    let bad = |reason: &str| Error::ParseScalar { input: whole.to_string(), reason: reason.to_string() };
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let digits_ok = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    if !digits_ok(num) || !digits_ok(den) {
        return Err(bad("expected digits with an optional '/' denominator"));
    }
    let num: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    let q = BigRational::new(num, den);
    Ok(if negative { -q } else { q })
}

fn parse_imag(text: &str, whole: &str) -> Result<BigRational, Error> {
    let body = text.strip_suffix('i').expect("caller checked the suffix");
    match body {
        "" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => parse_frac(body, whole),
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Parses `real | imag | real sign imag`. Unreduced fractions are
    /// accepted and normalised; a bare `-i` is accepted as well.
    fn from_str(s: &str) -> Result<Self, Error> {
        let text = s.trim();
        if text.is_empty() {
            return Err(Error::ParseScalar { input: s.to_string(), reason: "empty scalar".into() });
        }
        if !text.ends_with('i') {
            return Ok(Self::from_real(parse_frac(text, s)?));
        }
        // The separating sign is the first '+'/'-' after position 0 that
        // follows a digit; a leading '-' belongs to the first fraction.
        let bytes = text.as_bytes();
        let split = (1..bytes.len())
            .find(|&k| matches!(bytes[k], b'+' | b'-') && bytes[k - 1].is_ascii_digit());
        match split {
            None => Ok(GaussianRational { re: BigRational::zero(), im: parse_imag(text, s)? }),
            Some(k) => {
                let re = parse_frac(&text[..k], s)?;
                let imag = &text[k + 1..];
                if imag.starts_with('+') {
                    return Err(Error::ParseScalar { input: s.to_string(), reason: "doubled sign".into() });
                }
                let im = parse_imag(imag, s)?;
                let im = if bytes[k] == b'-' { -im } else { im };
                Ok(GaussianRational { re, im })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_grammar_examples() {
        assert_eq!(p("3"), GaussianRational::from_integer(3));
        assert_eq!(p("-1/2"), GaussianRational::ratio(-1, 2));
        assert_eq!(p("2i"), &GaussianRational::from_integer(2) * &GaussianRational::i());
        let z = p("1/2-3/4i");
        assert_eq!(z.re(), &BigRational::new(1.into(), 2.into()));
        assert_eq!(z.im(), &BigRational::new((-3).into(), 4.into()));
        assert_eq!(p("i"), GaussianRational::i());
        assert_eq!(p("1-i").im(), &-BigRational::one());
    }

    #[test]
    fn normalises_non_canonical_input() {
        assert_eq!(p("2/4"), GaussianRational::ratio(1, 2));
        assert_eq!(p("-0"), GaussianRational::zero());
        assert_eq!(p("0/7+6/3i").to_string(), "2i");
        assert_eq!(p("1--2i").to_string(), "1+2i");
    }

    #[test]
    fn rejects_malformed_scalars() {
        for bad in ["", "1/0", "3/0i", "1/", "/2", "abc", "1.5", "+1", "1++2i", "2 i", "1/2/3"] {
            assert!(bad.parse::<GaussianRational>().is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "3", "-1/2", "2i", "1/2-3/4i", "-5/3+1i", "-1i"] {
            assert_eq!(p(s).to_string(), s);
            assert_eq!(p(&p(s).to_string()), p(s));
        }
    }

    #[test]
    fn field_operations() {
        let z = p("1/2-3/4i");
        let w = p("-2+1/3i");
        assert_eq!(&(&z * &w) / &w, z);
        assert_eq!(&z * &z.recip().unwrap(), GaussianRational::one());
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), GaussianRational::from_integer(-1));
        assert_eq!(&(&z + &w) - &w, z);
        assert!(GaussianRational::zero().recip().is_none());
        assert_eq!((&z * &z.conj()).im(), &BigRational::zero());
    }
}
