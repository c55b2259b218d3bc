//! Exact ordered fields.
//!
//! Everything geometric in this crate is generic over [`ExactField`]. Two
//! instantiations are provided: arbitrary precision rationals ([`Rational`])
//! and real quadratic numbers `a + b*sqrt(d)` ([`Quadratic`]).

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// An exact, totally ordered field.
pub trait ExactField:
    Clone
    + fmt::Debug
    + fmt::Display
    + Ord
    + Hash
    + Send
    + Sync
    + 'static
    + From<Rational>
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(value: i64) -> Self {
        Self::from(Rational::from_integer(BigInt::from(value)))
    }

    /// Largest integer `<= self`.
    fn floor_int(&self) -> BigInt;

    /// Smallest integer `>= self`.
    fn ceil_int(&self) -> BigInt {
        -(-self.clone()).floor_int()
    }

    fn approx(&self) -> f64;

    /// `Some` when the value is rational.
    fn as_rational(&self) -> Option<Rational>;
}

impl ExactField for Rational {
    fn floor_int(&self) -> BigInt {
        Integer::div_floor(self.numer(), self.denom())
    }

    fn approx(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn big_int(value: &BigInt) -> Rational {
    Rational::from_integer(value.clone())
}

/// Parses `p`, `-p`, `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    let bad = || Error::Parse {
        line: 0,
        message: format!("invalid rational literal `{text}`"),
    };
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(text).map_err(|_| bad())?,
        )),
    }
}

/// Element `a + b*sqrt(d)` of the real quadratic field `Q(sqrt(d))`.
///
/// `d` is a positive non-square integer. A value with `b == 0` is stored with
/// `d == 0` and combines with any extension; two irrational operands must
/// share the same `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    a: Rational,
    b: Rational,
    d: u64,
}

impl Quadratic {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self, Error> {
        if !Zero::is_zero(&b) && !is_valid_radicand(d) {
            return Err(Error::InvalidInput(format!(
                "sqrt({d}) does not generate a real quadratic field"
            )));
        }
        Ok(Self::normalized(a, b, d))
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u64) -> Result<Self, Error> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    fn normalized(a: Rational, b: Rational, d: u64) -> Self {
        if Zero::is_zero(&b) {
            Self { a, b, d: 0 }
        } else {
            Self { a, b, d }
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    fn common_radicand(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d, e) => {
                assert_eq!(d, e, "mixing Q(sqrt({d})) and Q(sqrt({e}))");
                d
            }
        }
    }

    fn signum(&self) -> Ordering {
        let zero = Rational::zero();
        let sa = self.a.cmp(&zero);
        let sb = self.b.cmp(&zero);
        match (sa, sb) {
            (s, Ordering::Equal) | (Ordering::Equal, s) => s,
            (s, t) if s == t => s,
            (Ordering::Greater, _) => {
                // a > 0 > b: sign of a^2 - b^2 d
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * int(self.d as i64);
                lhs.cmp(&rhs)
            }
            _ => {
                let lhs = &self.b * &self.b * int(self.d as i64);
                let rhs = &self.a * &self.a;
                lhs.cmp(&rhs)
            }
        }
    }

    fn conjugate(&self) -> Self {
        Self::normalized(self.a.clone(), -self.b.clone(), self.d)
    }
}

fn is_valid_radicand(d: u64) -> bool {
    d >= 2 && {
        let r = d.sqrt();
        r * r != d
    }
}

impl From<Rational> for Quadratic {
    fn from(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }
}

impl Add for Quadratic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        Self::normalized(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for Quadratic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        Self::normalized(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for Quadratic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * int(d as i64);
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Self::normalized(a, b, d)
    }
}

impl Div for Quadratic {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        let norm = &rhs.a * &rhs.a - &rhs.b * &rhs.b * int(d as i64);
        assert!(!Zero::is_zero(&norm), "division by zero");
        let num = self * rhs.conjugate();
        Self::normalized(num.a / &norm, num.b / &norm, d)
    }
}

impl Neg for Quadratic {
    type Output = Self;
    fn neg(self) -> Self {
        Self::normalized(-self.a, -self.b, self.d)
    }
}

impl PartialOrd for Quadratic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quadratic {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            return write!(f, "{}", self.a);
        }
        if !Zero::is_zero(&self.a) {
            write!(f, "{}", self.a)?;
            if self.b > Rational::zero() {
                write!(f, "+")?;
            }
        }
        write!(f, "{}*sqrt({})", self.b, self.d)
    }
}

impl Zero for Quadratic {
    fn zero() -> Self {
        Self::from(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Quadratic {
    fn one() -> Self {
        Self::from(Rational::one())
    }
}

impl ExactField for Quadratic {
    fn floor_int(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor_int();
        }
        let approx = self.approx().floor();
        let mut guess = BigInt::from(approx as i64);
        let as_field = |k: &BigInt| Quadratic::from(big_int(k));
        while as_field(&guess) > *self {
            guess -= 1;
        }
        while as_field(&(&guess + 1)) <= *self {
            guess += 1;
        }
        guess
    }

    fn approx(&self) -> f64 {
        let a = ToPrimitive::to_f64(&self.a).unwrap_or(f64::NAN);
        let b = ToPrimitive::to_f64(&self.b).unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    fn as_rational(&self) -> Option<Rational> {
        Zero::is_zero(&self.b).then(|| self.a.clone())
    }
}

/// A field literal as written in net documents: `p/q` or `p/q+r/s*sqrt(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Literal {
    pub rational: Rational,
    pub irrational: Option<(Rational, u64)>,
}

impl Literal {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse {
            line: 0,
            message: format!("invalid scalar literal `{text}`"),
        };
        let Some(sqrt_at) = text.find("sqrt(") else {
            return Ok(Self {
                rational: parse_rational(&text)?,
                irrational: None,
            });
        };
        if !text.ends_with(')') {
            return Err(bad());
        }
        let d: u64 = text[sqrt_at + 5..text.len() - 1]
            .parse()
            .map_err(|_| bad())?;
        if !is_valid_radicand(d) {
            return Err(bad());
        }
        let head = &text[..sqrt_at];
        // head is "", "-", "c*", "r+c*", "r-c*", "r+", ...
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !head[..i].ends_with('/'))
            .map(|(i, _)| i)
            .last();
        let (rational_text, coeff_text) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let coeff = match coeff_text {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            c => parse_rational(c.strip_prefix('+').unwrap_or(c)).map_err(|_| bad())?,
        };
        let rational = if rational_text.is_empty() {
            Rational::zero()
        } else {
            parse_rational(rational_text).map_err(|_| bad())?
        };
        Ok(Self {
            rational,
            irrational: Some((coeff, d)),
        })
    }

    pub fn radicand(&self) -> Option<u64> {
        self.irrational.as_ref().map(|(_, d)| *d)
    }

    pub fn to_quadratic(&self) -> Result<Quadratic, Error> {
        match &self.irrational {
            None => Ok(Quadratic::from(self.rational.clone())),
            Some((b, d)) => Quadratic::new(self.rational.clone(), b.clone(), *d),
        }
    }
}
