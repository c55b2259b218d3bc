use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::Rational;

/// Polynomial in `t` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    pub fn monomial(coeff: Rational, degree: usize) -> Self {
        let mut c = vec![Rational::zero(); degree + 1];
        c[degree] = coeff;
        Self::new(c)
    }

    /// `1 - t^k`.
    pub fn one_minus_t_pow(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[0] = Rational::one();
        c[k] = c[k].clone() - Rational::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::new(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    /// `t^deg p(1/t)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `t^k p(t)`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Rational::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        if rem.len() < divisor.coeffs.len() {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &q * c;
            }
            quot[i] = q;
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading();
        a.scale(&(Rational::one() / lead))
    }

    /// Least common multiple, scaled to constant term `1` when possible.
    pub fn lcm(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let g = self.gcd(other);
        let l = (self * other).div_rem(&g).0;
        l.normalized_constant()
    }

    /// Scales so the constant term is `1`, if it is nonzero.
    pub fn normalized_constant(&self) -> Polynomial {
        let c = self.coeff(0);
        if c.is_zero() {
            self.clone()
        } else {
            self.scale(&(Rational::one() / c))
        }
    }

    /// Integer coefficients when all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Least common denominator and gcd of numerators, as a rational content.
    pub fn content(&self) -> Rational {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num.abs(), den)
    }
}

impl From<Vec<i64>> for Polynomial {
    fn from(v: Vec<i64>) -> Self {
        Self::from_ints(&v)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + a * b;
            }
        }
        Polynomial::new(c)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_integer() {
                        write!(f, "({abs})")?;
                    } else if !unit {
                        write!(f, "{abs}")?;
                    }
                    write!(f, "t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[1, -1]);
        assert_eq!(&a * &b, p(&[1, 0, -1]));
        assert_eq!(&a + &b, p(&[2]));
        assert_eq!(&a - &a, Polynomial::zero());
        let (q, r) = p(&[1, 0, -1]).div_rem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_and_lcm() {
        let a = Polynomial::one_minus_t_pow(4);
        let b = Polynomial::one_minus_t_pow(6);
        assert_eq!(a.gcd(&b), p(&[-1, 0, 1]));
        let l = a.lcm(&b);
        assert_eq!(l.degree(), 8);
        assert!(a.divides(&l) && b.divides(&l));
        assert_eq!(l.coeff(0), Rational::one());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 0, 2, -1]).to_string(), "1 - 2t + 2t^3 - t^4");
        assert_eq!(p(&[0, 3]).to_string(), "3t");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn reversal_and_eval() {
        let a = p(&[1, 2, 3]);
        assert_eq!(a.reversed(), p(&[3, 2, 1]));
        assert_eq!(
            a.eval(&Rational::from_integer(2.into())),
            Rational::from_integer(17.into())
        );
    }
}
