//! Exact ground-field arithmetic.
//!
//! Two kinds of field are supported: the rationals (arbitrary precision,
//! always in lowest terms with a positive denominator) and prime fields
//! `Z/pZ`. A [`Scalar`] remembers which field it lives in; mixing fields in a
//! single operation is a programming error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::LinalgError;

/// The ground field of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds a prime field, rejecting composite or tiny moduli.
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if is_prime(p) && p <= u32::MAX as u64 {
            Ok(Field::Prime(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod(v.rem_euclid(p as i64) as u64, p),
        }
    }

    /// Builds `num/den`; fails on a zero denominator.
    pub fn from_fraction(&self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        Ok(&n * &d.inv()?)
    }

    /// Parses an exact literal: `p/q` or a bare integer. Decimal points and
    /// exponents are rejected.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, LinalgError> {
        let bad = || LinalgError::BadScalar(text.to_string());
        if text.is_empty() || text.contains(['.', 'e', 'E']) {
            return Err(bad());
        }
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = match den {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        match *self {
            Field::Rational => Ok(Scalar::Rat(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    u64::try_from(r).expect("residue fits in u64")
                };
                let n = Scalar::Mod(reduce(&num), p);
                let d = Scalar::Mod(reduce(&den), p);
                Ok(&n * &d.inv()?)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    /// Residue `v` in `[0, p)` together with the modulus `p`.
    Mod(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    /// Multiplicative inverse; division by zero is an error.
    pub fn inv(&self) -> Result<Scalar, LinalgError> {
        if self.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod(v, p) => Scalar::Mod(pow_mod(*v, p - 2, *p), *p),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, LinalgError> {
        Ok(self * &other.inv()?)
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => Scalar::Mod((a + b) % p, *p),
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => Scalar::Mod((a + p - b) % p, *p),
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => Scalar::Mod(mul_mod(*a, *b, *p), *p),
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a, p) => Scalar::Mod((p - a) % p, *p),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    // BigRational keeps the sign on the numerator.
                    debug_assert!(r.denom().is_positive());
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = Field::Rational;
        let a = q.parse_scalar("2/4").unwrap();
        let b = q.parse_scalar("1/3").unwrap();
        assert_eq!((&a + &b).to_string(), "5/6");
        assert_eq!(q.parse_scalar("3/-6").unwrap().to_string(), "-1/2");
        assert_eq!(q.parse_scalar("-4/2").unwrap().to_string(), "-2");
    }

    #[test]
    fn floats_are_rejected() {
        let q = Field::Rational;
        assert!(q.parse_scalar("1.5").is_err());
        assert!(q.parse_scalar("1e3").is_err());
        assert!(q.parse_scalar("").is_err());
        assert!(matches!(q.parse_scalar("1/0"), Err(LinalgError::DivisionByZero)));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(Field::Rational.zero().inv().is_err());
        assert!(Field::Prime(7).zero().inv().is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let three = f.from_i64(3);
        let inv = three.inv().unwrap();
        assert_eq!(inv, f.from_i64(5));
        assert_eq!(&three * &inv, f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(4));
        assert_eq!((-&three).to_string(), "4");
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
    }
}
