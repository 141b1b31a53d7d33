//! Exact scalars: prime fields `F_p` with `p < 2^31`, and arbitrary-precision
//! rationals.
//!
//! A [`Field`] value is a lightweight handle that carries out all arithmetic;
//! a [`Scalar`] is a bare element and only makes sense together with the field
//! it was created by. Every operation is exact: `a * a^-1 == 1` for nonzero
//! `a`, with no rounding anywhere.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// The prime field `F_p`.
    Prime(u32),
    /// The field of rational numbers.
    Rationals,
}

/// An element of a [`Field`]. `Fp` values are kept reduced to `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Rat(BigRational),
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// Constructs `F_p`, checking primality and the `p < 2^31` bound.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= (1 << 31) || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn rationals() -> Field {
        Field::Rationals
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(0),
            Field::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(1),
            Field::Rationals => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Prime(p) => {
                let p = *p as i64;
                Scalar::Fp(n.rem_euclid(p) as u64)
            }
            Field::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % *p as u64),
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                let p = *p as u64;
                Scalar::Fp((x + p - y) % p)
            }
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(x * y % *p as u64),
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.sub(&self.zero(), a)
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Ok(Scalar::Fp(pow_mod(*x, *p as u64 - 2, *p as u64))),
            (Field::Rationals, Scalar::Rat(r)) => Ok(Scalar::Rat(r.recip())),
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Parses `"3"`, `"-2"` or (over `Q`) `"3/4"`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::BadRelation(format!("cannot parse scalar `{s}`"));
        match self {
            Field::Prime(_) => {
                let n: i64 = s.parse().map_err(|_| bad())?;
                Ok(self.from_i64(n))
            }
            Field::Rationals => {
                if let Some((num, den)) = s.split_once('/') {
                    let n: i64 = num.trim().parse().map_err(|_| bad())?;
                    let d: i64 = den.trim().parse().map_err(|_| bad())?;
                    if d == 0 {
                        return Err(Error::DivisionByZero);
                    }
                    Ok(Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d))))
                } else {
                    let n: i64 = s.parse().map_err(|_| bad())?;
                    Ok(self.from_i64(n))
                }
            }
        }
    }

    pub fn format_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(x) => x.to_string(),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// Symmetric-lift rendering used by the fixture serializers: a prime
    /// field element prints as the signed representative in `(-p/2, p/2]`,
    /// so small coefficients survive re-parsing under a different prime.
    pub fn format_scalar_portable(&self, a: &Scalar) -> String {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => {
                let p = *p as i64;
                let x = *x as i64;
                if x > p / 2 {
                    (x - p).to_string()
                } else {
                    x.to_string()
                }
            }
            _ => self.format_scalar(a),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    /// Numerator/denominator view used by fraction-free elimination over `Q`.
    pub fn rat(&self) -> &BigRational {
        match self {
            Scalar::Rat(r) => r,
            Scalar::Fp(_) => panic!("expected rational scalar"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{x}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_gate() {
        assert!(Field::prime(101).is_ok());
        assert!(Field::prime(32003).is_ok());
        assert!(Field::prime(91).is_err());
        assert!(Field::prime(1 << 31).is_err());
    }

    #[test]
    fn inverses_are_exact() {
        let f = Field::prime(101).unwrap();
        for n in 1..101 {
            let a = f.from_i64(n);
            let prod = f.mul(&a, &f.inv(&a).unwrap());
            assert_eq!(prod, f.one());
        }
        let q = Field::rationals();
        let a = q.parse_scalar("-7/3").unwrap();
        assert_eq!(q.mul(&a, &q.inv(&a).unwrap()), q.one());
    }

    #[test]
    fn fp_seven_solve_example() {
        // 2 * 4 = 8 = 1 mod 7
        let f = Field::prime(7).unwrap();
        let two = f.from_i64(2);
        assert_eq!(f.inv(&two).unwrap(), f.from_i64(4));
    }
}
