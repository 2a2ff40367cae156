//! Commutative rings used as coefficient domains.
//!
//! A ring is a value carrying whatever context its elements need (a modulus,
//! a multiplication table) and exposing the ring operations on a separate
//! element type. This lets polynomial and divided-difference code run
//! unchanged over Z, Q, Z/dZ and splitting algebras.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[allow(clippy::wrong_self_convention)]
pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_int(&BigInt::from(v))
    }
}

/// Rings in which "is `a` a multiple of the integer `d`" is decidable.
pub trait IntDivisibility: Ring {
    fn divisible_by(&self, a: &Self::Elem, d: &BigInt) -> bool;
}

/// The integers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

impl IntDivisibility for Integers {
    fn divisible_by(&self, a: &BigInt, d: &BigInt) -> bool {
        if d.is_zero() {
            return a.is_zero();
        }
        a.is_multiple_of(d)
    }
}

/// The rationals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// Z/dZ with residues stored in `[0, d)`.
///
/// The modulus is capped at `u32::MAX` so that products of two residues fit
/// in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zmod {
    modulus: u64,
}

impl Zmod {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus.to_string()));
        }
        if modulus > u64::from(u32::MAX) {
            return Err(Error::ModulusTooLarge(modulus.to_string()));
        }
        Ok(Self { modulus })
    }

    /// Accepts an arbitrary-precision modulus, rejecting values outside `[2, u32::MAX]`.
    pub fn from_bigint(d: &BigInt) -> Result<Self> {
        if d < &BigInt::from(2) {
            return Err(Error::BadModulus(d.to_string()));
        }
        match d.to_u64() {
            Some(m) => Self::new(m),
            None => Err(Error::ModulusTooLarge(d.to_string())),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn reduce_int(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }
}

impl Ring for Zmod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, v: &BigInt) -> u64 {
        self.reduce_int(v)
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.modulus as i64) as u64
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.modulus
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// Floor-style `v mod d` into `[0, |d|)`.
pub fn mod_floor_abs(v: &BigInt, d: &BigInt) -> BigInt {
    v.mod_floor(&d.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_rejects_bad_moduli() {
        assert!(Zmod::new(0).is_err());
        assert!(Zmod::new(1).is_err());
        assert!(Zmod::new(u64::from(u32::MAX) + 1).is_err());
        assert!(Zmod::from_bigint(&BigInt::from(-5)).is_err());
    }

    #[test]
    fn zmod_arithmetic_matches_integers() {
        let z = Zmod::new(7).unwrap();
        for a in 0..7u64 {
            for b in 0..7u64 {
                assert_eq!(z.add(&a, &b), (a + b) % 7);
                assert_eq!(z.sub(&a, &b), (a + 7 - b) % 7);
                assert_eq!(z.mul(&a, &b), (a * b) % 7);
            }
            assert_eq!(z.add(&a, &z.neg(&a)), 0);
        }
        assert_eq!(z.from_i64(-1), 6);
        assert_eq!(z.from_int(&BigInt::from(-15)), 6);
    }

    #[test]
    fn integer_divisibility() {
        let d = BigInt::from(3);
        assert!(Integers.divisible_by(&BigInt::from(-9), &d));
        assert!(!Integers.divisible_by(&BigInt::from(4), &d));
        assert!(Integers.divisible_by(&BigInt::zero(), &d));
    }
}
