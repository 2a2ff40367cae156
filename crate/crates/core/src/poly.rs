//! Dense univariate polynomials.
//!
//! Coefficient vectors are stored lowest degree first and kept trimmed: the
//! last entry is nonzero, and the zero polynomial is the empty vector. The
//! degree of the zero polynomial is `None`, which orders below every
//! `Some(k)`, so `deg r < deg b` holds vacuously for `r = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Integers, Rationals, Ring, Zmod};

/// Generic coefficient-vector arithmetic over any [`Ring`].
pub mod dense {
    use super::*;

    /// Quotient and remainder.
    pub type QuotRem<E> = (Vec<E>, Vec<E>);

    pub fn trim<R: Ring>(ring: &R, mut p: Vec<R::Elem>) -> Vec<R::Elem> {
        while p.last().is_some_and(|c| ring.is_zero(c)) {
            p.pop();
        }
        p
    }

    pub fn degree<E>(p: &[E]) -> Option<usize> {
        p.len().checked_sub(1)
    }

    pub fn add<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => ring.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        trim(ring, out)
    }

    pub fn sub<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => ring.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => ring.neg(y),
                (None, None) => unreachable!(),
            })
            .collect();
        trim(ring, out)
    }

    pub fn mul<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![ring.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if ring.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
            }
        }
        trim(ring, out)
    }

    pub fn scale<R: Ring>(ring: &R, a: &[R::Elem], c: &R::Elem) -> Vec<R::Elem> {
        trim(ring, a.iter().map(|x| ring.mul(x, c)).collect())
    }

    /// Horner evaluation.
    pub fn eval<R: Ring>(ring: &R, p: &[R::Elem], x: &R::Elem) -> R::Elem {
        p.iter()
            .rev()
            .fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c))
    }

    /// Embeds an integer polynomial coefficient-wise.
    pub fn embed<R: Ring>(ring: &R, p: &IntPoly) -> Vec<R::Elem> {
        trim(ring, p.coeffs().iter().map(|c| ring.from_int(c)).collect())
    }

    /// Division by `X - a`: returns `(q, p(a))` with `p = q·(X - a) + p(a)`.
    pub fn div_linear<R: Ring>(ring: &R, p: &[R::Elem], a: &R::Elem) -> (Vec<R::Elem>, R::Elem) {
        if p.is_empty() {
            return (Vec::new(), ring.zero());
        }
        let mut q = vec![ring.zero(); p.len() - 1];
        let mut carry = ring.zero();
        for i in (0..p.len()).rev() {
            let v = ring.add(&p[i], &ring.mul(&carry, a));
            if i == 0 {
                return (trim(ring, q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Euclidean division by a monic divisor.
    ///
    /// Returns `(q, r)` with `a = q·b + r` and `deg r < deg b`. Fails when
    /// `b` is zero or its leading coefficient is not the unit.
    pub fn divrem_monic<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Result<QuotRem<R::Elem>> {
        let lead = b.last().ok_or_else(|| Error::NotMonic("0".to_string()))?;
        if !ring.is_one(lead) {
            return Err(Error::NotMonic(format!("{b:?}")));
        }
        let m = b.len() - 1;
        if a.len() <= m {
            return Ok((Vec::new(), trim(ring, a.to_vec())));
        }
        let mut r = a.to_vec();
        let mut q = vec![ring.zero(); a.len() - m];
        for top in (m..a.len()).rev() {
            let c = r[top].clone();
            if ring.is_zero(&c) {
                continue;
            }
            let shift = top - m;
            q[shift] = c.clone();
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] = ring.sub(&r[shift + j], &ring.mul(&c, bj));
            }
        }
        r.truncate(m);
        Ok((trim(ring, q), trim(ring, r)))
    }
}

/// A polynomial with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds from coefficients listed lowest degree first.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self {
            coeffs: dense::trim(&Integers, coeffs),
        }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `X - a`.
    pub fn linear_root(a: &BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `X^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        dense::degree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Fails with [`Error::NotMonic`] unless monic of degree at least one.
    pub fn ensure_monic(&self) -> Result<usize> {
        match self.degree() {
            Some(n) if n >= 1 && self.is_monic() => Ok(n),
            _ => Err(Error::NotMonic(self.to_string())),
        }
    }

    /// Non-negative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        dense::eval(&Integers, &self.coeffs, x)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let r: Vec<BigRational> = dense::embed(&Rationals, self);
        dense::eval(&Rationals, &r, x)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Euclidean division by a monic polynomial.
    pub fn divrem(&self, b: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if !b.is_monic() {
            return Err(Error::NotMonic(b.to_string()));
        }
        let (q, r) = dense::divrem_monic(&Integers, &self.coeffs, &b.coeffs)?;
        Ok((IntPoly { coeffs: q }, IntPoly { coeffs: r }))
    }

    /// Coefficient-wise reduction into `[0, d)`.
    pub fn reduce_mod(&self, d: u64) -> Result<ModPoly> {
        let ring = Zmod::new(d)?;
        ModPoly::from_residues(d, self.coeffs.iter().map(|c| ring.reduce_int(c)).collect())
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        dense::embed(&Rationals, self)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly {
            coeffs: dense::add(&Integers, &self.coeffs, &rhs.coeffs),
        }
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        IntPoly {
            coeffs: dense::sub(&Integers, &self.coeffs, &rhs.coeffs),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly {
            coeffs: dense::mul(&Integers, &self.coeffs, &rhs.coeffs),
        }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Writes `Σ c_k x^k` highest degree first, e.g. `3*x^3 - 4*x + 1`.
fn write_terms<C: fmt::Display + Signed + One>(f: &mut fmt::Formatter<'_>, coeffs: &[C]) -> fmt::Result {
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else if c.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        first = false;
        match k {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    f.write_str("x")?;
                } else {
                    write!(f, "x^{k}")?;
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// A rational polynomial in canonical form `g/d`.
///
/// `d > 0` and `gcd(content(g), d) = 1`; zero is `0/1`. Equality of values
/// is equality of canonical forms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    num: IntPoly,
    den: BigInt,
}

impl RatPoly {
    pub fn canonicalize(g: IntPoly, d: BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if g.is_zero() {
            return Ok(Self::from_int_poly(g));
        }
        let mut h = g.content().gcd(&d);
        if d.is_negative() {
            h = -h;
        }
        let num = IntPoly::new(g.coeffs.into_iter().map(|c| c / &h).collect());
        Ok(Self { num, den: d / h })
    }

    pub fn from_int_poly(g: IntPoly) -> Self {
        Self {
            num: g,
            den: BigInt::one(),
        }
    }

    /// Clears denominators of an arbitrary rational coefficient list.
    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = IntPoly::new(coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect());
        Self::canonicalize(num, den).expect("lcm of denominators is nonzero")
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn degree(&self) -> Option<usize> {
        self.num.degree()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.num
            .coeffs()
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.num.eval_rational(x) / BigRational::from_integer(self.den.clone())
    }
}

impl From<IntPoly> for RatPoly {
    fn from(g: IntPoly) -> Self {
        Self::from_int_poly(g)
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        RatPoly::from_rationals(&dense::add(&Rationals, &self.to_rationals(), &rhs.to_rationals()))
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        RatPoly::from_rationals(&dense::sub(&Rationals, &self.to_rationals(), &rhs.to_rationals()))
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        RatPoly::from_rationals(&dense::mul(&Rationals, &self.to_rationals(), &rhs.to_rationals()))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

/// A polynomial over Z/dZ with residues in `[0, d)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    /// Builds from residues, which must already lie in `[0, d)`.
    pub fn from_residues(modulus: u64, coeffs: Vec<u64>) -> Result<Self> {
        let ring = Zmod::new(modulus)?;
        if let Some(c) = coeffs.iter().find(|&&c| c >= modulus) {
            return Err(Error::InvalidArgument(format!(
                "residue {c} not reduced modulo {modulus}"
            )));
        }
        Ok(Self {
            modulus,
            coeffs: dense::trim(&ring, coeffs),
        })
    }

    pub fn zero(modulus: u64) -> Result<Self> {
        Self::from_residues(modulus, Vec::new())
    }

    pub fn ring(&self) -> Zmod {
        Zmod::new(self.modulus).expect("modulus validated at construction")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        dense::degree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// The lift with coefficients in `[0, d)`.
    pub fn lift(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn check_same(&self, other: &ModPoly) {
        assert_eq!(self.modulus, other.modulus, "mixing polynomials over different moduli");
    }

    pub fn divrem(&self, b: &ModPoly) -> Result<(ModPoly, ModPoly)> {
        self.check_same(b);
        let ring = self.ring();
        let (q, r) = dense::divrem_monic(&ring, &self.coeffs, &b.coeffs)?;
        Ok((
            ModPoly {
                modulus: self.modulus,
                coeffs: q,
            },
            ModPoly {
                modulus: self.modulus,
                coeffs: r,
            },
        ))
    }

    pub fn eval(&self, x: u64) -> u64 {
        dense::eval(&self.ring(), &self.coeffs, &(x % self.modulus))
    }
}

impl Add for &ModPoly {
    type Output = ModPoly;
    fn add(self, rhs: &ModPoly) -> ModPoly {
        self.check_same(rhs);
        ModPoly {
            modulus: self.modulus,
            coeffs: dense::add(&self.ring(), &self.coeffs, &rhs.coeffs),
        }
    }
}

impl Mul for &ModPoly {
    type Output = ModPoly;
    fn mul(self, rhs: &ModPoly) -> ModPoly {
        self.check_same(rhs);
        ModPoly {
            modulus: self.modulus,
            coeffs: dense::mul(&self.ring(), &self.coeffs, &rhs.coeffs),
        }
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lifted = self.lift();
        write!(f, "{lifted} (mod {})", self.modulus)
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly({self})")
    }
}
