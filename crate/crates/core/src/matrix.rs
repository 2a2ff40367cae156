//! Square matrices over Z and Z/dZ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, ModPoly, RatPoly};
use crate::ring::{Integers, Ring, Zmod};

/// Characteristic polynomial `det(XI - M)` by Berkowitz's division-free
/// recurrence. `entries` is row-major `n × n`; the result is monic of degree
/// `n`, lowest coefficient first (untrimmed, length `n + 1`).
pub fn char_poly_generic<R: Ring>(ring: &R, n: usize, entries: &[R::Elem]) -> Vec<R::Elem> {
    let at = |i: usize, j: usize| &entries[i * n + j];
    // Coefficients highest first while iterating.
    let mut poly = vec![ring.one()];
    for k in 0..n {
        // Leading (k+1)×(k+1) block = [[A, c], [r, a]] with A the k×k block.
        let a = at(k, k);
        let mut toeplitz = Vec::with_capacity(k + 2);
        toeplitz.push(ring.one());
        toeplitz.push(ring.neg(a));
        // v = A^j c, starting from c
        let mut v: Vec<R::Elem> = (0..k).map(|i| at(i, k).clone()).collect();
        for _ in 0..k {
            let rv = (0..k).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(at(k, j), &v[j])));
            toeplitz.push(ring.neg(&rv));
            v = (0..k)
                .map(|i| (0..k).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(at(i, j), &v[j]))))
                .collect();
        }
        let next: Vec<R::Elem> = (0..k + 2)
            .map(|i| {
                (0..=k.min(i)).fold(ring.zero(), |acc, j| {
                    if i - j < toeplitz.len() {
                        ring.add(&acc, &ring.mul(&toeplitz[i - j], &poly[j]))
                    } else {
                        acc
                    }
                })
            })
            .collect();
        poly = next;
    }
    poly.reverse();
    poly
}

/// Horner evaluation of `coeffs` (lowest first) at a row-major matrix.
pub fn eval_generic<R: Ring>(ring: &R, n: usize, coeffs: &[R::Elem], m: &[R::Elem]) -> Vec<R::Elem> {
    let mut acc = vec![ring.zero(); n * n];
    for c in coeffs.iter().rev() {
        let mut next = vec![ring.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = ring.zero();
                for k in 0..n {
                    s = ring.add(&s, &ring.mul(&acc[i * n + k], &m[k * n + j]));
                }
                next[i * n + j] = s;
            }
            next[i * n + i] = ring.add(&next[i * n + i], c);
        }
        acc = next;
    }
    acc
}

/// An `n × n` integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatZ {
    n: usize,
    entries: Vec<BigInt>,
}

impl MatZ {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Self {
            n,
            entries: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n.max(1)).map(<[BigInt]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &MatZ) -> MatZ {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let entries = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum()
            })
            .collect();
        MatZ { n, entries }
    }

    pub fn char_poly(&self) -> IntPoly {
        IntPoly::new(char_poly_generic(&Integers, self.n, &self.entries))
    }

    pub fn eval(&self, g: &IntPoly) -> MatZ {
        MatZ {
            n: self.n,
            entries: eval_generic(&Integers, self.n, g.coeffs(), &self.entries),
        }
    }

    /// `f(M) = g(M)/d`, entry-wise rational.
    pub fn eval_rational(&self, f: &RatPoly) -> Vec<BigRational> {
        let d = f.denominator();
        self.eval(f.numerator())
            .entries
            .into_iter()
            .map(|e| BigRational::new(e, d.clone()))
            .collect()
    }

    /// First entry `(i, j)` of `f(M)` that is not an integer, if any.
    pub fn non_integral_entry(&self, f: &RatPoly) -> Option<(usize, usize, BigRational)> {
        self.eval_rational(f)
            .into_iter()
            .enumerate()
            .find(|(_, v)| !v.is_integer())
            .map(|(idx, v)| (idx / self.n, idx % self.n, v))
    }

    pub fn reduce_mod(&self, d: u64) -> Result<MatMod> {
        let ring = Zmod::new(d)?;
        Ok(MatMod {
            n: self.n,
            modulus: d,
            entries: self.entries.iter().map(|e| ring.reduce_int(e)).collect(),
        })
    }
}

impl fmt::Display for MatZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.n, &self.entries)
    }
}

impl fmt::Debug for MatZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatZ{self}")
    }
}

fn write_rows<T: fmt::Display>(f: &mut fmt::Formatter<'_>, n: usize, entries: &[T]) -> fmt::Result {
    f.write_str("[")?;
    for i in 0..n {
        if i > 0 {
            f.write_str(", ")?;
        }
        f.write_str("[")?;
        for j in 0..n {
            if j > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", entries[i * n + j])?;
        }
        f.write_str("]")?;
    }
    f.write_str("]")
}

/// Companion matrix: ones on the subdiagonal, `-p_0, …, -p_{n-1}` down the
/// last column. `X^2 + bX + c ↦ [[0, -c], [1, -b]]`.
pub fn companion(p: &IntPoly) -> Result<MatZ> {
    let n = p.ensure_monic()?;
    let mut m = MatZ::zero(n);
    for i in 1..n {
        m.entries[i * n + (i - 1)] = BigInt::one();
    }
    for i in 0..n {
        m.entries[i * n + (n - 1)] = -p.coeff(i);
    }
    Ok(m)
}

/// Upper bidiagonal matrix with `diag` on the diagonal and ones above it.
///
/// It is cyclic with characteristic polynomial `Π (X - diag[i])`, and
/// conjugate over Z to the companion matrix of that polynomial.
pub fn bidiagonal(diag: &[BigInt]) -> MatZ {
    let n = diag.len();
    let mut m = MatZ::zero(n);
    for (i, a) in diag.iter().enumerate() {
        m.entries[i * n + i] = a.clone();
        if i + 1 < n {
            m.entries[i * n + i + 1] = BigInt::one();
        }
    }
    m
}

/// An `n × n` matrix over Z/dZ with entries in `[0, d)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatMod {
    n: usize,
    modulus: u64,
    entries: Vec<u64>,
}

impl MatMod {
    /// Builds from entries reduced into `[0, d)` (entries are reduced here).
    pub fn new(n: usize, modulus: u64, entries: Vec<u64>) -> Result<Self> {
        let _ = Zmod::new(modulus)?;
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(Self {
            n,
            modulus,
            entries: entries.into_iter().map(|e| e % modulus).collect(),
        })
    }

    pub(crate) fn from_reduced(n: usize, modulus: u64, entries: Vec<u64>) -> Self {
        debug_assert!(entries.iter().all(|&e| e < modulus));
        Self { n, modulus, entries }
    }

    pub fn ring(&self) -> Zmod {
        Zmod::new(self.modulus).expect("validated modulus")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Entries in `[0, d)` as an integer matrix.
    pub fn lift(&self) -> MatZ {
        MatZ {
            n: self.n,
            entries: self.entries.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }

    pub fn char_poly(&self) -> ModPoly {
        let coeffs = char_poly_generic(&self.ring(), self.n, &self.entries);
        ModPoly::from_residues(self.modulus, coeffs).expect("reduced residues")
    }

    pub fn eval(&self, g: &ModPoly) -> MatMod {
        assert_eq!(g.modulus(), self.modulus, "modulus mismatch");
        MatMod {
            n: self.n,
            modulus: self.modulus,
            entries: eval_generic(&self.ring(), self.n, g.coeffs(), &self.entries),
        }
    }

    pub fn annihilated_by(&self, g: &ModPoly) -> bool {
        self.eval(g).is_zero()
    }
}

impl fmt::Display for MatMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.n, &self.entries)?;
        write!(f, " (mod {})", self.modulus)
    }
}

impl fmt::Debug for MatMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatMod{self}")
    }
}

/// Allocation-free arithmetic on row-major residue matrices of a fixed
/// size, used on the hot path of exhaustive sweeps.
#[derive(Debug, Clone)]
pub struct ModKernel {
    n: usize,
    d: u64,
    acc: Vec<u64>,
    tmp: Vec<u64>,
    vec_a: Vec<u64>,
    vec_b: Vec<u64>,
    toeplitz: Vec<u64>,
    poly: Vec<u64>,
    poly_next: Vec<u64>,
}

impl ModKernel {
    pub fn new(n: usize, d: u64) -> Result<Self> {
        let _ = Zmod::new(d)?;
        Ok(Self {
            n,
            d,
            acc: vec![0; n * n],
            tmp: vec![0; n * n],
            vec_a: vec![0; n],
            vec_b: vec![0; n],
            toeplitz: vec![0; n + 1],
            poly: vec![0; n + 1],
            poly_next: vec![0; n + 1],
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.d
    }

    /// Characteristic polynomial, lowest coefficient first (length `n + 1`).
    pub fn char_poly(&mut self, m: &[u64]) -> &[u64] {
        let (n, d) = (self.n, self.d);
        let neg = |x: u64| if x == 0 { 0 } else { d - x };
        self.poly[0] = 1;
        let mut len = 1;
        for k in 0..n {
            self.toeplitz[0] = 1;
            self.toeplitz[1] = neg(m[k * n + k]);
            for i in 0..k {
                self.vec_a[i] = m[i * n + k];
            }
            for t in 0..k {
                let mut rv = 0u64;
                for j in 0..k {
                    rv = (rv + m[k * n + j] * self.vec_a[j]) % d;
                }
                self.toeplitz[t + 2] = neg(rv);
                for i in 0..k {
                    let mut s = 0u64;
                    for j in 0..k {
                        s = (s + m[i * n + j] * self.vec_a[j]) % d;
                    }
                    self.vec_b[i] = s;
                }
                std::mem::swap(&mut self.vec_a, &mut self.vec_b);
            }
            for i in 0..k + 2 {
                let mut s = 0u64;
                for j in 0..len.min(i + 1) {
                    if i - j <= k + 1 {
                        s = (s + self.toeplitz[i - j] * self.poly[j]) % d;
                    }
                }
                self.poly_next[i] = s;
            }
            len = k + 2;
            std::mem::swap(&mut self.poly, &mut self.poly_next);
        }
        self.poly[..=n].reverse();
        &self.poly[..=n]
    }

    /// Whether `g(m) = 0`, with `g` lowest coefficient first.
    pub fn annihilates(&mut self, g: &[u64], m: &[u64]) -> bool {
        let (n, d) = (self.n, self.d);
        self.acc.iter_mut().for_each(|x| *x = 0);
        for &c in g.iter().rev() {
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0u64;
                    for k in 0..n {
                        s = (s + self.acc[i * n + k] * m[k * n + j]) % d;
                    }
                    self.tmp[i * n + j] = s;
                }
                self.tmp[i * n + i] = (self.tmp[i * n + i] + c) % d;
            }
            std::mem::swap(&mut self.acc, &mut self.tmp);
        }
        self.acc.iter().all(|&x| x == 0)
    }
}

/// Integer content check helper: does `d` divide every entry?
pub fn entries_divisible(m: &MatZ, d: &BigInt) -> Option<(usize, usize)> {
    m.entries
        .iter()
        .position(|e| !e.is_multiple_of(d))
        .map(|idx| (idx / m.n, idx % m.n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn char_poly_small_cases() {
        assert_eq!(MatZ::zero(2).char_poly(), p(&[0, 0, 1]));
        let m = MatZ::from_rows(&[vec![3, 0], vec![0, -2]]).unwrap();
        assert_eq!(
            m.char_poly(),
            &IntPoly::linear_root(&3.into()) * &IntPoly::linear_root(&(-2).into())
        );
        let m = MatZ::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(m.char_poly(), p(&[-2, -5, 1]));
        assert_eq!(MatZ::zero(0).char_poly(), p(&[1]));
    }

    #[test]
    fn companion_examples() {
        assert_eq!(
            companion(&p(&[-5, 3, 1])).unwrap(),
            MatZ::from_rows(&[vec![0, 5], vec![1, -3]]).unwrap()
        );
        assert_eq!(companion(&p(&[-4, 1])).unwrap(), MatZ::from_rows(&[vec![4]]).unwrap());
        let c = companion(&p(&[-1, 0, 0, 1])).unwrap();
        assert!(c.eval(&p(&[-1, 0, 0, 1])).is_zero());
        assert!(matches!(companion(&p(&[1, 2])), Err(Error::NotMonic(_))));
    }

    #[test]
    fn eval_examples() {
        let m = MatZ::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(m.eval(&IntPoly::x()), m);
        let neg: Vec<BigInt> = m.entries().iter().map(|e| -e).collect();
        assert_eq!(m.eval(&p(&[0, -1, 1])).entries(), &neg[..]);
        let m = MatZ::from_rows(&[vec![2, -1, 0], vec![4, 1, 3], vec![-2, 5, 7]]).unwrap();
        assert!(m.eval(&m.char_poly()).is_zero());
    }

    #[test]
    fn kernel_matches_generic() {
        let mut k = ModKernel::new(3, 6).unwrap();
        let m = MatMod::new(3, 6, vec![1, 5, 2, 0, 3, 4, 5, 5, 1]).unwrap();
        assert_eq!(k.char_poly(m.entries()), m.char_poly().coeffs());
        let cp = m.char_poly();
        assert!(k.annihilates(cp.coeffs(), m.entries()));
        let g = ModPoly::from_residues(6, vec![1, 0, 1]).unwrap();
        assert_eq!(k.annihilates(g.coeffs(), m.entries()), m.annihilated_by(&g));
    }

    #[test]
    fn bidiagonal_is_cyclic_witness() {
        let diag: Vec<BigInt> = [0, 0].iter().map(|&v| BigInt::from(v)).collect();
        let t = bidiagonal(&diag);
        assert_eq!(t.char_poly(), p(&[0, 0, 1]));
        assert_eq!(t, MatZ::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap());
    }
}
