//! Universal splitting algebra of a monic integer polynomial.
//!
//! For monic `p` of degree `n`, `A_p = Z[x_1, …, x_n] / (relations)` is built
//! as a tower: `A_0 = Z`, and `A_i = A_{i-1}[x_i] / (p_i(x_i))` where
//! `p_1 = p` and `p_{i+1} = p_i / (X - x_i)` computed over `A_i`. Each `p_i`
//! is monic of degree `n - i + 1`, so `A_p` is free over Z with basis the
//! monomials `x_1^{e_1} ⋯ x_{n-1}^{e_{n-1}}`, `0 ≤ e_i ≤ n - i`, of size
//! `n!`. The last root is `x_n = -p_n(0)` since `p_n` is linear.
//!
//! Coordinates are stored flat. A monomial with exponents `e` sits at index
//! `Σ e_i · L_{i-1}` where `L_i = n (n-1) ⋯ (n-i+1)`; an element of `A_{i-1}`
//! embeds into `A_i` by zero padding.
//!
//! Because the basis contains `1`, a scalar `z ∈ Z` lies in `d·A_p` exactly
//! when `d | z`, and `g ∈ d·A_p[X] + p·A_p[X]` holds exactly when
//! `g ∈ d·Z[X] + p·Z[X]` (uniqueness of division by the monic `p`). Together
//! with the Newton expansion over the roots this makes the coordinate-wise
//! divisibility test in `A_p` equivalent to divisibility of `g` by `p`
//! modulo `d`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{dense, IntPoly};
use crate::ring::{IntDivisibility, Ring};

/// Largest degree accepted by default (rank 120).
pub const DEFAULT_MAX_DEGREE: usize = 5;

struct Inner {
    p: IntPoly,
    n: usize,
    rank: usize,
    /// `strides[i] = L_i`, with `strides[0] = 1`.
    strides: Vec<usize>,
    /// `relations[i - 1]` holds the coefficients (lowest first, monic leading
    /// coefficient omitted) of `p_i` over `A_{i-1}`, for `i = 1..n-1`.
    relations: Vec<Vec<Vec<BigInt>>>,
    roots: Vec<Vec<BigInt>>,
}

/// The algebra `A_p`. Cheap to clone; elements share it by reference.
#[derive(Clone)]
pub struct SplitAlgebra(Arc<Inner>);

impl SplitAlgebra {
    /// Builds `A_p`, rejecting degrees above [`DEFAULT_MAX_DEGREE`].
    pub fn new(p: &IntPoly) -> Result<Self> {
        Self::with_max_degree(p, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree(p: &IntPoly, max_degree: usize) -> Result<Self> {
        let n = p.ensure_monic()?;
        if n > max_degree {
            return Err(Error::DegreeTooLarge {
                degree: n,
                limit: max_degree,
            });
        }
        let mut strides = vec![1usize];
        for i in 1..=n {
            strides.push(strides[i - 1] * (n - i + 1));
        }
        let rank = strides[n];
        let mut inner = Inner {
            p: p.clone(),
            n,
            rank,
            strides,
            relations: Vec::with_capacity(n.saturating_sub(1)),
            roots: Vec::with_capacity(n),
        };

        let scalar = |c: &BigInt| {
            let mut v = vec![BigInt::zero(); rank];
            v[0] = c.clone();
            v
        };
        // p_i as full coefficient list (including the leading 1), each an element.
        let mut current: Vec<Vec<BigInt>> = p.coeffs().iter().map(scalar).collect();
        for i in 1..n {
            let root = {
                let mut v = vec![BigInt::zero(); rank];
                v[inner.strides[i - 1]] = BigInt::one();
                v
            };
            let deg = current.len() - 1;
            inner.relations.push(current[..deg].to_vec());
            // Synthetic division by (X - x_i) in A_i.
            let mut next = vec![vec![BigInt::zero(); rank]; deg];
            let mut carry = vec![BigInt::zero(); rank];
            for j in (0..=deg).rev() {
                let prod = inner.mul_level(i, &carry, &root);
                let v: Vec<BigInt> = current[j].iter().zip(&prod).map(|(a, b)| a + b).collect();
                if j == 0 {
                    debug_assert!(v.iter().all(Zero::is_zero), "x_{i} is a root of p_{i}");
                } else {
                    next[j - 1] = v.clone();
                    carry = v;
                }
            }
            inner.roots.push(root);
            current = next;
        }
        // p_n = X + c, so x_n = -c.
        debug_assert_eq!(current.len(), 2);
        inner.roots.push(current[0].iter().map(|c| -c).collect());
        Ok(SplitAlgebra(Arc::new(inner)))
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.n
    }

    /// Rank as a free Z-module, `n!`.
    pub fn rank(&self) -> usize {
        self.0.rank
    }

    /// Exponent vectors `(e_1, …, e_n)` of the basis, in coordinate order.
    pub fn basis_exponents(&self) -> Vec<Vec<usize>> {
        let n = self.0.n;
        (0..self.0.rank)
            .map(|idx| (1..=n).map(|i| (idx / self.0.strides[i - 1]) % (n - i + 1)).collect())
            .collect()
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<AlgElem> {
        if coords.len() != self.0.rank {
            return Err(Error::DimensionMismatch {
                expected: self.0.rank,
                found: coords.len(),
            });
        }
        Ok(AlgElem {
            parent: self.clone(),
            coords,
        })
    }

    pub fn scalar(&self, c: &BigInt) -> AlgElem {
        let mut coords = vec![BigInt::zero(); self.0.rank];
        coords[0] = c.clone();
        AlgElem {
            parent: self.clone(),
            coords,
        }
    }

    pub fn basis_element(&self, index: usize) -> AlgElem {
        let mut coords = vec![BigInt::zero(); self.0.rank];
        coords[index] = BigInt::one();
        AlgElem {
            parent: self.clone(),
            coords,
        }
    }

    /// The root generator `x_i`, for `i` in `1..=n`.
    pub fn root(&self, i: usize) -> AlgElem {
        AlgElem {
            parent: self.clone(),
            coords: self.0.roots[i - 1].clone(),
        }
    }

    pub fn roots(&self) -> Vec<AlgElem> {
        (1..=self.0.n).map(|i| self.root(i)).collect()
    }

    /// `e_k(x_1, …, x_n)`.
    pub fn elementary_symmetric(&self, k: usize) -> AlgElem {
        // e_k is the coefficient of t^k in Π (1 + x_i t).
        let mut acc = vec![self.one()];
        for x in self.roots() {
            let mut next = acc.clone();
            next.push(self.zero());
            for j in 1..next.len() {
                next[j] = self.add(&next[j], &self.mul(&acc[j - 1], &x));
            }
            acc = next;
        }
        acc.get(k).cloned().unwrap_or_else(|| self.zero())
    }

    /// Coefficients of `Π (X - x_i)` over `A_p`, lowest first.
    pub fn root_product(&self) -> Vec<AlgElem> {
        self.roots().iter().fold(vec![self.one()], |acc, x| {
            dense::mul(self, &acc, &[self.neg(x), self.one()])
        })
    }

    /// Image under `x_i ↦ values[i-1]`; a ring morphism when `p = Π (X - values[i])`.
    pub fn evaluate(&self, u: &AlgElem, values: &[BigInt]) -> Result<BigInt> {
        if values.len() != self.0.n {
            return Err(Error::DimensionMismatch {
                expected: self.0.n,
                found: values.len(),
            });
        }
        Ok(self
            .basis_exponents()
            .iter()
            .zip(&u.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                e.iter()
                    .zip(values)
                    .fold(c.clone(), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k))
            })
            .sum())
    }

    pub fn try_mul(&self, u: &AlgElem, v: &AlgElem) -> Result<AlgElem> {
        if !u.same_parent(self) || !v.same_parent(self) {
            return Err(Error::ParentMismatch);
        }
        Ok(self.mul(u, v))
    }

    fn wrap(&self, coords: Vec<BigInt>) -> AlgElem {
        AlgElem {
            parent: self.clone(),
            coords,
        }
    }
}

impl Inner {
    fn levels(&self) -> usize {
        self.n.saturating_sub(1)
    }

    /// Product in `A_level`, reading and writing the first `L_level` coordinates.
    fn mul_level(&self, level: usize, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rank];
        self.mul_into(level, a, b, &mut out);
        out
    }

    fn mul_into(&self, level: usize, a: &[BigInt], b: &[BigInt], out: &mut [BigInt]) {
        if level == 0 {
            out[0] = &a[0] * &b[0];
            return;
        }
        let lower = self.strides[level - 1];
        let radix = self.n - level + 1;
        let chunk = |v: &[BigInt], e: usize| v[e * lower..(e + 1) * lower].to_vec();
        let a_chunks: Vec<Vec<BigInt>> = (0..radix).map(|e| chunk(a, e)).collect();
        let b_chunks: Vec<Vec<BigInt>> = (0..radix).map(|e| chunk(b, e)).collect();
        let nonzero = |c: &Vec<BigInt>| c.iter().any(|x| !x.is_zero());
        let a_live: Vec<bool> = a_chunks.iter().map(nonzero).collect();
        let b_live: Vec<bool> = b_chunks.iter().map(nonzero).collect();

        let mut prod = vec![vec![BigInt::zero(); lower]; 2 * radix - 1];
        let mut scratch = vec![BigInt::zero(); lower.max(1)];
        for i in (0..radix).filter(|&i| a_live[i]) {
            for j in (0..radix).filter(|&j| b_live[j]) {
                self.mul_into(level - 1, &a_chunks[i], &b_chunks[j], &mut scratch);
                for (t, s) in prod[i + j].iter_mut().zip(&scratch) {
                    *t += s;
                }
            }
        }
        // Reduce with the monic relation p_level(x_level) = 0.
        let relation = &self.relations[level - 1];
        for top in (radix..2 * radix - 1).rev() {
            let c = std::mem::take(&mut prod[top]);
            if c.iter().all(Zero::is_zero) {
                continue;
            }
            for (j, rj) in relation.iter().enumerate() {
                self.mul_into(level - 1, &c, rj, &mut scratch);
                for (t, s) in prod[top - radix + j].iter_mut().zip(&scratch) {
                    *t -= s;
                }
            }
        }
        for (e, part) in prod.into_iter().take(radix).enumerate() {
            out[e * lower..(e + 1) * lower].clone_from_slice(&part);
        }
    }
}

/// An element of a [`SplitAlgebra`], as integer coordinates over the monomial basis.
#[derive(Clone)]
pub struct AlgElem {
    parent: SplitAlgebra,
    coords: Vec<BigInt>,
}

impl AlgElem {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn parent(&self) -> &SplitAlgebra {
        &self.parent
    }

    fn same_parent(&self, alg: &SplitAlgebra) -> bool {
        Arc::ptr_eq(&self.parent.0, &alg.0)
    }

    /// True iff every coordinate is a multiple of `d`.
    pub fn divisible_by(&self, d: &BigInt) -> bool {
        self.coords
            .iter()
            .all(|c| if d.is_zero() { c.is_zero() } else { c.is_multiple_of(d) })
    }

    /// `Some(z)` when the element is the scalar `z`.
    pub fn as_scalar(&self) -> Option<&BigInt> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }

    pub fn mul(&self, other: &AlgElem) -> Result<AlgElem> {
        self.parent.try_mul(self, other)
    }
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent.0, &other.parent.0) && self.coords == other.coords
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElem{:?}", self.coords)
    }
}

impl fmt::Debug for SplitAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SplitAlgebra({}, rank {})", self.0.p, self.0.rank)
    }
}

impl Ring for SplitAlgebra {
    type Elem = AlgElem;

    fn zero(&self) -> AlgElem {
        self.wrap(vec![BigInt::zero(); self.0.rank])
    }
    fn one(&self) -> AlgElem {
        self.scalar(&BigInt::one())
    }
    fn from_int(&self, v: &BigInt) -> AlgElem {
        self.scalar(v)
    }
    fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        self.wrap(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }
    fn sub(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        self.wrap(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }
    fn neg(&self, a: &AlgElem) -> AlgElem {
        self.wrap(a.coords.iter().map(|x| -x).collect())
    }
    fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        debug_assert!(a.same_parent(self) && b.same_parent(self));
        self.wrap(self.0.mul_level(self.0.levels(), &a.coords, &b.coords))
    }
    fn is_zero(&self, a: &AlgElem) -> bool {
        a.coords.iter().all(Zero::is_zero)
    }
}

impl IntDivisibility for SplitAlgebra {
    fn divisible_by(&self, a: &AlgElem, d: &BigInt) -> bool {
        a.divisible_by(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(c: &[i64]) -> SplitAlgebra {
        SplitAlgebra::new(&IntPoly::from_i64s(c)).unwrap()
    }

    #[test]
    fn quadratic_structure() {
        // p = X^2 + bX + c with b = 3, c = -5
        let a = alg(&[-5, 3, 1]);
        assert_eq!(a.rank(), 2);
        let x1 = a.root(1);
        let x2 = a.root(2);
        assert_eq!(x1.coords(), &[BigInt::zero(), BigInt::one()]);
        assert_eq!(x2.coords(), &[BigInt::from(-3), BigInt::from(-1)]);
        assert_eq!(a.mul(&x1, &x2).as_scalar(), Some(&BigInt::from(-5)));
        assert_eq!(a.add(&x1, &x2).as_scalar(), Some(&BigInt::from(-3)));
        assert_eq!(a.mul(&x1, &a.one()), x1);
    }

    #[test]
    fn cube_of_x_is_nilpotent_structure() {
        let a = alg(&[0, 0, 0, 1]);
        assert_eq!(a.rank(), 6);
        for k in 1..=3 {
            assert!(a.is_zero(&a.elementary_symmetric(k)), "e_{k}");
        }
        assert!(a.is_one(&a.elementary_symmetric(0)));
    }

    #[test]
    fn rejects_non_monic_and_oversized() {
        assert!(matches!(
            SplitAlgebra::new(&IntPoly::from_i64s(&[1, 2])),
            Err(Error::NotMonic(_))
        ));
        assert!(SplitAlgebra::new(&IntPoly::from_i64s(&[1])).is_err());
        assert!(matches!(
            SplitAlgebra::new(&IntPoly::from_i64s(&[1, 0, 0, 0, 0, 0, 1])),
            Err(Error::DegreeTooLarge { degree: 6, limit: 5 })
        ));
    }

    #[test]
    fn parent_mismatch_is_rejected() {
        let a = alg(&[1, 0, 1]);
        let b = alg(&[1, 0, 1]);
        assert_eq!(a.root(1).mul(&b.root(1)), Err(Error::ParentMismatch));
        assert!(a.root(1).mul(&a.root(2)).is_ok());
    }

    #[test]
    fn divisibility_examples() {
        let a = alg(&[7, 4, 1]);
        let d = BigInt::from(3);
        assert!(a.zero().divisible_by(&d));
        assert!(a.mul(&a.scalar(&d), &a.root(1)).divisible_by(&d));
        // Φ^1(X^2)(x1, x2) = x1 + x2 = -b
        let s = a.add(&a.root(1), &a.root(2));
        assert!(s.divisible_by(&BigInt::from(4)));
        assert!(s.divisible_by(&BigInt::from(2)));
        assert!(!s.divisible_by(&d));
    }

    #[test]
    fn degree_one_is_z() {
        let a = alg(&[-4, 1]);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.root(1).as_scalar(), Some(&BigInt::from(4)));
    }

    #[test]
    fn split_evaluation_is_multiplicative() {
        // (X - 2)(X + 3)(X - 5)
        let p = &(&IntPoly::linear_root(&2.into()) * &IntPoly::linear_root(&(-3).into()))
            * &IntPoly::linear_root(&5.into());
        let a = SplitAlgebra::new(&p).unwrap();
        let vals: Vec<BigInt> = [2, -3, 5].iter().map(|&v| BigInt::from(v)).collect();
        for (i, v) in vals.iter().enumerate() {
            assert_eq!(&a.evaluate(&a.root(i + 1), &vals).unwrap(), v);
        }
        for i in 0..a.rank() {
            for j in 0..a.rank() {
                let u = a.basis_element(i);
                let v = a.basis_element(j);
                let lhs = a.evaluate(&a.mul(&u, &v), &vals).unwrap();
                let rhs = a.evaluate(&u, &vals).unwrap() * a.evaluate(&v, &vals).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
