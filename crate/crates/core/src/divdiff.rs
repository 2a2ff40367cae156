//! Divided differences and Newton expansions over commutative rings.
//!
//! Values `Φ^k(g)(a_0, …, a_k)` are obtained without any division: the
//! `k`-th iterated quotient of `g` by `(X - a_0), …, (X - a_{k-1})` is the
//! polynomial `Φ^k(g)(a_0, …, a_{k-1}, X)`, and evaluating it at `a_k`
//! gives the divided difference. Repeated nodes are therefore legal and
//! yield the confluent values (for all-equal nodes, the Hasse derivative).

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{dense, IntPoly};
use crate::ring::{IntDivisibility, Ring};

/// `g = Σ_k c_k · Π_{i<k} (X - a_i)` with `c_k = Φ^k(g)(a_0, …, a_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonExpansion<E> {
    pub nodes: Vec<E>,
    pub coefficients: Vec<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> NewtonExpansion<E> {
    /// Multiplies the expansion back out into ordinary coefficients.
    pub fn reconstruct<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<E> {
        let mut acc: Vec<E> = Vec::new();
        let mut basis = vec![ring.one()];
        for (k, c) in self.coefficients.iter().enumerate() {
            acc = dense::add(ring, &acc, &dense::scale(ring, &basis, c));
            if let Some(a) = self.nodes.get(k) {
                basis = dense::mul(ring, &basis, &[ring.neg(a), ring.one()]);
            }
        }
        acc
    }
}

/// Newton coefficients of `g` for the node sequence `a_0, …, a_{m-1}`.
///
/// Produces `m + 1` coefficients. Requires `m ≥ deg g` so that the last
/// quotient is constant.
pub fn newton_expand<R: Ring>(ring: &R, g: &[R::Elem], nodes: &[R::Elem]) -> Result<NewtonExpansion<R::Elem>> {
    let g = dense::trim(ring, g.to_vec());
    let deg = dense::degree(&g).unwrap_or(0);
    if nodes.len() < deg {
        return Err(Error::TooFewNodes {
            needed: deg,
            given: nodes.len(),
        });
    }
    let mut coefficients = Vec::with_capacity(nodes.len() + 1);
    let mut quotient = g;
    for a in nodes {
        let (q, value) = dense::div_linear(ring, &quotient, a);
        coefficients.push(value);
        quotient = q;
    }
    debug_assert!(quotient.len() <= 1);
    coefficients.push(quotient.pop().unwrap_or_else(|| ring.zero()));
    Ok(NewtonExpansion {
        nodes: nodes.to_vec(),
        coefficients,
    })
}

/// `Φ^k(g)(a_0, …, a_k)` for `points = (a_0, …, a_k)`.
///
/// # Panics
/// If `points` is empty.
pub fn phi_eval<R: Ring>(ring: &R, g: &[R::Elem], points: &[R::Elem]) -> R::Elem {
    let (last, prefix) = points.split_last().expect("at least one point");
    let mut quotient = g.to_vec();
    for a in prefix {
        if quotient.is_empty() {
            return ring.zero();
        }
        quotient = dense::div_linear(ring, &quotient, a).0;
    }
    dense::eval(ring, &quotient, last)
}

/// All prefix values `Φ^k(g)(a_0, …, a_k)` for `k = 0, …, points.len() - 1`.
///
/// Shares the iterated quotients, so it costs the same as the longest
/// single [`phi_eval`].
pub fn phi_prefix_values<R: Ring>(ring: &R, g: &[R::Elem], points: &[R::Elem]) -> Vec<R::Elem> {
    let mut out = Vec::with_capacity(points.len());
    let mut quotient = g.to_vec();
    for a in points {
        let (q, value) = dense::div_linear(ring, &quotient, a);
        out.push(value);
        quotient = q;
    }
    out
}

/// Whether `Φ^k(g)(points)` lies in `d·R`.
pub fn phi_values_in<R: IntDivisibility>(ring: &R, g: &IntPoly, points: &[R::Elem], d: &BigInt) -> bool {
    let g = dense::embed(ring, g);
    ring.divisible_by(&phi_eval(ring, &g, points), d)
}

/// Triangular table with `entry(k, i) = Φ^k(g)(a_i, …, a_{i+k})`.
#[derive(Debug, Clone, PartialEq)]
pub struct DividedDiffTable<E> {
    nodes: Vec<E>,
    rows: Vec<Vec<E>>,
}

impl<E: Clone> DividedDiffTable<E> {
    pub fn build<R: Ring<Elem = E>>(ring: &R, g: &[E], nodes: &[E]) -> Self {
        let m = nodes.len();
        let rows = (0..m)
            .map(|k| (0..m - k).map(|i| phi_eval(ring, g, &nodes[i..=i + k])).collect())
            .collect();
        Self {
            nodes: nodes.to_vec(),
            rows,
        }
    }

    pub fn nodes(&self) -> &[E] {
        &self.nodes
    }

    pub fn entry(&self, k: usize, i: usize) -> Option<&E> {
        self.rows.get(k).and_then(|row| row.get(i))
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, Rationals, Zmod};
    use num_rational::BigRational;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn first_difference_of_square() {
        let g = ints(&[0, 0, 1]);
        assert_eq!(phi_eval(&Integers, &g, &ints(&[2, 3])), BigInt::from(5));
        assert_eq!(phi_eval(&Integers, &g, &ints(&[-4, 7])), BigInt::from(3));
        assert_eq!(phi_eval(&Integers, &g, &ints(&[5, 1, -2])), BigInt::from(1));
        assert_eq!(phi_eval(&Integers, &g, &ints(&[5, 1, -2, 8])), BigInt::from(0));
    }

    #[test]
    fn repeated_nodes_give_hasse_derivative() {
        // g = X^4: Φ^2 at (a, a, a) is g''(a)/2 = 6a^2
        let g = ints(&[0, 0, 0, 0, 1]);
        for a in -3..=3i64 {
            let pts = ints(&[a, a, a]);
            assert_eq!(phi_eval(&Integers, &g, &pts), BigInt::from(6 * a * a));
            let pts = ints(&[a, a]);
            assert_eq!(phi_eval(&Integers, &g, &pts), BigInt::from(4 * a * a * a));
        }
    }

    #[test]
    fn newton_expansion_examples() {
        let e = newton_expand(&Integers, &ints(&[0, -1, 1]), &ints(&[0, 1, 2])).unwrap();
        assert_eq!(e.coefficients, ints(&[0, 0, 1, 0]));
        assert_eq!(e.reconstruct(&Integers), ints(&[0, -1, 1]));

        let e = newton_expand(&Integers, &ints(&[7]), &ints(&[3, 4])).unwrap();
        assert_eq!(e.coefficients, ints(&[7, 0, 0]));

        assert!(matches!(
            newton_expand(&Integers, &ints(&[0, 0, 0, 1]), &ints(&[1, 2])),
            Err(Error::TooFewNodes { needed: 3, given: 2 })
        ));
    }

    #[test]
    fn recursion_holds_on_distinct_rationals() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let g: Vec<BigRational> = [3, -1, 0, 2, 5].iter().map(|&c| q(c, 7)).collect();
        let nodes = vec![q(1, 2), q(-3, 1), q(2, 5), q(4, 1), q(0, 1)];
        let table = DividedDiffTable::build(&Rationals, &g, &nodes);
        for (i, x) in nodes.iter().enumerate() {
            assert_eq!(table.entry(0, i).unwrap(), &dense::eval(&Rationals, &g, x));
        }
        for k in 1..table.order() {
            for i in 0..nodes.len() - k {
                let lhs = table.entry(k, i).unwrap() * (&nodes[i + k] - &nodes[i]);
                let rhs = table.entry(k - 1, i + 1).unwrap() - table.entry(k - 1, i).unwrap();
                assert_eq!(lhs, rhs, "k={k} i={i}");
            }
        }
    }

    #[test]
    fn phi_values_in_examples() {
        let g = IntPoly::from_i64s(&[0, -1, 1]);
        let two = BigInt::from(2);
        assert!(phi_values_in(&Integers, &g, &ints(&[0, 1]), &two));
        assert!(!phi_values_in(&Integers, &g, &ints(&[0, 2]), &two));
        let g = IntPoly::from_i64s(&[4, -2, 6]);
        for a in -3..3 {
            assert!(phi_values_in(&Integers, &g, &ints(&[a]), &two));
        }
    }

    #[test]
    fn works_over_residue_ring() {
        let z = Zmod::new(6).unwrap();
        let g = vec![1u64, 5, 0, 2];
        let e = newton_expand(&z, &g, &[3, 3, 0]).unwrap();
        assert_eq!(e.reconstruct(&z), g);
        assert_eq!(phi_prefix_values(&z, &g, &[3, 3, 0]), e.coefficients[..3].to_vec());
    }
}
