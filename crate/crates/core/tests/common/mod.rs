//! Independent reference implementations used as oracles by the
//! integration tests. Nothing here calls into the algorithms under test
//! beyond plain data constructors.

#![allow(dead_code)]

use intmat_core::{IntPoly, MatZ, RatPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

pub fn ratpoly(c: &[i64], d: i64) -> RatPoly {
    RatPoly::canonicalize(poly(c), BigInt::from(d)).unwrap()
}

/// Schoolbook product of coefficient vectors.
pub fn naive_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// `det(XI - M)` by Laplace expansion along the first row.
pub fn cofactor_char_poly(m: &MatZ) -> IntPoly {
    let n = m.dim();
    let cells: Vec<Vec<Vec<BigInt>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut c = vec![-m.get(i, j).clone()];
                    if i == j {
                        c.push(BigInt::one());
                    }
                    while c.last().is_some_and(|x| x.is_zero()) {
                        c.pop();
                    }
                    c
                })
                .collect()
        })
        .collect();
    IntPoly::new(laplace(&cells))
}

fn laplace(cells: &[Vec<Vec<BigInt>>]) -> Vec<BigInt> {
    let n = cells.len();
    if n == 1 {
        return cells[0][0].clone();
    }
    let mut acc = Vec::new();
    for j in 0..n {
        let minor: Vec<Vec<Vec<BigInt>>> = cells[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, c)| c.clone())
                    .collect()
            })
            .collect();
        let mut term = naive_mul(&cells[0][j], &laplace(&minor));
        if j % 2 == 1 {
            term.iter_mut().for_each(|c| *c = -c.clone());
        }
        acc = poly_add(&acc, &term);
    }
    acc
}

type RatMat = Vec<Vec<BigRational>>;

fn rat_matmul(a: &RatMat, b: &RatMat) -> RatMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigRational::zero(), |s, k| s + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// `f(M)` as `Σ f_k M^k` with explicit powers over Q.
pub fn rational_image(f: &RatPoly, m: &MatZ) -> RatMat {
    let n = m.dim();
    let base: RatMat = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from(m.get(i, j).clone())).collect())
        .collect();
    let mut power: RatMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut acc = vec![vec![BigRational::zero(); n]; n];
    let d = BigRational::from(f.denominator().clone());
    for c in f.numerator().coeffs() {
        let c = BigRational::from(c.clone()) / &d;
        for i in 0..n {
            for j in 0..n {
                acc[i][j] += &c * &power[i][j];
            }
        }
        power = rat_matmul(&power, &base);
    }
    acc
}

pub fn image_is_integral(f: &RatPoly, m: &MatZ) -> bool {
    rational_image(f, m).iter().flatten().all(|x| x.is_integer())
}

/// Divided differences over Q by the quotient recursion (distinct nodes).
pub fn recursive_divdiff(g: &[BigRational], nodes: &[BigRational]) -> BigRational {
    let eval = |x: &BigRational| g.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c);
    if nodes.len() == 1 {
        return eval(&nodes[0]);
    }
    let k = nodes.len() - 1;
    let a = recursive_divdiff(g, &nodes[..k]);
    let b = recursive_divdiff(g, &nodes[1..]);
    (b - a) / (&nodes[k] - &nodes[0])
}

/// Every integer matrix with entries in `[0, d)`.
pub fn all_matrices(n: usize, d: i64) -> Vec<MatZ> {
    let total = (d as u64).pow((n * n) as u32);
    let mut entries = vec![0i64; n * n];
    let mut out = Vec::with_capacity(total as usize);
    for _ in 0..total {
        out.push(MatZ::new(n, entries.iter().map(|&e| BigInt::from(e)).collect()).unwrap());
        for e in entries.iter_mut() {
            *e += 1;
            if *e < d {
                break;
            }
            *e = 0;
        }
    }
    out
}

/// Every coefficient vector of length `len` over `values`.
pub fn coefficient_box(len: usize, values: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                values.iter().map(move |&c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Monic polynomials of degree `n` whose lower coefficients range over `values`.
pub fn monic_box(n: usize, values: &[i64]) -> Vec<IntPoly> {
    coefficient_box(n, values)
        .into_iter()
        .map(|mut c| {
            c.push(1);
            poly(&c)
        })
        .collect()
}

pub fn random_poly(rng: &mut impl Rng, max_deg: usize, bound: i64) -> IntPoly {
    let deg = rng.gen_range(0..=max_deg);
    poly(&(0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
}

pub fn random_monic(rng: &mut impl Rng, n: usize, bound: i64) -> IntPoly {
    let mut c: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
    c.push(1);
    poly(&c)
}

pub fn random_ratpoly(rng: &mut impl Rng, max_deg: usize, bound: i64, max_den: i64) -> RatPoly {
    let d = rng.gen_range(1..=max_den);
    RatPoly::canonicalize(random_poly(rng, max_deg, bound), BigInt::from(d)).unwrap()
}
