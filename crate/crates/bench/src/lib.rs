//! Shared inputs for the benchmarks.

use intmat_core::{IntPoly, RatPoly};
use num_bigint::BigInt;

pub fn poly(coeffs: &[i64]) -> IntPoly {
    IntPoly::from_i64s(coeffs)
}

pub fn ratpoly(coeffs: &[i64], d: i64) -> RatPoly {
    RatPoly::canonicalize(poly(coeffs), BigInt::from(d)).expect("nonzero denominator")
}

/// `(x^2 + x + 1)(x^3 + 2)`, the numerator swept over `M_2(Z/36)`.
pub fn sweep_numerator() -> IntPoly {
    poly(&[2, 2, 2, 1, 1, 1])
}

/// Member of `Int(M_2(Z))` with denominator 2.
pub fn m2_member() -> RatPoly {
    ratpoly(&[0, 0, 1, -1, 0, -1, 1], 2)
}
