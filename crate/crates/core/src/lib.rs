//! Exact decision procedures for integer-valued polynomials on integer
//! matrix rings.
//!
//! A rational polynomial is given as `f = g/d` with `g ∈ Z[X]` and `d ≥ 1`.
//! The crate decides whether `f(M)` has integer entries for every integer
//! matrix `M` of size `n`, for every such `M` with a fixed characteristic
//! polynomial, or for every upper triangular `M`, and returns a checkable
//! certificate or an explicit counterexample matrix.

pub mod divdiff;
pub mod enumerate;
pub mod error;
pub mod matrix;
pub mod membership;
pub mod poly;
pub mod ring;
pub mod splitting;

pub use divdiff::{newton_expand, phi_eval, DividedDiffTable, NewtonExpansion};
pub use enumerate::{Budget, MatrixSpace, BUDGET_ENV, DEFAULT_BUDGET};
pub use error::{Error, Result};
pub use matrix::{bidiagonal, companion, MatMod, MatZ};
pub use membership::{
    closure_is_exact_for_irreducible, in_closure, is_irreducible, member_mn, member_mn_bruteforce,
    member_mn_irr_sampled, member_mnp_bruteforce, member_mnp_companion, member_mnp_divdiff, member_mnp_remainder,
    member_mnp_set, member_tn, Certificate, ClosureReport, Counts, Decomposition, DivDiffQuotient, Options, PSet,
    Route, SubsetMode, Verdict, Witness,
};
pub use poly::{IntPoly, ModPoly, RatPoly};
pub use ring::{Integers, Rationals, Ring, Zmod};
pub use splitting::{AlgElem, SplitAlgebra};
