//! Membership of `f = g/d` in rings of integer-valued polynomials on
//! integer matrices.
//!
//! For a monic `p` of degree `n`, `f(M) ∈ M_n(Z)` for every `M` with
//! characteristic polynomial `p` exactly when `g` is divisible by `p`
//! modulo `d·Z[X]`. The routes below decide that condition in independent
//! ways (Euclidean remainder, evaluation at the companion matrix, divided
//! differences at the roots in the splitting algebra, exhaustive search
//! over residue matrices) and combine it over sets of `p`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::divdiff::phi_eval;
use crate::enumerate::{self, Budget, MatrixSpace, Step};
use crate::error::{Error, Result};
use crate::matrix::{bidiagonal, companion, entries_divisible, MatZ};
use crate::poly::{dense, IntPoly, ModPoly, RatPoly};
use crate::ring::{Ring, Zmod};
use crate::splitting::{SplitAlgebra, DEFAULT_MAX_DEGREE};

/// Which criterion produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Remainder,
    Companion,
    DividedDifference,
    ExhaustiveResidues,
    BruteForce,
    Triangular,
    SampledIrreducible,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Remainder => "remainder",
            Route::Companion => "companion",
            Route::DividedDifference => "divided-diff",
            Route::ExhaustiveResidues => "exhaustive-residues",
            Route::BruteForce => "brute-force",
            Route::Triangular => "triangular",
            Route::SampledIrreducible => "sampled-irreducible",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `f = r + p·q` with `r ∈ Z[X]`, `deg r < deg p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub p: IntPoly,
    pub q: RatPoly,
    pub r: IntPoly,
}

impl Decomposition {
    pub fn recombine(&self) -> RatPoly {
        &RatPoly::from(self.r.clone()) + &(&RatPoly::from(self.p.clone()) * &self.q)
    }

    pub fn verify(&self, f: &RatPoly) -> bool {
        self.r.degree() < self.p.degree() && self.p.is_monic() && &self.recombine() == f
    }
}

/// `Φ^k(g)` at the roots `x_i, i ∈ roots` equals `d · quotient` in `A_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivDiffQuotient {
    pub order: usize,
    pub roots: Vec<usize>,
    pub quotient: Vec<BigInt>,
}

/// Evidence for a member verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `f` has integer coefficients.
    Integral,
    Decomposition(Decomposition),
    /// One decomposition per residue class of `p` modulo `d`.
    Decompositions(Vec<Decomposition>),
    /// `f(C_p)` has integer entries.
    IntegralImage {
        matrix: MatZ,
        image: MatZ,
    },
    DividedDifferences {
        p: IntPoly,
        quotients: Vec<DivDiffQuotient>,
    },
    /// Every matrix of the sweep was annihilated by `g mod d`.
    Sweep {
        matrices: u64,
    },
    /// Every tuple of the sweep had divided differences in `dZ`.
    TupleSweep {
        tuples: u64,
    },
}

impl Certificate {
    pub fn decompositions(&self) -> Vec<&Decomposition> {
        match self {
            Certificate::Decomposition(d) => vec![d],
            Certificate::Decompositions(v) => v.iter().collect(),
            _ => Vec::new(),
        }
    }

    /// Re-checks the certificate against `f` by exact arithmetic.
    ///
    /// Sweep certificates are only checked for shape; confirming them means
    /// rerunning the sweep.
    pub fn verify(&self, f: &RatPoly) -> bool {
        match self {
            Certificate::Integral => f.is_integral(),
            Certificate::Decomposition(dec) => dec.verify(f),
            Certificate::Decompositions(v) => v.iter().all(|dec| dec.verify(f)),
            Certificate::IntegralImage { matrix, image } => {
                let scaled: Vec<BigInt> = image.entries().iter().map(|e| e * f.denominator()).collect();
                matrix.eval(f.numerator()).entries() == &scaled[..]
            }
            Certificate::DividedDifferences { p, quotients } => {
                let Ok(alg) = SplitAlgebra::with_max_degree(p, p.degree().unwrap_or(0)) else {
                    return false;
                };
                let g = dense::embed(&alg, f.numerator());
                let d = f.denominator();
                quotients.iter().all(|qt| {
                    let points: Vec<_> = qt.roots.iter().map(|&i| alg.root(i)).collect();
                    let Ok(q) = alg.element(qt.quotient.clone()) else {
                        return false;
                    };
                    qt.roots.len() == qt.order + 1 && phi_eval(&alg, &g, &points) == alg.mul(&alg.scalar(d), &q)
                })
            }
            Certificate::Sweep { .. } | Certificate::TupleSweep { .. } => true,
        }
    }
}

/// Evidence for a non-member verdict. Every variant carries an integer
/// matrix `M` with `f(M) ∉ M_n(Z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `f(M)` has the non-integral entry `value` at `entry`.
    Matrix {
        matrix: MatZ,
        entry: (usize, usize),
        value: BigRational,
    },
    /// The remainder of `f` by `p` has a non-integral coefficient.
    RemainderCoefficient {
        p: IntPoly,
        degree: usize,
        value: BigRational,
        matrix: MatZ,
    },
    /// `g mod d` is not divisible by the residue polynomial.
    Residue { residue: ModPoly, p: IntPoly, matrix: MatZ },
    /// `Φ^k(g)` at the given roots of `p` is not in `d·A_p`.
    RootSubset {
        p: IntPoly,
        order: usize,
        roots: Vec<usize>,
        value: Vec<BigInt>,
        matrix: MatZ,
    },
    /// `Φ^k(g)(points) ≢ 0 mod d`; `matrix` is triangular.
    Tuple {
        order: usize,
        points: Vec<BigInt>,
        value: BigInt,
        matrix: MatZ,
    },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Matrix { .. } => "matrix",
            Witness::RemainderCoefficient { .. } => "remainder-coefficient",
            Witness::Residue { .. } => "residue",
            Witness::RootSubset { .. } => "root-subset",
            Witness::Tuple { .. } => "tuple",
        }
    }

    pub fn matrix(&self) -> &MatZ {
        match self {
            Witness::Matrix { matrix, .. }
            | Witness::RemainderCoefficient { matrix, .. }
            | Witness::Residue { matrix, .. }
            | Witness::RootSubset { matrix, .. }
            | Witness::Tuple { matrix, .. } => matrix,
        }
    }

    /// Independently confirms `f(M) ∉ M_n(Z)`.
    pub fn verify(&self, f: &RatPoly) -> bool {
        self.matrix().non_integral_entry(f).is_some()
    }
}

/// Candidates examined by a decision.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub residues: u64,
    pub matrices: u64,
    pub subsets: u64,
    pub tuples: u64,
    pub polynomials: u64,
}

/// A membership decision with its evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub member: bool,
    pub route: Route,
    /// `false` when a member verdict only certifies a necessary condition.
    pub exact: bool,
    pub certificate: Option<Certificate>,
    pub witness: Option<Witness>,
    pub counts: Counts,
}

impl Verdict {
    fn member(route: Route, certificate: Certificate, counts: Counts) -> Self {
        Self {
            member: true,
            route,
            exact: true,
            certificate: Some(certificate),
            witness: None,
            counts,
        }
    }

    fn non_member(route: Route, witness: Witness, counts: Counts) -> Self {
        Self {
            member: false,
            route,
            exact: true,
            certificate: None,
            witness: Some(witness),
            counts,
        }
    }

    /// Re-verifies the attached certificate or witness against `f`.
    pub fn verify(&self, f: &RatPoly) -> bool {
        match (self.member, &self.certificate, &self.witness) {
            (true, Some(c), None) => c.verify(f),
            (false, None, Some(w)) => w.verify(f),
            _ => false,
        }
    }
}

/// Which root subsets the divided-difference route inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubsetMode {
    /// `(x_1, …, x_{k+1})` for each `k`; sufficient for the decision.
    #[default]
    Prefixes,
    /// Every subset of size `k + 1`.
    All,
}

/// Tuning shared by the decision procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub budget: Budget,
    pub jobs: usize,
    pub max_algebra_degree: usize,
    pub subsets: SubsetMode,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            budget: Budget::default(),
            jobs: 1,
            max_algebra_degree: DEFAULT_MAX_DEGREE,
            subsets: SubsetMode::Prefixes,
        }
    }
}

/// A set of monic polynomials of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PSet {
    Explicit(Vec<IntPoly>),
    /// Every monic polynomial, taken modulo the denominator of `f`.
    AllMonic {
        n: usize,
    },
    /// Every totally split monic polynomial, modulo the denominator of `f`.
    AllSplit {
        n: usize,
    },
    /// Monic irreducible polynomials with lower coefficients in `[-bound, bound]`.
    SampledIrreducible {
        n: usize,
        bound: i64,
    },
}

fn modulus_of(f: &RatPoly) -> Result<Option<u64>> {
    let d = f.denominator();
    if d.is_one() {
        return Ok(None);
    }
    Ok(Some(Zmod::from_bigint(d)?.modulus()))
}

fn require_monic(p: &IntPoly) -> Result<usize> {
    p.ensure_monic()
}

/// Remainder criterion: `f mod p` has integer coefficients.
pub fn member_mnp_remainder(f: &RatPoly, p: &IntPoly) -> Result<Verdict> {
    require_monic(p)?;
    let d = f.denominator();
    let (q, r) = f.numerator().divrem(p)?;
    let counts = Counts {
        polynomials: 1,
        ..Counts::default()
    };
    match r.coeffs().iter().position(|c| !c.is_multiple_of(d)) {
        None => {
            let r = IntPoly::new(r.coeffs().iter().map(|c| c / d).collect());
            let q = RatPoly::canonicalize(q, d.clone())?;
            Ok(Verdict::member(
                Route::Remainder,
                Certificate::Decomposition(Decomposition { p: p.clone(), q, r }),
                counts,
            ))
        }
        Some(k) => Ok(Verdict::non_member(
            Route::Remainder,
            Witness::RemainderCoefficient {
                p: p.clone(),
                degree: k,
                value: BigRational::new(r.coeffs()[k].clone(), d.clone()),
                matrix: companion(p)?,
            },
            counts,
        )),
    }
}

/// Companion criterion: `f(C_p)` has integer entries.
pub fn member_mnp_companion(f: &RatPoly, p: &IntPoly) -> Result<Verdict> {
    let c = companion(p)?;
    let image = c.eval(f.numerator());
    let d = f.denominator();
    let counts = Counts {
        matrices: 1,
        ..Counts::default()
    };
    match entries_divisible(&image, d) {
        None => {
            let n = c.dim();
            let scaled = MatZ::new(n, image.entries().iter().map(|e| e / d).collect())?;
            Ok(Verdict::member(
                Route::Companion,
                Certificate::IntegralImage {
                    matrix: c,
                    image: scaled,
                },
                counts,
            ))
        }
        Some((i, j)) => {
            let value = BigRational::new(image.get(i, j).clone(), d.clone());
            Ok(Verdict::non_member(
                Route::Companion,
                Witness::Matrix {
                    matrix: c,
                    entry: (i, j),
                    value,
                },
                counts,
            ))
        }
    }
}

/// Index subsets of `{1, …, n}` of size `k`, lexicographic.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Divided-difference criterion in the splitting algebra of `p`.
pub fn member_mnp_divdiff(f: &RatPoly, p: &IntPoly, opts: &Options) -> Result<Verdict> {
    let n = require_monic(p)?;
    let alg = SplitAlgebra::with_max_degree(p, opts.max_algebra_degree)?;
    let g = dense::embed(&alg, f.numerator());
    let d = f.denominator();
    let roots = alg.roots();
    let mut quotients = Vec::new();
    let mut counts = Counts {
        polynomials: 1,
        ..Counts::default()
    };
    for k in 0..n {
        let subsets = match opts.subsets {
            SubsetMode::Prefixes => vec![(1..=k + 1).collect::<Vec<_>>()],
            SubsetMode::All => combinations(n, k + 1),
        };
        for subset in subsets {
            counts.subsets += 1;
            let points: Vec<_> = subset.iter().map(|&i| roots[i - 1].clone()).collect();
            let value = phi_eval(&alg, &g, &points);
            if !value.divisible_by(d) {
                return Ok(Verdict::non_member(
                    Route::DividedDifference,
                    Witness::RootSubset {
                        p: p.clone(),
                        order: k,
                        roots: subset,
                        value: value.coords().to_vec(),
                        matrix: companion(p)?,
                    },
                    counts,
                ));
            }
            quotients.push(DivDiffQuotient {
                order: k,
                roots: subset,
                quotient: value.coords().iter().map(|c| c / d).collect(),
            });
        }
    }
    Ok(Verdict::member(
        Route::DividedDifference,
        Certificate::DividedDifferences {
            p: p.clone(),
            quotients,
        },
        counts,
    ))
}

/// Lifts a failing residue matrix to a witness with entries in `[0, d)`.
fn matrix_witness(space: &MatrixSpace, index: u64, f: &RatPoly) -> Witness {
    let matrix = space.matrix(index).lift();
    let (i, j, value) = matrix
        .non_integral_entry(f)
        .expect("a failing residue matrix lifts to a non-integral image");
    Witness::Matrix {
        matrix,
        entry: (i, j),
        value,
    }
}

/// Brute force over every `M̄ ∈ M_n(Z/dZ)` with characteristic polynomial `p̄`.
pub fn member_mnp_bruteforce(f: &RatPoly, p: &IntPoly, opts: &Options) -> Result<Verdict> {
    let n = require_monic(p)?;
    let Some(d) = modulus_of(f)? else {
        return Ok(Verdict::member(
            Route::BruteForce,
            Certificate::Integral,
            Counts::default(),
        ));
    };
    let space = MatrixSpace::new(n, d, opts.budget)?;
    let target = p.reduce_mod(d)?;
    let g = f.numerator().reduce_mod(d)?;
    let (target, g) = (target.coeffs(), g.coeffs());
    let outcome = enumerate::sweep(&space, opts.jobs, |kernel, m| {
        if kernel.char_poly(m) != target {
            Step::Skip
        } else if kernel.annihilates(g, m) {
            Step::Pass
        } else {
            Step::Fail
        }
    });
    let counts = Counts {
        matrices: outcome.candidates,
        ..Counts::default()
    };
    Ok(match outcome.first_failure {
        None => Verdict::member(
            Route::BruteForce,
            Certificate::Sweep {
                matrices: outcome.candidates,
            },
            counts,
        ),
        Some(idx) => Verdict::non_member(Route::BruteForce, matrix_witness(&space, idx, f), counts),
    })
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    Ok(())
}

/// Monic integer polynomials of degree `n` with lower coefficients in `[-bound, bound]`.
fn box_polynomials(n: usize, bound: i64, budget: Budget) -> Result<Vec<IntPoly>> {
    if bound < 0 {
        return Err(Error::InvalidArgument("coefficient bound must be non-negative".into()));
    }
    let width = 2 * bound as u64 + 1;
    let total = budget.check_power(width, n)?;
    let mut low = vec![-bound; n];
    let mut out = Vec::with_capacity(total as usize);
    for _ in 0..total {
        let mut c = low.clone();
        c.push(1);
        out.push(IntPoly::from_i64s(&c));
        for x in low.iter_mut() {
            *x += 1;
            if *x <= bound {
                break;
            }
            *x = -bound;
        }
    }
    Ok(out)
}

/// Irreducibility over Q of a monic integer polynomial of degree at most 3,
/// decided by searching for an integer root.
pub fn is_irreducible(p: &IntPoly) -> Result<bool> {
    let n = p.ensure_monic()?;
    match n {
        1 => Ok(true),
        2 | 3 => Ok(integer_root(p).is_none()),
        _ => Err(Error::DegreeTooLarge { degree: n, limit: 3 }),
    }
}

/// Some integer root of the monic `p`, if one exists.
fn integer_root(p: &IntPoly) -> Option<BigInt> {
    let c0 = p.coeff(0);
    if c0.is_zero() {
        return Some(BigInt::zero());
    }
    let m = c0.abs();
    let mut i = BigInt::one();
    while &i * &i <= m {
        if m.is_multiple_of(&i) {
            for cand in [i.clone(), &m / &i] {
                for s in [cand.clone(), -cand] {
                    if p.eval(&s).is_zero() {
                        return Some(s);
                    }
                }
            }
        }
        i += 1;
    }
    None
}

type Residues = Vec<(ModPoly, IntPoly)>;

/// Residue classes of a polynomial set modulo `d`, each with a lift.
fn residues_of(pset: &PSet, d: u64, budget: Budget) -> Result<(usize, Residues, u64)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |lift: IntPoly, out: &mut Residues| -> Result<()> {
        let r = lift.reduce_mod(d)?;
        if seen.insert(r.clone()) {
            out.push((r, lift));
        }
        Ok(())
    };
    let mut scanned = 0u64;
    let n = match pset {
        PSet::Explicit(list) => {
            let n = list
                .first()
                .ok_or_else(|| Error::InvalidArgument("empty polynomial set".into()))?
                .ensure_monic()?;
            for p in list {
                if p.ensure_monic()? != n {
                    return Err(Error::InvalidArgument("polynomials of mixed degree".into()));
                }
                scanned += 1;
                push(p.clone(), &mut out)?;
            }
            n
        }
        PSet::AllMonic { n } => {
            check_n(*n)?;
            for r in enumerate::monic_residues(*n, d, budget)? {
                scanned += 1;
                out.push((r.clone(), r.lift()));
            }
            *n
        }
        PSet::AllSplit { n } => {
            check_n(*n)?;
            budget.check(&enumerate::multiset_count(*n, d))?;
            for roots in enumerate::multisets(*n, d) {
                scanned += 1;
                let lift = roots
                    .iter()
                    .fold(IntPoly::one(), |acc, &a| &acc * &IntPoly::linear_root(&BigInt::from(a)));
                push(lift, &mut out)?;
            }
            *n
        }
        PSet::SampledIrreducible { n, bound } => {
            check_n(*n)?;
            for p in box_polynomials(*n, *bound, budget)? {
                scanned += 1;
                if is_irreducible(&p)? {
                    push(p, &mut out)?;
                }
            }
            *n
        }
    };
    Ok((n, out, scanned))
}

/// `f` is integer-valued on every matrix whose characteristic polynomial is in `pset`.
pub fn member_mnp_set(f: &RatPoly, pset: &PSet, opts: &Options) -> Result<Verdict> {
    let sampled = matches!(pset, PSet::SampledIrreducible { .. });
    let route = if sampled {
        Route::SampledIrreducible
    } else {
        Route::ExhaustiveResidues
    };
    let Some(d) = modulus_of(f)? else {
        if let PSet::SampledIrreducible { n, bound } = pset {
            // still validate the inputs
            check_n(*n)?;
            box_polynomials(*n, *bound, opts.budget)?;
        }
        return Ok(Verdict::member(route, Certificate::Integral, Counts::default()));
    };
    let (_, residues, scanned) = residues_of(pset, d, opts.budget)?;
    let g = f.numerator().reduce_mod(d)?;
    let mut counts = Counts {
        polynomials: scanned,
        ..Counts::default()
    };
    for (residue, lift) in &residues {
        counts.residues += 1;
        let (_, rem) = g.divrem(residue)?;
        if !rem.is_zero() {
            return Ok(Verdict::non_member(
                route,
                Witness::Residue {
                    residue: residue.clone(),
                    p: lift.clone(),
                    matrix: companion(lift)?,
                },
                counts,
            ));
        }
    }
    let decompositions = residues
        .iter()
        .map(|(_, lift)| match member_mnp_remainder(f, lift)?.certificate {
            Some(Certificate::Decomposition(dec)) => Ok(dec),
            _ => unreachable!("residue divisibility implies an integral remainder"),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut v = Verdict::member(route, Certificate::Decompositions(decompositions), counts);
    v.exact = !sampled;
    Ok(v)
}

/// Membership in `Int(M_n(Z))` by divisibility modulo `d` by every monic
/// residue polynomial of degree `n`.
pub fn member_mn(f: &RatPoly, n: usize, opts: &Options) -> Result<Verdict> {
    check_n(n)?;
    member_mnp_set(f, &PSet::AllMonic { n }, opts)
}

/// Membership in `Int(M_n(Z))` by evaluating `g mod d` on all of `M_n(Z/dZ)`.
pub fn member_mn_bruteforce(f: &RatPoly, n: usize, opts: &Options) -> Result<Verdict> {
    check_n(n)?;
    let Some(d) = modulus_of(f)? else {
        return Ok(Verdict::member(
            Route::BruteForce,
            Certificate::Integral,
            Counts::default(),
        ));
    };
    let space = MatrixSpace::new(n, d, opts.budget)?;
    let g = f.numerator().reduce_mod(d)?;
    let g = g.coeffs();
    let outcome = enumerate::sweep(&space, opts.jobs, |kernel, m| {
        if kernel.annihilates(g, m) {
            Step::Pass
        } else {
            Step::Fail
        }
    });
    let counts = Counts {
        matrices: outcome.swept,
        ..Counts::default()
    };
    Ok(match outcome.first_failure {
        None => Verdict::member(
            Route::BruteForce,
            Certificate::Sweep {
                matrices: outcome.swept,
            },
            counts,
        ),
        Some(idx) => Verdict::non_member(Route::BruteForce, matrix_witness(&space, idx, f), counts),
    })
}

/// Necessary condition for `Int(M_n(Z))` from irreducible `p` in a coefficient box.
///
/// Non-member verdicts are definitive; member verdicts have `exact = false`.
pub fn member_mn_irr_sampled(f: &RatPoly, n: usize, bound: i64, opts: &Options) -> Result<Verdict> {
    check_n(n)?;
    let mut v = member_mnp_set(f, &PSet::SampledIrreducible { n, bound }, opts)?;
    if v.member {
        v.exact = false;
    }
    Ok(v)
}

/// Membership in `Int(T_n(Z))`: `Φ^k(g)` maps `(Z/dZ)^{k+1}` into `dZ` for all `k < n`.
pub fn member_tn(f: &RatPoly, n: usize, opts: &Options) -> Result<Verdict> {
    check_n(n)?;
    let Some(d) = modulus_of(f)? else {
        return Ok(Verdict::member(
            Route::Triangular,
            Certificate::Integral,
            Counts::default(),
        ));
    };
    let total: BigUint = (1..=n).map(|k| enumerate::multiset_count(k, d)).sum();
    opts.budget.check(&total)?;
    let ring = Zmod::new(d)?;
    let g = dense::embed(&ring, f.numerator());
    let mut counts = Counts::default();
    for k in 0..n {
        for tuple in enumerate::multisets(k + 1, d) {
            counts.tuples += 1;
            let value = phi_eval(&ring, &g, &tuple);
            if value != 0 {
                let points: Vec<BigInt> = tuple.iter().map(|&a| BigInt::from(a)).collect();
                let mut diag = points.clone();
                diag.resize(n, BigInt::zero());
                let exact = phi_eval(&crate::ring::Integers, f.numerator().coeffs(), &points);
                return Ok(Verdict::non_member(
                    Route::Triangular,
                    Witness::Tuple {
                        order: k,
                        points,
                        value: exact,
                        matrix: bidiagonal(&diag),
                    },
                    counts,
                ));
            }
        }
    }
    Ok(Verdict::member(
        Route::Triangular,
        Certificate::TupleSweep { tuples: counts.tuples },
        counts,
    ))
}

/// Whether `M` lies in the polynomial closure of `M_n^p(Z)`, i.e. `p(M) = 0`.
pub fn in_closure(m: &MatZ, p: &IntPoly) -> Result<bool> {
    let n = p.ensure_monic()?;
    if n != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.dim(),
        });
    }
    Ok(m.eval(p).is_zero())
}

/// Outcome of comparing `{M : p(M) = 0}` with `{M : char_poly(M) = p}` on a box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub p: IntPoly,
    pub entry_bound: i64,
    pub scanned: u64,
    pub annihilated: u64,
    pub with_char_poly: u64,
    /// Matrices in exactly one of the two sets.
    pub violations: Vec<MatZ>,
}

impl ClosureReport {
    pub fn sets_coincide(&self) -> bool {
        self.violations.is_empty() && self.annihilated == self.with_char_poly
    }
}

/// Scans all integer matrices with entries in `[-bound, bound]` and checks
/// that annihilation by the irreducible `p` coincides with having `p` as
/// characteristic polynomial.
pub fn closure_is_exact_for_irreducible(p: &IntPoly, bound: i64, budget: Budget) -> Result<ClosureReport> {
    let n = p.ensure_monic()?;
    if !is_irreducible(p)? {
        return Err(Error::Reducible(p.to_string()));
    }
    if bound < 0 {
        return Err(Error::InvalidArgument("entry bound must be non-negative".into()));
    }
    let width = 2 * bound as u64 + 1;
    let total = budget.check_power(width, n * n)?;
    let mut entries = vec![-bound; n * n];
    let mut report = ClosureReport {
        p: p.clone(),
        entry_bound: bound,
        scanned: 0,
        annihilated: 0,
        with_char_poly: 0,
        violations: Vec::new(),
    };
    for _ in 0..total {
        let m = MatZ::new(n, entries.iter().map(|&e| BigInt::from(e)).collect())?;
        let ann = m.eval(p).is_zero();
        let cp = &m.char_poly() == p;
        report.scanned += 1;
        report.annihilated += u64::from(ann);
        report.with_char_poly += u64::from(cp);
        if ann != cp {
            report.violations.push(m);
        }
        for e in entries.iter_mut() {
            *e += 1;
            if *e <= bound {
                break;
            }
            *e = -bound;
        }
    }
    Ok(report)
}

/// Smallest `u64` view of a denominator, for callers that need the modulus.
pub fn denominator_u64(f: &RatPoly) -> Option<u64> {
    f.denominator().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn rat(c: &[i64], d: i64) -> RatPoly {
        RatPoly::canonicalize(p(c), BigInt::from(d)).unwrap()
    }

    fn opts() -> Options {
        Options::default()
    }

    #[test]
    fn remainder_examples() {
        let f = rat(&[0, -1, 1], 2);
        let v = member_mnp_remainder(&f, &p(&[0, -1, 1])).unwrap();
        assert!(v.member);
        let dec = &v.certificate.as_ref().unwrap().decompositions()[0].clone();
        assert!(dec.r.is_zero());
        assert!(v.verify(&f));

        let v = member_mnp_remainder(&f, &p(&[0, 0, 1])).unwrap();
        assert!(!v.member);
        match v.witness.as_ref().unwrap() {
            Witness::RemainderCoefficient { degree, value, .. } => {
                assert_eq!(*degree, 1);
                assert_eq!(value, &BigRational::new((-1).into(), 2.into()));
            }
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(v.verify(&f));

        let f = RatPoly::from(p(&[3, -1]));
        let v = member_mnp_remainder(&f, &p(&[1, 1, 1])).unwrap();
        let dec = v.certificate.unwrap().decompositions()[0].clone();
        assert!(dec.q.numerator().is_zero());
        assert_eq!(dec.r, p(&[3, -1]));
    }

    #[test]
    fn companion_examples() {
        let f = rat(&[0, -1, 1], 2);
        let v = member_mnp_companion(&f, &p(&[0, 0, 1])).unwrap();
        assert!(!v.member);
        assert!(v.verify(&f));
        let g = p(&[2, -3, 0, 1]);
        let v = member_mnp_companion(&RatPoly::from(g.clone()), &g).unwrap();
        assert!(v.member);
        assert!(v.verify(&RatPoly::from(g)));
    }

    #[test]
    fn divdiff_examples() {
        let f = rat(&[0, -1, 1], 2);
        let v = member_mnp_divdiff(&f, &p(&[1, 1, 1]), &opts()).unwrap();
        assert!(!v.member);
        match v.witness.as_ref().unwrap() {
            Witness::RootSubset {
                order, roots, value, ..
            } => {
                assert_eq!(*order, 0);
                assert_eq!(roots, &vec![1]);
                assert_eq!(value, &vec![BigInt::from(-1), BigInt::from(-2)]);
            }
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(v.verify(&f));

        let f = rat(&[4, 0, 6, 2], 2);
        assert!(f.is_integral());
        let v = member_mnp_divdiff(&f, &p(&[1, 1, 1]), &opts()).unwrap();
        assert!(v.member && v.verify(&f));

        // split case X(X - 1) against the integer tuple test on (0, 1)
        for c in 0..16 {
            let g: Vec<i64> = (0..4).map(|i| (c >> i) & 1).collect();
            let f = rat(&g, 2);
            let v = member_mnp_divdiff(&f, &p(&[0, -1, 1]), &opts()).unwrap();
            let ints = [BigInt::zero(), BigInt::one()];
            let two = BigInt::from(2);
            let t0 = phi_eval(&crate::ring::Integers, f.numerator().coeffs(), &ints[..1]);
            let t1 = phi_eval(&crate::ring::Integers, f.numerator().coeffs(), &ints);
            let split = f.denominator() != &two || (t0.is_multiple_of(&two) && t1.is_multiple_of(&two));
            assert_eq!(v.member, split, "g = {g:?}");
        }
    }

    #[test]
    fn pset_examples() {
        let good = &(&(&p(&[0, 0, 1]) * &p(&[1, -2, 1])) * &p(&[1, 1, 1])).clone();
        let f = RatPoly::canonicalize(good.clone(), 2.into()).unwrap();
        let v = member_mnp_set(&f, &PSet::AllMonic { n: 2 }, &opts()).unwrap();
        assert!(v.member);
        assert_eq!(v.counts.residues, 4);
        assert!(v.verify(&f));

        let bad = &p(&[0, -1, 1]) * &p(&[-2, -1, 1]);
        let f = RatPoly::canonicalize(bad, 2.into()).unwrap();
        let v = member_mn(&f, 2, &opts()).unwrap();
        assert!(!v.member);
        match v.witness.as_ref().unwrap() {
            Witness::Residue { residue, .. } => assert_eq!(residue.coeffs(), &[1, 1, 1]),
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(v.verify(&f));

        let single = member_mnp_set(&f, &PSet::Explicit(vec![p(&[1, 1, 1])]), &opts()).unwrap();
        assert_eq!(single.member, member_mnp_remainder(&f, &p(&[1, 1, 1])).unwrap().member);
    }

    #[test]
    fn bruteforce_examples() {
        let f = rat(&[0, -1, 1], 2);
        assert!(member_mn_bruteforce(&f, 1, &opts()).unwrap().member);
        let v = member_mn_bruteforce(&f, 2, &opts()).unwrap();
        assert!(!v.member);
        assert_eq!(
            v.witness.as_ref().unwrap().matrix(),
            &MatZ::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap()
        );
        let v = member_mn_bruteforce(&RatPoly::from(p(&[5, 0, 3])), 2, &opts()).unwrap();
        assert!(v.member);
        assert_eq!(v.certificate, Some(Certificate::Integral));
    }

    #[test]
    fn triangular_examples() {
        let f = rat(&[0, -1, 1], 2);
        let v = member_tn(&f, 2, &opts()).unwrap();
        assert!(!v.member);
        match v.witness.as_ref().unwrap() {
            Witness::Tuple {
                order, points, value, ..
            } => {
                assert_eq!(*order, 1);
                assert_eq!(points, &vec![BigInt::zero(), BigInt::zero()]);
                assert_eq!(value, &BigInt::from(-1));
            }
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(v.verify(&f));
        assert!(member_tn(&f, 1, &opts()).unwrap().member);
        assert!(member_tn(&RatPoly::from(p(&[1, 2])), 3, &opts()).unwrap().member);
    }

    #[test]
    fn closure_examples() {
        let id = MatZ::identity(2);
        assert!(in_closure(&id, &p(&[0, -1, 1])).unwrap());
        assert_ne!(id.char_poly(), p(&[0, -1, 1]));
        assert!(!in_closure(&id, &p(&[1, 0, 1])).unwrap());
        let q = p(&[3, -1, 0, 1]);
        assert!(in_closure(&companion(&q).unwrap(), &q).unwrap());
        assert!(matches!(
            in_closure(&id, &q),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
        assert!(matches!(
            closure_is_exact_for_irreducible(&p(&[0, -1, 1]), 3, Budget::default()),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&p(&[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&p(&[0, -1, 1])).unwrap());
        assert!(!is_irreducible(&p(&[-6, 11, -6, 1])).unwrap());
        assert!(is_irreducible(&p(&[-2, 0, 0, 1])).unwrap());
        assert!(is_irreducible(&p(&[7, 1])).unwrap());
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1])).is_err());
    }

    #[test]
    fn subset_modes_agree() {
        let all = Options {
            subsets: SubsetMode::All,
            ..Options::default()
        };
        for g in [[1i64, 3, 0, 2, 1], [0, 2, 3, 1, 3], [2, 2, 1, 0, 1]] {
            for q in [[1i64, 1, 0, 1], [0, -2, 1, 1], [2, 0, 0, 1]] {
                let f = rat(&g, 2);
                let a = member_mnp_divdiff(&f, &p(&q), &opts()).unwrap();
                let b = member_mnp_divdiff(&f, &p(&q), &all).unwrap();
                assert_eq!(a.member, b.member);
                assert!(a.verify(&f) && b.verify(&f));
            }
        }
    }
}
