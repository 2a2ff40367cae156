//! Command definitions and dispatch.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use intmat_core::divdiff::phi_eval;
use intmat_core::enumerate::{self, Budget, BUDGET_ENV};
use intmat_core::{
    closure_is_exact_for_irreducible, in_closure, member_mn, member_mn_bruteforce, member_mn_irr_sampled,
    member_mnp_bruteforce, member_mnp_companion, member_mnp_divdiff, member_mnp_remainder, member_mnp_set, member_tn,
    newton_expand, IntPoly, MatMod, MatZ, MatrixSpace, Options, PSet, RatPoly, Rationals, SubsetMode, Verdict,
};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Map, Value};

use crate::parse::{parse_matrix, parse_monic, parse_poly, parse_rational_list};
use crate::report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "intmat", version, about = "Integer-valued polynomials on integer matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for exhaustive sweeps (default: available cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Maximum number of candidates an exhaustive sweep may visit.
    #[arg(long, global = true, env = BUDGET_ENV)]
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MnRoute {
    /// Residue divisibility, cross-checked by brute force when it fits the budget.
    Auto,
    Residues,
    Bruteforce,
    /// Irreducible p in a coefficient box; member verdicts are only necessary.
    IrrSampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MnpRoute {
    Remainder,
    Companion,
    Divdiff,
    Bruteforce,
    /// Run all four and fail if they disagree.
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Is f integer-valued on all of M_n(Z)?
    CheckMn {
        /// The polynomial, e.g. "(x^2 - x)/2".
        #[arg(long)]
        f: String,
        /// Matrix size.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MnRoute::Auto)]
        route: MnRoute,
        /// Coefficient bound for the irreducible sample.
        #[arg(long, default_value_t = 4)]
        d_box: i64,
    },
    /// Is f integer-valued on matrices with characteristic polynomial p?
    ///
    /// Several --p give the intersection over the set; --all-split uses
    /// every totally split p of degree --n modulo the denominator.
    CheckMnp {
        /// The polynomial, e.g. "(x^2 - x)/2".
        #[arg(long)]
        f: String,
        /// Monic characteristic polynomial; repeatable.
        #[arg(long)]
        p: Vec<String>,
        #[arg(long, value_enum, default_value_t = MnpRoute::Remainder)]
        route: MnpRoute,
        /// Check every root subset instead of prefixes (divdiff route).
        #[arg(long)]
        all_subsets: bool,
        /// Every totally split p of degree --n modulo the denominator.
        #[arg(long, requires = "n")]
        all_split: bool,
        /// Degree for --all-split.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Is f integer-valued on upper triangular n x n integer matrices?
    CheckTn {
        /// The polynomial, e.g. "(x^2 - x)/2".
        #[arg(long)]
        f: String,
        /// Matrix size.
        #[arg(long)]
        n: usize,
    },
    /// Closure membership p(M) = 0, or a box scan comparing it with char_poly(M) = p.
    CheckClosure {
        /// Monic polynomial.
        #[arg(long)]
        p: String,
        /// Square integer matrix, e.g. "[[0, 1], [1, 1]]".
        #[arg(long, conflicts_with = "entry_box")]
        matrix: Option<String>,
        /// Scan all 2x2 matrices with entries in [-B, B].
        #[arg(long)]
        entry_box: Option<i64>,
    },
    /// k-th divided difference of g at k + 1 points.
    Divdiff {
        /// The polynomial; rational coefficients allowed.
        #[arg(long)]
        g: String,
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Newton coefficients of g for a node sequence.
    Newton {
        /// The polynomial; rational coefficients allowed.
        #[arg(long)]
        g: String,
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        nodes: String,
    },
    /// All polynomials of degree at most --degree over Z/dZ annihilating M mod d.
    Nullideal {
        /// Square integer matrix, e.g. "[[0, 1], [1, 1]]".
        #[arg(long)]
        matrix: String,
        /// Modulus.
        #[arg(long)]
        d: u64,
        /// Default 2n - 1.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Randomized agreement check between all decision routes.
    Crosscheck {
        /// RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random f.
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Matrix size.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Largest denominator drawn.
        #[arg(long, default_value_t = 4)]
        d_box: i64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckMn { .. } => "check-mn",
            Command::CheckMnp { .. } => "check-mnp",
            Command::CheckTn { .. } => "check-tn",
            Command::CheckClosure { .. } => "check-closure",
            Command::Divdiff { .. } => "divdiff",
            Command::Newton { .. } => "newton",
            Command::Nullideal { .. } => "nullideal",
            Command::Crosscheck { .. } => "crosscheck",
        }
    }
}

/// Exit status and rendered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_MEMBER: i32 = 0;
pub const EXIT_NON_MEMBER: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

type CmdResult = Result<(i32, Value, String), String>;

fn member_code(member: bool) -> i32 {
    if member {
        EXIT_MEMBER
    } else {
        EXIT_NON_MEMBER
    }
}

fn poly_arg(name: &str, text: &str) -> Result<RatPoly, String> {
    parse_poly(text).map_err(|e| format!("--{name}: {e}"))
}

fn monic_arg(name: &str, text: &str) -> Result<IntPoly, String> {
    parse_monic(text).map_err(|e| format!("--{name}: {e}"))
}

fn matrix_arg(text: &str) -> Result<MatZ, String> {
    let rows = parse_matrix(text).map_err(|e| format!("--matrix: {e}"))?;
    let n = rows.len();
    MatZ::new(n, rows.into_iter().flatten().collect()).map_err(|e| e.to_string())
}

fn verdict_output(
    command: &str,
    f: &RatPoly,
    v: &Verdict,
    start: Instant,
    extra: Map<String, Value>,
) -> (i32, Value, String) {
    let ms = start.elapsed().as_millis();
    let mut text = report::verdict_text(command, f, v, ms);
    if let Some(Value::Array(checks)) = extra.get("cross_check") {
        for c in checks {
            text.push_str(&format!(
                "cross-check {}: member {}\n",
                c["route"].as_str().unwrap_or("?"),
                c["member"]
            ));
        }
    }
    (
        member_code(v.member),
        report::verdict_report(command, f, v, ms, extra),
        text,
    )
}

fn cross_check(verdicts: &[&Verdict]) -> Result<Map<String, Value>, String> {
    let first = verdicts[0].member;
    if verdicts.iter().any(|v| v.member != first) {
        let routes: Vec<String> = verdicts.iter().map(|v| format!("{}={}", v.route, v.member)).collect();
        return Err(format!("decision routes disagree: {}", routes.join(", ")));
    }
    let checks: Vec<Value> = verdicts
        .iter()
        .map(|v| json!({"route": v.route.as_str(), "member": v.member}))
        .collect();
    let mut extra = Map::new();
    extra.insert("cross_check".into(), Value::Array(checks));
    Ok(extra)
}

fn check_mn(f: &RatPoly, n: usize, route: MnRoute, d_box: i64, opts: &Options, start: Instant) -> CmdResult {
    let e = |e: intmat_core::Error| e.to_string();
    match route {
        MnRoute::Residues => Ok(verdict_output(
            "check-mn",
            f,
            &member_mn(f, n, opts).map_err(e)?,
            start,
            Map::new(),
        )),
        MnRoute::Bruteforce => Ok(verdict_output(
            "check-mn",
            f,
            &member_mn_bruteforce(f, n, opts).map_err(e)?,
            start,
            Map::new(),
        )),
        MnRoute::IrrSampled => Ok(verdict_output(
            "check-mn",
            f,
            &member_mn_irr_sampled(f, n, d_box, opts).map_err(e)?,
            start,
            Map::new(),
        )),
        MnRoute::Auto => {
            let residues = member_mn(f, n, opts).map_err(e)?;
            let fits = match u64::try_from(f.denominator()) {
                Ok(1) => true,
                Ok(d) => MatrixSpace::new(n, d, opts.budget).is_ok(),
                Err(_) => false,
            };
            if !fits {
                return Ok(verdict_output("check-mn", f, &residues, start, Map::new()));
            }
            let brute = member_mn_bruteforce(f, n, opts).map_err(e)?;
            let extra = cross_check(&[&residues, &brute])?;
            // members carry the residue decompositions, non-members the sweep's matrix
            let primary = if residues.member { &residues } else { &brute };
            Ok(verdict_output("check-mn", f, primary, start, extra))
        }
    }
}

fn check_mnp(
    f: &RatPoly,
    ps: &[IntPoly],
    route: MnpRoute,
    all_split: Option<usize>,
    opts: &Options,
    start: Instant,
) -> CmdResult {
    let e = |e: intmat_core::Error| e.to_string();
    if let Some(n) = all_split {
        let v = member_mnp_set(f, &PSet::AllSplit { n }, opts).map_err(e)?;
        return Ok(verdict_output("check-mnp", f, &v, start, Map::new()));
    }
    if ps.is_empty() {
        return Err("check-mnp needs --p or --all-split".into());
    }
    if ps.len() > 1 {
        let v = member_mnp_set(f, &PSet::Explicit(ps.to_vec()), opts).map_err(e)?;
        return Ok(verdict_output("check-mnp", f, &v, start, Map::new()));
    }
    let p = &ps[0];
    let run = |r: MnpRoute| -> Result<Verdict, String> {
        match r {
            MnpRoute::Remainder | MnpRoute::All => member_mnp_remainder(f, p),
            MnpRoute::Companion => member_mnp_companion(f, p),
            MnpRoute::Divdiff => member_mnp_divdiff(f, p, opts),
            MnpRoute::Bruteforce => member_mnp_bruteforce(f, p, opts),
        }
        .map_err(e)
    };
    if route != MnpRoute::All {
        return Ok(verdict_output("check-mnp", f, &run(route)?, start, Map::new()));
    }
    let all: Vec<Verdict> = [
        MnpRoute::Remainder,
        MnpRoute::Companion,
        MnpRoute::Divdiff,
        MnpRoute::Bruteforce,
    ]
    .into_iter()
    .map(run)
    .collect::<Result<_, _>>()?;
    let extra = cross_check(&all.iter().collect::<Vec<_>>())?;
    Ok(verdict_output("check-mnp", f, &all[0], start, extra))
}

fn crosscheck(seed: u64, cases: usize, n: usize, d_box: i64, opts: &Options, start: Instant) -> CmdResult {
    if n == 0 || d_box < 2 {
        return Err("crosscheck needs --n >= 1 and --d-box >= 2".into());
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut disagreements = Vec::new();
    let mut members = 0u64;
    let mut global_checks = 0u64;
    for _ in 0..cases {
        let d = rng.gen_range(2..=d_box);
        let deg = rng.gen_range(0..=2 * n + 2);
        let g: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..d)).collect();
        let f = RatPoly::canonicalize(IntPoly::from_i64s(&g), BigInt::from(d)).map_err(|e| e.to_string())?;
        let mut pc: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        pc.push(1);
        let p = IntPoly::from_i64s(&pc);
        let verdicts = [
            member_mnp_remainder(&f, &p),
            member_mnp_companion(&f, &p),
            member_mnp_divdiff(&f, &p, opts),
            member_mnp_bruteforce(&f, &p, opts),
        ]
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
        for v in &verdicts {
            if !v.verify(&f) {
                disagreements.push(json!({"f": f.to_string(), "p": p.to_string(), "problem": format!("{} evidence rejected", v.route)}));
            }
        }
        if verdicts.iter().any(|v| v.member != verdicts[0].member) {
            let routes: Vec<Value> = verdicts
                .iter()
                .map(|v| json!({"route": v.route.as_str(), "member": v.member}))
                .collect();
            disagreements.push(json!({"f": f.to_string(), "p": p.to_string(), "routes": routes}));
        }
        members += u64::from(verdicts[0].member);
        if let (Ok(a), Ok(b)) = (member_mn(&f, n, opts), member_mn_bruteforce(&f, n, opts)) {
            global_checks += 1;
            if a.member != b.member {
                disagreements.push(json!({"f": f.to_string(), "n": n, "routes": [
                    {"route": a.route.as_str(), "member": a.member},
                    {"route": b.route.as_str(), "member": b.member},
                ]}));
            }
        }
        let tn = member_tn(&f, n, opts).map_err(|e| e.to_string())?;
        let split = member_mnp_set(&f, &PSet::AllSplit { n }, opts).map_err(|e| e.to_string())?;
        if tn.member != split.member {
            disagreements.push(json!({"f": f.to_string(), "n": n, "routes": [
                {"route": tn.route.as_str(), "member": tn.member},
                {"route": "all-split", "member": split.member},
            ]}));
        }
    }
    let ok = disagreements.is_empty();
    let text = format!(
        "crosscheck: seed {seed}, {cases} cases ({members} members for random p), {global_checks} global checks, {} disagreements\n",
        disagreements.len()
    );
    let result = json!({
        "seed": seed,
        "cases": cases,
        "members": members,
        "global_checks": global_checks,
        "disagreements": disagreements,
    });
    let value = report::value_report("crosscheck", Some(ok), result, start.elapsed().as_millis());
    Ok((member_code(ok), value, text))
}

fn dispatch(command: &Command, opts: &Options) -> CmdResult {
    let start = Instant::now();
    let e = |e: intmat_core::Error| e.to_string();
    match command {
        Command::CheckMn { f, n, route, d_box } => check_mn(&poly_arg("f", f)?, *n, *route, *d_box, opts, start),
        Command::CheckMnp {
            f,
            p,
            route,
            all_subsets,
            all_split,
            n,
        } => {
            let f = poly_arg("f", f)?;
            let ps = p.iter().map(|t| monic_arg("p", t)).collect::<Result<Vec<_>, _>>()?;
            let opts = Options {
                subsets: if *all_subsets {
                    SubsetMode::All
                } else {
                    SubsetMode::Prefixes
                },
                ..*opts
            };
            check_mnp(&f, &ps, *route, if *all_split { *n } else { None }, &opts, start)
        }
        Command::CheckTn { f, n } => {
            let f = poly_arg("f", f)?;
            let v = member_tn(&f, *n, opts).map_err(e)?;
            Ok(verdict_output("check-tn", &f, &v, start, Map::new()))
        }
        Command::CheckClosure { p, matrix, entry_box } => {
            let p = monic_arg("p", p)?;
            match (matrix, entry_box) {
                (Some(m), _) => {
                    let m = matrix_arg(m)?;
                    let inside = in_closure(&m, &p).map_err(e)?;
                    let char_poly = m.char_poly();
                    let result = json!({
                        "p": report::int_poly(&p),
                        "matrix": report::matrix(&m),
                        "p_of_matrix": report::matrix(&m.eval(&p)),
                        "char_poly": report::int_poly(&char_poly),
                        "in_closure": inside,
                        "char_poly_equals_p": char_poly == p,
                    });
                    let text = format!(
                        "p({m}) = {}\nin closure: {}\ncharacteristic polynomial: {char_poly}{}\n",
                        m.eval(&p),
                        if inside { "yes" } else { "no" },
                        if char_poly == p { " (equals p)" } else { "" }
                    );
                    let value =
                        report::value_report("check-closure", Some(inside), result, start.elapsed().as_millis());
                    Ok((member_code(inside), value, text))
                }
                (None, Some(b)) => {
                    let rep = closure_is_exact_for_irreducible(&p, *b, opts.budget).map_err(e)?;
                    let ok = rep.sets_coincide();
                    let text = format!(
                        "p = {p}, entries in [-{b}, {b}]: scanned {}, p(M) = 0 for {}, char_poly(M) = p for {}, violations {}\n",
                        rep.scanned,
                        rep.annihilated,
                        rep.with_char_poly,
                        rep.violations.len()
                    );
                    let value = report::value_report(
                        "check-closure",
                        Some(ok),
                        report::closure(&rep),
                        start.elapsed().as_millis(),
                    );
                    Ok((member_code(ok), value, text))
                }
                (None, None) => Err("check-closure needs --matrix or --entry-box".into()),
            }
        }
        Command::Divdiff { g, points } => {
            let g = poly_arg("g", g)?;
            let pts = parse_rational_list(points).map_err(|e| format!("--points: {e}"))?;
            let value = phi_eval(&Rationals, &g.to_rationals(), &pts);
            let result = json!({"order": pts.len() - 1, "value": report::rational(&value)});
            let text = format!("divided difference of order {} of {g}: {value}\n", pts.len() - 1);
            Ok((
                0,
                report::value_report("divdiff", None, result, start.elapsed().as_millis()),
                text,
            ))
        }
        Command::Newton { g, nodes } => {
            let g = poly_arg("g", g)?;
            let nodes = parse_rational_list(nodes).map_err(|e| format!("--nodes: {e}"))?;
            let exp = newton_expand(&Rationals, &g.to_rationals(), &nodes).map_err(e)?;
            let coeffs: Vec<Value> = exp.coefficients.iter().map(report::rational).collect();
            let shown: Vec<String> = exp.coefficients.iter().map(ToString::to_string).collect();
            let text = format!("Newton coefficients of {g}: [{}]\n", shown.join(", "));
            let result =
                json!({"nodes": nodes.iter().map(report::rational).collect::<Vec<_>>(), "coefficients": coeffs});
            Ok((
                0,
                report::value_report("newton", None, result, start.elapsed().as_millis()),
                text,
            ))
        }
        Command::Nullideal { matrix, d, degree } => {
            let m = matrix_arg(matrix)?;
            let bound = degree.unwrap_or(2 * m.dim() - 1);
            let mm: MatMod = m.reduce_mod(*d).map_err(e)?;
            let found = enumerate::null_ideal_scan(&mm, bound, opts.budget).map_err(e)?;
            let mut text = format!(
                "{} polynomials of degree <= {bound} over Z/{d} annihilate {m}:\n",
                found.len()
            );
            for p in &found {
                text.push_str(&format!("  {p}\n"));
            }
            let result = json!({
                "modulus": d,
                "degree_bound": bound,
                "count": found.len(),
                "polynomials": found.iter().map(report::mod_poly).collect::<Vec<_>>(),
            });
            Ok((
                0,
                report::value_report("nullideal", None, result, start.elapsed().as_millis()),
                text,
            ))
        }
        Command::Crosscheck { seed, cases, n, d_box } => crosscheck(*seed, *cases, *n, *d_box, opts, start),
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let opts = Options {
        budget: cli.global.budget.map(Budget).unwrap_or_default(),
        jobs: cli
            .global
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1),
        ..Options::default()
    };
    match dispatch(&cli.command, &opts) {
        Ok((code, value, text)) => Outcome {
            code,
            stdout: match cli.global.format {
                Format::Json => format!("{value}\n"),
                Format::Text => text,
            },
            stderr: String::new(),
        },
        Err(msg) => Outcome {
            code: EXIT_ERROR,
            stdout: match cli.global.format {
                Format::Json => format!("{}\n", json!({"command": cli.command.name(), "error": msg})),
                Format::Text => String::new(),
            },
            stderr: format!("error: {msg}\n"),
        },
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            Outcome {
                code,
                stdout: if e.use_stderr() { String::new() } else { e.to_string() },
                stderr: if e.use_stderr() { e.to_string() } else { String::new() },
            }
        }
    }
}
