//! Rendering of verdicts as JSON and as text.
//!
//! Numbers are written as decimal strings (`"3"`, `"-1/2"`) so that
//! arbitrary-precision values survive any JSON reader. Polynomials are
//! coefficient arrays, lowest degree first.

use intmat_core::{Certificate, ClosureReport, Counts, IntPoly, MatZ, ModPoly, RatPoly, Verdict, Witness};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

pub fn int(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

pub fn rational(v: &BigRational) -> Value {
    Value::String(v.to_string())
}

pub fn int_poly(p: &IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(int).collect())
}

pub fn rat_poly(f: &RatPoly) -> Value {
    Value::Array(f.to_rationals().iter().map(rational).collect())
}

pub fn mod_poly(p: &ModPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn matrix(m: &MatZ) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(int).collect()))
            .collect(),
    )
}

pub fn counts(c: &Counts) -> Value {
    json!({
        "residues": c.residues,
        "matrices": c.matrices,
        "subsets": c.subsets,
        "tuples": c.tuples,
        "polynomials": c.polynomials,
    })
}

pub fn certificate(f: &RatPoly, c: &Certificate) -> Value {
    let mut out = Map::new();
    let (kind, q, r) = match c {
        Certificate::Integral => ("integral", json!([]), rat_poly(f)),
        Certificate::Decomposition(d) => {
            out.insert("p".into(), int_poly(&d.p));
            ("decomposition", rat_poly(&d.q), int_poly(&d.r))
        }
        Certificate::Decompositions(list) => {
            let items: Vec<Value> = list
                .iter()
                .map(|d| json!({"p": int_poly(&d.p), "q": rat_poly(&d.q), "r": int_poly(&d.r)}))
                .collect();
            out.insert("decompositions".into(), Value::Array(items));
            ("decompositions", Value::Null, Value::Null)
        }
        Certificate::IntegralImage { matrix: m, image } => {
            out.insert("matrix".into(), matrix(m));
            out.insert("image".into(), matrix(image));
            ("integral-image", Value::Null, Value::Null)
        }
        Certificate::DividedDifferences { p, quotients } => {
            out.insert("p".into(), int_poly(p));
            let items: Vec<Value> = quotients
                .iter()
                .map(|q| {
                    json!({
                        "order": q.order,
                        "roots": q.roots,
                        "quotient": q.quotient.iter().map(int).collect::<Vec<_>>(),
                    })
                })
                .collect();
            out.insert("quotients".into(), Value::Array(items));
            ("divided-differences", Value::Null, Value::Null)
        }
        Certificate::Sweep { matrices } => {
            out.insert("matrices".into(), json!(matrices));
            ("sweep", Value::Null, Value::Null)
        }
        Certificate::TupleSweep { tuples } => {
            out.insert("tuples".into(), json!(tuples));
            ("tuple-sweep", Value::Null, Value::Null)
        }
    };
    out.insert("kind".into(), json!(kind));
    out.insert("q".into(), q);
    out.insert("r".into(), r);
    Value::Object(out)
}

pub fn witness(w: &Witness) -> Value {
    let value = match w {
        Witness::Matrix {
            matrix: m,
            entry,
            value,
        } => json!({
            "matrix": matrix(m),
            "entry": [entry.0, entry.1],
            "image_entry": rational(value),
        }),
        Witness::RemainderCoefficient {
            p,
            degree,
            value,
            matrix: m,
        } => json!({
            "p": int_poly(p),
            "degree": degree,
            "coefficient": rational(value),
            "matrix": matrix(m),
        }),
        Witness::Residue { residue, p, matrix: m } => json!({
            "residue": mod_poly(residue),
            "modulus": residue.modulus(),
            "p": int_poly(p),
            "matrix": matrix(m),
        }),
        Witness::RootSubset {
            p,
            order,
            roots,
            value,
            matrix: m,
        } => json!({
            "p": int_poly(p),
            "order": order,
            "roots": roots,
            "value": value.iter().map(int).collect::<Vec<_>>(),
            "matrix": matrix(m),
        }),
        Witness::Tuple {
            order,
            points,
            value,
            matrix: m,
        } => json!({
            "order": order,
            "points": points.iter().map(int).collect::<Vec<_>>(),
            "value": int(value),
            "matrix": matrix(m),
        }),
    };
    json!({"kind": w.kind(), "value": value})
}

/// The stable report object; `extra` adds command-specific keys.
pub fn verdict_report(command: &str, f: &RatPoly, v: &Verdict, elapsed_ms: u128, extra: Map<String, Value>) -> Value {
    let mut out = Map::new();
    out.insert("command".into(), json!(command));
    out.insert("member".into(), json!(v.member));
    out.insert("route".into(), json!(v.route.as_str()));
    out.insert("exact".into(), json!(v.exact));
    out.insert(
        "f".into(),
        json!({"text": f.to_string(), "numerator": int_poly(f.numerator()), "denominator": int(f.denominator())}),
    );
    out.insert(
        "certificate".into(),
        v.certificate.as_ref().map_or(Value::Null, |c| certificate(f, c)),
    );
    out.insert("witness".into(), v.witness.as_ref().map_or(Value::Null, witness));
    out.insert("counts".into(), counts(&v.counts));
    out.insert("elapsed_ms".into(), json!(elapsed_ms as u64));
    out.extend(extra);
    Value::Object(out)
}

/// Report for commands that compute a value rather than a verdict.
pub fn value_report(command: &str, member: Option<bool>, result: Value, elapsed_ms: u128) -> Value {
    json!({
        "command": command,
        "member": member,
        "route": Value::Null,
        "certificate": Value::Null,
        "witness": Value::Null,
        "counts": counts(&Counts::default()),
        "elapsed_ms": elapsed_ms as u64,
        "result": result,
    })
}

pub fn closure(report: &ClosureReport) -> Value {
    json!({
        "p": int_poly(&report.p),
        "entry_bound": report.entry_bound,
        "scanned": report.scanned,
        "annihilated": report.annihilated,
        "with_char_poly": report.with_char_poly,
        "violations": report.violations.iter().map(matrix).collect::<Vec<_>>(),
    })
}

fn describe_certificate(f: &RatPoly, c: &Certificate) -> Vec<String> {
    match c {
        Certificate::Integral => vec![format!("f = {f} has integer coefficients")],
        Certificate::Decomposition(d) => vec![format!("f = r + p*q with p = {}, q = {}, r = {}", d.p, d.q, d.r)],
        Certificate::Decompositions(list) => {
            let mut lines = vec![format!("{} residue classes, f = r + p*q for each:", list.len())];
            lines.extend(list.iter().map(|d| format!("  p = {}: q = {}, r = {}", d.p, d.q, d.r)));
            lines
        }
        Certificate::IntegralImage { matrix, image } => {
            vec![format!("f({matrix}) = {image}")]
        }
        Certificate::DividedDifferences { p, quotients } => {
            let mut lines = vec![format!("divided differences at the roots of {p} lie in d*A_p:")];
            lines.extend(quotients.iter().map(|q| {
                let roots: Vec<String> = q.roots.iter().map(|i| format!("x{i}")).collect();
                format!(
                    "  order {} at ({}): d * {:?}",
                    q.order,
                    roots.join(", "),
                    q.quotient.iter().map(ToString::to_string).collect::<Vec<_>>()
                )
            }));
            lines
        }
        Certificate::Sweep { matrices } => vec![format!("all {matrices} candidate matrices annihilated by g mod d")],
        Certificate::TupleSweep { tuples } => vec![format!("all {tuples} tuples have divided differences in dZ")],
    }
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Matrix { matrix, entry, value } => {
            format!("M = {matrix}, f(M) has entry ({}, {}) = {value}", entry.0, entry.1)
        }
        Witness::RemainderCoefficient {
            p,
            degree,
            value,
            matrix,
        } => {
            format!("f mod {p} has coefficient {value} at x^{degree}; M = {matrix}")
        }
        Witness::Residue { residue, p, matrix } => {
            format!("g mod d is not divisible by {residue}; lift p = {p}, M = {matrix}")
        }
        Witness::RootSubset {
            p,
            order,
            roots,
            value,
            matrix,
        } => {
            let roots: Vec<String> = roots.iter().map(|i| format!("x{i}")).collect();
            let value: Vec<String> = value.iter().map(ToString::to_string).collect();
            format!(
                "order {order} divided difference at ({}) in A_{{{p}}} is [{}], not in d*A_p; M = {matrix}",
                roots.join(", "),
                value.join(", ")
            )
        }
        Witness::Tuple {
            order,
            points,
            value,
            matrix,
        } => {
            let points: Vec<String> = points.iter().map(ToString::to_string).collect();
            format!(
                "order {order} divided difference of g at ({}) is {value}; M = {matrix}",
                points.join(", ")
            )
        }
    }
}

pub fn verdict_text(command: &str, f: &RatPoly, v: &Verdict, elapsed_ms: u128) -> String {
    let mut lines = vec![
        format!("{command}: f = {f}"),
        format!(
            "member: {}{}",
            if v.member { "yes" } else { "no" },
            if v.member && !v.exact {
                " (sampled, necessary condition only)"
            } else {
                ""
            }
        ),
        format!("route: {}", v.route),
    ];
    if let Some(c) = &v.certificate {
        lines.push("certificate:".into());
        lines.extend(describe_certificate(f, c).into_iter().map(|l| format!("  {l}")));
    }
    if let Some(w) = &v.witness {
        lines.push(format!("witness ({}): {}", w.kind(), describe_witness(w)));
    }
    let c = &v.counts;
    lines.push(format!(
        "counts: residues {}, matrices {}, subsets {}, tuples {}, polynomials {}",
        c.residues, c.matrices, c.subsets, c.tuples, c.polynomials
    ));
    lines.push(format!("elapsed: {elapsed_ms} ms"));
    lines.join("\n") + "\n"
}
