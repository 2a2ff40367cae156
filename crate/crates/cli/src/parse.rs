//! Polynomial expressions in the variable `x`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | '(' expr ')'
//! ```
//!
//! Division is only allowed by non-zero constants, which covers rational
//! literals `a/b` and whole-expression denominators `(...)/k`.

use std::fmt;

use intmat_core::{IntPoly, RatPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exponents above this are rejected rather than expanded.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn add(a: &Poly, b: &Poly, sign: i32) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        if sign < 0 {
            out[i] -= c;
        } else {
            out[i] += c;
        }
    }
    trim(out)
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error(start, "expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits parse"))
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = add(&acc, &rhs, if op == b'-' { -1 } else { 1 });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = mul(&acc, &rhs);
            } else {
                match rhs.as_slice() {
                    [] => return self.error(at, "division by zero"),
                    [c] => {
                        let inv = c.recip();
                        acc = acc.iter().map(|a| a * &inv).collect();
                    }
                    _ => return self.error(at, "division by a non-constant polynomial"),
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.into_iter().map(|c| -c).collect())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let e = self.integer()?;
        let e: u32 = match u32::try_from(&e) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return self.error(at, format!("exponent larger than {MAX_EXPONENT}")),
        };
        let mut out = vec![BigRational::one()];
        for _ in 0..e {
            out = mul(&out, &base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'x' | b'X') => {
                self.pos += 1;
                Ok(vec![BigRational::zero(), BigRational::one()])
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.error(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(trim(vec![BigRational::from(self.integer()?)])),
            Some(c) => self.error(self.pos, format!("unexpected '{}'", c as char)),
            None => self.error(self.pos, "unexpected end of input"),
        }
    }
}

/// Parses `text` into its canonical `g/d` form.
pub fn parse_poly(text: &str) -> Result<RatPoly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    if !text.is_ascii() {
        let pos = text.char_indices().find(|(_, c)| !c.is_ascii()).map_or(0, |(i, _)| i);
        return p.error(pos, "non-ASCII character");
    }
    let coeffs = p.expr()?;
    if let Some(c) = p.peek() {
        return p.error(p.pos, format!("unexpected '{}'", c as char));
    }
    Ok(RatPoly::from_rationals(&coeffs))
}

/// Parses a polynomial with integer coefficients.
pub fn parse_int_poly(text: &str) -> Result<IntPoly, ParseError> {
    let f = parse_poly(text)?;
    if !f.is_integral() {
        return Err(ParseError {
            position: 0,
            message: format!("expected integer coefficients, got {f}"),
        });
    }
    Ok(f.numerator().clone())
}

/// Parses a monic polynomial of degree at least one.
pub fn parse_monic(text: &str) -> Result<IntPoly, ParseError> {
    let p = parse_int_poly(text)?;
    match p.ensure_monic() {
        Ok(_) => Ok(p),
        Err(_) => Err(ParseError {
            position: 0,
            message: format!("expected a monic polynomial of degree at least 1, got {p}"),
        }),
    }
}

/// Parses a rational number `a`, `-a` or `a/b`.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let f = parse_poly(text)?;
    match f.degree() {
        None | Some(0) => Ok(f.to_rationals().into_iter().next().unwrap_or_else(BigRational::zero)),
        _ => Err(ParseError {
            position: 0,
            message: format!("expected a number, got {f}"),
        }),
    }
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(text: &str) -> Result<Vec<BigRational>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        out.push(parse_rational(part).map_err(|e| ParseError {
            position: e.position + offset,
            message: e.message,
        })?);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Parses a matrix written as `[[a, b], [c, d]]` with integer entries.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<BigInt>>, ParseError> {
    let err = |position: usize, message: &str| ParseError {
        position,
        message: message.into(),
    };
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err(0, "expected a matrix like [[1, 0], [0, 1]]"))?;
    let mut rows = Vec::new();
    let mut rest = inner;
    loop {
        rest = rest.trim_start_matches([',', ' ', '\t', '\n']);
        if rest.is_empty() {
            break;
        }
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| err(text.len() - rest.len(), "expected '['"))?;
        let end = body
            .find(']')
            .ok_or_else(|| err(text.len() - body.len(), "expected ']'"))?;
        let row = body[..end]
            .split(',')
            .map(|s| {
                let s = s.trim();
                s.parse::<BigInt>()
                    .map_err(|_| err(text.len() - body.len(), "expected an integer entry"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
        rest = &body[end + 1..];
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(err(0, "matrix must be square and non-empty"));
    }
    Ok(rows)
}
