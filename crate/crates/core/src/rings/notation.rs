//! Plain-text polynomial notation.
//!
//! Accepts the usual hand-written form, e.g. `-(y-1)yw(145yw+7)` or
//! `594 - 290 y + w (-483 + 126 y)`: integers, single-letter variables with
//! optional digit suffixes (`y0`, `y1`), `^` with a nonnegative integer
//! exponent, `+`, `-`, explicit `*` or juxtaposition, and parentheses.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sparse polynomial: exponent vector (one slot per variable) to coefficient.
pub type SparsePoly = BTreeMap<Vec<u32>, BigInt>;

/// Conventional variable names for the `k` Y-variables.
pub fn default_names(k: usize) -> Vec<String> {
    match k {
        1 => vec!["y".into()],
        2 => vec!["y".into(), "z".into()],
        3 => vec!["y".into(), "z".into(), "w".into()],
        _ => (0..k).map(|i| format!("y{i}")).collect(),
    }
}

/// Renders an exponent vector as a monomial, e.g. `[2, 1, 0] -> "y^2z"`, zero -> `"1"`.
pub fn monomial_string(exps: &[u64], names: &[String]) -> String {
    let mut s = String::new();
    for (e, name) in exps.iter().zip(names) {
        match e {
            0 => {}
            1 => s.push_str(name),
            _ => s.push_str(&format!("{name}^{e}")),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// Renders a dense coefficient list (index order) as `3 - y^2 + 2yz`.
pub fn render_terms(terms: impl IntoIterator<Item = (Vec<u64>, BigInt)>, names: &[String]) -> String {
    let mut out = String::new();
    for (exps, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mono = monomial_string(&exps, names);
        let mag = c.abs();
        let body = match (mono.as_str(), mag.is_one()) {
            ("1", _) => mag.to_string(),
            (_, true) => mono,
            _ => format!("{mag}{mono}"),
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str, vars: &[&str]) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("digits")));
            }
            c if c.is_alphabetic() => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let ident: String = chars[start..i].iter().collect::<String>().to_lowercase();
                let idx = vars
                    .iter()
                    .position(|v| v.eq_ignore_ascii_case(&ident))
                    .ok_or_else(|| Error::Parse(format!("unknown variable {ident:?}")))?;
                out.push(Tok::Var(idx));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = SparsePoly::new();
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let term = self.term()?;
            for (m, c) in term {
                let slot = acc.entry(m).or_insert_with(BigInt::zero);
                if sign > 0 {
                    *slot += c;
                } else {
                    *slot -= c;
                }
            }
            match self.peek() {
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                _ => break,
            }
            self.pos += 1;
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(acc)
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Open) => {}
                _ => break,
            }
            let rhs = self.factor()?;
            acc = poly_mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SparsePoly> {
        let base = match self.next() {
            Some(Tok::Num(n)) => constant(self.nvars, n),
            Some(Tok::Var(v)) => {
                let mut e = vec![0u32; self.nvars];
                e[v] = 1;
                SparsePoly::from([(e, BigInt::one())])
            }
            Some(Tok::Open) => {
                let inner = self.expr()?;
                if self.next() != Some(Tok::Close) {
                    return Err(Error::Parse("missing ')'".into()));
                }
                inner
            }
            // a leading sign inside a product, e.g. "2*-y"
            Some(Tok::Minus) => {
                let f = self.factor()?;
                return Ok(f.into_iter().map(|(m, c)| (m, -c)).collect());
            }
            other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
        };
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Num(e)) = self.next() else {
                return Err(Error::Parse("exponent must be a nonnegative integer".into()));
            };
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::Parse("exponent too large".into()))?;
            let mut acc = constant(self.nvars, BigInt::one());
            for _ in 0..e {
                acc = poly_mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }
}

fn constant(nvars: usize, c: BigInt) -> SparsePoly {
    if c.is_zero() {
        SparsePoly::new()
    } else {
        SparsePoly::from([(vec![0u32; nvars], c)])
    }
}

fn poly_mul(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let mut out = SparsePoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Parses a polynomial over the given variable names (matched case-insensitively).
pub fn parse_polynomial(src: &str, vars: &[&str]) -> Result<SparsePoly> {
    let toks = tokenize(src, vars)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser { toks, pos: 0, nvars: vars.len() };
    let poly = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {}",
            parser.pos
        )));
    }
    Ok(poly)
}
