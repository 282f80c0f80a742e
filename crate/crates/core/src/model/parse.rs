//! Plain-text variety files.
//!
//! ```text
//! # Fermat cubic threefold
//! n=4
//! x0^3 + x1^3 + x2^3 - x3^3 - x4^3
//! ```
//!
//! One form per line; a line may also be written as an equation `lhs = rhs`,
//! meaning `lhs - rhs`. Monomials are products of `x<i>` or `x<i>^<k>` joined
//! by `*` or juxtaposition, with an optional leading integer coefficient.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::form::Form;
use super::variety::CompleteIntersection;
use crate::error::{Error, Result};

/// Upper limit on the ambient dimension accepted from text input.
pub const MAX_AMBIENT_DIM: usize = 256;
/// Upper limit on a single exponent accepted from text input.
pub const MAX_EXPONENT: u32 = 255;

pub fn parse_variety(text: &str) -> Result<CompleteIntersection> {
    let mut n: Option<usize> = None;
    let mut forms = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match n {
            None => {
                let rest = line
                    .strip_prefix('n')
                    .map(str::trim_start)
                    .and_then(|r| r.strip_prefix('='))
                    .ok_or_else(|| perr(line_no, "expected header `n=<int>`"))?;
                let value: usize =
                    rest.trim().parse().map_err(|_| perr(line_no, "invalid ambient dimension"))?;
                if value == 0 || value > MAX_AMBIENT_DIM {
                    return Err(perr(line_no, format!("n must be in 1..={MAX_AMBIENT_DIM}")));
                }
                n = Some(value);
            }
            Some(dim) => forms.push(parse_form_line(line, dim + 1, line_no)?),
        }
    }
    let n = n.ok_or_else(|| perr(1, "missing header `n=<int>`"))?;
    CompleteIntersection::new(n, forms)
}

/// Parses a single form in `num_vars` variables.
pub fn parse_form(text: &str, num_vars: usize) -> Result<Form> {
    parse_form_line(text.trim(), num_vars, 1)
}

/// Renders a variety in the file syntax accepted by [`parse_variety`].
pub fn format_variety(x: &CompleteIntersection) -> String {
    let mut out = format!("n={}\n", x.n());
    for f in x.forms() {
        let _ = writeln!(out, "{f}");
    }
    out
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_form_line(line: &str, num_vars: usize, line_no: usize) -> Result<Form> {
    let (lhs, rhs) = match line.split_once('=') {
        Some((l, r)) => (l, Some(r)),
        None => (line, None),
    };
    let mut terms: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    let mut add = |e: Vec<u32>, c: i64| -> Result<()> {
        let entry = terms.entry(e).or_insert(0);
        *entry = entry.checked_add(c).ok_or_else(|| perr(line_no, "coefficient overflow"))?;
        Ok(())
    };
    for (e, c) in Parser::new(lhs, num_vars, line_no).expression()? {
        add(e, c)?;
    }
    if let Some(rhs) = rhs {
        if rhs.contains('=') {
            return Err(perr(line_no, "more than one `=`"));
        }
        for (e, c) in Parser::new(rhs, num_vars, line_no).expression()? {
            let neg = c.checked_neg().ok_or_else(|| perr(line_no, "coefficient overflow"))?;
            add(e, neg)?;
        }
    }
    let mut degree = None;
    for e in terms.keys() {
        let d = e.iter().try_fold(0u32, |acc, &k| acc.checked_add(k));
        let d = d.ok_or_else(|| perr(line_no, "degree overflow"))?;
        match degree {
            None => degree = Some(d),
            Some(prev) if prev != d => {
                return Err(perr(line_no, format!("not homogeneous: degrees {prev} and {d}")))
            }
            _ => {}
        }
    }
    let degree = degree.ok_or_else(|| perr(line_no, "empty form"))?;
    Form::new(num_vars, degree, terms).map_err(|e| perr(line_no, e.to_string()))
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    num_vars: usize,
    line: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, num_vars: usize, line: usize) -> Self {
        Parser { bytes: text.as_bytes(), pos: 0, num_vars, line }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        perr(self.line, format!("{msg} at column {}", self.pos + 1))
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("number out of range"))
    }

    fn expression(&mut self) -> Result<Vec<(Vec<u32>, i64)>> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let mut negative = false;
            match self.peek() {
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                None if !first => break,
                None => return Err(self.err("empty expression")),
                Some(_) if first => {}
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
            first = false;
            let (exps, mag) = self.term()?;
            let c = i64::try_from(mag).map_err(|_| self.err("coefficient exceeds i64"))?;
            out.push((exps, if negative { -c } else { c }));
            if self.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Vec<u32>, u64)> {
        let mut exps = vec![0u32; self.num_vars];
        let mut coeff: u64 = 1;
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let v = self.number()?;
                    coeff = coeff.checked_mul(v).ok_or_else(|| self.err("coefficient overflow"))?;
                }
                Some(b'x') => {
                    self.pos += 1;
                    let idx = self.number()?;
                    if idx as usize >= self.num_vars {
                        return Err(self.err(&format!("variable x{idx} out of range")));
                    }
                    let mut power = 1u64;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        power = self.number()?;
                    }
                    let slot = &mut exps[idx as usize];
                    let total = *slot as u64 + power;
                    if total > MAX_EXPONENT as u64 {
                        return Err(self.err("exponent too large"));
                    }
                    *slot = total as u32;
                }
                _ => return Err(self.err("expected a coefficient or variable")),
            }
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b) if b.is_ascii_digit() || b == b'x' => {}
                _ => break,
            }
        }
        Ok((exps, coeff))
    }
}
