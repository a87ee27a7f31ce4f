//! Ring spec files.
//!
//! ```text
//! # K + span{1,y} X + GF(8)[[X]] X^2
//! p=2
//! m=1
//! D=3
//! n=2
//! V1=1, y
//! ```
//!
//! `D` is the degree of F over the prime field and must be a multiple of `m`.
//! Each `V<i>` (1 <= i < n) lists K-spanning elements of F as polynomials in
//! the field generator `y`; an empty list or `0` means the zero subspace.

use std::collections::BTreeMap;
use std::sync::Arc;

use atomlab_core::gf::tower_make_capped;
use atomlab_core::{Caps, Elem, RingSpec, Subspace};

use crate::CliError;

/// A parse error with its 1-based line number (0 when not tied to a line).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}{msg}", if *.line > 0 { format!("line {}: ", .line) } else { String::new() })]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        msg: msg.into(),
    }
}

/// Parsed but not yet validated contents of a spec file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub p: u64,
    pub m: u32,
    pub d: u32,
    pub n: usize,
    /// `V_i` generators as low-first integer coefficient lists, keyed by i.
    pub v: BTreeMap<usize, (usize, Vec<Vec<i64>>)>,
}

/// Parses a polynomial in `y` with integer coefficients, e.g. `1+2y^2-y`.
pub fn parse_poly(s: &str) -> Result<Vec<i64>, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return Err(format!("expected '+' or '-' at '{}'", &s[i..]));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coef: Option<i64> = if i > start {
            Some(s[start..i].parse().map_err(|_| format!("bad number '{}'", &s[start..i]))?)
        } else {
            None
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let mut exp = 0usize;
        if i < bytes.len() && bytes[i] == b'y' {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                exp = s[es..i]
                    .parse()
                    .map_err(|_| format!("bad exponent in '{s}'"))?;
            }
        } else if coef.is_none() {
            return Err(format!("expected a term at '{}'", &s[start..]));
        }
        if exp >= coeffs.len() {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] += sign * coef.unwrap_or(1);
    }
    Ok(coeffs)
}

fn parse_int<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T, ParseError> {
    v.parse()
        .map_err(|_| err(line, format!("{key} must be a positive integer, got '{v}'")))
}

/// Parses the text of a spec file.
pub fn parse(text: &str) -> Result<SpecFile, ParseError> {
    let mut scalars: BTreeMap<&str, (usize, u64)> = BTreeMap::new();
    let mut v = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(line, format!("expected key=value, got '{content}'")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "p" | "m" | "D" | "n" => {
                let x: u64 = parse_int(line, key, value)?;
                if scalars.insert(key, (line, x)).is_some() {
                    return Err(err(line, format!("duplicate key {key}")));
                }
            }
            _ if key.starts_with('V') => {
                let i: usize = key[1..]
                    .parse()
                    .map_err(|_| err(line, format!("unknown key '{key}'")))?;
                if i == 0 {
                    return Err(err(line, "subspace index must be at least 1"));
                }
                let mut gens = Vec::new();
                if !value.is_empty() {
                    for part in value.split(',') {
                        gens.push(parse_poly(part).map_err(|e| err(line, e))?);
                    }
                }
                if v.insert(i, (line, gens)).is_some() {
                    return Err(err(line, format!("duplicate key {key}")));
                }
            }
            _ => return Err(err(line, format!("unknown key '{key}'"))),
        }
    }
    let get = |k: &str| -> Result<(usize, u64), ParseError> {
        scalars
            .get(k)
            .copied()
            .ok_or_else(|| err(0, format!("missing key {k}")))
    };
    let (pl, p) = get("p")?;
    let (ml, m) = get("m")?;
    let (dl, d) = get("D")?;
    let (nl, n) = get("n")?;
    for (l, x, k) in [(pl, p, "p"), (ml, m, "m"), (dl, d, "D"), (nl, n, "n")] {
        if x == 0 {
            return Err(err(l, format!("{k} must be positive")));
        }
    }
    let m = u32::try_from(m).map_err(|_| err(ml, "m too large"))?;
    let d = u32::try_from(d).map_err(|_| err(dl, "D too large"))?;
    if d % m != 0 {
        return Err(err(dl, format!("D={d} is not a multiple of m={m}")));
    }
    let n = n as usize;
    for (&i, &(line, _)) in &v {
        if i >= n {
            return Err(err(line, format!("V{i} given but n={n}")));
        }
    }
    if let Some(i) = (1..n).find(|i| !v.contains_key(i)) {
        return Err(err(0, format!("missing V{i}")));
    }
    Ok(SpecFile { p, m, d, n, v })
}

impl SpecFile {
    /// Builds and validates the ring.
    pub fn build(&self, caps: Caps) -> Result<Arc<RingSpec>, CliError> {
        let e = self.d / self.m;
        let tower = Arc::new(tower_make_capped(self.p, self.m, e, &caps)?);
        let mut spaces = Vec::with_capacity(self.n.saturating_sub(1));
        for (_, (_, gens)) in &self.v {
            let elems: Vec<Elem> = gens.iter().map(|c| tower.field().eval_poly(c)).collect();
            spaces.push(Subspace::span(&tower, &elems)?);
        }
        Ok(RingSpec::validate(&tower, self.n, spaces, caps)?)
    }
}
