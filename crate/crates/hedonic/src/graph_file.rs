//! The plain-text graph format.
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v [w]
//! ```
//!
//! Agents are `1..=n`. Weights are positive decimals and default to 1. All
//! weights are multiplied by a single power of ten, the smallest that makes
//! every weight an integer; that factor is the game's weight scale.

use hedonic_core::{Graph, Weight};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} edge lines follow")]
    EdgeCount { declared: usize, found: usize },
    #[error("weights need more than 18 fractional digits")]
    ScaleOverflow,
    #[error("invalid graph: {0}")]
    Graph(#[from] hedonic_core::Error),
    #[error("weight scale {0} is not a power of ten and cannot be written as decimals")]
    NonDecimalScale(u64),
}

/// A decimal weight split into integer digits and the count of significant
/// fractional digits.
struct Decimal {
    digits: u128,
    frac: u32,
}

fn parse_decimal(token: &str) -> Option<Decimal> {
    let (whole, frac) = token.split_once('.').unwrap_or((token, ""));
    let frac = frac.trim_end_matches('0');
    if (whole.is_empty() && frac.is_empty() && !token.contains('0'))
        || !whole.bytes().all(|b| b.is_ascii_digit())
        || !frac.bytes().all(|b| b.is_ascii_digit())
        || frac.len() > 18
        || whole.len() > 20
    {
        return None;
    }
    let text = format!("{whole}{frac}");
    let digits = if text.is_empty() { 0 } else { text.parse().ok()? };
    Some(Decimal { digits, frac: frac.len() as u32 })
}

/// Parses a graph file; returns the graph and its weight scale.
pub fn parse(text: &str) -> Result<(Graph, u64), GraphFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(GraphFileError::MissingHeader)?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    let syntax = |line, message: &str| GraphFileError::Syntax { line, message: message.into() };
    if nums.len() != 2 {
        return Err(syntax(hline, "header must be `n m`"));
    }
    let n: usize = nums[0].parse().map_err(|_| syntax(hline, "n is not a non-negative integer"))?;
    let m: usize = nums[1].parse().map_err(|_| syntax(hline, "m is not a non-negative integer"))?;
    let mut raw = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 && toks.len() != 3 {
            return Err(syntax(line, "edge lines are `u v [w]`"));
        }
        let endpoint = |t: &str| t.parse::<usize>().map_err(|_| syntax(line, "endpoint is not a positive integer"));
        let (u, v) = (endpoint(toks[0])?, endpoint(toks[1])?);
        let w = match toks.get(2) {
            Some(t) => parse_decimal(t).ok_or_else(|| syntax(line, "weight is not a non-negative decimal"))?,
            None => Decimal { digits: 1, frac: 0 },
        };
        if w.digits == 0 {
            return Err(syntax(line, "weight 0 is not allowed; omit the edge instead"));
        }
        raw.push((u, v, w));
    }
    if raw.len() != m {
        return Err(GraphFileError::EdgeCount { declared: m, found: raw.len() });
    }
    let frac = raw.iter().map(|(_, _, w)| w.frac).max().unwrap_or(0);
    let scale = 10u64.checked_pow(frac).ok_or(GraphFileError::ScaleOverflow)?;
    let mut edges = Vec::with_capacity(m);
    for (u, v, w) in raw {
        let scaled = w.digits * 10u128.pow(frac - w.frac);
        let scaled: Weight = scaled.try_into().map_err(|_| GraphFileError::ScaleOverflow)?;
        edges.push((u, v, scaled));
    }
    Ok((Graph::new(n, edges)?, scale))
}

/// Writes a graph in file format, weights divided back by `scale`.
pub fn serialize(g: &Graph, scale: u64) -> Result<String, GraphFileError> {
    let mut digits = 0u32;
    while 10u64.pow(digits) < scale {
        digits += 1;
    }
    if 10u64.pow(digits) != scale {
        return Err(GraphFileError::NonDecimalScale(scale));
    }
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for e in g.edges() {
        out.push_str(&format!("{} {}", e.u, e.v));
        if !(scale == 1 && e.weight == 1) {
            out.push(' ');
            out.push_str(&decimal(e.weight, scale, digits));
        }
        out.push('\n');
    }
    Ok(out)
}

/// `value / scale` as a decimal string without trailing zeros.
pub fn decimal(value: Weight, scale: u64, digits: u32) -> String {
    let whole = value / scale;
    let frac = value % scale;
    if frac == 0 {
        return whole.to_string();
    }
    let text = format!("{whole}.{frac:0width$}", width = digits as usize);
    text.trim_end_matches('0').to_string()
}
