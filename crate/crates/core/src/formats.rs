//! Text formats for codes, chains, bases, lattices, coset sets and U_a codes.
//!
//! Code file: `n=<int>`, then one contiguous 0/1 row per line. A chain file
//! is a sequence of code bodies separated by `--level--` lines, C_0 first.
//! Lattice file: `n=<int>`, then n rows of n integers. Coset dump: `mod=<m>`,
//! then one residue per line. U_a code file: `n=<int> a=<int>`, then rows of
//! little-endian coefficient strings. Lines starting with `#` are comments.

use crate::error::{Error, Result};
use crate::gf2::{BinaryCode, BitVector, NestedChain, MAX_LEN};
use crate::ua_codes::{UaCode, UaElement, UaVector};
use crate::zlattice::{hnf, CosetSet, IntVector, Lattice};

pub const LEVEL_SEPARATOR: &str = "--level--";

/// Non-empty, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn header_value(line: usize, field: &str, key: &str) -> Result<usize> {
    let value = field
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected `{key}=<int>`")))?;
    value
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("bad value for {key}: {value:?}")))
}

fn parse_row(line: usize, s: &str, n: usize) -> Result<BitVector> {
    if s.len() != n {
        return Err(Error::parse(line, format!("row has length {}, expected {n}", s.len())));
    }
    s.parse().map_err(|e: Error| Error::parse(line, e.to_string()))
}

fn check_len(line: usize, n: usize) -> Result<usize> {
    if n > MAX_LEN {
        return Err(Error::parse(line, format!("length {n} exceeds {MAX_LEN}")));
    }
    Ok(n)
}

/// Header and rows of a code file, in file order.
pub fn parse_vectors(text: &str) -> Result<(usize, Vec<BitVector>)> {
    let mut lines = content_lines(text);
    let (l, first) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let n = check_len(l, header_value(l, first, "n")?)?;
    let rows = lines
        .map(|(l, s)| parse_row(l, s, n))
        .collect::<Result<Vec<_>>>()?;
    Ok((n, rows))
}

pub fn parse_code(text: &str) -> Result<BinaryCode> {
    let (n, rows) = parse_vectors(text)?;
    BinaryCode::from_rows(n, &rows)
}

pub fn format_code(code: &BinaryCode) -> String {
    code.to_string()
}

/// A chain file; a plain code file reads as a one-level chain. Blocks after
/// the first may omit the `n=` header.
pub fn parse_chain(text: &str) -> Result<NestedChain> {
    let mut n: Option<usize> = None;
    let mut blocks: Vec<Vec<BitVector>> = vec![Vec::new()];
    for (l, s) in content_lines(text) {
        if s == LEVEL_SEPARATOR {
            blocks.push(Vec::new());
        } else if s.starts_with("n=") {
            let m = check_len(l, header_value(l, s, "n")?)?;
            if n.is_some_and(|n| n != m) {
                return Err(Error::parse(l, format!("length {m} differs from earlier levels")));
            }
            if !blocks.last().expect("non-empty").is_empty() {
                return Err(Error::parse(l, "header after rows"));
            }
            n = Some(m);
        } else {
            let n = n.ok_or_else(|| Error::parse(l, "rows before `n=` header"))?;
            blocks.last_mut().expect("non-empty").push(parse_row(l, s, n)?);
        }
    }
    let n = n.ok_or_else(|| Error::parse(1, "missing `n=` header"))?;
    let codes = blocks
        .iter()
        .map(|rows| BinaryCode::from_rows(n, rows))
        .collect::<Result<Vec<_>>>()?;
    NestedChain::new(codes)
}

pub fn format_chain(chain: &NestedChain) -> String {
    let mut out = format!("n={}\n", chain.len());
    for (i, code) in chain.codes().iter().enumerate() {
        if i > 0 {
            out.push_str(LEVEL_SEPARATOR);
            out.push('\n');
        }
        for row in code.basis() {
            out.push_str(&row.to_string());
            out.push('\n');
        }
    }
    out
}

/// A loaded lattice and whether the file already held its HNF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedLattice {
    pub lattice: Lattice,
    pub was_canonical: bool,
}

fn parse_ints(line: usize, s: &str, n: usize) -> Result<IntVector> {
    let v = s
        .split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| Error::parse(line, format!("bad integer {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if v.len() != n {
        return Err(Error::parse(line, format!("expected {n} entries, found {}", v.len())));
    }
    Ok(IntVector::new(v))
}

/// `n=<int>`, then any number of integer rows of length n.
pub fn parse_int_rows(text: &str) -> Result<(usize, Vec<IntVector>)> {
    let mut lines = content_lines(text);
    let (l, first) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let n = check_len(l, header_value(l, first, "n")?)?;
    let rows = lines
        .map(|(l, s)| parse_ints(l, s, n))
        .collect::<Result<Vec<_>>>()?;
    Ok((n, rows))
}

pub fn parse_lattice(text: &str) -> Result<LoadedLattice> {
    let (n, rows) = parse_int_rows(text)?;
    let lattice = hnf(&rows, n)?;
    let was_canonical = lattice.basis() == rows;
    Ok(LoadedLattice {
        lattice,
        was_canonical,
    })
}

pub fn format_lattice(l: &Lattice) -> String {
    format!("n={}\n{l}", l.dim())
}

pub fn format_cosets(s: &CosetSet) -> String {
    let mut out = format!("mod={}\n", s.modulus());
    for v in s.vectors() {
        let line: Vec<String> = v.as_slice().iter().map(i64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Needs at least one residue to learn n.
pub fn parse_cosets(text: &str) -> Result<CosetSet> {
    let mut lines = content_lines(text);
    let (l, first) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let m = header_value(l, first, "mod")?;
    if !m.is_power_of_two() || m < 2 {
        return Err(Error::parse(l, format!("modulus {m} is not a power of two ≥ 2")));
    }
    let bits = m.trailing_zeros() as usize;
    let mut vectors = Vec::new();
    let mut n = None;
    for (l, s) in lines {
        let width = s.split_whitespace().count();
        let v = parse_ints(l, s, *n.get_or_insert(width))?;
        if v.as_slice().iter().any(|&x| !(0..m as i64).contains(&x)) {
            return Err(Error::parse(l, format!("entry outside 0..{m}")));
        }
        vectors.push(v);
    }
    let n = n.ok_or_else(|| Error::parse(l, "no residues"))?;
    CosetSet::from_vectors(n, bits, &vectors)
}

pub fn parse_ua_code(text: &str) -> Result<UaCode> {
    let mut lines = content_lines(text);
    let (l, first) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let mut fields = first.split_whitespace();
    let n = check_len(l, header_value(l, fields.next().unwrap_or(""), "n")?)?;
    let a = header_value(l, fields.next().unwrap_or(""), "a")?;
    if fields.next().is_some() {
        return Err(Error::parse(l, "unexpected text after header"));
    }
    let mut gen = Vec::new();
    for (l, s) in lines {
        let els = s
            .split_whitespace()
            .map(|t| {
                if t.len() != a {
                    return Err(Error::parse(l, format!("entry {t:?} needs {a} coefficients")));
                }
                UaElement::parse(t).map_err(|e| Error::parse(l, e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        if els.len() != n {
            return Err(Error::parse(l, format!("expected {n} entries, found {}", els.len())));
        }
        gen.push(UaVector::from_elements(&els, a).map_err(|e| Error::parse(l, e.to_string()))?);
    }
    UaCode::new(n, a, gen).map_err(|e| Error::parse(l, e.to_string()))
}

pub fn format_ua_code(code: &UaCode) -> String {
    code.to_string()
}
