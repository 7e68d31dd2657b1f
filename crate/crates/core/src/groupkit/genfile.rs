//! Plain-text generator files.
//!
//! ```text
//! # S3 acting on GF(2)^2
//! field 2 1 / dim 2
//!
//! 0 1
//! 1 0
//!
//! 0 1
//! 1 1
//! ```
//!
//! The header may also be split over two lines (`field p k`, `dim n`).
//! Entries of extension fields are coefficient tuples, low degree first:
//! `(0,1)` is the generator `t` of GF(p^2).

use std::sync::Arc;

use super::element::GroupElement;
use crate::error::{Error, Result};
use crate::gflinalg::{Fe, Field, Mat};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("expected an integer, got {tok:?}")))
}

/// Splits a row into entries, keeping `( .. )` groups together.
fn tokens(row: &str, line: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in row.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                if depth == 0 {
                    return Err(parse_err(line, "unbalanced ')'"));
                }
                depth -= 1;
                cur.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(parse_err(line, "unbalanced '('"));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_entry(field: &Field, tok: &str, line: usize) -> Result<Fe> {
    let p = field.characteristic() as i64;
    let reduce = |v: i64| v.rem_euclid(p) as u32;
    if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let coeffs = inner
            .split(',')
            .map(|c| parse_num::<i64>(c.trim(), line).map(reduce))
            .collect::<Result<Vec<u32>>>()?;
        if coeffs.len() > field.degree() as usize {
            return Err(parse_err(line, format!("{tok} has more than {} coefficients", field.degree())));
        }
        field.from_coeffs(&coeffs)
    } else {
        let v: i64 = parse_num(tok, line)?;
        if field.degree() > 1 && !(0..p).contains(&v) {
            return Err(parse_err(line, format!("{v} is not a prime-field element; use a tuple")));
        }
        Ok(reduce(v))
    }
}

/// A parsed generator file: the module and its generating matrices.
#[derive(Debug)]
pub struct GeneratorFile {
    pub field: Arc<Field>,
    pub dim: usize,
    pub generators: Vec<GroupElement>,
}

pub fn parse_generators(text: &str) -> Result<GeneratorFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()));

    // header
    let mut header = String::new();
    let mut header_line = 0;
    for (no, l) in lines.by_ref() {
        if l.is_empty() {
            continue;
        }
        header_line = no;
        header.push_str(l);
        header.push(' ');
        if header.contains("dim") {
            break;
        }
    }
    let words: Vec<&str> = header.split_whitespace().filter(|w| *w != "/").collect();
    let (p, k, n) = match words.as_slice() {
        ["field", p, k, "dim", n] => (
            parse_num::<u64>(p, header_line)?,
            parse_num::<u32>(k, header_line)?,
            parse_num::<usize>(n, header_line)?,
        ),
        _ => return Err(parse_err(header_line.max(1), "expected header `field p k / dim n`")),
    };
    if n == 0 {
        return Err(parse_err(header_line, "dimension must be positive"));
    }
    let field = Field::make(p, k)?;

    let mut generators = Vec::new();
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    let mut block_start = 0;
    let mut flush = |rows: &mut Vec<Vec<Fe>>, start: usize| -> Result<()> {
        if rows.is_empty() {
            return Ok(());
        }
        if rows.len() != n {
            return Err(parse_err(start, format!("matrix has {} rows, expected {n}", rows.len())));
        }
        let data: Vec<Fe> = rows.drain(..).flatten().collect();
        let m = Mat::from_data(&field, n, n, data)?;
        if m.rank() < n {
            return Err(parse_err(start, "generator is singular"));
        }
        generators.push(GroupElement::Matrix(m));
        Ok(())
    };
    for (no, l) in lines {
        if l.is_empty() {
            flush(&mut rows, block_start)?;
            continue;
        }
        if rows.is_empty() {
            block_start = no;
        }
        let row = tokens(l, no)?
            .iter()
            .map(|t| parse_entry(&field, t, no))
            .collect::<Result<Vec<Fe>>>()?;
        if row.len() != n {
            return Err(parse_err(no, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    flush(&mut rows, block_start)?;
    if generators.is_empty() {
        return Err(parse_err(header_line, "no generators"));
    }
    Ok(GeneratorFile { field, dim: n, generators })
}
