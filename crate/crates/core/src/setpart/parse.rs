use std::collections::BTreeSet;

use crate::error::{parse_err, Error, Result};

/// Splits on commas that are not nested inside brackets or braces.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '[' | '{' | '(' => depth += 1,
            ']' | '}' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|t| !t.is_empty()).collect()
}

fn parse_vertex(tok: &str) -> Result<u32> {
    match tok.trim().parse::<u32>() {
        Ok(0) => parse_err("vertices are 1-based"),
        Ok(v) => Ok(v),
        Err(_) => parse_err(format!("bad vertex {tok:?}")),
    }
}

/// Elements of a part or subset: numbers and `[j,k]` intervals, comma separated.
pub(crate) fn parse_elements(s: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for tok in split_top_level(s) {
        if let Some(inner) = tok.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated interval {tok:?}")))?;
            let (j, k) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("interval {tok:?} needs two ends")))?;
            let (j, k) = (parse_vertex(j)?, parse_vertex(k)?);
            if j > k {
                return parse_err(format!("empty interval {tok:?}"));
            }
            out.extend(j..=k);
        } else {
            out.push(parse_vertex(tok)?);
        }
    }
    Ok(out)
}

/// Parses `{2,3,5}`, `[2,5]`, or a bare list like `2,3,[5,7]`.
pub fn parse_subset(s: &str) -> Result<BTreeSet<u32>> {
    let s = s.trim();
    let body = match s.strip_prefix('{') {
        Some(b) => b
            .strip_suffix('}')
            .ok_or_else(|| Error::Parse(format!("unbalanced braces in {s:?}")))?,
        None => s,
    };
    let elems = parse_elements(body)?;
    let set: BTreeSet<u32> = elems.iter().copied().collect();
    if set.len() != elems.len() {
        return parse_err(format!("repeated vertex in {s:?}"));
    }
    Ok(set)
}
