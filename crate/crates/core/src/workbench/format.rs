//! Line-oriented text format for restricted Lie algebras.
//!
//! ```text
//! restricted-lie-algebra v1
//! name heisenberg-f2        # optional
//! field 2                   # p, or p k, or p k m_0 … m_k (modulus, low degree first)
//! dim 3
//! basis x y z               # optional, defaults to e1 … en
//! bracket x y : 0 0 1       # [x, y] = z; only i < j, omitted brackets are zero
//! pmap x : 0 0 1            # x^[p] = z; omitted p-images are zero
//! ```
//!
//! `#` starts a comment. Coordinates are field elements as printed by the
//! field (`2`, `u`, `u+1`, `2u^2+1`). Directives must appear in the order
//! header, name, field, dim, basis, then brackets and p-images in any order.

use crate::error::{Error, Result};
use crate::exactla::{FiniteField, Vector};
use crate::liealg::AlgebraPresentation;

pub const HEADER: &str = "restricted-lie-algebra v1";

/// Largest dimension accepted by the parser.
pub const MAX_DIM: usize = 64;

/// A parsed algebra file.
#[derive(Debug, Clone)]
pub struct AlgebraFile {
    pub name: Option<String>,
    pub algebra: AlgebraPresentation,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &content[s..i], column: content[..s].chars().count() + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &content[s..], column: content[..s].chars().count() + 1 });
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn number<T: std::str::FromStr>(line: usize, t: &Token<'_>, what: &str) -> Result<T> {
    t.text.parse().map_err(|_| err(line, t.column, format!("expected {what}, found `{}`", t.text)))
}

/// Parse and validate. Axiom violations are reported as `Validation`
/// errors naming the failing identity.
pub fn parse(text: &str) -> Result<AlgebraFile> {
    let file = parse_unvalidated(text)?;
    let report = file.algebra.validate();
    if !report.is_valid() {
        return Err(Error::Validation(report.describe(file.algebra.names())));
    }
    Ok(file)
}

/// Parse without checking the restricted Lie algebra axioms.
pub fn parse_unvalidated(text: &str) -> Result<AlgebraFile> {
    let mut name = None;
    let mut field: Option<FiniteField> = None;
    let mut algebra: Option<AlgebraPresentation> = None;
    let mut seen_header = false;
    let mut seen_basis = false;
    let mut seen_entry = false;
    let mut brackets_set = std::collections::BTreeSet::new();
    let mut pmaps_set = std::collections::BTreeSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        last_line = ln;
        let toks = tokens(raw);
        let Some(first) = toks.first() else { continue };
        if !seen_header {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content != HEADER {
                return Err(err(ln, first.column, format!("expected header `{HEADER}`")));
            }
            seen_header = true;
            continue;
        }
        match first.text {
            "name" => {
                if field.is_some() || name.is_some() {
                    return Err(err(ln, first.column, "`name` must come once, before `field`"));
                }
                let rest: Vec<&str> = toks[1..].iter().map(|t| t.text).collect();
                if rest.is_empty() {
                    return Err(err(ln, first.column, "`name` needs a value"));
                }
                name = Some(rest.join(" "));
            }
            "field" => {
                if field.is_some() {
                    return Err(err(ln, first.column, "duplicate `field`"));
                }
                let args = &toks[1..];
                if args.is_empty() {
                    return Err(err(ln, first.column + 5, "`field` needs a characteristic"));
                }
                let p: u32 = number(ln, &args[0], "a prime")?;
                let k: u32 = match args.get(1) {
                    Some(t) => number(ln, t, "a degree")?,
                    None => 1,
                };
                let f = if args.len() > 2 {
                    if args.len() != k as usize + 3 {
                        return Err(err(ln, args[2].column, format!("modulus needs {} coefficients", k + 1)));
                    }
                    let m: Vec<u32> =
                        args[2..].iter().map(|t| number(ln, t, "a coefficient")).collect::<Result<_>>()?;
                    FiniteField::with_modulus(p, &m)
                } else {
                    FiniteField::new(p, k)
                };
                field = Some(f.map_err(|e| err(ln, args[0].column, e.to_string()))?);
            }
            "dim" => {
                let Some(f) = &field else {
                    return Err(err(ln, first.column, "`dim` before `field`"));
                };
                if algebra.is_some() {
                    return Err(err(ln, first.column, "duplicate `dim`"));
                }
                let t = toks.get(1).ok_or_else(|| err(ln, first.column, "`dim` needs a value"))?;
                let n: usize = number(ln, t, "a dimension")?;
                if n > MAX_DIM {
                    return Err(Error::SizeLimit { what: "dimension", value: n as u64, limit: MAX_DIM as u64 });
                }
                if toks.len() > 2 {
                    return Err(err(ln, toks[2].column, "unexpected token"));
                }
                algebra = Some(AlgebraPresentation::new(f.clone(), n));
            }
            "basis" => {
                let Some(a) = algebra.take() else {
                    return Err(err(ln, first.column, "`basis` before `dim`"));
                };
                if seen_basis || seen_entry {
                    return Err(err(ln, first.column, "`basis` must come once, before any entry"));
                }
                let names: Vec<String> = toks[1..].iter().map(|t| t.text.to_string()).collect();
                for t in &toks[1..] {
                    if t.text.parse::<f64>().is_ok() || t.text == ":" {
                        return Err(err(ln, t.column, format!("invalid basis name `{}`", t.text)));
                    }
                }
                let column = toks.get(1).map_or(first.column, |t| t.column);
                algebra = Some(a.with_names(names).map_err(|e| err(ln, column, e.to_string()))?);
                seen_basis = true;
            }
            "bracket" | "pmap" => {
                let Some(a) = algebra.as_mut() else {
                    return Err(err(ln, first.column, format!("`{}` before `dim`", first.text)));
                };
                seen_entry = true;
                let arity = if first.text == "bracket" { 2 } else { 1 };
                let mut idx = Vec::new();
                for t in toks.iter().skip(1).take(arity) {
                    let i = a
                        .name_index(t.text)
                        .ok_or_else(|| err(ln, t.column, format!("unknown basis element `{}`", t.text)))?;
                    idx.push(i);
                }
                if idx.len() != arity {
                    return Err(err(ln, first.column, format!("`{}` needs {arity} basis element(s)", first.text)));
                }
                let colon = toks.get(1 + arity).filter(|t| t.text == ":").ok_or_else(|| {
                    let c = toks.get(1 + arity).map_or(raw.len() + 1, |t| t.column);
                    err(ln, c, "expected `:`")
                })?;
                let coords = &toks[2 + arity..];
                if coords.len() != a.dim() {
                    let c = coords.first().map_or(colon.column + 1, |t| t.column);
                    return Err(err(ln, c, format!("expected {} coordinates, found {}", a.dim(), coords.len())));
                }
                let f = a.field().clone();
                let v: Vector = coords
                    .iter()
                    .map(|t| {
                        f.parse_element(t.text)
                            .ok_or_else(|| err(ln, t.column, format!("invalid field element `{}`", t.text)))
                    })
                    .collect::<Result<_>>()?;
                if arity == 2 {
                    let (i, j) = (idx[0], idx[1]);
                    if i >= j {
                        return Err(err(
                            ln,
                            toks[1].column,
                            "bracket entries need the first element before the second",
                        ));
                    }
                    if !brackets_set.insert((i, j)) {
                        return Err(err(ln, first.column, "duplicate bracket entry"));
                    }
                    a.set_bracket(i, j, v)?;
                } else {
                    if !pmaps_set.insert(idx[0]) {
                        return Err(err(ln, first.column, "duplicate pmap entry"));
                    }
                    a.set_pmap(idx[0], v)?;
                }
            }
            other => return Err(err(ln, first.column, format!("unknown directive `{other}`"))),
        }
    }
    if !seen_header {
        return Err(err(1, 1, format!("expected header `{HEADER}`")));
    }
    let algebra = algebra.ok_or_else(|| err(last_line.max(1), 1, "missing `field` or `dim`"))?;
    Ok(AlgebraFile { name, algebra })
}

/// Canonical text form: comments dropped, nonzero entries in index order.
pub fn serialize(file: &AlgebraFile) -> String {
    let a = &file.algebra;
    let f = a.field();
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    if let Some(name) = &file.name {
        out.push_str(&format!("name {name}\n"));
    }
    if f.degree() == 1 {
        out.push_str(&format!("field {}\n", f.characteristic()));
    } else {
        let m: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
        out.push_str(&format!("field {} {} {}\n", f.characteristic(), f.degree(), m.join(" ")));
    }
    out.push_str(&format!("dim {}\n", a.dim()));
    if a.dim() > 0 {
        out.push_str(&format!("basis {}\n", a.names().join(" ")));
    }
    let coords = |v: &[crate::exactla::FieldElement]| v.iter().map(|&c| f.format(c)).collect::<Vec<_>>().join(" ");
    let names = a.names();
    for i in 0..a.dim() {
        for j in i + 1..a.dim() {
            let v = a.basis_bracket(i, j);
            if !crate::exactla::is_zero(v) {
                out.push_str(&format!("bracket {} {} : {}\n", names[i], names[j], coords(v)));
            }
        }
    }
    for (i, name) in names.iter().enumerate() {
        let v = a.basis_pmap(i);
        if !crate::exactla::is_zero(v) {
            out.push_str(&format!("pmap {} : {}\n", name, coords(v)));
        }
    }
    out
}
