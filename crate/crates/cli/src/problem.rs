//! Problem files.
//!
//! ```text
//! # 2x2 minors of a generic 3x2 matrix
//! p = 2
//! vars = a b c d e f
//! order = grevlex          # optional, default grevlex
//! emax = 3                 # optional, default 3
//! I = [a*e - b*d, a*f - c*d,
//!      b*f - c*e]
//! J = [a, b]               # optional, divisor for `colon`
//!
//! [subalgebra]             # optional, default kind = total
//! kind = pair
//! a = [a, b, c]
//! t = 1/2
//! ```
//!
//! An explicit subalgebra lists its levels as `a1 = [...]`, `a2 = [...]`, ...
//! Lists may span lines; `[]` is the zero ideal.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use frobex_core::{
    parse_polynomial, CartierKind, CartierSpec, Error, Ideal, MonomialOrder, Ring, RingContext,
};
use num_rational::Ratio;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const DEFAULT_EMAX: u32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub enum SubalgebraDecl {
    Total,
    Pair { a: Vec<String>, t: Ratio<u64> },
    Explicit { levels: BTreeMap<u32, Vec<String>> },
}

/// A validated problem; generator lists hold canonical polynomial text.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub p: u64,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub emax: u32,
    pub ideal: Vec<String>,
    pub divisor: Option<Vec<String>>,
    pub subalgebra: SubalgebraDecl,
}

#[derive(Clone, Debug)]
struct Located {
    text: String,
    line: usize,
    column: usize,
}

struct Entry {
    key: String,
    value: Located,
    key_line: usize,
}

pub fn read_problem(path: &Path) -> CliResult<Problem> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_problem(&text, &path.display().to_string())
}

fn syntax(path: &str, line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax {
        path: path.to_string(),
        line,
        column,
        message: message.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Splits the file into `[section]` groups of `key = value` entries, joining
/// bracketed lists that span several lines.
fn entries(text: &str, path: &str) -> CliResult<Vec<(String, Vec<Entry>)>> {
    let lines: Vec<&str> = text.lines().collect();
    let mut sections: Vec<(String, Vec<Entry>)> = vec![(String::new(), Vec::new())];
    let mut i = 0;
    while i < lines.len() {
        let lineno = i + 1;
        let raw = strip_comment(lines[i]);
        i += 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| syntax(path, lineno, raw.len(), "unterminated section header"))?;
            let name = name.trim().to_string();
            if sections.iter().any(|(s, _)| *s == name) {
                return Err(syntax(
                    path,
                    lineno,
                    1,
                    format!("duplicate section [{name}]"),
                ));
            }
            sections.push((name, Vec::new()));
            continue;
        }
        let Some(eq) = raw.find('=') else {
            let col = raw.len() - raw.trim_start().len() + 1;
            return Err(syntax(path, lineno, col, "expected `key = value`"));
        };
        let key = raw[..eq].trim().to_string();
        if key.is_empty() {
            return Err(syntax(path, lineno, 1, "missing key before `=`"));
        }
        let after = &raw[eq + 1..];
        let lead = after.len() - after.trim_start().len();
        let mut value = Located {
            text: after.trim().to_string(),
            line: lineno,
            column: eq + 2 + lead,
        };
        if value.text.starts_with('[') {
            // continuation lines are appended with a newline so that columns
            // inside them can be recovered
            while !value.text.contains(']') {
                if i >= lines.len() {
                    return Err(syntax(path, value.line, value.column, "unterminated `[`"));
                }
                value.text.push('\n');
                value.text.push_str(strip_comment(lines[i]));
                i += 1;
            }
            let close = value.text.find(']').unwrap();
            if !value.text[close + 1..].trim().is_empty() {
                return Err(syntax(
                    path,
                    value.line,
                    value.column,
                    "unexpected text after `]`",
                ));
            }
        }
        let section = &mut sections.last_mut().unwrap().1;
        if section.iter().any(|e| e.key == key) {
            return Err(syntax(path, lineno, 1, format!("duplicate key `{key}`")));
        }
        section.push(Entry {
            key,
            value,
            key_line: lineno,
        });
    }
    Ok(sections)
}

/// Items of a `[a, b, ...]` list with their positions.
fn list_items(v: &Located, path: &str) -> CliResult<Vec<Located>> {
    let inner = v
        .text
        .strip_prefix('[')
        .and_then(|s| s.trim_end().strip_suffix(']'))
        .ok_or_else(|| syntax(path, v.line, v.column, "expected a bracketed list `[...]`"))?;
    // (text, position of first character, position of the preceding separator)
    type Piece = (String, Option<(usize, usize)>, (usize, usize));
    let mut pieces: Vec<Piece> = vec![(String::new(), None, (v.line, v.column + 1))];
    let (mut line, mut column) = (v.line, v.column + 1);
    for ch in inner.chars() {
        let piece = pieces.last_mut().unwrap();
        match ch {
            ',' => pieces.push((String::new(), None, (line, column))),
            '\n' => {
                piece.0.push(' ');
                line += 1;
                column = 0;
            }
            c => {
                if piece.1.is_none() && !c.is_whitespace() {
                    piece.1 = Some((line, column));
                }
                piece.0.push(c);
            }
        }
        column += 1;
    }
    if pieces.len() == 1 && pieces[0].1.is_none() {
        return Ok(Vec::new());
    }
    pieces
        .into_iter()
        .map(|(text, start, sep)| match start {
            Some((line, column)) => Ok(Located {
                text: text.trim().to_string(),
                line,
                column,
            }),
            None => Err(syntax(path, sep.0, sep.1, "empty list item")),
        })
        .collect()
}

/// Parses and validates each generator; returns canonical text.
fn generators(ring: &Ring, v: &Located, path: &str) -> CliResult<Vec<String>> {
    let mut out = Vec::new();
    for item in list_items(v, path)? {
        let f = parse_polynomial(ring, &item.text).map_err(|e| match e {
            Error::Parse { column, message } => {
                syntax(path, item.line, item.column + column - 1, message)
            }
            other => syntax(path, item.line, item.column, other.to_string()),
        })?;
        if !f.is_homogeneous().0 {
            return Err(syntax(
                path,
                item.line,
                item.column,
                format!("generator `{}` is not homogeneous", item.text),
            ));
        }
        out.push(f.to_string());
    }
    Ok(out)
}

pub fn parse_problem(text: &str, path: &str) -> CliResult<Problem> {
    let sections = entries(text, path)?;
    let mut top: BTreeMap<&str, &Entry> = BTreeMap::new();
    for e in &sections[0].1 {
        top.insert(e.key.as_str(), e);
    }
    for (name, _) in &sections[1..] {
        if name != "subalgebra" {
            return Err(syntax(path, 1, 1, format!("unknown section [{name}]")));
        }
    }
    let require = |k: &str| {
        top.get(k)
            .copied()
            .ok_or_else(|| syntax(path, 1, 1, format!("missing `{k}`")))
    };

    let pe = require("p")?;
    let p: u64 = pe.value.text.parse().map_err(|_| {
        syntax(
            path,
            pe.value.line,
            pe.value.column,
            "p must be a positive integer",
        )
    })?;
    let ve = require("vars")?;
    let vars: Vec<String> = ve
        .value
        .text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    let ring = RingContext::new(p, &vars).map_err(|e| match e {
        Error::NotPrime(_) => syntax(path, pe.value.line, pe.value.column, e.to_string()),
        other => syntax(path, ve.value.line, ve.value.column, other.to_string()),
    })?;
    let order = match top.get("order") {
        Some(e) => e.value.text.parse().map_err(|_| {
            syntax(
                path,
                e.value.line,
                e.value.column,
                format!("unknown order `{}`", e.value.text),
            )
        })?,
        None => MonomialOrder::Grevlex,
    };
    let emax = match top.get("emax") {
        Some(e) => parse_level(&e.value, path)?,
        None => DEFAULT_EMAX,
    };
    let ideal = generators(&ring, &require("I")?.value, path)?;
    let divisor = top
        .get("J")
        .map(|e| generators(&ring, &e.value, path))
        .transpose()?;
    for e in &sections[0].1 {
        if !matches!(e.key.as_str(), "p" | "vars" | "order" | "emax" | "I" | "J") {
            return Err(syntax(
                path,
                e.key_line,
                1,
                format!("unknown key `{}`", e.key),
            ));
        }
    }

    let subalgebra = match sections.iter().find(|(s, _)| s == "subalgebra") {
        None => SubalgebraDecl::Total,
        Some((_, entries)) => subalgebra(&ring, entries, path)?,
    };
    Ok(Problem {
        p,
        vars,
        order,
        emax,
        ideal,
        divisor,
        subalgebra,
    })
}

fn parse_level(v: &Located, path: &str) -> CliResult<u32> {
    match v.text.parse::<u32>() {
        Ok(e) if e >= 1 => Ok(e),
        _ => Err(syntax(
            path,
            v.line,
            v.column,
            "expected a positive integer",
        )),
    }
}

fn subalgebra(ring: &Ring, entries: &[Entry], path: &str) -> CliResult<SubalgebraDecl> {
    let get = |k: &str| entries.iter().find(|e| e.key == k);
    let kind = get("kind").map_or("total", |e| e.value.text.as_str());
    let line = entries.first().map_or(1, |e| e.key_line);
    let allowed: &dyn Fn(&str) -> bool = match kind {
        "total" => &|k| k == "kind",
        "pair" => &|k| matches!(k, "kind" | "a" | "t"),
        "explicit" => &|k| {
            k == "kind"
                || k.strip_prefix('a')
                    .is_some_and(|n| n.parse::<u32>().is_ok())
        },
        other => {
            let e = get("kind").unwrap();
            return Err(syntax(
                path,
                e.value.line,
                e.value.column,
                format!("unknown subalgebra kind `{other}`"),
            ));
        }
    };
    if let Some(e) = entries.iter().find(|e| !allowed(&e.key)) {
        return Err(syntax(
            path,
            e.key_line,
            1,
            format!("unexpected key `{}` for kind {kind}", e.key),
        ));
    }
    Ok(match kind {
        "total" => SubalgebraDecl::Total,
        "pair" => {
            let a = get("a").ok_or_else(|| syntax(path, line, 1, "pair subalgebra needs `a`"))?;
            let t = get("t").ok_or_else(|| syntax(path, line, 1, "pair subalgebra needs `t`"))?;
            SubalgebraDecl::Pair {
                a: generators(ring, &a.value, path)?,
                t: parse_rational(&t.value, path)?,
            }
        }
        _ => {
            let mut levels = BTreeMap::new();
            for e in entries.iter().filter(|e| e.key != "kind") {
                let level: u32 = e.key[1..].parse().unwrap();
                levels.insert(level, generators(ring, &e.value, path)?);
            }
            if levels.is_empty() {
                return Err(syntax(
                    path,
                    line,
                    1,
                    "explicit subalgebra needs levels `a1 = [...]`",
                ));
            }
            SubalgebraDecl::Explicit { levels }
        }
    })
}

fn parse_rational(v: &Located, path: &str) -> CliResult<Ratio<u64>> {
    let bad = || {
        syntax(
            path,
            v.line,
            v.column,
            "t must be a non-negative rational like `3/2`",
        )
    };
    let (num, den) = match v.text.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<u64>().map_err(|_| bad())?,
            d.trim().parse::<u64>().map_err(|_| bad())?,
        ),
        None => (v.text.parse::<u64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(num, den))
}

impl Problem {
    pub fn ring(&self) -> frobex_core::Result<Ring> {
        RingContext::new(self.p, &self.vars)
    }

    pub fn ring_with_store(
        &self,
        store: std::sync::Arc<dyn frobex_core::BasisStore>,
    ) -> frobex_core::Result<Ring> {
        RingContext::with_store(self.p, &self.vars, store)
    }

    pub fn ideal_of(&self, ring: &Ring, gens: &[String]) -> frobex_core::Result<Ideal> {
        Ok(Ideal::parse(ring, gens)?.reordered(self.order))
    }

    pub fn base_ideal(&self, ring: &Ring) -> frobex_core::Result<Ideal> {
        self.ideal_of(ring, &self.ideal)
    }

    pub fn spec(&self, ring: &Ring) -> frobex_core::Result<CartierSpec> {
        let base = self.base_ideal(ring)?;
        let kind = match &self.subalgebra {
            SubalgebraDecl::Total => CartierKind::Total,
            SubalgebraDecl::Pair { a, t } => CartierKind::Pair {
                a: self.ideal_of(ring, a)?,
                t: *t,
            },
            SubalgebraDecl::Explicit { levels } => CartierKind::Explicit {
                levels: levels
                    .iter()
                    .map(|(e, g)| Ok((*e, self.ideal_of(ring, g)?)))
                    .collect::<frobex_core::Result<_>>()?,
            },
        };
        CartierSpec::new(base, kind)
    }

    /// Largest degree among the generators of `I`; `1` for the zero ideal.
    pub fn max_generator_degree(&self) -> frobex_core::Result<u64> {
        let ring = self.ring()?;
        let mut d = 1;
        for g in &self.ideal {
            d = d.max(parse_polynomial(&ring, g)?.total_degree().unwrap_or(0));
        }
        Ok(d)
    }

    /// Canonical text covering every input; generator lists are sorted.
    pub fn canonical(&self) -> String {
        let list = |gens: &[String]| {
            let mut g = gens.to_vec();
            g.sort();
            format!("[{}]", g.join(", "))
        };
        let mut s = String::new();
        writeln!(s, "p = {}", self.p).unwrap();
        writeln!(s, "vars = {}", self.vars.join(" ")).unwrap();
        writeln!(s, "order = {}", self.order).unwrap();
        writeln!(s, "emax = {}", self.emax).unwrap();
        writeln!(s, "I = {}", list(&self.ideal)).unwrap();
        if let Some(j) = &self.divisor {
            writeln!(s, "J = {}", list(j)).unwrap();
        }
        match &self.subalgebra {
            SubalgebraDecl::Total => {}
            SubalgebraDecl::Pair { a, t } => {
                writeln!(
                    s,
                    "[subalgebra]\nkind = pair\na = {}\nt = {}/{}",
                    list(a),
                    t.numer(),
                    t.denom()
                )
                .unwrap();
            }
            SubalgebraDecl::Explicit { levels } => {
                writeln!(s, "[subalgebra]\nkind = explicit").unwrap();
                for (e, g) in levels {
                    writeln!(s, "a{e} = {}", list(g)).unwrap();
                }
            }
        }
        s
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }
}
