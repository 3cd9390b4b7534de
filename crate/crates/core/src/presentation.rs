//! The textual presentation format for `A = KQ/I`.
//!
//! ```text
//! [quiver]
//! vertex 1
//! arrow a: 1 -> 1
//! arrow b: 1 -> 1
//! [relations]
//! a*a
//! a*b - b*a
//! [loewy]
//! L = 2
//! [rules]
//! a*a -> 0
//! a*b -> b*a
//! [order]
//! a < b
//! [options]
//! self_injective
//! ```
//!
//! `*` means "after". Lines starting with `#` are comments. Arrows are
//! renumbered by the `[order]` section, so the canonical printout lists them
//! in that order.

use std::fmt::Write as _;

use grassvar_poly::Rational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::path::{format_lincomb, LinComb, QPath};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Self {
        Quiver { vertices, arrows }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Arrows leaving `v`, in arrow order.
    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v).map(|(i, _)| i)
    }

    /// Splits a written word into arrows (application order). Accepts
    /// `b*a`, a single arrow name, or juxtaposed one-character names (`ba`).
    pub fn parse_word(&self, word: &str) -> Option<Vec<usize>> {
        let word = word.trim();
        let names: Vec<&str> = if word.contains('*') {
            word.split('*').map(str::trim).collect()
        } else if self.arrow_index(word).is_some() {
            vec![word]
        } else {
            let mut out = Vec::new();
            let mut rest = word;
            while let Some(c) = rest.chars().next() {
                let (head, tail) = rest.split_at(c.len_utf8());
                out.push(head);
                rest = tail;
            }
            out
        };
        let mut arrows = Vec::with_capacity(names.len());
        for n in names.iter().rev() {
            arrows.push(self.arrow_index(n)?);
        }
        Some(arrows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: QPath,
    pub rhs: LinComb<QPath>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    quiver: Quiver,
    relations: Vec<LinComb<QPath>>,
    loewy: usize,
    rules: Vec<Rule>,
    self_injective: bool,
}

impl Presentation {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[LinComb<QPath>] {
        &self.relations
    }

    /// The Loewy bound `L`: paths longer than `L` vanish.
    pub fn loewy(&self) -> usize {
        self.loewy
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn self_injective(&self) -> bool {
        self.self_injective
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    /// Start vertex shared by all terms of a relation.
    pub fn relation_start(&self, k: usize) -> Option<usize> {
        self.relations[k].iter().next().map(|(p, _)| p.start())
    }

    pub fn path_display(&self, p: &QPath) -> String {
        p.display(&self.quiver)
    }

    pub fn relation_display(&self, k: usize) -> String {
        format_lincomb(&self.relations[k], |p| p.display(&self.quiver))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::default().run(text)
    }

    /// Canonical text form; `parse` inverts it exactly.
    pub fn to_text(&self) -> String {
        let q = &self.quiver;
        let mut s = String::from("[quiver]\n");
        for v in &q.vertices {
            writeln!(s, "vertex {v}").unwrap();
        }
        for a in &q.arrows {
            writeln!(s, "arrow {}: {} -> {}", a.name, q.vertices[a.source], q.vertices[a.target]).unwrap();
        }
        s.push_str("\n[relations]\n");
        for k in 0..self.relations.len() {
            writeln!(s, "{}", self.relation_display(k)).unwrap();
        }
        writeln!(s, "\n[loewy]\nL = {}", self.loewy).unwrap();
        s.push_str("\n[rules]\n");
        for r in &self.rules {
            let rhs = format_lincomb(&r.rhs, |p| p.display(q));
            writeln!(s, "{} -> {}", r.lhs.display(q), rhs).unwrap();
        }
        if !q.arrows.is_empty() {
            let names: Vec<&str> = q.arrows.iter().map(|a| a.name.as_str()).collect();
            writeln!(s, "\n[order]\n{}", names.join(" < ")).unwrap();
        }
        if self.self_injective {
            s.push_str("\n[options]\nself_injective\n");
        }
        s
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Quiver,
    Relations,
    Loewy,
    Rules,
    Order,
    Options,
}

#[derive(Default)]
struct Parser {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<(usize, usize, String)>,
    rules: Vec<(usize, usize, String, String)>,
    order: Option<(usize, Vec<String>)>,
    loewy: Option<usize>,
    self_injective: bool,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Presentation> {
        let mut section = Section::None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("");
            let indent = line.len() - line.trim_start().len();
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') {
                section = match line {
                    "[quiver]" => Section::Quiver,
                    "[relations]" => Section::Relations,
                    "[loewy]" => Section::Loewy,
                    "[rules]" => Section::Rules,
                    "[order]" => Section::Order,
                    "[options]" => Section::Options,
                    _ => return Err(syntax(line_no, indent + 1, format!("unknown section {line}"))),
                };
                continue;
            }
            let col = indent + 1;
            match section {
                Section::None => return Err(syntax(line_no, col, "content before any section header")),
                Section::Quiver => self.quiver_line(line_no, col, line)?,
                Section::Relations => self.relations.push((line_no, col, line.to_string())),
                Section::Loewy => {
                    let value = line
                        .strip_prefix('L')
                        .map(str::trim_start)
                        .and_then(|r| r.strip_prefix('='))
                        .map(str::trim)
                        .ok_or_else(|| syntax(line_no, col, "expected `L = <int>`"))?;
                    let l = value
                        .parse::<usize>()
                        .map_err(|_| syntax(line_no, col, format!("invalid Loewy bound `{value}`")))?;
                    self.loewy = Some(l);
                }
                Section::Rules => {
                    let (lhs, rhs) = line
                        .split_once("->")
                        .ok_or_else(|| syntax(line_no, col, "expected `<path> -> <combination>`"))?;
                    self.rules.push((line_no, col, lhs.trim().to_string(), rhs.trim().to_string()));
                }
                Section::Order => {
                    let names: Vec<String> = line
                        .split(|c: char| c == '<' || c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(str::to_string)
                        .collect();
                    self.order = Some((line_no, names));
                }
                Section::Options => match line {
                    "self_injective" => self.self_injective = true,
                    _ => return Err(syntax(line_no, col, format!("unknown option `{line}`"))),
                },
            }
        }
        self.finish()
    }

    fn quiver_line(&mut self, line_no: usize, col: usize, line: &str) -> Result<()> {
        if let Some(name) = line.strip_prefix("vertex ") {
            let name = name.trim();
            if !is_ident(name) && !name.chars().all(|c| c.is_ascii_digit()) {
                return Err(syntax(line_no, col + 7, format!("invalid vertex name `{name}`")));
            }
            if self.vertices.iter().any(|v| v == name) {
                return Err(syntax(line_no, col + 7, format!("duplicate vertex `{name}`")));
            }
            self.vertices.push(name.to_string());
            return Ok(());
        }
        if let Some(rest) = line.strip_prefix("arrow ") {
            let (name, ends) = rest
                .split_once(':')
                .ok_or_else(|| syntax(line_no, col + 6, "expected `arrow <name>: <src> -> <tgt>`"))?;
            let name = name.trim();
            if !is_ident(name) {
                return Err(syntax(line_no, col + 6, format!("invalid arrow name `{name}`")));
            }
            if self.arrows.iter().any(|a| a.name == name) {
                return Err(syntax(line_no, col + 6, format!("duplicate arrow `{name}`")));
            }
            let (src, tgt) = ends
                .split_once("->")
                .ok_or_else(|| syntax(line_no, col + 6, "expected `<src> -> <tgt>`"))?;
            let lookup = |v: &str| {
                let v = v.trim();
                self.vertices
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| Error::UnknownVertex { line: line_no, name: v.to_string() })
            };
            let source = lookup(src)?;
            let target = lookup(tgt)?;
            self.arrows.push(Arrow { name: name.to_string(), source, target });
            return Ok(());
        }
        Err(syntax(line_no, col, "expected `vertex` or `arrow` declaration"))
    }

    fn finish(self) -> Result<Presentation> {
        let loewy = self.loewy.ok_or_else(|| syntax(0, 0, "missing [loewy] section"))?;
        let mut arrows = self.arrows;
        if let Some((line, names)) = &self.order {
            let mut ranked = Vec::with_capacity(arrows.len());
            for n in names {
                let a = arrows
                    .iter()
                    .find(|a| &a.name == n)
                    .ok_or_else(|| Error::UnknownArrow { line: *line, name: n.clone() })?;
                if ranked.iter().any(|b: &Arrow| &b.name == n) {
                    return Err(syntax(*line, 1, format!("arrow `{n}` listed twice in [order]")));
                }
                ranked.push(a.clone());
            }
            if ranked.len() != arrows.len() {
                return Err(syntax(*line, 1, "[order] must list every arrow exactly once"));
            }
            arrows = ranked;
        }
        let quiver = Quiver::new(self.vertices, arrows);

        let mut relations = Vec::new();
        for (line, col, text) in &self.relations {
            let comb = parse_comb(&quiver, *line, *col, text)?;
            check_parallel(&quiver, *line, &comb)?;
            if !comb.is_zero() {
                relations.push(comb);
            }
        }

        let mut rules = Vec::new();
        for (line, col, lhs, rhs) in &self.rules {
            let lhs_comb = parse_comb(&quiver, *line, *col, lhs)?;
            let lhs_path = match lhs_comb.iter().next() {
                Some((p, c)) if lhs_comb.len() == 1 && c.is_one() => p.clone(),
                _ => return Err(syntax(*line, *col, "rule left-hand side must be a single path")),
            };
            let rhs_comb = if rhs == "0" { LinComb::zero() } else { parse_comb(&quiver, *line, *col, rhs)? };
            for (p, _) in rhs_comb.iter() {
                if p.start() != lhs_path.start() || p.end() != lhs_path.end() {
                    return Err(Error::NonParallel {
                        line: *line,
                        detail: format!("{} vs {}", lhs_path.display(&quiver), p.display(&quiver)),
                    });
                }
                if p >= &lhs_path {
                    return Err(Error::NonReducingRule { line: *line, rule: format!("{lhs} -> {rhs}") });
                }
            }
            rules.push(Rule { lhs: lhs_path, rhs: rhs_comb });
        }

        Ok(Presentation { quiver, relations, loewy, rules, self_injective: self.self_injective })
    }
}

fn check_parallel(quiver: &Quiver, line: usize, comb: &LinComb<QPath>) -> Result<()> {
    let mut it = comb.iter().map(|(p, _)| p);
    if let Some(first) = it.next() {
        for p in it {
            if p.start() != first.start() || p.end() != first.end() {
                return Err(Error::NonParallel {
                    line,
                    detail: format!("{} vs {}", first.display(quiver), p.display(quiver)),
                });
            }
        }
    }
    Ok(())
}

fn parse_coefficient(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().ok()?, d.trim().parse::<i64>().ok()?),
        None => (s.parse::<i64>().ok()?, 1),
    };
    if den == 0 {
        return None;
    }
    Some(grassvar_poly::ratio(num, den))
}

/// Parses `c1*p1 +- c2*p2 ...` where each `p` is a written path.
pub(crate) fn parse_comb(quiver: &Quiver, line: usize, col: usize, text: &str) -> Result<LinComb<QPath>> {
    let mut out = LinComb::zero();
    let mut terms: Vec<(usize, bool, &str)> = Vec::new();
    let mut start = 0;
    let mut negative = false;
    for (i, c) in text.char_indices() {
        if c == '+' || c == '-' {
            // `->` never reaches here; a sign directly after `/` is not allowed.
            let chunk = &text[start..i];
            if !chunk.trim().is_empty() {
                terms.push((start, negative, chunk));
            } else if i > 0 && !text[..i].trim().is_empty() {
                return Err(syntax(line, col + i, "dangling sign"));
            }
            negative = c == '-';
            start = i + 1;
        }
    }
    let chunk = &text[start..];
    if chunk.trim().is_empty() {
        return Err(syntax(line, col + start, "expected a term"));
    }
    terms.push((start, negative, chunk));

    for (offset, neg, chunk) in terms {
        let trimmed = chunk.trim();
        let at = col + offset + (chunk.len() - chunk.trim_start().len());
        let mut coeff = Rational::one();
        let mut factors: Vec<&str> =
            trimmed.split(|c: char| c == '*' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        if let Some(first) = factors.first() {
            if first.starts_with(|c: char| c.is_ascii_digit()) {
                coeff = parse_coefficient(first).ok_or_else(|| syntax(line, at, format!("bad coefficient `{first}`")))?;
                factors.remove(0);
            }
        }
        if factors.is_empty() {
            return Err(syntax(line, at, "a term needs at least one arrow"));
        }
        let mut arrows = Vec::with_capacity(factors.len());
        for name in factors.iter().rev() {
            let a = quiver
                .arrow_index(name)
                .ok_or_else(|| Error::UnknownArrow { line, name: name.to_string() })?;
            arrows.push(a);
        }
        let start_vertex = quiver.arrows()[arrows[0]].source;
        let path = QPath::from_arrows(quiver, start_vertex, arrows)
            .map_err(|e| syntax(line, at, format!("`{trimmed}`: {e}")))?;
        out.add_term(path, if neg { -coeff } else { coeff });
    }
    Ok(out)
}

impl Presentation {
    /// Builds a presentation directly, validating like the parser does.
    pub fn from_parts(
        quiver: Quiver,
        relations: Vec<LinComb<QPath>>,
        loewy: usize,
        rules: Vec<Rule>,
        self_injective: bool,
    ) -> Result<Self> {
        for r in &relations {
            check_parallel(&quiver, 0, r)?;
        }
        for r in &rules {
            for (p, _) in r.rhs.iter() {
                if p >= &r.lhs || p.start() != r.lhs.start() || p.end() != r.lhs.end() {
                    return Err(Error::NonReducingRule { line: 0, rule: r.lhs.display(&quiver) });
                }
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(Presentation { quiver, relations, loewy, rules, self_injective })
    }

    /// Vertex lookup by name.
    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.quiver.vertex_index(name)
    }
}
