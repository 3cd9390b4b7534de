//! Serialization of polynomial systems and export to computer algebra systems.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use grassvar_poly::{Poly, Var};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grass::TauSystem;

/// Which relation, top and basis index produced a τ polynomial (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub relation: String,
    pub top: usize,
    pub index: usize,
}

/// A named list of polynomials over a declared variable list.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    pub name: String,
    pub variables: Vec<Var>,
    pub entries: Vec<(Poly, Option<Provenance>)>,
}

impl PolySystem {
    pub fn new(name: impl Into<String>, variables: Vec<Var>, polys: Vec<Poly>) -> Self {
        PolySystem { name: name.into(), variables, entries: polys.into_iter().map(|p| (p, None)).collect() }
    }

    pub fn from_tau(name: impl Into<String>, tau: &TauSystem) -> Self {
        let pres = tau.context().presentation();
        let entries = tau
            .records()
            .iter()
            .map(|r| {
                let prov = Provenance { relation: pres.relation_display(r.relation), top: r.top + 1, index: r.index + 1 };
                (r.poly.clone(), Some(prov))
            })
            .collect();
        PolySystem { name: name.into(), variables: tau.variables(), entries }
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.entries.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Declared variables followed by any undeclared ones that occur.
    pub fn all_variables(&self) -> Vec<Var> {
        let mut out = self.variables.clone();
        let declared: BTreeSet<&Var> = self.variables.iter().collect();
        let extra: BTreeSet<Var> =
            self.entries.iter().flat_map(|(p, _)| p.vars()).filter(|v| !declared.contains(v)).collect();
        out.extend(extra);
        out
    }

    /// Primitive integer polynomials, deduplicated and sorted.
    pub fn canonical(&self) -> PolySystem {
        let mut entries: Vec<(Poly, Option<Provenance>)> = Vec::new();
        for (p, prov) in &self.entries {
            let c = p.primitive();
            if c.is_zero() || entries.iter().any(|(q, _)| *q == c) {
                continue;
            }
            entries.push((c, prov.clone()));
        }
        entries.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        PolySystem { name: self.name.clone(), variables: self.variables.clone(), entries }
    }
}

/// Total degree, then the terms from the top in grevlex order.
pub fn canonical_cmp(a: &Poly, b: &Poly) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| {
        let (ta, tb) = (a.sorted_terms(), b.sorted_terms());
        for ((ma, ca), (mb, cb)) in ta.iter().zip(&tb) {
            let ord = ma.grevlex_cmp(mb).then_with(|| ca.cmp(cb));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        ta.len().cmp(&tb.len())
    })
}

pub fn canonicalize(polys: &[Poly]) -> Vec<Poly> {
    PolySystem::new("", Vec::new(), polys.to_vec()).canonical().polys()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    M2,
    Singular,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "m2" | "macaulay2" => Ok(Format::M2),
            "singular" => Ok(Format::Singular),
            other => Err(Error::Unsupported(format!("output format `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dialect {
    Macaulay2,
    Singular,
}

/// Plain listing: a variable section and a polynomial section, provenance as comments.
pub fn to_text(sys: &PolySystem) -> String {
    let mut out = String::new();
    let vars = sys.all_variables();
    writeln!(out, "# {}: variables ({})", sys.name, vars.len()).unwrap();
    for v in &vars {
        writeln!(out, "{v}").unwrap();
    }
    writeln!(out, "# {}: polynomials ({})", sys.name, sys.len()).unwrap();
    for (p, prov) in &sys.entries {
        match prov {
            Some(pv) => writeln!(out, "{p}  # {} z{} l={}", pv.relation, pv.top, pv.index).unwrap(),
            None => writeln!(out, "{p}").unwrap(),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coefficient: String,
    pub monomial: Vec<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub name: String,
    pub variables: Vec<String>,
    pub polynomials: Vec<Vec<TermJson>>,
    pub provenance: Vec<Option<Provenance>>,
}

impl From<&PolySystem> for SystemJson {
    fn from(sys: &PolySystem) -> Self {
        let polynomials = sys
            .entries
            .iter()
            .map(|(p, _)| {
                p.sorted_terms()
                    .into_iter()
                    .map(|(m, c)| TermJson {
                        coefficient: c.to_string(),
                        monomial: m.factors().iter().map(|(v, e)| (v.to_string(), *e)).collect(),
                    })
                    .collect()
            })
            .collect();
        SystemJson {
            name: sys.name.clone(),
            variables: sys.all_variables().iter().map(Var::to_string).collect(),
            polynomials,
            provenance: sys.entries.iter().map(|(_, pv)| pv.clone()).collect(),
        }
    }
}

/// Top-level JSON artifact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    pub mode: String,
    pub systems: Vec<SystemJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub fn to_json(mode: &str, systems: &[PolySystem], notes: Vec<String>) -> Result<String> {
    let artifact = Artifact { mode: mode.to_string(), systems: systems.iter().map(SystemJson::from).collect(), notes };
    Ok(serde_json::to_string_pretty(&artifact)? + "\n")
}

/// Script variable names `x1, x2, …` paired with engine labels.
pub fn mapping_table(sys: &PolySystem) -> Vec<(String, String)> {
    sys.all_variables().iter().enumerate().map(|(i, v)| (format!("x{}", i + 1), v.to_string())).collect()
}

fn render(p: &Poly, names: &HashMap<Var, String>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.sorted_terms().into_iter().enumerate() {
        let abs = c.abs();
        if k == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let factors: Vec<String> = m
            .factors()
            .iter()
            .map(|(v, e)| if *e == 1 { names[v].clone() } else { format!("{}^{e}", names[v]) })
            .collect();
        if factors.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                write!(out, "{abs}*").unwrap();
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// A self-contained script computing minimal primes (and, if asked, primality).
pub fn export_cas(sys: &PolySystem, dialect: Dialect, primality: bool) -> String {
    let sys = sys.canonical();
    let table = mapping_table(&sys);
    let names: HashMap<Var, String> =
        sys.all_variables().into_iter().zip(table.iter().map(|(x, _)| x.clone())).collect();
    let gens: Vec<String> = sys.entries.iter().map(|(p, _)| render(p, &names)).collect();
    let script_vars: Vec<&str> = table.iter().map(|(x, _)| x.as_str()).collect();
    let mut out = String::new();
    let comment = match dialect {
        Dialect::Macaulay2 => "--",
        Dialect::Singular => "//",
    };
    writeln!(out, "{comment} {}: {} variables, {} generators", sys.name, table.len(), gens.len()).unwrap();
    for (x, label) in &table {
        writeln!(out, "{comment} {x} = {label}").unwrap();
    }
    match dialect {
        Dialect::Macaulay2 => {
            writeln!(out, "R = QQ[{}];", script_vars.join(", ")).unwrap();
            if gens.is_empty() {
                writeln!(out, "I = ideal(0_R);").unwrap();
            } else {
                writeln!(out, "I = ideal(\n  {}\n);", gens.join(",\n  ")).unwrap();
            }
            writeln!(out, "mp = minimalPrimes I;").unwrap();
            writeln!(out, "print toString mp;").unwrap();
            if primality {
                writeln!(out, "print isPrime I;").unwrap();
            }
        }
        Dialect::Singular => {
            writeln!(out, "LIB \"primdec.lib\";").unwrap();
            let ring_vars = if script_vars.is_empty() { "x0".to_string() } else { script_vars.join(", ") };
            writeln!(out, "ring r = 0, ({ring_vars}), dp;").unwrap();
            if gens.is_empty() {
                writeln!(out, "ideal I = 0;").unwrap();
            } else {
                writeln!(out, "ideal I =\n  {};", gens.join(",\n  ")).unwrap();
            }
            writeln!(out, "list pd = primdecGTZ(I);").unwrap();
            writeln!(out, "print(pd);").unwrap();
            writeln!(out, "list mp = minAssGTZ(I);").unwrap();
            writeln!(out, "print(mp);").unwrap();
            if primality {
                writeln!(out, "int isprime = size(pd) == 1;").unwrap();
                writeln!(out, "if (isprime) {{ isprime = size(reduce(pd[1][2], std(I))) == 0; }}").unwrap();
                writeln!(out, "print(isprime);").unwrap();
            }
        }
    }
    out
}

/// What a script declares, as seen by [`check_script`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptSummary {
    pub variables: Vec<String>,
    pub generators: usize,
    pub mapping: Vec<(String, String)>,
    pub primality: bool,
}

/// Checks that a script is made of the statements this module emits, with
/// well-formed polynomials over the declared ring.
pub fn check_script(text: &str, dialect: Dialect) -> std::result::Result<ScriptSummary, String> {
    let comment = match dialect {
        Dialect::Macaulay2 => "--",
        Dialect::Singular => "//",
    };
    let mut mapping = Vec::new();
    let mut body = String::new();
    for line in text.lines() {
        let (code, note) = match line.find(comment) {
            Some(i) => (&line[..i], Some(line[i + comment.len()..].trim())),
            None => (line, None),
        };
        if let Some((x, label)) = note.and_then(|n| n.split_once(" = ")) {
            mapping.push((x.to_string(), label.to_string()));
        }
        body.push_str(code);
        body.push('\n');
    }
    let mut state = ScriptState::default();
    for stmt in split_statements(&body)? {
        match dialect {
            Dialect::Macaulay2 => state.m2(&stmt)?,
            Dialect::Singular => state.singular(&stmt)?,
        }
    }
    let variables = state.ring.ok_or("no ring declared")?;
    let generators = state.generators.ok_or("no ideal declared")?;
    if !state.decomposed {
        return Err("no decomposition call".into());
    }
    Ok(ScriptSummary { variables, generators, mapping, primality: state.primality })
}

#[derive(Default)]
struct ScriptState {
    ring: Option<Vec<String>>,
    generators: Option<usize>,
    decomposed: bool,
    primality: bool,
}

impl ScriptState {
    fn ring_vars(&self) -> std::result::Result<&[String], String> {
        self.ring.as_deref().ok_or_else(|| "ideal before ring declaration".to_string())
    }

    fn declare(&mut self, list: &str) -> std::result::Result<(), String> {
        let vars: Vec<String> =
            if list.trim().is_empty() { Vec::new() } else { list.split(',').map(|v| v.trim().to_string()).collect() };
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !is_ident(v) || !seen.insert(v) {
                return Err(format!("bad ring variable `{v}`"));
            }
        }
        self.ring = Some(vars);
        Ok(())
    }

    fn ideal(&mut self, list: &str, zero: &str) -> std::result::Result<(), String> {
        let vars = self.ring_vars()?.to_vec();
        let list = list.trim();
        if list == zero {
            self.generators = Some(0);
            return Ok(());
        }
        let items = split_top_level(list, ',');
        for item in &items {
            PolyParser::new(item, &vars).parse()?;
        }
        self.generators = Some(items.len());
        Ok(())
    }

    fn needs_ideal(&self) -> std::result::Result<(), String> {
        self.generators.map(|_| ()).ok_or_else(|| "call before ideal declaration".to_string())
    }

    fn m2(&mut self, stmt: &str) -> std::result::Result<(), String> {
        if let Some(rest) = stmt.strip_prefix("R = QQ[").and_then(|r| r.strip_suffix(']')) {
            return self.declare(rest);
        }
        if let Some(rest) = stmt.strip_prefix("I = ideal(").and_then(|r| r.strip_suffix(')')) {
            return self.ideal(rest, "0_R");
        }
        match stmt {
            "mp = minimalPrimes I" => {
                self.needs_ideal()?;
                self.decomposed = true;
            }
            "print toString mp" if self.decomposed => {}
            "print isPrime I" => {
                self.needs_ideal()?;
                self.primality = true;
            }
            _ => return Err(format!("unexpected statement `{stmt}`")),
        }
        Ok(())
    }

    fn singular(&mut self, stmt: &str) -> std::result::Result<(), String> {
        if let Some(rest) = stmt.strip_prefix("ring r = 0, (").and_then(|r| r.strip_suffix("), dp")) {
            return self.declare(rest);
        }
        if let Some(rest) = stmt.strip_prefix("ideal I =") {
            return self.ideal(rest, "0");
        }
        if let Some(rest) = stmt.strip_prefix("if (isprime) {").and_then(|r| r.strip_suffix('}')) {
            for inner in split_statements(rest)? {
                if inner != "isprime = size(reduce(pd[1][2], std(I))) == 0" {
                    return Err(format!("unexpected statement `{inner}` in conditional"));
                }
            }
            self.primality = true;
            return Ok(());
        }
        match stmt {
            "LIB \"primdec.lib\"" => {}
            "list pd = primdecGTZ(I)" | "list mp = minAssGTZ(I)" => {
                self.needs_ideal()?;
                self.decomposed = true;
            }
            "print(pd)" | "print(mp)" | "int isprime = size(pd) == 1" | "print(isprime)" if self.decomposed => {}
            _ => return Err(format!("unexpected statement `{stmt}`")),
        }
        Ok(())
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits on `;` outside brackets, braces and quotes; normalizes whitespace.
fn split_statements(body: &str) -> std::result::Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut depth: i32 = 0;
    let mut quoted = false;
    let mut cur = String::new();
    for c in body.chars() {
        match c {
            '"' => quoted = !quoted,
            '(' | '[' | '{' if !quoted => depth += 1,
            ')' | ']' | '}' if !quoted => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced closing delimiter".into());
                }
                if c == '}' && depth == 0 {
                    cur.push(c);
                    out.push(normalize(&cur));
                    cur.clear();
                    continue;
                }
            }
            ';' if depth == 0 && !quoted => {
                let s = normalize(&cur);
                if !s.is_empty() {
                    out.push(s);
                }
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if depth != 0 || quoted {
        return Err("unbalanced delimiters".into());
    }
    if !normalize(&cur).is_empty() {
        return Err(format!("unterminated statement `{}`", normalize(&cur)));
    }
    Ok(out)
}

fn normalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur.trim().to_string());
    out
}

/// Recursive descent over `expr := [±] term (± term)*`,
/// `term := factor (* factor)*`, `factor := int [/ int] | var [^ int] | (expr)`.
struct PolyParser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
}

impl<'a> PolyParser<'a> {
    fn new(text: &str, vars: &'a [String]) -> Self {
        PolyParser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, vars }
    }

    fn parse(mut self) -> std::result::Result<(), String> {
        if self.chars.is_empty() {
            return Err("empty polynomial".into());
        }
        self.expr()?;
        if self.pos != self.chars.len() {
            return Err(format!("trailing input at {}", self.pos));
        }
        Ok(())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> std::result::Result<(), String> {
        if matches!(self.peek(), Some('+' | '-')) {
            self.pos += 1;
        }
        self.term()?;
        while matches!(self.peek(), Some('+' | '-')) {
            self.pos += 1;
            self.term()?;
        }
        Ok(())
    }

    fn term(&mut self) -> std::result::Result<(), String> {
        self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            self.factor()?;
        }
        Ok(())
    }

    fn integer(&mut self) -> std::result::Result<(), String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(format!("expected integer at {start}"));
        }
        Ok(())
    }

    fn factor(&mut self) -> std::result::Result<(), String> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                self.expr()?;
                if self.peek() != Some(')') {
                    return Err("missing `)`".into());
                }
                self.pos += 1;
            }
            Some(c) if c.is_ascii_digit() => {
                self.integer()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.integer()?;
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if !self.vars.contains(&name) {
                    return Err(format!("undeclared variable `{name}`"));
                }
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.integer()?;
                }
            }
            other => return Err(format!("unexpected {other:?} at {}", self.pos)),
        }
        Ok(())
    }
}
