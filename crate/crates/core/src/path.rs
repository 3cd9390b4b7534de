//! Quiver paths, formal linear combinations and the projective covers.
//!
//! Paths are stored in application order: `arrows[0]` is applied first.
//! Written notation runs the other way, so the written path `b*a` (b after
//! a) is stored as `[a, b]`. Arrow indices are ranks in the declared arrow
//! order, so comparing index vectors is the lexicographic part of the
//! canonical length-lex order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use grassvar_poly::Rational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::presentation::{Presentation, Quiver};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QPath {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

impl QPath {
    pub fn trivial(vertex: usize) -> Self {
        QPath { start: vertex, end: vertex, arrows: Vec::new() }
    }

    pub fn arrow(quiver: &Quiver, arrow: usize) -> Self {
        let a = &quiver.arrows()[arrow];
        QPath { start: a.source, end: a.target, arrows: vec![arrow] }
    }

    /// Builds a path from arrows in application order.
    pub fn from_arrows(quiver: &Quiver, start: usize, arrows: Vec<usize>) -> Result<Self> {
        let mut end = start;
        for &a in &arrows {
            let arrow = &quiver.arrows()[a];
            if arrow.source != end {
                return Err(Error::NotComposable(format!(
                    "arrow {} starts at {}, previous path ends at {}",
                    arrow.name,
                    quiver.vertex_name(arrow.source),
                    quiver.vertex_name(end)
                )));
            }
            end = arrow.target;
        }
        Ok(QPath { start, end, arrows })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// `arrow` after `self`.
    pub fn then(&self, quiver: &Quiver, arrow: usize) -> Option<QPath> {
        let a = &quiver.arrows()[arrow];
        if a.source != self.end {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        Some(QPath { start: self.start, end: a.target, arrows })
    }

    /// Initial subpath consisting of the first `k` arrows applied.
    pub fn prefix(&self, quiver: &Quiver, k: usize) -> QPath {
        let arrows = self.arrows[..k].to_vec();
        let end = if k == 0 { self.start } else { quiver.arrows()[arrows[k - 1]].target };
        QPath { start: self.start, end, arrows }
    }

    /// The part of the path applied after the first `k` arrows.
    pub fn suffix(&self, quiver: &Quiver, k: usize) -> QPath {
        let start = if k == 0 { self.start } else { quiver.arrows()[self.arrows[k - 1]].target };
        QPath { start, end: self.end, arrows: self.arrows[k..].to_vec() }
    }

    /// Written form, e.g. `b*a`; trivial paths print as `e_<vertex>`.
    pub fn display(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", quiver.vertex_name(self.start));
        }
        written(quiver, &self.arrows)
    }
}

fn written(quiver: &Quiver, arrows: &[usize]) -> String {
    let names: Vec<&str> = arrows.iter().rev().map(|&a| quiver.arrows()[a].name.as_str()).collect();
    names.join("*")
}

/// Canonical order: length, then lex on the application-order arrow ranks.
impl Ord for QPath {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.start.cmp(&other.start))
    }
}

impl PartialOrd for QPath {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `p` after `q`.
pub fn compose(p: &QPath, q: &QPath) -> Result<QPath> {
    if p.start != q.end {
        return Err(Error::NotComposable(format!(
            "start of left factor ({}) differs from end of right factor ({})",
            p.start, q.end
        )));
    }
    let mut arrows = q.arrows.clone();
    arrows.extend_from_slice(&p.arrows);
    Ok(QPath { start: q.start, end: p.end, arrows })
}

/// A path `p z_r` in the lifted projective cover: top index `r` (0-based)
/// and a path starting at the top's norming vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPath {
    top: usize,
    path: QPath,
}

impl ProjPath {
    pub fn new(top: usize, path: QPath) -> Self {
        ProjPath { top, path }
    }

    pub fn top_element(top: usize, vertex: usize) -> Self {
        ProjPath { top, path: QPath::trivial(vertex) }
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn path(&self) -> &QPath {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_top(&self) -> bool {
        self.path.is_trivial()
    }

    pub fn end(&self) -> usize {
        self.path.end
    }

    pub fn then(&self, quiver: &Quiver, arrow: usize) -> Option<ProjPath> {
        self.path.then(quiver, arrow).map(|path| ProjPath { top: self.top, path })
    }

    /// `p` applied after `self`.
    pub fn extend(&self, p: &QPath) -> Result<ProjPath> {
        Ok(ProjPath { top: self.top, path: compose(p, &self.path)? })
    }

    pub fn prefix(&self, quiver: &Quiver, k: usize) -> ProjPath {
        ProjPath { top: self.top, path: self.path.prefix(quiver, k) }
    }

    /// Sort key `[top, len, arrows...]`, used for variable identities.
    pub fn key(&self) -> Vec<u32> {
        let mut k = Vec::with_capacity(self.len() + 2);
        k.push(self.top as u32);
        k.push(self.len() as u32);
        k.extend(self.path.arrows.iter().map(|&a| a as u32));
        k
    }

    /// Written form, e.g. `b*a*z1` or `z2`.
    pub fn display(&self, quiver: &Quiver) -> String {
        if self.path.is_trivial() {
            format!("z{}", self.top + 1)
        } else {
            format!("{}*z{}", written(quiver, &self.path.arrows), self.top + 1)
        }
    }
}

/// Order by top index, then the canonical path order.
impl Ord for ProjPath {
    fn cmp(&self, other: &Self) -> Ordering {
        self.top.cmp(&other.top).then_with(|| self.path.cmp(&other.path))
    }
}

impl PartialOrd for ProjPath {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite formal combination with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<T: Ord> {
    terms: BTreeMap<T, Rational>,
}

impl<T: Ord> Default for LinComb<T> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<T: Ord + Clone> LinComb<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(t: T) -> Self {
        let mut c = Self::default();
        c.add_term(t, Rational::one());
        c
    }

    pub fn add_term(&mut self, t: T, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(t);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<T>, c: &Rational) {
        for (t, k) in &other.terms {
            self.add_term(t.clone(), k * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::default();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, t: &T) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&T, &Rational)> {
        self.terms.iter()
    }

    pub fn map_terms<U: Ord + Clone>(&self, f: impl Fn(&T) -> U) -> LinComb<U> {
        let mut out = LinComb::default();
        for (t, c) in &self.terms {
            out.add_term(f(t), c.clone());
        }
        out
    }
}

/// Prints terms in descending canonical order, e.g. `a*b - b*a` or `2*a - 1/3*b`.
pub fn format_lincomb<T: Ord + Clone>(comb: &LinComb<T>, name: impl Fn(&T) -> String) -> String {
    if comb.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (t, c)) in comb.iter().rev().enumerate() {
        let neg = c < &Rational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&abs.to_string());
            out.push('*');
        }
        out.push_str(&name(t));
    }
    out
}

/// The top elements `z_1..z_d` with their norming vertices; the first `t`
/// of them span the small cover `P`, all of them the big cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopFrame {
    norming: Vec<usize>,
    t: usize,
}

impl TopFrame {
    pub fn new(norming: Vec<usize>, t: usize) -> Self {
        assert!(t <= norming.len());
        TopFrame { norming, t }
    }

    /// `t` small tops followed by `dimvec[i] - top[i]` extra tops per vertex, in vertex order.
    pub fn with_extra(small: Vec<usize>, dimvec: &[usize]) -> Result<Self> {
        let t = small.len();
        let mut counts = vec![0usize; dimvec.len()];
        for &v in &small {
            counts[v] += 1;
        }
        let mut norming = small;
        for (v, (&d, &c)) in dimvec.iter().zip(&counts).enumerate() {
            if c > d {
                return Err(Error::DimensionMismatch(dimvec.to_vec(), counts.clone()));
            }
            norming.extend(std::iter::repeat(v).take(d - c));
        }
        Ok(TopFrame { norming, t })
    }

    pub fn norming(&self) -> &[usize] {
        &self.norming
    }

    pub fn vertex(&self, top: usize) -> usize {
        self.norming[top]
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn d(&self) -> usize {
        self.norming.len()
    }
}

/// Normal forms of paths under the presentation's rewrite system.
pub struct Rewriter<'a> {
    pres: &'a Presentation,
    order: Vec<usize>,
    cache: HashMap<QPath, LinComb<QPath>>,
}

impl<'a> Rewriter<'a> {
    pub fn new(pres: &'a Presentation) -> Self {
        let mut order: Vec<usize> = (0..pres.rules().len()).collect();
        order.sort_by_key(|&i| pres.rules()[i].lhs.len());
        Rewriter { pres, order, cache: HashMap::new() }
    }

    /// Leftmost (in written form) redex, shortest left-hand side first.
    fn redex(&self, p: &QPath) -> Option<(usize, usize)> {
        let n = p.len();
        for s in 0..n {
            for &r in &self.order {
                let lhs = &self.pres.rules()[r].lhs;
                let k = lhs.len();
                if k == 0 || k > n - s {
                    continue;
                }
                let i = n - s - k;
                if p.arrows[i..i + k] == lhs.arrows[..] {
                    return Some((r, i));
                }
            }
        }
        None
    }

    pub fn path(&mut self, p: &QPath) -> LinComb<QPath> {
        if p.len() > self.pres.loewy() {
            return LinComb::zero();
        }
        if let Some(c) = self.cache.get(p) {
            return c.clone();
        }
        let result = match self.redex(p) {
            None => LinComb::single(p.clone()),
            Some((r, i)) => {
                let rule = &self.pres.rules()[r];
                let k = rule.lhs.len();
                let mut out = LinComb::zero();
                for (rhs, c) in rule.rhs.iter() {
                    let mut arrows = p.arrows[..i].to_vec();
                    arrows.extend_from_slice(&rhs.arrows);
                    arrows.extend_from_slice(&p.arrows[i + k..]);
                    let q = QPath { start: p.start, end: p.end, arrows };
                    let nf = self.path(&q);
                    out.add_scaled(&nf, c);
                }
                out
            }
        };
        self.cache.insert(p.clone(), result.clone());
        result
    }

    pub fn comb(&mut self, x: &LinComb<QPath>) -> LinComb<QPath> {
        let mut out = LinComb::zero();
        for (p, c) in x.iter() {
            let nf = self.path(p);
            out.add_scaled(&nf, c);
        }
        out
    }

    pub fn proj(&mut self, x: &LinComb<ProjPath>) -> LinComb<ProjPath> {
        let mut out = LinComb::zero();
        for (p, c) in x.iter() {
            let nf = self.path(p.path());
            for (q, k) in nf.iter() {
                out.add_term(ProjPath::new(p.top, q.clone()), k * c);
            }
        }
        out
    }

    pub fn is_irreducible(&self, p: &QPath) -> bool {
        p.len() <= self.pres.loewy() && self.redex(p).is_none()
    }
}

/// Fully rewritten form of a combination of paths in the projective cover.
pub fn normal_form(x: &LinComb<ProjPath>, pres: &Presentation) -> LinComb<ProjPath> {
    Rewriter::new(pres).proj(x)
}

/// Rule-irreducible paths of length at most `L`, in canonical order.
pub fn algebra_basis(pres: &Presentation) -> Vec<QPath> {
    let rw = Rewriter::new(pres);
    let quiver = pres.quiver();
    let mut layer: Vec<QPath> = (0..quiver.num_vertices()).map(QPath::trivial).collect();
    let mut out = layer.clone();
    for _ in 0..pres.loewy() {
        let mut next = Vec::new();
        for p in &layer {
            for a in quiver.arrows_from(p.end) {
                let q = p.then(quiver, a).unwrap();
                // Subwords of irreducible words are irreducible, so extending
                // only irreducible paths loses nothing.
                if rw.is_irreducible(&q) {
                    next.push(q);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out
}

/// Basis `{q z_r}` of the big cover, ordered by top, length, lex.
pub fn bold_p_basis(frame: &TopFrame, pres: &Presentation) -> Vec<ProjPath> {
    let basis = algebra_basis(pres);
    let mut out = Vec::new();
    for (r, &v) in frame.norming().iter().enumerate() {
        out.extend(basis.iter().filter(|q| q.start == v).map(|q| ProjPath::new(r, q.clone())));
    }
    out
}

/// Coordinates of rewritten paths against the basis of the big cover.
pub struct Coordinates<'a> {
    rw: Rewriter<'a>,
    index: HashMap<ProjPath, usize>,
    dim: usize,
}

impl<'a> Coordinates<'a> {
    pub fn new(frame: &TopFrame, pres: &'a Presentation) -> Self {
        let basis = bold_p_basis(frame, pres);
        let dim = basis.len();
        let index = basis.into_iter().enumerate().map(|(i, p)| (p, i)).collect();
        Coordinates { rw: Rewriter::new(pres), index, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&mut self, p: &ProjPath) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        let nf = self.rw.path(p.path());
        for (q, c) in nf.iter() {
            let i = self.index[&ProjPath::new(p.top, q.clone())];
            v[i] += c;
        }
        v
    }
}

impl fmt::Display for TopFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={}, norming={:?}", self.t, self.norming)
    }
}
