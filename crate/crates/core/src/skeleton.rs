//! Semisimple sequences and skeleta.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::EchelonSpan;
use crate::path::{algebra_basis, Coordinates, ProjPath, QPath, TopFrame};
use crate::presentation::Presentation;

/// Multiplicities `m(l, i)` of the simple `S_i` in radical layer `l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemisimpleSequence {
    grid: Vec<Vec<usize>>,
}

impl SemisimpleSequence {
    /// `grid[l][i]`; all rows must have the same length.
    pub fn new(grid: Vec<Vec<usize>>) -> Result<Self> {
        let n = grid.first().map_or(0, Vec::len);
        if grid.iter().any(|row| row.len() != n) {
            return Err(Error::BadSequence("rows have different lengths".into()));
        }
        let s = SemisimpleSequence { grid };
        if s.d() > 0 && s.t() == 0 {
            return Err(Error::BadSequence("nonzero sequence with empty top".into()));
        }
        Ok(s)
    }

    /// Parses layers separated by `;`, vertex entries by `,`: `1;2;1` or `1,0;0,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut grid = Vec::new();
        for layer in text.split(';') {
            let row: std::result::Result<Vec<usize>, _> =
                layer.split(',').map(|x| x.trim().parse::<usize>()).collect();
            grid.push(row.map_err(|_| Error::BadSequence(format!("cannot parse `{text}`")))?);
        }
        Self::new(grid)
    }

    pub fn grid(&self) -> &[Vec<usize>] {
        &self.grid
    }

    pub fn layers(&self) -> usize {
        self.grid.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.grid.first().map_or(0, Vec::len)
    }

    pub fn m(&self, l: usize, i: usize) -> usize {
        self.grid.get(l).map_or(0, |row| row[i])
    }

    pub fn top(&self) -> &[usize] {
        &self.grid[0]
    }

    pub fn dimvec(&self) -> Vec<usize> {
        (0..self.num_vertices()).map(|i| self.grid.iter().map(|row| row[i]).sum()).collect()
    }

    pub fn t(&self) -> usize {
        self.top().iter().sum()
    }

    pub fn d(&self) -> usize {
        self.grid.iter().flatten().sum()
    }

    /// Frame whose tops realize the top row in vertex order.
    pub fn frame(&self) -> TopFrame {
        let mut norming = Vec::new();
        for (v, &m) in self.top().iter().enumerate() {
            norming.extend(std::iter::repeat(v).take(m));
        }
        let t = norming.len();
        TopFrame::new(norming, t)
    }

    /// All sequences with `layers` layers over `n` vertices with dimension vector `dimvec`.
    pub fn all_with_dimvec(dimvec: &[usize], layers: usize) -> Vec<SemisimpleSequence> {
        let n = dimvec.len();
        let mut out = Vec::new();
        let mut grid = vec![vec![0usize; n]; layers];
        fn rec(
            dimvec: &[usize],
            layers: usize,
            cell: usize,
            grid: &mut Vec<Vec<usize>>,
            remaining: &mut Vec<usize>,
            out: &mut Vec<SemisimpleSequence>,
        ) {
            let n = dimvec.len();
            if cell == layers * n {
                if remaining.iter().all(|&r| r == 0) {
                    if let Ok(s) = SemisimpleSequence::new(grid.clone()) {
                        out.push(s);
                    }
                }
                return;
            }
            let (l, i) = (cell / n, cell % n);
            let range: Vec<usize> =
                if l + 1 == layers { vec![remaining[i]] } else { (0..=remaining[i]).rev().collect() };
            for m in range {
                grid[l][i] = m;
                remaining[i] -= m;
                rec(dimvec, layers, cell + 1, grid, remaining, out);
                remaining[i] += m;
            }
            grid[l][i] = 0;
        }
        let mut remaining = dimvec.to_vec();
        rec(dimvec, layers, 0, &mut grid, &mut remaining, &mut out);
        out
    }
}

impl fmt::Display for SemisimpleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let layers: Vec<String> = self
            .grid
            .iter()
            .map(|row| row.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&layers.join(";"))
    }
}

/// Partial-sum dominance: `s_prime <= s` iff every partial layer sum of
/// `s_prime` is at least the corresponding sum of `s`.
pub fn dominance_leq(s_prime: &SemisimpleSequence, s: &SemisimpleSequence) -> Result<bool> {
    if s_prime.dimvec() != s.dimvec() {
        return Err(Error::DimensionMismatch(s_prime.dimvec(), s.dimvec()));
    }
    let layers = s_prime.layers().max(s.layers());
    for i in 0..s.num_vertices() {
        let (mut a, mut b) = (0, 0);
        for l in 0..layers {
            a += s_prime.m(l, i);
            b += s.m(l, i);
            if a < b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A skeleton: paths in the lifted small cover, closed under initial
/// subpaths, over tops `z_1..z_t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Skeleton {
    tops: Vec<usize>,
    paths: Vec<ProjPath>,
}

impl Skeleton {
    /// Validates closure, top vertices and the Loewy bound; sorts the paths.
    pub fn new(tops: Vec<usize>, paths: impl IntoIterator<Item = ProjPath>, pres: &Presentation) -> Result<Self> {
        let set: BTreeSet<ProjPath> = paths.into_iter().collect();
        let quiver = pres.quiver();
        for p in &set {
            let Some(&v) = tops.get(p.top()) else {
                return Err(Error::TopGap(p.top() + 1));
            };
            if p.path().start() != v {
                return Err(Error::BadTopPath(p.display(quiver)));
            }
            if p.len() > pres.loewy() {
                return Err(Error::TooLong { path: p.display(quiver), bound: pres.loewy() });
            }
            for k in 0..p.len() {
                if !set.contains(&p.prefix(quiver, k)) {
                    return Err(Error::ClosureViolation(p.display(quiver)));
                }
            }
        }
        for (r, &v) in tops.iter().enumerate() {
            if !set.contains(&ProjPath::top_element(r, v)) {
                return Err(Error::TopGap(r + 1));
            }
        }
        Ok(Skeleton { tops, paths: set.into_iter().collect() })
    }

    /// Parses `z<r> @ <vertex> : <path>, <path>, ...` entries separated by
    /// newlines or `;`. `ε` (or `eps`) is the trivial path.
    pub fn parse(text: &str, pres: &Presentation) -> Result<Self> {
        let quiver = pres.quiver();
        let mut tops: BTreeMap<usize, usize> = BTreeMap::new();
        let mut paths = Vec::new();
        let mut line_no = 0;
        for line in text.lines() {
            line_no += 1;
            let line = line.split('#').next().unwrap_or("");
            for entry in line.split(';') {
                let entry = entry.trim();
                if entry.is_empty() {
                    continue;
                }
                let syntax = |m: &str| Error::Syntax { line: line_no, column: 1, message: m.to_string() };
                let (head, body) = entry.split_once(':').ok_or_else(|| syntax("expected `z<r>@<vertex>: paths`"))?;
                let (z, vertex) = head.split_once('@').ok_or_else(|| syntax("expected `z<r>@<vertex>`"))?;
                let r: usize = z
                    .trim()
                    .strip_prefix('z')
                    .and_then(|n| n.parse().ok())
                    .filter(|&n: &usize| n >= 1)
                    .ok_or_else(|| syntax("top element must be `z<r>` with r >= 1"))?;
                let vname = vertex.trim();
                let v = quiver
                    .vertex_index(vname)
                    .ok_or_else(|| Error::UnknownVertex { line: line_no, name: vname.to_string() })?;
                if tops.insert(r - 1, v).is_some() {
                    return Err(syntax("top element listed twice"));
                }
                for token in body.split(',') {
                    let token = token.trim();
                    if token.is_empty() {
                        continue;
                    }
                    let arrows = if token == "ε" || token == "eps" {
                        Vec::new()
                    } else {
                        quiver
                            .parse_word(token)
                            .ok_or_else(|| Error::UnknownArrow { line: line_no, name: token.to_string() })?
                    };
                    let path = QPath::from_arrows(quiver, v, arrows)
                        .map_err(|_| Error::BadTopPath(format!("{token}*z{r}")))?;
                    paths.push(ProjPath::new(r - 1, path));
                }
            }
        }
        let mut top_list = Vec::with_capacity(tops.len());
        for (k, (r, v)) in tops.into_iter().enumerate() {
            if r != k {
                return Err(Error::TopGap(r + 1));
            }
            top_list.push(v);
        }
        Self::new(top_list, paths, pres)
    }

    /// Same syntax as [`Skeleton::parse`], one top per line.
    pub fn to_text(&self, pres: &Presentation) -> String {
        let quiver = pres.quiver();
        let mut out = String::new();
        for (r, &v) in self.tops.iter().enumerate() {
            let words: Vec<String> = self
                .paths
                .iter()
                .filter(|p| p.top() == r)
                .map(|p| if p.is_top() { "ε".to_string() } else { p.path().display(quiver) })
                .collect();
            out.push_str(&format!("z{}@{}: {}\n", r + 1, quiver.vertex_name(v), words.join(", ")));
        }
        out
    }

    pub fn tops(&self) -> &[usize] {
        &self.tops
    }

    /// Members in canonical order: `b_1, ..., b_d`.
    pub fn paths(&self) -> &[ProjPath] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn contains(&self, p: &ProjPath) -> bool {
        self.paths.binary_search(p).is_ok()
    }

    pub fn t(&self) -> usize {
        self.tops.len()
    }

    /// Layer counts `m(l, i)` for `l = 0..=L`.
    pub fn layering(&self, pres: &Presentation) -> SemisimpleSequence {
        let mut grid = vec![vec![0usize; pres.num_vertices()]; pres.loewy() + 1];
        for p in &self.paths {
            grid[p.len()][p.end()] += 1;
        }
        SemisimpleSequence { grid }
    }

    pub fn dimvec(&self, n: usize) -> Vec<usize> {
        let mut d = vec![0usize; n];
        for p in &self.paths {
            d[p.end()] += 1;
        }
        d
    }

    pub fn check_layering(&self, pres: &Presentation, expected: &SemisimpleSequence) -> Result<()> {
        let found = self.layering(pres);
        let layers = found.layers().max(expected.layers());
        let n = pres.num_vertices();
        let matches = expected.num_vertices() == n
            && (0..layers).all(|l| (0..n).all(|i| found.m(l, i) == expected.m(l, i)));
        if matches {
            Ok(())
        } else {
            Err(Error::LayerMismatch { found: found.to_string(), expected: expected.to_string() })
        }
    }

    /// Small frame (`t = d` tops) or big frame (extra tops filling the dimension vector).
    pub fn frame(&self, pres: &Presentation, setting: Setting) -> Result<TopFrame> {
        match setting {
            Setting::Small => Ok(TopFrame::new(self.tops.clone(), self.tops.len())),
            Setting::Big => TopFrame::with_extra(self.tops.clone(), &self.dimvec(pres.num_vertices())),
        }
    }

    /// Members of the tree below `z_r`.
    pub fn tree(&self, r: usize) -> impl Iterator<Item = &ProjPath> {
        self.paths.iter().filter(move |p| p.top() == r)
    }

    /// Canonical representative up to permuting tops normed by the same vertex.
    pub fn canonical_up_to_permutation(&self, pres: &Presentation) -> Skeleton {
        let mut trees: Vec<(usize, Vec<QPath>)> = (0..self.tops.len())
            .map(|r| (self.tops[r], self.tree(r).map(|p| p.path().clone()).collect()))
            .collect();
        trees.sort();
        let tops: Vec<usize> = trees.iter().map(|(v, _)| *v).collect();
        let paths = trees
            .into_iter()
            .enumerate()
            .flat_map(|(r, (_, ps))| ps.into_iter().map(move |p| ProjPath::new(r, p)));
        Skeleton::new(tops, paths, pres).expect("relabelled skeleton stays valid")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    Small,
    Big,
}

impl std::str::FromStr for Setting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Setting::Small),
            "big" => Ok(Setting::Big),
            _ => Err(Error::Unsupported(format!("setting `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPath {
    pub path: ProjPath,
    /// `σ(b')`: members of length at least `len(b')` ending where `b'` ends.
    pub companions: Vec<ProjPath>,
}

/// All σ-critical paths in canonical order. In the big setting the tops
/// `z_r`, `r > t`, of the big frame are included.
pub fn critical_paths(sigma: &Skeleton, pres: &Presentation, setting: Setting) -> Result<Vec<CriticalPath>> {
    let quiver = pres.quiver();
    let mut found: BTreeSet<ProjPath> = BTreeSet::new();
    for b in sigma.paths() {
        if b.len() >= pres.loewy() {
            continue;
        }
        for a in quiver.arrows_from(b.end()) {
            let c = b.then(quiver, a).unwrap();
            if !sigma.contains(&c) {
                found.insert(c);
            }
        }
    }
    if setting == Setting::Big {
        let frame = sigma.frame(pres, Setting::Big)?;
        for r in frame.t()..frame.d() {
            found.insert(ProjPath::top_element(r, frame.vertex(r)));
        }
    }
    Ok(found
        .into_iter()
        .map(|path| {
            let companions =
                sigma.paths().iter().filter(|b| b.len() >= path.len() && b.end() == path.end()).cloned().collect();
            CriticalPath { path, companions }
        })
        .collect())
}

/// All skeleta with radical layering `s` over the frame of its top row.
/// With `dedup`, skeleta differing by a permutation of same-vertex tops
/// are collapsed to one representative.
pub fn enumerate_skeleta(s: &SemisimpleSequence, pres: &Presentation, dedup: bool, exec: Exec) -> Vec<Skeleton> {
    let n = pres.num_vertices();
    if s.num_vertices() != n || s.d() == 0 {
        return Vec::new();
    }
    if (pres.loewy() + 1..s.layers()).any(|l| s.grid[l].iter().any(|&m| m > 0)) {
        return Vec::new();
    }
    let frame = s.frame();
    let layer0: Vec<ProjPath> =
        frame.norming().iter().enumerate().map(|(r, &v)| ProjPath::top_element(r, v)).collect();

    // Choices for layer 1 are explored in parallel; deeper layers sequentially.
    let first = layer_choices(&layer0, 1, s, pres);
    let results: Vec<Vec<Vec<ProjPath>>> = exec.map(&first, |chosen| {
        let mut acc = Vec::new();
        let mut members = layer0.clone();
        members.extend(chosen.iter().cloned());
        extend_layers(chosen.clone(), 2, &mut members, s, pres, &mut acc);
        acc
    });
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for members in results.into_iter().flatten() {
        let sk = Skeleton::new(frame.norming().to_vec(), members, pres).expect("enumerated skeleton is valid");
        if dedup {
            let canon = sk.canonical_up_to_permutation(pres);
            if !seen.insert(canon.clone()) {
                continue;
            }
            out.push(canon);
        } else {
            out.push(sk);
        }
    }
    out
}

fn layer_choices(prev: &[ProjPath], l: usize, s: &SemisimpleSequence, pres: &Presentation) -> Vec<Vec<ProjPath>> {
    let quiver = pres.quiver();
    let n = pres.num_vertices();
    let mut by_vertex: Vec<Vec<ProjPath>> = vec![Vec::new(); n];
    if l <= pres.loewy() {
        for b in prev {
            for a in quiver.arrows_from(b.end()) {
                let c = b.then(quiver, a).unwrap();
                by_vertex[c.end()].push(c);
            }
        }
    }
    let mut choices: Vec<Vec<ProjPath>> = vec![Vec::new()];
    for (i, cands) in by_vertex.iter_mut().enumerate() {
        cands.sort();
        let k = s.m(l, i);
        if k > cands.len() {
            return Vec::new();
        }
        let subsets = combinations(cands, k);
        let mut next = Vec::with_capacity(choices.len() * subsets.len());
        for c in &choices {
            for sub in &subsets {
                let mut v = c.clone();
                v.extend(sub.iter().cloned());
                next.push(v);
            }
        }
        choices = next;
    }
    for c in choices.iter_mut() {
        c.sort();
    }
    choices
}

fn extend_layers(
    prev: Vec<ProjPath>,
    l: usize,
    members: &mut Vec<ProjPath>,
    s: &SemisimpleSequence,
    pres: &Presentation,
    out: &mut Vec<Vec<ProjPath>>,
) {
    if l >= s.layers() {
        out.push(members.clone());
        return;
    }
    for chosen in layer_choices(&prev, l, s, pres) {
        let base = members.len();
        members.extend(chosen.iter().cloned());
        extend_layers(chosen, l + 1, members, s, pres, out);
        members.truncate(base);
    }
}

fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone>(items: &[T], k: usize, from: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Split of a normalized skeleton into shallow trees and full projective trees.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NormalizedSplit {
    /// Tops whose trees have depth at most 1.
    pub shallow: Vec<usize>,
    /// Tops whose trees are full skeleta of indecomposable projectives.
    pub full: Vec<usize>,
}

/// Checks the normalized shape for self-injective algebras with `L = 2`.
/// A depth-2 tree counts as full when its depth-1 edges are all arrows
/// leaving the root and its paths map to a basis of `A e(r)`.
pub fn is_normalized(sigma: &Skeleton, pres: &Presentation) -> Result<Option<NormalizedSplit>> {
    if !pres.self_injective() || pres.loewy() != 2 {
        return Err(Error::Precondition("is_normalized needs a self-injective presentation with L = 2".into()));
    }
    let quiver = pres.quiver();
    let basis = algebra_basis(pres);
    let mut split = NormalizedSplit::default();
    for (r, &v) in sigma.tops().iter().enumerate() {
        let tree: Vec<&ProjPath> = sigma.tree(r).collect();
        let depth = tree.iter().map(|p| p.len()).max().unwrap_or(0);
        if depth <= 1 {
            split.shallow.push(r);
            continue;
        }
        let edges: BTreeSet<usize> = tree.iter().filter(|p| p.len() == 1).map(|p| p.path().arrows()[0]).collect();
        let all: BTreeSet<usize> = quiver.arrows_from(v).collect();
        if edges != all {
            return Ok(None);
        }
        let dim = basis.iter().filter(|q| q.start() == v).count();
        if tree.len() != dim {
            return Ok(None);
        }
        let frame = TopFrame::new(vec![v], 1);
        let mut coords = Coordinates::new(&frame, pres);
        let mut span = EchelonSpan::new(coords.dim());
        for p in &tree {
            let vec = coords.vector(&ProjPath::new(0, p.path().clone()));
            if !span.insert(&vec) {
                return Ok(None);
            }
        }
        split.full.push(r);
    }
    Ok(Some(split))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn carlson() -> Presentation {
        Presentation::parse(include_str!("../fixtures/carlson.pres")).unwrap()
    }

    fn a0() -> Presentation {
        Presentation::parse(include_str!("../fixtures/a0.pres")).unwrap()
    }

    fn names(ps: &[ProjPath], pres: &Presentation) -> Vec<String> {
        ps.iter().map(|p| p.display(pres.quiver())).collect()
    }

    #[test]
    fn parse_example_skeleton() {
        let pres = carlson();
        let sk = Skeleton::parse(include_str!("../fixtures/example41.skel"), &pres).unwrap();
        assert_eq!(sk.len(), 7);
        assert_eq!(names(sk.paths(), &pres), ["z1", "a*z1", "b*z1", "b*a*z1", "z2", "a*z2", "z3"]);
        assert_eq!(sk.layering(&pres).to_string(), "3;3;1");
        let again = Skeleton::parse(&sk.to_text(&pres), &pres).unwrap();
        assert_eq!(again, sk);
    }

    #[test]
    fn parse_greek_juxtaposition_and_errors() {
        let text = "[quiver]\nvertex 1\narrow α: 1 -> 1\narrow β: 1 -> 1\n[loewy]\nL = 2\n";
        let pres = Presentation::parse(text).unwrap();
        let sk = Skeleton::parse("z1@1: ε, α, β, βα ; z2@1: ε, α ; z3@1: ε", &pres).unwrap();
        assert_eq!(sk.len(), 7);
        assert!(sk.contains(&ProjPath::new(0, QPath::from_arrows(pres.quiver(), 0, vec![0, 1]).unwrap())));
        let single = Skeleton::parse("z1@1: ε", &pres).unwrap();
        assert_eq!(single.len(), 1);
        assert!(matches!(Skeleton::parse("z1@1: ε, βα", &pres), Err(Error::ClosureViolation(_))));
    }

    #[test]
    fn layer_mismatch_detected() {
        let pres = carlson();
        let sk = Skeleton::parse("z1@1: ε, a", &pres).unwrap();
        let s = SemisimpleSequence::parse("1;1;0").unwrap();
        sk.check_layering(&pres, &s).unwrap();
        let wrong = SemisimpleSequence::parse("2;0;0").unwrap();
        assert!(matches!(sk.check_layering(&pres, &wrong), Err(Error::LayerMismatch { .. })));
    }

    #[test]
    fn example_critical_paths() {
        let pres = carlson();
        let sk = Skeleton::parse(include_str!("../fixtures/example41.skel"), &pres).unwrap();
        let crit = critical_paths(&sk, &pres, Setting::Small).unwrap();
        let paths: Vec<ProjPath> = crit.iter().map(|c| c.path.clone()).collect();
        assert_eq!(
            names(&paths, &pres),
            ["a*a*z1", "a*b*z1", "b*b*z1", "b*z2", "a*a*z2", "b*a*z2", "a*z3", "b*z3"]
        );
        let n: usize = crit.iter().map(|c| c.companions.len()).sum();
        assert_eq!(n, 17);
    }

    #[test]
    fn a0_big_setting_critical_paths() {
        let pres = a0();
        let sk = Skeleton::parse("z1@1: ε, a", &pres).unwrap();
        let crit = critical_paths(&sk, &pres, Setting::Big).unwrap();
        assert_eq!(crit.len(), 2);
        assert_eq!(crit[0].path.display(pres.quiver()), "b*z1");
        assert_eq!(names(&crit[0].companions, &pres), ["a*z1"]);
        assert_eq!(crit[1].path.display(pres.quiver()), "z2");
        assert_eq!(names(&crit[1].companions, &pres), ["z1", "a*z1"]);
    }

    #[test]
    fn no_arrows_no_critical_paths() {
        let pres = Presentation::parse("[quiver]\nvertex 1\n[loewy]\nL = 0\n").unwrap();
        let sk = Skeleton::parse("z1@1: ε", &pres).unwrap();
        assert!(critical_paths(&sk, &pres, Setting::Small).unwrap().is_empty());
    }

    #[test]
    fn enumerate_two_dimensional() {
        for pres in [carlson(), a0()] {
            let s = SemisimpleSequence::parse("1;1").unwrap();
            let all = enumerate_skeleta(&s, &pres, false, Exec::Sequential);
            let texts: Vec<String> = all.iter().map(|sk| sk.to_text(&pres)).collect();
            assert_eq!(texts, ["z1@1: ε, a\n", "z1@1: ε, b\n"]);
        }
    }

    #[test]
    fn enumerate_contains_full_tree() {
        let pres = carlson();
        let s = SemisimpleSequence::parse("1;2;1").unwrap();
        let all = enumerate_skeleta(&s, &pres, false, Exec::Sequential);
        let full = Skeleton::parse("z1@1: ε, a, b, b*a", &pres).unwrap();
        assert!(all.contains(&full));
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn enumerate_impossible_layering() {
        let text = "[quiver]\nvertex 1\nvertex 2\narrow a: 1 -> 2\n[loewy]\nL = 1\n";
        let pres = Presentation::parse(text).unwrap();
        let s = SemisimpleSequence::parse("0,1;1,0").unwrap();
        assert!(enumerate_skeleta(&s, &pres, false, Exec::Sequential).is_empty());
    }

    #[test]
    fn dedup_collapses_permutations() {
        let pres = carlson();
        let s = SemisimpleSequence::parse("2;1").unwrap();
        let all = enumerate_skeleta(&s, &pres, false, Exec::Sequential);
        assert_eq!(all.len(), 4);
        let dedup = enumerate_skeleta(&s, &pres, true, Exec::Sequential);
        assert_eq!(dedup.len(), 2);
    }

    #[test]
    fn dominance_examples() {
        let s = SemisimpleSequence::parse("1;1").unwrap();
        let semi = SemisimpleSequence::parse("2;0").unwrap();
        assert!(dominance_leq(&s, &s).unwrap());
        assert!(dominance_leq(&semi, &s).unwrap());
        assert!(!dominance_leq(&s, &semi).unwrap());
        let other = SemisimpleSequence::parse("3;0").unwrap();
        assert!(matches!(dominance_leq(&s, &other), Err(Error::DimensionMismatch(..))));
    }

    #[test]
    fn normalized_examples() {
        let pres = carlson();
        let sk = Skeleton::parse(include_str!("../fixtures/example41.skel"), &pres).unwrap();
        let split = is_normalized(&sk, &pres).unwrap().unwrap();
        assert_eq!(split.full, [0]);
        assert_eq!(split.shallow, [1, 2]);
        let shallow = Skeleton::parse("z1@1: ε, a, b; z2@1: ε", &pres).unwrap();
        assert!(is_normalized(&shallow, &pres).unwrap().unwrap().full.is_empty());
        let partial = Skeleton::parse("z1@1: ε, a, a*b", &pres).unwrap_err();
        assert!(matches!(partial, Error::ClosureViolation(_)));
        let missing_edge = Skeleton::parse("z1@1: ε, a, b*a", &pres).unwrap();
        assert!(is_normalized(&missing_edge, &pres).unwrap().is_none());
        let dependent = Skeleton::parse("z1@1: ε, a, b, a*a", &pres).unwrap();
        assert!(is_normalized(&dependent, &pres).unwrap().is_none());
        assert!(matches!(is_normalized(&sk, &a0()), Err(Error::Precondition(_))));
    }

    #[test]
    fn all_sequences_with_dimvec() {
        let all = SemisimpleSequence::all_with_dimvec(&[3], 3);
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|s| s.d() == 3 && s.t() >= 1));
    }
}
