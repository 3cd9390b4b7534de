//! Affine equations for the varieties of modules with a fixed skeleton.
//!
//! Paths are expanded in the free module `F` with basis σ over `K[X]`:
//! a path splits as `p2 · p1 z_r` with `p1 z_r` its σ-critical initial
//! subpath, `p1 z_r` is replaced by `Σ X_{p1 z_r, b} b`, and the process
//! recurses on `p2 b`. Paths longer than `L` vanish. No rewriting modulo
//! the relations happens here; the relations enter only as the elements
//! `ρ z_m` whose expansions give the τ polynomials.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use grassvar_poly::{Poly, Rational, Var};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::Matrix;
use crate::path::{LinComb, ProjPath, QPath, TopFrame};
use crate::presentation::Presentation;
use crate::skeleton::{critical_paths, CriticalPath, Setting, Skeleton};

/// Symbolic data for expanding paths modulo the critical relations.
#[derive(Clone, Debug)]
pub struct ExpansionContext {
    pres: Presentation,
    sigma: Skeleton,
    setting: Setting,
    frame: TopFrame,
    critical: Vec<CriticalPath>,
    crit_index: HashMap<ProjPath, usize>,
    member_index: HashMap<ProjPath, usize>,
    vars: Vec<Vec<Var>>,
}

/// Printed name `X[<critical>;<member>]`.
pub fn pair_var(pres: &Presentation, critical: &ProjPath, member: &ProjPath) -> Var {
    let q = pres.quiver();
    Var::pair(critical.key(), member.key(), format!("X[{};{}]", critical.display(q), member.display(q)))
}

impl ExpansionContext {
    pub fn new(pres: &Presentation, sigma: &Skeleton, setting: Setting) -> Result<Self> {
        let frame = sigma.frame(pres, setting)?;
        let critical = critical_paths(sigma, pres, setting)?;
        let crit_index = critical.iter().enumerate().map(|(i, c)| (c.path.clone(), i)).collect();
        let member_index = sigma.paths().iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        let vars = critical
            .iter()
            .map(|c| c.companions.iter().map(|b| pair_var(pres, &c.path, b)).collect())
            .collect();
        Ok(ExpansionContext {
            pres: pres.clone(),
            sigma: sigma.clone(),
            setting,
            frame,
            critical,
            crit_index,
            member_index,
            vars,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.sigma
    }

    pub fn setting(&self) -> Setting {
        self.setting
    }

    pub fn frame(&self) -> &TopFrame {
        &self.frame
    }

    pub fn critical(&self) -> &[CriticalPath] {
        &self.critical
    }

    /// The index set `N` as variables, in critical-path then member order.
    pub fn variables(&self) -> Vec<Var> {
        self.vars.iter().flatten().cloned().collect()
    }

    pub fn var(&self, critical: &ProjPath, member: &ProjPath) -> Option<&Var> {
        let i = *self.crit_index.get(critical)?;
        let j = self.critical[i].companions.iter().position(|b| b == member)?;
        Some(&self.vars[i][j])
    }

    /// Variables of the critical path at index `i`, aligned with its companions.
    pub fn vars_of(&self, i: usize) -> &[Var] {
        &self.vars[i]
    }

    pub fn critical_index(&self, p: &ProjPath) -> Option<usize> {
        self.crit_index.get(p).copied()
    }

    pub fn member_index(&self, p: &ProjPath) -> Option<usize> {
        self.member_index.get(p).copied()
    }

    /// Length of the σ-critical initial subpath of `p`, if `p ∉ σ`.
    pub fn critical_prefix(&self, p: &ProjPath) -> Option<usize> {
        if self.sigma.contains(p) {
            return None;
        }
        let q = self.pres.quiver();
        (0..=p.len()).find(|&k| !self.sigma.contains(&p.prefix(q, k)))
    }

    /// Coefficients in `K[X]` of the class of `p` with respect to σ.
    pub fn expand(&self, p: &ProjPath) -> Vec<Poly> {
        let d = self.sigma.len();
        let mut out = vec![Poly::zero(); d];
        self.expand_into(p, &Poly::one(), &mut out);
        out
    }

    fn expand_into(&self, p: &ProjPath, coeff: &Poly, out: &mut [Poly]) {
        if let Some(i) = self.member_index.get(p) {
            out[*i] = &out[*i] + coeff;
            return;
        }
        if p.len() > self.pres.loewy() {
            return;
        }
        let q = self.pres.quiver();
        let k = self.critical_prefix(p).expect("path outside σ has a critical prefix");
        let p1 = p.prefix(q, k);
        let ci = *self
            .crit_index
            .get(&p1)
            .unwrap_or_else(|| panic!("{} has no critical prefix in this frame", p.display(q)));
        let p2: QPath = p.path().suffix(q, k);
        for (b, x) in self.critical[ci].companions.iter().zip(&self.vars[ci]) {
            let next = b.extend(&p2).expect("companions end where the critical path ends");
            let c = coeff * &Poly::var(x.clone());
            self.expand_into(&next, &c, out);
        }
    }

    /// Expansion of a rational combination of paths.
    pub fn expand_comb(&self, x: &LinComb<ProjPath>) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.sigma.len()];
        for (p, c) in x.iter() {
            self.expand_into(p, &Poly::constant(c.clone()), &mut out);
        }
        out
    }
}

/// One τ polynomial with the data that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct TauRecord {
    /// Index of the relation `ρ` in the presentation.
    pub relation: usize,
    /// Top index `m` (0-based).
    pub top: usize,
    /// Basis index `l` (0-based) into σ.
    pub index: usize,
    pub poly: Poly,
}

#[derive(Clone, Debug)]
pub struct TauSystem {
    ctx: ExpansionContext,
    records: Vec<TauRecord>,
    zero_count: usize,
}

impl TauSystem {
    pub fn new(pres: &Presentation, sigma: &Skeleton, setting: Setting) -> Result<Self> {
        Ok(Self::from_context(ExpansionContext::new(pres, sigma, setting)?))
    }

    /// Expands `ρ z_m` for every relation starting at `e(m)`, `m` among σ's tops.
    pub fn from_context(ctx: ExpansionContext) -> Self {
        let pres = &ctx.pres;
        let mut records = Vec::new();
        let mut zero_count = 0;
        for (m, &v) in ctx.sigma.tops().iter().enumerate() {
            for (k, rel) in pres.relations().iter().enumerate() {
                if pres.relation_start(k) != Some(v) {
                    continue;
                }
                let lifted = rel.map_terms(|p| ProjPath::new(m, p.clone()));
                for (l, poly) in ctx.expand_comb(&lifted).into_iter().enumerate() {
                    if poly.is_zero() {
                        zero_count += 1;
                    } else {
                        records.push(TauRecord { relation: k, top: m, index: l, poly });
                    }
                }
            }
        }
        TauSystem { ctx, records, zero_count }
    }

    pub fn context(&self) -> &ExpansionContext {
        &self.ctx
    }

    pub fn records(&self) -> &[TauRecord] {
        &self.records
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.records.iter().map(|r| r.poly.clone()).collect()
    }

    /// Number of coefficient positions that expanded to zero and were dropped.
    pub fn zero_count(&self) -> usize {
        self.zero_count
    }

    pub fn variables(&self) -> Vec<Var> {
        self.ctx.variables()
    }

    /// True if some τ polynomial mentions a variable `X_{z_r, ·}` of a
    /// length-zero critical path.
    pub fn mentions_top_variables(&self) -> bool {
        let top_vars: BTreeSet<Var> = self
            .ctx
            .critical
            .iter()
            .zip(&self.ctx.vars)
            .filter(|(c, _)| c.path.is_top())
            .flat_map(|(_, vs)| vs.iter().cloned())
            .collect();
        self.records.iter().any(|r| r.poly.vars().iter().any(|v| top_vars.contains(v)))
    }

    pub fn detect_affine_space(&self) -> AffineResult {
        detect_affine_space(&self.polys(), &self.variables())
    }
}

/// Certificate that a system cuts out an affine space: each solved variable
/// equals a polynomial in the free variables.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineCertificate {
    /// In elimination order; right-hand sides use free variables only.
    pub solved: Vec<(Var, Poly)>,
    pub free: Vec<Var>,
}

impl AffineCertificate {
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// The equations `v - expr`.
    pub fn equations(&self) -> Vec<Poly> {
        self.solved.iter().map(|(v, e)| &Poly::var(v.clone()) - e).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AffineResult {
    Affine(AffineCertificate),
    /// A nonzero constant was derived.
    Empty,
    Inconclusive,
}

impl AffineResult {
    pub fn certificate(&self) -> Option<&AffineCertificate> {
        match self {
            AffineResult::Affine(c) => Some(c),
            _ => None,
        }
    }
}

const SEARCH_BUDGET: usize = 2_000;

/// Tries to solve the system triangularly: repeatedly pick an equation in
/// which some variable occurs only as `c·v` with `c` constant, solve for it
/// and substitute. Prefers short equations and small variables, and
/// backtracks within a fixed budget when a choice leads to a dead end.
pub fn detect_affine_space(polys: &[Poly], universe: &[Var]) -> AffineResult {
    let mut budget = SEARCH_BUDGET;
    let eqs: Vec<Poly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    match search(eqs, Vec::new(), &mut budget) {
        Some(Outcome::Solved(solved)) => {
            let mut all: BTreeSet<Var> = universe.iter().cloned().collect();
            for p in polys {
                all.extend(p.vars());
            }
            let fixed: BTreeSet<&Var> = solved.iter().map(|(v, _)| v).collect();
            let free = all.iter().filter(|v| !fixed.contains(v)).cloned().collect();
            AffineResult::Affine(AffineCertificate { solved, free })
        }
        Some(Outcome::Empty) => AffineResult::Empty,
        None => AffineResult::Inconclusive,
    }
}

enum Outcome {
    Solved(Vec<(Var, Poly)>),
    Empty,
}

fn search(eqs: Vec<Poly>, solved: Vec<(Var, Poly)>, budget: &mut usize) -> Option<Outcome> {
    let mut live = Vec::with_capacity(eqs.len());
    for e in eqs {
        if e.is_zero() {
            continue;
        }
        if e.constant_value().is_some() {
            return Some(Outcome::Empty);
        }
        live.push(e);
    }
    if live.is_empty() {
        return Some(Outcome::Solved(solved));
    }
    let mut candidates: Vec<(usize, usize, Var)> = Vec::new();
    for (k, e) in live.iter().enumerate() {
        for v in e.vars() {
            if e.linear_split(&v).is_some() {
                candidates.push((e.num_terms(), k, v));
            }
        }
    }
    candidates.sort_by(|a, b| (a.0, &a.2, a.1).cmp(&(b.0, &b.2, b.1)));
    for (_, k, v) in candidates {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let (c, rest) = live[k].linear_split(&v).unwrap();
        let expr = rest.scale(&(-c.recip()));
        let subst = |p: &Poly| p.substitute_with(|w| (w == &v).then(|| expr.clone()));
        let mut next_solved: Vec<(Var, Poly)> = solved.iter().map(|(w, e)| (w.clone(), subst(e))).collect();
        next_solved.push((v.clone(), expr.clone()));
        let next_eqs: Vec<Poly> =
            live.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, e)| subst(e)).collect();
        if let Some(outcome) = search(next_eqs, next_solved, budget) {
            return Some(outcome);
        }
    }
    None
}

/// A point of the variety: values for every variable of `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassPoint {
    pub values: BTreeMap<Var, Rational>,
}

impl GrassPoint {
    pub fn get(&self, v: &Var) -> Rational {
        self.values.get(v).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Completes a free assignment through the certificate and checks every τ.
pub fn solve_point(
    tau: &TauSystem,
    cert: &AffineCertificate,
    free: &BTreeMap<Var, Rational>,
) -> Result<GrassPoint> {
    solve_polys(&tau.polys(), cert, free)
}

pub(crate) fn solve_polys(
    polys: &[Poly],
    cert: &AffineCertificate,
    free: &BTreeMap<Var, Rational>,
) -> Result<GrassPoint> {
    let mut values = BTreeMap::new();
    for v in &cert.free {
        let x = free.get(v).ok_or_else(|| Error::MissingFreeVariable(v.to_string()))?;
        values.insert(v.clone(), x.clone());
    }
    for (v, e) in &cert.solved {
        let x = e.eval(&values).ok_or_else(|| Error::VerificationFailed(format!("cannot evaluate {v}")))?;
        values.insert(v.clone(), x);
    }
    for p in polys {
        match p.eval(&values) {
            Some(x) if x.is_zero() => {}
            _ => return Err(Error::VerificationFailed(format!("{p} does not vanish"))),
        }
    }
    Ok(GrassPoint { values })
}

/// Random rational with numerator and denominator bounded by 10 in absolute value.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let num: i64 = rng.random_range(-10..=10);
    let den: i64 = rng.random_range(1..=10);
    grassvar_poly::ratio(num, den)
}

pub fn random_free_assignment(vars: &[Var], rng: &mut impl Rng) -> BTreeMap<Var, Rational> {
    vars.iter().map(|v| (v.clone(), random_rational(rng))).collect()
}

/// Matrices `x_α` acting on `K^{d_i}`, with basis the members of σ ending at `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepPoint {
    /// Per vertex, the members of σ labelling the basis of `K^{d_i}`.
    pub basis: Vec<Vec<ProjPath>>,
    /// Per arrow, a `d_target × d_source` matrix.
    pub arrows: Vec<Matrix>,
}

/// The representation attached to a point: column `b` of `x_α` is `αb` if
/// it lies in σ, zero if `len(b) = L`, and `Σ c_{αb,s} s` otherwise.
pub fn to_rep_point(ctx: &ExpansionContext, point: &GrassPoint) -> RepPoint {
    let pres = &ctx.pres;
    let q = pres.quiver();
    let n = pres.num_vertices();
    let mut basis: Vec<Vec<ProjPath>> = vec![Vec::new(); n];
    for b in ctx.sigma.paths() {
        basis[b.end()].push(b.clone());
    }
    let pos = |p: &ProjPath| basis[p.end()].iter().position(|b| b == p).unwrap();
    let mut arrows = Vec::with_capacity(q.arrows().len());
    for (a, arrow) in q.arrows().iter().enumerate() {
        let mut m = Matrix::zeros(basis[arrow.target].len(), basis[arrow.source].len());
        for (col, b) in basis[arrow.source].iter().enumerate() {
            if b.len() == pres.loewy() {
                continue;
            }
            let ab = b.then(q, a).unwrap();
            if ctx.sigma.contains(&ab) {
                m.set(pos(&ab), col, Rational::one());
                continue;
            }
            let ci = ctx.crit_index[&ab];
            for (s, x) in ctx.critical[ci].companions.iter().zip(&ctx.vars[ci]) {
                m.set(pos(s), col, point.get(x));
            }
        }
        arrows.push(m);
    }
    RepPoint { basis, arrows }
}

impl RepPoint {
    /// Matrix of a path, composing arrow matrices right to left.
    pub fn path_matrix(&self, p: &QPath) -> Matrix {
        let mut m = Matrix::identity(self.basis[p.start()].len());
        for &a in p.arrows() {
            m = self.arrows[a].mul(&m);
        }
        m
    }
}

/// True iff all relations and all paths of length `L + 1` act as zero.
pub fn verify_rep_point(x: &RepPoint, pres: &Presentation) -> bool {
    for rel in pres.relations() {
        let mut iter = rel.iter();
        let Some((first, _)) = iter.next() else { continue };
        let mut acc = Matrix::zeros(x.basis[first.end()].len(), x.basis[first.start()].len());
        for (p, c) in rel.iter() {
            acc.add_scaled(&x.path_matrix(p), c);
        }
        if !acc.is_zero() {
            return false;
        }
    }
    let q = pres.quiver();
    let mut layer: Vec<(usize, Matrix)> =
        (0..q.num_vertices()).map(|v| (v, Matrix::identity(x.basis[v].len()))).collect();
    for _ in 0..=pres.loewy() {
        let mut next = Vec::new();
        for (end, m) in &layer {
            for a in q.arrows_from(*end) {
                let prod = x.arrows[a].mul(m);
                if !prod.is_zero() {
                    next.push((q.arrows()[a].target, prod));
                }
            }
        }
        layer = next;
    }
    layer.is_empty()
}

/// Outcome of the random-point suite over a list of skeleta.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub skeleta: usize,
    pub triangular: usize,
    pub empty: usize,
    pub inconclusive: usize,
    pub points: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl OracleReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.points == self.passed
    }
}

/// For each skeleton with a triangular τ-system, samples `points` seeded
/// random points and checks their representation matrices.
pub fn oracle_suite(
    pres: &Presentation,
    skeleta: &[Skeleton],
    points: usize,
    seed: u64,
    exec: Exec,
) -> OracleReport {
    let indexed: Vec<(usize, &Skeleton)> = skeleta.iter().enumerate().collect();
    let per: Vec<OracleReport> = exec.map(&indexed, |(k, sk)| {
        let mut rep = OracleReport { skeleta: 1, ..Default::default() };
        let tau = match TauSystem::new(pres, sk, Setting::Small) {
            Ok(t) => t,
            Err(e) => {
                rep.failures.push(format!("skeleton {k}: {e}"));
                return rep;
            }
        };
        let cert = match tau.detect_affine_space() {
            AffineResult::Affine(c) => c,
            AffineResult::Empty => {
                rep.empty = 1;
                return rep;
            }
            AffineResult::Inconclusive => {
                rep.inconclusive = 1;
                return rep;
            }
        };
        rep.triangular = 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(*k as u64));
        for _ in 0..points {
            rep.points += 1;
            let free = random_free_assignment(&cert.free, &mut rng);
            let ok = solve_point(&tau, &cert, &free)
                .map(|pt| verify_rep_point(&to_rep_point(tau.context(), &pt), pres))
                .unwrap_or(false);
            if ok {
                rep.passed += 1;
            } else {
                rep.failures.push(format!("skeleton {k}: point failed\n{}", sk.to_text(pres)));
            }
        }
        rep
    });
    per.into_iter().fold(OracleReport::default(), |mut acc, r| {
        acc.skeleta += r.skeleta;
        acc.triangular += r.triangular;
        acc.empty += r.empty;
        acc.inconclusive += r.inconclusive;
        acc.points += r.points;
        acc.passed += r.passed;
        acc.failures.extend(r.failures);
        acc
    })
}
