//! Buchberger's algorithm over the rationals and the ideal operations built on it.
//!
//! Internally polynomials are converted to a dense-exponent representation
//! over an explicit variable list (index 0 is the largest variable). S-pairs
//! are selected by the normal strategy: smallest lcm degree first, ties
//! broken by pair index. Buchberger's coprime criterion and the chain
//! criterion prune pairs. The output basis is reduced and monic, so it is
//! unique for a fixed variable list and order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Zero};

use crate::{Monomial, MonomialOrder, Poly, PolyError, Rational, Var};

/// Resource caps for Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbOptions {
    /// Maximum number of S-polynomial reductions per basis computation.
    pub max_steps: Option<usize>,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { max_steps: Some(100_000) }
    }
}

impl GbOptions {
    pub fn unlimited() -> Self {
        GbOptions { max_steps: None }
    }

    pub fn with_max_steps(max_steps: usize) -> Self {
        GbOptions { max_steps: Some(max_steps) }
    }
}

type Exps = Vec<u32>;

/// Terms stored in ascending order so the leading term is last.
#[derive(Clone, Debug, PartialEq)]
struct DPoly {
    terms: Vec<(Exps, Rational)>,
}

impl DPoly {
    fn lead(&self) -> Option<&(Exps, Rational)> {
        self.terms.last()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            let inv = c.recip();
            if !inv.is_one() {
                for (_, k) in &mut self.terms {
                    *k *= &inv;
                }
            }
        }
    }

    /// `self - c * x^shift * other`
    fn sub_scaled(&self, c: &Rational, shift: &[u32], other: &DPoly, order: MonomialOrder) -> DPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let shifted = other.terms.iter().map(|(e, k)| {
            let e: Exps = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            (e, k * c)
        });
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().unwrap()),
                    Ordering::Greater => {
                        let (e, k) = b.next().unwrap();
                        out.push((e, -k));
                    }
                    Ordering::Equal => {
                        let (e, k1) = a.next().unwrap();
                        let (_, k2) = b.next().unwrap();
                        let k = k1 - k2;
                        if !k.is_zero() {
                            out.push((e, k));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (e, k) = b.next().unwrap();
                    out.push((e, -k));
                }
                (None, None) => break,
            }
        }
        DPoly { terms: out }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn diff(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Variable list plus monomial order: the context in which a basis lives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    pub vars: Vec<Var>,
    pub order: MonomialOrder,
}

impl Ring {
    /// All variables of `polys` in canonical order, under `order`.
    pub fn for_polys<'a>(polys: impl IntoIterator<Item = &'a Poly>, order: MonomialOrder) -> Self {
        let vars: BTreeSet<Var> = polys.into_iter().flat_map(Poly::vars).collect();
        Ring { vars: vars.into_iter().collect(), order }
    }

    fn index_of(&self, v: &Var) -> Option<usize> {
        self.vars.iter().position(|w| w == v)
    }

    /// Appends any variables of `polys` that are missing, as the smallest variables.
    fn extended<'a>(&self, polys: impl IntoIterator<Item = &'a Poly>) -> Ring {
        let mut ring = self.clone();
        let known: HashSet<Var> = self.vars.iter().cloned().collect();
        let extra: BTreeSet<Var> =
            polys.into_iter().flat_map(Poly::vars).filter(|v| !known.contains(v)).collect();
        ring.vars.extend(extra);
        ring
    }

    fn to_dense(&self, p: &Poly) -> DPoly {
        let n = self.vars.len();
        let mut terms: Vec<(Exps, Rational)> = p
            .terms()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (v, k) in m.factors() {
                    let i = self.index_of(v).expect("variable outside ring");
                    e[i] = *k;
                }
                (e, c.clone())
            })
            .collect();
        terms.sort_by(|a, b| self.order.cmp(&a.0, &b.0));
        DPoly { terms }
    }

    fn from_dense(&self, p: &DPoly) -> Poly {
        Poly::from_terms(p.terms.iter().map(|(e, c)| {
            let m = Monomial::from_pairs(
                e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (self.vars[i].clone(), k)),
            );
            (m, c.clone())
        }))
    }

    fn widen(&self, p: &DPoly, target: &Ring) -> DPoly {
        let map: Vec<usize> = self.vars.iter().map(|v| target.index_of(v).unwrap()).collect();
        let n = target.vars.len();
        let mut terms: Vec<(Exps, Rational)> = p
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0u32; n];
                for (i, k) in e.iter().enumerate() {
                    f[map[i]] = *k;
                }
                (f, c.clone())
            })
            .collect();
        terms.sort_by(|a, b| target.order.cmp(&a.0, &b.0));
        DPoly { terms }
    }
}

fn reduce_full(mut p: DPoly, basis: &[DPoly], order: MonomialOrder) -> DPoly {
    let mut rem: Vec<(Exps, Rational)> = Vec::new();
    while let Some((lead_e, lead_c)) = p.terms.last().cloned() {
        let divisor = basis.iter().find(|g| divides(&g.lead().unwrap().0, &lead_e));
        match divisor {
            Some(g) => {
                let (ge, gc) = g.lead().unwrap();
                let c = &lead_c / gc;
                let shift = diff(&lead_e, ge);
                p = p.sub_scaled(&c, &shift, g, order);
            }
            None => {
                p.terms.pop();
                rem.push((lead_e, lead_c));
            }
        }
    }
    rem.reverse();
    DPoly { terms: rem }
}

fn s_poly(f: &DPoly, g: &DPoly, order: MonomialOrder) -> DPoly {
    let (fe, fc) = f.lead().unwrap();
    let (ge, gc) = g.lead().unwrap();
    let l = lcm(fe, ge);
    let fs = DPoly { terms: Vec::new() }.sub_scaled(&-fc.recip(), &diff(&l, fe), f, order);
    fs.sub_scaled(&gc.recip(), &diff(&l, ge), g, order)
}

/// A reduced, monic Gröbner basis together with the ring it was computed in.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    basis: Vec<DPoly>,
    steps: usize,
}

impl GroebnerBasis {
    /// Buchberger's algorithm on `gens` in the ring `ring`.
    pub fn compute(gens: &[Poly], ring: Ring, opts: &GbOptions) -> Result<Self, PolyError> {
        let ring = ring.extended(gens);
        let order = ring.order;
        let mut basis: Vec<DPoly> = Vec::new();
        for g in gens {
            let mut d = ring.to_dense(g);
            if !d.is_zero() {
                d.make_monic();
                basis.push(d);
            }
        }
        let mut pending: Vec<(usize, usize)> = Vec::new();
        for j in 0..basis.len() {
            for i in 0..j {
                pending.push((i, j));
            }
        }
        let mut treated: HashSet<(usize, usize)> = HashSet::new();
        let mut steps = 0usize;
        while !pending.is_empty() {
            // Normal strategy: minimal lcm degree, then pair index.
            let pos = pending
                .iter()
                .enumerate()
                .min_by_key(|(_, &(i, j))| {
                    let l = lcm(&basis[i].lead().unwrap().0, &basis[j].lead().unwrap().0);
                    (l.iter().map(|&e| e as u64).sum::<u64>(), j, i)
                })
                .map(|(k, _)| k)
                .unwrap();
            let (i, j) = pending.swap_remove(pos);
            treated.insert((i, j));
            let li = &basis[i].lead().unwrap().0;
            let lj = &basis[j].lead().unwrap().0;
            if coprime(li, lj) {
                continue;
            }
            let l = lcm(li, lj);
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && divides(&basis[k].lead().unwrap().0, &l)
                    && treated.contains(&(i.min(k), i.max(k)))
                    && treated.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            steps += 1;
            if let Some(cap) = opts.max_steps {
                if steps > cap {
                    return Err(PolyError::StepLimit(cap));
                }
            }
            let s = s_poly(&basis[i], &basis[j], order);
            let mut r = reduce_full(s, &basis, order);
            if !r.is_zero() {
                r.make_monic();
                let n = basis.len();
                basis.push(r);
                for k in 0..n {
                    pending.push((k, n));
                }
            }
        }
        let basis = interreduce(basis, order);
        Ok(GroebnerBasis { ring, basis, steps })
    }

    /// Gröbner basis in the canonical ring of the generators.
    pub fn new(gens: &[Poly], order: MonomialOrder, opts: &GbOptions) -> Result<Self, PolyError> {
        Self::compute(gens, Ring::for_polys(gens, order), opts)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Number of S-polynomials reduced while computing the basis.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.basis.iter().map(|p| self.ring.from_dense(p)).collect()
    }

    /// True if the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|p| p.terms.len() == 1 && p.terms[0].0.iter().all(|&e| e == 0))
    }

    /// Normal form of `p` modulo the basis.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let missing = p.vars().iter().any(|v| self.ring.index_of(v).is_none());
        if missing {
            let wide = self.ring.extended([p]);
            let basis: Vec<DPoly> = self.basis.iter().map(|g| self.ring.widen(g, &wide)).collect();
            let r = reduce_full(wide.to_dense(p), &basis, wide.order);
            wide.from_dense(&r)
        } else {
            let r = reduce_full(self.ring.to_dense(p), &self.basis, self.ring.order);
            self.ring.from_dense(&r)
        }
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    /// Re-checks the Buchberger criterion: every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        let order = self.ring.order;
        for j in 0..self.basis.len() {
            for i in 0..j {
                let s = s_poly(&self.basis[i], &self.basis[j], order);
                if !reduce_full(s, &self.basis, order).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn interreduce(basis: Vec<DPoly>, order: MonomialOrder) -> Vec<DPoly> {
    // Drop elements whose lead is divisible by another lead.
    let mut minimal: Vec<DPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lg = &g.lead().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(m, h)| {
            let lh = &h.lead().unwrap().0;
            m != k && divides(lh, lg) && (lh != lg || m < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<DPoly> =
            minimal.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, h)| h.clone()).collect();
        let mut r = reduce_full(minimal[k].clone(), &others, order);
        r.make_monic();
        out.push(r);
    }
    out.sort_by(|a, b| order.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0));
    out
}

/// Reduced Gröbner basis polynomials of `gens` under `order`.
pub fn groebner(gens: &[Poly], order: MonomialOrder, opts: &GbOptions) -> Result<Vec<Poly>, PolyError> {
    Ok(GroebnerBasis::new(gens, order, opts)?.polys())
}

pub fn ideal_member(p: &Poly, gb: &GroebnerBasis) -> bool {
    gb.contains(p)
}

/// `I ⊆ J` for generator lists.
pub fn ideal_contains(j: &[Poly], i: &[Poly], opts: &GbOptions) -> Result<bool, PolyError> {
    let gb = GroebnerBasis::new(j, MonomialOrder::GrevLex, opts)?;
    Ok(i.iter().all(|p| gb.contains(p)))
}

/// Equality of ideals by two-sided membership under grevlex.
pub fn ideal_equal(i: &[Poly], j: &[Poly], opts: &GbOptions) -> Result<bool, PolyError> {
    Ok(ideal_contains(i, j, opts)? && ideal_contains(j, i, opts)?)
}

fn fresh_aux(polys: &[&[Poly]], base: &str) -> Var {
    let used: BTreeSet<Var> = polys.iter().flat_map(|ps| ps.iter().flat_map(Poly::vars)).collect();
    let mut k = 0;
    loop {
        let v = Var::aux(&format!("{base}{k}"));
        if !used.contains(&v) {
            return v;
        }
        k += 1;
    }
}

/// Generators of `I ∩ K[remaining variables]`.
pub fn eliminate(gens: &[Poly], elim: &[Var], opts: &GbOptions) -> Result<Vec<Poly>, PolyError> {
    let elim_set: BTreeSet<Var> = elim.iter().cloned().collect();
    let rest: BTreeSet<Var> =
        gens.iter().flat_map(Poly::vars).filter(|v| !elim_set.contains(v)).collect();
    let mut vars: Vec<Var> = elim_set.iter().cloned().collect();
    let k = vars.len();
    vars.extend(rest);
    let ring = Ring { vars, order: MonomialOrder::Elimination(k) };
    let gb = GroebnerBasis::compute(gens, ring, opts)?;
    Ok(gb.polys().into_iter().filter(|p| p.vars().is_disjoint(&elim_set)).collect())
}

/// Generators of `I ∩ J`.
pub fn intersect(i: &[Poly], j: &[Poly], opts: &GbOptions) -> Result<Vec<Poly>, PolyError> {
    let t = fresh_aux(&[i, j], "_t");
    let tp = Poly::var(t.clone());
    let one_minus_t = &Poly::one() - &tp;
    let mut gens: Vec<Poly> = i.iter().map(|f| &tp * f).collect();
    gens.extend(j.iter().map(|g| &one_minus_t * g));
    let elim = eliminate(&gens, &[t], opts)?;
    groebner(&elim, MonomialOrder::GrevLex, opts)
}

/// Exact division `p / f`, or `None` if `f` does not divide `p`.
pub fn divide_exact(p: &Poly, f: &Poly) -> Option<Poly> {
    if f.is_zero() {
        return None;
    }
    let ring = Ring::for_polys([p, f], MonomialOrder::GrevLex);
    let order = ring.order;
    let fd = ring.to_dense(f);
    let (fe, fc) = fd.lead().unwrap().clone();
    let mut rest = ring.to_dense(p);
    let mut quot: Vec<(Exps, Rational)> = Vec::new();
    while let Some((e, c)) = rest.lead().cloned() {
        if !divides(&fe, &e) {
            return None;
        }
        let shift = diff(&e, &fe);
        let k = &c / &fc;
        rest = rest.sub_scaled(&k, &shift, &fd, order);
        quot.push((shift, k));
    }
    quot.sort_by(|a, b| order.cmp(&a.0, &b.0));
    Some(ring.from_dense(&DPoly { terms: quot }))
}

/// Generators of the ideal quotient `I : f`, via `I ∩ <f>` divided by `f`.
pub fn quotient(i: &[Poly], f: &Poly, opts: &GbOptions) -> Result<Vec<Poly>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroDivisor);
    }
    let inter = intersect(i, std::slice::from_ref(f), opts)?;
    inter
        .iter()
        .map(|h| divide_exact(h, f).ok_or(PolyError::InexactDivision))
        .collect()
}

/// Saturation `I : f^∞` by iterated ideal quotients until the chain stabilizes.
/// Returns the reduced grevlex Gröbner basis of the saturation.
pub fn saturate(i: &[Poly], f: &Poly, opts: &GbOptions) -> Result<Vec<Poly>, PolyError> {
    let mut current = groebner(i, MonomialOrder::GrevLex, opts)?;
    loop {
        let next = quotient(&current, f, opts)?;
        // current ⊆ next always holds; stop once next ⊆ current.
        if ideal_contains(&current, &next, opts)? {
            return Ok(current);
        }
        current = groebner(&next, MonomialOrder::GrevLex, opts)?;
    }
}

/// Saturation `I : f^∞` in one elimination: `(I + <1 - t f>) ∩ K[x]`.
pub fn saturate_rabinowitsch(i: &[Poly], f: &Poly, opts: &GbOptions) -> Result<Vec<Poly>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroDivisor);
    }
    let t = fresh_aux(&[i, std::slice::from_ref(f)], "_s");
    let mut gens = i.to_vec();
    gens.push(&Poly::one() - &(&Poly::var(t.clone()) * f));
    let elim = eliminate(&gens, &[t], opts)?;
    groebner(&elim, MonomialOrder::GrevLex, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn v(name: &str) -> Poly {
        Poly::var(Var::aux(name))
    }

    fn c(n: i64) -> Poly {
        Poly::constant(rat(n))
    }

    #[test]
    fn principal_ideal_collapses() {
        let gens = vec![v("x").pow(2) - c(1), v("x") - c(1)];
        let gb = groebner(&gens, MonomialOrder::Lex, &GbOptions::default()).unwrap();
        assert_eq!(gb, vec![v("x") - c(1)]);
    }

    #[test]
    fn empty_generators() {
        let gb = groebner(&[], MonomialOrder::GrevLex, &GbOptions::default()).unwrap();
        assert!(gb.is_empty());
        let zero = groebner(&[Poly::zero()], MonomialOrder::GrevLex, &GbOptions::default()).unwrap();
        assert!(zero.is_empty());
    }

    #[test]
    fn twisted_cubic_basis_is_verified() {
        // <y - x^2, z - x^3> under grevlex
        let gens = vec![v("y") - v("x").pow(2), v("z") - v("x").pow(3)];
        let gb = GroebnerBasis::new(&gens, MonomialOrder::GrevLex, &GbOptions::default()).unwrap();
        assert!(gb.verify());
        assert!(gb.contains(&(v("x") * v("z") - v("y").pow(2))));
        assert!(!gb.contains(&v("x")));
        let lex = GroebnerBasis::new(&gens, MonomialOrder::Lex, &GbOptions::default()).unwrap();
        assert!(lex.verify());
    }

    #[test]
    fn saturation_removes_variable_factor() {
        let z = v("Z");
        let gens = vec![&z * &v("x")];
        let sat = saturate(&gens, &z, &GbOptions::default()).unwrap();
        assert_eq!(sat, vec![v("x")]);
        let sat2 = saturate_rabinowitsch(&gens, &z, &GbOptions::default()).unwrap();
        assert_eq!(sat2, vec![v("x")]);
    }

    #[test]
    fn quotient_and_intersection() {
        let x = v("x");
        let y = v("y");
        let i = vec![&x * &y, x.pow(2)];
        let q = quotient(&i, &x, &GbOptions::default()).unwrap();
        assert!(ideal_equal(&q, &[x.clone(), y.clone()], &GbOptions::default()).unwrap());
        let inter = intersect(&[x.clone()], &[y.clone()], &GbOptions::default()).unwrap();
        assert_eq!(inter, vec![&x * &y]);
    }

    #[test]
    fn step_cap_is_enforced() {
        let gens = vec![v("y") - v("x").pow(2), v("z") - v("x").pow(3), &v("w") * &v("x") - c(1)];
        let err = GroebnerBasis::new(&gens, MonomialOrder::Lex, &GbOptions::with_max_steps(1));
        assert_eq!(err.unwrap_err(), PolyError::StepLimit(1));
    }

    #[test]
    fn exact_division() {
        let p = (v("x") - v("y")) * (v("x") + v("y").pow(2));
        assert_eq!(divide_exact(&p, &(v("x") - v("y"))).unwrap(), v("x") + v("y").pow(2));
        assert!(divide_exact(&v("x"), &v("y")).is_none());
    }

    #[test]
    fn unit_ideal_detected() {
        let gb = GroebnerBasis::new(&[v("x"), v("x") - c(1)], MonomialOrder::GrevLex, &GbOptions::default())
            .unwrap();
        assert!(gb.is_unit());
    }
}
