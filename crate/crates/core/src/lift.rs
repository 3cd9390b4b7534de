//! Projective closures of the big-setting varieties inside a Grassmannian.
//!
//! Pipeline: reduce the big τ-system to the index set `N₀`, extend σ to an
//! ordered basis `B` of the big cover, expand the wedge of the complement
//! rows into Plücker coordinates, write down the Schubert-cell equations
//! and finally homogenize and saturate by the distinguished coordinate.

use std::collections::{BTreeMap, BTreeSet};

use grassvar_poly::groebner::saturate;
use grassvar_poly::{GbOptions, GroebnerBasis, MonomialOrder, PolyError, Poly, Rational, Var};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grass::{ExpansionContext, TauSystem};
use crate::linalg::EchelonSpan;
use crate::path::{bold_p_basis, Coordinates, ProjPath, TopFrame};
use crate::presentation::Presentation;
use crate::skeleton::{Setting, Skeleton};

/// A critical path outside σ′, written over the basis `(σ, σ′)` of its image.
#[derive(Clone, Debug, PartialEq)]
pub struct DependentPath {
    pub path: ProjPath,
    /// Coefficients `k_j` on σ.
    pub k: Vec<Rational>,
    /// Coefficients `k′_i` on σ′.
    pub k_prime: Vec<Rational>,
}

/// A reduced polynomial and the τ record it came from, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedRecord {
    pub relation: Option<usize>,
    pub top: Option<usize>,
    pub index: Option<usize>,
    pub poly: Poly,
}

/// The big τ-system rewritten in the variables `X[i,j]`, `(i,j) ∈ N₀`.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    ctx: ExpansionContext,
    pub sigma_prime: Vec<ProjPath>,
    /// 1-based pairs `(i, j)`: `b_j` is a companion of `b′_i`.
    pub n0: Vec<(u32, u32)>,
    pub dependent: Vec<DependentPath>,
    /// Every big-setting variable mapped to its expression in `X[i,j]`.
    pub substitution: BTreeMap<Var, Poly>,
    /// Identities `k_j + Σ k′_i X[i,j] = 0` for `b_j` outside the companion
    /// set of a dependent path. They hold on the variety but are not part
    /// of the system.
    pub consistency: Vec<Poly>,
    pub records: Vec<ReducedRecord>,
}

impl ReducedSystem {
    pub fn context(&self) -> &ExpansionContext {
        &self.ctx
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.records.iter().map(|r| r.poly.clone()).collect()
    }

    pub fn variables(&self) -> Vec<Var> {
        self.n0.iter().map(|&(i, j)| Var::reduced(i, j)).collect()
    }

    pub fn d(&self) -> usize {
        self.ctx.skeleton().len()
    }

    pub fn u(&self) -> usize {
        self.sigma_prime.len()
    }
}

/// Chooses σ′ greedily among the critical paths and rewrites the big τ-system.
pub fn reduce_index_set(big: &TauSystem) -> Result<ReducedSystem> {
    let ctx = big.context();
    if ctx.setting() != Setting::Big {
        return Err(Error::Precondition("index reduction needs the big setting".into()));
    }
    let pres = ctx.presentation();
    let sigma = ctx.skeleton();
    let mut coords = Coordinates::new(ctx.frame(), pres);
    let mut span = EchelonSpan::new(coords.dim());
    for b in sigma.paths() {
        if !span.insert(&coords.vector(b)) {
            return Err(Error::EmptyGrass);
        }
    }
    let d = sigma.len();
    let mut sigma_prime = Vec::new();
    let mut prime_of = BTreeMap::new();
    let mut pending = Vec::new();
    for (ci, c) in ctx.critical().iter().enumerate() {
        let v = coords.vector(&c.path);
        if span.insert(&v) {
            sigma_prime.push(c.path.clone());
            prime_of.insert(ci, sigma_prime.len());
        } else {
            pending.push((ci, v));
        }
    }

    let member = |b: &ProjPath| ctx.member_index(b).expect("companions lie in σ") as u32 + 1;
    let mut substitution = BTreeMap::new();
    let mut n0 = Vec::new();
    for (&ci, &i) in &prime_of {
        for (b, x) in ctx.critical()[ci].companions.iter().zip(ctx.vars_of(ci)) {
            let j = member(b);
            n0.push((i as u32, j));
            substitution.insert(x.clone(), Poly::var(Var::reduced(i as u32, j)));
        }
    }
    n0.sort();

    let u = sigma_prime.len();
    let image_of = |k: &[Rational], kp: &[Rational], j: u32| {
        let mut p = Poly::constant(k[j as usize - 1].clone());
        for (i, c) in kp.iter().enumerate() {
            let i = i as u32 + 1;
            if !c.is_zero() && n0.binary_search(&(i, j)).is_ok() {
                p = p + Poly::var(Var::reduced(i, j)).scale(c);
            }
        }
        p
    };
    let mut dependent = Vec::new();
    let mut consistency = Vec::new();
    for (ci, v) in pending {
        let coeffs = span.express(&v).expect("dependent vector lies in the span");
        let (k, k_prime) = (coeffs[..d].to_vec(), coeffs[d..d + u].to_vec());
        let crit = &ctx.critical()[ci];
        let companions: BTreeSet<u32> = crit.companions.iter().map(|b| member(b)).collect();
        for (b, x) in crit.companions.iter().zip(ctx.vars_of(ci)) {
            substitution.insert(x.clone(), image_of(&k, &k_prime, member(b)));
        }
        for j in 1..=d as u32 {
            if !companions.contains(&j) {
                let p = image_of(&k, &k_prime, j);
                if !p.is_zero() {
                    consistency.push(p);
                }
            }
        }
        dependent.push(DependentPath { path: crit.path.clone(), k, k_prime });
    }

    let records = big
        .records()
        .iter()
        .filter_map(|r| {
            let poly = r.poly.substitute(&substitution);
            (!poly.is_zero()).then(|| ReducedRecord {
                relation: Some(r.relation),
                top: Some(r.top),
                index: Some(r.index),
                poly,
            })
        })
        .collect();
    Ok(ReducedSystem { ctx: ctx.clone(), sigma_prime, n0, dependent, substitution, consistency, records })
}

/// The ordered basis `B = (σ, σ′, b″)` of the big cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedBasisB {
    pub sigma: Vec<ProjPath>,
    pub sigma_prime: Vec<ProjPath>,
    pub completion: Vec<ProjPath>,
}

impl OrderedBasisB {
    /// `w_1, …, w_{dim 𝐏}`.
    pub fn merged(&self) -> Vec<ProjPath> {
        self.sigma.iter().chain(&self.sigma_prime).chain(&self.completion).cloned().collect()
    }

    pub fn d(&self) -> usize {
        self.sigma.len()
    }

    pub fn u(&self) -> usize {
        self.sigma_prime.len()
    }

    pub fn v(&self) -> usize {
        self.completion.len()
    }

    pub fn a(&self) -> usize {
        self.u() + self.v()
    }

    pub fn display(&self, pres: &Presentation) -> String {
        let names: Vec<String> = self.merged().iter().map(|p| p.display(pres.quiver())).collect();
        format!("({})", names.join(", "))
    }
}

/// Completes σ ⊔ σ′ greedily along the basis order of the big cover.
pub fn build_basis_b(
    sigma: &Skeleton,
    sigma_prime: &[ProjPath],
    frame: &TopFrame,
    pres: &Presentation,
) -> Result<OrderedBasisB> {
    let mut coords = Coordinates::new(frame, pres);
    let mut span = EchelonSpan::new(coords.dim());
    for p in sigma.paths().iter().chain(sigma_prime) {
        if !span.insert(&coords.vector(p)) {
            return Err(Error::EmptyGrass);
        }
    }
    let mut completion = Vec::new();
    for p in bold_p_basis(frame, pres) {
        if span.rank() == coords.dim() {
            break;
        }
        if span.insert(&coords.vector(&p)) {
            completion.push(p);
        }
    }
    let b = OrderedBasisB { sigma: sigma.paths().to_vec(), sigma_prime: sigma_prime.to_vec(), completion };
    if b.a() == 0 {
        return Err(Error::Degenerate("σ spans the big cover, the Grassmannian of 0-planes is a point".into()));
    }
    Ok(b)
}

/// The rows `C′_i` and `C″_k` in `B` coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplementRows {
    pub d: usize,
    pub u: usize,
    pub rows: Vec<Vec<Poly>>,
    /// `q[k][l]`: coefficient of `b_l` in the class of `b″_k`.
    pub q: Vec<Vec<Poly>>,
}

pub fn complement_rows(b: &OrderedBasisB, r: &ReducedSystem) -> ComplementRows {
    let (d, u, a) = (b.d(), b.u(), b.a());
    let width = d + a;
    let mut rows = Vec::with_capacity(a);
    for i in 1..=u as u32 {
        let mut row = vec![Poly::zero(); width];
        row[d + i as usize - 1] = Poly::one();
        for &(k, j) in r.n0.iter().filter(|(k, _)| *k == i) {
            row[j as usize - 1] = -Poly::var(Var::reduced(k, j));
        }
        rows.push(row);
    }
    let mut q = Vec::with_capacity(b.v());
    for (k, p) in b.completion.iter().enumerate() {
        let qk: Vec<Poly> = r.ctx.expand(p).iter().map(|c| c.substitute(&r.substitution)).collect();
        let mut row = vec![Poly::zero(); width];
        row[d + u + k] = Poly::one();
        for (l, c) in qk.iter().enumerate() {
            row[l] = -c.clone();
        }
        rows.push(row);
        q.push(qk);
    }
    ComplementRows { d, u, rows, q }
}

/// Plücker coordinates of the wedge of the complement rows.
#[derive(Clone, Debug, PartialEq)]
pub struct PlueckerExpansion {
    pub d: usize,
    pub a: usize,
    /// Nonzero minors keyed by ascending 1-based column tuples.
    pub rho: BTreeMap<Vec<u32>, Poly>,
    /// `ε_{kl}` for `(k, l) ∈ N₀`.
    pub signs: BTreeMap<(u32, u32), i8>,
    pub q: Vec<Vec<Poly>>,
}

impl PlueckerExpansion {
    pub fn special(&self) -> Vec<u32> {
        (self.d as u32 + 1..=(self.d + self.a) as u32).collect()
    }

    /// `T_{kl} = {l} ∪ {d+1..d+a} \ {d+k}`, sorted.
    pub fn hat_index(&self, k: u32, l: u32) -> Vec<u32> {
        let mut t: Vec<u32> = self.special().into_iter().filter(|&c| c != self.d as u32 + k).collect();
        t.push(l);
        t.sort_unstable();
        t
    }

    pub fn rho(&self, t: &[u32]) -> Poly {
        self.rho.get(t).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn z(&self) -> Var {
        Var::pluecker(&self.special())
    }

    pub fn y_hat(&self, k: u32, l: u32) -> Var {
        Var::pluecker(&self.hat_index(k, l))
    }

    /// All ascending `a`-tuples of `1..=d+a`.
    pub fn tuples(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.a);
        fn rec(start: u32, n: u32, a: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == a {
                out.push(cur.clone());
                return;
            }
            for c in start..=n {
                cur.push(c);
                rec(c + 1, n, a, cur, out);
                cur.pop();
            }
        }
        rec(1, (self.d + self.a) as u32, self.a, &mut cur, &mut out);
        out
    }

    pub fn num_coordinates(&self) -> u128 {
        binomial((self.d + self.a) as u128, self.a as u128)
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All maximal minors of the complement rows, by dynamic programming over
/// the sets of columns used by the first rows.
pub fn pluecker_expansion(rows: &ComplementRows, n0: &[(u32, u32)]) -> Result<PlueckerExpansion> {
    let a = rows.rows.len();
    let width = rows.d + a;
    if width > 64 {
        return Err(Error::Unsupported(format!("{width} columns exceed the minor enumerator's limit of 64")));
    }
    let mut states: BTreeMap<u64, Poly> = BTreeMap::from([(0, Poly::one())]);
    for row in &rows.rows {
        let mut next: BTreeMap<u64, Poly> = BTreeMap::new();
        for (mask, acc) in &states {
            for (c, entry) in row.iter().enumerate() {
                if entry.is_zero() || mask & (1 << c) != 0 {
                    continue;
                }
                let above = (mask >> c).count_ones();
                let mut term = acc * entry;
                if above % 2 == 1 {
                    term = -term;
                }
                let slot = next.entry(mask | (1 << c)).or_insert_with(Poly::zero);
                *slot = &*slot + &term;
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    let rho: BTreeMap<Vec<u32>, Poly> = states
        .into_iter()
        .map(|(mask, p)| ((0..width as u32).filter(|c| mask & (1 << c) != 0).map(|c| c + 1).collect(), p))
        .collect();
    let mut exp = PlueckerExpansion { d: rows.d, a, rho, signs: BTreeMap::new(), q: rows.q.clone() };
    if exp.rho(&exp.special()) != Poly::one() {
        return Err(Error::RowConstruction("the minor at the special index is not 1".into()));
    }
    for &(k, l) in n0 {
        let x = Poly::var(Var::reduced(k, l));
        let minor = exp.rho(&exp.hat_index(k, l));
        let sign = if minor == x {
            1
        } else if minor == -x {
            -1
        } else {
            return Err(Error::RowConstruction(format!("minor for ({k},{l}) is {minor}")));
        };
        exp.signs.insert((k, l), sign);
    }
    Ok(exp)
}

impl PlueckerExpansion {
    /// `X[k,l] ↦ ε_{kl} Ŷ_{kl}`.
    pub fn phi(&self) -> BTreeMap<Var, Poly> {
        self.signs
            .iter()
            .map(|(&(k, l), &e)| {
                let y = Poly::var(self.y_hat(k, l));
                (Var::reduced(k, l), if e < 0 { -y } else { y })
            })
            .collect()
    }

    /// `Y_T ↦ ρ_T(X)` on every coordinate, so `Z ↦ 1` and `Ŷ_{kl} ↦ ε_{kl} X[k,l]`.
    pub fn parametrization(&self) -> BTreeMap<Var, Poly> {
        self.tuples().into_iter().map(|t| (Var::pluecker(&t), self.rho(&t))).collect()
    }

    /// Sends a point `D` in Plücker coordinates to `C_{ij} = ε_{ij} D_{T_ij}`.
    pub fn sign_project(&self, point: &BTreeMap<Var, Rational>) -> BTreeMap<Var, Rational> {
        self.signs
            .iter()
            .map(|(&(k, l), &e)| {
                let dv = point.get(&self.y_hat(k, l)).cloned().unwrap_or_else(Rational::zero);
                (Var::reduced(k, l), if e < 0 { -dv } else { dv })
            })
            .collect()
    }
}

/// Generators of the Schubert-cell chart in the Plücker coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SchubertSystem {
    pub z: Var,
    pub coordinates: Vec<Poly>,
    pub tau: Vec<Poly>,
}

impl SchubertSystem {
    pub fn chart(&self) -> Poly {
        Poly::var(self.z.clone()) - Poly::one()
    }

    /// `Z − 1`, then the coordinate equations in tuple order, then τ.
    pub fn generators(&self) -> Vec<Poly> {
        std::iter::once(self.chart()).chain(self.coordinates.iter().cloned()).chain(self.tau.iter().cloned()).collect()
    }
}

pub fn schubert_system(exp: &PlueckerExpansion, r: &ReducedSystem) -> SchubertSystem {
    let phi = exp.phi();
    let special = exp.special();
    let coordinates = exp
        .tuples()
        .into_iter()
        .filter(|t| *t != special)
        .map(|t| Poly::var(Var::pluecker(&t)) - exp.rho(&t).substitute(&phi))
        .filter(|p| !p.is_zero())
        .collect();
    let tau = r.polys().iter().map(|p| p.substitute(&phi)).filter(|p| !p.is_zero()).collect();
    SchubertSystem { z: exp.z(), coordinates, tau }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaturationStatus {
    Saturated,
    /// The step limit was hit; only the homogenized generators are available.
    GeneratorsOnly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousIdeal {
    pub z: Var,
    pub homogenized: Vec<Poly>,
    pub generators: Vec<Poly>,
    pub status: SaturationStatus,
    /// Whether the homogenized generators already generate the saturation.
    pub homogenized_sufficient: Option<bool>,
}

pub fn homogenize_and_saturate(s: &SchubertSystem, opts: &GbOptions) -> Result<HomogeneousIdeal> {
    let chart = s.chart();
    let homogenized: Vec<Poly> = s
        .generators()
        .iter()
        .filter(|p| **p != chart)
        .map(|p| p.homogenize(&s.z))
        .collect::<std::result::Result<_, _>>()?;
    let z = Poly::var(s.z.clone());
    match saturate(&homogenized, &z, opts) {
        Ok(generators) => {
            let gb = GroebnerBasis::new(&homogenized, MonomialOrder::GrevLex, opts)?;
            let sufficient = generators.iter().all(|p| gb.contains(p));
            Ok(HomogeneousIdeal {
                z: s.z.clone(),
                homogenized,
                generators,
                status: SaturationStatus::Saturated,
                homogenized_sufficient: Some(sufficient),
            })
        }
        Err(PolyError::StepLimit(_)) => Ok(HomogeneousIdeal {
            z: s.z.clone(),
            generators: homogenized.clone(),
            homogenized,
            status: SaturationStatus::GeneratorsOnly,
            homogenized_sufficient: None,
        }),
        Err(e) => Err(e.into()),
    }
}

/// Adds externally computed component generators to the reduced system.
pub fn restrict_to_component(r: &ReducedSystem, component: &[Poly]) -> Result<ReducedSystem> {
    let allowed: BTreeSet<Var> = r.variables().into_iter().collect();
    for p in component {
        if let Some(v) = p.vars().into_iter().find(|v| !allowed.contains(v)) {
            return Err(Error::ForeignVariable(v.to_string()));
        }
    }
    let mut out = r.clone();
    for p in component.iter().filter(|p| !p.is_zero()) {
        out.records.push(ReducedRecord { relation: None, top: None, index: None, poly: p.clone() });
    }
    Ok(out)
}

/// True iff every polynomial vanishes under `Y_T ↦ ρ_T(X)` modulo the reduced τ ideal.
pub fn vanishes_on_parametrization(
    polys: &[Poly],
    exp: &PlueckerExpansion,
    r: &ReducedSystem,
    opts: &GbOptions,
) -> Result<bool> {
    let param = exp.parametrization();
    let gb = GroebnerBasis::new(&r.polys(), MonomialOrder::GrevLex, opts)?;
    Ok(polys.iter().all(|p| gb.reduce(&p.substitute(&param)).is_zero()))
}

/// Every stage of the lift for one skeleton.
#[derive(Clone, Debug)]
pub struct ProjectiveLift {
    pub reduced: ReducedSystem,
    pub basis: OrderedBasisB,
    pub rows: ComplementRows,
    pub expansion: PlueckerExpansion,
    pub schubert: SchubertSystem,
}

impl ProjectiveLift {
    pub fn compute(pres: &Presentation, sigma: &Skeleton) -> Result<Self> {
        Self::from_reduced(reduce_index_set(&TauSystem::new(pres, sigma, Setting::Big)?)?)
    }

    pub fn from_reduced(reduced: ReducedSystem) -> Result<Self> {
        let ctx = reduced.context();
        let basis = build_basis_b(ctx.skeleton(), &reduced.sigma_prime, ctx.frame(), ctx.presentation())?;
        let rows = complement_rows(&basis, &reduced);
        let expansion = pluecker_expansion(&rows, &reduced.n0)?;
        let schubert = schubert_system(&expansion, &reduced);
        Ok(ProjectiveLift { reduced, basis, rows, expansion, schubert })
    }

    pub fn saturate(&self, opts: &GbOptions) -> Result<HomogeneousIdeal> {
        homogenize_and_saturate(&self.schubert, opts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use grassvar_poly::groebner::{ideal_equal, intersect};
    use grassvar_poly::rat;

    fn a0() -> (Presentation, Skeleton) {
        let pres = Presentation::parse(include_str!("../fixtures/a0.pres")).unwrap();
        let sk = Skeleton::parse(include_str!("../fixtures/a0_sigma.skel"), &pres).unwrap();
        (pres, sk)
    }

    fn x(i: u32, j: u32) -> Poly {
        Poly::var(Var::reduced(i, j))
    }

    fn y(t: &[u32]) -> Poly {
        Poly::var(Var::pluecker(t))
    }

    #[test]
    fn a0_index_set() {
        let (pres, sk) = a0();
        let lift = ProjectiveLift::compute(&pres, &sk).unwrap();
        let names: Vec<String> =
            lift.reduced.sigma_prime.iter().map(|p| p.display(pres.quiver())).collect();
        assert_eq!(names, ["b*z1", "z2"]);
        assert_eq!(lift.reduced.n0, [(1, 2), (2, 1), (2, 2)]);
        assert!(lift.reduced.records.is_empty());
        assert!(lift.reduced.dependent.is_empty());
    }

    #[test]
    fn a0_basis_and_rows() {
        let (pres, sk) = a0();
        let lift = ProjectiveLift::compute(&pres, &sk).unwrap();
        assert_eq!(lift.basis.display(&pres), "(z1, a*z1, b*z1, z2, a*z2, b*z2)");
        assert_eq!((lift.basis.u(), lift.basis.v(), lift.basis.a()), (2, 2, 4));
        let z = Poly::zero;
        let q = &lift.rows.q;
        assert_eq!(q[0], [z(), x(2, 1)]);
        assert_eq!(q[1], [z(), x(1, 2) * x(2, 1)]);
        assert_eq!(lift.rows.rows[0], [z(), -x(1, 2), Poly::one(), z(), z(), z()]);
        assert_eq!(lift.rows.rows[1], [-x(2, 1), -x(2, 2), z(), Poly::one(), z(), z()]);
    }

    #[test]
    fn a0_rho_table() {
        let (pres, sk) = a0();
        let exp = ProjectiveLift::compute(&pres, &sk).unwrap().expansion;
        let (x12, x21, x22) = (x(1, 2), x(2, 1), x(2, 2));
        let expected: BTreeMap<Vec<u32>, Poly> = [
            (vec![3, 4, 5, 6], Poly::one()),
            (vec![1, 2, 3, 5], -(&(&x12 * &x21) * &x21)),
            (vec![1, 2, 3, 6], &x21 * &x21),
            (vec![1, 2, 5, 6], -(&x12 * &x21)),
            (vec![1, 3, 5, 6], x21.clone()),
            (vec![2, 3, 4, 5], &x12 * &x21),
            (vec![2, 3, 4, 6], -x21.clone()),
            (vec![2, 3, 5, 6], x22.clone()),
            (vec![2, 4, 5, 6], -x12.clone()),
        ]
        .into_iter()
        .collect();
        assert_eq!(exp.rho, expected);
        assert_eq!(exp.signs, BTreeMap::from([((1, 2), -1), ((2, 1), 1), ((2, 2), 1)]));
        assert_eq!(exp.num_coordinates(), 15);
        assert_eq!(exp.tuples().len(), 15);
    }

    #[test]
    fn identity_rows_have_one_minor() {
        let rows = ComplementRows {
            d: 2,
            u: 0,
            rows: vec![
                vec![Poly::zero(), Poly::zero(), Poly::one(), Poly::zero()],
                vec![Poly::zero(), Poly::zero(), Poly::zero(), Poly::one()],
            ],
            q: vec![],
        };
        let exp = pluecker_expansion(&rows, &[]).unwrap();
        assert_eq!(exp.rho.len(), 1);
        assert_eq!(exp.rho(&[3, 4]), Poly::one());
    }

    #[test]
    fn bad_rows_rejected() {
        let rows = ComplementRows {
            d: 1,
            u: 0,
            rows: vec![vec![Poly::one(), Poly::zero()]],
            q: vec![],
        };
        assert!(matches!(pluecker_expansion(&rows, &[]), Err(Error::RowConstruction(_))));
    }

    fn schubert_expected() -> Vec<Poly> {
        let (h12, h21) = (y(&[2, 4, 5, 6]), y(&[1, 3, 5, 6]));
        let mut out = vec![
            y(&[3, 4, 5, 6]) - Poly::one(),
            y(&[1, 2, 3, 5]) - &(&h12 * &h21) * &h21,
            y(&[1, 2, 3, 6]) - &h21 * &h21,
            y(&[1, 2, 5, 6]) - &h12 * &h21,
            y(&[2, 3, 4, 5]) + &h12 * &h21,
            y(&[2, 3, 4, 6]) + h21.clone(),
        ];
        for t in [[1, 2, 3, 4], [1, 2, 4, 5], [1, 2, 4, 6], [1, 3, 4, 5], [1, 3, 4, 6], [1, 4, 5, 6]] {
            out.push(y(&t));
        }
        out
    }

    #[test]
    fn a0_schubert_system() {
        let (pres, sk) = a0();
        let lift = ProjectiveLift::compute(&pres, &sk).unwrap();
        let got: BTreeSet<String> = lift.schubert.generators().iter().map(Poly::to_string).collect();
        let want: BTreeSet<String> = schubert_expected().iter().map(Poly::to_string).collect();
        assert_eq!(got, want);
        assert_eq!(lift.schubert.generators().len(), 12);
    }

    #[test]
    fn a0_saturation_matches_closure_ideal() {
        let (pres, sk) = a0();
        let lift = ProjectiveLift::compute(&pres, &sk).unwrap();
        let ideal = lift.saturate(&GbOptions::default()).unwrap();
        assert_eq!(ideal.status, SaturationStatus::Saturated);
        let (z, h11, h12, h21) = (y(&[3, 4, 5, 6]), y(&[1, 4, 5, 6]), y(&[2, 4, 5, 6]), y(&[1, 3, 5, 6]));
        let (y1235, y1236, y1256) = (y(&[1, 2, 3, 5]), y(&[1, 2, 3, 6]), y(&[1, 2, 5, 6]));
        let want = vec![
            &y1235 * &z - &h12 * &y1236,
            &y1236 * &z - &h21 * &h21,
            &y1256 * &z - &h12 * &h21,
            h11,
            y(&[2, 3, 4, 5]) + y1256.clone(),
            y(&[2, 3, 4, 6]) + h21.clone(),
            y(&[1, 2, 3, 4]),
            y(&[1, 2, 4, 5]),
            y(&[1, 2, 4, 6]),
            y(&[1, 3, 4, 5]),
            y(&[1, 3, 4, 6]),
            &h12 * &y1236 - &h21 * &y1256,
            &y1236 * &y1256 - &h21 * &y1235,
            &y1256 * &y1256 - &h12 * &y1235,
        ];
        assert!(ideal_equal(&ideal.generators, &want, &GbOptions::default()).unwrap());
        assert_eq!(ideal.homogenized_sufficient, Some(false));
    }

    #[test]
    fn parametrization_vanishes() {
        let (pres, sk) = a0();
        let lift = ProjectiveLift::compute(&pres, &sk).unwrap();
        let opts = GbOptions::default();
        let gens = lift.schubert.generators();
        assert!(vanishes_on_parametrization(&gens, &lift.expansion, &lift.reduced, &opts).unwrap());
        let bogus = [y(&[1, 2, 3, 6]) - Poly::one()];
        assert!(!vanishes_on_parametrization(&bogus, &lift.expansion, &lift.reduced, &opts).unwrap());
    }

    #[test]
    fn sign_projection() {
        let (pres, sk) = a0();
        let exp = ProjectiveLift::compute(&pres, &sk).unwrap().expansion;
        let d: BTreeMap<Var, Rational> =
            [(Var::pluecker(&[2, 4, 5, 6]), rat(3)), (Var::pluecker(&[1, 3, 5, 6]), rat(5))].into_iter().collect();
        let c = exp.sign_project(&d);
        assert_eq!(c[&Var::reduced(1, 2)], rat(-3));
        assert_eq!(c[&Var::reduced(2, 1)], rat(5));
        assert_eq!(c[&Var::reduced(2, 2)], rat(0));
    }

    #[test]
    fn constant_coordinate_homogenizes() {
        let z = Var::aux("Z");
        let yv = Var::aux("Y");
        let s = SchubertSystem { z: z.clone(), coordinates: vec![Poly::var(yv.clone()) - Poly::constant(rat(3))], tau: vec![] };
        let ideal = homogenize_and_saturate(&s, &GbOptions::default()).unwrap();
        let want = [Poly::var(yv) - Poly::var(z).scale(&rat(3))];
        assert!(ideal_equal(&ideal.generators, &want, &GbOptions::default()).unwrap());
    }

    #[test]
    fn small_setting_rejected() {
        let (pres, sk) = a0();
        let tau = TauSystem::new(&pres, &sk, Setting::Small).unwrap();
        assert!(matches!(reduce_index_set(&tau), Err(Error::Precondition(_))));
    }

    #[test]
    fn carlson_two_dimensional() {
        let pres = Presentation::parse(include_str!("../fixtures/carlson.pres")).unwrap();
        let sk = Skeleton::parse("z1@1: ε, a", &pres).unwrap();
        let lift = ProjectiveLift::compute(&pres, &sk).unwrap();
        let names: Vec<String> =
            lift.reduced.sigma_prime.iter().map(|p| p.display(pres.quiver())).collect();
        assert!(names.contains(&"b*a*z1".to_string()));
        assert_eq!(lift.basis.merged().len(), 8);
        assert_eq!(lift.basis.a(), 6);
    }

    #[test]
    fn spanning_skeleton_is_degenerate() {
        let pres = Presentation::parse("[quiver]\nvertex 1\n[loewy]\nL = 0\n").unwrap();
        let sk = Skeleton::parse("z1@1: ε", &pres).unwrap();
        assert!(matches!(ProjectiveLift::compute(&pres, &sk), Err(Error::Degenerate(_))));
    }

    #[test]
    fn component_restriction() {
        let (pres, sk) = a0();
        let lift = ProjectiveLift::compute(&pres, &sk).unwrap();
        let same = restrict_to_component(&lift.reduced, &[]).unwrap();
        assert_eq!(same.polys(), lift.reduced.polys());
        let foreign = [Poly::var(Var::reduced(9, 9))];
        assert!(matches!(restrict_to_component(&lift.reduced, &foreign), Err(Error::ForeignVariable(_))));
    }

    #[test]
    fn toy_components_intersect_back() {
        let (pres, sk) = a0();
        let lift = ProjectiveLift::compute(&pres, &sk).unwrap();
        let opts = GbOptions::default();
        let whole = restrict_to_component(&lift.reduced, &[x(1, 2) * x(2, 2)]).unwrap();
        let part = |g: Poly| {
            let r = restrict_to_component(&lift.reduced, &[g]).unwrap();
            ProjectiveLift::from_reduced(r).unwrap().saturate(&opts).unwrap().generators
        };
        let (i1, i2) = (part(x(1, 2)), part(x(2, 2)));
        assert!(!ideal_equal(&i1, &i2, &opts).unwrap());
        let inter = intersect(&i1, &i2, &opts).unwrap();
        let full = ProjectiveLift::from_reduced(whole).unwrap().saturate(&opts).unwrap().generators;
        assert!(ideal_equal(&inter, &full, &opts).unwrap());
    }
}
