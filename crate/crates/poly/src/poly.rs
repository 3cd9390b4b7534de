use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{PolyError, Rational, Var};

/// A power product, stored as `(variable, exponent)` pairs sorted by variable
/// with strictly positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Splits off the power of `v`.
    pub fn remove(&self, v: &Var) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(w, k)| {
                if w == v {
                    e = *k;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (Monomial(rest), e)
    }

    /// Graded reverse lexicographic comparison where smaller variables (in
    /// [`Var`] order) rank higher. Used for printing.
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (self.0.len(), other.0.len());
            while i > 0 || j > 0 {
                let a = if i > 0 { Some(&self.0[i - 1]) } else { None };
                let b = if j > 0 { Some(&other.0[j - 1]) } else { None };
                match (a, b) {
                    (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                        Ordering::Equal => {
                            if x.1 != y.1 {
                                return y.1.cmp(&x.1);
                            }
                            i -= 1;
                            j -= 1;
                        }
                        // x's variable is smaller in rank; y has exponent 0 there.
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Less => return Ordering::Greater,
                    },
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (None, None) => break,
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(n, k)| (n.mul(m), k.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces variables by polynomials; variables for which `f` returns
    /// `None` are kept.
    pub fn substitute_with(&self, f: impl Fn(&Var) -> Option<Poly>) -> Poly {
        let mut cache: BTreeMap<Var, Option<Poly>> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = Poly::constant(c.clone());
            for (v, e) in &m.0 {
                let image = cache.entry(v.clone()).or_insert_with(|| f(v));
                match image {
                    Some(p) => acc = &acc * &p.pow(*e),
                    None => kept.push((v.clone(), *e)),
                }
            }
            if !kept.is_empty() {
                acc = acc.mul_monomial(&Monomial(kept));
            }
            out = out + acc;
        }
        out
    }

    pub fn substitute(&self, map: &BTreeMap<Var, Poly>) -> Poly {
        self.substitute_with(|v| map.get(v).cloned())
    }

    /// Full evaluation. Returns `None` if some variable has no value.
    pub fn eval(&self, values: &BTreeMap<Var, Rational>) -> Option<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.0 {
                let x = values.get(v)?;
                t *= num_traits::pow(x.clone(), *e as usize);
            }
            total += t;
        }
        Some(total)
    }

    /// Homogenizes with respect to `z`, which must not already occur.
    pub fn homogenize(&self, z: &Var) -> Result<Poly, PolyError> {
        if self.contains_var(z) {
            return Err(PolyError::HomogenizingVariablePresent(z.to_string()));
        }
        let d = self.total_degree();
        Ok(Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let pad = d - m.degree();
            let m = if pad > 0 { m.mul(&Monomial(vec![(z.clone(), pad)])) } else { m.clone() };
            (m, c.clone())
        })))
    }

    /// Sets `z = 1`.
    pub fn dehomogenize(&self, z: &Var) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.remove(z).0, c.clone())))
    }

    /// If `self = c*v + rest` with `c` a nonzero constant and `v` absent from
    /// `rest`, returns `(c, rest)`.
    pub fn linear_split(&self, v: &Var) -> Option<(Rational, Poly)> {
        let mut coeff = None;
        let mut rest = Poly::zero();
        for (m, c) in &self.terms {
            match m.exponent(v) {
                0 => rest.add_term(m.clone(), c.clone()),
                1 if m.0.len() == 1 => coeff = Some(c.clone()),
                _ => return None,
            }
        }
        coeff.map(|c| (c, rest))
    }

    /// Terms from largest to smallest in the printing order (degree, then
    /// grevlex over the canonical variable order).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grevlex_cmp(a.0));
        v
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().max_by(|a, b| a.grevlex_cmp(b))
    }

    /// Scales to integer coefficients with gcd 1 and a positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(c.numer() * (&den / c.denom())));
        }
        let lead = self.leading_monomial().unwrap();
        let sign = if self.terms[lead].is_negative() { -BigInt::one() } else { BigInt::one() };
        self.scale(&Rational::new(den * sign, g))
    }

    /// Scales so the leading coefficient (printing order) is 1.
    pub fn monic(&self) -> Poly {
        match self.leading_monomial() {
            None => Poly::zero(),
            Some(m) => {
                let c = self.terms[m].clone();
                self.scale(&c.recip())
            }
        }
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn v(name: &str) -> Poly {
        Poly::var(Var::aux(name))
    }

    #[test]
    fn substitution_shape() {
        // X12 -> -Yh12, X21 -> Yh21 in X12*X21.
        let x12 = Var::reduced(1, 2);
        let x21 = Var::reduced(2, 1);
        let y12 = Var::pluecker(&[2, 4, 5, 6]);
        let y21 = Var::pluecker(&[1, 3, 5, 6]);
        let p = &Poly::var(x12.clone()) * &Poly::var(x21.clone());
        let mut map = BTreeMap::new();
        map.insert(x12, -Poly::var(y12.clone()));
        map.insert(x21, Poly::var(y21.clone()));
        let expected = -(&Poly::var(y12) * &Poly::var(y21));
        assert_eq!(p.substitute(&map), expected);
        assert_eq!(p.substitute(&BTreeMap::new()), p);
    }

    #[test]
    fn homogenize_balances_degrees() {
        let z = Var::aux("Z");
        let p = v("Y1235") - &v("Yh12") * &v("Yh21").pow(2);
        let h = p.homogenize(&z).unwrap();
        let expected = &v("Y1235") * &v("Z").pow(2) - &v("Yh12") * &v("Yh21").pow(2);
        assert_eq!(h, expected);
        assert!(h.is_homogeneous());
        assert_eq!(h.dehomogenize(&z), p);
        assert_eq!(Poly::one().homogenize(&z).unwrap(), Poly::one());
        assert!(h.homogenize(&z).is_err());
        let q = &v("Y1236") * &v("Z") - v("Yh21").pow(2);
        assert_eq!(q.dehomogenize(&z), v("Y1236") - v("Yh21").pow(2));
    }

    #[test]
    fn primitive_clears_denominators_and_sign() {
        let p = v("x").scale(&ratio(-1, 2)) + Poly::constant(ratio(1, 3));
        let q = p.primitive();
        assert_eq!(q, v("x").scale(&rat(3)) - Poly::constant(rat(2)));
    }

    #[test]
    fn display_is_stable() {
        let p = &v("a") * &v("b") - v("c").scale(&rat(2)) + Poly::constant(rat(1));
        assert_eq!(p.to_string(), "a*b - 2*c + 1");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn linear_split_detects_isolated_variable() {
        let x = Var::aux("x");
        let p = v("x").scale(&rat(3)) + &v("y") * &v("z");
        let (c, rest) = p.linear_split(&x).unwrap();
        assert_eq!(c, rat(3));
        assert_eq!(rest, &v("y") * &v("z"));
        let q = &v("x") * &v("y") - Poly::one();
        assert!(q.linear_split(&x).is_none());
    }
}
