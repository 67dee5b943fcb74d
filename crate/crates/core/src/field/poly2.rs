//! Sparse multivariate polynomials and rational functions over GF(2) in the
//! indeterminates θ_{i,p}.
//!
//! No multivariate gcd is attempted: fractions only cancel identical
//! numerator/denominator pairs and common monomial content, and equality is
//! decided by cross-multiplication.

use super::Field;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// The indeterminate θ_{row, point}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub row: u16,
    pub point: u32,
}

impl Var {
    pub fn new(row: usize, point: usize) -> Self {
        Self {
            row: row as u16,
            point: point as u32,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}_{}", self.row, self.point)
    }
}

/// Power product with nonzero exponents, sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial2(Vec<(Var, u32)>);

impl Monomial2 {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Self(vec![(v, 1)])
    }

    pub fn from_exponents(mut exps: Vec<(Var, u32)>) -> Self {
        exps.retain(|&(_, e)| e > 0);
        exps.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => merged.push((v, e)),
            }
        }
        Self(merged)
    }

    pub fn exponents(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self(out)
    }

    /// Divides by `other`, `None` if it does not divide.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            let mut f = 0;
            if j < other.0.len() && other.0[j].0 == v {
                f = other.0[j].1;
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if f > e {
                return None;
            }
            if e > f {
                out.push((v, e - f));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Self(out))
    }

    fn min_with(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            let f = other.exponent(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Self(out)
    }
}

impl fmt::Display for Monomial2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
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

/// Polynomial over GF(2): the set of monomials with coefficient 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparsePoly2 {
    terms: BTreeSet<Monomial2>,
}

impl SparsePoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial2::one())
    }

    pub fn var(v: Var) -> Self {
        Self::from_monomial(Monomial2::var(v))
    }

    pub fn from_monomial(m: Monomial2) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = Monomial2>>(it: I) -> Self {
        let mut p = Self::zero();
        for m in it {
            p.toggle(m);
        }
        p
    }

    fn toggle(&mut self, m: Monomial2) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|m| m.0.is_empty())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial2> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(Monomial2::degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .cloned()
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for m in &other.terms {
            self.toggle(m.clone());
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = Self::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial2) -> Self {
        Self {
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        }
    }

    /// Frobenius: the square of a sum is the sum of the squares.
    pub fn square(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|m| Monomial2(m.0.iter().map(|&(v, e)| (v, 2 * e)).collect()))
                .collect(),
        }
    }

    /// Formal partial derivative; even exponents differentiate to zero.
    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for m in &self.terms {
            let e = m.exponent(v);
            if e % 2 == 1 {
                let lowered = Monomial2::from_exponents(
                    m.0.iter()
                        .map(|&(w, f)| if w == v { (w, f - 1) } else { (w, f) })
                        .collect(),
                );
                out.toggle(lowered);
            }
        }
        out
    }

    /// Largest monomial dividing every term (1 for the zero polynomial).
    pub fn monomial_content(&self) -> Monomial2 {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else {
            return Monomial2::one();
        };
        let mut g = first.clone();
        for m in it {
            if g.0.is_empty() {
                break;
            }
            g = g.min_with(m);
        }
        g
    }

    pub fn div_monomial(&self, m: &Monomial2) -> Option<Self> {
        let mut terms = BTreeSet::new();
        for t in &self.terms {
            terms.insert(t.div(m)?);
        }
        Some(Self { terms })
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .iter()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect()
    }

    /// Evaluates at a point of an extension field of GF(2).
    pub fn eval<F: Field>(&self, field: &F, value: &impl Fn(Var) -> F::Elem) -> F::Elem {
        let mut cache: BTreeMap<Var, F::Elem> = BTreeMap::new();
        let mut acc = field.zero();
        for m in &self.terms {
            let mut t = field.one();
            for &(v, e) in &m.0 {
                let x = cache.entry(v).or_insert_with(|| value(v)).clone();
                t = field.mul(&t, &field.pow(&x, e as u64));
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Writes the polynomial as Σ_e θ^e · S_e(θ)² with e square-free.
    /// Returns e ↦ S_e where S_e is expressed in the same variables with
    /// halved exponents (i.e. as a polynomial in y = θ²).
    pub fn square_free_split(&self) -> BTreeMap<Monomial2, SparsePoly2> {
        let mut out: BTreeMap<Monomial2, SparsePoly2> = BTreeMap::new();
        for m in &self.terms {
            let odd = Monomial2(m.0.iter().filter(|&&(_, e)| e % 2 == 1).map(|&(v, _)| (v, 1)).collect());
            let half = Monomial2(
                m.0.iter()
                    .filter(|&&(_, e)| e >= 2)
                    .map(|&(v, e)| (v, e / 2))
                    .collect(),
            );
            out.entry(odd).or_default().toggle(half);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }
}

impl fmt::Display for SparsePoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Quotient of two GF(2) polynomials, denominator nonzero.
#[derive(Clone, Debug)]
pub struct RationalFn2 {
    num: SparsePoly2,
    den: SparsePoly2,
}

impl RationalFn2 {
    pub fn new(num: SparsePoly2, den: SparsePoly2) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self { num, den }.normalized()
    }

    pub fn from_poly(p: SparsePoly2) -> Self {
        Self {
            num: p,
            den: SparsePoly2::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(SparsePoly2::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(SparsePoly2::one())
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(SparsePoly2::var(v))
    }

    pub fn numerator(&self) -> &SparsePoly2 {
        &self.num
    }

    pub fn denominator(&self) -> &SparsePoly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den = SparsePoly2::one();
            return self;
        }
        if self.num == self.den {
            return Self::one();
        }
        let g = self.num.monomial_content().min_with(&self.den.monomial_content());
        if !g.0.is_empty() {
            self.num = self.num.div_monomial(&g).expect("content divides");
            self.den = self.den.div_monomial(&g).expect("content divides");
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // cancel identical cross factors before multiplying out
        let (n1, d2) = if self.num == other.den {
            (SparsePoly2::one(), SparsePoly2::one())
        } else {
            (self.num.clone(), other.den.clone())
        };
        let (n2, d1) = if other.num == self.den {
            (SparsePoly2::one(), SparsePoly2::one())
        } else {
            (other.num.clone(), self.den.clone())
        };
        Self::new(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self {
                num: self.den.clone(),
                den: self.num.clone(),
            })
        }
    }

    pub fn square(&self) -> Self {
        Self {
            num: self.num.square(),
            den: self.den.square(),
        }
    }

    /// Quotient rule; in characteristic 2 the numerator is n'd + nd'.
    pub fn derivative(&self, v: Var) -> Self {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return Self::new(dn, self.den.clone());
        }
        Self::new(
            dn.mul(&self.den).add(&self.num.mul(&dd)),
            self.den.square(),
        )
    }

    pub fn eval<F: Field>(&self, field: &F, value: &impl Fn(Var) -> F::Elem) -> Option<F::Elem> {
        let d = self.den.eval(field, value);
        let inv = field.inv(&d)?;
        Some(field.mul(&self.num.eval(field, value), &inv))
    }
}

impl PartialEq for RationalFn2 {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for RationalFn2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// The field GF(2)(θ) as a [`Field`] backend.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField2;

impl Field for RationalField2 {
    type Elem = RationalFn2;

    fn zero(&self) -> RationalFn2 {
        RationalFn2::zero()
    }
    fn one(&self) -> RationalFn2 {
        RationalFn2::one()
    }
    fn is_zero(&self, a: &RationalFn2) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RationalFn2, b: &RationalFn2) -> RationalFn2 {
        a.add(b)
    }
    fn neg(&self, a: &RationalFn2) -> RationalFn2 {
        a.clone()
    }
    fn sub(&self, a: &RationalFn2, b: &RationalFn2) -> RationalFn2 {
        a.add(b)
    }
    fn mul(&self, a: &RationalFn2, b: &RationalFn2) -> RationalFn2 {
        a.mul(b)
    }
    fn inv(&self, a: &RationalFn2) -> Option<RationalFn2> {
        a.inv()
    }
    fn characteristic(&self) -> u64 {
        2
    }
    fn order_log2(&self) -> Option<f64> {
        None
    }
    fn describe(&self) -> String {
        "GF(2)(theta)".to_string()
    }
    fn eq(&self, a: &RationalFn2, b: &RationalFn2) -> bool {
        a == b
    }
    fn from_i64(&self, n: i64) -> RationalFn2 {
        if n & 1 == 1 {
            RationalFn2::one()
        } else {
            RationalFn2::zero()
        }
    }
    fn pivot_weight(&self, a: &RationalFn2) -> usize {
        a.num.len() + a.den.len()
    }
    fn render(&self, a: &RationalFn2) -> String {
        a.to_string()
    }
}
