use std::cmp::Ordering;
use std::sync::Arc;

use super::coeffs::{Coeffs, Field};
use super::monomial::{Monomial, MonomialOrder};

/// Sparse polynomial: terms sorted strictly descending in the ring ordering,
/// no zero coefficients. The ordering lives in the [`PolyRing`].
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    /// Wraps terms already in canonical order.
    pub(crate) fn from_sorted(terms: Vec<(Monomial, E)>) -> Self {
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, E)> {
        self.terms
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&E> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree (zero for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.0)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &E> {
        self.terms.iter().map(|t| &t.1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    /// Maps coefficients, dropping those that become zero.
    pub fn map_coeffs<F, E2>(&self, mut f: F) -> Option<Poly<E2>>
    where
        F: FnMut(&E) -> Option<Option<E2>>,
    {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if let Some(c2) = f(c)? {
                out.push((m.clone(), c2));
            }
        }
        Some(Poly { terms: out })
    }
}

impl<E: Clone> Poly<E> {
    /// Everything except the leading term.
    pub fn tail(&self) -> Poly<E> {
        Poly { terms: self.terms.iter().skip(1).cloned().collect() }
    }
}

/// Polynomial ring `C[x_1, …, x_n]` with a fixed global monomial ordering.
#[derive(Debug, Clone)]
pub struct PolyRing<C> {
    vars: Arc<[String]>,
    order: MonomialOrder,
    coeffs: C,
}

impl<C: PartialEq> PartialEq for PolyRing<C> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.order == other.order && self.coeffs == other.coeffs
    }
}

impl<C: Coeffs> PolyRing<C> {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder, coeffs: C) -> Self {
        assert!(!vars.is_empty(), "a ring needs at least one variable");
        let vars: Arc<[String]> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            assert!(!vars[..i].contains(v), "duplicate variable {v}");
        }
        PolyRing { vars, order, coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn coeffs(&self) -> &C {
        &self.coeffs
    }

    /// Same variables and ordering over another coefficient domain.
    pub fn with_coeffs<C2: Coeffs>(&self, coeffs: C2) -> PolyRing<C2> {
        PolyRing { vars: self.vars.clone(), order: self.order, coeffs }
    }

    pub fn with_order(&self, order: MonomialOrder) -> PolyRing<C> {
        PolyRing { vars: self.vars.clone(), order, coeffs: self.coeffs.clone() }
    }

    /// Ring with fresh variables prepended; used for elimination.
    pub fn with_prepended_vars(&self, names: &[&str], order: MonomialOrder) -> PolyRing<C> {
        let mut all: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        all.extend(self.vars.iter().cloned());
        PolyRing::new(&all, order, self.coeffs.clone())
    }

    pub fn same_ring(&self, other: &Self) -> bool
    where
        C: PartialEq,
    {
        self == other
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    pub fn zero(&self) -> Poly<C::Elem> {
        Poly::zero()
    }

    pub fn one(&self) -> Poly<C::Elem> {
        self.constant(self.coeffs.one())
    }

    pub fn constant(&self, c: C::Elem) -> Poly<C::Elem> {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn term(&self, m: Monomial, c: C::Elem) -> Poly<C::Elem> {
        if self.coeffs.is_zero(&c) {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(&self, i: usize) -> Poly<C::Elem> {
        self.term(Monomial::var(self.nvars(), i, 1), self.coeffs.one())
    }

    /// Canonicalizes an arbitrary term list: sorts, merges duplicates, drops
    /// zeros.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, C::Elem)>) -> Poly<C::Elem> {
        terms.sort_by(|a, b| self.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, C::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = self.coeffs.add(&last.1, &c),
                _ => {
                    if let Some(last) = out.last() {
                        if self.coeffs.is_zero(&last.1) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|l| self.coeffs.is_zero(&l.1)) {
            out.pop();
        }
        Poly { terms: out }
    }

    /// Re-sorts a polynomial coming from a ring with a different ordering.
    pub fn reorder(&self, f: &Poly<C::Elem>) -> Poly<C::Elem> {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.compare(&b.0, &a.0));
        Poly { terms }
    }

    pub fn is_canonical(&self, f: &Poly<C::Elem>) -> bool {
        f.terms.iter().all(|t| !self.coeffs.is_zero(&t.1) && t.0.nvars() == self.nvars())
            && f.terms.windows(2).all(|w| self.compare(&w[0].0, &w[1].0) == Ordering::Greater)
    }

    pub fn neg(&self, f: &Poly<C::Elem>) -> Poly<C::Elem> {
        Poly { terms: f.terms.iter().map(|(m, c)| (m.clone(), self.coeffs.neg(c))).collect() }
    }

    pub fn add(&self, f: &Poly<C::Elem>, g: &Poly<C::Elem>) -> Poly<C::Elem> {
        self.combine(None, f, &self.coeffs.one(), None, g, false)
    }

    pub fn sub(&self, f: &Poly<C::Elem>, g: &Poly<C::Elem>) -> Poly<C::Elem> {
        self.combine(None, f, &self.coeffs.one(), None, g, true)
    }

    pub fn scale(&self, f: &Poly<C::Elem>, c: &C::Elem) -> Poly<C::Elem> {
        if self.coeffs.is_zero(c) {
            return Poly::zero();
        }
        let terms = f
            .terms
            .iter()
            .filter_map(|(m, a)| {
                let v = self.coeffs.mul(a, c);
                (!self.coeffs.is_zero(&v)).then(|| (m.clone(), v))
            })
            .collect();
        Poly { terms }
    }

    /// `c·m·f`.
    pub fn mul_term(&self, f: &Poly<C::Elem>, m: &Monomial, c: &C::Elem) -> Poly<C::Elem> {
        let terms = f
            .terms
            .iter()
            .filter_map(|(fm, a)| {
                let v = self.coeffs.mul(a, c);
                (!self.coeffs.is_zero(&v)).then(|| (fm.mul(m), v))
            })
            .collect();
        Poly { terms }
    }

    pub fn mul(&self, f: &Poly<C::Elem>, g: &Poly<C::Elem>) -> Poly<C::Elem> {
        let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        let mut acc = Poly::zero();
        for (m, c) in &small.terms {
            acc = self.combine(None, &acc, c, Some(m), large, false);
        }
        acc
    }

    pub fn pow(&self, f: &Poly<C::Elem>, mut e: u32) -> Poly<C::Elem> {
        let mut base = f.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `s·f ± t·m·g` by a single merge, with `s = None` meaning one.
    pub(crate) fn combine(
        &self,
        s: Option<&C::Elem>,
        f: &Poly<C::Elem>,
        t: &C::Elem,
        m: Option<&Monomial>,
        g: &Poly<C::Elem>,
        subtract: bool,
    ) -> Poly<C::Elem> {
        let mut out = Vec::with_capacity(f.len() + g.len());
        self.combine_into(&mut out, s, &f.terms, t, m, &g.terms, subtract);
        Poly { terms: out }
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn combine_into(
        &self,
        out: &mut Vec<(Monomial, C::Elem)>,
        s: Option<&C::Elem>,
        f: &[(Monomial, C::Elem)],
        t: &C::Elem,
        m: Option<&Monomial>,
        g: &[(Monomial, C::Elem)],
        subtract: bool,
    ) {
        let k = &self.coeffs;
        let scale_f = |c: &C::Elem| match s {
            Some(s) => k.mul(s, c),
            None => c.clone(),
        };
        let scale_g = |c: &C::Elem| {
            let v = k.mul(t, c);
            if subtract {
                k.neg(&v)
            } else {
                v
            }
        };
        let shift = |mon: &Monomial| match m {
            Some(m) => mon.mul(m),
            None => mon.clone(),
        };
        let mut i = 0;
        let mut j = 0;
        let mut gm = g.first().map(|t| shift(&t.0));
        while i < f.len() || j < g.len() {
            let ord = match (f.get(i), &gm) {
                (Some(a), Some(b)) => self.compare(&a.0, b),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    let v = scale_f(&f[i].1);
                    if !k.is_zero(&v) {
                        out.push((f[i].0.clone(), v));
                    }
                    i += 1;
                }
                Ordering::Less => {
                    let v = scale_g(&g[j].1);
                    let mon = gm.take().unwrap();
                    if !k.is_zero(&v) {
                        out.push((mon, v));
                    }
                    j += 1;
                    gm = g.get(j).map(|t| shift(&t.0));
                }
                Ordering::Equal => {
                    let v = k.add(&scale_f(&f[i].1), &scale_g(&g[j].1));
                    let mon = gm.take().unwrap();
                    if !k.is_zero(&v) {
                        out.push((mon, v));
                    }
                    i += 1;
                    j += 1;
                    gm = g.get(j).map(|t| shift(&t.0));
                }
            }
        }
    }

    /// Monic over a field, primitive with positive leading coefficient over ℤ.
    pub fn normalize(&self, f: &Poly<C::Elem>) -> Poly<C::Elem> {
        let mut f = f.clone();
        self.normalize_in_place(&mut f);
        f
    }

    pub fn normalize_in_place(&self, f: &mut Poly<C::Elem>) {
        let refs: Vec<&C::Elem> = f.terms.iter().map(|t| &t.1).collect();
        if let Some(d) = self.coeffs.normalizer(&refs) {
            for t in f.terms.iter_mut() {
                t.1 = self.coeffs.divide_exact(&t.1, &d);
            }
        }
    }

    /// Evaluates the variable `var` at the polynomial `value`.
    pub fn substitute(&self, f: &Poly<C::Elem>, var: usize, value: &Poly<C::Elem>) -> Poly<C::Elem> {
        let max = f.terms.iter().map(|t| t.0.exponent(var)).max().unwrap_or(0);
        let mut powers = vec![self.one()];
        for e in 1..=max {
            let next = self.mul(&powers[e as usize - 1], value);
            powers.push(next);
        }
        let mut acc = Poly::zero();
        for (m, c) in &f.terms {
            let e = m.exponent(var);
            let mut rest = m.exponents().to_vec();
            rest[var] = 0;
            let rest = Monomial::from_exponents(&rest);
            acc = self.combine(None, &acc, c, Some(&rest), &powers[e as usize], false);
        }
        acc
    }
}

impl<C: Field> PolyRing<C> {
    pub fn make_monic(&self, f: &Poly<C::Elem>) -> Poly<C::Elem> {
        match f.leading_coeff() {
            Some(lc) if !self.coeffs.is_one(lc) => self.scale(f, &self.coeffs.inv(lc)),
            _ => f.clone(),
        }
    }
}

/// Ideal given by generators in a fixed ring.
#[derive(Debug, Clone)]
pub struct Ideal<C: Coeffs> {
    ring: PolyRing<C>,
    gens: Vec<Poly<C::Elem>>,
}

impl<C: Coeffs> Ideal<C> {
    /// Zero generators are dropped.
    pub fn new(ring: PolyRing<C>, gens: Vec<Poly<C::Elem>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring, gens }
    }

    pub fn ring(&self) -> &PolyRing<C> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<C::Elem>] {
        &self.gens
    }

    pub fn into_generators(self) -> Vec<Poly<C::Elem>> {
        self.gens
    }
}
