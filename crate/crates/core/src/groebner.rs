//! Buchberger's algorithm with the product and chain criteria, normal forms
//! and Gröbner basis predicates.
//!
//! Over a field every basis element is kept monic. Over ℤ (used in place of
//! ℚ) reduction is fraction-free and elements are kept primitive.

use std::cmp::Ordering;

use crate::engine;
use crate::error::Result;
use crate::numth::Rational;
use crate::poly::{
    integer_to_rational, to_primitive_integer, Coeffs, Ideal, Monomial, Poly, PolyRing, Qq, Zz,
};

/// Reduced Gröbner basis: interreduced, normalized, sorted by leading
/// monomial (descending).
#[derive(Debug, Clone)]
pub struct GroebnerBasis<C: Coeffs> {
    ring: PolyRing<C>,
    elements: Vec<Poly<C::Elem>>,
    lm_set: Vec<Monomial>,
}

impl<C: Coeffs> PartialEq for GroebnerBasis<C>
where
    C: PartialEq,
{
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.elements == other.elements
    }
}

impl<C: Coeffs> GroebnerBasis<C> {
    /// Wraps elements that are already a reduced basis; they get sorted.
    pub fn from_reduced(ring: PolyRing<C>, mut elements: Vec<Poly<C::Elem>>) -> Self {
        elements.retain(|e| !e.is_zero());
        elements.sort_by(|a, b| ring.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
        let lm_set = elements.iter().map(|e| e.leading_monomial().unwrap().clone()).collect();
        GroebnerBasis { ring, elements, lm_set }
    }

    pub fn ring(&self) -> &PolyRing<C> {
        &self.ring
    }

    pub fn elements(&self) -> &[Poly<C::Elem>] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Poly<C::Elem>> {
        self.elements
    }

    /// Leading monomials, in the same order as the elements.
    pub fn lm_set(&self) -> &[Monomial] {
        &self.lm_set
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the basis generates the whole ring.
    pub fn is_unit(&self) -> bool {
        self.lm_set.iter().any(|m| m.is_one())
    }

    pub fn to_ideal(&self) -> Ideal<C> {
        Ideal::new(self.ring.clone(), self.elements.clone())
    }
}

// ---- reduction ------------------------------------------------------------

/// Support bitmask: bit `2i` for `e_i ≥ 1`, bit `2i+1` for `e_i ≥ 2`.
/// `a | b` implies `mask(a) ⊆ mask(b)`.
#[inline]
pub(crate) fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exponents().iter().enumerate().take(32) {
        if e >= 1 {
            mask |= 1 << (2 * i);
        }
        if e >= 2 {
            mask |= 1 << (2 * i + 1);
        }
    }
    mask
}

struct Reducers<'a, E> {
    polys: Vec<&'a Poly<E>>,
    masks: Vec<u64>,
}

impl<'a, E> Reducers<'a, E> {
    fn new(polys: impl IntoIterator<Item = &'a Poly<E>>) -> Self {
        let polys: Vec<&Poly<E>> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        let masks = polys.iter().map(|p| divmask(p.leading_monomial().unwrap())).collect();
        Reducers { polys, masks }
    }

    #[inline]
    fn find(&self, m: &Monomial) -> Option<&'a Poly<E>> {
        let mask = divmask(m);
        self.polys
            .iter()
            .zip(&self.masks)
            .find(|(p, &pm)| pm & !mask == 0 && p.leading_monomial().unwrap().divides(m))
            .map(|(p, _)| *p)
    }
}

/// Content-stripping period for fraction-free reduction.
const CONTENT_EVERY: usize = 12;

fn reduce_with<C: Coeffs>(ring: &PolyRing<C>, f: &Poly<C::Elem>, red: &Reducers<'_, C::Elem>, full: bool) -> Poly<C::Elem> {
    let k = ring.coeffs();
    let mut work: Vec<(Monomial, C::Elem)> = f.terms().to_vec();
    let mut buf: Vec<(Monomial, C::Elem)> = Vec::new();
    let mut rem: Vec<(Monomial, C::Elem)> = Vec::new();
    let mut pos = 0;
    let mut steps = 0usize;
    while pos < work.len() {
        let (m, c) = &work[pos];
        let Some(g) = red.find(m) else {
            if !full {
                break;
            }
            rem.push(work[pos].clone());
            pos += 1;
            continue;
        };
        let g_lm = g.leading_monomial().unwrap();
        let q = g_lm.quotient_of(m).unwrap();
        let (s, t) = k.cancel(c, g.leading_coeff().unwrap());
        if let Some(s) = &s {
            for r in rem.iter_mut() {
                r.1 = k.mul(&r.1, s);
            }
        }
        buf.clear();
        ring.combine_into(&mut buf, s.as_ref(), &work[pos..], &t, Some(&q), g.terms(), true);
        std::mem::swap(&mut work, &mut buf);
        pos = 0;
        steps += 1;
        if steps.is_multiple_of(CONTENT_EVERY) {
            strip_content(ring, &mut rem, &mut work);
        }
    }
    rem.extend(work.drain(pos..));
    let mut out = Poly::from_sorted(rem);
    ring.normalize_in_place(&mut out);
    out
}

fn strip_content<C: Coeffs>(ring: &PolyRing<C>, a: &mut [(Monomial, C::Elem)], b: &mut [(Monomial, C::Elem)]) {
    if !C::FRACTION_FREE {
        return;
    }
    let k = ring.coeffs();
    let mut all: Vec<&C::Elem> = Vec::with_capacity(a.len() + b.len());
    all.extend(b.iter().map(|t| &t.1));
    all.extend(a.iter().map(|t| &t.1));
    if all.is_empty() {
        return;
    }
    if let Some(d) = k.normalizer(&all) {
        for t in a.iter_mut().chain(b.iter_mut()) {
            t.1 = k.divide_exact(&t.1, &d);
        }
    }
}

/// Full normal form of `f` with respect to `g` (reducers tried in the given
/// order, leading reducible term first). Over a field the result is exact;
/// over ℤ it is the normal form up to a nonzero integer factor.
pub fn normal_form<C: Coeffs>(ring: &PolyRing<C>, f: &Poly<C::Elem>, g: &[Poly<C::Elem>]) -> Poly<C::Elem> {
    let red = Reducers::new(g);
    let mut out = reduce_exact(ring, f, &red);
    if !C::FRACTION_FREE {
        return out;
    }
    ring.normalize_in_place(&mut out);
    out
}

/// Like `reduce_with(full)` but without the final normalization, so field
/// normal forms keep their exact scale.
fn reduce_exact<C: Coeffs>(ring: &PolyRing<C>, f: &Poly<C::Elem>, red: &Reducers<'_, C::Elem>) -> Poly<C::Elem> {
    let k = ring.coeffs();
    let mut work: Vec<(Monomial, C::Elem)> = f.terms().to_vec();
    let mut buf = Vec::new();
    let mut rem: Vec<(Monomial, C::Elem)> = Vec::new();
    let mut pos = 0;
    let mut steps = 0usize;
    while pos < work.len() {
        let (m, c) = &work[pos];
        let Some(g) = red.find(m) else {
            rem.push(work[pos].clone());
            pos += 1;
            continue;
        };
        let q = g.leading_monomial().unwrap().quotient_of(m).unwrap();
        let (s, t) = k.cancel(c, g.leading_coeff().unwrap());
        if let Some(s) = &s {
            for r in rem.iter_mut() {
                r.1 = k.mul(&r.1, s);
            }
        }
        buf.clear();
        ring.combine_into(&mut buf, s.as_ref(), &work[pos..], &t, Some(&q), g.terms(), true);
        std::mem::swap(&mut work, &mut buf);
        pos = 0;
        steps += 1;
        if steps.is_multiple_of(CONTENT_EVERY) {
            strip_content(ring, &mut rem, &mut work);
        }
    }
    Poly::from_sorted(rem)
}

/// S-polynomial `s·(L/LT f)·f − t·(L/LT g)·g` with `L = lcm(LM f, LM g)`.
pub fn s_poly<C: Coeffs>(ring: &PolyRing<C>, f: &Poly<C::Elem>, g: &Poly<C::Elem>) -> Poly<C::Elem> {
    let (fm, gm) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = fm.lcm(gm);
    let uf = fm.quotient_of(&l).unwrap();
    let ug = gm.quotient_of(&l).unwrap();
    let (s, t) = ring.coeffs().cancel(f.leading_coeff().unwrap(), g.leading_coeff().unwrap());
    let left = match s {
        Some(s) => ring.mul_term(f, &uf, &s),
        None => ring.mul_term(f, &uf, &ring.coeffs().one()),
    };
    ring.combine(None, &left, &t, Some(&ug), g, true)
}

// ---- pair management --------------------------------------------------------

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer–Möller bookkeeping shared by Buchberger's algorithm and the
/// Gröbner basis test.
struct PairSet {
    lms: Vec<Monomial>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl PairSet {
    fn new() -> Self {
        PairSet { lms: Vec::new(), active: Vec::new(), pairs: Vec::new() }
    }

    /// Registers element `h` (its index must equal the number of elements
    /// registered so far) and updates pairs and active set.
    fn insert(&mut self, lm: Monomial) -> usize {
        let h = self.lms.len();
        self.lms.push(lm);
        let lh = &self.lms[h];

        // candidate pairs (h, g), g active
        let mut cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let lg = &self.lms[g];
                (g, lh.lcm(lg), lh.is_coprime(lg))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g, l, coprime)) = (!cands.is_empty()).then(|| cands.remove(0)) {
            let dominated = !coprime
                && (cands.iter().any(|(_, l2, _)| l2.divides(&l))
                    || kept.iter().any(|(_, l2, _)| l2.divides(&l)));
            if !dominated {
                kept.push((g, l, coprime));
            }
        }

        // chain criterion on old pairs
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && lh.lcm(&lms[p.i]) != p.lcm && lh.lcm(&lms[p.j]) != p.lcm)
        });

        for (g, l, coprime) in kept {
            if !coprime {
                self.pairs.push(Pair { i: g, j: h, lcm: l });
            }
        }

        self.active.retain(|&g| !lh.divides(&lms[g]));
        self.active.push(h);
        h
    }

    /// Removes and returns the next pair under the normal strategy: smallest
    /// lcm in the monomial ordering, then smallest indices.
    fn pop_min<C: Coeffs>(&mut self, ring: &PolyRing<C>) -> Option<Pair> {
        let best = (0..self.pairs.len()).min_by(|&a, &b| pair_cmp(ring, &self.pairs[a], &self.pairs[b]))?;
        Some(self.pairs.swap_remove(best))
    }
}

fn pair_cmp<C: Coeffs>(ring: &PolyRing<C>, a: &Pair, b: &Pair) -> Ordering {
    ring.compare(&a.lcm, &b.lcm)
        .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
}

// ---- Buchberger ---------------------------------------------------------------

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Over a field the elements are monic; over ℤ they are primitive with
/// positive leading coefficients (a ℚ-basis with integer coefficients).
pub fn buchberger<C: Coeffs>(ring: &PolyRing<C>, gens: &[Poly<C::Elem>]) -> GroebnerBasis<C> {
    let mut basis: Vec<Poly<C::Elem>> = Vec::new();
    let mut pairs = PairSet::new();

    let mut input: Vec<Poly<C::Elem>> = gens.iter().filter(|g| !g.is_zero()).map(|g| ring.normalize(g)).collect();
    // smaller leading monomials first keeps the initial basis small
    input.sort_by(|a, b| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let add = |basis: &mut Vec<Poly<C::Elem>>, pairs: &mut PairSet, h: Poly<C::Elem>| {
        pairs.insert(h.leading_monomial().unwrap().clone());
        basis.push(h);
    };

    for g in input {
        let h = {
            let red = Reducers::new(pairs.active.iter().map(|&i| &basis[i]));
            reduce_with(ring, &g, &red, false)
        };
        if h.is_zero() {
            continue;
        }
        if h.leading_monomial().unwrap().is_one() {
            return unit_basis(ring);
        }
        add(&mut basis, &mut pairs, h);
    }

    while let Some(pair) = pairs.pop_min(ring) {
        let s = s_poly(ring, &basis[pair.i], &basis[pair.j]);
        let h = {
            let red = Reducers::new(pairs.active.iter().map(|&i| &basis[i]));
            reduce_with(ring, &s, &red, true)
        };
        if h.is_zero() {
            continue;
        }
        if h.leading_monomial().unwrap().is_one() {
            return unit_basis(ring);
        }
        add(&mut basis, &mut pairs, h);
    }

    let minimal: Vec<Poly<C::Elem>> = pairs.active.iter().map(|&i| basis[i].clone()).collect();
    interreduce(ring, minimal)
}

fn unit_basis<C: Coeffs>(ring: &PolyRing<C>) -> GroebnerBasis<C> {
    GroebnerBasis::from_reduced(ring.clone(), vec![ring.one()])
}

/// Tail-reduces a minimal Gröbner basis into the reduced one.
fn interreduce<C: Coeffs>(ring: &PolyRing<C>, mut minimal: Vec<Poly<C::Elem>>) -> GroebnerBasis<C> {
    minimal.sort_by(|a, b| ring.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    // reduce from the smallest leading monomial upwards so reducers are final
    for idx in (0..minimal.len()).rev() {
        let reduced = {
            let others = minimal.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, p)| p);
            let red = Reducers::new(others);
            reduce_with(ring, &minimal[idx], &red, true)
        };
        minimal[idx] = reduced;
    }
    GroebnerBasis::from_reduced(ring.clone(), minimal)
}

/// Reduced basis over ℚ, computed fraction-free over ℤ and returned monic.
pub fn buchberger_q(ideal: &Ideal<Qq>) -> GroebnerBasis<Qq> {
    let zring = ideal.ring().with_coeffs(Zz);
    let zgens: Vec<_> = ideal.generators().iter().map(to_primitive_integer).collect();
    let zgb = buchberger(&zring, &zgens);
    integral_to_monic(ideal.ring(), &zgb)
}

/// Monic rational form of an integral basis.
pub fn integral_to_monic(ring: &PolyRing<Qq>, gb: &GroebnerBasis<Zz>) -> GroebnerBasis<Qq> {
    let elements = gb.elements().iter().map(|g| ring.make_monic(&integer_to_rational(g))).collect();
    GroebnerBasis::from_reduced(ring.clone(), elements)
}

/// Primitive integer form of a rational basis (same leading monomials).
pub fn to_integral(gb: &GroebnerBasis<Qq>) -> GroebnerBasis<Zz> {
    let ring = gb.ring().with_coeffs(Zz);
    let elements = gb.elements().iter().map(to_primitive_integer).collect();
    GroebnerBasis::from_reduced(ring, elements)
}

// ---- predicates -----------------------------------------------------------------

/// `f ∈ ⟨G⟩` for a Gröbner basis `G`.
pub fn ideal_contains<C: Coeffs>(gb: &GroebnerBasis<C>, f: &Poly<C::Elem>) -> bool {
    normal_form(gb.ring(), f, gb.elements()).is_zero()
}

/// `f ∈ ⟨G⟩` over ℚ, decided by fraction-free reduction against the
/// integral form of `G`.
pub fn ideal_contains_q(gb: &GroebnerBasis<Zz>, f: &Poly<Rational>) -> bool {
    normal_form(gb.ring(), &to_primitive_integer(f), gb.elements()).is_zero()
}

/// Pairs of `g` not discarded by the product and chain criteria.
fn critical_pairs<C: Coeffs>(ring: &PolyRing<C>, g: &[Poly<C::Elem>]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..g.len()).filter(|&i| !g[i].is_zero()).collect();
    order.sort_by(|&a, &b| ring.compare(g[a].leading_monomial().unwrap(), g[b].leading_monomial().unwrap()));
    let mut set = PairSet::new();
    for &i in &order {
        set.insert(g[i].leading_monomial().unwrap().clone());
    }
    let mut out: Vec<(usize, usize)> = Vec::new();
    while let Some(p) = set.pop_min(ring) {
        out.push((order[p.i], order[p.j]));
    }
    out
}

/// True iff every critical pair of `g` reduces to zero, i.e. `g` is a
/// Gröbner basis of the ideal it generates. The pair reductions run on up
/// to `cores` workers.
pub fn is_self_gb<C: Coeffs>(ring: &PolyRing<C>, g: &[Poly<C::Elem>], cores: usize) -> Result<bool> {
    let pairs = critical_pairs(ring, g);
    let red_polys: Vec<&Poly<C::Elem>> = g.iter().collect();
    engine::parallel_all(pairs.len(), cores, |k| {
        let (i, j) = pairs[k];
        let s = s_poly(ring, &g[i], &g[j]);
        let red = Reducers::new(red_polys.iter().copied());
        reduce_with(ring, &s, &red, false).is_zero()
    })
}

/// [`is_self_gb`] for rational polynomials via their integral forms.
pub fn is_self_gb_q(ring: &PolyRing<Qq>, g: &[Poly<Rational>], cores: usize) -> Result<bool> {
    let zring = ring.with_coeffs(Zz);
    let zg: Vec<_> = g.iter().map(to_primitive_integer).collect();
    is_self_gb(&zring, &zg, cores)
}

/// Number of critical pairs the Gröbner basis test has to reduce.
pub fn critical_pair_count<C: Coeffs>(ring: &PolyRing<C>, g: &[Poly<C::Elem>]) -> usize {
    critical_pairs(ring, g).len()
}

/// Gröbner basis test over all pairs, without any criteria.
pub fn is_self_gb_exhaustive<C: Coeffs>(ring: &PolyRing<C>, g: &[Poly<C::Elem>]) -> bool {
    let red = Reducers::new(g);
    (0..g.len()).all(|i| {
        (i + 1..g.len()).all(|j| reduce_with(ring, &s_poly(ring, &g[i], &g[j]), &red, false).is_zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, reduce_mod_p, Fp, MonomialOrder};
    use proptest::prelude::*;

    fn ring(vars: &[&str], order: MonomialOrder) -> PolyRing<Qq> {
        PolyRing::new(vars, order, Qq)
    }

    fn polys(r: &PolyRing<Qq>, src: &[&str]) -> Vec<Poly<Rational>> {
        src.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    fn gb(r: &PolyRing<Qq>, src: &[&str]) -> GroebnerBasis<Qq> {
        buchberger_q(&Ideal::new(r.clone(), polys(r, src)))
    }

    #[test]
    fn s_poly_examples() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let p = |s| parse_poly(&r, s).unwrap();
        assert!(s_poly(&r, &p("x^2"), &p("x*y")).is_zero());
        assert_eq!(s_poly(&r, &p("x^2-y"), &p("x*y-1")), p("-y^2+x"));
        assert!(s_poly(&r, &p("x^2-y"), &p("x^2-y")).is_zero());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let p = |s| parse_poly(&r, s).unwrap();
        assert_eq!(normal_form(&r, &p("x^2+y"), &[p("x")]), p("y"));
        assert_eq!(normal_form(&r, &p("x^2*y"), &polys(&r, &["x^2-y", "y^2-1"])), p("1"));
        let g = gb(&r, &["x^2-y", "y^2-1"]);
        for e in g.elements() {
            assert!(normal_form(&r, e, g.elements()).is_zero());
        }
    }

    #[test]
    fn buchberger_examples() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        assert_eq!(gb(&r, &["x", "y"]).elements(), polys(&r, &["x", "y"]).as_slice());

        let lex = ring(&["x", "y", "z"], MonomialOrder::Lex);
        let twisted = gb(&lex, &["y-x^2", "z-x^3"]);
        let mut want = polys(&lex, &["x^2-y", "x*y-z", "x*z-y^2", "y^3-z^2"]);
        want.sort_by(|a, b| lex.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
        assert_eq!(twisted.elements(), want.as_slice());

        let one = ring(&["x"], MonomialOrder::DegRevLex);
        assert_eq!(gb(&one, &["x^2-1", "x-1"]).elements(), polys(&one, &["x-1"]).as_slice());
        assert!(gb(&one, &["x^2-1", "x-2"]).is_unit());
    }

    #[test]
    fn twisted_cubic_certified_by_exhaustive_check() {
        let lex = ring(&["x", "y", "z"], MonomialOrder::Lex);
        let g = gb(&lex, &["y-x^2", "z-x^3"]);
        assert!(is_self_gb_exhaustive(g.ring(), g.elements()));
        for f in polys(&lex, &["y-x^2", "z-x^3"]) {
            assert!(ideal_contains(&g, &f));
        }
    }

    #[test]
    fn membership_examples() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let p = |s| parse_poly(&r, s).unwrap();
        let g = gb(&r, &["x-1"]);
        assert!(ideal_contains(&g, &p("x^2-1")));
        assert!(ideal_contains_q(&to_integral(&g), &p("x^2-1")));
        let m = gb(&r, &["x", "y"]);
        assert!(!ideal_contains(&m, &p("1")));
        assert!(ideal_contains(&m, &Poly::zero()));
    }

    #[test]
    fn self_gb_examples() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let g1 = polys(&r, &["x^2-y", "y^2-1"]);
        assert!(is_self_gb_q(&r, &g1, 1).unwrap());
        assert_eq!(critical_pair_count(&r, &g1), 0);
        assert!(is_self_gb_exhaustive(&r, &g1));

        let g2 = polys(&r, &["x^2-y", "x*y-1"]);
        assert!(!is_self_gb_q(&r, &g2, 2).unwrap());
        let full = gb(&r, &["x^2-y", "x*y-1"]);
        let lm2: Vec<_> = g2.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        assert!(full.lm_set().iter().any(|m| !lm2.iter().any(|l| l.divides(m))));

        assert!(is_self_gb_q(&r, &polys(&r, &["x"]), 1).unwrap());
    }

    #[test]
    fn generating_set_does_not_matter() {
        let r = ring(&["x"], MonomialOrder::DegRevLex);
        assert_eq!(gb(&r, &["x^2-1", "x-1"]), gb(&r, &["x-1"]));
    }

    #[test]
    fn modular_basis_is_monic_and_matches_rational_image() {
        let r = ring(&["x", "y", "z"], MonomialOrder::DegRevLex);
        let gens = polys(&r, &["x^2+y*z-2", "y^2-x*z+3", "z^2+x*y-1/2"]);
        let q = gb(&r, &["x^2+y*z-2", "y^2-x*z+3", "z^2+x*y-1/2"]);
        let p = 1_000_003;
        let rp = r.with_coeffs(Fp::new(p));
        let gp: Vec<_> = gens.iter().map(|g| reduce_mod_p(g, p).unwrap()).collect();
        let bp = buchberger(&rp, &gp);
        assert!(bp.elements().iter().all(|e| e.leading_coeff() == Some(&1)));
        let image: Vec<_> = q.elements().iter().map(|g| reduce_mod_p(g, p).unwrap()).collect();
        assert_eq!(bp.elements(), image.as_slice());
    }

    fn random_ideal() -> impl Strategy<Value = Vec<Vec<((u32, u32), i64)>>> {
        proptest::collection::vec(proptest::collection::vec(((0u32..3, 0u32..3), -9i64..10), 1..4), 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn buchberger_invariants(spec in random_ideal(), lex in any::<bool>()) {
            let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
            let r = ring(&["x", "y"], order);
            let gens: Vec<_> = spec.iter().map(|ts| r.from_terms(ts.iter().map(|&((a, b), c)| {
                (Monomial::from_exponents(&[a, b]), Qq.from_i64(c))
            }).collect())).collect();
            let g = buchberger_q(&Ideal::new(r.clone(), gens.clone()));
            for f in &gens {
                prop_assert!(ideal_contains(&g, f));
            }
            prop_assert!(is_self_gb_exhaustive(&r, g.elements()));
            prop_assert!(is_self_gb_q(&r, g.elements(), 1).unwrap());
            let again = buchberger_q(&g.to_ideal());
            prop_assert_eq!(&again, &g);
            // rational field path agrees with the fraction-free one
            let direct = buchberger(&r, &gens);
            prop_assert_eq!(direct.elements(), g.elements());
        }

        #[test]
        fn normal_form_is_linear(spec in random_ideal(), a in random_ideal()) {
            let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
            let mk = |ts: &Vec<((u32, u32), i64)>| r.from_terms(ts.iter().map(|&((a, b), c)| {
                (Monomial::from_exponents(&[a, b]), Qq.from_i64(c))
            }).collect());
            let gens: Vec<_> = spec.iter().map(mk).collect();
            let g = buchberger_q(&Ideal::new(r.clone(), gens));
            let f = mk(&a[0]);
            let h = mk(a.last().unwrap());
            let lhs = normal_form(&r, &r.add(&f, &h), g.elements());
            let nf = normal_form(&r, &f, g.elements());
            let nh = normal_form(&r, &h, g.elements());
            prop_assert_eq!(lhs, normal_form(&r, &r.add(&nf, &nh), g.elements()));
        }
    }
}
