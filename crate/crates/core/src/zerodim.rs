//! Zero-dimensional ideals: quotient bases, minimal polynomials of linear
//! forms via Krylov sequences, eliminants and the modular radical.

use std::collections::{HashMap, HashSet};

use crate::engine::{self, Discard, TaskBatch};
use crate::error::{Error, Result};
use crate::groebner::{ideal_contains_q, normal_form, to_integral, GroebnerBasis};
use crate::modstd::{mod_std_traced, modular_basis, ModStdConfig, ModStdOutcome, RoundOutcome, RoundTrace};
use crate::numth::{CrtBasis, PrimePool, Rational};
use crate::poly::univariate::{self, QUni};
use crate::poly::{
    coefficient_integers, univariate_to_poly, Coeffs, Field, Fp, Ideal, LinearForm, Monomial, MonomialOrder, Poly,
    Qq, UniPoly,
};

/// Monomials outside the leading monomial ideal, ascending in the ring order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl QuotientBasis {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a normal form.
    pub fn coordinates<C: Coeffs>(&self, k: &C, nf: &Poly<C::Elem>) -> Vec<C::Elem> {
        let mut v = vec![k.zero(); self.dimension()];
        for (m, c) in nf.terms() {
            let i = self.position(m).expect("term outside the quotient basis: not a normal form");
            v[i] = c.clone();
        }
        v
    }
}

/// Staircase of a reduced basis. The unit ideal has the empty staircase;
/// an infinite staircase is reported as [`Error::PositiveDimensional`].
pub fn quotient_basis<C: Coeffs>(gb: &GroebnerBasis<C>) -> Result<QuotientBasis> {
    let ring = gb.ring();
    let n = ring.nvars();
    let lms = gb.lm_set();
    if gb.is_unit() {
        return Ok(QuotientBasis { monomials: Vec::new(), index: HashMap::new() });
    }
    let bounded: HashSet<usize> = lms.iter().filter_map(|m| m.pure_power_var()).collect();
    if bounded.len() < n {
        return Err(Error::PositiveDimensional);
    }
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut frontier = vec![Monomial::one(n)];
    seen.insert(Monomial::one(n));
    while let Some(m) = frontier.pop() {
        for i in 0..n {
            let next = m.mul(&Monomial::var(n, i, 1));
            if !seen.contains(&next) && !lms.iter().any(|l| l.divides(&next)) {
                seen.insert(next.clone());
                frontier.push(next);
            }
        }
    }
    let mut monomials: Vec<Monomial> = seen.into_iter().collect();
    monomials.sort_by(|a, b| ring.compare(a, b));
    let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    Ok(QuotientBasis { monomials, index })
}

/// Matrix of multiplication by `f` on the quotient, stored by columns:
/// column `j` holds the coordinates of `NF(f · m_j)`.
pub fn multiplication_matrix<C: Field>(gb: &GroebnerBasis<C>, qb: &QuotientBasis, f: &Poly<C::Elem>) -> Vec<Vec<C::Elem>> {
    let ring = gb.ring();
    let k = ring.coeffs();
    let reduced = normal_form(ring, f, gb.elements());
    qb.monomials()
        .iter()
        .map(|m| {
            let prod = ring.mul_term(&reduced, m, &k.one());
            qb.coordinates(k, &normal_form(ring, &prod, gb.elements()))
        })
        .collect()
}

fn mat_vec<C: Coeffs>(k: &C, cols: &[Vec<C::Elem>], v: &[C::Elem]) -> Vec<C::Elem> {
    let mut out = vec![k.zero(); v.len()];
    for (col, vj) in cols.iter().zip(v) {
        if k.is_zero(vj) {
            continue;
        }
        for (o, a) in out.iter_mut().zip(col) {
            if !k.is_zero(a) {
                *o = k.add(o, &k.mul(a, vj));
            }
        }
    }
    out
}

/// Monic minimal polynomial of multiplication by `f` on the quotient, from
/// the first linear dependency among `1, f, f², …` (incremental Gaussian
/// elimination).
pub fn minimal_polynomial<C: Field>(gb: &GroebnerBasis<C>, f: &Poly<C::Elem>) -> Result<UniPoly<C::Elem>> {
    let qb = quotient_basis(gb)?;
    let k = gb.ring().coeffs();
    if qb.dimension() == 0 {
        return Ok(UniPoly::constant(k, k.one()));
    }
    let mat = multiplication_matrix(gb, &qb, f);
    Ok(krylov_min_poly(k, &mat, &qb))
}

fn krylov_min_poly<C: Field>(k: &C, mat: &[Vec<C::Elem>], qb: &QuotientBasis) -> UniPoly<C::Elem> {
    let d = qb.dimension();
    let mut v = vec![k.zero(); d];
    v[qb.position(&Monomial::one(qb.monomials()[0].nvars())).unwrap()] = k.one();
    // echelon rows: (pivot, vector, combination of powers giving the vector)
    let mut rows: Vec<(usize, Vec<C::Elem>, Vec<C::Elem>)> = Vec::new();
    for step in 0..=d {
        let mut w = v.clone();
        let mut combo = vec![k.zero(); step + 1];
        combo[step] = k.one();
        for (pivot, rv, rc) in &rows {
            let c = w[*pivot].clone();
            if k.is_zero(&c) {
                continue;
            }
            for (wi, ri) in w.iter_mut().zip(rv) {
                *wi = k.sub(wi, &k.mul(&c, ri));
            }
            for (ci, ri) in combo.iter_mut().zip(rc) {
                *ci = k.sub(ci, &k.mul(&c, ri));
            }
        }
        match w.iter().position(|x| !k.is_zero(x)) {
            None => return UniPoly::new(k, combo),
            Some(pivot) => {
                let inv = k.inv(&w[pivot]);
                let w = w.iter().map(|x| k.mul(x, &inv)).collect();
                let combo = combo.iter().map(|x| k.mul(x, &inv)).collect();
                rows.push((pivot, w, combo));
            }
        }
        v = mat_vec(k, mat, &v);
    }
    unreachable!("more than d powers are always dependent")
}

/// Minimal polynomial of a linear form modulo one prime.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularMinPolyRecord {
    pub prime: u64,
    pub poly: UniPoly<u64>,
    pub degree: usize,
}

/// Eliminants `f_1 … f_n` modulo one prime.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariateVectorRecord {
    pub prime: u64,
    pub polys: Vec<UniPoly<u64>>,
    pub degrees: Vec<usize>,
}

/// Records compared by their degree data when filtering unlucky primes.
pub trait DegreeData {
    fn prime(&self) -> u64;
    fn degree_key(&self) -> Vec<usize>;
    fn polys(&self) -> Vec<&UniPoly<u64>>;
}

impl DegreeData for ModularMinPolyRecord {
    fn prime(&self) -> u64 {
        self.prime
    }
    fn degree_key(&self) -> Vec<usize> {
        vec![self.degree]
    }
    fn polys(&self) -> Vec<&UniPoly<u64>> {
        vec![&self.poly]
    }
}

impl DegreeData for UnivariateVectorRecord {
    fn prime(&self) -> u64 {
        self.prime
    }
    fn degree_key(&self) -> Vec<usize> {
        self.degrees.clone()
    }
    fn polys(&self) -> Vec<&UniPoly<u64>> {
        self.polys.iter().collect()
    }
}

/// Minimal polynomial of `r` acting on `F_p[X]/I_p`.
pub fn min_poly_of_form(gb_p: &GroebnerBasis<Fp>, r: &LinearForm) -> Result<ModularMinPolyRecord> {
    let poly = minimal_polynomial(gb_p, &r.to_poly(gb_p.ring()))?;
    let degree = poly.degree().unwrap_or(0);
    Ok(ModularMinPolyRecord { prime: gb_p.ring().coeffs().modulus(), poly, degree })
}

/// Monic generator of `I_p ∩ F_p[x_i]`.
pub fn eliminant_mod_p(gb_p: &GroebnerBasis<Fp>, i: usize) -> Result<UniPoly<u64>> {
    minimal_polynomial(gb_p, &gb_p.ring().var(i))
}

/// All eliminants of `I_p`.
pub fn eliminants_mod_p(gb_p: &GroebnerBasis<Fp>) -> Result<UnivariateVectorRecord> {
    let polys = (0..gb_p.ring().nvars()).map(|i| eliminant_mod_p(gb_p, i)).collect::<Result<Vec<_>>>()?;
    let degrees = polys.iter().map(|f| f.degree().unwrap_or(0)).collect();
    Ok(UnivariateVectorRecord { prime: gb_p.ring().coeffs().modulus(), polys, degrees })
}

/// Keeps the largest class of records with equal degree data; ties go to the
/// class containing the smallest prime.
pub fn delete_unlucky_primes_rad<R: DegreeData + Clone>(records: &[R]) -> Vec<R> {
    let mut classes: Vec<(Vec<usize>, Vec<&R>)> = Vec::new();
    for rec in records {
        let key = rec.degree_key();
        match classes.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(rec),
            None => classes.push((key, vec![rec])),
        }
    }
    let min_prime = |c: &Vec<&R>| c.iter().map(|r| r.prime()).min().unwrap_or(u64::MAX);
    let best = classes
        .into_iter()
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| min_prime(&b.1).cmp(&min_prime(&a.1))));
    let mut kept: Vec<R> = best.map(|(_, m)| m.into_iter().cloned().collect()).unwrap_or_default();
    kept.sort_by_key(|r| r.prime());
    kept
}

/// Minimal polynomial records of full degree `d`.
pub fn keep_full_degree(records: &[ModularMinPolyRecord], d: usize) -> Vec<ModularMinPolyRecord> {
    let mut kept: Vec<_> = records.iter().filter(|r| r.degree == d).cloned().collect();
    kept.sort_by_key(|r| r.prime);
    kept
}

/// Coefficientwise Chinese remaindering and Farey reconstruction of aligned
/// monic univariate polynomials. `Ok(None)` means the primes do not suffice.
pub fn lift_univariate<R: DegreeData>(records: &[R]) -> Result<Option<Vec<QUni>>> {
    let Some(first) = records.first() else {
        return Err(Error::Invalid("nothing to lift".into()));
    };
    let key = first.degree_key();
    if records.iter().any(|r| r.degree_key() != key) {
        return Err(Error::MismatchedRecords);
    }
    let primes: Vec<u64> = records.iter().map(|r| r.prime()).collect();
    let crt = CrtBasis::new(&primes)?;
    let per_record: Vec<Vec<&UniPoly<u64>>> = records.iter().map(|r| r.polys()).collect();
    let mut out = Vec::with_capacity(key.len());
    for (idx, &deg) in key.iter().enumerate() {
        let mut coeffs = Vec::with_capacity(deg + 1);
        for e in 0..=deg {
            let residues: Vec<u64> = per_record.iter().map(|ps| ps[idx].coeff(e).copied().unwrap_or(0)).collect();
            match crt.lift_rational(&residues) {
                Some(c) => coeffs.push(c),
                None => return Ok(None),
            }
        }
        out.push(UniPoly::new(&Qq, coeffs));
    }
    Ok(Some(out))
}

/// Number of primes tried by [`p_test_rad`] before giving up.
pub const RAD_TEST_ATTEMPTS: usize = 5;

/// Modular test that `r` separates the `d` points of `V(I)` counted with
/// multiplicity: picks a fresh prime with `dim F_p[X]/I_p = d` and checks that
/// the minimal polynomial of `r` has degree `d`.
pub fn p_test_rad(d: usize, r: &LinearForm, gb: &GroebnerBasis<Qq>, pool: &mut PrimePool) -> Result<bool> {
    let ideal = gb.to_ideal();
    for _ in 0..RAD_TEST_ATTEMPTS {
        let p = pool.fresh_prime();
        let Ok(gb_p) = modular_basis(&ideal, p) else {
            continue;
        };
        if quotient_basis(&gb_p).ok().map(|q| q.dimension()) != Some(d) {
            continue;
        }
        return Ok(min_poly_of_form(&gb_p, r)?.degree == d);
    }
    Err(Error::Invalid(format!("no prime among {RAD_TEST_ATTEMPTS} attempts reproduced the quotient dimension {d}")))
}

/// Radical of a zero-dimensional ideal together with the run's bookkeeping.
#[derive(Debug, Clone)]
pub struct RadicalOutcome {
    /// Reduced basis of the radical with respect to `dp`.
    pub basis: GroebnerBasis<Qq>,
    /// Lifted eliminants `f_i ∈ I ∩ ℚ[x_i]`.
    pub eliminants: Vec<QUni>,
    pub rounds: Vec<RoundTrace>,
    /// Final basis computation of `I + ⟨g_1, …, g_n⟩`.
    pub final_gb: ModStdOutcome,
}

/// Radical of the zero-dimensional ideal generated by the reduced basis `gb`.
pub fn zero_radical(gb: &GroebnerBasis<Qq>, config: &ModStdConfig) -> Result<GroebnerBasis<Qq>> {
    zero_radical_traced(gb, config).map(|o| o.basis)
}

/// [`zero_radical`] with its per-round trace.
pub fn zero_radical_traced(gb: &GroebnerBasis<Qq>, config: &ModStdConfig) -> Result<RadicalOutcome> {
    let ring = gb.ring().clone();
    let n = ring.nvars();
    quotient_basis(gb)?;
    let dp_ring = ring.with_order(MonomialOrder::DegRevLex);
    if gb.is_unit() {
        let final_gb = mod_std_traced(&Ideal::new(dp_ring, vec![ring.one()]), config)?;
        return Ok(RadicalOutcome { basis: final_gb.basis.clone(), eliminants: Vec::new(), rounds: Vec::new(), final_gb });
    }
    let ideal = gb.to_ideal();
    let zgb = to_integral(gb);
    let mut pool = PrimePool::with_forbidden(config.seed, coefficient_integers(gb.elements()));
    let mut cache: Vec<UnivariateVectorRecord> = Vec::new();
    let mut rounds = Vec::new();

    for round in 1..=config.max_rounds {
        let fresh = pool.gen_primes(config.batch_size);
        let batch = TaskBatch::new(fresh.into_iter().map(|p| (p, ())).collect(), config.cores, config.seed);
        let done = engine::parallel_map(batch, |p, _| {
            let gb_p = modular_basis(&ideal, p).map_err(Discard::from)?;
            eliminants_mod_p(&gb_p).map_err(Discard::from)
        })?;
        cache.extend(done.results.into_iter().map(|(_, r)| r));
        cache.sort_by_key(|r| r.prime);
        let kept = delete_unlucky_primes_rad(&cache);
        let mut trace = RoundTrace { round, primes_total: cache.len(), primes_kept: kept.len(), outcome: RoundOutcome::NoLift };
        let Some(f) = (if kept.is_empty() { None } else { lift_univariate(&kept)? }) else {
            rounds.push(trace);
            continue;
        };

        let polys: Vec<Poly<Rational>> = f.iter().enumerate().map(|(i, fi)| univariate_to_poly(&ring, fi, i)).collect();
        if !engine::parallel_all(n, config.cores, |i| ideal_contains_q(&zgb, &polys[i]))? {
            trace.outcome = RoundOutcome::VerifyFailed;
            rounds.push(trace);
            continue;
        }
        // one extra prime guards against a unanimously unlucky batch
        let check = loop {
            let p = pool.fresh_prime();
            if let Ok(gb_p) = modular_basis(&ideal, p) {
                break eliminants_mod_p(&gb_p)?;
            }
        };
        if check.degrees != kept[0].degrees {
            trace.outcome = RoundOutcome::TestFailed;
            rounds.push(trace);
            continue;
        }
        trace.outcome = RoundOutcome::Accepted;
        rounds.push(trace);

        let mut gens: Vec<Poly<Rational>> = gb.elements().iter().map(|g| dp_ring.reorder(g)).collect();
        for (i, fi) in f.iter().enumerate() {
            let g = univariate::squarefree_part_rational(fi)?;
            gens.push(univariate_to_poly(&dp_ring, &g, i));
        }
        let final_gb = mod_std_traced(&Ideal::new(dp_ring, gens), config)?;
        return Ok(RadicalOutcome { basis: final_gb.basis.clone(), eliminants: f, rounds, final_gb });
    }
    Err(Error::MaxRounds {
        rounds: config.max_rounds,
        detail: format!("eliminants did not stabilize over {} primes", cache.len()),
        candidate: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, buchberger_q};
    use crate::poly::{parse_poly, substitute_linear, PolyRing};
    use proptest::prelude::*;

    fn qideal(vars: &[&str], gens: &[&str]) -> Ideal<Qq> {
        let ring = PolyRing::new(vars, MonomialOrder::DegRevLex, Qq);
        let gens = gens.iter().map(|g| parse_poly(&ring, g).unwrap()).collect();
        Ideal::new(ring, gens)
    }

    fn gb_q(vars: &[&str], gens: &[&str]) -> GroebnerBasis<Qq> {
        buchberger_q(&qideal(vars, gens))
    }

    fn gb_p(vars: &[&str], gens: &[&str], p: u64) -> GroebnerBasis<Fp> {
        modular_basis(&qideal(vars, gens), p).unwrap()
    }

    fn fp_uni(p: u64, c: &[i64]) -> UniPoly<u64> {
        let k = Fp::new(p);
        UniPoly::new(&k, c.iter().map(|&a| k.from_i64(a)).collect())
    }

    fn cfg() -> ModStdConfig {
        ModStdConfig { cores: 2, ..ModStdConfig::default() }
    }

    fn exps(qb: &QuotientBasis) -> Vec<Vec<u32>> {
        let mut v: Vec<Vec<u32>> = qb.monomials().iter().map(|m| m.exponents().to_vec()).collect();
        v.sort();
        v
    }

    #[test]
    fn staircases() {
        let qb = quotient_basis(&gb_q(&["x", "y"], &["x^2", "y^3"])).unwrap();
        assert_eq!(qb.dimension(), 6);
        assert_eq!(exps(&qb), vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(quotient_basis(&gb_q(&["x", "y"], &["x", "y"])).unwrap().dimension(), 1);
        assert_eq!(quotient_basis(&gb_q(&["x", "y"], &["x^2"])), Err(Error::PositiveDimensional));
        assert_eq!(quotient_basis(&gb_q(&["x", "y"], &["x", "x - 1"])).unwrap().dimension(), 0);
    }

    #[test]
    fn staircase_is_closed_under_division() {
        let qb = quotient_basis(&gb_q(&["x", "y", "z"], &["x^2 - y", "y^2 - z*x", "z^3 - 1"])).unwrap();
        for m in qb.monomials() {
            for i in 0..3 {
                if m.exponent(i) > 0 {
                    let mut e = m.exponents().to_vec();
                    e[i] -= 1;
                    assert!(qb.position(&Monomial::from_exponents(&e)).is_some());
                }
            }
        }
    }

    #[test]
    fn minimal_polynomial_examples() {
        let r = LinearForm::new(vec![]);
        let rec = min_poly_of_form(&gb_p(&["x"], &["x^2 - 2"], 7), &r).unwrap();
        assert_eq!(rec.poly, fp_uni(7, &[5, 0, 1]));
        let rec = min_poly_of_form(&gb_p(&["x"], &["x^2"], 7), &r).unwrap();
        assert_eq!(rec.poly, fp_uni(7, &[0, 0, 1]));

        // roots 2a + b for a, b ∈ {±1}
        let p = 101;
        let k = Fp::new(p);
        let rec = min_poly_of_form(&gb_p(&["x", "y"], &["x^2 - 1", "y^2 - 1"], p), &LinearForm::new(vec![2])).unwrap();
        let mut expected = UniPoly::constant(&k, 1);
        for root in [3i64, 1, -1, -3] {
            expected = univariate::mul(&k, &expected, &fp_uni(p, &[-root, 1]));
        }
        assert_eq!(rec.poly, expected);
        assert_eq!(rec.degree, 4);
    }

    #[test]
    fn eliminant_examples() {
        let g = gb_p(&["x", "y"], &["x^2 - 1", "y - x"], 101);
        assert_eq!(eliminant_mod_p(&g, 1).unwrap(), fp_uni(101, &[-1, 0, 1]));
        assert_eq!(eliminant_mod_p(&gb_p(&["x"], &["x"], 101), 0).unwrap(), fp_uni(101, &[0, 1]));
        let g = gb_p(&["x", "y"], &["x^2", "x*y", "y^2"], 101);
        let rec = eliminants_mod_p(&g).unwrap();
        assert_eq!(rec.polys, vec![fp_uni(101, &[0, 0, 1]), fp_uni(101, &[0, 0, 1])]);
        assert_eq!(rec.degrees, vec![2, 2]);
    }

    fn vec_rec(prime: u64, degrees: Vec<usize>) -> UnivariateVectorRecord {
        let polys = degrees.iter().map(|&d| { let mut c = vec![0; d + 1]; c[d] = 1; fp_uni(prime, &c) }).collect();
        UnivariateVectorRecord { prime, polys, degrees }
    }

    #[test]
    fn degree_filters() {
        let recs = vec![vec_rec(11, vec![2, 2]), vec_rec(13, vec![2, 1]), vec_rec(17, vec![2, 2])];
        let kept = delete_unlucky_primes_rad(&recs);
        assert_eq!(kept.iter().map(|r| r.prime).collect::<Vec<_>>(), vec![11, 17]);
        let same = vec![vec_rec(11, vec![1]), vec_rec(13, vec![1])];
        assert_eq!(delete_unlucky_primes_rad(&same).len(), 2);
        let tie = vec![vec_rec(19, vec![1]), vec_rec(13, vec![2])];
        assert_eq!(delete_unlucky_primes_rad(&tie)[0].prime, 13);

        let mp = |prime, degree| ModularMinPolyRecord { prime, poly: fp_uni(prime, &[0, 1]), degree };
        let kept = keep_full_degree(&[mp(11, 4), mp(13, 4), mp(17, 3)], 4);
        assert_eq!(kept.iter().map(|r| r.prime).collect::<Vec<_>>(), vec![11, 13]);
    }

    #[test]
    fn univariate_lifting() {
        let primes = [1_000_003u64, 1_000_033, 1_000_037];
        let recs: Vec<ModularMinPolyRecord> = primes
            .iter()
            .map(|&p| {
                let c = crate::numth::rational_mod_p(&Rational::new((-22).into(), 7.into()), p).unwrap();
                ModularMinPolyRecord { prime: p, poly: UniPoly::new(&Fp::new(p), vec![c, 1]), degree: 1 }
            })
            .collect();
        let lifted = lift_univariate(&recs).unwrap().unwrap();
        assert_eq!(lifted[0].coeffs()[0], Rational::new((-22).into(), 7.into()));

        let small = [ModularMinPolyRecord { prime: 31, poly: fp_uni(31, &[-22 * 9, 1]), degree: 1 }];
        // 2·22² > 31: no preimage of that size exists
        let r = lift_univariate(&small).unwrap();
        assert!(r.is_none() || r.unwrap()[0].coeffs()[0] != Rational::new((-22).into(), 7.into()));

        let same = [vec_rec(11, vec![1]), vec_rec(13, vec![2])];
        assert_eq!(lift_univariate(&same), Err(Error::MismatchedRecords));
    }

    #[test]
    fn radicality_test() {
        let mut pool = PrimePool::new(1);
        let g = gb_q(&["x", "y"], &["x^2 - 1", "y^2 - 1"]);
        assert!(p_test_rad(4, &LinearForm::new(vec![2]), &g, &mut pool).unwrap());
        let g = gb_q(&["x"], &["x - 1"]);
        assert!(p_test_rad(1, &LinearForm::new(vec![]), &g, &mut pool).unwrap());
        // ⟨x², y² − 1⟩ is curvilinear at both points: only r = y misses degree 4
        let g = gb_q(&["x", "y"], &["x^2", "y^2 - 1"]);
        assert!(!p_test_rad(4, &LinearForm::new(vec![0]), &g, &mut pool).unwrap());
        assert!(p_test_rad(4, &LinearForm::new(vec![2]), &g, &mut pool).unwrap());
        // the origin of ⟨x², xy, y³ − y²⟩ has a two-dimensional tangent space,
        // so no linear form reaches degree d = 4
        let g = gb_q(&["x", "y"], &["x^2", "x*y", "y^3 - y^2"]);
        assert_eq!(quotient_basis(&g).unwrap().dimension(), 4);
        for a in [-7, 0, 1, 5, 99] {
            assert!(!p_test_rad(4, &LinearForm::new(vec![a]), &g, &mut pool).unwrap());
        }
    }

    #[test]
    fn non_radical_min_poly_degree() {
        let p = 101;
        let k = Fp::new(p);
        let g = gb_p(&["x", "y"], &["x^2", "y^2 - 1"], p);
        let sq = |root: i64| univariate::pow(&k, &fp_uni(p, &[-root, 1]), 2);
        let expected = univariate::mul(&k, &sq(1), &sq(-1));
        assert_eq!(min_poly_of_form(&g, &LinearForm::new(vec![2])).unwrap().poly, expected);
        let rec = min_poly_of_form(&g, &LinearForm::new(vec![0])).unwrap();
        assert_eq!(rec.poly, fp_uni(p, &[-1, 0, 1]));
    }

    #[test]
    fn radical_examples() {
        let rad = zero_radical(&gb_q(&["x", "y"], &["x^3", "y^2"]), &cfg()).unwrap();
        assert_eq!(rad, gb_q(&["x", "y"], &["x", "y"]));
        let rad = zero_radical(&gb_q(&["x", "y"], &["x^2", "y^2 - 1"]), &cfg()).unwrap();
        assert_eq!(rad, gb_q(&["x", "y"], &["x", "y^2 - 1"]));
        let g = gb_q(&["x", "y"], &["x - 1", "y"]);
        assert_eq!(zero_radical(&g, &cfg()).unwrap(), g);
        assert_eq!(zero_radical(&gb_q(&["x", "y"], &["x^2"]), &cfg()), Err(Error::PositiveDimensional));
    }

    #[test]
    fn radical_of_lex_input_is_in_dp() {
        let ring = PolyRing::new(&["x", "y"], MonomialOrder::Lex, Qq);
        let id = Ideal::new(ring, vec![
            parse_poly(&PolyRing::new(&["x", "y"], MonomialOrder::Lex, Qq), "x^2 - 2*x + 1").unwrap(),
            parse_poly(&PolyRing::new(&["x", "y"], MonomialOrder::Lex, Qq), "y^3").unwrap(),
        ]);
        let rad = zero_radical(&buchberger_q(&id), &cfg()).unwrap();
        assert_eq!(rad, gb_q(&["x", "y"], &["x - 1", "y"]));
    }

    /// `x^a + (terms of degree < a)`, `y^b + (terms of degree < b)`: the leading
    /// monomials are coprime pure powers, so the ideal is zero-dimensional.
    fn zero_dim_pair() -> impl Strategy<Value = Vec<String>> {
        let tail = |deg: u32| {
            prop::collection::vec((-9i64..=9, 0u32..deg, 0u32..deg), 0..=3).prop_map(move |ts| {
                ts.into_iter()
                    .filter(|&(c, a, b)| c != 0 && a + b < deg)
                    .map(|(c, a, b)| format!(" {} {}*x^{a}*y^{b}", if c < 0 { '-' } else { '+' }, c.abs()))
                    .collect::<String>()
            })
        };
        (1u32..=3, 1u32..=3)
            .prop_flat_map(move |(a, b)| (Just(a), Just(b), tail(a), tail(b)))
            .prop_map(|(a, b, ta, tb)| vec![format!("x^{a}{ta}"), format!("y^{b}{tb}")])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn min_poly_annihilates_and_is_bounded(gens in zero_dim_pair(), a in -20i64..20) {
            let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
            let p = 1_000_003;
            let g = gb_p(&["x", "y"], &refs, p);
            let d = quotient_basis(&g).unwrap().dimension();
            let r = LinearForm::new(vec![a]);
            let rec = min_poly_of_form(&g, &r).unwrap();
            prop_assert!(rec.degree <= d);
            let fr = substitute_linear(g.ring(), &rec.poly, &r.to_poly(g.ring()));
            prop_assert!(normal_form(g.ring(), &fr, g.elements()).is_zero());
            let elim = eliminant_mod_p(&g, 0).unwrap();
            let ex = univariate_to_poly(g.ring(), &elim, 0);
            prop_assert!(normal_form(g.ring(), &ex, g.elements()).is_zero());
        }

        #[test]
        fn dimension_ignores_generating_set(gens in zero_dim_pair()) {
            let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
            let id = qideal(&["x", "y"], &refs);
            let ring = id.ring();
            let extra = ring.add(
                &ring.mul(&id.generators()[0], &ring.var(0)),
                &ring.mul(&id.generators()[1], &ring.var(1)),
            );
            let mut gens2 = vec![extra];
            gens2.extend(id.generators().iter().rev().cloned());
            let g1 = buchberger_q(&id);
            let g2 = buchberger_q(&Ideal::new(ring.clone(), gens2));
            prop_assert_eq!(quotient_basis(&g1).unwrap().dimension(), quotient_basis(&g2).unwrap().dimension());
        }

        #[test]
        fn radical_properties(gens in zero_dim_pair(), seed in 0u64..20) {
            let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
            let id = qideal(&["x", "y"], &refs);
            let g = buchberger_q(&id);
            let config = ModStdConfig { seed, cores: 2, ..ModStdConfig::default() };
            let out = zero_radical_traced(&g, &config).unwrap();
            let rad = &out.basis;
            for f in id.generators() {
                prop_assert!(crate::groebner::ideal_contains(rad, f));
            }
            for (i, fi) in out.eliminants.iter().enumerate() {
                prop_assert!(crate::groebner::ideal_contains(&g, &univariate_to_poly(g.ring(), fi, i)));
            }
            let again = zero_radical(rad, &config).unwrap();
            prop_assert_eq!(&again, rad);
            let again = zero_radical_traced(rad, &config).unwrap();
            for e in &again.eliminants {
                prop_assert_eq!(univariate::gcd_rational(e, &univariate::derivative(&Qq, e)).unwrap().degree(), Some(0));
            }
            let other = zero_radical(&g, &ModStdConfig { cores: 1, ..config.clone() }).unwrap();
            prop_assert_eq!(&other, rad);
        }
    }

    #[test]
    fn min_poly_over_rationals_matches_field_path() {
        let g = gb_q(&["x", "y"], &["x^2 - 2", "y^2 - 3"]);
        let mp = minimal_polynomial(&g, &LinearForm::new(vec![1]).to_poly(g.ring())).unwrap();
        // (x + y)^4 − 10(x + y)^2 + 1 for √2 + √3
        let q = |a: i64| Rational::from_integer(a.into());
        assert_eq!(mp, UniPoly::new(&Qq, vec![q(1), q(0), q(-10), q(0), q(1)]));
        let field_gb = buchberger(g.ring(), g.elements());
        assert_eq!(field_gb, g);
    }
}
