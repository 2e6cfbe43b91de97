//! Modular Gröbner bases over ℚ.
//!
//! The ideal is reduced modulo a growing set of primes, a reduced basis is
//! computed for every prime (in parallel), primes whose leading monomials
//! disagree with the majority are dropped, and the survivors are lifted by
//! Chinese remaindering and Farey reconstruction. A candidate is accepted once
//! it passes a test modulo a fresh prime and, unless disabled, an exact
//! verification over ℚ.

use std::time::{Duration, Instant};

use crate::engine::{self, Discard, TaskBatch};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, ideal_contains, ideal_contains_q, is_self_gb, to_integral, GroebnerBasis};
use crate::numth::{CrtBasis, PrimePool};
use crate::poly::{coefficient_integers, reduce_mod_p, Fp, Ideal, Monomial, Poly, PolyRing, QPoly, Qq, Zz};

/// Reduced basis of `I_p` for one prime.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularGBRecord {
    pub prime: u64,
    pub gb: GroebnerBasis<Fp>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModStdConfig {
    /// Primes added per round.
    pub batch_size: usize,
    /// Verify the lifted basis exactly; otherwise the modular test suffices.
    pub verify: bool,
    pub max_rounds: usize,
    pub seed: u64,
    pub cores: usize,
}

impl Default for ModStdConfig {
    fn default() -> Self {
        ModStdConfig { batch_size: 10, verify: true, max_rounds: 20, seed: 0, cores: engine::default_cores() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundOutcome {
    NoLift,
    TestFailed,
    VerifyFailed,
    Accepted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrace {
    pub round: usize,
    /// Primes whose modular basis is cached after this round.
    pub primes_total: usize,
    /// Size of the majority class used for lifting.
    pub primes_kept: usize,
    pub outcome: RoundOutcome,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PhaseTimings {
    pub modular: Duration,
    pub lift: Duration,
    pub test: Duration,
    pub verify: Duration,
}

/// Result of [`mod_std_traced`]: the basis plus bookkeeping.
#[derive(Debug, Clone)]
pub struct ModStdOutcome {
    pub basis: GroebnerBasis<Qq>,
    pub rounds: Vec<RoundTrace>,
    /// Every prime whose modular basis was computed, in drawing order.
    pub primes: Vec<u64>,
    /// Primes spent on modular tests.
    pub test_primes: Vec<u64>,
    pub timings: PhaseTimings,
    /// Largest number of simultaneously running modular tasks.
    pub peak_concurrency: usize,
}

/// Keeps the largest class of records with equal leading monomial sets.
/// Ties go to the class containing the smallest prime.
pub fn delete_unlucky_primes_sb(records: &[ModularGBRecord]) -> Vec<ModularGBRecord> {
    let mut classes: Vec<(&[Monomial], Vec<&ModularGBRecord>)> = Vec::new();
    for rec in records {
        match classes.iter_mut().find(|(lms, _)| *lms == rec.gb.lm_set()) {
            Some((_, members)) => members.push(rec),
            None => classes.push((rec.gb.lm_set(), vec![rec])),
        }
    }
    let min_prime = |c: &Vec<&ModularGBRecord>| c.iter().map(|r| r.prime).min().unwrap_or(u64::MAX);
    let best = classes
        .into_iter()
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| min_prime(&b.1).cmp(&min_prime(&a.1))));
    let mut kept: Vec<ModularGBRecord> = best.map(|(_, m)| m.into_iter().cloned().collect()).unwrap_or_default();
    kept.sort_by_key(|r| r.prime);
    kept
}

fn coeff_at(ring: &PolyRing<Fp>, f: &Poly<u64>, m: &Monomial) -> u64 {
    f.terms()
        .binary_search_by(|t| ring.compare(m, &t.0))
        .map(|i| f.terms()[i].1)
        .unwrap_or(0)
}

/// Lifts modular bases sharing one leading monomial set to rational
/// polynomials. Elements are paired by leading monomial; a monomial missing
/// from some prime's element counts as coefficient zero there. Returns
/// `Ok(None)` when some coefficient has no Farey preimage yet.
pub fn lift_gb(ring: &PolyRing<Qq>, records: &[ModularGBRecord]) -> Result<Option<Vec<QPoly>>> {
    let Some(first) = records.first() else {
        return Err(Error::Invalid("nothing to lift".into()));
    };
    if records.iter().any(|r| r.gb.lm_set() != first.gb.lm_set()) {
        return Err(Error::MismatchedRecords);
    }
    let primes: Vec<u64> = records.iter().map(|r| r.prime).collect();
    let crt = CrtBasis::new(&primes)?;
    let fp_ring = first.gb.ring();
    let mut out = Vec::with_capacity(first.gb.len());
    for idx in 0..first.gb.len() {
        let mut support: Vec<Monomial> = records
            .iter()
            .flat_map(|r| r.gb.elements()[idx].monomials().cloned())
            .collect();
        support.sort_by(|a, b| ring.compare(b, a));
        support.dedup();
        let mut terms = Vec::with_capacity(support.len());
        for m in support {
            let residues: Vec<u64> = records.iter().map(|r| coeff_at(fp_ring, &r.gb.elements()[idx], &m)).collect();
            match crt.lift_rational(&residues) {
                Some(c) => terms.push((m, c)),
                None => return Ok(None),
            }
        }
        out.push(ring.from_terms(terms));
    }
    Ok(Some(out))
}

/// Reduced basis of `I_p`, or a discard when `p` hits a denominator.
pub fn modular_basis(ideal: &Ideal<Qq>, p: u64) -> Result<GroebnerBasis<Fp>> {
    let ring = ideal.ring().with_coeffs(Fp::new(p));
    let gens = ideal.generators().iter().map(|f| reduce_mod_p(f, p)).collect::<Result<Vec<_>>>()?;
    Ok(buchberger(&ring, &gens))
}

/// Tests a lifted candidate modulo a fresh prime `p`: every generator of `I`
/// must reduce to zero modulo `G mod p`, every element of `G mod p` must lie
/// in `I_p`, and the leading monomials must agree with those of `std(I_p)`.
/// The prime is retired from the pool. Primes dividing a denominator of `G`
/// are skipped.
pub fn p_test_sb(ideal: &Ideal<Qq>, candidate: &[QPoly], pool: &mut PrimePool) -> bool {
    p_test_sb_with_prime(ideal, candidate, pool).0
}

fn p_test_sb_with_prime(ideal: &Ideal<Qq>, candidate: &[QPoly], pool: &mut PrimePool) -> (bool, Vec<u64>) {
    let mut spent = Vec::new();
    loop {
        let p = pool.fresh_prime();
        spent.push(p);
        let Ok(gp) = candidate.iter().map(|g| reduce_mod_p(g, p)).collect::<Result<Vec<_>>>() else {
            continue;
        };
        let Ok(std_p) = modular_basis(ideal, p) else {
            continue;
        };
        return (candidate_matches(ideal, &gp, &std_p, p), spent);
    }
}

fn candidate_matches(ideal: &Ideal<Qq>, gp: &[Poly<u64>], std_p: &GroebnerBasis<Fp>, p: u64) -> bool {
    let ring = std_p.ring();
    if gp.iter().any(|g| g.is_zero()) {
        return false;
    }
    let mut lms: Vec<Monomial> = gp.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
    lms.sort_by(|a, b| ring.compare(b, a));
    if lms != std_p.lm_set() {
        return false;
    }
    let cand = GroebnerBasis::from_reduced(ring.clone(), gp.to_vec());
    let gens_in = ideal
        .generators()
        .iter()
        .all(|f| reduce_mod_p(f, p).is_ok_and(|fp| ideal_contains(&cand, &fp)));
    gens_in && gp.iter().all(|g| ideal_contains(std_p, g))
}

/// Exact check that `G` is a Gröbner basis of `I`: `I ⊆ ⟨G⟩` and `G` is a
/// Gröbner basis of the ideal it generates.
pub fn verify_over_q(ideal: &Ideal<Qq>, candidate: &GroebnerBasis<Qq>, cores: usize) -> Result<bool> {
    let zgb: GroebnerBasis<Zz> = to_integral(candidate);
    let gens = ideal.generators();
    if !engine::parallel_all(gens.len(), cores, |i| ideal_contains_q(&zgb, &gens[i]))? {
        return Ok(false);
    }
    is_self_gb(zgb.ring(), zgb.elements(), cores)
}

/// Reduced Gröbner basis of `I` over ℚ by the modular method.
pub fn mod_std(ideal: &Ideal<Qq>, config: &ModStdConfig) -> Result<GroebnerBasis<Qq>> {
    mod_std_traced(ideal, config).map(|o| o.basis)
}

/// [`mod_std`] with the per-round trace, primes and phase timings.
pub fn mod_std_traced(ideal: &Ideal<Qq>, config: &ModStdConfig) -> Result<ModStdOutcome> {
    if config.batch_size == 0 || config.max_rounds == 0 {
        return Err(Error::Invalid("batch size and round limit must be positive".into()));
    }
    let ring = ideal.ring().clone();
    let mut outcome = ModStdOutcome {
        basis: GroebnerBasis::from_reduced(ring.clone(), Vec::new()),
        rounds: Vec::new(),
        primes: Vec::new(),
        test_primes: Vec::new(),
        timings: PhaseTimings::default(),
        peak_concurrency: 0,
    };
    if ideal.generators().is_empty() {
        return Ok(outcome);
    }
    let mut pool = PrimePool::with_forbidden(config.seed, coefficient_integers(ideal.generators()));
    let mut cache: Vec<ModularGBRecord> = Vec::new();
    let mut candidate: Option<Vec<QPoly>> = None;

    for round in 1..=config.max_rounds {
        let started = Instant::now();
        let fresh = pool.gen_primes(config.batch_size);
        outcome.primes.extend_from_slice(&fresh);
        let batch = TaskBatch::new(fresh.into_iter().map(|p| (p, ())).collect(), config.cores, config.seed);
        let done = engine::parallel_map(batch, |p, _| modular_basis(ideal, p).map_err(Discard::from))?;
        outcome.peak_concurrency = outcome.peak_concurrency.max(done.peak_concurrency);
        cache.extend(done.results.into_iter().map(|(prime, gb)| ModularGBRecord { prime, gb }));
        cache.sort_by_key(|r| r.prime);
        outcome.timings.modular += started.elapsed();

        let kept = delete_unlucky_primes_sb(&cache);
        let mut trace = RoundTrace { round, primes_total: cache.len(), primes_kept: kept.len(), outcome: RoundOutcome::NoLift };

        let started = Instant::now();
        let lifted = if kept.is_empty() { None } else { lift_gb(&ring, &kept)? };
        outcome.timings.lift += started.elapsed();
        let Some(lifted) = lifted else {
            outcome.rounds.push(trace);
            continue;
        };
        candidate = Some(lifted.clone());

        let started = Instant::now();
        let (passed, spent) = p_test_sb_with_prime(ideal, &lifted, &mut pool);
        outcome.test_primes.extend(spent);
        outcome.timings.test += started.elapsed();
        if !passed {
            trace.outcome = RoundOutcome::TestFailed;
            outcome.rounds.push(trace);
            continue;
        }

        let basis = GroebnerBasis::from_reduced(ring.clone(), lifted);
        if config.verify {
            let started = Instant::now();
            let ok = verify_over_q(ideal, &basis, config.cores)?;
            outcome.timings.verify += started.elapsed();
            if !ok {
                trace.outcome = RoundOutcome::VerifyFailed;
                outcome.rounds.push(trace);
                continue;
            }
        }
        trace.outcome = RoundOutcome::Accepted;
        outcome.rounds.push(trace);
        outcome.basis = basis;
        return Ok(outcome);
    }
    let last = outcome.rounds.last().map(|t| t.outcome);
    Err(Error::MaxRounds {
        rounds: config.max_rounds,
        detail: format!("{} primes used, last round ended with {:?}", outcome.primes.len(), last),
        candidate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::buchberger_q;
    use crate::numth::Rational;
    use crate::poly::{parse_poly, MonomialOrder};
    use proptest::prelude::*;

    fn ideal(vars: &[&str], order: MonomialOrder, gens: &[&str]) -> Ideal<Qq> {
        let ring = PolyRing::new(vars, order, Qq);
        let gens = gens.iter().map(|g| parse_poly(&ring, g).unwrap()).collect();
        Ideal::new(ring, gens)
    }

    fn config(seed: u64, cores: usize) -> ModStdConfig {
        ModStdConfig { seed, cores, ..ModStdConfig::default() }
    }

    fn record(id: &Ideal<Qq>, p: u64) -> ModularGBRecord {
        ModularGBRecord { prime: p, gb: modular_basis(id, p).unwrap() }
    }

    #[test]
    fn majority_class_survives() {
        let a = ideal(&["x", "y"], MonomialOrder::DegRevLex, &["x", "y"]);
        let b = ideal(&["x", "y"], MonomialOrder::DegRevLex, &["x^2", "y"]);
        let recs = vec![record(&a, 101), record(&b, 103), record(&a, 107)];
        let kept = delete_unlucky_primes_sb(&recs);
        assert_eq!(kept.iter().map(|r| r.prime).collect::<Vec<_>>(), vec![101, 107]);

        let all = vec![record(&a, 101), record(&a, 103)];
        assert_eq!(delete_unlucky_primes_sb(&all).len(), 2);
    }

    #[test]
    fn tie_goes_to_smallest_prime() {
        let a = ideal(&["x", "y"], MonomialOrder::DegRevLex, &["x", "y"]);
        let b = ideal(&["x", "y"], MonomialOrder::DegRevLex, &["x^2", "y"]);
        let kept = delete_unlucky_primes_sb(&[record(&a, 109), record(&b, 103)]);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].prime, 103);
        let kept = delete_unlucky_primes_sb(&[record(&b, 109), record(&a, 113), record(&a, 127), record(&b, 107)]);
        assert_eq!(kept.iter().map(|r| r.prime).collect::<Vec<_>>(), vec![107, 109]);
    }

    #[test]
    fn lift_examples() {
        let id = ideal(&["x"], MonomialOrder::DegRevLex, &["x - 2"]);
        let lifted = lift_gb(id.ring(), &[record(&id, 101)]).unwrap().unwrap();
        assert_eq!(lifted, vec![parse_poly(id.ring(), "x - 2").unwrap()]);

        let half = ideal(&["x"], MonomialOrder::DegRevLex, &["x + 1/2"]);
        let recs = [record(&half, 101), record(&half, 103)];
        // independent check of the residues: 2·c ≡ 1 mod p
        for r in &recs {
            let c = r.gb.elements()[0].terms()[1].1;
            assert_eq!(2 * c % r.prime, 1);
        }
        assert_eq!(lift_gb(half.ring(), &recs).unwrap().unwrap(), vec![parse_poly(half.ring(), "x + 1/2").unwrap()]);

        let big = ideal(&["x"], MonomialOrder::DegRevLex, &["x + 1000000000/7"]);
        let recs = [record(&big, 1_073_741_789), record(&big, 1_073_741_827)];
        let n = num_bigint::BigInt::from(1_073_741_789u64) * 1_073_741_827u64;
        assert!(num_bigint::BigInt::from(2) * num_bigint::BigInt::from(1_000_000_000u64).pow(2) > n);
        assert_eq!(lift_gb(big.ring(), &recs).unwrap(), None);
    }

    #[test]
    fn lift_rejects_mismatched_records() {
        let a = ideal(&["x", "y"], MonomialOrder::DegRevLex, &["x", "y"]);
        let b = ideal(&["x", "y"], MonomialOrder::DegRevLex, &["x^2", "y"]);
        assert_eq!(lift_gb(a.ring(), &[record(&a, 101), record(&b, 103)]), Err(Error::MismatchedRecords));
    }

    #[test]
    fn lift_fills_missing_terms_with_zero() {
        // modulo 7 the y-term of x + 7y vanishes
        let id = ideal(&["x", "y"], MonomialOrder::Lex, &["x + 7*y - 1"]);
        let recs = [record(&id, 7), record(&id, 11), record(&id, 13), record(&id, 17)];
        assert_eq!(recs[0].gb.elements()[0].len(), 2);
        let lifted = lift_gb(id.ring(), &recs).unwrap().unwrap();
        assert_eq!(lifted[0], parse_poly(id.ring(), "x + 7*y - 1").unwrap());
    }

    #[test]
    fn modular_test_accepts_true_basis() {
        let id = ideal(&["x", "y"], MonomialOrder::DegRevLex, &["x^2 - y", "x*y - 1"]);
        let gb = buchberger_q(&id);
        let mut pool = PrimePool::new(3);
        assert!(p_test_sb(&id, gb.elements(), &mut pool));
        assert_eq!(pool.retired().len(), 1);
    }

    #[test]
    fn modular_test_rejects_wrong_candidates() {
        let id = ideal(&["x"], MonomialOrder::DegRevLex, &["x^2 - 1"]);
        let cand = vec![parse_poly(id.ring(), "x - 1").unwrap()];
        let mut pool = PrimePool::new(3);
        assert!(!p_test_sb(&id, &cand, &mut pool));

        let id = ideal(&["x", "y"], MonomialOrder::DegRevLex, &["x^2 - y", "x*y - 1"]);
        let gb = buchberger_q(&id);
        let mut corrupted = gb.elements().to_vec();
        let last = corrupted.len() - 1;
        corrupted[last] = id.ring().add(&corrupted[last], &id.ring().constant(Rational::new(1.into(), 3.into())));
        assert!(!p_test_sb(&id, &corrupted, &mut pool));
    }

    #[test]
    fn already_a_basis_takes_one_round() {
        let id = ideal(&["x"], MonomialOrder::DegRevLex, &["x"]);
        let out = mod_std_traced(&id, &config(0, 1)).unwrap();
        assert_eq!(out.rounds.len(), 1);
        assert_eq!(out.basis.elements(), &[parse_poly(id.ring(), "x").unwrap()]);
    }

    #[test]
    fn cyclic4_matches_direct() {
        let id = ideal(
            &["a", "b", "c", "d"],
            MonomialOrder::DegRevLex,
            &["a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"],
        );
        assert_eq!(mod_std(&id, &config(7, 2)).unwrap(), buchberger_q(&id));
    }

    #[test]
    fn rational_coefficients_and_unit_ideal() {
        let id = ideal(&["x", "y"], MonomialOrder::Lex, &["3/7*x^2 - 5/11*y", "x*y - 13/2", "y^3 + 1/9*x"]);
        assert_eq!(mod_std(&id, &config(1, 1)).unwrap(), buchberger_q(&id));
        let unit = ideal(&["x", "y"], MonomialOrder::DegRevLex, &["x*y - 1", "x"]);
        let gb = mod_std(&unit, &config(1, 1)).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn first_batch_of_unlucky_primes_is_survived() {
        let batch = PrimePool::new(0).gen_primes(10);
        let n: num_bigint::BigInt = batch.iter().map(|&p| num_bigint::BigInt::from(p)).product();
        // ⟨y² − 1, y² + x − (N+1)⟩ has reduced basis {x − N, y² − 1}; every
        // prime of the first batch sees x − 0 instead.
        let ring = PolyRing::new(&["x", "y"], MonomialOrder::DegRevLex, Qq);
        let gens = vec![
            parse_poly(&ring, "y^2 - 1").unwrap(),
            parse_poly(&ring, &format!("y^2 + x - {}", &n + 1u32)).unwrap(),
        ];
        let id = Ideal::new(ring.clone(), gens);
        let cfg = ModStdConfig { seed: 0, cores: 1, batch_size: 10, verify: true, max_rounds: 20 };
        let out = mod_std_traced(&id, &cfg).unwrap();
        assert_eq!(out.primes[..10], batch[..]);
        assert!(out.rounds.len() >= 2);
        assert_eq!(out.basis, buchberger_q(&id));
        assert_eq!(out.basis.elements()[1], parse_poly(&ring, &format!("x - {n}")).unwrap());
    }

    #[test]
    fn round_limit_reports_candidate() {
        let id = ideal(&["x"], MonomialOrder::DegRevLex, &["x - 123456789012345678901234567890/7"]);
        let cfg = ModStdConfig { seed: 0, cores: 1, batch_size: 1, verify: true, max_rounds: 2 };
        match mod_std(&id, &cfg) {
            Err(Error::MaxRounds { rounds: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cached_primes_are_not_recomputed() {
        let id = ideal(&["x"], MonomialOrder::DegRevLex, &["x - 123456789012345678901234567890123/7"]);
        let cfg = ModStdConfig { seed: 5, cores: 1, batch_size: 1, verify: true, max_rounds: 20 };
        let out = mod_std_traced(&id, &cfg).unwrap();
        let mut seen = out.primes.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), out.primes.len());
        for (k, t) in out.rounds.iter().enumerate() {
            assert_eq!(t.primes_total, k + 1);
        }
    }

    fn small_poly() -> impl Strategy<Value = String> {
        let term = (-100i64..=100, 0u32..=2, 0u32..=2, 0u32..=1)
            .prop_filter("nonzero", |t| t.0 != 0)
            .prop_map(|(c, a, b, e)| (c, format!("{}*x^{a}*y^{b}*z^{e}", c.abs())));
        prop::collection::vec(term, 1..=3).prop_map(|ts| {
            ts.iter().map(|(c, t)| format!(" {} {t}", if *c < 0 { '-' } else { '+' })).collect::<String>()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn agrees_with_direct_computation(gens in prop::collection::vec(small_poly(), 1..=3), lex in any::<bool>(), seed in 0u64..50) {
            let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
            let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
            let id = ideal(&["x", "y", "z"], order, &refs);
            let expected = buchberger_q(&id);
            let one = mod_std(&id, &config(seed, 1)).unwrap();
            prop_assert_eq!(&one, &expected);
            let three = mod_std(&id, &config(seed, 3)).unwrap();
            prop_assert_eq!(&three, &expected);
        }
    }
}
