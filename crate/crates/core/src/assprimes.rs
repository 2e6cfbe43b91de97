//! Associated primes of zero-dimensional ideals from the minimal polynomial
//! of a random linear form, and primary components by separators and
//! saturation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{self, Discard, TaskBatch};
use crate::error::{Error, Result};
use crate::groebner::{buchberger_q, ideal_contains_q, normal_form, to_integral, GroebnerBasis};
use crate::modstd::{mod_std, modular_basis, ModStdConfig, RoundOutcome, RoundTrace};
use crate::numth::{PrimePool, Rational};
use crate::poly::univariate::{self, integer_to_rational, QUni};
use crate::poly::{
    coefficient_integers, format_poly, poly_to_univariate, substitute_linear, Ideal, LinearForm, MonomialOrder, PolyRing,
    Qq, QPoly, UniPoly,
};
use crate::unifactor::{factor_rational_seeded, Factorization};
use crate::zerodim::{
    keep_full_degree, lift_univariate, min_poly_of_form, p_test_rad, quotient_basis, zero_radical, ModularMinPolyRecord,
};

/// Maximal nesting of the partial-factor recursion.
pub const MAX_RECURSION_DEPTH: usize = 8;

/// Coefficient range of a random linear form.
const FORM_RANGE: std::ops::RangeInclusive<i64> = -99..=99;

#[derive(Debug, Clone, PartialEq)]
pub struct AssPrimesResult {
    /// Reduced `dp` bases of the maximal ideals, in canonical order.
    pub primes: Vec<GroebnerBasis<Qq>>,
    /// The form `r` of the top-level call.
    pub linear_form: LinearForm,
    /// Lifted minimal polynomial of `r` (top-level call).
    pub f: QUni,
    pub factors: Factorization,
    /// The radicality test was negative and the radical was taken up front.
    pub radical_taken: bool,
    /// Batches that produced no new full-degree polynomial.
    pub stagnations: usize,
    /// Whether the partial-factor branch was used anywhere.
    pub recursed: bool,
    pub rounds: Vec<RoundTrace>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimaryComponent {
    pub primary: GroebnerBasis<Qq>,
    pub associated_prime: GroebnerBasis<Qq>,
}

/// Outcome of checking a lifted `F` against the ideal.
#[derive(Debug, Clone, PartialEq)]
pub enum VerifyF {
    /// `F(r) ∈ I` and no proper factor of `F(r)` lies in `I`.
    Full,
    /// Some proper factor lies in `I`. `H` is the minimal-degree one, given
    /// by its exponents over the irreducible factors of `F`.
    Partial(Vec<usize>),
    /// `F(r) ∉ I`.
    Fail,
}

fn random_form(n: usize, rng: &mut ChaCha8Rng) -> LinearForm {
    LinearForm::new((1..n).map(|_| rng.gen_range(FORM_RANGE)).collect())
}

fn product_at(ring: &PolyRing<Qq>, factors: &Factorization, exps: &[usize], r: &QPoly) -> QPoly {
    let mut h: QUni = UniPoly::constant(&Qq, Rational::from_integer(1.into()));
    for ((g, _), &e) in factors.factors.iter().zip(exps) {
        h = univariate::mul(&Qq, &h, &univariate::pow(&Qq, &integer_to_rational(g), e as u32));
    }
    substitute_linear(ring, &h, r)
}

/// Classifies `F` by `s + 1` independent memberships: `F(r)` and the
/// cofactors `F/F_i` (one copy of `F_i` removed). Every proper divisor of `F`
/// divides some cofactor. On a partial result the divisor is shrunk one
/// factor at a time while it stays in `I`; since the divisors of `F` lying
/// in `I` are the multiples of the minimal polynomial of `r`, this ends at
/// the minimal-degree one.
pub fn verify_f(gb: &GroebnerBasis<Qq>, factors: &Factorization, r: &LinearForm, cores: usize) -> Result<VerifyF> {
    let ring = gb.ring();
    let zgb = to_integral(gb);
    let r = r.to_poly(ring);
    let full: Vec<usize> = factors.factors.iter().map(|(_, m)| *m).collect();
    let s = full.len();
    let member = engine::parallel_indexed(s + 1, cores, |i| {
        let mut exps = full.clone();
        if i < s {
            exps[i] -= 1;
        }
        ideal_contains_q(&zgb, &product_at(ring, factors, &exps, &r))
    })?;
    if !member[s] {
        return Ok(VerifyF::Fail);
    }
    let Some(first) = (0..s).find(|&i| member[i]) else {
        return Ok(VerifyF::Full);
    };
    let mut h = full;
    h[first] -= 1;
    'shrink: loop {
        for i in 0..s {
            if h[i] == 0 {
                continue;
            }
            h[i] -= 1;
            if ideal_contains_q(&zgb, &product_at(ring, factors, &h, &r)) {
                continue 'shrink;
            }
            h[i] += 1;
        }
        return Ok(VerifyF::Partial(h));
    }
}

fn canonical_key(gb: &GroebnerBasis<Qq>) -> Vec<String> {
    gb.elements().iter().map(|f| format_poly(gb.ring(), f)).collect()
}

fn sort_bases(bases: &mut Vec<GroebnerBasis<Qq>>) {
    bases.sort_by_key(canonical_key);
    bases.dedup_by(|a, b| a == b);
}

/// Associated primes of a zero-dimensional ideal, with a random form drawn
/// from `config.seed`.
pub fn ass_primes(ideal: &Ideal<Qq>, config: &ModStdConfig) -> Result<AssPrimesResult> {
    ass_primes_impl(ideal, config, None, 0)
}

/// [`ass_primes`] starting from the given form instead of a random one.
pub fn ass_primes_with_form(ideal: &Ideal<Qq>, r: &LinearForm, config: &ModStdConfig) -> Result<AssPrimesResult> {
    if r.nvars() != ideal.ring().nvars() {
        return Err(Error::RingMismatch("linear form has the wrong number of variables".into()));
    }
    ass_primes_impl(ideal, config, Some(r.clone()), 0)
}

fn ass_primes_impl(
    ideal: &Ideal<Qq>,
    config: &ModStdConfig,
    form: Option<LinearForm>,
    depth: usize,
) -> Result<AssPrimesResult> {
    if depth > MAX_RECURSION_DEPTH {
        return Err(Error::MaxRounds {
            rounds: depth,
            detail: "partial-factor recursion exceeded its depth limit".into(),
            candidate: None,
        });
    }
    let dp_ring = ideal.ring().with_order(MonomialOrder::DegRevLex);
    let n = dp_ring.nvars();
    let dp_ideal = Ideal::new(dp_ring.clone(), ideal.generators().iter().map(|g| dp_ring.reorder(g)).collect());
    let mut gb = mod_std(&dp_ideal, config)?;
    let mut d = quotient_basis(&gb)?.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (depth as u64).wrapping_mul(0x9E37_79B9));
    let mut r = form.unwrap_or_else(|| random_form(n, &mut rng));
    let one = UniPoly::constant(&Qq, Rational::from_integer(1.into()));
    let mut result = AssPrimesResult {
        primes: Vec::new(),
        linear_form: r.clone(),
        f: one,
        factors: Factorization { unit: Rational::from_integer(1.into()), factors: Vec::new() },
        radical_taken: false,
        stagnations: 0,
        recursed: false,
        rounds: Vec::new(),
    };
    if d == 0 {
        return Ok(result);
    }

    let mut pool = PrimePool::with_forbidden(config.seed, coefficient_integers(gb.elements()));
    if !p_test_rad(d, &r, &gb, &mut pool)? {
        gb = zero_radical(&gb, config)?;
        d = quotient_basis(&gb)?.dimension();
        result.radical_taken = true;
        pool.forbid(coefficient_integers(gb.elements()));
    }

    let mut cache: Vec<ModularMinPolyRecord> = Vec::new();
    let mut seen = 0;
    for round in 1..=config.max_rounds {
        let ideal_g = gb.to_ideal();
        let fresh = pool.gen_primes(config.batch_size);
        let batch = TaskBatch::new(fresh.into_iter().map(|p| (p, ())).collect(), config.cores, config.seed);
        let form = r.clone();
        let done = engine::parallel_map(batch, |p, _| {
            let gb_p = modular_basis(&ideal_g, p).map_err(Discard::from)?;
            min_poly_of_form(&gb_p, &form).map_err(Discard::from)
        })?;
        cache.extend(done.results.into_iter().map(|(_, rec)| rec));
        cache.sort_by_key(|rec| rec.prime);
        let kept = keep_full_degree(&cache, d);
        let mut trace = RoundTrace { round, primes_total: cache.len(), primes_kept: kept.len(), outcome: RoundOutcome::NoLift };

        if kept.len() == seen {
            // stagnation: r does not separate the points, or the ideal is not radical
            gb = zero_radical(&gb, config)?;
            d = quotient_basis(&gb)?.dimension();
            pool.forbid(coefficient_integers(gb.elements()));
            r = random_form(n, &mut rng);
            cache.clear();
            seen = 0;
            result.stagnations += 1;
            result.rounds.push(trace);
            continue;
        }
        seen = kept.len();
        let Some(mut lifted) = lift_univariate(&kept)? else {
            result.rounds.push(trace);
            continue;
        };
        let f = lifted.pop().expect("one polynomial per record");
        let factors = factor_rational_seeded(&f, config.seed)?;
        match verify_f(&gb, &factors, &r, config.cores)? {
            VerifyF::Fail => {
                trace.outcome = RoundOutcome::VerifyFailed;
                result.rounds.push(trace);
            }
            VerifyF::Full => {
                trace.outcome = RoundOutcome::Accepted;
                result.rounds.push(trace);
                let rp = r.to_poly(&dp_ring);
                let gens_for = |i: usize| {
                    let mut gens = gb.elements().to_vec();
                    gens.push(substitute_linear(&dp_ring, &integer_to_rational(&factors.factors[i].0), &rp));
                    Ideal::new(dp_ring.clone(), gens)
                };
                let primes = engine::parallel_indexed(factors.factors.len(), config.cores, |i| mod_std(&gens_for(i), config))?
                    .into_iter()
                    .collect::<Result<Vec<_>>>()?;
                result.primes = primes;
                sort_bases(&mut result.primes);
                result.linear_form = r;
                result.f = f;
                result.factors = factors;
                return Ok(result);
            }
            VerifyF::Partial(h) => {
                trace.outcome = RoundOutcome::Accepted;
                result.rounds.push(trace);
                let rp = r.to_poly(&dp_ring);
                let mut primes = Vec::new();
                for (i, &e) in h.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let mut gens = gb.elements().to_vec();
                    gens.push(substitute_linear(&dp_ring, &integer_to_rational(&factors.factors[i].0), &rp));
                    let sub = mod_std(&Ideal::new(dp_ring.clone(), gens), config)?;
                    let inner = ass_primes_impl(&sub.to_ideal(), config, None, depth + 1)?;
                    result.stagnations += inner.stagnations;
                    primes.extend(inner.primes);
                }
                result.primes = primes;
                sort_bases(&mut result.primes);
                result.recursed = true;
                result.linear_form = r;
                result.f = f;
                result.factors = factors;
                return Ok(result);
            }
        }
    }
    Err(Error::MaxRounds {
        rounds: config.max_rounds,
        detail: format!("minimal polynomial of degree {d} not confirmed after {} primes", cache.len()),
        candidate: None,
    })
}

/// `σ_i = ∏_{j≠i} m_j` with `m_j` the first basis element of `M_j` outside
/// `M_i`.
pub fn separators(primes: &[GroebnerBasis<Qq>]) -> Result<Vec<QPoly>> {
    let mut out = Vec::with_capacity(primes.len());
    for (i, mi) in primes.iter().enumerate() {
        let ring = mi.ring();
        let mut sigma = ring.one();
        for (j, mj) in primes.iter().enumerate() {
            if j == i {
                continue;
            }
            let m = mj
                .elements()
                .iter()
                .find(|g| !normal_form(ring, g, mi.elements()).is_zero())
                .ok_or(Error::NoSeparator)?;
            sigma = ring.mul(&sigma, m);
        }
        if normal_form(ring, &sigma, mi.elements()).is_zero()
            || primes.iter().enumerate().any(|(j, mj)| j != i && !normal_form(ring, &sigma, mj.elements()).is_zero())
        {
            return Err(Error::NoSeparator);
        }
        out.push(sigma);
    }
    Ok(out)
}

/// Name for an auxiliary variable not clashing with the ring's.
fn fresh_var(ring: &PolyRing<Qq>, base: &str) -> String {
    let mut name = base.to_string();
    let mut k = 0;
    while ring.var_index(&name).is_some() {
        name = format!("{base}{k}");
        k += 1;
    }
    name
}

fn embed_prepended(ext: &PolyRing<Qq>, f: &QPoly) -> QPoly {
    ext.from_terms(f.terms().iter().map(|(m, c)| (m.prepend_vars(1), c.clone())).collect())
}

/// Elements free of the first variable, moved back to `ring`, as a reduced
/// basis in `ring`'s ordering.
fn eliminate_first(ring: &PolyRing<Qq>, ext_gens: Vec<QPoly>, config: &ModStdConfig) -> Result<GroebnerBasis<Qq>> {
    let ext = ring.with_prepended_vars(&[&fresh_var(ring, "t")], MonomialOrder::Block(1));
    let egb = mod_std(&Ideal::new(ext, ext_gens), config)?;
    let kept: Vec<QPoly> = egb
        .elements()
        .iter()
        .filter_map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| m.drop_leading_vars(1).map(|m| (m, c.clone())))
                .collect::<Option<Vec<_>>>()?;
            Some(ring.from_terms(terms))
        })
        .collect();
    mod_std(&Ideal::new(ring.clone(), kept), config)
}

/// `I : f^∞ = ⟨I, t·f − 1⟩ ∩ ℚ[X]`.
pub fn saturate(ideal: &Ideal<Qq>, f: &QPoly, config: &ModStdConfig) -> Result<GroebnerBasis<Qq>> {
    if f.is_zero() {
        return Err(Error::Invalid("saturation by zero".into()));
    }
    let ring = ideal.ring();
    let ext = ring.with_prepended_vars(&[&fresh_var(ring, "t")], MonomialOrder::Block(1));
    let mut gens: Vec<QPoly> = ideal.generators().iter().map(|g| embed_prepended(&ext, g)).collect();
    let tf = ext.mul(&ext.var(0), &embed_prepended(&ext, f));
    gens.push(ext.sub(&tf, &ext.one()));
    eliminate_first(ring, gens, config)
}

/// `I ∩ J = ⟨t·I, (1 − t)·J⟩ ∩ ℚ[X]`.
pub fn intersect(a: &Ideal<Qq>, b: &Ideal<Qq>, config: &ModStdConfig) -> Result<GroebnerBasis<Qq>> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch("intersection of ideals in different rings".into()));
    }
    let ring = a.ring();
    let ext = ring.with_prepended_vars(&[&fresh_var(ring, "t")], MonomialOrder::Block(1));
    let t = ext.var(0);
    let one_minus_t = ext.sub(&ext.one(), &t);
    let mut gens: Vec<QPoly> = a.generators().iter().map(|g| ext.mul(&t, &embed_prepended(&ext, g))).collect();
    gens.extend(b.generators().iter().map(|g| ext.mul(&one_minus_t, &embed_prepended(&ext, g))));
    eliminate_first(ring, gens, config)
}

/// Iterated [`intersect`]; the empty intersection is the unit ideal.
pub fn intersect_all(ring: &PolyRing<Qq>, ideals: &[Ideal<Qq>], config: &ModStdConfig) -> Result<GroebnerBasis<Qq>> {
    let Some((first, rest)) = ideals.split_first() else {
        return mod_std(&Ideal::new(ring.clone(), vec![ring.one()]), config);
    };
    let mut acc = mod_std(first, config)?;
    for next in rest {
        acc = intersect(&acc.to_ideal(), next, config)?;
    }
    Ok(acc)
}

/// Primary components `Q_i = I : σ_i^∞` paired with their associated
/// primes. The intersection of the components is checked against `I`.
pub fn primary_decomposition(ideal: &Ideal<Qq>, config: &ModStdConfig) -> Result<Vec<PrimaryComponent>> {
    let ass = ass_primes(ideal, config)?;
    let dp_ring = ideal.ring().with_order(MonomialOrder::DegRevLex);
    let dp_ideal = Ideal::new(dp_ring.clone(), ideal.generators().iter().map(|g| dp_ring.reorder(g)).collect());
    let seps = separators(&ass.primes)?;
    let primaries = engine::parallel_indexed(seps.len(), config.cores, |i| saturate(&dp_ideal, &seps[i], config))?
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let meet = intersect_all(&dp_ring, &primaries.iter().map(|q| q.to_ideal()).collect::<Vec<_>>(), config)?;
    if meet != mod_std(&dp_ideal, config)? {
        return Err(Error::Invalid("primary components do not intersect to the ideal".into()));
    }
    Ok(primaries
        .into_iter()
        .zip(ass.primes)
        .map(|(primary, associated_prime)| PrimaryComponent { primary, associated_prime })
        .collect())
}

/// Monic generator of `⟨I, T − r⟩ ∩ ℚ[T]` from a direct Gröbner basis in an
/// ordering eliminating `X`. Independent of the modular minimal polynomial
/// path; intended as a reference.
pub fn elim_min_poly_oracle(ideal: &Ideal<Qq>, r: &LinearForm) -> Result<QUni> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let mut names: Vec<String> = ring.vars().to_vec();
    names.push(fresh_var(ring, "T"));
    let ext = PolyRing::new(&names, MonomialOrder::Block(n), Qq);
    let embed = |f: &QPoly| {
        ext.from_terms(
            f.terms()
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.push(0);
                    (crate::poly::Monomial::from_exponents(&e), c.clone())
                })
                .collect(),
        )
    };
    let mut gens: Vec<QPoly> = ideal.generators().iter().map(embed).collect();
    gens.push(ext.sub(&ext.var(n), &embed(&r.to_poly(ring))));
    let gb = buchberger_q(&Ideal::new(ext.clone(), gens));
    let found: Vec<QUni> = gb.elements().iter().filter_map(|g| poly_to_univariate(&ext, g, n)).collect();
    match found.as_slice() {
        [f] => Ok(univariate::monic(&Qq, f)),
        [] => Err(Error::PositiveDimensional),
        _ => Err(Error::Invalid("reduced basis has several eliminants".into())),
    }
}
