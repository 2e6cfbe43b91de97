//! Prime pools, modular inverses, Chinese remaindering and Farey rational
//! reconstruction.

use std::collections::HashSet;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Lower end of the range primes are drawn from.
pub const PRIME_LOW: u64 = 1 << 28;
/// Exclusive upper end of the range primes are drawn from.
pub const PRIME_HIGH: u64 = 1 << 31;

/// A seeded, append-only collection of distinct primes.
///
/// Every prime handed out (either through [`PrimePool::gen_primes`] or
/// [`PrimePool::fresh_prime`]) is remembered and never returned again. Primes
/// that divide one of the forbidden integers are rejected.
#[derive(Debug, Clone)]
pub struct PrimePool {
    primes: Vec<u64>,
    retired: Vec<u64>,
    used: HashSet<u64>,
    forbidden: Vec<BigInt>,
    seed: u64,
    rng: ChaCha8Rng,
}

impl PrimePool {
    pub fn new(seed: u64) -> Self {
        Self::with_forbidden(seed, std::iter::empty())
    }

    /// Builds a pool that never yields a prime dividing any of `forbidden`.
    /// Zero and units are ignored.
    pub fn with_forbidden(seed: u64, forbidden: impl IntoIterator<Item = BigInt>) -> Self {
        let mut list: Vec<BigInt> = forbidden
            .into_iter()
            .map(|n| n.abs())
            .filter(|n| *n > BigInt::one())
            .collect();
        list.sort();
        list.dedup();
        PrimePool {
            primes: Vec::new(),
            retired: Vec::new(),
            used: HashSet::new(),
            forbidden: list,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Primes in the working set, in the order they were drawn.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes consumed by one-off tests; they are never reused.
    pub fn retired(&self) -> &[u64] {
        &self.retired
    }

    pub fn forbidden(&self) -> &[BigInt] {
        &self.forbidden
    }

    /// Adds further integers whose prime divisors must be avoided from now on.
    pub fn forbid(&mut self, more: impl IntoIterator<Item = BigInt>) {
        for n in more {
            let n = n.abs();
            if n > BigInt::one() && !self.forbidden.contains(&n) {
                self.forbidden.push(n);
            }
        }
        self.forbidden.sort();
    }

    pub fn is_used(&self, p: u64) -> bool {
        self.used.contains(&p)
    }

    fn admissible(&self, p: u64) -> bool {
        if self.used.contains(&p) || !is_prime(p) {
            return false;
        }
        let bp = BigInt::from(p);
        self.forbidden.iter().all(|n| !(n % &bp).is_zero())
    }

    fn draw(&mut self) -> u64 {
        loop {
            let candidate = self.rng.gen_range(PRIME_LOW..PRIME_HIGH) | 1;
            if self.admissible(candidate) {
                self.used.insert(candidate);
                return candidate;
            }
        }
    }

    /// Extends the working set by `count` new primes and returns them.
    pub fn gen_primes(&mut self, count: usize) -> Vec<u64> {
        let fresh: Vec<u64> = (0..count).map(|_| self.draw()).collect();
        self.primes.extend_from_slice(&fresh);
        fresh
    }

    /// Draws a prime that is outside the working set and retires it.
    pub fn fresh_prime(&mut self) -> u64 {
        let p = self.draw();
        self.retired.push(p);
        p
    }
}

/// Standalone form of [`PrimePool::gen_primes`].
pub fn gen_primes(count: usize, mut pool: PrimePool) -> PrimePool {
    pool.gen_primes(count);
    pool
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the base set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Inverse of `a` modulo `n`, in `(0, n)`.
pub fn mod_inverse(a: &BigInt, n: &BigInt) -> Result<BigInt> {
    if *n <= BigInt::one() {
        return Err(Error::NotInvertible(format!("modulus {n} is not >= 2")));
    }
    let a = a.mod_floor(n);
    let ext = a.extended_gcd(n);
    if !ext.gcd.is_one() {
        return Err(Error::NotInvertible(format!("{a} mod {n}")));
    }
    Ok(ext.x.mod_floor(n))
}

/// Machine-word inverse modulo a prime `p`; `a` must be nonzero mod `p`.
pub(crate) fn inv_mod_u64(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Combines `(value, modulus)` pairs into the unique residue modulo the
/// product of the moduli.
pub fn crt_lift(residues: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let mut value = BigInt::zero();
    let mut modulus = BigInt::one();
    for (v, m) in residues {
        let ext = modulus.extended_gcd(m);
        if !ext.gcd.is_one() {
            return Err(Error::NonCoprimeModuli(modulus.clone(), m.clone()));
        }
        // value + modulus * k ≡ v (mod m)
        let k = ((v - &value) * &ext.x).mod_floor(m);
        value += &modulus * k;
        modulus *= m;
        value = value.mod_floor(&modulus);
    }
    Ok((value, modulus))
}

/// Precomputed Chinese remainder data for a fixed list of word-sized primes.
#[derive(Debug, Clone)]
pub struct CrtBasis {
    primes: Vec<u64>,
    modulus: BigInt,
    // modulus / p_i times its inverse modulo p_i
    weights: Vec<BigInt>,
}

impl CrtBasis {
    pub fn new(primes: &[u64]) -> Result<Self> {
        let modulus: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
        let mut weights = Vec::with_capacity(primes.len());
        for &p in primes {
            let bp = BigInt::from(p);
            let cofactor = &modulus / &bp;
            let inv = mod_inverse(&cofactor, &bp)
                .map_err(|_| Error::NonCoprimeModuli(cofactor.clone(), bp.clone()))?;
            weights.push(cofactor * inv);
        }
        Ok(CrtBasis { primes: primes.to_vec(), modulus, weights })
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Residue in `[0, N)` matching `values[i]` modulo `primes[i]`.
    pub fn lift(&self, values: &[u64]) -> BigInt {
        debug_assert_eq!(values.len(), self.primes.len());
        let mut acc = BigInt::zero();
        for (v, w) in values.iter().zip(&self.weights) {
            if *v != 0 {
                acc += w * *v;
            }
        }
        acc.mod_floor(&self.modulus)
    }

    /// CRT followed by Farey reconstruction.
    pub fn lift_rational(&self, values: &[u64]) -> Option<Rational> {
        farey_reconstruct(&self.lift(values), &self.modulus)
    }
}

/// Recovers `a/b` from `c ≡ a·b⁻¹ (mod n)` with `2a² ≤ n`, `2b² ≤ n` and
/// `gcd(b, n) = 1`. Returns `None` when no such fraction exists.
pub fn farey_reconstruct(c: &BigInt, n: &BigInt) -> Option<Rational> {
    if *n < BigInt::from(2) {
        return None;
    }
    let c = c.mod_floor(n);
    let within = |x: &BigInt| -> bool { BigInt::from(2) * x * x <= *n };
    let (mut r0, mut r1) = (n.clone(), c);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !within(&r1) {
        let (q, r) = r0.div_rem(&r1);
        let t = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    let (mut a, mut b) = (r1, t1);
    if b.sign() == Sign::Minus {
        a = -a;
        b = -b;
    }
    if b.is_zero() || !within(&b) || !b.gcd(n).is_one() {
        return None;
    }
    Some(Rational::new(a, b))
}

/// Image of a rational in `F_p`, or `None` when `p` divides the denominator.
pub fn rational_mod_p(q: &Rational, p: u64) -> Option<u64> {
    let bp = BigInt::from(p);
    let den = q.denom().mod_floor(&bp).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = q.numer().mod_floor(&bp).to_u64()?;
    Some(mul_mod(num, inv_mod_u64(den, p), p))
}
