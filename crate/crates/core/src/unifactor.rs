//! Factorization of univariate polynomials over ℚ: squarefree decomposition,
//! Cantor–Zassenhaus over `F_p`, quadratic Hensel lifting and Zassenhaus
//! recombination.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numth::{is_prime, Rational};
use crate::poly::univariate::{self, exact_div, integer_to_rational, primitive_part, rational_to_primitive, QUni, ZUni};
use crate::poly::{Coeffs, Fp, Qq, UniPoly, Zz};

/// `unit · ∏ factor^multiplicity`. Factors are primitive integer polynomials
/// with positive leading coefficient, irreducible over ℚ, sorted by degree
/// and then coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(ZUni, usize)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> QUni {
        let mut acc = UniPoly::constant(&Qq, self.unit.clone());
        for (f, m) in &self.factors {
            acc = univariate::mul(&Qq, &acc, &univariate::pow(&Qq, &integer_to_rational(f), *m as u32));
        }
        acc
    }
}

/// Yun's algorithm: monic squarefree, pairwise coprime `G_i` with
/// `F = lc(F) · ∏ G_i^i`. Only nonconstant parts are returned.
pub fn squarefree_decomposition(f: &QUni) -> Result<Vec<(QUni, usize)>> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let k = Qq;
    let df = univariate::derivative(&k, f);
    let a0 = univariate::gcd_rational(f, &df)?;
    let mut b = univariate::divrem(&k, f, &a0).0;
    let mut c = univariate::divrem(&k, &df, &a0).0;
    let mut d = univariate::sub(&k, &c, &univariate::derivative(&k, &b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = if d.is_zero() { univariate::monic(&k, &b) } else { univariate::gcd_rational(&b, &d)? };
        b = univariate::divrem(&k, &b, &a).0;
        c = univariate::divrem(&k, &d, &a).0;
        d = univariate::sub(&k, &c, &univariate::derivative(&k, &b));
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}

// ---- factorization over F_p --------------------------------------------------

fn pow_mod_big(k: &Fp, base: &UniPoly<u64>, exp: &BigUint, modulus: &UniPoly<u64>) -> UniPoly<u64> {
    let mut acc = univariate::rem(k, &UniPoly::constant(k, 1), modulus);
    for i in (0..exp.bits()).rev() {
        acc = univariate::rem(k, &univariate::mul(k, &acc, &acc), modulus);
        if exp.bit(i) {
            acc = univariate::rem(k, &univariate::mul(k, &acc, base), modulus);
        }
    }
    acc
}

fn is_squarefree_mod_p(k: &Fp, f: &UniPoly<u64>) -> bool {
    let df = univariate::derivative(k, f);
    !df.is_zero() && univariate::gcd(k, f, &df).is_ok_and(|g| g.degree() == Some(0))
}

/// Complete factorization of a squarefree polynomial over `F_p` (`p` odd)
/// into monic irreducibles, sorted. Randomness is drawn from `seed`.
pub fn factor_mod_p(f: &UniPoly<u64>, p: u64, seed: u64) -> Result<Vec<UniPoly<u64>>> {
    let k = Fp::new(p);
    if p == 2 {
        return Err(Error::Invalid("factor_mod_p needs an odd prime".into()));
    }
    let Some(deg) = f.degree() else {
        return Err(Error::Invalid("cannot factor zero".into()));
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let f = univariate::monic(&k, f);
    if !is_squarefree_mod_p(&k, &f) {
        return Err(Error::NotSquarefree(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&k, &f) {
        equal_degree(&k, &g, d, &mut rng, &mut out);
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(out)
}

/// Splits `f` into products of irreducibles of equal degree.
fn distinct_degree(k: &Fp, f: &UniPoly<u64>) -> Vec<(UniPoly<u64>, usize)> {
    let p = BigUint::from(k.modulus());
    let x = UniPoly::x(k);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = pow_mod_big(k, &h, &p, &rest);
        let g = univariate::gcd(k, &rest, &univariate::sub(k, &h, &x)).unwrap();
        if g.degree().unwrap_or(0) > 0 {
            rest = univariate::divrem(k, &rest, &g).0;
            h = univariate::rem(k, &h, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
fn equal_degree(k: &Fp, f: &UniPoly<u64>, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<UniPoly<u64>>) {
    let n = f.degree().unwrap();
    if n == d {
        out.push(f.clone());
        return;
    }
    let exp = (BigUint::from(k.modulus()).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = UniPoly::new(k, (0..n).map(|_| rng.gen_range(0..k.modulus())).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut g = univariate::gcd(k, f, &a).unwrap();
        if g.degree().unwrap_or(0) == 0 {
            let b = pow_mod_big(k, &a, &exp, f);
            g = univariate::gcd(k, f, &univariate::sub(k, &b, &UniPoly::constant(k, 1))).unwrap();
        }
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = univariate::divrem(k, f, &g).0;
            equal_degree(k, &g, d, rng, out);
            equal_degree(k, &h, d, rng, out);
            return;
        }
    }
}

// ---- Hensel lifting -----------------------------------------------------------

/// Polynomial arithmetic over `ℤ/mℤ` on integer coefficient vectors.
mod zmod {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Zero;

    use crate::poly::univariate::ZUni;
    use crate::poly::{UniPoly, Zz};

    pub fn reduce(f: &ZUni, m: &BigInt) -> ZUni {
        UniPoly::new(&Zz, f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
    }

    pub fn mul(f: &ZUni, g: &ZUni, m: &BigInt) -> ZUni {
        reduce(&crate::poly::univariate::mul(&Zz, f, g), m)
    }

    pub fn add(f: &ZUni, g: &ZUni, m: &BigInt) -> ZUni {
        reduce(&crate::poly::univariate::add(&Zz, f, g), m)
    }

    pub fn sub(f: &ZUni, g: &ZUni, m: &BigInt) -> ZUni {
        reduce(&crate::poly::univariate::sub(&Zz, f, g), m)
    }

    /// Division by a monic `g`.
    pub fn divrem_monic(f: &ZUni, g: &ZUni, m: &BigInt) -> (ZUni, ZUni) {
        let dg = g.degree().expect("division by zero");
        let mut r: Vec<BigInt> = reduce(f, m).into_coeffs();
        if r.len() <= dg {
            return (UniPoly::zero(), UniPoly::new(&Zz, r));
        }
        let mut q = vec![BigInt::zero(); r.len() - dg];
        for i in (0..q.len()).rev() {
            let c = r[i + dg].mod_floor(m);
            if c.is_zero() {
                continue;
            }
            for (j, b) in g.coeffs().iter().enumerate() {
                r[i + j] = (&r[i + j] - &c * b).mod_floor(m);
            }
            q[i] = c;
        }
        r.truncate(dg);
        (UniPoly::new(&Zz, q), reduce(&UniPoly::new(&Zz, r), m))
    }
}

fn to_fp(f: &ZUni, p: u64) -> UniPoly<u64> {
    let bp = BigInt::from(p);
    UniPoly::new(&Fp::new(p), f.coeffs().iter().map(|c| c.mod_floor(&bp).to_u64().unwrap()).collect())
}

fn from_fp(f: &UniPoly<u64>) -> ZUni {
    UniPoly::new(&Zz, f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

/// Lifts `f ≡ g·h (mod m)` (with `s·g + t·h ≡ 1`, `h` monic) to modulus `m²`.
fn hensel_step(f: &ZUni, g: &ZUni, h: &ZUni, s: &ZUni, t: &ZUni, m: &BigInt) -> (ZUni, ZUni, ZUni, ZUni) {
    let m2 = m * m;
    let e = zmod::sub(f, &zmod::mul(g, h, &m2), &m2);
    let (q, r) = zmod::divrem_monic(&zmod::mul(s, &e, &m2), h, &m2);
    let g2 = zmod::add(g, &zmod::add(&zmod::mul(t, &e, &m2), &zmod::mul(&q, g, &m2), &m2), &m2);
    let h2 = zmod::add(h, &r, &m2);
    let b = zmod::sub(
        &zmod::add(&zmod::mul(s, &g2, &m2), &zmod::mul(t, &h2, &m2), &m2),
        &UniPoly::constant(&Zz, BigInt::one()),
        &m2,
    );
    let (c, d) = zmod::divrem_monic(&zmod::mul(s, &b, &m2), &h2, &m2);
    let s2 = zmod::sub(s, &d, &m2);
    let t2 = zmod::sub(&zmod::sub(t, &zmod::mul(t, &b, &m2), &m2), &zmod::mul(&c, &g2, &m2), &m2);
    (g2, h2, s2, t2)
}

/// Lifts a factorization `f ≡ lc(f)·∏ factors (mod p)` into monic, pairwise
/// coprime factors to monic factors modulo `p^k`. Coefficients are returned
/// in `[0, p^k)`.
pub fn hensel_lift(f: &ZUni, factors: &[UniPoly<u64>], p: u64, k: u32) -> Result<Vec<ZUni>> {
    let fp = Fp::new(p);
    let target = BigInt::from(p).pow(k);
    if factors.len() <= 1 {
        let lc = f.leading_coeff().cloned().unwrap_or_else(BigInt::one);
        let inv = crate::numth::mod_inverse(&lc, &target)?;
        return Ok(vec![zmod::reduce(&univariate::scale(&Zz, f, &inv), &target)]);
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if univariate::gcd(&fp, &factors[i], &factors[j])?.degree() != Some(0) {
                return Err(Error::NotCoprime(p));
            }
        }
    }
    let lc = f.leading_coeff().unwrap().clone();
    let mut current = f.clone();
    let mut out = Vec::with_capacity(factors.len());
    for idx in 0..factors.len() - 1 {
        let h0 = univariate::monic(&fp, &factors[idx]);
        let mut rest = UniPoly::constant(&fp, fp.from_i64(lc.mod_floor(&BigInt::from(p)).to_i64().unwrap()));
        for other in &factors[idx + 1..] {
            rest = univariate::mul(&fp, &rest, other);
        }
        let (one, s0, t0) = univariate::xgcd(&fp, &rest, &h0);
        if one.degree() != Some(0) {
            return Err(Error::NotCoprime(p));
        }
        let (mut g, mut h, mut s, mut t) = (from_fp(&rest), from_fp(&h0), from_fp(&s0), from_fp(&t0));
        let mut m = BigInt::from(p);
        while m < target {
            (g, h, s, t) = hensel_step(&current, &g, &h, &s, &t, &m);
            m = &m * &m;
        }
        out.push(zmod::reduce(&h, &target));
        current = zmod::reduce(&g, &target);
    }
    let inv = crate::numth::mod_inverse(&lc, &target)?;
    out.push(zmod::reduce(&univariate::scale(&Zz, &current, &inv), &target));
    Ok(out)
}

// ---- factorization over ℚ -----------------------------------------------------

fn symmetric(f: &ZUni, m: &BigInt) -> ZUni {
    let half = m / 2;
    UniPoly::new(
        &Zz,
        f.coeffs()
            .iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

/// `2^deg · ‖f‖₂ · |lc(f)|`, rounded up: bounds the coefficients of any
/// factor of `f` multiplied by `lc(f)`.
fn landau_mignotte(f: &ZUni) -> BigInt {
    let sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = sq.sqrt() + 1u32;
    let deg = f.degree().unwrap_or(0);
    (BigInt::one() << deg) * norm * f.leading_coeff().unwrap().abs()
}

/// Smallest odd prime `≥ 17` not dividing `lc(f)` that keeps `f` squarefree.
fn choose_prime(f: &ZUni) -> u64 {
    let lc = f.leading_coeff().unwrap();
    (17u64..)
        .filter(|&p| is_prime(p))
        .find(|&p| {
            !(lc % BigInt::from(p)).is_zero() && is_squarefree_mod_p(&Fp::new(p), &to_fp(f, p))
        })
        .unwrap()
}

fn combinations(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, s, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a primitive squarefree integer polynomial.
fn factor_squarefree_integer(f: &ZUni, seed: u64) -> Result<Vec<ZUni>> {
    let deg = f.degree().unwrap_or(0);
    if deg <= 1 {
        return Ok(vec![primitive_part(f)]);
    }
    let p = choose_prime(f);
    let modular = factor_mod_p(&to_fp(f, p), p, seed)?;
    if modular.len() == 1 {
        return Ok(vec![primitive_part(f)]);
    }
    let bound = landau_mignotte(f) * 2u32;
    let bp = BigInt::from(p);
    let mut k = 1u32;
    while bp.pow(k) <= bound {
        k += 1;
    }
    let modulus = bp.pow(k);
    let lifted = hensel_lift(f, &modular, p, k)?;

    let mut remaining: Vec<ZUni> = lifted;
    let mut f = primitive_part(f);
    let mut found = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let lc = f.leading_coeff().unwrap().clone();
        for subset in combinations(remaining.len(), s) {
            let mut g = UniPoly::constant(&Zz, lc.clone());
            for &i in &subset {
                g = zmod::mul(&g, &remaining[i], &modulus);
            }
            let candidate = primitive_part(&symmetric(&g, &modulus));
            if let Some(q) = exact_div(&f, &candidate) {
                found.push(candidate);
                f = primitive_part(&q);
                let mut idx = 0;
                remaining.retain(|_| {
                    idx += 1;
                    !subset.contains(&(idx - 1))
                });
                continue 'outer;
            }
        }
        s += 1;
    }
    found.push(f);
    Ok(found)
}

/// Complete factorization over ℚ.
pub fn factor_rational(f: &QUni) -> Result<Factorization> {
    factor_rational_seeded(f, 0)
}

/// [`factor_rational`] with an explicit seed for the randomized splitting.
pub fn factor_rational_seeded(f: &QUni, seed: u64) -> Result<Factorization> {
    let Some(lc) = f.leading_coeff().cloned() else {
        return Err(Error::Invalid("cannot factor zero".into()));
    };
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        for g in factor_squarefree_integer(&rational_to_primitive(&part), seed)? {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())).then(a.1.cmp(&b.1))
    });
    let mut unit = lc;
    for (g, m) in &factors {
        let glc = Rational::from_integer(g.leading_coeff().unwrap().clone());
        for _ in 0..*m {
            unit /= &glc;
        }
    }
    Ok(Factorization { unit, factors })
}
