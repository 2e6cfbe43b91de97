//! Dense univariate polynomials (coefficients stored lowest degree first).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::coeffs::{Coeffs, Field, Qq};
use crate::error::{Error, Result};
use crate::numth::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> UniPoly<E> {
    /// Trailing zeros are stripped.
    pub fn new<C: Coeffs<Elem = E>>(k: &C, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant<C: Coeffs<Elem = E>>(k: &C, c: E) -> Self {
        Self::new(k, vec![c])
    }

    /// The monomial `T`.
    pub fn x<C: Coeffs<Elem = E>>(k: &C) -> Self {
        UniPoly { coeffs: vec![k.zero(), k.one()] }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

pub fn add<C: Coeffs>(k: &C, f: &UniPoly<C::Elem>, g: &UniPoly<C::Elem>) -> UniPoly<C::Elem> {
    let n = f.coeffs.len().max(g.coeffs.len());
    let zero = k.zero();
    let coeffs = (0..n)
        .map(|i| k.add(f.coeffs.get(i).unwrap_or(&zero), g.coeffs.get(i).unwrap_or(&zero)))
        .collect();
    UniPoly::new(k, coeffs)
}

pub fn sub<C: Coeffs>(k: &C, f: &UniPoly<C::Elem>, g: &UniPoly<C::Elem>) -> UniPoly<C::Elem> {
    let n = f.coeffs.len().max(g.coeffs.len());
    let zero = k.zero();
    let coeffs = (0..n)
        .map(|i| k.sub(f.coeffs.get(i).unwrap_or(&zero), g.coeffs.get(i).unwrap_or(&zero)))
        .collect();
    UniPoly::new(k, coeffs)
}

pub fn mul<C: Coeffs>(k: &C, f: &UniPoly<C::Elem>, g: &UniPoly<C::Elem>) -> UniPoly<C::Elem> {
    if f.is_zero() || g.is_zero() {
        return UniPoly::zero();
    }
    let mut out = vec![k.zero(); f.coeffs.len() + g.coeffs.len() - 1];
    for (i, a) in f.coeffs.iter().enumerate() {
        if k.is_zero(a) {
            continue;
        }
        for (j, b) in g.coeffs.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(a, b));
        }
    }
    UniPoly::new(k, out)
}

pub fn scale<C: Coeffs>(k: &C, f: &UniPoly<C::Elem>, c: &C::Elem) -> UniPoly<C::Elem> {
    UniPoly::new(k, f.coeffs.iter().map(|a| k.mul(a, c)).collect())
}

pub fn pow<C: Coeffs>(k: &C, f: &UniPoly<C::Elem>, e: u32) -> UniPoly<C::Elem> {
    let mut acc = UniPoly::constant(k, k.one());
    for _ in 0..e {
        acc = mul(k, &acc, f);
    }
    acc
}

pub fn derivative<C: Coeffs>(k: &C, f: &UniPoly<C::Elem>) -> UniPoly<C::Elem> {
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| k.mul(&k.from_i64(i as i64), c))
        .collect();
    UniPoly::new(k, coeffs)
}

pub fn eval<C: Coeffs>(k: &C, f: &UniPoly<C::Elem>, x: &C::Elem) -> C::Elem {
    f.coeffs.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem<C: Field>(
    k: &C,
    f: &UniPoly<C::Elem>,
    g: &UniPoly<C::Elem>,
) -> (UniPoly<C::Elem>, UniPoly<C::Elem>) {
    let dg = g.degree().expect("division by the zero polynomial");
    let Some(df) = f.degree() else {
        return (UniPoly::zero(), UniPoly::zero());
    };
    if df < dg {
        return (UniPoly::zero(), f.clone());
    }
    let inv_lc = k.inv(g.leading_coeff().unwrap());
    let mut rem = f.coeffs.clone();
    let mut quot = vec![k.zero(); df - dg + 1];
    for i in (0..=df - dg).rev() {
        let c = k.mul(&rem[i + dg], &inv_lc);
        if k.is_zero(&c) {
            continue;
        }
        for (j, b) in g.coeffs.iter().enumerate() {
            rem[i + j] = k.sub(&rem[i + j], &k.mul(&c, b));
        }
        quot[i] = c;
    }
    rem.truncate(dg);
    (UniPoly::new(k, quot), UniPoly::new(k, rem))
}

pub fn rem<C: Field>(k: &C, f: &UniPoly<C::Elem>, g: &UniPoly<C::Elem>) -> UniPoly<C::Elem> {
    divrem(k, f, g).1
}

pub fn monic<C: Field>(k: &C, f: &UniPoly<C::Elem>) -> UniPoly<C::Elem> {
    match f.leading_coeff() {
        Some(lc) if !k.is_one(lc) => scale(k, f, &k.inv(lc)),
        _ => f.clone(),
    }
}

/// Monic gcd by the Euclidean algorithm.
pub fn gcd<C: Field>(k: &C, f: &UniPoly<C::Elem>, g: &UniPoly<C::Elem>) -> Result<UniPoly<C::Elem>> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = rem(k, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    Ok(monic(k, &a))
}

/// Extended gcd: `(g, s, t)` with `s·f + t·h = g`, `g` monic.
pub fn xgcd<C: Field>(
    k: &C,
    f: &UniPoly<C::Elem>,
    h: &UniPoly<C::Elem>,
) -> (UniPoly<C::Elem>, UniPoly<C::Elem>, UniPoly<C::Elem>) {
    let one = UniPoly::constant(k, k.one());
    let (mut r0, mut r1) = (f.clone(), h.clone());
    let (mut s0, mut s1) = (one.clone(), UniPoly::zero());
    let (mut t0, mut t1) = (UniPoly::zero(), one);
    while !r1.is_zero() {
        let (q, r) = divrem(k, &r0, &r1);
        let s = sub(k, &s0, &mul(k, &q, &s1));
        let t = sub(k, &t0, &mul(k, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.leading_coeff() {
        Some(lc) => {
            let inv = k.inv(lc);
            (scale(k, &r0, &inv), scale(k, &s0, &inv), scale(k, &t0, &inv))
        }
        None => (r0, s0, t0),
    }
}

/// `base^exp mod modulus`.
pub fn pow_mod<C: Field>(
    k: &C,
    base: &UniPoly<C::Elem>,
    mut exp: u128,
    modulus: &UniPoly<C::Elem>,
) -> UniPoly<C::Elem> {
    let mut acc = rem(k, &UniPoly::constant(k, k.one()), modulus);
    let mut b = rem(k, base, modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(k, &mul(k, &acc, &b), modulus);
        }
        exp >>= 1;
        if exp > 0 {
            b = rem(k, &mul(k, &b, &b), modulus);
        }
    }
    acc
}

/// `f / gcd(f, f')`, made monic. Over a prime field this is only meaningful
/// when the characteristic exceeds the degree.
pub fn squarefree_part<C: Field>(k: &C, f: &UniPoly<C::Elem>) -> Result<UniPoly<C::Elem>> {
    let g = gcd(k, f, &derivative(k, f))?;
    Ok(monic(k, &divrem(k, f, &g).0))
}

// ---- integer polynomials ------------------------------------------------

pub type ZUni = UniPoly<BigInt>;
pub type QUni = UniPoly<Rational>;

pub fn content(f: &ZUni) -> BigInt {
    f.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(f: &ZUni) -> ZUni {
    let mut c = content(f);
    if c.is_zero() {
        return f.clone();
    }
    if f.leading_coeff().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    UniPoly { coeffs: f.coeffs.iter().map(|a| a / &c).collect() }
}

/// Pseudo-remainder `prem(f, g) = lc(g)^(deg f − deg g + 1)·f mod g`.
pub fn pseudo_rem(f: &ZUni, g: &ZUni) -> ZUni {
    let dg = g.degree().expect("pseudo-division by zero");
    let lc = g.leading_coeff().unwrap().clone();
    let mut r = f.coeffs.clone();
    let Some(df) = f.degree() else {
        return UniPoly::zero();
    };
    if df < dg {
        return f.clone();
    }
    let mut steps = df - dg + 1;
    while r.len() > dg && !r.is_empty() {
        let d = r.len() - 1;
        let lr = r[d].clone();
        for c in r.iter_mut() {
            *c *= &lc;
        }
        for (j, b) in g.coeffs.iter().enumerate() {
            r[d - dg + j] -= &lr * b;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        steps -= 1;
    }
    if steps > 0 {
        let factor = num_traits::pow(lc, steps);
        for c in r.iter_mut() {
            *c *= &factor;
        }
    }
    UniPoly::new(&super::coeffs::Zz, r)
}

/// Exact division of integer polynomials; `None` if `g` does not divide `f`
/// over ℤ.
pub fn exact_div(f: &ZUni, g: &ZUni) -> Option<ZUni> {
    let dg = g.degree()?;
    let Some(df) = f.degree() else {
        return Some(UniPoly::zero());
    };
    if df < dg {
        return None;
    }
    let lc = g.leading_coeff().unwrap();
    let mut r = f.coeffs.clone();
    let mut q = vec![BigInt::zero(); df - dg + 1];
    for i in (0..=df - dg).rev() {
        let (c, rem) = r[i + dg].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, b) in g.coeffs.iter().enumerate() {
            r[i + j] -= &c * b;
        }
        q[i] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| UniPoly::new(&super::coeffs::Zz, q))
}

/// Primitive gcd over ℤ by the subresultant remainder sequence.
pub fn subresultant_gcd(f: &ZUni, g: &ZUni) -> Result<ZUni> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroGcd);
    }
    if f.is_zero() {
        return Ok(primitive_part(g));
    }
    if g.is_zero() {
        return Ok(primitive_part(f));
    }
    let cont = content(f).gcd(&content(g));
    let (mut a, mut b) = if f.degree() >= g.degree() {
        (primitive_part(f), primitive_part(g))
    } else {
        (primitive_part(g), primitive_part(f))
    };
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = pseudo_rem(&a, &b);
        if r.is_zero() {
            break;
        }
        if r.degree() == Some(0) {
            return Ok(UniPoly { coeffs: vec![cont] });
        }
        let divisor = &gg * num_traits::pow(h.clone(), delta);
        a = b;
        b = UniPoly { coeffs: r.coeffs.iter().map(|c| c / &divisor).collect() };
        gg = a.leading_coeff().unwrap().clone();
        // h = h^(1−δ)·g^δ
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(gg.clone(), delta) / num_traits::pow(h, delta - 1)
        };
    }
    let pp = primitive_part(&b);
    Ok(UniPoly { coeffs: pp.coeffs.iter().map(|c| c * &cont).collect() })
}

/// Primitive integer polynomial with the same roots as a rational one.
pub fn rational_to_primitive(f: &QUni) -> ZUni {
    let mut l = BigInt::one();
    for c in &f.coeffs {
        l = l.lcm(c.denom());
    }
    let z = UniPoly { coeffs: f.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect() };
    primitive_part(&z)
}

pub fn integer_to_rational(f: &ZUni) -> QUni {
    UniPoly { coeffs: f.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect() }
}

/// Monic gcd over ℚ, computed fraction-free.
pub fn gcd_rational(f: &QUni, g: &QUni) -> Result<QUni> {
    let z = subresultant_gcd(&rational_to_primitive(f), &rational_to_primitive(g))?;
    Ok(monic(&Qq, &integer_to_rational(&z)))
}

/// Monic squarefree part over ℚ.
pub fn squarefree_part_rational(f: &QUni) -> Result<QUni> {
    let g = gcd_rational(f, &derivative(&Qq, f))?;
    Ok(monic(&Qq, &divrem(&Qq, f, &g).0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Fp;
    use proptest::prelude::*;

    fn qu(c: &[i64]) -> QUni {
        UniPoly::new(&Qq, c.iter().map(|&a| Qq.from_i64(a)).collect())
    }

    fn zu(c: &[i64]) -> ZUni {
        UniPoly::new(&super::super::coeffs::Zz, c.iter().map(|&a| BigInt::from(a)).collect())
    }

    #[test]
    fn squarefree_examples() {
        // (x−1)²(x+2) = x³ − 3x + 2
        let f = qu(&[2, -3, 0, 1]);
        assert_eq!(squarefree_part_rational(&f).unwrap(), qu(&[-2, 1, 1]));
        assert_eq!(squarefree_part_rational(&qu(&[0, 0, 0, 1])).unwrap(), qu(&[0, 1]));
        // gcd(f, f') = x − 1 and the product recovers f
        let g = gcd_rational(&f, &derivative(&Qq, &f)).unwrap();
        assert_eq!(g, qu(&[-1, 1]));
        assert_eq!(mul(&Qq, &g, &squarefree_part_rational(&f).unwrap()), f);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_rational(&qu(&[-1, 0, 1]), &qu(&[-1, 1])).unwrap(), qu(&[-1, 1]));
        assert_eq!(gcd(&Qq, &qu(&[]), &qu(&[])), Err(Error::ZeroGcd));
        assert_eq!(gcd_rational(&qu(&[3]), &qu(&[0, 5])).unwrap(), qu(&[1]));
        let k = Fp::new(7);
        let f = UniPoly::new(&k, vec![6, 0, 1]); // x² − 1
        let g = UniPoly::new(&k, vec![1, 1]); // x + 1
        assert_eq!(gcd(&k, &f, &g).unwrap(), g);
    }

    #[test]
    fn subresultant_handles_classic_example() {
        // Knuth's example: gcd is 1
        let f = zu(&[-5, 2, 8, -3, -3, 0, 1, 0, 1]);
        let g = zu(&[21, -9, -4, 0, 5, 0, 3]);
        assert_eq!(subresultant_gcd(&f, &g).unwrap(), zu(&[1]));
    }

    #[test]
    fn pseudo_remainder_and_exact_division() {
        let f = zu(&[-1, 0, 1]);
        let g = zu(&[1, 2]);
        // 4(x² − 1) = (2x − 1)(2x + 1) − 3
        assert_eq!(pseudo_rem(&f, &g), zu(&[-3]));
        assert_eq!(exact_div(&zu(&[-1, 0, 4]), &g), Some(zu(&[-1, 2])));
        assert_eq!(exact_div(&f, &g), None);
    }

    #[test]
    fn xgcd_bezout() {
        let k = Fp::new(101);
        let f = UniPoly::new(&k, vec![3, 0, 1, 5]);
        let h = UniPoly::new(&k, vec![7, 2]);
        let (g, s, t) = xgcd(&k, &f, &h);
        assert_eq!(g, UniPoly::constant(&k, 1));
        assert_eq!(add(&k, &mul(&k, &s, &f), &mul(&k, &t, &h)), g);
    }

    proptest! {
        #[test]
        fn squarefree_times_gcd_recovers_input(
            a in proptest::collection::vec(-4i64..5, 1..4),
            b in proptest::collection::vec(-4i64..5, 1..3),
        ) {
            let fa = qu(&[a.clone(), vec![1]].concat());
            let fb = qu(&[b.clone(), vec![1]].concat());
            let f = mul(&Qq, &mul(&Qq, &fa, &fa), &fb);
            let sq = squarefree_part_rational(&f).unwrap();
            let g = gcd_rational(&f, &derivative(&Qq, &f)).unwrap();
            prop_assert_eq!(mul(&Qq, &sq, &g), f);
            prop_assert_eq!(gcd_rational(&sq, &derivative(&Qq, &sq)).unwrap(), qu(&[1]));
        }

        #[test]
        fn subresultant_matches_field_gcd(
            a in proptest::collection::vec(-6i64..7, 1..5),
            b in proptest::collection::vec(-6i64..7, 1..5),
            c in proptest::collection::vec(-6i64..7, 1..3),
        ) {
            let common = qu(&[c, vec![1]].concat());
            let f = mul(&Qq, &qu(&a), &common);
            let g = mul(&Qq, &qu(&b), &common);
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!(gcd_rational(&f, &g).unwrap(), gcd(&Qq, &f, &g).unwrap());
        }
    }
}
