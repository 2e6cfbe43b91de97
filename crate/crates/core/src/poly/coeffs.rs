use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numth::{inv_mod_u64, Rational};

/// Coefficient domain of a polynomial ring.
///
/// Besides plain ring arithmetic every domain knows how to cancel a term
/// during reduction (`cancel`) and how to bring a polynomial into its
/// canonical normalization (`normalize`): monic over a field, primitive with
/// positive leading coefficient over the integers.
pub trait Coeffs: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    /// Reduction scales instead of dividing (coefficients are not a field).
    const FRACTION_FREE: bool = false;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Returns `(s, t)` with `s·c − t·lc = 0`; `s = None` stands for one.
    fn cancel(&self, c: &Self::Elem, lc: &Self::Elem) -> (Option<Self::Elem>, Self::Elem);

    /// Scalar by which to divide a coefficient list to normalize it.
    fn normalizer(&self, coeffs: &[&Self::Elem]) -> Option<Self::Elem>;

    /// Divides `a` by a scalar returned from `normalizer`.
    fn divide_exact(&self, a: &Self::Elem, by: &Self::Elem) -> Self::Elem;

    /// Sign and absolute value for printing; domains without a sign report
    /// every element as non-negative.
    fn display(&self, a: &Self::Elem) -> (bool, String);
}

/// Coefficient fields.
pub trait Field: Coeffs {
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// The prime field `F_p` for a word-sized prime (elements in `[0, p)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!((2..1 << 32).contains(&p), "prime must fit in 32 bits");
        Fp { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        crate::numth::pow_mod(a, e, self.p)
    }
}

impl Coeffs for Fp {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn cancel(&self, c: &u64, lc: &u64) -> (Option<u64>, u64) {
        (None, self.div(c, lc))
    }
    fn normalizer(&self, coeffs: &[&u64]) -> Option<u64> {
        coeffs.first().filter(|c| ***c != 1).map(|c| **c)
    }
    fn divide_exact(&self, a: &u64, by: &u64) -> u64 {
        self.div(a, by)
    }
    fn display(&self, a: &u64) -> (bool, String) {
        (false, a.to_string())
    }
}

impl Field for Fp {
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "division by zero in F_p");
        inv_mod_u64(*a, self.p)
    }
}

/// The rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Qq;

impl Coeffs for Qq {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(n.into())
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn cancel(&self, c: &Rational, lc: &Rational) -> (Option<Rational>, Rational) {
        (None, c / lc)
    }
    fn normalizer(&self, coeffs: &[&Rational]) -> Option<Rational> {
        coeffs.first().filter(|c| !c.is_one()).map(|c| (*c).clone())
    }
    fn divide_exact(&self, a: &Rational, by: &Rational) -> Rational {
        a / by
    }
    fn display(&self, a: &Rational) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }
}

impl Field for Qq {
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
}

/// The integers, used for fraction-free computations standing in for ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Zz;

impl Coeffs for Zz {
    type Elem = BigInt;

    const FRACTION_FREE: bool = true;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        n.into()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigInt) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn cancel(&self, c: &BigInt, lc: &BigInt) -> (Option<BigInt>, BigInt) {
        let g = c.gcd(lc);
        let mut s = lc / &g;
        let mut t = c / &g;
        if s.is_negative() {
            s = -s;
            t = -t;
        }
        if s.is_one() {
            (None, t)
        } else {
            (Some(s), t)
        }
    }
    fn normalizer(&self, coeffs: &[&BigInt]) -> Option<BigInt> {
        let first = coeffs.first()?;
        let mut g = BigInt::zero();
        for c in coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if first.is_negative() {
            g = -g;
        }
        (!g.is_one()).then_some(g)
    }
    fn divide_exact(&self, a: &BigInt, by: &BigInt) -> BigInt {
        a / by
    }
    fn display(&self, a: &BigInt) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let f = Fp::new(7);
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.neg(&3), 4);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.from_i64(-2), 5);
    }

    #[test]
    fn integer_cancel_is_fraction_free() {
        let z = Zz;
        let (s, t) = z.cancel(&BigInt::from(6), &BigInt::from(-4));
        let s = s.unwrap();
        assert_eq!(s, BigInt::from(2));
        assert_eq!(&s * 6 - &t * -4, BigInt::zero());
        assert_eq!(
            z.normalizer(&[&BigInt::from(-4), &BigInt::from(6)]),
            Some(BigInt::from(-2))
        );
    }
}
