//! Monomials, orderings, sparse multivariate polynomials, dense univariate
//! polynomials and the canonical text syntax.

mod coeffs;
mod monomial;
mod polynomial;
mod text;
pub mod univariate;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use coeffs::{Coeffs, Field, Fp, Qq, Zz};
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{Ideal, Poly, PolyRing};
pub use text::{format_ideal_file, format_poly, parse_ideal_file, parse_poly};
pub use univariate::UniPoly;

use crate::error::{Error, Result};
use crate::numth::{rational_mod_p, Rational};

pub type QPoly = Poly<Rational>;
pub type ZPoly = Poly<BigInt>;
pub type FpPoly = Poly<u64>;
pub type QRing = PolyRing<Qq>;

/// Coefficientwise image modulo `p`; fails when `p` divides a denominator.
pub fn reduce_mod_p(f: &QPoly, p: u64) -> Result<FpPoly> {
    f.map_coeffs(|c| {
        let v = rational_mod_p(c, p)?;
        Some((v != 0).then_some(v))
    })
    .ok_or(Error::BadPrime(p))
}

/// Image of an integer polynomial modulo `p`.
pub fn reduce_int_mod_p(f: &ZPoly, p: u64) -> FpPoly {
    let bp = BigInt::from(p);
    f.map_coeffs(|c| {
        let v: u64 = c.mod_floor(&bp).try_into().unwrap();
        Some((v != 0).then_some(v))
    })
    .unwrap()
}

/// Clears denominators and content: the result is a primitive integer
/// polynomial with positive leading coefficient, a rational multiple of `f`.
pub fn to_primitive_integer(f: &QPoly) -> ZPoly {
    let mut lcm = BigInt::one();
    for c in f.coefficients() {
        lcm = lcm.lcm(c.denom());
    }
    let terms: Vec<(Monomial, BigInt)> = f
        .terms()
        .iter()
        .map(|(m, c)| (m.clone(), c.numer() * (&lcm / c.denom())))
        .collect();
    let mut out = Poly::from_sorted(terms);
    let mut g = BigInt::zero();
    for c in out.coefficients() {
        g = g.gcd(c);
    }
    if out.leading_coeff().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        out = out.map_coeffs(|c| Some(Some(c / &g))).unwrap();
    }
    out
}

pub fn integer_to_rational(f: &ZPoly) -> QPoly {
    f.map_coeffs(|c| Some(Some(Rational::from_integer(c.clone())))).unwrap()
}

/// All numerators and denominators occurring in the given polynomials.
pub fn coefficient_integers<'a>(polys: impl IntoIterator<Item = &'a QPoly>) -> Vec<BigInt> {
    let mut out = Vec::new();
    for f in polys {
        for c in f.coefficients() {
            out.push(c.numer().abs());
            out.push(c.denom().clone());
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `r = a₁x₁ + … + a_{n−1}x_{n−1} + x_n` with integer `a_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<i64>,
}

impl LinearForm {
    /// `coeffs` holds `a₁ … a_{n−1}`.
    pub fn new(coeffs: Vec<i64>) -> Self {
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len() + 1
    }

    pub fn to_poly<C: Coeffs>(&self, ring: &PolyRing<C>) -> Poly<C::Elem> {
        assert_eq!(ring.nvars(), self.nvars(), "linear form has the wrong arity");
        let n = ring.nvars();
        let k = ring.coeffs();
        let mut terms: Vec<(Monomial, C::Elem)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| (Monomial::var(n, i, 1), k.from_i64(a)))
            .collect();
        terms.push((Monomial::var(n, n - 1, 1), k.one()));
        ring.from_terms(terms)
    }
}

/// `F(r)` for a univariate `F`, expanded by Horner's rule.
pub fn substitute_linear<C: Coeffs>(
    ring: &PolyRing<C>,
    f: &UniPoly<C::Elem>,
    r: &Poly<C::Elem>,
) -> Poly<C::Elem> {
    let mut acc = ring.zero();
    for c in f.coeffs().iter().rev() {
        acc = ring.mul(&acc, r);
        acc = ring.add(&acc, &ring.constant(c.clone()));
    }
    acc
}

/// Embeds a univariate polynomial as a polynomial in variable `var`.
pub fn univariate_to_poly<C: Coeffs>(ring: &PolyRing<C>, f: &UniPoly<C::Elem>, var: usize) -> Poly<C::Elem> {
    let n = ring.nvars();
    let terms = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !ring.coeffs().is_zero(c))
        .map(|(e, c)| (Monomial::var(n, var, e as u32), c.clone()))
        .collect();
    ring.from_terms(terms)
}

/// Reads a polynomial involving only variable `var` as a univariate.
pub fn poly_to_univariate<C: Coeffs>(ring: &PolyRing<C>, f: &Poly<C::Elem>, var: usize) -> Option<UniPoly<C::Elem>> {
    let deg = f.terms().iter().map(|t| t.0.exponent(var)).max().unwrap_or(0) as usize;
    let mut coeffs = vec![ring.coeffs().zero(); deg + 1];
    for (m, c) in f.terms() {
        if m.degree() != m.exponent(var) {
            return None;
        }
        coeffs[m.exponent(var) as usize] = c.clone();
    }
    Some(UniPoly::new(ring.coeffs(), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn reduce_mod_p_examples() {
        let r = PolyRing::new(&["x"], MonomialOrder::DegRevLex, Qq);
        let f = parse_poly(&r, "1/2*x + 3").unwrap();
        let rp = r.with_coeffs(Fp::new(5));
        assert_eq!(reduce_mod_p(&f, 5).unwrap(), parse_poly_fp(&rp, &[(1, 3), (0, 3)]));
        let g = parse_poly(&r, "x + 5").unwrap();
        assert_eq!(reduce_mod_p(&g, 5).unwrap(), parse_poly_fp(&rp, &[(1, 1)]));
        let h = parse_poly(&r, "1/5*x").unwrap();
        assert_eq!(reduce_mod_p(&h, 5), Err(Error::BadPrime(5)));
    }

    fn parse_poly_fp(r: &PolyRing<Fp>, terms: &[(u32, u64)]) -> FpPoly {
        r.from_terms(terms.iter().map(|&(e, c)| (Monomial::var(1, 0, e), c)).collect())
    }

    #[test]
    fn reduction_is_a_homomorphism() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::DegRevLex, Qq);
        let f = parse_poly(&r, "2/3*x^2 - 5*y + 1/7").unwrap();
        let g = parse_poly(&r, "x*y - 4/11").unwrap();
        let p = 101;
        let rp = r.with_coeffs(Fp::new(p));
        assert_eq!(
            reduce_mod_p(&r.mul(&f, &g), p).unwrap(),
            rp.mul(&reduce_mod_p(&f, p).unwrap(), &reduce_mod_p(&g, p).unwrap())
        );
    }

    #[test]
    fn primitive_integer_form() {
        let r = PolyRing::new(&["x"], MonomialOrder::DegRevLex, Qq);
        let f = parse_poly(&r, "-1/2*x + 3/4").unwrap();
        let z = to_primitive_integer(&f);
        let coeffs: Vec<BigInt> = z.coefficients().cloned().collect();
        assert_eq!(coeffs, vec![BigInt::from(2), BigInt::from(-3)]);
        assert_eq!(integer_to_rational(&z).leading_coeff().unwrap(), &q(2, 1));
    }

    #[test]
    fn substitute_linear_examples() {
        let r1 = PolyRing::new(&["x"], MonomialOrder::DegRevLex, Qq);
        let t2m1 = UniPoly::new(&Qq, vec![q(-1, 1), q(0, 1), q(1, 1)]);
        let x = LinearForm::new(vec![]).to_poly(&r1);
        assert_eq!(substitute_linear(&r1, &t2m1, &x), parse_poly(&r1, "x^2 - 1").unwrap());

        let r2 = PolyRing::new(&["x", "y"], MonomialOrder::DegRevLex, Qq);
        let form = LinearForm::new(vec![2]).to_poly(&r2);
        let t = UniPoly::new(&Qq, vec![q(0, 1), q(1, 1)]);
        assert_eq!(substitute_linear(&r2, &t, &form), parse_poly(&r2, "2*x + y").unwrap());
        let t2 = UniPoly::new(&Qq, vec![q(0, 1), q(0, 1), q(1, 1)]);
        let xy = LinearForm::new(vec![1]).to_poly(&r2);
        assert_eq!(
            substitute_linear(&r2, &t2, &xy),
            parse_poly(&r2, "x^2 + 2*x*y + y^2").unwrap()
        );
    }
}
