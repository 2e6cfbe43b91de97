use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial. The total degree is cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { deg: 0, exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let deg = exps
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .expect("exponent overflow");
        Monomial { deg, exps: SmallVec::from_slice(exps) }
    }

    /// The monomial `x_var^exp` in `nvars` variables.
    pub fn var(nvars: usize, var: usize, exp: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[var] = exp;
        m.deg = exp;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            deg: self.deg.checked_add(other.deg).expect("exponent overflow"),
            exps,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { deg: other.deg - self.deg, exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let deg = exps.iter().sum();
        Monomial { deg, exps }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable this monomial is a pure power of.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Same monomial embedded with `extra` new variables prepended.
    pub fn prepend_vars(&self, extra: usize) -> Monomial {
        let mut exps: SmallVec<[u32; 8]> = SmallVec::from_elem(0, extra);
        exps.extend_from_slice(&self.exps);
        Monomial { deg: self.deg, exps }
    }

    /// Drops the first `count` variables; their exponents must be zero.
    pub fn drop_leading_vars(&self, count: usize) -> Option<Monomial> {
        if self.exps[..count].iter().any(|&e| e != 0) {
            return None;
        }
        Some(Monomial { deg: self.deg, exps: SmallVec::from_slice(&self.exps[count..]) })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Global monomial orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Degree reverse lexicographical (`dp`).
    DegRevLex,
    /// Lexicographical (`lp`).
    Lex,
    /// Elimination ordering: `dp` on the first `k` variables, ties broken by
    /// `dp` on the remaining ones.
    Block(usize),
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn name(&self) -> String {
        match self {
            MonomialOrder::DegRevLex => "dp".into(),
            MonomialOrder::Lex => "lp".into(),
            MonomialOrder::Block(k) => format!("block({k})"),
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "dp" => Some(MonomialOrder::DegRevLex),
            "lp" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }

    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a.deg.cmp(&b.deg).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block(k) => degrevlex(&a.exps[..*k], &b.exps[..*k])
                .then_with(|| degrevlex(&a.exps[*k..], &b.exps[*k..])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Ordering::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_breaks_ties_from_the_last_variable() {
        // x²y > xy²
        assert_eq!(MonomialOrder::DegRevLex.compare(&m(&[2, 1]), &m(&[1, 2])), Greater);
        // xz < y² in 3 variables: z has the larger exponent at the last index
        assert_eq!(MonomialOrder::DegRevLex.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Less);
        assert_eq!(MonomialOrder::DegRevLex.compare(&m(&[0, 0, 1]), &m(&[1, 1, 0])), Less);
    }

    #[test]
    fn lex_ignores_degree() {
        assert_eq!(MonomialOrder::Lex.compare(&m(&[1, 0]), &m(&[0, 9])), Greater);
    }

    #[test]
    fn reflexive() {
        for o in [MonomialOrder::DegRevLex, MonomialOrder::Lex, MonomialOrder::Block(1)] {
            assert_eq!(o.compare(&m(&[3, 1, 4]), &m(&[3, 1, 4])), Equal);
        }
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Block(1);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Greater);
        assert_eq!(o.compare(&m(&[0, 2, 1]), &m(&[0, 1, 2])), Greater);
    }

    #[test]
    fn divisibility_helpers() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), Some(m(&[1, 0, 1])));
        assert_eq!(b.quotient_of(&a), None);
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 1])));
        assert_eq!(m(&[0, 3, 0]).pure_power_var(), Some(1));
        assert_eq!(m(&[1, 3, 0]).pure_power_var(), None);
    }
}
