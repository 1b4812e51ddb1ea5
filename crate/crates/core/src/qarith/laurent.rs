//! Sparse Laurent polynomials in `q` over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A finite sum `Σ c_e q^e` with `e ∈ Z`, `c_e ∈ Q`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(exp: i32, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// `q^exp`
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(terms: I) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// Convenience constructor with small integer coefficients.
    pub fn from_int_terms(terms: &[(i32, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(e, c)| (e, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    pub(crate) fn add_term(&mut self, exp: i32, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i32) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the highest power of `q`.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    /// Coefficient of the lowest power of `q`.
    pub fn trailing_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next()
    }

    /// True when the polynomial is `c·q^e` for a single term.
    pub fn as_monomial(&self) -> Option<(i32, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, c)| (e, c))
        } else {
            None
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if k == 0 {
            return self.clone();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// The substitution `q ↦ q^k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        assert!(k != 0, "q -> q^0 is not a ring endomorphism of Laurent polynomials");
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e * k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Dense coefficient vector of `q^{-min_exp} · self`, lowest degree first.
    pub(crate) fn to_dense(&self) -> (i32, Vec<BigRational>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (&e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub(crate) fn from_dense(shift: i32, coeffs: &[BigRational]) -> Self {
        LaurentPoly {
            terms: coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (shift + i as i32, c.clone()))
                .collect(),
        }
    }

    /// Exact division; `None` if `divisor` does not divide `self` in `Q[q, q^{-1}]`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!divisor.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (ns, n) = self.to_dense();
        let (ds, d) = divisor.to_dense();
        let (quot, rem) = dense::div_rem(&n, &d);
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(LaurentPoly::from_dense(ns - ds, &quot))
    }

    /// Evaluates at `q = 1` (sum of coefficients).
    pub fn eval_at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let unit = abs.is_one();
            if e == 0 {
                write!(f, "{}", abs)?;
                continue;
            }
            if !unit {
                write!(f, "{}*", abs)?;
            }
            if e == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{}", e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending powers of `q`, e.g. `q^-2 + 1 + q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Dense univariate polynomial helpers over `Q`, lowest degree first.
pub(crate) mod dense {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    pub fn trim(v: &mut Vec<BigRational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn div_rem(n: &[BigRational], d: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut d = d.to_vec();
        trim(&mut d);
        assert!(!d.is_empty(), "polynomial division by zero");
        let mut r = n.to_vec();
        trim(&mut r);
        if r.len() < d.len() {
            return (Vec::new(), r);
        }
        let dl = d.len();
        let lc_inv = BigRational::one() / d[dl - 1].clone();
        let mut q = vec![BigRational::zero(); r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let c = &r[i + dl - 1] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        r.truncate(dl - 1);
        trim(&mut r);
        (q, r)
    }

    /// Monic gcd, computed with a primitive integer remainder sequence.
    pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut a = primitive(a);
        let mut b = primitive(b);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            if b.len() == 1 {
                return vec![BigRational::one()];
            }
            let r = primitive_int(prem(a, &b));
            a = b;
            b = r;
        }
        let lc = BigRational::from_integer(a.last().cloned().unwrap_or_else(BigInt::one));
        a.into_iter().map(|c| BigRational::from_integer(c) / &lc).collect()
    }

    /// Integer multiple of `v` with coprime entries.
    fn primitive(v: &[BigRational]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        trim(&mut v);
        let mut l = BigInt::one();
        for c in &v {
            l = l.lcm(c.denom());
        }
        primitive_int(v.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect())
    }

    fn primitive_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        let mut g = BigInt::zero();
        for c in &v {
            g = g.gcd(c);
            if g.is_one() {
                return v;
            }
        }
        if !g.is_zero() {
            for c in v.iter_mut() {
                *c /= &g;
            }
        }
        v
    }

    /// Pseudo-remainder of `a` by `b` over the integers, `deg a ≥ deg b`.
    fn prem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
        let db = b.len() - 1;
        let lb = &b[db];
        while a.len() > db && !a.is_empty() {
            let top = a.len() - 1;
            let la = a[top].clone();
            let off = top - db;
            for c in a.iter_mut() {
                *c *= lb;
            }
            for (j, bj) in b.iter().enumerate() {
                a[off + j] -= &la * bj;
            }
            while a.last().is_some_and(|c| c.is_zero()) {
                a.pop();
            }
        }
        a
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_cancels_terms() {
        let a = LaurentPoly::from_int_terms(&[(-1, 1), (1, 1)]);
        let b = LaurentPoly::from_int_terms(&[(-1, 1), (1, -1)]);
        assert_eq!(&a + &b, LaurentPoly::from_int_terms(&[(-1, 2)]));
        assert_eq!(&a - &a, LaurentPoly::zero());
        assert_eq!(&a * &b, LaurentPoly::from_int_terms(&[(-2, 1), (2, -1)]));
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::from_int_terms(&[(-1, 1), (1, 1)]);
        let b = LaurentPoly::from_int_terms(&[(-2, 1), (0, 1), (2, 1)]);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        let c = LaurentPoly::from_int_terms(&[(0, 1), (1, 1), (3, 1)]);
        assert_eq!(b.div_exact(&c), None);
    }

    #[test]
    fn display_is_ascending() {
        let a = LaurentPoly::from_int_terms(&[(2, 1), (0, 1), (-2, -3)]);
        assert_eq!(a.to_string(), "-3*q^-2 + 1 + q^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
