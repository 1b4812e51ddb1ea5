//! The field `Q(q)` as reduced quotients of Laurent polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::{dense, LaurentPoly};

/// An element `num/den` of `Q(q)` in canonical form.
///
/// Canonical form: `den` is an honest polynomial in `q` with nonzero constant
/// term, integer coefficients of content 1 and a positive leading coefficient,
/// and `gcd(num, den) = 1`. Zero is `0/1`. Equal values therefore compare equal
/// structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    /// `q^e`
    pub fn q_pow(e: i32) -> Self {
        Self::from_laurent(LaurentPoly::q_pow(e))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// Builds `num/den` and brings it to canonical form.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let ds = den.min_exp().unwrap();
        let den = den.shift(-ds);
        let num = num.shift(-ds);
        if den.num_terms() == 1 {
            // den is a nonzero constant
            let c = den.coeff(0);
            return RationalFunction {
                num: num.scale(&(BigRational::one() / c)),
                den: LaurentPoly::one(),
            };
        }
        let g = poly_gcd(&num, &den);
        if g.len() > 1 {
            let num = divide(&num, &g);
            let den = divide(&den, &g);
            return Self::from_coprime(num, den);
        }
        Self::from_coprime(num, den)
    }

    /// Canonical form of `num/den` for coprime `num`, `den` with `den(0) ≠ 0`.
    fn from_coprime(num: LaurentPoly, den: LaurentPoly) -> Self {
        let ds = den.min_exp().unwrap();
        let (_, dd) = den.to_dense();
        let factor = integer_normalizer(&dd);
        if factor.is_one() {
            return RationalFunction {
                num: num.shift(-ds),
                den: den.shift(-ds),
            };
        }
        RationalFunction {
            num: num.shift(-ds).scale(&factor),
            den: den.shift(-ds).scale(&factor),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// Returns the Laurent polynomial if the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in Q(q)");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = RationalFunction::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Multiplies by `q^k` without recomputing any gcd.
    pub fn shift(&self, k: i32) -> Self {
        RationalFunction {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        if let Some((e, c)) = p.as_monomial() {
            return self.shift(e).scale(c);
        }
        RationalFunction::new(&self.num * p, self.den.clone())
    }

    /// The substitution `q ↦ q^k`, `k ≠ 0`.
    pub fn substitute_power(&self, k: i32) -> Self {
        RationalFunction::new(self.num.substitute_power(k), self.den.substitute_power(k))
    }
}

/// Monic gcd of the polynomial parts of `a` and `b` (powers of `q` ignored),
/// lowest degree first.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Vec<BigRational> {
    if a.num_terms() <= 1 || b.num_terms() <= 1 {
        return vec![BigRational::one()];
    }
    let (_, a) = a.to_dense();
    let (_, b) = b.to_dense();
    dense::gcd(&a, &b)
}

/// Exact quotient of `p` by the dense polynomial `g`.
fn divide(p: &LaurentPoly, g: &[BigRational]) -> LaurentPoly {
    let (lo, pd) = p.to_dense();
    let (q, r) = dense::div_rem(&pd, g);
    debug_assert!(r.is_empty());
    LaurentPoly::from_dense(lo, &q)
}

/// Rational factor turning `coeffs` into a primitive integer vector with positive leading entry.
fn integer_normalizer(coeffs: &[BigRational]) -> BigRational {
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let mut content = BigInt::zero();
    for c in coeffs {
        let scaled = (c * BigRational::from_integer(lcm.clone())).to_integer();
        content = content.gcd(&scaled);
    }
    let lead_neg = coeffs.last().is_some_and(|c| c.is_negative());
    let mut f = BigRational::new(lcm, content);
    if lead_neg {
        f = -f;
    }
    f
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() == 1 {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RationalFunction::from_laurent(&self.num + &rhs.num);
            }
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        // lcm of denominators keeps degrees down compared to the plain product
        let (_, d1) = self.den.to_dense();
        let (_, d2) = rhs.den.to_dense();
        let g = dense::gcd(&d1, &d2);
        let (c1, _) = dense::div_rem(&d2, &g);
        let (c2, _) = dense::div_rem(&d1, &g);
        let c1 = LaurentPoly::from_dense(0, &c1);
        let c2 = LaurentPoly::from_dense(0, &c2);
        let den = &self.den * &c1;
        let num = &(&self.num * &c1) + &(&rhs.num * &c2);
        RationalFunction::new(num, den)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if rhs.den.is_one() {
            return self.mul_laurent(&rhs.num);
        }
        if self.den.is_one() {
            return rhs.mul_laurent(&self.num);
        }
        // cross-cancel so only the small gcds are computed
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let (n1, d2) = if g1.len() > 1 {
            (divide(&self.num, &g1), divide(&rhs.den, &g1))
        } else {
            (self.num.clone(), rhs.den.clone())
        };
        let (n2, d1) = if g2.len() > 1 {
            (divide(&rhs.num, &g2), divide(&self.den, &g2))
        } else {
            (rhs.num.clone(), self.den.clone())
        };
        RationalFunction::from_coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero in Q(q)");
        if self.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        RationalFunction::from_laurent(p)
    }
}

/// Running sum over the lcm of the denominators seen so far, reduced once at the end.
#[derive(Clone, Debug)]
pub(crate) struct SumAcc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for SumAcc {
    fn default() -> Self {
        SumAcc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }
}

impl SumAcc {
    pub(crate) fn add(&mut self, x: &RationalFunction) {
        if x.is_zero() {
            return;
        }
        if self.den == x.den {
            self.num = &self.num + &x.num;
            return;
        }
        if x.den.is_one() {
            self.num = &self.num + &(&x.num * &self.den);
            return;
        }
        if self.den.is_one() {
            self.num = &(&self.num * &x.den) + &x.num;
            self.den = x.den.clone();
            return;
        }
        let (_, d1) = self.den.to_dense();
        let (_, d2) = x.den.to_dense();
        let g = dense::gcd(&d1, &d2);
        let (c1, _) = dense::div_rem(&d2, &g);
        let (c2, _) = dense::div_rem(&d1, &g);
        let c1 = LaurentPoly::from_dense(0, &c1);
        let c2 = LaurentPoly::from_dense(0, &c2);
        self.num = &(&self.num * &c1) + &(&x.num * &c2);
        self.den = &self.den * &c1;
    }

    pub(crate) fn finish(self) -> RationalFunction {
        RationalFunction::new(self.num, self.den)
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = SumAcc::default();
        for x in iter {
            acc.add(&x);
        }
        acc.finish()
    }
}

impl std::iter::Product for RationalFunction {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(RationalFunction::one(), |acc, x| &acc * &x)
    }
}
