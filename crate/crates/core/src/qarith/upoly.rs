//! Laurent polynomials in an auxiliary variable `u = q^{-p}` over `Q(q)`.
//!
//! Weight-dependent coefficients of tensor-module vectors live here. A value
//! is *bounded* when it only involves `t = u^2` with nonnegative exponents, and
//! *asymptotically zero* when it is bounded with vanishing `u^0` coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    terms: BTreeMap<i32, RationalFunction>,
}

impl UPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(RationalFunction::one())
    }

    pub fn constant(c: RationalFunction) -> Self {
        Self::monomial(0, c)
    }

    /// `c · u^exp`
    pub fn monomial(exp: i32, c: RationalFunction) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        UPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, RationalFunction)>>(terms: I) -> Self {
        let mut out = UPoly::zero();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, exp: i32, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> RationalFunction {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &RationalFunction)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// No `u` dependence at all.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// All `u`-exponents even and nonnegative, i.e. the value lies in `Q(q)[t]`.
    pub fn is_bounded(&self) -> bool {
        self.terms.keys().all(|&e| e >= 0 && e % 2 == 0)
    }

    pub fn is_asympt_zero(&self) -> bool {
        self.is_bounded() && !self.terms.contains_key(&0)
    }

    /// Value at `u = 0`; fails unless bounded.
    pub fn eval_u0(&self) -> Result<RationalFunction> {
        if !self.is_bounded() {
            return Err(Error::Unbounded {
                context: format!("u-exponents {:?}", self.terms.keys().collect::<Vec<_>>()),
            });
        }
        Ok(self.coeff(0))
    }

    /// Substitutes `u = q^{-p}`.
    pub fn substitute(&self, p: i64) -> RationalFunction {
        self.terms
            .iter()
            .map(|(&e, c)| c.shift(-(e as i64 * p) as i32))
            .sum()
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i32) -> Self {
        UPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "[{}]", c)?,
                1 => write!(f, "[{}]*u", c)?,
                _ => write!(f, "[{}]*u^{}", c, e)?,
            }
        }
        Ok(())
    }
}

impl Zero for UPoly {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for UPoly {
    fn one() -> Self {
        UPoly::one()
    }
}

impl Add<&UPoly> for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub<&UPoly> for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, &-c);
        }
        out
    }
}

impl Mul<&UPoly> for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        let mut out = UPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<UPoly> for UPoly {
            type Output = UPoly;
            fn $m(self, rhs: UPoly) -> UPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&UPoly> for UPoly {
            type Output = UPoly;
            fn $m(self, rhs: &UPoly) -> UPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<RationalFunction> for UPoly {
    fn from(c: RationalFunction) -> Self {
        UPoly::constant(c)
    }
}
