//! The modified quantum group `U̇` of `sl2` in canonical-basis coordinates.
//!
//! The canonical basis consists of `E^(a)F^(b)1_m` for `m ≤ b-a` and
//! `F^(b)E^(a)1_m` for `m ≥ b-a`; the two coincide on the wall `m = b-a`,
//! where the `EF` form is the stored representative.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qarith::{q_factorial, q_integer, qpoch, LaurentPoly, RationalFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orientation {
    EF,
    FE,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::EF => "EF",
            Orientation::FE => "FE",
        }
    }

    /// `+1` for `EF`, `-1` for `FE`: the sign in front of `s(a-b+m)` in the
    /// rank-one expansion formulas.
    pub(crate) fn sign(self) -> i64 {
        match self {
            Orientation::EF => 1,
            Orientation::FE => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    E,
    F,
}

/// A canonical-basis symbol `E^(a)F^(b)1_m` or `F^(b)E^(a)1_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CBIndex {
    pub a: u32,
    pub b: u32,
    pub m: i32,
    pub orient: Orientation,
}

impl CBIndex {
    /// The canonical-basis element with divided powers `a`, `b` on `1_m`.
    pub fn canonical(a: u32, b: u32, m: i32) -> Self {
        let orient = if m <= b as i32 - a as i32 {
            Orientation::EF
        } else {
            Orientation::FE
        };
        CBIndex { a, b, m, orient }
    }

    /// `b - a`; the wall sits at `m = b - a`.
    pub fn wall(&self) -> i32 {
        self.b as i32 - self.a as i32
    }

    /// Weight of the target idempotent: the element lies in `1_{m+2a-2b} U̇ 1_m`.
    pub fn left_weight(&self) -> i32 {
        self.m + 2 * self.a as i32 - 2 * self.b as i32
    }

    /// `a - b + m`, constant along a ladder.
    pub(crate) fn ladder_offset(&self) -> i64 {
        self.a as i64 - self.b as i64 + self.m as i64
    }
}

impl fmt::Display for CBIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.orient {
            Orientation::EF => write!(f, "E^({})F^({})1_{}", self.a, self.b, self.m),
            Orientation::FE => write!(f, "F^({})E^({})1_{}", self.b, self.a, self.m),
        }
    }
}

/// Rewrites a symbol into canonical orientation.
pub fn cb_canonicalize(a: u32, b: u32, m: i32, orient: Orientation) -> Result<CBIndex> {
    let wall = b as i32 - a as i32;
    let ok = match orient {
        Orientation::EF => m <= wall,
        Orientation::FE => m >= wall,
    };
    if !ok {
        return Err(Error::OrientationInvalid {
            a,
            b,
            m,
            orient: orient.as_str(),
        });
    }
    Ok(CBIndex::canonical(a, b, m))
}

/// A finite combination of canonical-basis elements of `U̇ 1_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UdotElement {
    weight: i32,
    terms: BTreeMap<CBIndex, RationalFunction>,
}

impl UdotElement {
    pub fn zero(m: i32) -> Self {
        UdotElement {
            weight: m,
            terms: BTreeMap::new(),
        }
    }

    /// `1_m`
    pub fn idempotent(m: i32) -> Self {
        Self::basis(CBIndex::canonical(0, 0, m))
    }

    pub fn basis(idx: CBIndex) -> Self {
        let idx = CBIndex::canonical(idx.a, idx.b, idx.m);
        let mut terms = BTreeMap::new();
        terms.insert(idx, RationalFunction::one());
        UdotElement {
            weight: idx.m,
            terms,
        }
    }

    /// Builds from terms; orientation of each index is checked and canonicalized.
    pub fn from_terms<I>(m: i32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (CBIndex, RationalFunction)>,
    {
        let mut out = UdotElement::zero(m);
        for (idx, c) in terms {
            if idx.m != m {
                return Err(Error::WeightMismatch { left: m, right: idx.m });
            }
            let idx = cb_canonicalize(idx.a, idx.b, idx.m, idx.orient)?;
            out.add_term(idx, &c);
        }
        Ok(out)
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CBIndex, &RationalFunction)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: &CBIndex) -> RationalFunction {
        let idx = CBIndex::canonical(idx.a, idx.b, idx.m);
        self.terms.get(&idx).cloned().unwrap_or_default()
    }

    /// `idx` must already be canonical and of this element's weight.
    pub(crate) fn add_term(&mut self, idx: CBIndex, c: &RationalFunction) {
        debug_assert_eq!(idx.m, self.weight);
        debug_assert_eq!(idx, CBIndex::canonical(idx.a, idx.b, idx.m));
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, c.clone());
            }
        }
    }

    pub fn add(&self, other: &UdotElement) -> Result<UdotElement> {
        if self.weight != other.weight && !other.is_zero() && !self.is_zero() {
            return Err(Error::WeightMismatch {
                left: self.weight,
                right: other.weight,
            });
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(*idx, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &UdotElement) -> Result<UdotElement> {
        self.add(&other.scale(&-RationalFunction::one()))
    }

    pub fn scale(&self, c: &RationalFunction) -> UdotElement {
        if c.is_zero() {
            return UdotElement::zero(self.weight);
        }
        UdotElement {
            weight: self.weight,
            terms: self.terms.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }
}

impl fmt::Display for UdotElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (idx, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}", idx)?;
            } else {
                write!(f, "({})*{}", c, idx)?;
            }
        }
        Ok(())
    }
}

fn qint(n: i64) -> RationalFunction {
    RationalFunction::from_laurent(q_integer(n))
}

/// Left multiplication by `E` or `F`, re-expressed in canonical coordinates.
pub fn mul_gen(g: Generator, x: &UdotElement) -> UdotElement {
    let mut out = UdotElement::zero(x.weight);
    for (idx, c) in &x.terms {
        let (a, b, m) = (idx.a, idx.b, idx.m);
        let (ai, bi, mi) = (a as i64, b as i64, m as i64);
        match (g, idx.orient) {
            (Generator::E, Orientation::EF) => {
                let c1 = c * &qint(ai + 1);
                if m < idx.wall() {
                    out.add_term(CBIndex::canonical(a + 1, b, m), &c1);
                } else {
                    // on the wall: E^(a+1)F^(b)1_m = F^(b)E^(a+1)1_m + F^(b-1)E^(a)1_m
                    out.add_term(CBIndex::canonical(a + 1, b, m), &c1);
                    if b > 0 {
                        out.add_term(CBIndex::canonical(a, b - 1, m), &c1);
                    }
                }
            }
            (Generator::E, Orientation::FE) => {
                out.add_term(CBIndex::canonical(a + 1, b, m), &(c * &qint(ai + 1)));
                if b > 0 {
                    out.add_term(CBIndex::canonical(a, b - 1, m), &(c * &qint(mi + 2 * ai - bi + 1)));
                }
            }
            (Generator::F, Orientation::EF) => {
                out.add_term(CBIndex::canonical(a, b + 1, m), &(c * &qint(bi + 1)));
                if a > 0 {
                    out.add_term(CBIndex::canonical(a - 1, b, m), &(c * &-qint(ai - 1 + mi - 2 * bi)));
                }
            }
            (Generator::F, Orientation::FE) => {
                out.add_term(CBIndex::canonical(a, b + 1, m), &(c * &qint(bi + 1)));
            }
        }
    }
    out
}

/// Left multiplication by `E^(n)` or `F^(n)`.
pub fn mul_divpow(g: Generator, n: u32, x: &UdotElement) -> UdotElement {
    let mut y = x.clone();
    for _ in 0..n {
        y = mul_gen(g, &y);
    }
    y.scale(&RationalFunction::new(LaurentPoly::one(), q_factorial(n)))
}

/// Closed-form pairing of two canonical-basis elements.
pub fn pairing_cb(i1: &CBIndex, i2: &CBIndex) -> RationalFunction {
    if i1.m != i2.m || i1.wall() != i2.wall() {
        return RationalFunction::zero();
    }
    let i1 = CBIndex::canonical(i1.a, i1.b, i1.m);
    let i2 = CBIndex::canonical(i2.a, i2.b, i2.m);
    debug_assert_eq!(i1.orient, i2.orient);
    let sigma = i1.orient.sign();
    let d = i1.ladder_offset();
    let (a, b, a2) = (i1.a as i64, i1.b as i64, i2.a as i64);
    let lo = 0.max(a - a2);
    let hi = a.min(b);
    let mut total = RationalFunction::zero();
    for s in lo..=hi {
        let s2 = a2 - a + s;
        let exp = -s * s - s2 * s2 + sigma * (s + s2) * d;
        let den = &(&qpoch((a - s) as u32) * &qpoch((b - s) as u32))
            * &(&qpoch(s as u32) * &qpoch(s2 as u32));
        total = &total + &RationalFunction::new(LaurentPoly::q_pow(exp as i32), den);
    }
    total
}

/// Bilinear extension of [`pairing_cb`].
pub fn pairing(x: &UdotElement, y: &UdotElement) -> RationalFunction {
    if x.weight != y.weight {
        return RationalFunction::zero();
    }
    let mut total = RationalFunction::zero();
    for (i1, c1) in &x.terms {
        for (i2, c2) in &y.terms {
            let p = pairing_cb(i1, i2);
            if !p.is_zero() {
                total = &total + &(&(c1 * c2) * &p);
            }
        }
    }
    total
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    a: u32,
    b: u32,
    orient: Orientation,
    coeff: RationalFunction,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    m: i32,
    terms: Vec<TermRepr>,
}

impl Serialize for UdotElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            m: self.weight,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| TermRepr {
                    a: i.a,
                    b: i.b,
                    orient: i.orient,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UdotElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ElementRepr::deserialize(d)?;
        let m = r.m;
        UdotElement::from_terms(
            m,
            r.terms.into_iter().map(|t| {
                (
                    CBIndex {
                        a: t.a,
                        b: t.b,
                        m,
                        orient: t.orient,
                    },
                    t.coeff,
                )
            }),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[(i32, i64)], den: &[(i32, i64)]) -> RationalFunction {
        RationalFunction::new(LaurentPoly::from_int_terms(num), LaurentPoly::from_int_terms(den))
    }

    #[test]
    fn canonicalize_examples() {
        let i = cb_canonicalize(1, 1, 0, Orientation::FE).unwrap();
        assert_eq!(i, CBIndex { a: 1, b: 1, m: 0, orient: Orientation::EF });
        let j = cb_canonicalize(1, 1, -2, Orientation::EF).unwrap();
        assert_eq!(j.orient, Orientation::EF);
        assert!(matches!(
            cb_canonicalize(2, 1, 3, Orientation::EF),
            Err(Error::OrientationInvalid { .. })
        ));
        assert!(cb_canonicalize(1, 1, -1, Orientation::FE).is_err());
    }

    #[test]
    fn generator_times_idempotent() {
        let e = mul_gen(Generator::E, &UdotElement::idempotent(0));
        assert_eq!(e, UdotElement::basis(CBIndex::canonical(1, 0, 0)));
        let e2 = mul_gen(Generator::E, &e);
        assert_eq!(
            e2,
            UdotElement::basis(CBIndex::canonical(2, 0, 0)).scale(&qint(2))
        );
        assert_eq!(
            mul_divpow(Generator::E, 2, &UdotElement::idempotent(0)),
            UdotElement::basis(CBIndex::canonical(2, 0, 0))
        );
        let x = UdotElement::basis(CBIndex::canonical(2, 3, -1));
        assert_eq!(mul_divpow(Generator::F, 0, &x), x);
    }

    #[test]
    fn commutator_on_idempotent() {
        // EF1_m - FE1_m = [m]1_m
        for m in -4..=4 {
            let one = UdotElement::idempotent(m);
            let ef = mul_gen(Generator::E, &mul_gen(Generator::F, &one));
            let fe = mul_gen(Generator::F, &mul_gen(Generator::E, &one));
            let diff = ef.sub(&fe).unwrap();
            assert_eq!(diff, one.scale(&qint(m as i64)), "m={m}");
        }
    }

    #[test]
    fn pairing_examples() {
        let one = CBIndex::canonical(0, 0, 0);
        assert!(pairing_cb(&one, &one).is_one());
        let ef = CBIndex::canonical(1, 1, 0);
        // (1 + q^-2)/(1 - q^-2)^2
        let expect = rf(&[(0, 1), (-2, 1)], &[(0, 1), (-2, -2), (-4, 1)]);
        assert_eq!(pairing_cb(&ef, &ef), expect);
        for m in [0, 3] {
            for k in 0..4 {
                for l in 0..4 {
                    let v = pairing_cb(&CBIndex::canonical(k, 0, m), &CBIndex::canonical(l, 0, m));
                    if k == l {
                        assert_eq!(v, crate::qarith::qpoch_inv(k));
                    } else {
                        assert!(v.is_zero());
                    }
                }
            }
        }
        assert!(pairing_cb(&CBIndex::canonical(1, 1, 0), &CBIndex::canonical(1, 1, 2)).is_zero());
        assert!(pairing_cb(&CBIndex::canonical(2, 1, 0), &CBIndex::canonical(1, 1, 0)).is_zero());
    }

    #[test]
    fn pairing_is_bilinear_and_symmetric() {
        let x = UdotElement::from_terms(
            -1,
            [
                (CBIndex::canonical(1, 1, -1), rf(&[(1, 1)], &[(0, 1)])),
                (CBIndex::canonical(2, 2, -1), rf(&[(0, 3)], &[(0, 1), (1, 1)])),
            ],
        )
        .unwrap();
        let y = UdotElement::from_terms(
            -1,
            [
                (CBIndex::canonical(0, 0, -1), RationalFunction::from_int(2)),
                (CBIndex::canonical(3, 3, -1), rf(&[(-1, 1)], &[(0, 1)])),
            ],
        )
        .unwrap();
        assert_eq!(pairing(&x, &y), pairing(&y, &x));
        assert!(pairing(&x, &UdotElement::zero(-1)).is_zero());
        assert!(pairing(&x, &UdotElement::idempotent(0)).is_zero());
    }

    #[test]
    fn json_schema() {
        let x = UdotElement::from_terms(
            0,
            [
                (CBIndex::canonical(1, 1, 0), RationalFunction::one()),
                (CBIndex::canonical(0, 0, 0), rf(&[(-1, -1)], &[(0, 1), (-2, -1)])),
            ],
        )
        .unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with(r#"{"m":0,"terms":[{"a":0,"b":0,"orient":"EF""#));
        let back: UdotElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        let bad = r#"{"m":3,"terms":[{"a":2,"b":1,"orient":"EF","coeff":{"num":[[0,"1/1"]],"den":[[0,"1/1"]]}}]}"#;
        assert!(serde_json::from_str::<UdotElement>(bad).is_err());
    }
}
