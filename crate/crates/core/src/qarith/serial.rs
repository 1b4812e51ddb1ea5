//! JSON schemas: a Laurent polynomial is a list of `[exponent, "p/q"]` pairs
//! sorted by exponent, a rational function is `{"num", "den"}`, and a
//! u-polynomial is a list of `[u_exponent, rational_function]` pairs.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LaurentPoly, RationalFunction, UPoly};

fn rational_to_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|e| format!("bad numerator {n:?}: {e}"))?;
    let d = BigInt::from_str(d).map_err(|e| format!("bad denominator {d:?}: {e}"))?;
    if d == BigInt::from(0) {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(n, d))
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i32, String)> = self.terms().map(|(e, c)| (e, rational_to_string(c))).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<(i32, String)> = Vec::deserialize(d)?;
        let mut terms = Vec::with_capacity(v.len());
        for (e, c) in v {
            terms.push((e, parse_rational(&c).map_err(D::Error::custom)?));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.num().clone(),
            den: self.den().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RationalRepr::deserialize(d)?;
        if r.den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(RationalFunction::new(r.num, r.den))
    }
}

impl Serialize for UPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i32, &RationalFunction)> = self.terms().collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<(i32, RationalFunction)> = Vec::deserialize(d)?;
        Ok(UPoly::from_terms(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_schema() {
        let p = LaurentPoly::from_int_terms(&[(2, 1), (-1, -3)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[-1,"-3/1"],[2,"1/1"]]"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let loose: LaurentPoly = serde_json::from_str(r#"[[0,"4/2"],[0,"1"]]"#).unwrap();
        assert_eq!(loose, LaurentPoly::from_int(3));
    }

    #[test]
    fn rational_schema() {
        let r = RationalFunction::new(
            LaurentPoly::from_int_terms(&[(-1, 1)]),
            LaurentPoly::from_int_terms(&[(0, 1), (-2, -1)]),
        );
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"num":[[1,"1/1"]],"den":[[0,"-1/1"],[2,"1/1"]]}"#);
        let back: RationalFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<RationalFunction>(r#"{"num":[[0,"1"]],"den":[]}"#).is_err());
    }
}
