//! Truncated expansions in `Q((q^{-1}))`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::RationalFunction;
use crate::error::{Error, Result};

/// Truncated series `Σ_{k=lowest}^{order} c_k q^{-k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    lowest: i64,
    order: i64,
    coeffs: Vec<BigRational>,
}

impl QSeries {
    /// Exponent `k` of the first stored coefficient (of `q^{-k}`).
    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficient of `q^{-k}`; zero outside the stored window.
    pub fn coeff(&self, k: i64) -> BigRational {
        if k < self.lowest || k > self.order {
            return BigRational::zero();
        }
        self.coeffs[(k - self.lowest) as usize].clone()
    }

    /// `(k, c_k)` for the nonzero stored coefficients.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lowest + i as i64, c))
    }

    /// Smallest `k` with a nonzero coefficient within the window.
    pub fn valuation(&self) -> Option<i64> {
        self.nonzero_terms().next().map(|(k, _)| k)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// All coefficients are nonnegative integers.
    pub fn is_nonneg_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

impl std::fmt::Display for QSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.nonzero_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*q^{}", c, -k)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", -(self.order + 1))
    }
}

/// Expands `r` in ascending powers of `q^{-1}` through `q^{-order}`.
pub fn series_expand(r: &RationalFunction, order: i64) -> Result<QSeries> {
    if r.is_zero() {
        return Ok(QSeries {
            lowest: order + 1,
            order,
            coeffs: Vec::new(),
        });
    }
    let den = r.den();
    let num = r.num();
    // In x = q^{-1}: den = q^D · Dx(x) with Dx(0) = leading coeff of den.
    let d_deg = den.max_exp().unwrap();
    let dx: Vec<BigRational> = (0..=d_deg).map(|j| den.coeff(d_deg - j)).collect();
    if dx[0].is_zero() {
        return Err(Error::NotExpandable);
    }
    let n_top = num.max_exp().unwrap();
    let n_bot = num.min_exp().unwrap();
    let nx: Vec<BigRational> = (0..=(n_top - n_bot)).map(|j| num.coeff(n_top - j)).collect();
    let lowest = (d_deg - n_top) as i64;
    if order < lowest {
        return Ok(QSeries {
            lowest: order + 1,
            order,
            coeffs: Vec::new(),
        });
    }
    let len = (order - lowest + 1) as usize;
    let lead_inv = BigRational::from_integer(1.into()) / dx[0].clone();
    let mut s: Vec<BigRational> = Vec::with_capacity(len);
    for j in 0..len {
        let mut acc = nx.get(j).cloned().unwrap_or_else(BigRational::zero);
        for i in 1..=j.min(dx.len() - 1) {
            acc -= &dx[i] * &s[j - i];
        }
        s.push(acc * &lead_inv);
    }
    Ok(QSeries {
        lowest,
        order,
        coeffs: s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::LaurentPoly;

    fn int(c: i64) -> BigRational {
        BigRational::from_integer(c.into())
    }

    fn geom() -> RationalFunction {
        RationalFunction::new(LaurentPoly::one(), LaurentPoly::from_int_terms(&[(0, 1), (-2, -1)]))
    }

    #[test]
    fn geometric_series() {
        let s = series_expand(&geom(), 6).unwrap();
        let got: Vec<_> = s.nonzero_terms().map(|(k, c)| (k, c.clone())).collect();
        assert_eq!(got, vec![(0, int(1)), (2, int(1)), (4, int(1)), (6, int(1))]);
    }

    #[test]
    fn shifted_geometric() {
        let r = geom().shift(-1);
        let s = series_expand(&r, 4).unwrap();
        let got: Vec<_> = s.nonzero_terms().map(|(k, c)| (k, c.clone())).collect();
        assert_eq!(got, vec![(1, int(1)), (3, int(1))]);
    }

    /// Frozen by hand long division: (1+x^2)/(1-x^2)^2 = Σ (2j+1) x^{2j}.
    #[test]
    fn long_division_value() {
        let r = &RationalFunction::from_laurent(LaurentPoly::from_int_terms(&[(0, 1), (-2, 1)]))
            * &geom().pow(2);
        let s = series_expand(&r, 4).unwrap();
        assert_eq!(s.coeff(0), int(1));
        assert_eq!(s.coeff(1), int(0));
        assert_eq!(s.coeff(2), int(3));
        assert_eq!(s.coeff(4), int(5));
        assert_eq!(s.coeff(5), int(0));
    }

    #[test]
    fn positive_powers_of_q() {
        let r = geom().shift(3);
        let s = series_expand(&r, 1).unwrap();
        assert_eq!(s.lowest(), -3);
        assert_eq!(s.coeff(-3), int(1));
        assert_eq!(s.coeff(-1), int(1));
        assert_eq!(s.coeff(1), int(1));
    }
}
