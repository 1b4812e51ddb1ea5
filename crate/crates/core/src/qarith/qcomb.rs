//! Balanced q-integers, q-factorials, Gaussian binomials and q-Pochhammer symbols.

use super::{LaurentPoly, RationalFunction, UPoly};
use crate::error::{Error, Result};

/// `[n] = (q^n - q^{-n})/(q - q^{-1}) = q^{n-1} + q^{n-3} + ... + q^{1-n}`.
pub fn q_integer(n: i64) -> LaurentPoly {
    let sign = if n < 0 { -1 } else { 1 };
    let k = n.unsigned_abs() as i32;
    LaurentPoly::from_int_terms(
        &(0..k)
            .map(|j| (k - 1 - 2 * j, sign))
            .collect::<Vec<_>>(),
    )
}

/// `[n]! = [1][2]...[n]`.
pub fn q_factorial(n: u32) -> LaurentPoly {
    (1..=n as i64).fold(LaurentPoly::one(), |acc, k| &acc * &q_integer(k))
}

/// `[top choose k] = Π_{d=1}^{k} [top - d + 1]/[d]`, for any integer `top`.
pub fn gaussian_binomial(top: i64, k: u32) -> LaurentPoly {
    if top >= 0 && (k as i64) > top {
        return LaurentPoly::zero();
    }
    let mut num = LaurentPoly::one();
    for d in 1..=k as i64 {
        num = &num * &q_integer(top - d + 1);
    }
    num.div_exact(&q_factorial(k))
        .expect("Gaussian binomial is a Laurent polynomial")
}

/// `(a; q^{-2})_m = Π_{s=0}^{m-1} (1 - a q^{-2s})` for a monomial `a = c·u^f`.
pub fn pochhammer_q2(a: &UPoly, m: u32) -> Result<UPoly> {
    let mut terms = a.terms();
    let (f, c) = match (terms.next(), terms.next()) {
        (Some((f, c)), None) => (f, c.clone()),
        (None, _) => return Ok(UPoly::one()),
        _ => return Err(Error::NotMonomial),
    };
    let mut acc = UPoly::one();
    for s in 0..m as i32 {
        let factor = &UPoly::one() - &UPoly::monomial(f, c.shift(-2 * s));
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// `(q^{-2}; q^{-2})_m = Π_{s=1}^{m} (1 - q^{-2s})`.
pub fn qpoch(m: u32) -> LaurentPoly {
    (1..=m as i32).fold(LaurentPoly::one(), |acc, s| {
        &acc * &LaurentPoly::from_int_terms(&[(0, 1), (-2 * s, -1)])
    })
}

/// `1 / (q^{-2}; q^{-2})_m` as an element of `Q(q)`.
pub fn qpoch_inv(m: u32) -> RationalFunction {
    RationalFunction::new(LaurentPoly::one(), qpoch(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(t)
    }

    /// Independent oracle: multiply out the q-integers by brute force on dense
    /// integer vectors, then divide by long division.
    fn binom_oracle(n: i64, k: i64) -> Vec<(i32, i64)> {
        fn qint(n: i64) -> Vec<(i32, i64)> {
            (0..n).map(|j| ((n - 1 - 2 * j) as i32, 1)).collect()
        }
        fn mul(a: &[(i32, i64)], b: &[(i32, i64)]) -> Vec<(i32, i64)> {
            let mut m = std::collections::BTreeMap::new();
            for &(e1, c1) in a {
                for &(e2, c2) in b {
                    *m.entry(e1 + e2).or_insert(0) += c1 * c2;
                }
            }
            m.into_iter().filter(|&(_, c)| c != 0).collect()
        }
        let mut num = vec![(0, 1)];
        let mut den = vec![(0, 1)];
        for d in 1..=k {
            num = mul(&num, &qint(n - d + 1));
            den = mul(&den, &qint(d));
        }
        // long division from the top degree
        let mut rem: std::collections::BTreeMap<i32, i64> = num.into_iter().collect();
        let (dtop, dc) = *den.last().unwrap();
        let mut quot = Vec::new();
        while let Some((&e, &c)) = rem.iter().next_back() {
            assert_eq!(c % dc, 0);
            let qc = c / dc;
            let qe = e - dtop;
            quot.push((qe, qc));
            for &(de, dcoef) in &den {
                let entry = rem.entry(qe + de).or_insert(0);
                *entry -= qc * dcoef;
                if *entry == 0 {
                    rem.remove(&(qe + de));
                }
            }
        }
        quot.sort();
        quot
    }

    #[test]
    fn q_integer_examples() {
        assert!(q_integer(0).is_zero());
        assert_eq!(q_integer(2), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(q_integer(3), lp(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(q_integer(-3), -q_integer(3));
    }

    #[test]
    fn q_factorial_examples() {
        assert!(q_factorial(0).is_one());
        assert_eq!(q_factorial(2), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(q_factorial(3), &q_integer(2) * &q_integer(3));
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(2, 1), lp(&[(1, 1), (-1, 1)]));
        assert!(gaussian_binomial(1, 2).is_zero());
        let frozen = binom_oracle(4, 2);
        assert_eq!(frozen, vec![(-4, 1), (-2, 1), (0, 2), (2, 1), (4, 1)]);
        assert_eq!(gaussian_binomial(4, 2), lp(&frozen));
        for n in 0..9 {
            for k in 0..=n {
                assert_eq!(gaussian_binomial(n, k as u32), lp(&binom_oracle(n, k)));
            }
        }
    }

    #[test]
    fn gaussian_binomial_negative_top() {
        // [-n choose k] = (-1)^k [n+k-1 choose k]
        for n in 1..6i64 {
            for k in 0..5u32 {
                let lhs = gaussian_binomial(-n, k);
                let rhs = gaussian_binomial(n + k as i64 - 1, k);
                let rhs = if k % 2 == 1 { -rhs } else { rhs };
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn pochhammer_examples() {
        let a = UPoly::constant(RationalFunction::q_pow(-2));
        assert_eq!(
            pochhammer_q2(&a, 1).unwrap(),
            UPoly::constant(lp(&[(0, 1), (-2, -1)]).into())
        );
        assert_eq!(pochhammer_q2(&a, 0).unwrap(), UPoly::one());
        let expect = &lp(&[(0, 1), (-2, -1)]) * &lp(&[(0, 1), (-4, -1)]);
        assert_eq!(pochhammer_q2(&a, 2).unwrap(), UPoly::constant(expect.clone().into()));
        assert_eq!(qpoch(2), expect);
        let u = UPoly::monomial(1, RationalFunction::one());
        assert_eq!(pochhammer_q2(&UPoly::zero(), 3).unwrap(), UPoly::one());
        assert_eq!(pochhammer_q2(&u, 0).unwrap(), UPoly::one());
        let two = &u + &UPoly::one();
        assert!(matches!(pochhammer_q2(&two, 2), Err(Error::NotMonomial)));
    }
}
