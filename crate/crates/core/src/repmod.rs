//! Tensor-product modules `ωL(p) ⊗ L(p+m)` over `U_q(sl2)`.
//!
//! A vector is a combination of labels `(a, b)` standing for
//! `E^(a)ξ_{-p} ⊗ F^(b)η_{p+m}`. In symbolic mode `p` is formal and the
//! coefficients live in `Q(q)[u, u^{-1}]` with `u = q^{-p}`; in concrete mode
//! `p` is a number, the coefficients are constant in `u`, and labels past the
//! top of either factor are dropped.
//!
//! Single-factor conventions:
//! on `ωL(p)`, `E·E^(a)ξ = [a+1]E^(a+1)ξ` and `F·E^(a)ξ = [p-a+1]E^(a-1)ξ`;
//! on `L(n)`, `F·F^(b)η = [b+1]F^(b+1)η` and `E·F^(b)η = [n-b+1]F^(b-1)η`.
//! Tensor products use `Δ(E) = E⊗1 + K⊗E`, `Δ(F) = F⊗K^{-1} + 1⊗F`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qarith::{
    pochhammer_q2, q_factorial, q_integer, qpoch, qpoch_inv, LaurentPoly, RationalFunction, UPoly,
};
use crate::udot1::{Orientation, UdotElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Concrete(i64),
    Symbolic,
}

/// Which module `ωL(p) ⊗ L(p+m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightParam {
    pub mode: Mode,
    pub m: i32,
}

impl WeightParam {
    pub fn symbolic(m: i32) -> Self {
        WeightParam {
            mode: Mode::Symbolic,
            m,
        }
    }

    pub fn concrete(p: i64, m: i32) -> Result<Self> {
        if p < 0 || p + (m as i64) < 0 {
            return Err(Error::InvalidParam { p, m });
        }
        Ok(WeightParam {
            mode: Mode::Concrete(p),
            m,
        })
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.mode, Mode::Symbolic)
    }

    /// `[p + c]`
    fn q_int_p(&self, c: i64) -> UPoly {
        match self.mode {
            Mode::Concrete(p) => UPoly::constant(q_integer(p + c).into()),
            Mode::Symbolic => {
                // (q^c u^{-1} - q^{-c} u) / (q - q^{-1})
                let inv = q_minus_q_inv_inv();
                UPoly::from_terms([
                    (-1, inv.shift(c as i32)),
                    (1, -inv.shift(-c as i32)),
                ])
            }
        }
    }

    /// `q^{k p + c}`
    fn q_pow_p(&self, k: i32, c: i32) -> UPoly {
        match self.mode {
            Mode::Concrete(p) => UPoly::constant(RationalFunction::q_pow(k * p as i32 + c)),
            Mode::Symbolic => UPoly::monomial(-k, RationalFunction::q_pow(c)),
        }
    }

    fn top_low(&self) -> Option<u32> {
        match self.mode {
            Mode::Concrete(p) => Some(p as u32),
            Mode::Symbolic => None,
        }
    }

    fn top_high(&self) -> Option<u32> {
        match self.mode {
            Mode::Concrete(p) => Some((p + self.m as i64) as u32),
            Mode::Symbolic => None,
        }
    }

    fn in_range(&self, a: u32, b: u32) -> bool {
        self.top_low().is_none_or(|t| a <= t) && self.top_high().is_none_or(|t| b <= t)
    }
}

fn q_minus_q_inv_inv() -> RationalFunction {
    RationalFunction::new(LaurentPoly::one(), LaurentPoly::from_int_terms(&[(1, 1), (-1, -1)]))
}

fn qint(n: i64) -> UPoly {
    UPoly::constant(q_integer(n).into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModGen {
    E,
    F,
    K,
    Kinv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Factor {
    /// `ωL(p)`, basis `E^(k)ξ_{-p}`
    Lowest,
    /// `L(p+m)`, basis `F^(k)η_{p+m}`
    Highest,
}

/// `g · basis_k = coeff · basis_{k'}` in one tensor factor; `None` when zero.
fn factor_act(param: &WeightParam, factor: Factor, g: ModGen, k: u32) -> Option<(u32, UPoly)> {
    let ki = k as i64;
    let m = param.m;
    match (factor, g) {
        (Factor::Lowest, ModGen::E) => {
            if param.top_low().is_some_and(|t| k + 1 > t) {
                return None;
            }
            Some((k + 1, qint(ki + 1)))
        }
        (Factor::Lowest, ModGen::F) => (k > 0).then(|| (k - 1, param.q_int_p(1 - ki))),
        (Factor::Lowest, ModGen::K) => Some((k, param.q_pow_p(-1, 2 * k as i32))),
        (Factor::Lowest, ModGen::Kinv) => Some((k, param.q_pow_p(1, -2 * k as i32))),
        (Factor::Highest, ModGen::F) => {
            if param.top_high().is_some_and(|t| k + 1 > t) {
                return None;
            }
            Some((k + 1, qint(ki + 1)))
        }
        (Factor::Highest, ModGen::E) => {
            (k > 0).then(|| (k - 1, param.q_int_p(m as i64 - ki + 1)))
        }
        (Factor::Highest, ModGen::K) => Some((k, param.q_pow_p(1, m - 2 * k as i32))),
        (Factor::Highest, ModGen::Kinv) => Some((k, param.q_pow_p(-1, 2 * k as i32 - m))),
    }
}

/// A vector of `ωL(p) ⊗ L(p+m)` in the basis `E^(a)ξ ⊗ F^(b)η`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    param: WeightParam,
    terms: BTreeMap<(u32, u32), UPoly>,
}

impl TensorVector {
    pub fn zero(param: WeightParam) -> Self {
        TensorVector {
            param,
            terms: BTreeMap::new(),
        }
    }

    /// `ξ_{-p} ⊗ η_{p+m}`
    pub fn vacuum(param: WeightParam) -> Self {
        Self::pure(param, 0, 0)
    }

    /// `E^(a)ξ ⊗ F^(b)η` (zero in concrete mode past the top of a factor).
    pub fn pure(param: WeightParam, a: u32, b: u32) -> Self {
        let mut v = TensorVector::zero(param);
        v.add_term((a, b), &UPoly::one());
        v
    }

    pub fn param(&self) -> &WeightParam {
        &self.param
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &UPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> UPoly {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, label: (u32, u32), c: &UPoly) {
        if c.is_zero() || !self.param.in_range(label.0, label.1) {
            return;
        }
        match self.terms.get_mut(&label) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.terms.remove(&label);
                }
            }
            None => {
                self.terms.insert(label, c.clone());
            }
        }
    }

    pub fn add(&self, other: &TensorVector) -> Result<TensorVector> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(*l, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorVector) -> Result<TensorVector> {
        self.add(&other.scale(&UPoly::constant(-RationalFunction::one())))
    }

    pub fn scale(&self, c: &UPoly) -> TensorVector {
        let mut out = TensorVector::zero(self.param);
        for (l, x) in &self.terms {
            out.add_term(*l, &(x * c));
        }
        out
    }

    fn check_same(&self, other: &TensorVector) -> Result<()> {
        if self.param != other.param {
            return Err(Error::WeightMismatch {
                left: self.param.m,
                right: other.param.m,
            });
        }
        Ok(())
    }

    /// Every coefficient lies in `Q(q)[t]`, `t = u^2`.
    pub fn is_bounded(&self) -> bool {
        self.terms.values().all(UPoly::is_bounded)
    }

    /// Every coefficient lies in `t·Q(q)[t]`.
    pub fn is_asympt_zero(&self) -> bool {
        self.terms.values().all(UPoly::is_asympt_zero)
    }

    /// Specializes a symbolic vector at `u = q^{-p}` and projects onto the
    /// finite module `ωL(p) ⊗ L(p+m)`.
    pub fn substitute(&self, p: i64) -> Result<TensorVector> {
        let param = WeightParam::concrete(p, self.param.m)?;
        let mut out = TensorVector::zero(param);
        for (l, c) in &self.terms {
            out.add_term(*l, &UPoly::constant(c.substitute(p)));
        }
        Ok(out)
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*E^({})xi(x)F^({})eta", c, a, b)?;
        }
        Ok(())
    }
}

/// Action of a generator through the coproduct.
pub fn act_gen(g: ModGen, v: &TensorVector) -> TensorVector {
    let param = v.param;
    let mut out = TensorVector::zero(param);
    for (&(a, b), c) in &v.terms {
        match g {
            ModGen::E => {
                // E ⊗ 1 + K ⊗ E
                if let Some((a1, x)) = factor_act(&param, Factor::Lowest, ModGen::E, a) {
                    out.add_term((a1, b), &(c * &x));
                }
                if let Some((b1, y)) = factor_act(&param, Factor::Highest, ModGen::E, b) {
                    let (_, k) = factor_act(&param, Factor::Lowest, ModGen::K, a).unwrap();
                    out.add_term((a, b1), &(c * &(&k * &y)));
                }
            }
            ModGen::F => {
                // F ⊗ K^{-1} + 1 ⊗ F
                if let Some((a1, x)) = factor_act(&param, Factor::Lowest, ModGen::F, a) {
                    let (_, k) = factor_act(&param, Factor::Highest, ModGen::Kinv, b).unwrap();
                    out.add_term((a1, b), &(c * &(&x * &k)));
                }
                if let Some((b1, y)) = factor_act(&param, Factor::Highest, ModGen::F, b) {
                    out.add_term((a, b1), &(c * &y));
                }
            }
            ModGen::K | ModGen::Kinv => {
                let (_, x) = factor_act(&param, Factor::Lowest, g, a).unwrap();
                let (_, y) = factor_act(&param, Factor::Highest, g, b).unwrap();
                out.add_term((a, b), &(c * &(&x * &y)));
            }
        }
    }
    out
}

/// `E^(n)` or `F^(n)` acting: `n` generator steps divided by `[n]!`.
pub fn act_divpow(g: ModGen, n: u32, v: &TensorVector) -> TensorVector {
    assert!(matches!(g, ModGen::E | ModGen::F), "divided powers of E or F only");
    let mut w = v.clone();
    for _ in 0..n {
        w = act_gen(g, &w);
    }
    w.scale(&UPoly::constant(RationalFunction::new(LaurentPoly::one(), q_factorial(n))))
}

/// The scalar `c` with `v0 = c · (ξ ⊗ η)`.
fn vacuum_scalar(v0: &TensorVector) -> UPoly {
    let mut it = v0.terms.iter();
    match (it.next(), it.next()) {
        (None, _) => UPoly::zero(),
        (Some((&(0, 0), c)), None) => c.clone(),
        _ => panic!("closed action formulas start from a multiple of the vacuum vector"),
    }
}

fn closed_action(a: u32, b: u32, v0: &TensorVector, orient: Orientation) -> TensorVector {
    let param = v0.param;
    let scalar = vacuum_scalar(v0);
    let m = param.m as i64;
    let d = a as i64 - b as i64 + m;
    let mut sym = TensorVector::zero(WeightParam::symbolic(param.m));
    for s in 0..=a.min(b) {
        let si = s as i64;
        let (expo, first) = match orient {
            // Π_{d=1}^{s} (1 - q^{2b-2m-2d} u^2)
            Orientation::EF => (-si * si + si * d, 2 * b as i64 - 2 * m - 2),
            // Π_{d=1}^{s} (1 - q^{2a-2d} u^2)
            Orientation::FE => (-si * si - si * d, 2 * a as i64 - 2),
        };
        let poch = pochhammer_q2(&UPoly::monomial(2, RationalFunction::q_pow(first as i32)), s)
            .expect("monomial argument");
        let c = poch.scale(&RationalFunction::new(LaurentPoly::q_pow(expo as i32), qpoch(s)));
        sym.add_term((a - s, b - s), &c);
    }
    let sym = sym.scale(&scalar);
    match param.mode {
        Mode::Symbolic => sym,
        Mode::Concrete(p) => sym.substitute(p).expect("parameter already validated"),
    }
}

/// `E^(a)F^(b)(ξ ⊗ η)` from the closed formula with `t`-polynomial coefficients.
pub fn closed_action_ef(a: u32, b: u32, v0: &TensorVector) -> TensorVector {
    closed_action(a, b, v0, Orientation::EF)
}

/// `F^(b)E^(a)(ξ ⊗ η)` from the closed formula.
pub fn closed_action_fe(a: u32, b: u32, v0: &TensorVector) -> TensorVector {
    closed_action(a, b, v0, Orientation::FE)
}

/// Action of an element of `U̇1_m` on `v0 = c·(ξ_{-p} ⊗ η_{p+m})`.
pub fn apply_udot(x: &UdotElement, v0: &TensorVector) -> Result<TensorVector> {
    if x.weight() != v0.param.m && !x.is_zero() {
        return Err(Error::WeightMismatch {
            left: x.weight(),
            right: v0.param.m,
        });
    }
    let mut out = TensorVector::zero(v0.param);
    for (idx, c) in x.terms() {
        let w = closed_action(idx.a, idx.b, v0, idx.orient);
        let c = UPoly::constant(c.clone());
        for (l, y) in &w.terms {
            out.add_term(*l, &(y * &c));
        }
    }
    Ok(out)
}

/// `(E^(k)ξ, E^(k)ξ)` for `k = 0..=max` (or `(F^(k)η, F^(k)η)`), obtained by
/// stripping one generator at a time with the anti-involution
/// `ρ(E) = qKF`, `ρ(F) = q^{-1}EK^{-1}`.
fn factor_norms(param: &WeightParam, factor: Factor, max: u32) -> Vec<UPoly> {
    thread_local! {
        static NORMS: RefCell<HashMap<(WeightParam, Factor), Vec<UPoly>>> = RefCell::default();
    }
    NORMS.with(|cell| {
        let mut memo = cell.borrow_mut();
        let norms = memo.entry((*param, factor)).or_insert_with(|| vec![UPoly::one()]);
        extend_norms(param, factor, norms, max);
        norms[..=max as usize].to_vec()
    })
}

fn extend_norms(param: &WeightParam, factor: Factor, norms: &mut Vec<UPoly>, max: u32) {
    for k in norms.len() as u32..=max {
        // (g·v_{k-1}, v_k) = (v_{k-1}, ρ(g) v_k), and g·v_{k-1} = [k] v_k
        let coeff = match factor {
            Factor::Lowest => {
                // ρ(E) = q K F
                factor_act(param, factor, ModGen::F, k).map(|(k1, x)| {
                    let (_, kk) = factor_act(param, factor, ModGen::K, k1).unwrap();
                    (&x * &kk).scale(&RationalFunction::q_pow(1))
                })
            }
            Factor::Highest => {
                // ρ(F) = q^{-1} E K^{-1}
                factor_act(param, factor, ModGen::Kinv, k).and_then(|(_, kk)| {
                    factor_act(param, factor, ModGen::E, k)
                        .map(|(_, x)| (&x * &kk).scale(&RationalFunction::q_pow(-1)))
                })
            }
        }
        .unwrap_or_default();
        let inv_k = RationalFunction::new(LaurentPoly::one(), q_integer(k as i64));
        let next = (&norms[k as usize - 1] * &coeff).scale(&inv_k);
        norms.push(next);
    }
}

/// The bilinear form on `ωL(p) ⊗ L(p+m)`, `(x⊗y, x'⊗y') = (x,x')(y,y')`.
/// In symbolic mode the value must be bounded.
pub fn gram(v: &TensorVector, w: &TensorVector) -> Result<UPoly> {
    v.check_same(w)?;
    let param = v.param;
    let max_a = v.terms.keys().map(|l| l.0).max().unwrap_or(0);
    let max_b = v.terms.keys().map(|l| l.1).max().unwrap_or(0);
    let na = factor_norms(&param, Factor::Lowest, max_a);
    let nb = factor_norms(&param, Factor::Highest, max_b);
    let mut total = UPoly::zero();
    for (&(a, b), c) in &v.terms {
        if let Some(d) = w.terms.get(&(a, b)) {
            let n = &na[a as usize] * &nb[b as usize];
            total = &total + &(&(c * d) * &n);
        }
    }
    if param.is_symbolic() && !total.is_bounded() {
        return Err(Error::Unbounded {
            context: format!("gram value {total}"),
        });
    }
    Ok(total)
}

/// Coefficient-wise `u → 0` of a symbolic vector.
pub fn limit_vector(v: &TensorVector) -> Result<PureTensorExpansion> {
    let mut out = BTreeMap::new();
    for (&(a, b), c) in &v.terms {
        let x = c.eval_u0().map_err(|_| Error::Unbounded {
            context: format!("label (a={a}, b={b}) coefficient {c}"),
        })?;
        if !x.is_zero() {
            out.insert((a, b), x);
        }
    }
    Ok(out)
}

/// `Σ c_{a,b} E^(a) ⊗ F^(b)` in `U^+ ⊗ U^-`, keyed by `(a, b)`.
pub type PureTensorExpansion = BTreeMap<(u32, u32), RationalFunction>;

/// The inverse of the fusion isomorphism: the pure tensor approximated by
/// `x` acting on the vacuum for large `p`.
pub fn unfuse(x: &UdotElement) -> Result<PureTensorExpansion> {
    let v0 = TensorVector::vacuum(WeightParam::symbolic(x.weight()));
    let v = apply_udot(x, &v0)?;
    limit_vector(&v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HalfSide {
    Plus,
    Minus,
}

/// An element of `U^+` (coordinates on `E^(a)`) or `U^-` (on `F^(b)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UHalfElement {
    pub side: HalfSide,
    terms: BTreeMap<u32, RationalFunction>,
}

impl UHalfElement {
    pub fn divided_power(side: HalfSide, n: u32, c: RationalFunction) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        UHalfElement { side, terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &RationalFunction)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    /// `(E^(m), E^(n)) = (F^(m), F^(n)) = δ_{mn} / (q^{-2};q^{-2})_m`, extended bilinearly.
    pub fn pairing(&self, other: &UHalfElement) -> RationalFunction {
        if self.side != other.side {
            return RationalFunction::zero();
        }
        self.terms
            .iter()
            .filter_map(|(k, c)| other.terms.get(k).map(|d| &(c * d) * &qpoch_inv(*k)))
            .sum()
    }
}

/// Splits an expansion into `(x_k, y_k)` pairs with the scalar on the plus side.
pub fn to_half_pairs(e: &PureTensorExpansion) -> Vec<(UHalfElement, UHalfElement)> {
    e.iter()
        .map(|(&(a, b), c)| {
            (
                UHalfElement::divided_power(HalfSide::Plus, a, c.clone()),
                UHalfElement::divided_power(HalfSide::Minus, b, RationalFunction::one()),
            )
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    a: u32,
    b: u32,
    coeff: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct VectorRepr {
    mode: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    p: Option<i64>,
    m: i32,
    terms: Vec<TermRepr>,
}

impl Serialize for TensorVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let (mode, p) = match self.param.mode {
            Mode::Symbolic => ("symbolic", None),
            Mode::Concrete(p) => ("concrete", Some(p)),
        };
        let mut terms = Vec::new();
        for (&(a, b), c) in &self.terms {
            let coeff = match self.param.mode {
                Mode::Symbolic => serde_json::to_value(c),
                Mode::Concrete(_) => serde_json::to_value(c.coeff(0)),
            }
            .map_err(S::Error::custom)?;
            terms.push(TermRepr { a, b, coeff });
        }
        VectorRepr {
            mode: mode.into(),
            p,
            m: self.param.m,
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = VectorRepr::deserialize(d)?;
        let param = match (r.mode.as_str(), r.p) {
            ("symbolic", None) => WeightParam::symbolic(r.m),
            ("concrete", Some(p)) => WeightParam::concrete(p, r.m).map_err(D::Error::custom)?,
            (mode, p) => {
                return Err(D::Error::custom(format!("bad mode/p combination: {mode} {p:?}")))
            }
        };
        let mut out = TensorVector::zero(param);
        for t in r.terms {
            let c = match param.mode {
                Mode::Symbolic => serde_json::from_value::<UPoly>(t.coeff),
                Mode::Concrete(_) => {
                    serde_json::from_value::<RationalFunction>(t.coeff).map(UPoly::constant)
                }
            }
            .map_err(D::Error::custom)?;
            if !param.in_range(t.a, t.b) {
                return Err(D::Error::custom(format!("label ({}, {}) outside the module", t.a, t.b)));
            }
            out.add_term((t.a, t.b), &c);
        }
        Ok(out)
    }
}
