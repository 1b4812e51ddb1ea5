//! The PBW basis `w_m(a,b)` of `U̇`, its transition matrices against the
//! canonical basis, the PBW norms, and positivity of the expansion coefficients.
//!
//! Every transition is triangular along the ladder `(a-s, b-s)`,
//! `s = 0..=min(a,b)`, with ones on the diagonal.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qarith::{qpoch, series_expand, LaurentPoly, QSeries, RationalFunction, SumAcc};
use crate::udot1::{cb_canonicalize, CBIndex, Orientation, UdotElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PBWIndex {
    pub a: u32,
    pub b: u32,
    pub m: i32,
}

impl PBWIndex {
    pub fn new(a: u32, b: u32, m: i32) -> Self {
        PBWIndex { a, b, m }
    }

    /// Orientation of the canonical-basis ladder this element expands into.
    pub fn orientation(&self) -> Orientation {
        CBIndex::canonical(self.a, self.b, self.m).orient
    }
}

impl fmt::Display for PBWIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w_{}({},{})", self.m, self.a, self.b)
    }
}

/// A finite combination of PBW basis elements of a single block `U̇1_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBWCombo {
    weight: i32,
    terms: BTreeMap<PBWIndex, RationalFunction>,
}

impl PBWCombo {
    pub fn zero(m: i32) -> Self {
        PBWCombo {
            weight: m,
            terms: BTreeMap::new(),
        }
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWIndex, &RationalFunction)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &PBWIndex) -> RationalFunction {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, idx: PBWIndex, c: &RationalFunction) {
        debug_assert_eq!(idx.m, self.weight);
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
}

impl fmt::Display for PBWCombo {
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

/// `q^{-s^2 + σ s d} / (q^{-2};q^{-2})_s`, the CB→PBW ladder coefficient.
fn cb_to_pbw_coeff(s: u32, d: i64, sigma: i64) -> RationalFunction {
    let s = s as i64;
    RationalFunction::new(LaurentPoly::q_pow((-s * s + sigma * s * d) as i32), qpoch(s as u32))
}

/// `(-1)^s q^{-s + σ s d} / (q^{-2};q^{-2})_s`, the PBW→CB ladder coefficient.
fn pbw_to_cb_coeff(s: u32, d: i64, sigma: i64) -> RationalFunction {
    let si = s as i64;
    let c = RationalFunction::new(LaurentPoly::q_pow((-si + sigma * si * d) as i32), qpoch(s));
    if s % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Evaluates the `EF` (`orient = EF`) or `FE` expansion formula for the symbol
/// with indices `(a, b, m)` without checking the region of validity.
pub fn cb_to_pbw_formula(a: u32, b: u32, m: i32, orient: Orientation) -> PBWCombo {
    let d = a as i64 - b as i64 + m as i64;
    let mut out = PBWCombo::zero(m);
    for s in 0..=a.min(b) {
        out.add_term(PBWIndex::new(a - s, b - s, m), &cb_to_pbw_coeff(s, d, orient.sign()));
    }
    out
}

/// PBW expansion of a canonical-basis element.
pub fn cb_to_pbw(i: &CBIndex) -> PBWCombo {
    let i = CBIndex::canonical(i.a, i.b, i.m);
    let out = cb_to_pbw_formula(i.a, i.b, i.m, i.orient);
    if i.m == i.wall() {
        let other = cb_to_pbw_formula(i.a, i.b, i.m, Orientation::FE);
        assert_eq!(out, other, "EF and FE expansions disagree on the wall at {i}");
    }
    out
}

/// Evaluates the PBW→CB formula of the given branch. Fails when the branch
/// produces symbols that are not canonical-basis elements at this weight.
pub fn pbw_to_cb_formula(i: &PBWIndex, orient: Orientation) -> Result<UdotElement> {
    let d = i.a as i64 - i.b as i64 + i.m as i64;
    let mut terms = Vec::new();
    for s in 0..=i.a.min(i.b) {
        let idx = cb_canonicalize(i.a - s, i.b - s, i.m, orient)?;
        terms.push((idx, pbw_to_cb_coeff(s, d, orient.sign())));
    }
    UdotElement::from_terms(i.m, terms)
}

/// Canonical-basis expansion of `w_m(a,b)`.
pub fn pbw_to_cb(i: &PBWIndex) -> UdotElement {
    let orient = i.orientation();
    let out = pbw_to_cb_formula(i, orient).expect("canonical branch is always valid");
    if i.m == i.b as i32 - i.a as i32 {
        let other = pbw_to_cb_formula(i, Orientation::FE).expect("FE branch is valid on the wall");
        assert_eq!(out, other, "PBW->CB branches disagree on the wall at {i}");
    }
    out
}

/// Expands every term of `x` into the PBW basis.
pub fn expand_to_pbw(x: &UdotElement) -> PBWCombo {
    let mut out = PBWCombo::zero(x.weight());
    for (idx, c) in x.terms() {
        for (w, d) in cb_to_pbw(idx).terms() {
            out.add_term(*w, &(c * d));
        }
    }
    out
}

/// Re-expresses a PBW combination in canonical-basis coordinates.
pub fn expand_to_cb(x: &PBWCombo) -> UdotElement {
    let mut out = UdotElement::zero(x.weight());
    for (w, c) in x.terms() {
        for (idx, d) in pbw_to_cb(w).terms() {
            out.add_term(*idx, &(c * d));
        }
    }
    out
}

/// Square matrix over `Q(q)` indexed by a ladder. `entries[j][i]` is the
/// coefficient of target-ladder element `j` in the image of source element `i`,
/// so unital triangular means lower triangular with ones on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub m: i32,
    pub ladder: Vec<(u32, u32)>,
    pub entries: Vec<Vec<RationalFunction>>,
}

impl TransitionMatrix {
    pub fn dim(&self) -> usize {
        self.ladder.len()
    }

    pub fn mul(&self, rhs: &TransitionMatrix) -> TransitionMatrix {
        assert_eq!(self.ladder, rhs.ladder);
        let n = self.dim();
        let mut entries = vec![vec![RationalFunction::zero(); n]; n];
        for (j, row) in entries.iter_mut().enumerate() {
            for (i, cell) in row.iter_mut().enumerate() {
                let mut acc = SumAcc::default();
                for k in 0..n {
                    let (x, y) = (&self.entries[j][k], &rhs.entries[k][i]);
                    if !x.is_zero() && !y.is_zero() {
                        acc.add(&(x * y));
                    }
                }
                *cell = acc.finish();
            }
        }
        TransitionMatrix {
            m: self.m,
            ladder: self.ladder.clone(),
            entries,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(j, row)| {
            row.iter()
                .enumerate()
                .all(|(i, c)| if i == j { c.is_one() } else { c.is_zero() })
        })
    }

    pub fn is_unital_lower_triangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(j, row)| {
            row.iter().enumerate().all(|(i, c)| match i.cmp(&j) {
                std::cmp::Ordering::Equal => c.is_one(),
                std::cmp::Ordering::Greater => c.is_zero(),
                std::cmp::Ordering::Less => true,
            })
        })
    }
}

/// The CB→PBW and PBW→CB matrices on the ladder of `(a, b)` at weight `m`.
pub fn ladder_matrices(a: u32, b: u32, m: i32) -> (TransitionMatrix, TransitionMatrix) {
    let n = a.min(b) as usize + 1;
    let ladder: Vec<(u32, u32)> = (0..n as u32).map(|s| (a - s, b - s)).collect();
    let pos = |x: u32| (a - x) as usize;
    let mut to_pbw = vec![vec![RationalFunction::zero(); n]; n];
    let mut to_cb = vec![vec![RationalFunction::zero(); n]; n];
    for (i, &(ai, bi)) in ladder.iter().enumerate() {
        for (w, c) in cb_to_pbw(&CBIndex::canonical(ai, bi, m)).terms() {
            to_pbw[pos(w.a)][i] = c.clone();
        }
        for (idx, c) in pbw_to_cb(&PBWIndex::new(ai, bi, m)).terms() {
            to_cb[pos(idx.a)][i] = c.clone();
        }
    }
    (
        TransitionMatrix {
            m,
            ladder: ladder.clone(),
            entries: to_pbw,
        },
        TransitionMatrix {
            m,
            ladder,
            entries: to_cb,
        },
    )
}

/// Norm formula of the PBW basis: orthogonal, with
/// `(w_m(a,b), w_m(a,b)) = 1/((q^{-2};q^{-2})_a (q^{-2};q^{-2})_b)`.
pub fn pairing_pbw(i1: &PBWIndex, i2: &PBWIndex) -> RationalFunction {
    if i1 != i2 {
        return RationalFunction::zero();
    }
    RationalFunction::new(LaurentPoly::one(), &qpoch(i1.a) * &qpoch(i1.b))
}

/// Rescaling factor turning `w_m(a,b)` into its dual PBW element.
pub fn dual_pbw_factor(i: &PBWIndex) -> RationalFunction {
    RationalFunction::from_laurent(&qpoch(i.a) * &qpoch(i.b))
}

/// Pairing computed by expanding both arguments in the PBW basis.
pub fn pairing_via_pbw(x: &UdotElement, y: &UdotElement) -> RationalFunction {
    if x.weight() != y.weight() {
        return RationalFunction::zero();
    }
    let px = expand_to_pbw(x);
    let py = expand_to_pbw(y);
    let mut total = RationalFunction::zero();
    for (w, c) in px.terms() {
        let d = py.coeff(w);
        if !d.is_zero() {
            total = &total + &(&(c * &d) * &pairing_pbw(w, w));
        }
    }
    total
}

#[derive(Clone, Debug)]
pub struct PositivityEntry {
    pub s: u32,
    pub target: PBWIndex,
    pub coeff: RationalFunction,
    pub series: QSeries,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct PositivityReport {
    pub index: CBIndex,
    pub order: i64,
    pub entries: Vec<PositivityEntry>,
    pub pass: bool,
}

/// Checks that the leading CB→PBW coefficient is 1 and every other one lies in
/// `q^{-1} N[[q^{-1}]]` through `q^{-order}`.
pub fn positivity_report(i: &CBIndex, order: i64) -> Result<PositivityReport> {
    let i = CBIndex::canonical(i.a, i.b, i.m);
    let combo = cb_to_pbw(&i);
    let mut entries = Vec::new();
    for s in 0..=i.a.min(i.b) {
        let target = PBWIndex::new(i.a - s, i.b - s, i.m);
        let coeff = combo.coeff(&target);
        let series = series_expand(&coeff, order)?;
        let ok = if s == 0 {
            coeff.is_one()
        } else {
            series.is_nonneg_integral() && series.valuation().is_none_or(|k| k >= 1)
        };
        entries.push(PositivityEntry {
            s,
            target,
            coeff,
            series,
            ok,
        });
    }
    let pass = entries.iter().all(|e| e.ok);
    Ok(PositivityReport {
        index: i,
        order,
        entries,
        pass,
    })
}

#[derive(Serialize, Deserialize)]
struct PbwTermRepr {
    a: u32,
    b: u32,
    coeff: RationalFunction,
}

#[derive(Serialize, Deserialize)]
struct PbwComboRepr {
    m: i32,
    terms: Vec<PbwTermRepr>,
}

impl Serialize for PBWCombo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PbwComboRepr {
            m: self.weight,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| PbwTermRepr {
                    a: i.a,
                    b: i.b,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PBWCombo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PbwComboRepr::deserialize(d)?;
        let mut out = PBWCombo::zero(r.m);
        for t in r.terms {
            out.add_term(PBWIndex::new(t.a, t.b, r.m), &t.coeff);
        }
        Ok(out)
    }
}
