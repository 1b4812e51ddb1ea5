//! Exhaustive verification sweeps behind `udot-pbw verify`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bases::{
    cb_to_pbw_formula, ladder_matrices, pairing_pbw, pairing_via_pbw, pbw_to_cb,
    pbw_to_cb_formula, positivity_report, PBWIndex,
};
use crate::fusion::{verify_defining_limit, Fuser};
use crate::qarith::{gaussian_binomial, LaurentPoly, RationalFunction};
use crate::repmod::{
    act_divpow, act_gen, apply_udot, closed_action_ef, closed_action_fe, gram, unfuse, ModGen,
    TensorVector, WeightParam,
};
use crate::udot1::{mul_gen, pairing_cb, CBIndex, Generator, Orientation, UdotElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Inverse,
    Orthogonality,
    Limits,
    Positivity,
    Homomorphism,
    QbinomIdentity,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Inverse => "inverse",
            Suite::Orthogonality => "orthogonality",
            Suite::Limits => "limits",
            Suite::Positivity => "positivity",
            Suite::Homomorphism => "homomorphism",
            Suite::QbinomIdentity => "qbinom-identity",
        }
    }

    pub fn default_ranges(self) -> Ranges {
        let (max_a, max_b, max_m) = match self {
            Suite::Inverse => (8, 8, 12),
            Suite::Orthogonality => (4, 4, 6),
            Suite::Limits => (5, 5, 6),
            Suite::Positivity => (6, 6, 8),
            Suite::Homomorphism => (4, 4, 4),
            Suite::QbinomIdentity => (20, 0, 0),
        };
        Ranges {
            max_a,
            max_b,
            max_m,
            order: 30,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ranges {
    pub max_a: u32,
    pub max_b: u32,
    pub max_m: u32,
    pub order: i64,
}

/// Concrete highest weights used by the homomorphism suite.
pub const CONCRETE_P: std::ops::RangeInclusive<i64> = 6..=12;

#[derive(Clone, Debug, Serialize)]
pub struct CaseFailure {
    pub check: &'static str,
    pub case: BTreeMap<&'static str, i64>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub ranges: Ranges,
    pub cases: usize,
    pub failures: Vec<CaseFailure>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Outcome {
    cases: usize,
    failures: Vec<CaseFailure>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, check: &'static str, case: &[(&'static str, i64)], detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(CaseFailure {
                check,
                case: case.iter().copied().collect(),
                detail: detail(),
            });
        }
    }

    fn merge(items: Vec<Outcome>) -> Outcome {
        let mut out = Outcome::new();
        for o in items {
            out.cases += o.cases;
            out.failures.extend(o.failures);
        }
        out
    }
}

fn weights(max_m: u32) -> Vec<i32> {
    (-(max_m as i32)..=max_m as i32).collect()
}

fn grid(r: &Ranges) -> Vec<(u32, u32, i32)> {
    let mut v = Vec::new();
    for m in weights(r.max_m) {
        for a in 0..=r.max_a {
            for b in 0..=r.max_b {
                v.push((a, b, m));
            }
        }
    }
    v
}

pub fn run_suite(suite: Suite, ranges: Ranges) -> SuiteReport {
    let out = match suite {
        Suite::Inverse => inverse(&ranges),
        Suite::Orthogonality => orthogonality(&ranges),
        Suite::Limits => limits(&ranges),
        Suite::Positivity => positivity(&ranges),
        Suite::Homomorphism => homomorphism(&ranges),
        Suite::QbinomIdentity => qbinom_identity(&ranges),
    };
    SuiteReport {
        suite: suite.name(),
        ranges,
        cases: out.cases,
        failures: out.failures,
    }
}

/// Transition matrices are mutually inverse and unital triangular; on the
/// wall both expansion formulas agree.
fn inverse(r: &Ranges) -> Outcome {
    let items = grid(r)
        .into_par_iter()
        .map(|(a, b, m)| {
            let mut o = Outcome::new();
            let case = [("a", a as i64), ("b", b as i64), ("m", m as i64)];
            let (to_pbw, to_cb) = ladder_matrices(a, b, m);
            o.check(
                to_cb.mul(&to_pbw).is_identity() && to_pbw.mul(&to_cb).is_identity(),
                "mutual-inverse",
                &case,
                || "ladder matrices are not inverse".into(),
            );
            o.check(
                to_pbw.is_unital_lower_triangular() && to_cb.is_unital_lower_triangular(),
                "unital-triangular",
                &case,
                || "ladder matrix is not unital triangular".into(),
            );
            if m == b as i32 - a as i32 {
                let ef = cb_to_pbw_formula(a, b, m, Orientation::EF);
                let fe = cb_to_pbw_formula(a, b, m, Orientation::FE);
                o.check(ef == fe, "wall-cb-to-pbw", &case, || format!("{ef} != {fe}"));
                let i = PBWIndex::new(a, b, m);
                let ef = pbw_to_cb_formula(&i, Orientation::EF);
                let fe = pbw_to_cb_formula(&i, Orientation::FE);
                o.check(
                    matches!((&ef, &fe), (Ok(x), Ok(y)) if x == y),
                    "wall-pbw-to-cb",
                    &case,
                    || format!("{ef:?} != {fe:?}"),
                );
            }
            o
        })
        .collect();
    Outcome::merge(items)
}

fn cb_ladder(r: &Ranges) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for a in 0..=r.max_a {
        for b in 0..=r.max_b {
            v.push((a, b));
        }
    }
    v
}

fn vacuum_image(x: &UdotElement) -> TensorVector {
    apply_udot(x, &TensorVector::vacuum(WeightParam::symbolic(x.weight()))).expect("same weight")
}

fn module_limit(v: &TensorVector, w: &TensorVector) -> Result<RationalFunction, String> {
    gram(v, w)
        .and_then(|g| g.eval_u0())
        .map_err(|e| e.to_string())
}

/// Three pairing routes agree on canonical-basis pairs, and the PBW basis is
/// orthogonal with the expected norms through the module limit.
fn orthogonality(r: &Ranges) -> Outcome {
    let idx = cb_ladder(r);
    let spot = {
        let mut o = Outcome::new();
        let ef = UdotElement::basis(CBIndex::canonical(1, 1, 0));
        let expect = RationalFunction::new(
            LaurentPoly::from_int_terms(&[(0, 1), (-2, 1)]),
            LaurentPoly::from_int_terms(&[(0, 1), (-2, -2), (-4, 1)]),
        );
        let v = vacuum_image(&ef);
        let got = [
            Ok(pairing_cb(&CBIndex::canonical(1, 1, 0), &CBIndex::canonical(1, 1, 0))),
            Ok(pairing_via_pbw(&ef, &ef)),
            module_limit(&v, &v),
        ];
        o.check(
            got.iter().all(|g| g.as_ref() == Ok(&expect)),
            "spot-value",
            &[("a", 1), ("b", 1), ("m", 0)],
            || format!("{got:?}"),
        );
        o
    };
    let items: Vec<Outcome> = weights(r.max_m)
        .into_par_iter()
        .map(|m| {
            let mut o = Outcome::new();
            let cb: Vec<(CBIndex, UdotElement, TensorVector)> = idx
                .iter()
                .map(|&(a, b)| {
                    let i = CBIndex::canonical(a, b, m);
                    let x = UdotElement::basis(i);
                    let v = vacuum_image(&x);
                    (i, x, v)
                })
                .collect();
            for (i1, x1, v1) in &cb {
                for (i2, x2, v2) in &cb {
                    let r1 = pairing_cb(i1, i2);
                    let r2 = pairing_via_pbw(x1, x2);
                    let r3 = module_limit(v1, v2);
                    let case = [
                        ("a", i1.a as i64),
                        ("b", i1.b as i64),
                        ("a2", i2.a as i64),
                        ("b2", i2.b as i64),
                        ("m", m as i64),
                    ];
                    o.check(
                        r1 == r2 && r3.as_ref() == Ok(&r1),
                        "three-routes",
                        &case,
                        || format!("cb={r1} pbw={r2} module-limit={r3:?}"),
                    );
                }
            }
            let mut fuser = Fuser::new();
            let w: Vec<(PBWIndex, TensorVector)> = idx
                .iter()
                .map(|&(a, b)| (PBWIndex::new(a, b, m), vacuum_image(&fuser.fuse(a, b, m).value)))
                .collect();
            for (i1, v1) in &w {
                for (i2, v2) in &w {
                    let got = module_limit(v1, v2);
                    let expect = pairing_pbw(i1, i2);
                    let case = [
                        ("a", i1.a as i64),
                        ("b", i1.b as i64),
                        ("a2", i2.a as i64),
                        ("b2", i2.b as i64),
                        ("m", m as i64),
                    ];
                    o.check(got.as_ref() == Ok(&expect), "pbw-norm", &case, || {
                        format!("module-limit={got:?} expected={expect}")
                    });
                }
            }
            o
        })
        .collect();
    let mut all = vec![spot];
    all.extend(items);
    Outcome::merge(all)
}

/// Recursive fusion equals the closed PBW→CB formula, its vacuum image
/// approximates the pure tensor, and unfusing recovers the pure tensor.
fn limits(r: &Ranges) -> Outcome {
    let items = weights(r.max_m)
        .into_par_iter()
        .map(|m| {
            let mut o = Outcome::new();
            let mut fuser = Fuser::new();
            for a in 0..=r.max_a {
                for b in 0..=r.max_b {
                    let case = [("a", a as i64), ("b", b as i64), ("m", m as i64)];
                    let f = fuser.fuse(a, b, m).value;
                    let closed = pbw_to_cb(&PBWIndex::new(a, b, m));
                    o.check(f == closed, "fuse-equals-closed-form", &case, || {
                        format!("fuse={f} closed={closed}")
                    });
                    o.check(verify_defining_limit(a, b, m), "defining-limit", &case, || {
                        "remainder is not asymptotically zero".into()
                    });
                    let back = unfuse(&f);
                    let ok = matches!(&back, Ok(e) if e.len() == 1
                        && e.get(&(a, b)).is_some_and(|c| c.is_one()));
                    o.check(ok, "round-trip", &case, || format!("{back:?}"));
                }
            }
            o
        })
        .collect();
    Outcome::merge(items)
}

fn positivity(r: &Ranges) -> Outcome {
    let items = grid(r)
        .into_par_iter()
        .map(|(a, b, m)| {
            let mut o = Outcome::new();
            let case = [("a", a as i64), ("b", b as i64), ("m", m as i64)];
            let rep = positivity_report(&CBIndex::canonical(a, b, m), r.order);
            let ok = matches!(&rep, Ok(x) if x.pass);
            o.check(ok, "positivity", &case, || match &rep {
                Ok(x) => x
                    .entries
                    .iter()
                    .filter(|e| !e.ok)
                    .map(|e| format!("s={} coeff={} series={}", e.s, e.coeff, e.series))
                    .collect::<Vec<_>>()
                    .join("; "),
                Err(e) => e.to_string(),
            });
            o
        })
        .collect();
    Outcome::merge(items)
}

/// Left multiplication in `U̇` matches the module action, and the closed
/// action formulas match iterated generator actions.
fn homomorphism(r: &Ranges) -> Outcome {
    let items = grid(r)
        .into_par_iter()
        .map(|(a, b, m)| {
            let mut o = Outcome::new();
            let case = [("a", a as i64), ("b", b as i64), ("m", m as i64)];
            let sym = WeightParam::symbolic(m);
            let v0 = TensorVector::vacuum(sym);
            let ef_iter = act_divpow(ModGen::E, a, &act_divpow(ModGen::F, b, &v0));
            let fe_iter = act_divpow(ModGen::F, b, &act_divpow(ModGen::E, a, &v0));
            let ef = closed_action_ef(a, b, &v0);
            let fe = closed_action_fe(a, b, &v0);
            o.check(ef == ef_iter, "closed-action-ef", &case, || format!("{ef} != {ef_iter}"));
            o.check(fe == fe_iter, "closed-action-fe", &case, || format!("{fe} != {fe_iter}"));

            let x = UdotElement::basis(CBIndex::canonical(a, b, m));
            for p in CONCRETE_P {
                let case = [("a", a as i64), ("b", b as i64), ("m", m as i64), ("p", p)];
                let Ok(param) = WeightParam::concrete(p, m) else {
                    continue;
                };
                let c0 = TensorVector::vacuum(param);
                let ef_c = act_divpow(ModGen::E, a, &act_divpow(ModGen::F, b, &c0));
                let fe_c = act_divpow(ModGen::F, b, &act_divpow(ModGen::E, a, &c0));
                let ok = ef.substitute(p).as_ref() == Ok(&ef_c)
                    && fe.substitute(p).as_ref() == Ok(&fe_c)
                    && closed_action_ef(a, b, &c0) == ef_c
                    && closed_action_fe(a, b, &c0) == fe_c;
                o.check(ok, "concrete-substitution", &case, || {
                    "symbolic specialization differs from concrete action".into()
                });
                let xv = apply_udot(&x, &c0).expect("same weight");
                for (g, mg) in [(Generator::E, ModGen::E), (Generator::F, ModGen::F)] {
                    let lhs = apply_udot(&mul_gen(g, &x), &c0).expect("same weight");
                    let rhs = act_gen(mg, &xv);
                    o.check(lhs == rhs, "mul-gen-vs-action", &case, || {
                        format!("{g:?}: {lhs} != {rhs}")
                    });
                }
            }
            o
        })
        .collect();
    Outcome::merge(items)
}

/// `Σ_{s=0}^{k} (-1)^s q^{s(1-k)} [k choose s] = 0` for `1 ≤ k ≤ max_a`.
fn qbinom_identity(r: &Ranges) -> Outcome {
    let items = (1..=r.max_a)
        .into_par_iter()
        .map(|k| {
            let mut o = Outcome::new();
            let mut sum = LaurentPoly::zero();
            for s in 0..=k {
                let t = gaussian_binomial(k as i64, s).shift(s as i32 * (1 - k as i32));
                sum = if s % 2 == 0 { &sum + &t } else { &sum - &t };
            }
            o.check(sum.is_zero(), "qbinom-identity", &[("k", k as i64)], || sum.to_string());
            o
        })
        .collect();
    Outcome::merge(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(max_a: u32, max_b: u32, max_m: u32) -> Ranges {
        Ranges {
            max_a,
            max_b,
            max_m,
            order: 12,
        }
    }

    #[test]
    fn suites_pass_on_small_ranges() {
        for s in [
            Suite::Inverse,
            Suite::Orthogonality,
            Suite::Limits,
            Suite::Positivity,
            Suite::Homomorphism,
        ] {
            let rep = run_suite(s, small(2, 2, 2));
            assert!(rep.pass(), "{:?}", rep.failures);
            assert!(rep.cases > 0);
        }
        assert!(run_suite(Suite::QbinomIdentity, small(6, 0, 0)).pass());
    }

    #[test]
    fn reports_are_deterministic() {
        let r = small(2, 2, 1);
        let a = serde_json::to_string(&run_suite(Suite::Inverse, r)).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::Inverse, r)).unwrap();
        assert_eq!(a, b);
    }
}
