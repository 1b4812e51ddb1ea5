//! Acceptance criteria, each checked exactly over its full range.
//! Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;

use udot_pbw::bases::{
    cb_to_pbw_formula, ladder_matrices, pairing_via_pbw, pbw_to_cb, pbw_to_cb_formula,
    positivity_report, PBWIndex,
};
use udot_pbw::fusion::{pairing_module_limit, verify_defining_limit, Fuser};
use udot_pbw::qarith::{gaussian_binomial, LaurentPoly, RationalFunction};
use udot_pbw::repmod::{
    act_divpow, act_gen, apply_udot, closed_action_ef, closed_action_fe, unfuse, ModGen,
    TensorVector, WeightParam,
};
use udot_pbw::udot1::{mul_gen, pairing, pairing_cb, CBIndex, Generator, Orientation, UdotElement};
use udot_pbw::Error;

struct Verdict {
    cases: usize,
    failures: Vec<String>,
}

impl Verdict {
    fn from_cases(results: Vec<Result<(), String>>) -> Self {
        Verdict {
            cases: results.len(),
            failures: results.into_iter().filter_map(Result::err).collect(),
        }
    }
}

fn weights(max: i32) -> Vec<i32> {
    (-max..=max).collect()
}

fn grid(max_a: u32, max_b: u32, max_m: i32) -> Vec<(u32, u32, i32)> {
    let mut v = Vec::new();
    for m in weights(max_m) {
        for a in 0..=max_a {
            for b in 0..=max_b {
                v.push((a, b, m));
            }
        }
    }
    v
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `Π_{s=1}^{k} (1 - q^{-2s})`, multiplied out here rather than taken from the library.
fn pochhammer_oracle(k: u32) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for s in 1..=k as i32 {
        p = &p * &LaurentPoly::from_int_terms(&[(0, 1), (-2 * s, -1)]);
    }
    p
}

fn mutual_inverse() -> Verdict {
    Verdict::from_cases(
        grid(8, 8, 12)
            .into_par_iter()
            .map(|(a, b, m)| {
                let (to_pbw, to_cb) = ladder_matrices(a, b, m);
                check(
                    to_cb.mul(&to_pbw).is_identity() && to_pbw.mul(&to_cb).is_identity(),
                    || format!("a={a} b={b} m={m}"),
                )
            })
            .collect(),
    )
}

fn three_routes() -> Verdict {
    let spot = {
        let ef = UdotElement::basis(CBIndex::canonical(1, 1, 0));
        // (1 + q^{-2}) / (1 - q^{-2})^2
        let expect = RationalFunction::new(
            LaurentPoly::from_int_terms(&[(0, 1), (-2, 1)]),
            &LaurentPoly::from_int_terms(&[(0, 1), (-2, -1)])
                * &LaurentPoly::from_int_terms(&[(0, 1), (-2, -1)]),
        );
        let i = CBIndex::canonical(1, 1, 0);
        let got = (
            pairing_cb(&i, &i),
            pairing_via_pbw(&ef, &ef),
            pairing_module_limit(&ef, &ef),
        );
        check(
            got.0 == expect && got.1 == expect && got.2.as_ref() == Ok(&expect),
            || format!("spot value: {got:?}"),
        )
    };
    let mut results = vec![spot];
    let per_weight: Vec<Vec<Result<(), String>>> = weights(6)
        .into_par_iter()
        .map(|m| {
            let idx: Vec<CBIndex> = (0..=4)
                .flat_map(|a| (0..=4).map(move |b| CBIndex::canonical(a, b, m)))
                .collect();
            let mut out = Vec::new();
            for i1 in &idx {
                for i2 in &idx {
                    let x = UdotElement::basis(*i1);
                    let y = UdotElement::basis(*i2);
                    let r1 = pairing_cb(i1, i2);
                    let r2 = pairing_via_pbw(&x, &y);
                    let r3 = pairing_module_limit(&x, &y);
                    out.push(check(r1 == r2 && r3.as_ref() == Ok(&r1), || {
                        format!("{i1} {i2}: cb={r1} pbw={r2} module={r3:?}")
                    }));
                }
            }
            out
        })
        .collect();
    results.extend(per_weight.into_iter().flatten());
    Verdict::from_cases(results)
}

fn defining_limit() -> Verdict {
    let per_weight: Vec<Vec<Result<(), String>>> = weights(6)
        .into_par_iter()
        .map(|m| {
            let mut fuser = Fuser::new();
            let mut out = Vec::new();
            for a in 0..=5 {
                for b in 0..=5 {
                    let f = fuser.fuse(a, b, m).value;
                    let closed = pbw_to_cb(&PBWIndex::new(a, b, m));
                    out.push(check(f == closed && verify_defining_limit(a, b, m), || {
                        format!("a={a} b={b} m={m}: fuse={f} closed={closed}")
                    }));
                }
            }
            out
        })
        .collect();
    Verdict::from_cases(per_weight.into_iter().flatten().collect())
}

fn round_trip() -> Verdict {
    Verdict::from_cases(
        grid(5, 5, 6)
            .into_par_iter()
            .map(|(a, b, m)| {
                let e = unfuse(&Fuser::new().fuse(a, b, m).value);
                let ok = matches!(&e, Ok(e) if e.len() == 1
                    && e.get(&(a, b)).is_some_and(RationalFunction::is_one));
                check(ok, || format!("a={a} b={b} m={m}: {e:?}"))
            })
            .collect(),
    )
}

fn orthogonality() -> Verdict {
    let per_weight: Vec<Vec<Result<(), String>>> = weights(6)
        .into_par_iter()
        .map(|m| {
            let mut fuser = Fuser::new();
            let w: Vec<((u32, u32), UdotElement)> = (0..=4)
                .flat_map(|a| (0..=4).map(move |b| (a, b)))
                .map(|(a, b)| ((a, b), fuser.fuse(a, b, m).value))
                .collect();
            let mut out = Vec::new();
            for ((a, b), x) in &w {
                for ((a2, b2), y) in &w {
                    let got = pairing_module_limit(x, y);
                    let expect = if (a, b) == (a2, b2) {
                        RationalFunction::new(
                            LaurentPoly::one(),
                            &pochhammer_oracle(*a) * &pochhammer_oracle(*b),
                        )
                    } else {
                        RationalFunction::zero()
                    };
                    out.push(check(got.as_ref() == Ok(&expect), || {
                        format!("w_{m}({a},{b}) vs w_{m}({a2},{b2}): {got:?}")
                    }));
                }
            }
            // distinct weights: no common module, and the form vanishes
            if m < 6 {
                let x = &w[w.len() - 1].1;
                let y = fuser.fuse(4, 4, m + 1).value;
                out.push(check(
                    matches!(pairing_module_limit(x, &y), Err(Error::WeightMismatch { .. }))
                        && pairing(x, &y).is_zero(),
                    || format!("weights {m} and {}", m + 1),
                ));
            }
            out
        })
        .collect();
    Verdict::from_cases(per_weight.into_iter().flatten().collect())
}

fn closed_actions() -> Verdict {
    Verdict::from_cases(
        grid(4, 4, 4)
            .into_par_iter()
            .map(|(a, b, m)| {
                let v0 = TensorVector::vacuum(WeightParam::symbolic(m));
                let ef_iter = act_divpow(ModGen::E, a, &act_divpow(ModGen::F, b, &v0));
                let fe_iter = act_divpow(ModGen::F, b, &act_divpow(ModGen::E, a, &v0));
                let ef = closed_action_ef(a, b, &v0);
                let fe = closed_action_fe(a, b, &v0);
                check(ef == ef_iter && fe == fe_iter, || {
                    format!("symbolic a={a} b={b} m={m}")
                })?;
                for p in 6..=12 {
                    let c0 = TensorVector::vacuum(WeightParam::concrete(p, m).unwrap());
                    let ef_c = act_divpow(ModGen::E, a, &act_divpow(ModGen::F, b, &c0));
                    let fe_c = act_divpow(ModGen::F, b, &act_divpow(ModGen::E, a, &c0));
                    check(
                        ef.substitute(p).as_ref() == Ok(&ef_c)
                            && fe.substitute(p).as_ref() == Ok(&fe_c)
                            && closed_action_ef(a, b, &c0) == ef_c
                            && closed_action_fe(a, b, &c0) == fe_c,
                        || format!("concrete a={a} b={b} m={m} p={p}"),
                    )?;
                }
                Ok(())
            })
            .collect(),
    )
}

fn positivity() -> Verdict {
    Verdict::from_cases(
        grid(6, 6, 8)
            .into_par_iter()
            .map(|(a, b, m)| {
                let rep = positivity_report(&CBIndex::canonical(a, b, m), 30)
                    .map_err(|e| format!("a={a} b={b} m={m}: {e}"))?;
                let lead_one = rep.entries.first().is_some_and(|e| e.s == 0 && e.coeff.is_one());
                let tail_ok = rep.entries.iter().skip(1).all(|e| {
                    e.series.is_nonneg_integral() && e.series.valuation().is_none_or(|k| k >= 1)
                });
                check(lead_one && tail_ok && rep.pass, || format!("a={a} b={b} m={m}"))
            })
            .collect(),
    )
}

fn qbinom_identity() -> Verdict {
    Verdict::from_cases(
        (1..=20u32)
            .map(|k| {
                let mut sum = LaurentPoly::zero();
                for s in 0..=k {
                    let t = gaussian_binomial(k as i64, s).shift(s as i32 * (1 - k as i32));
                    sum = if s % 2 == 0 { &sum + &t } else { &sum - &t };
                }
                check(sum.is_zero(), || format!("k={k}: {sum}"))
            })
            .collect(),
    )
}

fn homomorphism() -> Verdict {
    Verdict::from_cases(
        grid(4, 4, 4)
            .into_par_iter()
            .map(|(a, b, m)| {
                let x = UdotElement::basis(CBIndex::canonical(a, b, m));
                for p in 6..=12 {
                    let c0 = TensorVector::vacuum(WeightParam::concrete(p, m).unwrap());
                    let xv = apply_udot(&x, &c0).unwrap();
                    for (g, mg) in [(Generator::E, ModGen::E), (Generator::F, ModGen::F)] {
                        let lhs = apply_udot(&mul_gen(g, &x), &c0).unwrap();
                        check(lhs == act_gen(mg, &xv), || {
                            format!("{g:?} on a={a} b={b} m={m} p={p}")
                        })?;
                    }
                }
                Ok(())
            })
            .collect(),
    )
}

fn wall() -> Verdict {
    let mut results = Vec::new();
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            let m = b as i32 - a as i32;
            let cb_ef = cb_to_pbw_formula(a, b, m, Orientation::EF);
            let cb_fe = cb_to_pbw_formula(a, b, m, Orientation::FE);
            let i = PBWIndex::new(a, b, m);
            let w_ef = pbw_to_cb_formula(&i, Orientation::EF);
            let w_fe = pbw_to_cb_formula(&i, Orientation::FE);
            results.push(check(
                cb_ef == cb_fe && matches!((&w_ef, &w_fe), (Ok(x), Ok(y)) if x == y),
                || format!("a={a} b={b} m={m}"),
            ));
        }
    }
    Verdict::from_cases(results)
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("mutual-inverse transitions", mutual_inverse),
        ("three-route pairing agreement", three_routes),
        ("defining limit and closed form", defining_limit),
        ("unfuse round trip", round_trip),
        ("module-limit orthogonality", orthogonality),
        ("closed action formulas", closed_actions),
        ("positivity", positivity),
        ("q-binomial identity", qbinom_identity),
        ("homomorphism gate", homomorphism),
        ("wall consistency", wall),
    ];
    let mut all = true;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = f();
        let pass = v.failures.is_empty();
        all &= pass;
        println!(
            "{} [{:>2}] {} (cases={}, {:.1}s)",
            if pass { "PASS" } else { "FAIL" },
            n + 1,
            name,
            v.cases,
            start.elapsed().as_secs_f64()
        );
        if let Some(first) = v.failures.first() {
            println!("       first failure: {first}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
