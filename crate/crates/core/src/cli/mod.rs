//! Command-line front end: expansions, pairings, fusion, sweeps and tables.

pub mod suites;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bases::{
    cb_to_pbw, ladder_matrices, pairing_via_pbw, pbw_to_cb, positivity_report, PBWIndex,
};
use crate::fusion::{defining_limit_remainder, pairing_module_limit, Fuser};
use crate::qarith::RationalFunction;
use crate::udot1::{pairing_cb, CBIndex, UdotElement};

pub use suites::{run_suite, Ranges, Suite, SuiteReport};

/// Environment variable read for the worker thread count.
pub const THREADS_ENV: &str = "UDOT_PBW_THREADS";

#[derive(Parser, Debug)]
#[command(name = "udot-pbw", version, about = "PBW and canonical bases of modified U_q(sl2)")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Cb,
    Pbw,
    ModuleLimit,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// canonical-basis pairings at weight `m`
    Pairing,
    /// CB→PBW ladder coefficients
    ToPbw,
    /// PBW→CB ladder coefficients
    ToCb,
    /// q^{-1}-expansions of CB→PBW coefficients
    Positivity,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expand a canonical-basis element in the PBW basis
    ExpandCb(Index),
    /// Expand a PBW element in the canonical basis
    ExpandPbw(Index),
    /// Fuse E^(a) and F^(b) at weight m and show the defining-limit remainder
    Fuse(Index),
    /// Pair two canonical-basis elements
    Pair(PairArgs),
    /// Run a verification sweep
    Verify(VerifyArgs),
    /// Emit a grid of pairings or transition coefficients
    Table(TableArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Index {
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub m: i32,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct PairArgs {
    #[command(flatten)]
    pub first: Index,
    /// defaults to `a`
    #[arg(long)]
    pub a2: Option<u32>,
    /// defaults to `b`
    #[arg(long)]
    pub b2: Option<u32>,
    /// defaults to `m`
    #[arg(long, allow_hyphen_values = true)]
    pub m2: Option<i32>,
    #[arg(long, value_enum, default_value_t = Route::All)]
    pub route: Route,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub ranges: RangeArgs,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct RangeArgs {
    /// for qbinom-identity, the largest k
    #[arg(long)]
    pub max_a: Option<u32>,
    #[arg(long)]
    pub max_b: Option<u32>,
    #[arg(long)]
    pub max_m: Option<u32>,
    /// series truncation order for positivity
    #[arg(long)]
    pub order: Option<i64>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub kind: TableKind,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub m: i32,
    #[arg(long, default_value_t = 3)]
    pub max_a: u32,
    #[arg(long, default_value_t = 3)]
    pub max_b: u32,
    #[arg(long, default_value_t = 30)]
    pub order: i64,
}

/// What a command printed and how it should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    /// JSON diagnostic naming the first failing case, for exit status 1
    pub diagnostic: Option<String>,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            diagnostic: None,
        }
    }

    pub fn code(&self) -> i32 {
        if self.diagnostic.is_some() {
            1
        } else {
            0
        }
    }
}

fn csv_field(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn to_json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

pub fn run(cli: &Cli) -> Output {
    let f = cli.format;
    match &cli.command {
        Command::ExpandCb(i) => expand_cb(*i, f),
        Command::ExpandPbw(i) => expand_pbw(*i, f),
        Command::Fuse(i) => fuse_cmd(*i, f),
        Command::Pair(p) => pair(*p, f),
        Command::Verify(v) => verify(*v, f),
        Command::Table(t) => table(*t, f),
    }
}

fn expand_cb(i: Index, f: Format) -> Output {
    let idx = CBIndex::canonical(i.a, i.b, i.m);
    let combo = cb_to_pbw(&idx);
    Output::ok(match f {
        Format::Text => format!("{idx} = {combo}\n"),
        Format::Json => to_json(&combo) + "\n",
        Format::Csv => {
            let mut s = String::from("a,b,m,coeff\n");
            for (w, c) in combo.terms() {
                writeln!(s, "{},{},{},{}", w.a, w.b, w.m, csv_field(&c.to_string())).unwrap();
            }
            s
        }
    })
}

fn expand_pbw(i: Index, f: Format) -> Output {
    let w = PBWIndex::new(i.a, i.b, i.m);
    let x = pbw_to_cb(&w);
    Output::ok(match f {
        Format::Text => format!("{w} = {x}\n"),
        Format::Json => to_json(&x) + "\n",
        Format::Csv => udot_csv(&x),
    })
}

fn udot_csv(x: &UdotElement) -> String {
    let mut s = String::from("a,b,m,orient,coeff\n");
    for (idx, c) in x.terms() {
        writeln!(
            s,
            "{},{},{},{},{}",
            idx.a,
            idx.b,
            idx.m,
            idx.orient.as_str(),
            csv_field(&c.to_string())
        )
        .unwrap();
    }
    s
}

fn fuse_cmd(i: Index, f: Format) -> Output {
    let value = Fuser::new().fuse(i.a, i.b, i.m).value;
    let rem = defining_limit_remainder(i.a, i.b, i.m);
    let ok = rem.is_asympt_zero();
    let stdout = match f {
        Format::Text => format!(
            "E^({}) *_{} F^({}) = {}\nremainder = {}\nasymptotically zero: {}\n",
            i.a, i.m, i.b, value, rem, ok
        ),
        Format::Json => {
            to_json(&json!({
                "a": i.a, "b": i.b, "m": i.m,
                "value": value,
                "remainder": rem,
                "asymptotically_zero": ok,
            })) + "\n"
        }
        Format::Csv => udot_csv(&value),
    };
    let diagnostic = (!ok).then(|| {
        to_json(&json!({
            "check": "defining-limit",
            "case": {"a": i.a, "b": i.b, "m": i.m},
        }))
    });
    Output { stdout, diagnostic }
}

fn pair(p: PairArgs, f: Format) -> Output {
    let i1 = CBIndex::canonical(p.first.a, p.first.b, p.first.m);
    let i2 = CBIndex::canonical(
        p.a2.unwrap_or(p.first.a),
        p.b2.unwrap_or(p.first.b),
        p.m2.unwrap_or(p.first.m),
    );
    let x = UdotElement::basis(i1);
    let y = UdotElement::basis(i2);
    let routes: Vec<Route> = match p.route {
        Route::All => vec![Route::Cb, Route::Pbw, Route::ModuleLimit],
        r => vec![r],
    };
    let mut values: Vec<(&str, Result<RationalFunction, String>)> = Vec::new();
    for r in routes {
        let (name, v) = match r {
            Route::Cb => ("cb", Ok(pairing_cb(&i1, &i2))),
            Route::Pbw => ("pbw", Ok(pairing_via_pbw(&x, &y))),
            Route::ModuleLimit => (
                "module-limit",
                if i1.m != i2.m {
                    Ok(RationalFunction::zero())
                } else {
                    pairing_module_limit(&x, &y).map_err(|e| e.to_string())
                },
            ),
            Route::All => unreachable!(),
        };
        values.push((name, v));
    }
    let agree = values.iter().all(|(_, v)| v.is_ok() && v == &values[0].1);
    let stdout = match f {
        Format::Text => {
            let mut s = format!("({i1}, {i2})\n");
            for (name, v) in &values {
                match v {
                    Ok(v) => writeln!(s, "{name}: {v}").unwrap(),
                    Err(e) => writeln!(s, "{name}: error: {e}").unwrap(),
                }
            }
            if values.len() > 1 {
                writeln!(s, "agree: {agree}").unwrap();
            }
            s
        }
        Format::Json => {
            let mut routes = serde_json::Map::new();
            for (name, v) in &values {
                let v = match v {
                    Ok(v) => serde_json::to_value(v).unwrap(),
                    Err(e) => json!({ "error": e }),
                };
                routes.insert((*name).into(), v);
            }
            to_json(&json!({
                "left": {"a": i1.a, "b": i1.b, "m": i1.m, "orient": i1.orient},
                "right": {"a": i2.a, "b": i2.b, "m": i2.m, "orient": i2.orient},
                "routes": routes,
                "agree": agree,
            })) + "\n"
        }
        Format::Csv => {
            let mut s = String::from("route,value\n");
            for (name, v) in &values {
                let v = match v {
                    Ok(v) => v.to_string(),
                    Err(e) => format!("error: {e}"),
                };
                writeln!(s, "{name},{}", csv_field(&v)).unwrap();
            }
            s
        }
    };
    let diagnostic = (!agree).then(|| {
        to_json(&json!({
            "check": "pairing-routes",
            "case": {"a": i1.a, "b": i1.b, "m": i1.m, "a2": i2.a, "b2": i2.b, "m2": i2.m},
        }))
    });
    Output { stdout, diagnostic }
}

fn verify(v: VerifyArgs, f: Format) -> Output {
    let d = v.suite.default_ranges();
    let ranges = Ranges {
        max_a: v.ranges.max_a.unwrap_or(d.max_a),
        max_b: v.ranges.max_b.unwrap_or(d.max_b),
        max_m: v.ranges.max_m.unwrap_or(d.max_m),
        order: v.ranges.order.unwrap_or(d.order),
    };
    let rep = run_suite(v.suite, ranges);
    let stdout = match f {
        Format::Text => {
            let mut s = format!(
                "{} {} cases={} failures={}\n",
                if rep.pass() { "PASS" } else { "FAIL" },
                rep.suite,
                rep.cases,
                rep.failures.len()
            );
            if let Some(first) = rep.failures.first() {
                writeln!(s, "first failure: {} {:?} {}", first.check, first.case, first.detail)
                    .unwrap();
            }
            s
        }
        Format::Json => to_json(&rep) + "\n",
        Format::Csv => {
            let mut s = String::from("suite,cases,failures,pass\n");
            writeln!(s, "{},{},{},{}", rep.suite, rep.cases, rep.failures.len(), rep.pass())
                .unwrap();
            s
        }
    };
    let diagnostic = rep.failures.first().map(|first| {
        to_json(&json!({
            "suite": rep.suite,
            "check": first.check,
            "case": first.case,
            "detail": first.detail,
        }))
    });
    Output { stdout, diagnostic }
}

struct Row {
    key: Vec<(&'static str, String)>,
    value: String,
}

fn render_rows(rows: &[Row], f: Format) -> String {
    match f {
        Format::Text => rows
            .iter()
            .map(|r| {
                let k: Vec<String> = r.key.iter().map(|(n, v)| format!("{n}={v}")).collect();
                format!("{}: {}\n", k.join(" "), r.value)
            })
            .collect(),
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let mut o = serde_json::Map::new();
                    for (n, v) in &r.key {
                        let v = v
                            .parse::<i64>()
                            .map(serde_json::Value::from)
                            .unwrap_or_else(|_| serde_json::Value::from(v.clone()));
                        o.insert((*n).into(), v);
                    }
                    o.insert("value".into(), r.value.clone().into());
                    serde_json::Value::Object(o)
                })
                .collect();
            to_json(&items) + "\n"
        }
        Format::Csv => {
            let mut s = String::new();
            if let Some(r) = rows.first() {
                let h: Vec<&str> = r.key.iter().map(|(n, _)| *n).collect();
                writeln!(s, "{},value", h.join(",")).unwrap();
            }
            for r in rows {
                let k: Vec<String> = r.key.iter().map(|(_, v)| v.clone()).collect();
                writeln!(s, "{},{}", k.join(","), csv_field(&r.value)).unwrap();
            }
            s
        }
    }
}

fn table(t: TableArgs, f: Format) -> Output {
    let m = t.m;
    let mut rows = Vec::new();
    let labels: Vec<(u32, u32)> = (0..=t.max_a)
        .flat_map(|a| (0..=t.max_b).map(move |b| (a, b)))
        .collect();
    match t.kind {
        TableKind::Pairing => {
            for &(a, b) in &labels {
                for &(a2, b2) in &labels {
                    let i1 = CBIndex::canonical(a, b, m);
                    let i2 = CBIndex::canonical(a2, b2, m);
                    rows.push(Row {
                        key: vec![
                            ("a", a.to_string()),
                            ("b", b.to_string()),
                            ("a2", a2.to_string()),
                            ("b2", b2.to_string()),
                            ("m", m.to_string()),
                        ],
                        value: pairing_cb(&i1, &i2).to_string(),
                    });
                }
            }
        }
        TableKind::ToPbw | TableKind::ToCb => {
            for &(a, b) in &labels {
                let (to_pbw, to_cb) = ladder_matrices(a, b, m);
                let mat = if t.kind == TableKind::ToPbw { to_pbw } else { to_cb };
                // column 0 is (a, b) itself
                for (j, &(ta, tb)) in mat.ladder.iter().enumerate() {
                    rows.push(Row {
                        key: vec![
                            ("a", a.to_string()),
                            ("b", b.to_string()),
                            ("m", m.to_string()),
                            ("target_a", ta.to_string()),
                            ("target_b", tb.to_string()),
                        ],
                        value: mat.entries[j][0].to_string(),
                    });
                }
            }
        }
        TableKind::Positivity => {
            for &(a, b) in &labels {
                let rep = match positivity_report(&CBIndex::canonical(a, b, m), t.order) {
                    Ok(r) => r,
                    Err(e) => {
                        return Output {
                            stdout: String::new(),
                            diagnostic: Some(to_json(&json!({
                                "check": "positivity",
                                "case": {"a": a, "b": b, "m": m},
                                "detail": e.to_string(),
                            }))),
                        }
                    }
                };
                for e in &rep.entries {
                    rows.push(Row {
                        key: vec![
                            ("a", a.to_string()),
                            ("b", b.to_string()),
                            ("m", m.to_string()),
                            ("s", e.s.to_string()),
                            ("ok", e.ok.to_string()),
                        ],
                        value: e.series.to_string(),
                    });
                }
            }
        }
    }
    Output::ok(render_rows(&rows, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Output {
        let cli = Cli::try_parse_from(std::iter::once("udot-pbw").chain(args.iter().copied()))
            .expect("valid arguments");
        run(&cli)
    }

    #[test]
    fn pair_all_routes_agree() {
        let out = run_args(&[
            "pair", "--a", "1", "--b", "1", "--m", "0", "--a2", "1", "--b2", "1", "--m2", "0",
            "--route", "all",
        ]);
        assert_eq!(out.code(), 0);
        let expect = RationalFunction::new(
            crate::qarith::LaurentPoly::from_int_terms(&[(0, 1), (-2, 1)]),
            crate::qarith::LaurentPoly::from_int_terms(&[(0, 1), (-2, -2), (-4, 1)]),
        )
        .to_string();
        for r in ["cb", "pbw", "module-limit"] {
            assert!(out.stdout.contains(&format!("{r}: {expect}\n")), "{}", out.stdout);
        }
        assert!(out.stdout.contains("agree: true"));
    }

    #[test]
    fn expand_pbw_json_round_trips() {
        let out = run_args(&["expand-pbw", "--a", "1", "--b", "1", "--m", "0", "--format", "json"]);
        let x: UdotElement = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(x, pbw_to_cb(&PBWIndex::new(1, 1, 0)));
        assert_eq!(to_json(&x), out.stdout.trim());
    }

    #[test]
    fn negative_weights_parse() {
        let out = run_args(&["expand-cb", "--a", "2", "--b", "1", "--m", "-3"]);
        assert_eq!(out.code(), 0);
        let idx = CBIndex::canonical(2, 1, -3);
        assert!(out.stdout.starts_with(&format!("{idx} = ")));
    }

    #[test]
    fn unknown_and_missing_flags_are_errors() {
        assert!(Cli::try_parse_from(["udot-pbw", "expand-cb", "--a", "1", "--b", "1"]).is_err());
        assert!(Cli::try_parse_from([
            "udot-pbw", "expand-cb", "--a", "1", "--b", "1", "--m", "0", "--route", "cb"
        ])
        .is_err());
    }

    #[test]
    fn verify_small_sweep() {
        let out = run_args(&["verify", "inverse", "--max-a", "3", "--max-b", "3", "--max-m", "3"]);
        assert_eq!(out.code(), 0);
        assert!(out.stdout.starts_with("PASS inverse"));
        let out = run_args(&["verify", "qbinom-identity", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(v["cases"], 20);
    }

    #[test]
    fn fuse_reports_remainder() {
        let out = run_args(&["fuse", "--a", "2", "--b", "1", "--m", "-1", "--format", "json"]);
        assert_eq!(out.code(), 0);
        let v: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(v["asymptotically_zero"], true);
        let back: UdotElement = serde_json::from_value(v["value"].clone()).unwrap();
        assert_eq!(back, pbw_to_cb(&PBWIndex::new(2, 1, -1)));
    }

    #[test]
    fn tables_render() {
        let out = run_args(&["table", "to-pbw", "--max-a", "2", "--max-b", "2", "--format", "csv"]);
        let mut lines = out.stdout.lines();
        assert_eq!(lines.next(), Some("a,b,m,target_a,target_b,value"));
        assert_eq!(lines.count(), 14);
        let out = run_args(&["table", "pairing", "--max-a", "1", "--max-b", "1", "--format", "json"]);
        let v: Vec<serde_json::Value> = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(v.len(), 16);
    }
}
