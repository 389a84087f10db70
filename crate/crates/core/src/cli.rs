//! Command-line surface. [`run`] parses arguments and returns the exit code
//! together with the rendered output so it can be driven from tests.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::closed_forms::{self, Local};
use crate::error::{Error, Result};
use crate::fock;
use crate::geometry::{c1_taut, curve_catalog, tangent_weights, Chart, FixedPoint, Tautological};
use crate::graphs::{automorphism_order, enumerate, GraphFamily, StableGraph};
use crate::invariants::{pair_ab, sample_points, verify_closed_forms, DegreeGraphs, VerifyReport};
use crate::localization::sum_graphs;
use crate::scalars::{fmt_rational, int, rat, Rational};

pub const SCHEMA: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// `<A, B>_{0,d} / 3` for `d = 1..=4`.
pub fn expected_invariants() -> [Rational; 4] {
    [int(-27), rat(27, 2), int(18), rat(27, 4)]
}

#[derive(Parser, Debug, Clone, PartialEq, Eq)]
#[command(name = "hilb3", version, about = "Genus-0 invariants of the Hilbert scheme of 3 points on P^2")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    S,
    T,
}

#[derive(clap::Args, Debug, Clone, PartialEq, Eq)]
pub struct FamilyArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub family: FamilyKind,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
    pub i: u8,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
    pub j: u8,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
    pub k: Option<u8>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub d: u32,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Fixed points, tangent weights, c1 values and invariant curves as JSON.
    Catalog,
    /// Stable graphs of one family as JSON.
    Graphs {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Graph sum of one family at sampled points.
    Graphsum {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        points: u64,
    },
    /// `<A, B>_{0,d}` and the invariant `<a_{-3}(l), a_{-3}(X)>_{0,d}`.
    Invariant {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        points: u64,
        #[arg(long)]
        json: bool,
    },
    /// Engine graph sums against the closed forms for `d <= 4`.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
        d: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Two- and three-point tables with f(d) from the engine.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        dmax: u32,
        #[arg(long, conflicts_with = "markdown")]
        json: bool,
        #[arg(long)]
        markdown: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        points: u64,
    },
    /// Every reference number for `d <= 4`.
    Reproduce {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => execute(&cfg),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            }
        }
    }
}

pub fn execute(cfg: &RunConfig) -> Outcome {
    match dispatch(&cfg.command) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => {
            let code = match e {
                Error::Usage(_) | Error::Degree(_) | Error::Family(_) | Error::ChartIndex(_) => EXIT_USAGE,
                _ => EXIT_MISMATCH,
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn dispatch(cmd: &Command) -> Result<(i32, String)> {
    match cmd {
        Command::Catalog => Ok((EXIT_OK, to_json(&catalog_json()))),
        Command::Graphs { family } => graphs_cmd(family),
        Command::Graphsum { family, seed, points } => graphsum_cmd(family, *seed, *points as usize),
        Command::Invariant { d, seed, points, json } => invariant_cmd(*d, *seed, *points as usize, *json),
        Command::Verify { d, seed, json } => verify_cmd(*d, *seed, *json),
        Command::Table { dmax, json, seed, points, .. } => table_cmd(*dmax, *json, *seed, *points as usize),
        Command::Reproduce { seed } => reproduce_cmd(*seed),
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn chart(i: u8, flag: &str) -> Result<Chart> {
    Chart::new(i).map_err(|_| Error::Usage(format!("--{flag} must be 0, 1 or 2")))
}

fn family_of(a: &FamilyArgs) -> Result<GraphFamily> {
    match a.family {
        FamilyKind::S => {
            if a.k.is_some() {
                return Err(Error::Usage("--k is only valid with --family T".into()));
            }
            if a.i == a.j {
                return Err(Error::Usage("--j must differ from --i for --family S".into()));
            }
            GraphFamily::s(chart(a.i, "i")?, chart(a.j, "j")?)
        }
        FamilyKind::T => {
            let k = a.k.ok_or_else(|| Error::Usage("--k is required with --family T".into()))?;
            if a.j >= k {
                return Err(Error::Usage("--family T needs --j < --k".into()));
            }
            GraphFamily::t(chart(a.i, "i")?, a.j, k)
        }
    }
}

pub fn catalog_json() -> Value {
    let points: Vec<Value> = FixedPoint::all()
        .iter()
        .map(|p| {
            json!({
                "name": p.to_string(),
                "chart": p.chart().index(),
                "tangent_weights": tangent_weights(p).iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "c1_E0": c1_taut(Tautological::E0, p).to_string(),
                "c1_E1": c1_taut(Tautological::E1, p).to_string(),
            })
        })
        .collect();
    let curves: Vec<Value> = curve_catalog()
        .iter()
        .map(|c| {
            let (a, b) = c.endpoints();
            json!({
                "name": c.to_string(),
                "chart": c.chart().index(),
                "endpoints": [a.to_string(), b.to_string()],
                "tangent_at_endpoints": [
                    c.tangent_at(&a).map(|w| w.to_string()),
                    c.tangent_at(&b).map(|w| w.to_string()),
                ],
                "beta_multiple": c.beta_multiple(),
            })
        })
        .collect();
    json!({ "schema": SCHEMA, "fixed_points": points, "curves": curves })
}

pub fn graph_json(g: &StableGraph) -> Value {
    json!({
        "vertices": g.vertices.iter().map(|v| json!({
            "label": v.label.to_string(),
            "marks": v.marks,
        })).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|e| json!({
            "ends": [e.ends.0, e.ends.1],
            "curve": e.curve.to_string(),
            "degree": e.degree,
        })).collect::<Vec<_>>(),
        "automorphism": automorphism_order(g),
    })
}

fn graphs_cmd(a: &FamilyArgs) -> Result<(i32, String)> {
    let fam = family_of(a)?;
    let graphs = enumerate(&fam, a.d);
    let v = json!({
        "schema": SCHEMA,
        "family": fam.to_string(),
        "d": a.d,
        "count": graphs.len(),
        "graphs": graphs.iter().map(graph_json).collect::<Vec<_>>(),
    });
    Ok((EXIT_OK, to_json(&v)))
}

fn closed_form_for(fam: &GraphFamily, d: u32, spec: &crate::Specialization) -> Result<(String, Rational)> {
    match *fam {
        GraphFamily::S { i, j } => {
            let v = closed_forms::e_closed(d, &Local::at(i, spec)?, &Local::at(j, spec)?)?;
            Ok((format!("e_{{{d},{i},{j}}}"), v))
        }
        GraphFamily::T { i, j, k } => {
            let l = Local::at(i, spec)?;
            let v = match (j, k) {
                (0, 1) => closed_forms::f01(d, &l)?,
                (0, 2) => closed_forms::f02(d, &l)?,
                _ => closed_forms::f12_printed(d, &l)?,
            };
            Ok((format!("f_{{{d},{i},{j},{k}}}"), v))
        }
    }
}

fn graphsum_cmd(a: &FamilyArgs, seed: u64, points: usize) -> Result<(i32, String)> {
    let fam = family_of(a)?;
    let graphs = enumerate(&fam, a.d);
    let specs = sample_points(a.d, seed, points)?;
    let mut out = String::new();
    let mut code = EXIT_OK;
    writeln!(out, "{fam} d={} graphs={}", a.d, graphs.len()).unwrap();
    for s in &specs {
        let v = sum_graphs(&graphs, s)?;
        write!(out, "w={} z={} sum={}", fmt_rational(&s.w), fmt_rational(&s.z), fmt_rational(&v)).unwrap();
        if a.d <= 4 {
            let (name, reference) = closed_form_for(&fam, a.d, s)?;
            let ok = v == reference;
            if !ok {
                code = EXIT_MISMATCH;
            }
            write!(out, " {name}={} {}", fmt_rational(&reference), if ok { "match" } else { "MISMATCH" }).unwrap();
        }
        out.push('\n');
    }
    Ok((code, out))
}

fn invariant_cmd(d: u32, seed: u64, points: usize, as_json: bool) -> Result<(i32, String)> {
    let graphs = DegreeGraphs::new(d)?;
    let specs = sample_points(d, seed, points)?;
    let r = crate::invariants::pair_ab_at(&graphs, &specs)?;
    let code = if r.constant_ok { EXIT_OK } else { EXIT_MISMATCH };
    if as_json {
        let v = json!({
            "schema": SCHEMA,
            "d": d,
            "ab": fmt_rational(&r.ab_value),
            "invariant": fmt_rational(&r.invariant),
            "specializations": r.points(),
            "verified_constant": r.constant_ok,
        });
        return Ok((code, to_json(&v)));
    }
    let mut out = String::new();
    for p in r.points() {
        writeln!(out, "w={} z={} <A,B>={}", p.w, p.z, p.total).unwrap();
    }
    writeln!(out, "d={d} <A,B>={} invariant={}", fmt_rational(&r.ab_value), fmt_rational(&r.invariant)).unwrap();
    writeln!(out, "constant={}", r.constant_ok).unwrap();
    Ok((code, out))
}

fn render_verify(r: &VerifyReport, out: &mut String) {
    for c in &r.checks {
        let status = match (c.passed, c.diagnostic) {
            (true, _) => "pass",
            (false, false) => "FAIL",
            (false, true) => "fail (diagnostic)",
        };
        write!(out, "{:<28} {:<18} points={}", c.name, status, c.points_checked).unwrap();
        if let Some((engine, reference)) = &c.mismatch {
            write!(out, " engine={engine} reference={reference}").unwrap();
        }
        out.push('\n');
    }
}

fn verify_cmd(d: u32, seed: u64, as_json: bool) -> Result<(i32, String)> {
    let r = verify_closed_forms(d, seed)?;
    let code = if r.all_passed() { EXIT_OK } else { EXIT_MISMATCH };
    if as_json {
        let mut v = serde_json::to_value(&r).expect("report serializes");
        v["schema"] = json!(SCHEMA);
        v["all_passed"] = json!(r.all_passed());
        return Ok((code, to_json(&v)));
    }
    let mut out = String::new();
    render_verify(&r, &mut out);
    writeln!(
        out,
        "d={d}: {} of {} checks failed",
        r.failures().len(),
        r.checks.iter().filter(|c| !c.diagnostic).count()
    )
    .unwrap();
    Ok((code, out))
}

/// Tables for `d = 1..=dmax` from a given list `f[k] = f(k+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub schema: &'static str,
    pub dmax: u32,
    pub degrees: Vec<DegreeTable>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeTable {
    pub d: u32,
    pub f: String,
    pub two_point: Vec<Entry>,
    pub three_point: Vec<Entry>,
    pub wdvv: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub classes: Vec<String>,
    pub value: String,
}

fn entries(t: &[fock::TableEntry]) -> Vec<Entry> {
    t.iter()
        .map(|e| Entry { classes: e.classes.iter().map(|m| m.to_string()).collect(), value: fmt_rational(&e.value) })
        .collect()
}

pub fn table_report(f: &[Rational]) -> Result<TableReport> {
    let mut degrees = Vec::with_capacity(f.len());
    for d in 1..=f.len() as u32 {
        let fd = &f[d as usize - 1];
        degrees.push(DegreeTable {
            d,
            f: fmt_rational(fd),
            two_point: entries(&fock::two_point_table(d, fd)?),
            three_point: entries(&fock::three_point_table(d, f)?),
            wdvv: fock::wdvv_consistency(d, f)?,
        });
    }
    Ok(TableReport { schema: SCHEMA, dmax: f.len() as u32, degrees })
}

pub fn engine_f(dmax: u32, seed: u64, points: usize) -> Result<Vec<Rational>> {
    (1..=dmax).map(|d| Ok(pair_ab(d, seed, points)?.invariant * int(i64::from(d)))).collect()
}

fn render_markdown(r: &TableReport) -> String {
    let mut out = String::new();
    let b6 = fock::basis(6).expect("degree 6 basis");
    let b8 = fock::basis(8).expect("degree 8 basis");
    for t in &r.degrees {
        writeln!(out, "## d = {}, f(d) = {}\n", t.d, t.f).unwrap();
        writeln!(out, "Two-point invariants (rows: degree 6, columns: degree 8)\n").unwrap();
        write!(out, "| |").unwrap();
        for b in &b8 {
            write!(out, " `{b}` |").unwrap();
        }
        out.push('\n');
        out.push_str(&"|---".repeat(b8.len() + 1));
        out.push_str("|\n");
        for (row, a) in b6.iter().enumerate() {
            write!(out, "| `{a}` |").unwrap();
            for col in 0..b8.len() {
                write!(out, " {} |", t.two_point[row * b8.len() + col].value).unwrap();
            }
            out.push('\n');
        }
        writeln!(out, "\nNonzero three-point invariants (all other triples vanish)\n").unwrap();
        writeln!(out, "| A1 | A2 | A3 | value |\n|---|---|---|---|").unwrap();
        for e in t.three_point.iter().filter(|e| e.value != "0") {
            writeln!(out, "| `{}` | `{}` | `{}` | {} |", e.classes[0], e.classes[1], e.classes[2], e.value).unwrap();
        }
        writeln!(out, "\nWDVV consistent: {}\n", t.wdvv).unwrap();
    }
    out
}

fn table_cmd(dmax: u32, as_json: bool, seed: u64, points: usize) -> Result<(i32, String)> {
    let f = engine_f(dmax, seed, points)?;
    let report = table_report(&f)?;
    let code = if report.degrees.iter().all(|t| t.wdvv) { EXIT_OK } else { EXIT_MISMATCH };
    let out = if as_json {
        to_json(&serde_json::to_value(&report).expect("report serializes"))
    } else {
        render_markdown(&report)
    };
    Ok((code, out))
}

fn line(out: &mut String, ok: bool, text: impl std::fmt::Display) -> bool {
    writeln!(out, "[{}] {text}", if ok { "PASS" } else { "FAIL" }).unwrap();
    ok
}

fn reproduce_cmd(seed: u64) -> Result<(i32, String)> {
    let mut out = String::new();
    let mut all = true;
    let expected = expected_invariants();
    let mut f = Vec::with_capacity(4);
    for d in 1..=4u32 {
        let r = pair_ab(d, seed, 3)?;
        let want = &expected[d as usize - 1];
        all &= line(
            &mut out,
            r.invariant == *want && r.ab_value == want * int(3),
            format_args!(
                "invariant d={d}: {} (expected {}), <A,B> = {}",
                fmt_rational(&r.invariant),
                fmt_rational(want),
                fmt_rational(&r.ab_value)
            ),
        );
        f.push(r.invariant * int(i64::from(d)));
    }
    for d in 1..=4u32 {
        let r = verify_closed_forms(d, seed)?;
        for c in &r.checks {
            let mut text = format!("closed form {} at {} points", c.name, c.points_checked);
            if let Some((e, p)) = &c.mismatch {
                write!(text, ": engine {e}, printed {p}").unwrap();
            }
            if c.diagnostic {
                writeln!(out, "[{}] (diagnostic) {text}", if c.passed { "pass" } else { "fail" }).unwrap();
            } else {
                all &= line(&mut out, c.passed, text);
            }
        }
    }
    let b4 = fock::basis(4)?;
    let duals = fock::dual_basis(4)?;
    let target: fock::FockMonomial = "a_{-2}(l)a_{-1}(x)".parse()?;
    let pos = b4.iter().position(|m| *m == target).expect("monomial in degree 4 basis");
    let dual_mono: fock::FockMonomial = "a_{-2}(l)a_{-1}(X)".parse()?;
    let coeff = duals[pos].coefficient(&dual_mono);
    all &= line(
        &mut out,
        coeff == rat(-1, 2) && duals[pos].terms().count() == 1,
        format_args!("dual of {target} = {}", duals[pos]),
    );
    let report = table_report(&f)?;
    for t in &report.degrees {
        all &= line(&mut out, t.wdvv, format_args!("composition law d={}", t.d));
        let fd = &f[t.d as usize - 1];
        let from_table = fock::ab_from_table(t.d, fd)?;
        let engine = fd / int(i64::from(t.d)) * int(3);
        all &= line(
            &mut out,
            from_table == engine,
            format_args!("<A,B> from two-point table d={}: {}", t.d, fmt_rational(&from_table)),
        );
    }
    let w3 = fock::three_point_case_iv(1, &f)?;
    all &= line(&mut out, w3 == int(243), format_args!("three-point case (iv) d=1: {}", fmt_rational(&w3)));
    let nonzero_two: usize = report.degrees.iter().map(|t| t.two_point.iter().filter(|e| e.value != "0").count()).sum();
    all &= line(
        &mut out,
        nonzero_two == 3 * report.degrees.len() && f.iter().all(|x| !x.is_zero()),
        format_args!("two-point tables have three nonzero entries per degree"),
    );
    writeln!(out, "{}", if all { "all checks passed" } else { "some checks failed" }).unwrap();
    Ok((if all { EXIT_OK } else { EXIT_MISMATCH }, out))
}
