//! Assembly of `<A, B>_{0,d}` from the `S` and `T` graph sums.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::closed_forms::{self, Local};
use crate::error::{Error, Result};
use crate::geometry::{c1_taut, Chart, FixedPoint, Tautological};
use crate::graphs::{enumerate, GraphFamily, StableGraph};
use crate::localization::{forbidden_weights, sum_graphs};
use crate::scalars::{fmt_rational, int, sample_specializations, Rational, Specialization};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    /// `(c_1(E_1) - c_1(E_0)) c_1(E_0)^2`
    A,
    /// `c_1(E_0)^2`
    B,
}

pub fn class_value(which: ClassKind, p: &FixedPoint, spec: &Specialization) -> Rational {
    let e0 = c1_taut(Tautological::E0, p).evaluate(spec);
    match which {
        ClassKind::B => &e0 * &e0,
        ClassKind::A => {
            let e1 = c1_taut(Tautological::E1, p).evaluate(spec);
            (e1 - &e0) * &e0 * &e0
        }
    }
}

/// `-(A|_p - A|_q)(B|_p - B|_q)`.
fn delta_product(p: &FixedPoint, q: &FixedPoint, spec: &Specialization) -> Rational {
    let da = class_value(ClassKind::A, p, spec) - class_value(ClassKind::A, q, spec);
    let db = class_value(ClassKind::B, p, spec) - class_value(ClassKind::B, q, spec);
    -(da * db)
}

/// Sign placed in front of `(A|_{R1} - A|_{R2})(B|_{R1} - B|_{R2}) e_{d,i,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SPrimeSign {
    /// `S' = -(...)e`, the assembly formula.
    Minus,
    /// `S' = +(...)e`.
    Plus,
}

/// All graphs of degree `d` for the 6 `S` and 9 `T` families.
#[derive(Clone, Debug)]
pub struct DegreeGraphs {
    pub d: u32,
    families: BTreeMap<String, (GraphFamily, Vec<StableGraph>)>,
}

impl DegreeGraphs {
    pub fn new(d: u32) -> Result<DegreeGraphs> {
        if d == 0 {
            return Err(Error::Degree(d));
        }
        let mut families = BTreeMap::new();
        for fam in all_families() {
            families.insert(fam.to_string(), (fam, enumerate(&fam, d)));
        }
        Ok(DegreeGraphs { d, families })
    }

    pub fn graphs(&self, family: &GraphFamily) -> &[StableGraph] {
        &self.families[&family.to_string()].1
    }

    pub fn sum(&self, family: &GraphFamily, spec: &Specialization) -> Result<Rational> {
        sum_graphs(self.graphs(family), spec)
    }

    pub fn count(&self) -> usize {
        self.families.values().map(|(_, g)| g.len()).sum()
    }
}

/// `S(i,j)` for the six ordered pairs, then `T(i;j,k)` for the nine triples.
pub fn all_families() -> Vec<GraphFamily> {
    let mut out = Vec::with_capacity(15);
    for i in Chart::ALL {
        for j in Chart::ALL {
            if i != j {
                out.push(GraphFamily::S { i, j });
            }
        }
    }
    for i in Chart::ALL {
        for (j, k) in [(0, 1), (0, 2), (1, 2)] {
            out.push(GraphFamily::T { i, j, k });
        }
    }
    out
}

fn s_prime_with(
    graphs: &DegreeGraphs,
    i: Chart,
    j: Chart,
    spec: &Specialization,
    sign: SPrimeSign,
) -> Result<Rational> {
    let fam = GraphFamily::s(i, j)?;
    let r1 = FixedPoint::Pair { i, j, s: 1 };
    let r2 = FixedPoint::Pair { i, j, s: 2 };
    let v = delta_product(&r1, &r2, spec) * graphs.sum(&fam, spec)?;
    Ok(match sign {
        SPrimeSign::Minus => v,
        SPrimeSign::Plus => -v,
    })
}

/// `S'_{d,i,j} = -(dA)(dB) e_{d,i,j}`.
pub fn s_prime(d: u32, i: Chart, j: Chart, spec: &Specialization) -> Result<Rational> {
    GraphFamily::s(i, j)?;
    s_prime_with(&DegreeGraphs::new(d)?, i, j, spec, SPrimeSign::Minus)
}

/// `gamma_{i,j,k}` from the class values at `Q_{i,j}` and `Q_{i,k}`.
pub fn gamma_t(i: Chart, j: u8, k: u8, spec: &Specialization) -> Result<Rational> {
    GraphFamily::t(i, j, k)?;
    Ok(delta_product(&FixedPoint::Punctual { i, k: j }, &FixedPoint::Punctual { i, k }, spec))
}

fn t_prime_with(graphs: &DegreeGraphs, i: Chart, spec: &Specialization) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (j, k) in [(0, 1), (0, 2), (1, 2)] {
        let gamma = gamma_t(i, j, k, spec)?;
        if gamma.is_zero() {
            continue;
        }
        acc += gamma * graphs.sum(&GraphFamily::T { i, j, k }, spec)?;
    }
    Ok(acc)
}

/// `T'_{d,i} = sum_{j<k} gamma_{i,j,k} f_{d,i,j,k}`.
pub fn t_prime(d: u32, i: Chart, spec: &Specialization) -> Result<Rational> {
    t_prime_with(&DegreeGraphs::new(d)?, i, spec)
}

/// `(sum S', sum T')` at one point.
pub fn pair_ab_parts(graphs: &DegreeGraphs, spec: &Specialization, sign: SPrimeSign) -> Result<(Rational, Rational)> {
    let mut s = Rational::zero();
    let mut t = Rational::zero();
    for i in Chart::ALL {
        for j in Chart::ALL {
            if i != j {
                s += s_prime_with(graphs, i, j, spec, sign)?;
            }
        }
        t += t_prime_with(graphs, i, spec)?;
    }
    Ok((s, t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointValue {
    pub w: String,
    pub z: String,
    pub total: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantResult {
    pub d: u32,
    /// `<A, B>_{0,d}` at the first point.
    pub ab_value: Rational,
    /// `ab_value / 3`.
    pub invariant: Rational,
    pub per_spec_values: Vec<(Specialization, Rational)>,
    pub constant_ok: bool,
}

impl InvariantResult {
    pub fn points(&self) -> Vec<PointValue> {
        self.per_spec_values
            .iter()
            .map(|(s, v)| PointValue { w: fmt_rational(&s.w), z: fmt_rational(&s.z), total: fmt_rational(v) })
            .collect()
    }
}

/// Evaluate the total at each given point without asserting constancy.
pub fn pair_ab_at(graphs: &DegreeGraphs, specs: &[Specialization]) -> Result<InvariantResult> {
    let mut per = Vec::with_capacity(specs.len());
    for s in specs {
        let (a, b) = pair_ab_parts(graphs, s, SPrimeSign::Minus)?;
        per.push((s.clone(), a + b));
    }
    let ab_value = per.first().map(|(_, v)| v.clone()).unwrap_or_else(Rational::zero);
    let constant_ok = per.iter().all(|(_, v)| *v == ab_value);
    Ok(InvariantResult { d: graphs.d, invariant: &ab_value / int(3), ab_value, per_spec_values: per, constant_ok })
}

/// Nondegenerate points for degree `d`.
pub fn sample_points(d: u32, seed: u64, count: usize) -> Result<Vec<Specialization>> {
    sample_specializations(seed, count, &forbidden_weights(d))
}

/// `<A, B>_{0,d}` at `num_points` sampled points; errors if they disagree.
pub fn pair_ab(d: u32, seed: u64, num_points: usize) -> Result<InvariantResult> {
    let graphs = DegreeGraphs::new(d)?;
    let specs = sample_points(d, seed, num_points.max(1))?;
    let res = pair_ab_at(&graphs, &specs)?;
    if !res.constant_ok {
        let vals: Vec<String> = res.per_spec_values.iter().map(|(_, v)| fmt_rational(v)).collect();
        return Err(Error::NonConstant(format!("d={d}: {}", vals.join(", "))));
    }
    Ok(res)
}

/// `<PD(a_{-3}(l)), PD(a_{-3}(X))>_{0,d} = <A, B>_{0,d} / 3`.
pub fn invariant_a3(d: u32, seed: u64, num_points: usize) -> Result<Rational> {
    Ok(pair_ab(d, seed, num_points)?.invariant)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub points_checked: usize,
    /// First disagreement as `(engine, reference)`.
    pub mismatch: Option<(String, String)>,
    /// Diagnostic checks do not count towards the overall verdict.
    pub diagnostic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub d: u32,
    pub seed: u64,
    pub checks: Vec<IdentityCheck>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().filter(|c| !c.diagnostic).all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| !c.diagnostic && !c.passed).collect()
    }
}

struct Accumulator {
    checks: Vec<IdentityCheck>,
}

impl Accumulator {
    fn record(&mut self, name: String, diagnostic: bool, engine: &Rational, reference: &Rational) {
        let pos = match self.checks.iter().position(|c| c.name == name) {
            Some(p) => p,
            None => {
                self.checks.push(IdentityCheck { name, passed: true, points_checked: 0, mismatch: None, diagnostic });
                self.checks.len() - 1
            }
        };
        let c = &mut self.checks[pos];
        c.points_checked += 1;
        if engine != reference && c.passed {
            c.passed = false;
            c.mismatch = Some((fmt_rational(engine), fmt_rational(reference)));
        }
    }
}

pub const VERIFY_POINTS: usize = 5;

/// Pointwise comparison of engine graph sums against the printed closed forms.
pub fn verify_closed_forms(d: u32, seed: u64) -> Result<VerifyReport> {
    if !(1..=4).contains(&d) {
        return Err(Error::Degree(d));
    }
    let graphs = DegreeGraphs::new(d)?;
    let specs = sample_points(d, seed, VERIFY_POINTS)?;
    let mut acc = Accumulator { checks: Vec::new() };
    for spec in &specs {
        for i in Chart::ALL {
            let li = Local::at(i, spec)?;
            for j in Chart::ALL.into_iter().filter(|&j| j != i) {
                let lj = Local::at(j, spec)?;
                let e = graphs.sum(&GraphFamily::S { i, j }, spec)?;
                acc.record(format!("e[d={d},i={i},j={j}]"), false, &e, &closed_forms::e_closed(d, &li, &lj)?);
                let s = s_prime_with(&graphs, i, j, spec, SPrimeSign::Minus)?;
                let printed = closed_forms::s_prime_printed(d, &li, &lj)?;
                acc.record(format!("|S'|[d={d},i={i},j={j}]"), false, &s.abs(), &printed.abs());
            }
            let f01 = graphs.sum(&GraphFamily::T { i, j: 0, k: 1 }, spec)?;
            acc.record(format!("f01[d={d},i={i}]"), false, &f01, &closed_forms::f01(d, &li)?);
            acc.record(format!("f01-recursive[d={d},i={i}]"), false, &f01, &closed_forms::f01_recursive(d, &li)?);
            let f02 = graphs.sum(&GraphFamily::T { i, j: 0, k: 2 }, spec)?;
            acc.record(format!("f02-swap[d={d},i={i}]"), false, &f02, &closed_forms::f02(d, &li)?);
            let f12 = graphs.sum(&GraphFamily::T { i, j: 1, k: 2 }, spec)?;
            let f12_ref = closed_forms::f12_printed(d, &li)?;
            acc.record(format!("f12[d={d},i={i}]"), false, &f12, &f12_ref);
            acc.record(format!("f12-negated[d={d},i={i}]"), true, &f12, &-f12_ref);
            for (j, k) in [(0, 1), (0, 2), (1, 2)] {
                acc.record(
                    format!("gamma[i={i},j={j},k={k}]"),
                    false,
                    &gamma_t(i, j, k, spec)?,
                    &closed_forms::gamma_closed(j, k, &li)?,
                );
            }
            let t = t_prime_with(&graphs, i, spec)?;
            acc.record(format!("T'[d={d},i={i}]"), false, &t, &closed_forms::t_prime_closed(d, &li)?);
            acc.record(format!("T'-recursive[d={d},i={i}]"), false, &t, &closed_forms::t_prime_recursive(d, &li)?);
        }
    }
    Ok(VerifyReport { d, seed, checks: acc.checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn c(i: u8) -> Chart {
        Chart::new(i).unwrap()
    }

    #[test]
    fn class_values() {
        let s = Specialization::new(rat(7, 3), rat(-2, 5));
        for i in Chart::ALL {
            let l = Local::at(i, &s).unwrap();
            let q1 = FixedPoint::Punctual { i, k: 1 };
            assert_eq!(class_value(ClassKind::B, &q1, &s), int(9) * &l.z * &l.z);
            for j in Chart::ALL.into_iter().filter(|&j| j != i) {
                let lj = Local::at(j, &s).unwrap();
                let r2 = FixedPoint::Pair { i, j, s: 2 };
                assert_eq!(class_value(ClassKind::A, &r2, &s), (int(2) * &l.g + &lj.g) * &l.w * &l.w);
            }
        }
        for k in 0..3 {
            assert!(class_value(ClassKind::A, &FixedPoint::Punctual { i: c(0), k }, &s).is_zero());
        }
    }

    #[test]
    fn gamma_vanishes_on_chart_zero() {
        let s = Specialization::new(rat(7, 3), rat(-2, 5));
        for (j, k) in [(0, 1), (0, 2), (1, 2)] {
            assert!(gamma_t(c(0), j, k, &s).unwrap().is_zero());
        }
        assert!(gamma_t(c(0), 2, 2, &s).is_err());
    }

    #[test]
    fn degree_one_at_one_three() {
        let s = Specialization::from_ints(1, 3);
        let graphs = DegreeGraphs::new(1).unwrap();
        let (sp, tp) = pair_ab_parts(&graphs, &s, SPrimeSign::Minus).unwrap();
        assert_eq!(sp, rat(-61, 2));
        assert_eq!(tp, rat(-101, 2));
        assert_eq!(t_prime(1, c(1), &s).unwrap(), rat(-57, 4));
        assert_eq!(t_prime(1, c(2), &s).unwrap(), rat(-145, 4));
        let (sp_plus, _) = pair_ab_parts(&graphs, &s, SPrimeSign::Plus).unwrap();
        assert_eq!(sp_plus, rat(61, 2));
    }

    #[test]
    fn degree_one_total() {
        let r = pair_ab(1, 0, 3).unwrap();
        assert_eq!(r.ab_value, int(-81));
        assert_eq!(r.invariant, int(-27));
        assert!(r.constant_ok);
        assert_eq!(r.per_spec_values.len(), 3);
    }

    #[test]
    fn homogeneity_of_total() {
        let graphs = DegreeGraphs::new(2).unwrap();
        let s = sample_points(2, 4, 1).unwrap().remove(0);
        let t = rat(-7, 2);
        let a = pair_ab_at(&graphs, &[s.clone(), s.scaled(&t)]).unwrap();
        assert!(a.constant_ok);
    }

    #[test]
    fn family_list() {
        let fams = all_families();
        assert_eq!(fams.len(), 15);
        assert_eq!(DegreeGraphs::new(1).unwrap().count(), 6 + 6);
        assert!(DegreeGraphs::new(0).is_err());
    }
}
