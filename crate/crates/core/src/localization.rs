//! Virtual localization: edge, vertex and flag factors of a stable graph and
//! the graph sums `e_{d,i,j}` and `f_{d,i,j,k}`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{
    curve_catalog, euler_tangent, tangent_weights, torus_weights, Chart, FixedPoint, InvariantCurve,
};
use crate::graphs::{automorphism_order, enumerate, GraphFamily, StableGraph};
use crate::scalars::{int, pow, rat, Rational, Specialization, VirtualCharacter, Weight};

/// `chi(f^* T)` for a degree-`d_e` cover of a contracted curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeChi {
    pub curve: InvariantCurve,
    pub degree: u32,
    pub character: VirtualCharacter,
}

/// A character `lambda^a mu^b` of chart `chart` with signed multiplicity.
type Term = (i64, i64, i64);

struct ChiDisplay {
    fixed: Vec<Term>,
    /// Terms written in the other chart `j` (pair curves only).
    fixed_other: Vec<Term>,
    group: Vec<Term>,
    base: (i64, i64),
}

fn display(curve: &InvariantCurve) -> ChiDisplay {
    match *curve {
        InvariantCurve::Pair { .. } => ChiDisplay {
            fixed: vec![(0, 0, 1), (-1, 1, 1), (1, -1, 1), (-1, 0, 1), (0, -1, 1), (-1, -1, -1)],
            fixed_other: vec![(-1, 0, 1), (0, -1, 1)],
            group: vec![(0, 0, 1), (-1, 1, 1), (-2, 0, -1), (-1, -1, -1)],
            base: (1, -1),
        },
        InvariantCurve::Punctual { k: 0, l: 1, .. } => ChiDisplay {
            fixed: vec![
                (0, 0, 1),
                (-1, 2, 1),
                (1, -2, 1),
                (-1, 1, 1),
                (0, -1, 1),
                (-1, 0, 1),
                (0, -1, 1),
                (-1, -1, -1),
            ],
            fixed_other: vec![],
            group: vec![(-1, 2, 1), (0, 0, 1), (-1, 1, 1), (-2, 1, -1), (-1, -1, -1), (-1, 0, -1)],
            base: (1, -2),
        },
        InvariantCurve::Punctual { k: 0, .. } => ChiDisplay {
            fixed: vec![
                (0, 0, 1),
                (2, -1, 1),
                (-2, 1, 1),
                (1, -1, 1),
                (-1, 0, 1),
                (0, -1, 1),
                (-1, 0, 1),
                (-1, -1, -1),
            ],
            fixed_other: vec![],
            group: vec![(2, -1, 1), (0, 0, 1), (1, -1, 1), (1, -2, -1), (-1, -1, -1), (0, -1, -1)],
            base: (-2, 1),
        },
        InvariantCurve::Punctual { .. } => ChiDisplay {
            fixed: vec![
                (-1, 0, 1),
                (0, -1, 1),
                (-1, 1, 1),
                (0, 0, 1),
                (1, -1, 1),
                (-1, 2, 1),
                (0, 1, 1),
                (1, 0, 1),
                (2, -1, 1),
                (-1, -1, -1),
                (-2, -1, -1),
                (-1, -2, -1),
            ],
            fixed_other: vec![],
            group: vec![
                (0, 0, 1),
                (-1, 2, 1),
                (0, 1, 1),
                (1, 0, 1),
                (-1, 1, 1),
                (-2, 0, -1),
                (-1, -1, -1),
                (-3, 0, -1),
                (-2, -1, -1),
                (-1, -2, -1),
            ],
            base: (1, -1),
        },
    }
}

/// The displayed virtual character, with the `Theta` group expanded as
/// `sum_{m=1}^{d_e-1}` of the group shifted by `(m/d_e) * base`.
pub fn chi_edge(curve: &InvariantCurve, d_e: u32) -> EdgeChi {
    let i = curve.chart();
    let disp = display(curve);
    let mut ch = VirtualCharacter::new();
    for &(a, b, m) in &disp.fixed {
        ch.add_term(i.character(a, b), m);
    }
    if let InvariantCurve::Pair { j, .. } = *curve {
        for &(a, b, m) in &disp.fixed_other {
            ch.add_term(j.character(a, b), m);
        }
    }
    let base = i.character(disp.base.0, disp.base.1);
    for m in 1..i64::from(d_e) {
        let shift = base.scale(&rat(m, i64::from(d_e)));
        for &(a, b, mult) in &disp.group {
            ch.add_term(&i.character(a, b) + &shift, mult);
        }
    }
    EdgeChi { curve: *curve, degree: d_e, character: ch }
}

/// Euler class of the moving part of `chi_edge`.
pub fn edge_euler(curve: &InvariantCurve, d_e: u32, spec: &Specialization) -> Result<Rational> {
    chi_edge(curve, d_e).character.euler(spec)
}

/// `P(a, n) = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for k in 0..n {
        acc *= a + int(i64::from(k));
    }
    acc
}

/// Closed form of the `C_{i,j}` edge factor.
pub fn edge_euler_closed(i: Chart, j: Chart, d_e: u32, spec: &Specialization) -> Result<Rational> {
    let (wi, zi) = torus_weights(i);
    let (wj, zj) = torus_weights(j);
    let w = spec.nonzero(&wi)?;
    let z = spec.nonzero(&zi)?;
    let wj = spec.nonzero(&wj)?;
    let zj = spec.nonzero(&zj)?;
    let diff = spec.nonzero(&(&wi - &zi))?;
    let sum = spec.nonzero(&(&wi + &zi))?;
    let d = int(i64::from(d_e));
    let n = d_e - 1;
    let mut fact = Rational::one();
    for k in 1..=i64::from(n) {
        fact *= int(k);
    }
    let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    let p1 = pochhammer(&(Rational::one() + int(2) * &d * &w / (&z - &w)), n);
    let p2 = pochhammer(&(Rational::one() - &d * &sum / &diff), n);
    let den = &sum * p1 * p2;
    if den.is_zero() {
        return Err(Error::DegenerateSpecialization {
            weight: "0".into(),
            w: spec.w.to_string(),
            z: spec.z.to_string(),
        });
    }
    Ok(sign * &fact * &fact * w * wj * z * zj * &diff * &diff / den)
}

/// `int_{M_{0,n}} prod_F 1/(omega_F - psi_F)
///   = prod_F omega_F^{-1} * (sum_F omega_F^{-1})^{n-3}`.
pub fn vertex_psi_integral(omegas: &[Rational], n: usize) -> Result<Rational> {
    if n < 3 {
        return Err(Error::PsiIntegral(format!("n = {n}")));
    }
    if omegas.is_empty() || omegas.iter().any(Zero::is_zero) {
        return Err(Error::PsiIntegral("zero or missing omega".into()));
    }
    let mut prod = Rational::one();
    let mut sum = Rational::zero();
    for om in omegas {
        let inv = om.recip();
        sum += &inv;
        prod *= inv;
    }
    Ok(prod * pow(&sum, (n - 3) as i64))
}

/// `omega_F` for every flag at `v`.
pub fn flag_omegas(g: &StableGraph, v: usize) -> Vec<Weight> {
    let label = g.vertices[v].label;
    g.edges
        .iter()
        .filter(|e| e.ends.0 == v || e.ends.1 == v)
        .map(|e| {
            let t = e.curve.tangent_at(&label).expect("edge curve meets its vertex label");
            t.scale(&rat(1, i64::from(e.degree)))
        })
        .collect()
}

/// `1 / (|A_G| e(N^vir))` integrated over the vertex moduli.
pub fn graph_contribution(g: &StableGraph, spec: &Specialization) -> Result<Rational> {
    let mut num = Rational::one();
    let mut den = int(automorphism_order(g) as i64);
    let mut psi = Rational::one();
    for e in &g.edges {
        den *= edge_euler(&e.curve, e.degree, spec)?;
    }
    for (v, vertex) in g.vertices.iter().enumerate() {
        let e_t = euler_tangent(&vertex.label, spec)?;
        let omegas: Vec<Rational> = flag_omegas(g, v).iter().map(|w| spec.nonzero(w)).collect::<Result<_>>()?;
        for _ in &omegas {
            num *= &e_t;
        }
        den *= &e_t;
        let val = omegas.len();
        let n = val + vertex.marks.len();
        if val == 2 && n == 2 {
            let s = &omegas[0] + &omegas[1];
            if s.is_zero() {
                return Err(Error::DegenerateSpecialization {
                    weight: (&flag_omegas(g, v)[0] + &flag_omegas(g, v)[1]).to_string(),
                    w: spec.w.to_string(),
                    z: spec.z.to_string(),
                });
            }
            den *= s;
        }
        if val == 1 && n == 1 {
            den /= &omegas[0];
        }
        if n >= 3 {
            psi *= vertex_psi_integral(&omegas, n)?;
        }
    }
    Ok(num / den * psi)
}

/// Ordered sum of contributions; evaluated in parallel, reduced in list order.
pub fn sum_graphs(graphs: &[StableGraph], spec: &Specialization) -> Result<Rational> {
    let parts: Vec<Result<Rational>> = graphs.par_iter().map(|g| graph_contribution(g, spec)).collect();
    let mut acc = Rational::zero();
    for p in parts {
        acc += p?;
    }
    Ok(acc)
}

pub fn graph_sum(family: &GraphFamily, d: u32, spec: &Specialization) -> Result<Rational> {
    if d == 0 {
        return Err(Error::Degree(d));
    }
    sum_graphs(&enumerate(family, d), spec)
}

/// Every weight that appears in a denominator for degree `<= d`.
pub fn forbidden_weights(d: u32) -> Vec<Weight> {
    let mut out: BTreeSet<Weight> = BTreeSet::new();
    for p in FixedPoint::all() {
        out.extend(tangent_weights(&p));
    }
    let curves = curve_catalog();
    for c in &curves {
        let (a, b) = c.endpoints();
        out.insert(c.tangent_at(&a).unwrap());
        out.insert(c.tangent_at(&b).unwrap());
        for de in 1..=d / c.beta_multiple() {
            for (w, _) in chi_edge(c, de).character.terms() {
                out.insert(w.clone());
            }
        }
    }
    // omega_a + omega_b at a valence-2 unmarked vertex
    for p in FixedPoint::all() {
        let through: Vec<&InvariantCurve> = curves.iter().filter(|c| c.contains(&p)).collect();
        for ca in &through {
            for cb in &through {
                let (ba, bb) = (ca.beta_multiple(), cb.beta_multiple());
                for da in 1..=d / ba {
                    for db in 1..=(d.saturating_sub(ba * da)) / bb {
                        let oa = ca.tangent_at(&p).unwrap().scale(&rat(1, i64::from(da)));
                        let ob = cb.tangent_at(&p).unwrap().scale(&rat(1, i64::from(db)));
                        out.insert(oa + ob);
                    }
                }
            }
        }
    }
    for i in Chart::ALL {
        let (w, z) = torus_weights(i);
        out.insert(w.clone());
        out.insert(z.clone());
        out.insert(&w + &z);
        out.insert(&w - &z);
        out.insert(&w - &(2 * z.clone()));
        out.insert(&(2 * w.clone()) - &z);
    }
    out.remove(&Weight::zero());
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::g_class;
    use crate::scalars::sample_specializations;

    fn c(i: u8) -> Chart {
        Chart::new(i).unwrap()
    }

    fn spec() -> Specialization {
        Specialization::new(int(7), rat(3, 5))
    }

    #[test]
    fn chi_pair_degree_one() {
        let (i, j) = (c(0), c(2));
        let ch = chi_edge(&InvariantCurve::Pair { i, j }, 1).character;
        let mut expect = VirtualCharacter::from_weights([
            i.character(-1, 1),
            i.character(1, -1),
            i.character(-1, 0),
            i.character(0, -1),
            j.character(-1, 0),
            j.character(0, -1),
        ]);
        expect.add_term(i.character(-1, -1), -1);
        assert_eq!(ch.moving_part(), expect);
        assert_eq!(ch.fixed_rank(), 1);
    }

    #[test]
    fn chi_c01_degree_one() {
        let i = c(1);
        let ch = chi_edge(&InvariantCurve::Punctual { i, k: 0, l: 1 }, 1).character;
        let mut expect = VirtualCharacter::from_weights([
            i.character(-1, 2),
            i.character(1, -2),
            i.character(-1, 1),
            i.character(0, -1),
            i.character(-1, 0),
            i.character(0, -1),
        ]);
        expect.add_term(i.character(-1, -1), -1);
        assert_eq!(ch.moving_part(), expect);
    }

    #[test]
    fn chi_c12_degree_two() {
        let i = c(2);
        let curve = InvariantCurve::Punctual { i, k: 1, l: 2 };
        let one = chi_edge(&curve, 1).character;
        let two = chi_edge(&curve, 2).character;
        assert_eq!(one.rank(), 9 - 3);
        // the Theta group has 5 positive and 5 negative terms
        assert_eq!(two.rank(), one.rank());
        let shift = i.character(1, -1).scale(&rat(1, 2));
        assert_eq!(two.multiplicity(&(&i.character(-1, 2) + &shift)), 1);
        assert_eq!(two.multiplicity(&(&i.character(-3, 0) + &shift)), -1);
    }

    #[test]
    fn degree_one_has_no_theta() {
        for curve in curve_catalog() {
            let ch = chi_edge(&curve, 1).character;
            assert!(ch.terms().all(|(w, _)| w.coeff_w.is_integer() && w.coeff_z.is_integer()));
        }
    }

    #[test]
    fn pair_edge_degree_one_value() {
        let s = spec();
        for i in Chart::ALL {
            for j in Chart::ALL.into_iter().filter(|&j| j != i) {
                let (wi, zi) = torus_weights(i);
                let (wj, zj) = torus_weights(j);
                let (w, z, wj, zj) = (wi.evaluate(&s), zi.evaluate(&s), wj.evaluate(&s), zj.evaluate(&s));
                let expect = &w * &wj * &z * &zj * (&w - &z) * (&w - &z) / (&w + &z);
                let got = edge_euler(&InvariantCurve::Pair { i, j }, 1, &s).unwrap();
                assert_eq!(got, expect);
                assert_eq!(edge_euler_closed(i, j, 1, &s).unwrap(), expect);
            }
        }
    }

    #[test]
    fn pair_edge_matches_closed_form() {
        let pts = sample_specializations(11, 5, &forbidden_weights(4)).unwrap();
        for s in &pts {
            for i in Chart::ALL {
                for j in Chart::ALL.into_iter().filter(|&j| j != i) {
                    for de in 1..=4 {
                        assert_eq!(
                            edge_euler(&InvariantCurve::Pair { i, j }, de, s).unwrap(),
                            edge_euler_closed(i, j, de, s).unwrap(),
                            "i={i} j={j} d_e={de} at {s}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn edge_euler_homogeneity() {
        let s = spec();
        let t = rat(-3, 4);
        for curve in curve_catalog() {
            for de in 1..=3 {
                let ch = chi_edge(&curve, de).character;
                let deg = ch.moving_part().rank();
                let a = edge_euler(&curve, de, &s).unwrap();
                let b = edge_euler(&curve, de, &s.scaled(&t)).unwrap();
                assert_eq!(b, a * pow(&t, deg));
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(vertex_psi_integral(&[int(2)], 3).unwrap(), rat(1, 2));
        assert_eq!(vertex_psi_integral(&[int(1), int(1), int(1)], 3).unwrap(), int(1));
        assert_eq!(vertex_psi_integral(&[int(1), int(2)], 4).unwrap(), rat(3, 4));
        assert!(vertex_psi_integral(&[int(1)], 2).is_err());
        assert!(vertex_psi_integral(&[int(0), int(1)], 3).is_err());
    }

    #[test]
    fn single_s_graph_contribution() {
        let s = spec();
        let (i, j) = (c(1), c(0));
        let gs = enumerate(&GraphFamily::S { i, j }, 1);
        let (wi, zi) = torus_weights(i);
        let (wj, zj) = torus_weights(j);
        let (w, z, wj, zj) = (wi.evaluate(&s), zi.evaluate(&s), wj.evaluate(&s), zj.evaluate(&s));
        let expect = (&w + &z) / (&w * &wj * &z * &zj * (&w - &z) * (&w - &z));
        assert_eq!(graph_contribution(&gs[0], &s).unwrap(), expect);
    }

    #[test]
    fn single_t_graph_contribution() {
        let s = spec();
        let i = c(2);
        let gs = enumerate(&GraphFamily::T { i, j: 0, k: 1 }, 1);
        let (wi, zi) = torus_weights(i);
        let (w, z) = (wi.evaluate(&s), zi.evaluate(&s));
        let two = int(2);
        let expect = (&w + &z) / (&w * (&w - &two * &z) * (&w - &two * &z) * (&w - &z) * &z * &z);
        assert_eq!(graph_contribution(&gs[0], &s).unwrap(), expect);
    }

    #[test]
    fn contributions_have_degree_minus_five() {
        let s = spec();
        let t = rat(5, 3);
        for fam in [GraphFamily::S { i: c(2), j: c(1) }, GraphFamily::T { i: c(1), j: 0, k: 2 }] {
            for g in enumerate(&fam, 3) {
                let a = graph_contribution(&g, &s).unwrap();
                let b = graph_contribution(&g, &s.scaled(&t)).unwrap();
                assert_eq!(b, a * pow(&t, -5), "{g}");
            }
        }
    }

    #[test]
    fn forbidden_list_covers_small_denominators() {
        let f = forbidden_weights(3);
        assert!(!f.contains(&Weight::zero()));
        for i in Chart::ALL {
            let (w, z) = torus_weights(i);
            assert!(f.contains(&(&w + &z)));
        }
        assert!(f.contains(&g_class(c(1))));
    }
}
