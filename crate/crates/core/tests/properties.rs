use proptest::prelude::*;

use hilb3::fock::{self, FockMonomial};
use hilb3::geometry::Chart;
use hilb3::graphs::{automorphism_order, enumerate, validate, GraphFamily};
use hilb3::invariants::{pair_ab_at, DegreeGraphs};
use hilb3::localization::{graph_sum, vertex_psi_integral};
use hilb3::scalars::{rat, Rational, Specialization};

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=20).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn psi_integral_is_symmetric(mut omegas in prop::collection::vec(nonzero_rat(), 1..5), extra in 0usize..4, rot in 0usize..5) {
        let n = omegas.len().max(3) + extra;
        let a = vertex_psi_integral(&omegas, n).unwrap();
        let k = rot % omegas.len();
        omegas.rotate_left(k);
        prop_assert_eq!(a, vertex_psi_integral(&omegas, n).unwrap());
    }

    #[test]
    fn psi_integral_scales(omegas in prop::collection::vec(nonzero_rat(), 1..5), extra in 0usize..4, t in nonzero_rat()) {
        // degree -(n - 3) - |F| in the omegas
        let n = omegas.len().max(3) + extra;
        let scaled: Vec<Rational> = omegas.iter().map(|o| o * &t).collect();
        let deg = (n - 3 + omegas.len()) as i64;
        let a = vertex_psi_integral(&omegas, n).unwrap();
        let b = vertex_psi_integral(&scaled, n).unwrap();
        prop_assert_eq!(b * hilb3::scalars::pow(&t, deg), a);
    }

    #[test]
    fn degree_one_total_is_constant(w in nonzero_rat(), z in nonzero_rat()) {
        let spec = Specialization::new(w, z);
        let graphs = DegreeGraphs::new(1).unwrap();
        if let Ok(r) = pair_ab_at(&graphs, &[spec]) {
            prop_assert_eq!(r.ab_value, rat(-81, 1));
        }
    }

    #[test]
    fn graph_sums_scale_with_degree_minus_four(w in nonzero_rat(), z in nonzero_rat(), t in nonzero_rat(), d in 1u32..=3) {
        // each graph has degree -5; the two marked flags are not integrated
        let fam = GraphFamily::s(Chart::ALL[1], Chart::ALL[0]).unwrap();
        let s = Specialization::new(w, z);
        if let (Ok(a), Ok(b)) = (graph_sum(&fam, d, &s), graph_sum(&fam, d, &s.scaled(&t))) {
            prop_assert_eq!(b * hilb3::scalars::pow(&t, 5), a);
        }
    }
}

#[test]
fn enumerated_graphs_are_valid_and_distinct() {
    for fam in hilb3::invariants::all_families() {
        for d in 1..=3 {
            let graphs = enumerate(&fam, d);
            let mut forms: Vec<String> = graphs.iter().map(|g| g.canonical_form()).collect();
            for g in &graphs {
                assert!(validate(g, &fam, d), "{fam} d={d}: {g}");
                let cover: u64 = g.edges.iter().map(|e| u64::from(e.degree)).product();
                assert_eq!(automorphism_order(g) % cover, 0);
            }
            let n = forms.len();
            forms.dedup();
            assert_eq!(forms.len(), n);
        }
    }
}

#[test]
fn pairing_is_symmetric_on_bases() {
    let all: Vec<FockMonomial> = [2, 4, 6, 8, 10].iter().flat_map(|&k| fock::basis(k).unwrap()).collect();
    for a in &all {
        for b in &all {
            assert_eq!(fock::pairing(a, b), fock::pairing(b, a));
            if a.homology_degree() + b.homology_degree() != 12 {
                assert_eq!(fock::pairing(a, b), rat(0, 1));
            }
        }
    }
}
