mod common;

use num_complex::Complex64;
use proptest::prelude::*;

use pachner_core::canon::{canonical_signature, find_isomorphism, IsoMode};
use pachner_core::family::generate_tn;
use pachner_core::moves::{central_edge_after_23, enumerate_23_sites, pachner_23, pachner_32};
use pachner_core::perm::{VertexPerm, ALL_PERMS};
use pachner_core::shapes::{check_edge_consistency, classify};
use pachner_core::triangulation::{Gluing, Triangulation};
use pachner_core::volume::bloch_wigner;

use common::{all_isomorphisms, quadrature_volume};

/// Builds a triangulation from a face matching given as a shuffled list of
/// face slots (consecutive entries are glued) and a perm choice per pair.
fn from_matching(n: usize, order: &[usize], choices: &[usize]) -> Option<Triangulation> {
    let mut g = vec![
        [Gluing {
            tet: 0,
            perm: VertexPerm::IDENTITY
        }; 4];
        n
    ];
    for (k, pair) in order.chunks(2).enumerate() {
        let (t1, f1) = (pair[0] / 4, (pair[0] % 4) as u8);
        let (t2, f2) = (pair[1] / 4, (pair[1] % 4) as u8);
        let candidates: Vec<VertexPerm> = ALL_PERMS
            .iter()
            .copied()
            .filter(|p| p.apply(f1) == f2)
            .collect();
        let p = candidates[choices[k] % candidates.len()];
        g[t1][f1 as usize] = Gluing { tet: t2, perm: p };
        g[t2][f2 as usize] = Gluing {
            tet: t1,
            perm: p.inverse(),
        };
    }
    Triangulation::from_gluings(g)
        .ok()
        .filter(Triangulation::is_connected)
}

fn arb_triangulation(max_n: usize) -> impl Strategy<Value = Triangulation> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let slots: Vec<usize> = (0..4 * n).collect();
            (
                Just(n),
                Just(slots).prop_shuffle(),
                prop::collection::vec(0usize..6, 2 * n),
            )
        })
        .prop_filter_map("disconnected", |(n, order, choices)| {
            from_matching(n, &order, &choices)
        })
}

fn arb_relabeling(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<VertexPerm>)> {
    let tets: Vec<usize> = (0..n).collect();
    (
        Just(tets).prop_shuffle(),
        prop::collection::vec((0usize..24).prop_map(|i| ALL_PERMS[i]), n),
    )
}

fn with_relabeling(
    max_n: usize,
) -> impl Strategy<Value = (Triangulation, Vec<usize>, Vec<VertexPerm>)> {
    arb_triangulation(max_n).prop_flat_map(|t| {
        let n = t.size();
        (Just(t), arb_relabeling(n)).prop_map(|(t, (a, b))| (t, a, b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_triangulations_are_valid(t in arb_triangulation(5)) {
        prop_assert!(t.validate().is_ok());
        let classes = t.edge_classes();
        let degrees: usize = classes.iter().map(|c| c.degree()).sum();
        prop_assert_eq!(degrees, 6 * t.size());
        // links: V = 2·edges, E = 6n, F = 4n
        let chi: i64 = t.vertex_links().iter().map(|c| c.link_euler_characteristic).sum();
        prop_assert_eq!(chi, 2 * classes.len() as i64 - 2 * t.size() as i64);
    }

    #[test]
    fn signature_is_relabeling_invariant((t, tm, vm) in with_relabeling(5)) {
        let r = t.relabel(&tm, &vm);
        prop_assert_eq!(canonical_signature(&t), canonical_signature(&r));
        let iso = find_isomorphism(&t, &r, IsoMode::All);
        prop_assert!(iso.is_some());
        let iso = iso.unwrap();
        prop_assert_eq!(t.relabel(&iso.tet_map, &iso.vertex_maps), r);
    }

    #[test]
    fn signature_equality_matches_isomorphism(a in arb_triangulation(3), b in arb_triangulation(3)) {
        let same = canonical_signature(&a) == canonical_signature(&b);
        prop_assert_eq!(same, !all_isomorphisms(&a, &b).is_empty());
    }

    #[test]
    fn two_three_round_trip(t in arb_triangulation(4), pick in 0usize..64) {
        let sites = enumerate_23_sites(&t);
        prop_assume!(!sites.is_empty());
        let site = sites[pick % sites.len()];
        let up = pachner_23(&t, site).unwrap();
        prop_assert!(up.validate().is_ok());
        prop_assert_eq!(up.size(), t.size() + 1);
        prop_assert_eq!(up.edge_classes().len(), t.edge_classes().len() + 1);
        let mut before: Vec<i64> = t.vertex_links().iter().map(|c| c.link_euler_characteristic).collect();
        let mut after: Vec<i64> = up.vertex_links().iter().map(|c| c.link_euler_characteristic).collect();
        before.sort();
        after.sort();
        prop_assert_eq!(before, after);
        let central = central_edge_after_23(&up);
        prop_assert_eq!(central.degree(), 3);
        let down = pachner_32(&up, &central).unwrap();
        prop_assert!(!all_isomorphisms(&t, &down).is_empty());
    }

    #[test]
    fn even_relabeling_keeps_shapes_consistent(
        (n, tm, vm) in (2usize..7).prop_flat_map(|n| arb_relabeling(n).prop_map(move |(a, b)| (n, a, b)))
    ) {
        let (t, s) = generate_tn(n);
        let even: Vec<VertexPerm> = vm.iter().map(|p| if p.is_even() { *p } else { p.compose(VertexPerm::transposition(0, 1)) }).collect();
        let rt = t.relabel(&tm, &even);
        let rs = s.relabel(&tm, &even).unwrap();
        let rep = check_edge_consistency(&rt, &rs).unwrap();
        prop_assert!(rep.is_consistent());
        prop_assert_eq!(classify(&rs), classify(&s));
        prop_assert_eq!(rs.canonical_multiset(false), s.canonical_multiset(false));
        prop_assert!(s.relabel(&tm, &vm).is_ok() == vm.iter().all(|p| p.is_even()));
    }

    #[test]
    fn bloch_wigner_symmetries(x in -5.0f64..5.0, y in 0.01f64..5.0) {
        let z = Complex64::new(x, y);
        let one = Complex64::new(1.0, 0.0);
        let d = bloch_wigner(z);
        prop_assert!(d > 0.0);
        prop_assert!((bloch_wigner(one / (one - z)) - d).abs() < 1e-12);
        prop_assert!((bloch_wigner((z - one) / z) - d).abs() < 1e-12);
        prop_assert!((bloch_wigner(one / z) + d).abs() < 1e-12);
        prop_assert!((bloch_wigner(z.conj()) + d).abs() < 1e-12);
        prop_assert!((quadrature_volume(z) - d).abs() < 1e-9);
    }
}
