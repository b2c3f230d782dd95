use pachner_core::canon::{canonical_signature, IsoMode};
use pachner_core::explorer::{explore, ExplorePolicy, MoveKind};
use pachner_core::family::generate_tn;
use pachner_core::moves::enumerate_23_sites;
use pachner_core::quad::QuadExt;
use pachner_core::report;
use pachner_core::seeds;
use pachner_core::shapes::{check_edge_consistency, Classification, ShapeAssignment};

fn regular() -> ShapeAssignment {
    ShapeAssignment::uniform(QuadExt::regular(), 2)
}

#[test]
fn family_members_appear_at_their_depth() {
    let g = explore(&seeds::fig8(), &regular(), ExplorePolicy::with_depth(4)).unwrap();
    for n in 2..=6 {
        let (t, s) = generate_tn(n);
        let sig = canonical_signature(&t).unwrap();
        let i = g
            .node_index(&sig)
            .unwrap_or_else(|| panic!("T_{n} missing"));
        let node = &g.nodes[i];
        assert_eq!(node.name, format!("T_{{{n}}}"));
        assert_eq!(node.depth, n - 2);
        assert_eq!(node.shape_multiset, s.canonical_multiset(true));
    }
}

#[test]
fn geometric_nodes_share_the_seed_volume() {
    let g = explore(&seeds::fig8(), &regular(), ExplorePolicy::with_depth(4)).unwrap();
    let v0 = g.seed().unwrap().volume.unwrap();
    for n in &g.nodes {
        if n.classification == Some(Classification::Geometric) {
            assert!((n.volume.unwrap() - v0).abs() < 1e-9, "{}", n.name);
            let rep = check_edge_consistency(&n.triangulation, n.shapes.as_ref().unwrap()).unwrap();
            assert!(rep.is_consistent());
        }
    }
    assert!(g.shape_conflicts.is_empty());
}

#[test]
fn sister_middle_node_has_five_sites() {
    let g = explore(&seeds::fig8_sister(), &regular(), ExplorePolicy::default()).unwrap();
    let g3 = g
        .nodes
        .iter()
        .find(|n| n.tet_count == 3 && n.letter() == 'G')
        .unwrap();
    assert_eq!(enumerate_23_sites(&g3.triangulation).len(), 5);
    assert_eq!(g.nodes.iter().filter(|n| n.letter() == 'G').count(), 3);
}

#[test]
fn mirror_images_split_without_identification() {
    let all = explore(&seeds::fig8(), &regular(), ExplorePolicy::with_depth(2)).unwrap();
    let p = ExplorePolicy {
        iso_mode: IsoMode::OrientationPreserving,
        ..ExplorePolicy::with_depth(2)
    };
    let oriented = explore(&seeds::fig8(), &regular(), p).unwrap();
    assert!(oriented.nodes.len() > all.nodes.len());
    assert!(oriented.shape_conflicts.is_empty());
}

#[test]
fn three_two_moves_recorded() {
    let p = ExplorePolicy {
        include_32: true,
        ..ExplorePolicy::with_depth(3)
    };
    let g = explore(&seeds::fig8(), &regular(), p).unwrap();
    assert!(g.edges.keys().any(|k| k.2 == MoveKind::ThreeTwo));
    assert!(g.shape_conflicts.is_empty());
    for &(s, t, kind) in g.edges.keys() {
        let delta = g.nodes[t].tet_count as i64 - g.nodes[s].tet_count as i64;
        assert_eq!(delta, if kind == MoveKind::TwoThree { 1 } else { -1 });
    }
}

#[test]
fn outputs_are_deterministic() {
    let run = || {
        let g = explore(&seeds::fig8_sister(), &regular(), ExplorePolicy::default()).unwrap();
        (report::to_json(&g), report::to_dot(&g), report::to_csv(&g))
    };
    assert_eq!(run(), run());
}

#[test]
fn sister_report_counts() {
    let g = explore(&seeds::fig8_sister(), &regular(), ExplorePolicy::default()).unwrap();
    let c = report::summary_counts(&g);
    for size in [2, 3, 4] {
        assert_eq!(c[&(size, "geometric".to_string())], 1);
    }
    assert_eq!(c[&(5, "flat".to_string())], 1);
    assert_eq!(c[&(5, "negatively-oriented".to_string())], 3);
}
