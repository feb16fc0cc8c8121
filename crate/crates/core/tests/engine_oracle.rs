use nullify_core::engine::*;
use nullify_core::fixtures;
use nullify_core::polynomials::{homfly, max_z_degree};
use nullify_core::seifert::signature;
use nullify_core::LinkDiagram;

fn reduced_alternating(max_cr: usize) -> Vec<(String, LinkDiagram)> {
    fixtures::all()
        .into_iter()
        .filter(|f| f.alternating && f.crossing_number <= max_cr)
        .map(|f| (f.name.clone(), f.diagram().unwrap()))
        .filter(|(_, d)| d.is_alternating() && d.is_reduced())
        .collect()
}

#[test]
fn exhaustive_search_matches_closed_form() {
    let cfg = SearchConfig::default();
    let set = reduced_alternating(7);
    assert!(set.len() > 20);
    for (name, d) in set {
        let r = n_diagram_with(&d, &cfg).unwrap();
        let closed = n_d_alternating(&d).unwrap();
        assert_eq!(r.value(), Some(closed), "{name}");
        assert!(
            d.crossing_count() == 0 || closed < d.crossing_count(),
            "{name}"
        );
        assert_eq!(
            max_z_degree(&homfly(&d).unwrap()),
            Some(closed as i64),
            "{name}"
        );
        assert!(r.replay(&d, cfg.r3_depth).unwrap().is_trivial(), "{name}");
        // each smoothing moves the component count by one
        let mut cur = d.clone();
        for &id in &r.smoothed {
            let next = cur.smooth(id).unwrap();
            assert_eq!(
                next.component_count().abs_diff(cur.component_count()),
                1,
                "{name}"
            );
            cur = next;
        }
    }
}

#[test]
fn signature_plus_nullification_writhe_vanishes() {
    let cfg = SearchConfig::default();
    for (name, d) in reduced_alternating(8) {
        let s = signature(&d).unwrap();
        let ws = nullification_writhes(&d, &cfg).unwrap();
        assert!(!ws.is_empty());
        for w in ws {
            assert_eq!(s + w as i64, 0, "{name}");
        }
    }
}

#[test]
fn eleven_a_263() {
    let d = fixtures::get("11a_263").unwrap().diagram().unwrap();
    let t = twist_region_bound(&d);
    assert_eq!(t.parallel, vec![3, 3, 3, 2]);
    assert_eq!((t.anti_parallel, t.single), (0, 0));
    assert_eq!((t.bound_c0, t.bound_c1), (7, 8));
    let r = n_diagram(&d).unwrap();
    assert_eq!(r.value(), Some(8));
}

#[test]
fn twist_regions_partition_crossings() {
    for (name, d) in reduced_alternating(11) {
        let t = twist_region_bound(&d);
        let total = t.parallel.iter().sum::<usize>() + t.anti_parallel_crossings + t.single;
        assert_eq!(total, d.crossing_count(), "{name}");
    }
}

#[test]
fn general_interval_brackets_diagram_number() {
    let cfg = SearchConfig {
        depth: 3,
        ..SearchConfig::default()
    };
    for (name, d) in reduced_alternating(6) {
        let g = n_general_interval_with(&d, &cfg).unwrap();
        let nd = n_diagram_with(&d, &cfg).unwrap().lower;
        assert!(g.lower <= nd, "{name}");
        if let Some(u) = g.upper.value() {
            assert!(g.lower <= u && u <= nd, "{name}");
            assert_eq!(g.witness.len(), u, "{name}");
            assert!(g.replay(&d, cfg.r3_depth).unwrap().is_trivial(), "{name}");
        }
    }
}
