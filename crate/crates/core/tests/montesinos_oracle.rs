use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nullify_core::montesinos::*;

fn instances(n: usize, seed: u64) -> Vec<MontesinosParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| MontesinosParams::random(&mut rng, 4, 9, 3))
        .collect()
}

#[test]
fn seifert_formula_matches_direct_count() {
    let mut kinds = [0usize; 2];
    let mut corner = 0;
    for p in instances(200, 7) {
        let m = montesinos_build(&p).unwrap();
        assert!(m.type_is_consistent(), "{p:?}");
        kinds[(m.kind() == MontesinosType::II) as usize] += 1;
        if p.e == 0
            && m.parallel.iter().all(|t| !t.last().unwrap())
            && m.kind() == MontesinosType::II
        {
            corner += 1;
        }
        let direct = m.diagram.seifert_circles().count as i64;
        assert_eq!(montesinos_seifert_count(&p).unwrap(), direct, "{p:?}");
        for t in &m.parallel {
            for w in t.windows(2) {
                assert!(!(w[0] && w[1]), "adjacent parallel boxes in {p:?}");
            }
        }
    }
    assert!(kinds[0] > 0 && kinds[1] > 0, "{kinds:?}");
    assert!(corner > 0);
}

#[test]
fn nd_bound_exact_when_alternating() {
    let mut seen = 0;
    for p in instances(200, 11) {
        let m = montesinos_build(&p).unwrap();
        let d = &m.diagram;
        if !d.is_alternating() {
            continue;
        }
        let r = d.reduce_alternating().unwrap();
        let expect = r.crossing_count() as i64 - r.seifert_circles().count as i64 + 1;
        assert_eq!(montesinos_nd_bound(&p).unwrap(), expect, "{p:?}");
        seen += 1;
    }
    assert!(seen > 10);
}
