use nullify_core::engine::{SearchConfig, Upper};
use nullify_core::enumeration::*;
use nullify_core::polynomials::jones;
use nullify_core::rational::{
    cf_to_fraction, fourplat_diagram, fourplat_equals, fourplat_mirror_equals,
};

#[test]
fn every_small_record_nullifies_in_one_step() {
    let cfg = SearchConfig::default();
    let t = enumerate_null_one(12, &cfg).unwrap();
    assert!(!t.records.is_empty());
    for r in &t.records {
        assert_eq!(r.verified, Some(true), "{r:?}");
        assert_eq!(
            r.crossing_number,
            2 * r.source_vector.iter().sum::<i64>(),
            "{r:?}"
        );
    }
    // one record per knot: no two are equivalent
    for (i, a) in t.records.iter().enumerate() {
        for b in &t.records[i + 1..] {
            assert!(!null_one_equivalent(a, b));
        }
    }
    let six = enumerate_null_one(6, &cfg).unwrap();
    assert!(six
        .records
        .iter()
        .any(|r| (r.derived_p, r.derived_q) == (9, 4)));
    // 9/4 and its mirror 9/2
    assert_eq!(six.counts.get(&6), Some(&2));
    assert!(six.records.iter().any(|r| r.mirror_of.is_some()));
}

#[test]
fn counts_grow() {
    let cfg = SearchConfig::default();
    let totals: Vec<usize> = [6, 8, 10, 12, 14]
        .iter()
        .map(|&m| enumerate_null_one(m, &cfg).unwrap().records.len())
        .collect();
    assert!(totals.windows(2).all(|w| w[0] < w[1]), "{totals:?}");
}

#[test]
fn dedup_is_a_congruence() {
    let mut recs = vec![];
    for v in knot_sources(5) {
        for e in [1, -1] {
            recs.push(null_one_from_rational(&v, e).unwrap());
        }
    }
    for (i, a) in recs.iter().enumerate() {
        for b in &recs[i + 1..] {
            let same = null_one_equivalent(a, b);
            assert_eq!(same, fourplat_equals(a.derived, b.derived), "{a:?} {b:?}");
            if same {
                let (ja, jb) = (
                    jones(&fourplat_diagram(&a.vector).unwrap()),
                    jones(&fourplat_diagram(&b.vector).unwrap()),
                );
                assert_eq!(ja, jb, "{:?} {:?}", a.vector, b.vector);
            }
        }
    }
}

#[test]
fn distinct_sources_give_distinct_records() {
    let sources = knot_sources(5);
    for (i, u) in sources.iter().enumerate() {
        for v in &sources[i + 1..] {
            let (fu, fv) = (cf_to_fraction(u).unwrap(), cf_to_fraction(v).unwrap());
            if fourplat_equals(fu, fv) || fourplat_mirror_equals(fu, fv) {
                continue;
            }
            for e in [1, -1] {
                for f in [1, -1] {
                    let (a, b) = (
                        null_one_from_rational(u, e).unwrap(),
                        null_one_from_rational(v, f).unwrap(),
                    );
                    assert!(!null_one_equivalent(&a, &b), "{u:?} {v:?}");
                }
            }
        }
    }
}

fn direct_count(m: i64, k: usize) -> (u64, u64) {
    // even magnitudes >= 2 summing to m + k - 1
    let target = m + k as i64 - 1;
    let mut ordered = 0;
    let mut unordered = 0;
    fn rec(left: i64, slots: usize, last: i64, cur: &mut Vec<i64>, ord: &mut u64, un: &mut u64) {
        if slots == 0 {
            if left == 0 {
                *ord += 1;
                let mut s = cur.clone();
                s.sort();
                if s == *cur {
                    *un += 1;
                }
            }
            return;
        }
        let _ = last;
        let mut a = 2;
        while a <= left {
            cur.push(a);
            rec(left - a, slots - 1, a, cur, ord, un);
            cur.pop();
            a += 2;
        }
    }
    rec(target, k, 0, &mut vec![], &mut ordered, &mut unordered);
    (ordered, unordered)
}

#[test]
fn high_null_counts_match_direct_enumeration() {
    for k in [2usize, 4, 6] {
        for m in ((k as i64 + 1)..=21).step_by(2) {
            let (o, u) = direct_count(m, k);
            assert_eq!(count_high_null(m, k as i64).unwrap(), o, "m={m} k={k}");
            assert_eq!(
                count_high_null_unordered(m, k as i64).unwrap(),
                u,
                "m={m} k={k}"
            );
            if k == 2 {
                assert_eq!(o, (m as u64 - 1) / 2);
            }
        }
    }
}

#[test]
fn families_nullify_in_one_step() {
    let cfg = SearchConfig::default();
    for (a, b) in [(1, 1), (1, 2), (2, 1)] {
        for kind in [Family::A, Family::B] {
            assert_eq!(
                verify_family(kind, a, b, &cfg).unwrap(),
                Upper::Value(1),
                "{kind:?} {a} {b}"
            );
        }
    }
}

#[test]
fn csv_header() {
    let t = enumerate_null_one(6, &SearchConfig::default()).unwrap();
    let mut buf = Vec::new();
    write_null_one_csv(&t, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("p,q,epsilon,derived_p,derived_q,vector,crossing_number,verified"));
    assert!(text.contains("3,1,1,9,4,3 1 -3,6,true"));
}
