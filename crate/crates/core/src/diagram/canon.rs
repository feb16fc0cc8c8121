//! Relabelling-invariant keys for diagrams, used for memoization.

use std::collections::HashMap;

use super::{LinkDiagram, Sign};

/// A key equal for two diagrams exactly when they differ only by edge
/// labels and crossing ids (orientation and plane orientation included).
pub type CanonicalKey = Vec<u32>;

fn piece_code(
    d: &LinkDiagram,
    start: u32,
    ends: &HashMap<u32, ((usize, usize), (usize, usize))>,
) -> Vec<u32> {
    let cs = d.crossings();
    let mut label_map: HashMap<u32, u32> = HashMap::new();
    let mut order: Vec<usize> = Vec::new();
    let mut in_order = vec![false; cs.len()];
    let mut next_label = 1u32;
    let mut pending = Some(start);
    while let Some(first) = pending {
        let mut cur = first;
        while !label_map.contains_key(&cur) {
            label_map.insert(cur, next_label);
            next_label += 1;
            let (ci, s) = ends[&cur].1;
            if !in_order[ci] {
                in_order[ci] = true;
                order.push(ci);
            }
            cur = cs[ci].slots[(s + 2) % 4];
        }
        pending = None;
        'find: for &ci in &order {
            for l in cs[ci].slots {
                if !label_map.contains_key(&l) {
                    pending = Some(l);
                    break 'find;
                }
            }
        }
    }
    let mut code = Vec::with_capacity(order.len() * 5);
    for ci in order {
        let c = &cs[ci];
        for l in c.slots {
            code.push(label_map[&l]);
        }
        code.push(if c.sign == Sign::Positive { 1 } else { 0 });
    }
    code
}

fn connected_key(d: &LinkDiagram) -> Vec<u32> {
    let ends = d.edge_ends();
    let mut best: Option<Vec<u32>> = None;
    for &l in ends.keys() {
        let code = piece_code(d, l, &ends);
        if best.as_ref().map_or(true, |b| code < *b) {
            best = Some(code);
        }
    }
    best.unwrap_or_default()
}

pub fn canonical_key(d: &LinkDiagram) -> CanonicalKey {
    let mut pieces: Vec<Vec<u32>> = d
        .connected_pieces()
        .iter()
        .map(|p| connected_key(&d.sub_diagram(p, 0)))
        .collect();
    pieces.sort();
    let mut key = vec![d.free_loops() as u32, pieces.len() as u32];
    for p in pieces {
        key.push(p.len() as u32);
        key.extend(p);
    }
    key
}

#[cfg(test)]
mod tests {
    use super::super::codes::parse_pd;
    use super::*;

    #[test]
    fn relabelling_does_not_change_key() {
        let a = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", None).unwrap();
        let b = parse_pd("X[5,2,6,3] X[1,4,2,5] X[3,6,4,1]", None).unwrap();
        let c = parse_pd("X[3,6,4,1] X[5,2,6,3] X[1,4,2,5]", None).unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
        assert_eq!(canonical_key(&a), canonical_key(&c));
        assert_ne!(canonical_key(&a), canonical_key(&a.mirror()));
    }

    #[test]
    fn free_loops_count() {
        assert_ne!(
            canonical_key(&LinkDiagram::unlink(1)),
            canonical_key(&LinkDiagram::unlink(2))
        );
    }
}
