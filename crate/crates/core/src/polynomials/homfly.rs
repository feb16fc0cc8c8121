//! HOMFLY polynomial by skein recursion towards descending diagrams.
//!
//! Convention: `v^-1 P(L+) - v P(L-) = z P(L0)`, `P(unknot) = 1`.

use std::collections::HashMap;

use crate::diagram::canon::{canonical_key, CanonicalKey};
use crate::diagram::{Crossing, LinkDiagram, Sign};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly2;

/// Default cap on skein recursion nodes.
pub const DEFAULT_HOMFLY_BUDGET: usize = 2_000_000;

/// `(v^-1 - v) / z`, the value of a split circle.
pub fn delta() -> LaurentPoly2 {
    LaurentPoly2::from_terms([((-1i64, -1i64), 1i64), ((1, -1), -1)])
}

pub fn unlink_homfly(k: usize) -> LaurentPoly2 {
    delta().pow(k.saturating_sub(1) as u32)
}

/// Crossings met first as an under-pass, for the base-point choice that
/// minimizes their number.
pub(crate) fn bad_crossings(d: &LinkDiagram) -> Vec<u32> {
    let comps = d.crossing_components();
    let ends = d.edge_ends();
    let cs = d.crossings();
    let visit = |l: u32| -> (usize, bool) {
        let (ci, s) = ends[&l].1;
        (ci, Crossing::is_over(s))
    };
    // best start per component for its self-crossings
    let comp_of = d.component_of_labels();
    let mut starts = Vec::with_capacity(comps.len());
    for (k, comp) in comps.iter().enumerate() {
        let len = comp.len();
        let mut best = (usize::MAX, 0);
        for st in 0..len {
            let mut first: HashMap<usize, bool> = HashMap::new();
            let mut bad = 0;
            for j in 0..len {
                let (ci, over) = visit(comp[(st + j) % len]);
                let c = &cs[ci];
                let selfc = c.slots.iter().all(|l| comp_of[l] == k);
                if !selfc {
                    continue;
                }
                if !first.contains_key(&ci) {
                    first.insert(ci, over);
                    if !over {
                        bad += 1;
                    }
                }
            }
            if bad < best.0 {
                best = (bad, st);
            }
        }
        starts.push(best.1);
    }
    // component order minimizing inter-component bad crossings
    let nc = comps.len();
    let mut under_count = vec![vec![0usize; nc]; nc];
    for c in cs {
        let u = comp_of[&c.slots[0]];
        let o = comp_of[&c.slots[1]];
        if u != o {
            under_count[u][o] += 1;
        }
    }
    let order = best_order(&under_count);
    let rank: Vec<usize> = {
        let mut r = vec![0; nc];
        for (pos, &k) in order.iter().enumerate() {
            r[k] = pos;
        }
        r
    };
    let mut bad_ids = Vec::new();
    for c in cs {
        let u = comp_of[&c.slots[0]];
        let o = comp_of[&c.slots[1]];
        if u != o {
            if rank[u] < rank[o] {
                bad_ids.push(c.id);
            }
        }
    }
    for (k, comp) in comps.iter().enumerate() {
        let len = comp.len();
        let mut first: HashMap<usize, bool> = HashMap::new();
        for j in 0..len {
            let (ci, over) = visit(comp[(starts[k] + j) % len]);
            if cs[ci].slots.iter().all(|l| comp_of[l] == k) && !first.contains_key(&ci) {
                first.insert(ci, over);
                if !over {
                    bad_ids.push(cs[ci].id);
                }
            }
        }
    }
    bad_ids.sort_unstable();
    bad_ids
}

/// Order of components; placing `i` before `j` costs the crossings where
/// `i` passes under `j`.
fn best_order(under: &[Vec<usize>]) -> Vec<usize> {
    let n = under.len();
    let cost = |ord: &[usize]| -> usize {
        let mut c = 0;
        for a in 0..ord.len() {
            for b in a + 1..ord.len() {
                c += under[ord[a]][ord[b]];
            }
        }
        c
    };
    if n <= 7 {
        let mut best: Vec<usize> = (0..n).collect();
        let mut best_cost = cost(&best);
        let mut perm: Vec<usize> = (0..n).collect();
        // Heap's algorithm
        let mut c = vec![0usize; n];
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                let k = cost(&perm);
                if k < best_cost {
                    best_cost = k;
                    best = perm.clone();
                }
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        best
    } else {
        // greedy: repeatedly take the component passing under the fewest others left
        let mut left: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        while !left.is_empty() {
            let (pos, _) = left
                .iter()
                .enumerate()
                .min_by_key(|(_, &i)| left.iter().map(|&j| under[i][j]).sum::<usize>())
                .unwrap();
            out.push(left.remove(pos));
        }
        out
    }
}

struct Skein {
    memo: HashMap<CanonicalKey, LaurentPoly2>,
    calls: usize,
    budget: usize,
}

impl Skein {
    fn eval(&mut self, d: &LinkDiagram) -> Result<LaurentPoly2> {
        self.calls += 1;
        if self.calls > self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }
        let d = d.simplify(0);
        if d.crossing_count() == 0 {
            return Ok(unlink_homfly(d.free_loops()));
        }
        let pieces = d.split_pieces();
        if pieces.len() > 1 {
            let mut acc = delta().pow(pieces.len() as u32 - 1);
            for p in &pieces {
                if p.crossing_count() > 0 {
                    acc = &acc * &self.eval(p)?;
                }
            }
            return Ok(acc);
        }
        let key = canonical_key(&d);
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        let bad = bad_crossings(&d);
        let result = match bad.first() {
            None => unlink_homfly(d.component_count()),
            Some(&id) => {
                let c = d.crossing(id).expect("bad crossing exists");
                let switched = self.eval(&d.switch(id)?)?;
                let smoothed = self.eval(&d.smooth(id)?)?;
                match c.sign {
                    Sign::Positive => &switched.shift(2, 0) + &smoothed.shift(1, 1),
                    Sign::Negative => &switched.shift(-2, 0) - &smoothed.shift(-1, 1),
                }
            }
        };
        self.memo.insert(key, result.clone());
        Ok(result)
    }
}

pub fn homfly_with_budget(d: &LinkDiagram, budget: usize) -> Result<LaurentPoly2> {
    let mut s = Skein {
        memo: HashMap::new(),
        calls: 0,
        budget,
    };
    s.eval(d)
}

pub fn homfly(d: &LinkDiagram) -> Result<LaurentPoly2> {
    homfly_with_budget(d, DEFAULT_HOMFLY_BUDGET)
}
