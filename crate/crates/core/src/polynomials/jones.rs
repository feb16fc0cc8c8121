//! Kauffman bracket and Jones polynomial.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::diagram::LinkDiagram;
use crate::laurent::LaurentPoly1;

/// Polynomial in `A` with machine coefficients; bracket coefficients of the
/// diagrams handled here stay far below the `i128` range.
type APoly = BTreeMap<i64, i128>;

fn add_into(acc: &mut APoly, p: &APoly, shift: i64) {
    for (&e, &c) in p {
        let slot = acc.entry(e + shift).or_insert(0);
        *slot = slot.checked_add(c).expect("bracket coefficient overflow");
        if *slot == 0 {
            acc.remove(&(e + shift));
        }
    }
}

/// Multiply by the loop value `d = -A^2 - A^-2`.
fn times_loop(p: &APoly) -> APoly {
    let mut out = APoly::new();
    for (&e, &c) in p {
        for s in [2, -2] {
            let slot = out.entry(e + s).or_insert(0);
            *slot = slot.checked_sub(c).expect("bracket coefficient overflow");
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Open arcs of a partial state: label -> label at the arc's other end.
type Matching = Vec<(u32, u32)>;

fn add_arc(m: &Matching, x: u32, y: u32) -> (Matching, bool) {
    if x == y {
        return (m.clone(), true);
    }
    let mut out: Matching = Vec::with_capacity(m.len() + 1);
    let mut xe = x;
    let mut ye = y;
    let mut closed = false;
    for &(a, b) in m {
        if (a, b) == (x.min(y), x.max(y)) {
            closed = true;
            continue;
        }
        if a == x {
            xe = b;
        } else if b == x {
            xe = a;
        } else if a == y {
            ye = b;
        } else if b == y {
            ye = a;
        } else {
            out.push((a, b));
            continue;
        }
    }
    if !closed {
        out.push((xe.min(ye), xe.max(ye)));
        out.sort_unstable();
    }
    (out, closed)
}

/// Order crossings so that each next one shares as many edges as possible
/// with those already placed, keeping the open boundary small.
fn contraction_order(d: &LinkDiagram) -> Vec<usize> {
    let cs = d.crossings();
    let n = cs.len();
    let mut placed = vec![false; n];
    let mut open: HashMap<u32, usize> = HashMap::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = None;
        let mut best_score = i64::MIN;
        for i in 0..n {
            if placed[i] {
                continue;
            }
            let shared = cs[i].slots.iter().filter(|l| open.contains_key(l)).count() as i64;
            let score = 2 * shared - 4;
            if score > best_score {
                best_score = score;
                best = Some(i);
            }
        }
        let i = best.unwrap();
        placed[i] = true;
        order.push(i);
        for &l in &cs[i].slots {
            *open.entry(l).or_default() += 1;
            if open[&l] == 2 {
                open.remove(&l);
            }
        }
    }
    order
}

/// Kauffman bracket as a map from powers of `A` to coefficients, normalized
/// so that a single circle has bracket 1.
pub fn kauffman_bracket(d: &LinkDiagram) -> BTreeMap<i64, BigInt> {
    if d.crossing_count() == 0 {
        let mut total = APoly::from([(0, 1)]);
        for _ in 1..d.free_loops() {
            total = times_loop(&total);
        }
        return total
            .into_iter()
            .map(|(e, c)| (e, BigInt::from(c)))
            .collect();
    }
    let mut states: HashMap<Matching, APoly> = HashMap::new();
    states.insert(Vec::new(), APoly::from([(0, 1)]));
    for i in contraction_order(d) {
        let [a, b, c, dd] = d.crossings()[i].slots;
        let mut next: HashMap<Matching, APoly> = HashMap::new();
        for (m, poly) in &states {
            for (pairs, weight) in [([(a, b), (c, dd)], 1i64), ([(a, dd), (b, c)], -1i64)] {
                let (m1, l1) = add_arc(m, pairs[0].0, pairs[0].1);
                let (m2, l2) = add_arc(&m1, pairs[1].0, pairs[1].1);
                let mut p = poly.clone();
                for _ in 0..(l1 as usize + l2 as usize) {
                    p = times_loop(&p);
                }
                add_into(next.entry(m2).or_default(), &p, weight);
            }
        }
        next.retain(|_, p| !p.is_empty());
        states = next;
    }
    let mut total = states.remove(&Vec::new()).unwrap_or_default();
    for _ in 0..d.free_loops() {
        total = times_loop(&total);
    }
    // every loop of a state was weighted by d; the normalization removes one
    divide_loop(
        total
            .into_iter()
            .map(|(e, c)| (e, BigInt::from(c)))
            .collect(),
    )
}

fn divide_loop(p: BTreeMap<i64, BigInt>) -> BTreeMap<i64, BigInt> {
    // p(A) / (-A^2 - A^-2) via the doubled-exponent machinery
    let num = LaurentPoly1::from_terms(p.into_iter());
    let den = LaurentPoly1::from_terms([(2i64, -1i64), (-2, -1)]);
    let q = crate::laurent::divide_exact(&num, &den).expect("bracket divisible by loop value");
    q.terms().map(|(e, c)| (e, c.clone())).collect()
}

/// Jones polynomial `V(t) = (-A^3)^(-w) <D>` at `A = t^(-1/4)`, with doubled
/// exponents of `t`.
pub fn jones(d: &LinkDiagram) -> LaurentPoly1 {
    let w = d.writhe() as i64;
    let sign: i64 = if w % 2 == 0 { 1 } else { -1 };
    let mut out = LaurentPoly1::zero();
    for (e, c) in kauffman_bracket(d) {
        let k = e - 3 * w;
        debug_assert!(k % 2 == 0, "odd power of A survives normalization");
        out.add_term(-k / 2, c * sign);
    }
    out
}

/// Jones polynomial of the `k`-component unlink.
pub fn unlink_jones(k: usize) -> LaurentPoly1 {
    LaurentPoly1::from_terms([(1i64, -1i64), (-1, -1)]).pow(k.saturating_sub(1) as u32)
}
