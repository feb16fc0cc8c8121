//! Seifert matrices, signatures and genus bookkeeping.
//!
//! The Seifert surface of a connected diagram is treated as a ribbon graph:
//! one disk per Seifert circle and one half-twisted band per crossing.
//! Homology is generated by the fundamental cycles of the Seifert graph.
//! For two such cycles `a`, `b` the Seifert form satisfies
//!
//! ```text
//! θ(a,b) + θ(b,a) = -Σ_bands ε(c) a_c b_c        (linking with the double push-off)
//! θ(a,b) - θ(b,a) = a · b                         (intersection on the surface)
//! ```
//!
//! where `a_c ∈ {-1,0,1}` records how the cycle runs through band `c` and
//! `ε(c)` is the crossing sign, plus a correction for curves that pass under
//! a band rising over the disk they run on (nested circles). The
//! intersection number is computed from chord interleavings on each disk.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::laurent::{divide_exact, LaurentPoly1};

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertData {
    pub matrix: IntMatrix,
    /// First Betti number of the surface (size of the basis).
    pub betti: usize,
    pub genus: usize,
}

/// Seifert graph edge for one crossing: the circle holding the edge that
/// enters at slot 0, and the other circle.
struct Band {
    from: usize,
    to: usize,
    sign: i64,
}

pub fn seifert_matrix(d: &LinkDiagram) -> Result<SeifertData> {
    if d.crossing_count() == 0 {
        if d.free_loops() > 1 {
            return Err(Error::SplitDiagram);
        }
        return Ok(SeifertData {
            matrix: Vec::new(),
            betti: 0,
            genus: 0,
        });
    }
    if d.is_split_drawn() {
        return Err(Error::SplitDiagram);
    }
    let walks = d.seifert_circle_walks();
    let s = walks.len();
    let n = d.crossing_count();
    // position of each crossing on each circle it touches
    let mut circle_pos: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut entry_circle: Vec<usize> = vec![usize::MAX; n];
    for (k, walk) in walks.iter().enumerate() {
        for (pos, &(ci, slot)) in walk.iter().enumerate() {
            circle_pos[ci].push((k, pos));
            if slot == 0 {
                entry_circle[ci] = k;
            }
        }
    }
    let bands: Vec<Band> = (0..n)
        .map(|ci| {
            let from = entry_circle[ci];
            let to = circle_pos[ci]
                .iter()
                .map(|p| p.0)
                .find(|&k| k != from)
                .expect("two circles");
            Band {
                from,
                to,
                sign: d.crossings()[ci].sign.value() as i64,
            }
        })
        .collect();
    let pos_on = |ci: usize, k: usize| -> usize {
        circle_pos[ci]
            .iter()
            .find(|p| p.0 == k)
            .map(|p| p.1)
            .expect("crossing on circle")
    };

    // spanning tree by BFS from circle 0
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); s];
    for (ci, b) in bands.iter().enumerate() {
        adj[b.from].push(ci);
        adj[b.to].push(ci);
    }
    let mut parent_edge: Vec<Option<usize>> = vec![None; s];
    let mut depth = vec![usize::MAX; s];
    let mut in_tree = vec![false; n];
    depth[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &e in &adj[u] {
            let v = if bands[e].from == u {
                bands[e].to
            } else {
                bands[e].from
            };
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                parent_edge[v] = Some(e);
                in_tree[e] = true;
                queue.push_back(v);
            }
        }
    }
    let other = |e: usize, u: usize| {
        if bands[e].from == u {
            bands[e].to
        } else {
            bands[e].from
        }
    };

    // each basis cycle as a closed walk of (band, circle entered)
    let mut cycles: Vec<Vec<(usize, usize)>> = Vec::new();
    for e in (0..n).filter(|&e| !in_tree[e]) {
        let (u, v) = (bands[e].from, bands[e].to);
        // path v -> lca and u -> lca
        let mut up_v = Vec::new();
        let mut up_u = Vec::new();
        let (mut a, mut b) = (v, u);
        while depth[a] > depth[b] {
            let pe = parent_edge[a].unwrap();
            up_v.push(pe);
            a = other(pe, a);
        }
        while depth[b] > depth[a] {
            let pe = parent_edge[b].unwrap();
            up_u.push(pe);
            b = other(pe, b);
        }
        while a != b {
            let pa = parent_edge[a].unwrap();
            up_v.push(pa);
            a = other(pa, a);
            let pb = parent_edge[b].unwrap();
            up_u.push(pb);
            b = other(pb, b);
        }
        // cycle: u --e--> v --up_v--> lca --reverse(up_u)--> u
        let mut walk = vec![(e, v)];
        let mut cur = v;
        for &pe in &up_v {
            cur = other(pe, cur);
            walk.push((pe, cur));
        }
        for &pe in up_u.iter().rev() {
            cur = other(pe, cur);
            walk.push((pe, cur));
        }
        debug_assert_eq!(cur, u);
        cycles.push(walk);
    }
    let g = cycles.len();

    // signed band usage
    let usage: Vec<HashMap<usize, i64>> = cycles
        .iter()
        .map(|walk| {
            walk.iter()
                .map(|&(e, entered)| (e, if entered == bands[e].to { 1 } else { -1 }))
                .collect()
        })
        .collect();

    // chords on disks: for cycle i, disk k -> (entry point, exit point)
    let lane = |i: usize| (i + 1) as f64 / (g + 2) as f64;
    let point = |e: usize, k: usize, i: usize| -> f64 {
        let t = if k == bands[e].from {
            lane(i)
        } else {
            1.0 - lane(i)
        };
        pos_on(e, k) as f64 + t
    };
    let chords: Vec<HashMap<usize, (f64, f64)>> = cycles
        .iter()
        .enumerate()
        .map(|(i, walk)| {
            let m = walk.len();
            (0..m)
                .map(|j| {
                    let (e_in, k) = walk[j];
                    let (e_out, _) = walk[(j + 1) % m];
                    (k, (point(e_in, k, i), point(e_out, k, i)))
                })
                .collect()
        })
        .collect();
    let circle_len: Vec<f64> = walks.iter().map(|w| w.len() as f64).collect();
    let inside = |x: f64, from: f64, to: f64, len: f64| -> bool {
        let a = (x - from).rem_euclid(len);
        let b = (to - from).rem_euclid(len);
        a > 0.0 && a < b
    };

    // Planar data: which circles run counterclockwise (outer face at
    // infinity), and which bands rise over the disk they leave.
    let faces = d.faces();
    let mut face_of = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for &dart in f {
            face_of.insert(dart, fi);
        }
    }
    let outer = (0..faces.len())
        .max_by_key(|&f| (faces[f].len(), std::cmp::Reverse(f)))
        .unwrap_or(0);
    let ccw: Vec<bool> = walks
        .iter()
        .map(|walk| {
            let on_circle: std::collections::HashSet<u32> = walk
                .iter()
                .map(|&(ci, s)| d.crossings()[ci].slots[s])
                .collect();
            let mut uf = crate::util::DenseUnion::new(faces.len());
            for (l, (_, head)) in d.edge_ends() {
                if !on_circle.contains(&l) {
                    uf.union(face_of[&head], face_of[&(head.0, (head.1 + 3) % 4)]);
                }
            }
            let (ci, s) = walk[0];
            let left = face_of[&(ci, (s + 3) % 4)];
            uf.find(left) != uf.find(outer)
        })
        .collect();
    // does the band at crossing ci rise over the interior of disk k
    let inward = |ci: usize, k: usize| -> bool {
        let c = &d.crossings()[ci];
        let s_in = walks[k][pos_on(ci, k)].1;
        let other_on_left = (s_in == 0) == (c.sign == crate::diagram::Sign::Positive);
        other_on_left == ccw[k]
    };

    let mut matrix = vec![vec![0i64; g]; g];
    // A curve routed along a disk boundary passes under every lane of an
    // inward band whose foot lies inside its arc.
    let mut under_band = vec![vec![0i64; g]; g];
    for i in 0..g {
        for (&k, &(x_in, x_out)) in &chords[i] {
            let len = circle_len[k];
            for j in 0..g {
                if j == i {
                    continue;
                }
                let Some(&(y_in, y_out)) = chords[j].get(&k) else {
                    continue;
                };
                let mj = cycles[j].len();
                let pos_j = cycles[j].iter().position(|&(_, kk)| kk == k).unwrap();
                let f_in = cycles[j][pos_j].0;
                let f_out = cycles[j][(pos_j + 1) % mj].0;
                for (y, band, leaving) in [(y_in, f_in, false), (y_out, f_out, true)] {
                    if inward(band, k) && inside(y, x_in, x_out, len) {
                        let sign = if leaving == ccw[k] { -1 } else { 1 };
                        under_band[i][j] += sign;
                        under_band[j][i] += sign;
                    }
                }
            }
        }
    }
    for i in 0..g {
        for j in 0..g {
            let mut sym = under_band[i][j];
            for (e, a) in &usage[i] {
                if let Some(b) = usage[j].get(e) {
                    sym -= bands[*e].sign * a * b;
                }
            }
            let mut inter = 0i64;
            if i != j {
                for (k, &(p_in, p_out)) in &chords[i] {
                    if let Some(&(q_in, q_out)) = chords[j].get(k) {
                        let len = circle_len[*k];
                        let a = inside(q_in, p_in, p_out, len);
                        let b = inside(q_out, p_in, p_out, len);
                        if a && !b {
                            inter += 1;
                        } else if b && !a {
                            inter -= 1;
                        }
                    }
                }
            }
            let total = sym + inter;
            assert!(total % 2 == 0, "Seifert form parity violated");
            matrix[i][j] = total / 2;
        }
    }
    let nu = d.component_count();
    Ok(SeifertData {
        matrix,
        betti: g,
        genus: (g + 1 - nu) / 2,
    })
}

pub fn symmetrize(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    (0..n)
        .map(|i| (0..n).map(|j| m[i][j] + m[j][i]).collect())
        .collect()
}

/// Signature by congruence diagonalization over the rationals.
pub fn signature_diag(a: &IntMatrix) -> i64 {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut sig = 0i64;
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let piv = active.iter().copied().find(|&i| !m[i][i].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                // no diagonal pivot: fold a nonzero off-diagonal entry in
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !m[i][j].is_zero());
                match pair {
                    None => break,
                    Some((i, j)) => {
                        for k in 0..n {
                            let v = m[j][k].clone();
                            m[i][k] += v;
                        }
                        for k in 0..n {
                            let v = m[k][j].clone();
                            m[k][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let pv = m[p][p].clone();
        if pv.is_positive() {
            sig += 1;
        } else {
            sig -= 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            let f = &m[i][p] / &pv;
            if f.is_zero() {
                continue;
            }
            for &k in &active {
                let v = &f * &m[p][k];
                m[i][k] -= v;
            }
        }
        for &i in &active {
            m[i][p] = BigRational::zero();
            m[p][i] = BigRational::zero();
        }
    }
    sig
}

fn det_bigint(a: &[Vec<i64>], idx: &[usize]) -> BigInt {
    // Bareiss fraction-free elimination
    let n = idx.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = idx
        .iter()
        .map(|&i| idx.iter().map(|&j| BigInt::from(a[i][j])).collect())
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone() * sign
}

fn rank(a: &IntMatrix) -> usize {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in 0..n {
                    let v = &f * &m[r][k];
                    m[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Default node budget for the σ-series search.
pub const DEFAULT_SIGMA_BUDGET: usize = 200_000;

/// Signature from a nested sequence of principal minors
/// `1 = Δ0, Δ1, ..., Δr` (r = rank) with `Δr ≠ 0` and no two consecutive
/// singular minors: `σ = Σ sgn(Δ(i-1) Δ(i))`. The nesting order is
/// searched depth first.
pub fn signature_sigma_series(a: &IntMatrix) -> Result<i64> {
    signature_sigma_series_with(a, DEFAULT_SIGMA_BUDGET)
}

pub fn signature_sigma_series_with(a: &IntMatrix, budget: usize) -> Result<i64> {
    let r = rank(a);
    let n = a.len();
    let mut nodes = 0usize;
    let mut chosen: Vec<usize> = Vec::new();
    let mut dets: Vec<BigInt> = vec![BigInt::one()];
    fn sgn(x: &BigInt) -> i64 {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    }
    fn dfs(
        a: &IntMatrix,
        n: usize,
        r: usize,
        chosen: &mut Vec<usize>,
        dets: &mut Vec<BigInt>,
        nodes: &mut usize,
        budget: usize,
    ) -> Option<Option<i64>> {
        if chosen.len() == r {
            if dets[r].is_zero() {
                return Some(None);
            }
            let s = (1..=r).map(|i| sgn(&dets[i - 1]) * sgn(&dets[i])).sum();
            return Some(Some(s));
        }
        for next in 0..n {
            if chosen.contains(&next) {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            chosen.push(next);
            let d = det_bigint(a, chosen);
            let i = chosen.len();
            let ok = !(d.is_zero() && dets[i - 1].is_zero());
            if ok {
                dets.push(d);
                match dfs(a, n, r, chosen, dets, nodes, budget) {
                    None => return None,
                    Some(Some(s)) => return Some(Some(s)),
                    Some(None) => {}
                }
                dets.pop();
            }
            chosen.pop();
        }
        Some(None)
    }
    match dfs(a, n, r, &mut chosen, &mut dets, &mut nodes, budget) {
        Some(Some(s)) => Ok(s),
        _ => Err(Error::NoSigmaSeries),
    }
}

/// Signature of the link, summed over split pieces.
pub fn signature(d: &LinkDiagram) -> Result<i64> {
    let mut total = 0;
    for piece in d.split_pieces() {
        if piece.crossing_count() == 0 {
            continue;
        }
        let m = seifert_matrix(&piece)?.matrix;
        total += signature_diag(&symmetrize(&m));
    }
    Ok(total)
}

/// Genus from nullification data, `(n_d - ν + 1) / 2`; `integral` is false
/// when the formula yields a half-integer, which marks invalid input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Genus {
    pub numer: i64,
    pub denom: i64,
    pub integral: bool,
}

pub fn genus_alternating(n_d: i64, nu: i64) -> Genus {
    let r = Ratio::new(n_d - nu + 1, 2);
    Genus {
        numer: *r.numer(),
        denom: *r.denom(),
        integral: r.is_integer(),
    }
}

/// Conway polynomial `det(t^(-1/2) M - t^(1/2) Mᵀ)` of a Seifert matrix, as a
/// polynomial in `t^(1/2)` (doubled exponents).
pub fn conway_from_seifert(m: &IntMatrix) -> LaurentPoly1 {
    let n = m.len();
    let mut a: Vec<Vec<LaurentPoly1>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| LaurentPoly1::from_terms([(-1i64, m[i][j]), (1, -m[j][i])]))
                .collect()
        })
        .collect();
    if n == 0 {
        return LaurentPoly1::one();
    }
    let mut sign = 1i64;
    let mut prev = LaurentPoly1::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return LaurentPoly1::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = divide_exact(&num, &prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    &a[n - 1][n - 1] * &LaurentPoly1::monomial(0, sign)
}

/// Substitute `z = t^(1/2) - t^(-1/2)` into a polynomial in `z` stored with
/// doubled exponents.
pub fn conway_in_t(conway_z: &LaurentPoly1) -> LaurentPoly1 {
    let z = LaurentPoly1::from_terms([(1i64, 1i64), (-1, -1)]);
    let mut acc = LaurentPoly1::zero();
    for (e, c) in conway_z.terms() {
        assert!(
            e >= 0 && e % 2 == 0,
            "Conway polynomial has non-negative integer powers"
        );
        acc = &acc + &(&z.pow((e / 2) as u32) * &LaurentPoly1::monomial(0, c.clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::{braid_closure, torus_diagram};
    use crate::diagram::codes::parse_pd;

    #[test]
    fn signature_examples() {
        assert_eq!(signature_diag(&vec![vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(signature_diag(&vec![vec![2, 0], vec![0, -3]]), 0);
        assert_eq!(signature_diag(&vec![vec![-2, 1], vec![1, -2]]), -2);
        assert_eq!(signature_diag(&vec![vec![0, 1], vec![1, 0]]), 0);
        assert_eq!(signature_diag(&vec![]), 0);
    }

    #[test]
    fn sigma_series_examples() {
        let id3 = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(signature_sigma_series(&id3).unwrap(), 3);
        assert_eq!(
            signature_sigma_series(&vec![vec![-2, 1], vec![1, -2]]).unwrap(),
            -2
        );
        assert_eq!(
            signature_sigma_series(&vec![vec![0, 1], vec![1, 0]]).unwrap(),
            0
        );
        // needs the second index first
        assert_eq!(
            signature_sigma_series(&vec![vec![0, 0], vec![0, 1]]).unwrap(),
            1
        );
    }

    #[test]
    fn right_trefoil_matrix() {
        let d = braid_closure(2, &[1, 1, 1]).unwrap();
        let s = seifert_matrix(&d).unwrap();
        assert_eq!(s.betti, 2);
        assert_eq!(s.genus, 1);
        let sym = symmetrize(&s.matrix);
        assert_eq!(sym[0][0], -2);
        assert_eq!(sym[1][1], -2);
        assert_eq!(sym[0][1].abs(), 1);
        assert_eq!(signature(&d).unwrap(), -2);
    }

    #[test]
    fn hopf_matrices() {
        let pos = torus_diagram(2, 2).unwrap();
        assert_eq!(seifert_matrix(&pos).unwrap().matrix, vec![vec![-1]]);
        let neg = pos.reverse_component(1).unwrap();
        assert_eq!(seifert_matrix(&neg).unwrap().matrix.len(), 1);
        assert_eq!(signature(&neg).unwrap(), 1);
    }

    #[test]
    fn unknot_and_split() {
        assert!(seifert_matrix(&LinkDiagram::unknot())
            .unwrap()
            .matrix
            .is_empty());
        assert_eq!(
            seifert_matrix(&LinkDiagram::unlink(2)),
            Err(Error::SplitDiagram)
        );
        assert_eq!(signature(&LinkDiagram::unlink(2)).unwrap(), 0);
        let t = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", None).unwrap();
        assert_eq!(signature(&t.disjoint_union(&t)).unwrap(), 4);
    }

    #[test]
    fn genus_formula() {
        assert_eq!(
            genus_alternating(6, 1),
            Genus {
                numer: 3,
                denom: 1,
                integral: true
            }
        );
        assert!(!genus_alternating(2, 2).integral);
    }
}
