//! Reidemeister simplification and alternating reduction.

use std::collections::HashSet;

use super::canon::canonical_key;
use super::{canonical_crossing, Crossing, LinkDiagram, Sign};
use crate::error::{Error, Result};

/// Default Reidemeister III lookahead depth for `simplify`.
pub const DEFAULT_R3_DEPTH: usize = 2;

impl LinkDiagram {
    /// Remove one Reidemeister I kink, if any.
    pub fn reduce_r1(&self) -> Option<LinkDiagram> {
        for (ci, c) in self.crossings.iter().enumerate() {
            for i in 0..4 {
                if c.slots[i] == c.slots[(i + 1) % 4] {
                    let l = c.slots[i];
                    let a = c.slots[(i + 2) % 4];
                    let b = c.slots[(i + 3) % 4];
                    return Some(self.remove_with_joins(&[ci], &[(a, l), (l, b)]));
                }
            }
        }
        None
    }

    /// Remove one Reidemeister II bigon, if any.
    pub fn reduce_r2(&self) -> Option<LinkDiagram> {
        let partner = self.partner_table();
        for face in self.faces() {
            if face.len() != 2 || face[0].0 == face[1].0 {
                continue;
            }
            let removable = face.iter().all(|&(ci, s)| {
                let (_, t) = partner[&(ci, s)];
                Crossing::is_over(s) == Crossing::is_over(t)
            });
            if !removable {
                continue;
            }
            let mut joins = Vec::new();
            for &(ci, s) in &face {
                let (cj, t) = partner[&(ci, s)];
                let e = self.crossings[ci].slots[s];
                let x = self.crossings[ci].slots[(s + 2) % 4];
                let y = self.crossings[cj].slots[(t + 2) % 4];
                joins.push((x, e));
                joins.push((e, y));
            }
            return Some(self.remove_with_joins(&[face[0].0, face[1].0], &joins));
        }
        None
    }

    /// All diagrams reachable by one Reidemeister III move.
    pub fn r3_moves(&self) -> Vec<LinkDiagram> {
        let partner = self.partner_table();
        let mut out = Vec::new();
        for face in self.faces() {
            if face.len() != 3 {
                continue;
            }
            let cs: HashSet<usize> = face.iter().map(|d| d.0).collect();
            if cs.len() != 3 {
                continue;
            }
            // each internal edge: (label, end at one crossing, end at the other)
            let strands: Vec<((usize, usize), (usize, usize))> =
                face.iter().map(|&d| (d, partner[&d])).collect();
            let some_over_twice = strands
                .iter()
                .any(|&((_, s), (_, t))| Crossing::is_over(s) && Crossing::is_over(t));
            if !some_over_twice {
                continue;
            }
            let mut labels = HashSet::new();
            for &((ci, s), (cj, t)) in &strands {
                labels.insert(self.crossings[ci].slots[s]);
                labels.insert(self.crossings[ci].slots[(s + 2) % 4]);
                labels.insert(self.crossings[cj].slots[(t + 2) % 4]);
            }
            if labels.len() != 9 {
                continue;
            }
            let mut next = self.crossings.clone();
            for &((ci, s), (cj, t)) in &strands {
                let e = self.crossings[ci].slots[s];
                let ext_x = self.crossings[ci].slots[(s + 2) % 4];
                let ext_y = self.crossings[cj].slots[(t + 2) % 4];
                next[ci].slots[(s + 2) % 4] = e;
                next[ci].slots[s] = ext_y;
                next[cj].slots[(t + 2) % 4] = e;
                next[cj].slots[t] = ext_x;
            }
            out.push(LinkDiagram::new_unchecked(next, self.free_loops));
        }
        out
    }

    /// Diagrams obtained by pushing one edge over another edge of a shared
    /// face, with the ids of the two new crossings. The pushed edge only
    /// gains over-crossings, so every result is isotopic to `self`.
    pub fn r2_creations(&self) -> Vec<(LinkDiagram, [u32; 2])> {
        let ends = self.edge_ends();
        let mut pairs = std::collections::BTreeSet::new();
        for face in self.faces() {
            let labels: Vec<u32> = face
                .iter()
                .map(|&(c, s)| self.crossings[c].slots[s])
                .collect();
            for (i, &a) in labels.iter().enumerate() {
                for &b in &labels[i + 1..] {
                    if a != b {
                        pairs.insert((a.min(b), a.max(b)));
                    }
                }
            }
        }
        let top = ends.keys().copied().max().unwrap_or(0);
        let next_id = self.crossings.iter().map(|c| c.id).max().unwrap_or(0) + 1;
        let (x, y) = (next_id, next_id + 1);
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for &(a, b) in &pairs {
            for (o, u) in [(a, b), (b, a)] {
                let (o2, o3, u2, u3) = (top + 1, top + 2, top + 3, top + 4);
                for under_first_at_x in [true, false] {
                    for x_positive in [true, false] {
                        let (ux, uy) = if under_first_at_x {
                            ((u, u2), (u2, u3))
                        } else {
                            ((u2, u3), (u, u2))
                        };
                        let make = |id,
                                    (ui, uo): (u32, u32),
                                    (oi, oo): (u32, u32),
                                    positive: bool| Crossing {
                            id,
                            slots: if positive {
                                [ui, oo, uo, oi]
                            } else {
                                [ui, oi, uo, oo]
                            },
                            sign: if positive {
                                Sign::Positive
                            } else {
                                Sign::Negative
                            },
                        };
                        let mut crossings = self.crossings.clone();
                        let (oh, uh) = (ends[&o].1, ends[&u].1);
                        crossings[oh.0].slots[oh.1] = o3;
                        crossings[uh.0].slots[uh.1] = u3;
                        crossings.push(make(x, ux, (o, o2), x_positive));
                        crossings.push(make(y, uy, (o2, o3), !x_positive));
                        if let Ok(d) = LinkDiagram::new(crossings, self.free_loops) {
                            if seen.insert(canonical_key(&d)) {
                                out.push((d, [x, y]));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn greedy_r12(&self) -> LinkDiagram {
        let mut d = self.clone();
        loop {
            if let Some(n) = d.reduce_r1() {
                d = n;
            } else if let Some(n) = d.reduce_r2() {
                d = n;
            } else {
                return d;
            }
        }
    }

    /// Greedy Reidemeister I/II reductions, with Reidemeister III moves
    /// explored up to `r3_depth` deep whenever they unlock a further
    /// reduction. The crossing number never increases.
    pub fn simplify(&self, r3_depth: usize) -> LinkDiagram {
        let mut d = self.greedy_r12();
        'outer: loop {
            if d.crossings.is_empty() || r3_depth == 0 {
                return d;
            }
            let n = d.crossing_count();
            let mut seen = HashSet::new();
            seen.insert(canonical_key(&d));
            let mut frontier = vec![d.clone()];
            for _ in 0..r3_depth {
                let mut next = Vec::new();
                for cur in &frontier {
                    for m in cur.r3_moves() {
                        if !seen.insert(canonical_key(&m)) {
                            continue;
                        }
                        let reduced = m.greedy_r12();
                        if reduced.crossing_count() < n {
                            d = reduced;
                            continue 'outer;
                        }
                        next.push(m);
                    }
                }
                frontier = next;
            }
            return d;
        }
    }

    /// Remove nugatory crossings of an alternating diagram by turning over
    /// the smaller side, one crossing at a time. Each step lowers both the
    /// crossing number and the Seifert circle count by one.
    pub fn reduce_alternating(&self) -> Result<LinkDiagram> {
        if !self.is_alternating() {
            return Err(Error::NotAlternating);
        }
        let mut d = self.clone();
        while let Some(&id) = d.nugatory_crossings().first() {
            d = d.untwist_nugatory(id)?;
        }
        Ok(d)
    }

    fn untwist_nugatory(&self, id: u32) -> Result<LinkDiagram> {
        let ci = self.index_of(id)?;
        let c = self.crossings[ci].clone();
        // sides: pieces of the graph once crossing ci is cut out
        let ends = self.edge_ends();
        let n = self.crossings.len();
        let mut uf = crate::util::DenseUnion::new(n);
        for (_, ((a, _), (b, _))) in ends.iter() {
            if *a != ci && *b != ci {
                uf.union(*a, *b);
            }
        }
        let partner = self.partner_table();
        let side_of = |s: usize| -> Option<usize> {
            let (cj, _) = partner[&(ci, s)];
            (cj != ci).then_some(cj)
        };
        let mut flip: Vec<usize> = Vec::new();
        let sides: Vec<Option<usize>> = (0..4).map(side_of).collect();
        let roots: Vec<Option<usize>> = sides.iter().map(|o| o.map(|j| uf.find(j))).collect();
        let distinct: Vec<usize> = {
            let mut r: Vec<usize> = roots.iter().flatten().copied().collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        if distinct.len() == 2 {
            let size = |r: usize, uf: &mut crate::util::DenseUnion| {
                (0..n).filter(|&j| j != ci && uf.find(j) == r).count()
            };
            let (r0, r1) = (distinct[0], distinct[1]);
            let b = if size(r0, &mut uf) <= size(r1, &mut uf) {
                r0
            } else {
                r1
            };
            flip = (0..n).filter(|&j| j != ci && uf.find(j) == b).collect();
        }
        let mut crossings = self.crossings.clone();
        for &j in &flip {
            let x = &self.crossings[j];
            let ports = [x.slots[0], x.slots[3], x.slots[2], x.slots[1]];
            let mut incoming = [false; 4];
            for (p, &s) in [0usize, 3, 2, 1].iter().enumerate() {
                incoming[p] = x.is_incoming(s);
            }
            crossings[j] = canonical_crossing(x.id, ports, false, incoming)?.0;
        }
        let flipped = LinkDiagram::new_unchecked(crossings, self.free_loops);
        let out =
            flipped.remove_with_joins(&[ci], &[(c.slots[0], c.slots[2]), (c.slots[1], c.slots[3])]);
        debug_assert!(out.validate().is_ok());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::codes::parse_pd;
    use super::*;

    fn trefoil() -> LinkDiagram {
        parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", None).unwrap()
    }

    #[test]
    fn r2_creations_are_isotopies() {
        let hopf_plus = crate::diagram::build::braid_closure(2, &[1, 1, 1, -1]).unwrap();
        for d in [trefoil(), hopf_plus, LinkDiagram::unknot()] {
            let j = crate::polynomials::jones(&d);
            let made = d.r2_creations();
            assert!(d.crossing_count() == 0 || !made.is_empty());
            for (m, ids) in made {
                assert_eq!(m.crossing_count(), d.crossing_count() + 2);
                assert!(ids.iter().all(|&i| m.crossing(i).is_some()));
                assert_eq!(crate::polynomials::jones(&m), j);
                assert_eq!(
                    m.simplify(0).crossing_count(),
                    d.simplify(0).crossing_count()
                );
            }
        }
    }

    #[test]
    fn two_kinks_vanish() {
        let d = parse_pd("X[1,2,2,3] X[3,4,4,1]", None).unwrap();
        let s = d.simplify(DEFAULT_R3_DEPTH);
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.component_count(), 1);
    }

    #[test]
    fn hopf_from_trefoil_stays() {
        let h = trefoil().smooth(1).unwrap();
        let s = h.simplify(DEFAULT_R3_DEPTH);
        assert_eq!(s.crossing_count(), 2);
        assert_eq!(s.component_count(), 2);
    }

    #[test]
    fn zero_crossings_unchanged() {
        let d = LinkDiagram::unlink(2);
        assert_eq!(d.simplify(2), d);
    }

    #[test]
    fn r2_pair_removed() {
        // unknot drawn with one clasp: a bigon with one strand on top
        let d = crate::diagram::build::braid_closure(2, &[1, -1]).unwrap();
        assert_eq!(d.crossing_count(), 2);
        let s = d.simplify(0);
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.component_count(), 2);
    }

    #[test]
    fn r3_moves_are_valid_diagrams() {
        let d = crate::diagram::build::braid_closure(3, &[1, 2, 1, -2, -1, -2]).unwrap();
        let moves = d.r3_moves();
        assert!(!moves.is_empty());
        for m in &moves {
            m.validate().unwrap();
            assert_eq!(m.writhe(), d.writhe());
        }
        assert!(d.simplify(2).crossing_count() < d.crossing_count());
    }

    #[test]
    fn kink_reduces_to_circle() {
        let d = parse_pd("X[1,1,2,2]", None).unwrap();
        let r = d.reduce_alternating().unwrap();
        assert_eq!(r.crossing_count(), 0);
        assert_eq!(r.component_count(), 1);
    }

    #[test]
    fn reduced_is_fixpoint() {
        assert_eq!(trefoil().reduce_alternating().unwrap(), trefoil());
    }
}
