//! Oriented link diagrams in planar-diagram (PD) form.
//!
//! A crossing stores the labels of its four incident edges in
//! counterclockwise order, starting from the incoming under-strand:
//!
//! ```text
//!        slot 2 (under out)
//!             |
//!  slot 3 ----+---- slot 1        positive: over strand runs 3 -> 1
//!             |                   negative: over strand runs 1 -> 3
//!        slot 0 (under in)
//! ```
//!
//! A crossing is positive (right-handed) when the over-strand runs from
//! slot 3 to slot 1. Every label occurs exactly twice: once where its edge
//! leaves a crossing and once where it enters one. Components without
//! crossings are carried as a count of free loops.

pub mod build;
pub mod canon;
pub mod codes;
pub mod moves;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::{DenseUnion, LabelUnion};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub id: u32,
    pub slots: [u32; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn over_in(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    pub fn over_out(&self) -> usize {
        match self.sign {
            Sign::Positive => 1,
            Sign::Negative => 3,
        }
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in()
    }

    /// Odd slots carry the over-strand.
    pub fn is_over(slot: usize) -> bool {
        slot % 2 == 1
    }

    /// (incoming, outgoing) slot pairs joined by the oriented smoothing.
    pub fn smoothing_pairs(&self) -> [(usize, usize); 2] {
        match self.sign {
            Sign::Positive => [(0, 1), (3, 2)],
            Sign::Negative => [(0, 3), (1, 2)],
        }
    }

    pub fn slot_of(&self, label: u32) -> impl Iterator<Item = usize> + '_ {
        (0..4).filter(move |&s| self.slots[s] == label)
    }
}

/// Rebuild a crossing from its counterclockwise edge labels, which pair is
/// the under-strand, and the incoming flag of each position.
pub(crate) fn canonical_crossing(
    id: u32,
    ports: [u32; 4],
    under_even: bool,
    incoming: [bool; 4],
) -> Result<(Crossing, usize)> {
    let (u0, u1) = if under_even { (0, 2) } else { (1, 3) };
    let u_in = match (incoming[u0], incoming[u1]) {
        (true, false) => u0,
        (false, true) => u1,
        _ => {
            return Err(Error::Orientation(format!(
                "under-strand at crossing {id} is not traversed in one direction"
            )))
        }
    };
    let (o0, o1) = if under_even { (1, 3) } else { (0, 2) };
    if incoming[o0] == incoming[o1] {
        return Err(Error::Orientation(format!(
            "over-strand at crossing {id} is not traversed in one direction"
        )));
    }
    let slots = [
        ports[u_in],
        ports[(u_in + 1) % 4],
        ports[(u_in + 2) % 4],
        ports[(u_in + 3) % 4],
    ];
    let over_in_port = if incoming[o0] { o0 } else { o1 };
    let over_in_slot = (over_in_port + 4 - u_in) % 4;
    let sign = if over_in_slot == 3 {
        Sign::Positive
    } else {
        Sign::Negative
    };
    Ok((Crossing { id, slots, sign }, u_in))
}

/// Location of one end of an edge: crossing index and slot.
pub type Dart = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertDecomposition {
    pub count: usize,
    /// Circle index of every edge label.
    pub membership: BTreeMap<u32, usize>,
}

impl LinkDiagram {
    /// Validated constructor: labels paired, orientation coherent, planar.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self> {
        let d = Self {
            crossings,
            free_loops,
        };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn new_unchecked(crossings: Vec<Crossing>, free_loops: usize) -> Self {
        Self {
            crossings,
            free_loops,
        }
    }

    /// `k` disjoint circles.
    pub fn unlink(k: usize) -> Self {
        Self {
            crossings: Vec::new(),
            free_loops: k,
        }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn crossing(&self, id: u32) -> Option<&Crossing> {
        self.crossings.iter().find(|c| c.id == id)
    }

    pub fn index_of(&self, id: u32) -> Result<usize> {
        self.crossings
            .iter()
            .position(|c| c.id == id)
            .ok_or(Error::UnknownCrossing(id))
    }

    pub fn crossing_ids(&self) -> Vec<u32> {
        self.crossings.iter().map(|c| c.id).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let mut count: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for c in &self.crossings {
            for s in 0..4 {
                let e = count.entry(c.slots[s]).or_default();
                if c.is_incoming(s) {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
        }
        for (&label, &(inc, out)) in &count {
            match inc + out {
                1 => return Err(Error::UnpairedLabel(label)),
                2 => {}
                n => return Err(Error::LabelCount { label, count: n }),
            }
            if inc != 1 {
                return Err(Error::Orientation(format!(
                    "edge {label} is entered {inc} times"
                )));
            }
        }
        let mut ids: Vec<u32> = self.crossing_ids();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != self.crossings.len() {
            return Err(Error::Invalid("duplicate crossing ids".into()));
        }
        if !self.is_planar() {
            return Err(Error::NonPlanar);
        }
        Ok(())
    }

    /// For each label: (outgoing dart, incoming dart).
    pub fn edge_ends(&self) -> HashMap<u32, (Dart, Dart)> {
        let mut out: HashMap<u32, (Option<Dart>, Option<Dart>)> = HashMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                let e = out.entry(c.slots[s]).or_default();
                if c.is_incoming(s) {
                    e.1 = Some((ci, s));
                } else {
                    e.0 = Some((ci, s));
                }
            }
        }
        out.into_iter()
            .map(|(l, (o, i))| {
                (
                    l,
                    (o.expect("edge without tail"), i.expect("edge without head")),
                )
            })
            .collect()
    }

    /// The dart at the other end of the edge leaving `d`.
    pub(crate) fn partner_table(&self) -> HashMap<Dart, Dart> {
        let mut map = HashMap::new();
        for (_, (o, i)) in self.edge_ends() {
            map.insert(o, i);
            map.insert(i, o);
        }
        map
    }

    /// Components with at least one crossing, each as its edge labels in
    /// traversal order. Components are listed by their smallest label.
    pub fn crossing_components(&self) -> Vec<Vec<u32>> {
        let ends = self.edge_ends();
        let mut labels: Vec<u32> = ends.keys().copied().collect();
        labels.sort_unstable();
        let mut seen = std::collections::HashSet::new();
        let mut comps = Vec::new();
        for &start in &labels {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut label = start;
            loop {
                seen.insert(label);
                comp.push(label);
                let (ci, s) = ends[&label].1;
                label = self.crossings[ci].slots[(s + 2) % 4];
                if label == start {
                    break;
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.crossing_components().len() + self.free_loops
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Map label -> index into `crossing_components()`.
    pub fn component_of_labels(&self) -> HashMap<u32, usize> {
        let mut m = HashMap::new();
        for (i, comp) in self.crossing_components().iter().enumerate() {
            for &l in comp {
                m.insert(l, i);
            }
        }
        m
    }

    /// Faces as orbits of darts. The dart `(c, s)` stands for the corner
    /// between slots `s` and `s+1` of crossing `c`.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let partner = self.partner_table();
        let mut seen = std::collections::HashSet::new();
        let mut faces = Vec::new();
        for ci in 0..self.crossings.len() {
            for s in 0..4 {
                if seen.contains(&(ci, s)) {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = (ci, s);
                while seen.insert(d) {
                    face.push(d);
                    let (cj, t) = partner[&d];
                    d = (cj, (t + 3) % 4);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Connected pieces of the underlying 4-valent graph (crossing indices).
    pub fn connected_pieces(&self) -> Vec<Vec<usize>> {
        let n = self.crossings.len();
        let mut uf = DenseUnion::new(n);
        for (_, ((a, _), (b, _))) in self.edge_ends() {
            uf.union(a, b);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            groups.entry(uf.find(i)).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// True when the diagram, as drawn, falls into more than one piece.
    pub fn is_split_drawn(&self) -> bool {
        self.connected_pieces().len() + self.free_loops > 1
    }

    /// Euler characteristic check on each connected piece.
    pub fn is_planar(&self) -> bool {
        if self.crossings.is_empty() {
            return true;
        }
        let pieces = self.connected_pieces().len() as i64;
        let v = self.crossings.len() as i64;
        let e = 2 * v;
        let f = self.faces().len() as i64;
        v - e + f == 2 * pieces
    }

    /// Sub-diagram consisting of the given crossing indices, which must be a
    /// union of connected pieces.
    pub(crate) fn sub_diagram(&self, indices: &[usize], free_loops: usize) -> LinkDiagram {
        let crossings = indices.iter().map(|&i| self.crossings[i].clone()).collect();
        LinkDiagram::new_unchecked(crossings, free_loops)
    }

    /// Split the diagram into its drawn pieces; each free loop is its own
    /// piece.
    pub fn split_pieces(&self) -> Vec<LinkDiagram> {
        let mut out: Vec<LinkDiagram> = self
            .connected_pieces()
            .iter()
            .map(|p| self.sub_diagram(p, 0))
            .collect();
        for _ in 0..self.free_loops {
            out.push(LinkDiagram::unknot());
        }
        out
    }

    /// Remove the crossings at `remove` (indices) and glue the given label
    /// pairs. Closed classes with no remaining ends become free loops.
    pub(crate) fn remove_with_joins(&self, remove: &[usize], joins: &[(u32, u32)]) -> LinkDiagram {
        let mut uf = LabelUnion::default();
        let mut touched = Vec::new();
        for &i in remove {
            touched.extend_from_slice(&self.crossings[i].slots);
        }
        for &(a, b) in joins {
            uf.union(a, b);
        }
        let kept: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| !remove.contains(i))
            .map(|(_, c)| {
                let mut c = c.clone();
                for s in 0..4 {
                    c.slots[s] = uf.find(c.slots[s]);
                }
                c
            })
            .collect();
        let mut remaining = std::collections::HashSet::new();
        for c in &kept {
            remaining.extend(c.slots.iter().copied());
        }
        let mut closed = std::collections::HashSet::new();
        for l in touched {
            let r = uf.find(l);
            if !remaining.contains(&r) {
                closed.insert(r);
            }
        }
        LinkDiagram::new_unchecked(kept, self.free_loops + closed.len())
    }

    /// Oriented smoothing of one crossing.
    pub fn smooth(&self, id: u32) -> Result<LinkDiagram> {
        let i = self.index_of(id)?;
        Ok(self.smooth_index(i))
    }

    pub(crate) fn smooth_index(&self, i: usize) -> LinkDiagram {
        let c = &self.crossings[i];
        let joins: Vec<(u32, u32)> = c
            .smoothing_pairs()
            .iter()
            .map(|&(a, b)| (c.slots[a], c.slots[b]))
            .collect();
        self.remove_with_joins(&[i], &joins)
    }

    /// Smooth a set of crossings; within one diagram the order is irrelevant.
    pub fn smooth_many(&self, ids: &[u32]) -> Result<LinkDiagram> {
        let mut idx = Vec::with_capacity(ids.len());
        let mut joins = Vec::new();
        for &id in ids {
            let i = self.index_of(id)?;
            let c = &self.crossings[i];
            for (a, b) in c.smoothing_pairs() {
                joins.push((c.slots[a], c.slots[b]));
            }
            idx.push(i);
        }
        Ok(self.remove_with_joins(&idx, &joins))
    }

    /// Crossing change at one crossing.
    pub fn switch(&self, id: u32) -> Result<LinkDiagram> {
        let i = self.index_of(id)?;
        let mut out = self.clone();
        let c = &mut out.crossings[i];
        let s = c.slots;
        // the old over-strand's incoming slot becomes the new slot 0
        c.slots = match c.sign {
            Sign::Positive => [s[3], s[0], s[1], s[2]],
            Sign::Negative => [s[1], s[2], s[3], s[0]],
        };
        c.sign = c.sign.flip();
        Ok(out)
    }

    /// Mirror image (reflection of the plane).
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                id: c.id,
                slots: [c.slots[0], c.slots[3], c.slots[2], c.slots[1]],
                sign: c.sign.flip(),
            })
            .collect();
        LinkDiagram::new_unchecked(crossings, self.free_loops)
    }

    /// Oriented Seifert circles: smooth every crossing.
    pub fn seifert_circles(&self) -> SeifertDecomposition {
        let mut uf = LabelUnion::default();
        for c in &self.crossings {
            for (a, b) in c.smoothing_pairs() {
                uf.union(c.slots[a], c.slots[b]);
            }
        }
        let mut roots: BTreeMap<u32, usize> = BTreeMap::new();
        let mut membership = BTreeMap::new();
        let mut labels: Vec<u32> = self.crossings.iter().flat_map(|c| c.slots).collect();
        labels.sort_unstable();
        labels.dedup();
        for l in labels {
            let r = uf.find(l);
            let next = roots.len();
            let idx = *roots.entry(r).or_insert(next);
            membership.insert(l, idx);
        }
        SeifertDecomposition {
            count: roots.len() + self.free_loops,
            membership,
        }
    }

    /// Every connected piece has a tree as Seifert graph, so the Seifert
    /// surface is a union of disks and the diagram is an unlink.
    pub fn seifert_graph_is_forest(&self) -> bool {
        let pieces = self.connected_pieces().len() + self.free_loops;
        self.crossings.len() + pieces == self.seifert_circles().count
    }

    /// Twice the linking number of every pair of components is zero.
    pub fn linking_numbers_vanish(&self) -> bool {
        let comp = self.component_of_labels();
        let mut sums: HashMap<(usize, usize), i32> = HashMap::new();
        for c in &self.crossings {
            let (a, b) = (comp[&c.slots[0]], comp[&c.slots[1]]);
            if a != b {
                *sums.entry((a.min(b), a.max(b))).or_default() += c.sign.value();
            }
        }
        sums.values().all(|&v| v == 0)
    }

    /// Each Seifert circle that passes through crossings, as the sequence of
    /// `(crossing index, incoming slot)` visits in traversal order.
    pub fn seifert_circle_walks(&self) -> Vec<Vec<Dart>> {
        let ends = self.edge_ends();
        let mut labels: Vec<u32> = ends.keys().copied().collect();
        labels.sort_unstable();
        let mut seen = std::collections::HashSet::new();
        let mut walks = Vec::new();
        for &start in &labels {
            if seen.contains(&start) {
                continue;
            }
            let mut walk = Vec::new();
            let mut label = start;
            loop {
                seen.insert(label);
                let (ci, s) = ends[&label].1;
                walk.push((ci, s));
                let c = &self.crossings[ci];
                let out = c
                    .smoothing_pairs()
                    .iter()
                    .find(|p| p.0 == s)
                    .map(|p| p.1)
                    .expect("incoming slot has a smoothing partner");
                label = c.slots[out];
                if label == start {
                    break;
                }
            }
            walks.push(walk);
        }
        walks
    }

    /// Every edge runs from an over-pass to an under-pass or vice versa.
    pub fn is_alternating(&self) -> bool {
        self.edge_ends()
            .values()
            .all(|&((_, s), (_, t))| Crossing::is_over(s) != Crossing::is_over(t))
    }

    /// Crossings met twice by a single face; removing one of these
    /// disconnects the diagram.
    pub fn nugatory_crossings(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for face in self.faces() {
            let mut seen: HashMap<usize, usize> = HashMap::new();
            for &(ci, _) in &face {
                *seen.entry(ci).or_default() += 1;
            }
            for (ci, n) in seen {
                if n > 1 {
                    out.push(self.crossings[ci].id);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.nugatory_crossings().is_empty()
    }

    /// Flip the orientation of component `i` (1-based, in the order of
    /// `crossing_components()` followed by the free loops).
    pub fn reverse_component(&self, i: usize) -> Result<LinkDiagram> {
        let comps = self.crossing_components();
        let total = comps.len() + self.free_loops;
        if i == 0 || i > total {
            return Err(Error::ComponentOutOfRange {
                index: i,
                count: total,
            });
        }
        if i > comps.len() {
            return Ok(self.clone());
        }
        let labels: std::collections::HashSet<u32> = comps[i - 1].iter().copied().collect();
        let mut crossings = Vec::with_capacity(self.crossings.len());
        for c in &self.crossings {
            let mut incoming = [false; 4];
            for s in 0..4 {
                incoming[s] = c.is_incoming(s) != labels.contains(&c.slots[s]);
            }
            crossings.push(canonical_crossing(c.id, c.slots, true, incoming)?.0);
        }
        Ok(LinkDiagram::new_unchecked(crossings, self.free_loops))
    }

    /// Reverse every component at once.
    pub fn reverse_all(&self) -> LinkDiagram {
        let mut d = self.clone();
        for i in 1..=self.crossing_components().len() {
            d = d.reverse_component(i).expect("index in range");
        }
        d
    }

    /// Relabel edges `1..=2n` along components, each starting at the edge
    /// entering its first crossing; crossings keep their ids.
    pub fn relabeled(&self) -> LinkDiagram {
        let ends = self.edge_ends();
        let mut map = HashMap::new();
        let mut next = 1u32;
        for mut comp in self.crossing_components() {
            let start = (0..comp.len())
                .min_by_key(|&i| ends[&comp[i]].1 .0)
                .unwrap_or(0);
            comp.rotate_left(start);
            for l in comp {
                map.insert(l, next);
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                id: c.id,
                slots: c.slots.map(|l| map[&l]),
                sign: c.sign,
            })
            .collect();
        LinkDiagram::new_unchecked(crossings, self.free_loops)
    }

    /// Renumber crossing ids `1..=n` in current order.
    pub fn renumbered(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(i, c)| Crossing {
                id: i as u32 + 1,
                ..c.clone()
            })
            .collect();
        LinkDiagram::new_unchecked(crossings, self.free_loops)
    }

    /// Disjoint union.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let max_label = self
            .crossings
            .iter()
            .flat_map(|c| c.slots)
            .max()
            .unwrap_or(0);
        let max_id = self.crossings.iter().map(|c| c.id).max().unwrap_or(0);
        let mut crossings = self.crossings.clone();
        for c in &other.crossings {
            crossings.push(Crossing {
                id: c.id + max_id,
                slots: c.slots.map(|l| l + max_label),
                sign: c.sign,
            });
        }
        LinkDiagram::new_unchecked(crossings, self.free_loops + other.free_loops)
    }
}

#[cfg(test)]
mod tests {
    use super::codes::parse_pd;
    use super::*;

    fn trefoil() -> LinkDiagram {
        parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", None).unwrap()
    }

    #[test]
    fn trefoil_structure() {
        let d = trefoil();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), -3);
        assert_eq!(d.seifert_circles().count, 2);
        assert!(d.is_alternating());
        assert!(d.is_reduced());
        assert_eq!(d.faces().len(), 5);
    }

    #[test]
    fn smoothing_trefoil_gives_two_components() {
        let d = trefoil();
        for id in d.crossing_ids() {
            let s = d.smooth(id).unwrap();
            s.validate().unwrap();
            assert_eq!(s.crossing_count(), 2);
            assert_eq!(s.component_count(), 2);
            assert_eq!(s.seifert_circles().count, 2);
        }
    }

    #[test]
    fn kink_smooths_to_two_circles() {
        let d = parse_pd("X[1,1,2,2]", None).unwrap();
        assert_eq!(d.component_count(), 1);
        assert!(!d.is_reduced());
        let s = d.smooth(1).unwrap();
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.component_count(), 2);
    }

    #[test]
    fn unknown_crossing_is_rejected() {
        assert_eq!(trefoil().smooth(9), Err(Error::UnknownCrossing(9)));
    }

    #[test]
    fn switch_twice_is_identity() {
        let d = trefoil();
        let back = d.switch(2).unwrap().switch(2).unwrap();
        assert_eq!(back, d);
        let once = d.switch(2).unwrap();
        once.validate().unwrap();
        assert_eq!(once.writhe(), -1);
    }

    #[test]
    fn reverse_is_involution() {
        let d = trefoil();
        let r = d.reverse_component(1).unwrap();
        r.validate().unwrap();
        // reversing a knot keeps every crossing sign
        assert_eq!(r.writhe(), d.writhe());
        assert_eq!(r.reverse_component(1).unwrap(), d);
        assert!(d.reverse_component(2).is_err());
    }

    #[test]
    fn mirror_flips_writhe() {
        let d = trefoil();
        let m = d.mirror();
        m.validate().unwrap();
        assert_eq!(m.writhe(), 3);
    }
}
