//! Unoriented diagram construction: raw crossings, orientation, tangle and
//! braid builders.

use std::collections::{HashMap, HashSet};

use super::{canonical_crossing, LinkDiagram};
use crate::error::{Error, Result};
use crate::util::LabelUnion;

/// A crossing before orientation: edge labels counterclockwise and which
/// opposite pair is the under-strand.
#[derive(Clone, Debug)]
pub(crate) struct RawCrossing {
    pub id: u32,
    pub ports: [u32; 4],
    pub under_even: bool,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct RawDiagram {
    pub crossings: Vec<RawCrossing>,
    pub free_loops: usize,
}

impl RawDiagram {
    fn occurrences(&self) -> Result<HashMap<u32, Vec<(usize, usize)>>> {
        let mut occ: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for p in 0..4 {
                occ.entry(c.ports[p]).or_default().push((ci, p));
            }
        }
        let mut labels: Vec<_> = occ.iter().map(|(l, v)| (*l, v.len())).collect();
        labels.sort_unstable();
        for (label, n) in labels {
            match n {
                2 => {}
                1 => return Err(Error::UnpairedLabel(label)),
                count => return Err(Error::LabelCount { label, count }),
            }
        }
        Ok(occ)
    }

    /// Orient every strand. `seeds` lists darts `(crossing, port)` that must be
    /// incoming; a component without seeds is walked in an arbitrary
    /// direction and `fallback` (given the edge labels met along the walk)
    /// decides whether to keep it. Returns the diagram and the incoming flag
    /// of every raw port.
    pub fn orient(
        &self,
        seeds: &[(usize, usize)],
        fallback: &dyn Fn(&[u32]) -> bool,
    ) -> Result<(LinkDiagram, Vec<[bool; 4]>)> {
        let occ = self.occurrences()?;
        let n = self.crossings.len();
        let mut visited = vec![[false; 4]; n];
        let mut incoming = vec![[false; 4]; n];
        let seed_set: HashSet<(usize, usize)> = seeds.iter().copied().collect();
        for ci in 0..n {
            for p in 0..4 {
                if visited[ci][p] {
                    continue;
                }
                // walk the component entering at (ci, p)
                let mut entering = Vec::new();
                let mut labels = Vec::new();
                let (mut cj, mut q) = (ci, p);
                loop {
                    entering.push((cj, q));
                    labels.push(self.crossings[cj].ports[q]);
                    visited[cj][q] = true;
                    let out = (q + 2) % 4;
                    visited[cj][out] = true;
                    let label = self.crossings[cj].ports[out];
                    let next = occ[&label]
                        .iter()
                        .copied()
                        .find(|&d| d != (cj, out))
                        .expect("paired label");
                    (cj, q) = next;
                    if (cj, q) == (ci, p) {
                        break;
                    }
                }
                let mut forward = 0usize;
                let mut backward = 0usize;
                for &(a, b) in &entering {
                    if seed_set.contains(&(a, b)) {
                        forward += 1;
                    }
                    if seed_set.contains(&(a, (b + 2) % 4)) {
                        backward += 1;
                    }
                }
                let keep = match (forward, backward) {
                    (0, 0) => fallback(&labels),
                    (_, 0) => true,
                    (0, _) => false,
                    _ => {
                        return Err(Error::Orientation(format!(
                            "no coherent direction for the strand through edge {}",
                            labels[0]
                        )))
                    }
                };
                for &(a, b) in &entering {
                    let port = if keep { b } else { (b + 2) % 4 };
                    incoming[a][port] = true;
                }
            }
        }
        let mut crossings = Vec::with_capacity(n);
        for (ci, c) in self.crossings.iter().enumerate() {
            crossings.push(canonical_crossing(c.id, c.ports, c.under_even, incoming[ci])?.0);
        }
        let d = LinkDiagram::new(crossings, self.free_loops)?;
        Ok((d, incoming))
    }
}

/// Port positions of a tangle crossing, counterclockwise.
pub const NE: usize = 0;
pub const NW: usize = 1;
pub const SW: usize = 2;
pub const SE: usize = 3;

/// Crossing handedness inside a tangle picture: `A` has the SW-NE strand
/// over, `B` the NW-SE strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Handed {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    Horizontal,
    Vertical,
}

/// Where a built crossing came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingTag {
    pub group: usize,
    pub twist: Twist,
}

/// Four boundary endpoints of a tangle, as builder labels.
#[derive(Clone, Copy, Debug)]
pub struct Tangle {
    pub nw: u32,
    pub ne: u32,
    pub sw: u32,
    pub se: u32,
}

/// Incremental builder for diagrams assembled from twists, tangle sums and
/// closures. Labels name endpoints; gluing two endpoints merges their edges.
#[derive(Default)]
pub(crate) struct PlanarBuilder {
    next: u32,
    crossings: Vec<RawCrossing>,
    tags: Vec<CrossingTag>,
    port_of: HashMap<u32, (usize, usize)>,
    arc_partner: HashMap<u32, u32>,
    glue: HashMap<u32, u32>,
    closed_glue: Vec<(u32, u32)>,
}

/// Result of `PlanarBuilder::finish`.
pub(crate) struct Built {
    pub diagram: LinkDiagram,
    pub incoming: Vec<[bool; 4]>,
    /// edge label at every raw port
    pub ports: Vec<[u32; 4]>,
    pub tags: Vec<CrossingTag>,
}

impl Built {
    /// Reverse the listed components (1-based, as in `reverse_component`),
    /// keeping the raw incoming flags in step.
    pub fn reverse_components(&mut self, which: &[usize]) -> Result<()> {
        let comps = self.diagram.crossing_components();
        let mut flipped: HashSet<u32> = HashSet::new();
        for &i in which {
            if i == 0 || i > comps.len() + self.diagram.free_loops() {
                return Err(Error::ComponentOutOfRange {
                    index: i,
                    count: comps.len() + self.diagram.free_loops(),
                });
            }
            if let Some(c) = comps.get(i - 1) {
                flipped.extend(c.iter().copied());
            }
        }
        for i in which {
            self.diagram = self.diagram.reverse_component(*i)?;
        }
        for (inc, ports) in self.incoming.iter_mut().zip(&self.ports) {
            for p in 0..4 {
                if flipped.contains(&ports[p]) {
                    inc[p] = !inc[p];
                }
            }
        }
        Ok(())
    }
}

impl PlanarBuilder {
    fn fresh(&mut self) -> u32 {
        self.next += 1;
        self.next
    }

    fn arc(&mut self) -> (u32, u32) {
        let (a, b) = (self.fresh(), self.fresh());
        self.arc_partner.insert(a, b);
        self.arc_partner.insert(b, a);
        (a, b)
    }

    pub fn glue(&mut self, a: u32, b: u32) {
        if a == b {
            // an endpoint glued to itself only happens for a lone closed arc
            self.closed_glue.push((a, b));
            return;
        }
        self.glue.insert(a, b);
        self.glue.insert(b, a);
    }

    /// Tangle with horizontal arcs NW-NE and SW-SE.
    pub fn zero(&mut self) -> Tangle {
        let (nw, ne) = self.arc();
        let (sw, se) = self.arc();
        Tangle { nw, ne, sw, se }
    }

    /// Tangle with vertical arcs NW-SW and NE-SE.
    pub fn infinity(&mut self) -> Tangle {
        let (nw, sw) = self.arc();
        let (ne, se) = self.arc();
        Tangle { nw, ne, sw, se }
    }

    pub fn crossing(&mut self, handed: Handed, tag: CrossingTag) -> [u32; 4] {
        let ci = self.crossings.len();
        let mut ports = [0u32; 4];
        for (p, slot) in ports.iter_mut().enumerate() {
            *slot = self.fresh();
            self.port_of.insert(*slot, (ci, p));
        }
        self.crossings.push(RawCrossing {
            id: ci as u32 + 1,
            ports,
            under_even: handed == Handed::B,
        });
        self.tags.push(tag);
        ports
    }

    /// Add one crossing on the east side.
    pub fn twist_horizontal(&mut self, t: Tangle, handed: Handed, group: usize) -> Tangle {
        let x = self.crossing(
            handed,
            CrossingTag {
                group,
                twist: Twist::Horizontal,
            },
        );
        self.glue(t.ne, x[NW]);
        self.glue(t.se, x[SW]);
        Tangle {
            nw: t.nw,
            sw: t.sw,
            ne: x[NE],
            se: x[SE],
        }
    }

    /// Add one crossing on the south side.
    pub fn twist_vertical(&mut self, t: Tangle, handed: Handed, group: usize) -> Tangle {
        let x = self.crossing(
            handed,
            CrossingTag {
                group,
                twist: Twist::Vertical,
            },
        );
        self.glue(t.sw, x[NW]);
        self.glue(t.se, x[NE]);
        Tangle {
            nw: t.nw,
            ne: t.ne,
            sw: x[SW],
            se: x[SE],
        }
    }

    /// Place `b` to the east of `a`.
    pub fn sum(&mut self, a: Tangle, b: Tangle) -> Tangle {
        self.glue(a.ne, b.nw);
        self.glue(a.se, b.sw);
        Tangle {
            nw: a.nw,
            sw: a.sw,
            ne: b.ne,
            se: b.se,
        }
    }

    /// Numerator closure.
    pub fn close_numerator(&mut self, t: Tangle) {
        self.glue(t.nw, t.ne);
        self.glue(t.sw, t.se);
    }

    /// First crossing port reached when travelling into the tangle from
    /// boundary endpoint `label`.
    pub fn inward_port(&self, label: u32) -> Option<(usize, usize)> {
        let mut cur = label;
        for _ in 0..=2 * (self.next as usize + 1) {
            if let Some(&d) = self.port_of.get(&cur) {
                return Some(d);
            }
            let other = *self.arc_partner.get(&cur)?;
            cur = *self.glue.get(&other)?;
            if cur == label {
                return None;
            }
        }
        None
    }

    /// Resolve labels, orient with the given incoming seeds (unseeded
    /// components keep an arbitrary direction) and validate.
    pub fn finish(self, seeds: &[(usize, usize)]) -> Result<Built> {
        let mut uf = LabelUnion::default();
        for (&a, &b) in self.arc_partner.iter().chain(self.glue.iter()) {
            uf.union(a, b);
        }
        for &(a, b) in &self.closed_glue {
            uf.union(a, b);
        }
        let mut crossings = self.crossings;
        let mut port_classes = HashSet::new();
        for c in &mut crossings {
            for p in 0..4 {
                c.ports[p] = uf.find(c.ports[p]);
                port_classes.insert(c.ports[p]);
            }
        }
        let mut loop_classes = HashSet::new();
        for l in 1..=self.next {
            let r = uf.find(l);
            if !port_classes.contains(&r) {
                loop_classes.insert(r);
            }
        }
        let ports = crossings.iter().map(|c| c.ports).collect();
        let raw = RawDiagram {
            crossings,
            free_loops: loop_classes.len(),
        };
        let (diagram, incoming) = raw.orient(seeds, &|_| true)?;
        Ok(Built {
            diagram,
            incoming,
            ports,
            tags: self.tags,
        })
    }
}

/// Closure of a braid word on `strands` strands; generator `i` (1-based,
/// signed) crosses strands `i` and `i+1`, positive meaning a positive
/// crossing. All strands are oriented upward.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<LinkDiagram> {
    if strands == 0 {
        return Err(Error::Invalid("a braid needs at least one strand".into()));
    }
    let mut b = PlanarBuilder::default();
    let bottoms: Vec<u32> = (0..strands).map(|_| b.fresh()).collect();
    let mut current = bottoms.clone();
    let mut seeds = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= strands {
            return Err(Error::Invalid(format!(
                "generator {g} out of range for {strands} strands"
            )));
        }
        let handed = if g > 0 { Handed::A } else { Handed::B };
        let x = b.crossing(
            handed,
            CrossingTag {
                group: 0,
                twist: Twist::Vertical,
            },
        );
        let ci = b.crossings.len() - 1;
        b.glue_segment(current[i - 1], x[SW]);
        b.glue_segment(current[i], x[SE]);
        current[i - 1] = x[NW];
        current[i] = x[NE];
        seeds.push((ci, SW));
        seeds.push((ci, SE));
    }
    for k in 0..strands {
        b.glue_segment(current[k], bottoms[k]);
    }
    Ok(b.finish(&seeds)?.diagram)
}

impl PlanarBuilder {
    /// Identify two labels as the same edge without endpoint semantics.
    fn glue_segment(&mut self, a: u32, b: u32) {
        self.closed_glue.push((a, b));
    }
}

/// Standard closed-braid diagram of the torus link T(p, q): the closure of
/// (s_1 ... s_{q-1})^p on q strands, all strands parallel.
pub fn torus_diagram(p: usize, q: usize) -> Result<LinkDiagram> {
    if p < 2 || q < 2 {
        return Err(Error::Invalid(format!(
            "torus_diagram needs p, q >= 2, got ({p}, {q})"
        )));
    }
    let word: Vec<i32> = (0..p).flat_map(|_| 1..q as i32).collect();
    braid_closure(q, &word)
}
