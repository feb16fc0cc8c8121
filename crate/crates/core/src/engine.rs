//! Nullification numbers: exhaustive search inside a fixed diagram, the
//! alternating closed form, certified intervals for the general number,
//! and twist-region bounds.

use std::collections::{HashMap, HashSet};

use log::debug;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::diagram::canon::{canonical_key, CanonicalKey};
use crate::diagram::codes::serialize_pd;
use crate::diagram::moves::DEFAULT_R3_DEPTH;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::fixtures::Fixture;
use crate::polynomials::{is_trivial_link_with, Triviality};
use crate::seifert::signature;
use crate::util::Combinations;

pub const DEFAULT_CROSSING_LIMIT: usize = 14;
pub const DEFAULT_GENERAL_DEPTH: usize = 4;

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Largest diagram `n_diagram` accepts.
    pub crossing_limit: usize,
    /// Reidemeister III lookahead used by simplification.
    pub r3_depth: usize,
    /// Largest witness length tried by the general search.
    pub depth: usize,
    /// Let the general search also smooth a crossing created by one
    /// Reidemeister II move, when plain smoothing finds nothing.
    pub r2_widening: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            crossing_limit: DEFAULT_CROSSING_LIMIT,
            r3_depth: DEFAULT_R3_DEPTH,
            depth: DEFAULT_GENERAL_DEPTH,
            r2_widening: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NullKind {
    Diagram,
    MinimumDiagram,
    GeneralInterval,
}

/// Upper end of an interval; `Exceeds(d)` means no witness of length at
/// most `d` was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Upper {
    Value(usize),
    Exceeds(usize),
}

impl Upper {
    pub fn value(self) -> Option<usize> {
        match self {
            Upper::Value(v) => Some(v),
            Upper::Exceeds(_) => None,
        }
    }
}

impl Serialize for Upper {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Upper::Value(v) => s.serialize_u64(*v as u64),
            Upper::Exceeds(d) => s.serialize_str(&format!(">{d}")),
        }
    }
}

/// One smoothing: the diagram it is applied to (PD code, crossings
/// numbered by position) and the crossing smoothed. In a general search the
/// diagram may be the previous one after a single Reidemeister II move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessStep {
    pub diagram: String,
    pub crossing: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NullResult {
    pub kind: NullKind,
    pub lower: usize,
    pub upper: Upper,
    pub witness: Vec<WitnessStep>,
    /// Status of the diagram after 0, 1, ... witness steps.
    pub certification: Vec<Triviality>,
    /// Crossing ids of the input diagram smoothed by the witness (diagram
    /// kinds only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub smoothed: Vec<u32>,
}

impl NullResult {
    /// The exact value when the interval is tight.
    pub fn value(&self) -> Option<usize> {
        (self.upper.value() == Some(self.lower)).then_some(self.lower)
    }

    /// Replay the witness from `d` and return the final certificate.
    pub fn replay(&self, d: &LinkDiagram, r3_depth: usize) -> Result<Triviality> {
        match self.kind {
            NullKind::Diagram | NullKind::MinimumDiagram => {
                let mut cur = d.clone();
                for (step, &id) in self.witness.iter().zip(&self.smoothed) {
                    if canonical_key(&crate::parse_pd(&step.diagram, None)?) != canonical_key(&cur)
                    {
                        return Err(Error::Invalid("witness diagram does not match".into()));
                    }
                    cur = cur.smooth(id)?;
                }
                Ok(is_trivial_link_with(&cur, r3_depth))
            }
            NullKind::GeneralInterval => {
                let mut cur = d.simplify(r3_depth);
                for step in &self.witness {
                    let stated = crate::parse_pd(&step.diagram, Some(cur.component_count()))?;
                    let key = canonical_key(&stated);
                    let reached = key == canonical_key(&cur)
                        || cur
                            .r2_creations()
                            .iter()
                            .any(|(m, _)| canonical_key(m) == key);
                    if !reached {
                        return Err(Error::Invalid("witness diagram does not match".into()));
                    }
                    cur = stated.smooth(step.crossing)?.simplify(r3_depth);
                }
                Ok(is_trivial_link_with(&cur, r3_depth))
            }
        }
    }
}

fn pd_of(d: &LinkDiagram) -> String {
    serialize_pd(d)
}

/// Signature lower bound: `|σ|`, at least one for a nontrivial diagram.
fn sigma_lower(d: &LinkDiagram) -> usize {
    signature(d).map(|s| s.unsigned_abs() as usize).unwrap_or(0)
}

/// Number of crossings outside a spanning forest of the Seifert graph; smoothing
/// them always leaves an unlink.
pub fn seifert_forest_bound(d: &LinkDiagram) -> usize {
    let pieces = d.connected_pieces().len() + d.free_loops();
    d.crossing_count() + pieces - d.seifert_circles().count
}

/// Minimum number of crossings of `d` whose smoothing gives a trivial
/// link diagram, with the lexicographically least witness.
pub fn n_diagram(d: &LinkDiagram) -> Result<NullResult> {
    n_diagram_with(d, &SearchConfig::default())
}

fn diagram_result(
    d: &LinkDiagram,
    ids: &[u32],
    kind: NullKind,
    r3_depth: usize,
) -> Result<NullResult> {
    let mut witness = Vec::with_capacity(ids.len());
    let mut certification = vec![is_trivial_link_with(d, r3_depth)];
    let mut cur = d.clone();
    for &id in ids {
        let pos = cur.index_of(id)? as u32 + 1;
        witness.push(WitnessStep {
            diagram: pd_of(&cur.renumbered()),
            crossing: pos,
        });
        cur = cur.smooth(id)?;
        certification.push(is_trivial_link_with(&cur, r3_depth));
    }
    Ok(NullResult {
        kind,
        lower: ids.len(),
        upper: Upper::Value(ids.len()),
        witness,
        certification,
        smoothed: ids.to_vec(),
    })
}

pub fn n_diagram_with(d: &LinkDiagram, cfg: &SearchConfig) -> Result<NullResult> {
    let n = d.crossing_count();
    if n > cfg.crossing_limit {
        return Err(Error::SearchLimit {
            crossings: n,
            limit: cfg.crossing_limit,
        });
    }
    let ids = d.crossing_ids();
    let upper = seifert_forest_bound(d);
    let start = sigma_lower(d).min(upper);
    for k in start..=upper {
        let subsets: Vec<Vec<usize>> = Combinations::new(n, k).collect();
        debug!("n_diagram: trying {} subsets of size {k}", subsets.len());
        let found = subsets.par_iter().find_first(|s| {
            let chosen: Vec<u32> = s.iter().map(|&i| ids[i]).collect();
            let smoothed = d.smooth_many(&chosen).expect("known ids");
            is_trivial_link_with(&smoothed, cfg.r3_depth).is_trivial()
        });
        if let Some(s) = found {
            let chosen: Vec<u32> = s.iter().map(|&i| ids[i]).collect();
            return diagram_result(d, &chosen, NullKind::Diagram, cfg.r3_depth);
        }
    }
    unreachable!("smoothing the complement of a Seifert spanning forest gives an unlink")
}

/// Every minimum nullifying subset of `d`, as sorted crossing ids.
pub fn all_minimal_nullifications(d: &LinkDiagram, cfg: &SearchConfig) -> Result<Vec<Vec<u32>>> {
    let k = n_diagram_with(d, cfg)?.lower;
    let ids = d.crossing_ids();
    let subsets: Vec<Vec<usize>> = Combinations::new(d.crossing_count(), k).collect();
    Ok(subsets
        .par_iter()
        .filter_map(|s| {
            let chosen: Vec<u32> = s.iter().map(|&i| ids[i]).collect();
            let smoothed = d.smooth_many(&chosen).ok()?;
            is_trivial_link_with(&smoothed, cfg.r3_depth)
                .is_trivial()
                .then_some(chosen)
        })
        .collect())
}

/// Sum of the signs of the crossings smoothed by a minimum nullifying
/// subset, for every such subset.
pub fn nullification_writhes(d: &LinkDiagram, cfg: &SearchConfig) -> Result<Vec<i32>> {
    Ok(all_minimal_nullifications(d, cfg)?
        .iter()
        .map(|ids| {
            ids.iter()
                .map(|&id| d.crossing(id).expect("own id").sign.value())
                .sum()
        })
        .collect())
}

/// Upper bound on the restricted number from the supplied minimum
/// diagrams: the least `n_D` among them.
pub fn n_restricted_upper(diagrams: &[LinkDiagram], cfg: &SearchConfig) -> Result<NullResult> {
    let mut best: Option<NullResult> = None;
    for d in diagrams {
        let r = n_diagram_with(d, cfg)?;
        if best.as_ref().map_or(true, |b| r.lower < b.lower) {
            best = Some(r);
        }
    }
    let mut r = best.ok_or_else(|| Error::Invalid("no diagrams supplied".into()))?;
    r.kind = NullKind::MinimumDiagram;
    r.lower = 0;
    Ok(r)
}

/// `Cr(D) - s(D) + 1` after removing nugatory crossings.
pub fn n_d_alternating(d: &LinkDiagram) -> Result<usize> {
    let r = d.reduce_alternating()?;
    Ok(seifert_forest_bound(&r))
}

/// Depth-first search for an exactly certified witness; the first witness
/// certified only by the Jones polynomial is kept as a fallback.
struct General<'a> {
    cfg: &'a SearchConfig,
    widened: bool,
    fallback: Option<Vec<(LinkDiagram, u32)>>,
    /// largest remaining depth known to fail from a diagram
    failed: HashMap<CanonicalKey, usize>,
    sigma: HashMap<CanonicalKey, usize>,
}

impl General<'_> {
    fn dfs(
        &mut self,
        d: &LinkDiagram,
        remaining: usize,
        path: &mut Vec<(LinkDiagram, u32)>,
    ) -> bool {
        if remaining == 0 {
            match is_trivial_link_with(d, self.cfg.r3_depth) {
                Triviality::ExactTrivial => return true,
                Triviality::PolyTrivial if self.fallback.is_none() => {
                    self.fallback = Some(path.clone());
                }
                _ => {}
            }
            return false;
        }
        let key = canonical_key(d);
        if self.failed.get(&key).is_some_and(|&r| r >= remaining) {
            return false;
        }
        let sig = *self
            .sigma
            .entry(key.clone())
            .or_insert_with(|| sigma_lower(d));
        if sig > remaining {
            return false;
        }
        let mut seen = HashSet::new();
        let mut moves: Vec<(LinkDiagram, u32)> = d
            .crossing_ids()
            .into_iter()
            .map(|id| (d.clone(), id))
            .collect();
        if self.widened {
            let n = d.crossing_count() as u32;
            for (m, _) in d.r2_creations() {
                // the two new crossings come last
                let m = m.renumbered();
                moves.push((m.clone(), n + 1));
                moves.push((m, n + 2));
            }
        }
        for (from, id) in moves {
            let child = from
                .smooth(id)
                .expect("own id")
                .simplify(self.cfg.r3_depth)
                .renumbered();
            if !seen.insert(canonical_key(&child)) {
                continue;
            }
            path.push((from, id));
            if self.dfs(&child, remaining - 1, path) {
                return true;
            }
            path.pop();
        }
        let e = self.failed.entry(key).or_insert(0);
        *e = (*e).max(remaining);
        false
    }
}

/// Interval for the general nullification number: lower bound from the
/// signature and nontriviality, upper bound from iterative deepening over
/// smooth-then-simplify sequences.
pub fn n_general_interval(d: &LinkDiagram, depth: usize) -> Result<NullResult> {
    n_general_interval_with(
        d,
        &SearchConfig {
            depth,
            ..SearchConfig::default()
        },
    )
}

pub fn n_general_interval_with(d: &LinkDiagram, cfg: &SearchConfig) -> Result<NullResult> {
    let start = d.simplify(cfg.r3_depth).renumbered();
    let t0 = is_trivial_link_with(&start, cfg.r3_depth);
    if t0.is_trivial() {
        return Ok(NullResult {
            kind: NullKind::GeneralInterval,
            lower: 0,
            upper: Upper::Value(0),
            witness: Vec::new(),
            certification: vec![t0],
            smoothed: Vec::new(),
        });
    }
    let lower = sigma_lower(d).max(1);
    let new = |widened| General {
        cfg,
        widened,
        fallback: None,
        failed: HashMap::new(),
        sigma: HashMap::new(),
    };
    let (mut plain, mut wide) = (new(false), new(true));
    for k in lower..=cfg.depth {
        debug!("general search at depth {k}");
        let mut path = Vec::new();
        let mut found = plain
            .dfs(&start, k, &mut path)
            .then_some(Triviality::ExactTrivial);
        if found.is_none() && cfg.r2_widening {
            path.clear();
            found = wide
                .dfs(&start, k, &mut path)
                .then_some(Triviality::ExactTrivial);
        }
        if found.is_none() {
            if let Some(p) = plain.fallback.take().or_else(|| wide.fallback.take()) {
                path = p;
                found = Some(Triviality::PolyTrivial);
            }
        }
        if let Some(last) = found {
            let mut witness = Vec::with_capacity(k);
            let mut certification = Vec::with_capacity(k + 1);
            for (diagram, id) in &path {
                witness.push(WitnessStep {
                    diagram: pd_of(diagram),
                    crossing: *id,
                });
                certification.push(Triviality::Nontrivial);
            }
            certification.push(last);
            return Ok(NullResult {
                kind: NullKind::GeneralInterval,
                lower,
                upper: Upper::Value(k),
                witness,
                certification,
                smoothed: Vec::new(),
            });
        }
    }
    Ok(NullResult {
        kind: NullKind::GeneralInterval,
        lower,
        upper: Upper::Exceeds(cfg.depth),
        witness: Vec::new(),
        certification: vec![Triviality::Nontrivial],
        smoothed: Vec::new(),
    })
}

/// Consistency of a fixture's tabulated values with the computed interval.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub signature: Option<i32>,
    pub unknotting_number: Option<u32>,
    pub lower: usize,
    pub upper: Upper,
    /// `|σ| <= upper` whenever the upper end is known.
    pub sigma_below_upper: bool,
    /// `|σ| = 2u`, so the general number is pinned to this value.
    pub pinned: Option<usize>,
    /// The interval collapsed to the pinned value (true when not pinned).
    pub collapsed_to_pin: bool,
    /// `upper <= 2u` when both are known.
    pub upper_within_twice_u: Option<bool>,
    /// For a knot with `n = 1`, the signature is zero.
    pub null_one_sigma_zero: bool,
}

pub fn check_bounds(fixture: &Fixture, cfg: &SearchConfig) -> Result<BoundReport> {
    let d = fixture.diagram()?;
    let r = n_general_interval_with(&d, cfg)?;
    let sigma = fixture.signature;
    let abs_sigma = sigma.map(|s| s.unsigned_abs() as usize);
    let u = fixture.unknotting_number;
    let pinned = match (abs_sigma, u) {
        (Some(s), Some(u)) if s == 2 * u as usize => Some(s),
        _ => None,
    };
    let up = r.upper.value();
    Ok(BoundReport {
        name: fixture.name.clone(),
        signature: sigma,
        unknotting_number: u,
        lower: r.lower,
        upper: r.upper,
        sigma_below_upper: match (abs_sigma, up) {
            (Some(s), Some(v)) => s <= v,
            _ => true,
        },
        pinned,
        collapsed_to_pin: pinned.map_or(true, |p| r.value() == Some(p)),
        upper_within_twice_u: match (up, u) {
            (Some(v), Some(u)) => Some(v <= 2 * u as usize),
            _ => None,
        },
        null_one_sigma_zero: !(d.is_knot() && r.value() == Some(1))
            || sigma.map_or(true, |s| s == 0),
    })
}

/// Twist regions of a diagram and the conjectured bound
/// `Σ(|P_i| - 1) + A + S + c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistRegionReport {
    /// sizes of parallel regions with at least two crossings, descending
    pub parallel: Vec<usize>,
    /// number of anti-parallel regions
    pub anti_parallel: usize,
    /// crossings in anti-parallel regions
    pub anti_parallel_crossings: usize,
    /// crossings that sit in no bigon
    pub single: usize,
    pub bound_c0: usize,
    pub bound_c1: usize,
}

pub fn twist_region_bound(d: &LinkDiagram) -> TwistRegionReport {
    let n = d.crossing_count();
    let partner_ends = d.edge_ends();
    // edge direction: label -> (tail crossing, head crossing)
    let mut uf = crate::util::DenseUnion::new(n);
    let mut region_parallel: HashMap<(usize, usize), bool> = HashMap::new();
    let cs = d.crossings();
    for face in d.faces() {
        if face.len() != 2 || face[0].0 == face[1].0 {
            continue;
        }
        let (a, b) = (face[0].0, face[1].0);
        uf.union(a, b);
        // the two bigon edges leave the corners of each crossing at slots s and s+1
        let labels = [
            cs[face[0].0].slots[face[0].1],
            cs[face[0].0].slots[(face[0].1 + 1) % 4],
        ];
        let tails: Vec<usize> = labels.iter().map(|l| partner_ends[l].0 .0).collect();
        region_parallel.insert((a.min(b), a.max(b)), tails[0] == tails[1]);
    }
    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..n {
        members.entry(uf.find(i)).or_default().push(i);
    }
    let mut parallel = Vec::new();
    let mut anti = 0;
    let mut anti_crossings = 0;
    let mut single = 0;
    for m in members.values() {
        if m.len() == 1 {
            single += 1;
            continue;
        }
        let root = uf.find(m[0]);
        let is_par = region_parallel
            .iter()
            .find(|((a, _), _)| uf.find(*a) == root)
            .map(|(_, &p)| p)
            .unwrap_or(true);
        if is_par {
            parallel.push(m.len());
        } else {
            anti += 1;
            anti_crossings += m.len();
        }
    }
    parallel.sort_unstable_by(|a, b| b.cmp(a));
    let base = parallel.iter().map(|p| p - 1).sum::<usize>() + anti + single;
    TwistRegionReport {
        parallel,
        anti_parallel: anti,
        anti_parallel_crossings: anti_crossings,
        single,
        bound_c0: base,
        bound_c1: base + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::{braid_closure, torus_diagram};

    fn trefoil() -> LinkDiagram {
        crate::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", None).unwrap()
    }

    #[test]
    fn diagram_numbers() {
        assert_eq!(n_diagram(&LinkDiagram::unlink(2)).unwrap().value(), Some(0));
        let r = n_diagram(&trefoil()).unwrap();
        assert_eq!(r.value(), Some(2));
        assert_eq!(r.witness.len(), 2);
        assert_eq!(r.certification.len(), 3);
        assert!(r.replay(&trefoil(), 2).unwrap().is_trivial());
        assert_eq!(n_d_alternating(&trefoil()).unwrap(), 2);
    }

    #[test]
    fn kinked_unknot() {
        let d = crate::parse_pd("X[1,2,2,3] X[3,4,4,1]", None).unwrap();
        assert_eq!(n_d_alternating(&d).unwrap(), 0);
        assert_eq!(n_diagram(&d).unwrap().value(), Some(0));
    }

    #[test]
    fn search_limit() {
        let big = torus_diagram(2, 15).unwrap();
        assert!(matches!(n_diagram(&big), Err(Error::SearchLimit { .. })));
    }

    #[test]
    fn general_trefoil() {
        let r = n_general_interval(&trefoil(), 3).unwrap();
        assert_eq!((r.lower, r.upper), (2, Upper::Value(2)));
        assert!(r.replay(&trefoil(), 2).unwrap().is_trivial());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["kind"], "general_interval");
        assert_eq!(json["upper"], 2);
    }

    #[test]
    fn general_exhausted() {
        let d = torus_diagram(2, 7).unwrap();
        let r = n_general_interval(&d, 3).unwrap();
        assert_eq!(r.lower, 6);
        assert_eq!(r.upper, Upper::Exceeds(3));
        assert_eq!(serde_json::to_value(&r).unwrap()["upper"], ">3");
    }

    #[test]
    fn twist_regions() {
        let t = twist_region_bound(&trefoil());
        assert_eq!(t.parallel, vec![3]);
        assert_eq!((t.anti_parallel, t.single), (0, 0));
        assert_eq!((t.bound_c0, t.bound_c1), (2, 3));
        // an anti-parallel clasp of four crossings
        let clasp = braid_closure(2, &[1, 1, 1, 1])
            .unwrap()
            .reverse_component(1)
            .unwrap();
        let c = twist_region_bound(&clasp);
        assert_eq!((c.anti_parallel, c.anti_parallel_crossings), (1, 4));
        assert_eq!(c.bound_c0, 1);
        assert_eq!(n_diagram(&clasp).unwrap().value(), Some(1));
    }
}
