//! Montesinos diagrams `K(T_1, ..., T_t, e)`: rational tangles with
//! fractions of absolute value below one, strung left to right, followed by
//! `e` horizontal half-twists and closed.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::build::{Built, Handed, PlanarBuilder};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::rational::{build_rational_tangle, group_parallel, Fraction};

/// Tangle `i` is the rational tangle `(tangles[i]..., 0)`; its entries are
/// nonzero and share one sign. `reversed` lists components (1-based) whose
/// default orientation is flipped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MontesinosParams {
    pub tangles: Vec<Vec<i64>>,
    pub e: i64,
    #[serde(default)]
    pub reversed: Vec<usize>,
}

impl MontesinosParams {
    pub fn new(tangles: Vec<Vec<i64>>, e: i64) -> Self {
        MontesinosParams {
            tangles,
            e,
            reversed: Vec::new(),
        }
    }

    /// From fractions `β_i/α_i` with `|β_i/α_i| < 1`.
    pub fn from_fractions(fractions: &[(i64, i64)], e: i64) -> Result<Self> {
        let mut tangles = Vec::with_capacity(fractions.len());
        for &(b, a) in fractions {
            let f = Fraction::new(b, a)?;
            if f.num == 0 || f.num.abs() >= f.den {
                return Err(Error::Invalid(format!(
                    "tangle fraction {f} must satisfy 0 < |β/α| < 1; fold its integer part into e"
                )));
            }
            // α/β = a_n + 1/(... + 1/a_1), all quotients of one sign
            let sign = f.num.signum();
            let (mut num, mut den) = (f.den, f.num.abs());
            let mut entries = Vec::new();
            while den != 0 {
                entries.push(sign * (num / den));
                (num, den) = (den, num % den);
            }
            entries.reverse();
            tangles.push(entries);
        }
        Ok(MontesinosParams {
            tangles,
            e,
            reversed: Vec::new(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.tangles.is_empty() {
            return Err(Error::Invalid(
                "a Montesinos diagram needs at least one tangle".into(),
            ));
        }
        for (i, t) in self.tangles.iter().enumerate() {
            if t.is_empty() || t.contains(&0) {
                return Err(Error::Invalid(format!(
                    "tangle {} needs nonzero entries",
                    i + 1
                )));
            }
            if t.iter().any(|a| a.signum() != t[0].signum()) {
                return Err(Error::Invalid(format!("tangle {} mixes signs", i + 1)));
            }
            if t.len() == 1 && t[0].abs() == 1 {
                return Err(Error::Invalid(format!(
                    "tangle {} has fraction ±1; fold it into e",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Fraction of each tangle.
    pub fn fractions(&self) -> Result<Vec<Fraction>> {
        self.tangles
            .iter()
            .map(|t| crate::rational::cf_to_fraction(&[t.as_slice(), &[0]].concat()))
            .collect()
    }

    /// Random instance: `t` tangles with `2 <= α <= max_alpha`, `|e| <= max_e`,
    /// random signs and a random orientation.
    pub fn random<R: Rng>(rng: &mut R, max_t: usize, max_alpha: i64, max_e: i64) -> Self {
        let t = rng.gen_range(1..=max_t);
        let mut fr = Vec::with_capacity(t);
        while fr.len() < t {
            let a = rng.gen_range(2..=max_alpha);
            let b = rng.gen_range(1..a);
            if num_integer::gcd(a, b) == 1 {
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                fr.push((s * b, a));
            }
        }
        let e = rng.gen_range(-max_e..=max_e);
        let mut p = Self::from_fractions(&fr, e).expect("valid fractions");
        p.reversed = (1..=3).filter(|_| rng.gen_bool(0.5)).collect();
        p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MontesinosType {
    I,
    II,
}

/// A built Montesinos diagram with its orientation data.
#[derive(Clone, Debug)]
pub struct Montesinos {
    pub diagram: LinkDiagram,
    /// per tangle, per entry: true when the box is parallel
    pub parallel: Vec<Vec<bool>>,
    /// the e box, when `e != 0`
    pub e_parallel: Option<bool>,
    /// left-hand connection of each tangle: true when both arcs are
    /// co-directed
    pub connections: Vec<bool>,
}

impl Montesinos {
    pub fn kind(&self) -> MontesinosType {
        if self.connections[0] {
            MontesinosType::I
        } else {
            MontesinosType::II
        }
    }

    /// All adjacent-tangle connections agree.
    pub fn type_is_consistent(&self) -> bool {
        self.connections.iter().all(|&c| c == self.connections[0])
    }
}

pub fn montesinos_build(params: &MontesinosParams) -> Result<Montesinos> {
    params.validate()?;
    let mut b = PlanarBuilder::default();
    let mut left_ends = Vec::new();
    let mut group = 0;
    let mut whole = None;
    for t in &params.tangles {
        let entries = [t.as_slice(), &[0]].concat();
        let tangle = build_rational_tangle(&mut b, &entries, group);
        group += entries.len();
        left_ends.push((tangle.nw, tangle.sw));
        whole = Some(match whole {
            None => tangle,
            Some(acc) => b.sum(acc, tangle),
        });
    }
    let mut whole = whole.expect("at least one tangle");
    let e_group = group;
    let handed = if params.e > 0 { Handed::A } else { Handed::B };
    for _ in 0..params.e.unsigned_abs() {
        whole = b.twist_horizontal(whole, handed, e_group);
    }
    let seeds: Vec<_> = b.inward_port(left_ends[0].0).into_iter().collect();
    let inward: Vec<_> = left_ends
        .iter()
        .map(|&(nw, sw)| (b.inward_port(nw).unwrap(), b.inward_port(sw).unwrap()))
        .collect();
    b.close_numerator(whole);
    let mut built: Built = b.finish(&seeds)?;
    built.reverse_components(
        &params
            .reversed
            .iter()
            .copied()
            .filter(|&i| i <= built.diagram.component_count())
            .collect::<Vec<_>>(),
    )?;

    let par = group_parallel(&built, e_group + 1);
    let mut parallel = Vec::new();
    let mut g = 0;
    for t in &params.tangles {
        parallel.push(
            (0..t.len())
                .map(|j| par[g + j].expect("nonzero box"))
                .collect(),
        );
        g += t.len() + 1;
    }
    let connections = inward
        .iter()
        .map(|&((c1, p1), (c2, p2))| built.incoming[c1][p1] == built.incoming[c2][p2])
        .collect();
    Ok(Montesinos {
        diagram: built.diagram,
        parallel,
        e_parallel: par[e_group],
        connections,
    })
}

pub fn montesinos_diagram(params: &MontesinosParams) -> Result<LinkDiagram> {
    Ok(montesinos_build(params)?.diagram)
}

pub fn montesinos_type(m: &Montesinos) -> MontesinosType {
    m.kind()
}

struct Sums {
    small: i64,
    parallel_boxes: i64,
    nd_part: i64,
    c: i64,
}

fn sums(params: &MontesinosParams, m: &Montesinos) -> Sums {
    let mut s = Sums {
        small: 0,
        parallel_boxes: 0,
        nd_part: 0,
        c: 0,
    };
    let mut all_end_anti = true;
    for (t, par) in params.tangles.iter().zip(&m.parallel) {
        for (&a, &p) in t.iter().zip(par) {
            if p {
                s.parallel_boxes += 1;
                s.nd_part += a.abs() - 1;
            } else {
                s.small += a.abs() - 1;
                s.nd_part += 1;
            }
        }
        if *par.last().unwrap() {
            all_end_anti = false;
        }
    }
    if params.e == 0 && all_end_anti {
        s.c = 2;
    }
    s
}

/// Seifert circle count from the tangle data.
pub fn montesinos_seifert_count(params: &MontesinosParams) -> Result<i64> {
    let m = montesinos_build(params)?;
    let s = sums(params, &m);
    Ok(match m.kind() {
        MontesinosType::I => s.small + s.parallel_boxes + 2,
        MontesinosType::II => s.small + s.parallel_boxes + params.e.abs() + s.c,
    })
}

/// Upper bound on the diagram nullification number, exact for alternating
/// diagrams.
pub fn montesinos_nd_bound(params: &MontesinosParams) -> Result<i64> {
    let m = montesinos_build(params)?;
    let s = sums(params, &m);
    Ok(match m.kind() {
        MontesinosType::I => s.nd_part + params.e.abs() - 1,
        MontesinosType::II => s.nd_part - s.c + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::canon::canonical_key;
    use crate::rational::fourplat_diagram;

    #[test]
    fn single_tangle_is_a_fourplat() {
        let m = montesinos_diagram(&MontesinosParams::new(vec![vec![1, 2, 3, 1]], 3)).unwrap();
        let f = fourplat_diagram(&[1, 2, 3, 1, 3]).unwrap();
        assert_eq!(m.crossing_count(), 10);
        let same = canonical_key(&m) == canonical_key(&f)
            || canonical_key(&m) == canonical_key(&f.reverse_all());
        assert!(same);
    }

    #[test]
    fn fractions_round_trip() {
        let p = MontesinosParams::from_fractions(&[(1, 2), (-2, 5), (3, 7)], 1).unwrap();
        assert_eq!(p.tangles, vec![vec![2], vec![-2, -2], vec![3, 2]]);
        let fr = p.fractions().unwrap();
        assert_eq!(fr[1], Fraction::new(-2, 5).unwrap());
        assert_eq!(fr[2], Fraction::new(3, 7).unwrap());
        assert!(MontesinosParams::from_fractions(&[(3, 2)], 0).is_err());
    }

    #[test]
    fn errors() {
        assert!(montesinos_diagram(&MontesinosParams::new(vec![], 1)).is_err());
        assert!(montesinos_diagram(&MontesinosParams::new(vec![vec![1]], 1)).is_err());
        assert!(montesinos_diagram(&MontesinosParams::new(vec![vec![2, -1]], 1)).is_err());
    }

    #[test]
    fn pretzel_two_two() {
        let m = montesinos_build(&MontesinosParams::from_fractions(&[(1, 2), (1, 2)], 0).unwrap())
            .unwrap();
        assert_eq!(m.diagram.crossing_count(), 4);
        assert!(m.type_is_consistent());
    }

    #[test]
    fn trefoil_count() {
        // 3 horizontal twists: K(1/2, e=1) has 3 crossings
        let p = MontesinosParams::from_fractions(&[(1, 2)], 1).unwrap();
        let d = montesinos_diagram(&p).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(
            montesinos_seifert_count(&p).unwrap(),
            d.seifert_circles().count as i64
        );
    }
}
