//! Continued fractions, rational tangles and 4-plats.
//!
//! A vector `(a_1, ..., a_n)` describes a rational tangle built from
//! alternating rows of twists, ending with `a_n` horizontal twists; its
//! fraction is `a_n + 1/(a_{n-1} + 1/(... + 1/a_1))`. The 4-plat of the
//! vector is the numerator closure of that tangle.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::diagram::build::{Built, Handed, PlanarBuilder, Tangle, Twist, NE, NW, SW};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

/// Entries of a tangle or 4-plat vector.
pub type TangleVector = Vec<i64>;

/// A reduced fraction `num/den` with `den >= 0`. `1/0` is the infinity
/// tangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl Fraction {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if num == 0 && den == 0 {
            return Err(Error::DegenerateFraction);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 || (d == 0 && n < 0) {
            n = -n;
            d = -d;
        }
        Ok(Fraction { num: n, den: d })
    }

    /// Link invariant numerator: the determinant of the 4-plat.
    pub fn p(&self) -> i64 {
        self.num.abs()
    }

    /// Denominator with the fraction's sign, reduced into `[0, p)`.
    pub fn q_mod_p(&self) -> i64 {
        let p = self.p();
        if p == 0 {
            return 0;
        }
        (self.num.signum() * self.den).rem_euclid(p)
    }

    /// Knot 4-plats have odd `p`.
    pub fn is_knot(&self) -> bool {
        self.p() % 2 == 1
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Evaluate `a_n + 1/(a_{n-1} + 1/(... + 1/a_1))`.
pub fn cf_to_fraction(v: &[i64]) -> Result<Fraction> {
    let (&first, rest) = v
        .split_first()
        .ok_or_else(|| Error::Invalid("empty vector".into()))?;
    // value = num/den
    let (mut num, mut den) = (first as i128, 1i128);
    for &a in rest {
        if num == 0 {
            return Err(Error::DegenerateFraction);
        }
        let next = a as i128 * num + den;
        den = num;
        num = next;
    }
    let conv =
        |x: i128| i64::try_from(x).map_err(|_| Error::Invalid("fraction overflows i64".into()));
    Fraction::new(conv(num)?, conv(den)?)
}

/// All-positive vector from the Euclidean algorithm applied to `p/q'`
/// with `q' = q mod p` in `(0, p)`, normalized to odd length by writing an
/// innermost `a` as `(1, a-1)`. `1/q` gives `(1)` and `0/1` gives `(0)`.
pub fn fraction_to_canonical_vector(f: Fraction) -> TangleVector {
    let p = f.p();
    if p == 0 {
        return vec![0];
    }
    if p == 1 {
        return vec![1];
    }
    let (mut num, mut den) = (p, f.q_mod_p());
    let mut out = Vec::new();
    while den != 0 {
        let (a, r) = num.div_rem(&den);
        out.push(a);
        num = den;
        den = r;
    }
    out.reverse();
    if out.len() % 2 == 0 {
        out[0] -= 1;
        out.insert(0, 1);
    }
    out
}

/// Expansion with every entry even, for a knot fraction. The length is
/// twice the genus; the unknot has the empty expansion.
pub fn even_expansion(f: Fraction) -> Result<TangleVector> {
    let p = f.p();
    if !f.is_knot() {
        return Err(Error::NotAKnot(f.to_string()));
    }
    if p == 1 {
        return Ok(Vec::new());
    }
    let mut q = f.q_mod_p();
    if q % 2 != 0 {
        q -= p;
    }
    let (mut num, mut den) = (p, q);
    let mut out = Vec::new();
    while den != 0 {
        // even a with |num/den - a| < 1
        let a = 2 * (num as f64 / den as f64 / 2.0).round() as i64;
        let r = num - a * den;
        debug_assert!(r.abs() < den.abs());
        out.push(a);
        num = den;
        den = r;
    }
    out.reverse();
    Ok(out)
}

/// Same unoriented 4-plat: `p` equal and `q ≡ q'^(±1) mod p`.
pub fn fourplat_equals(a: Fraction, b: Fraction) -> bool {
    let p = a.p();
    if p != b.p() {
        return false;
    }
    if p <= 1 {
        return true;
    }
    let (x, y) = (a.q_mod_p(), b.q_mod_p());
    x == y || (x * y).rem_euclid(p) == 1
}

/// Equality up to mirror image.
pub fn fourplat_mirror_equals(a: Fraction, b: Fraction) -> bool {
    let m = Fraction {
        num: -b.num,
        den: b.den,
    };
    fourplat_equals(a, b) || fourplat_equals(a, m)
}

/// Append the rational tangle of `v` to the builder; entry `j` gets crossing
/// group `first_group + j`.
pub(crate) fn build_rational_tangle(
    b: &mut PlanarBuilder,
    v: &[i64],
    first_group: usize,
) -> Tangle {
    let n = v.len();
    let mut t = if n % 2 == 1 { b.zero() } else { b.infinity() };
    for (j, &a) in v.iter().enumerate() {
        let group = first_group + j;
        let handed = if a > 0 { Handed::A } else { Handed::B };
        let horizontal = (n - 1 - j) % 2 == 0;
        for _ in 0..a.unsigned_abs() {
            t = if horizontal {
                b.twist_horizontal(t, handed, group)
            } else {
                b.twist_vertical(t, handed, group)
            };
        }
    }
    t
}

/// Whether each crossing group joins co-directed strands; `None` for
/// groups without crossings.
pub(crate) fn group_parallel(built: &Built, groups: usize) -> Vec<Option<bool>> {
    let mut out: Vec<Option<bool>> = vec![None; groups];
    for (ci, tag) in built.tags.iter().enumerate() {
        let inc = built.incoming[ci];
        let par = match tag.twist {
            Twist::Horizontal => inc[NW] == inc[SW],
            Twist::Vertical => inc[NW] == inc[NE],
        };
        if let Some(prev) = out[tag.group] {
            debug_assert_eq!(prev, par, "twist box with mixed orientation");
        }
        out[tag.group] = Some(par);
    }
    out
}

fn orientation_seeds(b: &PlanarBuilder, t: &Tangle, second: Option<bool>) -> Vec<(usize, usize)> {
    let mut seeds = Vec::new();
    if let Some(d) = b.inward_port(t.nw) {
        seeds.push(d);
    }
    if let (Some(forward), Some((ci, p))) = (second, b.inward_port(t.sw)) {
        seeds.push(if forward { (ci, p) } else { (ci, (p + 2) % 4) });
    }
    seeds
}

struct FourPlat {
    built: Built,
    groups: usize,
}

fn build_fourplat(v: &[i64], second: bool) -> Result<FourPlat> {
    if v.is_empty() {
        return Err(Error::Invalid("empty vector".into()));
    }
    let attempt = |second: Option<bool>| -> Result<FourPlat> {
        let mut b = PlanarBuilder::default();
        let t = build_rational_tangle(&mut b, v, 0);
        let seeds = orientation_seeds(&b, &t, second);
        b.close_numerator(t);
        Ok(FourPlat {
            built: b.finish(&seeds)?,
            groups: v.len(),
        })
    };
    let first = attempt(None)?;
    if first.built.diagram.component_count() == 2 {
        attempt(Some(second))
    } else {
        Ok(first)
    }
}

/// The 4-plat diagram of a vector: the top-left strand runs left to right
/// and, for two components, the bottom-left strand does too.
pub fn fourplat_diagram(v: &[i64]) -> Result<LinkDiagram> {
    Ok(build_fourplat(v, true)?.built.diagram)
}

/// 4-plat from signed row counts of the plat template, where a positive
/// entry is a positive crossing in odd rows: row `i` becomes the tangle
/// entry `(-1)^(i+1) w_i`.
pub fn fourplat_from_rows(w: &[i64]) -> Result<LinkDiagram> {
    fourplat_diagram(&rows_to_vector(w))
}

pub fn rows_to_vector(w: &[i64]) -> TangleVector {
    w.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x } else { -x })
        .collect()
}

/// Parallel and anti-parallel boxes (1-based indices) for one orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PaSplit {
    pub parallel: Vec<usize>,
    pub anti_parallel: Vec<usize>,
}

fn split_of(fp: &FourPlat) -> PaSplit {
    let mut s = PaSplit {
        parallel: Vec::new(),
        anti_parallel: Vec::new(),
    };
    for (j, par) in group_parallel(&fp.built, fp.groups).into_iter().enumerate() {
        match par {
            Some(true) => s.parallel.push(j + 1),
            Some(false) => s.anti_parallel.push(j + 1),
            None => {}
        }
    }
    s
}

/// P/A split for each orientation choice: one entry for knots, two for
/// two-component 4-plats (second strand forward, then reversed).
pub fn classify_parallel_antiparallel(v: &[i64]) -> Result<Vec<PaSplit>> {
    let fp = build_fourplat(v, true)?;
    let mut out = vec![split_of(&fp)];
    if fp.built.diagram.component_count() == 2 {
        out.push(split_of(&build_fourplat(v, false)?));
    }
    Ok(out)
}

fn nd_from_split(v: &[i64], s: &PaSplit) -> i64 {
    s.parallel.iter().map(|&i| v[i - 1].abs() - 1).sum::<i64>() + s.anti_parallel.len() as i64
}

/// `Σ_{i∈P}(|a_i|-1) + |A|` for the default orientation.
pub fn fourplat_nd(v: &[i64]) -> Result<i64> {
    let splits = classify_parallel_antiparallel(v)?;
    Ok(nd_from_split(v, &splits[0]))
}

/// The same count for every orientation choice.
pub fn fourplat_nd_all(v: &[i64]) -> Result<Vec<i64>> {
    Ok(classify_parallel_antiparallel(v)?
        .iter()
        .map(|s| nd_from_split(v, s))
        .collect())
}

/// Signature from the even expansion: `Σ (-1)^(i-1) sign(a_i)`.
pub fn fourplat_signature(f: Fraction) -> Result<i64> {
    let v = even_expansion(f)?;
    Ok(v.iter()
        .enumerate()
        .map(|(i, &a)| if i % 2 == 0 { a.signum() } else { -a.signum() })
        .sum::<i64>())
}

/// `Σ|a_i| - 2g + 1` for an even vector of length `2g` whose signs
/// alternate.
pub fn fourplat_crossing_number(v: &[i64]) -> Result<i64> {
    if v.is_empty() || v.len() % 2 != 0 {
        return Err(Error::Invalid(
            "even vector must have even length 2g >= 2".into(),
        ));
    }
    if v.iter().any(|a| a % 2 != 0 || *a == 0) {
        return Err(Error::Invalid("entries must be nonzero and even".into()));
    }
    if v.windows(2).any(|w| w[0].signum() == w[1].signum()) {
        return Err(Error::Invalid(
            "consecutive entries must have opposite signs".into(),
        ));
    }
    Ok(v.iter().map(|a| a.abs()).sum::<i64>() - v.len() as i64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(cf_to_fraction(&[3]).unwrap(), fr(3, 1));
        assert_eq!(cf_to_fraction(&[1, 2, 3]).unwrap(), fr(10, 3));
        assert_eq!(cf_to_fraction(&[3, 1, -3]).unwrap(), fr(-9, 4));
        assert_eq!(cf_to_fraction(&[1, 2, 3, 1, 3]).unwrap(), fr(49, 13));
        assert_eq!(cf_to_fraction(&[1, -1, 5]), Err(Error::DegenerateFraction));
        assert!(cf_to_fraction(&[]).is_err());
    }

    #[test]
    fn canonical_vectors_round_trip() {
        assert_eq!(fraction_to_canonical_vector(fr(3, 1)), vec![3]);
        assert_eq!(fraction_to_canonical_vector(fr(10, 3)), vec![1, 2, 3]);
        for p in 2..30 {
            for q in 1..p {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let f = fr(p, q);
                let v = fraction_to_canonical_vector(f);
                assert!(v.iter().all(|&a| a > 0));
                assert_eq!(cf_to_fraction(&v).unwrap(), f);
            }
        }
    }

    #[test]
    fn even_expansions() {
        let v = even_expansion(fr(3, 1)).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|a| a % 2 == 0));
        assert!(fourplat_equals(cf_to_fraction(&v).unwrap(), fr(3, 1)));
        assert_eq!(even_expansion(fr(1, 1)).unwrap(), Vec::<i64>::new());
        assert!(even_expansion(fr(10, 3)).is_err());
        for p in (3..40).step_by(2) {
            for q in 1..p {
                if p.gcd(&q) == 1 {
                    let v = even_expansion(fr(p, q)).unwrap();
                    assert_eq!(v.len() % 2, 0);
                    assert!(v.iter().all(|a| a % 2 == 0 && *a != 0));
                    assert!(fourplat_equals(cf_to_fraction(&v).unwrap(), fr(p, q)));
                }
            }
        }
    }

    #[test]
    fn equality() {
        assert!(fourplat_equals(fr(10, 3), fr(10, 7)));
        assert!(fourplat_equals(fr(9, 4), fr(9, 7)));
        assert!(fourplat_equals(fr(5, 2), fr(5, 2)));
        assert!(!fourplat_equals(fr(5, 1), fr(5, 2)));
        assert!(!fourplat_equals(fr(3, 1), fr(-3, 1)));
        assert!(fourplat_mirror_equals(fr(3, 1), fr(-3, 1)));
    }

    #[test]
    fn crossing_number_formula() {
        assert_eq!(fourplat_crossing_number(&[2, -2]).unwrap(), 3);
        assert_eq!(fourplat_crossing_number(&[2, -2, 2, -2]).unwrap(), 5);
        assert!(fourplat_crossing_number(&[2]).is_err());
        assert!(fourplat_crossing_number(&[2, 2]).is_err());
    }

    #[test]
    fn small_fourplats() {
        let t = fourplat_diagram(&[3]).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert!(t.is_knot());
        assert!(t.is_alternating());
        let h = fourplat_diagram(&[2]).unwrap();
        assert_eq!(h.component_count(), 2);
        let d = fourplat_diagram(&[1, 2, 3, 1, 3]).unwrap();
        assert_eq!(d.crossing_count(), 10);
        assert!(d.is_alternating() && d.is_reduced() && d.is_knot());
    }

    #[test]
    fn pa_classification() {
        assert_eq!(
            classify_parallel_antiparallel(&[3]).unwrap(),
            vec![PaSplit {
                parallel: vec![1],
                anti_parallel: vec![]
            }]
        );
        let hopf = classify_parallel_antiparallel(&[2]).unwrap();
        assert_eq!(hopf.len(), 2);
        assert_ne!(hopf[0], hopf[1]);
        assert_eq!(fourplat_nd_all(&[2]).unwrap(), vec![1, 1]);
        assert_eq!(fourplat_nd(&[3]).unwrap(), 2);
        assert_eq!(fourplat_nd(&[1, 2, 3, 1, 3]).unwrap(), 6);
    }
}
