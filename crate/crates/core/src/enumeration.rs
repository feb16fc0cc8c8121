//! Rational knots of nullification number one built from a rational knot
//! and its mirror, and the counting behind the exponential growth of
//! 4-plats with large signature.

use std::collections::BTreeMap;
use std::io::Write;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{n_general_interval_with, SearchConfig, Upper};
use crate::error::{Error, Result};
use crate::rational::{
    cf_to_fraction, fourplat_diagram, fourplat_from_rows, fraction_to_canonical_vector, Fraction,
    TangleVector,
};
use crate::util::binomial;

/// Derived diagrams up to this many crossings are checked by search.
pub const VERIFY_CROSSING_LIMIT: i64 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NullOneRecord {
    pub source: Fraction,
    pub source_vector: TangleVector,
    pub epsilon: i64,
    /// `p^2`
    pub derived_p: i64,
    /// `ε' + p q'` where `q'` is read from the reversed source vector and
    /// `ε' = ±ε` by the parity of its length; `derived_p/derived_q` is the
    /// knot of `vector` up to mirror image.
    pub derived_q: i64,
    /// Value of `vector` itself.
    pub derived: Fraction,
    pub vector: TangleVector,
    pub crossing_number: i64,
    /// `Some(true)` when a single smoothing of the built diagram was found
    /// to give an unlink; `None` when not checked.
    pub verified: Option<bool>,
    /// Index of an earlier record that is this one's mirror image.
    pub mirror_of: Option<usize>,
}

/// `(a_1, ..., a_k, ε, -a_k, ..., -a_1)`.
pub fn null_one_vector(v: &[i64], epsilon: i64) -> TangleVector {
    let mut out = v.to_vec();
    out.push(epsilon);
    out.extend(v.iter().rev().map(|a| -a));
    out
}

/// Build the record for a positive knot vector `v` with fraction `p/q`.
pub fn null_one_from_rational(v: &[i64], epsilon: i64) -> Result<NullOneRecord> {
    if epsilon.abs() != 1 {
        return Err(Error::Invalid(format!("epsilon must be ±1, got {epsilon}")));
    }
    if v.is_empty() || v.iter().any(|&a| a <= 0) {
        return Err(Error::Invalid(
            "source vector must have positive entries".into(),
        ));
    }
    let source = cf_to_fraction(v)?;
    if !source.is_knot() {
        return Err(Error::NotAKnot(source.to_string()));
    }
    let p = source.p();
    if p == 1 {
        return Err(Error::DegenerateFraction);
    }
    let reversed: Vec<i64> = v.iter().rev().copied().collect();
    let q_rev = cf_to_fraction(&reversed)?.den;
    let eps = if v.len() % 2 == 1 { epsilon } else { -epsilon };
    let derived_q = eps + p * q_rev;
    let vector = null_one_vector(v, epsilon);
    let derived = cf_to_fraction(&vector)?;
    let p2 = p * p;
    let signed = derived.num.signum() * derived.den;
    assert!(
        derived.p() == p2 && ((signed - derived_q) % p2 == 0 || (signed + derived_q) % p2 == 0),
        "{vector:?} evaluates to {derived}, expected ±{p2}/{derived_q} mod {p2}"
    );
    let crossing_number = fraction_to_canonical_vector(Fraction::new(p2, derived.den)?)
        .iter()
        .sum();
    Ok(NullOneRecord {
        source,
        source_vector: v.to_vec(),
        epsilon,
        derived_p: p2,
        derived_q,
        derived,
        vector,
        crossing_number,
        verified: None,
        mirror_of: None,
    })
}

/// Two denominators of `p^2` give the same knot.
pub fn null_one_denominators_equivalent(p: i64, d1: i64, d2: i64) -> bool {
    let m = p * p;
    (d1 - d2).rem_euclid(m) == 0 || (d1 * d2).rem_euclid(m) == 1
}

/// Same knot (not merely mirror images).
pub fn null_one_equivalent(r1: &NullOneRecord, r2: &NullOneRecord) -> bool {
    r1.derived_p == r2.derived_p
        && null_one_denominators_equivalent(r1.source.p(), signed_q(r1), signed_q(r2))
}

pub fn null_one_mirror_equivalent(r1: &NullOneRecord, r2: &NullOneRecord) -> bool {
    r1.derived_p == r2.derived_p
        && null_one_denominators_equivalent(r1.source.p(), signed_q(r1), -signed_q(r2))
}

fn signed_q(r: &NullOneRecord) -> i64 {
    r.derived.num.signum() * r.derived.den
}

/// Run the one-step search on the built diagram.
pub fn verify_null_one(r: &NullOneRecord, cfg: &SearchConfig) -> Result<bool> {
    let d = fourplat_diagram(&r.vector)?;
    let res = n_general_interval_with(&d, &SearchConfig { depth: 1, ..*cfg })?;
    Ok(res.upper == Upper::Value(1))
}

/// Knot fractions `p/q`, `0 < q < p`, whose 4-plats have at most `max_cr`
/// crossings, as positive canonical vectors.
pub fn knot_sources(max_cr: i64) -> Vec<TangleVector> {
    let mut out = Vec::new();
    // a 4-plat with c crossings has p at most the (c+1)-th Fibonacci number
    let (mut a, mut b) = (1i64, 1i64);
    for _ in 0..max_cr {
        (a, b) = (b, a + b);
    }
    for p in (3..=b).step_by(2) {
        for q in 1..p {
            if p.gcd(&q) != 1 {
                continue;
            }
            let v = fraction_to_canonical_vector(Fraction { num: p, den: q });
            if v.iter().sum::<i64>() <= max_cr {
                out.push(v);
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct NullOneTable {
    pub records: Vec<NullOneRecord>,
    /// records per derived crossing number
    pub counts: BTreeMap<i64, usize>,
}

/// All records with derived crossing number at most `max_cr`, one per
/// knot, sorted by derived fraction; mirror pairs are flagged.
pub fn enumerate_null_one(max_cr: i64, cfg: &SearchConfig) -> Result<NullOneTable> {
    if max_cr > 24 {
        return Err(Error::Invalid(format!("max_cr {max_cr} above 24")));
    }
    let mut all = Vec::new();
    for v in knot_sources(max_cr / 2) {
        for eps in [1, -1] {
            all.push(null_one_from_rational(&v, eps)?);
        }
    }
    all.sort_by_key(|r| (r.derived_p, r.derived_q, r.epsilon));
    let mut records: Vec<NullOneRecord> = Vec::new();
    for r in all {
        if !records.iter().any(|s| null_one_equivalent(s, &r)) {
            records.push(r);
        }
    }
    for i in 0..records.len() {
        records[i].mirror_of =
            (0..i).find(|&j| null_one_mirror_equivalent(&records[j], &records[i]));
    }
    let verified: Vec<Option<bool>> = records
        .par_iter()
        .map(|r| {
            (r.crossing_number <= VERIFY_CROSSING_LIMIT)
                .then(|| verify_null_one(r, cfg))
                .transpose()
        })
        .collect::<Result<_>>()?;
    for (r, v) in records.iter_mut().zip(verified) {
        r.verified = v;
    }
    let mut counts = BTreeMap::new();
    for r in &records {
        *counts.entry(r.crossing_number).or_insert(0) += 1;
    }
    Ok(NullOneTable { records, counts })
}

pub fn write_null_one_csv<W: Write>(table: &NullOneTable, out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Invalid(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "p",
        "q",
        "epsilon",
        "derived_p",
        "derived_q",
        "vector",
        "crossing_number",
        "verified",
        "mirror_of",
    ])
    .map_err(io)?;
    for r in &table.records {
        let vector = r
            .vector
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        w.write_record([
            r.source.num.to_string(),
            r.source.den.to_string(),
            r.epsilon.to_string(),
            r.derived_p.to_string(),
            r.derived_q.to_string(),
            vector,
            r.crossing_number.to_string(),
            r.verified.map_or(String::new(), |v| v.to_string()),
            r.mirror_of.map_or(String::new(), |i| i.to_string()),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Invalid(format!("csv: {e}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    A,
    B,
}

/// Row vectors `(-2a,-2,-2b,2,2a,2b)` and `(-2b,-2,-2a,2b,2,2a)`.
pub fn family_vectors(kind: Family, a: i64, b: i64) -> Result<TangleVector> {
    if a < 1 || b < 1 {
        return Err(Error::Invalid("family parameters must be positive".into()));
    }
    Ok(match kind {
        Family::A => vec![-2 * a, -2, -2 * b, 2, 2 * a, 2 * b],
        Family::B => vec![-2 * b, -2, -2 * a, 2 * b, 2, 2 * a],
    })
}

/// Upper bound from a one-step search on the family diagram.
pub fn verify_family(kind: Family, a: i64, b: i64, cfg: &SearchConfig) -> Result<Upper> {
    let d = fourplat_from_rows(&family_vectors(kind, a, b)?)?;
    Ok(n_general_interval_with(&d, &SearchConfig { depth: 1, ..*cfg })?.upper)
}

fn check_high_null(m: i64, k: i64) -> Result<u64> {
    if m % 2 == 0 || k % 2 != 0 || k <= 0 || m < k + 1 {
        return Err(Error::Invalid(format!(
            "need odd m >= k+1 and positive even k, got m={m}, k={k}"
        )));
    }
    Ok(((m - 1) / 2 - k / 2) as u64)
}

/// Ordered even vectors `(a_1..a_k)` of alternating sign, `|a_i| >= 2`,
/// `Σ|a_i| = m + k - 1`: compositions of `(m-1)/2 - g` into `k` parts.
pub fn count_high_null(m: i64, k: i64) -> Result<u64> {
    let n = check_high_null(m, k)?;
    let k = k as u64;
    Ok(binomial(n + k - 1, k - 1))
}

/// The same vectors counted as multisets of absolute values: partitions
/// of `(m-1)/2 - g` into at most `k` parts.
pub fn count_high_null_unordered(m: i64, k: i64) -> Result<u64> {
    let n = check_high_null(m, k)? as usize;
    let k = k as usize;
    // p[j][s]: partitions of s into parts of size at most j (conjugate form)
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=k {
        for s in part..=n {
            p[s] += p[s - part];
        }
    }
    Ok(p[n])
}
