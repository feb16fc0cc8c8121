//! The acceptance criteria as runnable checks, shared by the acceptance
//! test target and the `verify` command.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::*;
use crate::enumeration::{enumerate_null_one, null_one_equivalent};
use crate::fixtures::{self, Fixture};
use crate::montesinos::*;
use crate::polynomials::{homfly, jones, max_z_degree, unlink_jones};
use crate::rational::*;
use crate::seifert::{signature, signature_diag, signature_sigma_series};
use crate::{braid_closure, torus_diagram, LinkDiagram};

pub struct Criterion {
    pub number: usize,
    pub name: &'static str,
    pub run: fn() -> Result<String, String>,
}

pub struct Outcome {
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Criterion {
    /// Run the check, turning a panic into a failure.
    pub fn check(&self) -> Outcome {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(self.run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let seconds = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => Outcome {
                passed: true,
                detail,
                seconds,
            },
            Err(detail) => Outcome {
                passed: false,
                detail,
                seconds,
            },
        }
    }

    pub fn line(&self, o: &Outcome) -> String {
        let status = if o.passed { "PASS" } else { "FAIL" };
        format!(
            "criterion {:>2} {status} ({:.1}s) {}: {}",
            self.number, o.seconds, self.name, o.detail
        )
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}
fn reduced_alternating(max_cr: usize) -> Vec<(Fixture, LinkDiagram)> {
    fixtures::all()
        .into_iter()
        .filter(|f| f.alternating && f.crossing_number <= max_cr && f.crossing_number > 0)
        .map(|f| {
            let d = f.diagram().unwrap();
            (f, d)
        })
        .filter(|(_, d)| d.is_alternating() && d.is_reduced())
        .collect()
}

fn closed_form(d: &LinkDiagram) -> usize {
    d.crossing_count() + 1 - d.seifert_circles().count
}

fn c1_exhaustive_vs_closed_form() -> Result<String, String> {
    let set = reduced_alternating(7);
    for (f, d) in &set {
        let r = n_diagram(d).map_err(|e| format!("{}: {e}", f.name))?;
        ensure(r.value() == Some(closed_form(d)), || {
            format!(
                "{}: search {:?} vs closed form {}",
                f.name,
                r.value(),
                closed_form(d)
            )
        })?;
    }
    Ok(format!("{} fixtures", set.len()))
}

fn c2_homfly_degree() -> Result<String, String> {
    let set = reduced_alternating(7);
    for (f, d) in &set {
        let deg = max_z_degree(&homfly(d).map_err(|e| e.to_string())?);
        ensure(deg == Some(closed_form(d) as i64), || {
            format!("{}: degree {deg:?}", f.name)
        })?;
    }
    Ok(format!("{} fixtures", set.len()))
}

fn c3_eight_twenty() -> Result<String, String> {
    let target = fixtures::get("8_20").unwrap().jones.unwrap();
    let mut out = Vec::new();
    for (name, want) in [("8_20_M", 1), ("8_20_N", 2)] {
        let d = fixtures::curated(name).unwrap().diagram().unwrap();
        ensure(jones(&d) == target, || {
            format!("{name}: Jones differs from 8_20")
        })?;
        let r = n_diagram(&d).map_err(|e| e.to_string())?;
        ensure(r.value() == Some(want), || {
            format!("{name}: n_D = {:?}", r.value())
        })?;
        out.push(format!(
            "{name} ({} crossings) n_D={want}",
            d.crossing_count()
        ));
    }
    Ok(out.join(", "))
}

fn c4_ten_twenty_two() -> Result<String, String> {
    let v = [1, 2, 3, 1, 3];
    let nd = fourplat_nd(&v).map_err(|e| e.to_string())?;
    ensure(nd == 6, || format!("closed-form n_d = {nd}"))?;
    let d = fourplat_diagram(&v).unwrap();
    let target = fixtures::get("10_22").unwrap().jones.unwrap();
    ensure(jones(&d) == target || jones(&d.mirror()) == target, || {
        "diagram is not 10_22".into()
    })?;
    let r = n_general_interval(&d, 2).map_err(|e| e.to_string())?;
    ensure(r.upper == Upper::Value(1) && r.lower == 1, || {
        format!("interval [{}, {:?}]", r.lower, r.upper)
    })?;
    let cert = r
        .replay(&d, SearchConfig::default().r3_depth)
        .map_err(|e| e.to_string())?;
    ensure(cert.is_trivial(), || "witness does not replay".into())?;
    let s = signature(&d).map_err(|e| e.to_string())?;
    ensure(s == 0, || format!("signature {s}"))?;
    Ok(format!("n_d=6, n in [1,1] ({cert:?}), signature 0"))
}

fn c5_torus_reversed() -> Result<String, String> {
    let d = torus_diagram(3, 3).unwrap().reverse_component(1).unwrap();
    let r = n_general_interval(&d, 2).map_err(|e| e.to_string())?;
    ensure(r.upper == Upper::Value(1), || {
        format!("upper {:?}", r.upper)
    })?;
    let cert = r
        .replay(&d, SearchConfig::default().r3_depth)
        .map_err(|e| e.to_string())?;
    ensure(cert.is_trivial(), || "witness does not replay".into())?;
    Ok(format!("upper 1 ({cert:?})"))
}

fn c6_eleven_a_263() -> Result<String, String> {
    let d = fixtures::get("11a_263").unwrap().diagram().unwrap();
    let r = n_diagram(&d).map_err(|e| e.to_string())?;
    ensure(r.value() == Some(8), || format!("n_D = {:?}", r.value()))?;
    let t = twist_region_bound(&d);
    ensure(
        t.parallel == vec![3, 3, 3, 2] && t.anti_parallel == 0 && t.single == 0,
        || format!("{t:?}"),
    )?;
    ensure(t.bound_c0 == 7 && t.bound_c1 == 8, || format!("{t:?}"))?;
    Ok("n_D=8, regions 3,3,3,2, bound 7 + c with c=1".into())
}

fn c7_montesinos() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = Vec::new();
    for _ in 0..200 {
        let p = MontesinosParams::random(&mut rng, 4, 9, 3);
        let m = montesinos_build(&p).map_err(|e| e.to_string())?;
        let direct = m.diagram.seifert_circles().count as i64;
        let formula = montesinos_seifert_count(&p).map_err(|e| e.to_string())?;
        if direct != formula || !m.type_is_consistent() {
            mismatches.push(format!("{p:?}: {formula} vs {direct}"));
        }
    }
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok("200 instances, 0 mismatches".into())
}

fn c8_fourplat_signature() -> Result<String, String> {
    let mut n = 0;
    for p in (3..=25i64).step_by(2) {
        for q in 1..p {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let f = Fraction::new(p, q).unwrap();
            let d = fourplat_diagram(&fraction_to_canonical_vector(f)).unwrap();
            let a = fourplat_signature(f).map_err(|e| e.to_string())?;
            let b = signature(&d).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{f}: formula {a}, Seifert matrix {b}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} fractions"))
}

fn c9_nullification_writhe() -> Result<String, String> {
    let cfg = SearchConfig::default();
    let set = reduced_alternating(8);
    let mut subsets = 0;
    for (f, d) in &set {
        let s = signature(d).map_err(|e| e.to_string())?;
        for w in nullification_writhes(d, &cfg).map_err(|e| e.to_string())? {
            ensure(s + w as i64 == 0, || {
                format!("{}: signature {s}, writhe {w}", f.name)
            })?;
            subsets += 1;
        }
    }
    Ok(format!("{} fixtures, {subsets} minimum subsets", set.len()))
}

fn c10_null_one() -> Result<String, String> {
    let cfg = SearchConfig::default();
    let t = enumerate_null_one(12, &cfg).map_err(|e| e.to_string())?;
    for r in &t.records {
        ensure(r.verified == Some(true), || {
            format!("unverified {:?}", r.vector)
        })?;
    }
    for (i, a) in t.records.iter().enumerate() {
        for b in &t.records[i + 1..] {
            ensure(!null_one_equivalent(a, b), || {
                format!("duplicate {:?} {:?}", a.vector, b.vector)
            })?;
        }
    }
    let six = enumerate_null_one(6, &cfg).map_err(|e| e.to_string())?;
    ensure(
        six.records
            .iter()
            .any(|r| (r.derived_p, r.derived_q) == (9, 4)),
        || "9/4 missing".into(),
    )?;
    Ok(format!(
        "{} records verified, counts {:?}",
        t.records.len(),
        t.counts
    ))
}

fn c11_bounds() -> Result<String, String> {
    let mut pinned = 0;
    let mut n = 0;
    for f in fixtures::all() {
        let depth = f
            .signature
            .map_or(2, |s| (s.unsigned_abs() as usize).max(2));
        let cfg = SearchConfig {
            depth,
            ..SearchConfig::default()
        };
        let r = check_bounds(&f, &cfg).map_err(|e| format!("{}: {e}", f.name))?;
        ensure(r.sigma_below_upper, || format!("{}: {r:?}", f.name))?;
        ensure(r.collapsed_to_pin, || {
            format!(
                "{}: pinned at {:?}, got [{}, {:?}]",
                f.name, r.pinned, r.lower, r.upper
            )
        })?;
        ensure(r.null_one_sigma_zero, || {
            format!("{}: n = 1 with nonzero signature", f.name)
        })?;
        pinned += r.pinned.is_some() as usize;
        n += 1;
    }
    Ok(format!("{n} fixtures, {pinned} pinned by |signature| = 2u"))
}

fn c12_properties() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut pairs = 0;
    while pairs < 1000 {
        let d = random_diagram(&mut rng, 9);
        let ids = d.crossing_ids();
        if ids.is_empty() {
            continue;
        }
        let id = ids[rng.gen_range(0..ids.len())];
        let s = d.smooth(id).unwrap();
        ensure(
            s.component_count().abs_diff(d.component_count()) == 1,
            || format!("components at {id}"),
        )?;
        ensure(
            s.seifert_circles().count == d.seifert_circles().count,
            || format!("Seifert circles at {id}"),
        )?;
        pairs += 1;
    }
    let mut polys = 0;
    for k in 1..=4 {
        ensure(jones(&LinkDiagram::unlink(k)) == unlink_jones(k), || {
            format!("unlink of {k}")
        })?;
    }
    while polys < 200 {
        let d = random_diagram(&mut rng, 7);
        let j = jones(&d);
        let with_circle = jones(&d.disjoint_union(&LinkDiagram::unknot()));
        ensure(with_circle == &j * &unlink_jones(2), || {
            "split union with a circle".into()
        })?;
        if d.simplify(2).crossing_count() == 0 {
            ensure(j == unlink_jones(d.component_count()), || {
                "trivial diagram".into()
            })?;
        }
        let h = homfly(&d).map_err(|e| e.to_string())?;
        ensure(h.jones_specialization() == Some(j), || {
            "HOMFLY specialization".into()
        })?;
        polys += 1;
    }
    for _ in 0..500 {
        let m = random_symmetric(&mut rng, 6);
        let a = signature_sigma_series(&m).map_err(|e| format!("{m:?}: {e}"))?;
        ensure(a == signature_diag(&m), || format!("{m:?}"))?;
    }
    Ok(format!(
        "{pairs} smoothings, {polys} polynomial checks, 500 matrices"
    ))
}

pub fn criteria() -> Vec<Criterion> {
    let checks: [(&str, fn() -> Result<String, String>); 12] = [
        ("exhaustive n_D equals Cr - s + 1 on reduced alternating fixtures up to 7 crossings", c1_exhaustive_vs_closed_form),
        ("HOMFLY z-degree equals Cr - s + 1 on the same fixtures", c2_homfly_degree),
        ("8_20 diagrams: n_D(M) = 1, n_D(N) = 2", c3_eight_twenty),
        ("10_22: n_d = 6, general number 1 with replayable witness, signature 0", c4_ten_twenty_two),
        ("T(3,3) with one component reversed: general upper bound 1", c5_torus_reversed),
        ("11a_263: n_D = 8, twist-region bound 7 + c", c6_eleven_a_263),
        ("Montesinos Seifert-circle formula on 200 seeded instances", c7_montesinos),
        ("4-plat signature formula vs Seifert matrix, p <= 25", c8_fourplat_signature),
        ("signature + nullification writhe = 0 on reduced alternating fixtures up to 8 crossings", c9_nullification_writhe),
        ("nullification-number-one enumeration verified up to 12 crossings", c10_null_one),
        ("|signature| <= n upper bound; intervals collapse where |signature| = 2u", c11_bounds),
        ("property suites: smoothing, Jones, HOMFLY, signature algorithms", c12_properties),
    ];
    checks
        .into_iter()
        .enumerate()
        .map(|(i, (name, run))| Criterion {
            number: i + 1,
            name,
            run,
        })
        .collect()
}

/// Closure of a random braid word on 2 to 4 strands.
pub fn random_diagram<R: Rng>(rng: &mut R, max_len: usize) -> LinkDiagram {
    let strands = rng.gen_range(2..=4usize);
    let len = rng.gen_range(1..=max_len);
    let word: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    braid_closure(strands, &word).expect("braid closure")
}

pub fn random_symmetric<R: Rng>(rng: &mut R, max_n: usize) -> Vec<Vec<i64>> {
    let n = rng.gen_range(1..=max_n);
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            // sparse entries so that singular minors actually occur
            let v = if rng.gen_bool(0.4) {
                0
            } else {
                rng.gen_range(-3..=3)
            };
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}
