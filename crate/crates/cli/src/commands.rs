use clap::{Args, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use nullify_core::engine::{
    n_d_alternating, n_diagram_with, n_general_interval_with, nullification_writhes, NullResult,
};
use nullify_core::enumeration::{
    count_high_null, count_high_null_unordered, enumerate_null_one, family_vectors, verify_family,
    write_null_one_csv, Family,
};
use nullify_core::laurent::LaurentPoly1;
use nullify_core::montesinos::{
    montesinos_build, montesinos_nd_bound, montesinos_seifert_count, MontesinosParams,
};
use nullify_core::polynomials::{conway, homfly_with_budget, jones};
use nullify_core::rational::{
    cf_to_fraction, classify_parallel_antiparallel, even_expansion, fourplat_crossing_number,
    fourplat_diagram, fourplat_nd, fourplat_nd_all, fourplat_signature,
    fraction_to_canonical_vector, Fraction,
};
use nullify_core::seifert::{genus_alternating, seifert_matrix, signature};
use nullify_core::{serialize_gauss, serialize_pd, suite, LinkDiagram};

use crate::cache::Cache;
use crate::config::{Format, Settings};
use crate::failure::{usage, Outcome};
use crate::input::{Input, Named};

pub struct Report {
    pub items: Vec<Value>,
    pub batch: bool,
    /// a check ran and did not hold; exit 1 after printing
    pub failed: bool,
    /// preformatted output that bypasses rendering
    pub raw: Option<String>,
}

impl Report {
    fn new(items: Vec<Value>, batch: bool) -> Self {
        Report {
            items,
            batch,
            failed: false,
            raw: None,
        }
    }
}

/// Map over inputs on the current pool; results stay in input order and the
/// first failure in that order wins.
fn each<T, F>(xs: &[T], f: F) -> Outcome<Vec<Value>>
where
    T: Sync,
    F: Fn(&T) -> Outcome<Value> + Sync + Send,
{
    xs.par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("reports are objects"),
    }
}

fn batch_of(inputs: &[Named]) -> bool {
    inputs.len() > 1
}

pub fn parse(input: &Input, _s: &Settings) -> Outcome<Report> {
    let xs = input.load()?;
    let items = each(&xs, |n| {
        let d = &n.diagram;
        Ok(json!({
            "label": n.label,
            "crossings": d.crossing_count(),
            "components": d.component_count(),
            "writhe": d.writhe(),
            "alternating": d.is_alternating(),
            "reduced": d.is_reduced(),
            "pd": serialize_pd(d),
            "gauss": serialize_gauss(d),
        }))
    })?;
    Ok(Report::new(items, batch_of(&xs)))
}

fn genus_value(n_d: usize, nu: usize) -> Value {
    let g = genus_alternating(n_d as i64, nu as i64);
    if g.integral {
        json!(g.numer)
    } else {
        json!(format!("{}/{}", g.numer, g.denom))
    }
}

/// Conway polynomial as a polynomial in `z`.
fn in_z(p: &LaurentPoly1) -> String {
    let terms: Vec<String> = p
        .terms()
        .map(|(e, c)| match e / 2 {
            0 => c.to_string(),
            1 => format!("{c}*z"),
            k => format!("{c}*z^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn invariants(input: &Input, s: &Settings) -> Outcome<Report> {
    let xs = input.load()?;
    let items = each(&xs, |n| {
        let d = &n.diagram;
        let h = homfly_with_budget(d, s.homfly_budget)?;
        let alt_genus = (d.is_alternating() && d.is_reduced() && !d.is_split_drawn())
            .then(|| n_d_alternating(d).ok())
            .flatten()
            .map(|nd| genus_value(nd, d.component_count()));
        Ok(json!({
            "label": n.label,
            "crossings": d.crossing_count(),
            "components": d.component_count(),
            "writhe": d.writhe(),
            "s": d.seifert_circles().count,
            "jones": jones(d).to_string(),
            "homfly": h.to_string(),
            "conway": in_z(&conway(&h)),
            "signature": signature(d).ok(),
            "seifert_genus": seifert_matrix(d).ok().map(|m| m.genus),
            "genus": alt_genus,
        }))
    })?;
    Ok(Report::new(items, batch_of(&xs)))
}

#[derive(Args, Debug)]
pub struct NulldiagArgs {
    #[command(flatten)]
    input: Input,
    /// Also list the writhe of every minimal nullification
    #[arg(long)]
    writhes: bool,
}

fn null_json(label: &str, r: &NullResult) -> Value {
    let mut m = object(serde_json::to_value(r).expect("results serialize"));
    m.insert("label".into(), json!(label));
    m.insert("value".into(), json!(r.value()));
    Value::Object(m)
}

/// Cached search over a batch. Keys carry the settings the result depends
/// on; labels are attached after lookup.
fn searched<F>(name: &str, xs: &[Named], s: &Settings, key_extra: &str, f: F) -> Outcome<Vec<Value>>
where
    F: Fn(&LinkDiagram) -> Outcome<Value> + Sync + Send,
{
    let mut cache = if s.cache {
        Cache::open(name)
    } else {
        Cache::disabled()
    };
    let c = &s.search;
    let key = |d: &LinkDiagram| {
        format!(
            "{}|{}|{}|{}|{}|{}|{key_extra}",
            serialize_pd(d),
            d.component_count(),
            c.crossing_limit,
            c.r3_depth,
            c.depth,
            c.r2_widening
        )
    };
    let found: Vec<(String, Option<Value>)> = xs
        .iter()
        .map(|n| {
            let k = key(&n.diagram);
            let hit = cache.get(&k).cloned();
            (k, hit)
        })
        .collect();
    let results: Vec<Outcome<(Value, bool)>> = xs
        .par_iter()
        .zip(&found)
        .map(|(n, (_, hit))| match hit {
            Some(v) => Ok((v.clone(), false)),
            None => f(&n.diagram).map(|v| (v, true)),
        })
        .collect();
    let mut out = Vec::with_capacity(xs.len());
    for ((n, (k, _)), r) in xs.iter().zip(found).zip(results) {
        let (v, fresh) = r?;
        if fresh {
            cache.put(k, v.clone());
        }
        let mut m = object(v);
        m.insert("label".into(), json!(n.label));
        out.push(Value::Object(m));
    }
    cache.save();
    Ok(out)
}

pub fn nulldiag(a: &NulldiagArgs, s: &Settings) -> Outcome<Report> {
    let xs = a.input.load()?;
    let items = searched("nulldiag", &xs, s, &a.writhes.to_string(), |d| {
        let r = n_diagram_with(d, &s.search)?;
        let mut m = object(null_json("", &r));
        if a.writhes {
            m.insert(
                "writhes".into(),
                json!(nullification_writhes(d, &s.search)?),
            );
        }
        Ok(Value::Object(m))
    })?;
    Ok(Report::new(items, batch_of(&xs)))
}

pub fn nullbound(input: &Input, s: &Settings) -> Outcome<Report> {
    let xs = input.load()?;
    let items = searched("nullbound", &xs, s, "", |d| {
        Ok(null_json("", &n_general_interval_with(d, &s.search)?))
    })?;
    Ok(Report::new(items, batch_of(&xs)))
}

#[derive(Args, Debug)]
pub struct FourplatArgs {
    /// Fraction p/q, e.g. 25/18
    #[arg(long, allow_hyphen_values = true)]
    fraction: Option<String>,
    /// Continued fraction vector a_1,...,a_n
    #[arg(long, allow_hyphen_values = true)]
    vector: Option<String>,
    /// Every closed form, not just the diagram numbers
    #[arg(long)]
    all: bool,
    /// Also run the exhaustive search and compare
    #[arg(long)]
    check: bool,
}

fn integers(text: &str, what: &str) -> Outcome<Vec<i64>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .or_else(|_| usage(format!("{what}: {t:?} is not an integer")))
        })
        .collect()
}

fn fraction(text: &str) -> Outcome<Fraction> {
    let Some((p, q)) = text.split_once('/') else {
        return usage(format!("fraction must look like p/q, got {text:?}"));
    };
    let num = p
        .trim()
        .parse()
        .or_else(|_| usage(format!("bad numerator in {text:?}")))?;
    let den = q
        .trim()
        .parse()
        .or_else(|_| usage(format!("bad denominator in {text:?}")))?;
    Ok(Fraction::new(num, den)?)
}

pub fn fourplat(a: &FourplatArgs, s: &Settings) -> Outcome<Report> {
    let (vector, f) = match (&a.vector, &a.fraction) {
        (Some(v), None) => {
            let v = integers(v, "vector")?;
            if v.is_empty() {
                return usage("vector is empty");
            }
            let f = cf_to_fraction(&v)?;
            (v, f)
        }
        (None, Some(t)) => {
            let f = fraction(t)?;
            if f.p() == 0 || f.den == 0 {
                return usage(format!("fraction {f} is not a 4-plat"));
            }
            (fraction_to_canonical_vector(f), f)
        }
        _ => return usage("give exactly one of --vector, --fraction"),
    };
    let d = fourplat_diagram(&vector)?;
    let canonical = fraction_to_canonical_vector(f);
    let mut m = Map::new();
    m.insert("vector".into(), json!(vector));
    m.insert("fraction".into(), json!(f.to_string()));
    m.insert("p".into(), json!(f.p()));
    m.insert("q".into(), json!(f.q_mod_p()));
    m.insert("canonical_vector".into(), json!(canonical));
    m.insert("components".into(), json!(d.component_count()));
    m.insert("crossings".into(), json!(d.crossing_count()));
    let nd = fourplat_nd(&vector)?;
    m.insert("n_d".into(), json!(nd));
    if a.all {
        let knot = f.is_knot();
        let even = if knot { Some(even_expansion(f)?) } else { None };
        let sigma = match knot {
            true => Some(fourplat_signature(f)?),
            false => signature(&d).ok(),
        };
        m.insert("n_d_all".into(), json!(fourplat_nd_all(&vector)?));
        m.insert(
            "pa_splits".into(),
            json!(classify_parallel_antiparallel(&vector)?),
        );
        m.insert("signature".into(), json!(sigma));
        m.insert("even_expansion".into(), json!(even));
        m.insert("genus".into(), json!(even.as_ref().map(|e| e.len() / 2)));
        // the canonical vector is reduced alternating
        m.insert(
            "crossing_number".into(),
            json!(canonical.iter().sum::<i64>()),
        );
        let even_cr = even.as_ref().and_then(|e| fourplat_crossing_number(e).ok());
        m.insert("crossing_number_even".into(), json!(even_cr));
        m.insert("seifert_circles".into(), json!(d.seifert_circles().count));
    }
    let mut failed = false;
    if a.check {
        let r = n_diagram_with(&d, &s.search)?;
        let agree = r.value() == Some(nd as usize);
        failed = !agree;
        m.insert("n_d_search".into(), json!(r.value()));
        m.insert("agree".into(), json!(agree));
    }
    Ok(Report {
        failed,
        ..Report::new(vec![Value::Object(m)], false)
    })
}

#[derive(Args, Debug)]
pub struct MontesinosArgs {
    /// {"tangles":[[..],..],"e":n} or {"fractions":[[b,a],..],"e":n};
    /// may be repeated, "reversed" lists components to flip
    #[arg(long)]
    params: Vec<String>,
    /// Check this many random instances drawn from --seed
    #[arg(long)]
    random: Option<usize>,
    /// Also compare the bound with an exhaustive search
    #[arg(long)]
    search: bool,
}

fn montesinos_params(text: &str) -> Outcome<MontesinosParams> {
    let v: Value = serde_json::from_str(text).or_else(|e| usage(format!("params: {e}")))?;
    let e = v.get("e").and_then(Value::as_i64).unwrap_or(0);
    let reversed: Vec<usize> = match v.get("reversed") {
        None => Vec::new(),
        Some(r) => {
            serde_json::from_value(r.clone()).or_else(|e| usage(format!("reversed: {e}")))?
        }
    };
    let mut p = match (v.get("tangles"), v.get("fractions")) {
        (Some(t), None) => MontesinosParams::new(
            serde_json::from_value(t.clone()).or_else(|e| usage(format!("tangles: {e}")))?,
            e,
        ),
        (None, Some(f)) => {
            let pairs: Vec<(i64, i64)> =
                serde_json::from_value(f.clone()).or_else(|e| usage(format!("fractions: {e}")))?;
            MontesinosParams::from_fractions(&pairs, e)?
        }
        _ => return usage("params need exactly one of \"tangles\", \"fractions\""),
    };
    p.reversed = reversed;
    p.validate()?;
    Ok(p)
}

fn montesinos_report(p: &MontesinosParams, search: bool, s: &Settings) -> Outcome<(Value, bool)> {
    let m = montesinos_build(p)?;
    let d = &m.diagram;
    let direct = d.seifert_circles().count as i64;
    let formula = montesinos_seifert_count(p)?;
    let bound = montesinos_nd_bound(p)?;
    let exact = (d.is_alternating() && d.is_reduced())
        .then(|| n_d_alternating(d).ok())
        .flatten();
    let searched = if search && d.crossing_count() <= s.search.crossing_limit {
        n_diagram_with(d, &s.search)?.value()
    } else {
        None
    };
    let mut ok = direct == formula;
    if let Some(e) = exact {
        ok &= e as i64 == bound;
    }
    if let Some(n) = searched {
        ok &= n as i64 <= bound;
    }
    let fractions: Vec<String> = p.fractions()?.iter().map(|f| f.to_string()).collect();
    let v = json!({
        "params": p,
        "fractions": fractions,
        "type": m.kind(),
        "consistent": m.type_is_consistent(),
        "crossings": d.crossing_count(),
        "components": d.component_count(),
        "alternating": d.is_alternating(),
        "seifert_circles": direct,
        "seifert_formula": formula,
        "nd_bound": bound,
        "n_d_alternating": exact,
        "n_d_search": searched,
        "holds": ok,
    });
    Ok((v, ok))
}

pub fn montesinos(a: &MontesinosArgs, s: &Settings) -> Outcome<Report> {
    let mut ps = a
        .params
        .iter()
        .map(|t| montesinos_params(t))
        .collect::<Outcome<Vec<_>>>()?;
    if let Some(k) = a.random {
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        ps.extend((0..k).map(|_| MontesinosParams::random(&mut rng, 3, 5, 2)));
    }
    if ps.is_empty() {
        return usage("give --params or --random");
    }
    let done: Vec<(Value, bool)> = ps
        .par_iter()
        .map(|p| montesinos_report(p, a.search, s))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Outcome<_>>()?;
    let failed = done.iter().any(|(_, ok)| !ok);
    let items = done.into_iter().map(|(v, _)| v).collect();
    Ok(Report {
        failed,
        ..Report::new(items, ps.len() > 1)
    })
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyKind {
    A,
    B,
}

#[derive(Subcommand, Debug)]
pub enum EnumerateCmd {
    /// Knots with nullification number one, derived from rational knots
    NullOne {
        /// Largest derived crossing number (at most 24)
        #[arg(long, default_value_t = 12)]
        max_cr: i64,
    },
    /// Number of even 4-plat vectors of length k reaching crossing number m
    HighNull {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        k: i64,
    },
    /// Check that a two-parameter family member nullifies in one step
    Family {
        #[arg(long, value_enum)]
        kind: FamilyKind,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
    },
}

pub fn enumerate(e: &EnumerateCmd, s: &Settings) -> Outcome<Report> {
    match *e {
        EnumerateCmd::NullOne { max_cr } => {
            let t = enumerate_null_one(max_cr, &s.search)?;
            let raw = match s.format {
                Format::Json => serde_json::to_string_pretty(&t).expect("table serializes") + "\n",
                Format::Csv | Format::Text => {
                    let mut buf = Vec::new();
                    write_null_one_csv(&t, &mut buf)?;
                    String::from_utf8(buf).expect("csv is utf8")
                }
            };
            Ok(Report {
                raw: Some(raw),
                ..Report::new(vec![], false)
            })
        }
        EnumerateCmd::HighNull { m, k } => {
            let v = json!({
                "m": m,
                "k": k,
                "ordered": count_high_null(m, k)?,
                "unordered": count_high_null_unordered(m, k)?,
            });
            Ok(Report::new(vec![v], false))
        }
        EnumerateCmd::Family { kind, a, b } => {
            let kind = match kind {
                FamilyKind::A => Family::A,
                FamilyKind::B => Family::B,
            };
            let vector = family_vectors(kind, a, b)?;
            let upper = verify_family(kind, a, b, &s.search)?;
            let holds = upper.value() == Some(1);
            let v = json!({
                "kind": kind,
                "a": a,
                "b": b,
                "vector": vector,
                "upper": upper,
                "holds": holds,
            });
            Ok(Report {
                failed: !holds,
                ..Report::new(vec![v], false)
            })
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only this criterion
    #[arg(long)]
    only: Option<usize>,
}

pub fn verify(a: &VerifyArgs, s: &Settings) -> Outcome<Report> {
    let all = suite::criteria();
    if let Some(k) = a.only {
        if !all.iter().any(|c| c.number == k) {
            return usage(format!("no criterion {k}; there are {}", all.len()));
        }
    }
    let mut items = Vec::new();
    let mut lines = String::new();
    for c in all.iter().filter(|c| a.only.is_none_or(|k| k == c.number)) {
        let o = c.check();
        let status = if o.passed { "PASS" } else { "FAIL" };
        lines.push_str(&format!(
            "criterion {:>2} {status} {}: {}\n",
            c.number, c.name, o.detail
        ));
        items.push(json!({ "criterion": c.number, "name": c.name, "passed": o.passed, "detail": o.detail }));
    }
    let failed = items.iter().any(|v| v["passed"] == json!(false));
    let raw = (s.format == Format::Text).then_some(lines);
    Ok(Report {
        items,
        batch: true,
        failed,
        raw,
    })
}
