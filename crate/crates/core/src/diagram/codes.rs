//! PD and signed Gauss codes.

use std::collections::BTreeMap;

use super::build::{RawCrossing, RawDiagram};
use super::{Crossing, LinkDiagram, Sign};
use crate::error::{Error, Result};

fn parse_tuple(body: &str) -> Result<[u32; 4]> {
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!("expected 4 labels in X[{body}]")));
    }
    let mut out = [0u32; 4];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad arc label {p:?}")))?;
    }
    Ok(out)
}

enum PdToken {
    Cross([u32; 4]),
    Loop,
}

fn tokenize_pd(text: &str) -> Result<Vec<PdToken>> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix("PD[") {
        s = rest
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse("unterminated PD[".into()))?;
    }
    let mut out = Vec::new();
    let mut rest = s;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if rest.is_empty() {
            break;
        }
        let (head, tail) = if let Some(t) = rest.strip_prefix("X[") {
            ("X", t)
        } else if let Some(t) = rest.strip_prefix("Loop[") {
            ("Loop", t)
        } else {
            let tok: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
            return Err(Error::Parse(format!("malformed token {tok:?}")));
        };
        let close = tail
            .find(']')
            .ok_or_else(|| Error::Parse(format!("unterminated {head}[")))?;
        let body = &tail[..close];
        match head {
            "X" => out.push(PdToken::Cross(parse_tuple(body)?)),
            _ if body.trim().is_empty() => out.push(PdToken::Loop),
            _ => {
                return Err(Error::Parse(format!(
                    "Loop[] takes no labels, got {body:?}"
                )))
            }
        }
        rest = &tail[close + 1..];
    }
    Ok(out)
}

/// Parse a PD code. `components` supplies the component count when the
/// code alone does not determine it (zero-crossing input, or extra
/// crossingless components).
pub fn parse_pd(text: &str, components: Option<usize>) -> Result<LinkDiagram> {
    let mut raw = RawDiagram::default();
    for tok in tokenize_pd(text)? {
        match tok {
            PdToken::Cross(ports) => {
                let id = raw.crossings.len() as u32 + 1;
                raw.crossings.push(RawCrossing {
                    id,
                    ports,
                    under_even: true,
                });
            }
            PdToken::Loop => raw.free_loops += 1,
        }
    }
    let seeds: Vec<(usize, usize)> = (0..raw.crossings.len()).map(|i| (i, 0)).collect();
    let (mut d, _) = raw.orient(&seeds, &label_succession)?;
    let have = d.component_count();
    match components {
        None if have == 0 => d.free_loops = 1,
        None => {}
        Some(0) => return Err(Error::Invalid("a link has at least one component".into())),
        Some(k) if k >= have => d.free_loops += k - have,
        Some(k) => {
            return Err(Error::Invalid(format!(
                "code has {have} components but {k} were requested"
            )))
        }
    }
    Ok(d)
}

/// Direction rule for components with no under-pass: labels increase along
/// the orientation (wrapping from the largest to the smallest). A two-edge
/// component reads the same both ways; it then steps up at the first
/// crossing of the walk.
fn label_succession(labels: &[u32]) -> bool {
    if labels.len() < 2 {
        return true;
    }
    let pairs = || labels.iter().zip(labels.iter().cycle().skip(1));
    let ups = pairs().filter(|(a, b)| **b == **a + 1).count();
    let downs = pairs().filter(|(a, b)| **a == **b + 1).count();
    if ups != downs {
        return ups > downs;
    }
    labels[0] < labels[1]
}

pub fn serialize_pd(d: &LinkDiagram) -> String {
    let mut parts: Vec<String> = d
        .crossings()
        .iter()
        .map(|c| {
            format!(
                "X[{},{},{},{}]",
                c.slots[0], c.slots[1], c.slots[2], c.slots[3]
            )
        })
        .collect();
    for _ in 0..d.free_loops() {
        parts.push("Loop[]".into());
    }
    parts.join(" ")
}

#[derive(Clone, Copy, Debug)]
struct GaussToken {
    over: bool,
    id: u32,
    sign: Sign,
}

fn parse_gauss_token(tok: &str) -> Result<GaussToken> {
    let bad = || Error::Parse(format!("malformed token {tok:?}"));
    let mut chars = tok.chars();
    let over = match chars.next() {
        Some('O') | Some('o') => true,
        Some('U') | Some('u') => false,
        _ => return Err(bad()),
    };
    let rest: &str = chars.as_str();
    let sign_char = rest.chars().last().ok_or_else(bad)?;
    let sign = match sign_char {
        '+' => Sign::Positive,
        '-' | '\u{2212}' => Sign::Negative,
        _ => return Err(bad()),
    };
    let digits = &rest[..rest.len() - sign_char.len_utf8()];
    let id: u32 = digits.parse().map_err(|_| bad())?;
    Ok(GaussToken { over, id, sign })
}

/// Parse a signed Gauss code; components are separated by `/` and an empty
/// component is a crossingless circle.
pub fn parse_gauss(text: &str) -> Result<LinkDiagram> {
    let comps: Vec<Vec<GaussToken>> = text
        .split('/')
        .map(|c| c.split_whitespace().map(parse_gauss_token).collect())
        .collect::<Result<_>>()?;

    // (position of under visit, position of over visit, signs seen)
    #[derive(Default)]
    struct Seen {
        under: Vec<(usize, usize)>,
        over: Vec<(usize, usize)>,
        signs: Vec<Sign>,
    }
    let mut seen: BTreeMap<u32, Seen> = BTreeMap::new();
    for (ci, comp) in comps.iter().enumerate() {
        for (j, t) in comp.iter().enumerate() {
            let e = seen.entry(t.id).or_default();
            if t.over {
                e.over.push((ci, j));
            } else {
                e.under.push((ci, j));
            }
            e.signs.push(t.sign);
        }
    }
    for (&id, s) in &seen {
        if s.signs.len() > 2 {
            return Err(Error::RepeatedCrossing(id));
        }
    }
    if let Some((&id, _)) = seen
        .iter()
        .rev()
        .find(|(_, s)| s.under.len() != 1 || s.over.len() != 1)
    {
        return Err(Error::IncompleteCrossing(id));
    }
    for (&id, s) in &seen {
        if s.signs[0] != s.signs[1] {
            return Err(Error::SignMismatch(id));
        }
    }

    let mut offsets = Vec::with_capacity(comps.len());
    let mut next = 1u32;
    for comp in &comps {
        offsets.push(next);
        next += comp.len() as u32;
    }
    // edge j of a component runs from token j to token j+1
    let in_edge = |(ci, j): (usize, usize)| {
        let m = comps[ci].len();
        offsets[ci] + ((j + m - 1) % m) as u32
    };
    let out_edge = |(ci, j): (usize, usize)| offsets[ci] + j as u32;

    let mut crossings = Vec::with_capacity(seen.len());
    let mut free_loops = 0;
    for comp in &comps {
        if comp.is_empty() {
            free_loops += 1;
        }
    }
    for (&id, s) in &seen {
        let (u, o) = (s.under[0], s.over[0]);
        let sign = s.signs[0];
        let slots = match sign {
            Sign::Positive => [in_edge(u), out_edge(o), out_edge(u), in_edge(o)],
            Sign::Negative => [in_edge(u), in_edge(o), out_edge(u), out_edge(o)],
        };
        crossings.push(Crossing { id, slots, sign });
    }
    LinkDiagram::new(crossings, free_loops)
}

pub fn serialize_gauss(d: &LinkDiagram) -> String {
    let ends = d.edge_ends();
    let mut comps: Vec<String> = d
        .crossing_components()
        .iter()
        .map(|labels| {
            labels
                .iter()
                .map(|l| {
                    let (ci, s) = ends[l].1;
                    let c = &d.crossings()[ci];
                    let kind = if Crossing::is_over(s) { 'O' } else { 'U' };
                    format!("{kind}{}{}", c.id, c.sign.symbol())
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    for _ in 0..d.free_loops() {
        comps.push(String::new());
    }
    comps.join(" / ").trim().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn parses_trefoil() {
        let d = parse_pd(TREFOIL, None).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert!(d.crossings().iter().all(|c| c.sign == Sign::Negative));
    }

    #[test]
    fn wrapper_and_commas_accepted() {
        let d = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]", None).unwrap();
        assert_eq!(d, parse_pd(TREFOIL, None).unwrap());
    }

    #[test]
    fn empty_code_is_unlink() {
        assert_eq!(parse_pd("", None).unwrap().component_count(), 1);
        assert_eq!(parse_pd("", Some(1)).unwrap().component_count(), 1);
        assert_eq!(parse_pd("  ", Some(3)).unwrap().component_count(), 3);
    }

    #[test]
    fn unpaired_label_rejected() {
        let err = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,7]", None).unwrap_err();
        assert!(err.to_string().contains("unpaired arc label"), "{err}");
    }

    #[test]
    fn malformed_token_rejected() {
        assert!(matches!(parse_pd("X[1,2,3]", None), Err(Error::Parse(_))));
        assert!(matches!(parse_pd("Y[1,2,3,4]", None), Err(Error::Parse(_))));
    }

    #[test]
    fn incoherent_orientation_rejected() {
        // both under-strands of the pair claim edge 1 as incoming
        let err = parse_pd("X[1,3,2,4] X[1,4,2,3]", None).unwrap_err();
        assert!(matches!(err, Error::Orientation(_)), "{err}");
    }

    #[test]
    fn pd_round_trip() {
        let d = parse_pd(TREFOIL, None).unwrap();
        assert_eq!(parse_pd(&serialize_pd(&d), None).unwrap(), d);
        let two = d.disjoint_union(&LinkDiagram::unknot());
        assert_eq!(
            parse_pd(&serialize_pd(&two), None).unwrap().renumbered(),
            two.renumbered()
        );
    }

    #[test]
    fn gauss_trefoil() {
        let d = parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), 3);
        let again = parse_gauss(&serialize_gauss(&d)).unwrap();
        assert_eq!(again.writhe(), 3);
        assert_eq!(again.crossing_count(), 3);
    }

    #[test]
    fn gauss_kink() {
        let d = parse_gauss("O1+ U1+").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert!(!d.is_reduced());
    }

    #[test]
    fn gauss_errors() {
        assert_eq!(parse_gauss("O1+ U2-"), Err(Error::IncompleteCrossing(2)));
        assert_eq!(parse_gauss("O1+ U1-"), Err(Error::SignMismatch(1)));
        assert_eq!(parse_gauss("O1+ U1+ O1+"), Err(Error::RepeatedCrossing(1)));
        // interleaved pair 1 2 1 2 with crossings of one sign cannot be drawn
        assert_eq!(parse_gauss("O1+ O2+ U1+ U2+"), Err(Error::NonPlanar));
    }

    #[test]
    fn gauss_multi_component() {
        let hopf = parse_gauss("O1+ U2+ / U1+ O2+").unwrap();
        assert_eq!(hopf.component_count(), 2);
        assert_eq!(hopf.writhe(), 2);
        let with_loop = parse_gauss("O1+ U2+ / U1+ O2+ /").unwrap();
        assert_eq!(with_loop.component_count(), 3);
    }
}
