//! Where diagrams come from: an inline code, a fixture, a braid word, or a
//! file with one diagram per line.

use std::path::PathBuf;

use clap::Args;
use nullify_core::{braid_closure, fixtures, parse_gauss, parse_pd, LinkDiagram};

use crate::failure::{usage, Failure, Outcome};

#[derive(Args, Debug, Default)]
pub struct Input {
    /// PD code, e.g. "X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]"
    #[arg(long)]
    pub pd: Option<String>,
    /// Signed Gauss code, e.g. "O1+ U2+ O3+ U1+ O2+ U3+"; components split by '/'
    #[arg(long)]
    pub gauss: Option<String>,
    /// Tabulated knot or link; "11a263" and "11a_263" both work
    #[arg(long)]
    pub fixture: Option<String>,
    /// Braid closure as STRANDS:WORD, e.g. "3:1,1,-2"
    #[arg(long)]
    pub braid: Option<String>,
    /// One diagram per line: "pd: ..", "gauss: ..", "fixture: ..", "braid: .." or a bare code
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Component count for PD codes with crossingless components
    #[arg(long)]
    pub components: Option<usize>,
}

pub struct Named {
    pub label: String,
    pub diagram: LinkDiagram,
}

fn normalize(name: &str) -> String {
    name.chars()
        .filter(|c| *c != '_' && !c.is_whitespace())
        .flat_map(char::to_lowercase)
        .collect()
}

/// A fixture or curated diagram by name, ignoring case and underscores.
pub fn fixture(name: &str) -> Outcome<Named> {
    let key = normalize(name);
    let mut hits: Vec<Named> = Vec::new();
    for f in fixtures::all() {
        if normalize(&f.name) == key {
            hits.push(Named {
                diagram: f.diagram()?,
                label: f.name,
            });
        }
    }
    for c in fixtures::curated_all() {
        if normalize(&c.name) == key {
            hits.push(Named {
                diagram: c.diagram()?,
                label: c.name,
            });
        }
    }
    match hits.len() {
        0 => usage(format!("unknown fixture {name:?}")),
        1 => Ok(hits.pop().unwrap()),
        _ => usage(format!(
            "fixture name {name:?} is ambiguous: {}",
            hits.iter()
                .map(|h| h.label.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        )),
    }
}

fn braid(spec: &str) -> Outcome<LinkDiagram> {
    let bad = || Failure::Usage(format!("braid must look like 3:1,-2,1, got {spec:?}"));
    let (n, w) = spec.split_once(':').ok_or_else(bad)?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    let word = w
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<i32>().map_err(|_| bad()))
        .collect::<Outcome<Vec<_>>>()?;
    Ok(braid_closure(n, &word)?)
}

fn pd(text: &str, components: Option<usize>) -> Outcome<LinkDiagram> {
    Ok(parse_pd(text, components)?)
}

/// One line of an input file: `pd: ...`, `gauss: ...`, `fixture: ...`,
/// `braid: ...`, or a bare code (PD when it contains a bracket).
fn line(text: &str, components: Option<usize>) -> Outcome<Named> {
    let label = text.to_string();
    let diagram = match text.split_once(':') {
        Some(("pd", rest)) => pd(rest, components)?,
        Some(("gauss", rest)) => parse_gauss(rest.trim())?,
        Some(("fixture", rest)) => return fixture(rest.trim()),
        Some(("braid", rest)) => braid(rest.trim())?,
        _ if text.contains('[') => pd(text, components)?,
        _ => parse_gauss(text)?,
    };
    Ok(Named { label, diagram })
}

impl Input {
    pub fn load(&self) -> Outcome<Vec<Named>> {
        let given = [
            self.pd.is_some(),
            self.gauss.is_some(),
            self.fixture.is_some(),
            self.braid.is_some(),
            self.file.is_some(),
        ];
        match given.iter().filter(|g| **g).count() {
            0 => return usage("give one of --pd, --gauss, --fixture, --braid, --file"),
            1 => {}
            _ => return usage("give only one of --pd, --gauss, --fixture, --braid, --file"),
        }
        if let Some(t) = &self.pd {
            return Ok(vec![Named {
                label: "pd".into(),
                diagram: pd(t, self.components)?,
            }]);
        }
        if let Some(t) = &self.gauss {
            return Ok(vec![Named {
                label: "gauss".into(),
                diagram: parse_gauss(t)?,
            }]);
        }
        if let Some(t) = &self.fixture {
            return Ok(vec![fixture(t)?]);
        }
        if let Some(t) = &self.braid {
            return Ok(vec![Named {
                label: format!("braid {t}"),
                diagram: braid(t)?,
            }]);
        }
        let path = self.file.as_ref().unwrap();
        let text = std::fs::read_to_string(path)
            .or_else(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        let mut out = Vec::new();
        for (n, l) in text.lines().enumerate() {
            let l = l.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            out.push(line(l, self.components).map_err(|f| match f {
                Failure::Usage(m) => Failure::Usage(format!("{}:{}: {m}", path.display(), n + 1)),
                other => other,
            })?);
        }
        if out.is_empty() {
            return usage(format!("{} holds no diagrams", path.display()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_normalize_uniquely() {
        let mut seen = std::collections::HashSet::new();
        for f in fixtures::all() {
            assert!(seen.insert(normalize(&f.name)), "{}", f.name);
        }
        for c in fixtures::curated_all() {
            assert!(seen.insert(normalize(&c.name)), "{}", c.name);
        }
        assert_eq!(fixture("11a263").unwrap().label, "11a_263");
        assert_eq!(fixture("8_20_m").unwrap().label, "8_20_M");
        assert!(matches!(fixture("12n_1"), Err(Failure::Usage(_))));
    }

    #[test]
    fn file_lines() {
        assert_eq!(
            line("fixture: 3_1", None).unwrap().diagram.crossing_count(),
            3
        );
        assert_eq!(
            line("braid: 2:1,1,1", None)
                .unwrap()
                .diagram
                .crossing_count(),
            3
        );
        assert_eq!(
            line("O1+ U2+ O3+ U1+ O2+ U3+", None)
                .unwrap()
                .diagram
                .crossing_count(),
            3
        );
        assert!(line("X[1,2", None).is_err());
    }
}
