//! Tabulated knots and links shipped with the crate.
//!
//! The table is generated by `tools/gen_fixtures.py` from the KnotInfo and
//! LinkInfo databases: prime knots through 9 crossings (plus 10_22 and
//! 11a_263) and prime links through 7 crossings.

use serde::Deserialize;

use crate::diagram::codes::parse_pd;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly1;

const TABLE: &str = include_str!("../data/fixtures.csv");
const CURATED: &str = include_str!("../data/curated.csv");

#[derive(Clone, Debug, Deserialize)]
struct Row {
    name: String,
    pd_code: String,
    crossing_number: usize,
    components: usize,
    alternating: bool,
    signature: Option<i32>,
    unknotting_number: Option<u32>,
    jones: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub pd_code: String,
    pub crossing_number: usize,
    pub components: usize,
    pub alternating: bool,
    pub signature: Option<i32>,
    pub unknotting_number: Option<u32>,
    pub jones: Option<LaurentPoly1>,
}

impl Fixture {
    pub fn diagram(&self) -> Result<LinkDiagram> {
        parse_pd(&self.pd_code, Some(self.components))
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }
}

fn parse_table(text: &str) -> Result<Vec<Fixture>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in rdr.deserialize::<Row>() {
        let r = rec.map_err(|e| Error::Parse(format!("fixture table: {e}")))?;
        let jones = match r.jones.as_deref() {
            Some(s) if !s.is_empty() => Some(LaurentPoly1::parse(s)?),
            _ => None,
        };
        out.push(Fixture {
            name: r.name,
            pd_code: r.pd_code,
            crossing_number: r.crossing_number,
            components: r.components,
            alternating: r.alternating,
            signature: r.signature,
            unknotting_number: r.unknotting_number,
            jones,
        });
    }
    Ok(out)
}

/// All shipped fixtures, in table order.
pub fn all() -> Vec<Fixture> {
    parse_table(TABLE).expect("shipped fixture table parses")
}

pub fn get(name: &str) -> Result<Fixture> {
    all()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

/// A hand-picked diagram of a tabulated knot, pinned exactly.
#[derive(Clone, Debug, Deserialize)]
pub struct Curated {
    pub name: String,
    /// name of the tabulated knot it represents
    pub knot: String,
    pub pd_code: String,
    pub note: String,
}

impl Curated {
    pub fn diagram(&self) -> Result<LinkDiagram> {
        parse_pd(&self.pd_code, None)
    }
}

pub fn curated_all() -> Vec<Curated> {
    csv::Reader::from_reader(CURATED.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .expect("shipped curated table parses")
}

pub fn curated(name: &str) -> Result<Curated> {
    curated_all()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_loads() {
        let all = all();
        assert!(all.len() > 120);
        let t = get("3_1").unwrap();
        assert_eq!(t.crossing_number, 3);
        assert_eq!(t.signature, Some(-2));
        assert!(get("nope").is_err());
        assert_eq!(get("0_1").unwrap().diagram().unwrap().component_count(), 1);
    }

    #[test]
    fn curated_match_their_knots() {
        for c in curated_all() {
            let d = c.diagram().unwrap();
            let knot = get(&c.knot).unwrap();
            assert_eq!(
                Some(crate::polynomials::jones(&d)),
                knot.jones,
                "{}",
                c.name
            );
        }
    }
}
