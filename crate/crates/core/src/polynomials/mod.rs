//! Polynomial invariants: Jones, HOMFLY, Conway, and the triviality test
//! used by the nullification search.

mod homfly;
mod jones;

pub use homfly::{delta, homfly, homfly_with_budget, unlink_homfly, DEFAULT_HOMFLY_BUDGET};
pub use jones::{jones, kauffman_bracket, unlink_jones};

use serde::Serialize;

use crate::diagram::moves::DEFAULT_R3_DEPTH;
use crate::diagram::LinkDiagram;
use crate::laurent::{LaurentPoly1, LaurentPoly2};

/// Conway polynomial `P(1, z)`; the result is a polynomial in `z` stored
/// with doubled exponents like every [`LaurentPoly1`].
pub fn conway(p: &LaurentPoly2) -> LaurentPoly1 {
    p.at_v_one()
}

/// Degree in `z`; `None` stands for the zero polynomial.
pub fn max_z_degree(p: &LaurentPoly2) -> Option<i64> {
    p.max_z()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Triviality {
    /// Simplification reached a crossingless diagram, or the Seifert
    /// graph of every piece is a tree.
    ExactTrivial,
    /// Jones polynomial equals that of the unlink; not a proof.
    PolyTrivial,
    Nontrivial,
}

impl Triviality {
    pub fn is_trivial(self) -> bool {
        self != Triviality::Nontrivial
    }
}

pub fn is_trivial_link(d: &LinkDiagram) -> Triviality {
    is_trivial_link_with(d, DEFAULT_R3_DEPTH)
}

pub fn is_trivial_link_with(d: &LinkDiagram, r3_depth: usize) -> Triviality {
    if d.crossing_count() == 0 || d.seifert_graph_is_forest() {
        return Triviality::ExactTrivial;
    }
    if !d.linking_numbers_vanish() {
        return Triviality::Nontrivial;
    }
    let s = d.simplify(r3_depth);
    if s.crossing_count() == 0 || s.seifert_graph_is_forest() {
        return Triviality::ExactTrivial;
    }
    if jones(&s) == unlink_jones(s.component_count()) {
        Triviality::PolyTrivial
    } else {
        Triviality::Nontrivial
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::{braid_closure, torus_diagram};
    use crate::diagram::codes::parse_pd;

    fn left_trefoil() -> LinkDiagram {
        parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", None).unwrap()
    }

    fn p1(text: &str) -> LaurentPoly1 {
        LaurentPoly1::parse(text).unwrap()
    }

    #[test]
    fn jones_normalization() {
        assert_eq!(jones(&LinkDiagram::unknot()), LaurentPoly1::one());
        assert_eq!(jones(&LinkDiagram::unlink(3)), unlink_jones(3));
        assert_eq!(unlink_jones(2), p1("-1*t^(-1/2) + -1*t^(1/2)"));
    }

    #[test]
    fn trefoil_jones_by_chirality() {
        // right trefoil t + t^3 - t^4; the left one is its mirror
        let right = p1("1*t^(2/2) + 1*t^(6/2) + -1*t^(8/2)");
        let left = p1("-1*t^(-8/2) + 1*t^(-6/2) + 1*t^(-2/2)");
        assert_eq!(jones(&left_trefoil()), left);
        assert_eq!(jones(&left_trefoil().mirror()), right);
        assert_eq!(jones(&braid_closure(2, &[1, 1, 1]).unwrap()), right);
    }

    #[test]
    fn hopf_jones() {
        // positive Hopf link: -t^(1/2) - t^(5/2)
        let h = torus_diagram(2, 2).unwrap();
        assert_eq!(jones(&h), p1("-1*t^(1/2) + -1*t^(5/2)"));
    }

    #[test]
    fn kinks_do_not_change_jones() {
        let d = parse_pd("X[1,2,2,3] X[3,4,4,1]", None).unwrap();
        assert_eq!(jones(&d), LaurentPoly1::one());
    }

    #[test]
    fn homfly_basics() {
        assert_eq!(homfly(&LinkDiagram::unknot()).unwrap(), LaurentPoly2::one());
        let right = braid_closure(2, &[1, 1, 1]).unwrap();
        let p = homfly(&right).unwrap();
        // (2v^2 - v^4) + v^2 z^2
        let expected = LaurentPoly2::from_terms([((2i64, 0i64), 2i64), ((4, 0), -1), ((2, 2), 1)]);
        assert_eq!(p, expected);
        assert_eq!(conway(&p), p1("1*t^(0/2) + 1*t^(4/2)"));
        assert_eq!(max_z_degree(&p), Some(2));
        assert_eq!(p.jones_specialization().unwrap(), jones(&right));
    }

    #[test]
    fn homfly_matches_jones_on_braids() {
        let words: [&[i32]; 5] = [
            &[1, -2, 1, -2],
            &[1, 1, 2, -1, 2],
            &[1, 2, 1, 2, 1, 2],
            &[1, -2, 3, -2, 1, 3],
            &[1, 1, 1, -2, -1, -1, -1, -2],
        ];
        for w in words {
            let d = braid_closure(4, w).unwrap();
            let p = homfly(&d).unwrap();
            assert!(p.z_parity_is(d.component_count() as i64 - 1));
            assert_eq!(p.jones_specialization().unwrap(), jones(&d), "word {w:?}");
        }
    }

    #[test]
    fn budget_is_reported() {
        let d = braid_closure(3, &[1, -2, 1, -2, 1, -2]).unwrap();
        assert!(matches!(
            homfly_with_budget(&d, 2),
            Err(crate::error::Error::BudgetExhausted(2))
        ));
    }

    #[test]
    fn triviality_tiers() {
        let kinked = parse_pd("X[1,2,2,3] X[3,4,4,1]", None).unwrap();
        assert_eq!(is_trivial_link(&kinked), Triviality::ExactTrivial);
        let two = kinked.disjoint_union(&kinked);
        assert_eq!(is_trivial_link(&two), Triviality::ExactTrivial);
        assert_eq!(
            is_trivial_link(&torus_diagram(2, 2).unwrap()),
            Triviality::Nontrivial
        );
    }
}
