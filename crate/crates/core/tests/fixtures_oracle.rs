use nullify_core::fixtures;
use nullify_core::polynomials::{homfly, jones};

#[test]
fn every_fixture_parses_with_tabulated_jones() {
    for f in fixtures::all() {
        let d = f.diagram().unwrap_or_else(|e| panic!("{}: {e}", f.name));
        assert_eq!(d.crossing_count(), f.crossing_number, "{}", f.name);
        assert_eq!(d.component_count(), f.components, "{}", f.name);
        assert_eq!(d.is_alternating(), f.alternating, "{}", f.name);
        if let Some(j) = &f.jones {
            assert_eq!(&jones(&d), j, "{}", f.name);
        }
    }
}

#[test]
fn homfly_specializes_to_jones_on_fixtures() {
    for f in fixtures::all()
        .into_iter()
        .filter(|f| f.crossing_number <= 9)
    {
        let d = f.diagram().unwrap();
        let p = homfly(&d).unwrap();
        assert!(p.z_parity_is(f.components as i64 - 1), "{}", f.name);
        assert_eq!(p.jones_specialization().unwrap(), jones(&d), "{}", f.name);
    }
}

#[test]
fn seifert_signature_matches_table() {
    use nullify_core::seifert::signature;
    for f in fixtures::all() {
        let d = f.diagram().unwrap();
        if let Some(sig) = f.signature {
            assert_eq!(signature(&d).unwrap(), sig as i64, "{}", f.name);
        }
    }
}

#[test]
fn seifert_conway_matches_homfly() {
    use nullify_core::polynomials::conway;
    use nullify_core::seifert::{conway_from_seifert, conway_in_t, seifert_matrix};
    for f in fixtures::all()
        .into_iter()
        .filter(|f| f.crossing_number <= 9)
    {
        let d = f.diagram().unwrap();
        let s = seifert_matrix(&d).unwrap();
        assert_eq!(
            s.betti,
            d.crossing_count() + 1 - d.seifert_circles().count,
            "{}",
            f.name
        );
        let from_matrix = conway_from_seifert(&s.matrix);
        let from_skein = conway_in_t(&conway(&homfly(&d).unwrap()));
        assert_eq!(from_matrix, from_skein, "{}", f.name);
    }
}
