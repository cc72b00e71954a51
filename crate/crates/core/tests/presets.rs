use pathbench::benchmark::{table1_queries, table1_suite, PlannerParams};
use pathbench::environment::{
    irregular_a_source, irregular_preset, validate_query, EnvironmentDoc, Obstacle,
};
use pathbench::geometry::Segment;
use pathbench::pso::PsoParams;
use pathbench::rrtstar::RrtParams;
use pathbench::Error;

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

#[test]
fn preset_file_is_pinned() {
    // Changing the geometry changes every reproduced number; bump deliberately.
    assert_eq!(
        fnv1a(irregular_a_source().as_bytes()),
        PINNED_HASH,
        "{:#x}",
        fnv1a(irregular_a_source().as_bytes())
    );
}

const PINNED_HASH: u64 = 0x6925_2cb4_d497_ad0d;

#[test]
fn preset_shape() {
    let (env, query) = irregular_preset("irregular-a").unwrap();
    assert_eq!(env.obstacles().len(), 4);
    for o in env.obstacles() {
        let Obstacle::Polygon(p) = o else {
            panic!("preset is all polygons")
        };
        assert!(p.vertices.len() > 4, "concave outline expected");
    }
    assert_eq!(query, table1_queries()[0].1);
    let doc = EnvironmentDoc::from_json(irregular_a_source()).unwrap();
    let again = EnvironmentDoc::from_json(&doc.to_json()).unwrap();
    assert_eq!(doc, again);
}

#[test]
fn every_case_is_a_valid_query() {
    let (env, _) = irregular_preset("irregular-a").unwrap();
    for (id, q) in table1_queries() {
        assert!(validate_query(&env, &q).is_ok(), "case {id}");
    }
}

#[test]
fn case_one_needs_a_detour_and_controls_do_not() {
    let (env, _) = irregular_preset("irregular-a").unwrap();
    let cases = table1_queries();
    let straight_free =
        |i: usize| env.segment_free(&Segment::new(cases[i].1.start, cases[i].1.target));
    assert!(!straight_free(0));
    assert!(straight_free(8) && straight_free(9));
}

#[test]
fn unknown_preset_is_an_error() {
    assert!(matches!(
        irregular_preset("nope"),
        Err(Error::UnknownPreset(_))
    ));
}

#[test]
fn control_cases_stay_close_to_straight_line() {
    let (env, _) = irregular_preset("irregular-a").unwrap();
    let cases: Vec<_> = table1_queries().into_iter().skip(8).collect();
    let planners = [
        PlannerParams::RrtStar(RrtParams::default()),
        PlannerParams::Pso(PsoParams::default()),
    ];
    let rows = table1_suite(&env, &cases, &planners, 0, 1);
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert!(row.feasible, "case {} {}", row.case_id, row.planner);
        assert!(
            row.length >= row.straight_line && row.length <= 1.5 * row.straight_line,
            "{}",
            row.length
        );
    }
}
