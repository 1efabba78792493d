use mtcperm::dsl::{parse_dsl, DslError, Gen};
use mtcperm_core::catalog;
use mtcperm_core::evaluator::{Sign, Variant};

fn corpus() -> Vec<(String, String)> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/diagrams");
    let mut out: Vec<(String, String)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "dsl"))
        .map(|p| (p.display().to_string(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

#[test]
fn single_slice() {
    let p = parse_dsl("id(tau)").unwrap();
    assert_eq!(p.lines.len(), 1);
    assert_eq!(p.factors(), 1);
    assert!(matches!(&p.lines[0].factors[0][..], [Gen::Id(s)] if s.label == "tau" && !s.dual));
}

#[test]
fn two_factors() {
    let p = parse_dsl("braid+ || id(tau)").unwrap();
    assert_eq!(p.lines.len(), 1);
    assert_eq!(p.factors(), 2);
    assert_eq!(p.lines[0].factors[0], vec![Gen::Braid(Sign::Pos)]);
}

#[test]
fn spec_line() {
    let p = parse_dsl("id(tau) braid+ cap(tau)\nvertex(a:tau,tau->tau#1)").unwrap();
    assert_eq!(p.lines[0].factors[0].len(), 3);
    match &p.lines[1].factors[0][0] {
        Gen::Vertex { variant, index, k, .. } => {
            assert_eq!(*variant, Variant::A);
            assert_eq!(*index, 1);
            assert_eq!(k.label, "tau");
        }
        g => panic!("{g:?}"),
    }
}

#[test]
fn unterminated_vertex_reports_column_eleven() {
    match parse_dsl("vertex(bad") {
        Err(DslError::Parse { line, col, .. }) => assert_eq!((line, col), (1, 11)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn error_positions() {
    let at = |t: &str| match parse_dsl(t) {
        Err(DslError::Parse { line, col, .. }) => (line, col),
        other => panic!("{t}: {other:?}"),
    };
    assert_eq!(at("id(tau) brad+"), (1, 9));
    assert_eq!(at("\n// c\nbraid"), (3, 6));
    assert_eq!(at("vertex(foo:tau,tau->tau)"), (1, 8));
    assert_eq!(at("vertex(a:tau,tau->tau#0)"), (1, 23));
    assert_eq!(at("id(tau)\nid(tau) || id(tau)"), (2, 1));
    assert_eq!(at("@sauce tau"), (1, 2));
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let a = parse_dsl("// head\n\nbraid+   // tail\n").unwrap();
    let b = parse_dsl("braid+").unwrap();
    assert!(a.same_as(&b));
}

#[test]
fn corpus_round_trips() {
    let files = corpus();
    assert!(files.len() >= 8);
    for (name, text) in files {
        let p = parse_dsl(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = p.to_string();
        let q = parse_dsl(&printed).unwrap();
        assert!(q.same_as(&p), "{name}: round trip changed the program");
        // printing is a fixed point after one pass
        assert_eq!(q.to_string(), printed, "{name}");
    }
}

#[test]
fn resolution_errors_point_at_the_label() {
    let cat = catalog::fibonacci();
    let p = parse_dsl("@source tau\nid(sigma)").unwrap();
    match p.resolve(&cat, None, None) {
        Err(DslError::Parse { line, col, .. }) => assert_eq!((line, col), (2, 4)),
        other => panic!("{other:?}"),
    }
    // untyped first slice and no source
    assert!(matches!(parse_dsl("braid+").unwrap().resolve(&cat, None, None), Err(DslError::Shape(_))));
    // inferred from a typed first slice
    let r = parse_dsl("id(tau) cap(tau*)").unwrap().resolve(&cat, None, None).unwrap();
    assert_eq!(r.source[0].len(), 3);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn generator() -> impl Strategy<Value = String> {
        let strand = prop::sample::select(vec!["tau", "tau*", "1", "σ", "x_2*"]);
        prop_oneof![
            strand.clone().prop_map(|s| format!("id({s})")),
            strand.clone().prop_map(|s| format!("cup( {s} )")),
            strand.clone().prop_map(|s| format!("cap({s})")),
            Just("braid+".to_string()),
            Just("braid-".to_string()),
            Just("twist+".to_string()),
            Just("twist-".to_string()),
            (prop::sample::select(vec!["a", "ahat", "astar", "acheck", "acheckhat", "ahatstar"]), strand.clone(), 1..4usize)
                .prop_map(|(v, s, n)| format!("vertex({v}:{s}, tau -> {s}#{n})")),
        ]
    }

    proptest! {
        #[test]
        fn printed_programs_parse_back(
            factors in 1..3usize,
            lines in prop::collection::vec(prop::collection::vec(generator(), 0..4), 1..5),
        ) {
            let text: String = lines
                .iter()
                .map(|l| vec![l.join("  "); factors].join(" || ") + "\n")
                .collect();
            let p = parse_dsl(&text).unwrap();
            let q = parse_dsl(&p.to_string()).unwrap();
            prop_assert!(q.same_as(&p));
        }
    }
}
