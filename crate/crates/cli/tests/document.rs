use mixed_degree::Error;
use mixed_degree_cli::{parse_family, serialize_family};

fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn parses_the_three_member_example() {
    let doc = parse_family(&data("example13.json")).unwrap();
    assert_eq!(doc.family.len(), 3);
    assert_eq!(doc.family.ambient_dim(), 2);
    assert_eq!(doc.labels.as_deref(), Some(&["P1".to_owned(), "P2".to_owned(), "P3".to_owned()][..]));
}

#[test]
fn hulls_input_points() {
    let doc = parse_family(&data("square_with_interior.json")).unwrap();
    assert_eq!(doc.family.member(0).num_vertices(), 4);
}

#[test]
fn canonical_documents_round_trip() {
    for name in ["example13.json", "segments.json", "square_with_interior.json"] {
        let doc = parse_family(&data(name)).unwrap();
        let text = serialize_family(&doc);
        let again = parse_family(&text).unwrap();
        assert_eq!(again, doc);
        assert_eq!(serialize_family(&again), text, "{name}");
    }
}

#[test]
fn large_coordinates_survive() {
    let text = r#"{"ambient_dim": 1, "polytopes": [[[0], [123456789012345678901234567890]]]}"#;
    let doc = parse_family(text).unwrap();
    assert!(serialize_family(&doc).contains("123456789012345678901234567890"));
}

#[test]
fn distinct_diagnostics() {
    assert_eq!(parse_family(&data("wrong_dim.json")), Err(Error::DimensionMismatch { expected: 2, found: 3 }));
    assert_eq!(parse_family(r#"{"ambient_dim": 2, "polytopes": []}"#), Err(Error::EmptyFamily));
    assert_eq!(parse_family(r#"{"ambient_dim": 2, "polytopes": [[[0, 0]], []]}"#), Err(Error::EmptyPolytope(2)));
    assert_eq!(
        parse_family(r#"{"ambient_dim": 2, "polytopes": [[[0, 0], [1]]]}"#),
        Err(Error::RaggedVertex { polytope: 1, vertex: 2, expected: 2, found: 1 })
    );
    for bad in [
        "not json",
        "[]",
        r#"{"polytopes": [[[0]]]}"#,
        r#"{"ambient_dim": 1, "polytopes": [[[0.5]]]}"#,
        r#"{"ambient_dim": 1, "polytopes": [[["0"]]]}"#,
        r#"{"ambient_dim": 1, "polytopes": [[[0]]], "extra": 1}"#,
        r#"{"ambient_dim": 1, "polytopes": [[[0]]], "labels": ["a", "b"]}"#,
    ] {
        assert!(matches!(parse_family(bad), Err(Error::Schema(_))), "{bad}");
    }
}
