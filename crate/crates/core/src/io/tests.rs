use super::*;

fn circle() -> SimplicialComplex {
    SimplicialComplex::build("circle3", &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
}

fn circle6() -> SimplicialComplex {
    SimplicialComplex::build(
        "circle6",
        &[
            vec![0, 1],
            vec![1, 2],
            vec![2, 3],
            vec![3, 4],
            vec![4, 5],
            vec![0, 5],
        ],
    )
    .unwrap()
}

#[test]
fn complexes_round_trip_through_json() {
    let x = circle();
    let text = render_complex(&x);
    let back = parse_complex(&text).unwrap();
    assert_eq!(back.name(), x.name());
    assert_eq!(back.maximal_simplices(), x.maximal_simplices());
    assert_eq!(back.vertex_count(), 3);
    assert!(text.ends_with('\n'));
    assert_eq!(render_complex(&back), text);
}

#[test]
fn complex_files_reject_bad_counts_and_unknown_keys() {
    let wrong_count =
        r#"{"name": "x", "vertex_count": 5, "maximal_simplices": [[0, 1], [1, 2]]}"#;
    let err = parse_complex(wrong_count).unwrap_err().to_string();
    assert!(err.contains("vertex_count 5"), "{err}");
    assert!(err.contains("3 vertices"), "{err}");

    let typo = r#"{"name": "x", "vertex_count": 3, "maximal_simplicies": [[0, 1]]}"#;
    let err = parse_complex(typo).unwrap_err().to_string();
    assert!(err.contains("unknown key"), "{err}");
    assert!(err.contains("maximal_simplicies"), "{err}");

    let negative = r#"{"name": "x", "vertex_count": 2, "maximal_simplices": [[0, -1]]}"#;
    assert!(parse_complex(negative).is_err());
    assert!(parse_complex("not json").is_err());
    assert!(parse_complex("[1, 2]").is_err());
}

#[test]
fn isolated_vertices_survive_as_singletons() {
    let x = SimplicialComplex::build("dots", &[vec![0, 1], vec![2]]).unwrap();
    let back = parse_complex(&render_complex(&x)).unwrap();
    assert_eq!(back.vertex_count(), 3);
    assert!(back.contains(&[2]));
}

#[test]
fn maps_round_trip_and_validate_on_parse() {
    let src = circle();
    let point = SimplicialComplex::build("point", &[vec![0]]).unwrap();
    let map = SimplicialMap::new(&src, &point, vec![0, 0, 0]).unwrap();
    let text = render_map(&src, &point, &map).unwrap();
    let (s, t, m) = parse_map(&text).unwrap();
    assert_eq!(s.name(), "circle3");
    assert_eq!(t.name(), "point");
    assert_eq!(m.vertex_map, vec![0, 0, 0]);

    let broken = text.replace("[\n    0,\n    0,\n    0\n  ]", "[0, 0, 7]");
    assert_ne!(broken, text, "replacement must hit the vertex_map");
    assert!(parse_map(&broken).is_err());
}

#[test]
fn covers_round_trip_and_report_partitions_honestly() {
    let x = circle();
    let partition = VertexCover::new("circle3", vec![vec![0, 1], vec![2]]).unwrap();
    let text = render_cover(&partition, &x).unwrap();
    assert!(text.contains("\"partition\": true"), "{text}");
    let back = parse_cover(&text).unwrap();
    assert_eq!(back.complex, "circle3");
    assert_eq!(back.pieces, vec![vec![0, 1], vec![2]]);

    let overlapping = VertexCover::new("circle3", vec![vec![0, 1], vec![1, 2]]).unwrap();
    let text = render_cover(&overlapping, &x).unwrap();
    assert!(text.contains("\"partition\": false"), "{text}");

    let other = SimplicialComplex::build("square", &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]])
        .unwrap();
    assert!(render_cover(&partition, &other).is_err());

    let bad_flag = r#"{"complex": "c", "pieces": [[0]], "partition": "yes"}"#;
    assert!(parse_cover(bad_flag).is_err());
    let no_flag = r#"{"complex": "circle3", "pieces": [[0, 1], [2]]}"#;
    assert_eq!(parse_cover(no_flag).unwrap().pieces.len(), 2);
}

#[test]
fn product_bundles_round_trip() {
    let c = circle();
    let b = Bundle::product(&c, &c).unwrap();
    let text = render_bundle(&b).unwrap();
    let back = parse_bundle(&text).unwrap();
    assert_eq!(back.kind, BundleKind::Product);
    assert_eq!(back.total.name(), "product(circle3,circle3)");
    assert_eq!(back.total.f_vector(), b.total.f_vector());
    assert_eq!(back.projection.vertex_map, b.projection.vertex_map);
}

#[test]
fn bundle_files_can_rename_the_total_space() {
    let c = circle();
    let mut b = Bundle::product(&c, &c).unwrap();
    rename_total(&mut b, "torus");
    let text = render_bundle(&b).unwrap();
    assert!(text.contains("\"name\": \"torus\""), "{text}");
    let back = parse_bundle(&text).unwrap();
    assert_eq!(back.total.name(), "torus");
    assert_eq!(back.projection.source, "torus");
    back.projection.validate(&back.total, &back.base).unwrap();
}

#[test]
fn mapping_torus_bundles_round_trip() {
    let hexagon = circle6();
    let reflection = SimplicialMap::new(&hexagon, &hexagon, vec![0, 5, 4, 3, 2, 1]).unwrap();
    let b = Bundle::mapping_torus(&hexagon, &reflection).unwrap();
    let text = render_bundle(&b).unwrap();
    let back = parse_bundle(&text).unwrap();
    assert_eq!(back.kind, BundleKind::MappingTorus);
    assert_eq!(back.total.name(), "maptorus(circle6)");
    assert_eq!(back.total.euler_characteristic(), 0);
    assert_eq!(back.monodromy.unwrap().vertex_map, vec![0, 5, 4, 3, 2, 1]);
}

#[test]
fn bundle_files_reject_bad_shapes() {
    let unknown = r#"{"kind": "pullback", "factors": []}"#;
    let err = parse_bundle(unknown).unwrap_err().to_string();
    assert!(err.contains("unknown kind"), "{err}");

    let one_factor = format!(
        r#"{{"kind": "product", "factors": [{}]}}"#,
        render_complex(&circle()).trim()
    );
    let err = parse_bundle(&one_factor).unwrap_err().to_string();
    assert!(err.contains("exactly two factors"), "{err}");

    let skewed = r#"{"kind": "mapping_torus",
        "fibre": {"name": "c", "vertex_count": 3,
                  "maximal_simplices": [[0, 1], [1, 2], [0, 2]]},
        "automorphism": [0, 0, 0]}"#;
    assert!(parse_bundle(skewed).is_err(), "collapsing map is no automorphism");
}

#[test]
fn presentations_round_trip() {
    let p = GroupPresentation::new(2, vec![vec![1, 2, -1, -2]]).unwrap();
    let text = render_presentation(&p);
    let back = parse_presentation(&text).unwrap();
    assert_eq!(back.generator_count, 2);
    assert_eq!(back.relators, vec![vec![1, 2, -1, -2]]);

    let zero_letter = r#"{"generators": 2, "relators": [[1, 0]]}"#;
    assert!(parse_presentation(zero_letter).is_err());
    let out_of_range = r#"{"generators": 1, "relators": [[2]]}"#;
    assert!(parse_presentation(out_of_range).is_err());
    let not_a_word = r#"{"generators": 1, "relators": [["a"]]}"#;
    assert!(parse_presentation(not_a_word).is_err());
}

#[test]
fn fact_files_round_trip_axioms_and_computed_witnesses() {
    let budget = Budget::default();
    let mut store = FactStore::new();
    store.register_complex(&circle()).unwrap();
    store
        .assert_axiom(
            "manifold(circle3, 1, true, true, true)".parse().unwrap(),
            "standard circle",
        )
        .unwrap();
    let whole = VertexCover::new("circle3", vec![vec![0, 1, 2]]).unwrap();
    store
        .assert_computed(
            "cat_upper(circle3, amenable, 1)".parse().unwrap(),
            Witness::Cover(whole),
            &budget,
        )
        .unwrap();

    let text = render_facts(&store);
    assert_eq!(text.lines().count(), 3, "one registration plus two facts");

    let mut reloaded = FactStore::new();
    let n = load_facts(&text, &mut reloaded, &budget).unwrap();
    assert_eq!(n, 2, "the registration line is not a fact");
    assert!(reloaded.complex("circle3").is_some());
    assert!(reloaded.contains(&"cat_upper(circle3, amenable, 1)".parse().unwrap()));
    assert_eq!(render_facts(&reloaded), text);
}

#[test]
fn derived_facts_are_never_rendered_or_loaded() {
    let budget = Budget::default();
    let mut store = FactStore::new();
    store.register_complex(&circle()).unwrap();
    let whole = VertexCover::new("circle3", vec![vec![0, 1, 2]]).unwrap();
    store
        .assert_computed(
            "cat_upper(circle3, amenable, 1)".parse().unwrap(),
            Witness::Cover(whole),
            &budget,
        )
        .unwrap();
    store.saturate(&budget).unwrap();
    assert!(store.facts().len() > 1, "saturation should derive something");
    assert_eq!(
        render_facts(&store).lines().count(),
        2,
        "one registration plus the one computed fact"
    );

    let derived_line = r#"{"statement": "simvol_zero(torus)", "provenance": {"kind": "derived", "rule": "R3"}}"#;
    let mut fresh = FactStore::new();
    let err = load_facts(derived_line, &mut fresh, &budget)
        .unwrap_err()
        .to_string();
    assert!(err.contains("facts line 1"), "{err}");
    assert!(err.contains("replayed by saturation"), "{err}");
}

#[test]
fn fact_loading_reports_the_offending_line() {
    let budget = Budget::default();
    let good = r#"{"statement": "ent_zero(torus)", "provenance": {"kind": "axiom", "citation": "flat metrics"}}"#;
    let text = format!("{good}\n\nnot json at all\n");
    let mut store = FactStore::new();
    let err = load_facts(&text, &mut store, &budget).unwrap_err().to_string();
    assert!(err.contains("facts line 3"), "{err}");
    assert_eq!(store.facts().len(), 1, "the valid line before the error loads");

    let bogus_kind = r#"{"statement": "ent_zero(torus)", "provenance": {"kind": "guessed"}}"#;
    let mut store = FactStore::new();
    let err = load_facts(bogus_kind, &mut store, &budget)
        .unwrap_err()
        .to_string();
    assert!(err.contains("unknown provenance kind"), "{err}");
}

#[test]
fn fact_loading_validates_cover_witnesses() {
    let budget = Budget::default();
    let line = r#"{"statement": "cat_upper(circle3, amenable, 1)", "provenance": {"kind": "computed", "witness": {"cover": {"complex": "circle3", "pieces": [[0, 1, 2]]}}}}"#;

    let mut unregistered = FactStore::new();
    assert!(load_facts(line, &mut unregistered, &budget).is_err());

    let mut registered = FactStore::new();
    registered.register_complex(&circle()).unwrap();
    assert_eq!(load_facts(line, &mut registered, &budget).unwrap(), 1);

    let wrong_pieces = r#"{"statement": "cat_upper(circle3, amenable, 2)", "provenance": {"kind": "computed", "witness": {"cover": {"complex": "circle3", "pieces": [[0, 1, 2]]}}}}"#;
    let mut store = FactStore::new();
    store.register_complex(&circle()).unwrap();
    assert!(load_facts(wrong_pieces, &mut store, &budget).is_err());
}
