//! The bundled example corpus: complexes, covers, bundles, a projection
//! map, and fact files that exercise every pipeline end to end.
//!
//! Everything is generated, nothing is checked in as opaque data; the
//! builders double as executable documentation of the constructions.

use gcat_core::io::{self, rename_total};
use gcat_core::{
    base_two_arc_cover, combine_covers, Budget, Bundle, FactStore, Result, SimplicialComplex,
    SimplicialMap, VertexCover, Witness,
};

/// Minimal triangulated circle.
pub fn circle3() -> SimplicialComplex {
    SimplicialComplex::build("circle3", &[vec![0, 1], vec![1, 2], vec![0, 2]])
        .expect("static complex")
}

/// Hexagonal circle, the fibre of the Klein bottle mapping torus; six
/// vertices leave room for a reflection with two fixed vertices.
pub fn circle6() -> SimplicialComplex {
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
    .expect("static complex")
}

/// Boundary of the solid tetrahedron.
pub fn sphere() -> SimplicialComplex {
    SimplicialComplex::build(
        "sphere",
        &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
    .expect("static complex")
}

/// Solid triangle.
pub fn delta2() -> SimplicialComplex {
    SimplicialComplex::build("delta2", &[vec![0, 1, 2]]).expect("static complex")
}

/// Solid tetrahedron.
pub fn delta3() -> SimplicialComplex {
    SimplicialComplex::build("delta3", &[vec![0, 1, 2, 3]]).expect("static complex")
}

/// Trivial circle bundle over the circle, with the total space renamed to
/// its common name.
pub fn torus_bundle() -> Result<Bundle> {
    let c = circle3();
    let mut b = Bundle::product(&c, &c)?;
    rename_total(&mut b, "torus");
    Ok(b)
}

pub fn torus() -> Result<SimplicialComplex> {
    Ok(torus_bundle()?.total)
}

/// Mapping torus of the hexagon reflection fixing vertices 0 and 3; the
/// orientation-reversing gluing makes the total space a Klein bottle.
pub fn klein_bundle() -> Result<Bundle> {
    let hexagon = circle6();
    let reflection = SimplicialMap::new(&hexagon, &hexagon, vec![0, 5, 4, 3, 2, 1])?;
    let mut b = Bundle::mapping_torus(&hexagon, &reflection)?;
    rename_total(&mut b, "klein");
    Ok(b)
}

pub fn klein() -> Result<SimplicialComplex> {
    Ok(klein_bundle()?.total)
}

/// Wedge of two circles at their zero vertices.
pub fn figure_eight() -> Result<SimplicialComplex> {
    let c = circle3();
    let (mut w, _) = gcat_core::wedge(&[(&c, 0), (&c, 0)])?;
    w.rename("figure_eight");
    Ok(w)
}

/// Genus-two surface as a connected sum of two staircase tori: remove the
/// first triangle from each copy and identify the three boundary vertices.
/// The boundary edges merge pairwise, so every edge of the result lies in
/// exactly two triangles again.
pub fn genus2() -> Result<SimplicialComplex> {
    let t = torus()?;
    let triangles = t.maximal_simplices();
    let cut = triangles[0].clone();
    let n = t.vertex_count();

    let mut relabel = vec![usize::MAX; n];
    for &v in &cut {
        relabel[v] = v;
    }
    let mut next = n;
    for slot in relabel.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }

    let mut glued: Vec<Vec<usize>> = Vec::with_capacity(2 * (triangles.len() - 1));
    for s in triangles.iter().filter(|s| **s != cut) {
        glued.push(s.clone());
    }
    for s in triangles.iter().filter(|s| **s != cut) {
        let mut image: Vec<usize> = s.iter().map(|&v| relabel[v]).collect();
        image.sort_unstable();
        glued.push(image);
    }
    SimplicialComplex::build("genus2", &glued)
}

/// Every complex in the corpus, in a fixed order.
pub fn all_complexes() -> Result<Vec<SimplicialComplex>> {
    Ok(vec![
        circle3(),
        circle6(),
        sphere(),
        delta2(),
        delta3(),
        torus()?,
        klein()?,
        figure_eight()?,
        genus2()?,
    ])
}

/// One-piece cover of a complex by all of its vertices.
pub fn whole_cover(x: &SimplicialComplex) -> Result<VertexCover> {
    VertexCover::new(x.name(), vec![(0..x.vertex_count()).collect()])
}

/// Two-piece amenable cover of the torus: the whole fibre circle combined
/// over the two-arc cover of the base circle.
pub fn torus_cover() -> Result<VertexCover> {
    let bundle = torus_bundle()?;
    let fibre_cover = whole_cover(&bundle.fibre)?;
    let base_cover = base_two_arc_cover(&bundle.base)?;
    combine_covers(&bundle, &fibre_cover, &base_cover)
}

/// Two-piece amenable cover of the Klein bottle, built the same way.
pub fn klein_cover() -> Result<VertexCover> {
    let bundle = klein_bundle()?;
    let fibre_cover = whole_cover(&bundle.fibre)?;
    let base_cover = base_two_arc_cover(&bundle.base)?;
    combine_covers(&bundle, &fibre_cover, &base_cover)
}

/// Fact store for the torus vanishing pipeline: the product structure,
/// an amenable bound for the fibre, and the manifold attributes needed by
/// the vanishing rule.
pub fn torus_facts() -> Result<FactStore> {
    let budget = Budget::default();
    let mut store = FactStore::new();
    store.register_complex(&circle3())?;
    store.register_complex(&torus()?)?;
    store.assert_axiom(
        "manifold(torus, 2, true, true, true)".parse()?,
        "the flat torus is a closed orientable connected surface",
    )?;
    store.assert_axiom(
        "lscat_upper(circle3, 2)".parse()?,
        "two overlapping arcs cover the circle, each contractible in it",
    )?;
    store.assert_computed(
        "bundle(torus, circle3, circle3)".parse()?,
        Witness::Note("projection of the simplicial product onto its second factor".into()),
        &budget,
    )?;
    store.assert_computed(
        "cat_upper(circle3, amenable, 1)".parse()?,
        Witness::Cover(whole_cover(&circle3())?),
        &budget,
    )?;
    Ok(store)
}

/// Fact store for the Klein bottle: mapping torus structure plus the
/// combined two-piece cover as a computed bound.
pub fn klein_facts() -> Result<FactStore> {
    let budget = Budget::default();
    let mut store = FactStore::new();
    store.register_complex(&circle6())?;
    store.register_complex(&klein()?)?;
    store.assert_axiom(
        "manifold(klein, 2, false, true, true)".parse()?,
        "the Klein bottle is a closed non-orientable connected surface",
    )?;
    store.assert_computed(
        "mapping_torus(klein, circle6)".parse()?,
        Witness::Note("glued from three prism layers over the hexagon reflection".into()),
        &budget,
    )?;
    store.assert_computed(
        "cat_upper(circle6, amenable, 1)".parse()?,
        Witness::Cover(whole_cover(&circle6())?),
        &budget,
    )?;
    store.assert_computed(
        "cat_upper(klein, amenable, 2)".parse()?,
        Witness::Cover(klein_cover()?),
        &budget,
    )?;
    Ok(store)
}

/// Negative control: a hyperbolic-fibre mapping torus where the doubled
/// bound (six) stays above the dimension, so no vanishing may be derived.
pub fn negative_control_facts() -> Result<FactStore> {
    let mut store = FactStore::new();
    store.assert_axiom(
        "cat_upper(fibre_surface, amenable, 3)".parse()?,
        "assumed amenable bound for the fibre",
    )?;
    store.assert_axiom(
        "cat_lower(hyperbolic_total, amenable, 4)".parse()?,
        "assumed amenable category floor for the total space",
    )?;
    store.assert_axiom(
        "mapping_torus(hyperbolic_total, fibre_surface)".parse()?,
        "fibration over the circle",
    )?;
    store.assert_axiom(
        "manifold(hyperbolic_total, 3, true, true, true)".parse()?,
        "closed hyperbolic threefold",
    )?;
    store.assert_axiom(
        "manifold(fibre_surface, 2, true, true, true)".parse()?,
        "closed orientable surface",
    )?;
    Ok(store)
}

/// All corpus files as (file name, contents) pairs, in a fixed order.
pub fn corpus_files() -> Result<Vec<(String, String)>> {
    let mut files: Vec<(String, String)> = Vec::new();

    for x in all_complexes()? {
        files.push((format!("{}.json", x.name()), io::render_complex(&x)));
    }

    let torus_b = torus_bundle()?;
    let klein_b = klein_bundle()?;
    files.push(("torus_bundle.json".into(), io::render_bundle(&torus_b)?));
    files.push(("klein_bundle.json".into(), io::render_bundle(&klein_b)?));

    files.push((
        "torus_projection.json".into(),
        io::render_map(&torus_b.total, &torus_b.base, &torus_b.projection)?,
    ));

    let c3 = circle3();
    let c6 = circle6();
    files.push((
        "circle3_whole_cover.json".into(),
        io::render_cover(&whole_cover(&c3)?, &c3)?,
    ));
    files.push((
        "circle3_arcs_cover.json".into(),
        io::render_cover(&base_two_arc_cover(&c3)?, &c3)?,
    ));
    files.push((
        "circle6_whole_cover.json".into(),
        io::render_cover(&whole_cover(&c6)?, &c6)?,
    ));
    files.push((
        "torus_cover.json".into(),
        io::render_cover(&torus_cover()?, &torus_b.total)?,
    ));
    files.push((
        "klein_cover.json".into(),
        io::render_cover(&klein_cover()?, &klein_b.total)?,
    ));

    files.push(("torus.facts".into(), io::render_facts(&torus_facts()?)));
    files.push(("klein.facts".into(), io::render_facts(&klein_facts()?)));
    files.push((
        "negative_control.facts".into(),
        io::render_facts(&negative_control_facts()?),
    ));

    Ok(files)
}
