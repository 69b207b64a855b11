//! Fibre bundles with simplicial structure and the cover combination that
//! multiplies piece counts.
//!
//! Two constructions are supported: the trivial bundle, a staircase
//! product projecting to its right factor, and the mapping torus of an
//! automorphism projecting to a fixed three-vertex circle. In both cases a
//! cover of the fibre and a cover of the base combine into a cover of the
//! total space with one piece per pair, built so that each combined piece
//! deformation-retracts into a fibre-piece copy over a base point.

use crate::complex::{
    mapping_torus, product, SimplicialComplex, SimplicialMap, Vertex, LAYERS,
};
use crate::covers::VertexCover;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BundleKind {
    Product,
    MappingTorus,
}

impl std::fmt::Display for BundleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BundleKind::Product => write!(f, "product"),
            BundleKind::MappingTorus => write!(f, "mapping-torus"),
        }
    }
}

/// A bundle with explicit total space, base, fibre, and projection.
#[derive(Debug, Clone)]
pub struct Bundle {
    pub kind: BundleKind,
    pub total: SimplicialComplex,
    pub base: SimplicialComplex,
    pub fibre: SimplicialComplex,
    /// Projection of the total space onto the base.
    pub projection: SimplicialMap,
    /// Gluing automorphism of the fibre; present for mapping tori.
    pub monodromy: Option<SimplicialMap>,
}

impl Bundle {
    /// Trivial bundle fibre x base, projecting to the base factor.
    pub fn product(fibre: &SimplicialComplex, base: &SimplicialComplex) -> Result<Self> {
        let p = product(fibre, base)?;
        Ok(Self {
            kind: BundleKind::Product,
            total: p.complex,
            base: base.clone(),
            fibre: fibre.clone(),
            projection: p.proj_right,
            monodromy: None,
        })
    }

    /// Mapping torus of an automorphism of the fibre, over the standard
    /// three-vertex circle.
    pub fn mapping_torus(fibre: &SimplicialComplex, g: &SimplicialMap) -> Result<Self> {
        let mt = mapping_torus(fibre, g)?;
        Ok(Self {
            kind: BundleKind::MappingTorus,
            total: mt.complex,
            base: mt.base,
            fibre: fibre.clone(),
            projection: mt.projection,
            monodromy: Some(g.clone()),
        })
    }
}

/// The standard two-piece cover of the three-vertex base circle: an arc
/// through vertices 0 and 1, and the star of vertex 2.
pub fn base_two_arc_cover(base: &SimplicialComplex) -> Result<VertexCover> {
    VertexCover::new(base.name(), vec![vec![0, 1], vec![2]])
}

/// Piece count of a combined cover: one piece per fibre-base pair.
pub fn combined_piece_count(fibre_pieces: usize, base_pieces: usize) -> usize {
    fibre_pieces * base_pieces
}

/// Numeric category bounds for a mapping torus with a fibre of the given
/// dimension, before any cover is constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusBound {
    /// Twice the fibre bound: the circle base contributes a factor of two.
    pub doubled: usize,
    /// The total-space dimension, available as a bound only when the
    /// doubled bound already fits below it.
    pub dim_bound: Option<usize>,
}

/// Bounds for the total space of a mapping torus from a bound `n` on the
/// fibre: always `2n`, and additionally `fibre_dim + 1` (the dimension of
/// the total space) whenever `2n <= fibre_dim + 1`.
pub fn mapping_torus_bound(fibre_bound: usize, fibre_dim: usize) -> TorusBound {
    let doubled = 2 * fibre_bound;
    let total_dim = fibre_dim + 1;
    TorusBound {
        doubled,
        dim_bound: (doubled <= total_dim).then_some(total_dim),
    }
}

/// Combine a cover of the fibre with a cover of the base into a cover of
/// the total space, fibre-piece-major. For a mapping torus each base piece
/// must miss some base vertex so that the bundle trivializes over it; the
/// fibre copies are then transported along the arc, applying the inverse
/// monodromy when the arc crosses the glued block between base vertices 2
/// and 0.
pub fn combine_covers(
    bundle: &Bundle,
    fibre_cover: &VertexCover,
    base_cover: &VertexCover,
) -> Result<VertexCover> {
    fibre_cover.check_against(&bundle.fibre)?;
    base_cover.check_against(&bundle.base)?;
    match bundle.kind {
        BundleKind::Product => combine_product(bundle, fibre_cover, base_cover),
        BundleKind::MappingTorus => combine_torus(bundle, fibre_cover, base_cover),
    }
}

fn combine_product(
    bundle: &Bundle,
    fibre_cover: &VertexCover,
    base_cover: &VertexCover,
) -> Result<VertexCover> {
    let bn = bundle.base.vertex_count();
    let mut pieces = Vec::with_capacity(fibre_cover.pieces.len() * base_cover.pieces.len());
    for fp in &fibre_cover.pieces {
        for bp in &base_cover.pieces {
            let piece: Vec<Vertex> = fp
                .iter()
                .flat_map(|&f| bp.iter().map(move |&b| f * bn + b))
                .collect();
            pieces.push(piece);
        }
    }
    VertexCover::new(bundle.total.name(), pieces)
}

fn combine_torus(
    bundle: &Bundle,
    fibre_cover: &VertexCover,
    base_cover: &VertexCover,
) -> Result<VertexCover> {
    let g = bundle
        .monodromy
        .as_ref()
        .expect("mapping torus bundles carry their monodromy");
    let n = bundle.fibre.vertex_count();
    let g_inv = invert_permutation(&g.vertex_map);

    let spanning: Vec<usize> = base_cover
        .pieces
        .iter()
        .enumerate()
        .filter(|(_, p)| p.len() >= LAYERS)
        .map(|(j, _)| j)
        .collect();
    if !spanning.is_empty() {
        return Err(Error::NoTrivialization(spanning));
    }

    let mut pieces = Vec::with_capacity(fibre_cover.pieces.len() * base_cover.pieces.len());
    for fp in &fibre_cover.pieces {
        for bp in &base_cover.pieces {
            let anchor = bp[0]; // pieces are sorted, so this is the minimum
            let mut piece = Vec::with_capacity(fp.len() * bp.len());
            for &layer in bp {
                // transport from the anchor layer: only the arc between
                // base vertices 0 and 2 crosses the glued block
                let twisted = anchor == 0 && layer == 2;
                for &v in fp {
                    let w = if twisted { g_inv[v] } else { v };
                    piece.push(layer * n + w);
                }
            }
            pieces.push(piece);
        }
    }
    VertexCover::new(bundle.total.name(), pieces)
}

fn invert_permutation(perm: &[Vertex]) -> Vec<Vertex> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::classes::{Answer, ClassKind, GroupClass};
    use crate::covers::validate_cover;

    fn circle() -> SimplicialComplex {
        SimplicialComplex::build("circle3", &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn hexagon() -> SimplicialComplex {
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

    /// Reflection across the axis through vertices 0 and 3.
    fn reflection(hex: &SimplicialComplex) -> SimplicialMap {
        SimplicialMap::new(hex, hex, vec![0, 5, 4, 3, 2, 1]).unwrap()
    }

    #[test]
    fn product_cover_of_the_torus_has_four_contractible_pieces() {
        let c = circle();
        let bundle = Bundle::product(&c, &c).unwrap();
        let arcs = VertexCover::new("circle3", vec![vec![0, 1], vec![2]]).unwrap();
        let combined = combine_covers(&bundle, &arcs, &arcs).unwrap();
        assert_eq!(combined.pieces.len(), 4);
        let report = validate_cover(
            &bundle.total,
            &combined,
            &GroupClass::new(ClassKind::Trivial),
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(report.admissible, Answer::Yes);
        assert!(report.partition);
    }

    #[test]
    fn combined_pieces_come_fibre_major() {
        let c = circle();
        let bundle = Bundle::product(&c, &c).unwrap();
        let fibre = VertexCover::new("circle3", vec![vec![0], vec![1, 2]]).unwrap();
        let base = VertexCover::new("circle3", vec![vec![0, 1], vec![2]]).unwrap();
        let combined = combine_covers(&bundle, &fibre, &base).unwrap();
        // piece (0, 0): fibre vertex 0 with base vertices {0, 1}
        assert_eq!(combined.pieces[0], vec![0, 1]);
        // piece (0, 1): fibre vertex 0 with base vertex {2}
        assert_eq!(combined.pieces[1], vec![2]);
        assert_eq!(combined.pieces.len(), 4);
    }

    #[test]
    fn klein_bottle_torus_has_euler_characteristic_zero_and_torsion() {
        let hex = hexagon();
        let bundle = Bundle::mapping_torus(&hex, &reflection(&hex)).unwrap();
        assert_eq!(bundle.total.euler_characteristic(), 0);
        let (pres, _) = crate::pi1::edge_path_presentation(&bundle.total, 0).unwrap();
        let ab = pres.abelianization();
        // first homology of the Klein bottle: rank one plus two-torsion
        assert_eq!(ab.rank, 1);
        assert_eq!(ab.torsion, vec![2]);
    }

    #[test]
    fn klein_bottle_combined_cover_is_admissible_for_trivial() {
        let hex = hexagon();
        let bundle = Bundle::mapping_torus(&hex, &reflection(&hex)).unwrap();
        let fibre_arcs =
            VertexCover::new("circle6", vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let base_arcs = base_two_arc_cover(&bundle.base).unwrap();
        let combined = combine_covers(&bundle, &fibre_arcs, &base_arcs).unwrap();
        assert_eq!(combined.pieces.len(), 4);
        let report = validate_cover(
            &bundle.total,
            &combined,
            &GroupClass::new(ClassKind::Trivial),
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(report.admissible, Answer::Yes);
    }

    #[test]
    fn twisted_base_arc_transports_through_the_inverse_monodromy() {
        let hex = hexagon();
        let g = reflection(&hex);
        let bundle = Bundle::mapping_torus(&hex, &g).unwrap();
        let fibre_arcs =
            VertexCover::new("circle6", vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let twisted_base = VertexCover::new("circle3", vec![vec![0, 2], vec![1]]).unwrap();
        let combined = combine_covers(&bundle, &fibre_arcs, &twisted_base).unwrap();
        // piece (0, 0): layer 0 keeps {0, 1, 2}, layer 2 holds the
        // reflected copy {g^-1(0), g^-1(1), g^-1(2)} = {0, 5, 4}
        let n = hex.vertex_count();
        let mut expected: Vec<Vertex> = vec![0, 1, 2]
            .into_iter()
            .chain([2 * n, 2 * n + 5, 2 * n + 4])
            .collect();
        expected.sort_unstable();
        assert_eq!(combined.pieces[0], expected);
        let report = validate_cover(
            &bundle.total,
            &combined,
            &GroupClass::new(ClassKind::Trivial),
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(report.admissible, Answer::Yes);
    }

    #[test]
    fn base_piece_spanning_all_layers_has_no_trivialization() {
        let hex = hexagon();
        let bundle = Bundle::mapping_torus(&hex, &reflection(&hex)).unwrap();
        let fibre_arcs =
            VertexCover::new("circle6", vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let whole_base = VertexCover::new("circle3", vec![vec![0, 1, 2]]).unwrap();
        let err = combine_covers(&bundle, &fibre_arcs, &whole_base).unwrap_err();
        assert!(matches!(err, Error::NoTrivialization(js) if js == vec![0]));
    }

    #[test]
    fn identity_monodromy_combines_like_a_product() {
        let c = circle();
        let id = SimplicialMap::new(&c, &c, vec![0, 1, 2]).unwrap();
        let bundle = Bundle::mapping_torus(&c, &id).unwrap();
        let arcs = VertexCover::new("circle3", vec![vec![0, 1], vec![2]]).unwrap();
        let base_arcs = base_two_arc_cover(&bundle.base).unwrap();
        let combined = combine_covers(&bundle, &arcs, &base_arcs).unwrap();
        assert_eq!(combined.pieces.len(), 4);
        let report = validate_cover(
            &bundle.total,
            &combined,
            &GroupClass::new(ClassKind::Trivial),
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(report.admissible, Answer::Yes);
    }

    #[test]
    fn torus_bound_doubles_and_gates_on_dimension() {
        // Circle fibre: 2 * 1 = 2 fits inside dim 2.
        assert_eq!(
            mapping_torus_bound(1, 1),
            TorusBound {
                doubled: 2,
                dim_bound: Some(2)
            }
        );
        // Surface fibre with bound 3: 6 > 3, only the doubled bound.
        assert_eq!(
            mapping_torus_bound(3, 2),
            TorusBound {
                doubled: 6,
                dim_bound: None
            }
        );
        // Boundary case 2n = dim + 1.
        assert_eq!(
            mapping_torus_bound(2, 3),
            TorusBound {
                doubled: 4,
                dim_bound: Some(4)
            }
        );
    }
}
