//! Mapping torus of a simplicial automorphism.
//!
//! Three prism layers over the fibre are glued in a cycle; the last layer
//! returns to the first through the automorphism. Three layers suffice to
//! keep the quotient simplicial: no simplex sees the same layer twice.
//! The projection collapses layer l to vertex l of a fixed triangulated
//! circle on vertices {0, 1, 2}.

use std::collections::BTreeSet;

use crate::complex::{Simplex, SimplicialComplex, SimplicialMap, Vertex};
use crate::error::{Error, Result};

pub const LAYERS: usize = 3;

#[derive(Debug, Clone)]
pub struct MappingTorus {
    pub complex: SimplicialComplex,
    /// Collapse onto the base circle; layer l goes to base vertex l.
    pub projection: SimplicialMap,
    pub base: SimplicialComplex,
    /// Vertices of the fibre copy over base vertex 0, in fibre order.
    pub fibre_vertices: Vec<Vertex>,
    pub fibre_vertex_count: usize,
}

pub fn base_circle() -> SimplicialComplex {
    SimplicialComplex::build("circle3", &[vec![0, 1], vec![1, 2], vec![0, 2]])
        .expect("static complex")
}

pub fn mapping_torus(x: &SimplicialComplex, g: &SimplicialMap) -> Result<MappingTorus> {
    if x.is_empty() {
        return Err(Error::EmptyComplex(x.name().to_string()));
    }
    g.validate_automorphism(x)?;
    let n = x.vertex_count();
    let at = |layer: usize, v: Vertex| layer * n + v;
    let mut simplices: BTreeSet<Simplex> = BTreeSet::new();
    for top in x.maximal_simplices() {
        let k = top.len();
        for layer in 0..LAYERS {
            let bottom: Vec<Vertex> = top.iter().map(|&v| at(layer, v)).collect();
            let upper: Vec<Vertex> = if layer + 1 < LAYERS {
                top.iter().map(|&v| at(layer + 1, v)).collect()
            } else {
                top.iter().map(|&v| at(0, g.vertex_map[v])).collect()
            };
            // Staircase over the prism: split the vertex list at j.
            for j in 0..k {
                let mut cell: Simplex = Vec::with_capacity(k + 1);
                cell.extend_from_slice(&bottom[..=j]);
                cell.extend_from_slice(&upper[j..]);
                cell.sort_unstable();
                insert_subsets(&mut simplices, &cell);
            }
        }
    }
    let name = format!("maptorus({})", x.name());
    let complex = SimplicialComplex::from_closed_set(name, simplices)?;
    let base = base_circle();
    let projection = SimplicialMap::new(
        &complex,
        &base,
        (0..complex.vertex_count()).map(|v| v / n).collect(),
    )?;
    Ok(MappingTorus {
        complex,
        projection,
        base,
        fibre_vertices: (0..n).collect(),
        fibre_vertex_count: n,
    })
}

fn insert_subsets(set: &mut BTreeSet<Simplex>, ids: &[Vertex]) {
    for mask in 1u32..(1 << ids.len()) {
        let face: Simplex = ids
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        set.insert(face);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{product, SimplicialComplex};

    fn circle() -> SimplicialComplex {
        SimplicialComplex::build("s1", &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap()
    }

    #[test]
    fn torus_of_a_point_is_the_base_circle() {
        let pt = SimplicialComplex::build("pt", &[vec![0]]).unwrap();
        let id = SimplicialMap::new(&pt, &pt, vec![0]).unwrap();
        let mt = mapping_torus(&pt, &id).unwrap();
        assert_eq!(mt.complex.f_vector(), vec![3, 3]);
        assert_eq!(mt.fibre_vertices, vec![0]);
    }

    #[test]
    fn identity_torus_matches_product_counts() {
        let c = circle();
        let id = SimplicialMap::new(&c, &c, vec![0, 1, 2]).unwrap();
        let mt = mapping_torus(&c, &id).unwrap();
        let prod = product(&c, &circle()).unwrap();
        assert_eq!(mt.complex.f_vector(), prod.complex.f_vector());
        assert_eq!(mt.complex.euler_characteristic(), 0);
    }

    #[test]
    fn rotation_torus_is_still_a_closed_surface() {
        let c = circle();
        let rot = SimplicialMap::new(&c, &c, vec![1, 2, 0]).unwrap();
        let mt = mapping_torus(&c, &rot).unwrap();
        assert_eq!(mt.complex.euler_characteristic(), 0);
        // Every edge of a closed surface triangulation lies in two triangles.
        for e in mt.complex.simplices_of_dim(1) {
            let cofaces = mt
                .complex
                .simplices_of_dim(2)
                .filter(|t| e.iter().all(|v| t.contains(v)))
                .count();
            assert_eq!(cofaces, 2, "edge {e:?}");
        }
    }

    #[test]
    fn fibre_vertices_are_the_preimage_of_base_vertex_zero() {
        let c = circle();
        let id = SimplicialMap::new(&c, &c, vec![0, 1, 2]).unwrap();
        let mt = mapping_torus(&c, &id).unwrap();
        let preimage: Vec<Vertex> = (0..mt.complex.vertex_count())
            .filter(|&v| mt.projection.vertex_map[v] == 0)
            .collect();
        assert_eq!(preimage, mt.fibre_vertices);
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let c = circle();
        let fold = SimplicialMap::new(&c, &c, vec![0, 1, 1]).unwrap();
        assert!(matches!(
            mapping_torus(&c, &fold).unwrap_err(),
            Error::NotAnAutomorphism(_)
        ));
    }
}
