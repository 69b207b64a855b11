//! Barycentric subdivision with carrier bookkeeping.
//!
//! Subdivision vertices are numbered by the canonical (dimension-major,
//! then lexicographic) order of the original simplices, and the carrier
//! records that bijection. Simplices of the subdivision are exactly the
//! chains of proper faces, generated as subsets of full flags of the
//! maximal simplices.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::complex::{Simplex, SimplicialComplex, SimplicialMap, Vertex};
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct SubdivisionCarrier {
    pub original: String,
    pub complex: SimplicialComplex,
    /// Subdivision vertex -> original simplex it is the barycenter of.
    pub carrier: Vec<Simplex>,
    index: BTreeMap<Simplex, Vertex>,
}

impl SubdivisionCarrier {
    /// Subdivision vertex sitting at the barycenter of `s`, if `s` is a
    /// simplex of the original complex.
    pub fn vertex_for(&self, s: &[Vertex]) -> Option<Vertex> {
        self.index.get(s).copied()
    }
}

pub fn barycentric_subdivision(x: &SimplicialComplex) -> SubdivisionCarrier {
    let carrier = x.simplices_canonical();
    let index: BTreeMap<Simplex, Vertex> = carrier
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let mut simplices: BTreeSet<Simplex> = BTreeSet::new();
    for top in x.maximal_simplices() {
        let k = top.len();
        for perm in top.iter().permutations(k) {
            // Prefixes of the permutation form a full flag of faces.
            let mut chain: Vec<Vertex> = Vec::with_capacity(k);
            let mut prefix: Simplex = Vec::with_capacity(k);
            for &v in perm {
                let pos = prefix.binary_search(&v).unwrap_err();
                prefix.insert(pos, v);
                chain.push(index[&prefix]);
            }
            // Ids grow with dimension, so every chain is already sorted.
            insert_chain_faces(&mut simplices, &chain);
        }
    }
    let complex =
        SimplicialComplex::from_closed_set(format!("sd({})", x.name()), simplices)
            .expect("flag closure has no vertex gaps");
    SubdivisionCarrier {
        original: x.name().to_string(),
        complex,
        carrier,
        index,
    }
}

fn insert_chain_faces(set: &mut BTreeSet<Simplex>, chain: &[Vertex]) {
    for mask in 1u32..(1 << chain.len()) {
        let face: Simplex = chain
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        set.insert(face);
    }
}

/// A simplicial map together with the subdivisions of both endpoints.
#[derive(Debug, Clone)]
pub struct MapSubdivision {
    pub source: SubdivisionCarrier,
    pub target: SubdivisionCarrier,
    pub map: SimplicialMap,
}

/// Subdivides a map by sending the barycenter of `s` to the barycenter of
/// its image simplex.
pub fn subdivide_map(
    f: &SimplicialMap,
    src: &SimplicialComplex,
    tgt: &SimplicialComplex,
) -> Result<MapSubdivision> {
    f.validate(src, tgt)?;
    let source = barycentric_subdivision(src);
    let target = barycentric_subdivision(tgt);
    let vertex_map: Vec<Vertex> = source
        .carrier
        .iter()
        .map(|s| {
            target
                .vertex_for(&f.image_of(s))
                .expect("image of a simplex is a simplex")
        })
        .collect();
    let map = SimplicialMap::new(&source.complex, &target.complex, vertex_map)?;
    Ok(MapSubdivision {
        source,
        target,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    /// Independent oracle: counts chains of simplices ordered by proper
    /// inclusion, via depth-first extension over the raw simplex list.
    fn chain_count_oracle(x: &SimplicialComplex, length: usize) -> usize {
        let all: Vec<Simplex> = x.simplices().cloned().collect();
        fn extend(all: &[Simplex], chain_end: &Simplex, remaining: usize) -> usize {
            if remaining == 0 {
                return 1;
            }
            all.iter()
                .filter(|s| {
                    s.len() > chain_end.len() && chain_end.iter().all(|v| s.contains(v))
                })
                .map(|s| extend(all, s, remaining - 1))
                .sum()
        }
        all.iter().map(|s| extend(&all, s, length - 1)).sum()
    }

    #[test]
    fn subdivided_triangle_counts_match_chain_oracle() {
        let x = SimplicialComplex::build("t", &[vec![0, 1, 2]]).unwrap();
        let sd = barycentric_subdivision(&x);
        assert_eq!(sd.complex.f_vector(), vec![7, 12, 6]);
        for k in 1..=3 {
            assert_eq!(
                sd.complex.simplices_of_dim(k - 1).count(),
                chain_count_oracle(&x, k),
                "chains of length {k}"
            );
        }
        assert_eq!(sd.complex.euler_characteristic(), x.euler_characteristic());
    }

    #[test]
    fn circle_subdivides_to_hexagon() {
        let s1 = SimplicialComplex::build("s1", &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let sd = barycentric_subdivision(&s1);
        assert_eq!(sd.complex.f_vector(), vec![6, 6]);
        // Canonical numbering: original vertices first, then edge barycenters.
        assert_eq!(sd.carrier[0], vec![0]);
        assert_eq!(sd.carrier[3], vec![0, 1]);
        assert_eq!(sd.vertex_for(&[1, 2]), Some(5));
    }

    #[test]
    fn carrier_is_a_bijection() {
        let x = SimplicialComplex::build("x", &[vec![0, 1, 2], vec![2, 3]]).unwrap();
        let sd = barycentric_subdivision(&x);
        assert_eq!(sd.carrier.len(), x.simplex_count());
        assert_eq!(sd.complex.vertex_count(), x.simplex_count());
        for (v, s) in sd.carrier.iter().enumerate() {
            assert_eq!(sd.vertex_for(s), Some(v));
        }
    }

    #[test]
    fn top_simplex_count_scales_by_factorial_on_pure_complexes() {
        let s2 = SimplicialComplex::build(
            "s2",
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        let sd = barycentric_subdivision(&s2);
        assert_eq!(sd.complex.simplices_of_dim(2).count(), 4 * 6);
        assert_eq!(sd.complex.euler_characteristic(), 2);
    }

    #[test]
    fn subdivided_map_sends_barycenters_to_image_barycenters() {
        let edge = SimplicialComplex::build("e", &[vec![0, 1]]).unwrap();
        let point = SimplicialComplex::build("p", &[vec![0]]).unwrap();
        let collapse = SimplicialMap::new(&edge, &point, vec![0, 0]).unwrap();
        let sub = subdivide_map(&collapse, &edge, &point).unwrap();
        assert_eq!(sub.source.complex.vertex_count(), 3);
        assert_eq!(sub.map.vertex_map, vec![0, 0, 0]);

        let s1 = SimplicialComplex::build("s1", &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let ident = SimplicialMap::new(&s1, &s1, vec![0, 1, 2]).unwrap();
        let sub = subdivide_map(&ident, &s1, &s1).unwrap();
        assert_eq!(sub.map.vertex_map, vec![0, 1, 2, 3, 4, 5]);
    }
}
