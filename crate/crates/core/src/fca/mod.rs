//! Point fibres of simplicial maps and the fibre collapsing check.
//!
//! The preimage of the open star of a target barycenter b_t under the
//! subdivided map is the union of open stars of the source barycenters
//! that land on b_t, and it deformation-retracts onto the full subcomplex
//! they span: the point fibre over t. The fibre collapsing check asks, for
//! every target simplex, that the point fibre's fundamental group image in
//! the source lies in a class; together with a cap on the target dimension
//! this bounds the category of the source from above.

use crate::budget::Budget;
use crate::classes::{classify_image, Answer, GroupClass, Verdict};
use crate::complex::{
    subdivide_map, MapSubdivision, Simplex, SimplicialComplex, SimplicialMap, Subspace, Vertex,
};
use crate::covers::{multiplicity_and_nerve, VertexCover};
use crate::error::{Error, Result};
use crate::pi1::{edge_path_presentation, inclusion_image};

/// Full subcomplex of the subdivided source spanned by barycenters of
/// simplices mapping exactly onto `tau`; empty when `tau` misses the image.
pub fn point_fibre(ms: &MapSubdivision, tau: &[Vertex]) -> Result<Subspace> {
    let target_vertex = ms.target.vertex_for(tau).ok_or_else(|| {
        Error::Malformed(format!(
            "{tau:?} is not a simplex of {}",
            ms.target.original
        ))
    })?;
    let vertices: Vec<Vertex> = ms
        .map
        .vertex_map
        .iter()
        .enumerate()
        .filter(|&(_, &w)| w == target_vertex)
        .map(|(v, _)| v)
        .collect();
    crate::complex::full_subcomplex(&ms.source.complex, &vertices)
}

#[derive(Debug, Clone)]
pub struct FibreVerdict {
    pub target_simplex: Simplex,
    /// Vertices of the fibre inside the subdivided source.
    pub fibre_vertex_count: usize,
    pub verdict: Verdict,
}

/// Outcome of the fibre collapsing check for one map, class, and cap.
#[derive(Debug, Clone)]
pub struct FcaReport {
    pub map_source: String,
    pub map_target: String,
    pub cap: usize,
    pub target_dim: usize,
    pub fibres: Vec<FibreVerdict>,
    pub holds: Answer,
}

/// Check the fibre collapsing assumption for `f` with dimension cap `k`:
/// the target dimension must not exceed `k`, and every point fibre must
/// have fundamental group image in the class.
pub fn check_fca(
    f: &SimplicialMap,
    src: &SimplicialComplex,
    tgt: &SimplicialComplex,
    class: &GroupClass,
    k: usize,
    budget: &Budget,
) -> Result<FcaReport> {
    let target_dim = tgt
        .dim()
        .ok_or_else(|| Error::EmptyComplex(tgt.name().to_string()))?;
    if target_dim > k {
        return Err(Error::DimensionGate {
            target_dim,
            cap: k,
        });
    }
    let ms = subdivide_map(f, src, tgt)?;
    let (ambient, ewm) = edge_path_presentation(&ms.source.complex, 0)?;

    let mut fibres = Vec::new();
    for tau in tgt.simplices_canonical() {
        let fibre = point_fibre(&ms, &tau)?;
        let image = inclusion_image(&ms.source.complex, &fibre.to_ambient, &ewm)?;
        let verdict = classify_image(&image, &ambient, class, budget);
        fibres.push(FibreVerdict {
            target_simplex: tau,
            fibre_vertex_count: fibre.to_ambient.len(),
            verdict,
        });
    }
    let holds = if fibres.iter().any(|f| f.verdict.answer == Answer::No) {
        Answer::No
    } else if fibres.iter().any(|f| f.verdict.answer == Answer::Unknown) {
        Answer::Unknown
    } else {
        Answer::Yes
    };
    Ok(FcaReport {
        map_source: src.name().to_string(),
        map_target: tgt.name().to_string(),
        cap: k,
        target_dim,
        fibres,
        holds,
    })
}

/// A partition cover turned into fibre-collapsing evidence: the map to the
/// nerve sending each vertex to its piece, checked with cap one less than
/// the cover multiplicity.
#[derive(Debug, Clone)]
pub struct FcaWitness {
    pub map: SimplicialMap,
    pub nerve: SimplicialComplex,
    pub cap: usize,
    pub report: FcaReport,
}

pub fn cover_to_fca_witness(
    x: &SimplicialComplex,
    cover: &VertexCover,
    class: &GroupClass,
    budget: &Budget,
) -> Result<FcaWitness> {
    let nerve_report = multiplicity_and_nerve(x, cover)?;
    let index_map = nerve_report.index_map.ok_or_else(|| {
        let mut count = vec![0usize; x.vertex_count()];
        for piece in &cover.pieces {
            for &v in piece {
                count[v] += 1;
            }
        }
        let vertex = count.iter().position(|&c| c > 1).unwrap_or(0);
        Error::NotAPartition { vertex }
    })?;
    let map = SimplicialMap::new(x, &nerve_report.nerve, index_map)?;
    let cap = nerve_report.multiplicity - 1;
    let report = check_fca(&map, x, &nerve_report.nerve, class, cap, budget)?;
    Ok(FcaWitness {
        map,
        nerve: nerve_report.nerve,
        cap,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::ClassKind;
    use crate::complex::{barycentric_subdivision, product};

    fn circle() -> SimplicialComplex {
        SimplicialComplex::build("circle3", &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn class(kind: ClassKind) -> GroupClass {
        GroupClass::new(kind)
    }

    #[test]
    fn point_fibres_of_a_product_projection_are_fibre_copies() {
        let c = circle();
        let p = product(&c, &c).unwrap();
        let report = check_fca(
            &p.proj_right,
            &p.complex,
            &c,
            &class(ClassKind::Amenable),
            1,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(report.target_dim, 1);
        assert_eq!(report.holds, Answer::Yes);
        // every fibre of a projection is a copy of the fibre circle, so
        // none is empty
        for f in &report.fibres {
            assert!(f.fibre_vertex_count > 0, "{:?}", f.target_simplex);
        }
    }

    #[test]
    fn collapsing_fails_for_trivial_class_on_a_circle_fibre() {
        let c = circle();
        let p = product(&c, &c).unwrap();
        let report = check_fca(
            &p.proj_right,
            &p.complex,
            &c,
            &class(ClassKind::Trivial),
            1,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(report.holds, Answer::No);
    }

    #[test]
    fn dimension_gate_rejects_small_caps() {
        let c = circle();
        let p = product(&c, &c).unwrap();
        let err = check_fca(
            &p.proj_right,
            &p.complex,
            &c,
            &class(ClassKind::Amenable),
            0,
            &Budget::default(),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionGate {
                target_dim: 1,
                cap: 0
            }
        ));
    }

    #[test]
    fn stars_partition_witness_holds_for_any_class() {
        let c = circle();
        let t = product(&c, &c).unwrap().complex;
        let sd = barycentric_subdivision(&t);
        let cover = crate::covers::stars_cover(&sd);
        let witness = cover_to_fca_witness(
            &sd.complex,
            &cover,
            &class(ClassKind::Trivial),
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(witness.cap, 2);
        assert_eq!(witness.report.holds, Answer::Yes);
        assert_eq!(witness.nerve.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn overlapping_cover_is_rejected_as_witness() {
        let c = circle();
        let cover = VertexCover::new("circle3", vec![vec![0, 1], vec![1, 2]]).unwrap();
        let err = cover_to_fca_witness(
            &c,
            &cover,
            &class(ClassKind::Trivial),
            &Budget::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAPartition { vertex: 1 }));
    }

    #[test]
    fn empty_fibres_are_vacuously_admissible() {
        // collapse a circle onto a single vertex of an edge; fibres over
        // the rest of the edge are empty
        let c = circle();
        let edge = SimplicialComplex::build("edge", &[vec![0, 1]]).unwrap();
        let collapse = SimplicialMap::new(&c, &edge, vec![0, 0, 0]).unwrap();
        let report = check_fca(
            &collapse,
            &c,
            &edge,
            &class(ClassKind::Amenable),
            1,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(report.holds, Answer::Yes);
        let empty = report
            .fibres
            .iter()
            .filter(|f| f.fibre_vertex_count == 0)
            .count();
        // fibres over vertex 1 and over the edge interior are empty
        assert_eq!(empty, 2);
    }
}
