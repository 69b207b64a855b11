//! Library for computing and certifying open-cover invariants of finite
//! simplicial complexes: category-style upper bounds relative to a class of
//! fundamental-group constraints, constructive covers for products and
//! mapping tori, fibre collapsing checks, and a forward-chaining fact
//! engine for vanishing results.

pub mod budget;
pub mod certify;
pub mod classes;
pub mod complex;
pub mod covers;
pub mod error;
pub mod fca;
pub mod fibration;
pub mod io;
pub mod pi1;

pub use budget::Budget;
pub use certify::{
    FactEntry, FactId, FactStore, Provenance, QueryOutcome, Saturation, Statement, Trace, Witness,
};
pub use classes::{
    classify_group, classify_image, finite_cover_rate, Answer, ClassKind, GroupClass, LogRate,
    Rounding, Verdict,
};
pub use complex::{
    barycentric_subdivision, full_subcomplex, mapping_torus, product, subdivide_map, wedge,
    MappingTorus, ProductComplex, Simplex, SimplicialComplex, SimplicialMap, SubdivisionCarrier,
    Subspace, Vertex,
};
pub use covers::{
    cat_lower, cat_upper, multiplicity_and_nerve, stars_cover, validate_cover, CatBound,
    CoverReport, NerveReport, Strategy, VertexCover,
};
pub use error::{Error, ErrorCategory, Result};
pub use fca::{check_fca, cover_to_fca_witness, point_fibre, FcaReport, FcaWitness};
pub use fibration::{
    base_two_arc_cover, combine_covers, mapping_torus_bound, Bundle, BundleKind, TorusBound,
};
pub use pi1::{
    edge_path_presentation, inclusion_image, simplify_presentation, smith_normal_form,
    todd_coxeter, AbelianInvariants, CosetOutcome, GroupPresentation, Word,
};
