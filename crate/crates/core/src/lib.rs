//! Combinatorial toolkit for the labelled 8_18 knot projection.
//!
//! The knot is built as the closure of the three-strand braid
//! `(σ1 σ2⁻¹)⁴`, drawn around the origin. On top of that sit the
//! Alexander polynomial (reduced Burau), writhe and winding phase, the
//! traversal tables that assign values 1..20 to the twenty site visits of
//! one cycle, and the per-site allocation ("defect") analysis.

pub mod alexander;
pub mod allocation;
pub mod braid;
pub mod diagram;
pub mod embedding;
pub mod fixture;
pub mod laurent;
pub mod notation;
pub mod traversal;

pub use alexander::{alexander_from_braid, burau_reduced, normalize_alexander, PolyMatrix};
pub use allocation::{defect_report, ensemble_totals, site_totals, DefectReport, SiteAllocation};
pub use braid::{closure_diagram, writhe, BraidWord, ClosureDiagram, SignedCrossing, VertexRule};
pub use diagram::{
    apply_symmetry, canonical_818, cyclic_equivalent, validate_word, DiagramWord, Site, SiteClass,
    SiteLabel, SymmetryOp, Visit, VisitRole,
};
pub use embedding::{annular_embed, winding_phase, AnnularEmbedding, Point};
pub use fixture::{check_fixture, Errata, FixtureReport, Table1Fixture};
pub use laurent::LaurentPoly;
pub use notation::{
    emit_extended_gauss, gauss_to_dt, parse_braid_word, parse_extended_gauss, DtCode,
};
pub use traversal::{
    enumerate_all, enumerate_representatives, mirror_table, traverse, Direction, EnsembleKind,
    StartSpec, StateEnsemble, TraversalTable,
};
