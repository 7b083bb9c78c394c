//! Hamilton path decompositions of complete multipartite graphs.
//!
//! A complete multipartite graph with `n` vertices and `m` edges splits into
//! edge-disjoint Hamilton paths exactly when `t = m/(n-1)` is an integer and
//! no vertex has degree above `2t`. [`hamilton_decompose`] builds such a
//! decomposition, [`verify_decomposition`] checks one independently, and
//! [`brute_force_decompose`] searches exhaustively at small orders.
//!
//! ```
//! use hampath_core::{hamilton_decompose, verify_decomposition, MultipartiteSpec};
//!
//! let spec: MultipartiteSpec = "1^4,2,3".parse().unwrap();
//! let d = hamilton_decompose(&spec).unwrap();
//! assert_eq!(d.len(), 4);
//! assert!(verify_decomposition(&spec, &d).valid);
//! ```

pub mod census;
pub mod document;
pub mod error;
pub mod factorize;
pub mod graph;
pub mod multipartite;
pub mod pipeline;
pub mod recolour;
pub mod verify;

pub use census::{
    census_row, count_admissible, count_admissible_with, enumerate_specs, CensusRow, CensusSummary,
};
pub use document::DecompositionDocument;
pub use error::{Error, Result};
pub use factorize::{
    find_star, proportional_factorization, split_star, two_factorization, StarCase, StarCertificate,
};
pub use graph::{classify_factor, Colouring, Edge, FactorShape, MultiGraph, ShapeKind};
pub use multipartite::{
    admissibility, build_graph, degree_partition, part_partition, quotient, AdmissibilityReason,
    AdmissibilityReport, MultipartiteSpec, QuotientView, VertexPartition,
};
pub use pipeline::{
    base_factorisation, hamilton_decompose, hamilton_decompose_traced, part_connect, Decomposition,
    PipelineTrace, TraceEntry,
};
pub use recolour::{
    almost_regular_recolour, connect_pair, equitabilise, Factorisation, SymmetricOrbit,
};
pub use verify::{
    brute_force_decompose, brute_force_decompose_bounded, verify_decomposition, Failure,
    FailureReason, OracleOutcome, VerificationReport, DEFAULT_ORACLE_BOUND,
};
