//! Persistent homology over GF(2) for labeled indicator data.
//!
//! The crate builds filtered simplicial complexes from point clouds (Vietoris-
//! Rips and witness constructions), reduces their boundary matrices to obtain
//! barcodes with representative cycles, and wraps the whole thing in a CSV
//! pipeline that groups identical rows, splits the data into connected
//! components, and names the polyhedral 2-cycles it finds.
//!
//! Everything is generic over the scalar type (`f32` or `f64`); the `*F32`
//! aliases at the crate root pin the narrow width, and the default type
//! parameter gives `f64` everywhere else.
//!
//! # Example
//!
//! ```
//! use concept_homology::{compute_persistence, rips_filtration, PointCloud};
//!
//! let square = PointCloud::new(vec![
//!     vec![0.0, 0.0],
//!     vec![1.0, 0.0],
//!     vec![0.0, 1.0],
//!     vec![1.0, 1.0],
//! ])
//! .unwrap();
//! let complex = rips_filtration(&square, 2.0, 2, "euclidean").unwrap();
//! let barcode = compute_persistence(&complex, 1).unwrap();
//!
//! // The four sides close a loop at 1.0 that the diagonals fill at sqrt(2).
//! let loops: Vec<_> = barcode.intervals_of_degree(1).collect();
//! assert_eq!(loops.len(), 1);
//! assert_eq!(loops[0].birth(), 1.0);
//! assert!((loops[0].death() - 2.0_f64.sqrt()).abs() < 1e-12);
//! ```

pub mod builders;
pub mod gf2;
pub mod homology;
pub mod persistence;
pub mod pipeline;
pub mod scalar;
pub mod simplicial;

pub use builders::{
    components_at, distance_matrix, max_pairwise_distance, normalize_min_max, rips_filtration,
    vertex_set, witness_filtration, BuildError, DistanceMatrix, LandmarkSet, Metric, PointCloud,
};
pub use gf2::{
    rank_gf2, rank_gf2_dense, rank_gf2_sparse, reduce_with_combination, Decomposition,
    DenseColumn, GF2Matrix, Gf2Column, Gf2Error, SparseColumn,
};
pub use homology::{
    betti_numbers, boundary_matrix, chain_basis, cycle_space_basis, BettiVector, ChainBasis,
    HomologyError,
};
pub use persistence::{
    compute_persistence, persistent_betti, representative_cycle, Barcode, PersistenceError,
    PersistenceInterval,
};
pub use pipeline::{
    analyze, component_representative, dedup, homology_trivial, ingest_csv, name_shape,
    report_from_json, AnalysisReport, AnalyzeConfig, ComponentReport, CycleShape, DedupResult,
    IndicatorTable, MissingPolicy, PipelineError, ReportBar, ReportComponent, ReportCycle,
    ReportDocument, ReportParameters, ResolvedParameters,
};
pub use scalar::Scalar;
pub use simplicial::{
    build_complex, canonical_cmp, faces, skeleton, ComplexError, FilteredComplex, Simplex,
    VertexId,
};

/// Single-precision aliases for the core data types.
pub type SimplexF32 = Simplex<f32>;
pub type FilteredComplexF32 = FilteredComplex<f32>;
pub type PointCloudF32 = PointCloud<f32>;
pub type DistanceMatrixF32 = DistanceMatrix<f32>;
pub type PersistenceIntervalF32 = PersistenceInterval<f32>;
pub type BarcodeF32 = Barcode<f32>;
pub type IndicatorTableF32 = IndicatorTable<f32>;
pub type AnalysisReportF32 = AnalysisReport<f32>;
