//! Construction toolkit for constant-dimension subspace codes.
//!
//! The crate builds error-correcting codes whose codewords are subspaces of
//! GF(q)^n, following a multilevel recipe: a binary constant-weight skeleton
//! picks echelon shapes, each shape carries a rank-metric code trimmed to its
//! Ferrers diagram, and the trimmed codewords lift to subspaces. A puncturing
//! step trades one ambient dimension for a larger, mixed-dimension code.
//!
//! Module map:
//! - [`field`]: small finite fields GF(p^e) with prime-field coordinates.
//! - [`matrix`]: dense matrices over those fields, RREF, rank, kernels.
//! - [`subspace`]: subspaces as canonical generators, subspace distance,
//!   Grassmannian enumeration.
//! - [`ferrers`]: echelon forms of binary vectors, their Ferrers diagrams,
//!   the dimension bound, and lifting fillings to subspaces.
//! - [`rank_metric`]: maximum-rank-distance codes and their restriction to a
//!   diagram.
//! - [`multilevel`]: skeleton selection, the assembled construction, and
//!   distance-law verification.
//! - [`puncture`]: hyperplane puncturing and exhaustive distance scans.
//! - [`codefile`]: a plain-text serialization with stable round-trips.

pub mod codefile;
pub mod ferrers;
pub mod field;
pub mod matrix;
pub mod multilevel;
pub mod puncture;
pub mod rank_metric;
pub mod subspace;

pub use codefile::{emit, parse, CodeFileError, CodeFileWarning, ParseOutcome};
pub use ferrers::{EchelonFerrersForm, FerrersDiagram, FerrersError};
pub use field::{Field, FieldElement, FieldError};
pub use matrix::GFMatrix;
pub use multilevel::{
    construct_code, lexicode_skeleton, verify_fiber_distances, CheckMode, ConstructionError,
    DistanceLawReport, FiberReport, SkeletonCode, SubspaceCode,
};
pub use puncture::{
    puncture, verify_min_distance, DistanceScan, Hyperplane, PunctureError, PunctureReport,
};
pub use rank_metric::{
    ferrers_code, gabidulin, min_rank_distance, rank_distance, LinearMatrixCode, RankMetricError,
};
pub use subspace::{
    enumerate_grassmannian, gaussian_coefficient, intersection, subspace_distance, BinaryVector,
    Subspace, SubspaceError,
};
