//! Gallai-Ramsey numbers `gr_k(P5 : H)`.
//!
//! A `k`-coloring of the edges of `K_n` is *exact* when all `k` colors are
//! used. `gr_k(P5 : H)` is the least `N` such that every exact `k`-coloring
//! of `K_N` contains a rainbow path on five vertices or a monochromatic `H`.

pub mod canon;
pub mod construct;
pub mod detect;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod io;
pub mod search;
pub mod structure;
pub mod target;

pub use canon::{canonical_form, canonical_labeling, CanonicalKey, SymmetryMode};
pub use construct::{
    applicable_constructions, blowup, construction_grid, doubling, lower_bound_witness, pentagon,
    pentagon_blowup, r35_witness, sporadic, star_augmented, BlowupSpec, Construction,
    CrossColoring, GridEntry, LowerBoundWitness, Part, PartColoring,
};
pub use detect::{find_mono_copy, find_rainbow_path, max_matching, Embedding};
pub use error::{Error, Result};
pub use formulas::{
    evaluate, evaluate_with, pq_decompose, ramsey_known, GrKind, GrResult, RamseyEntry, RamseyValue,
};
pub use graph::{
    edge_endpoints, edge_index, pair_count, Color, ColoredComplete, ColoringBuilder, VertexSet,
};
pub use io::{from_witness_json, to_witness_json};
pub use search::{
    brute_force_colorings, check_n, compute_gr, verify_witness, CheckOutcome, CheckStatus,
    GrSearch, VerificationFailure, WitnessCertificate,
};
pub use structure::{
    classify_p4free, classify_p5free, enumerate_p5free, find_gallai_partition,
    verify_gallai_partition, CaseWitness, GallaiPartition, P4Class, StructureReport,
};
pub use target::{TargetGraph, TargetProperties};
