//! Topological analysis of parallel-system interconnects.
//!
//! Graphs are described through projections: rooted multilevel structures
//! of simple chains grown from an angle vertex. On top of them the crate
//! computes hop metrics, ∂-reachability graphs, maximum ∂-cliques
//! (∂-density, the potential parallelism of fully connected tasks), task
//! embeddings under a distance budget, and worst-case density under vertex
//! faults. The [`parallelism`] module links these to a modified Amdahl
//! model that turns a speedup or efficiency directive into the admissible
//! inter-processor distance.
//!
//! [`oracle`] holds brute-force reference versions of the graph algorithms
//! for auditing small inputs.

pub mod clique;
pub mod embedding;
pub mod error;
pub mod fault;
pub mod graph;
pub mod oracle;
pub mod parallelism;
pub mod projection;
pub mod reachability;

pub use clique::{
    delta_density, enumerate_delta_components, max_clique, restricted_projection, CliqueResult, RestrictedProjection,
};
pub use embedding::{embed, embed_ring, enumerate_cycles, girth, Embedding};
pub use error::{Error, Result};
pub use fault::{is_fault_tolerant, worst_case_density, FaultReport, ToleranceCheck};
pub use graph::{generate_topology, Graph, Topology, VertexSet};
pub use parallelism::{
    achieved_efficiency, achieved_speedup, max_feasible_parallelism, per_branch, reachability_budget,
    required_distance_for_efficiency, required_distance_for_speedup, tech_coefficient, BranchLoad, DelayModel,
    Directive, ParallelPlan, TaskVolumes,
};
pub use projection::{build_projection, diameter, distance, eccentricity, parse_bracket, Projection, ProjectionMode};
pub use reachability::{compress, ReachGraph};
