//! Vertex colorings with small monochromatic connected components.
//!
//! The crate is organized around one quantity: the smallest `m` such that a
//! graph can be `t`-colored with no monochromatic connected component larger
//! than `m` vertices (written `mcc_t` throughout). It provides
//!
//! * [`graph`] — the immutable graph representation, connectivity and
//!   line-graph machinery, and coloring evaluation,
//! * [`embed`] — rotation-system (combinatorial embedding) utilities,
//! * [`separator`] — balanced vertex separators: verification plus planar,
//!   tree-decomposition and fallback providers,
//! * [`fragment`] — the separator-driven 2- and t-coloring algorithm and the
//!   closed-form grid / Hamming-cube colorings,
//! * [`gen`] — instance families used for lower bounds and experiments,
//! * [`exact`] — exact `mcc_t` on small graphs (branch and bound plus a naive
//!   oracle) and density-based lower-bound certificates,
//! * [`io`] — the byte-exact text formats for graphs, colorings and tree
//!   decompositions.

pub mod embed;
pub mod exact;
pub mod fragment;
pub mod gen;
pub mod graph;
pub mod io;
pub mod separator;

pub use graph::{
    avg_degree, components, line_graph, line_graph_avg_degree, max_mono_component, Coloring,
    ComponentReport, Edge, Graph, GraphError, LineGraph, Vertex,
};
pub use separator::{
    fallback_separator, planar_separator, treewidth_separator, verify_separator, SeparatorError,
    SeparatorProfile, SeparatorProvider, SeparatorResult, TreeDecomposition,
};
