//! Named codes, classification runs, the search pipeline and the JSON code format.

mod classify;
mod entries;
mod format;
mod search;

pub use classify::{classify, classify_with, ClassMember, Classification, ClassifyOptions, CodeClass, WITNESS_CLASSIFY_MAX};
pub use entries::{
    catalog_entry, catalog_names, l5_662, l9_1233, pentagon_513, rains_family, star_dimension, star_family, star_family_plus,
    steane_713, CodeDescriptor, CodeKind, RAINS_FAMILY_MAX, STAR_FAMILY_MAX,
};
pub use format::{edges_to_graph, graph_to_edges, CodeJson, EdgesJson};
pub use search::{decide_clique, run_search, CliqueDecision, SearchBounds, SearchLog, SearchMode, SearchReport, StageTimings};
