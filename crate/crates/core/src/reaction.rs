//! Chemical-reaction text ingestion and serialization: a line-oriented
//! reaction grammar, interning of substance names into a vertex universe,
//! adjacency-matrix classification export, and a JSON round-trip format
//! for hypergraphs.
//!
//! The pipeline is `parse_reactions` → `build_hypergraph`; [`ingest`] runs
//! both. Reactions whose educt and product sets overlap (autocatalytic in
//! the loose sense) are not representable as a single edge with disjoint
//! sides; [`AutocatalyticPolicy`] chooses between rejecting them and
//! splitting them through a fresh intermediate substance.

pub mod builder;
pub mod document;
pub mod matrix;
pub mod parser;

pub use builder::{build_hypergraph, AutocatalyticPolicy, NameTable};
pub use document::{read_hypergraph, write_hypergraph, HypergraphDocument};
pub use matrix::{export_matrix, export_matrix_with_names, write_dense_csv, MatrixExport};
pub use parser::{parse_reactions, print_reactions, ParseOutcome, ReactionRecord};

use crate::error::Result;
use crate::hypergraph::OrientedHypergraph;

/// Everything produced by ingesting one reaction file.
#[derive(Clone, Debug)]
pub struct IngestOutcome {
    pub hypergraph: OrientedHypergraph,
    pub names: NameTable,
    /// Human-readable notes emitted while parsing (discarded coefficients,
    /// collapsed duplicates), each prefixed with its line number.
    pub warnings: Vec<String>,
}

/// Parses reaction text and builds the oriented hypergraph in one step.
pub fn ingest(text: &str, policy: AutocatalyticPolicy) -> Result<IngestOutcome> {
    let parsed = parse_reactions(text)?;
    let (hypergraph, names) = build_hypergraph(&parsed.records, policy)?;
    Ok(IngestOutcome {
        hypergraph,
        names,
        warnings: parsed.warnings,
    })
}
