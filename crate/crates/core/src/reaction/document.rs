//! JSON round-trip format for hypergraphs:
//!
//! ```json
//! {
//!   "n": 4,
//!   "names": ["A", "B", "C", "D"],
//!   "edges": [{"left": [0], "right": [1], "label": "E"}, ...]
//! }
//! ```
//!
//! Vertex indices reference `names`; `label` is optional. Reading validates
//! everything the data model requires — index range, non-empty disjoint
//! sides, distinct names — so `read_hypergraph(write_hypergraph(g)) == g`
//! and nothing else gets through. The synthetic-intermediate flag of a
//! [`NameTable`] is not part of the schema and is not round-tripped.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{OrientedHyperedge, OrientedHypergraph, VertexSet};
use crate::reaction::builder::NameTable;

#[derive(Clone, Debug, Serialize, Deserialize)]
struct EdgeDocument {
    left: Vec<u32>,
    right: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// The serialized form of a hypergraph plus its substance names.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypergraphDocument {
    n: u32,
    names: Vec<String>,
    edges: Vec<EdgeDocument>,
}

impl HypergraphDocument {
    pub fn from_hypergraph(g: &OrientedHypergraph, names: &NameTable) -> Result<Self> {
        if names.len() != g.n() as usize {
            return Err(Error::Document(format!(
                "name table has {} entries but the universe has {}",
                names.len(),
                g.n()
            )));
        }
        Ok(HypergraphDocument {
            n: g.n(),
            names: names.names().to_vec(),
            edges: g
                .edges()
                .map(|e| EdgeDocument {
                    left: e.left().indices(),
                    right: e.right().indices(),
                    label: e.label().map(str::to_string),
                })
                .collect(),
        })
    }

    pub fn to_hypergraph(&self) -> Result<(OrientedHypergraph, NameTable)> {
        if self.names.len() != self.n as usize {
            return Err(Error::Document(format!(
                "document declares n={} but lists {} names",
                self.n,
                self.names.len()
            )));
        }
        let table = NameTable::new(self.names.clone())?;
        let mut g = OrientedHypergraph::new(self.n)?;
        for e in &self.edges {
            let left = VertexSet::from_indices(self.n, &e.left)?;
            let right = VertexSet::from_indices(self.n, &e.right)?;
            let edge = match &e.label {
                Some(l) => OrientedHyperedge::with_label(left, right, l.clone())?,
                None => OrientedHyperedge::new(left, right)?,
            };
            g.insert(edge)?;
        }
        Ok((g, table))
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Serializes a hypergraph and its names as JSON to the writer.
pub fn write_hypergraph<W: Write>(
    mut writer: W,
    g: &OrientedHypergraph,
    names: &NameTable,
) -> Result<()> {
    let doc = HypergraphDocument::from_hypergraph(g, names)?;
    serde_json::to_writer_pretty(&mut writer, &doc)?;
    writer.write_all(b"\n")?;
    Ok(())
}

/// Reads and validates a hypergraph JSON document.
pub fn read_hypergraph<R: Read>(reader: R) -> Result<(OrientedHypergraph, NameTable)> {
    let doc: HypergraphDocument = serde_json::from_reader(reader)?;
    doc.to_hypergraph()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reaction::{ingest, AutocatalyticPolicy};

    fn round_trip(g: &OrientedHypergraph, names: &NameTable) -> (OrientedHypergraph, NameTable) {
        let mut buffer = Vec::new();
        write_hypergraph(&mut buffer, g, names).unwrap();
        read_hypergraph(buffer.as_slice()).unwrap()
    }

    #[test]
    fn toy_round_trip_preserves_graph_names_and_labels() {
        let out = ingest(
            "r1: A -[E]-> B\nA + C -> D\nB + C -> D\nB + C -> A + D\n",
            AutocatalyticPolicy::Reject,
        )
        .unwrap();
        let (g2, names2) = round_trip(&out.hypergraph, &out.names);
        assert_eq!(g2, out.hypergraph);
        assert_eq!(names2.names(), out.names.names());
        let labels: Vec<Option<&str>> = g2.edges().map(|e| e.label()).collect();
        assert!(labels.contains(&Some("E")));
    }

    #[test]
    fn complete_five_round_trip() {
        let g = OrientedHypergraph::complete(5).unwrap();
        let (g2, _) = round_trip(&g, &NameTable::numbered(5));
        assert_eq!(g2.edge_count(), 90);
        assert_eq!(g2, g);
    }

    #[test]
    fn unlabeled_edges_omit_the_label_key() {
        let g = OrientedHypergraph::complete(3).unwrap();
        let doc = HypergraphDocument::from_hypergraph(&g, &NameTable::numbered(3)).unwrap();
        let text = doc.to_json_string().unwrap();
        assert!(!text.contains("label"));
    }

    #[test]
    fn overlap_documents_rejected() {
        let text = r#"{"n":3,"names":["a","b","c"],"edges":[{"left":[0,1],"right":[1]}]}"#;
        let doc = HypergraphDocument::from_json_str(text).unwrap();
        assert!(matches!(doc.to_hypergraph(), Err(Error::OverlappingSides)));
    }

    #[test]
    fn invalid_documents_rejected() {
        let out_of_range = r#"{"n":3,"names":["a","b","c"],"edges":[{"left":[0],"right":[7]}]}"#;
        assert!(matches!(
            HypergraphDocument::from_json_str(out_of_range)
                .unwrap()
                .to_hypergraph(),
            Err(Error::VertexOutOfRange { v: 7, n: 3 })
        ));

        let name_mismatch = r#"{"n":3,"names":["a","b"],"edges":[]}"#;
        assert!(matches!(
            HypergraphDocument::from_json_str(name_mismatch)
                .unwrap()
                .to_hypergraph(),
            Err(Error::Document(_))
        ));

        let duplicate_names = r#"{"n":2,"names":["a","a"],"edges":[]}"#;
        assert!(HypergraphDocument::from_json_str(duplicate_names)
            .unwrap()
            .to_hypergraph()
            .is_err());

        let empty_side = r#"{"n":3,"names":["a","b","c"],"edges":[{"left":[],"right":[1]}]}"#;
        assert!(matches!(
            HypergraphDocument::from_json_str(empty_side)
                .unwrap()
                .to_hypergraph(),
            Err(Error::EmptySide)
        ));

        assert!(matches!(
            HypergraphDocument::from_json_str("{not json"),
            Err(Error::Json(_))
        ));
    }
}
