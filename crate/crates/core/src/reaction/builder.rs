//! Turns parsed reaction records into an oriented hypergraph: substance
//! names are interned to vertex indices in first-appearance order, each
//! record becomes one edge (catalysts ride along as labels, never as
//! members), and reactions whose sides share a substance are either
//! rejected or split through a fresh intermediate vertex.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{OrientedHyperedge, OrientedHypergraph, VertexSet};
use crate::reaction::parser::ReactionRecord;

/// What to do with a record whose educt and product sets overlap — such a
/// reaction cannot be one edge, since the two sides of an edge are disjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AutocatalyticPolicy {
    /// Fail with the offending line and the shared substances.
    Reject,
    /// Replace `E -> P` by `E -> Z` and `Z -> P` for a fresh intermediate
    /// substance Z, which joins the universe flagged as synthetic.
    SplitViaIntermediate,
}

/// Vertex-index ↔ substance-name table produced by the builder. Synthetic
/// entries are the intermediates invented by the split policy, not
/// substances from the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NameTable {
    names: Vec<String>,
    synthetic: Vec<bool>,
}

impl NameTable {
    /// A table of the given names, none synthetic. Fails on duplicates.
    pub fn new(names: Vec<String>) -> Result<Self> {
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::Document("substance names must be distinct".into()));
        }
        let synthetic = vec![false; names.len()];
        Ok(NameTable { names, synthetic })
    }

    /// Placeholder names `v0..v{n-1}` for a hypergraph born without any.
    pub fn numbered(n: u32) -> Self {
        NameTable {
            names: (0..n).map(|i| format!("v{i}")).collect(),
            synthetic: vec![false; n as usize],
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: u32) -> Option<&str> {
        self.names.get(v as usize).map(String::as_str)
    }

    pub fn is_synthetic(&self, v: u32) -> bool {
        self.synthetic.get(v as usize).copied().unwrap_or(false)
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    fn push(&mut self, name: String, synthetic: bool) -> u32 {
        self.names.push(name);
        self.synthetic.push(synthetic);
        (self.names.len() - 1) as u32
    }
}

/// Builds the oriented hypergraph of a record list. Names are interned in
/// first-appearance order (educts before products, record by record);
/// synthetic intermediates, if any, are appended after all real substances.
/// Duplicate edges collapse; when duplicates disagree on labels the first
/// one wins, since labels are not part of edge identity.
pub fn build_hypergraph(
    records: &[ReactionRecord],
    policy: AutocatalyticPolicy,
) -> Result<(OrientedHypergraph, NameTable)> {
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }

    let mut table = NameTable {
        names: Vec::new(),
        synthetic: Vec::new(),
    };
    let mut index: HashMap<String, u32> = HashMap::new();
    let mut intern = |table: &mut NameTable, name: &str| -> u32 {
        *index
            .entry(name.to_string())
            .or_insert_with(|| table.push(name.to_string(), false))
    };

    for r in records {
        for name in r.educts.iter().chain(&r.products) {
            intern(&mut table, name);
        }
    }

    // Resolve each record to index sets and allocate intermediates before
    // the universe size is fixed.
    enum Plan {
        Single(BTreeSet<u32>, BTreeSet<u32>, Option<String>),
        Split(BTreeSet<u32>, u32, BTreeSet<u32>, Option<String>),
    }
    let mut plans = Vec::with_capacity(records.len());
    let mut next_intermediate = 0u32;
    for r in records {
        let educts: BTreeSet<u32> = r.educts.iter().map(|n| index[n.as_str()]).collect();
        let products: BTreeSet<u32> = r.products.iter().map(|n| index[n.as_str()]).collect();
        let shared: Vec<&str> = educts
            .intersection(&products)
            .map(|&v| table.names[v as usize].as_str())
            .collect();
        if shared.is_empty() {
            plans.push(Plan::Single(educts, products, r.catalyst.clone()));
        } else {
            match policy {
                AutocatalyticPolicy::Reject => {
                    return Err(Error::AutocatalyticRejected {
                        line: r.source_line as usize,
                        shared: shared.join(", "),
                    });
                }
                AutocatalyticPolicy::SplitViaIntermediate => {
                    let name = loop {
                        let candidate = format!("Z_{next_intermediate}");
                        next_intermediate += 1;
                        if !index.contains_key(&candidate) {
                            break candidate;
                        }
                    };
                    let z = table.push(name.clone(), true);
                    index.insert(name, z);
                    plans.push(Plan::Split(educts, z, products, r.catalyst.clone()));
                }
            }
        }
    }

    let n = table.len() as u32;
    let mut g = OrientedHypergraph::new(n)?;
    let add = |g: &mut OrientedHypergraph,
               a: &BTreeSet<u32>,
               b: &BTreeSet<u32>,
               label: &Option<String>|
     -> Result<()> {
        let left = VertexSet::from_indices(n, &a.iter().copied().collect::<Vec<_>>())?;
        let right = VertexSet::from_indices(n, &b.iter().copied().collect::<Vec<_>>())?;
        let edge = match label {
            Some(l) => OrientedHyperedge::with_label(left, right, l.clone())?,
            None => OrientedHyperedge::new(left, right)?,
        };
        g.insert(edge)?;
        Ok(())
    };
    for plan in &plans {
        match plan {
            Plan::Single(educts, products, label) => add(&mut g, educts, products, label)?,
            Plan::Split(educts, z, products, label) => {
                let mid = BTreeSet::from([*z]);
                add(&mut g, educts, &mid, label)?;
                add(&mut g, &mid, products, label)?;
            }
        }
    }
    Ok((g, table))
}
