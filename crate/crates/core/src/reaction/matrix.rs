//! Adjacency-matrix classification export. The conceptual matrix has one
//! row and column per hypervertex (non-empty proper subset of the vertex
//! set, 2ⁿ−2 of them) and every cell is exactly one of three classes:
//! realized (`1`), possible but unrealized (`0-possible`), or impossible
//! because the two subsets share a vertex (`0-impossible`). The JSON export
//! is sparse — realized cells plus exact per-block counting rules — while
//! the CSV export is the dense cell list for small universes.

use std::collections::HashMap;
use std::io::Write;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::counting;
use crate::error::{Error, Result};
use crate::hypergraph::{OrientedHypergraph, PairClass, VertexSet};
use crate::reaction::builder::NameTable;

/// Largest universe for the sparse export: 2¹⁴−2 hypervertices.
pub const MAX_MATRIX_UNIVERSE: u32 = 14;
/// Largest universe for the dense CSV: (2¹⁰−2)² ≈ 10⁶ cells.
pub const MAX_DENSE_CSV_UNIVERSE: u32 = 10;

/// One realized cell, as indices into [`MatrixExport::hypervertices`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
}

/// Exact cell tallies for the full conceptual matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixCounts {
    /// (2ⁿ−2)², all ordered hypervertex pairs including the diagonal.
    pub conceptual_cells: u64,
    /// 2·|edges|: each realized reaction occupies two symmetric cells.
    pub realized_cells: u64,
    /// Disjoint-pair cells carrying no edge.
    pub possible_unrealized_cells: u64,
    /// Cells whose subsets share a vertex (the diagonal included).
    pub impossible_cells: u64,
    /// The closed-form impossible count z(n). It charges each admissible
    /// unordered reaction one cell instead of its two symmetric cells, so
    /// it equals `impossible_cells` plus the number of admissible edges:
    /// z(n) = conceptual_cells − u_r(n).
    pub impossible_convention_count: u64,
}

/// Exact classification counts for the block of cells whose row subsets
/// have `educt_cardinality` members and column subsets `product_cardinality`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockRule {
    pub educt_cardinality: u32,
    pub product_cardinality: u32,
    /// C(n,i)·C(n,j) cells in the block.
    pub cells: u64,
    /// C(n,i)·C(n−i,j) of them join disjoint subsets (realizable).
    pub realizable_cells: u64,
    pub impossible_cells: u64,
    /// True exactly when i + j > n: no room for disjoint subsets.
    pub fully_impossible: bool,
}

/// Sparse matrix classification: hypervertices in (size, lexicographic
/// members) order, the realized cells, whole-matrix tallies, and per-block
/// counting rules that classify every remaining cell.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixExport {
    pub n: u32,
    pub hypervertices: Vec<String>,
    pub realized: Vec<MatrixEntry>,
    pub counts: MatrixCounts,
    pub block_rules: Vec<BlockRule>,
    pub convention_note: String,
}

impl MatrixExport {
    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// All non-empty proper subset masks sorted by (size, members
/// lexicographically) — the row/column order of the matrix.
fn ordered_hypervertices(n: u32) -> Vec<u128> {
    let mut masks: Vec<u128> = (1..((1u128 << n) - 1)).collect();
    masks.sort_by_cached_key(|&m| {
        let set = VertexSet::from_bits(n, m).expect("mask within universe");
        (set.len(), set.indices())
    });
    masks
}

fn hypervertex_label(n: u32, mask: u128, names: &NameTable) -> String {
    VertexSet::from_bits(n, mask)
        .expect("mask within universe")
        .iter()
        .map(|v| names.name(v).unwrap_or("?").to_string())
        .collect::<Vec<_>>()
        .join("+")
}

/// [`export_matrix_with_names`] with placeholder names `v0..v{n-1}`.
pub fn export_matrix(g: &OrientedHypergraph) -> Result<MatrixExport> {
    export_matrix_with_names(g, &NameTable::numbered(g.n()))
}

pub fn export_matrix_with_names(g: &OrientedHypergraph, names: &NameTable) -> Result<MatrixExport> {
    let n = g.n();
    if n > MAX_MATRIX_UNIVERSE {
        return Err(Error::UniverseTooLarge {
            n,
            cap: MAX_MATRIX_UNIVERSE,
        });
    }
    if names.len() != n as usize {
        return Err(Error::Document(format!(
            "name table has {} entries but the universe has {n}",
            names.len()
        )));
    }

    let masks = ordered_hypervertices(n);
    let position: HashMap<u128, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let hypervertices = masks
        .iter()
        .map(|&m| hypervertex_label(n, m, names))
        .collect();

    let mut realized = Vec::with_capacity(2 * g.edge_count() as usize);
    for e in g.edges() {
        let row = position[&e.left().bits()];
        let col = position[&e.right().bits()];
        realized.push(MatrixEntry { row, col });
        realized.push(MatrixEntry { row: col, col: row });
    }
    realized.sort();

    let hypervertex_count = (1u64 << n) - 2;
    let conceptual_cells = hypervertex_count * hypervertex_count;
    let realized_cells = 2 * g.edge_count();
    let u_r = counting::total_edges(n)
        .to_u64()
        .expect("u_r(n) fits u64 for n <= 14");
    let disjoint_cells = 2 * u_r;
    let counts = MatrixCounts {
        conceptual_cells,
        realized_cells,
        possible_unrealized_cells: disjoint_cells - realized_cells,
        impossible_cells: conceptual_cells - disjoint_cells,
        impossible_convention_count: conceptual_cells - u_r,
    };
    debug_assert_eq!(
        counts.impossible_convention_count,
        counting::impossible_pairs(n).to_u64().unwrap()
    );

    let mut block_rules = Vec::new();
    for i in 1..n {
        let rows = counting::binomial(n, i).to_u64().unwrap();
        for j in 1..n {
            let cols = counting::binomial(n, j).to_u64().unwrap();
            let cells = rows * cols;
            let realizable_cells = if i + j <= n {
                rows * counting::binomial(n - i, j).to_u64().unwrap()
            } else {
                0
            };
            block_rules.push(BlockRule {
                educt_cardinality: i,
                product_cardinality: j,
                cells,
                realizable_cells,
                impossible_cells: cells - realizable_cells,
                fully_impossible: realizable_cells == 0,
            });
        }
    }

    Ok(MatrixExport {
        n,
        hypervertices,
        realized,
        counts,
        block_rules,
        convention_note: format!(
            "impossible_convention_count = conceptual_cells - u_r({n}): the closed form \
             charges each admissible unordered reaction one cell rather than its two \
             symmetric cells, so it exceeds impossible_cells by u_r({n}) = {u_r}."
        ),
    })
}

/// Writes the dense cell list as CSV (`row_label,col_label,class` with
/// class ∈ {`1`, `0-possible`, `0-impossible`}), rows and columns in
/// hypervertex order. Quadratic in 2ⁿ, hence the tighter cap.
pub fn write_dense_csv<W: Write>(
    g: &OrientedHypergraph,
    names: &NameTable,
    writer: W,
) -> Result<()> {
    let n = g.n();
    if n > MAX_DENSE_CSV_UNIVERSE {
        return Err(Error::UniverseTooLarge {
            n,
            cap: MAX_DENSE_CSV_UNIVERSE,
        });
    }
    if names.len() != n as usize {
        return Err(Error::Document(format!(
            "name table has {} entries but the universe has {n}",
            names.len()
        )));
    }
    let masks = ordered_hypervertices(n);
    let sets: Vec<VertexSet> = masks
        .iter()
        .map(|&m| VertexSet::from_bits(n, m).expect("mask within universe"))
        .collect();
    let labels: Vec<String> = masks
        .iter()
        .map(|&m| hypervertex_label(n, m, names))
        .collect();

    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["row_label", "col_label", "class"])?;
    for (x, row_label) in sets.iter().zip(&labels) {
        for (y, col_label) in sets.iter().zip(&labels) {
            let class = match g.classify_pair(x, y)? {
                PairClass::Realized => "1",
                PairClass::PossibleUnrealized => "0-possible",
                PairClass::Impossible => "0-impossible",
            };
            w.write_record([row_label.as_str(), col_label.as_str(), class])?;
        }
    }
    w.flush()?;
    Ok(())
}
