//! Core data model: hypervertices (vertex subsets), oriented hyperedges, and
//! oriented hypergraphs.
//!
//! An oriented hyperedge is an *unordered* pair {X, Y} of disjoint non-empty
//! vertex subsets — in the chemical reading, the educt and product mixtures of
//! a reaction. Vertices are integer indices `0..n`; an optional name table
//! (see [`crate::reaction`]) maps external substance names to indices, keeping
//! this module purely combinatorial.
//!
//! Sets are bit masks over a universe of at most [`MAX_UNIVERSE`] vertices.
//! Instance-level work is only meaningful at desk scale anyway: the complete
//! hypergraph has ½(3ⁿ − 2ⁿ⁺¹ + 1) edges, which is astronomical long before
//! the mask representation runs out of bits.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Largest universe the dense bit-mask representation supports.
pub const MAX_UNIVERSE: u32 = 128;

/// A subset of the vertex universe `{0, …, n−1}` (a hypervertex when used as
/// one side of an edge).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet {
    n: u32,
    bits: u128,
}

impl VertexSet {
    /// The empty subset of an `n`-vertex universe.
    pub fn empty(n: u32) -> Result<Self> {
        check_universe(n)?;
        Ok(VertexSet { n, bits: 0 })
    }

    /// Builds a set from a raw bit mask (bit `v` set ⇔ vertex `v` is a member).
    pub fn from_bits(n: u32, bits: u128) -> Result<Self> {
        check_universe(n)?;
        if n < 128 && bits >> n != 0 {
            let v = 127 - bits.leading_zeros();
            return Err(Error::VertexOutOfRange { v, n });
        }
        Ok(VertexSet { n, bits })
    }

    /// Builds a set from vertex indices (duplicates are harmless).
    pub fn from_indices(n: u32, indices: &[u32]) -> Result<Self> {
        check_universe(n)?;
        let mut bits = 0u128;
        for &v in indices {
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            bits |= 1 << v;
        }
        Ok(VertexSet { n, bits })
    }

    pub fn universe_size(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// Number of members.
    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, v: u32) -> bool {
        v < self.n && self.bits >> v & 1 == 1
    }

    /// Smallest member, if any.
    pub fn min_vertex(&self) -> Option<u32> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros())
        }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits & other.bits == 0
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.n).filter(|&v| self.bits >> v & 1 == 1)
    }

    pub fn indices(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

fn check_universe(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::UniverseTooSmall { n, min: 1 });
    }
    if n > MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge {
            n,
            cap: MAX_UNIVERSE,
        });
    }
    Ok(())
}

/// Block coordinates (i, j) of the generalized adjacency matrix, normalized to
/// i ≤ j. Blocks with i + j > n contain no realizable edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockIndex {
    pub i: u32,
    pub j: u32,
}

impl BlockIndex {
    pub fn new(a: u32, b: u32) -> Self {
        BlockIndex {
            i: a.min(b),
            j: a.max(b),
        }
    }
}

/// An unordered pair {X, Y} of disjoint non-empty vertex subsets, with an
/// optional opaque label (catalyst/conditions annotation).
///
/// Canonical storage: the side containing the globally smallest vertex index
/// is `left`. The label is ignored by equality, ordering, and hashing — the
/// model disregards reaction conditions.
#[derive(Clone)]
pub struct OrientedHyperedge {
    left: VertexSet,
    right: VertexSet,
    label: Option<String>,
}

impl OrientedHyperedge {
    /// Builds the edge {a, b}, canonicalizing side order.
    ///
    /// Errors when the sides live in different universes, either side is
    /// empty, or the sides overlap.
    pub fn new(a: VertexSet, b: VertexSet) -> Result<Self> {
        if a.universe_size() != b.universe_size() {
            return Err(Error::UniverseMismatch {
                left: a.universe_size(),
                right: b.universe_size(),
            });
        }
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptySide);
        }
        if !a.is_disjoint(&b) {
            return Err(Error::OverlappingSides);
        }
        // Exactly one side holds the minimum of the union; store it first.
        let (left, right) = if a.min_vertex() < b.min_vertex() {
            (a, b)
        } else {
            (b, a)
        };
        Ok(OrientedHyperedge {
            left,
            right,
            label: None,
        })
    }

    pub fn with_label(a: VertexSet, b: VertexSet, label: impl Into<String>) -> Result<Self> {
        let mut e = Self::new(a, b)?;
        e.label = Some(label.into());
        Ok(e)
    }

    pub fn left(&self) -> &VertexSet {
        &self.left
    }

    pub fn right(&self) -> &VertexSet {
        &self.right
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn universe_size(&self) -> u32 {
        self.left.n
    }

    /// Edge size s = |left| + |right|, the number of substances involved.
    pub fn size(&self) -> u32 {
        self.left.len() + self.right.len()
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.left.contains(v) || self.right.contains(v)
    }

    /// Union of both sides as a bit mask.
    pub fn member_bits(&self) -> u128 {
        self.left.bits | self.right.bits
    }

    /// Matrix block of the edge, normalized to i ≤ j.
    pub fn block(&self) -> BlockIndex {
        BlockIndex::new(self.left.len(), self.right.len())
    }

    fn key(&self) -> (u128, u128) {
        (self.left.bits, self.right.bits)
    }

    /// Builds an edge from raw side masks already known to satisfy every
    /// invariant: disjoint, non-empty, union within the universe, and the
    /// smallest member in `left`. Sampler-internal — the branchy validation
    /// in [`OrientedHyperedge::new`] dominates tight generation loops.
    pub(crate) fn from_raw_parts(n: u32, left: u128, right: u128) -> Self {
        debug_assert!(left != 0 && right != 0 && left & right == 0);
        debug_assert!(left.trailing_zeros() < right.trailing_zeros());
        debug_assert!(n == 128 || (left | right) >> n == 0);
        OrientedHyperedge {
            left: VertexSet { n, bits: left },
            right: VertexSet { n, bits: right },
            label: None,
        }
    }
}

impl PartialEq for OrientedHyperedge {
    fn eq(&self, other: &Self) -> bool {
        self.left.n == other.left.n && self.key() == other.key()
    }
}

impl Eq for OrientedHyperedge {}

impl PartialOrd for OrientedHyperedge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrientedHyperedge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl Hash for OrientedHyperedge {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Debug for OrientedHyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}-{:?}", self.left, self.right)?;
        if let Some(l) = &self.label {
            write!(f, "[{l}]")?;
        }
        Ok(())
    }
}

/// Classification of a hypervertex pair relative to a hypergraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairClass {
    /// The pair is an edge of the hypergraph.
    Realized,
    /// Disjoint (an admissible edge) but not present.
    PossibleUnrealized,
    /// The sides share a vertex; never an edge.
    Impossible,
}

/// Expected-edge materialization guard shared by [`OrientedHypergraph::complete`]
/// and the sampler: requests expected to produce more edges than this error out.
pub(crate) const MAX_MATERIALIZED_EDGES: f64 = 5e6;

/// A set of oriented hyperedges over a fixed n-vertex universe.
///
/// Construction is single-threaded (insertion mutates); after construction the
/// value is immutable and safe to share across threads. Iteration order is
/// deterministic (sorted by side bit masks).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedHypergraph {
    n: u32,
    edges: BTreeSet<OrientedHyperedge>,
}

impl OrientedHypergraph {
    /// An edge-less hypergraph over `n` vertices, 1 ≤ n ≤ 128.
    pub fn new(n: u32) -> Result<Self> {
        check_universe(n)?;
        Ok(OrientedHypergraph {
            n,
            edges: BTreeSet::new(),
        })
    }

    /// Inserts an edge. Returns `false` when the edge was already present
    /// (duplicate insertion is idempotent — E is a set).
    pub fn insert(&mut self, e: OrientedHyperedge) -> Result<bool> {
        if e.universe_size() != self.n {
            return Err(Error::UniverseMismatch {
                left: self.n,
                right: e.universe_size(),
            });
        }
        Ok(self.edges.insert(e))
    }

    /// Builds a hypergraph from edges, deduplicating.
    pub fn from_edges<I>(n: u32, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = OrientedHyperedge>,
    {
        let mut g = Self::new(n)?;
        for e in edges {
            g.insert(e)?;
        }
        Ok(g)
    }

    /// Bulk-builds from distinct edges already validated against universe
    /// `n`. One sort plus a linear tree load instead of per-edge inserts —
    /// the samplers' hot path.
    pub(crate) fn from_validated_edges(n: u32, edges: Vec<OrientedHyperedge>) -> Self {
        debug_assert!(edges.iter().all(|e| e.universe_size() == n));
        OrientedHypergraph {
            n,
            edges: edges.into_iter().collect(),
        }
    }

    /// The complete oriented hypergraph: every admissible edge.
    ///
    /// Guarded by the materialization cap (u_r(n) ≤ 5×10⁶, i.e. n ≤ 14).
    pub fn complete(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::UniverseTooSmall { n, min: 2 });
        }
        check_universe(n)?;
        if n > 14 {
            return Err(Error::ResourceLimit(format!(
                "complete hypergraph for n={n} has ~3^{n}/2 edges; supported only up to n=14"
            )));
        }
        // Enumerate unordered pairs {X, Y} once each: X holds the smallest
        // element of X ∪ Y, i.e. X's lowest set bit is below Y's.
        let mut edges = BTreeSet::new();
        let full: u128 = if n == 128 { u128::MAX } else { (1 << n) - 1 };
        let mut x: u128 = 1;
        while x <= full {
            let rest = full & !x;
            let low = x & x.wrapping_neg();
            // Sub-masks y of `rest` with all bits above X's lowest bit.
            let above = rest & !(low | (low - 1));
            let mut y = above;
            while y != 0 {
                edges.insert(OrientedHyperedge {
                    left: VertexSet { n, bits: x },
                    right: VertexSet { n, bits: y },
                    label: None,
                });
                y = (y - 1) & above;
            }
            x += 1;
        }
        Ok(OrientedHypergraph { n, edges })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = &OrientedHyperedge> {
        self.edges.iter()
    }

    pub fn contains_edge(&self, e: &OrientedHyperedge) -> bool {
        self.edges.contains(e)
    }

    /// Hypergraph size s(G) = Σ_r s(r), the sum of edge sizes.
    pub fn size(&self) -> u64 {
        self.edges.iter().map(|e| e.size() as u64).sum()
    }

    /// Degree of one vertex: the number of edges it participates in.
    pub fn vertex_degree(&self, v: u32) -> Result<u64> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        Ok(self.edges.iter().filter(|e| e.contains_vertex(v)).count() as u64)
    }

    /// Per-vertex degrees, index-aligned, in one pass over the edges.
    pub fn degree_counts(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n as usize];
        for e in &self.edges {
            let mut m = e.member_bits();
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                deg[v] += 1;
                m &= m - 1;
            }
        }
        deg
    }

    /// Hypergraph degree d(G) = Σ_v d(v). Provably equals [`Self::size`];
    /// computed independently (incidence counting) so the identity is testable.
    pub fn degree(&self) -> u64 {
        self.degree_counts().iter().sum()
    }

    /// Classifies the pair {X, Y}: impossible when the sides intersect,
    /// realized when the edge is present, possible-but-unrealized otherwise.
    /// Symmetric in X and Y.
    pub fn classify_pair(&self, x: &VertexSet, y: &VertexSet) -> Result<PairClass> {
        if x.is_empty() || y.is_empty() {
            return Err(Error::EmptySide);
        }
        if x.universe_size() != self.n || y.universe_size() != self.n {
            return Err(Error::UniverseMismatch {
                left: self.n,
                right: if x.universe_size() != self.n {
                    x.universe_size()
                } else {
                    y.universe_size()
                },
            });
        }
        if !x.is_disjoint(y) {
            return Ok(PairClass::Impossible);
        }
        let probe = OrientedHyperedge::new(*x, *y)?;
        if self.edges.contains(&probe) {
            Ok(PairClass::Realized)
        } else {
            Ok(PairClass::PossibleUnrealized)
        }
    }
}
