//! Rank/unrank bijection between `[0, u_s(n))` and the oriented hyperedges of
//! size s, enabling uniform edge sampling without enumerating the edge set.
//!
//! An index decomposes as `index = q·(2^(s−1) − 1) + b`:
//!
//! * `q` picks the s-element vertex subset in lexicographic (combinadic)
//!   order;
//! * `b + 1`, read as s−1 bits, assigns each non-minimal subset element to the
//!   right side (bit k set ⇔ the (k+1)-th smallest element goes right). The
//!   minimal element is pinned to the left side, which breaks the {X, Y}
//!   symmetry and makes exactly 2^(s−1) − 1 assignments valid (all-left is
//!   excluded: the right side may not be empty).

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::hypergraph::{OrientedHyperedge, VertexSet, MAX_UNIVERSE};

const DIM: usize = MAX_UNIVERSE as usize + 1;

/// Pascal's triangle up to n = 128 in u128 (C(128,64) ≈ 2.4·10³⁷ fits).
/// Built once, then read-only — safe for concurrent use.
fn pascal() -> &'static [Vec<u128>] {
    static TABLE: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![vec![0u128; DIM]; DIM];
        for n in 0..DIM {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            }
        }
        t
    })
}

/// C(n, k) from the shared table; requires n ≤ 128.
pub(crate) fn subset_count(n: u32, k: u32) -> u128 {
    if k > n {
        0
    } else {
        pascal()[n as usize][k as usize]
    }
}

/// Number of side assignments for a size-s subset: 2^(s−1) − 1.
pub(crate) fn assignment_count(s: u32) -> u128 {
    (1u128 << (s - 1)) - 1
}

fn check_args(n: u32, s: u32) -> Result<()> {
    if n > MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge {
            n,
            cap: MAX_UNIVERSE,
        });
    }
    if n < 2 {
        return Err(Error::UniverseTooSmall { n, min: 2 });
    }
    if s < 2 || s > n {
        return Err(Error::SizeOutOfRange { s, n });
    }
    Ok(())
}

/// The q-th s-element subset of {0, …, n−1} in lexicographic order, as
/// ascending indices. Caller guarantees q < C(n, s).
fn unrank_subset(n: u32, s: u32, mut q: u128) -> Vec<u32> {
    let mut elements = Vec::with_capacity(s as usize);
    let mut v = 0u32;
    for picked in 0..s {
        // Subsets beginning with v continue with s−picked−1 of the n−v−1
        // larger vertices.
        loop {
            let tail = subset_count(n - v - 1, s - picked - 1);
            if q < tail {
                elements.push(v);
                v += 1;
                break;
            }
            q -= tail;
            v += 1;
        }
    }
    elements
}

fn rank_subset(n: u32, elements: &[u32]) -> u128 {
    let s = elements.len() as u32;
    let mut q = 0u128;
    let mut prev = 0u32;
    for (t, &e) in elements.iter().enumerate() {
        for w in prev..e {
            q += subset_count(n - w - 1, s - t as u32 - 1);
        }
        prev = e + 1;
    }
    q
}

/// Builds the edge for split index (q, b) without revalidating ranges; the
/// sampler draws q and b independently, which is uniform over the composite
/// index because (q, b) ↦ q·(2^(s−1)−1) + b is a bijection.
pub(crate) fn unrank_parts(n: u32, s: u32, q: u128, b: u128) -> OrientedHyperedge {
    let elements = unrank_subset(n, s, q);
    let t = b + 1;
    let mut left = vec![elements[0]];
    let mut right = Vec::with_capacity(s as usize - 1);
    for (k, &v) in elements.iter().enumerate().skip(1) {
        if t >> (k - 1) & 1 == 1 {
            right.push(v);
        } else {
            left.push(v);
        }
    }
    let left = VertexSet::from_indices(n, &left).expect("unranked side is valid");
    let right = VertexSet::from_indices(n, &right).expect("unranked side is valid");
    OrientedHyperedge::new(left, right).expect("unranked edge is valid")
}

/// The edge at `index` among the u_s(n) oriented hyperedges of size s, in the
/// canonical order described at module level.
pub fn unrank_edge(n: u32, s: u32, index: &BigUint) -> Result<OrientedHyperedge> {
    check_args(n, s)?;
    let m = BigUint::from(assignment_count(s));
    let count = BigUint::from(subset_count(n, s)) * &m;
    if *index >= count {
        return Err(Error::IndexOutOfRange {
            n,
            s,
            index: index.to_string(),
            count: count.to_string(),
        });
    }
    let q = (index / &m).to_u128().expect("quotient < C(128,64)");
    let b = (index % &m).to_u128().expect("remainder < 2^127");
    Ok(unrank_parts(n, s, q, b))
}

/// Inverse of [`unrank_edge`]: the size and index of an edge.
pub fn rank_edge(e: &OrientedHyperedge) -> (u32, BigUint) {
    let n = e.universe_size();
    let s = e.size();
    let elements: Vec<u32> = (0..n).filter(|&v| e.contains_vertex(v)).collect();
    let q = rank_subset(n, &elements);
    let mut t = 0u128;
    for (k, &v) in elements.iter().enumerate().skip(1) {
        if e.right().contains(v) {
            t |= 1 << (k - 1);
        }
    }
    let b = t - 1;
    let index = BigUint::from(q) * assignment_count(s) + b;
    (s, index)
}
