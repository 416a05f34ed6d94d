//! Exact enumeration of oriented hypergraphs over an n-vertex universe.
//!
//! Closed forms implemented here (all exact, arbitrary precision):
//!
//! * total admissible edges        u_r(n) = ½(3ⁿ − 2ⁿ⁺¹ + 1)
//! * edges of size s               u_s(n) = (2^(s−1) − 1)·C(n,s)
//! * edges in matrix block (i,j)   C(n,i)·C(n−i,j), halved on the diagonal
//! * edges at a fixed vertex       u(n) = 3ⁿ⁻¹ − 2ⁿ⁻¹
//! * impossible (overlapping) pairs z(n) = ½(2·4ⁿ − 3ⁿ − 6·2ⁿ + 7)
//! * size of the complete hypergraph  n·u(n)
//!
//! Every count also has a natural-log variant (`ln_*`) for universes far
//! beyond floating-point range, and the two real-valued growth derivatives
//! used by the curve generator.

use std::collections::BTreeMap;
use std::io;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

fn bpow(base: u32, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut c = BigUint::one();
    // c·(n−k+t)/t is exact at every step: after multiplying, c holds
    // t·C(n−k+t, t), which t divides.
    for t in 1..=k {
        c = c * (n - k + t) / t;
    }
    c
}

/// Natural log of C(n, k) for real arguments, via the log-gamma function.
pub fn ln_binomial(n: f64, k: f64) -> f64 {
    if k < 0.0 || k > n {
        return f64::NEG_INFINITY;
    }
    ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)
}

/// Total number of admissible oriented hyperedges: u_r(n) = ½(3ⁿ − 2ⁿ⁺¹ + 1).
pub fn total_edges(n: u32) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    ((bpow(3, n) + 1u32) - bpow(2, n + 1)) / 2u32
}

/// ln u_r(n) for real n, stable for arbitrarily large universes.
pub fn ln_total_edges(n: f64) -> f64 {
    // u_r = (3ⁿ/2)·(1 − 2(2/3)ⁿ + 3⁻ⁿ)
    n * 3f64.ln() - std::f64::consts::LN_2 + (-2.0 * (2f64 / 3.0).powf(n) + 3f64.powf(-n)).ln_1p()
}

/// Number of oriented hyperedges of size s: u_s(n) = (2^(s−1) − 1)·C(n,s).
///
/// Errors when s lies outside [2, n].
pub fn size_count(n: u32, s: u32) -> Result<BigUint> {
    if s < 2 || s > n {
        return Err(Error::SizeOutOfRange { s, n });
    }
    Ok((bpow(2, s - 1) - 1u32) * binomial(n, s))
}

/// ln u_s(n) for real arguments.
pub fn ln_size_count(n: f64, s: f64) -> f64 {
    // (2^(s−1) − 1)·C(n,s) = 2^(s−1)·(1 − 2^(1−s))·C(n,s)
    (s - 1.0) * std::f64::consts::LN_2 + (-(2f64).powf(1.0 - s)).ln_1p() + ln_binomial(n, s)
}

/// Number of edges whose sides have |X| = i, |Y| = j (unordered shape).
/// Zero when a side would be empty or the shape cannot fit (i + j > n).
pub fn block_count(n: u32, i: u32, j: u32) -> BigUint {
    let (i, j) = (i.min(j), i.max(j));
    if i == 0 || i + j > n {
        return BigUint::zero();
    }
    let ordered = binomial(n, i) * binomial(n - i, j);
    if i == j {
        // Each unordered {X, Y} with equal side sizes is counted twice among
        // ordered pairs; X = Y never occurs (sides are disjoint, non-empty).
        let rem = &ordered % 2u32;
        assert!(rem.is_zero(), "diagonal block count must be even");
        ordered / 2u32
    } else {
        ordered
    }
}

/// Number of edges containing one fixed vertex: u(n) = 3ⁿ⁻¹ − 2ⁿ⁻¹.
pub fn per_vertex_total(n: u32) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    bpow(3, n - 1) - bpow(2, n - 1)
}

/// ln u(n) for real n.
pub fn ln_per_vertex_total(n: f64) -> f64 {
    (n - 1.0) * 3f64.ln() + (-(2f64 / 3.0).powf(n - 1.0)).ln_1p()
}

/// Number of edges of shape (i, j) containing one fixed vertex.
///
/// By symmetry this is (i+j)/n of the block total for off-diagonal shapes and
/// i/n of it on the diagonal; the division is exact and asserted so.
pub fn per_vertex_block_count(n: u32, i: u32, j: u32) -> BigUint {
    let (i, j) = (i.min(j), i.max(j));
    if i == 0 || n == 0 || i + j > n {
        return BigUint::zero();
    }
    let numerator = if i == j {
        binomial(n, 2 * i) * binomial(2 * i, i) * i
    } else {
        binomial(n, i + j) * binomial(i + j, j) * (i + j)
    };
    let rem = &numerator % n;
    assert!(rem.is_zero(), "per-vertex block count must divide evenly");
    numerator / n
}

/// Number of impossible pairs (sides sharing a vertex) under the matrix
/// convention: z(n) = ½(2·4ⁿ − 3ⁿ − 6·2ⁿ + 7).
///
/// Satisfies z(n) = (2ⁿ − 2)² − u_r(n): of the (2ⁿ−2)² ordered pairs of
/// non-empty proper subsets, z counts everything except the u_r unordered
/// admissible edges, i.e. overlapping ordered pairs plus one orientation of
/// each disjoint pair.
pub fn impossible_pairs(n: u32) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    ((bpow(4, n) * 2u32 + 7u32) - (bpow(3, n) + bpow(2, n) * 6u32)) / 2u32
}

/// ln z(n) for real n.
pub fn ln_impossible_pairs(n: f64) -> f64 {
    // z = 4ⁿ·(1 − ½(3/4)ⁿ − 3·2⁻ⁿ + (7/2)·4⁻ⁿ)
    n * 4f64.ln()
        + (-0.5 * (3f64 / 4.0).powf(n) - 3.0 * 2f64.powf(-n) + 3.5 * 4f64.powf(-n)).ln_1p()
}

/// Size (= degree) of the complete oriented hypergraph: n·u(n).
pub fn max_size_degree(n: u32) -> BigUint {
    per_vertex_total(n) * n
}

/// ln of [`max_size_degree`] for real n.
pub fn ln_max_size_degree(n: f64) -> f64 {
    n.ln() + ln_per_vertex_total(n)
}

/// d u_r/dn on the real-valued extension: ½(3ⁿ ln3 − 2ⁿ⁺¹ ln2).
pub fn growth_rate_edges(n: f64) -> f64 {
    0.5 * (3f64.powf(n) * 3f64.ln() - 2f64.powf(n + 1.0) * 2f64.ln())
}

/// ln of d u_r/dn, stable for large n.
pub fn ln_growth_rate_edges(n: f64) -> f64 {
    let ln3 = 3f64.ln();
    // ½·3ⁿ·ln3·(1 − (2/3)ⁿ·2ln2/ln3)
    n * ln3 + ln3.ln() - std::f64::consts::LN_2
        + (-(2f64 / 3.0).powf(n) * 2.0 * std::f64::consts::LN_2 / ln3).ln_1p()
}

/// d z/dn on the real-valued extension: ½(4ⁿ ln16 − 3ⁿ ln3 − 2ⁿ ln64).
pub fn growth_rate_impossible(n: f64) -> f64 {
    0.5 * (4f64.powf(n) * 16f64.ln() - 3f64.powf(n) * 3f64.ln() - 2f64.powf(n) * 64f64.ln())
}

/// ln of d z/dn, stable for large n.
pub fn ln_growth_rate_impossible(n: f64) -> f64 {
    let ln16 = 16f64.ln();
    // ½·4ⁿ·ln16·(1 − (3/4)ⁿ·ln3/ln16 − 2⁻ⁿ·ln64/ln16); note ½·ln16 = 2·ln2
    n * 4f64.ln()
        + (2.0 * std::f64::consts::LN_2).ln()
        + (-(3f64 / 4.0).powf(n) * 3f64.ln() / ln16 - 2f64.powf(-n) * 64f64.ln() / ln16).ln_1p()
}

/// Everything the exact counter knows about one universe size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub n: u32,
    pub total_edges: BigUint,
    /// u_s for every s in [2, n].
    pub per_size: BTreeMap<u32, BigUint>,
    /// Block counts for i ≤ j, i + j ≤ n; populated on request for n ≤ 64.
    pub per_block: Option<BTreeMap<(u32, u32), BigUint>>,
    pub per_vertex_total: BigUint,
    pub impossible_pairs: BigUint,
    pub max_size_degree: BigUint,
}

/// Largest universe the exact full report serves; the per-size map alone
/// holds n−1 numbers of Θ(n) digits, so this keeps runtime interactive.
pub const MAX_REPORT_UNIVERSE: u32 = 10_000;

/// Largest universe for which the per-block map is emitted: the map has
/// Θ(n²) entries, so it is only offered at matrix-printable scales.
pub const MAX_BLOCK_REPORT_UNIVERSE: u32 = 64;

/// Computes every count for universe size n (2 ≤ n ≤ 10⁴), optionally with
/// the per-block map (n ≤ 64).
pub fn full_report(n: u32, include_blocks: bool) -> Result<CountReport> {
    if n < 2 {
        return Err(Error::UniverseTooSmall { n, min: 2 });
    }
    if n > MAX_REPORT_UNIVERSE {
        return Err(Error::ResourceLimit(format!(
            "exact count report supports n <= {MAX_REPORT_UNIVERSE} (requested n={n})"
        )));
    }
    if include_blocks && n > MAX_BLOCK_REPORT_UNIVERSE {
        return Err(Error::ResourceLimit(format!(
            "per-block map has ~n^2/2 entries and is emitted only for n <= {MAX_BLOCK_REPORT_UNIVERSE} (requested n={n})"
        )));
    }

    // One pass down the Pascal row: C(n,s+1) = C(n,s)·(n−s)/(s+1), exact.
    let mut per_size = BTreeMap::new();
    let mut choose = BigUint::from(n) * (n - 1) / 2u32;
    let mut pow2 = BigUint::from(2u32); // 2^(s−1) at s = 2
    for s in 2..=n {
        per_size.insert(s, (&pow2 - 1u32) * &choose);
        if s < n {
            choose = choose * (n - s) / (s + 1);
            pow2 <<= 1;
        }
    }

    let per_block = include_blocks.then(|| {
        let mut blocks = BTreeMap::new();
        for i in 1..=n / 2 {
            for j in i..=n - i {
                blocks.insert((i, j), block_count(n, i, j));
            }
        }
        blocks
    });

    Ok(CountReport {
        n,
        total_edges: total_edges(n),
        per_size,
        per_block,
        per_vertex_total: per_vertex_total(n),
        impossible_pairs: impossible_pairs(n),
        max_size_degree: max_size_degree(n),
    })
}

impl CountReport {
    /// Renders the report as a flat CSV table with columns
    /// `kind,index,count`; counts are decimal strings, never floats.
    pub fn write_csv<W: io::Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["kind", "index", "count"])?;
        out.write_record(["n", "", &self.n.to_string()])?;
        out.write_record(["total_edges", "", &self.total_edges.to_string()])?;
        for (s, c) in &self.per_size {
            out.write_record(["size", &s.to_string(), &c.to_string()])?;
        }
        if let Some(blocks) = &self.per_block {
            for ((i, j), c) in blocks {
                out.write_record(["block", &format!("{i}:{j}"), &c.to_string()])?;
            }
        }
        out.write_record(["per_vertex_total", "", &self.per_vertex_total.to_string()])?;
        out.write_record(["impossible_pairs", "", &self.impossible_pairs.to_string()])?;
        out.write_record(["max_size_degree", "", &self.max_size_degree.to_string()])?;
        out.flush()?;
        Ok(())
    }

    /// Renders the report as a JSON document (counts as decimal strings).
    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

// Counts serialize as decimal strings: JSON numbers stop being exact at 2⁵³
// and these exceed that by thousands of digits.
impl Serialize for CountReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Sizes<'a>(&'a BTreeMap<u32, BigUint>);
        impl Serialize for Sizes<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut m = serializer.serialize_map(Some(self.0.len()))?;
                for (s, c) in self.0 {
                    m.serialize_entry(&s.to_string(), &c.to_string())?;
                }
                m.end()
            }
        }

        struct Blocks<'a>(&'a BTreeMap<(u32, u32), BigUint>);
        impl Serialize for Blocks<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                #[derive(Serialize)]
                struct Entry<'a> {
                    i: u32,
                    j: u32,
                    count: &'a str,
                }
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for ((i, j), c) in self.0 {
                    seq.serialize_element(&Entry {
                        i: *i,
                        j: *j,
                        count: &c.to_string(),
                    })?;
                }
                seq.end()
            }
        }

        let fields = if self.per_block.is_some() { 7 } else { 6 };
        let mut st = serializer.serialize_struct("CountReport", fields)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("total_edges", &self.total_edges.to_string())?;
        st.serialize_field("per_size", &Sizes(&self.per_size))?;
        if let Some(blocks) = &self.per_block {
            st.serialize_field("per_block", &Blocks(blocks))?;
        }
        st.serialize_field("per_vertex_total", &self.per_vertex_total.to_string())?;
        st.serialize_field("impossible_pairs", &self.impossible_pairs.to_string())?;
        st.serialize_field("max_size_degree", &self.max_size_degree.to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn total_edges_small_values() {
        let expected = [
            (2, 1u64),
            (3, 6),
            (4, 25),
            (5, 90),
            (6, 301),
            (7, 966),
            (8, 3025),
            (9, 9330),
            (10, 28501),
            (11, 86526),
            (12, 261625),
        ];
        for (n, u) in expected {
            assert_eq!(total_edges(n), big(u), "u_r({n})");
        }
    }

    #[test]
    fn impossible_pairs_small_values() {
        let expected = [
            (2, 3u64),
            (3, 30),
            (4, 171),
            (5, 810),
            (6, 3543),
            (7, 14910),
            (8, 61491),
        ];
        for (n, z) in expected {
            assert_eq!(impossible_pairs(n), big(z), "z({n})");
        }
    }

    #[test]
    fn impossible_identity() {
        // z(n) = (2ⁿ − 2)² − u_r(n)
        for n in 2..=40u32 {
            let side = bpow(2, n) - 2u32;
            assert_eq!(impossible_pairs(n), &side * &side - total_edges(n));
        }
    }

    #[test]
    fn size_counts_match_reference_tables() {
        let n4: &[(u32, u64)] = &[(2, 6), (3, 12), (4, 7)];
        let n5: &[(u32, u64)] = &[(2, 10), (3, 30), (4, 35), (5, 15)];
        let n8: &[(u32, u64)] = &[
            (2, 28),
            (3, 168),
            (4, 490),
            (5, 840),
            (6, 868),
            (7, 504),
            (8, 127),
        ];
        for (n, table) in [(4, n4), (5, n5), (8, n8)] {
            for &(s, u) in table {
                assert_eq!(size_count(n, s).unwrap(), big(u), "u_{s}({n})");
            }
        }
    }

    #[test]
    fn size_counts_sum_to_total() {
        for n in 2..=64u32 {
            let sum: BigUint = (2..=n).map(|s| size_count(n, s).unwrap()).sum();
            assert_eq!(sum, total_edges(n), "n={n}");
        }
    }

    #[test]
    fn size_count_range_errors() {
        assert!(matches!(
            size_count(4, 1),
            Err(Error::SizeOutOfRange { s: 1, n: 4 })
        ));
        assert!(size_count(4, 5).is_err());
        assert!(size_count(4, 2).is_ok());
        assert!(size_count(4, 4).is_ok());
    }

    #[test]
    fn block_counts_n4() {
        assert_eq!(block_count(4, 1, 1), big(6));
        assert_eq!(block_count(4, 1, 2), big(12));
        assert_eq!(block_count(4, 1, 3), big(4));
        assert_eq!(block_count(4, 2, 2), big(3));
        assert_eq!(block_count(4, 2, 3), BigUint::zero()); // i+j > n
        assert_eq!(block_count(4, 0, 2), BigUint::zero()); // empty side
        assert_eq!(block_count(4, 3, 1), big(4)); // symmetric in (i,j)
    }

    #[test]
    fn blocks_sum_to_total() {
        for n in 2..=30u32 {
            let mut sum = BigUint::zero();
            for i in 1..=n {
                for j in i..=n {
                    sum += block_count(n, i, j);
                }
            }
            assert_eq!(sum, total_edges(n), "n={n}");
        }
    }

    #[test]
    fn block_null_iff_overflowing_shape() {
        for n in 2..=12u32 {
            for i in 1..=n {
                for j in i..=n {
                    let zero = block_count(n, i, j).is_zero();
                    assert_eq!(zero, i + j > n, "n={n} block=({i},{j})");
                }
            }
        }
    }

    #[test]
    fn per_vertex_totals() {
        let expected = [
            (2, 1u64),
            (3, 5),
            (4, 19),
            (5, 65),
            (6, 211),
            (7, 665),
            (8, 2059),
        ];
        for (n, u) in expected {
            assert_eq!(per_vertex_total(n), big(u), "u({n})");
        }
    }

    #[test]
    fn per_vertex_blocks_n4() {
        assert_eq!(per_vertex_block_count(4, 1, 1), big(3));
        assert_eq!(per_vertex_block_count(4, 1, 2), big(9));
        assert_eq!(per_vertex_block_count(4, 1, 3), big(4));
        assert_eq!(per_vertex_block_count(4, 2, 2), big(3));
        assert_eq!(per_vertex_block_count(4, 2, 3), BigUint::zero());
    }

    #[test]
    fn per_vertex_blocks_sum_to_per_vertex_total() {
        for n in 2..=20u32 {
            let mut sum = BigUint::zero();
            for i in 1..=n {
                for j in i..=n {
                    sum += per_vertex_block_count(n, i, j);
                }
            }
            assert_eq!(sum, per_vertex_total(n), "n={n}");
        }
    }

    #[test]
    fn max_size_degree_values() {
        assert_eq!(max_size_degree(4), big(76));
        assert_eq!(max_size_degree(2), big(2));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(30, 15), big(155_117_520));
        assert_eq!(binomial(5, 0), big(1));
        assert_eq!(binomial(5, 5), big(1));
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(0, 0), big(1));
    }

    #[test]
    fn ln_variants_match_exact_counts() {
        use num_traits::ToPrimitive;
        // 3ⁿ-scale values still fit in f64 at n = 600 (3⁶⁰⁰ ≈ 10²⁸⁶), but
        // z(n) grows like 4ⁿ, which leaves f64 range past n = 511.
        for n in [10u32, 64, 200, 500, 600] {
            let nf = n as f64;
            let exact = total_edges(n).to_f64().unwrap().ln();
            assert!((ln_total_edges(nf) - exact).abs() < 1e-9, "u_r({n})");

            let exact = per_vertex_total(n).to_f64().unwrap().ln();
            assert!((ln_per_vertex_total(nf) - exact).abs() < 1e-9, "u({n})");

            if n <= 500 {
                let exact = impossible_pairs(n).to_f64().unwrap().ln();
                assert!((ln_impossible_pairs(nf) - exact).abs() < 1e-9, "z({n})");
            }

            let exact = max_size_degree(n).to_f64().unwrap().ln();
            assert!((ln_max_size_degree(nf) - exact).abs() < 1e-9, "n·u({n})");

            let s = 2 * n / 3;
            let exact = size_count(n, s).unwrap().to_f64().unwrap().ln();
            // lgamma carries a few ulps more error than the product forms.
            assert!(
                (ln_size_count(nf, s as f64) - exact).abs() < 1e-8,
                "u_{s}({n})"
            );
        }
    }

    #[test]
    fn ln_variants_finite_far_beyond_floats() {
        let big_n = 1e6;
        for v in [
            ln_total_edges(big_n),
            ln_size_count(big_n, 666_666.0),
            ln_per_vertex_total(big_n),
            ln_impossible_pairs(big_n),
            ln_max_size_degree(big_n),
        ] {
            assert!(v.is_finite() && v > 0.0);
        }
    }

    #[test]
    fn growth_rates_at_two() {
        assert!((growth_rate_edges(2.0) - 2.171_166_576_766_712_5).abs() < 1e-12);
        assert!((growth_rate_impossible(2.0) - 8.919_188_312_192_412).abs() < 1e-12);
    }

    #[test]
    fn growth_rates_match_finite_differences() {
        let h = 1e-4;
        let ur = |n: f64| 0.5 * (3f64.powf(n) - 2f64.powf(n + 1.0) + 1.0);
        let z = |n: f64| 0.5 * (2.0 * 4f64.powf(n) - 3f64.powf(n) - 6.0 * 2f64.powf(n) + 7.0);
        for n in [2.0f64, 5.0, 8.0, 12.0] {
            let fd = (ur(n + h) - ur(n - h)) / (2.0 * h);
            let an = growth_rate_edges(n);
            assert!((fd - an).abs() / an < 1e-6, "du_r/dn at {n}");

            let fd = (z(n + h) - z(n - h)) / (2.0 * h);
            let an = growth_rate_impossible(n);
            assert!((fd - an).abs() / an < 1e-6, "dz/dn at {n}");
        }
    }

    #[test]
    fn growth_rates_positive() {
        for n in 2..=60 {
            assert!(growth_rate_edges(n as f64) > 0.0);
            assert!(growth_rate_impossible(n as f64) > 0.0);
        }
    }

    #[test]
    fn ln_growth_rates_match_direct_evaluation() {
        for n in 2..=60 {
            let nf = n as f64;
            let direct = growth_rate_edges(nf).ln();
            assert!((ln_growth_rate_edges(nf) - direct).abs() < 1e-10, "n={n}");
            let direct = growth_rate_impossible(nf).ln();
            assert!(
                (ln_growth_rate_impossible(nf) - direct).abs() < 1e-10,
                "n={n}"
            );
        }
        assert!(ln_growth_rate_edges(1e6).is_finite());
        assert!(ln_growth_rate_impossible(1e6).is_finite());
    }

    #[test]
    fn full_report_small() {
        let r = full_report(4, true).unwrap();
        assert_eq!(r.total_edges, big(25));
        assert_eq!(r.impossible_pairs, big(171));
        assert_eq!(
            r.per_size,
            BTreeMap::from([(2, big(6)), (3, big(12)), (4, big(7))])
        );
        assert_eq!(r.per_vertex_total, big(19));
        assert_eq!(r.max_size_degree, big(76));
        let blocks = r.per_block.unwrap();
        assert_eq!(blocks.get(&(1, 1)), Some(&big(6)));
        assert_eq!(blocks.get(&(2, 2)), Some(&big(3)));
        assert_eq!(blocks.values().sum::<BigUint>(), big(25));

        let r2 = full_report(2, false).unwrap();
        assert_eq!(r2.total_edges, big(1));
        assert_eq!(r2.per_size, BTreeMap::from([(2, big(1))]));
        assert!(r2.per_block.is_none());

        assert_eq!(full_report(7, false).unwrap().total_edges, big(966));
    }

    #[test]
    fn full_report_internally_consistent() {
        for n in [2u32, 7, 33, 64] {
            let r = full_report(n, n <= 64).unwrap();
            assert_eq!(r.per_size.values().sum::<BigUint>(), r.total_edges);
            if let Some(blocks) = &r.per_block {
                assert_eq!(blocks.values().sum::<BigUint>(), r.total_edges);
            }
            assert_eq!(r.max_size_degree, &r.per_vertex_total * n);
        }
    }

    #[test]
    fn full_report_guards() {
        assert!(full_report(1, false).is_err());
        assert!(matches!(
            full_report(65, true),
            Err(Error::ResourceLimit(_))
        ));
        assert!(full_report(65, false).is_ok());
        assert!(matches!(
            full_report(10_001, false),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn report_serialization_shapes() {
        let r = full_report(3, true).unwrap();
        let json = r.to_json_string().unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["total_edges"], "6");
        assert_eq!(v["per_size"]["2"], "3");
        assert_eq!(v["per_size"]["3"], "3");
        assert_eq!(v["per_block"][0]["count"], "3");
        assert_eq!(v["impossible_pairs"], "30");

        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("kind,index,count\n"));
        assert!(text.contains("total_edges,,6\n"));
        assert!(text.contains("size,2,3\n"));
        assert!(text.contains("block,1:1,3\n"));
    }
}
