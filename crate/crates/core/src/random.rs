//! The G(n, p) random model: every admissible oriented hyperedge is realized
//! independently with probability p.
//!
//! Two sampling strategies produce the same distribution:
//!
//! * [`SamplerStrategy::ExhaustiveBernoulli`] — one coin flip per admissible
//!   edge. Θ(u_r(n)) work, practical for n ≤ 14.
//! * [`SamplerStrategy::PerSizeBinomial`] — draws the per-size edge count
//!   R_s ~ Binomial(u_s, p), then picks that many distinct edges of size s
//!   uniformly through the rank/unrank bijection. Practical whenever the
//!   *expected* number of realized edges is materializable, even for
//!   universes whose edge spaces dwarf 2⁶⁴.
//!
//! Sampling is deterministic for a fixed seed: each size class consumes an
//! independent, seed-derived stream, so the strategies stay reproducible and
//! internally parallelizable without reordering effects.

pub mod codec;
pub mod curves;
pub mod extrema;

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson};
use serde::Serialize;

use crate::counting;
use crate::error::{Error, Result};
use crate::hypergraph::{
    OrientedHyperedge, OrientedHypergraph, MAX_MATERIALIZED_EDGES, MAX_UNIVERSE,
};

pub use codec::{rank_edge, unrank_edge};
pub use curves::{CurveKind, ExpectationCurve, LogValue};
pub use extrema::{solve_n_max, solve_s_max, ExtremumResult, ExtremumVariable};

/// Largest n the exhaustive Bernoulli strategy accepts (u_r(14) ≈ 2.4·10⁶).
pub const EXHAUSTIVE_MAX_UNIVERSE: u32 = 14;

/// Per-size counts larger than this skip the exact binomial sampler.
const EXACT_BINOMIAL_MAX: u64 = 1_000_000_000_000;

/// Largest Poisson mean accepted when approximating a per-size binomial draw.
const POISSON_MEAN_MAX: f64 = 1e6;

/// The probability family p(n) = n^α / β^n, evaluated in log-space so that
/// astronomically small probabilities stay representable.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProbabilityFamily {
    pub alpha: f64,
    pub beta: f64,
}

impl ProbabilityFamily {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || beta <= 0.0 {
            return Err(Error::InvalidFamily {
                alpha,
                beta,
                reason: "alpha must be finite and beta a positive real".into(),
            });
        }
        Ok(ProbabilityFamily { alpha, beta })
    }

    /// ln p(n) = α·ln n − n·ln β.
    pub fn ln_p(&self, n: f64) -> f64 {
        self.alpha * n.ln() - n * self.beta.ln()
    }

    /// p(n) as a plain probability; errors when the family exceeds 1 at this
    /// n (e.g. β ≤ 1 with α > 0). Underflow to 0 is accepted.
    pub fn p(&self, n: u32) -> Result<f64> {
        let ln_p = self.ln_p(n as f64);
        if ln_p > 0.0 {
            return Err(Error::InvalidFamily {
                alpha: self.alpha,
                beta: self.beta,
                reason: format!("p({n}) = exp({ln_p:.4}) exceeds 1"),
            });
        }
        Ok(ln_p.exp())
    }
}

/// Parameters of one G(n, p) draw.
#[derive(Clone, Copy, Debug)]
pub struct RandomModelParams {
    n: u32,
    p: f64,
    seed: u64,
}

impl RandomModelParams {
    pub fn new(n: u32, p: f64, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::UniverseTooSmall { n, min: 2 });
        }
        if n > MAX_UNIVERSE {
            return Err(Error::UniverseTooLarge {
                n,
                cap: MAX_UNIVERSE,
            });
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability { p });
        }
        Ok(RandomModelParams { n, p, seed })
    }

    pub fn from_family(n: u32, family: ProbabilityFamily, seed: u64) -> Result<Self> {
        Self::new(n, family.p(n)?, seed)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Replaces the seed (used by replicate harnesses with [`split_seed`]).
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// How [`sample_detailed`] realizes the draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SamplerStrategy {
    /// Exhaustive for small universes, per-size binomial otherwise.
    Auto,
    /// One Bernoulli draw per admissible edge (n ≤ 14).
    ExhaustiveBernoulli,
    /// Per-size binomial counts + uniform distinct edges via unranking.
    PerSizeBinomial,
}

/// Record that some size classes used a Poisson approximation for the edge
/// count draw, with the total-variation error bound (Stein–Chen/Barbour–Hall:
/// TV ≤ min(1, λ)·p ≤ p).
#[derive(Clone, Debug, Serialize)]
pub struct PoissonApproximation {
    pub sizes: Vec<u32>,
    pub total_variation_bound: f64,
}

/// A sampled hypergraph plus how it was produced.
#[derive(Clone, Debug)]
pub struct SampleOutcome {
    pub hypergraph: OrientedHypergraph,
    /// The strategy actually used (never `Auto`).
    pub strategy: SamplerStrategy,
    /// Present when any size class was drawn via Poisson approximation.
    pub approximation: Option<PoissonApproximation>,
}

/// Draws one G(n, p) hypergraph with the automatic strategy.
pub fn sample(params: RandomModelParams) -> Result<OrientedHypergraph> {
    Ok(sample_detailed(params, SamplerStrategy::Auto)?.hypergraph)
}

/// Draws one G(n, p) hypergraph with an explicit strategy, reporting any
/// approximation applied along the way.
pub fn sample_detailed(
    params: RandomModelParams,
    strategy: SamplerStrategy,
) -> Result<SampleOutcome> {
    let RandomModelParams { n, p, .. } = params;

    // Materialization guard: refuse draws whose expected edge count could not
    // be stored anyway. ln-space so the product never overflows.
    if p > 0.0 {
        let ln_expected = p.ln() + counting::ln_total_edges(n as f64);
        if ln_expected > MAX_MATERIALIZED_EDGES.ln() {
            return Err(Error::ResourceLimit(format!(
                "expected edge count exp({ln_expected:.2}) exceeds the {MAX_MATERIALIZED_EDGES:.0}-edge materialization cap (n={n}, p={p:e})"
            )));
        }
    }

    let resolved = match strategy {
        SamplerStrategy::Auto => {
            if n <= EXHAUSTIVE_MAX_UNIVERSE {
                SamplerStrategy::ExhaustiveBernoulli
            } else {
                SamplerStrategy::PerSizeBinomial
            }
        }
        explicit => explicit,
    };

    match resolved {
        SamplerStrategy::ExhaustiveBernoulli => {
            if n > EXHAUSTIVE_MAX_UNIVERSE {
                return Err(Error::ResourceLimit(format!(
                    "exhaustive sampler flips one coin per admissible edge and supports n <= {EXHAUSTIVE_MAX_UNIVERSE} (requested n={n})"
                )));
            }
            Ok(SampleOutcome {
                hypergraph: sample_exhaustive(params)?,
                strategy: resolved,
                approximation: None,
            })
        }
        SamplerStrategy::PerSizeBinomial => {
            let (hypergraph, approximation) = sample_per_size(params)?;
            Ok(SampleOutcome {
                hypergraph,
                strategy: resolved,
                approximation,
            })
        }
        SamplerStrategy::Auto => unreachable!("strategy resolved above"),
    }
}

fn size_stream(seed: u64, s: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(s as u64);
    rng
}

fn sample_exhaustive(params: RandomModelParams) -> Result<OrientedHypergraph> {
    let RandomModelParams { n, p, seed } = params;
    let mut edges: Vec<OrientedHyperedge> = Vec::new();
    let mut non_min_bits: Vec<u128> = Vec::new();
    for s in 2..=n {
        let mut rng = size_stream(seed, s);
        let subsets = codec::subset_count(n, s);
        let assignments = codec::assignment_count(s);

        // Walk the s-element subsets in the same lexicographic order the
        // rank/unrank codec uses, maintaining the current subset instead of
        // unranking each accepted index from scratch.
        let mut elements: Vec<u32> = (0..s).collect();
        let mut q: u128 = 0;
        loop {
            let subset_bits = elements.iter().fold(0u128, |m, &v| m | (1u128 << v));
            non_min_bits.clear();
            non_min_bits.extend(elements[1..].iter().map(|&v| 1u128 << v));
            for b in 0..assignments {
                if rng.random_bool(p) {
                    // Bit k of b+1 sends the (k+1)-th smallest member right;
                    // the minimal member always stays left.
                    let mut t = b + 1;
                    let mut right = 0u128;
                    while t != 0 {
                        right |= non_min_bits[t.trailing_zeros() as usize];
                        t &= t - 1;
                    }
                    edges.push(OrientedHyperedge::from_raw_parts(
                        n,
                        subset_bits ^ right,
                        right,
                    ));
                }
            }
            q += 1;
            if q == subsets {
                break;
            }
            // Lexicographic successor: bump the rightmost member that has
            // headroom, then pack the tail right behind it.
            let s = s as usize;
            let mut t = s - 1;
            while elements[t] == n - (s - t) as u32 {
                t -= 1;
            }
            elements[t] += 1;
            for u in t + 1..s {
                elements[u] = elements[u - 1] + 1;
            }
        }
    }
    Ok(OrientedHypergraph::from_validated_edges(n, edges))
}

fn sample_per_size(
    params: RandomModelParams,
) -> Result<(OrientedHypergraph, Option<PoissonApproximation>)> {
    let RandomModelParams { n, p, seed } = params;
    let mut edges: Vec<OrientedHyperedge> = Vec::new();
    let mut approximated_sizes = Vec::new();

    for s in 2..=n {
        let mut rng = size_stream(seed, s);
        let subsets = codec::subset_count(n, s);
        let assignments = codec::assignment_count(s);
        let edge_count = BigUint::from(subsets) * assignments;

        let realized =
            draw_realized_count(&mut rng, &edge_count, n, s, p, &mut approximated_sizes)?;
        if realized == 0 {
            continue;
        }

        // Distinct uniform indices by rejection; q and b drawn independently
        // is uniform over the composite index (q, b) ↦ q·assignments + b.
        let mut picked: HashSet<(u128, u128)> = HashSet::with_capacity(realized as usize);
        while (picked.len() as u64) < realized {
            let q = rng.random_range(0..subsets);
            let b = rng.random_range(0..assignments);
            picked.insert((q, b));
        }
        edges.extend(
            picked
                .into_iter()
                .map(|(q, b)| codec::unrank_parts(n, s, q, b)),
        );
    }

    let approximation = (!approximated_sizes.is_empty()).then_some(PoissonApproximation {
        sizes: approximated_sizes,
        total_variation_bound: p,
    });
    Ok((
        OrientedHypergraph::from_validated_edges(n, edges),
        approximation,
    ))
}

/// Draws R_s, the number of realized edges among `edge_count` candidates.
fn draw_realized_count(
    rng: &mut ChaCha8Rng,
    edge_count: &BigUint,
    n: u32,
    s: u32,
    p: f64,
    approximated_sizes: &mut Vec<u32>,
) -> Result<u64> {
    if p == 0.0 {
        return Ok(0);
    }
    if let Some(trials) = edge_count.to_u64().filter(|&t| t <= EXACT_BINOMIAL_MAX) {
        let dist = Binomial::new(trials, p).map_err(|e| {
            Error::ResourceLimit(format!(
                "binomial sampler rejected u_s={trials}, p={p}: {e}"
            ))
        })?;
        return Ok(dist.sample(rng));
    }
    // u_s beyond exact-sampler range: Poisson(λ = p·u_s) approximation,
    // valid only while the mean stays modest.
    let lambda = (p.ln() + counting::ln_size_count(n as f64, s as f64)).exp();
    if lambda >= POISSON_MEAN_MAX {
        return Err(Error::ResourceLimit(format!(
            "size {s} expects {lambda:.3e} edges from a pool of {edge_count} — beyond both the exact binomial sampler and the Poisson approximation regime"
        )));
    }
    if lambda == 0.0 {
        // p·u_s underflows: the chance of even one edge is below 2⁻¹⁰⁷⁴.
        return Ok(0);
    }
    approximated_sizes.push(s);
    let dist = Poisson::new(lambda).map_err(|e| {
        Error::ResourceLimit(format!("poisson sampler rejected lambda={lambda}: {e}"))
    })?;
    Ok(dist.sample(rng) as u64)
}

/// Probability that a G(n, p) draw realizes exactly `r` edges.
pub fn pmf_edges(n: u32, p: f64, r: &BigUint) -> Result<f64> {
    binomial_pmf(&counting::total_edges(n), p, r)
}

/// Probability that a G(n, p) draw realizes exactly `r` edges of size s.
pub fn pmf_edges_of_size(n: u32, s: u32, p: f64, r: &BigUint) -> Result<f64> {
    binomial_pmf(&counting::size_count(n, s)?, p, r)
}

/// Probability that one fixed vertex has degree `d` in a G(n, p) draw.
pub fn pmf_degree(n: u32, p: f64, d: &BigUint) -> Result<f64> {
    binomial_pmf(&counting::per_vertex_total(n), p, d)
}

/// Binomial(u, p) pmf at r, computed through log-gamma so that universe-scale
/// `u` never overflows. Out-of-support r yields 0.
fn binomial_pmf(u: &BigUint, p: f64, r: &BigUint) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability { p });
    }
    if r > u {
        return Ok(0.0);
    }
    if p == 0.0 {
        return Ok(if r.is_zero() { 1.0 } else { 0.0 });
    }
    if p == 1.0 {
        return Ok(if r == u { 1.0 } else { 0.0 });
    }
    let uf = u
        .to_f64()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::ResourceLimit(format!("pmf support size {u} exceeds f64 range")))?;
    let rf = r.to_f64().expect("r <= u, so r is finite");
    let ln_pmf = counting::ln_binomial(uf, rf) + rf * p.ln() + (uf - rf) * (-p).ln_1p();
    Ok(ln_pmf.exp())
}

/// Seed for replicate `i` of a Monte Carlo run: splitmix64 applied to the
/// base seed xor a golden-ratio multiple, giving decorrelated, reproducible
/// per-replicate streams.
pub fn split_seed(base: u64, replicate: u64) -> u64 {
    let mut z = base
        ^ replicate
            .wrapping_add(1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn params(n: u32, p: f64, seed: u64) -> RandomModelParams {
        RandomModelParams::new(n, p, seed).unwrap()
    }

    #[test]
    fn param_validation() {
        assert!(RandomModelParams::new(1, 0.5, 0).is_err());
        assert!(RandomModelParams::new(129, 0.5, 0).is_err());
        assert!(RandomModelParams::new(6, -0.1, 0).is_err());
        assert!(RandomModelParams::new(6, 1.1, 0).is_err());
        assert!(RandomModelParams::new(6, f64::NAN, 0).is_err());
        assert!(RandomModelParams::new(6, 0.0, 0).is_ok());
        assert!(RandomModelParams::new(128, 1e-60, 0).is_ok());
    }

    #[test]
    fn family_evaluation() {
        let fam = ProbabilityFamily::new(2.0, 3.0).unwrap();
        let expected = (2.0 * 10f64.ln() - 10.0 * 3f64.ln()).exp();
        assert!((fam.p(10).unwrap() - expected).abs() < 1e-18);

        // β = 1 keeps p ≤ 1 only for α ≤ 0.
        assert!(ProbabilityFamily::new(1.0, 1.0).unwrap().p(10).is_err());
        assert_eq!(
            ProbabilityFamily::new(0.0, 1.0).unwrap().p(10).unwrap(),
            1.0
        );
        assert!(ProbabilityFamily::new(-1.0, 1.0).unwrap().p(10).unwrap() < 1.0);

        assert!(ProbabilityFamily::new(1.0, 0.0).is_err());
        assert!(ProbabilityFamily::new(f64::NAN, 3.0).is_err());

        // Far beyond f64 underflow in linear space, fine in log-space.
        let ln_p = ProbabilityFamily::new(2.0, 3.0).unwrap().ln_p(1e6);
        assert!((ln_p - (2.0 * 1e6f64.ln() - 1e6 * 3f64.ln())).abs() < 1e-6);
    }

    #[test]
    fn degenerate_probabilities() {
        for strategy in [
            SamplerStrategy::ExhaustiveBernoulli,
            SamplerStrategy::PerSizeBinomial,
        ] {
            let empty = sample_detailed(params(6, 0.0, 7), strategy).unwrap();
            assert!(empty.hypergraph.is_empty());

            let full = sample_detailed(params(6, 1.0, 7), strategy).unwrap();
            assert_eq!(full.hypergraph.edge_count(), 301);
            assert_eq!(
                full.hypergraph,
                OrientedHypergraph::complete(6).unwrap(),
                "{strategy:?}"
            );
        }
    }

    #[test]
    fn fixed_seed_reproducible() {
        for strategy in [
            SamplerStrategy::ExhaustiveBernoulli,
            SamplerStrategy::PerSizeBinomial,
        ] {
            let a = sample_detailed(params(8, 0.17, 42), strategy).unwrap();
            let b = sample_detailed(params(8, 0.17, 42), strategy).unwrap();
            assert_eq!(a.hypergraph, b.hypergraph);
            let c = sample_detailed(params(8, 0.17, 43), strategy).unwrap();
            assert_ne!(a.hypergraph, c.hypergraph);
        }
    }

    #[test]
    fn auto_strategy_resolves_by_size() {
        let small = sample_detailed(params(6, 0.2, 1), SamplerStrategy::Auto).unwrap();
        assert_eq!(small.strategy, SamplerStrategy::ExhaustiveBernoulli);
        let large = sample_detailed(params(20, 1e-4, 1), SamplerStrategy::Auto).unwrap();
        assert_eq!(large.strategy, SamplerStrategy::PerSizeBinomial);
    }

    #[test]
    fn exhaustive_mean_tracks_expectation() {
        // E[|edges|] = p·u_r(6) = 90.3; N draws keep the 4σ band tight.
        let n_draws = 3_000u64;
        let mut total = 0u64;
        for i in 0..n_draws {
            let g = sample(params(6, 0.3, split_seed(11, i))).unwrap();
            total += g.edge_count();
        }
        let mean = total as f64 / n_draws as f64;
        let sigma = (301.0 * 0.3 * 0.7f64).sqrt();
        let band = 4.0 * sigma / (n_draws as f64).sqrt();
        assert!((mean - 90.3).abs() < band, "mean={mean}, band={band}");
    }

    #[test]
    fn per_size_mean_tracks_expectation() {
        let n_draws = 3_000u64;
        let mut total = 0u64;
        for i in 0..n_draws {
            let out = sample_detailed(
                params(6, 0.3, split_seed(13, i)),
                SamplerStrategy::PerSizeBinomial,
            )
            .unwrap();
            total += out.hypergraph.edge_count();
        }
        let mean = total as f64 / n_draws as f64;
        let sigma = (301.0 * 0.3 * 0.7f64).sqrt();
        let band = 4.0 * sigma / (n_draws as f64).sqrt();
        assert!((mean - 90.3).abs() < band, "mean={mean}, band={band}");
    }

    #[test]
    fn huge_universe_uses_poisson_and_stays_sane() {
        // u_s(30) tops 10¹² for mid sizes, forcing the approximation there.
        let out = sample_detailed(params(30, 1e-10, 99), SamplerStrategy::PerSizeBinomial).unwrap();
        let note = out.approximation.expect("mid sizes needed Poisson draws");
        assert!(!note.sizes.is_empty());
        assert_eq!(note.total_variation_bound, 1e-10);

        // E[|edges|] = 1e-10·u_r(30) ≈ 10 297; a single draw sits within 4σ.
        let edges = out.hypergraph.edge_count() as f64;
        let mean = 1e-10 * 0.5 * (3f64.powi(30) - 2f64.powi(31) + 1.0);
        assert!((edges - mean).abs() < 4.0 * mean.sqrt(), "edges={edges}");

        // Structural invariants hold for every sampled edge.
        assert_eq!(out.hypergraph.size(), out.hypergraph.degree());
        for e in out.hypergraph.edges() {
            assert!(e.size() >= 2 && e.size() <= 30);
        }
    }

    #[test]
    fn resource_guards() {
        // Exhaustive sampling beyond its cap.
        assert!(matches!(
            sample_detailed(params(15, 1e-3, 0), SamplerStrategy::ExhaustiveBernoulli),
            Err(Error::ResourceLimit(_))
        ));
        // Expected edges beyond the materialization cap.
        assert!(matches!(
            sample(params(20, 1.0, 0)),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            sample(params(128, 1e-20, 0)),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn pmf_normalizes_and_degenerates() {
        // Σ_r P(R = r) over the 26-point support at n=4.
        let total: f64 = (0u32..=25)
            .map(|r| pmf_edges(4, 0.3, &BigUint::from(r)).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-12);

        assert_eq!(pmf_edges(4, 1.0, &BigUint::from(25u32)).unwrap(), 1.0);
        assert_eq!(pmf_edges(4, 1.0, &BigUint::from(24u32)).unwrap(), 0.0);
        assert_eq!(pmf_edges(4, 0.0, &BigUint::ZERO).unwrap(), 1.0);
        assert_eq!(pmf_edges(4, 0.3, &BigUint::from(26u32)).unwrap(), 0.0);
        assert!(pmf_edges(4, 1.5, &BigUint::one()).is_err());
    }

    #[test]
    fn pmf_degree_mean_matches_expectation() {
        // E[D(v)] = p·u(5) = 0.2·65 = 13.
        let mean: f64 = (0u32..=65)
            .map(|d| d as f64 * pmf_degree(5, 0.2, &BigUint::from(d)).unwrap())
            .sum();
        assert!((mean - 13.0).abs() < 1e-9);
    }

    #[test]
    fn pmf_edges_of_size_support() {
        let total: f64 = (0u32..=12)
            .map(|r| pmf_edges_of_size(4, 3, 0.4, &BigUint::from(r)).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(pmf_edges_of_size(4, 5, 0.4, &BigUint::ZERO).is_err());
    }

    #[test]
    fn split_seed_decorrelates() {
        let seeds: HashSet<u64> = (0..1000).map(|i| split_seed(0x5EED, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_eq!(split_seed(1, 1), split_seed(1, 1));
        assert_ne!(split_seed(1, 1), split_seed(2, 1));
    }
}
