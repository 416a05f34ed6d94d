//! Empirical statistics on hypergraph instances and goodness-of-fit tests
//! against the G(n, p) distributions: the size distribution P(s) = u_s/u_r,
//! the per-vertex binomial degree law, and the edges-per-mean-degree ratio
//! that saturates at 3/2 for truly random spaces.
//!
//! Also home of the brute-force enumerator the whole test suite uses as an
//! independent oracle for the closed-form counts.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::counting;
use crate::error::{Error, Result};
use crate::hypergraph::{OrientedHyperedge, OrientedHypergraph, VertexSet};
use crate::random::curves;

/// Every admissible oriented hyperedge over n vertices, found the slow way:
/// a double loop over all pairs of non-empty vertex masks, keeping disjoint
/// pairs once (the side holding the smallest vertex comes first). Θ(4ⁿ) —
/// deliberately naive, so it shares nothing with the closed forms or the
/// unranking codec it cross-checks.
pub fn brute_force_enumerate(n: u32) -> Result<Vec<OrientedHyperedge>> {
    if n < 2 {
        return Err(Error::UniverseTooSmall { n, min: 2 });
    }
    if n > 12 {
        return Err(Error::ResourceLimit(format!(
            "brute-force enumeration is 4^n pair checks; supported for n <= 12 (requested n={n})"
        )));
    }
    let full = (1u32 << n) - 1;
    let mut edges = Vec::new();
    for x in 1..=full {
        for y in 1..=full {
            if x & y == 0 && x.trailing_zeros() < y.trailing_zeros() {
                let left = VertexSet::from_bits(n, x as u128)?;
                let right = VertexSet::from_bits(n, y as u128)?;
                edges.push(OrientedHyperedge::new(left, right)?);
            }
        }
    }
    Ok(edges)
}

/// Per-vertex degrees, index-aligned.
pub fn degree_sequence(g: &OrientedHypergraph) -> Vec<u64> {
    g.degree_counts()
}

/// Number of edges of each size s ∈ [2, n]; absent sizes are zero entries.
pub fn size_histogram(g: &OrientedHypergraph) -> BTreeMap<u32, u64> {
    let mut hist: BTreeMap<u32, u64> = (2..=g.n()).map(|s| (s, 0)).collect();
    for e in g.edges() {
        *hist.get_mut(&e.size()).expect("edge size within [2, n]") += 1;
    }
    hist
}

/// |edges| divided by the mean vertex degree. For a complete hypergraph this
/// equals u_r(n)/u(n) exactly; for a random space it approaches 3/2.
pub fn ratio_diagnostic(g: &OrientedHypergraph) -> Result<f64> {
    if g.is_empty() {
        return Err(Error::NoEdges);
    }
    Ok(g.edge_count() as f64 * g.n() as f64 / g.degree() as f64)
}

/// Test verdict at the configured significance level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ConsistentWithRandom,
    Rejected,
}

/// One chi-square goodness-of-fit result. `support`, `empirical_counts`, and
/// `theoretical_pmf` describe the *pooled* bins the statistic consumed:
/// `support[i]` is the lower edge of bin i and `theoretical_pmf[i]` its
/// probability mass, so expected counts are total·pmf.
#[derive(Clone, Debug, Serialize)]
pub struct DistributionSummary {
    pub support: Vec<u64>,
    pub empirical_counts: Vec<u64>,
    pub theoretical_pmf: Vec<f64>,
    pub statistic: f64,
    pub degrees_of_freedom: u64,
    pub p_value: f64,
    pub verdict: Verdict,
}

/// The full randomness diagnosis of one observed hypergraph.
#[derive(Clone, Debug, Serialize)]
pub struct RandomnessReport {
    pub n: u32,
    pub observed_edges: u64,
    pub observed_degree_sum: u64,
    /// |edges| / mean degree; 0 for an edge-less instance.
    pub observed_ratio: f64,
    /// The closed-form E[R]/E[D] at this n.
    pub theoretical_ratio: f64,
    pub size_fit: DistributionSummary,
    pub degree_fit: DistributionSummary,
    /// Maximum-likelihood edge probability |edges|/u_r(n).
    pub p_hat: f64,
    /// Set when the instance has no edges: every fit is then vacuous and the
    /// verdict is Rejected by convention rather than computation.
    pub degenerate: bool,
    /// Rejected iff either fit falls below the significance level.
    pub verdict: Verdict,
}

/// Tunables for [`fit_randomness_with`].
#[derive(Clone, Copy, Debug)]
pub struct FitOptions {
    /// Rejection threshold for each p-value (default 0.01).
    pub significance: f64,
    /// Minimum expected count per chi-square bin; sparser bins are pooled
    /// with neighbors (default 5).
    pub pool_threshold: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            significance: 0.01,
            pool_threshold: 5.0,
        }
    }
}

/// [`fit_randomness_with`] under default options.
pub fn fit_randomness(g: &OrientedHypergraph, p: Option<f64>) -> Result<RandomnessReport> {
    fit_randomness_with(g, p, FitOptions::default())
}

/// Chi-square goodness-of-fit of the instance against G(n, p): the edge-size
/// histogram against P(s) = u_s/u_r, and the degree sequence against
/// Binomial(u(n), p). When `p` is absent the maximum-likelihood estimate
/// p̂ = |edges|/u_r(n) is used and the degree fit loses one degree of
/// freedom for it.
///
/// The degree fit treats the n vertex degrees as independent draws of the
/// marginal law; degrees are mildly dependent (edges are shared), which
/// deflates the statistic slightly and keeps the test conservative.
pub fn fit_randomness_with(
    g: &OrientedHypergraph,
    p: Option<f64>,
    options: FitOptions,
) -> Result<RandomnessReport> {
    if !(options.significance > 0.0 && options.significance < 1.0) {
        return Err(Error::InvalidProbability {
            p: options.significance,
        });
    }
    if let Some(p) = p {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability { p });
        }
    }

    let n = g.n();
    let observed_edges = g.edge_count();
    let observed_degree_sum = g.degree();
    debug_assert_eq!(observed_degree_sum, g.size());

    let u_r = counting::total_edges(n)
        .to_f64()
        .expect("u_r fits f64 for n <= 128");
    let u_n = counting::per_vertex_total(n)
        .to_f64()
        .expect("u(n) fits f64 for n <= 128");
    let p_hat = observed_edges as f64 / u_r;
    let theoretical_ratio = curves::ratio_r_over_d(n);

    if observed_edges == 0 {
        let empty = DistributionSummary {
            support: vec![],
            empirical_counts: vec![],
            theoretical_pmf: vec![],
            statistic: 0.0,
            degrees_of_freedom: 0,
            p_value: 0.0,
            verdict: Verdict::Rejected,
        };
        return Ok(RandomnessReport {
            n,
            observed_edges,
            observed_degree_sum,
            observed_ratio: 0.0,
            theoretical_ratio,
            size_fit: empty.clone(),
            degree_fit: empty,
            p_hat,
            degenerate: true,
            verdict: Verdict::Rejected,
        });
    }

    let p_used = p.unwrap_or(p_hat);
    let size_fit = size_fit_summary(g, options)?;
    let degree_fit = degree_fit_summary(&g.degree_counts(), u_n, p_used, p.is_none(), options)?;

    let verdict =
        if size_fit.p_value < options.significance || degree_fit.p_value < options.significance {
            Verdict::Rejected
        } else {
            Verdict::ConsistentWithRandom
        };

    Ok(RandomnessReport {
        n,
        observed_edges,
        observed_degree_sum,
        observed_ratio: observed_edges as f64 * n as f64 / observed_degree_sum as f64,
        theoretical_ratio,
        size_fit,
        degree_fit,
        p_hat,
        degenerate: false,
        verdict,
    })
}

/// Observed size histogram against the multinomial with cell probabilities
/// P(s). Conditioning on the observed total removes p entirely.
fn size_fit_summary(g: &OrientedHypergraph, options: FitOptions) -> Result<DistributionSummary> {
    let n = g.n();
    let total = g.edge_count();
    let hist = size_histogram(g);
    let raw: Vec<RawBin> = (2..=n)
        .map(|s| {
            Ok(RawBin {
                label: s as u64,
                observed: *hist.get(&s).unwrap_or(&0),
                mass: curves::size_probability(n, s)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(summarize(raw, total, 0, options))
}

/// Degree sequence against Binomial(u, p), treating the per-vertex degrees
/// as independent marginal draws. The support is walked over a ±8σ window
/// around the mean with an incremental pmf recurrence; mass and observations
/// outside the window fold into the edge bins.
fn degree_fit_summary(
    degrees: &[u64],
    u: f64,
    p: f64,
    p_estimated: bool,
    options: FitOptions,
) -> Result<DistributionSummary> {
    let vertices = degrees.len() as u64;

    // Degenerate Bernoulli weights make the law a point mass.
    if p == 0.0 || p == 1.0 {
        let target = if p == 0.0 { 0.0 } else { u };
        let hits = degrees.iter().filter(|&&d| d as f64 == target).count() as u64;
        let (statistic, p_value) = if hits == vertices {
            (0.0, 1.0)
        } else {
            (f64::INFINITY, 0.0)
        };
        return Ok(DistributionSummary {
            support: vec![target as u64],
            empirical_counts: vec![hits],
            theoretical_pmf: vec![1.0],
            statistic,
            degrees_of_freedom: 0,
            p_value,
            verdict: verdict_for(p_value, options.significance),
        });
    }

    let q = 1.0 - p;
    let mean = p * u;
    let sd = (u * p * q).sqrt();
    let lo = (mean - 8.0 * sd).floor().max(0.0);
    let hi = (mean + 8.0 * sd).ceil().min(u);
    if hi - lo > 4e6 || hi > 1e15 {
        return Err(Error::ResourceLimit(format!(
            "degree fit window [{lo:.3e}, {hi:.3e}] is too wide to bin; the degree law at u={u:.3e}, p={p:.3e} is far outside the materializable regime"
        )));
    }
    let (lo, hi) = (lo as u64, hi as u64);

    let mut degree_counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &d in degrees {
        *degree_counts.entry(d).or_insert(0) += 1;
    }

    // ln pmf(lo), then pmf(d+1)/pmf(d) = (u−d)/(d+1)·p/q along the window.
    let lo_f = lo as f64;
    let ln_choose = if u <= 1e10 {
        counting::ln_binomial(u, lo_f)
    } else {
        // lgamma(u+1) − lgamma(u−d+1) loses all precision once u dwarfs d:
        // the difference is ~d·ln u riding on values of order u·ln u. Build
        // ln C(u, d) = Σ ln(u−t) − ln d! term by term instead; the window
        // guard keeps d small enough for the loop.
        if lo_f > 2e7 {
            return Err(Error::ResourceLimit(format!(
                "degree fit at u={u:.3e}, p={p:.3e} centers on degrees near {lo_f:.3e}, far outside the materializable regime"
            )));
        }
        let falling: f64 = (1..lo).map(|t| (-(t as f64) / u).ln_1p()).sum();
        lo_f * u.ln() + falling - statrs::function::gamma::ln_gamma(lo_f + 1.0)
    };
    let mut ln_pmf = ln_choose + lo_f * p.ln() + (u - lo_f) * (-p).ln_1p();
    let step = (p / q).ln();
    let mut raw = Vec::with_capacity((hi - lo + 1) as usize);
    let mut window_mass = 0.0;
    for d in lo..=hi {
        let mass = ln_pmf.exp();
        window_mass += mass;
        raw.push(RawBin {
            label: d,
            observed: degree_counts.get(&d).copied().unwrap_or(0),
            mass,
        });
        ln_pmf += ((u - d as f64) / (d as f64 + 1.0)).ln() + step;
    }

    // Fold tail mass and tail observations into the window's edge bins: an
    // observation 8σ out is evidence, not something to drop.
    let tail_mass = (1.0 - window_mass).max(0.0);
    let below: u64 = degree_counts
        .iter()
        .filter(|&(&d, _)| d < lo)
        .map(|(_, c)| c)
        .sum();
    let above: u64 = degree_counts
        .iter()
        .filter(|&(&d, _)| d > hi)
        .map(|(_, c)| c)
        .sum();
    if let Some(first) = raw.first_mut() {
        first.mass += tail_mass / 2.0;
        first.observed += below;
    }
    if let Some(last) = raw.last_mut() {
        last.mass += tail_mass / 2.0;
        last.observed += above;
    }

    Ok(summarize(raw, vertices, usize::from(p_estimated), options))
}

struct RawBin {
    label: u64,
    observed: u64,
    mass: f64,
}

/// Pools sparse bins, computes the Pearson statistic, and attaches the
/// chi-square p-value with `bins − 1 − estimated_parameters` degrees of
/// freedom (a single surviving bin cannot reject: p = 1).
fn summarize(
    raw: Vec<RawBin>,
    total: u64,
    estimated_parameters: usize,
    options: FitOptions,
) -> DistributionSummary {
    let total_f = total as f64;
    let mut pooled: Vec<RawBin> = Vec::new();
    let mut pending: Option<RawBin> = None;
    for bin in raw {
        let acc = match pending.take() {
            None => bin,
            Some(mut p) => {
                p.observed += bin.observed;
                p.mass += bin.mass;
                p
            }
        };
        if acc.mass * total_f >= options.pool_threshold {
            pooled.push(acc);
        } else {
            pending = Some(acc);
        }
    }
    if let Some(rest) = pending {
        match pooled.last_mut() {
            Some(last) => {
                last.observed += rest.observed;
                last.mass += rest.mass;
            }
            None => pooled.push(rest),
        }
    }

    let mut statistic = 0.0f64;
    for bin in &pooled {
        let expected = bin.mass * total_f;
        if expected > 0.0 {
            let diff = bin.observed as f64 - expected;
            statistic += diff * diff / expected;
        } else if bin.observed > 0 {
            statistic = f64::INFINITY;
        }
    }

    let df = pooled.len().saturating_sub(1 + estimated_parameters);
    let p_value = if df == 0 {
        1.0
    } else {
        let dist = ChiSquared::new(df as f64).expect("df >= 1");
        1.0 - dist.cdf(statistic)
    };

    DistributionSummary {
        support: pooled.iter().map(|b| b.label).collect(),
        empirical_counts: pooled.iter().map(|b| b.observed).collect(),
        theoretical_pmf: pooled.iter().map(|b| b.mass).collect(),
        statistic,
        degrees_of_freedom: df as u64,
        p_value,
        verdict: verdict_for(p_value, options.significance),
    }
}

fn verdict_for(p_value: f64, significance: f64) -> Verdict {
    if p_value < significance {
        Verdict::Rejected
    } else {
        Verdict::ConsistentWithRandom
    }
}
