//! Analytic expectation curves of the G(n, p) model for the probability
//! family p(n) = n^α/β^n.
//!
//! All curve values are carried as (ln magnitude, sign) pairs: the underlying
//! quantities span thousands of orders of magnitude across an n-grid, far
//! beyond f64, while their logarithms stay tame.

use std::io;

use serde::Serialize;

use crate::counting;
use crate::error::{Error, Result};
use crate::random::ProbabilityFamily;

/// A real number stored as sign·exp(ln_magnitude); `sign == 0` encodes zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogValue {
    pub ln_magnitude: f64,
    pub sign: i8,
}

impl LogValue {
    pub fn from_ln(ln_magnitude: f64) -> Self {
        LogValue {
            ln_magnitude,
            sign: 1,
        }
    }

    pub fn from_value(v: f64) -> Self {
        if v == 0.0 {
            LogValue {
                ln_magnitude: f64::NEG_INFINITY,
                sign: 0,
            }
        } else {
            LogValue {
                ln_magnitude: v.abs().ln(),
                sign: if v < 0.0 { -1 } else { 1 },
            }
        }
    }

    /// Back to a plain value; overflows to ±∞ beyond f64 range.
    pub fn value(&self) -> f64 {
        self.sign as f64 * self.ln_magnitude.exp()
    }
}

/// Which expectation a curve traces as a function of n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CurveKind {
    /// E[R] = p·u_r(n), the expected number of realized edges.
    TotalEdges,
    /// E[R_s] = p·u_s(n) for one fixed edge size s.
    EdgesOfSize(u32),
    /// E[D(v)] = p·u(n), the expected degree of one vertex.
    VertexDegree,
    /// E[R]/E[D]: p cancels; approaches 3/2 from below.
    RatioRD,
    /// P(s) = u_s/u_r, the probability that a realized edge has size s.
    /// Independent of the probability family — the Bernoulli weight cancels.
    SizeProbability(u32),
}

/// An evaluated curve: one (n, value) point per requested universe size.
#[derive(Clone, Debug, Serialize)]
pub struct ExpectationCurve {
    pub kind: CurveKind,
    pub points: Vec<(u64, LogValue)>,
}

impl ExpectationCurve {
    /// CSV rows `n,log_value,sign`.
    pub fn write_csv<W: io::Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["n", "log_value", "sign"])?;
        for (n, v) in &self.points {
            out.write_record([
                n.to_string(),
                format!("{:.12e}", v.ln_magnitude),
                v.sign.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// ln E[R] at real-valued n for a family (valid far beyond f64 range).
pub fn ln_expected_edges(n: f64, family: ProbabilityFamily) -> f64 {
    family.ln_p(n) + counting::ln_total_edges(n)
}

/// E[R] = p·u_r(n) as a plain value for directly supplied p.
pub fn expected_edges(n: u32, p: f64) -> Result<f64> {
    check_p(p)?;
    if p == 0.0 {
        return Ok(0.0);
    }
    Ok((p.ln() + counting::ln_total_edges(n as f64)).exp())
}

/// ln E[R_s] at real-valued n.
pub fn ln_expected_edges_of_size(n: f64, s: u32, family: ProbabilityFamily) -> f64 {
    family.ln_p(n) + counting::ln_size_count(n, s as f64)
}

/// E[R_s] = p·u_s(n) as a plain value.
pub fn expected_edges_of_size(n: u32, s: u32, p: f64) -> Result<f64> {
    check_p(p)?;
    if s < 2 || s > n {
        return Err(Error::SizeOutOfRange { s, n });
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    Ok((p.ln() + counting::ln_size_count(n as f64, s as f64)).exp())
}

/// P(s) = u_s/u_r: the probability that a realized edge has size s.
/// Independent of p — the Bernoulli weight cancels in the ratio.
pub fn size_probability(n: u32, s: u32) -> Result<f64> {
    if s < 2 || s > n {
        return Err(Error::SizeOutOfRange { s, n });
    }
    let nf = n as f64;
    Ok((counting::ln_size_count(nf, s as f64) - counting::ln_total_edges(nf)).exp())
}

/// ln E[D(v)] at real-valued n.
pub fn ln_expected_degree(n: f64, family: ProbabilityFamily) -> f64 {
    family.ln_p(n) + counting::ln_per_vertex_total(n)
}

/// E[D(v)] = p·u(n) as a plain value.
pub fn expected_degree(n: u32, p: f64) -> Result<f64> {
    check_p(p)?;
    if p == 0.0 {
        return Ok(0.0);
    }
    Ok((p.ln() + counting::ln_per_vertex_total(n as f64)).exp())
}

/// E[R]/E[D] = ½(1 − 2(2/3)ⁿ + 3⁻ⁿ)/(⅓ − ½(2/3)ⁿ): p cancels, and the
/// ratio climbs monotonically from 1 (n=2) toward 3/2.
pub fn ratio_r_over_d(n: u32) -> f64 {
    ratio_at(n as f64)
}

fn ratio_at(nf: f64) -> f64 {
    let t = (2f64 / 3.0).powf(nf);
    let numerator = 0.5 * (1.0 - 2.0 * t + 3f64.powf(-nf));
    let denominator = 1.0 / 3.0 - 0.5 * t;
    numerator / denominator
}

/// The same ratio in the classical simple-graph random model, where it grows
/// as n/2 instead of saturating — the contrast column in curve exports.
pub fn simple_graph_ratio(n: u32) -> f64 {
    n as f64 / 2.0
}

/// Large-n approximation ln E[R] ≈ α·ln n + n·ln(3/β).
///
/// The dropped terms are the constant −ln2 plus an exponentially small
/// remainder, so the absolute gap to the exact value approaches ln2; it
/// vanishes only relative to a growing n·ln(3/β) or α·ln n term.
pub fn log_expected_edges_asymptote(n: f64, family: ProbabilityFamily) -> f64 {
    family.alpha * n.ln() + n * (3f64.ln() - family.beta.ln())
}

/// Evaluates one curve kind over an n-grid.
pub fn expectation_curve(
    kind: CurveKind,
    family: ProbabilityFamily,
    ns: &[u64],
) -> Result<ExpectationCurve> {
    let mut points = Vec::with_capacity(ns.len());
    for &n in ns {
        if n < 2 {
            return Err(Error::UniverseTooSmall {
                n: n as u32,
                min: 2,
            });
        }
        let nf = n as f64;
        let value = match kind {
            CurveKind::TotalEdges => LogValue::from_ln(ln_expected_edges(nf, family)),
            CurveKind::EdgesOfSize(s) => {
                if s < 2 || (s as u64) > n {
                    return Err(Error::SizeOutOfRange {
                        s,
                        n: n.min(u32::MAX as u64) as u32,
                    });
                }
                LogValue::from_ln(ln_expected_edges_of_size(nf, s, family))
            }
            CurveKind::VertexDegree => LogValue::from_ln(ln_expected_degree(nf, family)),
            CurveKind::RatioRD => LogValue::from_value(ratio_at(nf)),
            CurveKind::SizeProbability(s) => {
                if s < 2 || (s as u64) > n {
                    return Err(Error::SizeOutOfRange {
                        s,
                        n: n.min(u32::MAX as u64) as u32,
                    });
                }
                LogValue::from_ln(
                    counting::ln_size_count(nf, s as f64) - counting::ln_total_edges(nf),
                )
            }
        };
        points.push((n, value));
    }
    Ok(ExpectationCurve { kind, points })
}

/// `count` integers spread multiplicatively over [lo, hi], deduplicated after
/// rounding — the usual grid for log-log slope fits.
pub fn log_spaced(lo: u64, hi: u64, count: usize) -> Vec<u64> {
    assert!(lo >= 1 && hi >= lo && count >= 2);
    let (llo, lhi) = ((lo as f64).ln(), (hi as f64).ln());
    let mut ns: Vec<u64> = (0..count)
        .map(|i| {
            let t = i as f64 / (count - 1) as f64;
            (llo + t * (lhi - llo)).exp().round() as u64
        })
        .collect();
    ns.dedup();
    ns
}

/// Ordinary least-squares slope of y against x.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|(x, _)| x).sum::<f64>() / n;
    let my = points.iter().map(|(_, y)| y).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability { p });
    }
    Ok(())
}
