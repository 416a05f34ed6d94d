//! Execution and rendering for every `chemspace` subcommand.
//!
//! Conventions shared by all subcommands:
//! - the primary result goes to stdout, or to `--output PATH` when given
//!   (`sample` is the exception: its summary always prints to stdout and
//!   `--output` names the instance document files);
//! - warnings and notes go to stderr;
//! - exact counts render as decimal strings, and quantities that overflow
//!   f64 render as (log-magnitude, sign) pairs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::json;

use chemspace_core::analysis::{self, DistributionSummary, FitOptions, Verdict};
use chemspace_core::counting;
use chemspace_core::hypergraph::OrientedHypergraph;
use chemspace_core::random::{self, CurveKind, ExpectationCurve};
use chemspace_core::reaction::{self, write_hypergraph, NameTable};
use chemspace_core::{Error, ProbabilityFamily, RandomModelParams, Result, SamplerStrategy};

use crate::{
    CountArgs, CurvesArgs, ExtremaArgs, Format, IngestArgs, SampleArgs, TestArgs, DEFAULT_SEED,
    SEED_ENV,
};

// ---------------------------------------------------------------------------
// shared plumbing

/// Writes the primary output to `--output PATH` or stdout.
fn emit(output: Option<&Path>, content: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, content).map_err(Error::from),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Seed precedence: `--entropy` > `--seed` > `CHEMSPACE_SEED` > the fixed
/// default. A malformed environment value is a configuration error, not a
/// silent fallback.
fn resolve_seed(seed: Option<u64>, entropy: bool) -> Result<u64> {
    if entropy {
        return Ok(rand::random());
    }
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            Error::Config(format!(
                "{SEED_ENV} must be an unsigned 64-bit integer, got {raw:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SEED),
        Err(e) => Err(Error::Config(format!("{SEED_ENV}: {e}"))),
    }
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::ConsistentWithRandom => "consistent-with-random",
        Verdict::Rejected => "rejected",
    }
}

fn strategy_label(s: SamplerStrategy) -> &'static str {
    match s {
        SamplerStrategy::Auto => "auto",
        SamplerStrategy::ExhaustiveBernoulli => "exhaustive-bernoulli",
        SamplerStrategy::PerSizeBinomial => "per-size-binomial",
    }
}

// ---------------------------------------------------------------------------
// count

pub fn count(args: CountArgs) -> Result<()> {
    let report = counting::full_report(args.n, args.blocks)?;
    let content = match args.format {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "n: {}", report.n);
            let _ = writeln!(out, "total edges: {}", report.total_edges);
            let _ = writeln!(out, "impossible pairs: {}", report.impossible_pairs);
            let _ = writeln!(out, "per-vertex total: {}", report.per_vertex_total);
            let _ = writeln!(out, "max size = max degree: {}", report.max_size_degree);
            let _ = writeln!(out, "edges by size:");
            for (s, c) in &report.per_size {
                let _ = writeln!(out, "  size {s}: {c}");
            }
            if let Some(blocks) = &report.per_block {
                let _ = writeln!(out, "edges by block (left i, right j):");
                for ((i, j), c) in blocks {
                    let _ = writeln!(out, "  block {i}:{j}: {c}");
                }
            }
            out
        }
        Format::Json => report.to_json_string()? + "\n",
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            String::from_utf8(buf).expect("CSV output is UTF-8")
        }
    };
    emit(args.output.as_deref(), &content)
}

// ---------------------------------------------------------------------------
// sample

/// Per-replicate summary carried from the worker threads to the renderer.
struct ReplicateRow {
    k: u64,
    seed: u64,
    edges: u64,
    size: u64,
    degree: u64,
    strategy: SamplerStrategy,
    approximate: bool,
    document: Option<String>,
}

fn draw_replicate(
    n: u32,
    p: f64,
    base_seed: u64,
    k: u64,
    strategy: SamplerStrategy,
    want_document: bool,
) -> Result<ReplicateRow> {
    let seed = random::split_seed(base_seed, k);
    let outcome = random::sample_detailed(RandomModelParams::new(n, p, seed)?, strategy)?;
    let g = outcome.hypergraph;
    let document = want_document
        .then(|| {
            let mut buf = Vec::new();
            write_hypergraph(&mut buf, &g, &NameTable::numbered(n))?;
            Ok::<_, Error>(String::from_utf8(buf).expect("document output is UTF-8"))
        })
        .transpose()?;
    Ok(ReplicateRow {
        k,
        seed,
        edges: g.edge_count(),
        size: g.size(),
        degree: g.degree(),
        strategy: outcome.strategy,
        approximate: outcome.approximation.is_some(),
        document,
    })
}

/// Document path for replicate k: the exact `--output` path for a single
/// draw, `stem.k.json` alongside it otherwise.
fn replicate_path(base: &Path, k: u64, count: u64) -> PathBuf {
    if count == 1 {
        return base.to_path_buf();
    }
    let stem = base
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("sample");
    base.parent()
        .unwrap_or_else(|| Path::new(""))
        .join(format!("{stem}.{k}.json"))
}

pub fn sample(args: SampleArgs) -> Result<()> {
    let p = match args.p {
        Some(p) => p,
        // clap guarantees alpha and beta travel together when p is absent.
        None => ProbabilityFamily::new(args.alpha.unwrap(), args.beta.unwrap())?.p(args.n)?,
    };
    let base_seed = resolve_seed(args.seed, args.entropy)?;
    // Validate (n, p) once up front so a bad request fails before threading.
    RandomModelParams::new(args.n, p, base_seed)?;

    let strategy: SamplerStrategy = args.strategy.into();
    let (n, count) = (args.n, args.count);
    let want_documents = args.output.is_some();
    let jobs = args.jobs.min(count);

    // Replicate k always samples from split_seed(base, k), so the result set
    // is a function of the base seed alone; workers take k ≡ w (mod jobs) and
    // the merge sorts by k, making the output independent of `--jobs`.
    let mut rows: Vec<ReplicateRow> = if jobs <= 1 {
        (0..count)
            .map(|k| draw_replicate(n, p, base_seed, k, strategy, want_documents))
            .collect::<Result<_>>()?
    } else {
        std::thread::scope(|scope| {
            let workers: Vec<_> = (0..jobs)
                .map(|w| {
                    scope.spawn(move || -> Result<Vec<ReplicateRow>> {
                        (w..count)
                            .step_by(jobs as usize)
                            .map(|k| draw_replicate(n, p, base_seed, k, strategy, want_documents))
                            .collect()
                    })
                })
                .collect();
            let mut all = Vec::with_capacity(count as usize);
            for worker in workers {
                all.extend(worker.join().expect("sampler thread panicked")?);
            }
            Ok::<_, Error>(all)
        })?
    };
    rows.sort_by_key(|row| row.k);

    if let Some(base) = &args.output {
        for row in &rows {
            let doc = row.document.as_ref().expect("documents were requested");
            std::fs::write(replicate_path(base, row.k, count), doc)?;
        }
    }

    let summary = match args.format {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "G(n={n}, p={p}) base-seed={base_seed} strategy={}",
                strategy_label(rows[0].strategy)
            );
            for row in &rows {
                let _ = writeln!(
                    out,
                    "replicate {}: seed={} edges={} size={} degree={}{}",
                    row.k,
                    row.seed,
                    row.edges,
                    row.size,
                    row.degree,
                    if row.approximate {
                        " (approximate)"
                    } else {
                        ""
                    }
                );
            }
            if count > 1 {
                let m = count as f64;
                let _ = writeln!(
                    out,
                    "replicates: {count}  mean edges: {:.6}  mean size: {:.6}  mean degree: {:.6}",
                    rows.iter().map(|r| r.edges as f64).sum::<f64>() / m,
                    rows.iter().map(|r| r.size as f64).sum::<f64>() / m,
                    rows.iter().map(|r| r.degree as f64).sum::<f64>() / m,
                );
            }
            out
        }
        Format::Json => {
            let m = count as f64;
            let value = json!({
                "n": n,
                "p": p,
                "base_seed": base_seed,
                "strategy": strategy_label(rows[0].strategy),
                "replicates": rows.iter().map(|row| json!({
                    "replicate": row.k,
                    "seed": row.seed,
                    "edges": row.edges,
                    "size": row.size,
                    "degree": row.degree,
                    "approximate": row.approximate,
                })).collect::<Vec<_>>(),
                "mean_edges": rows.iter().map(|r| r.edges as f64).sum::<f64>() / m,
                "mean_size": rows.iter().map(|r| r.size as f64).sum::<f64>() / m,
                "mean_degree": rows.iter().map(|r| r.degree as f64).sum::<f64>() / m,
            });
            serde_json::to_string_pretty(&value)? + "\n"
        }
        Format::Csv => {
            let mut buf = Vec::new();
            {
                let mut wtr = csv::Writer::from_writer(&mut buf);
                wtr.write_record(["replicate", "seed", "edges", "size", "degree"])?;
                for row in &rows {
                    wtr.write_record([
                        row.k.to_string(),
                        row.seed.to_string(),
                        row.edges.to_string(),
                        row.size.to_string(),
                        row.degree.to_string(),
                    ])?;
                }
                wtr.flush()?;
            }
            String::from_utf8(buf).expect("CSV output is UTF-8")
        }
    };
    print!("{summary}");
    Ok(())
}

// ---------------------------------------------------------------------------
// curves

/// `LO:HI[:POINTS]` → a log-spaced integer grid.
fn parse_n_range(raw: &str) -> Result<Vec<u64>> {
    let bad = || {
        Error::Config(format!(
            "--n-range must be LO:HI[:POINTS] with 2 <= LO <= HI and POINTS >= 1, got {raw:?}"
        ))
    };
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err(bad());
    }
    let lo: u64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: u64 = parts[1].trim().parse().map_err(|_| bad())?;
    let points: usize = match parts.get(2) {
        Some(s) => s.trim().parse().map_err(|_| bad())?,
        None => 40,
    };
    if lo < 2 || hi < lo || points == 0 {
        return Err(bad());
    }
    Ok(random::curves::log_spaced(lo, hi, points))
}

pub fn curves(args: CurvesArgs) -> Result<()> {
    let family = ProbabilityFamily::new(args.alpha, args.beta)?;
    let grid = parse_n_range(&args.n_range)?;

    let mut sizes: Vec<u32> = args.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();

    let mut kinds: Vec<(String, CurveKind)> = vec![
        ("edges".into(), CurveKind::TotalEdges),
        ("degree".into(), CurveKind::VertexDegree),
        ("ratio".into(), CurveKind::RatioRD),
    ];
    for &s in &sizes {
        kinds.push((format!("edges_s{s}"), CurveKind::EdgesOfSize(s)));
        kinds.push((format!("p_s{s}"), CurveKind::SizeProbability(s)));
    }

    let evaluated: Vec<(String, ExpectationCurve)> = kinds
        .into_iter()
        .map(|(label, kind)| {
            Ok((
                label,
                random::curves::expectation_curve(kind, family, &grid)?,
            ))
        })
        .collect::<Result<_>>()?;

    let content = match args.format {
        Format::Csv => {
            let mut buf = Vec::new();
            {
                let mut wtr = csv::Writer::from_writer(&mut buf);
                wtr.write_record(["curve", "n", "log_value", "sign"])?;
                for (label, curve) in &evaluated {
                    for (n, v) in &curve.points {
                        wtr.write_record([
                            label.as_str(),
                            &n.to_string(),
                            &format!("{:.12e}", v.ln_magnitude),
                            &v.sign.to_string(),
                        ])?;
                    }
                }
                wtr.flush()?;
            }
            String::from_utf8(buf).expect("CSV output is UTF-8")
        }
        Format::Json => {
            let value = json!({
                "alpha": args.alpha,
                "beta": args.beta,
                "curves": evaluated.iter().map(|(label, curve)| json!({
                    "label": label,
                    "curve": curve,
                })).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&value)? + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "expectation curves for p(n) = n^{} / {}^n (values as ln|x| and sign)",
                args.alpha, args.beta
            );
            for (label, curve) in &evaluated {
                let _ = writeln!(out, "curve {label}:");
                for (n, v) in &curve.points {
                    let _ = writeln!(out, "  n={n} ln={:.6} sign={}", v.ln_magnitude, v.sign);
                }
            }
            out
        }
    };
    emit(args.output.as_deref(), &content)
}

// ---------------------------------------------------------------------------
// extrema

pub fn extrema(args: ExtremaArgs) -> Result<()> {
    let result = if let Some(n) = args.s_max {
        random::solve_s_max(n)?
    } else {
        // clap guarantees exactly two values when --n-max is present.
        let raw = args.n_max.as_ref().expect("clap enforces the arg group");
        let s: u32 = raw[0].trim().parse().map_err(|_| {
            Error::Config(format!(
                "--n-max S must be an edge size (integer >= 2), got {:?}",
                raw[0]
            ))
        })?;
        let alpha: f64 = raw[1].trim().parse().map_err(|_| {
            Error::Config(format!(
                "--n-max ALPHA must be a real number, got {:?}",
                raw[1]
            ))
        })?;
        random::solve_n_max(s, alpha)?
    };

    let variable = match result.variable {
        random::ExtremumVariable::NMax => "n_max",
        random::ExtremumVariable::SMax => "s_max",
    };
    let content = match args.format {
        Format::Text => format!(
            "variable: {variable}\nroot: {:.6}\nargmax: {}\nresidual: {:.3e}\niterations: {}\n",
            result.value, result.argmax, result.residual, result.iterations
        ),
        Format::Json => serde_json::to_string_pretty(&result)? + "\n",
        Format::Csv => {
            let mut buf = Vec::new();
            {
                let mut wtr = csv::Writer::from_writer(&mut buf);
                wtr.write_record(["variable", "root", "argmax", "residual", "iterations"])?;
                wtr.write_record([
                    variable,
                    &format!("{:.12e}", result.value),
                    &result.argmax.to_string(),
                    &format!("{:.3e}", result.residual),
                    &result.iterations.to_string(),
                ])?;
                wtr.flush()?;
            }
            String::from_utf8(buf).expect("CSV output is UTF-8")
        }
    };
    emit(args.output.as_deref(), &content)
}

// ---------------------------------------------------------------------------
// ingest

fn instance_summary_text(g: &OrientedHypergraph, names: &NameTable) -> String {
    let mut out = String::new();
    let synthetic = (0..g.n()).filter(|&v| names.is_synthetic(v)).count();
    let _ = write!(out, "substances: {}", g.n());
    if synthetic > 0 {
        let _ = write!(out, " ({synthetic} synthetic)");
    }
    if g.n() <= 20 {
        let _ = write!(out, " [{}]", names.names().join(", "));
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "edges: {}", g.edge_count());
    let _ = writeln!(out, "total size: {}", g.size());
    let _ = writeln!(out, "total degree: {}", g.degree());
    let _ = writeln!(out, "size histogram:");
    for (s, c) in analysis::size_histogram(g) {
        let _ = writeln!(out, "  size {s}: {c}");
    }
    let degrees: Vec<String> = analysis::degree_sequence(g)
        .iter()
        .map(u64::to_string)
        .collect();
    let _ = writeln!(out, "degree sequence: {}", degrees.join(" "));
    match analysis::ratio_diagnostic(g) {
        Ok(ratio) => {
            let _ = writeln!(out, "edges / mean degree: {ratio:.6}");
        }
        Err(_) => {
            let _ = writeln!(out, "edges / mean degree: undefined (no edges)");
        }
    }
    out
}

pub fn ingest(args: IngestArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.input)?;
    let outcome = reaction::ingest(&text, args.policy.into())?;
    for warning in &outcome.warnings {
        eprintln!("warning: {warning}");
    }
    let g = &outcome.hypergraph;
    let names = &outcome.names;

    if let Some(path) = &args.matrix {
        let export = reaction::export_matrix_with_names(g, names)?;
        std::fs::write(path, export.to_json_string()? + "\n")?;
    }
    if let Some(path) = &args.matrix_csv {
        let file = std::fs::File::create(path)?;
        reaction::write_dense_csv(g, names, std::io::BufWriter::new(file))?;
    }

    let content = match args.format {
        Format::Text => instance_summary_text(g, names),
        Format::Json => {
            let mut buf = Vec::new();
            write_hypergraph(&mut buf, g, names)?;
            String::from_utf8(buf).expect("document output is UTF-8")
        }
        Format::Csv => {
            let mut buf = Vec::new();
            {
                let mut wtr = csv::Writer::from_writer(&mut buf);
                wtr.write_record(["metric", "index", "value"])?;
                wtr.write_record(["n", "", &g.n().to_string()])?;
                wtr.write_record(["edges", "", &g.edge_count().to_string()])?;
                wtr.write_record(["size", "", &g.size().to_string()])?;
                wtr.write_record(["degree", "", &g.degree().to_string()])?;
                for (s, c) in analysis::size_histogram(g) {
                    wtr.write_record(["size_count", &s.to_string(), &c.to_string()])?;
                }
                for (v, d) in analysis::degree_sequence(g).iter().enumerate() {
                    wtr.write_record(["vertex_degree", &v.to_string(), &d.to_string()])?;
                }
                if let Ok(ratio) = analysis::ratio_diagnostic(g) {
                    wtr.write_record(["ratio", "", &format!("{ratio:.12e}")])?;
                }
                wtr.flush()?;
            }
            String::from_utf8(buf).expect("CSV output is UTF-8")
        }
    };
    emit(args.output.as_deref(), &content)
}

// ---------------------------------------------------------------------------
// test

fn fit_line(name: &str, fit: &DistributionSummary) -> String {
    format!(
        "{name}: chi2={:.4} df={} p-value={:.6} -> {}\n",
        fit.statistic,
        fit.degrees_of_freedom,
        fit.p_value,
        verdict_label(fit.verdict)
    )
}

pub fn test(args: TestArgs) -> Result<()> {
    if !(args.significance > 0.0 && args.significance < 1.0) {
        return Err(Error::Config(format!(
            "--significance must lie strictly between 0 and 1, got {}",
            args.significance
        )));
    }
    // clap guarantees alpha and beta travel together and exclude --p.
    let family = match (args.alpha, args.beta) {
        (Some(alpha), Some(beta)) => Some(ProbabilityFamily::new(alpha, beta)?),
        _ => None,
    };

    // `sampled_p` records the probability a self-test instance was drawn
    // with; for file inputs it stays None and the fit estimates p when
    // neither --p nor a family pins it.
    let (g, source, sampled_p): (OrientedHypergraph, String, Option<f64>) = match &args.input {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            if text.trim_start().starts_with('{') {
                let (g, _names) = reaction::read_hypergraph(text.as_bytes())?;
                (g, format!("document {}", path.display()), None)
            } else {
                let outcome = reaction::ingest(&text, args.policy.into())?;
                for warning in &outcome.warnings {
                    eprintln!("warning: {warning}");
                }
                (
                    outcome.hypergraph,
                    format!("reactions {}", path.display()),
                    None,
                )
            }
        }
        None => {
            let n = args.n.ok_or_else(|| {
                Error::Config("either an input file or --n (self-test) is required".into())
            })?;
            let p = match (args.p, &family) {
                (Some(p), _) => p,
                (None, Some(f)) => f.p(n)?,
                (None, None) => {
                    return Err(Error::Config(
                        "a self-test needs --p or --alpha/--beta to draw from".into(),
                    ))
                }
            };
            let seed = resolve_seed(args.seed, args.entropy)?;
            let g = random::sample(RandomModelParams::new(n, p, seed)?)?;
            (g, format!("self-test n={n} p={p} seed={seed}"), Some(p))
        }
    };

    let p_null = match args.p {
        Some(p) => Some(p),
        None => match &family {
            Some(f) => Some(f.p(g.n())?),
            None => sampled_p,
        },
    };
    let report = analysis::fit_randomness_with(
        &g,
        p_null,
        FitOptions {
            significance: args.significance,
            ..FitOptions::default()
        },
    )?;

    let content = match args.format {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "instance: {source}");
            let _ = writeln!(out, "n: {}", report.n);
            let _ = writeln!(out, "observed edges: {}", report.observed_edges);
            let _ = writeln!(out, "observed degree sum: {}", report.observed_degree_sum);
            let _ = writeln!(
                out,
                "edges / mean degree: {:.6} (theoretical {:.6})",
                report.observed_ratio, report.theoretical_ratio
            );
            let _ = writeln!(
                out,
                "estimated p: {:.6e}{}",
                report.p_hat,
                match p_null {
                    Some(p) => format!(" (null hypothesis p={p})"),
                    None => " (null hypothesis estimated from the instance)".into(),
                }
            );
            out.push_str(&fit_line("size fit", &report.size_fit));
            out.push_str(&fit_line("degree fit", &report.degree_fit));
            if report.degenerate {
                let _ = writeln!(
                    out,
                    "note: the instance has no edges; rejected by convention"
                );
            }
            let _ = writeln!(
                out,
                "verdict: {} (significance {})",
                verdict_label(report.verdict),
                args.significance
            );
            out
        }
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut buf = Vec::new();
            {
                let mut wtr = csv::Writer::from_writer(&mut buf);
                wtr.write_record(["metric", "value"])?;
                wtr.write_record(["n", &report.n.to_string()])?;
                wtr.write_record(["observed_edges", &report.observed_edges.to_string()])?;
                wtr.write_record(["observed_ratio", &format!("{:.12e}", report.observed_ratio)])?;
                wtr.write_record([
                    "theoretical_ratio",
                    &format!("{:.12e}", report.theoretical_ratio),
                ])?;
                wtr.write_record(["p_hat", &format!("{:.12e}", report.p_hat)])?;
                wtr.write_record(["size_p_value", &format!("{:.12e}", report.size_fit.p_value)])?;
                wtr.write_record([
                    "degree_p_value",
                    &format!("{:.12e}", report.degree_fit.p_value),
                ])?;
                wtr.write_record(["verdict", verdict_label(report.verdict)])?;
                wtr.flush()?;
            }
            String::from_utf8(buf).expect("CSV output is UTF-8")
        }
    };
    // The verdict is a result, not a failure: a rejected instance still
    // exits 0. Nonzero exits are reserved for operational errors.
    emit(args.output.as_deref(), &content)
}
