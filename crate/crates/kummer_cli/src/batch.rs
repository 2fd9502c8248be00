use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use kummer_rr::fparith::TripleParams;
use kummer_rr::pipeline::PipelineReport;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{certification_required, parse_triple, run_file};
use crate::Format;

struct Job {
    params: TripleParams,
    seed: Option<PathBuf>,
}

/// Parses `p ℓ₀ ℓ₁ [seed]` lines; `#` starts a comment. Relative seed paths
/// resolve against the batch file's directory.
fn parse_batch(file: &Path, data_dir: Option<&Path>) -> Result<Vec<Job>> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let base = file.parent().unwrap_or(Path::new("."));
    let mut jobs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (triple, seed) = match fields.len() {
            3 => (fields.join(","), None),
            4 => (fields[..3].join(","), Some(base.join(fields[3]))),
            _ => anyhow::bail!("{}:{}: expected `p ℓ₀ ℓ₁ [seed]`", file.display(), n + 1),
        };
        let params = parse_triple(&triple)
            .map_err(|e| anyhow::anyhow!("{}:{}: {e}", file.display(), n + 1))?;
        let seed = seed.or_else(|| {
            data_dir
                .map(|d| {
                    d.join(format!(
                        "p{}_l{}_l{}.json",
                        params.p, params.ell0, params.ell1
                    ))
                })
                .filter(|p| p.exists())
        });
        jobs.push(Job { params, seed });
    }
    Ok(jobs)
}

#[derive(Serialize)]
struct BatchRow {
    params: TripleParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<PipelineReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub fn batch(
    file: &Path,
    data_dir: Option<&Path>,
    trials: usize,
    jobs: Option<usize>,
    format: Format,
) -> Result<ExitCode> {
    let work = parse_batch(file, data_dir)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        pool = pool.num_threads(n.max(1));
    }
    let pool = pool.build()?;
    // `collect` on an indexed parallel iterator keeps input order.
    let rows: Vec<BatchRow> = pool.install(|| {
        work.par_iter()
            .map(|job| {
                let result = match &job.seed {
                    Some(path) => run_file(path, Some(job.params), trials),
                    None => Err(certification_required(Some(job.params))),
                };
                match result {
                    Ok(r) => BatchRow {
                        params: job.params,
                        report: Some(r),
                        error: None,
                    },
                    Err(e) => BatchRow {
                        params: job.params,
                        report: None,
                        error: Some(format!("{e:#}")),
                    },
                }
            })
            .collect()
    });
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        Format::Table => {
            println!("{}", PipelineReport::table_header());
            for row in &rows {
                match (&row.report, &row.error) {
                    (Some(r), _) => println!("{}", r.table_row()),
                    (None, e) => {
                        let TripleParams { p, ell0, ell1 } = row.params;
                        println!(
                            "{p:>3} {ell0:>5} {ell1:>6}  error: {}",
                            e.as_deref().unwrap_or("unknown")
                        );
                    }
                }
            }
        }
    }
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    if failed > 0 {
        eprintln!("{failed} of {} triples failed", rows.len());
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}
