//! Seeded parameter sweeps producing one CSV row per `(d, seed)`.

use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{solve, Params};
use crate::error::{Error, Result};
use crate::generate::random_regular;
use crate::homomorphism::FamilySpec;
use crate::templates::{build_template, CertifiedTemplate};

pub const CSV_HEADER: &str = "seed,n,d,family,alpha,template_order,template_delta,template_Delta,min_deg_H,target_deg,ratio,tau,retries,verified,runtime_ms";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Seeds {
    /// `master_seed, master_seed + 1, …`
    Count(u64),
    List(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: String,
    pub d_values: Vec<usize>,
    /// `n = n_multiplier · d`, plus one when `n·d` is odd.
    #[serde(default = "default_multiplier")]
    pub n_multiplier: usize,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    pub seeds: Seeds,
    /// Offset for counted seeds; also seeds random templates.
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_retries")]
    pub max_retries: usize,
    #[serde(default)]
    pub max_phase2_iterations: Option<usize>,
    #[serde(default)]
    pub phase2_uncolored_threshold: Option<usize>,
    #[serde(default)]
    pub output: Option<String>,
    /// Fill `runtime_ms`. Off by default so rows are reproducible.
    #[serde(default)]
    pub timing: bool,
}

fn default_multiplier() -> usize {
    10
}

fn default_alpha() -> f64 {
    64.0
}

fn default_retries() -> usize {
    20
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        if cfg.n_multiplier < 2 {
            return Err(Error::InvalidParams("n_multiplier must be at least 2".into()));
        }
        Ok(cfg)
    }

    pub fn seed_list(&self) -> Vec<u64> {
        match &self.seeds {
            Seeds::Count(k) => (0..*k).map(|i| self.master_seed.wrapping_add(i)).collect(),
            Seeds::List(l) => l.clone(),
        }
    }

    fn params(&self, seed: u64) -> Params {
        Params {
            alpha: self.alpha,
            phase2_uncolored_threshold: self.phase2_uncolored_threshold,
            max_phase2_iterations: self.max_phase2_iterations,
            max_retries: self.max_retries,
            seed,
        }
    }
}

/// `n` for degree `d`: the multiple, bumped by one when `n·d` is odd.
pub fn adjusted_n(multiplier: usize, d: usize) -> usize {
    let n = multiplier * d;
    if n * d % 2 == 1 {
        n + 1
    } else {
        n
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    pub family: String,
    pub alpha: f64,
    pub template_order: usize,
    pub template_delta: usize,
    #[serde(rename = "template_Delta")]
    pub template_max_degree: usize,
    pub min_deg_h: Option<usize>,
    pub target_deg: f64,
    pub ratio: Option<f64>,
    pub tau: Option<usize>,
    pub retries: usize,
    pub verified: bool,
    pub runtime_ms: Option<u64>,
}

/// Runs every `(d, seed)` pair; rows come back ordered by `d` as listed,
/// then by seed as listed, whatever order they finish in.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    let family = FamilySpec::parse(&cfg.family)?;
    family.validate_for_pipeline()?;
    let seeds = cfg.seed_list();
    let mut templates = Vec::with_capacity(cfg.d_values.len());
    for &d in &cfg.d_values {
        let t = Arc::new(build_template(&family, d, cfg.alpha, cfg.master_seed)?);
        cfg.params(0).validate(&t)?;
        templates.push(t);
    }
    let jobs: Vec<(usize, u64)> =
        (0..cfg.d_values.len()).flat_map(|i| seeds.iter().map(move |&s| (i, s))).collect();
    jobs.par_iter()
        .map(|&(i, seed)| run_one(cfg, &family, cfg.d_values[i], &templates[i], seed))
        .collect()
}

fn run_one(
    cfg: &ExperimentConfig,
    family: &FamilySpec,
    d: usize,
    template: &Arc<CertifiedTemplate>,
    seed: u64,
) -> Result<ExperimentRow> {
    let start = Instant::now();
    let n = adjusted_n(cfg.n_multiplier, d);
    let g = random_regular(n, d, seed)?;
    let target_deg = template.delta() as f64 * d as f64 / (4.0 * template.order() as f64);
    let mut row = ExperimentRow {
        seed,
        n,
        d,
        family: family.name.clone(),
        alpha: cfg.alpha,
        template_order: template.order(),
        template_delta: template.delta(),
        template_max_degree: template.max_degree(),
        min_deg_h: None,
        target_deg,
        ratio: None,
        tau: None,
        retries: cfg.max_retries,
        verified: false,
        runtime_ms: None,
    };
    match solve(&g, family, template.clone(), &cfg.params(seed)) {
        Ok(sol) => {
            let r = &sol.report;
            row.min_deg_h = Some(r.min_degree);
            row.ratio = Some(r.min_degree as f64 / target_deg);
            row.tau = Some(r.tau);
            row.retries = r.retries;
            row.verified = r.verdict.is_fully_true();
        }
        Err(Error::RetriesExhausted { .. }) => {}
        Err(e) => return Err(e),
    }
    if cfg.timing {
        row.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(row)
}

/// Header plus one line per row.
pub fn write_csv<W: Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(rows: &[ExperimentRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}
