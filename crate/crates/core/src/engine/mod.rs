//! Two-phase randomized coloring of a bipartite graph by a template `𝒢`,
//! and the retry driver around it.
//!
//! Phase I colors `A`, Phase II colors `B`; every deletion keeps the final
//! coloring a locally injective homomorphism `H → 𝒢`.

mod phase1;
mod phase2;
mod pipeline;
mod tally;

pub use phase1::{check_p3, phase1, phase1_with, P3Outcome, Phase1Report};
pub use phase2::{phase2, phase2_iteration, phase2_iteration_with, IterationRecord, Phase2Report, Phase2State};
pub use pipeline::{run_pipeline, solve, AttemptReport, Solution, SolutionReport, TemplateSummary};

use serde::Serialize;

use crate::bipartite::Bipartition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::templates::TemplateGraph;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Params {
    /// Requested ratio `|V(𝒢)|/d`.
    pub alpha: f64,
    /// Phase II stops once every `a` has at most this many uncolored
    /// neighbors. Defaults to `⌈√δ(𝒢)⌉`.
    pub phase2_uncolored_threshold: Option<usize>,
    /// Defaults to `⌈10·log₂ d⌉ + 5`.
    pub max_phase2_iterations: Option<usize>,
    pub max_retries: usize,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            alpha: 64.0,
            phase2_uncolored_threshold: None,
            max_phase2_iterations: None,
            max_retries: 20,
            seed: 0,
        }
    }
}

impl Params {
    pub fn with_seed(seed: u64) -> Self {
        Params { seed, ..Params::default() }
    }

    pub fn threshold(&self, template: &TemplateGraph) -> usize {
        self.phase2_uncolored_threshold
            .unwrap_or_else(|| (template.delta() as f64).sqrt().ceil() as usize)
    }

    pub fn iteration_cap(&self, d: usize) -> usize {
        self.max_phase2_iterations
            .unwrap_or_else(|| (10.0 * (d.max(2) as f64).log2()).ceil() as usize + 5)
    }

    /// Checks `α ≥ 32β` against the template and positivity of the caps.
    pub fn validate(&self, template: &TemplateGraph) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(Error::InvalidParams(format!("alpha={} must be positive", self.alpha)));
        }
        if self.alpha < 32.0 * template.beta() {
            return Err(Error::InvalidParams(format!(
                "alpha={} is below 32·beta={} for the {} template",
                self.alpha,
                32.0 * template.beta(),
                template.construction()
            )));
        }
        if self.phase2_uncolored_threshold == Some(0) {
            return Err(Error::InvalidParams("phase2_uncolored_threshold must be positive".into()));
        }
        if self.max_phase2_iterations == Some(0) {
            return Err(Error::InvalidParams("max_phase2_iterations must be positive".into()));
        }
        Ok(())
    }
}

/// What both phases read but never modify.
#[derive(Clone, Copy, Debug)]
pub struct PhaseContext<'a> {
    pub template: &'a TemplateGraph,
    pub sides: &'a Bipartition,
    /// Degree scale `d`, at least the maximum degree of the graph colored.
    pub d: usize,
}

impl PhaseContext<'_> {
    pub fn alpha_hat(&self) -> f64 {
        self.template.alpha_hat(self.d)
    }

    /// `δ(𝒢)/(4α̂)`, the final degree target.
    pub fn target_degree(&self) -> f64 {
        self.template.delta() as f64 / (4.0 * self.alpha_hat())
    }

    fn check(&self, h: &Graph) -> Result<()> {
        if !self.sides.separates(h) {
            return Err(Error::InvalidParams("graph is not bipartite with the given sides".into()));
        }
        if self.d == 0 || h.max_degree() > self.d {
            return Err(Error::InvalidParams(format!(
                "degree scale d={} is below the maximum degree {}",
                self.d,
                h.max_degree()
            )));
        }
        Ok(())
    }
}
