use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{phase1, phase2, Params, Phase1Report, Phase2Report, PhaseContext};
use crate::bipartite::{bipartize, Bipartition, Side};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homomorphism::{FamilySpec, PartialColoring};
use crate::templates::{build_template, CertifiedTemplate, HomCertificate};
use crate::verifier::{phase1_checks, verify_solution, Verdict};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TemplateSummary {
    pub construction: String,
    pub order: usize,
    pub delta: usize,
    pub max_degree: usize,
    pub beta: f64,
    pub certificate: HomCertificate,
}

impl TemplateSummary {
    fn of(t: &CertifiedTemplate) -> Self {
        TemplateSummary {
            construction: t.construction().to_string(),
            order: t.order(),
            delta: t.delta(),
            max_degree: t.max_degree(),
            beta: t.beta(),
            certificate: t.certificate(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AttemptReport {
    pub attempt: usize,
    /// `seed ⊕ attempt`.
    pub seed: u64,
    pub phase1: Phase1Report,
    pub phase2: Option<Phase2Report>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionReport {
    /// SHA-256 of the input edge list.
    pub input_digest: String,
    pub n: usize,
    pub d: usize,
    pub family: String,
    pub family_closed: bool,
    pub template: TemplateSummary,
    pub seed: u64,
    pub alpha: f64,
    pub alpha_hat: f64,
    pub max_retries: usize,
    pub attempts: Vec<AttemptReport>,
    /// Attempt whose output is returned.
    pub chosen_attempt: usize,
    /// Attempts run beyond the first.
    pub retries: usize,
    pub tau: usize,
    pub min_degree: usize,
    pub target_degree: f64,
    /// P3 and Q1 both held on the returned attempt.
    pub degree_targets_met: bool,
    pub verdict: Verdict,
}

impl SolutionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A verified spanning subgraph `H` with its coloring `χ: V(H) → V(𝒢)`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub h: Graph,
    pub coloring: PartialColoring,
    pub sides: Bipartition,
    pub template: Arc<CertifiedTemplate>,
    pub report: SolutionReport,
}

/// Builds the template for `(family, d, α)` and runs [`solve`].
pub fn run_pipeline(g: &Graph, family: &FamilySpec, params: &Params) -> Result<Solution> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    family.validate_for_pipeline()?;
    let template = build_template(family, d, params.alpha, params.seed)?;
    solve(g, family, Arc::new(template), params)
}

struct Candidate {
    attempt: usize,
    h_s: Graph,
    h: Graph,
    chi: PartialColoring,
    tau: usize,
    min_degree: usize,
    targets_met: bool,
}

/// Runs attempts `r = 0..=max_retries`, each Phase I then Phase II with a
/// generator seeded by `seed ⊕ r`, stopping at the first attempt meeting
/// both P3 and Q1. Otherwise the attempt with the largest `δ(H)` (earliest
/// on ties) is returned with `degree_targets_met = false`. Every returned
/// `H` passes the verifier.
pub fn solve(g: &Graph, family: &FamilySpec, template: Arc<CertifiedTemplate>, params: &Params) -> Result<Solution> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    if d == 0 {
        return Err(Error::InvalidParams("input graph has no edges".into()));
    }
    family.validate_for_pipeline()?;
    if template.family() != family.name {
        return Err(Error::InvalidParams(format!(
            "template certified for {}, not {}",
            template.family(),
            family.name
        )));
    }
    params.validate(&template)?;

    let (sides, h0) = bipartize(g);
    let ctx = PhaseContext { template: template.template(), sides: &sides, d };

    let mut attempts = Vec::new();
    let mut best: Option<Candidate> = None;
    for r in 0..=params.max_retries {
        let seed = params.seed ^ r as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (h_s, chi_s, p1) = phase1(&h0, ctx, &mut rng)?;
        let p3 = p1.p3.passed;
        let (p2, failure) = match phase2(h_s.clone(), chi_s, ctx, params, &mut rng) {
            Ok((h, chi, p2)) => {
                let targets_met = p3 && p2.q1;
                let cand =
                    Candidate { attempt: r, h_s, h, chi, tau: p2.tau, min_degree: p2.min_degree, targets_met };
                if best.as_ref().is_none_or(|b| cand.min_degree > b.min_degree || targets_met) {
                    best = Some(cand);
                }
                (Some(p2), None)
            }
            Err(e @ Error::IterationCap { .. }) => (None, Some(e.to_string())),
            Err(e) => return Err(e),
        };
        attempts.push(AttemptReport { attempt: r, seed, phase1: p1, phase2: p2, failure });
        if best.as_ref().is_some_and(|b| b.targets_met) {
            break;
        }
    }

    let Some(best) = best else {
        return Err(Error::RetriesExhausted {
            attempts: attempts.len(),
            reason: "every attempt reached the phase II iteration cap".into(),
        });
    };
    let mut verdict = verify_solution(g, &best.h, &best.chi, template.template(), family);
    let chi_a = PartialColoring::from_vec(
        (0..g.n()).map(|v| if sides.side(v) == Side::A { best.chi.get(v) } else { None }).collect(),
    );
    verdict.p_checks = Some(phase1_checks(&best.h_s, &chi_a, &sides, template.template(), d));
    if !verdict.is_fully_true() || !best.h.is_spanning_subgraph_of(&h0) {
        return Err(Error::Invariant(format!("verifier rejected the output of attempt {}: {verdict:?}", best.attempt)));
    }

    let report = SolutionReport {
        input_digest: digest(g),
        n: g.n(),
        d,
        family: family.name.clone(),
        family_closed: family.closed,
        template: TemplateSummary::of(&template),
        seed: params.seed,
        alpha: params.alpha,
        alpha_hat: ctx.alpha_hat(),
        max_retries: params.max_retries,
        retries: attempts.len() - 1,
        attempts,
        chosen_attempt: best.attempt,
        tau: best.tau,
        min_degree: best.min_degree,
        target_degree: ctx.target_degree(),
        degree_targets_met: best.targets_met,
        verdict,
    };
    Ok(Solution { h: best.h, coloring: best.chi, sides, template, report })
}

pub(crate) fn digest(g: &Graph) -> String {
    hex::encode(Sha256::digest(g.to_edge_list().as_bytes()))
}
