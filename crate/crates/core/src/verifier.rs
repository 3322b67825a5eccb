//! Checks of every claimed output property, written against the
//! definitions rather than the engine's bookkeeping.

use std::collections::HashSet;

use serde::Serialize;

use crate::bipartite::Bipartition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homomorphism::{FamilySpec, PartialColoring};
use crate::pattern::contains_pattern;
use crate::templates::TemplateGraph;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    /// `H` has the vertex set of `G`.
    pub spanning: bool,
    /// `E(H) ⊆ E(G)`.
    pub subgraph: bool,
    /// Every colored neighborhood in `H` is rainbow.
    pub rainbow: bool,
    /// Every edge of `H` is colored by an edge of `𝒢`.
    pub edge_consistent: bool,
    /// `H` contains no member of the family.
    pub f_free: bool,
    pub min_degree: usize,
    /// `δ(𝒢)/(4α̂)` with `d = Δ(G)`.
    pub target_degree: f64,
    pub p_checks: Option<PChecks>,
}

impl Verdict {
    /// All structural properties hold; degrees are reported, not required.
    pub fn is_fully_true(&self) -> bool {
        self.spanning && self.subgraph && self.rainbow && self.edge_consistent && self.f_free
    }
}

/// Phase I properties of an intermediate `(H', χ_A)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PChecks {
    pub p1: bool,
    pub p2: bool,
    pub p3: bool,
}

/// No vertex has two neighbors of the same color. Uncolored neighbors are
/// ignored.
pub fn verify_rainbow(h: &Graph, chi: &PartialColoring) -> bool {
    (0..h.n()).all(|v| {
        let mut seen = HashSet::new();
        h.neighbors(v).iter().filter_map(|&u| chi.get(u)).all(|c| seen.insert(c))
    })
}

/// Every edge `uv` has `χ(u)χ(v) ∈ E(𝒢)`; an uncolored endpoint is an error.
pub fn verify_edge_consistency(h: &Graph, chi: &PartialColoring, template: &TemplateGraph) -> Result<bool> {
    for (u, v) in h.edges() {
        let cu = chi.get(u).ok_or(Error::Uncolored(u))?;
        let cv = chi.get(v).ok_or(Error::Uncolored(v))?;
        if !template.graph().neighbors(cu).contains(&cv) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_solution(
    g: &Graph,
    h: &Graph,
    chi: &PartialColoring,
    template: &TemplateGraph,
    family: &FamilySpec,
) -> Verdict {
    let spanning = g.n() == h.n() && chi.n() == h.n();
    let subgraph = spanning && h.edges().all(|(u, v)| g.neighbors(u).contains(&v));
    let rainbow = spanning && verify_rainbow(h, chi);
    let edge_consistent = spanning && verify_edge_consistency(h, chi, template).unwrap_or(false);
    let f_free = family.graphs().all(|f| !contains_pattern(h, f));
    let min_degree = (0..h.n()).map(|v| h.neighbors(v).len()).min().unwrap_or(0);
    let d = (0..g.n()).map(|v| g.neighbors(v).len()).max().unwrap_or(0);
    let target_degree = if d == 0 {
        0.0
    } else {
        template.delta() as f64 * d as f64 / (4.0 * template.order() as f64)
    };
    Verdict { spanning, subgraph, rainbow, edge_consistent, f_free, min_degree, target_degree, p_checks: None }
}

/// P1 (`d_H(a) ≥ d/2`), P2 (rainbow at every `b`) and P3 (every color has
/// `δ(𝒢)/(2α̂)` adjacent colors around every `b`) for a Phase I output,
/// by direct enumeration over `(b, c)` pairs.
pub fn phase1_checks(
    h: &Graph,
    chi: &PartialColoring,
    sides: &Bipartition,
    template: &TemplateGraph,
    d: usize,
) -> PChecks {
    let p1 = sides.a().iter().all(|&a| 2 * h.degree(a) >= d);
    let p2 = sides.b().iter().all(|&b| {
        let mut seen = HashSet::new();
        h.neighbors(b).iter().all(|&a| chi.get(a).is_some_and(|c| seen.insert(c)))
    });
    let bound = template.delta() as f64 * d as f64 / (2.0 * template.order() as f64);
    let p3 = sides.b().iter().all(|&b| {
        (0..template.order()).all(|c| {
            let count = h
                .neighbors(b)
                .iter()
                .filter(|&&a| chi.get(a).is_some_and(|ca| template.adjacent(ca, c)))
                .count();
            count as f64 >= bound
        })
    });
    PChecks { p1, p2, p3 }
}
