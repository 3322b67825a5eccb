use rand::Rng;
use serde::Serialize;

use super::phase1::rainbow_at;
use super::tally::ColorTally;
use super::{Params, PhaseContext};
use crate::error::{ensure_invariant, Error, Result};
use crate::graph::{Graph, Vertex};
use crate::homomorphism::{bad_count_as, Color, PartialColoring};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationRecord {
    pub iteration: usize,
    /// `|B_i|`.
    pub uncolored: usize,
    /// `max_a |B_i(a)|`.
    pub max_uncolored_of_a: usize,
    /// Sum over `a` of `GoodNeighs_i(a)`.
    pub good_neighs_total: usize,
    pub deleted: usize,
    /// `|B_i(a)| ≤ d/α̂^{i/2}` for every `a`.
    pub c1: bool,
    /// `GoodNeighs_i(a) ≤ max{2p⁺|B_{i−1}(a)|, threshold}` for every `a`.
    pub c2: bool,
    /// First iteration only: every `a` keeps `δ(𝒢)/(4α̂)` colored neighbors.
    pub c3: Option<bool>,
}

/// State between random rounds of Phase II.
#[derive(Clone, Debug)]
pub struct Phase2State {
    pub h: Graph,
    pub chi: PartialColoring,
    /// `B_i`, ascending.
    pub uncolored: Vec<Vertex>,
    /// `|B_i(a)|` indexed by vertex; zero on `B`.
    pub uncolored_of_a: Vec<usize>,
    pub iteration: usize,
    pub trace: Vec<IterationRecord>,
    h0_degree: Vec<usize>,
}

impl Phase2State {
    /// Starts from the Phase I output: `A` colored, all of `B` uncolored.
    pub fn new(h: Graph, chi: PartialColoring, ctx: PhaseContext<'_>) -> Result<Self> {
        ctx.check(&h)?;
        for &a in ctx.sides.a() {
            chi.get(a).ok_or(Error::Uncolored(a))?;
        }
        let uncolored: Vec<Vertex> = ctx.sides.b().iter().copied().filter(|&b| chi.get(b).is_none()).collect();
        let mut state = Phase2State {
            h0_degree: h.degrees(),
            uncolored_of_a: vec![0; h.n()],
            h,
            chi,
            uncolored,
            iteration: 0,
            trace: Vec::new(),
        };
        state.recount();
        Ok(state)
    }

    pub fn max_uncolored_of_a(&self) -> usize {
        self.uncolored_of_a.iter().copied().max().unwrap_or(0)
    }

    fn recount(&mut self) {
        self.uncolored_of_a.fill(0);
        for &b in &self.uncolored {
            for &a in self.h.neighbors(b) {
                self.uncolored_of_a[a] += 1;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Phase2Report {
    pub threshold: usize,
    pub iteration_cap: usize,
    /// Random rounds run before the deterministic tail.
    pub tau: usize,
    pub trace: Vec<IterationRecord>,
    pub tail_vertices: usize,
    pub tail_deletions: usize,
    pub min_degree: usize,
    /// `δ(𝒢)/(4α̂)`.
    pub target_degree: f64,
    /// `d_H(v) ≥ δ(𝒢)/(4α̂)` for every `v`.
    pub q1: bool,
}

/// One random round with uniform colors from `rng`, drawn in ascending
/// order of `B_{i−1}`.
pub fn phase2_iteration<R: Rng + ?Sized>(
    state: &mut Phase2State,
    ctx: PhaseContext<'_>,
    threshold: usize,
    rng: &mut R,
) -> Result<()> {
    let k = ctx.template.order();
    phase2_iteration_with(state, ctx, threshold, |_| rng.gen_range(0..k))
}

/// One random round with tentative colors supplied by `draw`.
pub fn phase2_iteration_with(
    state: &mut Phase2State,
    ctx: PhaseContext<'_>,
    threshold: usize,
    mut draw: impl FnMut(Vertex) -> Color,
) -> Result<()> {
    if state.uncolored.is_empty() {
        return Ok(());
    }
    let template = ctx.template;
    let k = template.order();
    let i = state.iteration + 1;
    let prev = std::mem::take(&mut state.uncolored);
    let prev_of_a = state.uncolored_of_a.clone();
    let (h, chi) = (&mut state.h, &mut state.chi);

    for &b in &prev {
        ensure_invariant!(chi.get(b).is_none(), "vertex {b} of B_(i-1) is colored");
        let c = draw(b);
        ensure_invariant!(c < k, "drawn color {c} outside the template");
        chi.set(b, c);
    }

    // Bad counts witnesses among all tentative colors of this round; the
    // neighbors of b are all in A, so only the witnesses range over B
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for &b in &prev {
        let c = chi.get(b).unwrap();
        let bad = bad_count_as(b, c, chi, h);
        let good = h.neighbors(b).iter().filter(|&&a| template.adjacent(chi.get(a).unwrap(), c)).count();
        if 2 * bad >= good {
            dropped.push(b);
        } else {
            kept.push((b, good));
        }
    }
    for &b in &dropped {
        chi.unset(b);
    }

    let mut good_neighs = vec![0usize; h.n()];
    let mut doomed = Vec::new();
    for &(b, good) in &kept {
        let c = chi.get(b).unwrap();
        let mut good_lost = 0;
        for &a in h.neighbors(b) {
            let consistent = template.adjacent(chi.get(a).unwrap(), c);
            if consistent {
                good_neighs[a] += 1;
            }
            let conflict = h.neighbors(a).iter().any(|&w| w != b && chi.get(w) == Some(c));
            if conflict || !consistent {
                doomed.push((a, b));
                good_lost += usize::from(consistent);
            }
        }
        ensure_invariant!(2 * good_lost <= good, "vertex {b} lost {good_lost} of {good} good edges");
    }
    for &(a, b) in &doomed {
        h.remove_edge(a, b);
    }

    state.uncolored = dropped;
    state.recount();
    state.iteration = i;

    let h = &state.h;
    for &b in &state.uncolored {
        ensure_invariant!(h.degree(b) == state.h0_degree[b], "uncolored vertex {b} lost edges");
    }
    let alpha_hat = ctx.alpha_hat();
    let c1_bound = ctx.d as f64 / alpha_hat.powf(i as f64 / 2.0);
    let mut c1 = true;
    let mut c2 = true;
    let mut c3 = true;
    for &a in ctx.sides.a() {
        ensure_invariant!(state.uncolored_of_a[a] <= prev_of_a[a], "B_i({a}) grew");
        c1 &= state.uncolored_of_a[a] as f64 <= c1_bound;
        let c2_bound = (2.0 * template.p_plus() * prev_of_a[a] as f64).max(threshold as f64);
        c2 &= good_neighs[a] as f64 <= c2_bound;
        let colored_neighbors = h.degree(a) - state.uncolored_of_a[a];
        c3 &= colored_neighbors as f64 >= ctx.target_degree();
    }
    state.trace.push(IterationRecord {
        iteration: i,
        uncolored: state.uncolored.len(),
        max_uncolored_of_a: state.max_uncolored_of_a(),
        good_neighs_total: good_neighs.iter().sum(),
        deleted: doomed.len(),
        c1,
        c2,
        c3: (i == 1).then_some(c3),
    });
    Ok(())
}

/// Phase II: random rounds until every `a` has at most `threshold`
/// uncolored neighbors, then the deterministic tail in id order.
pub fn phase2<R: Rng + ?Sized>(
    h_s: Graph,
    chi_s: PartialColoring,
    ctx: PhaseContext<'_>,
    params: &Params,
    rng: &mut R,
) -> Result<(Graph, PartialColoring, Phase2Report)> {
    let template = ctx.template;
    for &b in ctx.sides.b() {
        ensure_invariant!(rainbow_at(b, &h_s, &chi_s), "phase II input is not rainbow at {b}");
    }
    let threshold = params.threshold(template);
    let cap = params.iteration_cap(ctx.d);
    let mut state = Phase2State::new(h_s, chi_s, ctx)?;
    while state.max_uncolored_of_a() > threshold {
        if state.iteration >= cap {
            return Err(Error::IterationCap { cap });
        }
        phase2_iteration(&mut state, ctx, threshold, rng)?;
    }
    let tau = state.iteration;

    let Phase2State { mut h, mut chi, uncolored, trace, .. } = state;
    let mut tally = ColorTally::new(template.order());
    let mut tail_deletions = 0;
    for &b in &uncolored {
        let (c, _) = tally.choose(b, &h, &chi, template);
        chi.set(b, c);
        let doomed: Vec<Vertex> = h
            .neighbors(b)
            .iter()
            .copied()
            .filter(|&a| {
                !template.adjacent(chi.get(a).unwrap(), c)
                    || h.neighbors(a).iter().any(|&w| w != b && chi.get(w) == Some(c))
            })
            .collect();
        tail_deletions += doomed.len();
        for a in doomed {
            h.remove_edge(a, b);
        }
    }

    for v in 0..h.n() {
        ensure_invariant!(chi.get(v).is_some(), "vertex {v} left uncolored");
        ensure_invariant!(rainbow_at(v, &h, &chi), "neighborhood of {v} is not rainbow");
    }
    for (u, v) in h.edges() {
        ensure_invariant!(
            template.adjacent(chi.get(u).unwrap(), chi.get(v).unwrap()),
            "edge {u}-{v} maps to a non-edge of the template"
        );
        debug_assert_ne!(ctx.sides.side(u), ctx.sides.side(v));
    }
    let min_degree = h.min_degree();
    let target_degree = ctx.target_degree();
    let report = Phase2Report {
        threshold,
        iteration_cap: cap,
        tau,
        trace,
        tail_vertices: uncolored.len(),
        tail_deletions,
        min_degree,
        target_degree,
        q1: min_degree as f64 >= target_degree,
    };
    Ok((h, chi, report))
}
