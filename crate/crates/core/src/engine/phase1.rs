use rand::Rng;
use serde::Serialize;

use super::tally::ColorTally;
use super::PhaseContext;
use crate::error::{ensure_invariant, Result};
use crate::graph::{Graph, Vertex};
use crate::homomorphism::{bad_count, Color, PartialColoring};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Phase1Report {
    /// `d/√α̂`: a vertex of `A` with at least this many conflicts is uncolored.
    pub uncolor_threshold: f64,
    /// `|A₀|`, vertices keeping their random color.
    pub retained: usize,
    /// Vertices colored by the deterministic tail.
    pub tail_vertices: usize,
    pub random_step_deletions: usize,
    pub tail_deletions: usize,
    /// Largest `Bad` accepted in the tail.
    pub max_tail_bad: usize,
    /// `d_H(a) ≥ d/2` for every `a`.
    pub p1: bool,
    pub min_a_degree: usize,
    pub p3: P3Outcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct P3Outcome {
    pub passed: bool,
    /// Minimum over `b ∈ B` and colors `c` of the number of neighbors `a`
    /// of `b` with `χ(a)c ∈ E(𝒢)`.
    pub min_count: usize,
    /// `δ(𝒢)/(2α̂)`.
    pub bound: f64,
}

/// Phase I with uniform colors drawn from `rng` in ascending order of `A`.
pub fn phase1<R: Rng + ?Sized>(
    h0: &Graph,
    ctx: PhaseContext<'_>,
    rng: &mut R,
) -> Result<(Graph, PartialColoring, Phase1Report)> {
    let k = ctx.template.order();
    phase1_with(h0, ctx, |_| rng.gen_range(0..k))
}

/// Phase I with the random colors supplied by `draw`, called once per
/// vertex of `A` in ascending order.
pub fn phase1_with(
    h0: &Graph,
    ctx: PhaseContext<'_>,
    mut draw: impl FnMut(Vertex) -> Color,
) -> Result<(Graph, PartialColoring, Phase1Report)> {
    ctx.check(h0)?;
    let template = ctx.template;
    let k = template.order();
    let d = ctx.d as f64;
    let n = h0.n();

    let mut chi = PartialColoring::uncolored(n);
    for &a in ctx.sides.a() {
        let c = draw(a);
        ensure_invariant!(c < k, "drawn color {c} outside the template");
        chi.set(a, c);
    }

    let uncolor_threshold = d / ctx.alpha_hat().sqrt();
    let mut bad0 = vec![0usize; n];
    for &a in ctx.sides.a() {
        bad0[a] = bad_count(a, &chi, h0)?;
    }
    for &a in ctx.sides.a() {
        if bad0[a] as f64 >= uncolor_threshold {
            chi.unset(a);
        }
    }
    let retained = ctx.sides.a().iter().filter(|&&a| chi.get(a).is_some()).count();

    // every edge ab where b sees the same retained color twice
    let mut doomed = Vec::new();
    for &b in ctx.sides.b() {
        let mut seen: Vec<(Color, Vertex)> = h0
            .neighbors(b)
            .iter()
            .filter_map(|&a| chi.get(a).map(|c| (c, a)))
            .collect();
        seen.sort_unstable();
        for run in seen.chunk_by(|x, y| x.0 == y.0) {
            if run.len() > 1 {
                doomed.extend(run.iter().map(|&(_, a)| (a, b)));
            }
        }
    }
    let mut h = h0.clone();
    let mut lost = vec![0usize; n];
    for &(a, b) in &doomed {
        h.remove_edge(a, b);
        lost[a] += 1;
    }
    for &a in ctx.sides.a() {
        if chi.get(a).is_some() {
            let bad = bad_count(a, &chi, h0)?;
            ensure_invariant!(lost[a] == bad, "vertex {a} lost {} edges, Bad is {bad}", lost[a]);
            ensure_invariant!(bad <= bad0[a] && (bad as f64) < uncolor_threshold, "vertex {a} kept with Bad {bad}");
        }
    }

    let mut tally = ColorTally::new(k);
    let mut tail_vertices = 0;
    let mut tail_deletions = 0;
    let mut max_tail_bad = 0;
    for &a in ctx.sides.a() {
        if chi.get(a).is_some() {
            continue;
        }
        let (c, bad) = tally.choose(a, &h, &chi, template);
        // pigeonhole: the Bad values over all colors sum to at most d²
        ensure_invariant!(bad * k <= ctx.d * ctx.d, "tail vertex {a} has Bad {bad} above d/α̂");
        chi.set(a, c);
        let conflicted: Vec<Vertex> = h
            .neighbors(a)
            .iter()
            .copied()
            .filter(|&b| h.neighbors(b).iter().any(|&w| w != a && chi.get(w) == Some(c)))
            .collect();
        ensure_invariant!(conflicted.len() == bad, "tail vertex {a} deletes {} edges, Bad {bad}", conflicted.len());
        for b in conflicted {
            h.remove_edge(a, b);
        }
        tail_vertices += 1;
        tail_deletions += bad;
        max_tail_bad = max_tail_bad.max(bad);
    }

    for &b in ctx.sides.b() {
        ensure_invariant!(rainbow_at(b, &h, &chi), "neighborhood of {b} is not rainbow after phase I");
    }
    let min_a_degree = ctx.sides.a().iter().map(|&a| h.degree(a)).min().unwrap_or(0);
    let p1 = min_a_degree as f64 >= d / 2.0;
    let p3 = check_p3(&h, &chi, ctx);

    let report = Phase1Report {
        uncolor_threshold,
        retained,
        tail_vertices,
        random_step_deletions: doomed.len(),
        tail_deletions,
        max_tail_bad,
        p1,
        min_a_degree,
        p3,
    };
    Ok((h, chi, report))
}

pub(crate) fn rainbow_at(v: Vertex, h: &Graph, chi: &PartialColoring) -> bool {
    let mut colors: Vec<Color> = h.neighbors(v).iter().filter_map(|&u| chi.get(u)).collect();
    colors.sort_unstable();
    colors.windows(2).all(|w| w[0] != w[1])
}

/// For every `b ∈ B` and color `c`, at least `δ(𝒢)/(2α̂)` neighbors `a` of
/// `b` have `χ(a)c ∈ E(𝒢)`.
pub fn check_p3(h: &Graph, chi: &PartialColoring, ctx: PhaseContext<'_>) -> P3Outcome {
    let template = ctx.template;
    let bound = template.delta() as f64 / (2.0 * ctx.alpha_hat());
    let mut counts = vec![0usize; template.order()];
    let mut min_count = usize::MAX;
    for &b in ctx.sides.b() {
        counts.fill(0);
        for &a in h.neighbors(b) {
            if let Some(ca) = chi.get(a) {
                for &c in template.graph().neighbors(ca) {
                    counts[c] += 1;
                }
            }
        }
        min_count = min_count.min(counts.iter().copied().min().unwrap_or(0));
    }
    if ctx.sides.b().is_empty() {
        min_count = 0;
    }
    let passed = ctx.sides.b().is_empty() || min_count as f64 >= bound;
    P3Outcome { passed, min_count, bound }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::{Bipartition, Side};
    use crate::templates::{Construction, TemplateGraph};

    fn k(n: usize) -> TemplateGraph {
        TemplateGraph::new(Graph::complete(n), Construction::Imported).unwrap()
    }

    #[test]
    fn single_a_vertex_keeps_everything() {
        let g = Graph::complete_bipartite(1, 3);
        let sides = Bipartition::from_sides(vec![Side::A, Side::B, Side::B, Side::B]);
        let t = k(5);
        let ctx = PhaseContext { template: &t, sides: &sides, d: 3 };
        let (h, chi, rep) = phase1_with(&g, ctx, |_| 2).unwrap();
        assert_eq!(h, g);
        assert_eq!(chi.get(0), Some(2));
        assert_eq!(rep.random_step_deletions + rep.tail_deletions, 0);
        assert_eq!(rep.retained, 1);
    }

    #[test]
    fn equal_colors_at_a_shared_neighbor() {
        // a1 = 0, a2 = 1, b = 2; a large d keeps both retained
        let g = Graph::from_edges(3, [(0, 2), (1, 2)]).unwrap();
        let sides = Bipartition::from_sides(vec![Side::A, Side::A, Side::B]);
        let t = k(4);
        let ctx = PhaseContext { template: &t, sides: &sides, d: 8 };
        let (h, _, rep) = phase1_with(&g, ctx, |_| 3).unwrap();
        assert_eq!(rep.retained, 2);
        assert_eq!(h.edge_count(), 0);
        assert_eq!(rep.random_step_deletions, 2);
    }

    #[test]
    fn distinct_colors_delete_nothing() {
        let g = Graph::complete_bipartite(3, 3);
        let sides = Bipartition::from_sides([Side::A; 3].into_iter().chain([Side::B; 3]).collect());
        let t = k(6);
        let ctx = PhaseContext { template: &t, sides: &sides, d: 3 };
        let (h, chi, rep) = phase1_with(&g, ctx, |a| a).unwrap();
        assert_eq!(h, g);
        assert!(rep.p1);
        // K6: every b sees 3 colors, each color has ≥ 2 adjacent ones; bound 5/(2·2)
        assert!(rep.p3.passed);
        assert!((0..3).all(|a| chi.get(a) == Some(a)));
    }

    #[test]
    fn isolated_b_fails_p3() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let sides = Bipartition::from_sides(vec![Side::A, Side::B, Side::B]);
        let t = k(3);
        let ctx = PhaseContext { template: &t, sides: &sides, d: 1 };
        let chi = PartialColoring::from_vec(vec![Some(0), None, None]);
        let out = check_p3(&g, &chi, ctx);
        assert!(!out.passed);
        assert_eq!(out.min_count, 0);
    }

    #[test]
    fn tail_picks_conflict_free_color() {
        // star of B-vertex 3 with A = {0, 1, 2}; with α̂ = 100/3 a single
        // conflict uncolors, so equal random colors send all of A to the tail
        let g = Graph::complete_bipartite(3, 1);
        let sides = Bipartition::from_sides(vec![Side::A, Side::A, Side::A, Side::B]);
        let t = k(100);
        let ctx = PhaseContext { template: &t, sides: &sides, d: 3 };
        let (h, chi, rep) = phase1_with(&g, ctx, |_| 1).unwrap();
        assert_eq!(rep.retained, 0);
        assert_eq!(rep.tail_vertices, 3);
        assert_eq!(h, g);
        assert_eq!((chi.get(0), chi.get(1), chi.get(2)), (Some(0), Some(1), Some(2)));
    }
}
