use crate::graph::{Graph, Vertex};
use crate::homomorphism::{Color, PartialColoring};
use crate::templates::TemplateGraph;

/// Scratch space for the deterministic tails: per-color conflict and
/// good-neighbor counts around one vertex.
pub(crate) struct ColorTally {
    bad: Vec<usize>,
    good: Vec<usize>,
    mark: Vec<u64>,
    token: u64,
}

impl ColorTally {
    pub(crate) fn new(k: usize) -> Self {
        ColorTally { bad: vec![0; k], good: vec![0; k], mark: vec![0; k], token: 0 }
    }

    /// Color for `v` minimizing `Bad`, then maximizing the neighbors `u`
    /// with `χ(u)c ∈ E(𝒢)` and no conflict at `u`, then the smallest id.
    /// Returns the color and its `Bad` value.
    pub(crate) fn choose(&mut self, v: Vertex, h: &Graph, chi: &PartialColoring, template: &TemplateGraph) -> (Color, usize) {
        self.bad.fill(0);
        self.good.fill(0);
        let t = template.graph();
        for &u in h.neighbors(v) {
            self.token += 1;
            for &w in h.neighbors(u) {
                if w == v {
                    continue;
                }
                if let Some(c) = chi.get(w) {
                    if self.mark[c] != self.token {
                        self.mark[c] = self.token;
                        self.bad[c] += 1;
                    }
                }
            }
            if let Some(cu) = chi.get(u) {
                for &c in t.neighbors(cu) {
                    if self.mark[c] != self.token {
                        self.good[c] += 1;
                    }
                }
            }
        }
        let best = (0..self.bad.len())
            .min_by_key(|&c| (self.bad[c], std::cmp::Reverse(self.good[c]), c))
            .expect("template has at least one vertex");
        (best, self.bad[best])
    }
}
