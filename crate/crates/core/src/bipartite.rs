//! Spanning bipartite subgraphs keeping at least half of every degree.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// A partition of `0..n` into the stable sets `A` and `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    side_of: Vec<Side>,
    a: Vec<Vertex>,
    b: Vec<Vertex>,
}

impl Bipartition {
    pub fn from_sides(side_of: Vec<Side>) -> Self {
        let a = (0..side_of.len()).filter(|&v| side_of[v] == Side::A).collect();
        let b = (0..side_of.len()).filter(|&v| side_of[v] == Side::B).collect();
        Bipartition { side_of, a, b }
    }

    pub fn side(&self, v: Vertex) -> Side {
        self.side_of[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side_of
    }

    pub fn a(&self) -> &[Vertex] {
        &self.a
    }

    pub fn b(&self) -> &[Vertex] {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.side_of.len()
    }

    /// Every edge of `g` joins `A` to `B`.
    pub fn separates(&self, g: &Graph) -> bool {
        g.n() == self.n() && g.edges().all(|(u, v)| self.side_of[u] != self.side_of[v])
    }
}

/// Local-search max-cut: starting from the parity split, repeatedly moves the
/// lowest-id vertex whose cross-degree is below half its degree. Each move
/// strictly increases the cut, so the search terminates. Returns the
/// partition and the spanning subgraph of cut edges; every vertex keeps at
/// least `⌈d(v)/2⌉` of its edges.
pub fn bipartize(g: &Graph) -> (Bipartition, Graph) {
    let n = g.n();
    let mut side: Vec<Side> = (0..n).map(|v| if v % 2 == 0 { Side::A } else { Side::B }).collect();
    let mut cross: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().filter(|&&w| side[w] != side[v]).count())
        .collect();

    while let Some(v) = (0..n).find(|&v| 2 * cross[v] < g.degree(v)) {
        for &w in g.neighbors(v) {
            if side[w] == side[v] {
                cross[w] += 1;
            } else {
                cross[w] -= 1;
            }
        }
        cross[v] = g.degree(v) - cross[v];
        side[v] = side[v].flip();
    }

    let h = g.filter_edges(|u, v| side[u] != side[v]);
    (Bipartition::from_sides(side), h)
}
