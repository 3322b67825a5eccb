//! Girth and short-cycle extraction by breadth-first search.

use crate::graph::{Graph, Vertex};

const UNSEEN: usize = usize::MAX;

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best = None;
    let mut scratch = Bfs::new(g.n());
    for root in 0..g.n() {
        let bound = best.unwrap_or(usize::MAX);
        if let Some((len, _, _)) = scratch.shortest_through(g, root, bound) {
            best = Some(len);
            if len == 3 {
                break;
            }
        }
    }
    best
}

/// A shortest cycle as a vertex sequence (consecutive vertices adjacent,
/// last adjacent to first), `None` for forests.
pub fn shortest_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let mut best: Option<(usize, Vertex)> = None;
    let mut scratch = Bfs::new(g.n());
    for root in 0..g.n() {
        let bound = best.map_or(usize::MAX, |(l, _)| l);
        if let Some((len, _, _)) = scratch.shortest_through(g, root, bound) {
            best = Some((len, root));
            if len == 3 {
                break;
            }
        }
    }
    let (_, root) = best?;
    scratch.cycle_from(g, root, usize::MAX)
}

/// Some cycle of length `< bound`, searching roots in id order starting at
/// `*cursor`. The cursor advances past roots that have no such cycle, so a
/// caller that only deletes edges between calls can resume from it.
pub(crate) fn next_short_cycle(g: &Graph, bound: usize, cursor: &mut Vertex) -> Option<Vec<Vertex>> {
    let mut scratch = Bfs::new(g.n());
    while *cursor < g.n() {
        if let Some(c) = scratch.cycle_from(g, *cursor, bound) {
            return Some(c);
        }
        *cursor += 1;
    }
    None
}

struct Bfs {
    dist: Vec<usize>,
    parent: Vec<usize>,
    queue: Vec<Vertex>,
}

impl Bfs {
    fn new(n: usize) -> Self {
        Bfs { dist: vec![UNSEEN; n], parent: vec![UNSEEN; n], queue: Vec::with_capacity(n) }
    }

    /// Shortest closed walk through a non-tree edge of the BFS tree at
    /// `root`, if its length is below `bound`. Returns (length, u, w) where
    /// `uw` is the closing edge.
    fn shortest_through(&mut self, g: &Graph, root: Vertex, bound: usize) -> Option<(usize, Vertex, Vertex)> {
        for &v in &self.queue {
            self.dist[v] = UNSEEN;
            self.parent[v] = UNSEEN;
        }
        self.queue.clear();
        self.dist[root] = 0;
        self.queue.push(root);
        let mut best: Option<(usize, Vertex, Vertex)> = None;
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            let du = self.dist[u];
            let limit = best.map_or(bound, |(l, _, _)| l);
            if 2 * du >= limit {
                break;
            }
            for &w in g.neighbors(u) {
                if self.dist[w] == UNSEEN {
                    self.dist[w] = du + 1;
                    self.parent[w] = u;
                    self.queue.push(w);
                } else if w != self.parent[u] {
                    let len = du + self.dist[w] + 1;
                    if len < best.map_or(bound, |(l, _, _)| l) {
                        best = Some((len, u, w));
                    }
                }
            }
        }
        best
    }

    fn cycle_from(&mut self, g: &Graph, root: Vertex, bound: usize) -> Option<Vec<Vertex>> {
        let (_, u, w) = self.shortest_through(g, root, bound)?;
        let up = |mut x: Vertex| {
            let mut path = vec![x];
            while self.parent[x] != UNSEEN {
                x = self.parent[x];
                path.push(x);
            }
            path
        };
        let pu = up(u);
        let pw = up(w);
        let lca = *pu.iter().find(|x| pw.contains(x)).expect("paths share the root");
        let mut cycle: Vec<Vertex> = pu.iter().copied().take_while(|&x| x != lca).collect();
        cycle.push(lca);
        let tail: Vec<Vertex> = pw.iter().copied().take_while(|&x| x != lca).collect();
        cycle.extend(tail.into_iter().rev());
        debug_assert!(cycle.len() >= 3);
        Some(cycle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_cycle_in(g: &Graph, c: &[Vertex]) -> bool {
        let mut sorted = c.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == c.len()
            && c.len() >= 3
            && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
    }

    #[test]
    fn small_girths() {
        assert_eq!(girth(&Graph::complete(4)), Some(3));
        assert_eq!(girth(&Graph::cycle(6)), Some(6));
        assert_eq!(girth(&Graph::path(7)), None);
        assert_eq!(girth(&Graph::empty(3)), None);
        assert_eq!(girth(&Graph::hypercube(3)), Some(4));
        assert_eq!(girth(&Graph::complete_bipartite(3, 3)), Some(4));
    }

    #[test]
    fn shortest_cycle_is_a_real_cycle() {
        let g = Graph::cycle(5).disjoint_union(&Graph::cycle(3));
        let c = shortest_cycle(&g).unwrap();
        assert_eq!(c.len(), 3);
        assert!(is_cycle_in(&g, &c));
        let c7 = shortest_cycle(&Graph::cycle(7)).unwrap();
        assert_eq!(c7.len(), 7);
        assert!(is_cycle_in(&Graph::cycle(7), &c7));
    }

    #[test]
    fn next_short_cycle_respects_bound() {
        let g = Graph::cycle(5).disjoint_union(&Graph::cycle(3));
        let mut cursor = 0;
        let c = next_short_cycle(&g, 6, &mut cursor).unwrap();
        assert_eq!(c.len(), 5);
        let mut cursor = 0;
        assert!(next_short_cycle(&Graph::cycle(6), 6, &mut cursor).is_none());
    }
}
