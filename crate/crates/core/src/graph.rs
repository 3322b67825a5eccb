//! Simple undirected graphs over dense vertex ids `0..n`.
//!
//! Adjacency lists are kept sorted and deduplicated, so neighborhood
//! intersection and edge lookup are linear and logarithmic respectively.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A vertex id.
pub type Vertex = usize;

/// Simple undirected graph. Adjacency is symmetric, loop-free and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Duplicates (in either orientation)
    /// collapse; loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    /// Trusted constructor for adjacency lists that already satisfy the invariants.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<Vertex>>) -> Self {
        debug_assert!(adj.iter().enumerate().all(|(u, l)| {
            l.windows(2).all(|w| w[0] < w[1]) && l.iter().all(|&v| v != u)
        }));
        Graph { adj }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        Graph { adj }
    }

    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k))).expect("valid cycle")
    }

    pub fn path(k: usize) -> Self {
        Graph::from_edges(k, (1..k).map(|i| (i - 1, i))).expect("valid path")
    }

    /// `K_{a,b}` with the `a` side on ids `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::from_edges(a + b, edges).expect("valid complete bipartite graph")
    }

    /// The `dim`-dimensional hypercube on bit strings.
    pub fn hypercube(dim: usize) -> Self {
        let n = 1usize << dim;
        let edges = (0..n).flat_map(|u| {
            (0..dim)
                .map(move |bit| (u, u ^ (1 << bit)))
                .filter(|&(u, v)| u < v)
        });
        Graph::from_edges(n, edges).expect("valid hypercube")
    }

    /// Vertex-disjoint union, relabelling `other` after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|l| l.iter().map(|&v| v + shift).collect::<Vec<_>>()),
        );
        Graph { adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// `δ(G)`; zero for the empty vertex set.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// `Δ(G)`; zero for the empty vertex set.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map(Vec::len)?;
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Removes `uv` if present. Returns whether an edge was removed.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(i) => {
                self.adj[u].remove(i);
                let j = self.adj[v].binary_search(&u).expect("symmetric adjacency");
                self.adj[v].remove(j);
                true
            }
            Err(_) => false,
        }
    }

    /// Adds `uv`. Returns whether the edge was new.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                Ok(true)
            }
        }
    }

    /// Spanning subgraph keeping only the edges accepted by `keep`.
    pub fn filter_edges<F>(&self, mut keep: F) -> Graph
    where
        F: FnMut(Vertex, Vertex) -> bool,
    {
        let mut adj = vec![Vec::new(); self.n()];
        for (u, v) in self.edges() {
            if keep(u, v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        Graph { adj }
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut l: Vec<_> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        Graph { adj }
    }

    /// True when the edge set of `self` is contained in that of `other`
    /// and both have the same vertex count.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n() == other.n()
            && self
                .adj
                .iter()
                .zip(&other.adj)
                .all(|(small, big)| is_sorted_subset(small, big))
    }

    /// Connected components, each listed in ascending order; components are
    /// ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Proper 2-coloring if one exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        for s in 0..self.n() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            stack.push(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// True for graphs without cycles.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n()
    }

    /// Serializes to the edge-list text format: a `n m` line, then one
    /// `u v` line per edge with `u < v`, sorted lexicographically.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n(), self.edge_count()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Parses the edge-list text format. Lines starting with `#` and blank
    /// lines are ignored wherever they appear.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 0, msg: "missing `n m` header".into() })?;
        let (n, m) = parse_pair(header, line_no)?;
        let mut edges = Vec::with_capacity(m);
        for (line_no, l) in lines {
            edges.push(parse_pair(l, line_no)?);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        let g = Graph::from_edges(n, edges)?;
        if g.edge_count() != m {
            return Err(Error::Parse { line: 1, msg: "duplicate edges in edge list".into() });
        }
        Ok(g)
    }
}

fn parse_pair(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse { line: line_no, msg: "expected two integers".into() })?
            .parse()
            .map_err(|e| Error::Parse { line: line_no, msg: format!("{e}") })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse { line: line_no, msg: "trailing tokens".into() });
    }
    Ok((a, b))
}

/// `small ⊆ big` for sorted, deduplicated slices.
pub(crate) fn is_sorted_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_from_edges() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.degrees(), vec![2, 2, 2]);
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn loops_and_range_rejected() {
        assert!(matches!(Graph::from_edges(2, [(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn edge_list_format_is_sorted() {
        let g = Graph::from_edges(4, [(3, 2), (1, 0), (2, 0)]).unwrap();
        assert_eq!(g.to_edge_list(), "4 3\n0 1\n0 2\n2 3\n");
        let back = Graph::from_edge_list("# comment\n4 3\n0 1\n0 2\n2 3\n").unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edge_list_rejects_count_mismatch() {
        assert!(Graph::from_edge_list("3 2\n0 1\n").is_err());
        assert!(Graph::from_edge_list("3 2\n0 1\n1 0\n").is_err());
        assert!(Graph::from_edge_list("3 1\n0 x\n").is_err());
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::hypercube(3).edge_count(), 12);
        assert_eq!(Graph::hypercube(3).regular_degree(), Some(3));
        assert_eq!(Graph::complete_bipartite(2, 3).edge_count(), 6);
        assert!(Graph::cycle(6).is_bipartite());
        assert!(!Graph::cycle(5).is_bipartite());
        assert!(Graph::path(5).is_forest());
        assert!(!Graph::cycle(4).is_forest());
    }

    #[test]
    fn remove_and_add() {
        let mut g = Graph::complete(4);
        assert!(g.remove_edge(2, 1));
        assert!(!g.remove_edge(1, 2));
        assert!(!g.has_edge(1, 2));
        assert_eq!(g.edge_count(), 5);
        assert!(g.add_edge(1, 2).unwrap());
        assert_eq!(g, Graph::complete(4));
    }

    #[test]
    fn subgraph_containment() {
        let k4 = Graph::complete(4);
        let c4 = Graph::cycle(4);
        assert!(c4.is_spanning_subgraph_of(&k4));
        assert!(!k4.is_spanning_subgraph_of(&c4));
        assert!(!Graph::cycle(3).is_spanning_subgraph_of(&k4));
    }
}
