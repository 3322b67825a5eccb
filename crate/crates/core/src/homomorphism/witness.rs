//! Exhaustive search for graphs that falsify a family's closedness claim.

use std::collections::BTreeMap;

use super::{is_hom_free, FamilySpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::contains_pattern;

/// Largest vertex count the witness search accepts.
pub const MAX_WITNESS_ORDER: usize = 8;

/// First graph `T` on at most `max_n` vertices that is `F`-free yet admits a
/// locally injective homomorphism from some member. Graphs are scanned by
/// order, then edge count, then canonical code.
pub fn closedness_witness_search(family: &FamilySpec, max_n: usize) -> Result<Option<Graph>> {
    if max_n > MAX_WITNESS_ORDER {
        return Err(Error::InvalidParams(format!(
            "witness search is exhaustive and capped at {MAX_WITNESS_ORDER} vertices"
        )));
    }
    let mut level = vec![Graph::empty(0)];
    for k in 1..=max_n {
        level = extend_level(&level, k);
        for t in &level {
            if t.edge_count() == 0 {
                continue;
            }
            if family.graphs().any(|f| contains_pattern(t, f)) {
                continue;
            }
            if !is_hom_free(family, t)? {
                return Ok(Some(t.clone()));
            }
        }
    }
    Ok(None)
}

/// All graphs on `k ≤ 8` vertices up to isomorphism, in canonical labelling,
/// sorted by edge count then canonical code.
pub fn small_graphs(k: usize) -> Vec<Graph> {
    assert!(k <= MAX_WITNESS_ORDER);
    let mut level = vec![Graph::empty(0)];
    for j in 1..=k {
        level = extend_level(&level, j);
    }
    level
}

fn extend_level(prev: &[Graph], k: usize) -> Vec<Graph> {
    let mut found: BTreeMap<(usize, u64), Graph> = BTreeMap::new();
    for g in prev {
        for mask in 0u32..(1 << (k - 1)) {
            let mut adj = Adj::from_graph(g, k);
            for u in 0..k - 1 {
                if mask >> u & 1 == 1 {
                    adj.set(u, k - 1);
                }
            }
            let (code, canon) = adj.canonical();
            found.entry((canon.edges(), code)).or_insert_with(|| canon.to_graph());
        }
    }
    found.into_values().collect()
}

/// Dense adjacency for at most 8 vertices: one bitmask row per vertex.
#[derive(Clone, Copy)]
struct Adj {
    k: usize,
    rows: [u8; MAX_WITNESS_ORDER],
}

impl Adj {
    fn from_graph(g: &Graph, k: usize) -> Self {
        let mut a = Adj { k, rows: [0; MAX_WITNESS_ORDER] };
        for (u, v) in g.edges() {
            a.set(u, v);
        }
        a
    }

    fn set(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    fn edges(&self) -> usize {
        self.rows[..self.k].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    fn to_graph(self) -> Graph {
        let edges = (0..self.k)
            .flat_map(|u| (u + 1..self.k).map(move |v| (u, v)))
            .filter(|&(u, v)| self.has(u, v));
        Graph::from_edges(self.k, edges).expect("valid small graph")
    }

    /// Upper-triangle bit code after relabelling vertex `perm[i]` to `i`.
    fn code(&self, perm: &[usize]) -> u64 {
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..self.k {
            for j in i + 1..self.k {
                if self.has(perm[i], perm[j]) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    /// Color refinement from degrees; returns an isomorphism-invariant
    /// ordered partition of the vertices.
    fn refined_cells(&self) -> Vec<Vec<usize>> {
        let k = self.k;
        let mut color: Vec<usize> = (0..k).map(|v| self.rows[v].count_ones() as usize).collect();
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..k)
                .map(|v| {
                    let mut nb: Vec<usize> = (0..k).filter(|&w| self.has(v, w)).map(|w| color[w]).collect();
                    nb.sort_unstable();
                    (color[v], nb)
                })
                .collect();
            let mut distinct = sigs.clone();
            distinct.sort();
            distinct.dedup();
            let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
            let classes_before = {
                let mut c = color.clone();
                c.sort_unstable();
                c.dedup();
                c.len()
            };
            color = next;
            if distinct.len() == classes_before {
                break;
            }
        }
        let classes = color.iter().copied().max().map_or(0, |m| m + 1);
        let mut cells = vec![Vec::new(); classes];
        for v in 0..k {
            cells[color[v]].push(v);
        }
        cells.retain(|c| !c.is_empty());
        cells
    }

    /// Minimum code over all labellings consistent with the refined cells,
    /// together with the relabelled adjacency.
    fn canonical(&self) -> (u64, Adj) {
        let cells = self.refined_cells();
        let mut perm = Vec::with_capacity(self.k);
        let mut best: Option<(u64, Vec<usize>)> = None;
        let mut cell_perms: Vec<Vec<usize>> = cells.clone();
        self.search(&mut cell_perms, 0, &mut perm, &mut best);
        let (code, perm) = best.expect("at least one labelling");
        let mut canon = Adj { k: self.k, rows: [0; MAX_WITNESS_ORDER] };
        for i in 0..self.k {
            for j in i + 1..self.k {
                if self.has(perm[i], perm[j]) {
                    canon.set(i, j);
                }
            }
        }
        (code, canon)
    }

    fn search(&self, cells: &mut [Vec<usize>], idx: usize, perm: &mut Vec<usize>, best: &mut Option<(u64, Vec<usize>)>) {
        if idx == cells.len() {
            let code = self.code(perm);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, perm.clone()));
            }
            return;
        }
        let mut cell = cells[idx].clone();
        permutations(&mut cell, 0, &mut |p| {
            let len = perm.len();
            perm.extend_from_slice(p);
            self.search(cells, idx + 1, perm, best);
            perm.truncate(len);
        });
    }
}

fn permutations(items: &mut [usize], start: usize, visit: &mut dyn FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, visit);
        items.swap(start, i);
    }
}
