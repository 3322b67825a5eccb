//! Brute-force oracles written straight from the definitions. They share
//! nothing with the library beyond the `Graph` container.
#![allow(dead_code)]

use std::collections::VecDeque;

use freesub_core::Graph;
use rand::Rng;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

/// Neighbors `u` of `v` having some `w ≠ v` in `N(u)` with `χ(w) = χ(v)`.
pub fn brute_bad(g: &Graph, colors: &[Option<usize>], v: usize) -> usize {
    let adj = adjacency(g);
    let n = g.n();
    let Some(c) = colors[v] else { return 0 };
    (0..n)
        .filter(|&u| adj[v][u] && (0..n).any(|w| w != v && adj[u][w] && colors[w] == Some(c)))
        .count()
}

/// Every map `V(F) → V(T)`, kept when it preserves edges and is injective
/// on each neighborhood.
pub fn brute_homs(f: &Graph, t: &Graph) -> u64 {
    let (k, m) = (f.n(), t.n());
    if k == 0 {
        return 1;
    }
    if m == 0 {
        return 0;
    }
    let fa = adjacency(f);
    let ta = adjacency(t);
    let mut map = vec![0usize; k];
    let mut count = 0;
    loop {
        let edges_ok = (0..k).all(|x| (0..k).all(|y| !fa[x][y] || ta[map[x]][map[y]]));
        let locally_injective = (0..k).all(|x| {
            (0..k).all(|y| (0..k).all(|z| y == z || !fa[x][y] || !fa[x][z] || map[y] != map[z]))
        });
        if edges_ok && locally_injective {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return count;
            }
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

/// Some injective map `V(F) → V(G)` sends every edge of `F` to an edge.
pub fn brute_contains(g: &Graph, f: &Graph) -> bool {
    fn extend(i: usize, map: &mut Vec<usize>, used: &mut [bool], fa: &[Vec<bool>], ga: &[Vec<bool>]) -> bool {
        if i == fa.len() {
            return true;
        }
        for x in 0..ga.len() {
            if used[x] || (0..i).any(|j| fa[i][j] && !ga[x][map[j]]) {
                continue;
            }
            used[x] = true;
            map.push(x);
            if extend(i + 1, map, used, fa, ga) {
                return true;
            }
            map.pop();
            used[x] = false;
        }
        false
    }
    if f.n() > g.n() {
        return false;
    }
    extend(0, &mut Vec::new(), &mut vec![false; g.n()], &adjacency(f), &adjacency(g))
}

/// Shortest cycle through each edge `uv`: one plus the `u`-`v` distance
/// with `uv` removed.
pub fn brute_girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (s, t) in g.edges() {
        let mut dist = vec![usize::MAX; g.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if (x, y) == (s, t) || dist[y] != usize::MAX {
                    continue;
                }
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
        if dist[t] != usize::MAX {
            best = Some(best.map_or(dist[t] + 1, |b| b.min(dist[t] + 1)));
        }
    }
    best
}

/// No two vertices share two neighbors.
pub fn c4_free(g: &Graph) -> bool {
    let adj = adjacency(g);
    let n = g.n();
    (0..n).all(|u| (u + 1..n).all(|v| (0..n).filter(|&w| adj[u][w] && adj[v][w]).count() <= 1))
}

/// `N(v)` gets pairwise distinct colors, all present.
pub fn rainbow_at(h: &Graph, colors: &[Option<usize>], v: usize) -> bool {
    let mut seen: Vec<usize> = Vec::new();
    h.neighbors(v).iter().all(|&u| match colors[u] {
        Some(c) if !seen.contains(&c) => {
            seen.push(c);
            true
        }
        _ => false,
    })
}

pub fn rainbow_neighborhoods(h: &Graph, colors: &[Option<usize>]) -> bool {
    (0..h.n()).all(|v| rainbow_at(h, colors, v))
}

pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}
