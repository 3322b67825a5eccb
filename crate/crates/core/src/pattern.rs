//! Non-induced subgraph containment for small patterns.
//!
//! The generic path is a backtracking search over injective maps with
//! degree and adjacency pruning. Cycles and complete bipartite patterns take
//! shortcuts through girth and common-neighborhood counting.

use crate::cycles::{girth, shortest_cycle};
use crate::graph::{Graph, Vertex};

/// Shape of a pattern, as far as the fast paths care.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternShape {
    /// `K_{a,b}` with `a ≤ b`, both sides non-empty.
    CompleteBipartite(usize, usize),
    Cycle(usize),
    Other,
}

pub fn classify(f: &Graph) -> PatternShape {
    let n = f.n();
    if n >= 2 && f.is_connected() {
        if let Some(sides) = f.two_coloring() {
            let a = sides.iter().filter(|&&s| !s).count();
            let b = n - a;
            if a > 0 && b > 0 && f.edge_count() == a * b {
                return PatternShape::CompleteBipartite(a.min(b), a.max(b));
            }
        }
        if n >= 3 && f.regular_degree() == Some(2) {
            return PatternShape::Cycle(n);
        }
    }
    PatternShape::Other
}

/// True iff `g` has a subgraph isomorphic to `f`.
pub fn contains_pattern(g: &Graph, f: &Graph) -> bool {
    find_copy(g, f).is_some()
}

/// An injective edge-preserving map `V(f) → V(g)`, if one exists.
pub fn find_copy(g: &Graph, f: &Graph) -> Option<Vec<Vertex>> {
    if f.n() > g.n() || f.edge_count() > g.edge_count() {
        return None;
    }
    match classify(f) {
        PatternShape::CompleteBipartite(a, b) => find_complete_bipartite(g, f, a, b),
        PatternShape::Cycle(k) => match girth(g) {
            None => None,
            Some(gg) if gg > k => None,
            Some(gg) if gg == k => {
                let c = shortest_cycle(g)?;
                Some(map_cycle(f, &c))
            }
            _ => Backtrack::new(g, f).run(),
        },
        PatternShape::Other => Backtrack::new(g, f).run(),
    }
}

/// Maps the pattern cycle `f` onto the concrete cycle `c` of equal length.
fn map_cycle(f: &Graph, c: &[Vertex]) -> Vec<Vertex> {
    let k = f.n();
    let mut image = vec![0; k];
    let (mut prev, mut cur) = (usize::MAX, 0);
    for &target in c.iter().take(k) {
        image[cur] = target;
        let next = *f.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
        prev = cur;
        cur = next;
    }
    image
}

/// `K_{a,b}` (`a ≤ b`) via a set of `a` vertices with `b` common neighbors.
fn find_complete_bipartite(g: &Graph, f: &Graph, a: usize, b: usize) -> Option<Vec<Vertex>> {
    let (small, common) = if a == 2 {
        two_with_common(g, b)?
    } else {
        let mut chosen = Vec::with_capacity(a);
        let all: Vec<Vertex> = (0..g.n()).collect();
        extend_common(g, a, b, &mut chosen, &all)?
    };
    // lay the found sets onto the pattern's two sides
    let sides = f.two_coloring().expect("complete bipartite pattern");
    let false_count = sides.iter().filter(|&&s| !s).count();
    let small_side = false_count != a;
    let (mut si, mut bi) = (0, 0);
    let image = (0..f.n())
        .map(|v| {
            if sides[v] == small_side {
                si += 1;
                small[si - 1]
            } else {
                bi += 1;
                common[bi - 1]
            }
        })
        .collect();
    Some(image)
}

fn two_with_common(g: &Graph, b: usize) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let mut count = vec![0usize; g.n()];
    let mut touched = Vec::new();
    for u in 0..g.n() {
        if g.degree(u) < b {
            continue;
        }
        for &x in g.neighbors(u) {
            for &w in g.neighbors(x) {
                if w > u {
                    if count[w] == 0 {
                        touched.push(w);
                    }
                    count[w] += 1;
                    if count[w] >= b {
                        let common = intersect(g.neighbors(u), g.neighbors(w));
                        return Some((vec![u, w], common[..b].to_vec()));
                    }
                }
            }
        }
        for w in touched.drain(..) {
            count[w] = 0;
        }
    }
    None
}

fn extend_common(
    g: &Graph,
    a: usize,
    b: usize,
    chosen: &mut Vec<Vertex>,
    common: &[Vertex],
) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    if chosen.len() == a {
        return Some((chosen.clone(), common[..b].to_vec()));
    }
    let last = chosen.last().copied();
    let candidates: Vec<Vertex> = if chosen.is_empty() {
        (0..g.n()).collect()
    } else {
        let mut c: Vec<Vertex> = common
            .iter()
            .flat_map(|&x| g.neighbors(x).iter().copied())
            .filter(|&v| Some(v) > last)
            .collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    for v in candidates {
        if g.degree(v) < b {
            continue;
        }
        let next = intersect(common, g.neighbors(v));
        if next.len() >= b {
            chosen.push(v);
            if let Some(found) = extend_common(g, a, b, chosen, &next) {
                return Some(found);
            }
            chosen.pop();
        }
    }
    None
}

fn intersect(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Pattern vertices ordered by BFS from a maximum-degree vertex, component
/// by component. Returns the order and, per position, an earlier-placed
/// neighbor to draw candidates from.
pub(crate) fn search_order(f: &Graph) -> (Vec<Vertex>, Vec<Option<Vertex>>) {
    let n = f.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut anchor = Vec::with_capacity(n);
    while order.len() < n {
        let root = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (f.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed[root] = true;
        let start = order.len();
        order.push(root);
        anchor.push(None);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in f.neighbors(u) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                    anchor.push(Some(u));
                }
            }
        }
    }
    (order, anchor)
}

struct Backtrack<'a> {
    g: &'a Graph,
    f: &'a Graph,
    order: Vec<Vertex>,
    anchor: Vec<Option<Vertex>>,
    image: Vec<Vertex>,
    used: Vec<bool>,
}

impl<'a> Backtrack<'a> {
    fn new(g: &'a Graph, f: &'a Graph) -> Self {
        let (order, anchor) = search_order(f);
        Backtrack {
            g,
            f,
            order,
            anchor,
            image: vec![usize::MAX; f.n()],
            used: vec![false; g.n()],
        }
    }

    fn run(mut self) -> Option<Vec<Vertex>> {
        self.place(0).then_some(self.image)
    }

    fn place(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let x = self.order[pos];
        let g = self.g;
        let candidates: &[Vertex] = match self.anchor[pos] {
            Some(p) => g.neighbors(self.image[p]),
            None => &[],
        };
        let all = self.anchor[pos].is_none();
        let count = if all { g.n() } else { candidates.len() };
        for k in 0..count {
            let c = candidates.get(k).copied().unwrap_or(k);
            if self.used[c] || g.degree(c) < self.f.degree(x) {
                continue;
            }
            let consistent = self.f.neighbors(x).iter().all(|&y| {
                let iy = self.image[y];
                iy == usize::MAX || g.has_edge(c, iy)
            });
            if !consistent {
                continue;
            }
            self.image[x] = c;
            self.used[c] = true;
            if self.place(pos + 1) {
                return true;
            }
            self.used[c] = false;
            self.image[x] = usize::MAX;
        }
        false
    }
}
