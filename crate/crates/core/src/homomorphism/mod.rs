//! Locally injective homomorphisms and the conflict count driving both
//! coloring phases.

mod family;
mod witness;

pub use family::{DetectionHint, FamilySpec, Pattern};
pub use witness::{closedness_witness_search, small_graphs};

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::pattern::search_order;

/// Patterns larger than this are rejected by the hom* counter.
pub const MAX_PATTERN_VERTICES: usize = 10;

/// A color is a vertex id of the template graph.
pub type Color = usize;

/// Partial map `V(G) → V(𝒢)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    colors: Vec<Option<Color>>,
}

impl PartialColoring {
    pub fn uncolored(n: usize) -> Self {
        PartialColoring { colors: vec![None; n] }
    }

    pub fn from_vec(colors: Vec<Option<Color>>) -> Self {
        PartialColoring { colors }
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors[v]
    }

    #[inline]
    pub fn set(&mut self, v: Vertex, c: Color) {
        self.colors[v] = Some(c);
    }

    #[inline]
    pub fn unset(&mut self, v: Vertex) {
        self.colors[v] = None;
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn colored_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    pub fn max_color(&self) -> Option<Color> {
        self.colors.iter().flatten().copied().max()
    }

    /// One `v color` line per colored vertex, ascending `v`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.colors.iter().enumerate() {
            if let Some(c) = c {
                writeln!(out, "{v} {c}").unwrap();
            }
        }
        out
    }

    /// Parses `v color` lines for a graph on `n` vertices; absent vertices
    /// stay uncolored.
    pub fn from_text(n: usize, text: &str) -> Result<Self> {
        let mut colors = vec![None; n];
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: i + 1, msg };
            let mut it = line.split_whitespace();
            let (Some(v), Some(c), None) = (it.next(), it.next(), it.next()) else {
                return Err(parse_err("expected `v color`".into()));
            };
            let v: usize = v.parse().map_err(|e| parse_err(format!("{e}")))?;
            let c: usize = c.parse().map_err(|e| parse_err(format!("{e}")))?;
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            colors[v] = Some(c);
        }
        Ok(PartialColoring { colors })
    }
}

/// `Bad(v, χ, G)`: neighbors `u` of `v` whose neighborhood holds another
/// vertex with color `χ(v)`. Uncolored vertices never conflict.
pub fn bad_count(v: Vertex, chi: &PartialColoring, g: &Graph) -> Result<usize> {
    let c = chi.get(v).ok_or(Error::Uncolored(v))?;
    Ok(bad_count_as(v, c, chi, g))
}

/// `Bad` for `v` as if it had color `c`, whatever `chi` says about `v`.
pub fn bad_count_as(v: Vertex, c: Color, chi: &PartialColoring, g: &Graph) -> usize {
    g.neighbors(v)
        .iter()
        .filter(|&&u| g.neighbors(u).iter().any(|&w| w != v && chi.get(w) == Some(c)))
        .count()
}

/// Number of locally injective homomorphisms `F → T`. With `early_exit`
/// the search stops at the first one and returns 1.
pub fn count_locally_injective_homs(f: &Graph, t: &Graph, early_exit: bool) -> Result<u64> {
    if f.n() > MAX_PATTERN_VERTICES {
        return Err(Error::PatternTooLarge(f.n(), MAX_PATTERN_VERTICES));
    }
    // hom* factors over the components of F
    let mut total = 1u64;
    for comp in f.components() {
        let sub = f.induced(&comp);
        let count = HomSearch::new(&sub, t, early_exit).count();
        if count == 0 {
            return Ok(0);
        }
        total = total.saturating_mul(count);
    }
    Ok(if early_exit { total.min(1) } else { total })
}

/// `hom*(F, T) = 0` for every member of the family.
pub fn is_hom_free(family: &FamilySpec, t: &Graph) -> Result<bool> {
    for f in family.graphs() {
        if count_locally_injective_homs(f, t, true)? > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

struct HomSearch<'a> {
    f: &'a Graph,
    t: &'a Graph,
    order: Vec<Vertex>,
    anchor: Vec<Option<Vertex>>,
    image: Vec<usize>,
    early_exit: bool,
    found: u64,
}

impl<'a> HomSearch<'a> {
    fn new(f: &'a Graph, t: &'a Graph, early_exit: bool) -> Self {
        let (order, anchor) = search_order(f);
        HomSearch { f, t, order, anchor, image: vec![usize::MAX; f.n()], early_exit, found: 0 }
    }

    fn count(mut self) -> u64 {
        if self.f.n() == 0 {
            return 1;
        }
        self.extend(0);
        self.found
    }

    fn admissible(&self, x: Vertex, c: Vertex) -> bool {
        for &y in self.f.neighbors(x) {
            let iy = self.image[y];
            if iy != usize::MAX && !self.t.has_edge(c, iy) {
                return false;
            }
            // x and every other neighbor of y must land on distinct vertices
            for &z in self.f.neighbors(y) {
                if z != x && self.image[z] == c {
                    return false;
                }
            }
        }
        true
    }

    fn extend(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            self.found += 1;
            return self.early_exit;
        }
        let x = self.order[pos];
        let t = self.t;
        let pool: Vec<Vertex> = match self.anchor[pos] {
            Some(p) => t.neighbors(self.image[p]).to_vec(),
            None => (0..t.n()).collect(),
        };
        for c in pool {
            if t.degree(c) < self.f.degree(x) || !self.admissible(x, c) {
                continue;
            }
            self.image[x] = c;
            let stop = self.extend(pos + 1);
            self.image[x] = usize::MAX;
            if stop {
                return true;
            }
        }
        false
    }
}
