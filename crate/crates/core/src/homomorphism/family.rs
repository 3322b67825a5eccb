//! Families of forbidden patterns and their textual names.

use serde::{Deserialize, Serialize};

use crate::cycles::girth;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::{classify, PatternShape};

/// How the family's patterns are best detected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetectionHint {
    CycleList(Vec<usize>),
    CompleteBipartite(usize, usize),
    Hypercube3,
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub graph: Graph,
}

/// A family `F` of forbidden patterns.
///
/// `closed` is a claim: for every graph `T`, `hom*(F, T) = 0` for all `F`
/// iff `T` is `F`-free. It is set only by rules known to imply it; it can be
/// falsified (never proved) by [`closedness_witness_search`].
///
/// [`closedness_witness_search`]: super::closedness_witness_search
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub patterns: Vec<Pattern>,
    pub closed: bool,
    pub hint: DetectionHint,
}

impl FamilySpec {
    /// Parses names like `C4`, `K2,3`, `Q3`, `C3-C5` (all cycles in the
    /// range) and `+`-joined lists such as `C3+C6`.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        let mut patterns = Vec::new();
        for token in name.split('+').map(str::trim) {
            patterns.extend(parse_token(token).ok_or_else(|| Error::UnknownFamily(name.into()))?);
        }
        if patterns.is_empty() {
            return Err(Error::UnknownFamily(name.into()));
        }
        Ok(Self::from_patterns(name, patterns))
    }

    /// Builds a family from explicit patterns; duplicates (by name) are
    /// dropped and the closedness claim and hint are derived.
    pub fn from_patterns(name: &str, mut patterns: Vec<Pattern>) -> Self {
        let mut seen = std::collections::BTreeSet::new();
        patterns.retain(|p| seen.insert(p.name.clone()));
        let closed = closed_by_rule(&patterns);
        let hint = hint_for(&patterns);
        FamilySpec { name: name.to_string(), patterns, closed, hint }
    }

    pub fn graphs(&self) -> impl Iterator<Item = &Graph> {
        self.patterns.iter().map(|p| &p.graph)
    }

    /// `χ(F)`, the minimum chromatic number over the family, equals 2.
    pub fn has_bipartite_member(&self) -> bool {
        self.graphs().any(|g| g.edge_count() > 0 && g.is_bipartite())
    }

    pub fn has_forest(&self) -> bool {
        self.graphs().any(Graph::is_forest)
    }

    /// Checks the family assumptions the coloring pipeline relies on.
    pub fn validate_for_pipeline(&self) -> Result<()> {
        if self.has_forest() {
            return Err(Error::UnsupportedFamily(format!("{} contains a forest", self.name)));
        }
        if !self.has_bipartite_member() {
            return Err(Error::UnsupportedFamily(format!(
                "{} has no bipartite member (chromatic number of the family must be 2)",
                self.name
            )));
        }
        Ok(())
    }

    /// Largest girth over the members; `None` if some member is a forest.
    pub fn max_girth(&self) -> Option<usize> {
        self.graphs().map(girth).try_fold(0, |acc, g| g.map(|g| acc.max(g)))
    }

    /// Every member contains a 4-cycle.
    pub fn every_member_contains_c4(&self) -> bool {
        let c4 = Graph::cycle(4);
        self.graphs().all(|g| crate::pattern::contains_pattern(g, &c4))
    }
}

fn parse_token(token: &str) -> Option<Vec<Pattern>> {
    if token == "Q3" {
        return Some(vec![Pattern { name: "Q3".into(), graph: Graph::hypercube(3) }]);
    }
    if let Some(rest) = token.strip_prefix('K') {
        let (a, b) = rest.split_once(',')?;
        let (a, b): (usize, usize) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        if a == 0 || b == 0 || a + b > 16 {
            return None;
        }
        let (a, b) = (a.min(b), a.max(b));
        return Some(vec![Pattern { name: format!("K{a},{b}"), graph: Graph::complete_bipartite(a, b) }]);
    }
    let rest = token.strip_prefix('C')?;
    let (lo, hi) = match rest.split_once('-') {
        Some((lo, hi)) => (lo.parse().ok()?, hi.strip_prefix('C').unwrap_or(hi).parse().ok()?),
        None => {
            let k: usize = rest.parse().ok()?;
            (k, k)
        }
    };
    if lo < 3 || hi < lo || hi > 16 {
        return None;
    }
    Some((lo..=hi).map(|k| Pattern { name: format!("C{k}"), graph: Graph::cycle(k) }).collect())
}

/// Closedness rules:
/// * a pattern whose locally injective images are always injective
///   (complete bipartite graphs, the 3-cube, the triangle) closes itself;
/// * the image of `C_k` under a locally injective map is a non-backtracking
///   closed walk of length `k`, which contains a cycle of length at most `k`
///   (an odd one when `k` is odd). So `C_k` is covered when the family holds
///   every `C_j` with `j ≤ k` (every odd `j ≤ k` when `k` is odd).
fn closed_by_rule(patterns: &[Pattern]) -> bool {
    let cycle_lengths: Vec<usize> = patterns
        .iter()
        .filter_map(|p| match classify(&p.graph) {
            PatternShape::Cycle(k) => Some(k),
            PatternShape::CompleteBipartite(2, 2) => Some(4),
            _ => None,
        })
        .collect();
    let has_cycle = |j: usize| cycle_lengths.contains(&j);
    patterns.iter().all(|p| {
        let q3 = p.graph == Graph::hypercube(3);
        match classify(&p.graph) {
            PatternShape::CompleteBipartite(..) => true,
            PatternShape::Cycle(3) => true,
            PatternShape::Cycle(k) if k % 2 == 1 => (3..=k).step_by(2).all(has_cycle),
            PatternShape::Cycle(k) => (3..=k).all(has_cycle),
            PatternShape::Other => q3,
        }
    })
}

fn hint_for(patterns: &[Pattern]) -> DetectionHint {
    if patterns.len() == 1 {
        let g = &patterns[0].graph;
        if *g == Graph::hypercube(3) {
            return DetectionHint::Hypercube3;
        }
        if let PatternShape::CompleteBipartite(a, b) = classify(g) {
            if (a, b) != (2, 2) {
                return DetectionHint::CompleteBipartite(a, b);
            }
        }
    }
    let lengths: Option<Vec<usize>> = patterns
        .iter()
        .map(|p| match classify(&p.graph) {
            PatternShape::Cycle(k) => Some(k),
            PatternShape::CompleteBipartite(2, 2) => Some(4),
            _ => None,
        })
        .collect();
    match lengths {
        Some(mut l) => {
            l.sort_unstable();
            DetectionHint::CycleList(l)
        }
        None => DetectionHint::Generic,
    }
}
