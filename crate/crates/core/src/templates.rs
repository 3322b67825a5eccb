//! Pattern-free template graphs whose vertices serve as colors.
//!
//! Two algebraic constructions over prime fields (the orthogonality polarity
//! graph and the point–line incidence graph of the projective plane) and a
//! random deletion construction for larger girth.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cycles::{girth, next_short_cycle};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::homomorphism::{is_hom_free, DetectionHint, FamilySpec};
use crate::pattern::{contains_pattern, find_copy};

/// Templates up to this order get a direct `hom* = 0` check; larger ones
/// rely on a certificate.
pub const HOM_VERIFICATION_CAP: usize = 400;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    Polarity { q: u64 },
    Incidence { q: u64 },
    RandomGirth { girth: usize, m: usize, seed: u64 },
    Imported,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Polarity { q } => write!(f, "polarity q={q}"),
            Construction::Incidence { q } => write!(f, "incidence q={q}"),
            Construction::RandomGirth { girth, m, seed } => write!(f, "random-girth g={girth} m={m} seed={seed}"),
            Construction::Imported => write!(f, "imported"),
        }
    }
}

/// How `hom*(F, 𝒢) = 0` was established for a template.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomCertificate {
    /// Direct search found no locally injective homomorphism.
    Direct,
    /// The family is closed and the template is `F`-free.
    Closed,
    /// Every member contains a 4-cycle and the template is `C4`-free; a
    /// locally injective image of `C4` is injective.
    C4Free,
    /// The template's girth exceeds every member's girth; a locally
    /// injective image of a cycle is a non-backtracking closed walk.
    Girth,
}

/// An `F`-free almost-regular template `𝒢`.
#[derive(Clone, Debug)]
pub struct TemplateGraph {
    graph: Graph,
    delta: usize,
    max_degree: usize,
    construction: Construction,
}

impl TemplateGraph {
    pub fn new(graph: Graph, construction: Construction) -> Result<Self> {
        let delta = graph.min_degree();
        if graph.n() == 0 || delta == 0 {
            return Err(Error::Degenerate(format!("{construction} template has an isolated vertex")));
        }
        let max_degree = graph.max_degree();
        Ok(TemplateGraph { graph, delta, max_degree, construction })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }

    /// `δ(𝒢)`.
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// `Δ(𝒢)`.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// `β = Δ(𝒢)/δ(𝒢)`.
    pub fn beta(&self) -> f64 {
        self.max_degree as f64 / self.delta as f64
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    /// `α̂ = |V(𝒢)|/d`, the ratio actually realised for input degree `d`.
    pub fn alpha_hat(&self, d: usize) -> f64 {
        self.order() as f64 / d as f64
    }

    /// `p⁻ = δ(𝒢)/|V(𝒢)|`.
    pub fn p_minus(&self) -> f64 {
        self.delta as f64 / self.order() as f64
    }

    /// `p⁺ = Δ(𝒢)/|V(𝒢)|`.
    pub fn p_plus(&self) -> f64 {
        self.max_degree as f64 / self.order() as f64
    }

    #[inline]
    pub fn adjacent(&self, c1: usize, c2: usize) -> bool {
        self.graph.has_edge(c1, c2)
    }

    pub fn header(&self) -> String {
        format!(
            "# template construction={} order={} delta={} Delta={} beta={}",
            self.construction,
            self.order(),
            self.delta,
            self.max_degree,
            self.beta()
        )
    }

    /// Edge-list text preceded by the metadata comment line.
    pub fn to_text(&self) -> String {
        format!("{}\n{}", self.header(), self.graph.to_edge_list())
    }

    /// Reads a template written by [`TemplateGraph::to_text`] (or a bare edge
    /// list). Degrees are recomputed from the edges.
    pub fn from_text(text: &str) -> Result<Self> {
        let graph = Graph::from_edge_list(text)?;
        let construction = text
            .lines()
            .find_map(|l| l.trim().strip_prefix("# template construction="))
            .and_then(parse_construction)
            .unwrap_or(Construction::Imported);
        TemplateGraph::new(graph, construction)
    }
}

fn parse_construction(rest: &str) -> Option<Construction> {
    let mut words = rest.split_whitespace();
    let kind = words.next()?;
    let mut field = |key: &str| -> Option<u64> {
        let w = words.next()?;
        w.strip_prefix(key)?.strip_prefix('=')?.parse().ok()
    };
    match kind {
        "polarity" => Some(Construction::Polarity { q: field("q")? }),
        "incidence" => Some(Construction::Incidence { q: field("q")? }),
        "random-girth" => Some(Construction::RandomGirth {
            girth: field("g")? as usize,
            m: field("m")? as usize,
            seed: field("seed")?,
        }),
        _ => None,
    }
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Normalised representatives of the projective points over `GF(q)`: the
/// first nonzero coordinate is 1. Ordered `(0,0,1)`, `(0,1,*)`, `(1,*,*)`.
fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut pts = vec![[0, 0, 1]];
    pts.extend((0..q).map(|z| [0, 1, z]));
    pts.extend((0..q).flat_map(|y| (0..q).map(move |z| [1, y, z])));
    pts
}

fn orthogonal(x: &[u64; 3], y: &[u64; 3], q: u64) -> bool {
    (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]).is_multiple_of(q)
}

/// Orthogonality polarity graph of `PG(2, q)`: `q²+q+1` vertices, `x ~ y`
/// iff `x·y = 0` and `x ≠ y`. `C4`-free; the `q+1` absolute points have
/// degree `q`, the rest `q+1`.
pub fn polarity_graph(q: u64) -> Result<Graph> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let pts = projective_points(q);
    let adj = (0..pts.len())
        .map(|i| {
            (0..pts.len())
                .filter(|&j| j != i && orthogonal(&pts[i], &pts[j], q))
                .collect()
        })
        .collect();
    Ok(Graph::from_sorted_adjacency(adj))
}

/// Point–line incidence graph of `PG(2, q)`: points on ids `0..N`, lines on
/// `N..2N` with `N = q²+q+1`. `(q+1)`-regular, bipartite, girth 6.
pub fn incidence_graph(q: u64) -> Result<Graph> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let pts = projective_points(q);
    let n = pts.len();
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); 2 * n];
    for (i, p) in pts.iter().enumerate() {
        for (j, l) in pts.iter().enumerate() {
            if orthogonal(p, l, q) {
                adj[i].push(n + j);
                adj[n + j].push(i);
            }
        }
    }
    Ok(Graph::from_sorted_adjacency(adj))
}

/// Repeatedly finds a cycle shorter than `g` and deletes its edge with the
/// largest endpoint-degree sum (ties: lexicographically smallest edge).
/// The result has girth at least `g`.
pub fn prune_short_cycles(graph: &Graph, g: usize) -> Graph {
    let mut h = graph.clone();
    let mut cursor = 0;
    while let Some(cycle) = next_short_cycle(&h, g, &mut cursor) {
        let edges = (0..cycle.len()).map(|i| (cycle[i], cycle[(i + 1) % cycle.len()]));
        let (u, v) = heaviest_edge(&h, edges);
        h.remove_edge(u, v);
    }
    h
}

fn heaviest_edge(h: &Graph, edges: impl Iterator<Item = (Vertex, Vertex)>) -> (Vertex, Vertex) {
    edges
        .map(|(u, v)| (u.min(v), u.max(v)))
        .max_by(|&(a, b), &(c, d)| {
            let wa = h.degree(a) + h.degree(b);
            let wc = h.degree(c) + h.degree(d);
            wa.cmp(&wc).then_with(|| (c, d).cmp(&(a, b)))
        })
        .expect("non-empty copy")
}

/// Edge probability for the deletion construction: the smallest of
/// `m^{-(v-2)/(e-1)}` over the members (`m^{-1+1/(2r)}` for `C_{2r+1}`,
/// `m^{-(a+b-2)/(ab-1)}` for `K_{a,b}`).
pub fn deletion_probability(m: usize, family: &FamilySpec) -> f64 {
    family
        .graphs()
        .filter(|f| f.edge_count() > 1)
        .map(|f| {
            let expo = (f.n() as f64 - 2.0) / (f.edge_count() as f64 - 1.0);
            (m as f64).powf(-expo)
        })
        .fold(1.0, f64::min)
}

/// Samples `G(m, p)` and deletes edges of forbidden copies until none is
/// left. Vertices may end up isolated.
pub fn random_pattern_free(m: usize, family: &FamilySpec, seed: u64) -> Result<Graph> {
    let p = deletion_probability(m, family);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..m {
        for v in u + 1..m {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let mut g = Graph::from_edges(m, edges)?;

    let consecutive_cycles = match &family.hint {
        DetectionHint::CycleList(l) => l.iter().copied().eq(3..3 + l.len()),
        _ => false,
    };
    if consecutive_cycles {
        let longest = family.graphs().map(Graph::n).max().unwrap_or(2);
        g = prune_short_cycles(&g, longest + 1);
    } else {
        for f in family.graphs() {
            while let Some(image) = find_copy(&g, f) {
                let edges = f.edges().map(|(a, b)| (image[a], image[b]));
                let (u, v) = heaviest_edge(&g, edges);
                g.remove_edge(u, v);
            }
        }
    }
    if g.edge_count() == 0 {
        return Err(Error::Degenerate(format!(
            "no edges left for {} at m={m}; retry with larger m or another seed",
            family.name
        )));
    }
    Ok(g)
}

/// `F`-freeness of `g`, computing the girth once for cycle families.
pub fn is_family_free(g: &Graph, family: &FamilySpec) -> bool {
    if let DetectionHint::CycleList(lengths) = &family.hint {
        let gg = girth(g).unwrap_or(usize::MAX);
        if lengths.iter().all(|&k| k < gg) {
            return true;
        }
    }
    !family.graphs().any(|f| contains_pattern(g, f))
}

/// Smallest prime `q` with `size(q) ≥ target`.
fn smallest_prime_with(target: usize, size: impl Fn(u64) -> usize) -> u64 {
    (2..).filter(|&q| is_prime(q)).find(|&q| size(q) >= target).unwrap()
}

/// Builds and audits a template of order at least `⌈αd⌉` for the family.
///
/// Dispatch: the polarity graph when every member contains `C4`; the
/// incidence graph (girth 6) when every member has girth at most 5; the
/// random deletion construction for larger girths.
pub fn build_template(family: &FamilySpec, d: usize, alpha: f64, seed: u64) -> Result<CertifiedTemplate> {
    if d < 4 {
        return Err(Error::InvalidParams(format!("template degree d={d} must be at least 4")));
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidParams(format!("alpha={alpha} must be positive")));
    }
    let target = (alpha * d as f64).ceil() as usize;
    let max_girth = family.max_girth();

    let template = if family.every_member_contains_c4() {
        let q = smallest_prime_with(target, |q| (q * q + q + 1) as usize);
        TemplateGraph::new(polarity_graph(q)?, Construction::Polarity { q })?
    } else if matches!(max_girth, Some(g) if g <= 5) {
        let q = smallest_prime_with(target, |q| 2 * (q * q + q + 1) as usize);
        TemplateGraph::new(incidence_graph(q)?, Construction::Incidence { q })?
    } else if let Some(g) = max_girth {
        random_girth_template(g + 1, target, seed)?
    } else {
        return Err(Error::NoConstruction(format!("{} (contains a forest)", family.name)));
    };

    CertifiedTemplate::new(template, family)
}

/// Random girth-`g` template on at least `target` non-isolated vertices.
fn random_girth_template(g: usize, target: usize, seed: u64) -> Result<TemplateGraph> {
    let cycles = FamilySpec::parse(&format!("C3-C{}", g - 1))?;
    let mut m = target;
    for attempt in 0..32u64 {
        let s = seed.wrapping_add(attempt);
        let raw = match random_pattern_free(m, &cycles, s) {
            Ok(raw) => raw,
            Err(Error::Degenerate(_)) => {
                m += m / 4 + 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        // isolated colors are useless; keep the vertices that carry edges
        let keep: Vec<Vertex> = (0..raw.n()).filter(|&v| raw.degree(v) > 0).collect();
        if keep.len() >= target {
            let graph = raw.induced(&keep);
            return TemplateGraph::new(graph, Construction::RandomGirth { girth: g, m, seed: s });
        }
        m = (m * target).div_ceil(keep.len().max(1)).max(m + 1);
    }
    Err(Error::Degenerate(format!("random girth-{g} template of order {target} not reached")))
}

/// A template together with the evidence that it is `F`-free and
/// `hom*(F, 𝒢) = 0` for a named family. Only constructible through
/// [`certify`].
#[derive(Clone, Debug)]
pub struct CertifiedTemplate {
    template: TemplateGraph,
    family: String,
    certificate: HomCertificate,
}

impl CertifiedTemplate {
    pub fn new(template: TemplateGraph, family: &FamilySpec) -> Result<Self> {
        let certificate = certify(&template, family)?;
        Ok(CertifiedTemplate { template, family: family.name.clone(), certificate })
    }

    pub fn template(&self) -> &TemplateGraph {
        &self.template
    }

    pub fn into_template(self) -> TemplateGraph {
        self.template
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn certificate(&self) -> HomCertificate {
        self.certificate
    }
}

impl std::ops::Deref for CertifiedTemplate {
    type Target = TemplateGraph;

    fn deref(&self) -> &TemplateGraph {
        &self.template
    }
}

/// Checks `F`-freeness and establishes `hom*(F, 𝒢) = 0`.
pub fn certify(template: &TemplateGraph, family: &FamilySpec) -> Result<HomCertificate> {
    let g = template.graph();
    if !is_family_free(g, family) {
        return Err(Error::TemplateVerification(format!(
            "{} template contains a member of {}",
            template.construction(),
            family.name
        )));
    }
    if template.order() <= HOM_VERIFICATION_CAP {
        return if is_hom_free(family, g)? {
            Ok(HomCertificate::Direct)
        } else {
            Err(Error::TemplateVerification(format!(
                "{} template admits a locally injective homomorphism from {}",
                template.construction(),
                family.name
            )))
        };
    }
    if family.closed {
        return Ok(HomCertificate::Closed);
    }
    let c4_free = !contains_pattern(g, &Graph::cycle(4));
    if c4_free && family.every_member_contains_c4() {
        return Ok(HomCertificate::C4Free);
    }
    match (girth(g), family.max_girth()) {
        (None, _) => Ok(HomCertificate::Girth),
        (Some(tg), Some(fg)) if tg > fg => Ok(HomCertificate::Girth),
        _ => Err(Error::TemplateVerification(format!(
            "cannot certify hom*-freeness of a {}-vertex template for the non-closed family {}",
            template.order(),
            family.name
        ))),
    }
}
