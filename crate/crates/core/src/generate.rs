//! Seeded random regular graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Uniformly-paired random `d`-regular simple graph on `n` vertices.
///
/// Points of the configuration model are paired one edge at a time; a pair
/// that would create a loop or a multi-edge is rejected and redrawn. When no
/// admissible pair remains the pairing restarts. Output depends only on
/// `(n, d, seed)`.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if n <= d {
        return Err(Error::InvalidRegularParams { n, d, reason: "need n > d" });
    }
    if (n * d) % 2 == 1 {
        return Err(Error::InvalidRegularParams { n, d, reason: "n·d must be even" });
    }
    if d == 0 {
        return Ok(Graph::empty(n));
    }
    if n == d + 1 {
        return Ok(Graph::complete(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(g) = try_pairing(n, d, &mut rng) {
            return Ok(g);
        }
    }
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut g = Graph::empty(n);
    while !points.is_empty() {
        let mut rejected = 0usize;
        loop {
            let len = points.len();
            let i = rng.gen_range(0..len);
            let j = rng.gen_range(0..len);
            let (u, v) = (points[i], points[j]);
            if i != j && u != v && !g.has_edge(u, v) {
                g.add_edge(u, v).expect("endpoints in range");
                let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                points.swap_remove(hi);
                points.swap_remove(lo);
                break;
            }
            rejected += 1;
            if rejected > 64 * len + 64 {
                if !admissible_pair_exists(&points, &g) {
                    return None;
                }
                rejected = 0;
            }
        }
    }
    Some(g)
}

fn admissible_pair_exists(points: &[usize], g: &Graph) -> bool {
    let mut distinct: Vec<usize> = points.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    distinct
        .iter()
        .enumerate()
        .any(|(k, &u)| distinct[k + 1..].iter().any(|&v| !g.has_edge(u, v)))
}
