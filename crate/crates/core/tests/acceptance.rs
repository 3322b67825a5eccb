//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

mod common;

use std::process::ExitCode;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use common::{brute_bad, brute_contains, brute_girth, brute_homs, c4_free, gnp, rainbow_neighborhoods};
use freesub_core::bipartite::bipartize;
use freesub_core::engine::{solve, Params};
use freesub_core::experiment::{adjusted_n, run_experiment, to_csv_string, ExperimentConfig, Seeds};
use freesub_core::generate::random_regular;
use freesub_core::homomorphism::{
    bad_count, closedness_witness_search, count_locally_injective_homs, small_graphs, FamilySpec, PartialColoring,
};
use freesub_core::pattern::contains_pattern;
use freesub_core::templates::{
    build_template, incidence_graph, polarity_graph, prune_short_cycles, random_pattern_free, Construction,
    TemplateGraph,
};
use freesub_core::verifier::{verify_edge_consistency, verify_rainbow};
use freesub_core::{Error, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ALPHA: f64 = 64.0;
const MAX_RETRIES: usize = 20;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// One end-to-end run: `n = 10d` (parity adjusted), defaults otherwise.
struct Run {
    family: String,
    d: usize,
    seed: u64,
    result: Result<RunOk, String>,
}

struct RunOk {
    structural: Vec<String>,
    min_degree: usize,
    mean_degree: f64,
    isolated: usize,
    tau: usize,
    cap: usize,
    retries: usize,
    cap_trips: usize,
    p3_passes: usize,
    attempts: usize,
}

fn run(family: &FamilySpec, template: &Arc<freesub_core::templates::CertifiedTemplate>, d: usize, seed: u64) -> Run {
    let n = adjusted_n(10, d);
    let g = random_regular(n, d, seed).expect("valid regular parameters");
    let params = Params { alpha: ALPHA, max_retries: MAX_RETRIES, seed, ..Params::default() };
    let result = match solve(&g, family, template.clone(), &params) {
        Ok(sol) => {
            let h = &sol.h;
            let colors = sol.coloring.as_slice();
            let mut structural = Vec::new();
            if !verify_rainbow(h, &sol.coloring) || !rainbow_neighborhoods(h, colors) {
                structural.push("rainbow".to_string());
            }
            let consistent = h.edges().all(|(u, v)| match (colors[u], colors[v]) {
                (Some(a), Some(b)) => template.adjacent(a, b),
                _ => false,
            });
            if !matches!(verify_edge_consistency(h, &sol.coloring, template.template()), Ok(true)) || !consistent {
                structural.push("edge consistency".into());
            }
            if h.n() != g.n() || !h.is_spanning_subgraph_of(&g) {
                structural.push("spanning subgraph".into());
            }
            if family.graphs().any(|f| contains_pattern(h, f)) {
                structural.push("F-free".into());
            }
            let r = &sol.report;
            Ok(RunOk {
                structural,
                min_degree: h.min_degree(),
                mean_degree: 2.0 * h.edge_count() as f64 / h.n() as f64,
                isolated: (0..h.n()).filter(|&v| h.degree(v) == 0).count(),
                tau: r.tau,
                cap: params.iteration_cap(d),
                retries: r.retries,
                cap_trips: r.attempts.iter().filter(|a| a.failure.is_some()).count(),
                p3_passes: r.attempts.iter().filter(|a| a.phase1.p3.passed).count(),
                attempts: r.attempts.len(),
            })
        }
        Err(e) => Err(e.to_string()),
    };
    Run { family: family.name.clone(), d, seed, result }
}

fn sweep(families: &[&str], ds: &[usize], seeds: std::ops::Range<u64>) -> Vec<Run> {
    let mut runs = Vec::new();
    for name in families {
        let family = FamilySpec::parse(name).unwrap();
        for &d in ds {
            let template = Arc::new(build_template(&family, d, ALPHA, 0).unwrap());
            runs.extend(seeds.clone().map(|s| run(&family, &template, d, s)));
        }
    }
    runs
}

fn structural_runs() -> &'static [Run] {
    static RUNS: OnceLock<Vec<Run>> = OnceLock::new();
    RUNS.get_or_init(|| sweep(&["C4", "C3-C5"], &[8, 16, 32], 0..50))
}

fn scaling_runs() -> &'static [Run] {
    static RUNS: OnceLock<Vec<Run>> = OnceLock::new();
    RUNS.get_or_init(|| sweep(&["C4"], &[16, 32, 64], 0..30))
}

fn structural_guarantees() -> Outcome {
    let runs = structural_runs();
    let mut returned = 0;
    let mut problems = Vec::new();
    for r in runs {
        match &r.result {
            Ok(ok) => {
                returned += 1;
                if !ok.structural.is_empty() {
                    problems.push(format!("{} d={} seed={}: {:?}", r.family, r.d, r.seed, ok.structural));
                }
            }
            Err(e) if e.contains("attempts") => {}
            Err(e) => problems.push(format!("{} d={} seed={}: {e}", r.family, r.d, r.seed)),
        }
    }
    outcome(
        problems.is_empty() && runs.len() >= 300,
        format!("{returned}/{} runs returned H, {} violations {:?}", runs.len(), problems.len(), problems.first()),
    )
}

fn bad_count_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut mismatches = 0;
    let mut checked = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.1..0.7);
        let g = gnp(&mut rng, n, p);
        let k = rng.gen_range(1..=5);
        let colors: Vec<Option<usize>> =
            (0..n).map(|_| if rng.gen_bool(0.8) { Some(rng.gen_range(0..k)) } else { None }).collect();
        let chi = PartialColoring::from_vec(colors.clone());
        for v in 0..n {
            let got = match bad_count(v, &chi, &g) {
                Ok(b) => Some(b),
                Err(Error::Uncolored(_)) => None,
                Err(_) => Some(usize::MAX),
            };
            let want = colors[v].map(|_| brute_bad(&g, &colors, v));
            checked += 1;
            if got != want {
                mismatches += 1;
            }
        }
    }
    outcome(mismatches == 0, format!("1000 instances, {checked} vertices, {mismatches} mismatches"))
}

fn named(edges: &[(usize, usize)], n: usize) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).unwrap()
}

fn hom_oracle() -> Outcome {
    let prism = named(&[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)], 6);
    let octahedron = Graph::complete(6).filter_edges(|u, v| !(u + 3 == v));
    let mut patterns: Vec<Graph> = (1..=5).flat_map(small_graphs).collect();
    patterns.extend([
        Graph::cycle(6),
        Graph::path(6),
        Graph::complete_bipartite(3, 3),
        Graph::complete_bipartite(2, 4),
        Graph::complete_bipartite(1, 5),
        Graph::cycle(3).disjoint_union(&Graph::cycle(3)),
        prism.clone(),
        octahedron.clone(),
        Graph::complete(6),
    ]);
    let mut targets: Vec<Graph> = (1..=4).flat_map(small_graphs).collect();
    targets.extend([
        Graph::complete(5),
        Graph::cycle(5),
        Graph::cycle(6),
        Graph::cycle(7),
        Graph::complete_bipartite(2, 3),
        Graph::complete_bipartite(3, 3),
        Graph::complete_bipartite(3, 4),
        prism,
        octahedron,
        Graph::complete(7),
    ]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..6 {
        patterns.push(gnp(&mut rng, 6, 0.5));
    }
    for _ in 0..12 {
        let n = rng.gen_range(5..=7);
        targets.push(gnp(&mut rng, n, 0.5));
    }

    let mut mismatches = Vec::new();
    for f in &patterns {
        for t in &targets {
            let got = count_locally_injective_homs(f, t, false).unwrap();
            let want = brute_homs(f, t);
            if got != want {
                mismatches.push(format!("{}/{} vs {}/{}: {got} != {want}", f.n(), f.edge_count(), t.n(), t.edge_count()));
            }
        }
    }
    let k3 = Graph::complete(3);
    let c4_k3 = count_locally_injective_homs(&Graph::cycle(4), &k3, false).unwrap();
    let c6_k3 = count_locally_injective_homs(&Graph::cycle(6), &k3, false).unwrap();
    let named_ok = c4_k3 == 0 && c6_k3 == 6 && brute_homs(&Graph::cycle(4), &k3) == 0 && brute_homs(&Graph::cycle(6), &k3) == 6;
    outcome(
        mismatches.is_empty() && named_ok,
        format!(
            "{} patterns x {} targets, {} mismatches {:?}; hom*(C4,K3)={c4_k3} hom*(C6,K3)={c6_k3}",
            patterns.len(),
            targets.len(),
            mismatches.len(),
            mismatches.first()
        ),
    )
}

fn named_constructions() -> Outcome {
    let mut problems = Vec::new();
    for q in [2u64, 3, 5, 7] {
        let g = polarity_graph(q).unwrap();
        let qs = q as usize;
        let beta = TemplateGraph::new(g.clone(), Construction::Polarity { q }).unwrap().beta();
        if g.n() != qs * qs + qs + 1 {
            problems.push(format!("polarity q={q} order {}", g.n()));
        }
        if g.edge_count() != qs * (qs + 1) * (qs + 1) / 2 {
            problems.push(format!("polarity q={q} edges {}", g.edge_count()));
        }
        if !c4_free(&g) || contains_pattern(&g, &Graph::cycle(4)) {
            problems.push(format!("polarity q={q} has a C4"));
        }
        if (beta - (q as f64 + 1.0) / q as f64).abs() > 1e-12 {
            problems.push(format!("polarity q={q} beta {beta}"));
        }
    }
    for q in [2u64, 3, 5] {
        let g = incidence_graph(q).unwrap();
        let qs = q as usize;
        if g.n() != 2 * (qs * qs + qs + 1) {
            problems.push(format!("incidence q={q} order {}", g.n()));
        }
        if (0..g.n()).any(|v| g.degree(v) != qs + 1) {
            problems.push(format!("incidence q={q} not {}-regular", qs + 1));
        }
        if brute_girth(&g) != Some(6) {
            problems.push(format!("incidence q={q} girth {:?}", brute_girth(&g)));
        }
    }
    outcome(problems.is_empty(), format!("polarity q=2,3,5,7 and incidence q=2,3,5; problems {problems:?}"))
}

fn bipartization_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = 0;
    for i in 0..500 {
        let n = rng.gen_range(1..=200);
        let g = if i % 4 == 3 && n > 8 {
            let d = rng.gen_range(1..8);
            let n = n + (n * d) % 2;
            random_regular(n, d, rng.gen()).unwrap()
        } else {
            let p = rng.gen_range(0.0..1.0f64).powi(3);
            gnp(&mut rng, n, p)
        };
        let (sides, h) = bipartize(&g);
        let ok = h.is_spanning_subgraph_of(&g)
            && (0..g.n()).all(|v| {
                let cross = g.neighbors(v).iter().filter(|&&u| sides.side(u) != sides.side(v)).count();
                2 * cross >= g.degree(v) && h.degree(v) == cross
            });
        if !ok {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("500 graphs, {failures} violations"))
}

fn generated_templates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let families = ["C4", "C3-C5", "C3-C7", "K2,3", "C3+C6"];
    let mut outputs = 0;
    let mut problems = Vec::new();
    for i in 0..100u64 {
        let family = FamilySpec::parse(families[i as usize % families.len()]).unwrap();
        let m = rng.gen_range(40..=120);
        match random_pattern_free(m, &family, i) {
            Ok(g) => {
                outputs += 1;
                let free_by_search = !family.graphs().any(|f| contains_pattern(&g, f));
                let free_by_oracle = family.graphs().all(|f| {
                    if f.regular_degree() == Some(2) && f.is_connected() {
                        cycle_absent(&g, f.n())
                    } else {
                        !brute_contains(&g, f)
                    }
                });
                if !free_by_search || !free_by_oracle {
                    problems.push(format!("random {} m={m} seed={i}", family.name));
                }
            }
            Err(e) => problems.push(format!("random {} m={m} seed={i}: {e}", family.name)),
        }
    }
    for i in 0..100u64 {
        let n = rng.gen_range(10..=80);
        let p = rng.gen_range(0.05..0.4);
        let g = gnp(&mut rng, n, p);
        let bound = 4 + (i as usize % 5);
        let h = prune_short_cycles(&g, bound);
        outputs += 1;
        if !h.is_spanning_subgraph_of(&g) || brute_girth(&h).is_some_and(|x| x < bound) {
            problems.push(format!("prune n={n} bound={bound}"));
        }
    }
    outcome(problems.is_empty(), format!("{outputs}/200 outputs F-free; problems {problems:?}"))
}

/// No cycle of exactly length `k`, by depth-first search over simple paths.
fn cycle_absent(g: &Graph, k: usize) -> bool {
    fn walk(g: &Graph, start: usize, v: usize, len: usize, k: usize, on: &mut [bool]) -> bool {
        if len == k {
            return g.has_edge(v, start);
        }
        g.neighbors(v).iter().any(|&u| {
            if u <= start || on[u] {
                return false;
            }
            on[u] = true;
            let found = walk(g, start, u, len + 1, k, on);
            on[u] = false;
            found
        })
    }
    let mut on = vec![false; g.n()];
    !(0..g.n()).any(|s| {
        on[s] = true;
        let found = walk(g, s, s, 1, k, &mut on);
        on[s] = false;
        found
    })
}

fn median(mut xs: Vec<usize>) -> f64 {
    xs.sort_unstable();
    let m = xs.len();
    if m % 2 == 1 {
        xs[m / 2] as f64
    } else {
        (xs[m / 2 - 1] + xs[m / 2]) as f64 / 2.0
    }
}

fn degree_scaling() -> Outcome {
    let runs = scaling_runs();
    let mut medians = Vec::new();
    let mut summary = Vec::new();
    let mut below_one = 0;
    let mut verified = 0;
    for d in [16, 32, 64] {
        let ok: Vec<&RunOk> = runs.iter().filter(|r| r.d == d).filter_map(|r| r.result.as_ref().ok()).collect();
        let mins: Vec<usize> = ok.iter().map(|o| o.min_degree).collect();
        verified += ok.len();
        below_one += mins.iter().filter(|&&m| m < 1).count();
        let med = median(mins.clone());
        medians.push(med);
        let mean_deg = ok.iter().map(|o| o.mean_degree).sum::<f64>() / ok.len().max(1) as f64;
        let isolated = ok.iter().map(|o| o.isolated).sum::<usize>() as f64 / ok.len().max(1) as f64;
        let p3 = ok.iter().map(|o| o.p3_passes).sum::<usize>();
        let attempts = ok.iter().map(|o| o.attempts).sum::<usize>();
        summary.push(format!(
            "d={d}: {} seeds, median min deg {med}, max {}, mean deg {mean_deg:.2}, isolated {isolated:.1}/{}, P3 {p3}/{attempts}",
            ok.len(),
            mins.iter().max().unwrap_or(&0),
            adjusted_n(10, d),
        ));
    }
    let increasing = medians.windows(2).all(|w| w[1] > w[0]);
    let enough = runs.iter().filter(|r| r.result.is_ok()).count() >= 90;
    outcome(
        increasing && below_one == 0 && enough,
        format!(
            "medians {medians:?} strictly increasing: {increasing}; {below_one}/{verified} verified runs with min deg 0; {}",
            summary.join("; ")
        ),
    )
}

fn termination() -> Outcome {
    let mut worst_tau = 0;
    let mut worst_retries = 0;
    let mut problems = Vec::new();
    for r in structural_runs().iter().chain(scaling_runs()) {
        match &r.result {
            Ok(ok) => {
                worst_tau = worst_tau.max(ok.tau);
                worst_retries = worst_retries.max(ok.retries);
                if ok.tau > ok.cap || ok.cap_trips > 0 || ok.retries > MAX_RETRIES {
                    problems.push(format!("{} d={} seed={}: tau {} cap {} trips {}", r.family, r.d, r.seed, ok.tau, ok.cap, ok.cap_trips));
                }
            }
            Err(e) => problems.push(format!("{} d={} seed={}: {e}", r.family, r.d, r.seed)),
        }
    }
    outcome(
        problems.is_empty(),
        format!("max tau {worst_tau}, max retries {worst_retries}; problems {:?}", problems.first()),
    )
}

fn witness_regression() -> Outcome {
    let c6 = closedness_witness_search(&FamilySpec::parse("C6").unwrap(), 5).unwrap();
    let c4 = closedness_witness_search(&FamilySpec::parse("C4").unwrap(), 6).unwrap();
    let c6_ok = c6.as_ref().is_some_and(|w| brute_contains(w, &Graph::complete(3)) && w.n() == 3 && w.edge_count() == 3);
    outcome(
        c6_ok && c4.is_none(),
        format!("C6 (max n 5): {:?}; C4 (max n 6): {:?}", c6.map(|w| (w.n(), w.edge_count())), c4.map(|w| w.n())),
    )
}

fn determinism() -> Outcome {
    let artifacts = || {
        let g = random_regular(160, 16, 11).unwrap();
        let family = FamilySpec::parse("C3-C5").unwrap();
        let template = build_template(&family, 16, ALPHA, 11).unwrap();
        let text = template.to_text();
        let sol = solve(&g, &family, Arc::new(template), &Params::with_seed(11)).unwrap();
        let cfg = ExperimentConfig {
            family: "C4".into(),
            d_values: vec![8, 12],
            n_multiplier: 10,
            alpha: ALPHA,
            seeds: Seeds::Count(4),
            master_seed: 9,
            max_retries: MAX_RETRIES,
            max_phase2_iterations: None,
            phase2_uncolored_threshold: None,
            output: None,
            timing: false,
        };
        let csv = to_csv_string(&run_experiment(&cfg).unwrap()).unwrap();
        [g.to_edge_list(), text, sol.h.to_edge_list(), sol.coloring.to_text(), sol.report.to_json(), csv]
    };
    let (a, b) = (artifacts(), artifacts());
    let differing: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
    outcome(differing.is_empty(), format!("6 artifacts regenerated, differing indices {differing:?}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("structural guarantees", structural_guarantees),
        ("bad_count oracle", bad_count_oracle),
        ("hom* oracle", hom_oracle),
        ("named constructions", named_constructions),
        ("bipartization contract", bipartization_contract),
        ("generated templates", generated_templates),
        ("degree scaling", degree_scaling),
        ("phase II termination", termination),
        ("closedness witness", witness_regression),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        failed += usize::from(!o.pass);
        println!(
            "criterion {:>2} {} {name} ({:.1}s): {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
