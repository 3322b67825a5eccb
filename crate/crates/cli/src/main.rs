use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use freesub_core::engine::{solve, Params};
use freesub_core::experiment::{run_experiment, write_csv, ExperimentConfig};
use freesub_core::generate::random_regular;
use freesub_core::homomorphism::{closedness_witness_search, FamilySpec, PartialColoring};
use freesub_core::templates::{build_template, CertifiedTemplate, TemplateGraph};
use freesub_core::verifier::verify_solution;
use freesub_core::{Error, Graph, Result};

/// Spanning F-free subgraphs of regular graphs by template coloring.
#[derive(Parser)]
#[command(name = "freesub", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and certify a template for a family and degree.
    Template {
        #[arg(long)]
        family: String,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 64.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the template here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract a spanning F-free subgraph.
    Solve(SolveArgs),
    /// Run a sweep described by a JSON config and write CSV.
    Experiment {
        config: PathBuf,
        /// Overrides the config's output path; `-` for stdout.
        #[arg(long)]
        output: Option<String>,
        /// Overrides the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check a solution given as files.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        subgraph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        family: String,
    },
    /// Search small graphs for a counterexample to a family's closedness.
    Witness {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Generate the input as `n,d`.
    #[arg(long, value_parser = parse_pair, conflicts_with = "graph", required_unless_present = "graph")]
    random_regular: Option<(usize, usize)>,
    /// Read the input edge list.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64.0)]
    alpha: f64,
    #[arg(long, default_value_t = 20)]
    max_retries: usize,
    #[arg(long)]
    threshold: Option<usize>,
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Output prefix: writes PREFIX.edges, .coloring, .template and .report.json.
    #[arg(long, default_value = "solution")]
    out: PathBuf,
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected n,d")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Template { family, d, alpha, seed, out } => {
            let family = FamilySpec::parse(&family)?;
            let t = build_template(&family, d, alpha, seed)?;
            eprintln!("{} certificate={:?}", t.header().trim_start_matches("# "), t.certificate());
            emit(out.as_deref(), &t.to_text())?;
            Ok(0)
        }
        Command::Solve(args) => cmd_solve(args),
        Command::Experiment { config, output, seed } => {
            let mut cfg = ExperimentConfig::from_json(&read(&config)?)?;
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            let rows = run_experiment(&cfg)?;
            let target = output.or(cfg.output.clone());
            match target.as_deref() {
                None | Some("-") => write_csv(&rows, std::io::stdout().lock())?,
                Some(path) => write_csv(&rows, fs::File::create(path)?)?,
            }
            Ok(0)
        }
        Command::Verify { graph, subgraph, coloring, template, family } => {
            let family = FamilySpec::parse(&family)?;
            let g = Graph::from_edge_list(&read(&graph)?)?;
            let h = Graph::from_edge_list(&read(&subgraph)?)?;
            let chi = PartialColoring::from_text(h.n(), &read(&coloring)?)?;
            let t = TemplateGraph::from_text(&read(&template)?)?;
            let verdict = verify_solution(&g, &h, &chi, &t, &family);
            println!("{}", serde_json::to_string_pretty(&verdict)?);
            Ok(if verdict.is_fully_true() { 0 } else { 3 })
        }
        Command::Witness { family, max_n } => {
            let family = FamilySpec::parse(&family)?;
            match closedness_witness_search(&family, max_n)? {
                Some(w) => {
                    println!("witness n={} m={}", w.n(), w.edge_count());
                    print!("{}", w.to_edge_list());
                }
                None => println!("none"),
            }
            Ok(0)
        }
    }
}

fn cmd_solve(args: SolveArgs) -> Result<u8> {
    let family = FamilySpec::parse(&args.family)?;
    let g = match (args.random_regular, &args.graph) {
        (Some((n, d)), _) => random_regular(n, d, args.seed)?,
        (None, Some(path)) => Graph::from_edge_list(&read(path)?)?,
        (None, None) => unreachable!("clap requires one input"),
    };
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    family.validate_for_pipeline()?;
    let params = Params {
        alpha: args.alpha,
        phase2_uncolored_threshold: args.threshold,
        max_phase2_iterations: args.max_iterations,
        max_retries: args.max_retries,
        seed: args.seed,
    };
    let template: Arc<CertifiedTemplate> = Arc::new(build_template(&family, d, args.alpha, args.seed)?);
    let sol = solve(&g, &family, template, &params)?;

    fs::write(with_suffix(&args.out, "edges"), sol.h.to_edge_list())?;
    fs::write(with_suffix(&args.out, "coloring"), sol.coloring.to_text())?;
    fs::write(with_suffix(&args.out, "template"), sol.template.to_text())?;
    fs::write(with_suffix(&args.out, "report.json"), sol.report.to_json() + "\n")?;

    let r = &sol.report;
    println!(
        "n={} d={} template=\"{}\" min_degree={} target={:.4} tau={} retries={} targets_met={} verified={}",
        r.n,
        r.d,
        r.template.construction,
        r.min_degree,
        r.target_degree,
        r.tau,
        r.retries,
        r.degree_targets_met,
        r.verdict.is_fully_true()
    );
    Ok(if r.verdict.is_fully_true() { 0 } else { 3 })
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
