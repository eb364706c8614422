//! `sumdex`: command line surface for the sum index workbench.
//!
//! Exit codes: 0 success, 1 invalid input, 2 budget exceeded or unknown
//! result, 3 internal validation failure (a check that should hold did not).

mod repro;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use sumdex_core::bounds::{sum_index_bounds, CHROMATIC_NODE_BUDGET};
use sumdex_core::constructions::{
    extremal_construction, label_cluster, label_hypercube, label_join_family, label_multipartite,
    ConstructionResult,
};
use sumdex_core::extremal::build_table;
use sumdex_core::family::FamilySpec;
use sumdex_core::graph::Graph;
use sumdex_core::graph6::{decode_graph6, encode_graph6};
use sumdex_core::group::{
    group_sum_index, min_restricted_sumset_complete, zp2_construction, AbelianGroup,
    GroupSearchOutcome, SubsetScanOutcome,
};
use sumdex_core::labeling::LabelingJson;
use sumdex_core::solver::{sum_index_exact, CertificateStatus, LowerEvidence, SolverConfig, SumIndexCertificate};

#[derive(Parser)]
#[command(name = "sumdex", version, about = "Exact graph sum index workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GraphInput {
    /// Graph as graph6 text.
    #[arg(long)]
    graph6: Option<String>,
    /// Path to a graph file (graph6 line or `n=` edge list).
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Backtracking node budget for the exact search.
    #[arg(long, default_value_t = 100_000_000)]
    nodes: u64,
    /// Edge cap for exhaustive mode.
    #[arg(long, default_value_t = 16)]
    max_edges: usize,
    /// Wall clock limit in seconds; exceeding it exits with code 2.
    #[arg(long)]
    time_limit: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph family member and print it.
    Gen {
        /// Family kind: complete, bipartite, multipartite, cycle, path,
        /// hypercube, cluster, ladder, threshold_tail, join-family.
        kind: String,
        /// Family parameters.
        params: Vec<usize>,
        /// Print the edge list format instead of graph6.
        #[arg(long)]
        edge_list: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compute the exact sum index with a certificate.
    Exact {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Seed for witness extraction.
        #[arg(long, default_value_t = sumdex_core::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the bound chain for a graph.
    Bounds {
        #[command(flatten)]
        input: GraphInput,
        /// Node budget for the chromatic index search.
        #[arg(long, default_value_t = CHROMATIC_NODE_BUDGET)]
        nodes: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run a labeling construction and print the labeling.
    Construct {
        /// One of: multipartite, join-family, hypercube, cluster, extremal.
        kind: String,
        params: Vec<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Re-check an emitted labeling or certificate JSON file.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// Build the exact extremal edge-count table for small n.
    Extremal {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Worker threads for the per-class solves.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = 100_000_000)]
        nodes: u64,
        #[arg(long, default_value_t = sumdex_core::DEFAULT_SEED)]
        seed: u64,
        /// Write extremal_table.csv and extremal_table.json here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Group-valued searches.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Regenerate the verification reports.
    Repro {
        /// One of: catalog, extremal-table, zp2, conjecture.
        target: String,
        #[arg(long, default_value = "reports")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = 100_000_000)]
        nodes: u64,
        #[arg(long, default_value_t = sumdex_core::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Minimum restricted sumset size over m-subsets (sum index of K_m).
    MinComplete {
        /// Comma-separated moduli, e.g. "5,5".
        #[arg(long)]
        group: String,
        #[arg(long)]
        m: usize,
        /// Subset count budget.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
        #[arg(long)]
        json: bool,
    },
    /// Sum index of a graph in a finite abelian group.
    SumIndex {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        group: String,
        /// Injection count budget.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
        #[arg(long)]
        json: bool,
    },
    /// The explicit 2p+1-element construction in Z_p^2.
    Zp2 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        json: bool,
    },
}

/// CLI failure with its exit code.
pub(crate) enum Failure {
    Input(String),
    Budget(String),
    Validation(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Budget(_) => 2,
            Failure::Validation(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Budget(m) | Failure::Validation(m) => m,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn load_graph(input: &GraphInput) -> Result<Graph, Failure> {
    match (&input.graph6, &input.file) {
        (Some(text), None) => decode_graph6(text).map_err(input_err),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
            let body = text.trim();
            if body.lines().any(|l| l.trim_start().starts_with("n=")) {
                Graph::from_edge_list(body).map_err(input_err)
            } else {
                decode_graph6(body.lines().next().unwrap_or("")).map_err(input_err)
            }
        }
        _ => Err(Failure::Input("give exactly one of --graph6 or --file".into())),
    }
}

/// Runs `job` on a worker thread; a missed deadline exits with code 2.
fn with_deadline<T: Send + 'static>(limit: Option<u64>, job: impl FnOnce() -> T + Send + 'static) -> T {
    let Some(secs) = limit else { return job() };
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(job());
    });
    match rx.recv_timeout(Duration::from_secs(secs)) {
        Ok(value) => value,
        Err(_) => {
            eprintln!("time limit of {secs}s exceeded; result unknown");
            std::process::exit(2);
        }
    }
}

fn print_certificate(cert: &SumIndexCertificate, json: bool) {
    if json {
        println!("{}", cert.to_json_string());
        return;
    }
    match cert.status {
        CertificateStatus::Exact => {
            println!("sum_index = {}", cert.sum_index.expect("exact certificate has a value"));
            if let Some(witness) = &cert.witness {
                println!("witness ranks: [{}]", witness.ranks.join(", "));
                println!("witness sums:  [{}]", witness.sums.join(", "));
            }
            match &cert.lower_evidence {
                LowerEvidence::Bound { value } => println!("lower bound {value} met directly"),
                LowerEvidence::Exhaustion { k_range, colorings_examined } => {
                    println!(
                        "exhausted k = {:?} ({} search nodes)",
                        k_range,
                        colorings_examined.iter().sum::<u64>()
                    );
                }
            }
            println!("budget used: {} nodes", cert.budget_used);
        }
        CertificateStatus::Unknown => {
            let [lo, hi] = cert.bracket.expect("unknown certificate carries a bracket");
            println!("sum_index unknown; bracket [{lo}, {hi}]");
            println!("budget used: {} nodes", cert.budget_used);
        }
    }
}

fn construction_json(result: &ConstructionResult) -> Result<String, Failure> {
    let labeling = LabelingJson::build(&result.graph, &result.labeling)
        .map_err(|e| Failure::Validation(e.to_string()))?;
    let value = serde_json::json!({
        "family": result.graph.family_tag(),
        "claimed": result.claimed,
        "achieved": result.achieved,
        "labeling": labeling,
    });
    Ok(serde_json::to_string_pretty(&value).expect("json"))
}

fn run() -> Result<(), Failure> {
    // remap clap usage errors onto exit code 1 (invalid input); help and
    // version keep exit 0
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let code = match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
            _ => 1,
        };
        let _ = e.print();
        std::process::exit(code);
    });
    match cli.command {
        Command::Gen { kind, params, edge_list, json } => {
            let spec = FamilySpec::from_kind_params(&kind, &params).map_err(input_err)?;
            let g = spec.generate();
            if json {
                let value = serde_json::json!({
                    "family": g.family_tag(),
                    "n": g.n(),
                    "m": g.edge_count(),
                    "graph6": encode_graph6(&g),
                });
                println!("{}", serde_json::to_string_pretty(&value).expect("json"));
            } else if edge_list {
                print!("{}", g.to_edge_list());
            } else {
                println!("{}", encode_graph6(&g));
            }
            Ok(())
        }
        Command::Exact { input, budget, seed, json } => {
            let g = load_graph(&input)?;
            let cfg = SolverConfig {
                max_edges: budget.max_edges,
                max_nodes: budget.nodes,
                seed,
                ..SolverConfig::default()
            };
            let cert = with_deadline(budget.time_limit, move || sum_index_exact(&g, &cfg))
                .map_err(|e| Failure::Validation(e.to_string()))?;
            print_certificate(&cert, json);
            if cert.status == CertificateStatus::Unknown {
                return Err(Failure::Budget("search budget exceeded".into()));
            }
            Ok(())
        }
        Command::Bounds { input, nodes, json } => {
            let g = load_graph(&input)?;
            let report = sum_index_bounds(&g, nodes);
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("json"));
            } else {
                println!("max_degree        = {}", report.max_degree);
                println!(
                    "chromatic_index   = [{}, {}]{}",
                    report.chromatic_index_lower,
                    report.chromatic_index_upper,
                    if report.chromatic_index_exact { " (exact)" } else { "" }
                );
                match report.haslegrave {
                    Some(h) => println!("haslegrave        = {h}"),
                    None => println!("haslegrave        = n/a"),
                }
                println!("trivial_upper     = {}", report.trivial_upper);
                println!("best_lower        = {} ({:?})", report.best_lower, report.best_lower_method);
                println!("best_upper        = {} ({:?})", report.best_upper, report.best_upper_method);
            }
            Ok(())
        }
        Command::Construct { kind, params, json } => {
            let result = match kind.as_str() {
                "multipartite" => label_multipartite(&params),
                "join-family" | "join_family" => label_join_family(&params),
                "hypercube" => {
                    if params.len() != 1 {
                        return Err(Failure::Input("hypercube takes one parameter".into()));
                    }
                    label_hypercube(params[0])
                }
                "cluster" => {
                    if params.len() != 2 {
                        return Err(Failure::Input("cluster takes two parameters: copies, size".into()));
                    }
                    label_cluster(params[0], params[1])
                }
                "extremal" => {
                    if params.len() != 2 {
                        return Err(Failure::Input("extremal takes two parameters: n, sum count".into()));
                    }
                    extremal_construction(params[0], params[1])
                }
                other => return Err(Failure::Input(format!("unknown construction {other:?}"))),
            };
            let result = result.map_err(|e| match e {
                sumdex_core::constructions::ConstructionError::InvalidParams(_) => Failure::Input(e.to_string()),
                _ => Failure::Validation(e.to_string()),
            })?;
            if json {
                println!("{}", construction_json(&result)?);
            } else {
                println!("{}", result.graph);
                println!("claimed = achieved = {}", result.achieved);
                let ranks: Vec<String> = result.labeling.ranks().iter().map(|r| r.to_string()).collect();
                println!("ranks: [{}]", ranks.join(", "));
            }
            Ok(())
        }
        Command::Verify { file } => {
            let text = fs::read_to_string(&file).map_err(|e| input_err(format!("{}: {e}", file.display())))?;
            verify_file(&text)
        }
        Command::Extremal { n_max, threads, nodes, seed, out_dir, json } => {
            let cfg = SolverConfig { max_nodes: nodes, seed, ..SolverConfig::default() };
            let table = build_table(n_max, &cfg, threads).map_err(|e| match e {
                sumdex_core::extremal::ExtremalError::TooManyVertices(_)
                | sumdex_core::extremal::ExtremalError::InvalidParams(_) => Failure::Input(e.to_string()),
                _ => Failure::Budget(e.to_string()),
            })?;
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir).map_err(input_err)?;
                fs::write(dir.join("extremal_table.csv"), table.to_csv()).map_err(input_err)?;
                fs::write(dir.join("extremal_table.json"), table.to_json_string()).map_err(input_err)?;
            }
            if json {
                println!("{}", table.to_json_string());
            } else {
                print!("{}", table.to_csv());
            }
            if !table.unresolved.is_empty() {
                return Err(Failure::Budget(format!("{} classes unresolved", table.unresolved.len())));
            }
            Ok(())
        }
        Command::Group { command } => run_group(command),
        Command::Repro { target, out_dir, threads, nodes, seed } => {
            let cfg = SolverConfig { max_nodes: nodes, seed, ..SolverConfig::default() };
            repro::run(&target, &out_dir, &cfg, threads)
        }
    }
}

fn run_group(command: GroupCommand) -> Result<(), Failure> {
    match command {
        GroupCommand::MinComplete { group, m, budget, json } => {
            let a = AbelianGroup::parse(&group).map_err(input_err)?;
            let out = min_restricted_sumset_complete(&a, m, budget).map_err(|e| match e {
                sumdex_core::group::GroupError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
                _ => Failure::Input(e.to_string()),
            })?;
            match out {
                SubsetScanOutcome::Exact { value, witness, nodes } => {
                    if json {
                        let v = serde_json::json!({
                            "group": a.moduli(),
                            "m": m,
                            "value": value,
                            "witness": witness,
                            "nodes": nodes,
                        });
                        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
                    } else {
                        println!("{value}");
                    }
                    Ok(())
                }
                SubsetScanOutcome::Unknown { lower, upper } => {
                    Err(Failure::Budget(format!("unknown; value in [{lower}, {upper}]")))
                }
            }
        }
        GroupCommand::SumIndex { input, group, budget, json } => {
            let g = load_graph(&input)?;
            let a = AbelianGroup::parse(&group).map_err(input_err)?;
            let out = group_sum_index(&g, &a, budget).map_err(input_err)?;
            match out {
                GroupSearchOutcome::Exact { value, witness, nodes } => {
                    if json {
                        let v = serde_json::json!({
                            "group": a.moduli(),
                            "graph6": encode_graph6(&g),
                            "value": value,
                            "witness": witness.ranks,
                            "nodes": nodes,
                        });
                        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
                    } else {
                        println!("{value}");
                    }
                    Ok(())
                }
                GroupSearchOutcome::Unknown { lower, upper } => {
                    Err(Failure::Budget(format!("unknown; value in [{lower}, {upper}]")))
                }
            }
        }
        GroupCommand::Zp2 { p, json } => {
            let c = zp2_construction(p).map_err(input_err)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&c).expect("json"));
            } else {
                println!("|X| = {}, |X^+X| = {} (4p = {})", c.subset.len(), c.achieved, 4 * p);
            }
            if c.achieved as u64 != 4 * p {
                return Err(Failure::Validation(format!(
                    "construction achieved {} sums, expected {}",
                    c.achieved,
                    4 * p
                )));
            }
            Ok(())
        }
    }
}

fn verify_file(text: &str) -> Result<(), Failure> {
    // certificates carry a status field, labelings do not
    let has_status = serde_json::from_str::<serde_json::Value>(text)
        .ok()
        .is_some_and(|v| v.get("status").is_some());
    if has_status {
        let cert: SumIndexCertificate =
            serde_json::from_str(text).map_err(|e| input_err(format!("bad certificate JSON: {e}")))?;
        return verify_certificate(&cert);
    }
    let labeling: LabelingJson =
        serde_json::from_str(text).map_err(|e| input_err(format!("not a labeling or certificate JSON: {e}")))?;
    verify_labeling(&labeling)
}

fn verify_labeling(json: &LabelingJson) -> Result<(), Failure> {
    let (g, f) = json.decode().map_err(input_err)?;
    let sums = sumdex_core::labeling::rank_sums(&g, &f).map_err(|e| Failure::Validation(e.to_string()))?;
    let recomputed: Vec<String> = sums.sums().iter().map(|s| s.to_string()).collect();
    if sums.count() != json.sum_count || json.sums != recomputed {
        return Err(Failure::Validation(format!(
            "recorded {} sums, recomputed {}",
            json.sum_count,
            sums.count()
        )));
    }
    println!("ok: {} ranks, {} distinct sums", json.ranks.len(), sums.count());
    Ok(())
}

fn verify_certificate(cert: &SumIndexCertificate) -> Result<(), Failure> {
    match cert.status {
        CertificateStatus::Unknown => {
            println!("certificate is unknown-status; nothing to check beyond the bracket");
            Ok(())
        }
        CertificateStatus::Exact => {
            let value = cert
                .sum_index
                .ok_or_else(|| Failure::Validation("exact certificate without a value".into()))?;
            if value > 0 {
                let witness = cert
                    .witness
                    .as_ref()
                    .ok_or_else(|| Failure::Validation("exact certificate without a witness".into()))?;
                verify_labeling(witness)?;
                if witness.sum_count != value {
                    return Err(Failure::Validation(format!(
                        "witness has {} sums, certificate claims {value}",
                        witness.sum_count
                    )));
                }
                if witness.graph6 != cert.graph6 {
                    return Err(Failure::Validation("witness graph differs from certificate graph".into()));
                }
            }
            let consistent = match &cert.lower_evidence {
                // a bound evidence means the first feasible k was the bound itself
                LowerEvidence::Bound { value: bound } => *bound == value,
                LowerEvidence::Exhaustion { k_range, .. } => {
                    k_range.last().map(|last| last + 1) == Some(value)
                }
            };
            if !consistent {
                return Err(Failure::Validation("lower evidence does not reach the certified value".into()));
            }
            println!("ok: certificate for sum_index = {value}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
