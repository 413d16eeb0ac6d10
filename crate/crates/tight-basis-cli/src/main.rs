use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tight_basis::decompose::{self, Order};
use tight_basis::io::{DigraftJson, GraphJson, Instance};
use tight_basis::oracle::{self, DEFAULT_CAP_ARCS, DEFAULT_CAP_EDGES};
use tight_basis::parity::{Parity, ParityQuery, ParitySolver};
use tight_basis::{basis, corpus, feasibility, reduce, structure, ArcSet, Digraft, Error, Family};

#[derive(Parser)]
#[command(name = "tbasis", version, about = "Integral bases of tight orientations and tight dijoins")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Enumeration cap on digraft arcs.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP_ARCS)]
    cap_arcs: usize,
    /// Enumeration cap on graph edges.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP_EDGES)]
    cap_edges: usize,
    /// Certify the result against brute-force enumeration.
    #[arg(long, global = true)]
    verify: bool,
    /// Write the report here instead of stdout (a directory for `corpus`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Basis of tight strongly connected orientations of a graph.
    ScoBasis { input: PathBuf },
    /// Basis of tight strengthenings of a digraph.
    ScrBasis { input: PathBuf },
    /// Basis of tight dijoins of a digraft (graphs go through the reduction).
    DigraftBasis { input: PathBuf },
    /// Tight orientation with an odd or even number of red arcs.
    Parity {
        input: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
        /// Red arcs, overriding the `red` field of the input.
        #[arg(long, value_delimiter = ',')]
        red: Option<Vec<usize>>,
    },
    /// Tight dicut decomposition; `--seed` picks a random order.
    Decompose {
        input: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Brick, brace or non-basic, with robustness and tight sources.
    Classify { input: PathBuf },
    /// All tight orientations, strengthenings or dijoins.
    Enumerate { input: PathBuf },
    /// Certify the `basis` of a report against an instance.
    Verify {
        input: PathBuf,
        #[arg(long)]
        basis: PathBuf,
    },
    /// Write the test corpus as instance files.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 8)]
        max_m: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Odd,
    Even,
}

enum Failure {
    /// Bad arguments, unreadable or malformed input.
    Input(String),
    /// Valid input without an answer.
    NoAnswer(Error),
    /// Certification failed or an internal check fired.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible | Error::NoSolution => Failure::NoAnswer(e),
            Error::LoopBoundExceeded(_) | Error::ChainBoundExceeded(_) | Error::GlueVerificationFailed => {
                Failure::Check(e.to_string())
            }
            e => Failure::Input(e.to_string()),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn read_instance(path: &Path) -> Run<Instance> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn expect_graph(i: Instance) -> Run<GraphJson> {
    match i {
        Instance::Graph(g) => Ok(g),
        _ => Err(Failure::Input("expected an undirected graph {n, edges}".into())),
    }
}

/// A digraft, reducing an undirected graph if needed.
fn to_digraft(i: Instance) -> Run<Digraft> {
    match i {
        Instance::Digraft(d) => Ok(d.digraft()?),
        Instance::Graph(g) => Ok(reduce::sco_to_digraft(&g.graph()?, &g.family)?.0),
        Instance::Digraph(_) => Err(Failure::Input("expected a digraft or an undirected graph".into())),
    }
}

fn check_cap(size: usize, cap: usize) -> Run<()> {
    if size > cap {
        return Err(Failure::Input(format!("verification needs a cap of at least {size}, got {cap}")));
    }
    Ok(())
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable report")
}

fn run(cli: &Cli) -> Run<Value> {
    match &cli.command {
        Command::ScoBasis { input } => {
            let gj = expect_graph(read_instance(input)?)?;
            let g = gj.graph()?;
            let mut r = reduce::sco_basis(&g, &gj.family)?;
            if cli.verify {
                check_cap(g.m(), cli.cap_edges)?;
                reduce::certify_sco(&mut r, &g, &gj.family, cli.cap_edges)?;
            }
            Ok(to_value(&r))
        }
        Command::ScrBasis { input } => {
            let Instance::Digraph(dj) = read_instance(input)? else {
                return Err(Failure::Input("expected a digraph {n, arcs}".into()));
            };
            let d = dj.digraph()?;
            let mut r = reduce::scr_basis(&d, &dj.family)?;
            if cli.verify {
                check_cap(d.arcs.len(), cli.cap_edges)?;
                reduce::certify_scr(&mut r, &d, &dj.family, cli.cap_edges)?;
            }
            Ok(to_value(&r))
        }
        Command::DigraftBasis { input } => {
            let d = to_digraft(read_instance(input)?)?;
            let mut r = basis::digraft_basis(&d)?;
            if cli.verify {
                check_cap(d.m(), cli.cap_arcs)?;
                r.certify(&d, cli.cap_arcs)?;
            }
            Ok(to_value(&r))
        }
        Command::Parity { input, target, red } => {
            let gj = expect_graph(read_instance(input)?)?;
            let target = match target {
                Target::Odd => Parity::Odd,
                Target::Even => Parity::Even,
            };
            let red = red.clone().unwrap_or_else(|| gj.red.clone());
            let q = ParityQuery::new(gj.graph()?, gj.family.clone(), red, target)?;
            let o = ParitySolver::new(q.graph.clone(), q.family.clone())?.solve(&q.red, target)?;
            let mut report = json!({ "target": target, "orientation": o, "red_count": q.red_count(&o) });
            if cli.verify {
                if !q.accepts(&o) {
                    return Err(Failure::Check(format!("{o:?} is not a tight orientation of the requested parity")));
                }
                report["verified"] = json!(true);
            }
            Ok(report)
        }
        Command::Decompose { input, seed } => {
            let d = to_digraft(read_instance(input)?)?;
            let order = seed.map_or(Order::Canonical, Order::Random);
            let tree = decompose::tight_dicut_decomposition(&d, order)?;
            Ok(json!({ "seed": seed, "bricks": tree.brick_count(), "braces": tree.brace_count(), "tree": tree }))
        }
        Command::Classify { input } => {
            let d = to_digraft(read_instance(input)?)?;
            if matches!(d.family(), Family::General(_)) {
                return Err(Failure::Input("classify needs tight-sources form; an empty family does".into()));
            }
            if !feasibility::is_covered(&d) {
                return Err(Failure::NoAnswer(Error::NotCovered));
            }
            Ok(json!({
                "classification": structure::classify(&d)?,
                "robustness": structure::robustness(&d)?,
                "tight_sources": feasibility::tight_sources(&d)?,
            }))
        }
        Command::Enumerate { input } => {
            let sets = enumerate(read_instance(input)?, cli)?;
            Ok(json!({ "count": sets.len(), "sets": sets }))
        }
        Command::Verify { input, basis } => {
            let text = fs::read_to_string(basis).map_err(|e| Failure::Input(format!("{}: {e}", basis.display())))?;
            let report: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", basis.display())))?;
            let b: Vec<ArcSet> = serde_json::from_value(report.get("basis").cloned().unwrap_or(report))
                .map_err(|e| Failure::Input(format!("{}: {e}", basis.display())))?;
            verify(read_instance(input)?, &b, cli)
        }
        Command::Corpus { seed, max_n, max_m } => write_corpus(*seed, *max_n, *max_m, cli.out.as_deref()),
    }
}

fn enumerate(i: Instance, cli: &Cli) -> Run<Vec<ArcSet>> {
    Ok(match i {
        Instance::Graph(g) => oracle::enumerate_tight_scos(&g.graph()?, &reduce::normalize_family(g.n, &g.family)?, cli.cap_edges)?,
        Instance::Digraph(d) => {
            let f = reduce::normalize_family(d.n, &d.family)?;
            oracle::enumerate_tight_strengthenings(d.n, &d.arcs, &f, cli.cap_edges)?
        }
        Instance::Digraft(d) => oracle::enumerate_tight_dijoins(&d.digraft()?, cli.cap_arcs)?,
    })
}

fn verify(i: Instance, b: &[ArcSet], cli: &Cli) -> Run<Value> {
    let (m, all_tight) = match &i {
        Instance::Graph(g) => {
            let f = reduce::normalize_family(g.n, &g.family)?;
            let gr = g.graph()?;
            (gr.arc_count(), b.iter().all(|o| oracle::is_tight_sco(&gr, &f, o)))
        }
        Instance::Digraph(d) => {
            let f = reduce::normalize_family(d.n, &d.family)?;
            (d.arcs.len(), b.iter().all(|j| oracle::is_tight_strengthening(d.n, &d.arcs, &f, j)))
        }
        Instance::Digraft(d) => {
            let dg = d.digraft()?;
            (dg.m(), b.iter().all(|j| dg.is_tight_dijoin(j)))
        }
    };
    if let Some(a) = b.iter().flatten().find(|&&a| a >= m) {
        return Err(Failure::Input(format!("basis arc {a} out of range")));
    }
    let enumerated = enumerate(i, cli)?;
    let c = oracle::verify_arc_sets(b, &enumerated, m);
    let certified = c.certified && c.independent && all_tight;
    let report = json!({
        "certified": certified,
        "enumerated": enumerated.len(),
        "basis_rank": c.basis_rank,
        "enumerated_rank": c.enumerated_rank,
        "independent": c.independent,
        "invariant_factors": c.invariant_factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "all_integral": c.all_integral,
        "all_tight": all_tight,
    });
    if !certified {
        return Err(Failure::Check(report.to_string()));
    }
    Ok(report)
}

fn write_json(path: &Path, v: &impl Serialize) -> Run<()> {
    let text = serde_json::to_string_pretty(v).expect("serializable instance");
    fs::write(path, text + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_corpus(seed: u64, max_n: usize, max_m: usize, out: Option<&Path>) -> Run<Value> {
    let dir = out.ok_or_else(|| Failure::Input("corpus needs --out DIR".into()))?;
    fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    let mut graphs: Vec<(String, tight_basis::UndirectedMultigraph)> = corpus::small_multigraphs(max_n, max_m)
        .into_iter()
        .enumerate()
        .map(|(i, g)| (format!("g{i:04}"), g))
        .collect();
    graphs.extend(corpus::named().into_iter().map(|n| (n.name.to_string(), n.graph)));
    for (i, (name, g)) in graphs.iter().enumerate() {
        let variant_seed = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
        for (variant, family) in corpus::family_variants(g, variant_seed) {
            let file = format!("{name}_{variant}.json");
            write_json(&dir.join(&file), &GraphJson::new(g, family))?;
            files.push(file);
        }
    }
    for (name, d) in [
        ("barrier", corpus::barrier_example()),
        ("two_separation", corpus::two_separation_example()),
        ("ear", corpus::ear_example()),
    ] {
        let file = format!("{name}.json");
        write_json(&dir.join(&file), &DigraftJson::new(&d))?;
        files.push(file);
    }
    let manifest = json!({ "seed": seed, "max_n": max_n, "max_m": max_m, "files": files });
    write_json(&dir.join("manifest.json"), &manifest)?;
    Ok(json!({ "seed": seed, "count": files.len(), "dir": dir.display().to_string() }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    match run(&cli) {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("serializable report") + "\n";
            match (&cli.out, &cli.command) {
                (Some(path), c) if !matches!(c, Command::Corpus { .. }) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                _ => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::NoAnswer(e)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(3)
        }
    }
}
