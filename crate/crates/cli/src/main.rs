//! `subtile`: command-line front end for the exact tiling toolkit.
//!
//! Graph arguments name an edge-list file (graph6 with `--graph6`) or, when
//! no such file exists, a construction expression such as `K4`, `K(3,4)`,
//! `C6`, `P3` or `U(K3,C4)`.
//!
//! Exit status: 0 when the command ran and every asserted check passed,
//! 1 when an asserted check failed, 2 on usage or input errors, 3 when the
//! search budget ran out. Decisions (tiling or not) are reported on stdout.

use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use subtile::absorb::{select_family, verify_family, System};
use subtile::domination::domination;
use subtile::embedding::SearchLimits;
use subtile::extremal::{construct_extremal, verify_extremal, Construction};
use subtile::gadgets::{build_gadget, verify_gadget, Evidence, GadgetKind, Outcome};
use subtile::graph::{build, parse_graph_as, Graph, GraphFormat};
use subtile::params::{construct_hat_h, ParamReport};
use subtile::rational::Rational;
use subtile::report::kr_table;
use subtile::tiling::{
    find_perfect_subdivision_tiling, hat_tiling_complete_bipartite, obstruction_certificate, verify_tiling,
    TilingCertificate,
};
use subtile::Error;

#[derive(Parser)]
#[command(
    name = "subtile",
    version,
    about = "Exact computations for perfect subdivision tilings"
)]
struct Cli {
    /// Read graph files as graph6 instead of edge lists.
    #[arg(long, global = true)]
    graph6: bool,
    /// Search node budget per call (default: SUBTILE_BUDGET or 10^7).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Kr,
}

#[derive(Subcommand)]
enum Command {
    /// Threshold parameters of a pattern.
    Params {
        graph: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
    },
    /// Emit a gadget, or verify its properties.
    Gadget {
        graph: String,
        #[arg(long)]
        kind: String,
        #[arg(long)]
        verify: bool,
        /// With --verify, also print every certificate.
        #[arg(long)]
        certificates: bool,
    },
    /// Decide whether the host has a perfect tiling by subdivisions of the
    /// pattern; a found tiling is followed by its certificate.
    Tile { host: String, pattern: String },
    /// Re-check a tiling certificate file without searching.
    VerifyTiling {
        host: String,
        pattern: String,
        certificate: String,
    },
    /// Look for a ratio or divisibility obstruction.
    Obstruct { host: String, pattern: String },
    /// Build and verify a lower-bound construction.
    Extremal {
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        which: String,
        #[arg(long)]
        brute_force: bool,
    },
    /// The minimal unbalanced union of split subdivisions, optionally with
    /// the reservoir tiling of K_{x,y} for multipliers b >= a.
    Hat {
        pattern: String,
        #[arg(long, requires = "a")]
        b: Option<usize>,
        #[arg(long, requires = "b")]
        a: Option<usize>,
    },
    /// Exact and greedy domination with the logarithmic bound.
    Dominate { graph: String },
    /// Seeded disjoint family selection from a system file.
    Absorb {
        system: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        cap: usize,
    },
    /// Threshold table for a graph family.
    Report {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 8)]
        max: usize,
        #[arg(long, value_enum, default_value = "tsv")]
        format: TableFormat,
    },
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Check,
    Input(anyhow::Error),
    Budget(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::SearchBudgetExceeded { .. }) => Failure::Budget(e),
            _ => Failure::Input(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type CmdResult = Result<(), Failure>;

fn load_graph(arg: &str, graph6: bool) -> anyhow::Result<Graph> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let format = if graph6 {
            GraphFormat::Graph6
        } else {
            GraphFormat::EdgeList
        };
        return parse_graph_as(&text, format).with_context(|| format!("parsing {arg}"));
    }
    build(arg).map_err(|e| anyhow!("{arg}: no such file, and not a construction ({e})"))
}

fn read(path: &str) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

fn check(ok: bool) -> CmdResult {
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cli: Cli) -> CmdResult {
    let limits = cli
        .budget
        .map(SearchLimits::with_budget)
        .unwrap_or_else(SearchLimits::from_env);
    let g6 = cli.graph6;
    match cli.command {
        Command::Params { graph, format } => {
            let h = load_graph(&graph, g6)?;
            let r = ParamReport::compute(&h)?;
            match format {
                TextOrJson::Text => print!("{}", r.to_text()),
                TextOrJson::Json => println!("{}", r.to_json()),
            }
            Ok(())
        }
        Command::Gadget {
            graph,
            kind,
            verify,
            certificates,
        } => {
            let h = load_graph(&graph, g6)?;
            let kind: GadgetKind = kind.parse()?;
            if !verify {
                print!("{}", build_gadget(&h, kind)?.to_text());
                return Ok(());
            }
            let r = verify_gadget(&h, kind, limits)?;
            print!("{}", r.to_text());
            if certificates {
                print_evidence(&r.properties, &h);
            }
            if r.properties.iter().any(|p| p.outcome == Outcome::Undecided) {
                return Err(Failure::Budget(anyhow!("search budget exceeded")));
            }
            check(r.all_pass() && r.revalidate(&h))
        }
        Command::Tile { host, pattern } => {
            let g = load_graph(&host, g6)?;
            let h = load_graph(&pattern, g6)?;
            match find_perfect_subdivision_tiling(&g, &h, limits)? {
                Some(c) => {
                    println!("TILING FOUND ({} blocks)", c.blocks.len());
                    print!("{}", c.to_text(&h));
                }
                None => println!("NO TILING"),
            }
            Ok(())
        }
        Command::VerifyTiling {
            host,
            pattern,
            certificate,
        } => {
            let g = load_graph(&host, g6)?;
            let h = load_graph(&pattern, g6)?;
            let c = TilingCertificate::from_text(&read(&certificate)?)?;
            match verify_tiling(&g, &h, &c) {
                Ok(()) => {
                    println!("certificate: valid");
                    Ok(())
                }
                Err(e) => {
                    println!("certificate: invalid ({e})");
                    Err(Failure::Check)
                }
            }
        }
        Command::Obstruct { host, pattern } => {
            let g = load_graph(&host, g6)?;
            let h = load_graph(&pattern, g6)?;
            match obstruction_certificate(&g, &h)? {
                Some(o) => {
                    println!("obstruction: {}", o.summary());
                    print!("{}", o.to_text());
                }
                None => println!("obstruction: none found (inconclusive)"),
            }
            Ok(())
        }
        Command::Extremal {
            pattern,
            n,
            which,
            brute_force,
        } => {
            let h = load_graph(&pattern, g6)?;
            let which: Construction = which.parse()?;
            let inst = construct_extremal(&h, n, which)?;
            print!("{}", inst.to_text());
            let r = verify_extremal(&inst, &h, brute_force, limits)?;
            for line in r.to_text().lines() {
                println!("# {line}");
            }
            if r.brute_force == subtile::extremal::BruteForce::BudgetExceeded {
                return Err(Failure::Budget(anyhow!("search budget exceeded")));
            }
            check(r.passed())
        }
        Command::Hat { pattern, b, a } => {
            let h = load_graph(&pattern, g6)?;
            let hat = construct_hat_h(&h)?;
            println!(
                "parts {} {} imbalance {}",
                hat.small_side,
                hat.small_side + hat.imbalance,
                hat.imbalance
            );
            for e in &hat.recipe {
                let subset: Vec<String> = e.subset.iter().map(|v| v.to_string()).collect();
                println!(
                    "recipe {} x [{}] sign {:+}",
                    e.multiplicity,
                    subset.join(" "),
                    e.sign
                );
            }
            print!("{}", hat.graph.to_edge_list());
            if let (Some(b), Some(a)) = (b, a) {
                let t = hat_tiling_complete_bipartite(hat.small_side, hat.imbalance, b, a, &hat)?;
                let ok = verify_tiling(&t.host, &h, &t.certificate).is_ok();
                println!(
                    "reservoir K({},{}) blocks {} {}",
                    t.x,
                    t.y,
                    t.certificate.blocks.len(),
                    if ok { "valid" } else { "INVALID" }
                );
                return check(ok);
            }
            Ok(())
        }
        Command::Dominate { graph } => {
            let g = load_graph(&graph, g6)?;
            let r = domination(&g, limits)?;
            print!("{}", r.to_text());
            match r.bound_holds() {
                Some(b) => check(b),
                None => Err(Failure::Budget(anyhow!("search budget exceeded"))),
            }
        }
        Command::Absorb { system, p, seed, cap } => {
            let sys = System::from_text(&read(&system)?)?;
            let p: Rational = p.parse().map_err(|e: String| anyhow!(e))?;
            let sel = select_family(&sys, p, cap, seed)?;
            print!("{}", sel.to_text());
            let r = verify_family(&sys, &sel);
            for line in r.to_text().lines() {
                println!("# {line}");
            }
            check(r.passed())
        }
        Command::Report { family, max, format } => {
            let Family::Kr = family;
            let t = kr_table(max)?;
            match format {
                TableFormat::Tsv => print!("{}", t.to_tsv()),
                TableFormat::Json => println!("{}", t.to_json()),
            }
            check(t.all_match())
        }
    }
}

fn print_evidence(props: &[subtile::gadgets::PropertyCheck], h: &Graph) {
    for p in props {
        let Outcome::Pass(e) = &p.outcome else {
            continue;
        };
        println!("## {}", p.name);
        match e {
            Evidence::Subdivision { domain, certificate } => {
                println!("domain {domain:?}");
                print!("{}", certificate.to_text(h));
            }
            Evidence::Tiling { certificate, .. } => print!("{}", certificate.to_text(h)),
            Evidence::Bipartite(b) => println!("sides {:?} {:?}", b.side_a, b.side_b),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
