//! Command-line driver: recognition checks, closures, colorings, curve
//! realizations, disjointness graphs, randomized constructions, oracles
//! and claim verification, over the `ograph 1` and `curves 1` formats.
//!
//! Exit codes are a stable contract: 0 pass, 1 semantic failure, 2 input
//! error, 3 oracle refusal.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use xcurve_core::coloring::{color_double_magical, color_semi_comparability, color_xmonotone};
use xcurve_core::construct::{construct, verify_claim, Claim, Variant};
use xcurve_core::error::Error;
use xcurve_core::format::{
    emit_coloring, emit_curves, emit_ograph, parse_curves, parse_ograph, parse_rational_str,
};
use xcurve_core::geom::disjointness_graph;
use xcurve_core::graph::{
    double_magical_violations, magical_closure, magical_violations, semi_comparability_violations,
    OrderIdx, OrderedGraph,
};
use xcurve_core::oracle;
use xcurve_core::realize::{realize_double_magical, realize_magical};
use xcurve_core::svg::emit_svg;

#[derive(Parser)]
#[command(name = "xcurve", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Semi,
    Magical,
    Double,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorAlgo {
    Semi,
    Double,
    Xmono,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stat {
    Omega,
    Chi,
    Alpha,
    Witness,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Grounded,
    Vertical,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    Matrix,
    Hole3d,
    Lex,
    #[value(name = "s_size")]
    SSize,
}

#[derive(Subcommand)]
enum Command {
    /// Check a recognition predicate; violators are printed on failure.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: CheckKind,
    },
    /// Compute the magical closure over (o1, o2).
    Close {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Color a graph or curve family and write the coloring file.
    Color {
        file: PathBuf,
        #[arg(long, value_enum)]
        algo: ColorAlgo,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Realize a graph as a curve family (witness search for single-ordered
    /// inputs) and verify the round trip.
    Realize {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Compute the disjointness graph of a curve family.
    Disjointness {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a randomized construction and print its report.
    Construct {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact brute-force statistics of a graph.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum)]
        stat: Stat,
    },
    /// Exhaustively verify a combinatorial claim.
    Verify {
        #[arg(long, value_enum)]
        claim: ClaimArg,
        #[arg(long)]
        k: u32,
    },
}

fn read_graph(path: &Path) -> Result<OrderedGraph, Error> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {}", path.display(), e)))?;
    parse_ograph(&text)
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => {
            fs::write(path, content).map_err(|e| Error::Input(format!("{}: {}", path.display(), e)))
        }
        None => {
            print!("{}", content);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Check { file, kind } => {
            let g = read_graph(&file)?;
            let failures: Vec<String> = match kind {
                CheckKind::Semi => semi_comparability_violations(&g)
                    .iter()
                    .map(|q| format!("violation: {} {} {} {}", q[0], q[1], q[2], q[3]))
                    .collect(),
                CheckKind::Magical => magical_violations(&g)?
                    .iter()
                    .map(|t| format!("violation: {} {} {}", t[0], t[1], t[2]))
                    .collect(),
                CheckKind::Double => double_magical_violations(&g)?
                    .iter()
                    .map(|(u, v)| format!("violation: missing edge {} {}", u, v))
                    .collect(),
            };
            if failures.is_empty() {
                println!("pass");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("fail ({} violations)", failures.len());
                for f in &failures {
                    println!("{}", f);
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Close { file, out } => {
            let g = read_graph(&file)?;
            let closed = magical_closure(&g)?;
            println!(
                "closure: {} edges ({} added)",
                closed.edge_count(),
                closed.edge_count() - g.edge_count()
            );
            write_or_print(&out, &emit_ograph(&closed))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Color { file, algo, out } => {
            let coloring = match algo {
                ColorAlgo::Semi => color_semi_comparability(&read_graph(&file)?)?,
                ColorAlgo::Double => color_double_magical(&read_graph(&file)?)?,
                ColorAlgo::Xmono => {
                    let text = fs::read_to_string(&file)
                        .map_err(|e| Error::Input(format!("{}: {}", file.display(), e)))?;
                    color_xmonotone(&parse_curves(&text)?)?
                }
            };
            println!(
                "palette: {} bound: {}",
                coloring.palette_size(),
                coloring.bound
            );
            write_or_print(&out, &emit_coloring(&coloring))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Realize { file, out, svg } => {
            let g = read_graph(&file)?;
            let (g, witnessed) = match g.num_orders() {
                1 => match oracle::witness_search(&g)? {
                    Some(o2) => {
                        let orders = vec![g.order(OrderIdx::O1)?.clone(), o2];
                        (OrderedGraph::new(g.n(), orders, &g.edges())?, true)
                    }
                    None => {
                        println!("no witness order exists; not realizable as given");
                        return Ok(ExitCode::from(1));
                    }
                },
                _ => (g, false),
            };
            let fam = match g.num_orders() {
                2 => realize_magical(&g)?,
                _ => realize_double_magical(&g)?,
            };
            if witnessed {
                println!("witness order found by exhaustive search");
            }
            let dg = disjointness_graph(&fam)?;
            let round_trip =
                dg.edges() == g.edges() && dg.order(OrderIdx::O1)? == g.order(OrderIdx::O1)?;
            println!("round-trip: {}", if round_trip { "ok" } else { "MISMATCH" });
            fs::write(&out, emit_curves(&fam))
                .map_err(|e| Error::Input(format!("{}: {}", out.display(), e)))?;
            if let Some(svg_path) = svg {
                fs::write(&svg_path, emit_svg(&fam, None))
                    .map_err(|e| Error::Input(format!("{}: {}", svg_path.display(), e)))?;
            }
            Ok(if round_trip {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Disjointness { file, out } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| Error::Input(format!("{}: {}", file.display(), e)))?;
            let fam = parse_curves(&text)?;
            let g = disjointness_graph(&fam)?;
            println!("vertices: {} edges: {}", g.n(), g.edge_count());
            write_or_print(&out, &emit_ograph(&g))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct {
            variant,
            k,
            n,
            p,
            seed,
            out,
        } => {
            let p = parse_rational_str(&p)?;
            let variant = match variant {
                VariantArg::Grounded => Variant::Grounded,
                VariantArg::Vertical => Variant::Vertical,
            };
            let (g, report) = construct(variant, k, n, &p, seed)?;
            print!("{}", report);
            fs::write(&out, emit_ograph(&g))
                .map_err(|e| Error::Input(format!("{}: {}", out.display(), e)))?;
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Oracle { file, stat } => {
            let g = read_graph(&file)?;
            match stat {
                Stat::Omega => println!("omega: {}", oracle::clique_number(&g)),
                Stat::Chi => println!("chi: {}", oracle::chromatic_number(&g)?),
                Stat::Alpha => println!("alpha: {}", oracle::independence_number(&g)),
                Stat::Witness => match oracle::witness_search(&g)? {
                    Some(o2) => {
                        let seq: Vec<String> =
                            o2.sequence().iter().map(|v| v.to_string()).collect();
                        println!("witness: {}", seq.join(" "));
                    }
                    None => println!("none"),
                },
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { claim, k } => {
            let claim = match claim {
                ClaimArg::Matrix => Claim::Matrix,
                ClaimArg::Hole3d => Claim::Hole3d,
                ClaimArg::Lex => Claim::Lex,
                ClaimArg::SSize => Claim::SSize,
            };
            let report = verify_claim(claim, k)?;
            print!("{}", report);
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e);
            ExitCode::from(match e {
                Error::Input(_) => 2,
                Error::Precondition(_) => 1,
                Error::Refused(_) => 3,
            })
        }
    }
}
