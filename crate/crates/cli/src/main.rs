//! Command-line front end: build and export the counterexample graphs,
//! run the exact solvers and the fractional LP, execute the full
//! verification pipeline, and emit JSON reports.
//!
//! Exit codes: 0 success/pass, 1 a check failed (report still written),
//! 2 usage or I/O error, 3 unknown (a budget ran out).

use clap::{Parser, Subcommand, ValueEnum};
use hedet_core::counterexample::{self, HGraph, Instance, Params};
use hedet_core::fractional::{self, ChiFOutcome};
use hedet_core::graph::{self, Graph};
use hedet_core::simplex::rat_string;
use hedet_core::solvers::{self, ChromaticResult, CountResult};
use hedet_core::verifier::{self, CheckMode, CheckStatus, VerifyOptions};
use hedet_core::{cnf, dimacs};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hedet",
    version,
    about = "Constructs and mechanically verifies small counterexamples to Hedetniemi's conjecture"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Bruteforce,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Artifact {
    G,
    H,
    Product,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full verification pipeline on a seed graph.
    Verify {
        /// Built-in seed (c5, c7, petersen, groetzsch) or file:<path>
        #[arg(long)]
        seed: String,
        #[arg(long)]
        q: usize,
        /// Colour count; defaults to 3q+2 (3q+3 and 3q+4 are experimental)
        #[arg(long)]
        c: Option<u32>,
        #[arg(long, value_enum, default_value = "structured")]
        mode: ModeArg,
        /// Worker threads for the embedding scan (default: all cores)
        #[arg(long)]
        workers: Option<usize>,
        /// Node budget for the exhaustive searches
        #[arg(long)]
        budget: Option<u64>,
        /// Trusted upper bound on alpha(F) for the chromatic certificate
        #[arg(long)]
        alpha: Option<u32>,
        /// Write the JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Emit G, H, or G x H in DIMACS .col format.
    Build {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        c: Option<u32>,
        #[arg(long, value_enum)]
        what: Artifact,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit every H-vertex's colour function (header line, then colours).
    Maps {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        c: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact chromatic number of a seed graph.
    Chi {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Exact independence number of a seed graph.
    Alpha {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Odd girth of a seed graph.
    Oddgirth {
        #[arg(long)]
        seed: String,
    },
    /// Exact fractional chromatic number (prints num/den).
    Chif {
        #[arg(long)]
        seed: String,
    },
    /// Generalized Mycielski chain over a seed graph.
    Mycielski {
        #[arg(long)]
        seed: String,
        /// Comma-separated chain, e.g. 3,3,3,3
        #[arg(long)]
        chain: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the chi(H) <= c feasibility instance as DIMACS CNF.
    Cnf {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        c: Option<u32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Vertex counts of G and H for given p, q (and optional c).
    Sizes {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        c: Option<u64>,
    },
}

fn load_seed(spec: &str) -> Result<Graph, String> {
    match spec {
        "c5" => Ok(graph::cycle(5).unwrap()),
        "c7" => Ok(graph::cycle(7).unwrap()),
        "petersen" => Ok(graph::petersen()),
        "groetzsch" => Ok(graph::groetzsch()),
        other => {
            if let Some(path) = other.strip_prefix("file:") {
                dimacs::read_path(path).map_err(|e| format!("{path}: {e}"))
            } else {
                Err(format!(
                    "unknown seed `{other}` (expected c5, c7, petersen, groetzsch, or file:<path>)"
                ))
            }
        }
    }
}

fn validated(seed: &str, q: usize, c: Option<u32>) -> Result<Params, String> {
    let f = load_seed(seed)?;
    Params::validate(f, q, c).map_err(|errs| {
        errs.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; ")
    })
}

fn write_out(path: &PathBuf, content: &[u8]) -> Result<(), String> {
    std::fs::write(path, content).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Verify {
            seed,
            q,
            c,
            mode,
            workers,
            budget,
            alpha,
            report,
        } => {
            let params = validated(&seed, q, c)?;
            let mut opts = VerifyOptions {
                mode: match mode {
                    ModeArg::Bruteforce => CheckMode::Bruteforce,
                    ModeArg::Structured => CheckMode::Structured,
                },
                workers,
                alpha_claim: alpha,
                ..VerifyOptions::default()
            };
            if let Some(b) = budget {
                opts.extend_budget = b;
                opts.alpha_budget = b;
            }
            let rep = verifier::full_verify(params, &opts);
            for check in &rep.checks {
                let status = match check.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Unknown => "unknown",
                };
                println!("{:<18} {} ({} ms)", check.name, status, check.millis);
            }
            println!("verdict: {}", rep.verdict);
            if let Some(path) = report {
                write_out(&path, rep.to_json().as_bytes())?;
            }
            Ok(ExitCode::from(if rep.any_failed() {
                EXIT_CHECK_FAILED
            } else if rep.any_unknown() {
                EXIT_UNKNOWN
            } else {
                EXIT_OK
            }))
        }
        Cmd::Build { seed, q, c, what, out } => {
            let params = validated(&seed, q, c)?;
            let g = match what {
                Artifact::G => counterexample::build_g(&params),
                Artifact::H => counterexample::build_h(&params).graph,
                Artifact::Product => {
                    let g = counterexample::build_g(&params);
                    let h = counterexample::build_h(&params);
                    let vertices = g.n() * h.graph.n();
                    if vertices > 100_000 {
                        return Err(format!(
                            "G x H would have {vertices} vertices; dense \
                             materialization is capped at 100000"
                        ));
                    }
                    graph::tensor_product(&g, &h.graph)
                }
            };
            write_out(&out, dimacs::to_string(&g).as_bytes())?;
            println!("{} vertices, {} edges -> {}", g.n(), g.num_edges(), out.display());
            Ok(ExitCode::from(EXIT_OK))
        }
        Cmd::Maps { seed, q, c, out } => {
            let params = validated(&seed, q, c)?;
            let h = counterexample::build_h(&params);
            let inst = Instance::new(params);
            match out {
                Some(path) => {
                    let file = std::fs::File::create(&path)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    let mut w = std::io::BufWriter::new(file);
                    write_maps(&inst, &h, &mut w).map_err(|e| e.to_string())?;
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut w = std::io::BufWriter::new(stdout.lock());
                    write_maps(&inst, &h, &mut w).map_err(|e| e.to_string())?;
                }
            }
            Ok(ExitCode::from(EXIT_OK))
        }
        Cmd::Chi { seed, budget } => {
            let g = load_seed(&seed)?;
            match solvers::chromatic_number(&g, budget.unwrap_or(100_000_000))
                .map_err(|e| e.to_string())?
            {
                ChromaticResult::Exact { chi, .. } => {
                    println!("{chi}");
                    Ok(ExitCode::from(EXIT_OK))
                }
                ChromaticResult::Unknown { lower, upper } => {
                    println!("unknown, bounds [{lower}, {upper}]");
                    Ok(ExitCode::from(EXIT_UNKNOWN))
                }
            }
        }
        Cmd::Alpha { seed, budget } => {
            let g = load_seed(&seed)?;
            match solvers::independence_number(&g, budget.unwrap_or(100_000_000))
                .map_err(|e| e.to_string())?
            {
                CountResult::Exact { value, .. } => {
                    println!("{value}");
                    Ok(ExitCode::from(EXIT_OK))
                }
                CountResult::Unknown { lower, upper } => {
                    println!("unknown, bounds [{lower}, {upper}]");
                    Ok(ExitCode::from(EXIT_UNKNOWN))
                }
            }
        }
        Cmd::Oddgirth { seed } => {
            let g = load_seed(&seed)?;
            match g.odd_girth().map_err(|e| e.to_string())? {
                Some(og) => println!("{og}"),
                None => println!("none"),
            }
            Ok(ExitCode::from(EXIT_OK))
        }
        Cmd::Chif { seed } => {
            let g = load_seed(&seed)?;
            match fractional::chi_f_exact(&g).map_err(|e| e.to_string())? {
                ChiFOutcome::Exact(cert) => {
                    println!("{}", rat_string(&cert.value));
                    Ok(ExitCode::from(EXIT_OK))
                }
                ChiFOutcome::Bounds { lower, upper } => {
                    println!(
                        "unknown, bounds [{}, {}]",
                        rat_string(&lower),
                        rat_string(&upper)
                    );
                    Ok(ExitCode::from(EXIT_UNKNOWN))
                }
            }
        }
        Cmd::Mycielski { seed, chain, out } => {
            let g = load_seed(&seed)?;
            let rs: Vec<usize> = chain
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.trim().parse().map_err(|_| format!("bad chain entry `{s}`")))
                .collect::<Result<_, _>>()?;
            let m = graph::mycielski_chain(&g, &rs).map_err(|e| e.to_string())?;
            let og = m.odd_girth().map_err(|e| e.to_string())?;
            println!(
                "{} vertices, {} edges, odd girth {}",
                m.n(),
                m.num_edges(),
                og.map_or("none".to_string(), |v| v.to_string())
            );
            if let Some(path) = out {
                write_out(&path, dimacs::to_string(&m).as_bytes())?;
            }
            Ok(ExitCode::from(EXIT_OK))
        }
        Cmd::Cnf { seed, q, c, out } => {
            let params = validated(&seed, q, c)?;
            let h = counterexample::build_h(&params);
            let mut buf = Vec::new();
            cnf::write_h_feasibility_cnf(&h, params.c(), &mut buf)
                .map_err(|e| e.to_string())?;
            write_out(&out, &buf)?;
            println!(
                "{} vertices, {} clauses -> {}",
                h.graph.n(),
                h.graph.num_edges() * params.c() as usize + h.graph.n() + params.c() as usize,
                out.display()
            );
            Ok(ExitCode::from(EXIT_OK))
        }
        Cmd::Sizes { p, q, c } => {
            let c = c.unwrap_or(3 * q + 2);
            println!("G: {}", p * q);
            println!("H: {}", counterexample::h_vertex_count(p, q, c));
            Ok(ExitCode::from(EXIT_OK))
        }
    }
}

fn write_maps<W: std::io::Write>(
    inst: &Instance,
    h: &HGraph,
    w: &mut W,
) -> std::io::Result<()> {
    let c = inst.params().c();
    for y in h.vertices() {
        writeln!(w, "# {y}")?;
        let f = hedet_core::exponential::ColorFunction::new(inst.color_function(y), c)
            .expect("vertex maps stay within [c]");
        writeln!(w, "{}", f.to_line())?;
    }
    w.flush()
}
