//! Command-line entry point: detection, solving, kernelization, hardness
//! instance generation, and certificate verification.
//!
//! Exit codes: 0 = YES/success, 1 = NO, 2 = input or usage error,
//! 3 = search budget exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use clawsplit::degree4::solve_deg4;
use clawsplit::detect::find_centers;
use clawsplit::exact::{
    solve_exact_branching, solve_exact_sequential, verify_solution, Certificate, OracleError,
};
use clawsplit::gen::{gen_random_gnp, gen_random_max_degree};
use clawsplit::graph::{parse_graph, parse_labels, serialize_graph, serialize_labels, to_dot, Graph};
use clawsplit::kernel::{kernelize, KernelMode, KernelVerdict};
use clawsplit::reduce::{
    brute_force_min_hitting_set, parse_hs, reduce_hs_to_split,
};
use clawsplit::split::{parse_plan, parse_trace, serialize_plan, serialize_trace, SplitMode};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "clawsplit",
    about = "Vertex splitting into K_{1,c}-free graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Deg4,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exclusive,
    Inclusive,
}

impl From<ModeArg> for SplitMode {
    fn from(m: ModeArg) -> SplitMode {
        match m {
            ModeArg::Exclusive => SplitMode::Exclusive,
            ModeArg::Inclusive => SplitMode::Inclusive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelModeArg {
    PaperStrict,
    Verified,
}

impl From<KernelModeArg> for KernelMode {
    fn from(m: KernelModeArg) -> KernelMode {
        match m {
            KernelModeArg::PaperStrict => KernelMode::PaperStrict,
            KernelModeArg::Verified => KernelMode::Verified,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CertKind {
    Plan,
    Trace,
}

#[derive(Subcommand)]
enum Command {
    /// List K_{1,c} centers, one per line.
    Detect {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        c: usize,
        /// Also print one independent witness per center: "v: a,b,c".
        #[arg(long)]
        witnesses: bool,
    },
    /// Solve with the degree-4 algorithm or the exact search.
    Solve {
        #[arg(long)]
        algo: Algo,
        #[arg(long)]
        input: PathBuf,
        /// Split budget; required for --algo exact.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 3)]
        c: usize,
        #[arg(long, value_enum, default_value = "exclusive")]
        mode: ModeArg,
        /// Write the certificate (plan, or trace in inclusive mode) here.
        #[arg(long)]
        plan_out: Option<PathBuf>,
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Reduce an instance with rules 0-3; writes the kernel and rule trace.
    Kernelize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        c: usize,
        #[arg(long, value_enum, default_value = "verified")]
        mode: KernelModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Kernelize, then run the exact solver on the kernel.
    Pipeline {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        c: usize,
        #[arg(long, value_enum, default_value = "verified")]
        mode: KernelModeArg,
        /// Write the kernel graph here (the certificate refers to it).
        #[arg(long)]
        kernel_out: Option<PathBuf>,
        #[arg(long)]
        plan_out: Option<PathBuf>,
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Build the splitting instance from a hitting-set instance.
    Reduce {
        #[arg(long)]
        hs: PathBuf,
        #[arg(long, default_value_t = 3)]
        c: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Print the minimum hitting-set size of an instance.
    HsOracle {
        #[arg(long)]
        hs: PathBuf,
    },
    /// Generate a seeded random graph.
    Gen {
        #[arg(long)]
        n: usize,
        /// Edge probability (G(n, p) mode unless --max-degree is given).
        #[arg(long)]
        p: Option<f64>,
        /// Degree-capped mode: reject edges that would exceed the cap.
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against a graph and budget.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        c: usize,
        #[arg(long, value_enum, default_value = "exclusive")]
        mode: ModeArg,
        /// Certificate kind; default inferred from the file extension.
        #[arg(long, value_enum)]
        kind: Option<CertKind>,
    },
    /// Export a graph (with optional labels) as DOT.
    ExportDot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn read_to_string(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    let text = read_to_string(path)?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => fail(msg),
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Detect { input, c, witnesses } => {
            if c < 3 {
                return Err(format!("--c must be at least 3, got {c}"));
            }
            let g = load_graph(&input)?;
            let report = find_centers(&g, c);
            let mut out = String::new();
            for v in &report.centers {
                if witnesses {
                    let w: Vec<String> =
                        report.witness[v].iter().map(|u| u.to_string()).collect();
                    let _ = writeln!(out, "{v}: {}", w.join(","));
                } else {
                    let _ = writeln!(out, "{v}");
                }
            }
            print!("{out}");
            Ok(EXIT_YES)
        }
        Command::Solve {
            algo,
            input,
            k,
            c,
            mode,
            plan_out,
            node_budget,
        } => {
            let g = load_graph(&input)?;
            match algo {
                Algo::Deg4 => {
                    if c != 3 {
                        return Err(format!(
                            "--algo deg4 solves the claw case only (c = 3), got --c {c}"
                        ));
                    }
                    let sol = solve_deg4(&g).map_err(|e| e.to_string())?;
                    let cost = sol.plan.cost();
                    if let Some(k) = k {
                        if cost > k {
                            println!("NO optimum={cost}");
                            return Ok(EXIT_NO);
                        }
                    }
                    println!("YES cost={cost}");
                    if !sol.fallback_vertices.is_empty() {
                        let ids: Vec<String> = sol
                            .fallback_vertices
                            .iter()
                            .map(|v| v.to_string())
                            .collect();
                        println!("fallback={}", ids.join(","));
                    }
                    write_output(plan_out.as_deref(), &serialize_plan(&sol.plan))?;
                    Ok(EXIT_YES)
                }
                Algo::Exact => {
                    let k = k.ok_or("--algo exact requires --k")?;
                    if c < 3 {
                        return Err(format!("--c must be at least 3, got {c}"));
                    }
                    match SplitMode::from(mode) {
                        SplitMode::Exclusive => {
                            match solve_exact_branching(&g, k, c, node_budget) {
                                Ok(Some(plan)) => {
                                    println!("YES cost={}", plan.cost());
                                    write_output(plan_out.as_deref(), &serialize_plan(&plan))?;
                                    Ok(EXIT_YES)
                                }
                                Ok(None) => {
                                    println!("NO");
                                    Ok(EXIT_NO)
                                }
                                Err(OracleError::BudgetExceeded) => {
                                    println!("UNKNOWN(budget)");
                                    Ok(EXIT_BUDGET)
                                }
                                Err(e) => Err(e.to_string()),
                            }
                        }
                        SplitMode::Inclusive => {
                            match solve_exact_sequential(&g, k, c, SplitMode::Inclusive) {
                                Ok(Some(trace)) => {
                                    println!("YES cost={}", trace.len());
                                    write_output(plan_out.as_deref(), &serialize_trace(&trace))?;
                                    Ok(EXIT_YES)
                                }
                                Ok(None) => {
                                    println!("NO");
                                    Ok(EXIT_NO)
                                }
                                Err(e) => Err(e.to_string()),
                            }
                        }
                    }
                }
            }
        }
        Command::Kernelize {
            input,
            k,
            c,
            mode,
            out,
            trace,
        } => {
            if c < 3 {
                return Err(format!("--c must be at least 3, got {c}"));
            }
            let g = load_graph(&input)?;
            let outcome = kernelize(&g, k, c, mode.into());
            let mut log = String::new();
            for event in &outcome.fired {
                let _ = writeln!(log, "{}", event.trace_line());
            }
            if let Some(path) = trace {
                fs::write(&path, &log)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            } else {
                eprint!("{log}");
            }
            match outcome.verdict {
                KernelVerdict::NoInstance => {
                    println!("NO");
                    Ok(EXIT_NO)
                }
                KernelVerdict::Reduced => {
                    println!(
                        "REDUCED n={} m={}",
                        outcome.graph.n(),
                        outcome.graph.edge_count()
                    );
                    write_output(out.as_deref(), &serialize_graph(&outcome.graph))?;
                    Ok(EXIT_YES)
                }
            }
        }
        Command::Pipeline {
            input,
            k,
            c,
            mode,
            kernel_out,
            plan_out,
            node_budget,
        } => {
            if c < 3 {
                return Err(format!("--c must be at least 3, got {c}"));
            }
            let g = load_graph(&input)?;
            let outcome = kernelize(&g, k, c, mode.into());
            if outcome.verdict == KernelVerdict::NoInstance {
                println!("NO");
                return Ok(EXIT_NO);
            }
            if let Some(path) = &kernel_out {
                fs::write(path, serialize_graph(&outcome.graph))
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            match solve_exact_branching(&outcome.graph, k, c, node_budget) {
                Ok(Some(plan)) => {
                    println!("YES cost={}", plan.cost());
                    write_output(plan_out.as_deref(), &serialize_plan(&plan))?;
                    Ok(EXIT_YES)
                }
                Ok(None) => {
                    println!("NO");
                    Ok(EXIT_NO)
                }
                Err(OracleError::BudgetExceeded) => {
                    println!("UNKNOWN(budget)");
                    Ok(EXIT_BUDGET)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Reduce { hs, c, out, labels } => {
            if c < 3 {
                return Err(format!("--c must be at least 3, got {c}"));
            }
            let text = read_to_string(&hs)?;
            let inst = parse_hs(&text).map_err(|e| format!("{}: {e}", hs.display()))?;
            let reduced = reduce_hs_to_split(&inst, c).map_err(|e| e.to_string())?;
            fs::write(&out, serialize_graph(&reduced.graph))
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            if let Some(path) = labels {
                fs::write(&path, serialize_labels(&reduced.graph))
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            println!(
                "n={} m={} budget={}",
                reduced.graph.n(),
                reduced.graph.edge_count(),
                reduced.budget
            );
            Ok(EXIT_YES)
        }
        Command::HsOracle { hs } => {
            let text = read_to_string(&hs)?;
            let inst = parse_hs(&text).map_err(|e| format!("{}: {e}", hs.display()))?;
            let min = brute_force_min_hitting_set(&inst).map_err(|e| e.to_string())?;
            println!("{min}");
            Ok(EXIT_YES)
        }
        Command::Gen {
            n,
            p,
            max_degree,
            seed,
            out,
        } => {
            let g = match (max_degree, p) {
                (Some(d), p) => {
                    gen_random_max_degree(n, d, p.unwrap_or(0.5), seed).map_err(|e| e.to_string())?
                }
                (None, Some(p)) => gen_random_gnp(n, p, seed).map_err(|e| e.to_string())?,
                (None, None) => return Err("--gen needs --p or --max-degree".to_string()),
            };
            write_output(out.as_deref(), &serialize_graph(&g))?;
            Ok(EXIT_YES)
        }
        Command::Verify {
            input,
            certificate,
            k,
            c,
            mode,
            kind,
        } => {
            if c < 3 {
                return Err(format!("--c must be at least 3, got {c}"));
            }
            let g = load_graph(&input)?;
            let text = read_to_string(&certificate)?;
            let kind = kind.unwrap_or_else(|| {
                match certificate.extension().and_then(|e| e.to_str()) {
                    Some("trace") => CertKind::Trace,
                    _ => CertKind::Plan,
                }
            });
            let cert = match kind {
                CertKind::Plan => Certificate::Plan(
                    parse_plan(&text).map_err(|e| format!("{}: {e}", certificate.display()))?,
                ),
                CertKind::Trace => Certificate::Trace(
                    parse_trace(&text).map_err(|e| format!("{}: {e}", certificate.display()))?,
                ),
            };
            match verify_solution(&g, &cert, k, c, mode.into()) {
                Ok(true) => {
                    println!("VALID");
                    Ok(EXIT_YES)
                }
                Ok(false) => {
                    println!("INVALID");
                    Ok(EXIT_NO)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::ExportDot { input, labels, out } => {
            let mut g = load_graph(&input)?;
            if let Some(path) = labels {
                let text = read_to_string(&path)?;
                parse_labels(&mut g, &text).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            write_output(out.as_deref(), &to_dot(&g))?;
            Ok(EXIT_YES)
        }
    }
}
