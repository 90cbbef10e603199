use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use sickit::codes::{admits, locate, twin_scan, verify_code, violations_to_jsonl, LocateResult};
use sickit::graph::{from_json, generate, Family};
use sickit::graph6::{parse_corpus, parse_graph6};
use sickit::grids::{ascii_tiling, min_torus_density, scan_min_density, tiling_json};
use sickit::reduction::{parse_dimacs_cnf, reduce_3sat, reduction_selfcheck};
use sickit::solver::{count_min_solutions, solve_min_with, DEFAULT_MAX_NODES};
use sickit::sweep::{aggregate, details_jsonl, enumerate_cubic, sweep_details, SweepRow};
use sickit::{CodeSpec, Error, Graph, GridFamily, SolveBudget, SolveStatus, TorusSpec, VertexSet};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "sickit", version, about = "Self-identifying codes and related identifying codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GraphArg {
    /// Generator name (petersen, hypercube:4, torus:kng:6x6, cp:cycle:6,path:2, ...),
    /// a graph6 string, or a .g6/.json file.
    #[arg(long, short)]
    graph: String,
}

#[derive(Args)]
struct Common {
    /// Code variant: ic, sic, red:ic, det:ic, err:ic.
    #[arg(long, default_value = "sic")]
    code: CodeSpec,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BudgetArgs {
    /// Wall-clock limit per solve, in seconds.
    #[arg(long, default_value_t = 60)]
    time_limit: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a detector set against a code variant.
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        /// Comma-separated detector indices.
        #[arg(long)]
        set: String,
        #[command(flatten)]
        common: Common,
    },
    /// Whether the graph admits any code of the variant.
    Exists {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        common: Common,
    },
    /// Exact minimum code.
    Solve {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Identify the faulty vertex from a set of alarming detectors.
    Locate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        set: String,
        #[arg(long)]
        alarms: String,
        #[arg(long)]
        json: bool,
    },
    /// Build the SIC instance for a 3-CNF formula.
    Reduce {
        #[arg(long)]
        cnf: PathBuf,
        /// graph6 output; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON sidecar with K and the literal/clause vertex maps.
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Compare brute-force satisfiability with the SIC decision on the reduction.
    Selfcheck {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 300)]
        time_limit: u64,
    },
    /// Minimum SIC density on a torus, or a scan up to --scan.
    Torus {
        #[arg(long)]
        family: GridFamily,
        /// Dimensions as MxN.
        #[arg(long, conflicts_with = "scan", required_unless_present = "scan")]
        dims: Option<String>,
        /// Largest side length to scan.
        #[arg(long)]
        scan: Option<usize>,
        /// Print the witness tiling.
        #[arg(long)]
        ascii: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 600)]
        time_limit: u64,
    },
    /// Per-order summary over connected cubic graphs or a graph6 corpus.
    Sweep {
        /// Order of the cubic graphs to enumerate.
        #[arg(long, conflicts_with = "corpus", required_unless_present = "corpus")]
        cubic: Option<usize>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value = "sic")]
        code: CodeSpec,
        /// Per-graph JSONL output.
        #[arg(long)]
        details: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Minimum SIC on the hypercube Q_d, with the number of optimal classes.
    Hypercube {
        #[arg(long)]
        dim: usize,
        /// Also count optimal codes up to automorphism.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

fn budget(time_limit: u64) -> Result<SolveBudget, Error> {
    let nodes = match std::env::var("SICKIT_BUDGET_NODES") {
        Ok(v) => v.parse().map_err(|_| Error::Parse(format!("SICKIT_BUDGET_NODES={v:?} is not a count")))?,
        Err(_) => DEFAULT_MAX_NODES,
    };
    SolveBudget::new(nodes, Duration::from_secs(time_limit))
}

fn load_graph(arg: &str) -> Result<Graph, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        return if path.extension().is_some_and(|e| e == "json") {
            from_json(&text)
        } else {
            let mut graphs = parse_corpus(&text)?;
            match graphs.len() {
                1 => Ok(graphs.pop().unwrap()),
                k => Err(Error::Parse(format!("{arg}: expected one graph, found {k}"))),
            }
        };
    }
    match arg.parse::<Family>() {
        Ok(f) => generate(&f),
        Err(e) => parse_graph6(arg).map_err(|_| e),
    }
}

fn parse_set(n: usize, text: &str) -> Result<VertexSet, Error> {
    let mut s = VertexSet::empty(n);
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().map_err(|_| Error::Parse(format!("bad vertex {tok:?}")))?;
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        s.insert(v);
    }
    Ok(s)
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn status_code(status: &SolveStatus) -> u8 {
    match status {
        SolveStatus::Optimal { .. } => EXIT_OK,
        SolveStatus::Infeasible => EXIT_NEGATIVE,
        SolveStatus::BudgetExceeded { .. } => EXIT_BUDGET,
    }
}

fn run(cmd: Cmd) -> Result<u8, Error> {
    match cmd {
        Cmd::Verify { graph, set, common } => {
            let g = load_graph(&graph.graph)?;
            let s = parse_set(g.n(), &set)?;
            let violations = verify_code(&g, &s, &common.code);
            if common.json {
                let recs: Vec<_> = violations.iter().map(|v| v.record()).collect();
                println!("{}", json!({"valid": violations.is_empty(), "size": s.len(), "violations": recs}));
            } else if violations.is_empty() {
                println!("valid {} of size {}", common.code, s.len());
            } else {
                println!("invalid: {} violations", violations.len());
                print!("{}", violations_to_jsonl(&violations));
            }
            Ok(if violations.is_empty() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Cmd::Exists { graph, common } => {
            let g = load_graph(&graph.graph)?;
            let ok = admits(&g, &common.code);
            if common.json {
                let t = twin_scan(&g);
                println!(
                    "{}",
                    json!({"admits": ok, "closed_twins": t.closed_twins, "semi_closed_twins": t.semi_closed_twins})
                );
            } else {
                println!("{}", if ok { "yes" } else { "no" });
            }
            Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Cmd::Solve { graph, common, budget: b } => {
            let g = load_graph(&graph.graph)?;
            let res = solve_min_with(&g, &common.code, budget(b.time_limit)?, b.workers);
            let report = res.report();
            if common.json {
                println!("{}", serde_json::to_string(&report).unwrap());
            } else {
                match &res.status {
                    SolveStatus::Optimal { size, witness } => println!("{size}\n{witness}"),
                    SolveStatus::Infeasible => println!("infeasible"),
                    SolveStatus::BudgetExceeded { best } => match best {
                        Some(w) => println!("budget exceeded; best {} {w}", w.len()),
                        None => println!("budget exceeded"),
                    },
                }
            }
            Ok(status_code(&res.status))
        }
        Cmd::Locate { graph, set, alarms, json } => {
            let g = load_graph(&graph.graph)?;
            let s = parse_set(g.n(), &set)?;
            let a = parse_set(g.n(), &alarms)?;
            let r = locate(&g, &s, &a)?;
            let (label, verts) = match &r {
                LocateResult::Located(v) => ("located", vec![*v]),
                LocateResult::Candidates(c) => ("ambiguous", c.to_vec()),
                LocateResult::Inconsistent => ("inconsistent", vec![]),
            };
            if json {
                println!("{}", json!({"result": label, "vertices": verts}));
            } else {
                println!("{label} {verts:?}");
            }
            Ok(if matches!(r, LocateResult::Located(_)) { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Cmd::Reduce { cnf, out, meta } => {
            let phi = parse_dimacs_cnf(&read_file(&cnf)?)?;
            let inst = reduce_3sat(&phi);
            write_or_print(out.as_deref(), &format!("{}\n", inst.graph6()))?;
            if let Some(m) = meta {
                write_or_print(Some(&m), &serde_json::to_string_pretty(&inst.meta()).unwrap())?;
            }
            eprintln!("n={} m={} K={}", inst.graph.n(), inst.graph.num_edges(), inst.k);
            Ok(EXIT_OK)
        }
        Cmd::Selfcheck { cnf, json, time_limit } => {
            let phi = parse_dimacs_cnf(&read_file(&cnf)?)?;
            let r = reduction_selfcheck(&phi, budget(time_limit)?)?;
            if json {
                println!("{}", serde_json::to_string(&r).unwrap());
            } else {
                println!("sat={} sic<=K={} agree={} (K={})", r.sat_oracle, r.sic_leq_k, r.agree, r.k);
            }
            Ok(if r.agree { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Cmd::Torus { family, dims, scan, ascii, json, time_limit } => {
            let b = budget(time_limit)?;
            let reports = match (dims, scan) {
                (Some(d), _) => {
                    let (m, n) = d.split_once('x').ok_or_else(|| Error::Parse(format!("bad dims {d:?}")))?;
                    let parse = |t: &str| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad dims {d:?}")));
                    let spec = TorusSpec::new(family, parse(m)?, parse(n)?)?;
                    vec![min_torus_density(&spec, b)?]
                }
                (None, Some(max)) => scan_min_density(family, max, b, None).into_iter().filter_map(|e| e.report).collect(),
                (None, None) => unreachable!("clap requires one of --dims/--scan"),
            };
            for r in &reports {
                if json {
                    let mut v = serde_json::to_value(r).unwrap();
                    if ascii {
                        v["tiling"] = serde_json::to_value(tiling_json(&r.spec, &r.witness)).unwrap();
                    }
                    println!("{v}");
                } else {
                    println!("{} {}x{}: {} detectors, density {}", family, r.spec.m, r.spec.n, r.optimum_size, r.density);
                    if ascii {
                        print!("{}", ascii_tiling(&r.spec, &r.witness));
                    }
                }
            }
            Ok(if reports.is_empty() { EXIT_BUDGET } else { EXIT_OK })
        }
        Cmd::Sweep { cubic, corpus, code, details, budget: b } => {
            let graphs = match (cubic, corpus) {
                (Some(n), _) => enumerate_cubic(n)?,
                (None, Some(p)) => parse_corpus(&read_file(&p)?)?,
                (None, None) => unreachable!("clap requires one of --cubic/--corpus"),
            };
            let det = sweep_details(&graphs, &code, budget(b.time_limit)?, b.workers);
            if let Some(p) = details {
                write_or_print(Some(&p), &details_jsonl(&det))?;
            }
            let rows = aggregate(&det);
            println!("{}", SweepRow::CSV_HEADER);
            for r in &rows {
                println!("{}", r.csv_line());
            }
            Ok(if rows.iter().all(|r| r.complete) { EXIT_OK } else { EXIT_BUDGET })
        }
        Cmd::Hypercube { dim, count, json, budget: b } => {
            let g = sickit::graph::hypercube(dim)?;
            let bud = budget(b.time_limit)?;
            let res = solve_min_with(&g, &CodeSpec::SIC, bud, b.workers);
            let Some(size) = res.optimum() else {
                println!("budget exceeded");
                return Ok(status_code(&res.status));
            };
            let classes = if count { Some(count_min_solutions(&g, &CodeSpec::SIC, bud)?) } else { None };
            if json {
                println!(
                    "{}",
                    json!({
                        "dim": dim,
                        "sic": size,
                        "witness": res.witness().map(VertexSet::to_vec),
                        "labeled": classes.as_ref().map(|c| c.labeled),
                        "iso_classes": classes.as_ref().map(|c| c.iso_classes),
                    })
                );
            } else {
                println!("SIC(Q{dim}) = {size}");
                if let Some(c) = classes {
                    println!("optimal codes: {} labeled, {} up to automorphism", c.labeled, c.iso_classes);
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded => EXIT_BUDGET,
                Error::InvalidCode(_) | Error::NotInCode(_) | Error::EmptyAlarm => EXIT_NEGATIVE,
                _ => EXIT_USAGE,
            })
        }
    }
}
