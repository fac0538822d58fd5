use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use col2_core::batch::{named_corpus, random_corpus, run_corpus};
use col2_core::constructive::{order_with, ConstructiveError, SolveOptions, Target, BACK_DEGREE};
use col2_core::discharging::{audit, Rule};
use col2_core::exact::{
    col2_exact_with_witness, prove_lower_bound, LowerBoundOutcome, DEFAULT_N_LIMIT,
};
use col2_core::generators::{kleetope, named, random_triangulation, Family};
use col2_core::heuristics::{greedy_backward, TieBreak};
use col2_core::io::{vertex_list, GraphFile, OrderingFile, Report};
use col2_core::ordering::{self, OrderingError};
use col2_core::PlaneGraph;

#[derive(Parser)]
#[command(
    name = "col2",
    version,
    about = "Two-coloring-number orderings of plane graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph file
    Gen {
        /// A named family (icosahedron, double_wheel:5, ...), `random`, or
        /// `kleetope:<family>`
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        flips: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build an ordering with back-degree at most 7
    Order {
        graph: PathBuf,
        /// Re-verify every intermediate ordering
        #[arg(long)]
        certify: bool,
        /// Write one line per reduction step to this file
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Where to write the failing target if the construction breaks
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Write the ordering file here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute col2 exactly by dynamic programming over vertex subsets
    Exact {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_N_LIMIT)]
        max_n: usize,
    },
    /// Greedy backward ordering
    Greedy {
        graph: PathBuf,
        /// Break ties with this seed instead of by smallest id
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an ordering against a back-degree bound
    Verify {
        graph: PathBuf,
        ordering: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Run the charge rules and report totals and violations
    Audit { graph: PathBuf },
    /// Search for an ordering with back-degree at most d
    LowerBound {
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        /// Time budget in seconds
        #[arg(long)]
        budget: f64,
    },
    /// Order and audit the built-in corpus
    Corpus {
        #[arg(long, default_value_t = 300)]
        count: usize,
        #[arg(long, default_value_t = 150)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "COL2_JOBS", default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        certify: bool,
    },
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn read_graph(path: &Path) -> Result<GraphFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    text.parse()
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn emit(report: &Report) {
    print!("{report}");
    let _ = std::io::stdout().flush();
}

fn generate(family: &str, n: Option<usize>, seed: u64, flips: usize) -> Result<GraphFile, Failure> {
    let bad = |e: col2_core::generators::GeneratorError| Failure {
        code: 2,
        message: e.to_string(),
    };
    let graph = if family == "random" {
        let n = n.ok_or(Failure {
            code: 2,
            message: "--family random needs --n".into(),
        })?;
        random_triangulation(n, seed, flips).map_err(bad)?
    } else if let Some(inner) = family.strip_prefix("kleetope:") {
        kleetope(&named(inner.parse::<Family>().map_err(bad)?).map_err(bad)?)
    } else {
        named(family.parse::<Family>().map_err(bad)?).map_err(bad)?
    };
    let mut file = GraphFile::new(graph);
    file.family = Some(family.to_string());
    if family == "random" {
        file.seed = Some(seed);
    }
    Ok(file)
}

fn cmd_gen(
    family: &str,
    n: Option<usize>,
    seed: u64,
    flips: usize,
    out: Option<&Path>,
) -> CmdResult {
    let file = generate(family, n, seed, flips)?;
    let text = file.to_string();
    match out {
        Some(p) => write_text(p, &text)?,
        None => print!("{text}"),
    }
    eprintln!(
        "generated {family}: {} vertices, {} edges",
        file.graph.vertex_count(),
        file.graph.edge_count()
    );
    Ok(0)
}

fn dump_target(err: &ConstructiveError, dump: Option<&Path>) -> Result<(), Failure> {
    if let (Some(t), Some(p)) = (err.falsification_target(), dump) {
        let mut f = GraphFile::new(t.g.clone());
        f.k = t.k.clone();
        f.c = t.c.clone();
        write_text(p, &f.to_string())?;
        eprintln!("failing target written to {}", p.display());
    }
    Ok(())
}

fn cmd_order(
    graph: &Path,
    certify: bool,
    trace: Option<&Path>,
    dump: Option<&Path>,
    out: Option<&Path>,
) -> CmdResult {
    let file = read_graph(graph)?;
    let opts = SolveOptions {
        certify,
        trace: trace.is_some(),
    };
    let sol = match order_with(&file.graph, &file.k, &file.c, opts) {
        Ok(s) => s,
        Err(e) if e.falsification_target().is_some() => {
            dump_target(&e, dump)?;
            emit(
                &Report::new()
                    .field("status", "falsification")
                    .field("error", &e)
                    .summary(format!("falsification: {e}")),
            );
            return Err(Failure {
                code: 2,
                message: e.to_string(),
            });
        }
        Err(e) => return Err(Failure::invalid(e.to_string())),
    };
    if let Some(p) = trace {
        let lines: String = sol.trace.iter().map(|e| format!("{e}\n")).collect();
        write_text(p, &lines)?;
    }
    let ord_file = OrderingFile {
        d: Some(BACK_DEGREE),
        order: sol.ordering.clone(),
    };
    if let Some(p) = out {
        write_text(p, &ord_file.to_string())?;
    }
    let mb = sol.profile.max_back;
    let report = Report::new()
        .field("status", "ok")
        .field("n", file.graph.vertex_count())
        .field("m", file.graph.edge_count())
        .field("max_back", mb)
        .field("col2_upper", mb + 1)
        .field("steps", sol.steps)
        .field("certified", certify)
        .field("order", vertex_list(sol.ordering.as_slice()))
        .summary(format!(
            "ordering with max back-set {mb}, so col2 <= {}",
            mb + 1
        ));
    emit(&report);
    eprintln!(
        "{} vertices ordered in {} steps, max_back={mb}",
        sol.ordering.len(),
        sol.steps
    );
    Ok(0)
}

fn cmd_exact(graph: &Path, max_n: usize) -> CmdResult {
    let file = read_graph(graph)?;
    let g = file.graph.underlying();
    let (col2, witness) = col2_exact_with_witness(&g, &file.c, &file.k, max_n)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    emit(
        &Report::new()
            .field("n", file.graph.vertex_count())
            .field("col2", col2)
            .field("witness", vertex_list(witness.as_slice()))
            .summary(format!("col2 = {col2}")),
    );
    eprintln!("exact col2 = {col2}");
    Ok(0)
}

fn cmd_greedy(graph: &Path, seed: Option<u64>, out: Option<&Path>) -> CmdResult {
    let file = read_graph(graph)?;
    let g = file.graph.underlying();
    let tie = seed.map_or(TieBreak::SmallestId, TieBreak::Seeded);
    let ord = greedy_backward(&g, &file.c, &file.k, tie);
    let profile = ordering::back_profile(&g, &file.c, &ord);
    if let Some(p) = out {
        write_text(
            p,
            &OrderingFile {
                d: Some(profile.max_back),
                order: ord.clone(),
            }
            .to_string(),
        )?;
    }
    emit(
        &Report::new()
            .field("n", file.graph.vertex_count())
            .field("max_back", profile.max_back)
            .field("col2_upper", profile.col2())
            .field("order", vertex_list(ord.as_slice()))
            .summary(format!(
                "greedy ordering with max back-set {}",
                profile.max_back
            )),
    );
    eprintln!("greedy max_back={}", profile.max_back);
    Ok(0)
}

fn cmd_verify(graph: &Path, ordering_path: &Path, d: usize) -> CmdResult {
    let file = read_graph(graph)?;
    let text = fs::read_to_string(ordering_path)
        .map_err(|e| Failure::invalid(format!("{}: {e}", ordering_path.display())))?;
    let ord: OrderingFile = text
        .parse()
        .map_err(|e| Failure::invalid(format!("{}: {e}", ordering_path.display())))?;
    let g = file.graph.underlying();
    match ordering::verify(&g, &file.k, &file.c, &ord.order, d) {
        Ok(p) => {
            emit(
                &Report::new()
                    .field("valid", true)
                    .field("d", d)
                    .field("max_back", p.max_back)
                    .field("col2_upper", p.col2())
                    .summary(format!("valid: every back-set has at most {d} vertices")),
            );
            eprintln!("valid, max_back={}", p.max_back);
            Ok(0)
        }
        Err(e) => {
            let mut r = Report::new().field("valid", false).field("d", d);
            if let OrderingError::BackDegreeExceeded {
                vertex, back_set, ..
            } = &e
            {
                r = r
                    .field("offender", vertex)
                    .field("back_set", vertex_list(back_set));
            }
            emit(&r.field("error", &e).summary(format!("invalid: {e}")));
            eprintln!("invalid: {e}");
            Ok(1)
        }
    }
}

fn cmd_audit(graph: &Path) -> CmdResult {
    let file = read_graph(graph)?;
    let g: &PlaneGraph = &file.graph;
    let k = if file.k.is_empty() && g.outer_face().is_some_and(|w| w.len() <= 3) {
        g.outer_vertices()
    } else {
        file.k.clone()
    };
    let t = Target::new(g.clone(), k, file.c.clone());
    let r = audit(&t);
    let counts = |rule| r.ledger.transfers.iter().filter(|x| x.rule == rule).count();
    let mut rep = Report::new()
        .field("k", vertex_list(&t.k))
        .field("triangulated", r.triangulated)
        .field("total_raw", r.total_raw())
        .field("total_c0", r.ledger.total_c0())
        .field("total", r.total_final())
        .field("conserved", r.conserved())
        .field(
            "expected",
            r.expected_total
                .map_or("n/a".to_string(), |e| e.to_string()),
        )
        .field("transfers_ct", counts(Rule::CT))
        .field("transfers_r1", counts(Rule::R1))
        .field("transfers_r2", counts(Rule::R2))
        .field("transfers_r3", counts(Rule::R3))
        .field("heavy_edges", r.ledger.heavy.len())
        .field("violations", r.violations.len());
    if !r.violations.is_empty() {
        let list: Vec<String> = r.violations.iter().map(|v| v.to_string()).collect();
        rep = rep.field("violation_list", list.join(" "));
    }
    let ok = r.conserved() && r.identity_holds() != Some(false);
    emit(&rep.summary(format!(
        "total charge {} ({})",
        r.total_final(),
        if ok { "consistent" } else { "inconsistent" }
    )));
    eprintln!(
        "audit: total={} conserved={} violations={}",
        r.total_final(),
        r.conserved(),
        r.violations.len()
    );
    Ok(if ok { 0 } else { 1 })
}

fn cmd_lower_bound(graph: &Path, d: usize, budget: f64) -> CmdResult {
    let file = read_graph(graph)?;
    if !(budget.is_finite() && budget >= 0.0) {
        return Err(Failure {
            code: 2,
            message: "--budget must be a non-negative number of seconds".into(),
        });
    }
    let rep = prove_lower_bound(&file.graph.underlying(), d, Duration::from_secs_f64(budget));
    let (outcome, code, extra) = match &rep.outcome {
        LowerBoundOutcome::Infeasible => ("infeasible", 1, format!("col2 > {}", d + 1)),
        LowerBoundOutcome::Feasible(w) => (
            "feasible",
            0,
            format!(
                "ordering with back-degree {d}: {}",
                vertex_list(w.as_slice())
            ),
        ),
        LowerBoundOutcome::Timeout => ("timeout", 0, "budget exhausted".to_string()),
    };
    let mut r = Report::new()
        .field("d", d)
        .field("outcome", outcome)
        .field("nodes", rep.nodes)
        .field("dead_states", rep.dead_states)
        .field("elapsed_ms", rep.elapsed.as_millis());
    if let LowerBoundOutcome::Feasible(w) = &rep.outcome {
        r = r.field("witness", vertex_list(w.as_slice()));
    }
    emit(&r.summary(format!("{outcome}: {extra}")));
    eprintln!("lower-bound d={d}: {outcome}");
    Ok(code)
}

fn cmd_corpus(count: usize, max_n: usize, seed: u64, jobs: usize, certify: bool) -> CmdResult {
    let mut entries = named_corpus();
    entries.extend(random_corpus(count, max_n, seed));
    let opts = SolveOptions {
        certify,
        trace: true,
    };
    let out = run_corpus(&entries, jobs, opts);
    let mut failed = 0;
    let mut worst = 0;
    for o in &out {
        let status = if o.ok() { "ok" } else { "FAIL" };
        let mb = match &o.max_back {
            Ok(b) => {
                worst = worst.max(*b);
                b.to_string()
            }
            Err(e) => format!("error:{e}"),
        };
        if !o.ok() {
            failed += 1;
        }
        println!(
            "graph={} n={} max_back={} steps={} charge={} expected={} {status}",
            o.name,
            o.n,
            mb,
            o.steps,
            o.charge_final,
            o.charge_expected
                .map_or("n/a".to_string(), |e| e.to_string())
        );
    }
    emit(
        &Report::new()
            .field("graphs", out.len())
            .field("failed", failed)
            .field("worst_max_back", worst)
            .summary(format!(
                "{} graphs, {failed} failed, worst max_back {worst}",
                out.len()
            )),
    );
    eprintln!("corpus: {} graphs, {failed} failed", out.len());
    Ok(if failed == 0 { 0 } else { 2 })
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Gen {
            family,
            n,
            seed,
            flips,
            out,
        } => cmd_gen(&family, n, seed, flips, out.as_deref()),
        Command::Order {
            graph,
            certify,
            trace,
            dump,
            out,
        } => cmd_order(
            &graph,
            certify,
            trace.as_deref(),
            dump.as_deref(),
            out.as_deref(),
        ),
        Command::Exact { graph, max_n } => cmd_exact(&graph, max_n),
        Command::Greedy { graph, seed, out } => cmd_greedy(&graph, seed, out.as_deref()),
        Command::Verify { graph, ordering, d } => cmd_verify(&graph, &ordering, d),
        Command::Audit { graph } => cmd_audit(&graph),
        Command::LowerBound { graph, d, budget } => cmd_lower_bound(&graph, d, budget),
        Command::Corpus {
            count,
            max_n,
            seed,
            jobs,
            certify,
        } => cmd_corpus(count, max_n, seed, jobs, certify),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
