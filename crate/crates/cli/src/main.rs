//! Command line front end: every pipeline stage behind one binary.
//!
//! Each subcommand dispatches into the library, times the call, and emits a
//! report {command, parameters, outputs, wall_clock_ms}. JSON goes to
//! standard output with a short summary on standard error; `--format text`
//! puts the summary on standard output instead. All randomness flows from
//! --seed, so a fixed (command, arguments, seed) triple reproduces the same
//! report on the same build, up to the wall clock. Exit status is 0 on
//! success, 1 on contract or verification failure, 2 on unparseable input.

use clap::{Parser, Subcommand, ValueEnum};
use idxcode::code::{self, VerifyMode};
use idxcode::coloring::{self, ExtractionMode};
use idxcode::gf2::{self, MinrankOutcome, DEFAULT_ORACLE_BUDGET};
use idxcode::gk;
use idxcode::graph::gen_bounded_minrank_instance;
use idxcode::rounding::{self, RoundingParams, AUGMENTATION_C};
use idxcode::sdp;
use idxcode::spectral::{self, SymmetricMatrix};
use idxcode::{Error, Graph, LinearIndexCode, VertexSet};
use serde_json::{json, Value};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "idxcode",
    version,
    about = "Minrank, vector coloring, and linear index codes over GF(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every random choice in the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Tolerance handed to the solver and spectral routines.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,

    /// json prints the full report on stdout; text prints the summary there.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum RoundArg {
    /// Threshold rounding over the whole graph.
    Kms,
    /// Threshold rounding plus the search over inner-product shells.
    Augmented,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Recursive extraction at the declared bound.
    Basic,
    /// Degree-cutoff extraction; requires --k 3.
    Minrank3,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// One broadcast bit per color class of the complement.
    Coloring,
    /// Row space of a representing matrix found by the exact oracle.
    Matrix,
}

#[derive(Subcommand)]
enum Command {
    /// Build the extremal graph family member G_k and report its shape.
    GenGk {
        /// Family index; vertices are pairs of width-k bit vectors.
        #[arg(long)]
        k: usize,
        /// Write the edge list here.
        #[arg(long)]
        out: Option<String>,
        /// Write one "vertex v1 v2" label line per vertex here.
        #[arg(long)]
        labels: Option<String>,
    },
    /// Adjacency spectrum of a graph, or of G_k, or its 5x5 quotient.
    Spectrum {
        /// Edge-list file to decompose.
        #[arg(long, conflicts_with = "k")]
        graph: Option<String>,
        /// Decompose G_k instead of a file.
        #[arg(long, required_unless_present = "graph")]
        k: Option<usize>,
        /// With --k: use the closed-form orbit quotient, not the full graph.
        #[arg(long, requires = "k")]
        quotient: bool,
        /// Eigenvalues closer than this merge into one multiplicity group.
        #[arg(long, default_value_t = 1e-5)]
        resolution: f64,
    },
    /// Closed-form Lovasz theta of the complement of G_k.
    Theta {
        #[arg(long)]
        k: usize,
    },
    /// Exact minrank over GF(2) by branch-and-bound on bi-representations.
    Minrank {
        /// Edge-list file.
        #[arg(long)]
        graph: String,
        /// Run on the complement of the input graph.
        #[arg(long)]
        complement: bool,
        /// Give up beyond this rank.
        #[arg(long, default_value_t = 8)]
        k_max: usize,
        /// Search-node budget before reporting unknown.
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: u64,
        /// Write the witness matrix here (requires an exact outcome).
        #[arg(long)]
        dump_matrix: Option<String>,
    },
    /// Solve the vector coloring relaxation, optionally rounding it.
    VectorColor {
        /// Edge-list file.
        #[arg(long)]
        graph: String,
        /// Certify every edge product equal to -1/(kappa - 1).
        #[arg(long)]
        strict: bool,
        /// Include the unit vectors in the report.
        #[arg(long)]
        vectors: bool,
        /// Round the solved vectors to an independent set.
        #[arg(long, value_enum)]
        round: Option<RoundArg>,
        /// Gaussian samples per threshold (kms rounding; default 8 ln n).
        #[arg(long)]
        trials: Option<usize>,
        /// Size of the threshold ladder (kms rounding).
        #[arg(long, default_value_t = 20)]
        grid_points: usize,
        /// Threshold boost constant (kms rounding).
        #[arg(long, default_value_t = 0.0)]
        c: f64,
        /// Quantile step for shell levels (augmented rounding).
        #[arg(long, default_value_t = 0.05)]
        b_step: f64,
    },
    /// Color a graph whose complement has minrank at most k over GF(2).
    Color {
        /// Edge-list file.
        #[arg(long)]
        graph: String,
        /// Declared minrank bound on the complement.
        #[arg(long)]
        k: usize,
        /// Extraction routine; defaults to minrank3 at k = 3, basic otherwise.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Build a linear index code for a side-information graph.
    IndexCode {
        /// Edge-list file; vertex i knows the bits of its neighbors.
        #[arg(long)]
        graph: String,
        /// Code constructor.
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Coloring method: color the complement under this minrank bound
        /// instead of greedily.
        #[arg(long)]
        k: Option<usize>,
        /// Matrix method: give up beyond this rank.
        #[arg(long, default_value_t = 8)]
        k_max: usize,
        /// Matrix method: oracle node budget.
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: u64,
        /// Write the code here instead of inlining it in the report.
        #[arg(long)]
        out: Option<String>,
    },
    /// Check that every receiver of a code can decode its own bit.
    Verify {
        /// Edge-list file.
        #[arg(long)]
        graph: String,
        /// Code file produced by index-code.
        #[arg(long)]
        code: String,
        /// Try all 2^n inputs.
        #[arg(long, conflicts_with = "trials")]
        exhaustive: bool,
        /// Sample this many random inputs instead.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Numerical constants attached to the bound k.
    Constants {
        #[arg(long)]
        k: usize,
    },
    /// Generate a graph whose complement has minrank at most k over GF(2).
    GenInstance {
        #[arg(long)]
        n: usize,
        /// Minrank bound planted on the complement.
        #[arg(long)]
        k: usize,
        /// Density of the random bi-representation.
        #[arg(long)]
        p: f64,
        /// Emit the complement instead; its own minrank is at most k.
        #[arg(long)]
        complement: bool,
        /// Write the edge list here instead of inlining it.
        #[arg(long)]
        out: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::GenGk { .. } => "gen-gk",
            Command::Spectrum { .. } => "spectrum",
            Command::Theta { .. } => "theta",
            Command::Minrank { .. } => "minrank",
            Command::VectorColor { .. } => "vector-color",
            Command::Color { .. } => "color",
            Command::IndexCode { .. } => "index-code",
            Command::Verify { .. } => "verify",
            Command::Constants { .. } => "constants",
            Command::GenInstance { .. } => "gen-instance",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok((parameters, outputs, exit)) => {
            let report = json!({
                "command": cli.command.name(),
                "parameters": parameters,
                "outputs": outputs,
                "wall_clock_ms": start.elapsed().as_secs_f64() * 1e3,
            });
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            let brief = summarize(cli.command.name(), &outputs);
            match cli.format {
                Format::Json => {
                    println!("{text}");
                    eprintln!("{brief}");
                }
                Format::Text => println!("{brief}"),
            }
            ExitCode::from(exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Parse { .. }) { 2 } else { 1 })
        }
    }
}

/// Dispatches one command; returns (parameters, outputs, exit status).
fn run(cli: &Cli) -> idxcode::Result<(Value, Value, u8)> {
    let seed = cli.seed;
    let tol = cli.tol;
    match &cli.command {
        Command::GenGk { k, out, labels } => {
            let built = gk::build_gk(*k)?;
            let g = built.graph();
            let mut outputs = json!({
                "k": k,
                "n": g.n(),
                "edges": g.edge_count(),
                "degree": g.max_degree(),
            });
            if *k >= 3 {
                outputs["orbit_class_sizes"] = json!(gk::orbit_class_sizes(*k)?.to_vec());
            }
            if let Some(path) = out {
                write_file(path, &g.save_edge_list())?;
                outputs["edge_list"] = json!(path);
            }
            if let Some(path) = labels {
                let mut text = String::new();
                for (i, v) in built.labels().iter().enumerate() {
                    text.push_str(&format!(
                        "{i} {} {}\n",
                        v.v1.to_bit_string(),
                        v.v2.to_bit_string()
                    ));
                }
                write_file(path, &text)?;
                outputs["labels"] = json!(path);
            }
            let parameters = json!({"k": k, "out": out, "labels": labels, "seed": seed});
            Ok((parameters, outputs, 0))
        }

        Command::Spectrum { graph, k, quotient, resolution } => {
            let parameters = json!({
                "graph": graph, "k": k, "quotient": quotient,
                "resolution": resolution, "tol": tol, "seed": seed,
            });
            if *quotient {
                let k = k.expect("clap enforces --quotient requires --k");
                let q = gk::quotient_matrix_closed_form(k)?;
                let eigen = gk::quotient_eigenvalues_closed_form(k)?;
                let outputs = json!({
                    "k": k,
                    "matrix": q.entries.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
                    "class_sizes": q.class_sizes.to_vec(),
                    "eigenvalues": eigen.to_vec(),
                    "lambda_min": eigen[0],
                });
                return Ok((parameters, outputs, 0));
            }
            let g = match (graph, k) {
                (Some(path), _) => load_graph(path)?,
                (None, Some(k)) => gk::build_gk(*k)?.graph().clone(),
                (None, None) => unreachable!("clap requires --graph or --k"),
            };
            let values = spectral::eigenvalues_sym(&SymmetricMatrix::adjacency(&g), tol)?;
            let groups: Vec<Value> = spectral::group_eigenvalues(&values, *resolution)
                .iter()
                .map(|e| json!({"value": e.value, "multiplicity": e.multiplicity}))
                .collect();
            let outputs = json!({
                "n": g.n(),
                "lambda_min": values.first(),
                "lambda_max": values.last(),
                "eigenvalues": groups,
            });
            Ok((parameters, outputs, 0))
        }

        Command::Theta { k } => {
            let parameters = json!({"k": k});
            let outputs = json!({
                "k": k,
                "theta": gk::theta_gk_complement(*k)?,
                "kappa": gk::kappa(*k),
            });
            Ok((parameters, outputs, 0))
        }

        Command::Minrank { graph, complement, k_max, budget, dump_matrix } => {
            let loaded = load_graph(graph)?;
            let g = if *complement { loaded.complement() } else { loaded };
            let (outcome, rep) = gf2::minrank_oracle_budgeted(&g, *k_max, *budget);
            let (status, value) = match outcome {
                MinrankOutcome::Exact(v) => ("exact", json!(v)),
                MinrankOutcome::ExceedsKMax => ("exceeds_k_max", Value::Null),
                MinrankOutcome::Unknown => ("unknown", Value::Null),
            };
            let mut outputs = json!({
                "n": g.n(),
                "status": status,
                "minrank": value,
                "k_max": k_max,
            });
            if let Some(path) = dump_matrix {
                let rep = rep.ok_or_else(|| {
                    Error::Input(format!("no representing matrix to dump: outcome is {status}"))
                })?;
                let a = rep.assemble();
                outputs["matrix_rank"] = json!(gf2::minrank_upper_from_matrix(&a, &g)?);
                write_file(path, &a.to_text())?;
                outputs["matrix"] = json!(path);
            }
            let parameters = json!({
                "graph": graph, "complement": complement, "k_max": k_max,
                "budget": budget, "dump_matrix": dump_matrix, "seed": seed,
            });
            Ok((parameters, outputs, 0))
        }

        Command::VectorColor {
            graph,
            strict,
            vectors,
            round,
            trials,
            grid_points,
            c,
            b_step,
        } => {
            let g = load_graph(graph)?;
            let n = g.n();
            let mut rounding_out = Value::Null;
            let vc = match round {
                Some(RoundArg::Augmented) => {
                    // The shell search certifies the strict system itself.
                    let aug = rounding::augmented_kms_with_step(&g, tol, seed, *b_step)?;
                    rounding_out = json!({
                        "mode": "augmented",
                        "size": aug.best.len(),
                        "set": members(&aug.best),
                        "from_shell": aug.best_from_shell,
                        "whole_graph_size": aug.kms.set.len(),
                    });
                    aug.coloring
                }
                Some(RoundArg::Kms) => {
                    let vc = sdp::solve_vector_coloring(&g, *strict, tol, seed)?;
                    if g.edge_count() == 0 {
                        rounding_out = json!({
                            "mode": "kms",
                            "size": n,
                            "set": members(&VertexSet::full(n)),
                            "threshold": 0.0,
                            "trial": 0,
                        });
                    } else {
                        let params = RoundingParams {
                            t_grid: rounding::t_grid_with_points(
                                n,
                                g.max_degree(),
                                vc.sigma(),
                                *c,
                                *grid_points,
                            ),
                            trials: trials.unwrap_or_else(|| rounding::standard_trials(n)),
                            seed,
                            b_grid: Vec::new(),
                        };
                        let run = rounding::kms_prime_run(&g, &vc, &params);
                        rounding_out = json!({
                            "mode": "kms",
                            "size": run.set.len(),
                            "set": members(&run.set),
                            "threshold": run.t,
                            "trial": run.trial,
                        });
                    }
                    vc
                }
                None => sdp::solve_vector_coloring(&g, *strict, tol, seed)?,
            };
            let res = sdp::check_vector_coloring(&g, &vc)?;
            let sigma = if vc.kappa > 1.0 { json!(vc.sigma()) } else { Value::Null };
            let mut outputs = json!({
                "n": n,
                "kappa": vc.kappa,
                "sigma": sigma,
                "dimension": vc.d,
                "strict": vc.strict,
                "max_norm_deviation": res.max_norm_deviation,
                "worst_edge_violation": res.worst_edge_violation,
                "rounding": rounding_out,
            });
            if *vectors {
                outputs["vectors"] = json!(vc.vectors);
            }
            let parameters = json!({
                "graph": graph, "strict": strict, "round": round.map(|r| match r {
                    RoundArg::Kms => "kms",
                    RoundArg::Augmented => "augmented",
                }),
                "trials": trials, "grid_points": grid_points, "c": c,
                "b_step": b_step, "tol": tol, "seed": seed,
            });
            Ok((parameters, outputs, 0))
        }

        Command::Color { graph, k, mode } => {
            let g = load_graph(graph)?;
            let coloring = match mode {
                None => coloring::color_graph(&g, *k, seed)?,
                Some(ModeArg::Basic) => {
                    coloring::color_graph_mode(&g, *k, seed, ExtractionMode::Basic)?
                }
                Some(ModeArg::Minrank3) => {
                    coloring::color_graph_mode(&g, *k, seed, ExtractionMode::Minrank3)?
                }
            };
            let outputs = json!({
                "n": g.n(),
                "count": coloring.count,
                "class_sizes": coloring.class_sizes(),
                "colors": coloring.colors,
            });
            let parameters = json!({
                "graph": graph, "k": k, "mode": mode.map(|m| match m {
                    ModeArg::Basic => "basic",
                    ModeArg::Minrank3 => "minrank3",
                }),
                "tol": tol, "seed": seed,
            });
            Ok((parameters, outputs, 0))
        }

        Command::IndexCode { graph, method, k, k_max, budget, out } => {
            let g = load_graph(graph)?;
            let mut outputs = json!({"n": g.n()});
            let built = match method {
                MethodArg::Coloring => {
                    let complement = g.complement();
                    let col = match k {
                        Some(k) => coloring::color_graph(&complement, *k, seed)?,
                        None => coloring::greedy_coloring(&complement),
                    };
                    outputs["complement_colors"] = json!(col.count);
                    code::code_from_coloring(&g, &col)?
                }
                MethodArg::Matrix => {
                    let (outcome, rep) = gf2::minrank_oracle_budgeted(&g, *k_max, *budget);
                    let rep = rep.ok_or_else(|| match outcome {
                        MinrankOutcome::ExceedsKMax => Error::Input(format!(
                            "minrank exceeds {k_max}; raise --k-max to find a matrix"
                        )),
                        _ => Error::Budget(
                            "oracle budget exhausted before a representation was found".into(),
                        ),
                    })?;
                    if let MinrankOutcome::Exact(v) = outcome {
                        outputs["minrank"] = json!(v);
                    }
                    code::code_from_matrix(&rep.assemble(), &g)?
                }
            };
            outputs["length"] = json!(built.length);
            match out {
                Some(path) => {
                    write_file(path, &built.to_text())?;
                    outputs["code"] = json!(path);
                }
                None => outputs["code_text"] = json!(built.to_text()),
            }
            let parameters = json!({
                "graph": graph, "method": match method {
                    MethodArg::Coloring => "coloring",
                    MethodArg::Matrix => "matrix",
                },
                "k": k, "k_max": k_max, "budget": budget, "out": out, "seed": seed,
            });
            Ok((parameters, outputs, 0))
        }

        Command::Verify { graph, code: code_path, exhaustive, trials } => {
            let g = load_graph(graph)?;
            let parsed = LinearIndexCode::parse_text(&read_file(code_path)?)?;
            let mode = if *exhaustive {
                VerifyMode::Exhaustive
            } else if let Some(t) = trials {
                VerifyMode::Sampled { trials: *t, seed }
            } else if g.n() <= code::EXHAUSTIVE_VERIFY_CAP {
                VerifyMode::Exhaustive
            } else {
                VerifyMode::Sampled { trials: 10_000, seed }
            };
            let mode_name = match mode {
                VerifyMode::Exhaustive => "exhaustive",
                VerifyMode::Sampled { .. } => "sampled",
            };
            let outcome = code::verify_code(&g, &parsed, mode)?;
            let counterexample = outcome
                .counterexample
                .as_ref()
                .map(|(x, i)| json!({"input": x.to_bit_string(), "receiver": i}))
                .unwrap_or(Value::Null);
            let outputs = json!({
                "pass": outcome.pass,
                "mode": mode_name,
                "length": parsed.length,
                "words_checked": outcome.words_checked,
                "counterexample": counterexample,
            });
            let parameters = json!({
                "graph": graph, "code": code_path, "exhaustive": exhaustive,
                "trials": trials, "seed": seed,
            });
            Ok((parameters, outputs, if outcome.pass { 0 } else { 1 }))
        }

        Command::Constants { k } => {
            if !(1..=gk::MAX_QUOTIENT_K).contains(k) {
                return Err(Error::Input(format!(
                    "constants need 1 <= k <= {}, got {k}",
                    gk::MAX_QUOTIENT_K
                )));
            }
            let kappa = gk::kappa(*k);
            let sigma = 1.0 / (kappa - 1.0);
            let mut outputs = json!({
                "k": k,
                "kappa": kappa,
                "sigma": sigma,
                "g_exponent": coloring::g_exponent(*k),
                "vertex_count": gk::vertex_count(*k),
                "degree": gk::degree(*k),
                "theta": gk::theta_gk_complement(*k).ok(),
            });
            if *k == 3 {
                outputs["delta_exponent"] = json!(coloring::DELTA_EXPONENT);
                outputs["independence_exponent"] = json!(1.0 - coloring::DELTA_EXPONENT);
                outputs["augmentation_c"] = json!(AUGMENTATION_C);
                outputs["best_c"] = json!(rounding::find_best_c(sigma, coloring::DELTA_EXPONENT));
            }
            Ok((json!({"k": k}), outputs, 0))
        }

        Command::GenInstance { n, k, p, complement, out } => {
            if !(1..=8).contains(k) {
                return Err(Error::Input(format!("instance bound needs 1 <= k <= 8, got {k}")));
            }
            if !(0.0..=1.0).contains(p) {
                return Err(Error::Input(format!("density needs 0 <= p <= 1, got {p}")));
            }
            if *n > idxcode::graph::MAX_VERTICES {
                return Err(Error::Input(format!(
                    "vertex count {n} exceeds cap {}",
                    idxcode::graph::MAX_VERTICES
                )));
            }
            let instance = gen_bounded_minrank_instance(*n, *k, *p, seed);
            let g = if *complement { instance.complement() } else { instance };
            let bound_key =
                if *complement { "minrank_bound" } else { "complement_minrank_bound" };
            let mut outputs = json!({
                "n": n,
                bound_key: k,
                "edges": g.edge_count(),
                "max_degree": g.max_degree(),
            });
            match out {
                Some(path) => {
                    write_file(path, &g.save_edge_list())?;
                    outputs["edge_list"] = json!(path);
                }
                None => outputs["edge_list_text"] = json!(g.save_edge_list()),
            }
            let parameters =
                json!({"n": n, "k": k, "p": p, "complement": complement, "out": out, "seed": seed});
            Ok((parameters, outputs, 0))
        }
    }
}

fn read_file(path: &str) -> idxcode::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {path}: {e}")))
}

fn write_file(path: &str, text: &str) -> idxcode::Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Input(format!("cannot write {path}: {e}")))
}

fn load_graph(path: &str) -> idxcode::Result<Graph> {
    let (g, duplicates) = Graph::load_edge_list(&read_file(path)?)?;
    if duplicates {
        eprintln!("note: duplicate edges in {path} were collapsed");
    }
    Ok(g)
}

fn members(set: &VertexSet) -> Vec<usize> {
    set.iter().collect()
}

/// One line per top-level output, long values elided.
fn summarize(command: &str, outputs: &Value) -> String {
    let mut s = format!("{command}:");
    if let Value::Object(map) = outputs {
        for (key, value) in map {
            s.push_str(&format!("\n  {key} = {}", compact(value)));
        }
    }
    s
}

fn compact(value: &Value) -> String {
    match value {
        Value::Array(items) if items.len() > 24 => format!("[{} values]", items.len()),
        Value::String(text) if text.len() > 120 || text.contains('\n') => {
            format!("<{} bytes of text>", text.len())
        }
        _ => value.to_string(),
    }
}
