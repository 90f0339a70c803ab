//! Command-line front end: argument parsing, run manifests, the flat-file
//! evaluation cache, and JSON/CSV report emission.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.
//! Identical invocations produce byte-identical JSON; wall-clock data lives
//! in the manifest's `timing` section only.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::enumeration::{self, Strictness};
use crate::families::{self, FamilyParams, TheoremCase};
use crate::graph::Graph;
use crate::spectral;
use crate::verifier::{
    self, EvalCache, GraphSource, TheoremSweep, Tolerances, VerifyOptions,
};

/// Environment variable naming the cache directory; unset disables caching.
pub const CACHE_DIR_ENV: &str = "DSR_CACHE_DIR";
const CACHE_FILE: &str = "evals.tsv";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "dsr",
    version,
    about = "Distance spectral radii, conditional connectivity, extremal families"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the distance spectral radius of one or more graph6 graphs.
    Lambda1 {
        /// A graph6 line, or a path to a file with one graph6 line per row.
        input: String,
        /// Append the full eigenvalue list (descending).
        #[arg(long)]
        full_spectrum: bool,
        /// Power-iteration residual tolerance.
        #[arg(long, default_value_t = spectral::DEFAULT_TOL)]
        tol: f64,
    },
    /// Print the h-extra r-component connectivity and a minimum witness.
    Ckappa {
        /// A graph6 line, or a path to a file with one graph6 line per row.
        input: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        r: u64,
        #[arg(long)]
        h: u64,
    },
    /// Construct an extremal family graph and validate it.
    Family {
        /// Case branch; derived from the parameters when omitted.
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        r: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        h: u64,
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        ckappa: u64,
    },
    /// Emit every connected graph of order --n up to isomorphism, one
    /// graph6 line each, for caching or external processing.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
        n: u64,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification sweep and write JSON + CSV reports.
    #[command(group(
        ArgGroup::new("mode")
            .required(true)
            .args(["theorem", "edge_lemma", "join_lemma"]),
    ))]
    Verify {
        /// Sweep all graphs of order --n and compare class minimizers
        /// against the predicted families.
        #[arg(long)]
        theorem: bool,
        /// Check that deleting connectivity-preserving edges raises the
        /// radius, over all graphs of order --n.
        #[arg(long)]
        edge_lemma: bool,
        /// Check the clique-join comparison over all admissible partitions
        /// up to --n-max.
        #[arg(long)]
        join_lemma: bool,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..), default_value_t = 2)]
        r: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 1)]
        h: u64,
        /// graph6 file supplying the sweep graphs instead of in-process
        /// enumeration.
        #[arg(long)]
        source: Option<PathBuf>,
        /// Restrict the theorem report to one minimum degree.
        #[arg(long)]
        delta: Option<u64>,
        /// Restrict the theorem report to one connectivity value.
        #[arg(long)]
        ckappa: Option<u64>,
        /// Worker threads for the sweep; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: u64,
        /// Directory receiving report.json and report.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Treat HYPOTHESIS_UNMET and CLASS_EMPTY rows as failures.
        #[arg(long)]
        strict: bool,
    },
}

/// Reproducibility record embedded in every emitted report.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub grid: serde_json::Value,
    pub tolerances: Tolerances,
    pub versions: BTreeMap<String, String>,
    pub input_digests: BTreeMap<String, String>,
    pub timing: Timing,
}

#[derive(Debug, Serialize, Default)]
pub struct Timing {
    pub total_seconds: f64,
    pub per_class: BTreeMap<String, f64>,
}

fn versions() -> BTreeMap<String, String> {
    let mut v = BTreeMap::new();
    v.insert("package".to_owned(), env!("CARGO_PKG_NAME").to_owned());
    v.insert("version".to_owned(), env!("CARGO_PKG_VERSION").to_owned());
    v
}

fn sha256_hex(path: &Path) -> Result<String, String> {
    let bytes = fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let digest = Sha256::digest(&bytes);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

/// Parse, dispatch and map errors onto the exit-code contract.
pub fn run(cli: Cli) -> i32 {
    match execute(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_USAGE
        }
    }
}

fn execute(command: Command) -> Result<i32, String> {
    match command {
        Command::Lambda1 {
            input,
            full_spectrum,
            tol,
        } => cmd_lambda1(&input, full_spectrum, tol),
        Command::Ckappa { input, r, h } => cmd_ckappa(&input, r as usize, h as usize),
        Command::Family {
            case,
            n,
            r,
            h,
            delta,
            ckappa,
        } => cmd_family(
            case.as_deref(),
            FamilyParams {
                n: n as usize,
                r: r as usize,
                h: h as usize,
                delta: delta as usize,
                ckappa: ckappa as usize,
            },
        ),
        Command::Enumerate { n, out } => cmd_enumerate(n as usize, out.as_deref()),
        Command::Verify {
            theorem,
            edge_lemma,
            join_lemma,
            n,
            n_max,
            r,
            h,
            source,
            delta,
            ckappa,
            jobs,
            out,
            strict,
        } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs as usize)
                .build()
                .map_err(|e| e.to_string())?;
            let spec = VerifySpec {
                n: n.map(|v| v as usize),
                n_max: n_max.map(|v| v as usize),
                r: r as usize,
                h: h as usize,
                source,
                delta: delta.map(|v| v as usize),
                ckappa: ckappa.map(|v| v as usize),
                out,
                strict,
            };
            let command_echo = render_verify_command(theorem, edge_lemma, join_lemma, &spec, jobs);
            pool.install(|| {
                if theorem {
                    cmd_verify_theorem(&spec, command_echo)
                } else if edge_lemma {
                    cmd_verify_edge_lemma(&spec, command_echo)
                } else {
                    debug_assert!(join_lemma);
                    cmd_verify_join_lemma(&spec, command_echo)
                }
            })
        }
    }
}

/// Reads graph6 graphs from a literal or from a file path, in order.
fn read_input_graphs(input: &str) -> Result<Vec<Graph>, String> {
    let path = Path::new(input);
    if path.is_file() {
        let file = fs::File::open(path).map_err(|e| format!("cannot open {input}: {e}"))?;
        let outcome =
            enumeration::ingest_graph6_stream(std::io::BufReader::new(file), Strictness::Strict)
                .map_err(|e| e.to_string())?;
        if outcome.graphs.is_empty() {
            return Err(format!("{input}: no graphs found"));
        }
        Ok(outcome.graphs)
    } else {
        Ok(vec![
            crate::graph6::parse_graph6(input).map_err(|e| e.to_string())?
        ])
    }
}

/// Renders "graph is disconnected" with the actual vertex sets so the
/// message names the components.
fn describe_components(g: &Graph) -> String {
    let decomposition = g.components();
    let mut parts: Vec<String> = Vec::with_capacity(decomposition.count);
    for id in 0..decomposition.count {
        let members: crate::graph::VertexSet = decomposition
            .membership
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m == id)
            .map(|(v, _)| v)
            .collect();
        parts.push(members.to_string());
    }
    format!("graph is disconnected: components {}", parts.join(", "))
}

fn cmd_lambda1(input: &str, full_spectrum: bool, tol: f64) -> Result<i32, String> {
    for g in read_input_graphs(input)? {
        if !g.is_connected() {
            return Err(describe_components(&g));
        }
        let result = if full_spectrum {
            spectral::distance_spectral_radius_with_spectrum(&g, tol)
        } else {
            spectral::distance_spectral_radius(&g, tol)
        }
        .map_err(|e| e.to_string())?;
        match &result.full_spectrum {
            None => println!("{:.12}", result.lambda1),
            Some(spectrum) => {
                let rendered: Vec<String> = spectrum.iter().map(|l| format!("{l:.12}")).collect();
                println!("{:.12} [{}]", result.lambda1, rendered.join(", "));
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(n: usize, out: Option<&Path>) -> Result<i32, String> {
    let graphs = enumeration::enumerate_connected(n).map_err(|e| e.to_string())?;
    let mut lines = String::new();
    for g in &graphs {
        lines.push_str(&g.to_graph6());
        lines.push('\n');
    }
    match out {
        None => print!("{lines}"),
        Some(path) => {
            fs::write(path, lines).map_err(|e| format!("cannot write {}: {e}", path.display()))?
        }
    }
    Ok(EXIT_OK)
}

fn cmd_ckappa(input: &str, r: usize, h: usize) -> Result<i32, String> {
    for g in read_input_graphs(input)? {
        if !g.is_connected() {
            return Err(describe_components(&g));
        }
        let result = crate::connectivity::ckappa(&g, r, h).map_err(|e| e.to_string())?;
        match (result.value, result.witness) {
            (Some(value), Some(witness)) => {
                println!("{value}");
                println!(
                    "witness: {} -> component sizes {:?}",
                    witness.s, witness.component_sizes
                );
            }
            _ => println!("undefined"),
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct FamilyDocument {
    manifest: RunManifest,
    params: FamilyParams,
    case: TheoremCase,
    graph6: String,
    checks: families::FamilyReport,
    pass: bool,
}

fn cmd_family(case: Option<&str>, params: FamilyParams) -> Result<i32, String> {
    let started = Instant::now();
    let (case, graph) = match case {
        None => families::family_graph(&params).map_err(|e| e.to_string())?,
        Some(label) => {
            let requested = match label {
                "i" => TheoremCase::I,
                "ii" => TheoremCase::II,
                "iii" => TheoremCase::III,
                other => return Err(format!("unknown case {other:?}; expected i, ii or iii")),
            };
            let graph = match requested {
                TheoremCase::I => families::family_case_i(&params),
                TheoremCase::II => families::family_case_ii(&params),
                TheoremCase::III => families::family_case_iii(&params),
            }
            .map_err(|e| e.to_string())?;
            (requested, graph)
        }
    };
    let checks = families::validate_family(&graph, &params).map_err(|e| e.to_string())?;
    let graph6 = graph.to_graph6();
    let pass = checks.pass();
    let document = FamilyDocument {
        manifest: RunManifest {
            command: std::env::args().skip(1).collect(),
            grid: serde_json::to_value(params).expect("params serialize"),
            tolerances: Tolerances::default(),
            versions: versions(),
            input_digests: BTreeMap::new(),
            timing: Timing {
                total_seconds: started.elapsed().as_secs_f64(),
                per_class: BTreeMap::new(),
            },
        },
        params,
        case,
        graph6: graph6.clone(),
        checks,
        pass,
    };
    println!("{graph6}");
    println!(
        "{}",
        serde_json::to_string_pretty(&document).expect("document serializes")
    );
    Ok(if pass { EXIT_OK } else { EXIT_VERIFICATION_FAILED })
}

struct VerifySpec {
    n: Option<usize>,
    n_max: Option<usize>,
    r: usize,
    h: usize,
    source: Option<PathBuf>,
    delta: Option<usize>,
    ckappa: Option<usize>,
    out: Option<PathBuf>,
    strict: bool,
}

fn render_verify_command(
    theorem: bool,
    edge_lemma: bool,
    join_lemma: bool,
    spec: &VerifySpec,
    jobs: u64,
) -> Vec<String> {
    let mut parts = vec!["verify".to_owned()];
    if theorem {
        parts.push("--theorem".to_owned());
    }
    if edge_lemma {
        parts.push("--edge-lemma".to_owned());
    }
    if join_lemma {
        parts.push("--join-lemma".to_owned());
    }
    if let Some(n) = spec.n {
        parts.push(format!("--n={n}"));
    }
    if let Some(m) = spec.n_max {
        parts.push(format!("--n-max={m}"));
    }
    parts.push(format!("--r={}", spec.r));
    parts.push(format!("--h={}", spec.h));
    if let Some(s) = &spec.source {
        parts.push(format!("--source={}", s.display()));
    }
    if let Some(d) = spec.delta {
        parts.push(format!("--delta={d}"));
    }
    if let Some(c) = spec.ckappa {
        parts.push(format!("--ckappa={c}"));
    }
    parts.push(format!("--jobs={jobs}"));
    if let Some(o) = &spec.out {
        parts.push(format!("--out={}", o.display()));
    }
    if spec.strict {
        parts.push("--strict".to_owned());
    }
    parts
}

fn cache_path() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).map(|dir| PathBuf::from(dir).join(CACHE_FILE))
}

#[derive(Serialize)]
struct TheoremDocument {
    manifest: RunManifest,
    theorem: TheoremSweep,
}

fn class_id(key: &verifier::ClassKey) -> String {
    format!(
        "n{}_r{}_h{}_d{}_ck{}",
        key.n, key.r, key.h, key.delta, key.ckappa
    )
}

fn write_reports(out: &Path, json: &str, csv: &str) -> Result<(), String> {
    fs::create_dir_all(out).map_err(|e| format!("cannot create {}: {e}", out.display()))?;
    fs::write(out.join("report.json"), json)
        .map_err(|e| format!("cannot write report.json: {e}"))?;
    fs::write(out.join("report.csv"), csv).map_err(|e| format!("cannot write report.csv: {e}"))?;
    Ok(())
}

fn cmd_verify_theorem(spec: &VerifySpec, command_echo: Vec<String>) -> Result<i32, String> {
    let n = spec.n.ok_or("--theorem requires --n")?;
    let started = Instant::now();
    let tolerances = Tolerances::default();
    let source = match &spec.source {
        Some(path) => GraphSource::Graph6File(path.clone()),
        None => GraphSource::Enumerate,
    };
    let options = VerifyOptions {
        delta_filter: spec.delta,
        ckappa_filter: spec.ckappa,
    };

    let mut cache = EvalCache::new();
    if let Some(path) = cache_path() {
        cache = EvalCache::load(&path).map_err(|e| format!("cannot load cache: {e}"))?;
    }

    let (sweep, new_entries) =
        verifier::verify_theorem(n, spec.r, spec.h, &source, &options, &tolerances, &cache)
            .map_err(|e| e.to_string())?;

    if let Some(path) = cache_path() {
        cache.merge(new_entries);
        cache
            .save(&path)
            .map_err(|e| format!("cannot save cache: {e}"))?;
    }

    let mut input_digests = BTreeMap::new();
    if let Some(path) = &spec.source {
        input_digests.insert(path.display().to_string(), sha256_hex(path)?);
    }
    let mut per_class = BTreeMap::new();
    for report in &sweep.reports {
        per_class.insert(class_id(&report.key), report.timing);
    }

    for report in &sweep.reports {
        let lambda = report
            .min_lambda1
            .map_or("-".to_owned(), |l| format!("{l:.12}"));
        println!(
            "class n={} delta={} ckappa={} size={}: {} (min_lambda1={})",
            report.key.n, report.key.delta, report.key.ckappa, report.class_size, report.verdict,
            lambda
        );
    }
    println!(
        "sweep n={n} r={} h={}: {} graphs, {} with undefined ckappa, {} classes",
        spec.r,
        spec.h,
        sweep.graphs_total,
        sweep.ckappa_undefined,
        sweep.reports.len()
    );
    if sweep.grid_infeasible() {
        println!(
            "flag: no class satisfies the hypothesis at (n={n}, r={}, h={})",
            spec.r, spec.h
        );
    }

    let ok = sweep.all_match(spec.strict);
    let document = TheoremDocument {
        manifest: RunManifest {
            command: command_echo,
            grid: serde_json::json!({
                "mode": "theorem", "n": n, "r": spec.r, "h": spec.h,
                "delta_filter": spec.delta, "ckappa_filter": spec.ckappa,
                "source": spec.source.as_ref().map(|p| p.display().to_string()),
            }),
            tolerances,
            versions: versions(),
            input_digests,
            timing: Timing {
                total_seconds: started.elapsed().as_secs_f64(),
                per_class,
            },
        },
        theorem: sweep,
    };
    if let Some(out) = &spec.out {
        let json = serde_json::to_string_pretty(&document).expect("document serializes");
        let mut csv = String::from(
            "n,r,h,delta,ckappa,class_size,min_lambda1,verdict,predicted,minimizers\n",
        );
        for report in &document.theorem.reports {
            let lambda = report
                .min_lambda1
                .map_or(String::new(), |l| format!("{l}"));
            csv.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                report.key.n,
                report.key.r,
                report.key.h,
                report.key.delta,
                report.key.ckappa,
                report.class_size,
                lambda,
                report.verdict,
                report.predicted.clone().unwrap_or_default(),
                report.minimizers.join(";")
            ));
        }
        write_reports(out, &json, &csv)?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION_FAILED })
}

#[derive(Serialize)]
struct EdgeLemmaDocument {
    manifest: RunManifest,
    edge_deletion: verifier::EdgeDeletionReport,
}

fn cmd_verify_edge_lemma(spec: &VerifySpec, command_echo: Vec<String>) -> Result<i32, String> {
    let n = spec.n.ok_or("--edge-lemma requires --n")?;
    let started = Instant::now();
    let tolerances = Tolerances::default();
    let report =
        verifier::verify_edge_deletion_lemma(n, &tolerances).map_err(|e| e.to_string())?;
    println!(
        "edge-deletion n={n}: {} graphs, {} pairs checked, {} skipped, {} violations, min margin {:?}",
        report.graphs_checked,
        report.pairs_checked,
        report.pairs_skipped,
        report.violations,
        report.min_margin
    );
    let ok = report.violations == 0;
    let document = EdgeLemmaDocument {
        manifest: RunManifest {
            command: command_echo,
            grid: serde_json::json!({"mode": "edge-lemma", "n": n}),
            tolerances,
            versions: versions(),
            input_digests: BTreeMap::new(),
            timing: Timing {
                total_seconds: started.elapsed().as_secs_f64(),
                per_class: BTreeMap::new(),
            },
        },
        edge_deletion: report,
    };
    if let Some(out) = &spec.out {
        let json = serde_json::to_string_pretty(&document).expect("document serializes");
        let r = &document.edge_deletion;
        let csv = format!(
            "n,graphs_checked,pairs_checked,pairs_skipped,violations,min_margin\n{},{},{},{},{},{}\n",
            r.n,
            r.graphs_checked,
            r.pairs_checked,
            r.pairs_skipped,
            r.violations,
            r.min_margin.map_or(String::new(), |m| m.to_string())
        );
        write_reports(out, &json, &csv)?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION_FAILED })
}

#[derive(Serialize)]
struct JoinLemmaDocument {
    manifest: RunManifest,
    join_lemma: verifier::JoinLemmaReport,
}

fn cmd_verify_join_lemma(spec: &VerifySpec, command_echo: Vec<String>) -> Result<i32, String> {
    let n_max = spec.n_max.ok_or("--join-lemma requires --n-max")?;
    if n_max > 10 {
        return Err(format!("--n-max {n_max} exceeds the supported bound 10"));
    }
    let started = Instant::now();
    let tolerances = Tolerances::default();
    let report = verifier::verify_join_lemma(n_max, &tolerances).map_err(|e| e.to_string())?;
    println!(
        "join-lemma n_max={n_max}: {} cases checked, {} violations, min margin {:?}",
        report.cases_checked, report.violations, report.min_margin
    );
    let ok = report.violations == 0;
    let document = JoinLemmaDocument {
        manifest: RunManifest {
            command: command_echo,
            grid: serde_json::json!({"mode": "join-lemma", "n_max": n_max}),
            tolerances,
            versions: versions(),
            input_digests: BTreeMap::new(),
            timing: Timing {
                total_seconds: started.elapsed().as_secs_f64(),
                per_class: BTreeMap::new(),
            },
        },
        join_lemma: report,
    };
    if let Some(out) = &spec.out {
        let json = serde_json::to_string_pretty(&document).expect("document serializes");
        let r = &document.join_lemma;
        let csv = format!(
            "n_max,cases_checked,violations,min_margin\n{},{},{},{}\n",
            r.n_max,
            r.cases_checked,
            r.violations,
            r.min_margin.map_or(String::new(), |m| m.to_string())
        );
        write_reports(out, &json, &csv)?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION_FAILED })
}
