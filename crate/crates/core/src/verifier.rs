//! The sweep harness: partition graphs into classes by (order, minimum
//! degree, connectivity value), locate each class's distance-spectral-radius
//! minimizer, and compare it against the predicted extremal family; plus the
//! two supporting property sweeps (edge deletion, clique-join comparison).
//!
//! Reports are deterministic given the inputs and tolerances: per-graph
//! evaluation is order-preserving regardless of the worker count, and class
//! aggregation is an ordered reduction over canonical keys.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::connectivity::{self, ConnectivityError};
use crate::enumeration::{self, EnumerationError, IngestError, Strictness};
use crate::families::{self, FamilyError, FamilyParams, FamilyReport};
use crate::graph::Graph;
use crate::spectral::{self, SpectralError};

#[derive(Debug, Error)]
pub enum VerifierError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("cannot read graph source {path}: {message}")]
    SourceIo { path: PathBuf, message: String },
    #[error("source graph {index} has order {got}, sweep expects {expected}")]
    SourceOrderMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error(
        "predicted family graph for class (n={n}, delta={delta}, ckappa={ckappa}) fails \
         self-validation; constructor bug: {report:?}"
    )]
    PredictedNotInClass {
        n: usize,
        delta: usize,
        ckappa: usize,
        report: Box<FamilyReport>,
    },
    #[error(
        "minimizer {canon} of class (n={n}, delta={delta}, ckappa={ckappa}) has a minimum cut \
         with {got} components, expected exactly r = {r}"
    )]
    MinimizerCutComponents {
        n: usize,
        delta: usize,
        ckappa: usize,
        r: usize,
        canon: String,
        got: usize,
    },
    #[error("h-extra r-component connectivity is undefined for this graph")]
    CkappaUndefined,
}

/// Pinned comparison tolerances.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    /// Power-iteration residual target.
    pub power_tol: f64,
    /// Margin below which two radii count as equal.
    pub cmp_tol: f64,
    /// Window above the class minimum for collecting tie candidates.
    pub tie_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            power_tol: 1e-12,
            cmp_tol: 1e-9,
            tie_tol: 1e-7,
        }
    }
}

/// One theorem class: all graphs of the sweep order sharing a minimum
/// degree and a connectivity value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClassKey {
    pub n: usize,
    pub delta: usize,
    pub r: usize,
    pub h: usize,
    pub ckappa: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "TIE_AMBIGUOUS")]
    TieAmbiguous,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    #[serde(rename = "CLASS_EMPTY")]
    ClassEmpty,
    #[serde(rename = "HYPOTHESIS_UNMET")]
    HypothesisUnmet,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Match => "MATCH",
            Verdict::TieAmbiguous => "TIE_AMBIGUOUS",
            Verdict::Mismatch => "MISMATCH",
            Verdict::ClassEmpty => "CLASS_EMPTY",
            Verdict::HypothesisUnmet => "HYPOTHESIS_UNMET",
        })
    }
}

/// Per-class comparison outcome. Wall time is kept out of serialization so
/// reports stay byte-identical across runs; the CLI serializes timings into
/// a separate manifest section.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub key: ClassKey,
    pub class_size: usize,
    pub min_lambda1: Option<f64>,
    /// Canonical graph6 keys of the minimizers, ascending.
    pub minimizers: Vec<String>,
    /// Canonical graph6 key of the predicted family graph.
    pub predicted: Option<String>,
    pub verdict: Verdict,
    #[serde(skip)]
    pub timing: f64,
}

/// Where sweep graphs come from.
#[derive(Debug, Clone)]
pub enum GraphSource {
    /// In-process isomorph-free enumeration (order capped at 8).
    Enumerate,
    /// One graph6 line per row; every graph must have the sweep order.
    Graph6File(PathBuf),
}

pub fn load_graphs(source: &GraphSource, n: usize) -> Result<Vec<Graph>, VerifierError> {
    match source {
        GraphSource::Enumerate => Ok(enumeration::enumerate_connected(n)?),
        GraphSource::Graph6File(path) => {
            let file = File::open(path).map_err(|e| VerifierError::SourceIo {
                path: path.clone(),
                message: e.to_string(),
            })?;
            let outcome = enumeration::ingest_graph6_stream(BufReader::new(file), Strictness::Strict)?;
            for (index, g) in outcome.graphs.iter().enumerate() {
                if g.order() != n {
                    return Err(VerifierError::SourceOrderMismatch {
                        index,
                        expected: n,
                        got: g.order(),
                    });
                }
            }
            Ok(outcome.graphs)
        }
    }
}

// ---------------------------------------------------------------------------
// evaluation cache

/// Flat-file cache of per-graph results keyed by canonical graph6 digest and
/// the (r, h) parameters. The radius is stored as raw f64 bits so cached and
/// fresh runs are byte-identical.
#[derive(Debug, Default)]
pub struct EvalCache {
    entries: HashMap<(String, usize, usize), (u64, Option<usize>)>,
}

pub type CacheEntry = ((String, usize, usize), (u64, Option<usize>));

impl EvalCache {
    pub fn new() -> Self {
        EvalCache::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, canon_g6: &str, r: usize, h: usize) -> Option<(f64, Option<usize>)> {
        self.entries
            .get(&(canon_g6.to_owned(), r, h))
            .map(|&(bits, ck)| (f64::from_bits(bits), ck))
    }

    pub fn merge(&mut self, new_entries: Vec<CacheEntry>) {
        for (key, value) in new_entries {
            self.entries.entry(key).or_insert(value);
        }
    }

    /// Missing files load as an empty cache; malformed lines are ignored.
    pub fn load(path: &Path) -> std::io::Result<Self> {
        let mut cache = EvalCache::new();
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e),
        };
        for line in text.lines() {
            let mut parts = line.split('\t');
            let (Some(g6), Some(r), Some(h), Some(bits), Some(ck)) = (
                parts.next(),
                parts.next(),
                parts.next(),
                parts.next(),
                parts.next(),
            ) else {
                continue;
            };
            let (Ok(r), Ok(h), Ok(bits)) = (r.parse(), h.parse(), u64::from_str_radix(bits, 16))
            else {
                continue;
            };
            let ck = if ck == "-" { None } else { ck.parse().ok().map(Some).unwrap_or(None) };
            cache.entries.insert((g6.to_owned(), r, h), (bits, ck));
        }
        Ok(cache)
    }

    /// Writes entries sorted by key so the file itself is deterministic.
    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut keys: Vec<_> = self.entries.keys().collect();
        keys.sort();
        let mut out = String::new();
        for key in keys {
            let (bits, ck) = &self.entries[key];
            let ck = ck.map_or_else(|| "-".to_owned(), |v| v.to_string());
            out.push_str(&format!("{}\t{}\t{}\t{:016x}\t{}\n", key.0, key.1, key.2, bits, ck));
        }
        let mut file = File::create(path)?;
        file.write_all(out.as_bytes())
    }
}

/// Everything the harness needs to know about one graph.
#[derive(Debug, Clone)]
pub struct GraphEvaluation {
    pub graph: Graph,
    pub canon_g6: String,
    pub delta: usize,
    pub ckappa: Option<usize>,
    pub lambda1: f64,
}

/// Evaluate radius, minimum degree and connectivity for every graph,
/// fanning out across the current rayon pool. Output order matches input
/// order, so results are identical for any worker count.
pub fn evaluate_graphs(
    graphs: &[Graph],
    r: usize,
    h: usize,
    tolerances: &Tolerances,
    cache: &EvalCache,
) -> Result<(Vec<GraphEvaluation>, Vec<CacheEntry>), VerifierError> {
    let results: Result<Vec<(GraphEvaluation, Option<CacheEntry>)>, VerifierError> = graphs
        .par_iter()
        .map(|g| {
            let canon_g6 = enumeration::canonical_form(g)?.to_graph6();
            let delta = g.min_degree();
            let (lambda1, ckappa, new_entry) = match cache.get(&canon_g6, r, h) {
                Some((lambda1, ckappa)) => (lambda1, ckappa, None),
                None => {
                    let lambda1 =
                        spectral::distance_spectral_radius(g, tolerances.power_tol)?.lambda1;
                    let ckappa = connectivity::ckappa(g, r, h)?.value;
                    let entry = (
                        (canon_g6.clone(), r, h),
                        (lambda1.to_bits(), ckappa),
                    );
                    (lambda1, ckappa, Some(entry))
                }
            };
            Ok((
                GraphEvaluation {
                    graph: g.clone(),
                    canon_g6,
                    delta,
                    ckappa,
                    lambda1,
                },
                new_entry,
            ))
        })
        .collect();
    let mut evaluations = Vec::with_capacity(graphs.len());
    let mut new_entries = Vec::new();
    for (eval, entry) in results? {
        evaluations.push(eval);
        new_entries.extend(entry);
    }
    Ok((evaluations, new_entries))
}

/// Component count of the minimum-cut witness.
pub fn minimal_cut_component_count(g: &Graph, r: usize, h: usize) -> Result<usize, VerifierError> {
    let result = connectivity::ckappa(g, r, h)?;
    result
        .witness
        .map(|w| w.component_count())
        .ok_or(VerifierError::CkappaUndefined)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Restrict reports to one minimum degree.
    pub delta_filter: Option<usize>,
    /// Restrict reports to one connectivity value.
    pub ckappa_filter: Option<usize>,
}

/// Outcome of one theorem sweep.
#[derive(Debug, Serialize)]
pub struct TheoremSweep {
    pub n: usize,
    pub r: usize,
    pub h: usize,
    pub graphs_total: usize,
    /// Graphs excluded because no valid (r, h) cut exists.
    pub ckappa_undefined: usize,
    pub reports: Vec<VerificationReport>,
}

impl TheoremSweep {
    /// Count of classes where a comparison actually ran.
    pub fn classes_verified(&self) -> usize {
        self.reports
            .iter()
            .filter(|rep| {
                matches!(
                    rep.verdict,
                    Verdict::Match | Verdict::Mismatch | Verdict::TieAmbiguous
                )
            })
            .count()
    }

    /// True when the grid could not be checked at all: every graph lacks a
    /// valid cut, or every report row is informational.
    pub fn grid_infeasible(&self) -> bool {
        self.classes_verified() == 0
    }

    /// True when no verdict refutes the predicted minimizers. Under
    /// `strict`, informational rows and an infeasible grid also fail.
    pub fn all_match(&self, strict: bool) -> bool {
        if strict && self.grid_infeasible() {
            return false;
        }
        self.reports.iter().all(|rep| match rep.verdict {
            Verdict::Match => true,
            Verdict::Mismatch | Verdict::TieAmbiguous => false,
            Verdict::ClassEmpty | Verdict::HypothesisUnmet => !strict,
        })
    }
}

/// Sweep all source graphs of order `n`, class them by (min degree,
/// connectivity value), and compare each class minimizer against the
/// family predicted by the case split.
pub fn verify_theorem(
    n: usize,
    r: usize,
    h: usize,
    source: &GraphSource,
    options: &VerifyOptions,
    tolerances: &Tolerances,
    cache: &EvalCache,
) -> Result<(TheoremSweep, Vec<CacheEntry>), VerifierError> {
    let graphs = load_graphs(source, n)?;
    let (evaluations, new_entries) = evaluate_graphs(&graphs, r, h, tolerances, cache)?;

    let mut classes: BTreeMap<ClassKey, Vec<usize>> = BTreeMap::new();
    let mut ckappa_undefined = 0usize;
    for (idx, eval) in evaluations.iter().enumerate() {
        match eval.ckappa {
            None => ckappa_undefined += 1,
            Some(ck) => {
                let key = ClassKey {
                    n,
                    delta: eval.delta,
                    r,
                    h,
                    ckappa: ck,
                };
                classes.entry(key).or_default().push(idx);
            }
        }
    }

    let matches_filter = |key: &ClassKey| {
        options.delta_filter.is_none_or(|d| key.delta == d)
            && options.ckappa_filter.is_none_or(|c| key.ckappa == c)
    };

    let mut reports = Vec::new();
    for (key, members) in &classes {
        if !matches_filter(key) {
            continue;
        }
        reports.push(report_class(key, members, &evaluations, tolerances)?);
    }

    // a fully filtered request that hit nothing is an explicit empty class
    if let (Some(delta), Some(ckappa)) = (options.delta_filter, options.ckappa_filter) {
        let key = ClassKey {
            n,
            delta,
            r,
            h,
            ckappa,
        };
        if !classes.contains_key(&key) {
            reports.push(VerificationReport {
                key,
                class_size: 0,
                min_lambda1: None,
                minimizers: Vec::new(),
                predicted: None,
                verdict: Verdict::ClassEmpty,
                timing: 0.0,
            });
            reports.sort_by_key(|r| r.key);
        }
    }

    Ok((
        TheoremSweep {
            n,
            r,
            h,
            graphs_total: graphs.len(),
            ckappa_undefined,
            reports,
        },
        new_entries,
    ))
}

fn jacobi_lambda1(g: &Graph) -> Result<f64, VerifierError> {
    let m = spectral::DistanceMatrix::from_graph(g)?;
    Ok(spectral::full_spectrum(&m)?[0])
}

fn report_class(
    key: &ClassKey,
    members: &[usize],
    evaluations: &[GraphEvaluation],
    tolerances: &Tolerances,
) -> Result<VerificationReport, VerifierError> {
    let started = Instant::now();
    let min_lambda1 = members
        .iter()
        .map(|&i| evaluations[i].lambda1)
        .fold(f64::INFINITY, f64::min);
    let candidates: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&i| evaluations[i].lambda1 <= min_lambda1 + tolerances.tie_tol)
        .collect();

    let hypothesis_met = key.n >= key.ckappa + key.r * (key.h + 1);
    if !hypothesis_met {
        let mut minimizers: Vec<String> = candidates
            .iter()
            .map(|&i| evaluations[i].canon_g6.clone())
            .collect();
        minimizers.sort();
        return Ok(VerificationReport {
            key: *key,
            class_size: members.len(),
            min_lambda1: Some(min_lambda1),
            minimizers,
            predicted: None,
            verdict: Verdict::HypothesisUnmet,
            timing: started.elapsed().as_secs_f64(),
        });
    }

    // near-ties escalate to the full-spectrum oracle before the structural
    // isomorphism comparison settles uniqueness
    let final_minimizers: Vec<usize> = if candidates.len() == 1 {
        candidates
    } else {
        let refined: Vec<(usize, f64)> = candidates
            .iter()
            .map(|&i| Ok((i, jacobi_lambda1(&evaluations[i].graph)?)))
            .collect::<Result<_, VerifierError>>()?;
        let best = refined
            .iter()
            .map(|&(_, l)| l)
            .fold(f64::INFINITY, f64::min);
        refined
            .into_iter()
            .filter(|&(_, l)| l <= best + tolerances.cmp_tol)
            .map(|(i, _)| i)
            .collect()
    };

    let params = FamilyParams {
        n: key.n,
        r: key.r,
        h: key.h,
        delta: key.delta,
        ckappa: key.ckappa,
    };
    let (_case, predicted_graph) = families::family_graph(&params)?;
    let self_check = families::validate_family(&predicted_graph, &params)?;
    if !self_check.pass() {
        return Err(VerifierError::PredictedNotInClass {
            n: key.n,
            delta: key.delta,
            ckappa: key.ckappa,
            report: Box::new(self_check),
        });
    }
    let predicted = enumeration::canonical_form(&predicted_graph)?.to_graph6();

    // the minimum cut of a class minimizer must split into exactly r parts
    for &i in &final_minimizers {
        let count = minimal_cut_component_count(&evaluations[i].graph, key.r, key.h)?;
        if count != key.r {
            return Err(VerifierError::MinimizerCutComponents {
                n: key.n,
                delta: key.delta,
                ckappa: key.ckappa,
                r: key.r,
                canon: evaluations[i].canon_g6.clone(),
                got: count,
            });
        }
    }

    let mut minimizers: Vec<String> = final_minimizers
        .iter()
        .map(|&i| evaluations[i].canon_g6.clone())
        .collect();
    minimizers.sort();
    minimizers.dedup();

    let verdict = if minimizers.len() == 1 {
        if minimizers[0] == predicted {
            Verdict::Match
        } else {
            Verdict::Mismatch
        }
    } else if minimizers.contains(&predicted) {
        Verdict::TieAmbiguous
    } else {
        Verdict::Mismatch
    };

    Ok(VerificationReport {
        key: *key,
        class_size: members.len(),
        min_lambda1: Some(min_lambda1),
        minimizers,
        predicted: Some(predicted),
        verdict,
        timing: started.elapsed().as_secs_f64(),
    })
}

// ---------------------------------------------------------------------------
// lemma sweeps

/// Exhaustive check that deleting a connectivity-preserving edge strictly
/// raises the distance spectral radius.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeDeletionReport {
    pub n: usize,
    pub graphs_checked: usize,
    pub pairs_checked: usize,
    pub pairs_skipped: usize,
    pub violations: usize,
    pub min_margin: Option<f64>,
}

pub fn verify_edge_deletion_lemma(
    n: usize,
    tolerances: &Tolerances,
) -> Result<EdgeDeletionReport, VerifierError> {
    let graphs = enumeration::enumerate_connected(n)?;
    let per_graph: Result<Vec<(usize, usize, usize, f64)>, VerifierError> = graphs
        .par_iter()
        .map(|g| {
            let base = spectral::distance_spectral_radius(g, tolerances.power_tol)?.lambda1;
            let mut checked = 0;
            let mut skipped = 0;
            let mut violations = 0;
            let mut min_margin = f64::INFINITY;
            for e in g.edges() {
                let smaller = g.delete_edge(e).expect("edge listed by the graph");
                if !smaller.is_connected() {
                    skipped += 1;
                    continue;
                }
                let deleted =
                    spectral::distance_spectral_radius(&smaller, tolerances.power_tol)?.lambda1;
                let margin = deleted - base;
                checked += 1;
                min_margin = min_margin.min(margin);
                if margin <= tolerances.cmp_tol {
                    violations += 1;
                }
            }
            Ok((checked, skipped, violations, min_margin))
        })
        .collect();

    let mut pairs_checked = 0;
    let mut pairs_skipped = 0;
    let mut violations = 0;
    let mut min_margin = f64::INFINITY;
    for (checked, skipped, v, margin) in per_graph? {
        pairs_checked += checked;
        pairs_skipped += skipped;
        violations += v;
        min_margin = min_margin.min(margin);
    }
    Ok(EdgeDeletionReport {
        n,
        graphs_checked: graphs.len(),
        pairs_checked,
        pairs_skipped,
        violations,
        min_margin: (min_margin != f64::INFINITY).then_some(min_margin),
    })
}

/// Exhaustive check of the clique-join comparison: any admissible block
/// partition has a strictly larger radius than the extremal one with all
/// small blocks pinned at `p`.
#[derive(Debug, Clone, Serialize)]
pub struct JoinLemmaReport {
    pub n_max: usize,
    pub cases_checked: usize,
    pub violations: usize,
    pub min_margin: Option<f64>,
}

/// Descending partitions of `total` into exactly `count` parts.
fn descending_partitions(total: usize, count: usize, max_part: usize) -> Vec<Vec<usize>> {
    if count == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let hi = total.min(max_part);
    for first in (1..=hi).rev() {
        if first * count < total {
            break;
        }
        for mut rest in descending_partitions(total - first, count - 1, first) {
            let mut parts = Vec::with_capacity(count);
            parts.push(first);
            parts.append(&mut rest);
            out.push(parts);
        }
    }
    out
}

pub fn verify_join_lemma(
    n_max: usize,
    tolerances: &Tolerances,
) -> Result<JoinLemmaReport, VerifierError> {
    let mut grid = Vec::new();
    for n in 3..=n_max {
        for s in 1..=n.saturating_sub(2) {
            let m = n - s;
            for c in 2..=m {
                for parts in descending_partitions(m, c, m) {
                    let smallest = *parts.last().expect("c >= 2 parts");
                    for p in 1..=smallest {
                        // extremal shapes themselves are excluded here
                        if parts[0] < n - s - (c - 1) * p {
                            grid.push((s, parts.clone(), p, n));
                        }
                    }
                }
            }
        }
    }

    let margins: Result<Vec<f64>, VerifierError> = grid
        .par_iter()
        .map(|(s, parts, p, n)| {
            let lhs = families::clique_join(*s, parts)?;
            let mut extremal_parts = vec![n - s - p * (parts.len() - 1)];
            extremal_parts.extend(std::iter::repeat_n(*p, parts.len() - 1));
            let rhs = families::clique_join(*s, &extremal_parts)?;
            let lhs_lambda = spectral::distance_spectral_radius(&lhs, tolerances.power_tol)?;
            let rhs_lambda = spectral::distance_spectral_radius(&rhs, tolerances.power_tol)?;
            Ok(lhs_lambda.lambda1 - rhs_lambda.lambda1)
        })
        .collect();
    let margins = margins?;
    let violations = margins
        .iter()
        .filter(|&&m| m <= tolerances.cmp_tol)
        .count();
    let min_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(JoinLemmaReport {
        n_max,
        cases_checked: margins.len(),
        violations,
        min_margin: (min_margin != f64::INFINITY).then_some(min_margin),
    })
}
