//! Extremal family constructors: a clique core joined to disjoint clique
//! blocks, plus the three minimum-degree variants distinguished by where
//! the degree-delta vertex attaches.
//!
//! Labeling is deterministic: cut block first, then the remaining blocks in
//! the constructor's listed order, the attachment vertex `u` last.

use serde::Serialize;
use thiserror::Error;

use crate::connectivity::{self, ConnectivityError};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("cut block size must be at least 1")]
    ZeroCut,
    #[error("every clique block must have at least one vertex")]
    EmptyPart,
    #[error("minimum degree delta must be at least 1 (a connected member needs one edge at u)")]
    ZeroDelta,
    #[error("component count r must be at least 2, got {0}")]
    BadComponentCount(usize),
    #[error("extra parameter h must be at least 1, got {0}")]
    BadExtraParameter(usize),
    #[error("parameters fall in case {actual}, not the requested case {requested}")]
    CaseMismatch { requested: TheoremCase, actual: TheoremCase },
    #[error("order {n} is below the required {needed} (= ckappa + r(h+1))")]
    OrderTooSmall { n: usize, needed: usize },
    #[error("big block would have {big} vertices, fewer than the {small} of each small block")]
    BigBlockTooSmall { big: isize, small: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
}

/// Which branch of the extremal characterization applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TheoremCase {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
}

impl std::fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TheoremCase::I => "i",
            TheoremCase::II => "ii",
            TheoremCase::III => "iii",
        })
    }
}

/// Parameters of one extremal class: order, component count, extra
/// parameter, minimum degree, and the target connectivity value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub n: usize,
    pub r: usize,
    pub h: usize,
    pub delta: usize,
    pub ckappa: usize,
}

impl FamilyParams {
    /// The case split is a partition of the delta range, so exactly one
    /// case applies to any parameter set.
    pub fn case(&self) -> TheoremCase {
        if self.delta <= self.h {
            TheoremCase::I
        } else if self.delta < self.ckappa + self.h {
            TheoremCase::II
        } else {
            TheoremCase::III
        }
    }

    /// Checks the shared feasibility constraints and returns the case.
    pub fn validate(&self) -> Result<TheoremCase, FamilyError> {
        if self.r < 2 {
            return Err(FamilyError::BadComponentCount(self.r));
        }
        if self.h < 1 {
            return Err(FamilyError::BadExtraParameter(self.h));
        }
        if self.delta < 1 {
            return Err(FamilyError::ZeroDelta);
        }
        if self.ckappa < 1 {
            return Err(FamilyError::ZeroCut);
        }
        let needed = self.ckappa + self.r * (self.h + 1);
        if self.n < needed {
            return Err(FamilyError::OrderTooSmall { n: self.n, needed });
        }
        Ok(self.case())
    }
}

/// `K_s` joined to the disjoint union of cliques `K_{parts[0]}, ...`.
///
/// Labels: the cut block occupies `0..s`, then each part in listed order.
pub fn clique_join(s: usize, parts: &[usize]) -> Result<Graph, FamilyError> {
    if s == 0 {
        return Err(FamilyError::ZeroCut);
    }
    if parts.contains(&0) {
        return Err(FamilyError::EmptyPart);
    }
    let core = Graph::clique(s)?;
    let mut blocks: Option<Graph> = None;
    for &p in parts {
        let block = Graph::clique(p)?;
        blocks = Some(match blocks {
            None => block,
            Some(acc) => acc.disjoint_union(&block)?,
        });
    }
    match blocks {
        None => Ok(core),
        Some(b) => Ok(core.join(&b)?),
    }
}

/// Core shared by cases (i) and (ii): the clique join
/// `K_ckappa v (K_h u (r-2) K_{h+1} u K_big)` on `n - 1` vertices, with the
/// attachment vertex appended last and not yet wired.
fn pendant_core(p: &FamilyParams) -> Result<Graph, FamilyError> {
    let big = p.n - p.ckappa - (p.r - 1) * (p.h + 1);
    debug_assert!(big > p.h);
    let mut parts = vec![p.h];
    parts.extend(std::iter::repeat_n(p.h + 1, p.r - 2));
    parts.push(big);
    let core = clique_join(p.ckappa, &parts)?;
    Ok(core.with_new_vertex(crate::graph::VertexSet::EMPTY)?)
}

/// Case (i), `delta <= h`: `u` attaches to the first `delta` vertices of
/// the `K_h` block.
pub fn family_case_i(p: &FamilyParams) -> Result<Graph, FamilyError> {
    let case = p.validate()?;
    if case != TheoremCase::I {
        return Err(FamilyError::CaseMismatch {
            requested: TheoremCase::I,
            actual: case,
        });
    }
    let g = pendant_core(p)?;
    let u = p.n - 1;
    let edges: Vec<(usize, usize)> = (0..p.delta).map(|i| (u, p.ckappa + i)).collect();
    Ok(g.add_edges(&edges)?)
}

/// Case (ii), `h < delta < ckappa + h`: `u` attaches to all of `K_h` and to
/// the lexicographically first `delta - h` cut vertices.
pub fn family_case_ii(p: &FamilyParams) -> Result<Graph, FamilyError> {
    let case = p.validate()?;
    if case != TheoremCase::II {
        return Err(FamilyError::CaseMismatch {
            requested: TheoremCase::II,
            actual: case,
        });
    }
    let g = pendant_core(p)?;
    let u = p.n - 1;
    let mut edges: Vec<(usize, usize)> = (0..p.h).map(|i| (u, p.ckappa + i)).collect();
    edges.extend((0..p.delta - p.h).map(|i| (u, i)));
    Ok(g.add_edges(&edges)?)
}

/// Case (iii), `delta >= ckappa + h`: the pure clique join
/// `K_ckappa v (K_big u (r-1) K_{delta - ckappa + 1})`.
pub fn family_case_iii(p: &FamilyParams) -> Result<Graph, FamilyError> {
    let case = p.validate()?;
    if case != TheoremCase::III {
        return Err(FamilyError::CaseMismatch {
            requested: TheoremCase::III,
            actual: case,
        });
    }
    let small = p.delta - p.ckappa + 1;
    let big = p.n as isize - p.ckappa as isize - ((p.r - 1) * small) as isize;
    if big < small as isize {
        return Err(FamilyError::BigBlockTooSmall { big, small });
    }
    let mut parts = vec![big as usize];
    parts.extend(std::iter::repeat_n(small, p.r - 1));
    clique_join(p.ckappa, &parts)
}

/// Selects the case from the parameters and builds the family graph.
pub fn family_graph(p: &FamilyParams) -> Result<(TheoremCase, Graph), FamilyError> {
    let case = p.validate()?;
    let g = match case {
        TheoremCase::I => family_case_i(p)?,
        TheoremCase::II => family_case_ii(p)?,
        TheoremCase::III => family_case_iii(p)?,
    };
    Ok((case, g))
}

/// One property comparison in a validation report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check<T> {
    pub expected: T,
    pub actual: T,
    pub pass: bool,
}

impl<T: PartialEq + Clone> Check<T> {
    fn of(expected: T, actual: T) -> Self {
        let pass = expected == actual;
        Check {
            expected,
            actual,
            pass,
        }
    }
}

/// Pass/fail audit tying a constructed graph back to its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub order: Check<usize>,
    pub min_degree: Check<usize>,
    pub ckappa: Check<Option<usize>>,
    pub connected: Check<bool>,
}

impl FamilyReport {
    pub fn pass(&self) -> bool {
        self.order.pass && self.min_degree.pass && self.ckappa.pass && self.connected.pass
    }
}

/// Check order, minimum degree, connectivity value and connectedness of a
/// candidate family member. Failures land in the report, not in `Err`.
pub fn validate_family(g: &Graph, p: &FamilyParams) -> Result<FamilyReport, FamilyError> {
    let connected = g.is_connected();
    let ck = if connected {
        connectivity::ckappa(g, p.r, p.h)?.value
    } else {
        None
    };
    Ok(FamilyReport {
        order: Check::of(p.n, g.order()),
        min_degree: Check::of(p.delta, g.min_degree()),
        ckappa: Check::of(Some(p.ckappa), ck),
        connected: Check::of(true, connected),
    })
}
