//! Exact h-extra r-component connectivity and classic vertex connectivity.
//!
//! The search scans candidate cuts by ascending size and, within one size,
//! in lexicographic order, so the first valid cut found is the minimum and
//! the returned witness is deterministic.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Search cap: `2^12` subsets per size is trivial, beyond that the
/// exhaustive scan needs a smarter algorithm.
pub const MAX_CKAPPA_VERTICES: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("graph is disconnected; conditional connectivity requires a connected input")]
    Disconnected,
    #[error("component count r must be at least 2, got {0}")]
    BadComponentCount(usize),
    #[error("order {0} exceeds the {MAX_CKAPPA_VERTICES}-vertex cut-search cap")]
    OverCap(usize),
    #[error("cut set must be nonempty")]
    EmptyCut,
    #[error("cut set must leave at least one vertex")]
    FullCut,
    #[error("cut vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
}

/// A vertex cut together with the component size profile it produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentCut {
    /// Removed vertices.
    #[serde(serialize_with = "serialize_vertex_set")]
    pub s: VertexSet,
    /// Component orders of `G - S`, ascending.
    pub component_sizes: Vec<usize>,
}

fn serialize_vertex_set<S: serde::Serializer>(s: &VertexSet, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(s.iter())
}

impl ComponentCut {
    pub fn component_count(&self) -> usize {
        self.component_sizes.len()
    }

    /// Valid for `(r, h)` iff at least `r` components remain, all of order
    /// at least `h + 1`.
    #[allow(clippy::int_plus_one)] // mirrors the definition's h+1 bound
    pub fn is_valid_for(&self, r: usize, h: usize) -> bool {
        self.component_count() >= r && self.component_sizes.iter().all(|&s| s >= h + 1)
    }
}

/// Result of the minimum-cut search: `value` is `None` when no cut
/// qualifies for the requested `(r, h)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CkappaResult {
    pub value: Option<usize>,
    pub witness: Option<ComponentCut>,
}

impl CkappaResult {
    pub fn is_defined(&self) -> bool {
        self.value.is_some()
    }
}

/// Decompose `G - S` and report whether the cut is valid for `(r, h)`.
pub fn is_valid_cut(
    g: &Graph,
    s: VertexSet,
    r: usize,
    h: usize,
) -> Result<(bool, ComponentCut), ConnectivityError> {
    if s.is_empty() {
        return Err(ConnectivityError::EmptyCut);
    }
    if let Some(v) = s.iter().find(|&v| v >= g.order()) {
        return Err(ConnectivityError::VertexOutOfRange {
            vertex: v,
            order: g.order(),
        });
    }
    if s.len() >= g.order() {
        return Err(ConnectivityError::FullCut);
    }
    let decomposition = g.components_without(s);
    let cut = ComponentCut {
        s,
        component_sizes: decomposition.sorted_sizes(),
    };
    let valid = cut.is_valid_for(r, h);
    Ok((valid, cut))
}

/// Yields k-subsets of `0..n` in lexicographic order as bitmasks.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(VertexSet) -> bool) {
    if k == 0 || k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask: VertexSet = idx.iter().copied().collect();
        if f(mask) {
            return;
        }
        // lexicographic successor
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact `h`-extra `r`-component connectivity with a minimum witness.
///
/// Scans sizes `1 ..= n - r(h+1)`; within each size the first valid subset
/// in lexicographic order wins.
#[allow(clippy::int_plus_one)] // mirrors the definition's h+1 bound
pub fn ckappa(g: &Graph, r: usize, h: usize) -> Result<CkappaResult, ConnectivityError> {
    if r < 2 {
        return Err(ConnectivityError::BadComponentCount(r));
    }
    let n = g.order();
    if n > MAX_CKAPPA_VERTICES {
        return Err(ConnectivityError::OverCap(n));
    }
    if !g.is_connected() {
        return Err(ConnectivityError::Disconnected);
    }
    let max_size = n.saturating_sub(r * (h + 1));
    for size in 1..=max_size {
        let mut hit: Option<ComponentCut> = None;
        for_each_subset(n, size, |s| {
            let decomposition = g.components_without(s);
            if decomposition.count >= r && decomposition.min_size() >= h + 1 {
                hit = Some(ComponentCut {
                    s,
                    component_sizes: decomposition.sorted_sizes(),
                });
                true
            } else {
                false
            }
        });
        if let Some(cut) = hit {
            return Ok(CkappaResult {
                value: Some(size),
                witness: Some(cut),
            });
        }
    }
    Ok(CkappaResult {
        value: None,
        witness: None,
    })
}

/// Classic vertex connectivity: `ckappa(g, 2, 0)` when defined, otherwise
/// the complete-graph convention `n - 1`.
pub fn kappa(g: &Graph) -> Result<usize, ConnectivityError> {
    if !g.is_connected() {
        return Err(ConnectivityError::Disconnected);
    }
    let n = g.order();
    if g.edge_count() == n * (n - 1) / 2 {
        return Ok(n - 1);
    }
    let result = ckappa(g, 2, 0)?;
    Ok(result
        .value
        .expect("a non-complete connected graph always has a 0-extra 2-component cut"))
}
