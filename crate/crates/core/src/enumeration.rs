//! Canonical labeling, isomorphism testing, and exhaustive generation of
//! connected graphs up to isomorphism.
//!
//! The canonical key is the lexicographically smallest upper-triangle bit
//! string (column-major, the graph6 bit order) over all relabelings that
//! respect the iterated degree-partition refinement. Equal keys hold exactly
//! for isomorphic graphs: the refinement classes are isomorphism-invariant,
//! and the key reconstructs a concrete representative of the class.

use std::collections::BTreeSet;
use std::io::BufRead;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::graph6::{parse_graph6, Graph6Error};

/// Cap for the permutation search; beyond it the factorial blow-up needs a
/// real canonical-labeling library.
pub const MAX_CANONICAL_VERTICES: usize = 10;
/// Cap for in-process enumeration; larger orders are ingested from files.
pub const MAX_ENUMERATION_VERTICES: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("order {0} exceeds the {MAX_CANONICAL_VERTICES}-vertex canonical-form cap")]
    CanonicalOverCap(usize),
    #[error("order {0} outside the supported enumeration range 1..={MAX_ENUMERATION_VERTICES}")]
    EnumerationOverCap(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IngestError {
    #[error("graph6 stream line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: Graph6Error,
    },
    #[error("graph6 stream I/O failure at line {line}: {message}")]
    Io { line: usize, message: String },
}

impl IngestError {
    pub fn line(&self) -> usize {
        match self {
            IngestError::Parse { line, .. } | IngestError::Io { line, .. } => *line,
        }
    }
}

/// Labeling-invariant key: order plus the minimal packed upper triangle.
/// Bit `k` of the column-major triangle order sits at `u128` bit `127 - k`,
/// so numeric comparison equals lexicographic bit-string comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: u128,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n
    }

    /// The canonical representative graph encoded by the key.
    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for col in 1..self.n {
            for row in 0..col {
                if self.bits >> (127 - k) & 1 == 1 {
                    edges.push((row, col));
                }
                k += 1;
            }
        }
        Graph::from_edges(self.n, &edges).expect("canonical key encodes a valid graph")
    }

    /// graph6 line of the canonical representative; the standard exchange
    /// form of the key.
    pub fn to_graph6(&self) -> String {
        self.to_graph().to_graph6()
    }
}

/// Iterated degree-partition refinement. Returns one color per vertex;
/// colors are dense ranks ordered by an isomorphism-invariant signature, so
/// equal colorings are comparable across isomorphic graphs.
fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colors: Vec<usize> = {
        let mut degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let mut sorted = degrees.clone();
        sorted.sort_unstable();
        sorted.dedup();
        degrees
            .iter_mut()
            .for_each(|d| *d = sorted.binary_search(d).expect("degree present"));
        degrees
    };
    loop {
        let mut signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted = signatures.clone();
        sorted.sort();
        sorted.dedup();
        let class_count = sorted.len();
        if class_count == colors.iter().collect::<BTreeSet<_>>().len() {
            return colors;
        }
        for (v, sig) in signatures.drain(..).enumerate() {
            colors[v] = sorted.binary_search(&sig).expect("signature present");
        }
    }
}

struct CanonSearch<'a> {
    g: &'a Graph,
    n: usize,
    /// color class required at each target position
    position_class: Vec<usize>,
    /// vertices grouped by color class, ascending
    class_members: Vec<Vec<usize>>,
    assignment: Vec<usize>,
    used: u64,
    best: u128,
}

impl CanonSearch<'_> {
    fn run(mut self) -> u128 {
        self.dfs(0, 0);
        self.best
    }

    fn dfs(&mut self, pos: usize, bits: u128) {
        if pos == self.n {
            if bits < self.best {
                self.best = bits;
            }
            return;
        }
        // bits filled once positions 0..=pos are assigned
        let filled = pos * (pos + 1) / 2;
        let mask = if filled == 0 {
            0
        } else {
            !0u128 << (128 - filled)
        };
        let class = self.position_class[pos];
        for i in 0..self.class_members[class].len() {
            let v = self.class_members[class][i];
            if self.used >> v & 1 == 1 {
                continue;
            }
            let mut column = 0u128;
            for (row, &w) in self.assignment[..pos].iter().enumerate() {
                if self.g.has_edge(w, v) {
                    let k = pos * (pos - 1) / 2 + row;
                    column |= 1u128 << (127 - k);
                }
            }
            let candidate = bits | column;
            if mask != 0 && candidate & mask > self.best & mask {
                continue;
            }
            self.assignment[pos] = v;
            self.used |= 1 << v;
            self.dfs(pos + 1, candidate);
            self.used &= !(1 << v);
        }
    }
}

/// Minimal bit string over all refinement-respecting relabelings.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, EnumerationError> {
    let n = g.order();
    if n > MAX_CANONICAL_VERTICES {
        return Err(EnumerationError::CanonicalOverCap(n));
    }
    if n == 1 {
        return Ok(CanonicalForm { n, bits: 0 });
    }
    let colors = refine_colors(g);
    let class_count = colors.iter().max().unwrap() + 1;
    let mut class_members = vec![Vec::new(); class_count];
    for (v, &c) in colors.iter().enumerate() {
        class_members[c].push(v);
    }
    let mut position_class = Vec::with_capacity(n);
    for (c, members) in class_members.iter().enumerate() {
        position_class.extend(std::iter::repeat_n(c, members.len()));
    }
    let bits = CanonSearch {
        g,
        n,
        position_class,
        class_members,
        assignment: vec![usize::MAX; n],
        used: 0,
        best: u128::MAX,
    }
    .run();
    Ok(CanonicalForm { n, bits })
}

/// Canonical-key equality; orders are compared first.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, EnumerationError> {
    if a.order() != b.order() {
        return Ok(false);
    }
    if a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Every connected graph on `n` vertices, exactly once up to isomorphism,
/// in ascending canonical-key order.
///
/// Level k+1 is generated from the canonical level-k representatives by
/// attaching a new vertex with every nonempty neighborhood; every connected
/// graph arises this way because removing a non-cut vertex (one always
/// exists) leaves a connected graph.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, EnumerationError> {
    if n == 0 || n > MAX_ENUMERATION_VERTICES {
        return Err(EnumerationError::EnumerationOverCap(n));
    }
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    level.insert(canonical_form(&Graph::clique(1).expect("K1 is valid"))?);
    for k in 2..=n {
        let mut next = BTreeSet::new();
        for form in &level {
            let g = form.to_graph();
            for mask in 1..(1u64 << (k - 1)) {
                let extended = g
                    .with_new_vertex(VertexSet::from_bits(mask))
                    .expect("extension stays under the cap");
                next.insert(canonical_form(&extended)?);
            }
        }
        level = next;
    }
    Ok(level.iter().map(CanonicalForm::to_graph).collect())
}

/// Abort on the first malformed line, or skip and report them all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    Lenient,
}

/// Graphs parsed from a stream, plus the skipped lines under lenient mode.
#[derive(Debug)]
pub struct IngestOutcome {
    pub graphs: Vec<Graph>,
    pub skipped: Vec<IngestError>,
}

/// Parse a graph6 stream, one graph per line; blank lines are ignored.
/// Line numbers are 1-based.
pub fn ingest_graph6_stream(
    reader: impl BufRead,
    strictness: Strictness,
) -> Result<IngestOutcome, IngestError> {
    let mut graphs = Vec::new();
    let mut skipped = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| IngestError::Io {
            line: line_no,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_graph6(&line) {
            Ok(g) => graphs.push(g),
            Err(source) => {
                let err = IngestError::Parse {
                    line: line_no,
                    source,
                };
                match strictness {
                    Strictness::Strict => return Err(err),
                    Strictness::Lenient => skipped.push(err),
                }
            }
        }
    }
    Ok(IngestOutcome { graphs, skipped })
}
