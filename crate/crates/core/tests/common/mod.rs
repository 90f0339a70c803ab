//! Independent oracles shared by the integration suites. These deliberately
//! avoid the library's search/enumeration code paths: vertex connectivity
//! comes from Menger's theorem via augmenting paths, and the census comes
//! from filtering every labeled graph.
//!
//! Not every test target uses every oracle.
#![allow(dead_code)]

use std::collections::HashSet;

use rayon::prelude::*;

use dsr::enumeration::canonical_form;
use dsr::Graph;

/// Vertex connectivity by Menger's theorem: the minimum over non-adjacent
/// pairs (s, t) of the maximum number of internally vertex-disjoint s-t
/// paths, computed as unit-capacity max flow on the vertex-split digraph.
/// Complete graphs take the n-1 convention.
pub fn flow_kappa(g: &Graph) -> usize {
    let n = g.order();
    assert!(g.is_connected());
    if g.edge_count() == n * (n - 1) / 2 {
        return n - 1;
    }
    let mut best = usize::MAX;
    for s in 0..n {
        for t in (s + 1)..n {
            if g.has_edge(s, t) {
                continue;
            }
            best = best.min(max_vertex_disjoint_paths(g, s, t));
        }
    }
    best
}

/// Unit-capacity max flow from `s` to `t` in the split digraph where every
/// vertex except the endpoints has capacity one.
fn max_vertex_disjoint_paths(g: &Graph, s: usize, t: usize) -> usize {
    let n = g.order();
    // node 2v = v_in, 2v+1 = v_out
    let nodes = 2 * n;
    let mut cap = vec![0u8; nodes * nodes];
    for v in 0..n {
        cap[(2 * v) * nodes + 2 * v + 1] = 1;
    }
    for (u, v) in g.edges() {
        cap[(2 * u + 1) * nodes + 2 * v] = 2; // never binding; vertex caps limit flow
        cap[(2 * v + 1) * nodes + 2 * u] = 2;
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0;
    loop {
        // BFS augmenting path
        let mut parent = vec![usize::MAX; nodes];
        parent[source] = source;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for v in 0..nodes {
                if parent[v] == usize::MAX && cap[u * nodes + v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[sink] == usize::MAX {
            return flow;
        }
        let mut v = sink;
        while v != source {
            let u = parent[v];
            cap[u * nodes + v] -= 1;
            cap[v * nodes + u] += 1;
            v = u;
        }
        flow += 1;
    }
}

/// Graph from the upper-triangle bit mask in column-major order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for col in 1..n {
        for row in 0..col {
            if mask >> k & 1 == 1 {
                edges.push((row, col));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("mask encodes a simple graph")
}

/// Count connected graphs of order `n` up to isomorphism by brute force:
/// every labeled graph, filtered for connectivity, deduplicated by
/// canonical key.
pub fn census_bruteforce(n: usize) -> usize {
    let bits = n * (n - 1) / 2;
    let keys: HashSet<_> = (0u64..1 << bits)
        .into_par_iter()
        .filter_map(|mask| {
            let g = graph_from_mask(n, mask);
            g.is_connected().then(|| canonical_form(&g).expect("order under cap"))
        })
        .collect();
    keys.len()
}
