//! n-Rips graphs on a universe and audits of their graph-level properties.

use std::collections::BTreeSet;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;
use crate::universe::{Universe, VertexId};

/// The graph `Γ_n`: an edge joins distinct `x, y` with `|x, y|_S <= n`.
#[derive(Debug, Clone)]
pub struct RipsGraph {
    pub n: u32,
    pub graph: Graph,
    /// Edges whose defining distance is not certified exact.
    pub uncertified_edges: BTreeSet<(usize, usize)>,
    /// Non-adjacent pairs whose distance is not certified and not bounded
    /// away from `n`, so an edge may be missing.
    pub uncertified_non_edges: usize,
}

impl RipsGraph {
    pub fn is_certified(&self, x: usize, y: usize) -> bool {
        !self.uncertified_edges.contains(&(x.min(y), x.max(y)))
    }

    pub fn fully_certified(&self) -> bool {
        self.uncertified_edges.is_empty() && self.uncertified_non_edges == 0
    }
}

pub fn rips_graph(u: &Universe, n: u32) -> Result<RipsGraph> {
    if n == 0 {
        return Err(Error::input("Rips parameter n must be at least 1"));
    }
    let total = u.len();
    let mut graph = Graph::new(total);
    let mut uncertified_edges = BTreeSet::new();
    let mut uncertified_non_edges = 0;
    for x in 0..total {
        for y in (x + 1)..total {
            let d = u.distance(VertexId(x), VertexId(y));
            if d.value <= n {
                graph.add_edge(x, y);
                if !d.exact {
                    uncertified_edges.insert((x, y));
                }
            } else if !d.exact && u.distance_lower_bound(VertexId(x), VertexId(y)) <= n {
                uncertified_non_edges += 1;
            }
        }
    }
    Ok(RipsGraph { n, graph, uncertified_edges, uncertified_non_edges })
}

/// Subgraph of `Γ_n` induced on `vertices`, together with whether every
/// adjacency among them is certain.
pub fn induced_rips(u: &Universe, vertices: &[VertexId], n: u32) -> (Graph, bool) {
    let mut g = Graph::new(vertices.len());
    let mut certified = true;
    for (i, &x) in vertices.iter().enumerate() {
        for (j, &y) in vertices.iter().enumerate().skip(i + 1) {
            let d = u.distance(x, y);
            certified &= d.exact || d.value <= n || u.distance_lower_bound(x, y) > n;
            if d.value <= n {
                g.add_edge(i, j);
            }
        }
    }
    (g, certified)
}

/// Number of circuits (embedded closed edge-paths) of length at most
/// `max_len` through the edge `(a, b)`, by exhaustive search.
///
/// Each circuit through `(a, b)` is `(a, b)` followed by a simple path from
/// `b` back to `a` of length at least 2, so those paths are counted.
pub fn fineness_audit(g: &Graph, edge: (usize, usize), max_len: usize, budget: u64) -> Result<u64> {
    let (a, b) = edge;
    if a >= g.n() || b >= g.n() || !g.has_edge(a, b) {
        return Err(Error::input(format!("({a}, {b}) is not an edge")));
    }
    if max_len < 3 {
        return Err(Error::input("circuit length bound must be at least 3"));
    }
    struct Search<'a> {
        g: &'a Graph,
        target: usize,
        max_len: usize,
        on_path: Vec<bool>,
        count: u64,
        nodes: u64,
        budget: u64,
    }
    impl Search<'_> {
        // `len` edges used so far, including (a, b).
        fn walk(&mut self, v: usize, len: usize) -> bool {
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            for &w in self.g.neighbors(v) {
                if w == self.target {
                    if len + 1 >= 3 && len < self.max_len {
                        self.count += 1;
                    }
                    continue;
                }
                if self.on_path[w] || len + 2 > self.max_len {
                    continue;
                }
                self.on_path[w] = true;
                let ok = self.walk(w, len + 1);
                self.on_path[w] = false;
                if !ok {
                    return false;
                }
            }
            true
        }
    }
    let mut s = Search {
        g,
        target: a,
        max_len,
        on_path: vec![false; g.n()],
        count: 0,
        nodes: 0,
        budget,
    };
    s.on_path[a] = true;
    s.on_path[b] = true;
    if s.walk(b, 1) {
        Ok(s.count)
    } else {
        Err(Error::Budget { budget, partial: s.count })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaMode {
    Exhaustive,
    Sampled { samples: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaEstimate {
    /// Twice the four-point δ, which is always an integer.
    pub twice_delta: u32,
    pub quadruples: u64,
    /// False in sampled mode: the value is then a lower bound.
    pub exhaustive: bool,
}

impl DeltaEstimate {
    pub fn delta(&self) -> f64 {
        f64::from(self.twice_delta) / 2.0
    }
}

fn four_point(d: &[Vec<u32>], x: usize, y: usize, z: usize, w: usize) -> u32 {
    let mut s = [d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]];
    s.sort_unstable();
    s[2] - s[1]
}

/// Four-point Gromov δ of the graph metric, over all or sampled quadruples.
pub fn delta_hyperbolicity(g: &Graph, mode: DeltaMode, seed: u64) -> Result<DeltaEstimate> {
    let d = g.distance_matrix()?;
    let n = g.n();
    match mode {
        DeltaMode::Exhaustive => {
            let (twice, count) = (0..n)
                .into_par_iter()
                .map(|x| {
                    let mut best = 0;
                    let mut count = 0u64;
                    for y in (x + 1)..n {
                        for z in (y + 1)..n {
                            for w in (z + 1)..n {
                                best = best.max(four_point(&d, x, y, z, w));
                                count += 1;
                            }
                        }
                    }
                    (best, count)
                })
                .reduce(|| (0, 0), |a, b| (a.0.max(b.0), a.1 + b.1));
            Ok(DeltaEstimate { twice_delta: twice, quadruples: count, exhaustive: true })
        }
        DeltaMode::Sampled { samples } => {
            let mut rng = rng::substream(seed, "delta");
            let mut best = 0;
            if n > 0 {
                for _ in 0..samples {
                    let q: [usize; 4] = std::array::from_fn(|_| rng.random_range(0..n));
                    best = best.max(four_point(&d, q[0], q[1], q[2], q[3]));
                }
            }
            Ok(DeltaEstimate { twice_delta: best, quadruples: samples, exhaustive: false })
        }
    }
}
