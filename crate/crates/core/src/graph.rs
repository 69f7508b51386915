//! Simple undirected graphs on vertices `0..n`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};

/// A simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph; loops and repeated edges are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// Returns whether the edge was new. Loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                true
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced on `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &u in &self.adj[v] {
                let j = index[u];
                if j != usize::MAX && j > i {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// BFS distances from `src`; `u32::MAX` marks unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs(0).iter().all(|&d| d != u32::MAX)
    }

    /// All-pairs BFS distances; errors on a disconnected graph.
    pub fn distance_matrix(&self) -> Result<Vec<Vec<u32>>> {
        let rows: Vec<Vec<u32>> = (0..self.n()).map(|v| self.bfs(v)).collect();
        if rows.iter().flatten().any(|&d| d == u32::MAX) {
            return Err(Error::input("graph is disconnected"));
        }
        Ok(rows)
    }

    /// Plain edge list: a `n <count>` header followed by one `u v` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Image of the graph under a vertex permutation.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        Graph::from_edges(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }
}

/// Erdős–Rényi graph G(n, p).
pub fn random_gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random dismantlable graph grown in reverse elimination order: every new
/// vertex attaches to an existing vertex `z` and to a random subset of `N(z)`,
/// so it is dominated by `z` when it appears. Vertex labels are shuffled.
pub fn random_dismantlable<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let z = rng.random_range(0..v);
        let ns: Vec<usize> = g.neighbors(z).to_vec();
        g.add_edge(v, z);
        for u in ns {
            if rng.random_bool(p) {
                g.add_edge(v, u);
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    g.permuted(&perm)
}

/// Automorphisms of `g` as vertex permutations, identity first; at most `cap` are kept.
pub fn automorphisms(g: &Graph, cap: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        g: &Graph,
        v: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if v == g.n() {
            out.push(image.clone());
            return;
        }
        for t in 0..g.n() {
            if used[t] || g.degree(t) != g.degree(v) {
                continue;
            }
            let consistent = (0..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], t));
            if !consistent {
                continue;
            }
            image[v] = t;
            used[t] = true;
            extend(g, v + 1, image, used, out, cap);
            used[t] = false;
            image[v] = usize::MAX;
        }
    }
    extend(g, 0, &mut image, &mut used, &mut out, cap);
    out
}

/// Canonical code of a graph on at most 10 vertices: the largest upper-triangle
/// adjacency bitstring over vertex orders that list degrees in decreasing order.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 10, "canonical codes are limited to 10 vertices");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let cells: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    let mut best = 0u64;
    let mut chosen = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn search(g: &Graph, cells: &[usize], chosen: &mut Vec<usize>, used: &mut [bool], code: u64, best: &mut u64) {
        let k = chosen.len();
        if k == cells.len() {
            *best = (*best).max(code);
            return;
        }
        for v in 0..g.n() {
            if used[v] || g.degree(v) != cells[k] {
                continue;
            }
            let mut c = code;
            for &u in chosen.iter() {
                c = (c << 1) | u64::from(g.has_edge(u, v));
            }
            chosen.push(v);
            used[v] = true;
            search(g, cells, chosen, used, c, best);
            used[v] = false;
            chosen.pop();
        }
    }
    search(g, &cells, &mut chosen, &mut used, 0, &mut best);
    best
}

/// One representative of every isomorphism class of graphs on `n <= 10` vertices.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let mut reps = vec![Graph::new(0)];
    for k in 1..=n {
        let mut seen = std::collections::BTreeMap::new();
        for g in &reps {
            for mask in 0u32..(1 << (k - 1)) {
                let mut h = Graph::new(k);
                for (x, y) in g.edges() {
                    h.add_edge(x, y);
                }
                for v in 0..k - 1 {
                    if mask >> v & 1 == 1 {
                        h.add_edge(v, k - 1);
                    }
                }
                seen.entry(canonical_code(&h)).or_insert(h);
            }
        }
        reps = seen.into_values().collect();
    }
    reps
}

/// Closure of a set of permutations under composition.
pub fn permutation_group(generators: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut elements = vec![id.clone()];
    let mut seen = std::collections::BTreeSet::from([id]);
    let mut i = 0;
    while i < elements.len() {
        for gen in generators {
            let prod: Vec<usize> = elements[i].iter().map(|&x| gen[x]).collect();
            if seen.insert(prod.clone()) {
                elements.push(prod);
            }
        }
        i += 1;
    }
    elements.sort();
    elements
}
