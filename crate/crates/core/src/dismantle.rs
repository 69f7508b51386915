//! Dominated vertices and edges, dismantling orders, edge-dismantling search
//! and greedy collapse of simplicial complexes.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};

use rand::seq::SliceRandom;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::substream;

pub const DEFAULT_EDGE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Removal {
    Vertex(usize),
    Edge(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EliminationStep {
    pub removed: Removal,
    pub witness: usize,
}

impl fmt::Display for EliminationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.removed {
            Removal::Vertex(a) => write!(f, "vertex\t{a}\t{}", self.witness),
            Removal::Edge(a, b) => write!(f, "edge\t{a}-{b}\t{}", self.witness),
        }
    }
}

/// A graph with some vertices deleted; deleted vertices keep their labels but
/// have no edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub graph: Graph,
    pub alive: Vec<bool>,
}

impl Residual {
    pub fn new(g: &Graph) -> Self {
        Residual { graph: g.clone(), alive: vec![true; g.n()] }
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.alive.len()).filter(|&v| self.alive[v]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    fn remove_vertex(&mut self, v: usize) {
        for w in self.graph.neighbors(v).to_vec() {
            self.graph.remove_edge(v, w);
        }
        self.alive[v] = false;
    }

    /// Apply a step after checking its domination condition.
    pub fn apply(&mut self, step: &EliminationStep) -> Result<()> {
        let ok = match step.removed {
            Removal::Vertex(a) => {
                a < self.alive.len() && self.alive[a] && vertex_dominated_by(&self.graph, a, step.witness)
            }
            Removal::Edge(a, b) => {
                a.max(b) < self.alive.len() && edge_dominated_by(&self.graph, a, b, step.witness)
            }
        };
        if !ok {
            return Err(Error::input(format!("invalid elimination step: {step}")));
        }
        match step.removed {
            Removal::Vertex(a) => self.remove_vertex(a),
            Removal::Edge(a, b) => {
                self.graph.remove_edge(a, b);
            }
        }
        Ok(())
    }

    fn key(&self) -> (Vec<u64>, Vec<(u32, u32)>) {
        let mut mask = vec![0u64; self.alive.len().div_ceil(64)];
        for (v, &a) in self.alive.iter().enumerate() {
            if a {
                mask[v / 64] |= 1 << (v % 64);
            }
        }
        (mask, self.graph.edges().map(|(u, v)| (u as u32, v as u32)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationSequence {
    pub steps: Vec<EliminationStep>,
    pub residual: Residual,
}

impl EliminationSequence {
    /// Re-execute the steps on `g`, validating each witness, and compare the
    /// final state with the recorded residual.
    pub fn replay(&self, g: &Graph) -> Result<Residual> {
        let mut r = Residual::new(g);
        for step in &self.steps {
            r.apply(step)?;
        }
        if r != self.residual {
            return Err(Error::input("replay does not reproduce the recorded residual"));
        }
        Ok(r)
    }

    /// One line per step: kind, removed item, witness; then the residual vertices.
    pub fn to_log(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            let _ = writeln!(out, "{step}");
        }
        let rest: Vec<String> = self.residual.vertices().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "residual\t{}", rest.join(" "));
        out
    }
}

/// `N(a) ⊆ N[z]` with `z` adjacent to `a`.
pub fn vertex_dominated_by(g: &Graph, a: usize, z: usize) -> bool {
    a != z
        && g.has_edge(a, z)
        && g.neighbors(a).iter().all(|&w| w == z || g.has_edge(w, z))
}

/// `z` adjacent to both ends and to every other common neighbour of `a`, `b`.
pub fn edge_dominated_by(g: &Graph, a: usize, b: usize, z: usize) -> bool {
    if a == b || z == a || z == b || !g.has_edge(a, b) || !g.has_edge(a, z) || !g.has_edge(b, z) {
        return false;
    }
    common_neighbors(g, a, b).into_iter().all(|w| w == z || g.has_edge(w, z))
}

fn common_neighbors(g: &Graph, a: usize, b: usize) -> Vec<usize> {
    let (na, nb) = (g.neighbors(a), g.neighbors(b));
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < na.len() && j < nb.len() {
        match na[i].cmp(&nb[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(na[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn lowest_witness(g: &Graph, a: usize) -> Option<usize> {
    g.neighbors(a).iter().copied().find(|&z| vertex_dominated_by(g, a, z))
}

/// All pairs `(a, z)` with `a` dominated by `z`.
pub fn dominated_vertices(g: &Graph) -> Vec<(usize, usize)> {
    (0..g.n())
        .flat_map(|a| {
            g.neighbors(a)
                .iter()
                .copied()
                .filter(move |&z| vertex_dominated_by(g, a, z))
                .map(move |z| (a, z))
        })
        .collect()
}

/// All triples `((a, b), z)` with `a < b` and the edge dominated by `z`.
pub fn dominated_edges(g: &Graph) -> Vec<((usize, usize), usize)> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        for z in common_neighbors(g, a, b) {
            if edge_dominated_by(g, a, b, z) {
                out.push(((a, b), z));
            }
        }
    }
    out
}

/// Greedy elimination of dominated vertices, lowest id first.
pub fn is_dismantlable(g: &Graph) -> Result<(bool, EliminationSequence)> {
    if g.n() == 0 {
        return Err(Error::input("dismantlability of the empty graph is undefined"));
    }
    let mut r = Residual::new(g);
    let mut steps = Vec::new();
    let mut ready: BTreeSet<usize> = (0..g.n()).filter(|&a| lowest_witness(g, a).is_some()).collect();
    let mut alive = g.n();
    while alive > 1 {
        let Some(a) = ready.pop_first() else { break };
        let Some(z) = lowest_witness(&r.graph, a) else { continue };
        let nbrs = r.graph.neighbors(a).to_vec();
        r.remove_vertex(a);
        alive -= 1;
        steps.push(EliminationStep { removed: Removal::Vertex(a), witness: z });
        let mut touched: BTreeSet<usize> = nbrs.iter().copied().collect();
        for &v in &nbrs {
            touched.extend(r.graph.neighbors(v).iter().copied());
        }
        for v in touched {
            if r.alive[v] && lowest_witness(&r.graph, v).is_some() {
                ready.insert(v);
            } else {
                ready.remove(&v);
            }
        }
    }
    Ok((alive == 1, EliminationSequence { steps, residual: r }))
}

/// Dismantlability verdict of the subgraph induced on `vertices`, reported in
/// the original labels.
pub fn is_dismantlable_induced(g: &Graph, vertices: &[usize]) -> Result<(bool, Vec<EliminationStep>)> {
    let sub = g.induced(vertices);
    let (ok, seq) = is_dismantlable(&sub)?;
    let relabel = |x: usize| vertices[x];
    let steps = seq
        .steps
        .iter()
        .map(|s| EliminationStep {
            removed: match s.removed {
                Removal::Vertex(a) => Removal::Vertex(relabel(a)),
                Removal::Edge(a, b) => Removal::Edge(relabel(a), relabel(b)),
            },
            witness: relabel(s.witness),
        })
        .collect();
    Ok((ok, steps))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeSearchOutcome {
    Found(EliminationSequence),
    NotFound,
    /// The budget ran out; carries the deepest partial sequence seen.
    BudgetExhausted(EliminationSequence),
}

impl EdgeSearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, EdgeSearchOutcome::Found(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeSearch {
    pub budget: u64,
    /// `None` tries moves in order (vertices before edges, lowest id first);
    /// `Some(seed)` shuffles the moves at every node.
    pub seed: Option<u64>,
}

impl Default for EdgeSearch {
    fn default() -> Self {
        EdgeSearch { budget: DEFAULT_EDGE_BUDGET, seed: None }
    }
}

fn moves(g: &Graph, alive: &[bool]) -> Vec<EliminationStep> {
    let mut out: Vec<EliminationStep> = (0..g.n())
        .filter(|&a| alive[a])
        .filter_map(|a| lowest_witness(g, a).map(|z| EliminationStep { removed: Removal::Vertex(a), witness: z }))
        .collect();
    for (a, b) in g.edges() {
        if let Some(z) = common_neighbors(g, a, b).into_iter().find(|&z| edge_dominated_by(g, a, b, z)) {
            out.push(EliminationStep { removed: Removal::Edge(a, b), witness: z });
        }
    }
    out
}

/// Backtracking search for a sequence of dominated vertex and edge removals
/// that leaves a single vertex.
pub fn edge_dismantling_sequence(g: &Graph, search: EdgeSearch) -> Result<EdgeSearchOutcome> {
    if g.n() == 0 {
        return Err(Error::input("dismantlability of the empty graph is undefined"));
    }
    struct State {
        nodes: u64,
        budget: u64,
        dead: HashSet<(Vec<u64>, Vec<(u32, u32)>)>,
        rng: Option<rand_chacha::ChaCha8Rng>,
        path: Vec<EliminationStep>,
        deepest: Option<EliminationSequence>,
    }
    enum Step {
        Found(Residual),
        Dead,
        Exhausted,
    }
    fn dfs(r: &Residual, st: &mut State) -> Step {
        if r.vertex_count() == 1 {
            return Step::Found(r.clone());
        }
        if st.nodes >= st.budget {
            return Step::Exhausted;
        }
        st.nodes += 1;
        let key = r.key();
        if st.dead.contains(&key) {
            return Step::Dead;
        }
        if st.deepest.as_ref().is_none_or(|d| d.steps.len() < st.path.len()) {
            st.deepest = Some(EliminationSequence { steps: st.path.clone(), residual: r.clone() });
        }
        let mut options = moves(&r.graph, &r.alive);
        if let Some(rng) = st.rng.as_mut() {
            options.shuffle(rng);
        }
        for step in options {
            let mut next = r.clone();
            match step.removed {
                Removal::Vertex(a) => next.remove_vertex(a),
                Removal::Edge(a, b) => {
                    next.graph.remove_edge(a, b);
                }
            }
            st.path.push(step);
            match dfs(&next, st) {
                Step::Dead => {
                    st.path.pop();
                }
                other => return other,
            }
        }
        st.dead.insert(key);
        Step::Dead
    }
    let mut st = State {
        nodes: 0,
        budget: search.budget,
        dead: HashSet::new(),
        rng: search.seed.map(|s| substream(s, "edge-dismantling")),
        path: Vec::new(),
        deepest: None,
    };
    let start = Residual::new(g);
    Ok(match dfs(&start, &mut st) {
        Step::Found(residual) => EdgeSearchOutcome::Found(EliminationSequence { steps: st.path, residual }),
        Step::Dead => EdgeSearchOutcome::NotFound,
        Step::Exhausted => EdgeSearchOutcome::BudgetExhausted(
            st.deepest.unwrap_or(EliminationSequence { steps: Vec::new(), residual: start }),
        ),
    })
}

/// An elementary collapse: `face` is removed together with its unique coface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collapse {
    pub face: Simplex,
    pub coface: Simplex,
}

/// Greedy free-face collapsing, always taking the lexicographically least free face.
pub fn collapse_complex(c: &SimplicialComplex) -> (SimplicialComplex, Vec<Collapse>) {
    let mut present: HashSet<Simplex> = c.iter().cloned().collect();
    let mut cofaces: HashMap<Simplex, usize> = c.iter().map(|s| (s.clone(), 0)).collect();
    for s in c.iter() {
        if s.len() > 1 {
            for f in facets(s) {
                *cofaces.get_mut(&f).expect("complex is closed under faces") += 1;
            }
        }
    }
    let mut free: BTreeSet<Simplex> = cofaces.iter().filter(|(_, &k)| k == 1).map(|(s, _)| s.clone()).collect();
    let vertices = c.vertices();
    let mut log = Vec::new();
    while let Some(face) = free.pop_first() {
        let coface = vertices
            .iter()
            .filter(|v| face.binary_search(v).is_err())
            .map(|&v| {
                let mut t = face.clone();
                let pos = t.binary_search(&v).unwrap_err();
                t.insert(pos, v);
                t
            })
            .find(|t| present.contains(t))
            .expect("free face has a coface");
        for s in [&coface, &face] {
            present.remove(s);
            cofaces.remove(s);
            free.remove(s);
            if s.len() > 1 {
                for f in facets(s) {
                    if let Some(k) = cofaces.get_mut(&f) {
                        *k -= 1;
                        if *k == 1 {
                            free.insert(f);
                        } else {
                            free.remove(&f);
                        }
                    }
                }
            }
        }
        log.push(Collapse { face, coface });
    }
    (SimplicialComplex::from_simplices(present), log)
}

/// Whether greedy collapsing reaches a single vertex.
pub fn is_collapsible(c: &SimplicialComplex) -> bool {
    let (rest, _) = collapse_complex(c);
    rest.len() == 1
}

fn facets(s: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    (0..s.len()).map(move |k| {
        let mut f = s.to_vec();
        f.remove(k);
        f
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::clique_complex;

    #[test]
    fn path_domination() {
        assert_eq!(dominated_vertices(&Graph::path(3)), vec![(0, 1), (2, 1)]);
        assert!(dominated_vertices(&Graph::cycle(4)).is_empty());
        let k4 = Graph::complete(4);
        assert_eq!(dominated_vertices(&k4).len(), 12);
    }

    #[test]
    fn cycles_are_not_dismantlable() {
        for n in 4..=6 {
            let (ok, seq) = is_dismantlable(&Graph::cycle(n)).unwrap();
            assert!(!ok);
            assert!(seq.steps.is_empty());
            assert_eq!(seq.residual.vertex_count(), n);
        }
        assert!(is_dismantlable(&Graph::new(0)).is_err());
    }

    #[test]
    fn tree_sequence_replays() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]);
        let (ok, seq) = is_dismantlable(&g).unwrap();
        assert!(ok);
        assert_eq!(seq.steps.len(), 5);
        seq.replay(&g).unwrap();
        assert!(seq.to_log().starts_with("vertex\t0\t1\n"));
    }

    #[test]
    fn disconnected_is_not_dismantlable() {
        let g = Graph::from_edges(3, [(0, 1)]);
        assert!(!is_dismantlable(&g).unwrap().0);
    }

    #[test]
    fn edge_domination_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(dominated_edges(&k3), vec![((0, 1), 2), ((0, 2), 1), ((1, 2), 0)]);
        assert!(dominated_edges(&Graph::cycle(4)).is_empty());
        // K4 minus {2,3}: the diagonal 0-1 has common neighbours 2 and 3, which
        // are not adjacent, so neither dominates it.
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        let d = dominated_edges(&g);
        assert!(d.iter().all(|&(e, _)| e != (0, 1)));
        assert_eq!(d.len(), 4);
    }

    #[test]
    fn edge_search_examples() {
        let k3 = Graph::complete(3);
        assert!(edge_dismantling_sequence(&k3, EdgeSearch::default()).unwrap().is_found());
        let c4 = Graph::cycle(4);
        assert_eq!(edge_dismantling_sequence(&c4, EdgeSearch::default()).unwrap(), EdgeSearchOutcome::NotFound);
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2), (2, 4)]);
        match edge_dismantling_sequence(&g, EdgeSearch { budget: 1000, seed: Some(3) }).unwrap() {
            EdgeSearchOutcome::Found(seq) => {
                seq.replay(&g).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn edge_search_budget() {
        // C6 plus a pendant path: not dismantlable, needs several nodes to refute.
        let g = Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (6, 7)]);
        let out = edge_dismantling_sequence(&g, EdgeSearch { budget: 1, seed: None }).unwrap();
        assert!(matches!(out, EdgeSearchOutcome::BudgetExhausted(_)));
        let out = edge_dismantling_sequence(&g, EdgeSearch::default()).unwrap();
        assert_eq!(out, EdgeSearchOutcome::NotFound);
    }

    #[test]
    fn collapse_examples() {
        let tri = SimplicialComplex::from_simplices([vec![0, 1, 2]]);
        let (rest, log) = collapse_complex(&tri);
        assert_eq!(rest.len(), 1);
        assert_eq!(log.len(), 3);
        let boundary = SimplicialComplex::from_simplices([vec![0, 1], vec![1, 2], vec![0, 2]]);
        let (rest, log) = collapse_complex(&boundary);
        assert_eq!(rest, boundary);
        assert!(log.is_empty());
        let mut cone = Graph::cycle(4);
        let mut edges: Vec<_> = cone.edges().collect();
        edges.extend((0..4).map(|v| (v, 4)));
        cone = Graph::from_edges(5, edges);
        let c = clique_complex(&cone, 6, 1000).unwrap();
        assert_eq!(c.count(2), 4);
        assert!(is_collapsible(&c));
    }
}
