//! Balls of the Cayley graph, the peripheral cosets meeting them, and the
//! extended S-distance on `V ∪ W` with exactness certificates.
//!
//! A BFS distance `d` between `x0, y0` is certified when
//! `|x0| + |y0| + d <= 2 * cert_radius`: every vertex of a geodesic between
//! them then has norm at most `(|x0| + |y0| + d) / 2`, so the geodesic stays in
//! the ball. Set distances involving cosets additionally need every closer pair
//! to be ruled out, including pairs with a member outside the ball.

mod orbits;

pub use orbits::{count_edge_orbits, EdgeClass, OrbitCensus};

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{GroupModel, PeripheralSpec, Peripherals};
use crate::word::Word;

pub const DEFAULT_BALL_CAP: usize = 200_000;
/// Largest `|V| + |W|` for which the full distance table is materialised.
pub const DEFAULT_TABLE_CAP: usize = 6_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniverseConfig {
    pub radius: u32,
    /// Defaults to `radius`.
    pub cert_radius: Option<u32>,
    pub ball_cap: usize,
    pub table_cap: usize,
}

impl UniverseConfig {
    pub fn radius(radius: u32) -> Self {
        UniverseConfig {
            radius,
            cert_radius: None,
            ball_cap: DEFAULT_BALL_CAP,
            table_cap: DEFAULT_TABLE_CAP,
        }
    }
}

/// The ball of radius `radius` around the identity in the Cayley graph.
#[derive(Debug, Clone)]
pub struct Ball {
    pub radius: u32,
    /// Normal forms in shortlex order; index 0 is the identity.
    pub elements: Vec<Word>,
    pub norms: Vec<u32>,
    /// `adjacency[g][k]` is the index of `g * symbols[k]` when it lies in the ball.
    pub adjacency: Vec<Vec<Option<usize>>>,
    index: HashMap<Word, usize>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: &Word) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Distinct in-ball neighbours of `g` in the Cayley graph.
    pub fn neighbors(&self, g: usize) -> Vec<usize> {
        let mut ns: Vec<usize> = self.adjacency[g].iter().flatten().copied().filter(|&h| h != g).collect();
        ns.sort_unstable();
        ns.dedup();
        ns
    }

    /// The ball as a graph (the Cayley graph restricted to the ball).
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.len());
        for x in 0..self.len() {
            for y in self.neighbors(x) {
                g.add_edge(x, y);
            }
        }
        g
    }
}

/// Enumerates every element of word length at most `radius`, layer by layer.
pub fn enumerate_ball(model: &GroupModel, radius: u32, cap: usize) -> Result<Ball> {
    let symbols = model.symbols();
    let mut elements = vec![Word::empty()];
    let mut norms = vec![0u32];
    let mut index: HashMap<Word, usize> = HashMap::from([(Word::empty(), 0)]);
    let mut layer = vec![0usize];
    for k in 1..=radius {
        let mut next: Vec<Word> = Vec::new();
        for &g in &layer {
            for &s in &symbols {
                let mut w = elements[g].clone();
                w.push(s);
                let h = model.normalize_unchecked(&w);
                if !index.contains_key(&h) {
                    next.push(h);
                }
            }
        }
        next.sort();
        next.dedup();
        if next.is_empty() {
            break;
        }
        if elements.len() + next.len() > cap {
            return Err(Error::Resource { what: "ball size", cap });
        }
        layer.clear();
        for h in next {
            index.insert(h.clone(), elements.len());
            layer.push(elements.len());
            elements.push(h);
            norms.push(k);
        }
    }
    let adjacency = elements
        .iter()
        .map(|g| {
            symbols
                .iter()
                .map(|&s| {
                    let mut w = g.clone();
                    w.push(s);
                    index.get(&model.normalize_unchecked(&w)).copied()
                })
                .collect()
        })
        .collect();
    Ok(Ball { radius, elements, norms, adjacency, index })
}

/// A cone vertex: the coset `rep P_lambda`, with `rep` its shortlex-least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetVertex {
    pub lambda: usize,
    pub rep: Word,
}

/// One `CosetVertex` per distinct coset `g P_lambda` with `g` in the ball,
/// ordered by `(lambda, rep)`.
pub fn enumerate_cosets(
    model: &GroupModel,
    peripherals: &Peripherals,
    ball: &Ball,
) -> Result<Vec<CosetVertex>> {
    let mut out = Vec::new();
    for lambda in 0..peripherals.len() {
        let mut reps: Vec<Word> = ball
            .elements
            .iter()
            .map(|g| peripherals.coset_rep(model, lambda, g))
            .collect::<Result<_>>()?;
        reps.sort();
        reps.dedup();
        out.extend(reps.into_iter().map(|rep| CosetVertex { lambda, rep }));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    /// A group element, by ball index.
    Element(usize),
    /// A cone vertex, by coset index.
    Coset(usize),
}

/// An extended S-distance together with its exactness certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DistanceResult {
    pub value: u32,
    pub exact: bool,
}

#[derive(Debug, Clone)]
struct CosetData {
    vertex: CosetVertex,
    members: Vec<usize>,
    complete: bool,
    max_norm: u32,
}

/// The truncated vertex set `V ∪ W`: ball elements first, then cosets.
#[derive(Debug, Clone)]
pub struct Universe {
    model: GroupModel,
    peripherals: Peripherals,
    ball: Ball,
    cosets: Vec<CosetData>,
    coset_index: HashMap<CosetVertex, usize>,
    cert_radius: u32,
    element_ids: Vec<usize>,
    dist: Vec<u16>,
    exact: Vec<bool>,
}

impl Universe {
    pub fn build(model: GroupModel, specs: &[PeripheralSpec], config: UniverseConfig) -> Result<Self> {
        let peripherals = Peripherals::resolve(&model, specs)?;
        Self::with_peripherals(model, peripherals, config)
    }

    pub fn with_peripherals(
        model: GroupModel,
        peripherals: Peripherals,
        config: UniverseConfig,
    ) -> Result<Self> {
        let ball = enumerate_ball(&model, config.radius, config.ball_cap)?;
        let vertices = enumerate_cosets(&model, &peripherals, &ball)?;
        let coset_index: HashMap<CosetVertex, usize> =
            vertices.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let mut members = vec![Vec::new(); vertices.len()];
        for (g, elem) in ball.elements.iter().enumerate() {
            for lambda in 0..peripherals.len() {
                let rep = peripherals.coset_rep(&model, lambda, elem)?;
                members[coset_index[&CosetVertex { lambda, rep }]].push(g);
            }
        }
        let mut cosets = Vec::with_capacity(vertices.len());
        for (vertex, members) in vertices.into_iter().zip(members) {
            let order = peripherals.order(vertex.lambda)?;
            let complete = order == Some(members.len());
            let max_norm = members.iter().map(|&m| ball.norms[m]).max().unwrap_or(0);
            cosets.push(CosetData { vertex, members, complete, max_norm });
        }
        let total = ball.len() + cosets.len();
        if total > config.table_cap {
            return Err(Error::Resource { what: "universe distance table", cap: config.table_cap });
        }
        let cert_radius = config.cert_radius.unwrap_or(config.radius).min(config.radius);
        let mut u = Universe {
            model,
            peripherals,
            ball,
            cosets,
            coset_index,
            cert_radius,
            element_ids: (0..total).collect(),
            dist: Vec::new(),
            exact: Vec::new(),
        };
        u.fill_distances();
        Ok(u)
    }

    fn fill_distances(&mut self) {
        let nv = self.ball.len();
        let n = self.len();
        let mut dist = vec![u16::MAX; n * n];
        let graph = self.ball.graph();
        for x in 0..nv {
            for (y, d) in graph.bfs(x).into_iter().enumerate() {
                dist[x * n + y] = d as u16;
            }
        }
        for (c, data) in self.cosets.iter().enumerate() {
            let w = nv + c;
            for y in 0..nv {
                let d = data.members.iter().map(|&m| dist[m * n + y]).min().unwrap();
                dist[w * n + y] = d;
                dist[y * n + w] = d;
            }
        }
        for c in 0..self.cosets.len() {
            let w = nv + c;
            for c2 in c..self.cosets.len() {
                let w2 = nv + c2;
                let d = self.cosets[c2].members.iter().map(|&m| dist[w * n + m]).min().unwrap();
                dist[w * n + w2] = d;
                dist[w2 * n + w] = d;
            }
        }
        self.dist = dist;
        let mut exact = vec![false; n * n];
        for x in 0..n {
            for y in x..n {
                let e = self.certify(x, y);
                exact[x * n + y] = e;
                exact[y * n + x] = e;
            }
        }
        self.exact = exact;
    }

    fn member_slice(&self, x: usize) -> &[usize] {
        let nv = self.ball.len();
        if x < nv {
            std::slice::from_ref(&self.element_ids[x])
        } else {
            &self.cosets[x - nv].members
        }
    }

    fn certify(&self, x: usize, y: usize) -> bool {
        let n = self.len();
        let nv = self.ball.len();
        let r = self.ball.radius;
        let c = self.cert_radius;
        let d = u32::from(self.dist[x * n + y]);
        let mx = self.member_slice(x);
        let my = self.member_slice(y);
        let norm = |m: usize| self.ball.norms[m];
        let achieved = mx.iter().any(|&a| {
            my.iter().any(|&b| {
                u32::from(self.dist[a * n + b]) == d && norm(a) + norm(b) + d <= 2 * c
            })
        });
        if !achieved {
            return false;
        }
        if d == 0 {
            return true;
        }
        let max_x = mx.iter().map(|&m| norm(m)).max().unwrap();
        let max_y = my.iter().map(|&m| norm(m)).max().unwrap();
        if max_x + max_y + d > 2 * r + 2 {
            return false;
        }
        let complete = |v: usize| v < nv || self.cosets[v - nv].complete;
        match (complete(x), complete(y)) {
            (true, true) => true,
            (false, true) => d + max_y <= r + 1,
            (true, false) => d + max_x <= r + 1,
            (false, false) => false,
        }
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn peripherals(&self) -> &Peripherals {
        &self.peripherals
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn radius(&self) -> u32 {
        self.ball.radius
    }

    pub fn cert_radius(&self) -> u32 {
        self.cert_radius
    }

    /// `|V| + |W|`.
    pub fn len(&self) -> usize {
        self.ball.len() + self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n_elements(&self) -> usize {
        self.ball.len()
    }

    pub fn n_cosets(&self) -> usize {
        self.cosets.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.len()).map(VertexId)
    }

    pub fn element_vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.ball.len()).map(VertexId)
    }

    pub fn coset_vertices(&self) -> impl Iterator<Item = VertexId> {
        (self.ball.len()..self.len()).map(VertexId)
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        if v.0 < self.ball.len() {
            VertexKind::Element(v.0)
        } else {
            VertexKind::Coset(v.0 - self.ball.len())
        }
    }

    pub fn is_element(&self, v: VertexId) -> bool {
        v.0 < self.ball.len()
    }

    pub fn check(&self, v: VertexId) -> Result<()> {
        if v.0 < self.len() {
            Ok(())
        } else {
            Err(Error::input(format!("vertex {v} is not in the universe")))
        }
    }

    pub fn identity(&self) -> VertexId {
        VertexId(0)
    }

    /// Normal form of an element vertex.
    pub fn element(&self, v: VertexId) -> Option<&Word> {
        self.ball.elements.get(v.0).filter(|_| self.is_element(v))
    }

    pub fn coset(&self, v: VertexId) -> Option<&CosetVertex> {
        v.0.checked_sub(self.ball.len()).and_then(|c| self.cosets.get(c)).map(|c| &c.vertex)
    }

    /// Element vertices of `v`: itself for an element, the in-ball members for a coset.
    pub fn members(&self, v: VertexId) -> Vec<VertexId> {
        self.member_slice(v.0).iter().map(|&m| VertexId(m)).collect()
    }

    /// Whether every member of the coset lies in the ball (always true for elements).
    pub fn is_complete(&self, v: VertexId) -> bool {
        match self.kind(v) {
            VertexKind::Element(_) => true,
            VertexKind::Coset(c) => self.cosets[c].complete,
        }
    }

    /// Word length of an element vertex.
    pub fn norm(&self, v: VertexId) -> Option<u32> {
        self.is_element(v).then(|| self.ball.norms[v.0])
    }

    /// Largest norm over all members when they are all known: `|v|` for an
    /// element, the largest member norm for a complete coset.
    pub fn reach(&self, v: VertexId) -> Option<u32> {
        match self.kind(v) {
            VertexKind::Element(g) => Some(self.ball.norms[g]),
            VertexKind::Coset(c) => self.cosets[c].complete.then_some(self.cosets[c].max_norm),
        }
    }

    /// Smallest norm of an in-ball member.
    pub fn depth(&self, v: VertexId) -> u32 {
        self.member_slice(v.0).iter().map(|&m| self.ball.norms[m]).min().unwrap()
    }

    pub fn element_vertex(&self, g: &Word) -> Option<VertexId> {
        self.ball.index_of(g).map(VertexId)
    }

    pub fn coset_vertex(&self, lambda: usize, rep: &Word) -> Option<VertexId> {
        self.coset_index
            .get(&CosetVertex { lambda, rep: rep.clone() })
            .map(|&c| VertexId(self.ball.len() + c))
    }

    /// Coset vertex of `g P_lambda` for an element `g` (normal form).
    pub fn coset_of(&self, lambda: usize, g: &Word) -> Result<Option<VertexId>> {
        let rep = self.peripherals.coset_rep(&self.model, lambda, g)?;
        Ok(self.coset_vertex(lambda, &rep))
    }

    /// Precomputed distance; ids must be in range.
    #[inline]
    pub fn distance(&self, x: VertexId, y: VertexId) -> DistanceResult {
        let i = x.0 * self.len() + y.0;
        DistanceResult { value: u32::from(self.dist[i]), exact: self.exact[i] }
    }

    #[inline]
    pub fn dist(&self, x: VertexId, y: VertexId) -> u32 {
        u32::from(self.dist[x.0 * self.len() + y.0])
    }

    /// A certain lower bound on `|x, y|_S` from the triangle inequality through
    /// the identity: every member of `y` has norm at least `depth(y)`, and every
    /// member of `x` at most `reach(x)`.
    pub fn distance_lower_bound(&self, x: VertexId, y: VertexId) -> u32 {
        let d = self.distance(x, y);
        if d.exact {
            return d.value;
        }
        let one_way = |a: VertexId, b: VertexId| self.reach(a).map_or(0, |ra| self.depth(b).saturating_sub(ra));
        one_way(x, y).max(one_way(y, x))
    }

    /// The extended S-distance: set distance in the Cayley graph.
    pub fn s_distance(&self, x: VertexId, y: VertexId) -> Result<DistanceResult> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.distance(x, y))
    }

    /// Left translate `g · v`; `Ok(None)` when the image is outside the universe.
    pub fn translate(&self, g: &Word, v: VertexId) -> Result<Option<VertexId>> {
        self.check(v)?;
        match self.kind(v) {
            VertexKind::Element(x) => {
                let h = self.model.multiply(g, &self.ball.elements[x])?;
                Ok(self.element_vertex(&h))
            }
            VertexKind::Coset(c) => {
                let data = &self.cosets[c].vertex;
                let h = self.model.multiply(g, &data.rep)?;
                self.coset_of(data.lambda, &h)
            }
        }
    }

    /// Graph on `V ∪ W` with Cayley edges and cone edges `(v, w)` for `v ∈ w`.
    pub fn coned_off_graph(&self) -> Graph {
        let mut g = Graph::new(self.len());
        for (x, y) in self.ball.graph().edges() {
            g.add_edge(x, y);
        }
        let nv = self.ball.len();
        for (c, data) in self.cosets.iter().enumerate() {
            for &m in &data.members {
                g.add_edge(m, nv + c);
            }
        }
        g
    }

    pub fn label(&self, v: VertexId) -> String {
        match self.kind(v) {
            VertexKind::Element(x) => self.model.show(&self.ball.elements[x]),
            VertexKind::Coset(c) => {
                let data = &self.cosets[c].vertex;
                format!("({}, {})", data.lambda, self.model.show(&data.rep))
            }
        }
    }

    /// Edge-list export with a vertex table header; `flagged` edges get a trailing `?`.
    pub fn export_graph(&self, graph: &Graph, flagged: &dyn Fn(usize, usize) -> bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# vertices {}", graph.n());
        for v in 0..graph.n() {
            let kind = if self.is_element(VertexId(v)) { "V" } else { "W" };
            let _ = writeln!(out, "v {v} {kind} {}", self.label(VertexId(v)));
        }
        let _ = writeln!(out, "# edges {}", graph.edge_count());
        for (x, y) in graph.edges() {
            let mark = if flagged(x, y) { " ?" } else { "" };
            let _ = writeln!(out, "e {x} {y}{mark}");
        }
        out
    }

    /// BFS layers of the ball graph from the identity (for diagnostics).
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.ball.radius as usize + 1];
        for &n in &self.ball.norms {
            sizes[n as usize] += 1;
        }
        while sizes.len() > 1 && *sizes.last().unwrap() == 0 {
            sizes.pop();
        }
        sizes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral(r: u32) -> Universe {
        let specs = [PeripheralSpec::factor(0, 0), PeripheralSpec::factor(1, 1)];
        Universe::build(GroupModel::infinite_dihedral(), &specs, UniverseConfig::radius(r)).unwrap()
    }

    fn word(u: &Universe, text: &str) -> Word {
        u.model().parse_word(text).unwrap()
    }

    #[test]
    fn ball_sizes() {
        let z = GroupModel::free(&["t"]).unwrap();
        assert_eq!(enumerate_ball(&z, 3, 100).unwrap().len(), 7);
        let d = enumerate_ball(&GroupModel::infinite_dihedral(), 2, 100).unwrap();
        let shown: Vec<String> = d.elements.iter().map(|w| GroupModel::infinite_dihedral().show(w)).collect();
        assert_eq!(shown, ["e", "a", "b", "a b", "b a"]);
        let z3 = GroupModel::cyclic(3, "g").unwrap();
        assert_eq!(enumerate_ball(&z3, 5, 100).unwrap().len(), 3);
        assert!(matches!(enumerate_ball(&z, 10, 5), Err(Error::Resource { .. })));
    }

    #[test]
    fn lower_bounds_hold_in_a_larger_ball() {
        let small = dihedral(5);
        let big = dihedral(16);
        let find = |v: VertexId| match small.kind(v) {
            VertexKind::Element(_) => big.element_vertex(small.element(v).unwrap()).unwrap(),
            VertexKind::Coset(_) => {
                let c = small.coset(v).unwrap();
                big.coset_vertex(c.lambda, &c.rep).unwrap()
            }
        };
        let mut strict = 0;
        for x in small.vertices() {
            for y in small.vertices() {
                let truth = big.distance(find(x), find(y));
                assert!(truth.exact);
                let lb = small.distance_lower_bound(x, y);
                assert!(lb <= truth.value && truth.value <= small.dist(x, y));
                strict += usize::from(!small.distance(x, y).exact && lb > 0);
            }
        }
        assert!(strict > 0);
    }

    #[test]
    fn adjacency_is_symmetric() {
        let u = dihedral(4);
        let g = u.ball().graph();
        for (x, y) in g.edges() {
            assert!(u.ball().neighbors(y).contains(&x));
            assert_eq!(u.dist(VertexId(x), VertexId(y)), 1);
        }
    }

    #[test]
    fn cosets_are_listed_once() {
        let u = dihedral(2);
        assert_eq!(u.n_cosets(), 6);
        let a = u.coset_of(0, &word(&u, "a")).unwrap().unwrap();
        assert_eq!(a, u.coset_vertex(0, &Word::empty()).unwrap());
        let none = Universe::build(GroupModel::free(&["t"]).unwrap(), &[], UniverseConfig::radius(2)).unwrap();
        assert_eq!(none.n_cosets(), 0);
        let z3 = GroupModel::cyclic(3, "g").unwrap();
        let whole = Universe::build(z3, &[PeripheralSpec::generated(0, vec![0])], UniverseConfig::radius(2)).unwrap();
        assert_eq!(whole.n_cosets(), 1);
        assert!(whole.is_complete(whole.coset_vertices().next().unwrap()));
    }

    #[test]
    fn set_distances() {
        let u = dihedral(4);
        let pa = u.coset_vertex(0, &Word::empty()).unwrap();
        let pb = u.coset_vertex(1, &Word::empty()).unwrap();
        let bpa = u.coset_of(0, &word(&u, "b")).unwrap().unwrap();
        let e = u.identity();
        assert_eq!(u.s_distance(e, pa).unwrap(), DistanceResult { value: 0, exact: true });
        assert_eq!(u.s_distance(pa, pb).unwrap().value, 0);
        assert_eq!(u.s_distance(pa, bpa).unwrap(), DistanceResult { value: 1, exact: true });
        assert!(u.s_distance(e, VertexId(u.len())).is_err());
    }

    #[test]
    fn certification_near_the_fringe() {
        let z = GroupModel::free(&["t"]).unwrap();
        let u = Universe::build(z, &[], UniverseConfig { cert_radius: Some(2), ..UniverseConfig::radius(4) }).unwrap();
        let x = u.element_vertex(&word(&u, "t")).unwrap();
        let y = u.element_vertex(&word(&u, "t^-1")).unwrap();
        let far = u.element_vertex(&word(&u, "t^4")).unwrap();
        assert!(u.distance(x, y).exact);
        assert!(!u.distance(x, far).exact);
    }

    #[test]
    fn coned_off_neighbours() {
        let u = dihedral(2);
        let g = u.coned_off_graph();
        let pa = u.coset_vertex(0, &Word::empty()).unwrap();
        let expected = [u.identity().0, u.element_vertex(&word(&u, "a")).unwrap().0];
        assert_eq!(g.neighbors(pa.0), expected);
        for w in u.coset_vertices() {
            assert_eq!(g.degree(w.0), u.members(w).len());
        }
    }

    #[test]
    fn translation() {
        let u = dihedral(4);
        let a = word(&u, "a");
        let b = u.element_vertex(&word(&u, "b")).unwrap();
        assert_eq!(u.translate(&a, b).unwrap(), u.element_vertex(&word(&u, "a b")));
        let far = u.element_vertex(&word(&u, "b a b a")).unwrap();
        assert_eq!(u.translate(&a, far).unwrap(), None);
        let pa = u.coset_vertex(0, &Word::empty()).unwrap();
        assert_eq!(u.translate(&a, pa).unwrap(), Some(pa));
    }

    #[test]
    fn export_lists_vertices_then_edges() {
        let u = dihedral(1);
        let text = u.export_graph(&u.coned_off_graph(), &|_, _| false);
        assert!(text.starts_with("# vertices 7\nv 0 V e\nv 1 V a\nv 2 V b\nv 3 W (0, e)\n"));
        assert!(text.contains("e 0 1\n"));
    }
}
