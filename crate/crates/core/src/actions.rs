//! Actions of finite subgroups on universes and on abstract graphs and complexes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::complex::{Simplex, SimplicialComplex, DEFAULT_SIMPLEX_CAP};
use crate::dismantle::collapse_complex;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::GroupModel;
use crate::rips::RipsGraph;
use crate::universe::{Universe, VertexId};
use crate::word::Word;

/// A finite subgroup given by its elements (normal forms, shortlex order).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSubgroup {
    pub elements: Vec<Word>,
    pub generators: Vec<Word>,
}

impl FiniteSubgroup {
    pub fn trivial() -> Self {
        FiniteSubgroup { elements: vec![Word::empty()], generators: Vec::new() }
    }

    /// The subgroup generated by `generators`, or `None` once it exceeds `max_order`.
    pub fn generated(model: &GroupModel, generators: &[Word], max_order: usize) -> Result<Option<Self>> {
        let gens: Vec<Word> = generators.iter().map(|g| model.normalize(g)).collect::<Result<_>>()?;
        let mut seen: BTreeSet<Word> = BTreeSet::from([Word::empty()]);
        let mut frontier = vec![Word::empty()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = model.multiply(&x, g)?;
                if seen.insert(y.clone()) {
                    if seen.len() > max_order {
                        return Ok(None);
                    }
                    frontier.push(y);
                }
            }
        }
        // In a finite group every element has finite order, so closing under
        // products alone already yields inverses.
        Ok(Some(FiniteSubgroup { elements: seen.into_iter().collect(), generators: gens }))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, g: &Word) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Re-verify identity, products and inverses against the model.
    pub fn verify(&self, model: &GroupModel) -> Result<bool> {
        if !self.contains(&Word::empty()) {
            return Ok(false);
        }
        for x in &self.elements {
            if !self.contains(&model.inverse(x)?) {
                return Ok(false);
            }
            for y in &self.elements {
                if !self.contains(&model.multiply(x, y)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn display(&self, model: &GroupModel) -> String {
        let items: Vec<String> = self.elements.iter().map(|w| model.show(w)).collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// `{h·x : h ∈ H}` in id order.
pub fn orbit(u: &Universe, h: &FiniteSubgroup, x: VertexId) -> Result<Vec<VertexId>> {
    let mut out = BTreeSet::new();
    for g in &h.elements {
        match u.translate(g, x)? {
            Some(y) => {
                out.insert(y);
            }
            None => {
                return Err(Error::truncation(format!(
                    "{} · {} leaves the universe",
                    u.model().show(g),
                    u.label(x)
                )))
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiCentre<V> {
    pub rho: u32,
    pub centre: Vec<V>,
    /// All distances used are certified and the scan covers every possible minimiser.
    pub exact: bool,
}

/// Radius `ρ(U)` and the quasi-centre of a finite vertex set.
pub fn radius_and_quasicentre(u: &Universe, set: &[VertexId]) -> Result<QuasiCentre<VertexId>> {
    if set.is_empty() {
        return Err(Error::input("quasi-centre of an empty set"));
    }
    for &x in set {
        u.check(x)?;
    }
    let ecc = |z: VertexId| set.iter().map(|&x| u.dist(z, x)).max().unwrap();
    let rho = u.vertices().map(ecc).min().unwrap();
    let centre: Vec<VertexId> = u.vertices().filter(|&z| ecc(z) == rho).collect();
    // Any true minimiser lies within rho of an anchor; if the anchor's reach plus
    // rho fits in the ball, that whole neighbourhood is present with true distances.
    let covered = set
        .iter()
        .filter_map(|&x| u.reach(x).map(|r| (x, r)))
        .filter(|&(_, r)| r + rho <= u.radius())
        .min_by_key(|&(_, r)| r);
    let exact = covered.is_some_and(|(anchor, _)| {
        u.vertices()
            .filter(|&z| u.dist(z, anchor) <= rho)
            .all(|z| set.iter().all(|&x| u.distance(z, x).exact))
    });
    Ok(QuasiCentre { rho, centre, exact })
}

/// Radius and quasi-centre in an abstract connected graph.
pub fn graph_quasicentre(g: &Graph, set: &[usize]) -> Result<QuasiCentre<usize>> {
    if set.is_empty() {
        return Err(Error::input("quasi-centre of an empty set"));
    }
    let rows: Vec<Vec<u32>> = set.iter().map(|&x| g.bfs(x)).collect();
    let ecc = |z: usize| rows.iter().map(|r| r[z]).max().unwrap();
    let rho = (0..g.n()).map(ecc).min().unwrap();
    if rho == u32::MAX {
        return Err(Error::input("quasi-centre in a disconnected graph"));
    }
    Ok(QuasiCentre { rho, centre: (0..g.n()).filter(|&z| ecc(z) == rho).collect(), exact: true })
}

fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

/// Whether `vs` is a clique of `g` mapped onto itself by every element of `h`.
pub fn is_fixed_clique(u: &Universe, g: &Graph, h: &FiniteSubgroup, vs: &[VertexId]) -> Result<bool> {
    let ids: Vec<usize> = vs.iter().map(|v| v.0).collect();
    if vs.is_empty() || !is_clique(g, &ids) {
        return Ok(false);
    }
    let set: BTreeSet<VertexId> = vs.iter().copied().collect();
    for e in &h.elements {
        for &v in vs {
            match u.translate(e, v)? {
                Some(w) if set.contains(&w) => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// A clique of `Γ_n` invariant under `h`, found as the quasi-centre of an orbit.
///
/// Base vertices are tried in id order, starting at the identity; `Ok(None)`
/// means no attempt produced an invariant clique inside the truncation.
pub fn fixed_clique(u: &Universe, rips: &RipsGraph, h: &FiniteSubgroup) -> Result<Option<Vec<VertexId>>> {
    let mut last_err = None;
    for base in u.vertices() {
        let orb = match orbit(u, h, base) {
            Ok(o) => o,
            Err(e @ Error::Truncation(_)) => {
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        if orb.len() == 1 {
            return Ok(Some(orb));
        }
        let qc = radius_and_quasicentre(u, &orb)?;
        if is_fixed_clique(u, &rips.graph, h, &qc.centre)? {
            return Ok(Some(qc.centre));
        }
    }
    match last_err {
        Some(e) => Err(e),
        None => Ok(None),
    }
}

fn check_permutations(n: usize, perms: &[Vec<usize>]) -> Result<()> {
    for p in perms {
        let mut seen = vec![false; n];
        if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::input("action is not given by permutations of the vertex set"));
        }
    }
    Ok(())
}

fn orbit_of_perms(perms: &[Vec<usize>], x: usize) -> Vec<usize> {
    let mut seen = BTreeSet::from([x]);
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for p in perms {
            if seen.insert(p[y]) {
                stack.push(p[y]);
            }
        }
    }
    seen.into_iter().collect()
}

fn invariant(perms: &[Vec<usize>], s: &[usize]) -> bool {
    perms.iter().all(|p| {
        let mut img: Vec<usize> = s.iter().map(|&v| p[v]).collect();
        img.sort_unstable();
        img == s
    })
}

/// Fixed clique of a graph under a group generated by automorphisms `perms`.
pub fn graph_fixed_clique(g: &Graph, perms: &[Vec<usize>]) -> Result<Option<Vec<usize>>> {
    check_permutations(g.n(), perms)?;
    for p in perms {
        if g.edges().any(|(a, b)| !g.has_edge(p[a], p[b])) {
            return Err(Error::input("permutation is not a graph automorphism"));
        }
    }
    for base in 0..g.n() {
        let orb = orbit_of_perms(perms, base);
        if orb.len() == 1 {
            return Ok(Some(orb));
        }
        let qc = graph_quasicentre(g, &orb)?;
        if is_clique(g, &qc.centre) && invariant(perms, &qc.centre) {
            return Ok(Some(qc.centre));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerReport {
    pub subgroup: FiniteSubgroup,
    /// The stabiliser found in the ball of radius `r - 2` already equals the one at `r`.
    pub stable: bool,
}

/// Setwise stabiliser of a simplex among the ball elements.
pub fn simplex_stabilizer(u: &Universe, simplex: &[VertexId]) -> Result<StabilizerReport> {
    let mut simplex = simplex.to_vec();
    simplex.sort();
    simplex.dedup();
    if simplex.len() < 2 {
        return Err(Error::input("simplex stabilizers need at least two vertices"));
    }
    for (i, &x) in simplex.iter().enumerate() {
        u.check(x)?;
        for &y in &simplex[i + 1..] {
            if !u.distance(x, y).exact {
                return Err(Error::truncation(format!(
                    "simplex edge {} – {} is not certified",
                    u.label(x),
                    u.label(y)
                )));
            }
        }
    }
    let mut found = Vec::new();
    'elements: for g in u.element_vertices() {
        let word = u.element(g).unwrap();
        let mut image = Vec::with_capacity(simplex.len());
        for &x in &simplex {
            match u.translate(word, x)? {
                Some(y) => image.push(y),
                None => continue 'elements,
            }
        }
        image.sort();
        if image == simplex {
            found.push((u.norm(g).unwrap(), word.clone()));
        }
    }
    let inner = u.radius().saturating_sub(2);
    let stable = found.iter().all(|&(n, _)| n <= inner);
    let elements: Vec<Word> = found.into_iter().map(|(_, w)| w).collect();
    let generators = elements.iter().filter(|w| !w.0.is_empty()).cloned().collect();
    Ok(StabilizerReport { subgroup: FiniteSubgroup { elements, generators }, stable })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Trivial,
    /// `conjugator⁻¹ · H · conjugator ⊆ P_lambda`.
    PeripheralConjugate { lambda: usize, conjugator: Word },
    /// No conjugator into a peripheral subgroup was found inside the ball.
    ExceptionalInTruncation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupReport {
    pub subgroup: FiniteSubgroup,
    pub classification: Classification,
    /// Every element lies in the ball.
    pub complete: bool,
}

/// Finite subgroups of order at most `max_order` generated by torsion elements of the ball.
pub fn enumerate_finite_subgroups(u: &Universe, max_order: usize) -> Result<Vec<SubgroupReport>> {
    if max_order == 0 {
        return Err(Error::input("max_order must be at least 1"));
    }
    let model = u.model();
    let mut cyclic: BTreeSet<FiniteSubgroup> = BTreeSet::new();
    for g in u.element_vertices().skip(1) {
        let w = u.element(g).unwrap();
        let mut p = w.clone();
        for _ in 1..max_order {
            if p.0.is_empty() {
                break;
            }
            p = model.multiply(&p, w)?;
        }
        if p.0.is_empty() {
            if let Some(h) = FiniteSubgroup::generated(model, std::slice::from_ref(w), max_order)? {
                cyclic.insert(h);
            }
        }
    }
    let mut all: BTreeMap<Vec<Word>, FiniteSubgroup> = BTreeMap::new();
    let trivial = FiniteSubgroup::trivial();
    all.insert(trivial.elements.clone(), trivial);
    for h in &cyclic {
        all.entry(h.elements.clone()).or_insert_with(|| h.clone());
    }
    let mut frontier: Vec<FiniteSubgroup> = cyclic.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclic {
                if c.elements.iter().all(|x| h.contains(x)) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.extend(c.generators.iter().cloned());
                if let Some(j) = FiniteSubgroup::generated(model, &gens, max_order)? {
                    if !all.contains_key(&j.elements) {
                        all.insert(j.elements.clone(), j.clone());
                        next.push(j);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut reports: Vec<SubgroupReport> = all
        .into_values()
        .map(|h| {
            let complete = h.elements.iter().all(|w| u.element_vertex(w).is_some());
            let classification = classify(u, &h)?;
            Ok(SubgroupReport { subgroup: h, classification, complete })
        })
        .collect::<Result<_>>()?;
    reports.sort_by(|a, b| (a.subgroup.order(), &a.subgroup.elements).cmp(&(b.subgroup.order(), &b.subgroup.elements)));
    Ok(reports)
}

/// Search the ball for a conjugator taking `h` into a peripheral subgroup.
pub fn classify(u: &Universe, h: &FiniteSubgroup) -> Result<Classification> {
    if h.is_trivial() {
        return Ok(Classification::Trivial);
    }
    let model = u.model();
    for g in u.element_vertices() {
        let c = u.element(g).unwrap();
        let ci = model.inverse(c)?;
        let conj: Vec<Word> = h
            .elements
            .iter()
            .map(|x| model.multiply(&model.multiply(&ci, x)?, c))
            .collect::<Result<_>>()?;
        for lambda in 0..u.peripherals().len() {
            let mut inside = true;
            for x in &conj {
                if !u.peripherals().contains(model, lambda, x)? {
                    inside = false;
                    break;
                }
            }
            if inside {
                return Ok(Classification::PeripheralConjugate { lambda, conjugator: c.clone() });
            }
        }
    }
    Ok(Classification::ExceptionalInTruncation)
}

/// Text report: one subgroup per line with its classification.
pub fn subgroup_report_text(model: &GroupModel, reports: &[SubgroupReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let class = match &r.classification {
            Classification::Trivial => "trivial".to_string(),
            Classification::PeripheralConjugate { lambda, conjugator } => {
                format!("peripheral-conjugate\t{lambda}\t{}", model.show(conjugator))
            }
            Classification::ExceptionalInTruncation => "exceptional-in-truncation".to_string(),
        };
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{class}",
            r.subgroup.order(),
            if r.complete { "complete" } else { "incomplete" },
            r.subgroup.display(model)
        );
    }
    out
}

/// Order complex of the `H`-invariant simplices of `c`, where `H` is generated
/// by the vertex permutations `perms` (indexed by vertex label).
///
/// Vertices of the result index the invariant simplices in the order of
/// [`invariant_simplices`].
pub fn fixed_point_complex(c: &SimplicialComplex, perms: &[Vec<usize>]) -> Result<SimplicialComplex> {
    fixed_point_complex_capped(c, perms, DEFAULT_SIMPLEX_CAP)
}

pub fn fixed_point_complex_capped(
    c: &SimplicialComplex,
    perms: &[Vec<usize>],
    cap: usize,
) -> Result<SimplicialComplex> {
    let inv = invariant_simplices(c, perms)?;
    // Chains are grown upward from each simplex through strict supersets.
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); inv.len()];
    for (i, s) in inv.iter().enumerate() {
        for (j, t) in inv.iter().enumerate() {
            if t.len() > s.len() && s.iter().all(|v| t.binary_search(v).is_ok()) {
                up[i].push(j);
            }
        }
    }
    let mut chains: Vec<Simplex> = Vec::new();
    fn grow(up: &[Vec<usize>], chain: &mut Vec<usize>, out: &mut Vec<Simplex>, cap: usize) -> Result<()> {
        let mut s = chain.clone();
        s.sort_unstable();
        out.push(s);
        if out.len() > cap {
            return Err(Error::Resource { what: "fixed-point complex simplices", cap });
        }
        let last = *chain.last().unwrap();
        for &j in &up[last] {
            chain.push(j);
            grow(up, chain, out, cap)?;
            chain.pop();
        }
        Ok(())
    }
    for i in 0..inv.len() {
        grow(&up, &mut vec![i], &mut chains, cap)?;
    }
    Ok(SimplicialComplex::from_simplices(chains))
}

/// Simplices of `c` mapped onto themselves by every permutation, after checking
/// that the permutations preserve `c`.
pub fn invariant_simplices(c: &SimplicialComplex, perms: &[Vec<usize>]) -> Result<Vec<Simplex>> {
    let bound = c.vertices().last().map_or(0, |&m| m + 1);
    for p in perms {
        if p.len() < bound {
            return Err(Error::input("permutation does not cover the vertex labels"));
        }
        for s in c.iter() {
            let mut img: Vec<usize> = s.iter().map(|&v| p[v]).collect();
            img.sort_unstable();
            if !c.contains(&img) {
                return Err(Error::input(format!("action does not preserve simplex {s:?}")));
            }
        }
    }
    Ok(c.iter().filter(|s| invariant(perms, s)).cloned().collect())
}

/// Orbit graph of an action on a graph: one vertex per `H`-orbit that is a
/// clique, with an edge when the union of two such orbits is a clique.
///
/// Invariant simplices of the flag complex are exactly the cliques of this
/// graph, so its flag complex is homeomorphic to the fixed-point set.
/// Orbits are returned sorted, in the order of the graph's vertices.
pub fn fixed_point_graph(g: &Graph, perms: &[Vec<usize>]) -> Result<(Graph, Vec<Vec<usize>>)> {
    let n = g.n();
    for p in perms {
        if p.len() != n {
            return Err(Error::input("permutation does not cover the vertex labels"));
        }
        if g.edges().any(|(x, y)| !g.has_edge(p[x], p[y])) {
            return Err(Error::input("permutation is not a graph automorphism"));
        }
    }
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if orbit_of[v] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![v];
        orbit_of[v] = id;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for p in perms {
                if orbit_of[p[x]] == usize::MAX {
                    orbit_of[p[x]] = id;
                    orbit.push(p[x]);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let is_clique = |o: &[usize]| o.iter().enumerate().all(|(i, &x)| o[i + 1..].iter().all(|&y| g.has_edge(x, y)));
    let cliques: Vec<Vec<usize>> = orbits.into_iter().filter(|o| is_clique(o)).collect();
    let mut q = Graph::new(cliques.len());
    for (i, a) in cliques.iter().enumerate() {
        for (j, b) in cliques.iter().enumerate().skip(i + 1) {
            if a.iter().all(|&x| b.iter().all(|&y| g.has_edge(x, y))) {
                q.add_edge(i, j);
            }
        }
    }
    Ok((q, cliques))
}

/// Subgroups of a permutation group generated by at most two of its elements,
/// each given by a generating set, deduplicated by element set. Pairs are only
/// tried when the group has at most `pair_limit` elements.
pub fn small_subgroups(elements: &[Vec<usize>], pair_limit: usize) -> Vec<Vec<Vec<usize>>> {
    let Some(n) = elements.first().map(Vec::len) else { return Vec::new() };
    let mut seen: BTreeMap<Vec<Vec<usize>>, Vec<Vec<usize>>> = BTreeMap::new();
    let mut add = |gens: Vec<Vec<usize>>| {
        let group = crate::graph::permutation_group(&gens, n);
        seen.entry(group).or_insert(gens);
    };
    add(Vec::new());
    for g in elements {
        add(vec![g.clone()]);
    }
    if elements.len() <= pair_limit {
        for (i, g) in elements.iter().enumerate() {
            for h in &elements[i + 1..] {
                add(vec![g.clone(), h.clone()]);
            }
        }
    }
    seen.into_values().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ContractibleEvidence,
    NotContractible,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ContractibleEvidence => "contractible-evidence",
            Verdict::NotContractible => "not-contractible",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractibilityReport {
    pub collapsible: bool,
    /// Reduced Betti numbers over Z/2 in dimensions 0, 1, 2.
    pub reduced_betti: Vec<usize>,
    pub verdict: Verdict,
}

pub fn contractibility_report(c: &SimplicialComplex) -> ContractibilityReport {
    if c.is_empty() {
        return ContractibilityReport {
            collapsible: false,
            reduced_betti: vec![0, 0, 0],
            verdict: Verdict::NotContractible,
        };
    }
    let reduced_betti = c.reduced_betti(2);
    let (rest, _) = collapse_complex(c);
    let collapsible = rest.len() == 1;
    let verdict = if collapsible {
        Verdict::ContractibleEvidence
    } else if reduced_betti.iter().any(|&b| b > 0) {
        Verdict::NotContractible
    } else {
        Verdict::Inconclusive
    };
    ContractibilityReport { collapsible, reduced_betti, verdict }
}
