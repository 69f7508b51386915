//! Left-translation classes of edges.

use std::collections::BTreeMap;

use super::{Universe, VertexId, VertexKind};
use crate::error::Result;
use crate::graph::Graph;
use crate::word::Word;

/// A complete invariant of an unordered edge under left translation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeClass {
    /// `{g^-1 h, h^-1 g}`, smaller first.
    ElementElement(Word, Word),
    /// `(lambda, g^-1 h P_lambda)` for an edge `(g, h P_lambda)`.
    ElementCoset { lambda: usize, rep: Word },
    /// `(lambda, mu, P_lambda g^-1 h P_mu)` for an edge `(g P_lambda, h P_mu)`,
    /// oriented so the triple is least.
    CosetCoset { lambda: usize, mu: usize, rep: Word },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrbitCensus {
    /// Number of edges in each class.
    pub classes: BTreeMap<EdgeClass, usize>,
}

impl OrbitCensus {
    pub fn orbit_count(&self) -> usize {
        self.classes.len()
    }

    /// Orbit counts split as (element-element, element-coset, coset-coset).
    pub fn by_kind(&self) -> (usize, usize, usize) {
        let mut out = (0, 0, 0);
        for class in self.classes.keys() {
            match class {
                EdgeClass::ElementElement(..) => out.0 += 1,
                EdgeClass::ElementCoset { .. } => out.1 += 1,
                EdgeClass::CosetCoset { .. } => out.2 += 1,
            }
        }
        out
    }
}

pub fn edge_class(u: &Universe, x: VertexId, y: VertexId) -> Result<EdgeClass> {
    let model = u.model();
    let per = u.peripherals();
    Ok(match (u.kind(x), u.kind(y)) {
        (VertexKind::Element(_), VertexKind::Element(_)) => {
            let g = u.element(x).unwrap();
            let h = u.element(y).unwrap();
            let a = model.normalize(&g.inverse().concat(h))?;
            let b = model.normalize(&h.inverse().concat(g))?;
            if a <= b {
                EdgeClass::ElementElement(a, b)
            } else {
                EdgeClass::ElementElement(b, a)
            }
        }
        (VertexKind::Element(_), VertexKind::Coset(_)) => {
            let g = u.element(x).unwrap();
            let c = u.coset(y).unwrap();
            let t = model.normalize(&g.inverse().concat(&c.rep))?;
            EdgeClass::ElementCoset { lambda: c.lambda, rep: per.coset_rep(model, c.lambda, &t)? }
        }
        (VertexKind::Coset(_), VertexKind::Element(_)) => return edge_class(u, y, x),
        (VertexKind::Coset(_), VertexKind::Coset(_)) => {
            let c1 = u.coset(x).unwrap();
            let c2 = u.coset(y).unwrap();
            let t12 = model.normalize(&c1.rep.inverse().concat(&c2.rep))?;
            let t21 = model.normalize(&c2.rep.inverse().concat(&c1.rep))?;
            let a = (c1.lambda, c2.lambda, per.double_coset_rep(model, c1.lambda, &t12, c2.lambda)?);
            let b = (c2.lambda, c1.lambda, per.double_coset_rep(model, c2.lambda, &t21, c1.lambda)?);
            let (lambda, mu, rep) = a.min(b);
            EdgeClass::CosetCoset { lambda, mu, rep }
        }
    })
}

/// Classifies every edge of `graph` (whose vertices are universe vertices) by
/// its left-translation invariant.
pub fn count_edge_orbits(u: &Universe, graph: &Graph) -> Result<OrbitCensus> {
    let mut census = OrbitCensus::default();
    for (x, y) in graph.edges() {
        let class = edge_class(u, VertexId(x), VertexId(y))?;
        *census.classes.entry(class).or_insert(0) += 1;
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupModel, PeripheralSpec};
    use crate::rips::rips_graph;
    use crate::universe::UniverseConfig;

    fn vv_orbits(u: &Universe, n: u32) -> usize {
        let rips = rips_graph(u, n).unwrap();
        let vs: Vec<usize> = u.element_vertices().map(|v| v.0).collect();
        let sub = rips.graph.induced(&vs);
        count_edge_orbits(u, &sub).unwrap().orbit_count()
    }

    #[test]
    fn free_group_orbits() {
        let f2 = GroupModel::free(&["x", "y"]).unwrap();
        let u = Universe::build(f2, &[], UniverseConfig::radius(3)).unwrap();
        assert_eq!(vv_orbits(&u, 1), 2);
        assert_eq!(vv_orbits(&u, 2), 8);
    }

    #[test]
    fn finite_group_orbits() {
        // Z/5 with n at least the diameter: {g, g^4} and {g^2, g^3}.
        let z5 = GroupModel::cyclic(5, "g").unwrap();
        let u = Universe::build(z5, &[], UniverseConfig::radius(3)).unwrap();
        assert_eq!(vv_orbits(&u, 2), 2);
    }

    #[test]
    fn coset_orbits_of_dihedral() {
        let specs = [PeripheralSpec::factor(0, 0), PeripheralSpec::factor(1, 1)];
        let u = Universe::build(GroupModel::infinite_dihedral(), &specs, UniverseConfig::radius(8)).unwrap();
        let census = count_edge_orbits(&u, &u.coned_off_graph()).unwrap();
        // Cayley edges {a} and {b}; cone edges to <a> and <b>.
        assert_eq!(census.by_kind(), (2, 2, 0));
    }
}
