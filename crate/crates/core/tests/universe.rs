//! Extended S-distances against set distances computed in faithful representations.

use std::collections::HashMap;

use relrips::rips::rips_graph;
use relrips::universe::count_edge_orbits;
use relrips::{GroupModel, PeripheralSpec, Universe, UniverseConfig, VertexId, Word};

mod common;
use common::*;

fn peripherals() -> [PeripheralSpec; 2] {
    [PeripheralSpec::factor(0, 0), PeripheralSpec::factor(1, 1)]
}

/// Members of each vertex in the representation: the element itself, or
/// `rep · p` over the finite peripheral subgroup.
fn rep_members<R: Rep>(rep: &R, u: &Universe, v: VertexId, subgroups: &[Vec<R::E>]) -> Vec<R::E> {
    match u.element(v) {
        Some(w) => vec![rep.eval(w)],
        None => {
            let c = u.coset(v).unwrap();
            let g = rep.eval(&c.rep);
            subgroups[c.lambda].iter().map(|p| rep.mul(&g, p)).collect()
        }
    }
}

fn check_against_oracle<R: Rep>(rep: &R, u: &Universe, subgroups: &[Vec<R::E>]) -> (usize, usize) {
    let lengths = word_lengths(rep, &u.model().symbols(), 4 * u.radius() + 4);
    let members: Vec<Vec<R::E>> = u.vertices().map(|v| rep_members(rep, u, v, subgroups)).collect();
    let (mut exact, mut total) = (0, 0);
    for x in u.vertices() {
        for y in u.vertices() {
            let oracle = members[x.0]
                .iter()
                .flat_map(|a| members[y.0].iter().map(move |b| (a, b)))
                .map(|(a, b)| lengths[&rep.mul(&rep.inv(a), b)])
                .min()
                .unwrap();
            let d = u.distance(x, y);
            assert!(d.value >= oracle, "{} {}", u.label(x), u.label(y));
            if d.exact {
                assert_eq!(d.value, oracle, "{} {}", u.label(x), u.label(y));
                exact += 1;
            }
            assert_eq!(d, u.distance(y, x));
            total += 1;
        }
    }
    (exact, total)
}

#[test]
fn dihedral_distances_match_affine_oracle() {
    let u = Universe::build(GroupModel::infinite_dihedral(), &peripherals(), UniverseConfig::radius(7)).unwrap();
    let rep = Affine;
    let sub = vec![
        vec![rep.id(), rep.generator(relrips::GeneratorSymbol::gen(0))],
        vec![rep.id(), rep.generator(relrips::GeneratorSymbol::gen(1))],
    ];
    let (exact, total) = check_against_oracle(&rep, &u, &sub);
    assert!(exact * 2 > total, "{exact}/{total}");
}

#[test]
fn modular_distances_match_matrix_oracle() {
    let u = Universe::build(GroupModel::modular(), &peripherals(), UniverseConfig::radius(6)).unwrap();
    let rep = Modular;
    let a = rep.generator(relrips::GeneratorSymbol::gen(0));
    let b = rep.generator(relrips::GeneratorSymbol::gen(1));
    let sub = vec![vec![rep.id(), a], vec![rep.id(), b, rep.mul(&b, &b)]];
    let (exact, total) = check_against_oracle(&rep, &u, &sub);
    assert!(exact * 3 > total, "{exact}/{total}");
}

#[test]
fn lattice_distances_match_oracle() {
    let z2 = GroupModel::free_abelian(&["x", "y"]).unwrap();
    let u = Universe::build(z2, &[], UniverseConfig::radius(5)).unwrap();
    for x in u.vertices() {
        for y in u.vertices() {
            let (a, b) = (Lattice.eval(u.element(x).unwrap()), Lattice.eval(u.element(y).unwrap()));
            let d = u.distance(x, y);
            if d.exact {
                assert_eq!(d.value as i64, (a.0 - b.0).abs() + (a.1 - b.1).abs());
            }
        }
    }
}

#[test]
fn certified_values_survive_ball_growth() {
    let small = Universe::build(GroupModel::modular(), &peripherals(), UniverseConfig::radius(5)).unwrap();
    let big = Universe::build(GroupModel::modular(), &peripherals(), UniverseConfig::radius(8)).unwrap();
    let index: HashMap<String, VertexId> = big.vertices().map(|v| (big.label(v), v)).collect();
    for x in small.vertices() {
        for y in small.vertices() {
            let d = small.distance(x, y);
            if d.exact {
                let (bx, by) = (index[&small.label(x)], index[&small.label(y)]);
                assert_eq!(big.distance(bx, by), d);
            }
        }
    }
}

#[test]
fn triangle_inequality_through_elements() {
    let u = Universe::build(GroupModel::infinite_dihedral(), &peripherals(), UniverseConfig::radius(6)).unwrap();
    for a in u.vertices() {
        for b in u.vertices() {
            for v in u.element_vertices() {
                let (ab, av, vb) = (u.distance(a, b), u.distance(a, v), u.distance(v, b));
                if ab.exact && av.exact && vb.exact {
                    assert!(ab.value <= av.value + vb.value);
                }
            }
        }
    }
}

#[test]
fn edge_census_is_translation_invariant() {
    let u = Universe::build(GroupModel::modular(), &peripherals(), UniverseConfig::radius(9)).unwrap();
    let rips = rips_graph(&u, 2).unwrap();
    let near: Vec<VertexId> = u.vertices().filter(|&v| u.reach(v).is_some_and(|r| r <= 3)).collect();
    for shift in ["a", "b", "a b^-1", "b a b"] {
        let g: Word = u.model().parse_word(shift).unwrap();
        let moved: Vec<VertexId> = near.iter().map(|&v| u.translate(&g, v).unwrap().unwrap()).collect();
        let census = |vs: &[VertexId]| {
            let ids: Vec<usize> = vs.iter().map(|v| v.0).collect();
            let mut g = rips.graph.clone();
            for (x, y) in rips.graph.edges() {
                if !(ids.contains(&x) && ids.contains(&y)) {
                    g.remove_edge(x, y);
                }
            }
            count_edge_orbits(&u, &g).unwrap().classes
        };
        assert_eq!(census(&near), census(&moved), "shift {shift}");
    }
}
