//! Actions: Polat's fixed-point property, quasi-centres against a representation oracle,
//! fixed cliques and stabilisers.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relrips::actions::*;
use relrips::complex::clique_complex;
use relrips::graph::{automorphisms, random_dismantlable};
use relrips::rips::rips_graph;
use relrips::{GeneratorSymbol, GroupModel, PeripheralSpec, Universe, UniverseConfig, VertexId};

mod common;
use common::*;

fn dihedral(r: u32) -> Universe {
    let specs = [PeripheralSpec::factor(0, 0), PeripheralSpec::factor(1, 1)];
    Universe::build(GroupModel::infinite_dihedral(), &specs, UniverseConfig::radius(r)).unwrap()
}

fn modular(r: u32) -> Universe {
    let specs = [PeripheralSpec::factor(0, 0), PeripheralSpec::factor(1, 1)];
    Universe::build(GroupModel::modular(), &specs, UniverseConfig::radius(r)).unwrap()
}

#[test]
fn polat_fixed_point_sets_are_contractible() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..40 {
        let n = rng.random_range(1..=8);
        let g = random_dismantlable(n, 0.45, &mut rng);
        let c = clique_complex(&g, 9, 1_000_000).unwrap();
        let aut = automorphisms(&g, 5_000);
        for gens in small_subgroups(&aut, 48) {
            let fp = fixed_point_complex(&c, &gens).unwrap();
            assert!(!fp.is_empty());
            let report = contractibility_report(&fp);
            assert_eq!(report.verdict, Verdict::ContractibleEvidence, "{g:?} {gens:?}");
        }
    }
}

#[test]
fn orbit_graph_matches_subdivision() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut nontrivial = 0;
    for _ in 0..60 {
        let n = rng.random_range(1..=7);
        let g = if rng.random_bool(0.5) {
            random_dismantlable(n, 0.5, &mut rng)
        } else {
            relrips::graph::random_gnp(n, 0.5, &mut rng)
        };
        let c = clique_complex(&g, 8, 1_000_000).unwrap();
        for gens in small_subgroups(&automorphisms(&g, 5_000), 24) {
            let fp = fixed_point_complex(&c, &gens).unwrap();
            let (q, orbits) = fixed_point_graph(&g, &gens).unwrap();
            let flag = clique_complex(&q, 8, 1_000_000).unwrap();
            // Invariant simplices are the cliques of the orbit graph.
            assert_eq!(fp.count(0), flag.len());
            assert_eq!(fp.euler_characteristic(), flag.euler_characteristic());
            assert_eq!(fp.reduced_betti(3), flag.reduced_betti(3));
            for o in &orbits {
                assert!(o.iter().all(|&v| gens.iter().all(|p| o.contains(&p[v]))));
            }
            nontrivial += usize::from(orbits.len() < n);
        }
    }
    assert!(nontrivial > 20);
}

#[test]
fn trivial_action_gives_barycentric_subdivision() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let g = random_dismantlable(7, 0.5, &mut rng);
        let c = clique_complex(&g, 9, 100_000).unwrap();
        let sd = fixed_point_complex(&c, &[]).unwrap();
        assert_eq!(sd.count(0), c.len());
        assert_eq!(sd.euler_characteristic(), c.euler_characteristic());
    }
}

/// Set distances among elements of bounded length and their cosets, in the affine model of D∞.
struct DihedralOracle {
    lengths: HashMap<(i64, i64), u32>,
    candidates: Vec<Vec<(i64, i64)>>,
}

impl DihedralOracle {
    fn new(radius: u32) -> Self {
        let symbols = GroupModel::infinite_dihedral().symbols();
        let lengths = word_lengths(&Affine, &symbols, 3 * radius);
        let near = word_lengths(&Affine, &symbols, radius);
        let mut candidates: BTreeSet<Vec<(i64, i64)>> = BTreeSet::new();
        for g in near.keys() {
            candidates.insert(vec![*g]);
            for k in 0..2 {
                let h = Affine.mul(g, &Affine.generator(GeneratorSymbol::gen(k)));
                let mut pair = vec![*g, h];
                pair.sort();
                candidates.insert(pair);
            }
        }
        DihedralOracle { lengths, candidates: candidates.into_iter().collect() }
    }

    fn dist(&self, x: &[(i64, i64)], y: &[(i64, i64)]) -> u32 {
        x.iter()
            .flat_map(|a| y.iter().map(move |b| self.lengths[&Affine.mul(&Affine.inv(a), b)]))
            .min()
            .unwrap()
    }

    fn members(u: &Universe, v: VertexId) -> Vec<(i64, i64)> {
        match u.element(v) {
            Some(w) => vec![Affine.eval(w)],
            None => {
                let c = u.coset(v).unwrap();
                let g = Affine.eval(&c.rep);
                let mut m = vec![g, Affine.mul(&g, &Affine.generator(GeneratorSymbol::gen(c.lambda as u16)))];
                m.sort();
                m
            }
        }
    }
}

#[test]
fn quasicentres_match_oracle() {
    let u = dihedral(8);
    let oracle = DihedralOracle::new(12);
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let pool: Vec<VertexId> = u.vertices().filter(|&v| u.reach(v).is_some_and(|r| r <= 4)).collect();
    let mut exact_cases = 0;
    for _ in 0..150 {
        let k = rng.random_range(1..=4);
        let set: Vec<VertexId> = (0..k).map(|_| pool[rng.random_range(0..pool.len())]).collect();
        let qc = radius_and_quasicentre(&u, &set).unwrap();
        if !qc.exact {
            continue;
        }
        exact_cases += 1;
        let members: Vec<Vec<(i64, i64)>> = set.iter().map(|&v| DihedralOracle::members(&u, v)).collect();
        let ecc = |z: &[(i64, i64)]| members.iter().map(|m| oracle.dist(z, m)).max().unwrap();
        let rho = oracle.candidates.iter().map(|z| ecc(z)).min().unwrap();
        assert_eq!(qc.rho, rho);
        let centre: BTreeSet<Vec<(i64, i64)>> =
            oracle.candidates.iter().filter(|z| ecc(z) == rho).cloned().collect();
        let ours: BTreeSet<Vec<(i64, i64)>> = qc.centre.iter().map(|&v| DihedralOracle::members(&u, v)).collect();
        assert_eq!(ours, centre);
    }
    assert!(exact_cases > 100);
}

#[test]
fn fixed_cliques_for_finite_subgroups() {
    for u in [dihedral(8), modular(7)] {
        let rips = rips_graph(&u, 4).unwrap();
        for report in enumerate_finite_subgroups(&u, 6).unwrap() {
            assert!(report.subgroup.verify(u.model()).unwrap());
            let clique = fixed_clique(&u, &rips, &report.subgroup).unwrap().expect("fixed clique");
            for (i, &x) in clique.iter().enumerate() {
                for &y in &clique[i + 1..] {
                    assert!(u.dist(x, y) <= 4);
                }
                for h in &report.subgroup.elements {
                    assert!(clique.contains(&u.translate(h, x).unwrap().unwrap()));
                }
            }
            assert!(!matches!(report.classification, Classification::ExceptionalInTruncation));
        }
    }
}

#[test]
fn modular_torsion_is_classified() {
    let u = modular(6);
    let reports = enumerate_finite_subgroups(&u, 6).unwrap();
    let orders: BTreeSet<usize> = reports.iter().map(|r| r.subgroup.order()).collect();
    assert_eq!(orders, BTreeSet::from([1, 2, 3]));
    let text = subgroup_report_text(u.model(), &reports);
    assert!(text.lines().next().unwrap().ends_with("trivial"));
}

#[test]
fn stabilisers_are_subgroups() {
    let u = modular(7);
    let rips = rips_graph(&u, 2).unwrap();
    let mut checked = 0;
    for (x, y) in rips.graph.edges() {
        let (x, y) = (VertexId(x), VertexId(y));
        if u.reach(x).is_some_and(|r| r <= 2) && u.reach(y).is_some_and(|r| r <= 2) {
            let s = simplex_stabilizer(&u, &[x, y]).unwrap();
            assert!(s.subgroup.verify(u.model()).unwrap());
            assert!(s.stable);
            assert!(s.subgroup.order() <= 6);
            checked += 1;
        }
    }
    assert!(checked > 20);
}
