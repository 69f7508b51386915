//! Normal forms checked against faithful representations and brute-force shortlex search.

use std::collections::{HashMap, VecDeque};

use proptest::prelude::*;
use relrips::universe::enumerate_ball;
use relrips::word::GeneratorSymbol;
use relrips::{GroupModel, Word};

mod common;
use common::*;

/// Sphere sizes of the Cayley graph, by BFS in the representation.
fn sphere_sizes<R: Rep>(rep: &R, symbols: &[GeneratorSymbol], radius: usize) -> Vec<usize> {
    let mut seen: HashMap<R::E, usize> = HashMap::from([(rep.id(), 0)]);
    let mut queue = VecDeque::from([rep.id()]);
    let mut sizes = vec![1];
    while let Some(x) = queue.pop_front() {
        let d = seen[&x];
        if d == radius {
            continue;
        }
        for &s in symbols {
            let y = rep.act(&x, s);
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), d + 1);
                if sizes.len() <= d + 1 {
                    sizes.push(0);
                }
                sizes[d + 1] += 1;
                queue.push_back(y);
            }
        }
    }
    sizes
}

/// The shortlex-least word representing `target`, by enumerating words in shortlex order.
fn shortlex_least<R: Rep>(rep: &R, symbols: &[GeneratorSymbol], target: &R::E, max_len: usize) -> Option<Word> {
    let mut sorted = symbols.to_vec();
    sorted.sort();
    let mut layer = vec![Word::empty()];
    for _ in 0..=max_len {
        if let Some(w) = layer.iter().find(|w| &rep.eval(w) == target) {
            return Some(w.clone());
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                sorted.iter().map(move |&s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    None
}

fn layer_sizes(model: &GroupModel, radius: u32) -> Vec<usize> {
    let ball = enumerate_ball(model, radius, 1_000_000).unwrap();
    let mut sizes = vec![0; radius as usize + 1];
    for &n in &ball.norms {
        sizes[n as usize] += 1;
    }
    while sizes.last() == Some(&0) {
        sizes.pop();
    }
    sizes
}

#[test]
fn ball_layers_match_representations() {
    let d = GroupModel::infinite_dihedral();
    assert_eq!(layer_sizes(&d, 8), sphere_sizes(&Affine, &d.symbols(), 8));
    let m = GroupModel::modular();
    assert_eq!(layer_sizes(&m, 10), sphere_sizes(&Modular, &m.symbols(), 10));
    let z2 = GroupModel::free_abelian(&["x", "y"]).unwrap();
    assert_eq!(layer_sizes(&z2, 7), sphere_sizes(&Lattice, &z2.symbols(), 7));
    let f2 = GroupModel::free(&["x", "y"]).unwrap();
    assert_eq!(layer_sizes(&f2, 5), sphere_sizes(&FreeStrings, &f2.symbols(), 5));
}

#[test]
fn finite_ball_saturates() {
    let z6 = GroupModel::cyclic(6, "g").unwrap();
    let ball = enumerate_ball(&z6, 10, 100).unwrap();
    assert_eq!(ball.len(), 6);
    assert_eq!(ball.norms.iter().max(), Some(&3));
}

fn arb_word(rank: u16, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()), 0..max_len)
        .prop_map(|v| Word::from_symbols(v.into_iter().map(|(i, inv)| GeneratorSymbol::new(i, inv))))
}

fn check_normal_form<R: Rep>(model: &GroupModel, rep: &R, w: &Word, oracle_len: usize) -> Result<(), TestCaseError> {
    let nf = model.normalize(w).unwrap();
    prop_assert!(rep.eval(&nf) == rep.eval(w));
    prop_assert_eq!(model.normalize(&nf).unwrap(), nf.clone());
    if nf.len() <= oracle_len {
        let least = shortlex_least(rep, &model.symbols(), &rep.eval(w), oracle_len).unwrap();
        prop_assert_eq!(nf, least);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dihedral_normal_forms(w in arb_word(2, 14)) {
        check_normal_form(&GroupModel::infinite_dihedral(), &Affine, &w, 6)?;
    }

    #[test]
    fn modular_normal_forms(w in arb_word(2, 14)) {
        check_normal_form(&GroupModel::modular(), &Modular, &w, 5)?;
    }

    #[test]
    fn lattice_normal_forms(w in arb_word(2, 10)) {
        check_normal_form(&GroupModel::free_abelian(&["x", "y"]).unwrap(), &Lattice, &w, 4)?;
    }

    #[test]
    fn free_normal_forms(w in arb_word(2, 12)) {
        check_normal_form(&GroupModel::free(&["x", "y"]).unwrap(), &FreeStrings, &w, 4)?;
    }

    #[test]
    fn group_axioms(x in arb_word(2, 8), y in arb_word(2, 8), z in arb_word(2, 8)) {
        let m = GroupModel::modular();
        let xy_z = m.multiply(&m.multiply(&x, &y).unwrap(), &z).unwrap();
        let x_yz = m.multiply(&x, &m.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        let inv = m.inverse(&x).unwrap();
        prop_assert!(m.is_identity(&m.multiply(&x, &inv).unwrap()).unwrap());
    }
}

#[test]
fn surface_group_relator_is_trivial() {
    let names = ["x", "y", "z", "w"];
    let rel = Word::from_signed(&[1, 2, -1, -2, 3, 4, -3, -4]);
    let g = GroupModel::small_cancellation(&names, vec![rel.clone()]).unwrap();
    assert!(g.is_identity(&rel).unwrap());
    assert!(g.is_identity(&Word::from_signed(&[3, 4, -3, -4, 1, 2, -1, -2])).unwrap());
    assert!(!g.is_identity(&Word::from_signed(&[1, 2, -1, -2])).unwrap());
}

fn genus_two() -> GroupModel {
    let rel = Word::from_signed(&[1, 2, -1, -2, 3, 4, -3, -4]);
    GroupModel::small_cancellation(&["x", "y", "z", "w"], vec![rel]).unwrap()
}

#[test]
fn genus_two_spheres() {
    // Free spheres 8 * 7^(k-1); at length 4 the eight half-relator pairs merge.
    assert_eq!(layer_sizes(&genus_two(), 4), vec![1, 8, 56, 392, 2744 - 8]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn genus_two_normal_forms(u in arb_word(4, 4), v in arb_word(4, 4), k in 0usize..16) {
        let g = genus_two();
        let rel = Word::from_signed(&[1, 2, -1, -2, 3, 4, -3, -4]);
        let mut readings = Vec::new();
        for r in [rel.clone(), rel.inverse()] {
            for i in 0..8 {
                readings.push(Word::from_symbols(r.symbols()[i..].iter().chain(&r.symbols()[..i]).copied()));
            }
        }
        let plain = g.normalize(&u.concat(&v)).unwrap();
        let padded = g.normalize(&u.concat(&readings[k]).concat(&v)).unwrap();
        prop_assert_eq!(&plain, &padded);
        if plain.len() > 4 {
            return Ok(());
        }
        // Brute force over all words in shortlex order.
        let target = u.concat(&v).inverse();
        let symbols = g.symbols();
        let mut found = None;
        'len: for len in 0..=plain.len() {
            let mut idx = vec![0usize; len];
            loop {
                let cand = Word::from_symbols(idx.iter().map(|&i| symbols[i]));
                if g.is_identity(&cand.concat(&target)).unwrap() {
                    found = Some(cand);
                    break 'len;
                }
                let mut p = len;
                loop {
                    if p == 0 {
                        continue 'len;
                    }
                    p -= 1;
                    idx[p] += 1;
                    if idx[p] < symbols.len() {
                        break;
                    }
                    idx[p] = 0;
                }
            }
        }
        prop_assert_eq!(found, Some(plain));
    }
}
