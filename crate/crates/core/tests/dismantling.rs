//! Dismantlability against a brute-force search over all elimination orders.

use std::collections::HashMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relrips::complex::clique_complex;
use relrips::dismantle::*;
use relrips::graph::{nonisomorphic_graphs, random_dismantlable, random_gnp};
use relrips::Graph;

/// `a` is dominated by `z` inside the vertex set `alive` (a bitmask).
fn dominated_in(g: &Graph, alive: u32, a: usize, z: usize) -> bool {
    let inside = |v: usize| alive >> v & 1 == 1;
    a != z
        && g.has_edge(a, z)
        && (0..g.n()).filter(|&v| inside(v) && g.has_edge(a, v)).all(|v| v == z || g.has_edge(v, z))
}

/// Whether some order of dominated-vertex deletions reaches a single vertex.
fn oracle_dismantlable(g: &Graph) -> bool {
    fn go(g: &Graph, alive: u32, memo: &mut HashMap<u32, bool>) -> bool {
        if alive.count_ones() == 1 {
            return true;
        }
        if let Some(&r) = memo.get(&alive) {
            return r;
        }
        let members: Vec<usize> = (0..g.n()).filter(|&v| alive >> v & 1 == 1).collect();
        let r = members.iter().any(|&a| {
            members.iter().any(|&z| dominated_in(g, alive, a, z)) && go(g, alive & !(1 << a), memo)
        });
        memo.insert(alive, r);
        r
    }
    go(g, (1u32 << g.n()) - 1, &mut HashMap::new())
}

/// Eliminate dominated vertices in a random order until stuck.
fn random_order_verdict(g: &Graph, rng: &mut ChaCha8Rng) -> bool {
    let mut alive: u32 = (1 << g.n()) - 1;
    loop {
        if alive.count_ones() == 1 {
            return true;
        }
        let mut candidates: Vec<usize> = (0..g.n())
            .filter(|&a| alive >> a & 1 == 1)
            .filter(|&a| (0..g.n()).any(|z| alive >> z & 1 == 1 && dominated_in(g, alive, a, z)))
            .collect();
        if candidates.is_empty() {
            return false;
        }
        candidates.shuffle(rng);
        alive &= !(1 << candidates[0]);
    }
}

#[test]
fn greedy_matches_oracle_on_small_graphs() {
    for n in 1..=6 {
        for g in nonisomorphic_graphs(n) {
            let (greedy, seq) = is_dismantlable(&g).unwrap();
            assert_eq!(greedy, oracle_dismantlable(&g), "{g:?}");
            seq.replay(&g).unwrap();
        }
    }
}

#[test]
fn verdict_is_order_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for k in 0..40 {
        let n = rng.random_range(3..=12);
        let g = if k % 2 == 0 { random_gnp(n, 0.5, &mut rng) } else { random_dismantlable(n, 0.4, &mut rng) };
        let expected = is_dismantlable(&g).unwrap().0;
        for _ in 0..10 {
            assert_eq!(random_order_verdict(&g, &mut rng), expected);
        }
    }
}

#[test]
fn dominated_lists_match_definitions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let g = random_gnp(8, 0.5, &mut rng);
        let mut expected = Vec::new();
        for a in 0..8 {
            for z in 0..8 {
                if dominated_in(&g, 0xff, a, z) {
                    expected.push((a, z));
                }
            }
        }
        assert_eq!(dominated_vertices(&g), expected);
        let mut edges = Vec::new();
        for (a, b) in g.edges() {
            for z in 0..8 {
                let common: Vec<usize> = (0..8).filter(|&w| g.has_edge(a, w) && g.has_edge(b, w)).collect();
                if common.contains(&z) && common.iter().all(|&w| w == z || g.has_edge(w, z)) {
                    edges.push(((a, b), z));
                }
            }
        }
        assert_eq!(dominated_edges(&g), edges);
    }
}

#[test]
fn vertex_dismantlable_implies_edge_dismantlable() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..40 {
        let g = random_dismantlable(rng.random_range(2..=9), 0.5, &mut rng);
        match edge_dismantling_sequence(&g, EdgeSearch::default()).unwrap() {
            EdgeSearchOutcome::Found(seq) => {
                assert!(seq.steps.iter().all(|s| matches!(s.removed, Removal::Vertex(_))));
                seq.replay(&g).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn seeded_edge_search_is_reproducible() {
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4), (4, 5)]);
    let run = |seed| edge_dismantling_sequence(&g, EdgeSearch { budget: 10_000, seed: Some(seed) }).unwrap();
    assert_eq!(run(4), run(4));
    assert!(run(4).is_found());
}

#[test]
fn clique_complexes_of_dismantlable_graphs_have_trivial_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..40 {
        let g = random_dismantlable(rng.random_range(2..=10), 0.4, &mut rng);
        let c = clique_complex(&g, 9, 100_000).unwrap();
        assert_eq!(c.reduced_betti(2), vec![0, 0, 0]);
        assert_eq!(c.euler_characteristic(), 1);
    }
}

proptest! {
    #[test]
    fn sequences_replay(n in 1usize..10, p in 0.1f64..0.9, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_gnp(n, p, &mut rng);
        let (ok, seq) = is_dismantlable(&g).unwrap();
        let residual = seq.replay(&g).unwrap();
        prop_assert_eq!(ok, residual.vertex_count() == 1);
        if !ok {
            prop_assert!(dominated_vertices(&residual.graph.induced(&residual.vertices())).is_empty());
        }
    }

    #[test]
    fn relabelling_preserves_verdict(n in 2usize..10, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_gnp(n, 0.5, &mut rng);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        prop_assert_eq!(is_dismantlable(&g).unwrap().0, is_dismantlable(&g.permuted(&perm)).unwrap().0);
    }
}
