//! Library answers against exhaustive computation.

use std::collections::HashSet;

use gp_core::coxeter::{self, reflection_matrices, thick_quotient_matrix, word_matrix, CoxeterSolver};
use gp_core::fp::{self, SymmetricGroup, WordOracle};
use gp_core::graph::{LabeledGraph, VertexOrder};
use gp_core::structure::centralizer;
use gp_core::word::{self, ReducedWord, Syllable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All elements reachable with at most `r` generator letters.
fn ball(g: &LabeledGraph, r: usize) -> Vec<ReducedWord> {
    let letters: Vec<Syllable> = g
        .vertices()
        .iter()
        .flat_map(|v| match g.order(v) {
            VertexOrder::Finite(2) => vec![Syllable::new(v, 1)],
            _ => vec![Syllable::new(v, 1), Syllable::new(v, -1)],
        })
        .collect();
    let mut seen = HashSet::from([ReducedWord::identity()]);
    let mut layer = vec![ReducedWord::identity()];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &layer {
            for &s in &letters {
                let x = word::reduce(g, &[w.syllables(), &[s]].concat()).unwrap();
                if seen.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        layer = next;
    }
    seen.into_iter().collect()
}

fn random_word(g: &LabeledGraph, rng: &mut ChaCha8Rng, max_len: usize) -> Vec<Syllable> {
    (0..rng.gen_range(1..=max_len))
        .map(|_| Syllable::new(rng.gen_range(0..g.len()), if rng.gen() { 1 } else { -1 }))
        .collect()
}

#[test]
fn centralizer_membership_matches_commutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in [LabeledGraph::flat_braid(5).unwrap(), LabeledGraph::path_graph(3, VertexOrder::Infinite).unwrap()] {
        let elements = ball(&g, 4);
        let mut tried = 0;
        while tried < 15 {
            let x = word::reduce(&g, &random_word(&g, &mut rng, 5)).unwrap();
            let Ok(c) = centralizer(&g, x.syllables()) else { continue };
            tried += 1;
            for h in &elements {
                assert_eq!(
                    c.contains(&g, h.syllables()).unwrap(),
                    word::commutes(&g, &x, h),
                    "{} and {}",
                    word::format_word(&g, x.syllables()),
                    word::format_word(&g, h.syllables())
                );
            }
        }
    }
}

#[test]
fn coxeter_solver_matches_reflection_matrices() {
    let m = thick_quotient_matrix();
    let solver = CoxeterSolver::new(&m);
    let reflections = reflection_matrices(&m).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut equal_pairs = 0;
    for _ in 0..300 {
        let a: Vec<usize> = (0..rng.gen_range(0..7)).map(|_| rng.gen_range(0..m.rank())).collect();
        // Half the time compare with a word obtained by inserting a relator.
        let b: Vec<usize> = if rng.gen() {
            let (i, j) = (rng.gen_range(0..m.rank()), rng.gen_range(0..m.rank()));
            let at = rng.gen_range(0..=a.len());
            [&a[..at], &[i, j, j, i][..], &a[at..]].concat()
        } else {
            (0..rng.gen_range(0..7)).map(|_| rng.gen_range(0..m.rank())).collect()
        };
        let by_solver = solver.equals(&a, &b).unwrap();
        assert_eq!(by_solver, word_matrix(&reflections, &a) == word_matrix(&reflections, &b));
        equal_pairs += by_solver as usize;
    }
    assert!(equal_pairs > 100);
}

#[test]
fn pure_braids_match_permutation_products() {
    let g = LabeledGraph::flat_braid(5).unwrap();
    let sym = SymmetricGroup(5);
    let transpositions: Vec<_> = (0..4).map(|i| fp::transposition(5, i, i + 1)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let w = random_word(&g, &mut rng, 8);
        let mut p = sym.identity();
        for s in &w {
            p = sym.multiply(&p, &transpositions[s.vertex]).unwrap();
        }
        assert_eq!(fp::perm_image(5, &w).unwrap(), p);
        assert_eq!(fp::is_pure(5, &w).unwrap(), sym.is_identity(&p).unwrap());
    }
}

#[test]
fn sym4_parabolic_by_closure() {
    let m = thick_quotient_matrix().restrict(&[3, 4, 5]).unwrap();
    let reflections = reflection_matrices(&m).unwrap();
    let mut group = HashSet::from([coxeter::IntMatrix::identity(m.rank())]);
    let mut frontier: Vec<_> = group.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for r in &reflections {
            let y = x.mul(r);
            if group.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    assert_eq!(group.len(), 24);
}
