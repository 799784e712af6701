use std::collections::BTreeSet;

use proptest::prelude::*;

use kneser_core::catalan::necklace_of;
use kneser_core::decompose::{classify_components, delete_colors, expected_census, ColorSet};
use kneser_core::hamilton::{find_hamiltonian_cycle, verify_cycle, SearchBudget};
use kneser_core::io::{from_json, to_json};
use kneser_core::morphisms::{kappa, perm_automorphism};
use kneser_core::setcore::{apply_perm, Perm};
use kneser_core::{Block, FamilyId, GroundSize, LabeledGraph};

fn block_strategy(m: usize) -> impl Strategy<Value = Block> {
    let g = GroundSize::new(m).unwrap();
    (0..(1u64 << m)).prop_map(move |bits| Block::new(g, bits).unwrap())
}

fn perm_strategy(m: usize) -> impl Strategy<Value = Perm> {
    Just((1..=m).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Perm::from_images(&images).unwrap())
}

proptest! {
    #[test]
    fn complement_is_an_involution(b in block_strategy(9)) {
        prop_assert_eq!(b.complement().complement(), b);
        prop_assert_eq!(b.len() + b.complement().len(), 9);
        prop_assert!(b.is_disjoint(b.complement()));
    }

    #[test]
    fn permutations_act_on_blocks(p in perm_strategy(7), q in perm_strategy(7), b in block_strategy(7)) {
        prop_assert_eq!(apply_perm(&p.inverse(), apply_perm(&p, b)), b);
        prop_assert_eq!(apply_perm(&p.compose(&q), b), apply_perm(&p, apply_perm(&q, b)));
        prop_assert_eq!(apply_perm(&p, b).len(), b.len());
    }

    #[test]
    fn permutations_are_automorphisms_of_odd_graphs(n in 2usize..5, seed in any::<u64>()) {
        let m = 2 * n - 1;
        let mut images: Vec<usize> = (1..=m).collect();
        images.rotate_left((seed % m as u64) as usize);
        images.swap(0, (seed as usize / 7) % m);
        let p = Perm::from_images(&images).unwrap();
        let g = std::sync::Arc::new(LabeledGraph::build(FamilyId::Odd(n)).unwrap());
        let map = perm_automorphism(g, &p).unwrap();
        prop_assert_eq!(map.status(), kneser_core::morphisms::Verification::Pass);
    }

    #[test]
    fn census_depends_only_on_color_count(n in 2usize..6, mask in any::<u64>()) {
        let m = 2 * n - 1;
        let colors: Vec<usize> = (1..=m).filter(|x| mask >> x & 1 == 1).collect();
        prop_assume!(!colors.is_empty() && colors.len() <= n);
        let set = ColorSet::new(n, &colors).unwrap();
        let g = LabeledGraph::build(FamilyId::Odd(n)).unwrap();
        let census = classify_components(&delete_colors(&g, set.block()).unwrap()).counts();
        prop_assert_eq!(census, expected_census(FamilyId::Odd(n), n, colors.len()).unwrap());
    }

    #[test]
    fn induced_subgraphs_round_trip(n in 2usize..5, mask in any::<u64>()) {
        let g = LabeledGraph::build(FamilyId::MiddleLevels(n)).unwrap();
        let keep: Vec<usize> = (0..g.vertex_count()).filter(|i| mask >> (i % 64) & 1 == 1).collect();
        let sub = g.induced_subgraph(&keep);
        let text = to_json(&sub);
        let back = from_json(&text).unwrap();
        prop_assert_eq!(to_json(&back), text);
        prop_assert_eq!(back, sub);
    }

    #[test]
    fn necklaces_are_rotation_invariant(n in 2usize..6, pick in any::<prop::sample::Index>()) {
        let g = LabeledGraph::build(FamilyId::Odd(n)).unwrap();
        let v = g.vertex(pick.index(g.vertex_count()));
        let rot = Perm::rotation(v.ground());
        let name = necklace_of(v, n).unwrap().canonical;
        let mut w = v;
        for _ in 0..2 * n - 1 {
            w = apply_perm(&rot, w);
            prop_assert_eq!(&necklace_of(w, n).unwrap().canonical, &name);
        }
        prop_assert_eq!(w, v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn every_seed_gives_a_valid_cycle(seed in any::<u64>()) {
        let g = LabeledGraph::build(FamilyId::Odd(4)).unwrap();
        let budget = SearchBudget { seed, ..SearchBudget::default() };
        let report = find_hamiltonian_cycle(&g, budget);
        let cycle = report.cycle().expect("O_4 is Hamiltonian");
        prop_assert!(verify_cycle(&g, cycle));
        let distinct: BTreeSet<usize> = cycle.vertices().iter().copied().collect();
        prop_assert_eq!(distinct.len(), 35);
    }
}

#[test]
fn odd_graph_vertices_see_each_missing_color_once() {
    for n in 2..=5 {
        let g = LabeledGraph::build(FamilyId::Odd(n)).unwrap();
        for i in 0..g.vertex_count() {
            let v = g.vertex(i);
            let colors: BTreeSet<usize> = g
                .neighbors(i)
                .iter()
                .map(|nb| nb.color.unwrap() as usize)
                .collect();
            let missing: BTreeSet<usize> = v.complement().iter().collect();
            assert_eq!(colors, missing);
        }
    }
}

#[test]
fn complementation_swaps_the_levels() {
    for n in 1..=4 {
        let k = kappa(n).unwrap();
        let g = k.source();
        for i in 0..g.vertex_count() {
            let j = k.image(i).unwrap();
            assert_eq!(k.image(j), Some(i));
            assert_ne!(g.vertex(i).len(), g.vertex(j).len());
        }
    }
}
