mod common;

use common::{banks_oracle, running_example};
use proptest::prelude::*;
use teq_core::{banks_set, random_tournament, teq_exact, teq_heuristic, AltSet, Tournament};

fn tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_tournament(n, seed))
}

/// A tournament together with a non-empty subset of its alternatives.
fn with_subset(max_n: usize) -> impl Strategy<Value = (Tournament, AltSet)> {
    (tournament(max_n), any::<u64>()).prop_map(|(t, mask)| {
        let n = t.len();
        let mut x = AltSet::from_mask(n, mask & ((1u64 << n) - 1));
        if x.is_empty() {
            x.insert((mask % n as u64) as usize);
        }
        (t, x)
    })
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut s = seed;
    for i in (1..n).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        p.swap(i, (s >> 33) as usize % (i + 1));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dominators_and_dominion_partition((t, x) in with_subset(12)) {
        for a in x.iter() {
            let dom = t.dominators(&x, a).unwrap();
            let beaten = t.dominion(a).intersection(&x);
            prop_assert!(!dom.intersects(&beaten));
            prop_assert!(!dom.contains(a) && !beaten.contains(a));
            prop_assert_eq!(dom.len() + beaten.len() + 1, x.len());
        }
    }

    #[test]
    fn closure_is_idempotent((t, x) in with_subset(12)) {
        let c = t.dominance_relation(&x).unwrap().transitive_closure();
        prop_assert_eq!(c.transitive_closure(), c);
    }

    #[test]
    fn subsets_of_transitive_sets_are_transitive(n in 1usize..12, perm_seed in any::<u64>(), mask in any::<u64>()) {
        let t = Tournament::transitive(n).permuted(&permutation(n, perm_seed)).unwrap();
        prop_assert!(t.is_transitive(&t.all()));
        let x = AltSet::from_mask(n, mask & ((1u64 << n) - 1));
        prop_assert!(t.is_transitive(&x));
    }

    #[test]
    fn top_cycle_is_nonempty_and_dominates((t, x) in with_subset(12)) {
        let top = t.dominance_relation(&x).unwrap().top_cycle().unwrap();
        prop_assert!(!top.is_empty());
        for a in top.iter() {
            for b in x.difference(&top).iter() {
                prop_assert!(t.beats(a, b));
            }
        }
    }

    #[test]
    fn banks_set_is_permutation_invariant(t in tournament(9), seed in any::<u64>()) {
        let perm = permutation(t.len(), seed);
        let p = t.permuted(&perm).unwrap();
        let image: Vec<usize> = banks_set(&t, &t.all()).unwrap().iter().map(|a| perm[a]).collect();
        prop_assert_eq!(AltSet::from_indices(t.len(), image), banks_set(&p, &p.all()).unwrap());
    }

    #[test]
    fn teq_is_permutation_invariant(t in tournament(10), seed in any::<u64>()) {
        let perm = permutation(t.len(), seed);
        let p = t.permuted(&perm).unwrap();
        let image: Vec<usize> = teq_exact(&t, &t.all()).unwrap().teq_set.iter().map(|a| perm[a]).collect();
        prop_assert_eq!(AltSet::from_indices(t.len(), image), teq_exact(&p, &p.all()).unwrap().teq_set);
    }

    #[test]
    fn teq_relation_is_a_subrelation_of_dominance((t, x) in with_subset(12)) {
        let r = teq_exact(&t, &x).unwrap();
        prop_assert!(r.teq_relation.is_subrelation_of(&t.dominance_relation(&x).unwrap()));
        let h = teq_heuristic(&t, &x).unwrap();
        prop_assert!(h.teq_relation.is_subrelation_of(&t.dominance_relation(&x).unwrap()));
    }

    #[test]
    fn teq_within_banks_within_top_cycle((t, x) in with_subset(9)) {
        let teq = teq_exact(&t, &x).unwrap().teq_set;
        let banks = banks_set(&t, &x).unwrap();
        let top = t.dominance_relation(&x).unwrap().top_cycle().unwrap();
        prop_assert!(teq.is_subset(&banks));
        prop_assert!(banks.is_subset(&top));
        prop_assert_eq!(banks, banks_oracle(&t, &x));
    }

    #[test]
    fn text_format_round_trips(t in tournament(20)) {
        let text = t.to_text();
        let back = Tournament::parse(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back, t);
    }
}

#[test]
fn oracle_reproduces_running_example() {
    let t = running_example();
    assert_eq!(t.sorted_names(&banks_oracle(&t, &t.all())), ["a", "b", "c", "d"]);
}
