#![allow(dead_code)]

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teq_core::reductions::Cnf;
use teq_core::{AltSet, Tournament};

/// Five alternatives where BA = {a,b,c,d} and TEQ = {a,b,c}.
pub fn running_example() -> Tournament {
    Tournament::parse("tournament 5\na b c d e\n-1011\n0-110\n10-01\n001-1\n0100-\n").unwrap()
}

/// (¬p ∨ s ∨ q) ∧ (p ∨ s ∨ r) ∧ (p ∨ q ∨ ¬r) with p=1, q=2, r=3, s=4.
pub fn three_clause_formula() -> Cnf {
    Cnf::from_ints(&[[-1, 4, 2], [1, 4, 3], [1, 2, -3]]).unwrap()
}

/// All eight sign patterns over variables 1, 2, 3: unsatisfiable.
pub fn all_signs_formula() -> Cnf {
    let clauses: Vec<[i32; 3]> = (0..8)
        .map(|s: i32| {
            let sign = |bit: i32| if s >> bit & 1 == 1 { -1 } else { 1 };
            [sign(0), 2 * sign(1), 3 * sign(2)]
        })
        .collect();
    Cnf::from_ints(&clauses).unwrap()
}

/// Every clause over three distinct variables from `1..=vars`, variables in
/// increasing order, each sign pattern.
pub fn all_clauses(vars: i32) -> Vec<[i32; 3]> {
    let mut out = Vec::new();
    for a in 1..=vars {
        for b in a + 1..=vars {
            for c in b + 1..=vars {
                for s in 0..8 {
                    let sign = |bit: i32| if s >> bit & 1 == 1 { -1 } else { 1 };
                    out.push([a * sign(0), b * sign(1), c * sign(2)]);
                }
            }
        }
    }
    out
}

/// Every formula of one clause, and every ordered pair of clauses, over
/// `vars` variables.
pub fn formulas_up_to_two_clauses(vars: i32) -> Vec<Cnf> {
    let clauses = all_clauses(vars);
    let mut out: Vec<Cnf> = clauses
        .iter()
        .map(|c| Cnf::from_ints(&[*c]).unwrap())
        .collect();
    for a in &clauses {
        for b in &clauses {
            out.push(Cnf::from_ints(&[*a, *b]).unwrap());
        }
    }
    out
}

/// Seeded random formula with `m` clauses over at most `vars` variables.
pub fn random_formula(rng: &mut ChaCha8Rng, m: usize, vars: usize) -> Cnf {
    let clauses: Vec<[i32; 3]> = (0..m)
        .map(|_| {
            let picked = sample(rng, vars, 3).into_vec();
            let mut clause = [0i32; 3];
            for (slot, v) in clause.iter_mut().zip(picked) {
                let lit = v as i32 + 1;
                *slot = if rng.random_bool(0.5) { -lit } else { lit };
            }
            clause
        })
        .collect();
    Cnf::from_ints(&clauses).unwrap()
}

pub fn random_formulas(seed: u64, count: usize, max_m: usize, vars: usize) -> Vec<Cnf> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.random_range(1..=max_m);
            random_formula(&mut rng, m, vars)
        })
        .collect()
}

fn is_transitive_subset(t: &Tournament, members: &[usize]) -> bool {
    for &a in members {
        for &b in members {
            for &c in members {
                if t.beats(a, b) && t.beats(b, c) && !t.beats(a, c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Banks set by enumerating every subset of `x`: maxima of the
/// inclusion-maximal transitive subsets.
pub fn banks_oracle(t: &Tournament, x: &AltSet) -> AltSet {
    let elems = x.to_vec();
    let k = elems.len();
    assert!(k <= 20, "oracle is exponential");
    let transitive: Vec<bool> = (0u32..1 << k)
        .map(|mask| {
            let members: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| elems[i]).collect();
            is_transitive_subset(t, &members)
        })
        .collect();
    let mut out = AltSet::empty(t.len());
    for mask in 1u32..1 << k {
        if !transitive[mask as usize] {
            continue;
        }
        let maximal = (0..k).all(|i| mask >> i & 1 == 1 || !transitive[(mask | 1 << i) as usize]);
        if !maximal {
            continue;
        }
        let members: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| elems[i]).collect();
        let head = members
            .iter()
            .copied()
            .find(|&a| members.iter().all(|&b| a == b || t.beats(a, b)))
            .expect("a transitive set has a maximum");
        out.insert(head);
    }
    out
}
