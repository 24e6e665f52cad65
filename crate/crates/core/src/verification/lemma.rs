//! Instance checks of the two structural facts behind the TEQ reduction:
//! every level alternative of a d-containing subset is reachable from a chain
//! node in the subset's TEQ relation, and along a transitive chain picked from
//! a consistent choice set the decision node survives at every nesting level.

use super::reduction::EXACT_TEQ_MAX_CLAUSES;
use crate::altset::AltSet;
use crate::error::{Error, Result};
use crate::reductions::{build_teq_tournament, decision_node, ChoiceSet, Cnf, Role, TStarLayout};
use crate::teq::teq_exact;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Level alternatives of `b` not reachable from any chain node of `b` in the
/// TEQ relation of `b`. Empty means the check passed.
pub fn check_lemma1(layout: &TStarLayout, b: &AltSet) -> Result<Vec<usize>> {
    let t = layout.tournament();
    let d = decision_node(layout);
    t.check_member(b, d)?;
    let rel = teq_exact(t, b)?.teq_relation;
    let mut reached = AltSet::empty(t.len());
    for c in layout.chain_set().intersection(b).iter() {
        reached.union_with(&rel.reachable_from(c));
    }
    Ok(layout
        .level_set()
        .intersection(b)
        .difference(&reached)
        .to_vec())
}

#[derive(Debug, Clone, Default)]
pub struct Lemma1Report {
    pub seed: u64,
    pub samples: usize,
    /// `(subset, unreachable alternatives)` for every failing sample.
    pub failures: Vec<(AltSet, Vec<usize>)>,
}

impl Lemma1Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A random subset containing `d`, every other alternative kept with
/// probability 1/2.
pub fn random_d_subset(layout: &TStarLayout, rng: &mut impl Rng) -> AltSet {
    let n = layout.tournament().len();
    let d = decision_node(layout);
    AltSet::from_indices(n, (0..n).filter(|&a| a == d || rng.random_bool(0.5)))
}

/// Runs [`check_lemma1`] on `samples` random d-containing subsets.
pub fn check_lemma1_sampled(layout: &TStarLayout, samples: usize, seed: u64) -> Result<Lemma1Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Lemma1Report {
        seed,
        samples,
        failures: Vec::new(),
    };
    for _ in 0..samples {
        let b = random_d_subset(layout, &mut rng);
        let bad = check_lemma1(layout, &b)?;
        if !bad.is_empty() {
            report.failures.push((b, bad));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct ProofTrace {
    /// `u_1..u_n`, one alternative per level, in level order.
    pub chain: Vec<usize>,
    /// `nested[k-1]` is the k-th nested set, `k = 1..=n+1`.
    pub nested: Vec<AltSet>,
    pub failures: Vec<String>,
    pub layout: TStarLayout,
}

impl ProofTrace {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn levels(&self) -> usize {
        self.nested.len()
    }
}

/// Picks `u_j` on every level of the TEQ construction according to `w`
/// (literal `x_i^k`, its shadow `z_i^k`, separating nodes in between), forms
/// the nested sets `D_{n+1} = A`, `D_i = D_{i+1} ∩ dominators(u_i)`, and checks
/// their properties, including `d ∈ TEQ(D_k)` for every `k`.
pub fn check_proof_trace(cnf: &Cnf, w: &ChoiceSet) -> Result<ProofTrace> {
    if cnf.m() > EXACT_TEQ_MAX_CLAUSES {
        return Err(Error::CapExceeded {
            what: "clause count",
            value: cnf.m(),
            cap: EXACT_TEQ_MAX_CLAUSES,
        });
    }
    if w.picks().len() != cnf.m() {
        return Err(Error::InvalidChoiceSet("choice set belongs to another formula".into()));
    }
    if !w.is_consistent(cnf) {
        return Err(Error::InvalidChoiceSet("picks contain a complementary pair".into()));
    }
    let layout = build_teq_tournament(cnf);
    let t = layout.tournament();
    let n = layout.size();
    let d = decision_node(&layout);
    let c = layout.chain();

    let chain: Vec<usize> = (1..=n)
        .map(|lvl| {
            let members = layout.level(lvl);
            match layout.role(members[0]) {
                Role::Separator(_) => members[0],
                Role::Literal { clause, .. } | Role::Shadow { clause, .. } => {
                    members[w.picks()[clause - 1]]
                }
                _ => unreachable!("levels hold no chain nodes"),
            }
        })
        .collect();

    let mut failures = Vec::new();
    for (i, &u) in chain.iter().enumerate() {
        for &v in &chain[i + 1..] {
            if !t.beats(u, v) {
                failures.push(format!("chain not transitive: {} does not beat {}", t.name(u), t.name(v)));
            }
        }
    }

    // nested[k] holds D_{k+1}
    let mut nested = vec![t.all(); n + 1];
    for i in (0..n).rev() {
        nested[i] = nested[i + 1].intersection(t.dominators_of(chain[i]));
    }
    for k in 0..n {
        if !(nested[k].is_subset(&nested[k + 1]) && nested[k] != nested[k + 1]) {
            failures.push(format!("D_{} is not a proper subset of D_{}", k + 1, k + 2));
        }
    }

    // u_j ∈ D_i iff j < i; c_j ∈ D_i iff j < i
    for i in 1..=n + 1 {
        let set = &nested[i - 1];
        for j in 1..=n {
            if set.contains(chain[j - 1]) != (j < i) {
                failures.push(format!("u_{j} membership in D_{i} is wrong"));
            }
        }
        for (j, &cj) in c.iter().enumerate() {
            if set.contains(cj) != (j < i) {
                failures.push(format!("c_{j} membership in D_{i} is wrong"));
            }
        }
    }

    if t.condorcet_winner(&nested[0])? != Some(d) {
        failures.push("d is not the Condorcet winner of D_1".into());
    }

    let results = nested
        .iter()
        .map(|set| teq_exact(t, set))
        .collect::<Result<Vec<_>>>()?;
    for (k, r) in results.iter().enumerate() {
        if !r.teq_set.contains(d) {
            failures.push(format!("d is not in TEQ(D_{})", k + 1));
        }
    }
    for i in 1..=n {
        let rel = &results[i].teq_relation; // relation of D_{i+1}
        for (j, &cj) in c.iter().enumerate().take(i) {
            if !rel.contains(c[i], cj) {
                failures.push(format!("c_{i} does not TEQ-dominate c_{j} in D_{}", i + 1));
            }
        }
        if !rel.contains(chain[i - 1], c[i]) {
            failures.push(format!("u_{i} does not TEQ-dominate c_{i} in D_{}", i + 1));
        }
    }

    Ok(ProofTrace {
        chain,
        nested,
        failures,
        layout,
    })
}
