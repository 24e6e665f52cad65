//! Banks set via depth-first search over transitive chains.
//!
//! `a` is in the Banks set of `x` iff some transitive chain headed by `a` has
//! no alternative of `x` dominating all of its members. Any inclusion-maximal
//! transitive superset of such a chain still has `a` as its maximum, because
//! a new maximum would have to dominate the whole chain.

use crate::altset::AltSet;
use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// Alternatives listed in decreasing dominance: each element dominates every
/// later one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitiveChain(Vec<usize>);

impl TransitiveChain {
    pub fn new(t: &Tournament, elements: Vec<usize>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        for (i, &a) in elements.iter().enumerate() {
            if a >= t.len() {
                return Err(Error::IndexOutOfRange { index: a, size: t.len() });
            }
            for &b in &elements[i + 1..] {
                if !t.beats(a, b) {
                    return Err(Error::InvalidArgument(format!(
                        "{} does not dominate {} in the chain",
                        t.name(a),
                        t.name(b)
                    )));
                }
            }
        }
        Ok(TransitiveChain(elements))
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn head(&self) -> usize {
        self.0[0]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_set(&self, universe: usize) -> AltSet {
        AltSet::from_indices(universe, self.0.iter().copied())
    }

    /// `chain: d > c3 > y1`
    pub fn display(&self, t: &Tournament) -> String {
        let names: Vec<&str> = self.0.iter().map(|&i| t.name(i)).collect();
        format!("chain: {}", names.join(" > "))
    }
}

/// Some alternative dominating every chain element, if one exists.
pub fn is_top_extendable(t: &Tournament, chain: &TransitiveChain) -> Option<usize> {
    is_top_extendable_within(t, &t.all(), chain)
}

/// Like [`is_top_extendable`], only considering alternatives in `x`.
pub fn is_top_extendable_within(
    t: &Tournament,
    x: &AltSet,
    chain: &TransitiveChain,
) -> Option<usize> {
    let mut common = x.clone();
    for &c in chain.elements() {
        common.intersect_with(t.dominators_of(c));
    }
    common.first()
}

struct ChainSearch<'t> {
    t: &'t Tournament,
    chain: Vec<usize>,
}

impl ChainSearch<'_> {
    /// `pool`: alternatives dominated by every chain member.
    /// `threats`: alternatives dominating every chain member.
    fn extend(&mut self, pool: &AltSet, threats: &AltSet) -> bool {
        if threats.is_empty() {
            return true;
        }
        // A threat that no pool element beats can never be removed.
        if threats
            .iter()
            .any(|th| !self.t.dominators_of(th).intersects(pool))
        {
            return false;
        }
        let mut candidates: Vec<(usize, usize)> = pool
            .iter()
            .map(|c| (self.t.dominion(c).intersection_len(pool), c))
            .collect();
        candidates.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, c) in candidates {
            self.chain.push(c);
            let next_pool = pool.intersection(self.t.dominion(c));
            let next_threats = threats.intersection(self.t.dominators_of(c));
            if self.extend(&next_pool, &next_threats) {
                return true;
            }
            self.chain.pop();
        }
        false
    }
}

/// A chain within `x` headed by `a` that nothing in `x` dominates entirely,
/// or `None` if `a` is not in the Banks set of `x`.
pub fn banks_member(t: &Tournament, x: &AltSet, a: usize) -> Result<Option<TransitiveChain>> {
    t.check_member(x, a)?;
    let mut search = ChainSearch {
        t,
        chain: vec![a],
    };
    let pool = t.dominion(a).intersection(x);
    let threats = t.dominators_of(a).intersection(x);
    Ok(search
        .extend(&pool, &threats)
        .then_some(TransitiveChain(search.chain)))
}

/// The Banks set of `t` restricted to `x`; empty for empty `x`.
pub fn banks_set(t: &Tournament, x: &AltSet) -> Result<AltSet> {
    t.check_set(x)?;
    let mut out = AltSet::empty(t.len());
    for a in x {
        if banks_member(t, x, a)?.is_some() {
            out.insert(a);
        }
    }
    Ok(out)
}
