//! Two independent satisfiability oracles: an assignment sweep and a
//! choice-set search.

use crate::error::{Error, Result};
use crate::reductions::{ChoiceSet, Cnf, Literal};

pub const MAX_BRUTE_FORCE_VARS: usize = 24;
pub const MAX_CHOICE_SET_CLAUSES: usize = 16;

/// First satisfying assignment in lexicographic order (variable 1 most
/// significant, `false < true`), indexed by `variable - 1`.
pub fn sat_brute_force(cnf: &Cnf) -> Result<Option<Vec<bool>>> {
    let v = cnf.num_vars();
    if v > MAX_BRUTE_FORCE_VARS {
        return Err(Error::CapExceeded {
            what: "variable count",
            value: v,
            cap: MAX_BRUTE_FORCE_VARS,
        });
    }
    let mut assignment = vec![false; v];
    for mask in 0u32..1 << v {
        for (i, slot) in assignment.iter_mut().enumerate() {
            *slot = mask >> (v - 1 - i) & 1 == 1;
        }
        if cnf.is_satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

fn check_choice_cap(cnf: &Cnf) -> Result<()> {
    if cnf.m() > MAX_CHOICE_SET_CLAUSES {
        return Err(Error::CapExceeded {
            what: "clause count",
            value: cnf.m(),
            cap: MAX_CHOICE_SET_CLAUSES,
        });
    }
    Ok(())
}

/// Visits choice sets in lexicographic order of picks, skipping prefixes that
/// already contain a complementary pair. Stops when `visit` returns false.
fn search_choice_sets(cnf: &Cnf, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(
        cnf: &Cnf,
        picks: &mut Vec<usize>,
        chosen: &mut Vec<Literal>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let i = picks.len();
        if i == cnf.m() {
            return visit(picks);
        }
        for k in 0..3 {
            let lit = cnf.literal(i, k);
            if chosen.iter().any(|c| c.is_complement_of(lit)) {
                continue;
            }
            picks.push(k);
            chosen.push(lit);
            let more = go(cnf, picks, chosen, visit);
            picks.pop();
            chosen.pop();
            if !more {
                return false;
            }
        }
        true
    }
    go(cnf, &mut Vec::new(), &mut Vec::new(), visit);
}

/// The lexicographically first choice set without complementary picks.
pub fn consistent_choice_set(cnf: &Cnf) -> Result<Option<ChoiceSet>> {
    check_choice_cap(cnf)?;
    let mut found = None;
    search_choice_sets(cnf, &mut |picks| {
        found = Some(picks.to_vec());
        false
    });
    found.map(|p| ChoiceSet::new(cnf, p)).transpose()
}

/// Every consistent choice set, in lexicographic order.
pub fn consistent_choice_sets(cnf: &Cnf) -> Result<Vec<ChoiceSet>> {
    check_choice_cap(cnf)?;
    let mut all = Vec::new();
    search_choice_sets(cnf, &mut |picks| {
        all.push(picks.to_vec());
        true
    });
    all.into_iter().map(|p| ChoiceSet::new(cnf, p)).collect()
}

/// Satisfiability as decided by both oracles; an error if they disagree.
pub fn satisfiable(cnf: &Cnf) -> Result<bool> {
    let by_assignment = sat_brute_force(cnf)?.is_some();
    let by_choice = consistent_choice_set(cnf)?.is_some();
    if by_assignment != by_choice {
        return Err(Error::OracleDisagreement);
    }
    Ok(by_assignment)
}
