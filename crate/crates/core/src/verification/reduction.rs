//! Instance-level checks that a formula is satisfiable exactly when the
//! decision node is selected in its gadget tournament.

use super::sat::satisfiable;
use crate::banks::{banks_member, TransitiveChain};
use crate::error::Result;
use crate::reductions::{build_banks_tournament, build_teq_tournament, decision_node, Cnf, TStarLayout};
use crate::teq::{teq_exact, teq_heuristic};
use std::fmt;

/// Largest clause count for which the TEQ reduction is checked with the exact
/// recursion (`12m - 7 = 17` alternatives).
pub const EXACT_TEQ_MAX_CLAUSES: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Disagree,
    /// Membership came from the heuristic and was not checked exactly.
    Unverified,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Agree => "AGREE",
            Verdict::Disagree => "DISAGREE",
            Verdict::Unverified => "UNVERIFIED",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ReductionVerdict {
    pub satisfiable: bool,
    pub member: bool,
    pub verdict: Verdict,
    /// Banks chain headed by `d`, when one exists.
    pub witness: Option<TransitiveChain>,
    pub layout: TStarLayout,
}

impl fmt::Display for ReductionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SAT={} MEMBER={} VERDICT={}",
            self.satisfiable, self.member, self.verdict
        )
    }
}

fn agreement(sat: bool, member: bool) -> Verdict {
    if sat == member {
        Verdict::Agree
    } else {
        Verdict::Disagree
    }
}

/// Decides `d ∈ BA` on the Banks construction and compares with satisfiability.
pub fn verify_banks_reduction(cnf: &Cnf) -> Result<ReductionVerdict> {
    let sat = satisfiable(cnf)?;
    let layout = build_banks_tournament(cnf);
    let t = layout.tournament();
    let witness = banks_member(t, &t.all(), decision_node(&layout))?;
    let member = witness.is_some();
    Ok(ReductionVerdict {
        satisfiable: sat,
        member,
        verdict: agreement(sat, member),
        witness,
        layout,
    })
}

/// Decides `d ∈ TEQ` on the TEQ construction: exactly for at most
/// [`EXACT_TEQ_MAX_CLAUSES`] clauses, otherwise with the heuristic and an
/// [`Verdict::Unverified`] verdict.
pub fn verify_teq_reduction(cnf: &Cnf) -> Result<ReductionVerdict> {
    let sat = satisfiable(cnf)?;
    let layout = build_teq_tournament(cnf);
    let t = layout.tournament();
    let d = decision_node(&layout);
    let (member, verdict) = if cnf.m() <= EXACT_TEQ_MAX_CLAUSES {
        let member = teq_exact(t, &t.all())?.teq_set.contains(d);
        (member, agreement(sat, member))
    } else {
        let member = teq_heuristic(t, &t.all())?.teq_set.contains(d);
        (member, Verdict::Unverified)
    };
    Ok(ReductionVerdict {
        satisfiable: sat,
        member,
        verdict,
        witness: None,
        layout,
    })
}
