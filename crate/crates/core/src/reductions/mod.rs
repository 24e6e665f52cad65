//! Gadget tournaments encoding 3CNF satisfiability.
//!
//! Both constructions place clause `i`'s literals `x_i^1, x_i^2, x_i^3` on
//! an odd level. Between literals of different clauses, the one on the
//! higher level (later clause) dominates exactly when it is the complement of
//! the other:
//!
//! * for `x ∈ X_i`, `x' ∈ X_j`, `i < j`: `x ≻ x'` iff `x' ≠ x̄`.
//!
//! The Banks construction interleaves clause levels with separating nodes.
//! The TEQ construction additionally inserts a shadow triple `Z_i` two levels
//! below each `X_i` (except the last), where `x_i^k` beats only `z_i^k` of its
//! own shadow triple.

pub mod cnf;
pub mod tstar;

pub use cnf::{ChoiceSet, Clause, Cnf, Literal};
pub use tstar::{decision_node, validate_tstar, Role, TStarLayout, TStarRule, Violation};

/// `x ≻ x'` for literals on distinct clause levels, `x` on the earlier one.
fn literal_beats(upper: Literal, lower: Literal) -> bool {
    !lower.is_complement_of(upper)
}

fn literal_level(cnf: &Cnf, clause: usize) -> Vec<Role> {
    (1..=3)
        .map(|pos| Role::Literal {
            clause,
            pos,
            literal: cnf.literal(clause - 1, pos - 1),
        })
        .collect()
}

/// Layout of size `2m - 1`: `U_{2i-1} = X_i`, `U_{2i} = {y_i}`.
/// The result has `6m - 1` alternatives.
pub fn build_banks_tournament(cnf: &Cnf) -> TStarLayout {
    let m = cnf.m();
    let mut levels = Vec::with_capacity(2 * m - 1);
    for i in 1..=m {
        levels.push(literal_level(cnf, i));
        if i < m {
            levels.push(vec![Role::Separator(i)]);
        }
    }
    TStarLayout::build(levels, |u, v| match (*u, *v) {
        (Role::Literal { literal: a, .. }, Role::Literal { literal: b, .. }) => literal_beats(a, b),
        _ => unreachable!("only literal levels are odd"),
    })
    .expect("banks layout is well formed")
}

/// Layout of size `4m - 3`: `U_{4i-3} = X_i`, `U_{4i-1} = Z_i` for `i < m`,
/// separating nodes on even levels. The result has `12m - 7` alternatives.
///
/// Edges between shadow triples of different clauses point downwards.
pub fn build_teq_tournament(cnf: &Cnf) -> TStarLayout {
    let m = cnf.m();
    let size = 4 * m - 3;
    let mut levels = Vec::with_capacity(size);
    let mut sep = 0;
    for j in 1..=size {
        if j % 4 == 1 {
            levels.push(literal_level(cnf, j.div_ceil(4)));
        } else if j % 4 == 3 {
            let clause = (j + 1) / 4;
            levels.push((1..=3).map(|pos| Role::Shadow { clause, pos }).collect());
        } else {
            sep += 1;
            levels.push(vec![Role::Separator(sep)]);
        }
    }
    TStarLayout::build(levels, |u, v| match (*u, *v) {
        (Role::Literal { literal: a, .. }, Role::Literal { literal: b, .. }) => literal_beats(a, b),
        (Role::Literal { clause: i, pos: k, .. }, Role::Shadow { clause: j, pos: l }) => {
            i < j || (i == j && k == l)
        }
        (Role::Shadow { clause: j, pos: l }, Role::Literal { clause: i, pos: k, .. }) => {
            !(i < j || (i == j && k == l))
        }
        (Role::Shadow { clause: i, .. }, Role::Shadow { clause: j, .. }) => i < j,
        _ => unreachable!("only literal and shadow levels are odd"),
    })
    .expect("teq layout is well formed")
}
