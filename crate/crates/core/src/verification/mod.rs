//! Brute-force checks of the reductions and of structural properties of TEQ.

pub mod lemma;
pub mod reduction;
pub mod sat;
pub mod sweep;

pub use lemma::{check_lemma1, check_lemma1_sampled, check_proof_trace, Lemma1Report, ProofTrace};
pub use reduction::{
    verify_banks_reduction, verify_teq_reduction, ReductionVerdict, Verdict, EXACT_TEQ_MAX_CLAUSES,
};
pub use sat::{consistent_choice_set, consistent_choice_sets, sat_brute_force, satisfiable};
pub use sweep::{sweep, Check, CheckCount, Counterexample, SweepConfig, SweepMode, SweepReport};
