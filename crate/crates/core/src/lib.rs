//! Tournament solutions and the 3SAT gadget tournaments that make
//! membership in them hard.
//!
//! * [`tournament`]: tournaments, restriction, dominators, text/DOT formats
//! * [`relation`]: closures, strongly connected components, top cycle
//! * [`banks`]: Banks set membership with transitive-chain witnesses
//! * [`teq`]: tournament equilibrium set, exact and heuristic
//! * [`reductions`]: 3CNF input and the two gadget constructions
//! * [`verification`]: satisfiability oracles, reduction checks, sweeps
//! * [`bench`]: exact-versus-heuristic timing tables
//!
//! ```
//! use teq_core::{banks_set, teq_exact, Tournament};
//!
//! let t = Tournament::parse("tournament 3\na b c\n-10\n0-1\n10-\n").unwrap();
//! assert_eq!(teq_exact(&t, &t.all()).unwrap().teq_set.len(), 3);
//! assert_eq!(banks_set(&t, &t.all()).unwrap().len(), 3);
//! ```

pub mod altset;
pub mod banks;
pub mod bench;
pub mod error;
pub mod reductions;
pub mod relation;
pub mod teq;
pub mod tournament;
pub mod verification;

pub use altset::AltSet;
pub use banks::{banks_member, banks_set, is_top_extendable, is_top_extendable_within, TransitiveChain};
pub use error::{Error, Result};
pub use relation::Relation;
pub use teq::{
    teq_exact, teq_exact_with, teq_heuristic, teq_heuristic_with, teq_member, teq_trace, InnerMode,
    TeqOptions, TeqResult, TeqStats,
};
pub use tournament::{enumerate_tournaments, enumerate_tournaments_capped, random_tournament, Tournament};
