//! Clique and determinism checks, interaction of proofs with their duals,
//! and the law and logicality harnesses.

mod clique;
mod determinism;
mod interact;
pub mod laws;
mod logicality;

use std::fmt;

pub use clique::{clique_unchecked, is_clique, CliqueReport, CliqueStatus, MAX_SET_CLIQUE};
pub use determinism::{
    determinism_check, determinism_violations, key_lemma_discrepancies, random_weakly_reflexive_table, small_bags,
    DeterminismError, DeterminismReport,
};
pub use interact::{interact, InteractError, InteractReport, Outcome};
pub use laws::{laws_suite, LawRecord, LawsOptions, LawsReport};
pub use logicality::{bipartite_remark, logicality_check, logicality_configs, BipartiteRecord, LogicalityRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Passed, with some quantification cut at a bound.
    Bounded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Bounded => "bounded",
        })
    }
}
