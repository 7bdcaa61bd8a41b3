use std::collections::BTreeSet;

use crate::neutral::restrict_interp;
use crate::relsem::{interpret, pretty_tuple, ExpPolicy, InterpError, Tuple};
use crate::space::{ExpFlavor, KSet, SemanticsConfig};
use crate::syntax::{Formula, Proof};

use super::Status;

/// The uniform semantics whose interpretations are compared with the neutral
/// restriction of the relational one.
pub fn logicality_configs() -> Vec<SemanticsConfig> {
    let multi = |k| SemanticsConfig::multiset(k, ExpFlavor::UniformMultiset).expect("valid");
    vec![
        multi(KSet::PairOnly),
        multi(KSet::finite([2, 3]).expect("valid")),
        multi(KSet::AllGe2),
        SemanticsConfig::hyper(ExpFlavor::UniformMultiset).expect("valid"),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalityRecord {
    pub proof: String,
    pub semantics: String,
    pub status: Status,
    /// Tuples in the restriction only, then in the uniform interpretation only.
    pub only_restricted: Vec<String>,
    pub only_uniform: Vec<String>,
}

fn diff(a: &BTreeSet<Tuple>, b: &BTreeSet<Tuple>) -> Vec<String> {
    a.difference(b).map(|t| pretty_tuple(t)).collect()
}

/// For each proof and configuration, compares the neutral restriction of the
/// non-uniform interpretation with the uniform interpretation.
pub fn logicality_check(
    proofs: &[(String, Proof)],
    configs: &[SemanticsConfig],
    bound: usize,
) -> Result<Vec<LogicalityRecord>, InterpError> {
    let mut out = Vec::new();
    for (name, p) in proofs {
        let rel = interpret(p, &ExpPolicy::NonUniform, bound)?;
        for cfg in configs {
            let restricted = restrict_interp(cfg, &rel)?;
            let uniform = interpret(p, &ExpPolicy::for_config(cfg), bound)?;
            let only_restricted = diff(&restricted.tuples, &uniform.tuples);
            let only_uniform = diff(&uniform.tuples, &restricted.tuples);
            let status = if !only_restricted.is_empty() || !only_uniform.is_empty() {
                Status::Fail
            } else if cfg.k().is_some_and(|k| !k.covered_by(cfg.card_bound)) {
                Status::Bounded
            } else {
                Status::Pass
            };
            out.push(LogicalityRecord { proof: name.clone(), semantics: cfg.to_string(), status, only_restricted, only_uniform });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteRecord {
    pub proof: String,
    pub uniform_tuples: usize,
    pub matches_relational: bool,
}

impl BipartiteRecord {
    pub fn passes(&self) -> bool {
        self.uniform_tuples == 0 && self.matches_relational
    }
}

/// For proofs concluding a single `?A`: the uniform bipartite interpretation
/// and whether the non-uniform bipartite one equals the relational one.
pub fn bipartite_remark(proofs: &[(String, Proof)], bound: usize) -> Result<Vec<BipartiteRecord>, InterpError> {
    let std_cfg = SemanticsConfig::bipartite(false);
    let mut out = Vec::new();
    for (name, p) in proofs {
        let rel = interpret(p, &ExpPolicy::NonUniform, bound)?;
        if !matches!(rel.sequent.as_slice(), [Formula::WhyNot(_)]) {
            continue;
        }
        let uniform = interpret(p, &ExpPolicy::BipartiteUniform, bound)?;
        let bip = interpret(p, &ExpPolicy::for_config(&std_cfg), bound)?;
        out.push(BipartiteRecord {
            proof: name.clone(),
            uniform_tuples: uniform.len(),
            matches_relational: bip.tuples == rel.tuples,
        });
    }
    Ok(out)
}
