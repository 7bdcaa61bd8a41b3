use std::fs;
use std::path::Path;
use std::sync::Arc;

use llsem::space::{parse_table_space, ExpFlavor, KSet, SemanticsConfig, Space};
use llsem::syntax::parse_formula;

use crate::args::{Exponential, SemanticsArgs, SemanticsName, SpaceArgs};
use crate::error::CliError;

pub fn label(name: SemanticsName) -> &'static str {
    match name {
        SemanticsName::Rel => "rel",
        SemanticsName::Bipartite => "bipartite",
        SemanticsName::BipartiteUniform => "bipartite-uniform",
        SemanticsName::Coh => "coh",
        SemanticsName::CohUniform => "coh-uniform",
        SemanticsName::CohUniformSet => "coh-uniform-set",
        SemanticsName::Hyper => "hyper",
        SemanticsName::HyperUniform => "hyper-uniform",
        SemanticsName::HyperUniformSet => "hyper-uniform-set",
        SemanticsName::Multi => "multi",
        SemanticsName::MultiUniform => "multi-uniform",
        SemanticsName::MultiUniformSet => "multi-uniform-set",
    }
}

fn parse_k(text: &str) -> Result<KSet, CliError> {
    text.parse::<KSet>().map_err(|e| CliError::usage(format!("--K: {e}")))
}

/// Builds the configuration selected by `name` and the shared flags.
pub fn config(name: SemanticsName, args: &SemanticsArgs) -> Result<SemanticsConfig, CliError> {
    use SemanticsName::*;
    let multiset_family = matches!(name, Coh | CohUniform | CohUniformSet | Multi | MultiUniform | MultiUniformSet);
    if args.k.is_some() && !multiset_family {
        return Err(CliError::usage(format!("--K does not apply to {}", label(name))));
    }
    if args.exponential.is_some() && !matches!(name, Coh | Multi) {
        return Err(CliError::usage(format!("--exponential does not apply to {}", label(name))));
    }
    let k = match (name, &args.k) {
        (Coh | CohUniform | CohUniformSet, Some(text)) => {
            let k = parse_k(text)?;
            if k != KSet::PairOnly {
                return Err(CliError::usage("the coh semantics fixes K = pair; use multi for other K"));
            }
            k
        }
        (Coh | CohUniform | CohUniformSet, None) => KSet::PairOnly,
        (_, Some(text)) => parse_k(text)?,
        (_, None) => KSet::AllGe2,
    };
    let exp = match args.exponential {
        Some(Exponential::Indexed) => ExpFlavor::Indexed,
        _ => ExpFlavor::CoFree,
    };
    let cfg = match name {
        Rel => SemanticsConfig::relational(),
        Bipartite => SemanticsConfig::bipartite(false),
        BipartiteUniform => SemanticsConfig::bipartite(true),
        Coh | Multi => SemanticsConfig::multiset(k, exp)?,
        CohUniform | MultiUniform => SemanticsConfig::multiset(k, ExpFlavor::UniformMultiset)?,
        CohUniformSet | MultiUniformSet => SemanticsConfig::multiset(k, ExpFlavor::UniformSet)?,
        Hyper => SemanticsConfig::hyper(ExpFlavor::NonUniformHyper)?,
        HyperUniform => SemanticsConfig::hyper(ExpFlavor::UniformMultiset)?,
        HyperUniformSet => SemanticsConfig::hyper(ExpFlavor::UniformSet)?,
    };
    let budget = if args.budget == 0 { None } else { Some(args.budget) };
    let cfg = cfg.with_card_bound(args.card_bound).with_budget(budget);
    cfg.validate()?;
    Ok(cfg)
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// Reads a space argument: a `.tbs` table, a `.llf` file, or formula text.
pub fn space(args: &SpaceArgs) -> Result<Space, CliError> {
    let path = Path::new(&args.space);
    let base = if args.space.ends_with(".tbs") {
        let table = parse_table_space(&read(path)?)?;
        Space::atom(Arc::new(table))
    } else {
        let text = if args.space.ends_with(".llf") { read(path)? } else { args.space.clone() };
        Space::from(&parse_formula(&text)?)
    };
    Ok(if args.of_course { Space::of_course(base) } else { base })
}
