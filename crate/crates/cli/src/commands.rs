use std::collections::BTreeSet;
use std::path::Path;

use serde_json::{json, Value};

use llsem::neutral::{neutral_member, restrict_interp};
use llsem::relsem::{interpret_with, parse_interp, pretty_tuple, render_interp, ExpPolicy, Interp, InterpDoc};
use llsem::space::verdict;
use llsem::syntax::{parse_bag, parse_point, parse_points, parse_proof, Point, Proof};
use llsem::verify::{interact, is_clique, laws_suite, CliqueStatus, LawsOptions, Outcome, Status};

use crate::args::{Command, SemanticsArgs, SemanticsName, SpaceArgs};
use crate::error::CliError;
use crate::semantics::{config, label, read, space};

/// What a command prints, in both output modes, and its exit status.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub exit: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, exit: 0 }
    }
}

fn load_proof(path: &Path) -> Result<Proof, CliError> {
    parse_proof(&read(path)?).map_err(|e| CliError::parse(&path.display().to_string(), e))
}

fn interp_json(semantics: &str, i: &Interp) -> Value {
    let mut v = serde_json::to_value(InterpDoc::from(i)).expect("serializable");
    v["semantics"] = json!(semantics);
    v
}

fn points_arg(text: &str) -> Result<BTreeSet<Point>, CliError> {
    let p = Path::new(text);
    let body = if p.is_file() { read(p)? } else { text.to_string() };
    let cleaned: String = body.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n");
    Ok(parse_points(&cleaned)?.into_iter().collect())
}

fn cut_bound(bound: usize, cut: Option<usize>) -> usize {
    cut.unwrap_or(3 * bound)
}

pub fn run(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Interpret { proof, bound, cut_bound: cut, sem } => {
            let name = sem.semantics.unwrap_or(SemanticsName::Rel);
            let cfg = config(name, &sem)?;
            let p = load_proof(&proof)?;
            let i = interpret_with(&p, &ExpPolicy::for_config(&cfg), bound, cut_bound(bound, cut))?;
            let text = format!("# semantics {}\n{}", label(name), render_interp(&i));
            Ok(Output::ok(text, interp_json(label(name), &i)))
        }
        Command::Verdict { space: sp, bag, sem } => {
            let cfg = config(sem.semantics.unwrap_or(SemanticsName::Multi), &sem)?;
            let s = space(&sp)?;
            let m = parse_bag(&bag)?;
            let v = verdict(&cfg, &s, &m)?;
            Ok(Output::ok(format!("{}\n", v.word()), json!({ "semantics": cfg.to_string(), "verdict": v.word() })))
        }
        Command::Clique { space: sp, points, sem } => clique(&sp, &points, &sem),
        Command::Neutral { space: sp, point, sem } => {
            let cfg = config(sem.semantics.unwrap_or(SemanticsName::Multi), &sem)?;
            let s = space(&sp)?;
            let p = parse_point(&point)?;
            let j = neutral_member(&cfg, &s, &p)?;
            Ok(Output {
                text: format!("{j}\n"),
                json: json!({ "semantics": cfg.to_string(), "neutral": j.holds(), "bounded": j.is_bounded() }),
                exit: if j.holds() { 0 } else { 1 },
            })
        }
        Command::Restrict { interp, sem } => {
            let name = sem.semantics.unwrap_or(SemanticsName::Multi);
            let cfg = config(name, &sem)?;
            let i = parse_interp(&read(&interp)?)?;
            let r = restrict_interp(&cfg, &i)?;
            let text = format!("# neutral restriction under {}\n{}", label(name), render_interp(&r));
            Ok(Output::ok(text, interp_json(label(name), &r)))
        }
        Command::Interact { first, second, bound, sem } => {
            let cfg = config(sem.semantics.unwrap_or(SemanticsName::Multi), &sem)?;
            let r = interact(&load_proof(&first)?, &load_proof(&second)?, &cfg, bound)?;
            let mut text = format!("{r}\n");
            for (p, j) in &r.neutral {
                text.push_str(&format!("neutral {} {j}\n", p.render()));
            }
            let (outcome, points): (&str, Vec<String>) = match &r.outcome {
                Outcome::GiveUp(ps) => ("give-up", ps.iter().map(Point::render).collect()),
                Outcome::Divergence => ("divergence", Vec::new()),
            };
            let ok = r.deterministic();
            if !ok {
                text.push_str("determinism violated\n");
            }
            let json = json!({
                "formula": r.formula.render(),
                "outcome": outcome,
                "points": points,
                "uses_sum": r.uses_sum,
                "all_neutral": r.neutral.iter().all(|(_, j)| j.holds()),
                "deterministic": ok,
            });
            Ok(Output { text, json, exit: if ok { 0 } else { 1 } })
        }
        Command::Laws { bound, law_card_bound, all, sem } => {
            let mut opts = LawsOptions { bound, card_bound: law_card_bound, ..LawsOptions::default() };
            if let Some(name) = sem.semantics {
                opts.semantics = vec![config(name, &sem)?];
            }
            let report = laws_suite(&opts);
            let mut text = String::new();
            let mut rows = Vec::new();
            for r in &report.records {
                if all || r.status != Status::Pass {
                    let w = r.witness.as_deref().map(|w| format!(" {w}")).unwrap_or_default();
                    text.push_str(&format!("{} {} [{}]{w}\n", r.status, r.id, r.semantics));
                }
                rows.push(json!({ "id": r.id, "semantics": r.semantics, "status": r.status.to_string(), "witness": r.witness }));
            }
            let fails = report.failures().len();
            let bounded = report.records.iter().filter(|r| r.status == Status::Bounded).count();
            text.push_str(&format!("{} checks, {bounded} bounded, {fails} failures\n", report.records.len()));
            Ok(Output { text, json: json!({ "records": rows, "failures": fails }), exit: if fails == 0 { 0 } else { 1 } })
        }
        Command::Compare { proof, left, right, bound, sem } => {
            let p = load_proof(&proof)?;
            let run = |name| -> Result<Interp, CliError> {
                let cfg = config(name, &sem)?;
                Ok(interpret_with(&p, &ExpPolicy::for_config(&cfg), bound, cut_bound(bound, None))?)
            };
            let (a, b) = (run(left)?, run(right)?);
            let only = |x: &Interp, y: &Interp| -> Vec<String> { x.tuples.difference(&y.tuples).map(|t| pretty_tuple(t)).collect() };
            let (la, lb) = (only(&a, &b), only(&b, &a));
            let mut text = String::new();
            for t in &la {
                text.push_str(&format!("{} only: {t}\n", label(left)));
            }
            for t in &lb {
                text.push_str(&format!("{} only: {t}\n", label(right)));
            }
            if la.is_empty() && lb.is_empty() {
                text.push_str("identical\n");
            }
            Ok(Output::ok(text, json!({ label(left): la, label(right): lb })))
        }
    }
}

fn clique(sp: &SpaceArgs, points: &str, sem: &SemanticsArgs) -> Result<Output, CliError> {
    let cfg = config(sem.semantics.unwrap_or(SemanticsName::Multi), sem)?;
    let s = space(sp)?;
    let x = points_arg(points)?;
    let r = is_clique(&cfg, &s, &x, cfg.card_bound)?;
    let witness = r.witness().map(|w| Point::Bag(w.clone()).render());
    let bound = match r.status {
        CliqueStatus::CliqueUpToBound(b) => Some(b),
        _ => None,
    };
    Ok(Output {
        text: format!("{r}\n"),
        json: json!({
            "semantics": cfg.to_string(),
            "status": r.word(),
            "bound": bound,
            "witness": witness,
            "checked": r.checked,
        }),
        exit: if r.is_clique() { 0 } else { 1 },
    })
}
