use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use cplogic::engine::{build_tree, distribution, ExecutionTree};
use cplogic::{
    actual_cause, classify_causes, default_candidates, export_tree_dot, parse_context, parse_formula, parse_literal,
    parse_story, parse_theory, replay_story, validate_theory, CanonicalOrder, CauseQuery, EventPolicy, Interpretation,
    Literal, PartialKind, PriorityOrder, Probability, Theory,
};

use crate::{CliError, Command};

type Result<T> = std::result::Result<T, CliError>;

pub fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Validate { theory } => validate(theory, out),
        Command::Prob { theory, query, context } => prob(theory, query, context, out, err),
        Command::Tree { theory, context, policy, dot } => tree(theory, context, policy.as_deref(), *dot, out, err),
        Command::Cause { theory, story, cause, effect, explain } => {
            cause_cmd(theory, story, cause, effect, *explain, out)
        }
        Command::Causes { theory, outcome, effect, context, candidates } => {
            causes(theory, outcome.as_deref(), effect, context.as_deref(), candidates.as_deref(), out, err)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Semantic(format!("cannot read {}: {e}", path.display())))
}

pub fn load_theory(path: &Path) -> Result<Theory> {
    let name = path.display().to_string();
    let cand = parse_theory(&read(path)?).map_err(|e| CliError::parse_in(&name, e))?;
    validate_theory(cand).map_err(|e| CliError::validation(&name, e))
}

fn atoms(theory: &Theory, flag: &str, text: &str) -> Result<Interpretation> {
    let names = parse_context(text).map_err(|e| CliError::Parse(format!("{flag}: {e}")))?;
    names
        .iter()
        .map(|n| theory.atom(n).ok_or_else(|| CliError::Semantic(format!("{flag}: unknown atom `{n}`"))))
        .collect()
}

fn literal(theory: &Theory, flag: &str, text: &str) -> Result<Literal> {
    let (name, positive) = parse_literal(text).map_err(|e| CliError::Parse(format!("{flag}: {e}")))?;
    let atom = theory.atom(&name).ok_or_else(|| CliError::Semantic(format!("{flag}: unknown atom `{name}`")))?;
    Ok(Literal { atom, positive })
}

fn literals(theory: &Theory, flag: &str, text: &str) -> Result<Vec<Literal>> {
    text.split(',').map(|s| literal(theory, flag, s.trim())).collect()
}

/// Exact rational, followed by a decimal rendering.
pub fn format_prob(p: &Probability) -> String {
    if p.denom() == &1.into() {
        return p.to_string();
    }
    match p.exact_decimal() {
        Some(d) => format!("{p} ({d})"),
        None => format!("{p} (~{})", p.to_decimal_string(6)),
    }
}

fn warn_symbolic(theory: &Theory, err: &mut dyn Write) {
    if theory.has_symbolic() {
        let _ = writeln!(err, "warning: theory has `*` probabilities, read as 1/2; the result depends on that choice");
    }
}

fn validate(path: &Path, out: &mut dyn Write) -> Result<()> {
    let t = load_theory(path)?;
    let exo = t.exogenous().len();
    writeln!(out, "ok: {} laws, {} atoms ({exo} exogenous)", t.len(), t.vocab().len())?;
    if exo > 0 {
        let mut names: Vec<&str> = t.exogenous().iter().map(|&a| t.atom_name(a)).collect();
        names.sort_unstable();
        writeln!(out, "exogenous: {}", names.join(", "))?;
    }
    let width = t.labels().map(str::len).max().unwrap_or(0);
    for law in t.laws() {
        writeln!(out, "  {:<width$}  {}", law.label, law.display(t.vocab()))?;
    }
    Ok(())
}

fn prob(path: &Path, query: &str, context: &str, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let t = load_theory(path)?;
    let f = parse_formula(query).map_err(|e| CliError::Parse(format!("--query: {e}")))?;
    let f = f.resolve(t.vocab()).map_err(|e| CliError::Semantic(format!("--query: {e}")))?;
    let ctx = atoms(&t, "--context", context)?;
    warn_symbolic(&t, err);
    let p = cplogic::prob_formula(&t, &ctx, &f)?;
    writeln!(out, "P({}) = {}", f.display(t.vocab()), format_prob(&p))?;
    Ok(())
}

/// Indented text rendering of a tree, with leaf masses.
pub fn render_tree(tree: &ExecutionTree, theory: &Theory) -> String {
    fn go(tree: &ExecutionTree, theory: &Theory, id: usize, depth: usize, mass: &Probability, out: &mut String) {
        let node = tree.node(id);
        let pad = "  ".repeat(depth);
        let interp = node.state.interp.display(theory.vocab());
        match &node.expansion {
            None => {
                let _ = writeln!(out, "{pad}{interp}  leaf {mass}");
            }
            Some(exp) => {
                let _ = writeln!(out, "{pad}{interp}");
                let label = &theory.law(exp.law).label;
                for e in &exp.edges {
                    let _ = writeln!(out, "{pad}  [{label}] {} {}", e.outcome.display(theory), e.prob);
                    go(tree, theory, e.child, depth + 2, &(mass * &e.prob), out);
                }
            }
        }
    }
    let mut out = String::new();
    go(tree, theory, 0, 0, &Probability::one(), &mut out);
    out
}

fn tree(
    path: &Path,
    context: &str,
    policy: Option<&str>,
    dot: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let t = load_theory(path)?;
    let ctx = atoms(&t, "--context", context)?;
    let policy: Box<dyn EventPolicy> = match policy {
        Some(p) => {
            let labels: Vec<&str> = p.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            Box::new(PriorityOrder::from_labels(&t, &labels)?)
        }
        None => Box::new(CanonicalOrder),
    };
    let tree = build_tree(&t, &ctx, policy.as_ref())?;
    if dot {
        out.write_all(export_tree_dot(&tree, &t).as_bytes())?;
        return Ok(());
    }
    warn_symbolic(&t, err);
    out.write_all(render_tree(&tree, &t).as_bytes())?;
    writeln!(out, "nodes: {}, leaves: {}", tree.len(), tree.leaves().len())?;
    writeln!(out, "distribution:")?;
    for (w, p) in distribution(&tree).iter() {
        writeln!(out, "  {}  {}", w.display(t.vocab()), format_prob(p))?;
    }
    Ok(())
}

fn write_laws(out: &mut dyn Write, theory: &Theory) -> Result<()> {
    if theory.is_empty() {
        writeln!(out, "  (no laws)")?;
    }
    for law in theory.laws() {
        writeln!(out, "  @{}: {}.", law.label, law.display(theory.vocab()))?;
    }
    Ok(())
}

fn cause_cmd(path: &Path, story: &Path, cause: &str, effect: &str, explain: bool, out: &mut dyn Write) -> Result<()> {
    let t = load_theory(path)?;
    let story_name = story.display().to_string();
    let doc = parse_story(&read(story)?, &t).map_err(|e| CliError::story(&story_name, e))?;
    let branch = replay_story(&t, &doc)?;
    let c = literal(&t, "--cause", cause)?;
    let e = literal(&t, "--effect", effect)?;
    let v = actual_cause(&t, &branch, CauseQuery::new(c, e)?)?;

    let (cn, en) = (c.display(t.vocab()).to_string(), e.display(t.vocab()).to_string());
    if v.is_cause {
        writeln!(out, "CAUSE: {cn} is an actual cause of {en}")?;
    } else {
        writeln!(out, "NOT-CAUSE: {cn} is not an actual cause of {en}")?;
    }
    if explain {
        writeln!(out, "story: {}", branch.display(&t))?;
        writeln!(out, "effect index j: {}", v.effect_index)?;
        writeln!(out, "relevant theory T':")?;
        write_laws(out, &v.relevant)?;
        writeln!(out, "counterfactual theory T'':")?;
        write_laws(out, &v.counterfactual)?;
        writeln!(out, "counterfactual context I': {}", v.context.display(t.vocab()))?;
        writeln!(out, "P({en}) under T'' and I' = {}", format_prob(&v.probability))?;
        writeln!(out, "counterfactual tree:")?;
        let tree = build_tree(&v.counterfactual, &v.context, &CanonicalOrder)?;
        for line in render_tree(&tree, &v.counterfactual).lines() {
            writeln!(out, "  {line}")?;
        }
    }
    Ok(())
}

fn kind_name(k: PartialKind) -> &'static str {
    match k {
        PartialKind::Certain => "Certain",
        PartialKind::PossibleOnly => "PossibleOnly",
        PartialKind::NotPossible => "NotPossible",
    }
}

fn classify_one(
    t: &Theory,
    world: &Interpretation,
    effect: Literal,
    candidates: Option<&[Literal]>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let cands = match candidates {
        Some(c) => c.to_vec(),
        None => default_candidates(t, world, effect),
    };
    let c = classify_causes(t, world, effect, &cands)?;
    writeln!(out, "outcome: {}", world.display(t.vocab()))?;
    writeln!(out, "effect: {}", effect.display(t.vocab()))?;
    writeln!(out, "branches: {}", c.branch_count)?;
    if c.branch_count == 0 {
        let _ = writeln!(err, "warning: no branch ends in outcome {}", world.display(t.vocab()));
    }
    let names: Vec<String> = c.verdicts.iter().map(|(l, _)| l.display(t.vocab()).to_string()).collect();
    let width = names.iter().map(String::len).max().unwrap_or(0);
    for (name, (_, v)) in names.iter().zip(&c.verdicts) {
        writeln!(out, "  {name:<width$}  {:<12}  {}/{}", kind_name(v.kind), v.supporting, v.total)?;
    }
    Ok(())
}

fn causes(
    path: &Path,
    outcome: Option<&str>,
    effect: &str,
    context: Option<&str>,
    candidates: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let t = load_theory(path)?;
    let e = literal(&t, "--effect", effect)?;
    let cands = candidates.map(|c| literals(&t, "--candidates", c)).transpose()?;
    let ctx = context.map(|c| atoms(&t, "--context", c)).transpose()?;

    let worlds: Vec<Interpretation> = match outcome {
        Some(o) => {
            let world = atoms(&t, "--outcome", o)?;
            let exo: Interpretation = world.iter().filter(|&a| t.is_exogenous(a)).collect();
            if let Some(ctx) = &ctx {
                if ctx != &exo {
                    return Err(CliError::Semantic(format!(
                        "--context {} does not match the exogenous atoms {} of --outcome",
                        ctx.display(t.vocab()),
                        exo.display(t.vocab())
                    )));
                }
            }
            vec![world]
        }
        None => {
            let ctx = ctx.unwrap_or_default();
            let dist = distribution(&build_tree(&t, &ctx, &CanonicalOrder)?);
            let ws: Vec<_> =
                dist.iter().filter(|(w, p)| p.is_positive() && e.holds_in(w)).map(|(w, _)| w.clone()).collect();
            if ws.is_empty() {
                let _ = writeln!(err, "warning: the effect holds in no reachable outcome");
            }
            ws
        }
    };
    for (i, w) in worlds.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        classify_one(&t, w, e, cands.as_deref(), out, err)?;
    }
    Ok(())
}
