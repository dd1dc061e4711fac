use std::fmt::Write as _;

use crate::engine::ExecutionTree;
use crate::theory::Theory;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering of an execution tree. Nodes show their true atoms
/// (leaves are drawn as boxes); edges show the law, the outcome and its
/// probability.
pub fn export_tree_dot(tree: &ExecutionTree, theory: &Theory) -> String {
    let mut out = String::from("digraph execution_tree {\n  node [shape=ellipse, fontname=\"Helvetica\"];\n");
    for (id, node) in tree.nodes().iter().enumerate() {
        let label = escape(&node.state.interp.display(theory.vocab()).to_string());
        let shape = if node.is_leaf() { ", shape=box" } else { "" };
        let _ = writeln!(out, "  n{id} [label=\"{label}\"{shape}];");
    }
    for (id, node) in tree.nodes().iter().enumerate() {
        let Some(exp) = &node.expansion else { continue };
        let law = &theory.law(exp.law).label;
        for e in &exp.edges {
            let label = escape(&format!("{law}: {} ({})", e.outcome.display(theory), e.prob));
            let _ = writeln!(out, "  n{id} -> n{} [label=\"{label}\"];", e.child);
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{build_tree, replay_story, CanonicalOrder};
    use crate::textio::{parse_story, parse_theory};
    use crate::theory::{validate_theory, Interpretation};

    fn count(dot: &str) -> (usize, usize) {
        let nodes = dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count();
        let edges = dot.lines().filter(|l| l.contains(" -> ")).count();
        (nodes, edges)
    }

    #[test]
    fn suzy_first_tree_has_seven_nodes() {
        let t = validate_theory(
            parse_theory(
                "exogenous throws_suzy, throws_billy.\nshatters:0.9 <- throws_suzy.\nshatters:0.8 <- throws_billy.\n",
            )
            .unwrap(),
        )
        .unwrap();
        let ctx: Interpretation = ["throws_suzy", "throws_billy"].iter().map(|n| t.atom(n).unwrap()).collect();
        let dot = export_tree_dot(&build_tree(&t, &ctx, &CanonicalOrder).unwrap(), &t);
        assert_eq!(count(&dot), (7, 6));
        assert!(dot.contains("n0 -> n1 [label=\"r1: shatters (9/10)\"]"));
        assert!(dot.contains("[label=\"r1: none (1/10)\"]"));
        assert!(dot.starts_with("digraph"));
    }

    #[test]
    fn empty_theory_is_one_node() {
        let t = Theory::empty();
        let dot = export_tree_dot(&build_tree(&t, &Interpretation::new(), &CanonicalOrder).unwrap(), &t);
        assert_eq!(count(&dot), (1, 0));
        assert!(dot.contains("n0 [label=\"{}\", shape=box]"));
    }

    #[test]
    fn replayed_story_is_a_path() {
        let t = validate_theory(
            parse_theory(
                "@anti: antidote:*.\n@coh: change_of_heart:*.\n@pois: poison <- ~change_of_heart.\n@dth: death <- poison, ~antidote.\n",
            )
            .unwrap(),
        )
        .unwrap();
        let story = parse_story("coh -> change_of_heart.\nanti -> antidote.\n", &t).unwrap();
        let branch = replay_story(&t, &story).unwrap();
        let dot = export_tree_dot(&ExecutionTree::from_branch(&branch), &t);
        assert_eq!(count(&dot), (3, 2));
    }
}
