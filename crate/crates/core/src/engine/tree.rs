use std::collections::BTreeMap;

use crate::engine::branch::Branch;
use crate::engine::state::{applicable_laws, fire, initial_state, law_status, outcomes, LawStatus, Outcome, State};
use crate::engine::EngineError;
use crate::formula::{eval_formula, Formula};
use crate::prob::Probability;
use crate::theory::{Interpretation, LawId, Theory};

/// Decides which applicable law extends a node of an execution model.
pub trait EventPolicy {
    /// `applicable` is non-empty and sorted by law position.
    fn choose(&self, theory: &Theory, state: &State, applicable: &[LawId]) -> LawId;
}

/// Lowest law position first.
#[derive(Clone, Copy, Debug, Default)]
pub struct CanonicalOrder;

impl EventPolicy for CanonicalOrder {
    fn choose(&self, _: &Theory, _: &State, applicable: &[LawId]) -> LawId {
        applicable[0]
    }
}

/// A fixed priority over laws; laws not listed rank after listed ones,
/// in theory order.
#[derive(Clone, Debug)]
pub struct PriorityOrder {
    rank: Vec<usize>,
}

impl PriorityOrder {
    pub fn new(theory: &Theory, order: &[LawId]) -> Self {
        let mut rank = vec![usize::MAX; theory.len()];
        for (i, id) in order.iter().enumerate() {
            if rank[id.0] == usize::MAX {
                rank[id.0] = i;
            }
        }
        PriorityOrder { rank }
    }

    pub fn from_labels<S: AsRef<str>>(theory: &Theory, labels: &[S]) -> Result<Self, EngineError> {
        let ids = labels
            .iter()
            .map(|l| theory.law_by_label(l.as_ref()).ok_or_else(|| EngineError::UnknownLabel(l.as_ref().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PriorityOrder::new(theory, &ids))
    }
}

impl EventPolicy for PriorityOrder {
    fn choose(&self, _: &Theory, _: &State, applicable: &[LawId]) -> LawId {
        *applicable.iter().min_by_key(|id| (self.rank[id.0], id.0)).expect("non-empty")
    }
}

impl<F> EventPolicy for F
where
    F: Fn(&Theory, &State, &[LawId]) -> LawId,
{
    fn choose(&self, theory: &Theory, state: &State, applicable: &[LawId]) -> LawId {
        self(theory, state, applicable)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub outcome: Outcome,
    pub prob: Probability,
    pub child: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    /// The law whose event created the children.
    pub law: LawId,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub state: State,
    pub expansion: Option<Expansion>,
}

impl TreeNode {
    pub fn is_leaf(&self) -> bool {
        self.expansion.is_none()
    }
}

/// A probability tree stored as an arena; node 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExecutionTree {
    nodes: Vec<TreeNode>,
}

impl ExecutionTree {
    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.iter().filter_map(|n| n.expansion.as_ref()).map(|e| e.edges.len()).sum()
    }

    /// Leaves with their path mass, in depth-first order.
    pub fn leaves(&self) -> Vec<(usize, Probability)> {
        let mut out = Vec::new();
        let mut stack = vec![(0usize, Probability::one())];
        while let Some((id, mass)) = stack.pop() {
            match &self.nodes[id].expansion {
                None => out.push((id, mass)),
                Some(exp) => {
                    for e in exp.edges.iter().rev() {
                        stack.push((e.child, &mass * &e.prob));
                    }
                }
            }
        }
        out
    }

    pub fn depth(&self) -> usize {
        fn go(t: &ExecutionTree, id: usize) -> usize {
            match &t.nodes[id].expansion {
                None => 0,
                Some(e) => 1 + e.edges.iter().map(|e| go(t, e.child)).max().unwrap_or(0),
            }
        }
        go(self, 0)
    }

    /// Leaves where some unfired law is still pending. These only occur
    /// for theories with loops through a single negation.
    pub fn stuck_leaves(&self, theory: &Theory) -> Vec<usize> {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.is_leaf())
            .filter(|(_, n)| theory.law_ids().any(|id| law_status(theory, &n.state, id) == LawStatus::Pending))
            .map(|(i, _)| i)
            .collect()
    }

    /// The single path of a branch, as a degenerate tree.
    pub fn from_branch(branch: &Branch) -> ExecutionTree {
        let mut nodes: Vec<TreeNode> =
            branch.states.iter().map(|s| TreeNode { state: s.clone(), expansion: None }).collect();
        for (i, ev) in branch.events.iter().enumerate() {
            nodes[i].expansion = Some(Expansion {
                law: ev.law,
                edges: vec![Edge { outcome: ev.outcome, prob: ev.prob.clone(), child: i + 1 }],
            });
        }
        ExecutionTree { nodes }
    }
}

/// Builds one execution model, extending each node with the law chosen by
/// `policy` until no law is applicable anywhere.
pub fn build_tree(
    theory: &Theory,
    context: &Interpretation,
    policy: &dyn EventPolicy,
) -> Result<ExecutionTree, EngineError> {
    let root = initial_state(theory, context)?;
    Ok(build_tree_from(theory, root, policy))
}

pub fn build_tree_from(theory: &Theory, root: State, policy: &dyn EventPolicy) -> ExecutionTree {
    let mut nodes = vec![TreeNode { state: root, expansion: None }];
    let mut work = vec![0usize];
    while let Some(id) = work.pop() {
        let state = nodes[id].state.clone();
        let applicable = applicable_laws(theory, &state);
        if applicable.is_empty() {
            continue;
        }
        let law = policy.choose(theory, &state, &applicable);
        debug_assert!(applicable.contains(&law), "policy chose a non-applicable law");
        let mut edges = Vec::new();
        for (outcome, prob) in outcomes(theory, law) {
            let child = fire(theory, &state, law, outcome).expect("applicable law fires");
            let cid = nodes.len();
            nodes.push(TreeNode { state: child, expansion: None });
            edges.push(Edge { outcome, prob, child: cid });
            work.push(cid);
        }
        nodes[id].expansion = Some(Expansion { law, edges });
    }
    ExecutionTree { nodes }
}

/// Exact probability distribution over final interpretations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Distribution(BTreeMap<Interpretation, Probability>);

impl Distribution {
    pub fn get(&self, world: &Interpretation) -> Probability {
        self.0.get(world).cloned().unwrap_or_else(Probability::zero)
    }

    pub fn prob(&self, formula: &Formula) -> Probability {
        self.0.iter().filter(|(w, _)| eval_formula(formula, w)).map(|(_, p)| p).sum()
    }

    pub fn total(&self) -> Probability {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Interpretation, &Probability)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn distribution(tree: &ExecutionTree) -> Distribution {
    let mut map: BTreeMap<Interpretation, Probability> = BTreeMap::new();
    for (leaf, mass) in tree.leaves() {
        let world = tree.node(leaf).state.interp.clone();
        let slot = map.entry(world).or_insert_with(Probability::zero);
        *slot = &*slot + &mass;
    }
    Distribution(map)
}

/// `P(formula)` under the given context, from one tree built in canonical
/// order (every execution model yields the same distribution).
pub fn prob_formula(theory: &Theory, context: &Interpretation, formula: &Formula) -> Result<Probability, EngineError> {
    let tree = build_tree(theory, context, &CanonicalOrder)?;
    Ok(distribution(&tree).prob(formula))
}
