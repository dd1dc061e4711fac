//! Atom dependency graph and the double-negation loop check.
//!
//! Every law contributes an edge `body atom -> head atom` for each pair of
//! body literal and head atom; the edge is negative when the body literal
//! is negated. A strongly connected component containing two distinct
//! negative edges admits a closed walk through both of them, which is
//! exactly the kind of loop the execution semantics cannot resolve.

use std::collections::{BTreeSet, VecDeque};

use crate::theory::{Atom, Theory};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoopCheck {
    Ok,
    /// A closed walk, listed as the atoms visited in order; the walk
    /// returns from the last atom to the first.
    Cycle(Vec<Atom>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Edge {
    from: usize,
    to: usize,
    negative: bool,
}

pub fn negation_loop_check(theory: &Theory) -> LoopCheck {
    let n = theory.vocab().len();
    let edges: BTreeSet<Edge> = theory
        .laws()
        .iter()
        .flat_map(|law| {
            law.body.iter().flat_map(move |lit| {
                law.head_atoms().map(move |h| Edge { from: lit.atom.index(), to: h.index(), negative: !lit.positive })
            })
        })
        .collect();
    let mut succ = vec![Vec::new(); n];
    for e in &edges {
        succ[e.from].push(e.to);
    }
    let comp = strongly_connected(&succ);

    // Negative edges grouped by component, in a deterministic order.
    let mut by_comp: Vec<Vec<Edge>> = vec![Vec::new(); n];
    for e in edges.iter().filter(|e| e.negative && comp[e.from] == comp[e.to]) {
        by_comp[comp[e.from]].push(*e);
    }
    let Some(negs) = by_comp.iter().find(|v| v.len() >= 2) else {
        return LoopCheck::Ok;
    };
    let (first, second) = (negs[0], negs[1]);
    let c = comp[first.from];
    let inside = |v: usize| comp[v] == c;

    // first.from -> first.to ~> second.from -> second.to ~> first.from
    let mut walk = vec![first.from];
    walk.extend(path_within(&succ, first.to, second.from, &inside));
    walk.extend(path_within(&succ, second.to, first.from, &inside));
    // The final path ends where the walk started.
    walk.pop();
    LoopCheck::Cycle(walk.into_iter().map(Atom::from_index).collect())
}

/// Shortest path from `src` to `dst` (both inclusive) through vertices
/// accepted by `inside`.
fn path_within(succ: &[Vec<usize>], src: usize, dst: usize, inside: &dyn Fn(usize) -> bool) -> Vec<usize> {
    let mut prev = vec![usize::MAX; succ.len()];
    let mut queue = VecDeque::from([src]);
    prev[src] = src;
    while let Some(v) = queue.pop_front() {
        if v == dst {
            break;
        }
        for &w in &succ[v] {
            if prev[w] == usize::MAX && inside(w) {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![dst];
    let mut v = dst;
    while v != src {
        v = prev[v];
        path.push(v);
    }
    path.reverse();
    path
}

/// Tarjan's algorithm, iterative. Returns a component id per vertex.
fn strongly_connected(succ: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut child)) = frames.last_mut() {
            if let Some(&w) = succ[v].get(*child) {
                *child += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}
