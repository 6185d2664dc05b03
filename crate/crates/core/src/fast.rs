//! Shortest source-to-sink path without materializing `E0`.
//!
//! Small nodes and eligible big nodes (those allowed to be `E0` tails) are
//! grouped by their k-suffix, the last `k` positions of the sequence. All
//! members of a group have the same rightmost `k` intervals, so they agree
//! on whether they have an `E0` arc into any given head, and the best path
//! value into a group can stand in for all of its members. Nodes are swept
//! in order of their suffix key; a group is frozen once the sweep passes it.
//!
//! Per node the work is one arc test per frozen group plus the node's `E1`
//! in-arcs, which gives the `n^k` factor per node instead of `n^2k`.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ProperIntervalModel;
use crate::oracle::Solution;
use crate::problem::{Engine, Problem, Variant};
use crate::rational::Rational;
use crate::reduction::{path_to_vertex_set, ArcClass, DagNode, EngineOptions, NodeKind, Reduction};

/// Sort key of a node: the last `k` positions, or the whole sequence when it
/// is shorter than `k` (only plain k-domination has such nodes).
pub fn k_suffix(node: &DagNode, k: usize) -> &[usize] {
    let seq = node.seq.indices();
    &seq[seq.len().saturating_sub(k)..]
}

/// A group of nodes sharing one k-suffix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixClass {
    pub key: Vec<usize>,
    /// Node ids in increasing order; the first is the representative.
    pub members: Vec<usize>,
    /// Best path value into the class and the node attaining it, once frozen.
    pub best: Option<(Rational, usize)>,
}

impl SuffixClass {
    pub fn representative(&self) -> usize {
        self.members[0]
    }
}

/// Big nodes that may be tails of `E0` arcs.
pub fn compute_b_prime(red: &Reduction<'_>, nodes: &[DagNode]) -> Vec<usize> {
    nodes
        .iter()
        .filter(|s| s.kind == NodeKind::Big && red.big_tail_ok(s.seq.indices()))
        .map(|s| s.id)
        .collect()
}

/// Source, then every small and big node by (k-suffix, sequence), then sink.
pub fn topo_order(nodes: &[DagNode], k: usize) -> Vec<usize> {
    let mut inner: Vec<usize> = nodes.iter().filter(|s| s.is_inner()).map(|s| s.id).collect();
    inner.sort_by(|&a, &b| {
        k_suffix(&nodes[a], k)
            .cmp(k_suffix(&nodes[b], k))
            .then_with(|| nodes[a].seq.cmp(&nodes[b].seq))
    });
    let mut order = Vec::with_capacity(nodes.len());
    order.extend(nodes.iter().filter(|s| s.kind == NodeKind::Source).map(|s| s.id));
    order.extend(inner);
    order.extend(nodes.iter().filter(|s| s.kind == NodeKind::Sink).map(|s| s.id));
    order
}

/// Partition of small nodes and `b_prime` by k-suffix, in key order.
pub fn suffix_partition(nodes: &[DagNode], b_prime: &[usize], k: usize) -> Vec<SuffixClass> {
    let mut eligible: Vec<usize> = nodes
        .iter()
        .filter(|s| s.kind == NodeKind::Small)
        .map(|s| s.id)
        .chain(b_prime.iter().copied())
        .collect();
    eligible.sort_by(|&a, &b| k_suffix(&nodes[a], k).cmp(k_suffix(&nodes[b], k)).then(a.cmp(&b)));
    let mut classes: Vec<SuffixClass> = Vec::new();
    for id in eligible {
        let key = k_suffix(&nodes[id], k);
        match classes.last_mut() {
            Some(c) if c.key == key => c.members.push(id),
            _ => classes.push(SuffixClass { key: key.to_vec(), members: vec![id], best: None }),
        }
    }
    classes
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FastStats {
    pub nodes: usize,
    pub small: usize,
    pub big: usize,
    pub big_prime: usize,
    pub classes: usize,
    pub representative_tests: u64,
    pub e1_arcs: usize,
}

impl FastStats {
    /// Upper bound on representative tests: one per (node, class) pair.
    pub fn test_bound(&self) -> u64 {
        (self.small as u64 + self.big as u64 + 2) * self.classes as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pred {
    Source,
    /// `E0` arc from this node (a class argmin, or any tail for the sink).
    Jump(usize),
    /// `E1` arc from this node.
    Slide(usize),
}

#[derive(Debug, Clone)]
pub struct FastRun {
    pub solution: Solution,
    /// Node ids along the reconstructed path; empty when infeasible.
    pub path: Vec<usize>,
    pub nodes: Vec<DagNode>,
    /// Processing order of the sweep.
    pub order: Vec<usize>,
    pub stats: FastStats,
}

impl FastRun {
    pub fn path_nodes(&self) -> Vec<DagNode> {
        self.path.iter().map(|&id| self.nodes[id].clone()).collect()
    }
}

pub fn solve_fast(model: &ProperIntervalModel, problem: &Problem) -> Result<Solution> {
    Ok(solve_fast_with(model, problem, EngineOptions::default())?.solution)
}

pub fn solve_fast_with(model: &ProperIntervalModel, problem: &Problem, options: EngineOptions) -> Result<FastRun> {
    let red = Reduction::new(model, problem, options)?;
    let k = problem.k;
    let nodes = red.enumerate_nodes()?;
    let sink = nodes.len() - 1;
    let b_prime = compute_b_prime(&red, &nodes);
    let mut classes = suffix_partition(&nodes, &b_prime, k);
    let order = topo_order(&nodes, k);

    // E1 tails of a big node t are the big nodes s with s[1..] == t[..2k-1]
    let mut by_tail_shift: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for s in nodes.iter().filter(|s| s.kind == NodeKind::Big) {
        by_tail_shift.entry(&s.seq.indices()[1..]).or_default().push(s.id);
    }

    let mut stats = FastStats {
        nodes: nodes.len(),
        small: nodes.iter().filter(|s| s.kind == NodeKind::Small).count(),
        big: nodes.iter().filter(|s| s.kind == NodeKind::Big).count(),
        big_prime: b_prime.len(),
        classes: classes.len(),
        representative_tests: 0,
        e1_arcs: 0,
    };

    let mut best: Vec<Option<(Rational, Pred)>> = vec![None; nodes.len()];
    best[0] = Some((Rational::zero(), Pred::Source));
    let mut frozen = 0;

    for &id in &order {
        let node = &nodes[id];
        match node.kind {
            NodeKind::Source => continue,
            NodeKind::Sink => {
                let mut into_sink: Option<(Rational, Pred)> = None;
                for (tail, value) in best.iter().enumerate().take(sink) {
                    let Some((value, _)) = value else { continue };
                    if red.is_e0_arc(&nodes[tail], node)? && into_sink.as_ref().is_none_or(|(b, _)| value < b) {
                        into_sink = Some((*value, Pred::Jump(tail)));
                    }
                }
                best[sink] = into_sink;
                continue;
            }
            NodeKind::Small | NodeKind::Big => {}
        }

        let key = k_suffix(node, k);
        while frozen < classes.len() && classes[frozen].key.as_slice() < key {
            let class = &mut classes[frozen];
            class.best = class
                .members
                .iter()
                .filter_map(|&m| best[m].as_ref().map(|(v, _)| (*v, m)))
                .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
            frozen += 1;
        }

        let entry_cost = red.length_unchecked(node, ArcClass::E0);
        let mut value: Option<(Rational, Pred)> = None;
        if red.is_e0_arc(&nodes[0], node)? {
            value = Some((entry_cost, Pred::Source));
        } else {
            for class in &classes[..frozen] {
                let Some((class_best, argmin)) = class.best else { continue };
                stats.representative_tests += 1;
                let better = value.as_ref().is_none_or(|(v, _)| class_best + entry_cost < *v);
                if better && red.is_e0_arc(&nodes[class.representative()], node)? {
                    value = Some((class_best + entry_cost, Pred::Jump(argmin)));
                }
            }
        }

        if node.kind == NodeKind::Big {
            let slide_cost = red.length_unchecked(node, ArcClass::E1);
            let tails = by_tail_shift.get(&node.seq.indices()[..2 * k - 1]).map(Vec::as_slice).unwrap_or(&[]);
            for &tail in tails {
                stats.e1_arcs += 1;
                let Some((tail_value, _)) = &best[tail] else { continue };
                let cand = tail_value + slide_cost;
                if value.as_ref().is_none_or(|(v, _)| cand < *v) {
                    value = Some((cand, Pred::Slide(tail)));
                }
            }
        }
        best[id] = value;
    }

    let Some((cost, _)) = best[sink] else {
        return Ok(FastRun { solution: Solution::infeasible(Engine::Fast), path: Vec::new(), nodes, order, stats });
    };
    let mut path = vec![sink];
    let mut cur = sink;
    while cur != 0 {
        cur = match best[cur].as_ref().expect("reachable").1 {
            Pred::Source => 0,
            Pred::Jump(p) | Pred::Slide(p) => p,
        };
        path.push(cur);
    }
    path.reverse();
    let path_nodes: Vec<DagNode> = path.iter().map(|&id| nodes[id].clone()).collect();
    let set = path_to_vertex_set(model, &path_nodes)?;
    Ok(FastRun { solution: Solution::found(set, cost, Engine::Fast), path, nodes, order, stats })
}

/// Diagnostic: within every suffix class, all members agree on `E0`
/// membership into every possible head.
pub fn representative_independence_check(model: &ProperIntervalModel, k: usize, variant: Variant) -> Result<bool> {
    const CAP: usize = 12;
    if model.n() > CAP {
        return Err(Error::TooLarge { n: model.n(), cap: CAP });
    }
    let problem = Problem::new(k, variant, false)?;
    let red = Reduction::new(model, &problem, EngineOptions::default())?;
    let nodes = red.enumerate_nodes()?;
    let b_prime = compute_b_prime(&red, &nodes);
    for class in suffix_partition(&nodes, &b_prime, k) {
        for head in nodes.iter().filter(|s| s.kind != NodeKind::Source) {
            let rep = red.is_e0_arc(&nodes[class.representative()], head)?;
            for &m in &class.members[1..] {
                if red.is_e0_arc(&nodes[m], head)? != rep {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
