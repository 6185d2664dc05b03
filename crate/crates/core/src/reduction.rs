//! The derived digraph whose shortest source-to-sink path encodes an optimal
//! (total) k-dominating set, and the naive engine that builds it in full.
//!
//! Nodes are increasing sequences of sorted interval positions. The source
//! and sink are the one-element sequences `[0]` and `[n + 1]` over the two
//! dummy intervals, which meet nothing in the model. Small nodes stand for a
//! whole connected piece of a candidate solution with fewer than `2k`
//! vertices; big nodes are `2k`-windows sliding along a larger piece.
//!
//! Arcs come in two classes. `E0` jumps from one piece to the next and must
//! leave every skipped interval covered; `E1` slides a big window one
//! position to the right.

use std::fmt::{self, Write as _};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::ProperIntervalModel;
use crate::oracle::{Solution, VertexSet};
use crate::problem::{Engine, Problem, Variant};
use crate::rational::{self, Rational};

pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

/// Strictly increasing list of sorted interval positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSeq(Vec<usize>);

impl NodeSeq {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Param(format!("node sequence {indices:?} is not strictly increasing")));
        }
        Ok(NodeSeq(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Source,
    Sink,
    Small,
    Big,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Source => "source",
            NodeKind::Sink => "sink",
            NodeKind::Small => "small",
            NodeKind::Big => "big",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DagNode {
    pub id: usize,
    pub kind: NodeKind,
    pub seq: NodeSeq,
}

impl DagNode {
    pub fn source() -> Self {
        DagNode { id: 0, kind: NodeKind::Source, seq: NodeSeq(vec![0]) }
    }

    pub fn sink(n: usize, id: usize) -> Self {
        DagNode { id, kind: NodeKind::Sink, seq: NodeSeq(vec![n + 1]) }
    }

    pub fn small(id: usize, indices: Vec<usize>) -> Result<Self> {
        Ok(DagNode { id, kind: NodeKind::Small, seq: NodeSeq::new(indices)? })
    }

    pub fn big(id: usize, indices: Vec<usize>) -> Result<Self> {
        Ok(DagNode { id, kind: NodeKind::Big, seq: NodeSeq::new(indices)? })
    }

    pub fn is_inner(&self) -> bool {
        matches!(self.kind, NodeKind::Small | NodeKind::Big)
    }
}

impl fmt::Display for DagNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind.as_str())?;
        for (i, x) in self.seq.indices().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcClass {
    E0,
    E1,
}

impl ArcClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ArcClass::E0 => "E0",
            ArcClass::E1 => "E1",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DagArc {
    pub tail: usize,
    pub head: usize,
    pub class: ArcClass,
    pub length: Rational,
}

/// Which vertex an `E1` step charges in weighted mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum E1Length {
    /// The interval the step adds: the head's rightmost position.
    #[default]
    NewRightmost,
    /// The head's leftmost position. Kept only to demonstrate that it
    /// miscounts costs; never the right choice for solving.
    HeadLeftmost,
}

/// Deliberate defects for mutation checks of the verification harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Treat the skipped-interval coverage condition of `E0` as always met.
    SkipGapCoverage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    pub node_cap: u64,
    pub e1_length: E1Length,
    pub fault: Option<Fault>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { node_cap: DEFAULT_NODE_CAP, e1_length: E1Length::NewRightmost, fault: None }
    }
}

/// Node and arc predicates of the derived digraph for one model, `k` and
/// variant.
#[derive(Debug, Clone, Copy)]
pub struct Reduction<'a> {
    model: &'a ProperIntervalModel,
    k: usize,
    variant: Variant,
    weighted: bool,
    options: EngineOptions,
}

impl<'a> Reduction<'a> {
    pub fn new(model: &'a ProperIntervalModel, problem: &Problem, options: EngineOptions) -> Result<Self> {
        if problem.k == 0 {
            return Err(Error::Param("k must be at least 1".into()));
        }
        Ok(Reduction { model, k: problem.k, variant: problem.variant, weighted: problem.weighted, options })
    }

    pub fn model(&self) -> &'a ProperIntervalModel {
        self.model
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn weighted(&self) -> bool {
        self.weighted
    }

    pub fn options(&self) -> &EngineOptions {
        &self.options
    }

    fn sink_pos(&self) -> usize {
        self.model.n() + 1
    }

    fn small_len_range(&self) -> (usize, usize) {
        match self.variant {
            Variant::Total => (self.k + 1, 2 * self.k - 1),
            Variant::KDom => (1, 2 * self.k - 1),
        }
    }

    /// How many members of `seq`, other than `x` itself, meet interval `x`.
    #[inline]
    fn meeting(&self, x: usize, seq: &[usize]) -> usize {
        let (lo, hi) = (self.model.reach_lo(x), self.model.reach_hi(x));
        seq.iter().filter(|&&p| p != x && lo <= p && p <= hi).count()
    }

    fn consecutive(&self, seq: &[usize]) -> bool {
        seq.windows(2).all(|w| self.model.meets(w[0], w[1]))
    }

    fn pairwise(&self, seq: &[usize]) -> bool {
        seq.iter().enumerate().all(|(i, &a)| seq[i + 1..].iter().all(|&b| self.model.meets(a, b)))
    }

    /// Every interval strictly between positions `lo` and `hi` (exclusive)
    /// and not in `seq` meets at least `k` members of `seq`.
    fn covered_between(&self, seq: &[usize], lo: usize, hi: usize) -> bool {
        ((lo + 1)..hi).filter(|x| !seq.contains(x)).all(|x| self.meeting(x, seq) >= self.k)
    }

    /// Every interval from `lo` to `hi` inclusive, members included, meets at
    /// least `k` other members of `seq`.
    fn covered_through(&self, seq: &[usize], lo: usize, hi: usize) -> bool {
        (lo..=hi).all(|x| self.meeting(x, seq) >= self.k)
    }

    pub fn is_small(&self, seq: &[usize]) -> bool {
        let (qmin, qmax) = self.small_len_range();
        let q = seq.len();
        if q < qmin || q > qmax || !self.consecutive(seq) {
            return false;
        }
        let (lo, hi) = (seq[0], seq[q - 1]);
        match self.variant {
            Variant::Total => self.covered_through(seq, lo, hi),
            Variant::KDom => self.covered_between(seq, lo, hi),
        }
    }

    pub fn is_big(&self, seq: &[usize]) -> bool {
        let k = self.k;
        if seq.len() != 2 * k || !self.consecutive(seq) {
            return false;
        }
        let (lo, hi) = (seq[k - 1], seq[k]);
        match self.variant {
            Variant::Total => self.covered_through(seq, lo, hi),
            Variant::KDom => self.covered_between(seq, lo, hi),
        }
    }

    /// Condition a big node must meet to be the tail of an `E0` arc. Depends
    /// on the node alone.
    pub fn big_tail_ok(&self, seq: &[usize]) -> bool {
        let k = self.k;
        match self.variant {
            Variant::Total => self.pairwise(&seq[k - 1..]),
            Variant::KDom => self.covered_between(seq, seq[k], seq[2 * k - 1]),
        }
    }

    /// Condition a big node must meet to be the head of an `E0` arc.
    pub fn big_head_ok(&self, seq: &[usize]) -> bool {
        let k = self.k;
        match self.variant {
            Variant::Total => self.pairwise(&seq[..=k]),
            Variant::KDom => self.covered_between(seq, seq[0], seq[k - 1]),
        }
    }

    /// `max(s) < min(t)`, the two are disjoint, and every interval strictly
    /// between them meets at least `k` intervals of `s` or `t`.
    pub fn gap_ok(&self, s: &[usize], t: &[usize]) -> bool {
        let (left, right) = (s[s.len() - 1], t[0]);
        if left >= right || self.model.meets(left, right) {
            return false;
        }
        if self.options.fault == Some(Fault::SkipGapCoverage) {
            return true;
        }
        ((left + 1)..right).all(|x| self.meeting(x, s) + self.meeting(x, t) >= self.k)
    }

    /// Shape check of a node against this digraph's variant and size.
    pub fn check_node(&self, node: &DagNode) -> Result<()> {
        let q = node.seq.len();
        let ok = match node.kind {
            NodeKind::Source => node.seq.indices() == [0],
            NodeKind::Sink => node.seq.indices() == [self.sink_pos()],
            NodeKind::Small => {
                let (qmin, qmax) = self.small_len_range();
                (qmin..=qmax).contains(&q) && node.seq.last() <= self.model.n() && node.seq.first() >= 1
            }
            NodeKind::Big => q == 2 * self.k && node.seq.last() <= self.model.n() && node.seq.first() >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::VariantMismatch(self.variant.as_str()))
        }
    }

    pub fn is_e0_arc(&self, s: &DagNode, t: &DagNode) -> Result<bool> {
        self.check_node(s)?;
        self.check_node(t)?;
        if s.kind == NodeKind::Sink || t.kind == NodeKind::Source {
            return Ok(false);
        }
        Ok(self.e0_unchecked(s, t))
    }

    fn e0_unchecked(&self, s: &DagNode, t: &DagNode) -> bool {
        self.gap_ok(s.seq.indices(), t.seq.indices())
            && (s.kind != NodeKind::Big || self.big_tail_ok(s.seq.indices()))
            && (t.kind != NodeKind::Big || self.big_head_ok(t.seq.indices()))
    }

    pub fn is_e1_arc(&self, s: &DagNode, t: &DagNode) -> bool {
        is_e1_arc(self.k, s, t)
    }

    pub fn arc_class(&self, s: &DagNode, t: &DagNode) -> Result<Option<ArcClass>> {
        if self.is_e0_arc(s, t)? {
            Ok(Some(ArcClass::E0))
        } else if self.is_e1_arc(s, t) {
            Ok(Some(ArcClass::E1))
        } else {
            Ok(None)
        }
    }

    /// Length of the arc `(s, t)`, which must be an arc of `class`.
    pub fn arc_length(&self, s: &DagNode, t: &DagNode, class: ArcClass) -> Result<Rational> {
        let is_arc = match class {
            ArcClass::E0 => self.is_e0_arc(s, t)?,
            ArcClass::E1 => self.is_e1_arc(s, t),
        };
        if !is_arc {
            return Err(Error::NotArc(class.as_str()));
        }
        Ok(self.length_unchecked(t, class))
    }

    pub(crate) fn length_unchecked(&self, head: &DagNode, class: ArcClass) -> Rational {
        match class {
            ArcClass::E0 if head.kind == NodeKind::Sink => Rational::zero(),
            ArcClass::E0 => self.seq_cost(head.seq.indices()),
            ArcClass::E1 => {
                if !self.weighted {
                    return rational::int(1);
                }
                let pos = match self.options.e1_length {
                    E1Length::NewRightmost => head.seq.last(),
                    E1Length::HeadLeftmost => head.seq.first(),
                };
                self.model.cost(pos)
            }
        }
    }

    pub(crate) fn seq_cost(&self, seq: &[usize]) -> Rational {
        if self.weighted {
            seq.iter().fold(Rational::zero(), |acc, &p| acc + self.model.cost(p))
        } else {
            rational::int(seq.len() as i64)
        }
    }

    /// Number of consecutive-meeting chains that enumeration would examine,
    /// an upper bound on the node count. Saturates instead of overflowing.
    pub fn projected_nodes(&self) -> u64 {
        let n = self.model.n();
        let max_len = 2 * self.k;
        let (qmin, _) = self.small_len_range();
        // chains[i] = number of chains of the current length starting at i
        let mut chains = vec![1u64; n + 2];
        let mut total = 2u64;
        for len in 1..=max_len {
            if len > 1 {
                let mut next = vec![0u64; n + 2];
                for i in (1..=n).rev() {
                    let hi = self.model.reach_hi(i);
                    next[i] = ((i + 1)..=hi).fold(0u64, |acc, j| acc.saturating_add(chains[j]));
                }
                chains = next;
            }
            if len >= qmin {
                total = (1..=n).fold(total, |acc, i| acc.saturating_add(chains[i]));
            }
        }
        total
    }

    /// Source, then every small and big node in lexicographic order of
    /// sequences, then the sink. Ids follow that order.
    pub fn enumerate_nodes(&self) -> Result<Vec<DagNode>> {
        let projected = self.projected_nodes();
        if projected > self.options.node_cap {
            return Err(Error::Budget { projected, cap: self.options.node_cap });
        }
        let mut nodes = vec![DagNode::source()];
        let mut chain = Vec::with_capacity(2 * self.k);
        for start in 1..=self.model.n() {
            chain.push(start);
            self.extend(&mut chain, &mut nodes);
            chain.pop();
        }
        let sink_id = nodes.len();
        nodes.push(DagNode::sink(self.model.n(), sink_id));
        Ok(nodes)
    }

    fn extend(&self, chain: &mut Vec<usize>, out: &mut Vec<DagNode>) {
        let id = out.len();
        if chain.len() == 2 * self.k {
            if self.is_big(chain) {
                out.push(DagNode { id, kind: NodeKind::Big, seq: NodeSeq(chain.clone()) });
            }
            return;
        }
        if self.is_small(chain) {
            out.push(DagNode { id, kind: NodeKind::Small, seq: NodeSeq(chain.clone()) });
        }
        let last = chain[chain.len() - 1];
        for next in (last + 1)..=self.model.reach_hi(last) {
            chain.push(next);
            self.extend(chain, out);
            chain.pop();
        }
    }

    /// Checks that consecutive nodes of `path` are arcs and returns the path
    /// length.
    pub fn validate_path(&self, path: &[DagNode]) -> Result<Rational> {
        check_path_shape(path)?;
        let mut total = Rational::zero();
        for w in path.windows(2) {
            match self.arc_class(&w[0], &w[1])? {
                Some(class) => total += self.length_unchecked(&w[1], class),
                None => return Err(Error::NotPath(format!("no arc {} -> {}", w[0], w[1]))),
            }
        }
        Ok(total)
    }
}

/// `E1` joins big nodes `(i_1..i_2k)` and `(i_2..i_2k+1)`.
pub fn is_e1_arc(k: usize, s: &DagNode, t: &DagNode) -> bool {
    if s.kind != NodeKind::Big || t.kind != NodeKind::Big {
        return false;
    }
    let (a, b) = (s.seq.indices(), t.seq.indices());
    a.len() == 2 * k && b.len() == 2 * k && a[1..] == b[..2 * k - 1] && b[2 * k - 1] > a[2 * k - 1]
}

fn check_path_shape(path: &[DagNode]) -> Result<()> {
    match (path.first(), path.last()) {
        (Some(first), Some(last)) if first.kind == NodeKind::Source && last.kind == NodeKind::Sink => {}
        _ => return Err(Error::NotPath("must start at the source and end at the sink".into())),
    }
    if path.len() < 2 || !path[1..path.len() - 1].iter().all(DagNode::is_inner) {
        return Err(Error::NotPath("inner nodes must be small or big".into()));
    }
    Ok(())
}

/// Union of the intervals on the inner nodes of a source-to-sink path, in
/// the caller's numbering.
pub fn path_to_vertex_set(model: &ProperIntervalModel, path: &[DagNode]) -> Result<VertexSet> {
    check_path_shape(path)?;
    let n = model.n();
    let mut members = Vec::new();
    for node in &path[1..path.len() - 1] {
        for &p in node.seq.indices() {
            if p == 0 || p > n {
                return Err(Error::Index { index: p, n });
            }
            members.push(model.label(p));
        }
    }
    Ok(VertexSet::new(members))
}

pub fn enumerate_nodes(model: &ProperIntervalModel, k: usize, variant: Variant) -> Result<Vec<DagNode>> {
    Reduction::new(model, &Problem::new(k, variant, false)?, EngineOptions::default())?.enumerate_nodes()
}

/// Fully materialized digraph.
#[derive(Debug, Clone)]
pub struct DerivedDigraph {
    pub nodes: Vec<DagNode>,
    pub arcs: Vec<DagArc>,
    pub variant: Variant,
    pub k: usize,
    pub weighted: bool,
}

impl DerivedDigraph {
    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Kahn's algorithm; true iff every node gets ordered.
    pub fn is_acyclic(&self) -> bool {
        let mut indegree = vec![0usize; self.nodes.len()];
        let mut out = vec![Vec::new(); self.nodes.len()];
        for a in &self.arcs {
            indegree[a.head] += 1;
            out[a.tail].push(a.head);
        }
        let mut stack: Vec<usize> = (0..self.nodes.len()).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &h in &out[v] {
                indegree[h] -= 1;
                if indegree[h] == 0 {
                    stack.push(h);
                }
            }
        }
        seen == self.nodes.len()
    }

    /// Text dump: one `id kind indices...` line per node, then one
    /// `tail head class length` line per arc.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for node in &self.nodes {
            write!(out, "{} {}", node.id, node.kind.as_str()).unwrap();
            for p in node.seq.indices() {
                write!(out, " {p}").unwrap();
            }
            out.push('\n');
        }
        for a in &self.arcs {
            writeln!(out, "{} {} {} {}", a.tail, a.head, a.class.as_str(), rational::render(&a.length)).unwrap();
        }
        out
    }
}

pub fn build_digraph(model: &ProperIntervalModel, problem: &Problem) -> Result<DerivedDigraph> {
    build_digraph_with(model, problem, EngineOptions::default())
}

/// Tests every ordered node pair against both arc classes.
pub fn build_digraph_with(model: &ProperIntervalModel, problem: &Problem, options: EngineOptions) -> Result<DerivedDigraph> {
    let red = Reduction::new(model, problem, options)?;
    let nodes = red.enumerate_nodes()?;
    let mut arcs = Vec::new();
    for s in &nodes {
        if s.kind == NodeKind::Sink {
            continue;
        }
        for t in &nodes {
            if t.kind == NodeKind::Source {
                continue;
            }
            // E0 needs max(s) < min(t); E1 needs max(s) < max(t)
            if t.seq.last() <= s.seq.last() {
                continue;
            }
            let class = if red.e0_unchecked(s, t) {
                ArcClass::E0
            } else if red.is_e1_arc(s, t) {
                ArcClass::E1
            } else {
                continue;
            };
            arcs.push(DagArc { tail: s.id, head: t.id, class, length: red.length_unchecked(t, class) });
        }
    }
    Ok(DerivedDigraph { nodes, arcs, variant: problem.variant, k: problem.k, weighted: problem.weighted })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct NaiveStats {
    pub nodes: usize,
    pub arcs: usize,
}

#[derive(Debug, Clone)]
pub struct NaiveRun {
    pub solution: Solution,
    /// Node ids along the chosen path; empty when infeasible.
    pub path: Vec<usize>,
    pub stats: NaiveStats,
    pub digraph: DerivedDigraph,
}

pub fn solve_naive(model: &ProperIntervalModel, problem: &Problem) -> Result<Solution> {
    Ok(solve_naive_with(model, problem, EngineOptions::default())?.solution)
}

/// Shortest source-to-sink path on the explicit digraph. Among shortest
/// paths the one with the lexicographically smallest node-id sequence wins.
pub fn solve_naive_with(model: &ProperIntervalModel, problem: &Problem, options: EngineOptions) -> Result<NaiveRun> {
    let digraph = build_digraph_with(model, problem, options)?;
    let count = digraph.nodes.len();
    let mut out: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); count];
    for a in &digraph.arcs {
        out[a.tail].push((a.head, a.length));
    }
    for list in &mut out {
        list.sort_by_key(|&(h, _)| h);
    }

    // arcs strictly increase the max position, so this is a topological order
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&v| (digraph.nodes[v].seq.last(), v));

    let mut to_sink: Vec<Option<Rational>> = vec![None; count];
    to_sink[digraph.sink()] = Some(Rational::zero());
    for &v in order.iter().rev() {
        for (h, len) in &out[v] {
            if let Some(rest) = &to_sink[*h] {
                let cand = rest + len;
                if to_sink[v].as_ref().is_none_or(|cur| cand < *cur) {
                    to_sink[v] = Some(cand);
                }
            }
        }
    }

    let stats = NaiveStats { nodes: count, arcs: digraph.arcs.len() };
    let Some(best) = to_sink[digraph.source()] else {
        return Ok(NaiveRun { solution: Solution::infeasible(Engine::Naive), path: Vec::new(), stats, digraph });
    };

    let mut path = vec![digraph.source()];
    let mut cur = digraph.source();
    while cur != digraph.sink() {
        let here = to_sink[cur].expect("on a shortest path");
        let (next, _) = out[cur]
            .iter()
            .find(|(h, len)| to_sink[*h].as_ref().is_some_and(|rest| rest + len == here))
            .expect("shortest path continues");
        path.push(*next);
        cur = *next;
    }
    let nodes: Vec<DagNode> = path.iter().map(|&id| digraph.nodes[id].clone()).collect();
    let set = path_to_vertex_set(model, &nodes)?;
    Ok(NaiveRun { solution: Solution::found(set, best, Engine::Naive), path, stats, digraph })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p6() -> ProperIntervalModel {
        ProperIntervalModel::parse("6\n1 2.2\n2 3.2\n3 4.2\n4 5.2\n5 6.2\n6 7.2\n").unwrap()
    }

    fn two(overlap: bool) -> ProperIntervalModel {
        if overlap {
            ProperIntervalModel::parse("2\n0 2\n1 3\n").unwrap()
        } else {
            ProperIntervalModel::parse("2\n0 1\n2 3\n").unwrap()
        }
    }

    fn red<'a>(m: &'a ProperIntervalModel, k: usize, v: Variant) -> Reduction<'a> {
        Reduction::new(m, &Problem::unweighted(k, v), EngineOptions::default()).unwrap()
    }

    fn seqs(nodes: &[DagNode], kind: NodeKind) -> Vec<Vec<usize>> {
        nodes.iter().filter(|n| n.kind == kind).map(|n| n.seq.indices().to_vec()).collect()
    }

    #[test]
    fn disjoint_pair_has_only_terminals() {
        let m = two(false);
        let nodes = enumerate_nodes(&m, 1, Variant::Total).unwrap();
        assert_eq!(nodes.len(), 2);
        let g = build_digraph(&m, &Problem::unweighted(1, Variant::Total)).unwrap();
        assert!(g.arcs.is_empty());
    }

    #[test]
    fn overlapping_pair_total_k1() {
        let m = two(true);
        let nodes = enumerate_nodes(&m, 1, Variant::Total).unwrap();
        assert_eq!(nodes.len(), 3);
        assert_eq!(nodes[1].kind, NodeKind::Big);
        assert_eq!(nodes[1].seq.indices(), &[1, 2]);
        let r = red(&m, 1, Variant::Total);
        assert!(r.is_e0_arc(&nodes[0], &nodes[1]).unwrap());
        assert!(!r.is_e0_arc(&nodes[0], &nodes[2]).unwrap());

        let g = build_digraph(&m, &Problem::unweighted(1, Variant::Total)).unwrap();
        let arcs: Vec<_> = g.arcs.iter().map(|a| (a.tail, a.head, a.class, a.length)).collect();
        assert_eq!(arcs, vec![(0, 1, ArcClass::E0, int(2)), (1, 2, ArcClass::E0, int(0))]);
    }

    #[test]
    fn p6_kdom_k1_nodes_match_direct_scan() {
        let m = p6();
        let nodes = enumerate_nodes(&m, 1, Variant::KDom).unwrap();
        let small = seqs(&nodes, NodeKind::Small);
        let big = seqs(&nodes, NodeKind::Big);
        assert_eq!(small, (1..=6).map(|i| vec![i]).collect::<Vec<_>>());
        assert_eq!(big, (1..=5).map(|i| vec![i, i + 1]).collect::<Vec<_>>());
    }

    #[test]
    fn p6_kdom_k1_gap_arc() {
        let m = p6();
        let r = red(&m, 1, Variant::KDom);
        let a = DagNode::small(2, vec![2]).unwrap();
        let b = DagNode::small(5, vec![5]).unwrap();
        assert!(r.is_e0_arc(&a, &b).unwrap());
        // skipping three intervals leaves the middle one uncovered
        let c = DagNode::small(6, vec![6]).unwrap();
        assert!(!r.is_e0_arc(&a, &c).unwrap());
    }

    #[test]
    fn source_never_reaches_sink_directly() {
        for m in [p6(), two(true), two(false)] {
            for v in Variant::ALL {
                for k in 1..=2 {
                    let r = red(&m, k, v);
                    let sink = DagNode::sink(m.n(), 99);
                    assert!(!r.is_e0_arc(&DagNode::source(), &sink).unwrap());
                }
            }
        }
    }

    #[test]
    fn e1_shape() {
        let a = DagNode::big(1, vec![1, 2]).unwrap();
        let b = DagNode::big(2, vec![2, 3]).unwrap();
        let c = DagNode::big(3, vec![3, 4]).unwrap();
        let s = DagNode::small(4, vec![1, 2]).unwrap();
        assert!(is_e1_arc(1, &a, &b));
        assert!(!is_e1_arc(1, &a, &c));
        assert!(!is_e1_arc(1, &s, &b));
        assert!(!is_e1_arc(1, &b, &a));
    }

    #[test]
    fn arc_lengths() {
        let m = ProperIntervalModel::parse("5\n0 10\n1 11\n2 12\n3 13\n4 14\n").unwrap();
        let r = red(&m, 2, Variant::Total);
        let big = DagNode::big(1, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(r.arc_length(&DagNode::source(), &big, ArcClass::E0).unwrap(), int(4));
        let sink = DagNode::sink(5, 9);
        let big2 = DagNode::big(2, vec![2, 3, 4, 5]).unwrap();
        assert_eq!(r.arc_length(&big2, &big, ArcClass::E0).unwrap_err().code(), "E_NOT_ARC");
        assert_eq!(r.arc_length(&big, &big2, ArcClass::E0).unwrap_err().code(), "E_NOT_ARC");
        assert_eq!(r.arc_length(&big, &big2, ArcClass::E1).unwrap(), int(1));
        assert_eq!(r.arc_length(&big2, &sink, ArcClass::E0).unwrap(), int(0));

        let unit = m.with_costs(vec![int(1); 5]).unwrap();
        let rw = Reduction::new(&unit, &Problem::weighted(2, Variant::Total), EngineOptions::default()).unwrap();
        assert_eq!(rw.arc_length(&big, &big2, ArcClass::E1).unwrap(), int(1));
    }

    #[test]
    fn variant_mismatch_is_reported() {
        let m = p6();
        let r = red(&m, 2, Variant::Total);
        // a singleton is a small node only for plain k-domination
        let single = DagNode::small(1, vec![3]).unwrap();
        assert_eq!(r.is_e0_arc(&DagNode::source(), &single).unwrap_err().code(), "E_VARIANT_MISMATCH");
    }

    #[test]
    fn path_to_set_examples() {
        let m = ProperIntervalModel::parse(
            "9\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n8 9\n",
        )
        .unwrap();
        let path = [DagNode::source(), DagNode::big(1, vec![1, 2]).unwrap(), DagNode::sink(9, 2)];
        assert_eq!(path_to_vertex_set(&m, &path).unwrap(), VertexSet::new([1, 2]));
        let path = [
            DagNode::source(),
            DagNode::small(1, vec![3]).unwrap(),
            DagNode::small(2, vec![7]).unwrap(),
            DagNode::sink(9, 3),
        ];
        assert_eq!(path_to_vertex_set(&m, &path).unwrap(), VertexSet::new([3, 7]));
        let path = [
            DagNode::source(),
            DagNode::big(1, vec![2, 3, 5, 6]).unwrap(),
            DagNode::big(2, vec![3, 5, 6, 7]).unwrap(),
            DagNode::sink(9, 3),
        ];
        assert_eq!(path_to_vertex_set(&m, &path).unwrap(), VertexSet::new([2, 3, 5, 6, 7]));
        let bad = [DagNode::big(1, vec![1, 2]).unwrap(), DagNode::sink(9, 2)];
        assert_eq!(path_to_vertex_set(&m, &bad).unwrap_err().code(), "E_NOT_PATH");
    }

    #[test]
    fn naive_examples() {
        let clique = ProperIntervalModel::parse("5\n0 10\n1 11\n2 12\n3 13\n4 14\n").unwrap();
        let sol = solve_naive(&clique, &Problem::unweighted(1, Variant::Total)).unwrap();
        assert_eq!(sol.cost, Some(int(2)));

        let sol = solve_naive(&p6(), &Problem::unweighted(1, Variant::Total)).unwrap();
        assert_eq!(sol.cost, Some(int(4)));
        assert_eq!(sol.set.len(), 4);

        let sol = solve_naive(&p6(), &Problem::unweighted(2, Variant::Total)).unwrap();
        assert!(!sol.feasible);
    }

    #[test]
    fn digraph_is_acyclic_and_dump_is_stable() {
        let g = build_digraph(&p6(), &Problem::unweighted(1, Variant::KDom)).unwrap();
        assert!(g.is_acyclic());
        for a in &g.arcs {
            assert!(g.nodes[a.tail].seq.last() < g.nodes[a.head].seq.last());
        }
        let dump = g.dump();
        assert!(dump.starts_with("0 source 0\n1 small 1\n2 big 1 2\n"));
        assert_eq!(dump, build_digraph(&p6(), &Problem::unweighted(1, Variant::KDom)).unwrap().dump());
    }

    #[test]
    fn budget_guard() {
        let m = crate::model::generate_random(30, 1, int(40)).unwrap();
        let opts = EngineOptions { node_cap: 1000, ..EngineOptions::default() };
        let err = build_digraph_with(&m, &Problem::unweighted(2, Variant::Total), opts).unwrap_err();
        assert_eq!(err.code(), "E_BUDGET");
    }
}
