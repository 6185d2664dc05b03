//! Proper interval models and their intersection graphs.
//!
//! A [`ProperIntervalModel`] keeps its intervals sorted by left endpoint and
//! remembers the caller's original numbering. Everything outside this crate
//! talks in original labels (1-based, in input order); the engines work on
//! sorted positions `1..=n`, with `0` and `n + 1` reserved for the two dummy
//! intervals that flank the model.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Closed interval `[left, right]` with `left < right`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub left: Rational,
    pub right: Rational,
}

impl Interval {
    pub fn new(left: Rational, right: Rational) -> Option<Self> {
        (left < right).then_some(Interval { left, right })
    }

    pub fn from_ints(left: i64, right: i64) -> Option<Self> {
        Self::new(rational::int(left), rational::int(right))
    }

    pub fn meets(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperIntervalModel {
    /// Sorted by left endpoint; `intervals[i - 1]` is sorted position `i`.
    intervals: Vec<Interval>,
    /// Per sorted position, when the instance is weighted.
    costs: Option<Vec<Rational>>,
    /// Sorted position `i` carries original label `labels[i - 1]`.
    labels: Vec<usize>,
    /// Original label `v` sits at sorted position `positions[v - 1]`.
    positions: Vec<usize>,
    /// Largest sorted position meeting position `i` (indices `0..=n+1`).
    reach_hi: Vec<usize>,
    /// Smallest sorted position meeting position `i`.
    reach_lo: Vec<usize>,
}

impl ProperIntervalModel {
    /// Builds a model from intervals in caller order. Costs, when given, are
    /// in the same caller order.
    pub fn new(intervals: Vec<Interval>, costs: Option<Vec<Rational>>) -> Result<Self> {
        let n = intervals.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if let Some(c) = &costs {
            if c.len() != n {
                return Err(Error::Param(format!("{} costs for {} intervals", c.len(), n)));
            }
            if let Some(v) = c.iter().position(|x| x.is_negative()) {
                return Err(Error::NegativeCost(v + 1));
            }
        }
        if let Some(v) = intervals.iter().position(|iv| iv.left >= iv.right) {
            return Err(Error::Degenerate(v + 1));
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            intervals[a]
                .left
                .cmp(&intervals[b].left)
                .then_with(|| intervals[a].right.cmp(&intervals[b].right))
                .then(a.cmp(&b))
        });
        for w in order.windows(2) {
            let (a, b) = (&intervals[w[0]], &intervals[w[1]]);
            let (la, lb) = (w[0] + 1, w[1] + 1);
            if a == b {
                return Err(Error::Duplicate { first: la.min(lb), second: la.max(lb) });
            }
            if a.left == b.left {
                // same left, larger right contains the smaller one
                return Err(Error::NotProper { outer: lb, inner: la });
            }
            if b.right <= a.right {
                return Err(Error::NotProper { outer: la, inner: lb });
            }
        }

        let labels: Vec<usize> = order.iter().map(|&i| i + 1).collect();
        let mut positions = vec![0; n];
        for (pos, &label) in labels.iter().enumerate() {
            positions[label - 1] = pos + 1;
        }
        let sorted: Vec<Interval> = order.iter().map(|&i| intervals[i].clone()).collect();
        let costs = costs.map(|c| order.iter().map(|&i| c[i]).collect());

        let mut reach_hi = vec![0; n + 2];
        let mut reach_lo = vec![0; n + 2];
        reach_hi[n + 1] = n + 1;
        reach_lo[n + 1] = n + 1;
        let mut hi = 1;
        for i in 1..=n {
            hi = hi.max(i);
            while hi < n && sorted[hi].left <= sorted[i - 1].right {
                hi += 1;
            }
            reach_hi[i] = hi;
        }
        let mut lo = n;
        for i in (1..=n).rev() {
            lo = lo.min(i);
            while lo > 1 && sorted[lo - 2].right >= sorted[i - 1].left {
                lo -= 1;
            }
            reach_lo[i] = lo;
        }

        Ok(ProperIntervalModel { intervals: sorted, costs, labels, positions, reach_hi, reach_lo })
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_weighted(&self) -> bool {
        self.costs.is_some()
    }

    /// Interval at sorted position `pos` (1-based).
    pub fn interval(&self, pos: usize) -> &Interval {
        &self.intervals[pos - 1]
    }

    /// Cost at sorted position `pos`; 1 when the model carries no costs.
    pub fn cost(&self, pos: usize) -> Rational {
        match &self.costs {
            Some(c) => c[pos - 1],
            None => rational::int(1),
        }
    }

    /// Original label of sorted position `pos`.
    pub fn label(&self, pos: usize) -> usize {
        self.labels[pos - 1]
    }

    /// Sorted position of original label `label`.
    pub fn position(&self, label: usize) -> Result<usize> {
        self.check_label(label)?;
        Ok(self.positions[label - 1])
    }

    fn check_label(&self, label: usize) -> Result<()> {
        if label == 0 || label > self.n() {
            return Err(Error::Index { index: label, n: self.n() });
        }
        Ok(())
    }

    /// Intervals in caller order.
    pub fn intervals_in_input_order(&self) -> Vec<Interval> {
        self.positions.iter().map(|&p| self.intervals[p - 1].clone()).collect()
    }

    /// Costs in caller order.
    pub fn costs_in_input_order(&self) -> Option<Vec<Rational>> {
        self.costs.as_ref().map(|c| self.positions.iter().map(|&p| c[p - 1]).collect())
    }

    /// Same intervals with `costs` attached (caller order).
    pub fn with_costs(&self, costs: Vec<Rational>) -> Result<Self> {
        Self::new(self.intervals_in_input_order(), Some(costs))
    }

    pub fn without_costs(&self) -> Self {
        let mut m = self.clone();
        m.costs = None;
        m
    }

    /// Whether original labels `i` and `j` have intersecting intervals.
    pub fn intersects(&self, i: usize, j: usize) -> Result<bool> {
        self.check_label(i)?;
        self.check_label(j)?;
        Ok(self.intervals_in_input_order_ref(i).meets(self.intervals_in_input_order_ref(j)))
    }

    fn intervals_in_input_order_ref(&self, label: usize) -> &Interval {
        &self.intervals[self.positions[label - 1] - 1]
    }

    /// Intersection on sorted positions `0..=n+1`. The dummies at `0` and
    /// `n + 1` meet only themselves.
    #[inline]
    pub fn meets(&self, i: usize, j: usize) -> bool {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        hi <= self.reach_hi[lo]
    }

    /// Largest sorted position meeting `pos`.
    #[inline]
    pub fn reach_hi(&self, pos: usize) -> usize {
        self.reach_hi[pos]
    }

    /// Smallest sorted position meeting `pos`.
    #[inline]
    pub fn reach_lo(&self, pos: usize) -> usize {
        self.reach_lo[pos]
    }

    /// Dummy flanking intervals `[a_1 - 2, a_1 - 1]` and `[b_n + 1, b_n + 2]`.
    pub fn dummies(&self) -> (Interval, Interval) {
        let one = rational::int(1);
        let two = rational::int(2);
        let first = &self.intervals[0].left;
        let last = &self.intervals[self.n() - 1].right;
        (
            Interval { left: first - two, right: first - one },
            Interval { left: last + one, right: last + two },
        )
    }

    pub fn derive_graph(&self) -> DerivedGraph {
        let n = self.n();
        let mut adjacency = vec![Vec::new(); n];
        for pos in 1..=n {
            let label = self.label(pos);
            let list = &mut adjacency[label - 1];
            for other in self.reach_lo[pos]..=self.reach_hi[pos] {
                if other != pos {
                    list.push(self.label(other));
                }
            }
            list.sort_unstable();
        }
        DerivedGraph { adjacency }
    }

    /// Reads the line-oriented instance format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (header_line, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let mut tokens = header.split_whitespace();
        let n: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse { line: header_line, msg: format!("bad vertex count {header:?}") })?;
        let weighted = match tokens.next() {
            None => false,
            Some("weighted") => true,
            Some(t) => return Err(Error::Parse { line: header_line, msg: format!("unexpected token {t:?}") }),
        };
        if let Some(t) = tokens.next() {
            return Err(Error::Parse { line: header_line, msg: format!("unexpected token {t:?}") });
        }
        if n == 0 {
            return Err(Error::Empty);
        }

        let expected = if weighted { 3 } else { 2 };
        let mut intervals = Vec::with_capacity(n);
        let mut costs = Vec::with_capacity(if weighted { n } else { 0 });
        let mut last_line = header_line;
        for _ in 0..n {
            let (line, body) = lines
                .next()
                .ok_or(Error::Parse { line: last_line + 1, msg: format!("expected {n} intervals") })?;
            last_line = line;
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != expected {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {expected} fields, found {}", fields.len()),
                });
            }
            let num = |s: &str| {
                rational::parse(s).ok_or_else(|| Error::Parse { line, msg: format!("bad number {s:?}") })
            };
            let (left, right) = (num(fields[0])?, num(fields[1])?);
            if left >= right {
                return Err(Error::Degenerate(intervals.len() + 1));
            }
            intervals.push(Interval { left, right });
            if weighted {
                costs.push(num(fields[2])?);
            }
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, msg: "trailing data after last interval".into() });
        }
        Self::new(intervals, weighted.then_some(costs))
    }

    /// Canonical text form in caller order, LF line endings.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let costs = self.costs_in_input_order();
        if costs.is_some() {
            writeln!(out, "{} weighted", self.n()).unwrap();
        } else {
            writeln!(out, "{}", self.n()).unwrap();
        }
        for (v, iv) in self.intervals_in_input_order().iter().enumerate() {
            write!(out, "{} {}", rational::render(&iv.left), rational::render(&iv.right)).unwrap();
            if let Some(c) = &costs {
                write!(out, " {}", rational::render(&c[v])).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Seeded random unit-length-style model: `n` intervals of length `stretch`
/// whose left endpoints advance by a random integer step in `1..=4`.
pub fn generate_random(n: usize, seed: u64, stretch: Rational) -> Result<ProperIntervalModel> {
    if n == 0 {
        return Err(Error::Param("n must be at least 1".into()));
    }
    if stretch <= Rational::zero() {
        return Err(Error::Param("stretch must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut left: i64 = 0;
    let mut intervals = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            left += rng.gen_range(1..=4);
        }
        let l = rational::int(left);
        intervals.push(Interval { left: l, right: l + stretch });
    }
    ProperIntervalModel::new(intervals, None)
}

/// Simple undirected graph on original labels `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedGraph {
    adjacency: Vec<Vec<usize>>,
}

impl DerivedGraph {
    /// Graph from an undirected edge list; duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(Error::Index { index: x, n });
                }
            }
            if u == v {
                return Err(Error::Param(format!("self-loop at {u}")));
            }
            adjacency[u - 1].push(v);
            adjacency[v - 1].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(DerivedGraph { adjacency })
    }

    pub fn complete(n: usize) -> Self {
        let adjacency = (1..=n).map(|v| (1..=n).filter(|&u| u != v).collect()).collect();
        DerivedGraph { adjacency }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> Result<&[usize]> {
        if v == 0 || v > self.n() {
            return Err(Error::Index { index: v, n: self.n() });
        }
        Ok(&self.adjacency[v - 1])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> Result<bool> {
        self.neighbors(v)?;
        Ok(self.neighbors(u)?.binary_search(&v).is_ok())
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn min_degree(&self) -> Result<usize> {
        self.adjacency.iter().map(Vec::len).min().ok_or(Error::Empty)
    }

    /// Consecutivity check for proper models relabelled into sorted order:
    /// every neighborhood, plus the vertex itself, is a contiguous range.
    pub fn is_consecutive_under(&self, order: &[usize]) -> bool {
        let mut rank = vec![0; self.n() + 1];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        self.adjacency.iter().enumerate().all(|(i, list)| {
            let mut ranks: Vec<usize> = list.iter().map(|&u| rank[u]).chain([rank[i + 1]]).collect();
            ranks.sort_unstable();
            ranks.windows(2).all(|w| w[1] == w[0] + 1)
        })
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.left.cmp(&other.left).then_with(|| self.right.cmp(&other.right))
    }
}
