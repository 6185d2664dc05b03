//! Ground truth: domination predicates and an exhaustive minimizer.
//!
//! Nothing in here knows about the derived digraph. The brute-force search
//! scans vertex subsets as bitmasks over the caller's numbering, so its
//! output is independent of both reduction engines.

use std::collections::VecDeque;

use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DerivedGraph, ProperIntervalModel};
use crate::problem::{Engine, Problem, Variant};
use crate::rational::{self, Rational};

pub const DEFAULT_BRUTE_CAP: usize = 20;
const HARD_BRUTE_CAP: usize = 63;

/// Sorted, duplicate-free set of vertex labels (1-based).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    fn check(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&v| v == 0 || v > n) {
            Some(&v) => Err(Error::Index { index: v, n }),
            None => Ok(()),
        }
    }
}

/// Optimum reported by an engine. `cost` is `None` exactly when infeasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub set: VertexSet,
    pub cost: Option<Rational>,
    pub feasible: bool,
    pub engine: Engine,
}

impl Solution {
    pub fn found(set: VertexSet, cost: Rational, engine: Engine) -> Self {
        Solution { set, cost: Some(cost), feasible: true, engine }
    }

    pub fn infeasible(engine: Engine) -> Self {
        Solution { set: VertexSet::empty(), cost: None, feasible: false, engine }
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Param("k must be at least 1".into()));
    }
    Ok(())
}

fn inside_count(graph: &DerivedGraph, set: &VertexSet, v: usize) -> usize {
    graph.neighbors(v).map(|nb| nb.iter().filter(|&&u| set.contains(u)).count()).unwrap_or(0)
}

/// First vertex violating the variant's domination requirement, if any.
pub fn first_violation(graph: &DerivedGraph, set: &VertexSet, k: usize, variant: Variant) -> Result<Option<usize>> {
    check_k(k)?;
    set.check(graph.n())?;
    Ok((1..=graph.n()).find(|&v| {
        let needs = variant == Variant::Total || !set.contains(v);
        needs && inside_count(graph, set, v) < k
    }))
}

pub fn is_k_dominating(graph: &DerivedGraph, set: &VertexSet, k: usize) -> Result<bool> {
    Ok(first_violation(graph, set, k, Variant::KDom)?.is_none())
}

pub fn is_total_k_dominating(graph: &DerivedGraph, set: &VertexSet, k: usize) -> Result<bool> {
    Ok(first_violation(graph, set, k, Variant::Total)?.is_none())
}

pub fn is_dominating(graph: &DerivedGraph, set: &VertexSet, k: usize, variant: Variant) -> Result<bool> {
    Ok(first_violation(graph, set, k, variant)?.is_none())
}

/// Every component of the subgraph induced by a total k-dominating set has
/// at least `k + 1` vertices.
pub fn check_lemma_components(graph: &DerivedGraph, set: &VertexSet, k: usize) -> Result<bool> {
    if !is_total_k_dominating(graph, set, k)? {
        return Err(Error::Precondition("set is not total k-dominating".into()));
    }
    let mut seen = vec![false; graph.n() + 1];
    for &start in set.members() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut size = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &u in graph.neighbors(v)? {
                if set.contains(u) && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        if size < k + 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sum of member costs; unit costs when `weighted` is off or the model has none.
pub fn set_cost(model: &ProperIntervalModel, set: &VertexSet, weighted: bool) -> Result<Rational> {
    set.check(model.n())?;
    if !weighted {
        return Ok(rational::int(set.len() as i64));
    }
    let mut total = Rational::zero();
    for &v in set.members() {
        total += model.cost(model.position(v)?);
    }
    Ok(total)
}

pub fn brute_force_min(model: &ProperIntervalModel, problem: &Problem) -> Result<Solution> {
    brute_force_min_capped(model, problem, DEFAULT_BRUTE_CAP)
}

/// Exhaustive minimum over all vertex subsets. Ties are broken by smaller
/// cardinality, then by the lexicographically smallest member list.
pub fn brute_force_min_capped(model: &ProperIntervalModel, problem: &Problem, cap: usize) -> Result<Solution> {
    check_k(problem.k)?;
    let n = model.n();
    let cap = cap.min(HARD_BRUTE_CAP);
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let graph = model.derive_graph();
    let neighbor_masks: Vec<u64> = (1..=n)
        .map(|v| graph.neighbors(v).unwrap().iter().fold(0u64, |m, &u| m | 1 << (u - 1)))
        .collect();
    let k = problem.k as u32;
    let feasible = |mask: u64| {
        (0..n).all(|v| {
            let inside = mask >> v & 1 == 1;
            (problem.variant == Variant::KDom && inside) || (neighbor_masks[v] & mask).count_ones() >= k
        })
    };
    let to_set = |mask: u64| VertexSet::new((0..n).filter(|v| mask >> v & 1 == 1).map(|v| v + 1));

    let weighted = problem.weighted && model.is_weighted();
    if !weighted {
        // low cardinality first; combinations come out in lexicographic order
        for size in 0..=n {
            for combo in (0..n).combinations(size) {
                let mask = combo.iter().fold(0u64, |m, &v| m | 1 << v);
                if feasible(mask) {
                    return Ok(Solution::found(to_set(mask), rational::int(size as i64), Engine::Brute));
                }
            }
        }
        return Ok(Solution::infeasible(Engine::Brute));
    }

    let costs: Vec<Rational> = (1..=n).map(|v| model.cost(model.position(v).unwrap())).collect();
    let mut best: Option<(Rational, u32, u64)> = None;
    for mask in 0..(1u64 << n) {
        if !feasible(mask) {
            continue;
        }
        let cost = (0..n).filter(|v| mask >> v & 1 == 1).fold(Rational::zero(), |acc, v| acc + costs[v]);
        let card = mask.count_ones();
        let better = match &best {
            None => true,
            Some((bc, bk, bm)) => {
                cost < *bc || (cost == *bc && (card < *bk || (card == *bk && lex_smaller(mask, *bm))))
            }
        };
        if better {
            best = Some((cost, card, mask));
        }
    }
    Ok(match best {
        Some((cost, _, mask)) => Solution::found(to_set(mask), cost, Engine::Brute),
        None => Solution::infeasible(Engine::Brute),
    })
}

/// For equal-size masks: the member list of `a` precedes that of `b`.
fn lex_smaller(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::generate_random;
    use crate::rational::int;
    use proptest::prelude::*;

    fn p6_graph() -> DerivedGraph {
        DerivedGraph::from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap()
    }

    fn p6_model() -> ProperIntervalModel {
        ProperIntervalModel::parse("6\n1 2.2\n2 3.2\n3 4.2\n4 5.2\n5 6.2\n6 7.2\n").unwrap()
    }

    fn clique_model(n: usize) -> ProperIntervalModel {
        let text: String = std::iter::once(format!("{n}\n"))
            .chain((0..n).map(|i| format!("{} {}\n", i, i + n)))
            .collect();
        ProperIntervalModel::parse(&text).unwrap()
    }

    #[test]
    fn k_domination_examples() {
        let k4 = DerivedGraph::complete(4);
        assert!(is_k_dominating(&k4, &VertexSet::new([1, 3]), 2).unwrap());
        let p6 = p6_graph();
        assert!(is_k_dominating(&p6, &VertexSet::new([2, 5]), 1).unwrap());
        assert!(!is_k_dominating(&p6, &VertexSet::empty(), 1).unwrap());
    }

    #[test]
    fn total_domination_examples() {
        let k3 = DerivedGraph::complete(3);
        assert!(is_total_k_dominating(&k3, &VertexSet::new([1, 2, 3]), 2).unwrap());
        let p6 = p6_graph();
        assert!(is_total_k_dominating(&p6, &VertexSet::new([2, 3, 5, 6]), 1).unwrap());
        assert!(!is_total_k_dominating(&p6, &VertexSet::empty(), 1).unwrap());
        assert_eq!(first_violation(&p6, &VertexSet::new([2, 5]), 1, Variant::Total).unwrap(), Some(2));
    }

    #[test]
    fn predicates_reject_bad_indices() {
        let p6 = p6_graph();
        assert_eq!(is_k_dominating(&p6, &VertexSet::new([7]), 1).unwrap_err().code(), "E_INDEX");
        assert_eq!(is_total_k_dominating(&p6, &VertexSet::new([0]), 1).unwrap_err().code(), "E_INDEX");
    }

    #[test]
    fn lemma_component_examples() {
        let k3 = DerivedGraph::complete(3);
        assert!(check_lemma_components(&k3, &VertexSet::new([1, 2, 3]), 2).unwrap());
        let p6 = p6_graph();
        assert!(check_lemma_components(&p6, &VertexSet::new([2, 3, 5, 6]), 1).unwrap());
        let err = check_lemma_components(&p6, &VertexSet::new([1]), 1).unwrap_err();
        assert_eq!(err.code(), "E_PRECONDITION");
    }

    #[test]
    fn brute_force_closed_forms() {
        for n in 2..=7 {
            let m = clique_model(n);
            for k in 1..n {
                let kd = brute_force_min(&m, &Problem::unweighted(k, Variant::KDom)).unwrap();
                assert_eq!(kd.cost, Some(int(k as i64)));
                let t = brute_force_min(&m, &Problem::unweighted(k, Variant::Total)).unwrap();
                assert_eq!(t.cost, Some(int(k as i64 + 1)));
            }
        }
    }

    #[test]
    fn brute_force_path() {
        let sol = brute_force_min(&p6_model(), &Problem::unweighted(1, Variant::Total)).unwrap();
        assert_eq!(sol.cost, Some(int(4)));
        // lexicographically first size-4 total dominating set of P_6
        assert_eq!(sol.set, VertexSet::new([1, 2, 4, 5]));
        let sol = brute_force_min(&p6_model(), &Problem::unweighted(2, Variant::Total)).unwrap();
        assert!(!sol.feasible);
        assert_eq!(sol.cost, None);
        assert!(sol.set.is_empty());
    }

    #[test]
    fn brute_force_weighted_ties() {
        // two vertices of a K_2, zero costs: empty set fails, {1} is the tie winner
        let m = ProperIntervalModel::parse("2 weighted\n0 2 0\n1 3 0\n").unwrap();
        let sol = brute_force_min(&m, &Problem::weighted(1, Variant::KDom)).unwrap();
        assert_eq!(sol.cost, Some(int(0)));
        assert_eq!(sol.set, VertexSet::new([1]));
        let m = ProperIntervalModel::parse("3 weighted\n0 3 5\n1 4 1\n2 5 1\n").unwrap();
        let sol = brute_force_min(&m, &Problem::weighted(1, Variant::Total)).unwrap();
        assert_eq!(sol.cost, Some(int(2)));
        assert_eq!(sol.set, VertexSet::new([2, 3]));
    }

    #[test]
    fn brute_force_cap() {
        let m = generate_random(21, 3, int(4)).unwrap();
        let err = brute_force_min(&m, &Problem::unweighted(1, Variant::KDom)).unwrap_err();
        assert_eq!(err.code(), "E_TOO_LARGE");
        assert!(brute_force_min_capped(&m, &Problem::unweighted(1, Variant::KDom), 21).is_ok());
    }

    #[test]
    fn lex_order_of_masks() {
        assert!(lex_smaller(0b0011, 0b0101));
        assert!(!lex_smaller(0b0101, 0b0011));
        assert!(lex_smaller(0b1001, 0b1010));
        assert!(!lex_smaller(0b11, 0b11));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn supersets_stay_dominating(n in 2usize..10, seed in any::<u64>(), k in 1usize..3, extra in any::<u16>()) {
            let m = generate_random(n, seed, int(3)).unwrap();
            let g = m.derive_graph();
            for variant in Variant::ALL {
                let sol = brute_force_min(&m, &Problem::unweighted(k, variant)).unwrap();
                if !sol.feasible {
                    continue;
                }
                let grown = VertexSet::new(sol.set.members().iter().copied()
                    .chain((1..=n).filter(|v| extra >> (v % 16) & 1 == 1)));
                prop_assert!(is_dominating(&g, &grown, k, variant).unwrap());
            }
        }

        #[test]
        fn brute_invariants(n in 1usize..11, seed in any::<u64>(), k in 1usize..4, stretch in 1i64..8) {
            let m = generate_random(n, seed, int(stretch)).unwrap();
            let g = m.derive_graph();
            let kd = brute_force_min(&m, &Problem::unweighted(k, Variant::KDom)).unwrap();
            prop_assert!(kd.feasible);
            prop_assert!(kd.cost.unwrap() <= int(n as i64));
            prop_assert_eq!(kd.cost.unwrap(), int(kd.set.len() as i64));

            let t = brute_force_min(&m, &Problem::unweighted(k, Variant::Total)).unwrap();
            prop_assert_eq!(t.feasible, g.min_degree().unwrap() >= k);
            if t.feasible {
                prop_assert!(check_lemma_components(&g, &t.set, k).unwrap());
            }
        }
    }
}
