use pikdom::fast::topo_order;
use pikdom::reduction::{DagNode, Reduction};
use pikdom::{
    build_digraph, generate_random, solve_fast_with, EngineOptions, Problem, ProperIntervalModel, Rational, Variant,
};
use proptest::prelude::*;

fn model_strategy(max_n: usize) -> impl Strategy<Value = ProperIntervalModel> {
    (1..=max_n, any::<u64>(), 2i128..=16).prop_map(|(n, seed, s)| generate_random(n, seed, Rational::new(s, 2)).unwrap())
}

fn variant_strategy() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::KDom), Just(Variant::Total)]
}

proptest! {
    #[test]
    fn generator_valid_at_scale(seed in any::<u64>(), n in 1usize..=10_000) {
        let m = generate_random(n, seed, Rational::new(7, 2)).unwrap();
        prop_assert_eq!(m.n(), n);
        for p in 1..n {
            prop_assert!(m.interval(p).left < m.interval(p + 1).left);
            prop_assert!(m.interval(p).right < m.interval(p + 1).right);
        }
    }

    #[test]
    fn neighborhoods_consecutive_and_symmetric(m in model_strategy(30)) {
        let g = m.derive_graph();
        let order: Vec<usize> = (1..=m.n()).map(|p| m.label(p)).collect();
        prop_assert!(g.is_consecutive_under(&order));
        for u in 1..=m.n() {
            for &v in g.neighbors(u).unwrap() {
                prop_assert!(g.has_edge(v, u).unwrap());
                prop_assert!(m.intersects(u, v).unwrap());
            }
        }
    }

    #[test]
    fn serialize_parse_round_trip(m in model_strategy(30)) {
        prop_assert_eq!(ProperIntervalModel::parse(&m.serialize()).unwrap(), m);
    }

    #[test]
    fn fast_path_is_valid(m in model_strategy(12), k in 1usize..=2, v in variant_strategy()) {
        let p = Problem::unweighted(k, v);
        let run = solve_fast_with(&m, &p, EngineOptions::default()).unwrap();
        let red = Reduction::new(&m, &p, EngineOptions::default()).unwrap();
        if run.solution.feasible {
            let len = red.validate_path(&run.path_nodes()).unwrap();
            prop_assert_eq!(Some(len), run.solution.cost);
        } else {
            prop_assert!(run.path.is_empty());
        }
    }

    #[test]
    fn topo_order_respects_every_arc(m in model_strategy(10), k in 1usize..=2, v in variant_strategy()) {
        let d = build_digraph(&m, &Problem::unweighted(k, v)).unwrap();
        prop_assert!(d.is_acyclic());
        let order = topo_order(&d.nodes, k);
        let mut pos = vec![0; d.nodes.len()];
        for (i, &id) in order.iter().enumerate() {
            pos[id] = i;
        }
        for a in &d.arcs {
            prop_assert!(pos[a.tail] < pos[a.head], "{} -> {}", d.nodes[a.tail], d.nodes[a.head]);
            let last = |n: &DagNode| n.seq.last();
            prop_assert!(last(&d.nodes[a.tail]) < last(&d.nodes[a.head]));
        }
    }

    #[test]
    fn sink_reachable_iff_min_degree(m in model_strategy(12), k in 1usize..=3) {
        let d = build_digraph(&m, &Problem::unweighted(k, Variant::Total)).unwrap();
        let mut reach = vec![false; d.nodes.len()];
        reach[d.source()] = true;
        let mut arcs = d.arcs.clone();
        arcs.sort_by_key(|a| d.nodes[a.tail].seq.last());
        for a in &arcs {
            if reach[a.tail] {
                reach[a.head] = true;
            }
        }
        prop_assert_eq!(reach[d.sink()], m.derive_graph().min_degree().unwrap() >= k);
    }
}
