mod common;

use anarchy_core::sample::random_connected_graph_mixed;
use anarchy_core::{
    bridge_tree, bridges, distribution, fixtures, indirect_cost, path_relevance, relevance, relevance_naive,
    relevance_sum, separation, total_separation, tree_diameter, AdversaryKind, Graph, Link, PathEnd, Rational,
};
use common::{int, p};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_from(seed: u64, n: usize) -> Graph {
    random_connected_graph_mixed(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

fn new_bridges(before: &Graph, after: &Graph) -> Vec<Link> {
    let old = bridges(before).unwrap();
    bridges(after)
        .unwrap()
        .into_iter()
        .filter(|l| !old.contains(l))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn relevance_matches_reachability(seed in any::<u64>(), n in 3usize..=12) {
        let g = graph_from(seed, n);
        for e in g.links() {
            for v in g.players() {
                let expected = common::rel(&g, e, v);
                prop_assert_eq!(relevance(&g, e, v).unwrap(), expected);
                prop_assert_eq!(relevance_naive(&g, e, v).unwrap(), expected);
            }
        }
        let expected: Vec<Link> = common::bridge_set(&g);
        prop_assert_eq!(bridges(&g).unwrap().into_iter().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn separation_identities(seed in any::<u64>(), n in 3usize..=12) {
        let g = graph_from(seed, n);
        let nn = n as u64;
        for e in g.links() {
            let s = separation(&g, e).unwrap();
            prop_assert_eq!(s.sep, g.players().map(|v| relevance(&g, e, v).unwrap()).sum::<u64>());
            prop_assert_eq!(s.sep, 2 * s.nu * (nn - s.nu));
            prop_assert!(s.sep <= nn * nn && s.nu <= nn / 2);
            if common::is_bridge(&g, e) {
                prop_assert!(s.sep >= 2 * (nn - 1));
            } else {
                prop_assert_eq!(s.sep, 0);
            }
        }
    }

    #[test]
    fn diameter_bounds(seed in any::<u64>(), n in 3usize..=12) {
        let g = graph_from(seed, n);
        let tree = bridge_tree(&g).unwrap();
        let diam = tree_diameter(&tree) as u64;
        let nn = n as u64;
        for v in g.players() {
            prop_assert!(relevance_sum(&g, v).unwrap() <= (nn - 1) * diam);
        }
        let total = total_separation(&g).unwrap();
        if diam > 0 {
            prop_assert!(total < nn * nn * diam);
        } else {
            prop_assert_eq!(total, 0);
        }
    }

    #[test]
    fn becoming_bridges_random(seed in any::<u64>(), n in 3usize..=8, pick in any::<u64>()) {
        let g = graph_from(seed, n);
        let v = p((pick % n as u64) as u32 + 1);
        let inc: Vec<Link> = g.neighbors(v).map(|w| Link::new(v, w).unwrap()).collect();
        let e = inc[(pick as usize / 7) % inc.len()];
        let others: Vec<Link> = inc.iter().copied().filter(|&l| l != e).collect();
        for mask in 0u32..1 << others.len() {
            let f: Vec<Link> = (0..others.len()).filter(|&i| mask >> i & 1 == 1).map(|i| others[i]).collect();
            let g_f = g.without_links(f.iter().copied()).unwrap();
            let g_fe = g_f.without_link(e).unwrap();
            if !common::connected(&g_fe) {
                continue;
            }
            let b1 = new_bridges(&g, &g.without_link(e).unwrap());
            let b2 = new_bridges(&g_f, &g_fe);
            prop_assert!(b1.iter().all(|l| b2.contains(l)), "{:?} not within {:?}", b1, b2);
        }
    }

    #[test]
    fn new_bridges_lie_on_every_cycle_through_the_link(seed in any::<u64>(), n in 3usize..=10) {
        let g = graph_from(seed, n);
        for e in g.links().filter(|&e| !common::is_bridge(&g, e)) {
            let rest = g.without_link(e).unwrap();
            let fresh = new_bridges(&g, &rest);
            // The shortest path closing e into a cycle.
            let (a, b) = e.endpoints();
            let path = shortest_path(&rest, a, b);
            let on_cycle: Vec<Link> = path.windows(2).map(|w| Link::new(w[0], w[1]).unwrap()).collect();
            prop_assert!(fresh.iter().all(|l| on_cycle.contains(l)));
        }
    }

    #[test]
    fn bypassing_a_path_pays_off(seed in any::<u64>(), n in 4usize..=12) {
        let g = graph_from(seed, n);
        let tree = bridge_tree(&g).unwrap();
        let simple = AdversaryKind::SimpleMinded;
        let before = distribution(&g, &simple).unwrap();
        let m1 = int(g.m() as i64 + 1);
        for path in tree.all_paths().filter(|path| !path.is_empty()) {
            let v = tree.label(path.first());
            let w = tree.label(path.last());
            let bypass = Link::new(v, w).unwrap();
            if g.has_link(bypass) {
                continue;
            }
            let h = g.with_link(bypass).unwrap();
            let after = distribution(&h, &simple).unwrap();
            let drop = indirect_cost(&g, v, &before).finite().unwrap() - indirect_cost(&h, v, &after).finite().unwrap();
            let bound = Rational::from_integer(path_relevance(&tree, &path, PathEnd::First).unwrap().into()) / &m1;
            prop_assert!(drop >= bound);
        }
    }
}

fn shortest_path(g: &Graph, from: anarchy_core::PlayerId, to: anarchy_core::PlayerId) -> Vec<anarchy_core::PlayerId> {
    let mut prev = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[from.idx()] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(a) = queue.pop_front() {
        for b in g.neighbors(a) {
            if !seen[b.idx()] {
                seen[b.idx()] = true;
                prev[b.idx()] = Some(a);
                queue.push_back(b);
            }
        }
    }
    let mut out = vec![to];
    while let Some(a) = prev[out.last().unwrap().idx()] {
        out.push(a);
    }
    out
}

#[test]
fn becoming_bridges_exhaustive_small() {
    for n in 3..=5 {
        for g in common::connected_graphs(n) {
            for v in g.players() {
                let inc: Vec<Link> = g.neighbors(v).map(|w| Link::new(v, w).unwrap()).collect();
                for &e in &inc {
                    let others: Vec<Link> = inc.iter().copied().filter(|&l| l != e).collect();
                    let g_e = g.without_link(e).unwrap();
                    if !common::connected(&g_e) {
                        continue;
                    }
                    let b1 = new_bridges(&g, &g_e);
                    for mask in 0u32..1 << others.len() {
                        let g_f = g
                            .without_links((0..others.len()).filter(|&i| mask >> i & 1 == 1).map(|i| others[i]))
                            .unwrap();
                        let g_fe = g_f.without_link(e).unwrap();
                        if common::connected(&g_fe) {
                            let b2 = new_bridges(&g_f, &g_fe);
                            assert!(b1.iter().all(|l| b2.contains(l)));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn relevance_examples() {
    let path = Graph::from_pairs(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
    let mut count = 0;
    for e in path.links() {
        for v in path.players() {
            assert_eq!(relevance(&path, e, v).unwrap(), relevance_naive(&path, e, v).unwrap());
            count += 1;
        }
    }
    assert_eq!(count, 12);
    let c5 = fixtures::cycle(5).unwrap();
    assert!(c5
        .links()
        .all(|e| c5.players().all(|v| relevance(&c5, e, v).unwrap() == 0)));
    let s5 = fixtures::star(5).unwrap();
    assert_eq!(relevance(&s5, Link::from_pair(1, 2).unwrap(), p(2)).unwrap(), 4);
    assert_eq!(relevance(&s5, Link::from_pair(1, 2).unwrap(), p(3)).unwrap(), 1);
    let seps: Vec<u64> = path.links().map(|e| separation(&path, e).unwrap().sep).collect();
    assert_eq!(seps, vec![6, 8, 6]);
    assert_eq!(total_separation(&path).unwrap(), 20);
}

#[test]
fn showcase_tree() {
    let g = fixtures::bridge_tree_showcase();
    let tree = bridge_tree(&g).unwrap();
    assert_eq!(tree_diameter(&tree), 8);
    assert_eq!(tree.weights().iter().sum::<u64>(), 22);
    assert!(relevance(
        &Graph::from_pairs(4, &[(1, 2), (3, 4)]).unwrap(),
        Link::from_pair(1, 2).unwrap(),
        p(1)
    )
    .is_err());
}
