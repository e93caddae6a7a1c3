//! Independent reference implementations used only by tests. They recompute
//! everything from plain reachability and never touch the bridge tree.

#![allow(dead_code)]

use std::collections::VecDeque;

use anarchy_core::{AdversaryKind, Graph, Link, PlayerId, Rational};

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn int(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

pub fn p(i: u32) -> PlayerId {
    PlayerId::new(i).unwrap()
}

/// Players reachable from `v` when `skip` is deleted.
pub fn reach(g: &Graph, v: PlayerId, skip: Option<Link>) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    seen[v.idx()] = true;
    let mut queue = VecDeque::from([v]);
    while let Some(a) = queue.pop_front() {
        for b in g.neighbors(a) {
            if skip == Some(Link::new(a, b).unwrap()) || seen[b.idx()] {
                continue;
            }
            seen[b.idx()] = true;
            queue.push_back(b);
        }
    }
    seen
}

pub fn connected(g: &Graph) -> bool {
    reach(g, p(1), None).iter().all(|&b| b)
}

/// Players cut off from `v` by deleting `e`.
pub fn rel(g: &Graph, e: Link, v: PlayerId) -> u64 {
    reach(g, v, Some(e)).iter().filter(|&&b| !b).count() as u64
}

/// Ordered pairs separated by deleting `e`.
pub fn sep(g: &Graph, e: Link) -> u64 {
    g.players().map(|v| rel(g, e, v)).sum()
}

pub fn is_bridge(g: &Graph, e: Link) -> bool {
    let (v, _) = e.endpoints();
    rel(g, e, v) > 0
}

pub fn bridge_set(g: &Graph) -> Vec<Link> {
    g.links().filter(|&e| is_bridge(g, e)).collect()
}

/// Destruction probabilities of the built-in adversaries, from scratch.
pub fn probs(g: &Graph, kind: &AdversaryKind) -> Vec<(Link, Rational)> {
    let links: Vec<Link> = g.links().collect();
    match kind {
        AdversaryKind::SimpleMinded => links.iter().map(|&e| (e, r(1, links.len() as i64))).collect(),
        AdversaryKind::Smart => {
            let seps: Vec<u64> = links.iter().map(|&e| sep(g, e)).collect();
            let max = *seps.iter().max().unwrap();
            let hits = seps.iter().filter(|&&s| s == max).count() as i64;
            links
                .iter()
                .zip(&seps)
                .map(|(&e, &s)| (e, if s == max { r(1, hits) } else { int(0) }))
                .collect()
        }
        AdversaryKind::Custom(_) => panic!("oracle covers the built-in adversaries only"),
    }
}

/// Disconnection cost of `v`; `None` stands for infinity.
pub fn indirect(g: &Graph, v: PlayerId, kind: &AdversaryKind) -> Option<Rational> {
    if !connected(g) {
        return None;
    }
    if g.m() == 0 {
        return Some(int(0));
    }
    Some(
        probs(g, kind)
            .into_iter()
            .map(|(e, q)| q * int(rel(g, e, v) as i64))
            .sum(),
    )
}

/// Cost of `v` in the essential bilateral profile of `g`.
pub fn blf_cost(g: &Graph, v: PlayerId, alpha: &Rational, kind: &AdversaryKind) -> Option<Rational> {
    indirect(g, v, kind).map(|i| i + alpha * int(g.degree(v) as i64))
}

pub fn blf_social(g: &Graph, alpha: &Rational, kind: &AdversaryKind) -> Option<Rational> {
    g.players().map(|v| blf_cost(g, v, alpha, kind)).sum()
}

fn le(a: &Option<Rational>, b: &Option<Rational>) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x <= y,
    }
}

fn lt(a: &Option<Rational>, b: &Option<Rational>) -> bool {
    le(a, b) && a != b
}

fn eq1_holds(g: &Graph, alpha: &Rational, kind: &AdversaryKind) -> bool {
    g.absent_links().all(|e| {
        let h = g.with_link(e).unwrap();
        let (v, w) = e.endpoints();
        let gain = |x| le(&blf_cost(&h, x, alpha, kind), &blf_cost(g, x, alpha, kind));
        !(gain(v) && gain(w))
    })
}

pub fn is_ps(g: &Graph, alpha: &Rational, kind: &AdversaryKind) -> bool {
    let removal_ok = g.links().all(|e| {
        let h = g.without_link(e).unwrap();
        let (v, w) = e.endpoints();
        [v, w]
            .iter()
            .all(|&x| !lt(&blf_cost(&h, x, alpha, kind), &blf_cost(g, x, alpha, kind)))
    });
    removal_ok && eq1_holds(g, alpha, kind)
}

pub fn is_pne(g: &Graph, alpha: &Rational, kind: &AdversaryKind) -> bool {
    let nash = g.players().all(|v| {
        let inc: Vec<Link> = g.neighbors(v).map(|w| Link::new(v, w).unwrap()).collect();
        (1u32..1 << inc.len()).all(|mask| {
            let h = g
                .without_links((0..inc.len()).filter(|&i| mask >> i & 1 == 1).map(|i| inc[i]))
                .unwrap();
            !lt(&blf_cost(&h, v, alpha, kind), &blf_cost(g, v, alpha, kind))
        })
    });
    nash && eq1_holds(g, alpha, kind)
}

/// Every labeled graph on `n` players, connected ones only.
pub fn connected_graphs(n: usize) -> impl Iterator<Item = Graph> {
    (0u64..1 << (n * (n - 1) / 2))
        .map(move |mask| Graph::from_pair_mask(n, mask))
        .filter(connected)
}
