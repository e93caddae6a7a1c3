//! Random connected graphs for property checks and the oracle suite.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::game::Graph;

/// A connected graph on `n` players: a random spanning tree plus every other
/// pair independently with probability `extra`.
pub fn random_connected_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, extra: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut g = Graph::empty(n);
    for i in 1..n {
        let j = rng.random_range(0..i);
        g.insert(order[i], order[j]);
    }
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_idx(a, b) && rng.random_bool(extra) {
                g.insert(a, b);
            }
        }
    }
    g
}

/// Like [`random_connected_graph`] with the density itself drawn at random,
/// so that trees, sparse and dense graphs all show up.
pub fn random_connected_graph_mixed<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    let extra = match rng.random_range(0..4) {
        0 => 0.0,
        1 => 0.05,
        2 => 0.2,
        _ => 0.5,
    };
    random_connected_graph(rng, n, extra)
}
