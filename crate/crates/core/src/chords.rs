//! Chords: links joining two players that already share a cycle without them.

use crate::game::{Graph, Link};

/// Vertex sets of the biconnected blocks of `g` (iterative Tarjan).
fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        frames.push((root, UNSEEN, 0));
        while let Some(top) = frames.last_mut() {
            let (a, parent, pos) = *top;
            let nbrs = g.idx_neighbors(a);
            if pos < nbrs.len() {
                top.2 += 1;
                let b = nbrs[pos];
                if disc[b] == UNSEEN {
                    edges.push((a, b));
                    disc[b] = time;
                    low[b] = time;
                    time += 1;
                    frames.push((b, a, 0));
                } else if b != parent && disc[b] < disc[a] {
                    edges.push((a, b));
                    low[a] = low[a].min(disc[b]);
                }
            } else {
                frames.pop();
                if parent == UNSEEN {
                    continue;
                }
                low[parent] = low[parent].min(low[a]);
                if low[a] >= disc[parent] {
                    let mut block = Vec::new();
                    while let Some((x, y)) = edges.pop() {
                        block.push(x);
                        block.push(y);
                        if (x, y) == (parent, a) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    out.push(block);
                }
            }
        }
    }
    out
}

/// Whether the non-adjacent players `a` and `b` lie on a common cycle of `g`.
fn share_cycle(g: &Graph, a: usize, b: usize) -> bool {
    blocks(g)
        .iter()
        .any(|blk| blk.len() >= 3 && blk.binary_search(&a).is_ok() && blk.binary_search(&b).is_ok())
}

/// Links whose endpoints lie on a common cycle not using the link.
pub fn chords(g: &Graph) -> Vec<Link> {
    g.links()
        .filter(|&e| {
            let (a, b) = e.idx_pair();
            let mut rest = g.clone();
            rest.remove(a, b);
            share_cycle(&rest, a, b)
        })
        .collect()
}

pub fn is_chord_free(g: &Graph) -> bool {
    g.links().all(|e| {
        let (a, b) = e.idx_pair();
        let mut rest = g.clone();
        rest.remove(a, b);
        !share_cycle(&rest, a, b)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bridge_tree_showcase, cycle, star};

    #[test]
    fn plain_shapes_are_chord_free() {
        assert!(is_chord_free(&cycle(7).unwrap()));
        assert!(is_chord_free(&star(7).unwrap()));
        let two_triangles = Graph::from_pairs(5, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(is_chord_free(&two_triangles));
    }

    #[test]
    fn chord_of_a_square() {
        let g = Graph::from_pairs(4, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]).unwrap();
        // Every link of K4 minus one link lies on a cycle with a chord, but only
        // 1-3 is itself a chord: 1-2-3-4 is a cycle avoiding it.
        assert_eq!(chords(&g), vec![Link::from_pair(1, 3).unwrap()]);
        assert!(!is_chord_free(&g));
    }

    #[test]
    fn theta_graph_has_chords() {
        // The showcase's 7-vertex block is a 6-cycle with a two-link ear; no link
        // is a chord because the ear adds a vertex.
        assert!(is_chord_free(&bridge_tree_showcase()));
        let k4 = Graph::from_pairs(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(chords(&k4).len(), 6);
    }
}
