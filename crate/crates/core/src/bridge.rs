//! Bridges, bridgeless components and the bridge tree.
//!
//! Every quantity here presupposes a connected graph. A link's relevance
//! for a player is the number of players reachable from her only through
//! that link; it is nonzero exactly for bridges, and it equals the weight
//! of the far side of the corresponding bridge-tree link.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::game::{Graph, Link, PlayerId};

/// Bridges of any graph (connected or not), as zero-based `(lo, hi)` pairs.
///
/// Iterative depth-first search with low-link values.
pub(crate) fn bridge_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut time = 0;
    // (vertex, parent, next neighbor position)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, UNSEEN, 0));
        while let Some(top) = stack.last_mut() {
            let (a, parent, pos) = *top;
            let nbrs = g.idx_neighbors(a);
            if pos < nbrs.len() {
                top.2 += 1;
                let b = nbrs[pos];
                if disc[b] == UNSEEN {
                    disc[b] = time;
                    low[b] = time;
                    time += 1;
                    stack.push((b, a, 0));
                } else if b != parent {
                    low[a] = low[a].min(disc[b]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[a]);
                    if low[a] > disc[parent] {
                        out.push((parent.min(a), parent.max(a)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn ensure_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

fn ensure_link(g: &Graph, e: Link) -> Result<()> {
    if g.has_link(e) {
        Ok(())
    } else {
        Err(Error::MissingLink(e))
    }
}

/// The links lying on no cycle.
pub fn bridges(g: &Graph) -> Result<BTreeSet<Link>> {
    ensure_connected(g)?;
    Ok(bridge_pairs(g).into_iter().map(|(a, b)| Link::from_idx(a, b)).collect())
}

/// Index of a bridge-tree node. Nodes are numbered by their smallest member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

/// A bridge-tree link together with the bridge it stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeLink {
    pub a: NodeId,
    pub b: NodeId,
    pub bridge: Link,
}

/// The contraction of a connected graph by its bridgeless components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeTree {
    n: usize,
    nodes: Vec<Vec<PlayerId>>,
    kappa: Vec<usize>,
    links: Vec<TreeLink>,
    adj: Vec<Vec<(usize, usize)>>,
    // Rooted at node 0: for link t the child endpoint, its subtree weight,
    // and Euler-tour intervals to decide subtree membership.
    child: Vec<usize>,
    subtree: Vec<u64>,
    tin: Vec<usize>,
    tout: Vec<usize>,
}

/// Which end of a path a relevance sum is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathEnd {
    First,
    Last,
}

/// A simple path in a bridge tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePath {
    nodes: Vec<NodeId>,
    links: Vec<usize>,
}

impl TreePath {
    /// Validates a node sequence against `tree`.
    pub fn new(tree: &BridgeTree, nodes: Vec<NodeId>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidPath("a path needs at least one node".into()));
        }
        if let Some(bad) = nodes.iter().find(|id| id.0 >= tree.node_count()) {
            return Err(Error::InvalidPath(format!("node {} does not exist", bad.0)));
        }
        let mut seen = vec![false; tree.node_count()];
        for id in &nodes {
            if std::mem::replace(&mut seen[id.0], true) {
                return Err(Error::InvalidPath(format!("node {} repeats", id.0)));
            }
        }
        let links = nodes
            .windows(2)
            .map(|w| {
                tree.link_between(w[0], w[1])
                    .ok_or_else(|| Error::InvalidPath(format!("nodes {} and {} are not adjacent", w[0].0, w[1].0)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TreePath { nodes, links })
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Indices of the traversed tree links, in order.
    pub fn links(&self) -> &[usize] {
        &self.links
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn first(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn last(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }
}

impl BridgeTree {
    /// Total number of players, i.e. the sum of all node weights.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Members of a node, ascending.
    pub fn members(&self, node: NodeId) -> &[PlayerId] {
        &self.nodes[node.0]
    }

    /// Smallest member, which identifies the node.
    pub fn label(&self, node: NodeId) -> PlayerId {
        self.nodes[node.0][0]
    }

    pub fn weight(&self, node: NodeId) -> u64 {
        self.nodes[node.0].len() as u64
    }

    pub fn weights(&self) -> Vec<u64> {
        self.nodes.iter().map(|c| c.len() as u64).collect()
    }

    /// The node containing `v`.
    pub fn kappa(&self, v: PlayerId) -> NodeId {
        NodeId(self.kappa[v.idx()])
    }

    pub fn tree_links(&self) -> &[TreeLink] {
        &self.links
    }

    /// Tree link standing for `bridge`, if it is one.
    pub fn tree_link_of(&self, bridge: Link) -> Option<usize> {
        self.links.binary_search_by(|t| t.bridge.cmp(&bridge)).ok()
    }

    pub fn neighbors(&self, node: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj[node.0].iter().map(|&(b, _)| NodeId(b))
    }

    fn link_between(&self, a: NodeId, b: NodeId) -> Option<usize> {
        self.adj[a.0].iter().find(|&&(x, _)| x == b.0).map(|&(_, t)| t)
    }

    fn in_subtree(&self, node: usize, root: usize) -> bool {
        self.tin[root] <= self.tin[node] && self.tout[node] <= self.tout[root]
    }

    /// Weight on the side of tree link `t` that does not contain `node`.
    pub fn far_weight(&self, t: usize, node: NodeId) -> u64 {
        let c = self.child[t];
        if self.in_subtree(node.0, c) {
            self.n as u64 - self.subtree[c]
        } else {
            self.subtree[c]
        }
    }

    /// `ν` of the bridge behind tree link `t`: the smaller side's weight.
    pub fn nu(&self, t: usize) -> u64 {
        let side = self.subtree[self.child[t]];
        side.min(self.n as u64 - side)
    }

    /// Separation of the bridge behind tree link `t`.
    pub fn sep(&self, t: usize) -> u64 {
        let nu = self.nu(t);
        2 * nu * (self.n as u64 - nu)
    }

    /// `R(v)`: the sum of all relevances for `v`.
    pub fn relevance_sum(&self, v: PlayerId) -> u64 {
        let node = self.kappa(v);
        (0..self.links.len()).map(|t| self.far_weight(t, node)).sum()
    }

    /// The unique path between two nodes.
    pub fn path(&self, from: NodeId, to: NodeId) -> TreePath {
        let k = self.node_count();
        let mut prev = vec![usize::MAX; k];
        prev[from.0] = from.0;
        let mut queue = VecDeque::from([from.0]);
        while let Some(a) = queue.pop_front() {
            if a == to.0 {
                break;
            }
            for &(b, _) in &self.adj[a] {
                if prev[b] == usize::MAX {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        let mut nodes = vec![to];
        let mut cur = to.0;
        while cur != from.0 {
            cur = prev[cur];
            nodes.push(NodeId(cur));
        }
        nodes.reverse();
        let links = nodes
            .windows(2)
            .map(|w| self.link_between(w[0], w[1]).expect("tree path"))
            .collect();
        TreePath { nodes, links }
    }

    /// Every path between two distinct nodes, each unordered pair once.
    pub fn all_paths(&self) -> impl Iterator<Item = TreePath> + '_ {
        let k = self.node_count();
        (0..k).flat_map(move |a| (a + 1..k).map(move |b| self.path(NodeId(a), NodeId(b))))
    }

    fn build(g: &Graph) -> Self {
        let n = g.n();
        let bridge_list = bridge_pairs(g);
        let is_bridge = |a: usize, b: usize| bridge_list.binary_search(&(a.min(b), a.max(b))).is_ok();

        // Components in order of their smallest member.
        const NONE: usize = usize::MAX;
        let mut kappa = vec![NONE; n];
        let mut nodes: Vec<Vec<PlayerId>> = Vec::new();
        for start in 0..n {
            if kappa[start] != NONE {
                continue;
            }
            let id = nodes.len();
            let mut members = vec![start];
            kappa[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                for &b in g.idx_neighbors(a) {
                    if kappa[b] == NONE && !is_bridge(a, b) {
                        kappa[b] = id;
                        members.push(b);
                        queue.push_back(b);
                    }
                }
            }
            members.sort_unstable();
            nodes.push(members.into_iter().map(PlayerId::from_idx).collect());
        }

        let k = nodes.len();
        let mut links: Vec<TreeLink> = bridge_list
            .iter()
            .map(|&(a, b)| {
                let (ka, kb) = (kappa[a], kappa[b]);
                TreeLink {
                    a: NodeId(ka.min(kb)),
                    b: NodeId(ka.max(kb)),
                    bridge: Link::from_idx(a, b),
                }
            })
            .collect();
        links.sort_by_key(|t| t.bridge);
        let mut adj = vec![Vec::new(); k];
        for (t, l) in links.iter().enumerate() {
            adj[l.a.0].push((l.b.0, t));
            adj[l.b.0].push((l.a.0, t));
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        // Root at node 0 (iterative DFS for Euler intervals and subtree weights).
        let mut child = vec![0; links.len()];
        let mut subtree: Vec<u64> = nodes.iter().map(|c| c.len() as u64).collect();
        let mut tin = vec![0; k];
        let mut tout = vec![0; k];
        let mut parent = vec![NONE; k];
        let mut clock = 0;
        if k > 0 {
            let mut stack = vec![(0usize, 0usize)];
            parent[0] = 0;
            tin[0] = clock;
            clock += 1;
            while let Some(top) = stack.last_mut() {
                let (a, pos) = *top;
                if pos < adj[a].len() {
                    top.1 += 1;
                    let (b, t) = adj[a][pos];
                    if parent[b] == NONE {
                        parent[b] = a;
                        child[t] = b;
                        tin[b] = clock;
                        clock += 1;
                        stack.push((b, 0));
                    }
                } else {
                    stack.pop();
                    tout[a] = clock;
                    clock += 1;
                    if a != 0 {
                        subtree[parent[a]] += subtree[a];
                    }
                }
            }
        }

        BridgeTree {
            n,
            nodes,
            kappa,
            links,
            adj,
            child,
            subtree,
            tin,
            tout,
        }
    }
}

/// Contracts every bridgeless component of a connected graph.
pub fn bridge_tree(g: &Graph) -> Result<BridgeTree> {
    ensure_connected(g)?;
    Ok(BridgeTree::build(g))
}

/// `rel(e, v)`: players reachable from `v` only via `e`.
pub fn relevance(g: &Graph, e: Link, v: PlayerId) -> Result<u64> {
    let tree = bridge_tree(g)?;
    ensure_link(g, e)?;
    ensure_player(g, v)?;
    Ok(match tree.tree_link_of(e) {
        Some(t) => tree.far_weight(t, tree.kappa(v)),
        None => 0,
    })
}

/// `R(v)`, the sum of `rel(e, v)` over all links.
pub fn relevance_sum(g: &Graph, v: PlayerId) -> Result<u64> {
    let tree = bridge_tree(g)?;
    ensure_player(g, v)?;
    Ok(tree.relevance_sum(v))
}

/// `ν(e)` and `sep(e) = 2ν(e)(n − ν(e))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Separation {
    pub nu: u64,
    pub sep: u64,
}

pub fn separation(g: &Graph, e: Link) -> Result<Separation> {
    let tree = bridge_tree(g)?;
    ensure_link(g, e)?;
    Ok(match tree.tree_link_of(e) {
        Some(t) => Separation {
            nu: tree.nu(t),
            sep: tree.sep(t),
        },
        None => Separation { nu: 0, sep: 0 },
    })
}

/// Sum of `sep(e)` over all links.
pub fn total_separation(g: &Graph) -> Result<u64> {
    let tree = bridge_tree(g)?;
    Ok((0..tree.tree_links().len()).map(|t| tree.sep(t)).sum())
}

/// Number of tree links on a longest path.
pub fn tree_diameter(tree: &BridgeTree) -> usize {
    fn farthest(tree: &BridgeTree, from: usize) -> (usize, usize) {
        let mut dist = vec![usize::MAX; tree.node_count()];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        let mut best = (from, 0);
        while let Some(a) = queue.pop_front() {
            if dist[a] > best.1 {
                best = (a, dist[a]);
            }
            for b in tree.neighbors(NodeId(a)) {
                if dist[b.0] == usize::MAX {
                    dist[b.0] = dist[a] + 1;
                    queue.push_back(b.0);
                }
            }
        }
        best
    }
    if tree.node_count() == 0 {
        return 0;
    }
    let (end, _) = farthest(tree, 0);
    farthest(tree, end).1
}

/// `rel(P, x)` where `x` is the chosen end node of `P`.
pub fn path_relevance(tree: &BridgeTree, path: &TreePath, end: PathEnd) -> Result<u64> {
    // Re-validate: the path may stem from another tree.
    let checked = TreePath::new(tree, path.nodes.clone())?;
    let from = match end {
        PathEnd::First => checked.first(),
        PathEnd::Last => checked.last(),
    };
    Ok(checked.links.iter().map(|&t| tree.far_weight(t, from)).sum())
}

/// Relevance by definition: delete `e` and count players `v` can no longer reach.
pub fn relevance_naive(g: &Graph, e: Link, v: PlayerId) -> Result<u64> {
    ensure_connected(g)?;
    ensure_link(g, e)?;
    ensure_player(g, v)?;
    let seen = g.reachable_from(v.idx(), Some(e.idx_pair()));
    Ok(seen.iter().filter(|&&r| !r).count() as u64)
}

fn ensure_player(g: &Graph, v: PlayerId) -> Result<()> {
    if v.idx() < g.n() {
        Ok(())
    } else {
        Err(Error::PlayerOutOfRange {
            player: v.get(),
            n: g.n(),
        })
    }
}
