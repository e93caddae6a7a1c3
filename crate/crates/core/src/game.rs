//! Players, strategy profiles, link formation rules and the built graph.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::adversary::AdversaryKind;
use crate::error::{Error, Result};
use crate::Rational;

/// A player, numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(u32);

impl PlayerId {
    pub fn new(index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::PlayerOutOfRange { player: 0, n: 0 });
        }
        Ok(PlayerId(index))
    }

    /// Validates `index` against a player count.
    pub fn checked(index: u32, n: usize) -> Result<Self> {
        if index == 0 || index as usize > n {
            return Err(Error::PlayerOutOfRange { player: index, n });
        }
        Ok(PlayerId(index))
    }

    /// Player for a zero-based vertex index.
    pub fn from_idx(idx: usize) -> Self {
        PlayerId(idx as u32 + 1)
    }

    /// The one-based number.
    pub fn get(self) -> u32 {
        self.0
    }

    /// The zero-based vertex index.
    pub fn idx(self) -> usize {
        self.0 as usize - 1
    }

    pub(crate) fn ensure_within(self, n: usize) -> Result<()> {
        if self.idx() >= n {
            return Err(Error::PlayerOutOfRange { player: self.0, n });
        }
        Ok(())
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An unordered pair of distinct players. Stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Link {
    lo: PlayerId,
    hi: PlayerId,
}

impl Link {
    pub fn new(v: PlayerId, w: PlayerId) -> Result<Self> {
        match v.cmp(&w) {
            std::cmp::Ordering::Less => Ok(Link { lo: v, hi: w }),
            std::cmp::Ordering::Greater => Ok(Link { lo: w, hi: v }),
            std::cmp::Ordering::Equal => Err(Error::SelfLink(v.get())),
        }
    }

    /// Builds a link from one-based numbers.
    pub fn from_pair(v: u32, w: u32) -> Result<Self> {
        Link::new(PlayerId::new(v)?, PlayerId::new(w)?)
    }

    pub(crate) fn from_idx(a: usize, b: usize) -> Self {
        debug_assert_ne!(a, b);
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Link {
            lo: PlayerId::from_idx(a),
            hi: PlayerId::from_idx(b),
        }
    }

    pub fn endpoints(self) -> (PlayerId, PlayerId) {
        (self.lo, self.hi)
    }

    pub fn contains(self, v: PlayerId) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint.
    pub fn other(self, v: PlayerId) -> Option<PlayerId> {
        if v == self.lo {
            Some(self.hi)
        } else if v == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }

    pub(crate) fn idx_pair(self) -> (usize, usize) {
        (self.lo.idx(), self.hi.idx())
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl FromStr for Link {
    type Err = Error;

    /// Parses the `v-w` key form.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("link key {s:?} is not of the form v-w")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("link key {s:?} has a non-numeric endpoint")))
        };
        Link::from_pair(parse(a)?, parse(b)?)
    }
}

/// How requests turn into links.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormationRule {
    /// One request suffices.
    Unilateral,
    /// Both endpoints must request.
    Bilateral,
}

impl fmt::Display for FormationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormationRule::Unilateral => f.write_str("ULF"),
            FormationRule::Bilateral => f.write_str("BLF"),
        }
    }
}

/// A simple undirected graph on players `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from links; repeated links collapse.
    pub fn from_links<I>(n: usize, links: I) -> Result<Self>
    where
        I: IntoIterator<Item = Link>,
    {
        let mut g = Graph::empty(n);
        for link in links {
            link.lo.ensure_within(n)?;
            link.hi.ensure_within(n)?;
            g.insert(link.lo.idx(), link.hi.idx());
        }
        Ok(g)
    }

    /// Builds a graph from one-based endpoint pairs.
    pub fn from_pairs(n: usize, pairs: &[(u32, u32)]) -> Result<Self> {
        let links = pairs
            .iter()
            .map(|&(v, w)| Link::from_pair(v, w))
            .collect::<Result<Vec<_>>>()?;
        Graph::from_links(n, links)
    }

    /// Graph whose links are the set bits of `mask`, pairs ordered
    /// lexicographically: (1,2), (1,3), ..., (1,n), (2,3), ...
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for a in 0..n {
            for b in a + 1..n {
                if mask >> bit & 1 == 1 {
                    g.insert(a, b);
                }
                bit += 1;
            }
        }
        g
    }

    /// Inverse of [`Graph::from_pair_mask`]; requires `n <= 11`.
    pub fn pair_mask(&self) -> u64 {
        let n = self.n();
        assert!(n * n.saturating_sub(1) / 2 <= 64, "pair mask needs n <= 11");
        let mut mask = 0u64;
        let mut bit = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.has_idx(a, b) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of links.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Links in ascending order.
    pub fn links(&self) -> impl Iterator<Item = Link> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, nbrs)| nbrs.iter().filter(move |&&b| b > a).map(move |&b| Link::from_idx(a, b)))
    }

    /// Pairs that are not links, in ascending order.
    pub fn absent_links(&self) -> impl Iterator<Item = Link> + '_ {
        let n = self.n();
        (0..n).flat_map(move |a| {
            (a + 1..n)
                .filter(move |&b| !self.has_idx(a, b))
                .map(move |b| Link::from_idx(a, b))
        })
    }

    pub fn has_link(&self, link: Link) -> bool {
        let (a, b) = link.idx_pair();
        b < self.n() && self.has_idx(a, b)
    }

    pub fn degree(&self, v: PlayerId) -> usize {
        self.adj[v.idx()].len()
    }

    pub fn neighbors(&self, v: PlayerId) -> impl Iterator<Item = PlayerId> + '_ {
        self.adj[v.idx()].iter().map(|&i| PlayerId::from_idx(i))
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> {
        (0..self.n()).map(PlayerId::from_idx)
    }

    pub fn with_link(&self, link: Link) -> Result<Self> {
        link.hi.ensure_within(self.n())?;
        let mut g = self.clone();
        let (a, b) = link.idx_pair();
        g.insert(a, b);
        Ok(g)
    }

    pub fn without_link(&self, link: Link) -> Result<Self> {
        self.without_links(std::iter::once(link))
    }

    /// Removes every given link; each must be present.
    pub fn without_links<I>(&self, links: I) -> Result<Self>
    where
        I: IntoIterator<Item = Link>,
    {
        let mut g = self.clone();
        for link in links {
            if !g.has_link(link) {
                return Err(Error::MissingLink(link));
            }
            let (a, b) = link.idx_pair();
            g.remove(a, b);
        }
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        self.reachable_from(0, None).iter().all(|&r| r)
    }

    pub(crate) fn idx_neighbors(&self, a: usize) -> &[usize] {
        &self.adj[a]
    }

    pub(crate) fn has_idx(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Breadth-first reachability from `start`, optionally ignoring one link.
    pub(crate) fn reachable_from(&self, start: usize, skip: Option<(usize, usize)>) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(a) = queue.pop_front() {
            for &b in &self.adj[a] {
                if seen[b] {
                    continue;
                }
                if let Some((x, y)) = skip {
                    if (a, b) == (x, y) || (a, b) == (y, x) {
                        continue;
                    }
                }
                seen[b] = true;
                queue.push_back(b);
            }
        }
        seen
    }

    pub(crate) fn insert(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b);
        if let Err(pos) = self.adj[a].binary_search(&b) {
            self.adj[a].insert(pos, b);
            let pos = self.adj[b].binary_search(&a).unwrap_err();
            self.adj[b].insert(pos, a);
            self.m += 1;
        }
    }

    pub(crate) fn remove(&mut self, a: usize, b: usize) {
        if let Ok(pos) = self.adj[a].binary_search(&b) {
            self.adj[a].remove(pos);
            let pos = self.adj[b].binary_search(&a).unwrap();
            self.adj[b].remove(pos);
            self.m -= 1;
        }
    }
}

/// An `n x n` binary request matrix. Diagonal entries are always 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrategyProfile {
    n: usize,
    requests: Vec<bool>,
}

impl StrategyProfile {
    pub const MIN_PLAYERS: usize = 3;

    /// The all-zeros profile.
    pub fn new(n: usize) -> Result<Self> {
        if n < Self::MIN_PLAYERS {
            return Err(Error::TooFewPlayers {
                n,
                min: Self::MIN_PLAYERS,
            });
        }
        Ok(StrategyProfile {
            n,
            requests: vec![false; n * n],
        })
    }

    /// Builds a profile from rows of 0/1 entries; the diagonal is ignored.
    pub fn from_matrix(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut s = StrategyProfile::new(n)?;
        for (v, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (w, &bit) in row.iter().enumerate() {
                match bit {
                    0 => {}
                    1 if v != w => s.requests[v * n + w] = true,
                    1 => {}
                    _ => return Err(Error::Parse(format!("entry ({}, {}) is {bit}, not 0/1", v + 1, w + 1))),
                }
            }
        }
        Ok(s)
    }

    /// The essential bilateral profile building `g`: both endpoints request every link.
    pub fn canonical_bilateral(g: &Graph) -> Result<Self> {
        let mut s = StrategyProfile::new(g.n())?;
        for link in g.links() {
            let (a, b) = link.idx_pair();
            s.set_idx(a, b, true);
            s.set_idx(b, a, true);
        }
        Ok(s)
    }

    /// A unilateral profile from `(owner, other)` pairs; each pair is one request.
    pub fn from_requests(n: usize, requests: &[(u32, u32)]) -> Result<Self> {
        let mut s = StrategyProfile::new(n)?;
        for &(v, w) in requests {
            let v = PlayerId::checked(v, n)?;
            let w = PlayerId::checked(w, n)?;
            if v == w {
                return Err(Error::SelfLink(v.get()));
            }
            s.set_idx(v.idx(), w.idx(), true);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, v: PlayerId, w: PlayerId) -> bool {
        self.get_idx(v.idx(), w.idx())
    }

    /// `‖S_v‖₁`, the number of requests issued by `v`.
    pub fn request_count(&self, v: PlayerId) -> usize {
        self.row_idx(v.idx()).iter().filter(|&&b| b).count()
    }

    /// Targets requested by `v`, ascending.
    pub fn requests_of(&self, v: PlayerId) -> Vec<PlayerId> {
        self.row_idx(v.idx())
            .iter()
            .enumerate()
            .filter(|&(_, &b)| b)
            .map(|(w, _)| PlayerId::from_idx(w))
            .collect()
    }

    /// All `(requester, target)` pairs in row-major order.
    pub fn requests(&self) -> impl Iterator<Item = (PlayerId, PlayerId)> + '_ {
        self.requests
            .iter()
            .enumerate()
            .filter(|&(_, &b)| b)
            .map(|(k, _)| (PlayerId::from_idx(k / self.n), PlayerId::from_idx(k % self.n)))
    }

    /// Replaces `v`'s row by the requests in `targets`.
    pub fn with_row(&self, v: PlayerId, targets: &[PlayerId]) -> Result<Self> {
        v.ensure_within(self.n)?;
        let mut s = self.clone();
        let start = v.idx() * self.n;
        s.requests[start..start + self.n].fill(false);
        for &w in targets {
            w.ensure_within(self.n)?;
            if w != v {
                s.set_idx(v.idx(), w.idx(), true);
            }
        }
        Ok(s)
    }

    pub(crate) fn get_idx(&self, a: usize, b: usize) -> bool {
        self.requests[a * self.n + b]
    }

    pub(crate) fn set_idx(&mut self, a: usize, b: usize, bit: bool) {
        if a != b {
            self.requests[a * self.n + b] = bit;
        }
    }

    fn row_idx(&self, a: usize) -> &[bool] {
        &self.requests[a * self.n..(a + 1) * self.n]
    }
}

/// Link cost, formation rule and adversary of one game instance.
#[derive(Debug, Clone, PartialEq)]
pub struct GameParams {
    pub n: usize,
    pub alpha: Rational,
    pub rule: FormationRule,
    pub adversary: AdversaryKind,
}

impl GameParams {
    pub fn new(n: usize, alpha: Rational, rule: FormationRule, adversary: AdversaryKind) -> Result<Self> {
        if n < StrategyProfile::MIN_PLAYERS {
            return Err(Error::TooFewPlayers {
                n,
                min: StrategyProfile::MIN_PLAYERS,
            });
        }
        if !alpha.is_positive() {
            return Err(Error::NonPositiveAlpha(alpha.to_string()));
        }
        Ok(GameParams {
            n,
            alpha,
            rule,
            adversary,
        })
    }

    /// Bilateral game, the common case.
    pub fn bilateral(n: usize, alpha: Rational, adversary: AdversaryKind) -> Result<Self> {
        GameParams::new(n, alpha, FormationRule::Bilateral, adversary)
    }

    pub fn unilateral(n: usize, alpha: Rational, adversary: AdversaryKind) -> Result<Self> {
        GameParams::new(n, alpha, FormationRule::Unilateral, adversary)
    }
}

/// The graph built from `s` under `rule`.
pub fn build_graph(s: &StrategyProfile, rule: FormationRule) -> Graph {
    let n = s.n();
    let mut g = Graph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            let (ab, ba) = (s.get_idx(a, b), s.get_idx(b, a));
            let built = match rule {
                FormationRule::Unilateral => ab || ba,
                FormationRule::Bilateral => ab && ba,
            };
            if built {
                g.insert(a, b);
            }
        }
    }
    g
}

/// Whether `s` wastes no requests under `rule`.
pub fn is_essential(s: &StrategyProfile, rule: FormationRule) -> bool {
    let n = s.n();
    (0..n).all(|a| {
        (0..n).filter(|&b| b != a && s.get_idx(a, b)).all(|b| match rule {
            FormationRule::Unilateral => !s.get_idx(b, a),
            FormationRule::Bilateral => s.get_idx(b, a),
        })
    })
}

/// `S+vw` (bit = true) or `S-vw` (bit = false).
pub fn edit_profile(s: &StrategyProfile, v: PlayerId, w: PlayerId, bit: bool) -> Result<StrategyProfile> {
    v.ensure_within(s.n())?;
    w.ensure_within(s.n())?;
    if v == w {
        return Err(Error::SelfLink(v.get()));
    }
    let mut out = s.clone();
    out.set_idx(v.idx(), w.idx(), bit);
    Ok(out)
}

/// Adds the missing counter-requests so that the bilateral graph equals the
/// unilateral graph of `s`.
pub fn bilateralize(s: &StrategyProfile) -> StrategyProfile {
    let n = s.n();
    let mut out = s.clone();
    for a in 0..n {
        for b in 0..n {
            if a != b && (s.get_idx(a, b) || s.get_idx(b, a)) {
                out.set_idx(a, b, true);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32) -> PlayerId {
        PlayerId::new(i).unwrap()
    }

    #[test]
    fn unilateral_vs_bilateral_build() {
        let s = StrategyProfile::from_requests(3, &[(1, 2)]).unwrap();
        let ulf = build_graph(&s, FormationRule::Unilateral);
        assert_eq!(ulf.links().collect::<Vec<_>>(), vec![Link::from_pair(1, 2).unwrap()]);
        assert_eq!(build_graph(&s, FormationRule::Bilateral).m(), 0);

        let zero = StrategyProfile::new(3).unwrap();
        assert_eq!(build_graph(&zero, FormationRule::Unilateral).m(), 0);
        assert_eq!(build_graph(&zero, FormationRule::Bilateral).m(), 0);
    }

    #[test]
    fn essentiality() {
        let both = StrategyProfile::from_requests(3, &[(1, 2), (2, 1)]).unwrap();
        assert!(!is_essential(&both, FormationRule::Unilateral));
        assert!(is_essential(&both, FormationRule::Bilateral));
        let zero = StrategyProfile::new(4).unwrap();
        assert!(is_essential(&zero, FormationRule::Unilateral));
        assert!(is_essential(&zero, FormationRule::Bilateral));
    }

    #[test]
    fn edits() {
        let zero = StrategyProfile::new(3).unwrap();
        let s = edit_profile(&zero, p(1), p(2), true).unwrap();
        assert_eq!(edit_profile(&s, p(1), p(2), false).unwrap(), zero);

        let s = edit_profile(&s, p(2), p(1), true).unwrap();
        let g = build_graph(&s, FormationRule::Bilateral);
        assert_eq!(g.links().collect::<Vec<_>>(), vec![Link::from_pair(1, 2).unwrap()]);

        let dropped = edit_profile(&s, p(1), p(2), false).unwrap();
        assert!(!dropped.get(p(1), p(2)));
        assert!(dropped.get(p(2), p(1)));

        assert_eq!(edit_profile(&zero, p(2), p(2), true), Err(Error::SelfLink(2)));
        assert!(edit_profile(&zero, p(1), p(4), true).is_err());
    }

    #[test]
    fn bilateralize_examples() {
        let s = StrategyProfile::from_requests(3, &[(1, 2)]).unwrap();
        let b = bilateralize(&s);
        assert!(b.get(p(1), p(2)) && b.get(p(2), p(1)));

        let zero = StrategyProfile::new(5).unwrap();
        assert_eq!(bilateralize(&zero), zero);

        let directed = StrategyProfile::from_requests(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
        let b = bilateralize(&directed);
        assert!(is_essential(&b, FormationRule::Bilateral));
        let cycle = Graph::from_pairs(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]).unwrap();
        assert_eq!(build_graph(&b, FormationRule::Bilateral), cycle);
    }

    #[test]
    fn pair_mask_round_trip() {
        let g = Graph::from_pairs(5, &[(1, 2), (2, 5), (3, 4)]).unwrap();
        assert_eq!(Graph::from_pair_mask(5, g.pair_mask()), g);
        assert_eq!(Graph::from_pair_mask(4, 0b1).links().next(), Link::from_pair(1, 2).ok());
    }

    #[test]
    fn link_keys() {
        let l: Link = "3-1".parse().unwrap();
        assert_eq!(l, Link::from_pair(1, 3).unwrap());
        assert_eq!(l.to_string(), "1-3");
        assert!("1-1".parse::<Link>().is_err());
        assert!("1_2".parse::<Link>().is_err());
    }

    #[test]
    fn params_validation() {
        use num_traits::Zero;
        assert!(GameParams::bilateral(3, Rational::zero(), AdversaryKind::SimpleMinded).is_err());
        assert!(GameParams::bilateral(2, Rational::from_integer(1.into()), AdversaryKind::SimpleMinded).is_err());
    }
}
