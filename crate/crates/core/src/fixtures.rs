//! Named constructions and the constants used by the stability bounds.
//!
//! Vertex numbering is fixed so that serialized fixtures are byte-stable:
//! - `cycle(n)`: `1-2-…-n-1`.
//! - `star(n)`: center `1`.
//! - `three_stars(n0)`: hub `1`, then the stars in decreasing size, each
//!   center followed by its leaves.
//! - `cycle_with_path(n, l)`: cycle on `1..=n-l`, tail `1-(n-l+1)-…-n`.
//! - `bridge_tree_showcase`: 4-cycle `a1..a4` = 1..4, block `b1..b8` = 5..12,
//!   `c1` = 13, `d1, d2` = 14, 15, triangle `e1..e3` = 16..18, `f1..f4` = 19..22.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::game::{build_graph, FormationRule, Graph, StrategyProfile};
use crate::Rational;

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidFixture(msg()))
    }
}

pub fn cycle(n: usize) -> Result<Graph> {
    need(n >= 3, || format!("cycle needs n >= 3, got {n}"))?;
    let pairs: Vec<(u32, u32)> = (1..=n as u32).map(|i| (i, i % n as u32 + 1)).collect();
    Graph::from_pairs(n, &pairs)
}

pub fn star(n: usize) -> Result<Graph> {
    need(n >= 3, || format!("star needs n >= 3, got {n}"))?;
    let pairs: Vec<(u32, u32)> = (2..=n as u32).map(|i| (1, i)).collect();
    Graph::from_pairs(n, &pairs)
}

/// Unilateral cycle with every link owned by its predecessor: `i` requests `i+1`.
pub fn directed_cycle_profile(n: usize) -> Result<StrategyProfile> {
    need(n >= 3, || format!("directed_cycle_profile needs n >= 3, got {n}"))?;
    let requests: Vec<(u32, u32)> = (1..=n as u32).map(|i| (i, i % n as u32 + 1)).collect();
    StrategyProfile::from_requests(n, &requests)
}

/// Unilateral star bought entirely by the center `1`.
pub fn star_outward_profile(n: usize) -> Result<StrategyProfile> {
    need(n >= 3, || format!("star_outward_profile needs n >= 3, got {n}"))?;
    let requests: Vec<(u32, u32)> = (2..=n as u32).map(|i| (1, i)).collect();
    StrategyProfile::from_requests(n, &requests)
}

/// Stars of sizes `n0`, `n0-1`, `n0-2` whose centers hang off a hub; `n = 3n0-2`.
pub fn three_stars(n0: usize) -> Result<Graph> {
    need(n0 >= 3, || format!("three_stars needs n0 >= 3, got {n0}"))?;
    let n = 3 * n0 - 2;
    let mut pairs = Vec::with_capacity(n - 1);
    let mut next = 2u32;
    for size in [n0, n0 - 1, n0 - 2] {
        let center = next;
        pairs.push((1, center));
        for leaf in center + 1..center + size as u32 {
            pairs.push((center, leaf));
        }
        next = center + size as u32;
    }
    Graph::from_pairs(n, &pairs)
}

/// A cycle on `n - tail` players with a path of `tail` links hanging off player 1.
pub fn cycle_with_path(n: usize, tail: usize) -> Result<Graph> {
    need(tail >= 1, || "cycle_with_path needs a tail of at least 1 link".into())?;
    need(n >= tail + 3, || {
        format!("cycle_with_path needs n >= tail + 3, got n={n}, tail={tail}")
    })?;
    let k = (n - tail) as u32;
    let mut pairs: Vec<(u32, u32)> = (1..=k).map(|i| (i, i % k + 1)).collect();
    let mut prev = 1;
    for v in k + 1..=n as u32 {
        pairs.push((prev, v));
        prev = v;
    }
    Graph::from_pairs(n, &pairs)
}

/// A 22-player graph exercising every bridge-tree feature: components of
/// sizes 4, 7 and 3, eight singleton components and ten bridges.
pub fn bridge_tree_showcase() -> Graph {
    const PAIRS: &[(u32, u32)] = &[
        // 4-cycle a1..a4
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 1),
        // block b2..b8 (b1 = 5 hangs between a1 and b7)
        (6, 7),
        (7, 8),
        (8, 9),
        (9, 10),
        (10, 11),
        (11, 6),
        (7, 12),
        (12, 10),
        // triangle e1..e3
        (16, 17),
        (17, 18),
        (18, 16),
        // bridges
        (1, 5),
        (5, 11),
        (6, 13),
        (4, 14),
        (14, 15),
        (10, 16),
        (8, 19),
        (19, 20),
        (20, 21),
        (21, 22),
    ];
    Graph::from_pairs(22, PAIRS).expect("static fixture")
}

/// A named construction with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureSpec {
    Cycle { n: usize },
    Star { n: usize },
    DirectedCycleProfile { n: usize },
    StarOutwardProfile { n: usize },
    ThreeStars { n0: usize },
    CycleWithPath { n: usize, tail: usize },
    BridgeTreeShowcase,
}

/// What a fixture produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    Graph(Graph),
    Profile {
        profile: StrategyProfile,
        rule: FormationRule,
    },
}

impl Fixture {
    /// The built graph.
    pub fn graph(&self) -> Graph {
        match self {
            Fixture::Graph(g) => g.clone(),
            Fixture::Profile { profile, rule } => build_graph(profile, *rule),
        }
    }
}

pub fn make_fixture(spec: FixtureSpec) -> Result<Fixture> {
    let unilateral = FormationRule::Unilateral;
    Ok(match spec {
        FixtureSpec::Cycle { n } => Fixture::Graph(cycle(n)?),
        FixtureSpec::Star { n } => Fixture::Graph(star(n)?),
        FixtureSpec::DirectedCycleProfile { n } => Fixture::Profile {
            profile: directed_cycle_profile(n)?,
            rule: unilateral,
        },
        FixtureSpec::StarOutwardProfile { n } => Fixture::Profile {
            profile: star_outward_profile(n)?,
            rule: unilateral,
        },
        FixtureSpec::ThreeStars { n0 } => Fixture::Graph(three_stars(n0)?),
        FixtureSpec::CycleWithPath { n, tail } => Fixture::Graph(cycle_with_path(n, tail)?),
        FixtureSpec::BridgeTreeShowcase => Fixture::Graph(bridge_tree_showcase()),
    })
}

impl FixtureSpec {
    pub fn name(&self) -> &'static str {
        match self {
            FixtureSpec::Cycle { .. } => "cycle",
            FixtureSpec::Star { .. } => "star",
            FixtureSpec::DirectedCycleProfile { .. } => "directed_cycle_profile",
            FixtureSpec::StarOutwardProfile { .. } => "star_outward_profile",
            FixtureSpec::ThreeStars { .. } => "three_stars",
            FixtureSpec::CycleWithPath { .. } => "cycle_with_path",
            FixtureSpec::BridgeTreeShowcase => "bridge_tree_showcase",
        }
    }
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FixtureSpec::Cycle { n }
            | FixtureSpec::Star { n }
            | FixtureSpec::DirectedCycleProfile { n }
            | FixtureSpec::StarOutwardProfile { n } => write!(f, "{}:{n}", self.name()),
            FixtureSpec::ThreeStars { n0 } => write!(f, "{}:{n0}", self.name()),
            FixtureSpec::CycleWithPath { n, tail } => write!(f, "{}:{n},{tail}", self.name()),
            FixtureSpec::BridgeTreeShowcase => f.write_str(self.name()),
        }
    }
}

impl FromStr for FixtureSpec {
    type Err = Error;

    /// Parses `name` or `name:p1,p2`, e.g. `cycle_with_path:16,4`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = match s.split_once(':') {
            Some((name, rest)) => (name, rest),
            None => (s, ""),
        };
        let params = params
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidFixture(format!("parameter {t:?} of {name} is not a count")))
            })
            .collect::<Result<Vec<_>>>()?;
        let arity = |k: usize| {
            need(params.len() == k, || {
                format!("{name} takes {k} parameter(s), got {}", params.len())
            })
        };
        Ok(match name {
            "cycle" => {
                arity(1)?;
                FixtureSpec::Cycle { n: params[0] }
            }
            "star" => {
                arity(1)?;
                FixtureSpec::Star { n: params[0] }
            }
            "directed_cycle_profile" => {
                arity(1)?;
                FixtureSpec::DirectedCycleProfile { n: params[0] }
            }
            "star_outward_profile" => {
                arity(1)?;
                FixtureSpec::StarOutwardProfile { n: params[0] }
            }
            "three_stars" => {
                arity(1)?;
                FixtureSpec::ThreeStars { n0: params[0] }
            }
            "cycle_with_path" => {
                arity(2)?;
                FixtureSpec::CycleWithPath {
                    n: params[0],
                    tail: params[1],
                }
            }
            "bridge_tree_showcase" | "appendix_c_graph" => {
                arity(0)?;
                FixtureSpec::BridgeTreeShowcase
            }
            other => return Err(Error::InvalidFixture(format!("unknown fixture {other:?}"))),
        })
    }
}

/// Constants of the stability bounds: `c = 4` and `α0(n) = (1/8)(1 + 1/(n−1))²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityConstants {
    pub c: u32,
    pub alpha0: Rational,
}

pub fn stability_constants(n: usize) -> Result<StabilityConstants> {
    if n < 2 {
        return Err(Error::TooFewPlayers { n, min: 2 });
    }
    let base = Rational::new(n.into(), (n - 1).into());
    let alpha0 = &base * &base / Rational::from_integer(8.into());
    Ok(StabilityConstants { c: 4, alpha0 })
}
