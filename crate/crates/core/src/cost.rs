//! Building, disconnection and social costs, and optima.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_traits::Zero;

use crate::adversary::{distribution, AdversaryKind, LinkDistribution};
use crate::bridge::{bridge_tree, BridgeTree};
use crate::error::Result;
use crate::fixtures;
use crate::game::{build_graph, FormationRule, GameParams, Graph, PlayerId, StrategyProfile};
use crate::Rational;

/// A rational number or `+∞`. Infinity absorbs addition and exceeds every rational.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedRational {
    Finite(Rational),
    Infinity,
}

impl ExtendedRational {
    pub fn zero() -> Self {
        ExtendedRational::Finite(Rational::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::Infinity)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(r) => Some(r),
            ExtendedRational::Infinity => None,
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(r: Rational) -> Self {
        ExtendedRational::Finite(r)
    }
}

impl Add for ExtendedRational {
    type Output = ExtendedRational;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ExtendedRational::Finite(a), ExtendedRational::Finite(b)) => ExtendedRational::Finite(a + b),
            _ => ExtendedRational::Infinity,
        }
    }
}

impl Add<&Rational> for ExtendedRational {
    type Output = ExtendedRational;

    fn add(self, rhs: &Rational) -> Self {
        match self {
            ExtendedRational::Finite(a) => ExtendedRational::Finite(a + rhs),
            ExtendedRational::Infinity => ExtendedRational::Infinity,
        }
    }
}

impl PartialEq<Rational> for ExtendedRational {
    fn eq(&self, other: &Rational) -> bool {
        self.finite() == Some(other)
    }
}

impl PartialOrd<Rational> for ExtendedRational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(match self {
            ExtendedRational::Finite(r) => r.cmp(other),
            ExtendedRational::Infinity => Ordering::Greater,
        })
    }
}

impl std::iter::Sum for ExtendedRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExtendedRational::zero(), Add::add)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(r) => write!(f, "{r}"),
            ExtendedRational::Infinity => f.write_str("inf"),
        }
    }
}

/// Per-tree-link destruction probabilities, kept integral where possible.
enum TreeWeights {
    /// Probability `1/denom` on each flagged tree link, zero elsewhere.
    Uniform {
        denom: u64,
        hit: Vec<bool>,
    },
    General(Vec<Rational>),
}

/// Everything needed to evaluate disconnection costs on one connected graph.
pub(crate) struct Exposure {
    tree: BridgeTree,
    weights: TreeWeights,
}

impl Exposure {
    /// `None` when the graph is disconnected (all disconnection costs infinite).
    pub(crate) fn new(g: &Graph, kind: &AdversaryKind) -> Result<Option<Self>> {
        if !g.is_connected() {
            return Ok(None);
        }
        let tree = bridge_tree(g)?;
        let k = tree.tree_links().len();
        let weights = match kind {
            AdversaryKind::SimpleMinded => TreeWeights::Uniform {
                denom: g.m().max(1) as u64,
                hit: vec![true; k],
            },
            AdversaryKind::Smart => {
                let sep_max = (0..k).map(|t| tree.sep(t)).max().unwrap_or(0);
                // With no bridges every link is critical and none separates anybody.
                let hit: Vec<bool> = (0..k).map(|t| sep_max > 0 && tree.sep(t) == sep_max).collect();
                let count = hit.iter().filter(|&&h| h).count().max(1) as u64;
                TreeWeights::Uniform { denom: count, hit }
            }
            AdversaryKind::Custom(_) => {
                let dist = distribution(g, kind)?;
                TreeWeights::General(tree.tree_links().iter().map(|tl| dist.prob(tl.bridge)).collect())
            }
        };
        Ok(Some(Exposure { tree, weights }))
    }

    pub(crate) fn indirect(&self, v: PlayerId) -> Rational {
        let node = self.tree.kappa(v);
        match &self.weights {
            TreeWeights::Uniform { denom, hit } => {
                let total: u64 = hit
                    .iter()
                    .enumerate()
                    .filter(|&(_, &h)| h)
                    .map(|(t, _)| self.tree.far_weight(t, node))
                    .sum();
                Rational::new(total.into(), (*denom).into())
            }
            TreeWeights::General(probs) => probs
                .iter()
                .enumerate()
                .map(|(t, p)| p * Rational::from_integer(self.tree.far_weight(t, node).into()))
                .sum(),
        }
    }

    /// `Σ_e sep(e) Pr{e}`.
    pub(crate) fn expected_separation(&self) -> Rational {
        let tree = &self.tree;
        match &self.weights {
            TreeWeights::Uniform { denom, hit } => {
                let total: u64 = hit
                    .iter()
                    .enumerate()
                    .filter(|&(_, &h)| h)
                    .map(|(t, _)| tree.sep(t))
                    .sum();
                Rational::new(total.into(), (*denom).into())
            }
            TreeWeights::General(probs) => probs
                .iter()
                .enumerate()
                .map(|(t, p)| p * Rational::from_integer(tree.sep(t).into()))
                .sum(),
        }
    }
}

/// Disconnection cost of `v` on `g` under `kind`; infinite if `g` is disconnected.
pub(crate) fn indirect_cost_under(g: &Graph, v: PlayerId, kind: &AdversaryKind) -> Result<ExtendedRational> {
    Ok(match Exposure::new(g, kind)? {
        Some(exposure) => exposure.indirect(v).into(),
        None => ExtendedRational::Infinity,
    })
}

/// `I_v = Σ_e rel(e, v) Pr{e}`, or infinity for a disconnected graph.
pub fn indirect_cost(g: &Graph, v: PlayerId, dist: &LinkDistribution) -> ExtendedRational {
    let Ok(tree) = bridge_tree(g) else {
        return ExtendedRational::Infinity;
    };
    let node = tree.kappa(v);
    tree.tree_links()
        .iter()
        .enumerate()
        .map(|(t, tl)| dist.prob(tl.bridge) * Rational::from_integer(tree.far_weight(t, node).into()))
        .sum::<Rational>()
        .into()
}

fn building_cost(s: &StrategyProfile, v: PlayerId, alpha: &Rational) -> Rational {
    alpha * Rational::from_integer(s.request_count(v).into())
}

/// `C_v(S) = ‖S_v‖₁ α + I_v(G(S))`.
///
/// Fails only when a custom adversary table does not fit the built graph.
pub fn player_cost(s: &StrategyProfile, v: PlayerId, params: &GameParams) -> Result<ExtendedRational> {
    let g = build_graph(s, params.rule);
    let indirect = indirect_cost_under(&g, v, &params.adversary)?;
    Ok(indirect + &building_cost(s, v, &params.alpha))
}

/// Costs of one player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerCost {
    pub player: PlayerId,
    pub building: Rational,
    pub indirect: ExtendedRational,
    pub total: ExtendedRational,
}

/// Per-player and social costs of a profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostReport {
    pub players: Vec<PlayerCost>,
    pub social: ExtendedRational,
    pub m: usize,
}

pub fn cost_report(s: &StrategyProfile, params: &GameParams) -> Result<CostReport> {
    let g = build_graph(s, params.rule);
    let exposure = Exposure::new(&g, &params.adversary)?;
    let players: Vec<PlayerCost> = g
        .players()
        .map(|v| {
            let building = building_cost(s, v, &params.alpha);
            let indirect = match &exposure {
                Some(e) => ExtendedRational::Finite(e.indirect(v)),
                None => ExtendedRational::Infinity,
            };
            let total = indirect.clone() + &building;
            PlayerCost {
                player: v,
                building,
                indirect,
                total,
            }
        })
        .collect();
    let social = players.iter().map(|p| p.total.clone()).sum();
    Ok(CostReport {
        players,
        social,
        m: g.m(),
    })
}

/// `SC(S) = Σ_v C_v(S)`.
pub fn social_cost(s: &StrategyProfile, params: &GameParams) -> Result<ExtendedRational> {
    let g = build_graph(s, params.rule);
    let requests = s.requests().count();
    let building = &params.alpha * Rational::from_integer(requests.into());
    Ok(match Exposure::new(&g, &params.adversary)? {
        Some(e) => ExtendedRational::Finite(building + e.expected_separation()),
        None => ExtendedRational::Infinity,
    })
}

/// Social cost of the essential profile building `g`: `2mα` (bilateral) or
/// `mα` (unilateral) plus `Σ_e sep(e) Pr{e}`.
pub fn social_cost_of_graph(g: &Graph, params: &GameParams) -> Result<ExtendedRational> {
    let per_link = match params.rule {
        FormationRule::Bilateral => 2,
        FormationRule::Unilateral => 1,
    };
    let building = &params.alpha * Rational::from_integer((per_link * g.m()).into());
    Ok(match Exposure::new(g, &params.adversary)? {
        Some(e) => ExtendedRational::Finite(building + e.expected_separation()),
        None => ExtendedRational::Infinity,
    })
}

/// Shape of an optimal graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimumShape {
    Cycle,
    Star,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub value: Rational,
    pub shape: OptimumShape,
    pub witness: Graph,
}

/// Minimum bilateral social cost: the cycle (`2nα`) for `α ≤ n−1`, else the star
/// (`2(n−1)(α+1)`). Holds for every single-link adversary.
pub fn optimum(n: usize, alpha: &Rational) -> Result<Optimum> {
    optimum_for_rule(n, alpha, FormationRule::Bilateral)
}

/// As [`optimum`], with building cost `mα` under unilateral formation:
/// cycle `nα` versus star `(n−1)(α+2)`.
pub fn optimum_for_rule(n: usize, alpha: &Rational, rule: FormationRule) -> Result<Optimum> {
    let per_link = Rational::from_integer(match rule {
        FormationRule::Bilateral => 2.into(),
        FormationRule::Unilateral => 1.into(),
    });
    let nn = Rational::from_integer(n.into());
    let cycle_value = &per_link * &nn * alpha;
    let star_value =
        (nn.clone() - Rational::from_integer(1.into())) * (&per_link * alpha + Rational::from_integer(2.into()));
    Ok(if cycle_value <= star_value {
        Optimum {
            value: cycle_value,
            shape: OptimumShape::Cycle,
            witness: fixtures::cycle(n)?,
        }
    } else {
        Optimum {
            value: star_value,
            shape: OptimumShape::Star,
            witness: fixtures::star(n)?,
        }
    })
}

/// `min(2nα, 2(n−1)(α+1))`, which equals the bilateral optimum.
pub fn opt_lower_bound(n: usize, alpha: &Rational) -> Rational {
    let nn = Rational::from_integer(n.into());
    let one = Rational::from_integer(1.into());
    let two = Rational::from_integer(2.into());
    let cycle = &two * &nn * alpha;
    let star = two * (nn - &one) * (alpha + one);
    cycle.min(star)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cycle, cycle_with_path, star, three_stars};

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    fn int(k: i64) -> Rational {
        Rational::from_integer(k.into())
    }

    fn p(i: u32) -> PlayerId {
        PlayerId::new(i).unwrap()
    }

    #[test]
    fn extended_order() {
        let inf = ExtendedRational::Infinity;
        assert!(inf > ExtendedRational::Finite(int(1_000_000)));
        assert_eq!(inf.clone() + ExtendedRational::zero(), inf);
        assert_eq!(inf.clone() + &int(3), inf);
        assert!(ExtendedRational::Finite(r(1, 2)) < ExtendedRational::Finite(r(2, 3)));
        assert_eq!(inf.to_string(), "inf");
        assert_eq!(ExtendedRational::Finite(r(7, 4)).to_string(), "7/4");
    }

    #[test]
    fn indirect_costs() {
        let s = star(5).unwrap();
        let d = distribution(&s, &AdversaryKind::SimpleMinded).unwrap();
        assert_eq!(indirect_cost(&s, p(2), &d), r(7, 4));

        let c = cycle(6).unwrap();
        for kind in [AdversaryKind::SimpleMinded, AdversaryKind::Smart] {
            let d = distribution(&c, &kind).unwrap();
            for v in c.players() {
                assert_eq!(indirect_cost(&c, v, &d), int(0));
            }
        }

        let t = three_stars(5).unwrap();
        let d = distribution(&t, &AdversaryKind::Smart).unwrap();
        // Players 2..=6 form the star around the first star center.
        for v in 2..=6 {
            assert_eq!(indirect_cost(&t, p(v), &d), int(8));
        }
        let split = Graph::from_pairs(4, &[(1, 2), (3, 4)]).unwrap();
        assert!(indirect_cost(&split, p(1), &d).is_infinite());
    }

    #[test]
    fn player_costs() {
        let params = GameParams::bilateral(5, int(3), AdversaryKind::SimpleMinded).unwrap();
        let s = StrategyProfile::canonical_bilateral(&star(5).unwrap()).unwrap();
        assert_eq!(player_cost(&s, p(1), &params).unwrap(), int(13));

        let zero = StrategyProfile::new(5).unwrap();
        assert!(player_cost(&zero, p(3), &params).unwrap().is_infinite());

        let params = GameParams::bilateral(6, int(2), AdversaryKind::Smart).unwrap();
        let s = StrategyProfile::canonical_bilateral(&cycle(6).unwrap()).unwrap();
        assert_eq!(player_cost(&s, p(4), &params).unwrap(), int(4));
    }

    #[test]
    fn social_costs() {
        let g = cycle_with_path(16, 4).unwrap();
        let params = GameParams::bilateral(16, int(1), AdversaryKind::SimpleMinded).unwrap();
        let s = StrategyProfile::canonical_bilateral(&g).unwrap();
        assert_eq!(social_cost(&s, &params).unwrap(), r(193, 4));
        assert_eq!(social_cost_of_graph(&g, &params).unwrap(), r(193, 4));

        let params = GameParams::bilateral(5, int(3), AdversaryKind::SimpleMinded).unwrap();
        let s = StrategyProfile::canonical_bilateral(&star(5).unwrap()).unwrap();
        assert_eq!(social_cost(&s, &params).unwrap(), int(32));

        let g = three_stars(5).unwrap();
        let params = GameParams::bilateral(13, r(5, 2), AdversaryKind::Smart).unwrap();
        assert_eq!(social_cost_of_graph(&g, &params).unwrap(), int(140));
    }

    #[test]
    fn optimum_examples() {
        let o = optimum(6, &int(3)).unwrap();
        assert_eq!((o.value, o.shape), (int(36), OptimumShape::Cycle));
        let o = optimum(6, &int(7)).unwrap();
        assert_eq!((o.value, o.shape), (int(80), OptimumShape::Star));
        assert_eq!(o.witness, star(6).unwrap());
        assert_eq!(optimum(9, &int(8)).unwrap().value, int(144));
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(opt_lower_bound(13, &r(5, 2)), int(65));
        assert_eq!(opt_lower_bound(5, &int(3)), int(30));
        assert_eq!(opt_lower_bound(5, &int(3)), optimum(5, &int(3)).unwrap().value);
        // Past α = n−1 the star is cheaper than 2nα.
        assert_eq!(opt_lower_bound(9, &int(10)), int(176));
    }

    #[test]
    fn unilateral_optimum() {
        let o = optimum_for_rule(5, &int(3), FormationRule::Unilateral).unwrap();
        assert_eq!((o.value, o.shape), (int(15), OptimumShape::Cycle));
        let o = optimum_for_rule(5, &int(9), FormationRule::Unilateral).unwrap();
        assert_eq!((o.value, o.shape), (int(44), OptimumShape::Star));
    }
}
