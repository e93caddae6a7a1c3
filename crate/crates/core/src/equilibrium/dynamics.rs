use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::predicates::{addition_violations, bilateral_costs, removal_violations, require_rule, require_size};
use super::{Deviation, DeviationWitness};
use crate::cost::Exposure;
use crate::error::{Error, Result};
use crate::game::{FormationRule, GameParams, Graph, Link, PlayerId};

/// Which improving move to apply when several exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MovePolicy {
    /// Smallest move: removals before additions, links in lexicographic order.
    #[default]
    Lexicographic,
    /// Uniform among all improving moves, driven by the seed.
    Random,
}

impl FromStr for MovePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" | "lexicographic" => Ok(MovePolicy::Lexicographic),
            "random" => Ok(MovePolicy::Random),
            other => Err(Error::Parse(format!(
                "unknown move policy {other:?}; expected lex or random"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// `seller` drops `link` and is strictly better off.
    Remove { link: Link, seller: PlayerId },
    /// Both endpoints add `link` and neither is worse off.
    Add { link: Link },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Remove { link, seller } => write!(f, "-{link} by {seller}"),
            Move::Add { link } => write!(f, "+{link}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsOutcome {
    pub trajectory: Vec<Move>,
    pub final_graph: Graph,
    /// No improving move is left, so `final_graph` is pairwise stable.
    pub stable: bool,
}

fn as_move(w: &DeviationWitness) -> Move {
    match &w.deviation {
        Deviation::RemoveLinks { player, links } => Move::Remove {
            link: links[0],
            seller: *player,
        },
        Deviation::AddLink { link } => Move::Add { link: *link },
        other => unreachable!("not a pairwise move: {other:?}"),
    }
}

fn improving_moves(g: &Graph, params: &GameParams, first_only: bool) -> Result<Vec<Move>> {
    let exposure = Exposure::new(g, &params.adversary)?;
    let costs = bilateral_costs(g, &exposure, &params.alpha);
    let mut moves: Vec<Move> = removal_violations(g, &costs, params, first_only)?
        .iter()
        .map(as_move)
        .collect();
    if first_only && !moves.is_empty() {
        return Ok(moves);
    }
    moves.extend(addition_violations(g, &costs, params, first_only)?.iter().map(as_move));
    Ok(moves)
}

/// Applies improving pairwise moves to `g0` until none is left or
/// `max_steps` moves have been made. The same seed gives the same trajectory.
pub fn pairwise_dynamics(
    g0: &Graph,
    params: &GameParams,
    policy: MovePolicy,
    seed: u64,
    max_steps: usize,
) -> Result<DynamicsOutcome> {
    require_rule(params, FormationRule::Bilateral)?;
    require_size(g0.n(), params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = g0.clone();
    let mut trajectory = Vec::new();
    loop {
        let moves = improving_moves(&g, params, policy == MovePolicy::Lexicographic)?;
        if moves.is_empty() {
            return Ok(DynamicsOutcome {
                trajectory,
                final_graph: g,
                stable: true,
            });
        }
        if trajectory.len() == max_steps {
            return Ok(DynamicsOutcome {
                trajectory,
                final_graph: g,
                stable: false,
            });
        }
        let chosen = match policy {
            MovePolicy::Lexicographic => moves[0],
            MovePolicy::Random => moves[rng.random_range(0..moves.len())],
        };
        g = match chosen {
            Move::Remove { link, .. } => g.without_link(link)?,
            Move::Add { link } => g.with_link(link)?,
        };
        trajectory.push(chosen);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::AdversaryKind;
    use crate::equilibrium::is_pairwise_stable;
    use crate::fixtures::{cycle, cycle_with_path};
    use crate::sample::random_connected_graph;
    use crate::Rational;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn stable_start_makes_no_move() {
        let params = GameParams::bilateral(16, r(1, 1), AdversaryKind::SimpleMinded).unwrap();
        let g = cycle_with_path(16, 4).unwrap();
        let out = pairwise_dynamics(&g, &params, MovePolicy::Lexicographic, 0, 100).unwrap();
        assert!(out.stable && out.trajectory.is_empty());
        assert_eq!(out.final_graph, g);
    }

    #[test]
    fn path_gains_a_link() {
        let params = GameParams::bilateral(4, r(1, 2), AdversaryKind::SimpleMinded).unwrap();
        let path = Graph::from_pairs(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        // 1-3 is the smallest improving addition; a triangle with a pendant is stable.
        let out = pairwise_dynamics(&path, &params, MovePolicy::Lexicographic, 0, 100).unwrap();
        assert!(out.stable);
        assert_eq!(
            out.trajectory,
            vec![Move::Add {
                link: Link::from_pair(1, 3).unwrap()
            }]
        );
        assert!(is_pairwise_stable(&out.final_graph, &params).unwrap().holds);

        // Closing the path instead ends at the 4-cycle.
        let closing = (0..64)
            .map(|seed| pairwise_dynamics(&path, &params, MovePolicy::Random, seed, 100).unwrap())
            .find(|o| {
                o.trajectory[0]
                    == Move::Add {
                        link: Link::from_pair(1, 4).unwrap(),
                    }
            })
            .unwrap();
        assert!(closing.stable);
        assert_eq!(closing.trajectory.len(), 1);
        assert_eq!(closing.final_graph, cycle(4).unwrap());
    }

    #[test]
    fn random_policy_is_seeded() {
        let params = GameParams::bilateral(10, r(3, 2), AdversaryKind::SimpleMinded).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_connected_graph(&mut rng, 10, 0.3);
        let a = pairwise_dynamics(&g, &params, MovePolicy::Random, 42, 500).unwrap();
        let b = pairwise_dynamics(&g, &params, MovePolicy::Random, 42, 500).unwrap();
        assert_eq!(a, b);
        if a.stable {
            assert!(is_pairwise_stable(&a.final_graph, &params).unwrap().holds);
        }
    }

    #[test]
    fn step_budget_is_respected() {
        let params = GameParams::bilateral(4, r(1, 2), AdversaryKind::SimpleMinded).unwrap();
        let path = Graph::from_pairs(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let out = pairwise_dynamics(&path, &params, MovePolicy::Lexicographic, 0, 0).unwrap();
        assert!(!out.stable && out.trajectory.is_empty());
    }
}
