//! Equilibrium predicates, exhaustive search, price of anarchy and
//! pairwise improvement dynamics.
//!
//! All inequalities are decided exactly. The pairwise condition on an absent
//! link `{v, w}` fails iff adding it jointly leaves *both* endpoints no worse
//! off; the removal condition fails iff some endpoint is strictly better off
//! without the link.

mod dynamics;
mod predicates;
mod search;

use std::fmt;
use std::str::FromStr;

pub use dynamics::{pairwise_dynamics, DynamicsOutcome, Move, MovePolicy};
pub use predicates::{
    check, convexity_check, convexity_holds, is_max_ne_ulf, is_nash_ulf, is_pairwise_stable, is_pne, ConvexityCheck,
    MAX_REMOVAL_DEGREE, ULF_PLAYER_CAP,
};
pub use search::{
    canonical_graph_key, enumerate_equilibria, price_of_anarchy, witness_ratio, EquilibriumWitness, PoAReport,
    SearchOptions, WorstEquilibrium, BLF_SEARCH_CAP, ULF_SEARCH_CAP,
};

use crate::cost::ExtendedRational;
use crate::error::{Error, Result};
use crate::game::{FormationRule, Link, PlayerId};

/// Which stability notion to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquilibriumConcept {
    /// Nash equilibrium under unilateral formation.
    NashUlf,
    /// Nash equilibrium in which buying any extra links strictly hurts the buyer.
    MaxNashUlf,
    /// Pairwise Nash equilibrium under bilateral formation.
    PairwiseNashBlf,
    /// Pairwise stability under bilateral formation.
    PairwiseStableBlf,
}

impl EquilibriumConcept {
    pub fn rule(self) -> FormationRule {
        match self {
            EquilibriumConcept::NashUlf | EquilibriumConcept::MaxNashUlf => FormationRule::Unilateral,
            EquilibriumConcept::PairwiseNashBlf | EquilibriumConcept::PairwiseStableBlf => FormationRule::Bilateral,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            EquilibriumConcept::NashUlf => "ne",
            EquilibriumConcept::MaxNashUlf => "maxne",
            EquilibriumConcept::PairwiseNashBlf => "pne",
            EquilibriumConcept::PairwiseStableBlf => "ps",
        }
    }
}

impl fmt::Display for EquilibriumConcept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for EquilibriumConcept {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ne" => Ok(EquilibriumConcept::NashUlf),
            "maxne" => Ok(EquilibriumConcept::MaxNashUlf),
            "pne" => Ok(EquilibriumConcept::PairwiseNashBlf),
            "ps" => Ok(EquilibriumConcept::PairwiseStableBlf),
            other => Err(Error::Parse(format!(
                "unknown concept {other:?}; expected ne, maxne, pne or ps"
            ))),
        }
    }
}

/// A deviation that strictly violates a predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Deviation {
    /// `player` replaces its whole request row.
    ReplaceRow {
        player: PlayerId,
        from: Vec<PlayerId>,
        to: Vec<PlayerId>,
    },
    /// `player` buys extra links on top of its row.
    AddRequests { player: PlayerId, targets: Vec<PlayerId> },
    /// `player` drops the given incident links.
    RemoveLinks { player: PlayerId, links: Vec<Link> },
    /// Both endpoints add `link` jointly.
    AddLink { link: Link },
    /// `player` withdraws a request that builds nothing.
    WithdrawRequest { player: PlayerId, target: PlayerId },
}

impl fmt::Display for Deviation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[PlayerId]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        match self {
            Deviation::ReplaceRow { player, from, to } => {
                write!(
                    f,
                    "player {player} replaces requests [{}] by [{}]",
                    list(from),
                    list(to)
                )
            }
            Deviation::AddRequests { player, targets } => {
                write!(f, "player {player} additionally requests [{}]", list(targets))
            }
            Deviation::RemoveLinks { player, links } => {
                let ls = links.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                write!(f, "player {player} removes [{ls}]")
            }
            Deviation::AddLink { link } => write!(f, "add {link}"),
            Deviation::WithdrawRequest { player, target } => {
                write!(f, "player {player} withdraws the unreciprocated request to {target}")
            }
        }
    }
}

/// Cost of one involved player before and after a deviation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostChange {
    pub player: PlayerId,
    pub before: ExtendedRational,
    pub after: ExtendedRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationWitness {
    pub deviation: Deviation,
    pub changes: Vec<CostChange>,
}

/// Outcome of an equilibrium check; a failed check carries its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<DeviationWitness>,
}

impl Verdict {
    pub(crate) fn holds() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub(crate) fn violated(witness: DeviationWitness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}
