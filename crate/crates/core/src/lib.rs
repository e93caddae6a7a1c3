//! Network formation games in which an adversary destroys one link after the
//! network is built.
//!
//! Players request links; under unilateral formation one request builds a
//! link, under bilateral formation both endpoints must request it. Each request
//! costs α, and each player also pays the expected number of players it is cut
//! off from when the adversary strikes. The crate computes these costs exactly
//! with the bridge tree of the built graph, checks several equilibrium
//! notions, and searches small instances exhaustively for the price of anarchy.
//!
//! ```
//! use anarchy_core::{fixtures, is_pairwise_stable, AdversaryKind, GameParams, Rational};
//!
//! let g = fixtures::cycle_with_path(16, 4).unwrap();
//! let params = GameParams::bilateral(16, Rational::from_integer(1.into()), AdversaryKind::SimpleMinded).unwrap();
//! assert!(is_pairwise_stable(&g, &params).unwrap().holds);
//! ```

pub mod adversary;
pub mod bridge;
pub mod chords;
pub mod cost;
pub mod equilibrium;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod game;
pub mod sample;

/// Exact rational numbers with unbounded numerators and denominators.
pub type Rational = num_rational::BigRational;

pub use adversary::{critical_links, distribution, AdversaryKind, CriticalLinks, CustomTable, LinkDistribution};
pub use bridge::{
    bridge_tree, bridges, path_relevance, relevance, relevance_naive, relevance_sum, separation, total_separation,
    tree_diameter, BridgeTree, NodeId, PathEnd, Separation, TreeLink, TreePath,
};
pub use chords::{chords, is_chord_free};
pub use cost::{
    cost_report, indirect_cost, opt_lower_bound, optimum, optimum_for_rule, player_cost, social_cost,
    social_cost_of_graph, CostReport, ExtendedRational, Optimum, OptimumShape, PlayerCost,
};
pub use equilibrium::{
    check, convexity_check, convexity_holds, enumerate_equilibria, is_max_ne_ulf, is_nash_ulf, is_pairwise_stable,
    is_pne, pairwise_dynamics, price_of_anarchy, witness_ratio, ConvexityCheck, CostChange, Deviation,
    DeviationWitness, DynamicsOutcome, EquilibriumConcept, EquilibriumWitness, Move, MovePolicy, PoAReport,
    SearchOptions, Verdict, WorstEquilibrium,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use fixtures::{make_fixture, stability_constants, Fixture, FixtureSpec, StabilityConstants};
pub use game::{
    bilateralize, build_graph, edit_profile, is_essential, FormationRule, GameParams, Graph, Link, PlayerId,
    StrategyProfile,
};

/// Parses `"p/q"` or an integer into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || {
        Error::Parse(format!(
            "{text:?} is not a rational number (expected p/q or an integer)"
        ))
    };
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if num_traits::Zero::is_zero(&den) {
        return Err(Error::Parse(format!("{text:?} has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}
