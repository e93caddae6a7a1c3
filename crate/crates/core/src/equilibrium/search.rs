use std::collections::BTreeSet;

use super::predicates::{check, is_pairwise_stable, is_pne, require_anonymous};
use super::EquilibriumConcept;
use crate::adversary::AdversaryKind;
use crate::cost::{optimum_for_rule, social_cost, social_cost_of_graph, ExtendedRational};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::game::{FormationRule, GameParams, Graph, StrategyProfile};
use crate::Rational;

/// Largest `n` searched for bilateral concepts (all labeled graphs).
pub const BLF_SEARCH_CAP: usize = 8;
/// Largest `n` searched for unilateral concepts (graphs times link owners).
pub const ULF_SEARCH_CAP: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Skip disconnected graphs (never equilibria, since any player then pays infinity).
    pub connected_only: bool,
    /// Keep only the first witness of each isomorphism class.
    pub dedup_isomorphic: bool,
    pub execution: Execution,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            connected_only: true,
            dedup_isomorphic: false,
            execution: Execution::default(),
        }
    }
}

/// One equilibrium found by the search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumWitness {
    pub graph: Graph,
    /// The unilateral profile; bilateral witnesses are the canonical profile of `graph`.
    pub profile: Option<StrategyProfile>,
    pub social_cost: ExtendedRational,
}

fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

fn check_cap(n: usize, concept: EquilibriumConcept) -> Result<()> {
    let cap = match concept.rule() {
        FormationRule::Bilateral => BLF_SEARCH_CAP,
        FormationRule::Unilateral => ULF_SEARCH_CAP,
    };
    if n > cap {
        return Err(Error::CapExceeded {
            what: "players for exhaustive search",
            n,
            cap,
        });
    }
    Ok(())
}

/// The unilateral profile in which the link with index `i` among `links` is
/// owned by its lower endpoint iff bit `i` of `owners` is clear.
fn oriented_profile(g: &Graph, links: &[crate::game::Link], owners: u64) -> Result<StrategyProfile> {
    let mut s = StrategyProfile::new(g.n())?;
    for (i, link) in links.iter().enumerate() {
        let (a, b) = link.idx_pair();
        if owners >> i & 1 == 0 {
            s.set_idx(a, b, true);
        } else {
            s.set_idx(b, a, true);
        }
    }
    Ok(s)
}

fn bilateral_hit(g: &Graph, params: &GameParams, concept: EquilibriumConcept) -> Result<Option<EquilibriumWitness>> {
    let verdict = match concept {
        EquilibriumConcept::PairwiseNashBlf => is_pne(g, params)?,
        _ => is_pairwise_stable(g, params)?,
    };
    if !verdict.holds {
        return Ok(None);
    }
    Ok(Some(EquilibriumWitness {
        graph: g.clone(),
        profile: None,
        social_cost: social_cost_of_graph(g, params)?,
    }))
}

fn unilateral_hits(g: &Graph, params: &GameParams, concept: EquilibriumConcept) -> Result<Vec<EquilibriumWitness>> {
    let links: Vec<_> = g.links().collect();
    let mut out = Vec::new();
    for owners in 0u64..(1 << links.len()) {
        let s = oriented_profile(g, &links, owners)?;
        if check(&s, params, concept)?.holds {
            let social = social_cost(&s, params)?;
            out.push(EquilibriumWitness {
                graph: g.clone(),
                profile: Some(s),
                social_cost: social,
            });
        }
    }
    Ok(out)
}

/// Every labeled equilibrium on `n` players, in increasing order of the graph's
/// pair mask (then of the owner mask), whatever the execution mode.
pub fn enumerate_equilibria(
    n: usize,
    alpha: &Rational,
    adversary: &AdversaryKind,
    concept: EquilibriumConcept,
    options: SearchOptions,
) -> Result<Vec<EquilibriumWitness>> {
    require_anonymous(adversary)?;
    let params = GameParams::new(n, alpha.clone(), concept.rule(), adversary.clone())?;
    check_cap(n, concept)?;
    let total = 1u64 << pair_count(n);
    let per_graph: Vec<Result<Vec<EquilibriumWitness>>> = options.execution.filter_map_range(0..total, |mask| {
        let g = Graph::from_pair_mask(n, mask);
        if options.connected_only && !g.is_connected() {
            return None;
        }
        let found = match concept.rule() {
            FormationRule::Bilateral => bilateral_hit(&g, &params, concept).map(|w| w.into_iter().collect()),
            FormationRule::Unilateral => unilateral_hits(&g, &params, concept),
        };
        match found {
            Ok(v) if v.is_empty() => None,
            other => Some(other),
        }
    });
    let mut all = Vec::new();
    for chunk in per_graph {
        all.extend(chunk?);
    }
    if options.dedup_isomorphic {
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        all.retain(|w| {
            let key = match &w.profile {
                Some(s) => canonical_profile_key(s, &perms),
                None => canonical_mask(&w.graph, &perms),
            };
            seen.insert(key)
        });
    }
    Ok(all)
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

fn pair_bit(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

fn canonical_mask(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    let n = g.n();
    let links: Vec<(usize, usize)> = g.links().map(|l| l.idx_pair()).collect();
    perms
        .iter()
        .map(|p| {
            links
                .iter()
                .fold(0u64, |key, &(a, b)| key | 1 << pair_bit(n, p[a], p[b]))
        })
        .min()
        .unwrap_or(0)
}

fn canonical_profile_key(s: &StrategyProfile, perms: &[Vec<usize>]) -> u64 {
    let n = s.n();
    perms
        .iter()
        .map(|p| {
            let mut key = 0u64;
            for a in 0..n {
                for b in 0..n {
                    if s.get_idx(a, b) {
                        key |= 1 << (p[a] * n + p[b]);
                    }
                }
            }
            key
        })
        .min()
        .unwrap_or(0)
}

/// A key shared exactly by isomorphic graphs on at most 8 players.
pub fn canonical_graph_key(g: &Graph) -> Result<u64> {
    if g.n() > BLF_SEARCH_CAP {
        return Err(Error::CapExceeded {
            what: "players for canonical labeling",
            n: g.n(),
            cap: BLF_SEARCH_CAP,
        });
    }
    Ok(canonical_mask(g, &permutations(g.n())))
}

/// The costliest equilibrium found and its ratio to the optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstEquilibrium {
    pub social_cost: Rational,
    pub graph: Graph,
    pub profile: Option<StrategyProfile>,
    pub ratio: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoAReport {
    pub n: usize,
    pub alpha: Rational,
    pub adversary: AdversaryKind,
    pub concept: EquilibriumConcept,
    pub optimum: Rational,
    pub equilibria: usize,
    /// `None` when no equilibrium exists at this size.
    pub worst: Option<WorstEquilibrium>,
}

impl PoAReport {
    pub fn ratio(&self) -> Option<&Rational> {
        self.worst.as_ref().map(|w| &w.ratio)
    }
}

/// Worst-case ratio of equilibrium social cost to the optimum, by exhaustive
/// search. Ties keep the first witness in enumeration order.
pub fn price_of_anarchy(
    n: usize,
    alpha: &Rational,
    adversary: &AdversaryKind,
    concept: EquilibriumConcept,
    options: SearchOptions,
) -> Result<PoAReport> {
    let found = enumerate_equilibria(n, alpha, adversary, concept, options)?;
    let optimum = optimum_for_rule(n, alpha, concept.rule())?.value;
    let mut worst: Option<WorstEquilibrium> = None;
    for w in &found {
        // Equilibria are connected, so their costs are finite.
        let Some(cost) = w.social_cost.finite() else { continue };
        if worst.as_ref().is_none_or(|cur| *cost > cur.social_cost) {
            worst = Some(WorstEquilibrium {
                social_cost: cost.clone(),
                graph: w.graph.clone(),
                profile: w.profile.clone(),
                ratio: cost / &optimum,
            });
        }
    }
    Ok(PoAReport {
        n,
        alpha: alpha.clone(),
        adversary: adversary.clone(),
        concept,
        optimum,
        equilibria: found.len(),
        worst,
    })
}

/// `SC(G) / OPT` for one given graph, without checking that it is an equilibrium.
pub fn witness_ratio(g: &Graph, params: &GameParams) -> Result<ExtendedRational> {
    let optimum = optimum_for_rule(g.n(), &params.alpha, params.rule)?.value;
    Ok(match social_cost_of_graph(g, params)? {
        ExtendedRational::Finite(sc) => ExtendedRational::Finite(sc / optimum),
        ExtendedRational::Infinity => ExtendedRational::Infinity,
    })
}
