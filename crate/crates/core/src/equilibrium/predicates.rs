use super::{CostChange, Deviation, DeviationWitness, EquilibriumConcept, Verdict};
use crate::adversary::AdversaryKind;
use crate::cost::{indirect_cost_under, Exposure, ExtendedRational};
use crate::error::{Error, Result};
use crate::game::{build_graph, edit_profile, FormationRule, GameParams, Graph, Link, PlayerId, StrategyProfile};
use crate::Rational;

/// Largest `n` for the unilateral Nash checks (full rows are searched).
pub const ULF_PLAYER_CAP: usize = 12;

/// Largest degree for the subset-removal part of the pairwise Nash check.
pub const MAX_REMOVAL_DEGREE: usize = 20;

pub(crate) fn require_rule(params: &GameParams, rule: FormationRule) -> Result<()> {
    if params.rule != rule {
        return Err(Error::WrongRule { expected: rule });
    }
    Ok(())
}

pub(crate) fn require_size(n: usize, params: &GameParams) -> Result<()> {
    if n != params.n {
        return Err(Error::SizeMismatch {
            expected: params.n,
            found: n,
        });
    }
    Ok(())
}

fn times(alpha: &Rational, k: usize) -> Rational {
    alpha * Rational::from_integer(k.into())
}

fn indirect_of(exposure: &Option<Exposure>, v: PlayerId) -> ExtendedRational {
    match exposure {
        Some(e) => e.indirect(v).into(),
        None => ExtendedRational::Infinity,
    }
}

/// Cost of every player of the essential bilateral profile of `g`.
pub(crate) fn bilateral_costs(g: &Graph, exposure: &Option<Exposure>, alpha: &Rational) -> Vec<ExtendedRational> {
    g.players()
        .map(|v| indirect_of(exposure, v) + &times(alpha, g.degree(v)))
        .collect()
}

/// Nash equilibrium under unilateral formation: no player strictly gains by
/// replacing its row with any subset of the other players.
pub fn is_nash_ulf(s: &StrategyProfile, params: &GameParams) -> Result<Verdict> {
    require_rule(params, FormationRule::Unilateral)?;
    require_size(s.n(), params)?;
    let n = s.n();
    if n > ULF_PLAYER_CAP {
        return Err(Error::CapExceeded {
            what: "players for a unilateral Nash check",
            n,
            cap: ULF_PLAYER_CAP,
        });
    }
    let g = build_graph(s, FormationRule::Unilateral);
    let exposure = Exposure::new(&g, &params.adversary)?;
    for v in g.players() {
        let row = s.requests_of(v);
        let before = indirect_of(&exposure, v) + &times(&params.alpha, row.len());
        let others: Vec<PlayerId> = g.players().filter(|&w| w != v).collect();
        let rest = build_graph(&s.with_row(v, &[])?, FormationRule::Unilateral);
        for mask in 0u32..(1 << others.len()) {
            let k = mask.count_ones() as usize;
            let building = times(&params.alpha, k);
            // Indirect costs are nonnegative, so this row cannot beat `before`.
            if before <= building {
                continue;
            }
            let targets: Vec<PlayerId> = (0..others.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| others[i])
                .collect();
            if targets == row {
                continue;
            }
            let mut h = rest.clone();
            for w in &targets {
                h.insert(v.idx(), w.idx());
            }
            let after = indirect_cost_under(&h, v, &params.adversary)? + &building;
            if after < before {
                return Ok(Verdict::violated(DeviationWitness {
                    deviation: Deviation::ReplaceRow {
                        player: v,
                        from: row,
                        to: targets,
                    },
                    changes: vec![CostChange {
                        player: v,
                        before,
                        after,
                    }],
                }));
            }
        }
    }
    Ok(Verdict::holds())
}

/// A Nash equilibrium in which every nonempty set of extra requests strictly
/// hurts the buyer.
pub fn is_max_ne_ulf(s: &StrategyProfile, params: &GameParams) -> Result<Verdict> {
    let nash = is_nash_ulf(s, params)?;
    if !nash.holds {
        return Ok(nash);
    }
    let g = build_graph(s, FormationRule::Unilateral);
    let exposure = Exposure::new(&g, &params.adversary)?;
    for v in g.players() {
        let row_len = s.request_count(v);
        let before = indirect_of(&exposure, v) + &times(&params.alpha, row_len);
        let absent: Vec<PlayerId> = g
            .players()
            .filter(|&w| w != v && !g.has_idx(v.idx(), w.idx()))
            .collect();
        for mask in 1u32..(1 << absent.len()) {
            let targets: Vec<PlayerId> = (0..absent.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| absent[i])
                .collect();
            let mut h = g.clone();
            for w in &targets {
                h.insert(v.idx(), w.idx());
            }
            let building = times(&params.alpha, row_len + targets.len());
            let after = indirect_cost_under(&h, v, &params.adversary)? + &building;
            if after <= before {
                return Ok(Verdict::violated(DeviationWitness {
                    deviation: Deviation::AddRequests { player: v, targets },
                    changes: vec![CostChange {
                        player: v,
                        before,
                        after,
                    }],
                }));
            }
        }
    }
    Ok(Verdict::holds())
}

/// The first absent link whose joint addition leaves both endpoints no worse off.
pub(crate) fn addition_violations(
    g: &Graph,
    costs: &[ExtendedRational],
    params: &GameParams,
    first_only: bool,
) -> Result<Vec<DeviationWitness>> {
    let mut out = Vec::new();
    for link in g.absent_links() {
        let (v, w) = link.endpoints();
        let h = g.with_link(link)?;
        let exposure = Exposure::new(&h, &params.adversary)?;
        let after = |x: PlayerId| indirect_of(&exposure, x) + &times(&params.alpha, h.degree(x));
        let (av, aw) = (after(v), after(w));
        if av <= costs[v.idx()] && aw <= costs[w.idx()] {
            out.push(DeviationWitness {
                deviation: Deviation::AddLink { link },
                changes: vec![
                    CostChange {
                        player: v,
                        before: costs[v.idx()].clone(),
                        after: av,
                    },
                    CostChange {
                        player: w,
                        before: costs[w.idx()].clone(),
                        after: aw,
                    },
                ],
            });
            if first_only {
                break;
            }
        }
    }
    Ok(out)
}

/// Single-link removals that strictly improve the removing endpoint, in
/// (link, lower endpoint first) order.
pub(crate) fn removal_violations(
    g: &Graph,
    costs: &[ExtendedRational],
    params: &GameParams,
    first_only: bool,
) -> Result<Vec<DeviationWitness>> {
    let mut out = Vec::new();
    for link in g.links() {
        let h = g.without_link(link)?;
        let exposure = Exposure::new(&h, &params.adversary)?;
        let (v, w) = link.endpoints();
        for x in [v, w] {
            let after = indirect_of(&exposure, x) + &times(&params.alpha, h.degree(x));
            if after < costs[x.idx()] {
                out.push(DeviationWitness {
                    deviation: Deviation::RemoveLinks {
                        player: x,
                        links: vec![link],
                    },
                    changes: vec![CostChange {
                        player: x,
                        before: costs[x.idx()].clone(),
                        after,
                    }],
                });
                if first_only {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

fn check_bilateral_graph(g: &Graph, params: &GameParams) -> Result<(Vec<ExtendedRational>, Option<Exposure>)> {
    require_rule(params, FormationRule::Bilateral)?;
    require_size(g.n(), params)?;
    let exposure = Exposure::new(g, &params.adversary)?;
    Ok((bilateral_costs(g, &exposure, &params.alpha), exposure))
}

/// Pairwise Nash equilibrium of the essential bilateral profile building `g`.
///
/// Under bilateral formation a unilateral change can only drop reciprocated
/// links (extra requests build nothing and cost α), so the Nash part searches
/// the subsets of incident links of each player.
pub fn is_pne(g: &Graph, params: &GameParams) -> Result<Verdict> {
    let (costs, _) = check_bilateral_graph(g, params)?;
    if let Some(v) = g.players().find(|&v| g.degree(v) > MAX_REMOVAL_DEGREE) {
        return Err(Error::CapExceeded {
            what: "degree for a pairwise Nash check",
            n: g.degree(v),
            cap: MAX_REMOVAL_DEGREE,
        });
    }
    for v in g.players() {
        let incident: Vec<Link> = g.neighbors(v).map(|w| Link::new(v, w)).collect::<Result<_>>()?;
        let deg = incident.len();
        for mask in 1u32..(1 << deg) {
            let dropped: Vec<Link> = (0..deg).filter(|&i| mask >> i & 1 == 1).map(|i| incident[i]).collect();
            let kept = deg - dropped.len();
            let building = times(&params.alpha, kept);
            if costs[v.idx()] <= building {
                continue;
            }
            let h = g.without_links(dropped.iter().copied())?;
            let after = indirect_cost_under(&h, v, &params.adversary)? + &building;
            if after < costs[v.idx()] {
                return Ok(Verdict::violated(DeviationWitness {
                    deviation: Deviation::RemoveLinks {
                        player: v,
                        links: dropped,
                    },
                    changes: vec![CostChange {
                        player: v,
                        before: costs[v.idx()].clone(),
                        after,
                    }],
                }));
            }
        }
    }
    Ok(match addition_violations(g, &costs, params, true)?.pop() {
        Some(w) => Verdict::violated(w),
        None => Verdict::holds(),
    })
}

/// Pairwise stability: no endpoint strictly gains by dropping one of its links,
/// and no absent link is weakly wanted by both endpoints.
pub fn is_pairwise_stable(g: &Graph, params: &GameParams) -> Result<Verdict> {
    let (costs, _) = check_bilateral_graph(g, params)?;
    if let Some(w) = removal_violations(g, &costs, params, true)?.pop() {
        return Ok(Verdict::violated(w));
    }
    Ok(match addition_violations(g, &costs, params, true)?.pop() {
        Some(w) => Verdict::violated(w),
        None => Verdict::holds(),
    })
}

/// Checks `concept` on an arbitrary profile. Bilateral concepts reject profiles
/// with unreciprocated requests, which their issuer strictly gains by withdrawing.
pub fn check(s: &StrategyProfile, params: &GameParams, concept: EquilibriumConcept) -> Result<Verdict> {
    match concept {
        EquilibriumConcept::NashUlf => is_nash_ulf(s, params),
        EquilibriumConcept::MaxNashUlf => is_max_ne_ulf(s, params),
        EquilibriumConcept::PairwiseNashBlf | EquilibriumConcept::PairwiseStableBlf => {
            require_rule(params, FormationRule::Bilateral)?;
            require_size(s.n(), params)?;
            if let Some((v, w)) = s.requests().find(|&(v, w)| !s.get(w, v)) {
                let before = crate::cost::player_cost(s, v, params)?;
                let after = crate::cost::player_cost(&edit_profile(s, v, w, false)?, v, params)?;
                return Ok(Verdict::violated(DeviationWitness {
                    deviation: Deviation::WithdrawRequest { player: v, target: w },
                    changes: vec![CostChange {
                        player: v,
                        before,
                        after,
                    }],
                }));
            }
            let g = build_graph(s, FormationRule::Bilateral);
            if concept == EquilibriumConcept::PairwiseNashBlf {
                is_pne(&g, params)
            } else {
                is_pairwise_stable(&g, params)
            }
        }
    }
}

/// Both sides of the convexity inequality for one player and removal set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexityCheck {
    /// `I_v(S − vw₁ − … − vw_k) − I_v(S)`.
    pub lhs: ExtendedRational,
    /// `Σ_i (I_v(S − vw_i) − I_v(S))`.
    pub rhs: ExtendedRational,
    pub holds: bool,
}

/// Difference of disconnection costs. With an infinite base every difference
/// is taken as zero, so the inequality holds trivially.
fn difference(after: &ExtendedRational, base: &ExtendedRational) -> ExtendedRational {
    match (after, base) {
        (_, ExtendedRational::Infinity) => ExtendedRational::zero(),
        (ExtendedRational::Infinity, _) => ExtendedRational::Infinity,
        (ExtendedRational::Finite(a), ExtendedRational::Finite(b)) => ExtendedRational::Finite(a - b),
    }
}

pub fn convexity_check(
    s: &StrategyProfile,
    v: PlayerId,
    removals: &[PlayerId],
    params: &GameParams,
) -> Result<ConvexityCheck> {
    require_size(s.n(), params)?;
    v.ensure_within(s.n())?;
    let g = build_graph(s, params.rule);
    for &w in removals {
        let link = Link::new(v, w)?;
        if !g.has_link(link) {
            return Err(Error::MissingLink(link));
        }
    }
    let cost_of = |p: &StrategyProfile| -> Result<ExtendedRational> {
        indirect_cost_under(&build_graph(p, params.rule), v, &params.adversary)
    };
    let base = cost_of(s)?;
    let mut all = s.clone();
    let mut rhs = ExtendedRational::zero();
    for &w in removals {
        all = edit_profile(&all, v, w, false)?;
        rhs = rhs + difference(&cost_of(&edit_profile(s, v, w, false)?)?, &base);
    }
    let lhs = difference(&cost_of(&all)?, &base);
    let holds = lhs >= rhs;
    Ok(ConvexityCheck { lhs, rhs, holds })
}

pub fn convexity_holds(s: &StrategyProfile, v: PlayerId, removals: &[PlayerId], params: &GameParams) -> Result<bool> {
    Ok(convexity_check(s, v, removals, params)?.holds)
}

/// Rejects adversaries that cannot be applied to arbitrary graphs.
pub(crate) fn require_anonymous(kind: &AdversaryKind) -> Result<()> {
    match kind {
        AdversaryKind::Custom(_) => Err(Error::InvalidDistribution(
            "a custom table is bound to one graph and cannot drive a search over graphs".into(),
        )),
        _ => Ok(()),
    }
}
