use std::collections::BTreeSet;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use anarchy_core::sample::random_connected_graph_mixed;
use anarchy_core::{
    bridge_tree, bridges, check, cost_report, critical_links, distribution, enumerate_equilibria, optimum_for_rule,
    pairwise_dynamics, price_of_anarchy, relevance, relevance_naive, social_cost, social_cost_of_graph,
    total_separation, tree_diameter, EquilibriumConcept, Error, Execution, ExtendedRational, Fixture, FormationRule,
    GameParams, Graph, NodeId, OptimumShape, Rational, SearchOptions,
};

use crate::args::*;
use crate::error::{CliError, Result};
use crate::input::{self, Instance};
use crate::render;
use crate::report::*;

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The answer disagreed with `--expect`, or the oracle found a mismatch.
    Mismatch,
}

fn unsupported(command: &str, format: Format) -> CliError {
    CliError::Usage(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

/// Drops the error when the graph is merely disconnected or empty.
fn structural<T>(r: anarchy_core::Result<T>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::Disconnected | Error::NoLinks) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn ratio(cost: &ExtendedRational, optimum: &Rational) -> String {
    match cost {
        ExtendedRational::Finite(c) => q(&(c / optimum)),
        ExtendedRational::Infinity => "inf".into(),
    }
}

fn concepts(rule: FormationRule) -> [EquilibriumConcept; 2] {
    match rule {
        FormationRule::Bilateral => [
            EquilibriumConcept::PairwiseNashBlf,
            EquilibriumConcept::PairwiseStableBlf,
        ],
        FormationRule::Unilateral => [EquilibriumConcept::NashUlf, EquilibriumConcept::MaxNashUlf],
    }
}

fn requests_if_ulf(inst: &Instance) -> Option<Vec<String>> {
    (inst.rule == FormationRule::Unilateral).then(|| requests(&inst.profile))
}

/// Bridges and critical links for DOT output; empty when undefined.
fn highlights(g: &Graph) -> (BTreeSet<anarchy_core::Link>, BTreeSet<anarchy_core::Link>) {
    let b = bridges(g).unwrap_or_default();
    let c = critical_links(g).map(|c| c.links).unwrap_or_default();
    (b, c)
}

pub fn analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> Result<Status> {
    let inst = input::load_instance(&a.input, None)?;
    let params = input::game_params(inst.graph.n(), inst.rule, &a.game)?;
    let g = &inst.graph;
    if a.format == Format::Dot {
        let (b, c) = highlights(g);
        render::dot(out, &inst.source, g, &b, &c)?;
        return Ok(Status::Ok);
    }

    let tree = structural(bridge_tree(g))?;
    let bridge_tree = tree.as_ref().map(|t| BridgeTreeReport {
        nodes: (0..t.node_count())
            .map(|i| TreeNodeReport {
                id: i,
                members: t.members(NodeId(i)).iter().map(|v| v.get()).collect(),
                weight: t.weight(NodeId(i)),
            })
            .collect(),
        links: t
            .tree_links()
            .iter()
            .enumerate()
            .map(|(i, tl)| TreeLinkReport {
                a: tl.a.0,
                b: tl.b.0,
                bridge: tl.bridge.to_string(),
                nu: t.nu(i),
                sep: t.sep(i),
            })
            .collect(),
        diameter: tree_diameter(t),
    });
    let dist = structural(distribution(g, &params.adversary))?.map(|d| {
        d.iter()
            .map(|(link, p)| ProbReport {
                link: link.to_string(),
                prob: q(p),
            })
            .collect()
    });
    let critical = structural(critical_links(g))?.map(|c| CriticalReport {
        links: link_set(&c.links),
        sep_max: c.sep_max,
    });
    let costs = cost_report(&inst.profile, &params)?;
    let optimum = optimum_for_rule(g.n(), &params.alpha, inst.rule)?;
    let report = AnalyzeReport {
        source: inst.source.clone(),
        rule: inst.rule.to_string(),
        n: g.n(),
        m: g.m(),
        alpha: q(&params.alpha),
        adversary: params.adversary.to_string(),
        connected: g.is_connected(),
        links: links(g),
        requests: requests_if_ulf(&inst),
        bridges: structural(bridges(g))?.map(|b| link_set(&b)),
        bridge_tree,
        distribution: dist,
        critical,
        total_separation: structural(total_separation(g))?,
        players: costs
            .players
            .iter()
            .map(|p| PlayerReport {
                player: p.player.get(),
                degree: g.degree(p.player),
                building: q(&p.building),
                indirect: xq(&p.indirect),
                total: xq(&p.total),
            })
            .collect(),
        social_cost: xq(&costs.social),
        optimum: q(&optimum.value),
        optimum_shape: match optimum.shape {
            OptimumShape::Cycle => "cycle",
            OptimumShape::Star => "star",
        }
        .into(),
        ratio: ratio(&costs.social, &optimum.value),
        verdicts: concepts(inst.rule)
            .into_iter()
            .map(|c| VerdictReport::new(c, check(&inst.profile, &params, c)))
            .collect(),
    };
    match a.format {
        Format::Text => render::analyze_text(out, &report)?,
        Format::Json => render::json(out, &report)?,
        Format::Csv => render::analyze_csv(out, &report)?,
        Format::Dot => unreachable!(),
    }
    Ok(Status::Ok)
}

pub fn check_cmd(a: &CheckArgs, out: &mut dyn Write) -> Result<Status> {
    let wanted = a.concept.rule();
    if let Some(rule) = a.input.rule {
        if FormationRule::from(rule) != wanted {
            return Err(CliError::Usage(format!(
                "concept {} is defined under {wanted}",
                a.concept
            )));
        }
    }
    let inst = input::load_instance(&a.input, Some(wanted))?;
    let params = input::game_params(inst.graph.n(), inst.rule, &a.game)?;
    let verdict = check(&inst.profile, &params, a.concept)?;
    let status = match a.expect {
        Some(e) if e != verdict.holds => Status::Mismatch,
        _ => Status::Ok,
    };
    let report = CheckReport {
        source: inst.source,
        rule: inst.rule.to_string(),
        alpha: q(&params.alpha),
        adversary: params.adversary.to_string(),
        verdict: VerdictReport::new(a.concept, Ok(verdict)),
        expected: a.expect,
    };
    match a.format {
        Format::Text => render::check_text(out, &report)?,
        Format::Json => render::json(out, &report)?,
        f => return Err(unsupported("check", f)),
    }
    Ok(status)
}

pub fn enumerate(a: &EnumerateArgs, out: &mut dyn Write) -> Result<Status> {
    if a.format == Format::Dot {
        return Err(unsupported("enumerate", a.format));
    }
    let s = &a.search;
    let adversary = input::adversary(a.game.adversary, a.game.table.as_deref())?;
    let options = SearchOptions {
        connected_only: !s.all_graphs,
        dedup_isomorphic: s.dedup,
        execution: execution(s.sequential),
    };
    let found = enumerate_equilibria(s.n, &a.game.alpha, &adversary, s.concept, options)?;
    let report = EnumerateReport {
        n: s.n,
        alpha: q(&a.game.alpha),
        adversary: adversary.to_string(),
        concept: s.concept.to_string(),
        connected_only: !s.all_graphs,
        dedup: s.dedup,
        count: found.len(),
        equilibria: found
            .iter()
            .map(|w| EquilibriumReport {
                links: links(&w.graph),
                requests: w.profile.as_ref().map(requests),
                social_cost: xq(&w.social_cost),
            })
            .collect(),
    };
    match a.format {
        Format::Text => render::enumerate_text(out, &report)?,
        Format::Json => render::json(out, &report)?,
        Format::Csv => render::enumerate_csv(out, &report)?,
        Format::Dot => unreachable!(),
    }
    Ok(Status::Ok)
}

pub fn poa(a: &PoaArgs, out: &mut dyn Write) -> Result<Status> {
    let alphas: Vec<Rational> = match (&a.alpha, &a.sweep) {
        (Some(x), _) => vec![x.clone()],
        (None, Some(xs)) if !xs.is_empty() => xs.clone(),
        _ => return Err(CliError::Usage("give --alpha or a non-empty --sweep".into())),
    };
    let format = a
        .format
        .unwrap_or(if a.sweep.is_some() { Format::Csv } else { Format::Text });
    if format == Format::Dot {
        return Err(unsupported("poa", format));
    }
    let adversary = input::adversary(a.adversary, None)?;
    let rule = a.concept.rule();

    let report = if let Some(n) = a.n {
        let options = SearchOptions {
            connected_only: true,
            dedup_isomorphic: a.dedup,
            execution: execution(a.sequential),
        };
        let mut rows = Vec::new();
        for alpha in &alphas {
            let r = price_of_anarchy(n, alpha, &adversary, a.concept, options)?;
            rows.push(PoaRow {
                alpha: q(alpha),
                optimum: q(&r.optimum),
                equilibria: Some(r.equilibria),
                equilibrium: None,
                social_cost: r.worst.as_ref().map(|w| q(&w.social_cost)),
                ratio: r.ratio().map(q),
                links: r.worst.as_ref().map(|w| links(&w.graph)),
                requests: r.worst.as_ref().and_then(|w| w.profile.as_ref()).map(requests),
            });
        }
        PoaReport {
            source: "exhaustive search".into(),
            n,
            adversary: adversary.to_string(),
            concept: a.concept.to_string(),
            rows,
        }
    } else {
        let input_args = InputArgs {
            graph: a.graph.clone(),
            fixture: a.fixture.clone(),
            rule: None,
        };
        if input_args.graph.is_none() && input_args.fixture.is_none() {
            return Err(CliError::Usage(
                "give --n for a search, or --graph/--fixture for a fixed witness".into(),
            ));
        }
        let inst = input::load_instance(&input_args, Some(rule))?;
        let n = inst.graph.n();
        let mut rows = Vec::new();
        for alpha in &alphas {
            let params = GameParams::new(n, alpha.clone(), rule, adversary.clone())?;
            let optimum = optimum_for_rule(n, alpha, rule)?.value;
            let cost = social_cost(&inst.profile, &params)?;
            rows.push(PoaRow {
                alpha: q(alpha),
                optimum: q(&optimum),
                equilibria: None,
                equilibrium: Some(VerdictReport::new(a.concept, check(&inst.profile, &params, a.concept))),
                social_cost: Some(xq(&cost)),
                ratio: Some(ratio(&cost, &optimum)),
                links: Some(links(&inst.graph)),
                requests: requests_if_ulf(&inst),
            });
        }
        PoaReport {
            source: inst.source,
            n,
            adversary: adversary.to_string(),
            concept: a.concept.to_string(),
            rows,
        }
    };
    match format {
        Format::Text => render::poa_text(out, &report)?,
        Format::Json => render::json(out, &report)?,
        Format::Csv => render::poa_csv(out, &report)?,
        Format::Dot => unreachable!(),
    }
    Ok(Status::Ok)
}

pub fn dynamics(a: &DynamicsArgs, out: &mut dyn Write) -> Result<Status> {
    let (source, start) = match a.random_n {
        Some(n) => {
            if n < 3 {
                return Err(CliError::Usage("--random-n needs at least 3 players".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            (
                format!("random graph on {n} players, seed {}", a.seed),
                random_connected_graph_mixed(&mut rng, n),
            )
        }
        None => {
            if a.input.rule == Some(RuleArg::Ulf) {
                return Err(CliError::Usage("pairwise dynamics run under BLF".into()));
            }
            let inst = input::load_instance(&a.input, Some(FormationRule::Bilateral))?;
            (inst.source, inst.graph)
        }
    };
    let params = input::game_params(start.n(), FormationRule::Bilateral, &a.game)?;
    let outcome = pairwise_dynamics(&start, &params, a.policy, a.seed, a.max_steps)?;
    if a.format == Format::Dot {
        let (b, c) = highlights(&outcome.final_graph);
        render::dot(out, &source, &outcome.final_graph, &b, &c)?;
        return Ok(Status::Ok);
    }
    let report = DynamicsReport {
        source,
        alpha: q(&params.alpha),
        adversary: params.adversary.to_string(),
        policy: format!("{:?}", a.policy).to_lowercase(),
        seed: a.seed,
        start: links(&start),
        moves: outcome.trajectory.iter().map(ToString::to_string).collect(),
        stable: outcome.stable,
        final_links: links(&outcome.final_graph),
        final_social_cost: xq(&social_cost_of_graph(&outcome.final_graph, &params)?),
    };
    match a.format {
        Format::Text => render::dynamics_text(out, &report)?,
        Format::Json => render::json(out, &report)?,
        Format::Csv => render::dynamics_csv(out, &report)?,
        Format::Dot => unreachable!(),
    }
    Ok(Status::Ok)
}

pub fn construct(a: &ConstructArgs, out: &mut dyn Write) -> Result<Status> {
    let (spec, fixture) = input::fixture(&a.fixture)?;
    let g = fixture.graph();
    let profile = match &fixture {
        Fixture::Profile { profile, .. } => Some(profile),
        Fixture::Graph(_) => None,
    };
    match a.format {
        Format::Text => match profile {
            Some(s) => write!(out, "{}", input::write_request_list(s))?,
            None => write!(out, "{}", input::write_edge_list(&g))?,
        },
        Format::Json => render::json(
            out,
            &ConstructReport {
                fixture: spec.to_string(),
                rule: match profile {
                    Some(_) => FormationRule::Unilateral,
                    None => FormationRule::Bilateral,
                }
                .to_string(),
                n: g.n(),
                links: links(&g),
                requests: profile.map(requests),
            },
        )?,
        Format::Dot => {
            let (b, c) = highlights(&g);
            render::dot(out, &spec.to_string(), &g, &b, &c)?;
        }
        f => return Err(unsupported("construct", f)),
    }
    Ok(Status::Ok)
}

pub fn oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<Status> {
    if a.max_n < 3 {
        return Err(CliError::Usage("--max-n must be at least 3".into()));
    }
    if !matches!(a.format, Format::Text | Format::Json) {
        return Err(unsupported("oracle", a.format));
    }
    // Graphs are drawn up front so the sample does not depend on scheduling.
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let graphs: Vec<Graph> = (0..a.graphs)
        .map(|_| {
            let n = rng.random_range(3..=a.max_n);
            random_connected_graph_mixed(&mut rng, n)
        })
        .collect();
    let results = execution(a.sequential).map_slice(&graphs, |g| -> anarchy_core::Result<(u64, Vec<OracleMismatch>)> {
        let mut comparisons = 0;
        let mut bad = Vec::new();
        for e in g.links() {
            for v in g.players() {
                comparisons += 1;
                let fast = relevance(g, e, v)?;
                let naive = relevance_naive(g, e, v)?;
                if fast != naive {
                    bad.push(OracleMismatch {
                        graph: links(g),
                        n: g.n(),
                        link: e.to_string(),
                        player: v.get(),
                        fast,
                        naive,
                    });
                }
            }
        }
        Ok((comparisons, bad))
    });
    let mut comparisons = 0;
    let mut mismatches = Vec::new();
    for r in results {
        let (c, bad) = r?;
        comparisons += c;
        mismatches.extend(bad);
    }
    let report = OracleReport {
        seed: a.seed,
        graphs: a.graphs,
        max_n: a.max_n,
        comparisons,
        mismatches: mismatches.len(),
        first_mismatch: mismatches.into_iter().next(),
    };
    match a.format {
        Format::Json => render::json(out, &report)?,
        _ => render::oracle_text(out, &report)?,
    }
    Ok(if report.mismatches == 0 {
        Status::Ok
    } else {
        Status::Mismatch
    })
}
