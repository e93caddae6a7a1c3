//! Edge-list files, fixtures, adversary tables and the game they describe.

use std::fs;
use std::path::Path;

use anarchy_core::{
    bilateralize, build_graph, make_fixture, AdversaryKind, CustomTable, Fixture, FixtureSpec, FormationRule,
    GameParams, Graph, Link, StrategyProfile,
};

use crate::args::{AdversaryArg, GameArgs, InputArgs};
use crate::error::{CliError, Result};

/// A parsed edge list: player count and `(v, w)` lines in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    pub pairs: Vec<(u32, u32)>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses `n <count>` followed by `v w` lines; `#` lines and blank lines are skipped.
pub fn parse_edge_list(text: &str, path: &Path) -> Result<EdgeList> {
    let bad = |line: usize, message: String| CliError::Input {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut n = None;
    let mut pairs = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let Some(count) = n else {
            match fields.as_slice() {
                ["n", count] => {
                    let count: usize = count
                        .parse()
                        .map_err(|_| bad(line, format!("player count {count:?} is not a number")))?;
                    if count < StrategyProfile::MIN_PLAYERS {
                        return Err(bad(
                            line,
                            format!("need at least {} players", StrategyProfile::MIN_PLAYERS),
                        ));
                    }
                    n = Some(count);
                    continue;
                }
                _ => return Err(bad(line, format!("expected `n <count>`, found {body:?}"))),
            }
        };
        let [v, w] = fields.as_slice() else {
            return Err(bad(line, format!("expected two players `v w`, found {body:?}")));
        };
        let player = |t: &str| -> Result<u32> {
            let k: u32 = t
                .parse()
                .map_err(|_| bad(line, format!("{t:?} is not a player number")))?;
            if k == 0 || k as usize > count {
                return Err(bad(line, format!("player {k} is outside 1..={count}")));
            }
            Ok(k)
        };
        let (v, w) = (player(v)?, player(w)?);
        if v == w {
            return Err(bad(line, format!("self-link {v} {w}")));
        }
        if !seen.insert((v, w)) {
            return Err(bad(line, format!("{v} {w} listed twice")));
        }
        pairs.push((v, w));
    }
    let n = n.ok_or_else(|| bad(text.lines().count().max(1), "missing `n <count>` header".into()))?;
    Ok(EdgeList { n, pairs })
}

/// The edge-list text of `g`, links in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for link in g.links() {
        let (v, w) = link.endpoints();
        out.push_str(&format!("{v} {w}\n"));
    }
    out
}

/// The requests of a unilateral profile, one `owner other` line each.
pub fn write_request_list(s: &StrategyProfile) -> String {
    let mut out = format!("n {}\n", s.n());
    for (v, w) in s.requests() {
        out.push_str(&format!("{v} {w}\n"));
    }
    out
}

pub fn load_edge_list(path: &Path) -> Result<EdgeList> {
    parse_edge_list(&read(path)?, path)
}

/// Graph from an edge list; a link listed in both orders is an error.
pub fn graph_from_edge_list(list: &EdgeList, path: &Path) -> Result<Graph> {
    let mut links = std::collections::BTreeSet::new();
    for &(v, w) in &list.pairs {
        let link = Link::from_pair(v, w)?;
        if !links.insert(link) {
            return Err(CliError::File {
                path: path.to_path_buf(),
                message: format!("link {link} listed twice"),
            });
        }
    }
    Ok(Graph::from_links(list.n, links)?)
}

pub fn fixture(text: &str) -> Result<(FixtureSpec, Fixture)> {
    let spec: FixtureSpec = text.parse()?;
    Ok((spec, make_fixture(spec)?))
}

/// One concrete game instance: the profile, the graph it builds and its rule.
#[derive(Debug, Clone)]
pub struct Instance {
    pub source: String,
    pub rule: FormationRule,
    pub profile: StrategyProfile,
    pub graph: Graph,
}

/// Resolves `--graph`/`--fixture` under the explicit rule, the `hint`, or the
/// fixture's own rule, in that order; bilateral otherwise.
pub fn load_instance(input: &InputArgs, hint: Option<FormationRule>) -> Result<Instance> {
    let explicit = input.rule.map(FormationRule::from).or(hint);
    if let Some(path) = &input.graph {
        let rule = explicit.unwrap_or(FormationRule::Bilateral);
        let list = load_edge_list(path)?;
        let profile = match rule {
            FormationRule::Bilateral => StrategyProfile::canonical_bilateral(&graph_from_edge_list(&list, path)?)?,
            FormationRule::Unilateral => StrategyProfile::from_requests(list.n, &list.pairs)?,
        };
        return Ok(Instance {
            source: path.display().to_string(),
            rule,
            graph: build_graph(&profile, rule),
            profile,
        });
    }
    let Some(text) = &input.fixture else {
        return Err(CliError::Usage(
            "give the input with --graph FILE or --fixture NAME".into(),
        ));
    };
    let (spec, fixture) = fixture(text)?;
    let (rule, profile) = match (fixture, explicit) {
        (Fixture::Graph(g), None | Some(FormationRule::Bilateral)) => {
            (FormationRule::Bilateral, StrategyProfile::canonical_bilateral(&g)?)
        }
        (Fixture::Graph(_), Some(FormationRule::Unilateral)) => {
            return Err(CliError::Usage(format!(
                "fixture {spec} is a graph without link owners; unilateral analysis needs a profile \
                 fixture or a request list via --graph"
            )))
        }
        (Fixture::Profile { profile, rule }, None) => (rule, profile),
        (Fixture::Profile { profile, rule }, Some(wanted)) if wanted == rule => (rule, profile),
        (Fixture::Profile { profile, .. }, Some(wanted)) => (wanted, bilateralize(&profile)),
    };
    Ok(Instance {
        source: spec.to_string(),
        rule,
        graph: build_graph(&profile, rule),
        profile,
    })
}

pub fn adversary(arg: AdversaryArg, table: Option<&Path>) -> Result<AdversaryKind> {
    match (arg, table) {
        (AdversaryArg::Simple, None) => Ok(AdversaryKind::SimpleMinded),
        (AdversaryArg::Smart, None) => Ok(AdversaryKind::Smart),
        (AdversaryArg::Custom, Some(path)) => {
            let table = CustomTable::from_json(&read(path)?).map_err(|e| CliError::File {
                path: path.to_path_buf(),
                message: e.to_string(),
            })?;
            Ok(AdversaryKind::Custom(table))
        }
        (AdversaryArg::Custom, None) => Err(CliError::Usage("--adversary custom needs --table FILE".into())),
        (_, Some(_)) => Err(CliError::Usage("--table is only used with --adversary custom".into())),
    }
}

pub fn game_params(n: usize, rule: FormationRule, game: &GameArgs) -> Result<GameParams> {
    let kind = adversary(game.adversary, game.table.as_deref())?;
    Ok(GameParams::new(n, game.alpha.clone(), rule, kind)?)
}
