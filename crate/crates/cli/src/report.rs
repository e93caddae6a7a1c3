//! Serializable reports. Rationals are exact strings such as `"7/4"`; an
//! infinite cost is `"inf"`.

use serde::Serialize;

use anarchy_core::{CostChange, DeviationWitness, ExtendedRational, Graph, Link, Rational, StrategyProfile, Verdict};

pub fn q(r: &Rational) -> String {
    r.to_string()
}

pub fn xq(r: &ExtendedRational) -> String {
    r.to_string()
}

pub fn links(g: &Graph) -> Vec<String> {
    g.links().map(|l| l.to_string()).collect()
}

pub fn link_set<'a>(ls: impl IntoIterator<Item = &'a Link>) -> Vec<String> {
    ls.into_iter().map(ToString::to_string).collect()
}

/// Requests as `owner>target`.
pub fn requests(s: &StrategyProfile) -> Vec<String> {
    s.requests().map(|(v, w)| format!("{v}>{w}")).collect()
}

#[derive(Debug, Serialize)]
pub struct ChangeReport {
    pub player: u32,
    pub before: String,
    pub after: String,
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    pub deviation: String,
    pub changes: Vec<ChangeReport>,
}

impl From<&DeviationWitness> for WitnessReport {
    fn from(w: &DeviationWitness) -> Self {
        WitnessReport {
            deviation: w.deviation.to_string(),
            changes: w
                .changes
                .iter()
                .map(|CostChange { player, before, after }| ChangeReport {
                    player: player.get(),
                    before: xq(before),
                    after: xq(after),
                })
                .collect(),
        }
    }
}

/// A concept's verdict, or why it could not be decided.
#[derive(Debug, Serialize)]
pub struct VerdictReport {
    pub concept: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerdictReport {
    pub fn new(concept: impl ToString, verdict: anarchy_core::Result<Verdict>) -> Self {
        let concept = concept.to_string();
        match verdict {
            Ok(v) => VerdictReport {
                concept,
                holds: Some(v.holds),
                witness: v.witness.as_ref().map(WitnessReport::from),
                error: None,
            },
            Err(e) => VerdictReport {
                concept,
                holds: None,
                witness: None,
                error: Some(e.to_string()),
            },
        }
    }

    /// `ps: holds`, `pne: fails, player 1 removes [...] (1: 7 -> 11/2)`.
    pub fn line(&self) -> String {
        match (&self.holds, &self.witness, &self.error) {
            (Some(true), _, _) => format!("{}: holds", self.concept),
            (Some(false), Some(w), _) => {
                let changes: Vec<String> = w
                    .changes
                    .iter()
                    .map(|c| format!("{}: {} -> {}", c.player, c.before, c.after))
                    .collect();
                format!("{}: fails, {} ({})", self.concept, w.deviation, changes.join("; "))
            }
            (Some(false), None, _) => format!("{}: fails", self.concept),
            (None, _, Some(e)) => format!("{}: undecided, {e}", self.concept),
            (None, _, None) => format!("{}: undecided", self.concept),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TreeNodeReport {
    pub id: usize,
    pub members: Vec<u32>,
    pub weight: u64,
}

#[derive(Debug, Serialize)]
pub struct TreeLinkReport {
    pub a: usize,
    pub b: usize,
    pub bridge: String,
    pub nu: u64,
    pub sep: u64,
}

#[derive(Debug, Serialize)]
pub struct BridgeTreeReport {
    pub nodes: Vec<TreeNodeReport>,
    pub links: Vec<TreeLinkReport>,
    pub diameter: usize,
}

#[derive(Debug, Serialize)]
pub struct ProbReport {
    pub link: String,
    pub prob: String,
}

#[derive(Debug, Serialize)]
pub struct CriticalReport {
    pub links: Vec<String>,
    pub sep_max: u64,
}

#[derive(Debug, Serialize)]
pub struct PlayerReport {
    pub player: u32,
    pub degree: usize,
    pub building: String,
    pub indirect: String,
    pub total: String,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub source: String,
    pub rule: String,
    pub n: usize,
    pub m: usize,
    pub alpha: String,
    pub adversary: String,
    pub connected: bool,
    pub links: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub requests: Option<Vec<String>>,
    pub bridges: Option<Vec<String>>,
    pub bridge_tree: Option<BridgeTreeReport>,
    pub distribution: Option<Vec<ProbReport>>,
    pub critical: Option<CriticalReport>,
    pub total_separation: Option<u64>,
    pub players: Vec<PlayerReport>,
    pub social_cost: String,
    pub optimum: String,
    pub optimum_shape: String,
    pub ratio: String,
    pub verdicts: Vec<VerdictReport>,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub source: String,
    pub rule: String,
    pub alpha: String,
    pub adversary: String,
    #[serde(flatten)]
    pub verdict: VerdictReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct EquilibriumReport {
    pub links: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub requests: Option<Vec<String>>,
    pub social_cost: String,
}

#[derive(Debug, Serialize)]
pub struct EnumerateReport {
    pub n: usize,
    pub alpha: String,
    pub adversary: String,
    pub concept: String,
    pub connected_only: bool,
    pub dedup: bool,
    pub count: usize,
    pub equilibria: Vec<EquilibriumReport>,
}

/// One price-of-anarchy row: a search result or a fixed witness.
#[derive(Debug, Serialize)]
pub struct PoaRow {
    pub alpha: String,
    pub optimum: String,
    /// Equilibria found by the search; absent for a fixed witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equilibria: Option<usize>,
    /// Whether the fixed witness satisfies the concept.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equilibrium: Option<VerdictReport>,
    pub social_cost: Option<String>,
    pub ratio: Option<String>,
    pub links: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub requests: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct PoaReport {
    pub source: String,
    pub n: usize,
    pub adversary: String,
    pub concept: String,
    pub rows: Vec<PoaRow>,
}

#[derive(Debug, Serialize)]
pub struct DynamicsReport {
    pub source: String,
    pub alpha: String,
    pub adversary: String,
    pub policy: String,
    pub seed: u64,
    pub start: Vec<String>,
    pub moves: Vec<String>,
    pub stable: bool,
    #[serde(rename = "final")]
    pub final_links: Vec<String>,
    pub final_social_cost: String,
}

#[derive(Debug, Serialize)]
pub struct ConstructReport {
    pub fixture: String,
    pub rule: String,
    pub n: usize,
    pub links: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub requests: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct OracleMismatch {
    pub graph: Vec<String>,
    pub n: usize,
    pub link: String,
    pub player: u32,
    pub fast: u64,
    pub naive: u64,
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub seed: u64,
    pub graphs: usize,
    pub max_n: usize,
    pub comparisons: u64,
    pub mismatches: usize,
    pub first_mismatch: Option<OracleMismatch>,
}
