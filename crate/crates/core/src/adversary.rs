//! Probability measures over the links of a built graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::bridge::bridge_tree;
use crate::error::{Error, Result};
use crate::game::{Graph, Link};
use crate::{parse_rational, Rational};

/// A per-link probability table fixed for one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CustomTable {
    probs: BTreeMap<Link, Rational>,
}

impl CustomTable {
    pub fn new(probs: BTreeMap<Link, Rational>) -> Result<Self> {
        if let Some((link, p)) = probs.iter().find(|(_, p)| p.is_negative()) {
            return Err(Error::InvalidDistribution(format!(
                "link {link} has negative probability {p}"
            )));
        }
        Ok(CustomTable { probs })
    }

    /// Parses `{"1-2": "1/3", "2-3": "2/3"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, serde_json::Value> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("adversary table: {e}")))?;
        let mut probs = BTreeMap::new();
        for (key, value) in raw {
            let link: Link = key.parse()?;
            let p = match &value {
                serde_json::Value::String(s) => parse_rational(s)?,
                serde_json::Value::Number(num) if num.is_u64() => Rational::from_integer(num.as_u64().unwrap().into()),
                other => {
                    return Err(Error::Parse(format!(
                        "adversary table: probability of {key} must be a rational string, got {other}"
                    )))
                }
            };
            if probs.insert(link, p).is_some() {
                return Err(Error::Parse(format!("adversary table: link {link} listed twice")));
            }
        }
        CustomTable::new(probs)
    }

    pub fn entries(&self) -> &BTreeMap<Link, Rational> {
        &self.probs
    }
}

/// The adversary destroying one link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdversaryKind {
    /// Uniform over all links.
    SimpleMinded,
    /// Uniform over the links of maximum separation.
    Smart,
    Custom(CustomTable),
}

impl fmt::Display for AdversaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdversaryKind::SimpleMinded => f.write_str("simple"),
            AdversaryKind::Smart => f.write_str("smart"),
            AdversaryKind::Custom(_) => f.write_str("custom"),
        }
    }
}

/// An exact probability for every link of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDistribution {
    probs: BTreeMap<Link, Rational>,
}

impl LinkDistribution {
    /// `Pr{e}`; zero for links outside the table.
    pub fn prob(&self, e: Link) -> Rational {
        self.probs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// All links of the source graph with their probabilities.
    pub fn iter(&self) -> impl Iterator<Item = (Link, &Rational)> {
        self.probs.iter().map(|(l, p)| (*l, p))
    }

    /// Links with positive probability.
    pub fn support(&self) -> BTreeSet<Link> {
        self.probs
            .iter()
            .filter(|(_, p)| p.is_positive())
            .map(|(l, _)| *l)
            .collect()
    }

    pub fn total(&self) -> Rational {
        self.probs.values().sum()
    }
}

/// The links of maximum separation and that maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalLinks {
    pub links: BTreeSet<Link>,
    pub sep_max: u64,
}

pub fn critical_links(g: &Graph) -> Result<CriticalLinks> {
    if g.m() == 0 {
        return Err(Error::NoLinks);
    }
    let tree = bridge_tree(g)?;
    let sep_max = (0..tree.tree_links().len()).map(|t| tree.sep(t)).max().unwrap_or(0);
    let links = if sep_max == 0 {
        g.links().collect()
    } else {
        tree.tree_links()
            .iter()
            .enumerate()
            .filter(|&(t, _)| tree.sep(t) == sep_max)
            .map(|(_, tl)| tl.bridge)
            .collect()
    };
    Ok(CriticalLinks { links, sep_max })
}

/// The measure `kind` places on the links of `g`.
pub fn distribution(g: &Graph, kind: &AdversaryKind) -> Result<LinkDistribution> {
    if g.m() == 0 {
        return Err(Error::NoLinks);
    }
    let probs = match kind {
        AdversaryKind::SimpleMinded => {
            let p = Rational::new(1.into(), g.m().into());
            g.links().map(|l| (l, p.clone())).collect()
        }
        AdversaryKind::Smart => {
            let critical = critical_links(g)?.links;
            let p = Rational::new(1.into(), critical.len().into());
            g.links()
                .map(|l| {
                    let q = if critical.contains(&l) {
                        p.clone()
                    } else {
                        Rational::zero()
                    };
                    (l, q)
                })
                .collect()
        }
        AdversaryKind::Custom(table) => {
            for (link, p) in &table.probs {
                if p.is_positive() && !g.has_link(*link) {
                    return Err(Error::InvalidDistribution(format!(
                        "link {link} carries probability {p} but is not in the graph"
                    )));
                }
            }
            let probs: BTreeMap<Link, Rational> = g
                .links()
                .map(|l| (l, table.probs.get(&l).cloned().unwrap_or_else(Rational::zero)))
                .collect();
            let total: Rational = probs.values().sum();
            if !total.is_one() {
                return Err(Error::InvalidDistribution(format!(
                    "probabilities sum to {total}, not 1"
                )));
            }
            probs
        }
    };
    Ok(LinkDistribution { probs })
}
