//! Text, CSV and DOT renderings of the reports.

use std::collections::BTreeSet;
use std::io::Write;

use serde::Serialize;

use anarchy_core::{Graph, Link};

use crate::report::*;

pub fn json<W: Write + ?Sized, T: Serialize>(out: &mut W, value: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

fn joined(xs: &[String]) -> String {
    if xs.is_empty() {
        "(none)".into()
    } else {
        xs.join(" ")
    }
}

/// Undirected DOT; bridges are bold, critical links red.
pub fn dot<W: Write + ?Sized>(
    out: &mut W,
    name: &str,
    g: &Graph,
    bridges: &BTreeSet<Link>,
    critical: &BTreeSet<Link>,
) -> std::io::Result<()> {
    writeln!(out, "graph \"{name}\" {{")?;
    writeln!(out, "  node [shape=circle];")?;
    for v in g.players() {
        writeln!(out, "  {v};")?;
    }
    for link in g.links() {
        let (v, w) = link.endpoints();
        let mut attrs = Vec::new();
        if bridges.contains(&link) {
            attrs.push("style=bold");
        }
        if critical.contains(&link) {
            attrs.push("color=red");
        }
        if attrs.is_empty() {
            writeln!(out, "  {v} -- {w};")?;
        } else {
            writeln!(out, "  {v} -- {w} [{}];", attrs.join(", "))?;
        }
    }
    writeln!(out, "}}")
}

pub fn analyze_text<W: Write + ?Sized>(out: &mut W, r: &AnalyzeReport) -> std::io::Result<()> {
    writeln!(out, "source: {}", r.source)?;
    writeln!(
        out,
        "rule: {}  n: {}  m: {}  alpha: {}  adversary: {}",
        r.rule, r.n, r.m, r.alpha, r.adversary
    )?;
    writeln!(out, "connected: {}", r.connected)?;
    writeln!(out, "links: {}", joined(&r.links))?;
    if let Some(reqs) = &r.requests {
        writeln!(out, "requests: {}", joined(reqs))?;
    }
    if let Some(b) = &r.bridges {
        writeln!(out, "bridges: {}", joined(b))?;
    }
    if let Some(t) = &r.bridge_tree {
        writeln!(out, "bridge tree: {} nodes, diameter {}", t.nodes.len(), t.diameter)?;
        for node in &t.nodes {
            let members: Vec<String> = node.members.iter().map(ToString::to_string).collect();
            writeln!(
                out,
                "  node {}: weight {} {{{}}}",
                node.id,
                node.weight,
                members.join(",")
            )?;
        }
        for l in &t.links {
            writeln!(out, "  {} -- {} via {}: nu {} sep {}", l.a, l.b, l.bridge, l.nu, l.sep)?;
        }
    }
    if let Some(c) = &r.critical {
        writeln!(out, "critical links (sep {}): {}", c.sep_max, joined(&c.links))?;
    }
    writeln!(out, "total separation: {}", opt(&r.total_separation))?;
    if let Some(d) = &r.distribution {
        let parts: Vec<String> = d.iter().map(|p| format!("{}:{}", p.link, p.prob)).collect();
        writeln!(out, "adversary distribution: {}", joined(&parts))?;
    }
    writeln!(out, "player  degree  building  indirect  total")?;
    for p in &r.players {
        writeln!(
            out,
            "{:>6}  {:>6}  {:>8}  {:>8}  {:>5}",
            p.player, p.degree, p.building, p.indirect, p.total
        )?;
    }
    writeln!(out, "social cost: {}", r.social_cost)?;
    writeln!(out, "optimum: {} ({})", r.optimum, r.optimum_shape)?;
    writeln!(out, "ratio: {}", r.ratio)?;
    for v in &r.verdicts {
        writeln!(out, "{}", v.line())?;
    }
    Ok(())
}

pub fn analyze_csv<W: Write + ?Sized>(out: &mut W, r: &AnalyzeReport) -> std::io::Result<()> {
    writeln!(out, "player,degree,building,indirect,total")?;
    for p in &r.players {
        writeln!(
            out,
            "{},{},{},{},{}",
            p.player, p.degree, p.building, p.indirect, p.total
        )?;
    }
    Ok(())
}

pub fn check_text<W: Write + ?Sized>(out: &mut W, r: &CheckReport) -> std::io::Result<()> {
    writeln!(out, "{}", r.verdict.line())?;
    if let Some(expected) = r.expected {
        let matches = r.verdict.holds == Some(expected);
        writeln!(
            out,
            "expected {expected}: {}",
            if matches { "match" } else { "MISMATCH" }
        )?;
    }
    Ok(())
}

pub fn enumerate_text<W: Write + ?Sized>(out: &mut W, r: &EnumerateReport) -> std::io::Result<()> {
    writeln!(
        out,
        "{} {} equilibria on {} players at alpha {} ({} adversary{})",
        r.count,
        r.concept,
        r.n,
        r.alpha,
        r.adversary,
        if r.dedup { ", up to isomorphism" } else { "" }
    )?;
    for e in &r.equilibria {
        match &e.requests {
            Some(reqs) => writeln!(
                out,
                "{}  [{}]  cost {}",
                joined(&e.links),
                reqs.join(" "),
                e.social_cost
            )?,
            None => writeln!(out, "{}  cost {}", joined(&e.links), e.social_cost)?,
        }
    }
    Ok(())
}

pub fn enumerate_csv<W: Write + ?Sized>(out: &mut W, r: &EnumerateReport) -> std::io::Result<()> {
    writeln!(out, "index,m,links,requests,social_cost")?;
    for (i, e) in r.equilibria.iter().enumerate() {
        let reqs = e.requests.as_ref().map(|x| x.join(" ")).unwrap_or_default();
        writeln!(
            out,
            "{i},{},{},{reqs},{}",
            e.links.len(),
            e.links.join(" "),
            e.social_cost
        )?;
    }
    Ok(())
}

pub fn poa_text<W: Write + ?Sized>(out: &mut W, r: &PoaReport) -> std::io::Result<()> {
    writeln!(
        out,
        "{}: n {}  concept {}  adversary {}",
        r.source, r.n, r.concept, r.adversary
    )?;
    for row in &r.rows {
        writeln!(out, "alpha {}: optimum {}", row.alpha, row.optimum)?;
        if let Some(k) = row.equilibria {
            writeln!(out, "  equilibria: {k}")?;
        }
        if let Some(v) = &row.equilibrium {
            writeln!(out, "  {}", v.line())?;
        }
        writeln!(out, "  social cost: {}", opt(&row.social_cost))?;
        writeln!(out, "  ratio: {}", opt(&row.ratio))?;
        if let Some(ls) = &row.links {
            writeln!(out, "  witness: {}", joined(ls))?;
        }
        if let Some(reqs) = &row.requests {
            writeln!(out, "  requests: {}", joined(reqs))?;
        }
    }
    Ok(())
}

pub fn poa_csv<W: Write + ?Sized>(out: &mut W, r: &PoaReport) -> std::io::Result<()> {
    writeln!(out, "alpha,optimum,equilibria,equilibrium,social_cost,ratio,links")?;
    for row in &r.rows {
        let holds = row.equilibrium.as_ref().and_then(|v| v.holds);
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.alpha,
            row.optimum,
            opt(&row.equilibria),
            opt(&holds),
            opt(&row.social_cost),
            opt(&row.ratio),
            row.links.as_ref().map(|l| l.join(" ")).unwrap_or_default()
        )?;
    }
    Ok(())
}

pub fn dynamics_text<W: Write + ?Sized>(out: &mut W, r: &DynamicsReport) -> std::io::Result<()> {
    writeln!(out, "start: {}", joined(&r.start))?;
    for (i, m) in r.moves.iter().enumerate() {
        writeln!(out, "step {}: {m}", i + 1)?;
    }
    writeln!(
        out,
        "{} after {} moves",
        if r.stable { "stable" } else { "step budget exhausted" },
        r.moves.len()
    )?;
    writeln!(out, "final: {}", joined(&r.final_links))?;
    writeln!(out, "final social cost: {}", r.final_social_cost)
}

pub fn dynamics_csv<W: Write + ?Sized>(out: &mut W, r: &DynamicsReport) -> std::io::Result<()> {
    writeln!(out, "step,move")?;
    for (i, m) in r.moves.iter().enumerate() {
        writeln!(out, "{},{m}", i + 1)?;
    }
    Ok(())
}

pub fn oracle_text<W: Write + ?Sized>(out: &mut W, r: &OracleReport) -> std::io::Result<()> {
    writeln!(
        out,
        "{} graphs (n <= {}, seed {}): {} relevance comparisons, {} mismatches",
        r.graphs, r.max_n, r.seed, r.comparisons, r.mismatches
    )?;
    if let Some(m) = &r.first_mismatch {
        writeln!(
            out,
            "first mismatch: n {} link {} player {}: fast {} naive {} in {}",
            m.n,
            m.link,
            m.player,
            m.fast,
            m.naive,
            m.graph.join(" ")
        )?;
    }
    Ok(())
}
