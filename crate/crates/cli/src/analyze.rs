use std::path::Path;

use pbpoly::structure::{
    beta_acyclic, find_beta_cycle, find_order_bounded_gap, find_order_bounded_width, nsg_exact, nsw_exact,
    nsw_lower_bound_from_cycle, treewidth_upper_bound, BetaCycle, Limits, NestSetEliminationOrder, OrderFile,
};
use pbpoly::{Error, Hypergraph};
use serde::Serialize;

use crate::error::CliResult;
use crate::io;

/// Exact value with a witness order, or the range of `k` searched in vain.
#[derive(Serialize)]
#[serde(untagged)]
enum Measure {
    Exact { value: usize, order: OrderFile },
    Exceeds { searched: [usize; 2] },
}

impl Measure {
    fn line(&self) -> String {
        match self {
            Measure::Exact { value, .. } => value.to_string(),
            Measure::Exceeds { searched } => format!("> {} (searched {}..={})", searched[1], searched[0], searched[1]),
        }
    }
}

#[derive(Serialize)]
struct Report {
    nodes: usize,
    edges: usize,
    signed_edges: usize,
    rank: Option<usize>,
    beta_acyclic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta_order: Option<OrderFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta_cycle: Option<BetaCycle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle_lower_bound: Option<usize>,
    nsw: Measure,
    nsg: Measure,
    treewidth_upper_bound: usize,
}

/// Smallest `k` in `range` accepted by `search`.
fn bounded(
    g: &Hypergraph,
    range: std::ops::RangeInclusive<usize>,
    search: fn(&Hypergraph, usize) -> pbpoly::Result<Option<NestSetEliminationOrder>>,
    value: fn(&NestSetEliminationOrder) -> usize,
) -> pbpoly::Result<Measure> {
    let searched = [*range.start(), *range.end()];
    for k in range {
        if let Some(o) = search(g, k)? {
            return Ok(Measure::Exact {
                value: value(&o),
                order: o.to_file(),
            });
        }
    }
    Ok(Measure::Exceeds { searched })
}

fn exact(found: pbpoly::Result<(usize, NestSetEliminationOrder)>) -> pbpoly::Result<Option<Measure>> {
    match found {
        Ok((value, o)) => Ok(Some(Measure::Exact { value, order: o.to_file() })),
        Err(Error::SizeLimit { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn report(g: &Hypergraph, signed_edges: usize, max_k: usize) -> pbpoly::Result<Report> {
    let limits = Limits::default();
    let order = beta_acyclic(g)?;
    let cycle = if order.is_none() {
        match find_beta_cycle(g, &limits) {
            Ok(c) => c,
            Err(Error::SizeLimit { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let cycle_lower_bound = cycle.as_ref().map(|c| nsw_lower_bound_from_cycle(g, c)).transpose()?;
    let nsw = match exact(nsw_exact(g, &limits))? {
        Some(m) => m,
        None => bounded(g, 1..=max_k.max(1), find_order_bounded_width, NestSetEliminationOrder::width)?,
    };
    let nsg = match exact(nsg_exact(g, &limits))? {
        Some(m) => m,
        None => bounded(g, 0..=max_k, find_order_bounded_gap, NestSetEliminationOrder::gap)?,
    };
    Ok(Report {
        nodes: g.num_nodes(),
        edges: g.num_edges(),
        signed_edges,
        rank: g.rank().ok(),
        beta_acyclic: order.is_some(),
        beta_order: order.map(|o| o.to_file()),
        beta_cycle: cycle,
        cycle_lower_bound,
        nsw,
        nsg,
        treewidth_upper_bound: treewidth_upper_bound(&g.intersection_graph()),
    })
}

fn steps(o: &OrderFile) -> String {
    let parts: Vec<String> = o.steps.iter().map(|s| format!("{{{}}}", s.join(","))).collect();
    parts.join(" ")
}

fn text(r: &Report) -> String {
    let mut lines = vec![
        format!("nodes: {}", r.nodes),
        format!("edges: {}", r.edges),
        format!("signed_edges: {}", r.signed_edges),
        format!("rank: {}", r.rank.map_or("none".to_string(), |k| k.to_string())),
        format!("beta_acyclic: {}", r.beta_acyclic),
    ];
    if let Some(o) = &r.beta_order {
        lines.push(format!("beta_order: {}", steps(o)));
    }
    if let Some(c) = &r.beta_cycle {
        let parts: Vec<String> = c
            .nodes
            .iter()
            .zip(&c.edges)
            .map(|(v, e)| format!("{v} {}", pbpoly::hypergraph::fmt_set(e)))
            .collect();
        lines.push(format!("beta_cycle: {} {}", parts.join(" "), c.nodes[0]));
    }
    if let Some(b) = r.cycle_lower_bound {
        lines.push(format!("cycle_lower_bound: {b}"));
    }
    for (name, m) in [("nsw", &r.nsw), ("nsg", &r.nsg)] {
        lines.push(format!("{name}: {}", m.line()));
        if let Measure::Exact { order, .. } = m {
            lines.push(format!("{name}_order: {}", steps(order)));
        }
    }
    lines.push(format!("treewidth_upper_bound: {}", r.treewidth_upper_bound));
    lines.join("\n") + "\n"
}

pub fn run(path: &Path, json: bool, max_k: usize) -> CliResult<()> {
    let inst = io::instance(path)?;
    let g = inst.hypergraph().underlying();
    let r = report(&g, inst.hypergraph().num_edges(), max_k)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
    } else {
        print!("{}", text(&r));
    }
    Ok(())
}
