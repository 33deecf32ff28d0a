use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use pbpoly::structure::{find_order_bounded_gap, find_order_bounded_width, nsg_exact, Limits, NestSetEliminationOrder, OrderFile};
use pbpoly::{Hypergraph, NodeSet, PboInstance};

use crate::error::{CliError, CliResult};

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to `path`, or to stdout when absent.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn input<T>(path: &Path, parsed: pbpoly::Result<T>) -> CliResult<T> {
    parsed.map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

pub fn instance(path: &Path) -> CliResult<PboInstance> {
    let text = read(path)?;
    input(path, PboInstance::from_json(&text))
}

pub fn hypergraph(path: &Path) -> CliResult<Hypergraph> {
    let text = read(path)?;
    input(path, pbpoly::instance::hypergraph_from_json(&text))
}

pub fn order_file(path: &Path, g: &Hypergraph) -> CliResult<NestSetEliminationOrder> {
    let text = read(path)?;
    let file: OrderFile = input(path, serde_json::from_str(&text).map_err(pbpoly::instance::parse_error))?;
    input(path, file.into_order(g))
}

/// `{"edges":[{"edge":["u","v"],"host":["u","v","w"]}]}`
#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeMapFile {
    edges: Vec<EdgeMapEntry>,
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeMapEntry {
    edge: Vec<String>,
    host: Vec<String>,
}

pub fn edge_map(path: &Path) -> CliResult<BTreeMap<NodeSet, NodeSet>> {
    let text = read(path)?;
    let file: EdgeMapFile = input(path, serde_json::from_str(&text).map_err(pbpoly::instance::parse_error))?;
    let mut map = BTreeMap::new();
    for (i, e) in file.edges.into_iter().enumerate() {
        let edge: NodeSet = e.edge.into_iter().collect();
        if map.insert(edge, e.host.into_iter().collect()).is_some() {
            return Err(CliError::Input {
                path: path.to_path_buf(),
                source: pbpoly::Error::InvalidInstance(format!("edges[{i}] repeats an earlier edge")),
            });
        }
    }
    Ok(map)
}

/// Parses `a,b` into a node set of two nodes, keeping the given order.
pub fn node_pair(text: &str) -> CliResult<(String, String)> {
    match text.split(',').map(str::trim).collect::<Vec<_>>().as_slice() {
        [u, v] if !u.is_empty() && !v.is_empty() && u != v => Ok((u.to_string(), v.to_string())),
        _ => Err(CliError::Usage(format!("expected two distinct nodes `u,v`, got {text:?}"))),
    }
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct OrderArgs {
    /// Search for an order with gap at most K
    #[arg(long, value_name = "K", conflicts_with_all = ["width", "order"])]
    pub gap: Option<usize>,
    /// Search for an order with width at most K
    #[arg(long, value_name = "K", conflicts_with = "order")]
    pub width: Option<usize>,
    /// Read the elimination order from a JSON file
    #[arg(long, value_name = "FILE")]
    pub order: Option<PathBuf>,
}

impl OrderArgs {
    /// The requested order; without options, one of minimum gap.
    pub fn resolve(&self, g: &Hypergraph) -> CliResult<NestSetEliminationOrder> {
        if let Some(path) = &self.order {
            return order_file(path, g);
        }
        if let Some(k) = self.gap {
            return find_order_bounded_gap(g, k)?.ok_or_else(|| CliError::NoOrder(format!("gap at most {k}")));
        }
        if let Some(k) = self.width {
            return find_order_bounded_width(g, k)?.ok_or_else(|| CliError::NoOrder(format!("width at most {k}")));
        }
        Ok(nsg_exact(g, &Limits::default())?.1)
    }
}
