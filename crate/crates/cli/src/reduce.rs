use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use pbpoly::reductions::{
    bqo_to_pbo, max2sat_to_bqo, minor_contract_edge, minor_delete_edge, minor_delete_node, Provenance, TwoCnf,
};
use pbpoly::BqoInstance;

use crate::error::{CliError, CliResult};
use crate::io;

#[derive(Args)]
pub struct Output {
    /// Instance output path [default: stdout]
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Provenance log path [default: stderr]
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Args)]
pub struct Lift {
    /// Instance on the minor
    file: PathBuf,
    /// Graph the instance is lifted to
    #[arg(long)]
    host: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
pub enum ReduceCommand {
    /// Max-2SAT (DIMACS CNF, clauses of at most two literals) to BQO
    Max2sat {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Lift an instance on the host minus a node to the host
    DeleteNode {
        #[command(flatten)]
        lift: Lift,
        #[arg(long)]
        node: String,
    },
    /// Lift an instance on the host minus an edge to the host
    DeleteEdge {
        #[command(flatten)]
        lift: Lift,
        /// Edge as `u,v`
        #[arg(long)]
        edge: String,
    },
    /// Lift an instance on the host with edge `u,v` contracted to `v`
    Contract {
        #[command(flatten)]
        lift: Lift,
        /// Edge as `u,v`; `u` is merged into `v`
        #[arg(long)]
        edge: String,
    },
    /// BQO to PBO by inflating each edge to a host hyperedge
    ToPbo {
        file: PathBuf,
        #[arg(long)]
        host: PathBuf,
        /// `{"edges":[{"edge":["u","v"],"host":["u","v","w"]}]}`
        #[arg(long)]
        map: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

fn bqo(path: &Path) -> CliResult<BqoInstance> {
    let inst = io::instance(path)?;
    BqoInstance::from_pbo(&inst).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn finish(output: &Output, instance_json: String, log: &Provenance) -> CliResult<()> {
    io::emit(output.out.as_deref(), &(instance_json + "\n"))?;
    let log = log.to_json() + "\n";
    match &output.log {
        Some(p) => io::write(p, &log),
        None => {
            eprint!("{log}");
            Ok(())
        }
    }
}

pub fn run(cmd: ReduceCommand) -> CliResult<()> {
    match cmd {
        ReduceCommand::Max2sat { file, output } => {
            let text = io::read(&file)?;
            let f = TwoCnf::parse_dimacs(&text).map_err(|source| CliError::Input { path: file, source })?;
            let r = max2sat_to_bqo(&f);
            finish(&output, r.instance.to_json(), &r.log)
        }
        ReduceCommand::DeleteNode { lift, node } => {
            let r = minor_delete_node(&bqo(&lift.file)?, &node, &io::hypergraph(&lift.host)?)?;
            finish(&lift.output, r.instance.to_json(), &r.log)
        }
        ReduceCommand::DeleteEdge { lift, edge } => {
            let (u, v) = io::node_pair(&edge)?;
            let f = [u, v].into_iter().collect();
            let r = minor_delete_edge(&bqo(&lift.file)?, &f, &io::hypergraph(&lift.host)?)?;
            finish(&lift.output, r.instance.to_json(), &r.log)
        }
        ReduceCommand::Contract { lift, edge } => {
            let (u, v) = io::node_pair(&edge)?;
            let r = minor_contract_edge(&bqo(&lift.file)?, &u, &v, &io::hypergraph(&lift.host)?)?;
            finish(&lift.output, r.instance.to_json(), &r.log)
        }
        ReduceCommand::ToPbo {
            file,
            host,
            map,
            output,
        } => {
            let r = bqo_to_pbo(&bqo(&file)?, &io::hypergraph(&host)?, &io::edge_map(&map)?)?;
            finish(&output, r.instance.to_json(), &r.log)
        }
    }
}
