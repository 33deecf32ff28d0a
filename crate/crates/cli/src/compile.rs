use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use pbpoly::ef::{compile_ef, size_bound, write_lp};
use pbpoly::hypergraph::fmt_set;
use pbpoly::solvers::ef_objective;

use crate::error::CliResult;
use crate::io::{self, OrderArgs};

pub fn sidecar_path(lp: &Path) -> PathBuf {
    let mut p = lp.as_os_str().to_owned();
    p.push(".json");
    PathBuf::from(p)
}

pub fn run(path: &Path, order: &OrderArgs, out: &Path) -> CliResult<()> {
    let inst = io::instance(path)?;
    let h = inst.hypergraph();
    let o = order.resolve(&h.underlying())?;
    let ef = compile_ef(h, &o)?;
    let objective = ef_objective(&inst, &ef.system)?;
    let (lp, sidecar) = write_lp(&ef.system, &objective, inst.offset());
    io::write(out, &lp)?;
    let side = sidecar_path(out);
    io::write(&side, &(sidecar.to_json() + "\n"))?;
    let (vars, cons) = size_bound(h.num_nodes(), h.num_edges(), h.rank().unwrap_or(0), o.gap());
    let mut s = String::new();
    writeln!(s, "lp: {}", out.display()).unwrap();
    writeln!(s, "sidecar: {}", side.display()).unwrap();
    writeln!(s, "order: width {} gap {}", o.width(), o.gap()).unwrap();
    writeln!(s, "variables: {} (bound {vars})", ef.system.num_vars()).unwrap();
    writeln!(s, "constraints: {} (bound {cons})", ef.system.num_constraints()).unwrap();
    writeln!(s, "projection_variables: {}", ef.system.projection().len()).unwrap();
    writeln!(s, "inflations: {}", ef.inflations.len()).unwrap();
    writeln!(s, "steps:").unwrap();
    for (i, step) in ef.steps.iter().enumerate() {
        let nodes: pbpoly::NodeSet = step.nodes.iter().cloned().collect();
        let gap = step.gap.map_or("-".to_string(), |k| k.to_string());
        writeln!(
            s,
            "  {}: {} gap {gap} inflated {} largest_family {} pieces {}",
            i + 1,
            fmt_set(&nodes),
            step.inflated_edges,
            step.largest_family,
            step.pieces.len()
        )
        .unwrap();
    }
    print!("{s}");
    Ok(())
}
