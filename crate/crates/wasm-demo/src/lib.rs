use pbpoly::ef::{compile_ef, size_bound, write_lp};
use pbpoly::solvers::{brute_force_solve, ef_objective, solve_via_ef, verify_ef, ENUMERATION_LIMIT};
use pbpoly::structure::{beta_acyclic, find_order_bounded_gap, nsg_exact, nsw_exact, Limits, NestSetEliminationOrder};
use pbpoly::{Hypergraph, PboInstance};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest node count the page accepts.
const PAGE_NODES: usize = 12;

fn parse(text: &str) -> Result<PboInstance, String> {
    let inst = PboInstance::from_json(text).map_err(|e| e.to_string())?;
    let n = inst.hypergraph().num_nodes();
    if n > PAGE_NODES {
        return Err(format!("{n} nodes; the page handles at most {PAGE_NODES}"));
    }
    Ok(inst)
}

fn order_json(o: &NestSetEliminationOrder) -> Value {
    serde_json::to_value(o.to_file()).expect("serializable")
}

fn order(g: &Hypergraph, gap: Option<usize>) -> Result<NestSetEliminationOrder, String> {
    match gap {
        Some(k) => find_order_bounded_gap(g, k)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no elimination order with gap at most {k}")),
        None => nsg_exact(g, &Limits::default()).map(|(_, o)| o).map_err(|e| e.to_string()),
    }
}

/// Nodes, signed edges and nest-set measures.
pub fn analyze_json(text: &str) -> Result<String, String> {
    let inst = parse(text)?;
    let h = inst.hypergraph();
    let g = h.underlying();
    let limits = Limits::default();
    let (nsw, w) = nsw_exact(&g, &limits).map_err(|e| e.to_string())?;
    let (nsg, k) = nsg_exact(&g, &limits).map_err(|e| e.to_string())?;
    let beta = beta_acyclic(&g).map_err(|e| e.to_string())?;
    Ok(json!({
        "nodes": h.nodes(),
        "edges": h.edges().iter().map(|s| s.key()).collect::<Vec<_>>(),
        "supports": g.edges(),
        "beta_acyclic": beta.is_some(),
        "nsw": nsw,
        "nsw_order": order_json(&w),
        "nsg": nsg,
        "nsg_order": order_json(&k),
    })
    .to_string())
}

/// LP text and size ledger of the extended formulation.
pub fn compile_json(text: &str, gap: Option<usize>) -> Result<String, String> {
    let inst = parse(text)?;
    let h = inst.hypergraph();
    let o = order(&h.underlying(), gap)?;
    let ef = compile_ef(h, &o).map_err(|e| e.to_string())?;
    let objective = ef_objective(&inst, &ef.system).map_err(|e| e.to_string())?;
    let (lp, _) = write_lp(&ef.system, &objective, inst.offset());
    let (vars, cons) = size_bound(h.num_nodes(), h.num_edges(), h.rank().unwrap_or(0), o.gap());
    Ok(json!({
        "order": order_json(&o),
        "variables": ef.system.num_vars(),
        "variable_bound": vars,
        "constraints": ef.system.num_constraints(),
        "constraint_bound": cons,
        "inflations": ef.inflations.len(),
        "lp": lp,
    })
    .to_string())
}

/// Optimum by enumeration and by the formulation, plus a vertex check.
pub fn solve_json(text: &str, trials: usize, seed: u64) -> Result<String, String> {
    let inst = parse(text)?;
    let h = inst.hypergraph();
    let brute = brute_force_solve(&inst, ENUMERATION_LIMIT).map_err(|e| e.to_string())?;
    let o = order(&h.underlying(), None)?;
    let ef = solve_via_ef(&inst, &o).map_err(|e| e.to_string())?;
    let sys = compile_ef(h, &o).map_err(|e| e.to_string())?.system;
    let report = verify_ef(h, &sys, trials, seed).map_err(|e| e.to_string())?;
    Ok(json!({
        "brute_optimum": brute.optimum.to_string(),
        "optimal_assignments": brute.argmax.len(),
        "ef_optimum": ef.optimum.to_string(),
        "assignment": ef.assignment,
        "trials": trials,
        "failures": report.failures.len(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn analyze(text: &str) -> Result<String, JsError> {
    analyze_json(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn compile(text: &str, gap: Option<usize>) -> Result<String, JsError> {
    compile_json(text, gap).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn solve(text: &str, trials: usize, seed: u64) -> Result<String, JsError> {
    solve_json(text, trials, seed).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MCCORMICK: &str = include_str!("../../../data/mccormick.json");
    const TRIANGLE: &str = include_str!("../../../data/triangle.json");

    fn value(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn analyze_triangle() {
        let v = value(analyze_json(TRIANGLE).unwrap());
        assert_eq!(v["nsw"], 2);
        assert_eq!(v["beta_acyclic"], false);
        assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn compile_mccormick() {
        let v = value(compile_json(MCCORMICK, None).unwrap());
        assert_eq!(v["variables"], 7);
        assert!(v["lp"].as_str().unwrap().starts_with("\\"));
        assert!(compile_json(TRIANGLE, Some(0)).unwrap_err().contains("gap at most 0"));
    }

    #[test]
    fn solve_agrees() {
        let v = value(solve_json(TRIANGLE, 5, 1).unwrap());
        assert_eq!(v["brute_optimum"], "6");
        assert_eq!(v["ef_optimum"], "6");
        assert_eq!(v["failures"], 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(analyze_json("{").is_err());
    }
}
