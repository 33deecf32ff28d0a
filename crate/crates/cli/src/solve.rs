use std::path::Path;

use pbpoly::ef::{compile_ef, read_lp, Sidecar};
use pbpoly::solvers::{brute_force_solve, solve_via_ef, verify_ef, ENUMERATION_LIMIT};
use pbpoly::Rational;

use crate::compile::sidecar_path;
use crate::error::{CliError, CliResult};
use crate::io::{self, OrderArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Brute,
    Ef,
}

fn print_solution(optimum: &Rational, assignment: impl Iterator<Item = (String, bool)>) {
    println!("optimum: {optimum}");
    let parts: Vec<String> = assignment.map(|(v, x)| format!("{v}={}", x as u8)).collect();
    println!("assignment: {}", parts.join(" "));
}

pub fn solve(path: &Path, method: Method, order: &OrderArgs) -> CliResult<()> {
    let inst = io::instance(path)?;
    match method {
        Method::Brute => {
            let sol = brute_force_solve(&inst, ENUMERATION_LIMIT)?;
            let first = sol.assignment(sol.argmax[0]);
            print_solution(&sol.optimum, first.into_iter());
            println!("optimal_assignments: {}", sol.argmax.len());
        }
        Method::Ef => {
            let o = order.resolve(&inst.hypergraph().underlying())?;
            let sol = solve_via_ef(&inst, &o)?;
            print_solution(&sol.optimum, sol.assignment.clone().into_iter());
            println!("variables: {}", sol.num_vars);
            println!("constraints: {}", sol.num_constraints);
        }
    }
    Ok(())
}

pub fn verify(
    path: &Path,
    lp: Option<&Path>,
    sidecar: Option<&Path>,
    order: &OrderArgs,
    trials: usize,
    seed: u64,
) -> CliResult<()> {
    let inst = io::instance(path)?;
    let h = inst.hypergraph();
    let sys = match lp {
        Some(lp) => {
            let side = sidecar.map_or_else(|| sidecar_path(lp), Path::to_path_buf);
            let side_text = io::read(&side)?;
            let parsed = Sidecar::from_json(&side_text).map_err(|source| CliError::Input {
                path: side.clone(),
                source,
            })?;
            let text = io::read(lp)?;
            read_lp(&text, &parsed)
                .map_err(|source| CliError::Input {
                    path: lp.to_path_buf(),
                    source,
                })?
                .system
        }
        None => compile_ef(h, &order.resolve(&h.underlying())?)?.system,
    };
    let report = verify_ef(h, &sys, trials, seed)?;
    println!("{}", report.to_json());
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "{} of {trials} trials found a gap between the system and the pseudo-Boolean polytope",
            report.failures.len()
        )))
    }
}
