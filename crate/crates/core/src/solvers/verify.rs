use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::enumerate::{pbs_coordinates, pbs_linear_max, ENUMERATION_LIMIT};
use super::simplex::Simplex;
use crate::ef::{compile_ef, PolyhedralSystem, VarKey};
use crate::error::{Error, Result};
use crate::hypergraph::{NodeId, SignedHypergraph};
use crate::instance::PboInstance;
use crate::rational::Rational;
use crate::structure::NestSetEliminationOrder;

/// Trial objectives are drawn uniformly from `-OBJECTIVE_RANGE..=OBJECTIVE_RANGE`.
pub const OBJECTIVE_RANGE: i64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub trials: usize,
    pub seed: u64,
    pub failures: Vec<TrialFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: usize,
    /// Coefficients by projection variable.
    pub objective: BTreeMap<String, i64>,
    pub lp_value: Option<Rational>,
    pub oracle_value: Rational,
    /// LP optimum restricted to the projection variables.
    pub lp_witness: Option<BTreeMap<String, Rational>>,
    /// An optimal node assignment of the oracle.
    pub oracle_witness: BTreeMap<NodeId, bool>,
    pub error: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// For each projection variable of `sys`, its coordinate in the pseudo-Boolean
/// set of `h`.
fn projection_coordinates(h: &SignedHypergraph, sys: &PolyhedralSystem) -> Result<Vec<(usize, usize)>> {
    let coords = pbs_coordinates(h);
    let position: BTreeMap<&VarKey, usize> = coords.iter().enumerate().map(|(i, k)| (k, i)).collect();
    sys.projection()
        .into_iter()
        .map(|j| {
            let key = &sys.variables()[j].key;
            position
                .get(key)
                .map(|&i| (j, i))
                .ok_or_else(|| Error::InvalidSystem(format!("projection variable {key} is not a node or signed edge of the hypergraph")))
        })
        .collect()
}

fn trial_objective(seed: u64, trial: usize, count: usize) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    (0..count).map(|_| rng.gen_range(-OBJECTIVE_RANGE..=OBJECTIVE_RANGE)).collect()
}

fn node_assignment(h: &SignedHypergraph, mask: u64) -> BTreeMap<NodeId, bool> {
    h.nodes().iter().enumerate().map(|(i, v)| (v.clone(), mask >> i & 1 == 1)).collect()
}

/// Compares LP maxima over `sys` with brute-force maxima over the
/// pseudo-Boolean set of `h` for `trials` random integer objectives on the
/// projection variables. Deterministic in `(seed, trials)`.
/// The all-false node assignment read through the variable keys: edges take
/// their truth value there and a λ variable is 1 exactly on the zero pattern.
/// Feasible for compiled systems, so phase one starts from it.
pub fn origin_start(sys: &PolyhedralSystem) -> Vec<bool> {
    sys.variables()
        .iter()
        .map(|var| match &var.key {
            VarKey::Node(_) => false,
            VarKey::Edge(s) => s.evaluate(|_| false),
            VarKey::Lambda { bits, .. } => bits.bytes().all(|b| b == b'0'),
        })
        .collect()
}

pub fn verify_ef(h: &SignedHypergraph, sys: &PolyhedralSystem, trials: usize, seed: u64) -> Result<VerificationReport> {
    let proj = projection_coordinates(h, sys)?;
    let ncoords = h.nodes().len() + h.edges().len();
    if h.nodes().len() > ENUMERATION_LIMIT {
        return Err(Error::SizeLimit {
            what: "nodes to enumerate",
            size: h.nodes().len(),
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut simplex = if trials > 0 { Some(Simplex::with_start(sys, &origin_start(sys))) } else { None };
    let mut failures = Vec::new();
    for trial in 0..trials {
        let draw = trial_objective(seed, trial, proj.len());
        let mut c = vec![Rational::zero(); ncoords];
        let mut objective = BTreeMap::new();
        let mut named = BTreeMap::new();
        for (&(j, i), &a) in proj.iter().zip(&draw) {
            c[i] = Rational::from_int(a);
            objective.insert(j, Rational::from_int(a));
            named.insert(sys.variables()[j].key.to_string(), a);
        }
        let (oracle_value, oracle_mask) = pbs_linear_max(h, &c, ENUMERATION_LIMIT)?;
        let lp = match simplex.as_mut().expect("built when trials > 0") {
            Ok(s) => s.maximize(&objective),
            Err(e) => Err(e.clone()),
        };
        let (lp_value, lp_witness, error) = match lp {
            Ok(sol) if sol.value == oracle_value => continue,
            Ok(sol) => {
                let witness = proj
                    .iter()
                    .map(|&(j, _)| (sys.variables()[j].key.to_string(), sol.point[j].clone()))
                    .collect();
                (Some(sol.value), Some(witness), None)
            }
            Err(e) => (None, None, Some(e.to_string())),
        };
        failures.push(TrialFailure {
            trial,
            objective: named,
            lp_value,
            oracle_value,
            lp_witness,
            oracle_witness: node_assignment(h, oracle_mask),
            error,
        });
    }
    Ok(VerificationReport { trials, seed, failures })
}

/// `c · 2^(p+1) + Σ_k 2^k x_k` over the projection variables `x_0..x_p`:
/// maximizes `c` first and separates every pair of binary projections.
fn perturbed(c: &BTreeMap<usize, BigInt>, proj: &[usize]) -> BTreeMap<usize, Rational> {
    let scale = BigInt::one() << (proj.len() + 1);
    let mut out: BTreeMap<usize, BigInt> = c.iter().map(|(j, a)| (*j, a * &scale)).collect();
    for (k, &j) in proj.iter().enumerate() {
        *out.entry(j).or_default() += BigInt::one() << k;
    }
    out.into_iter()
        .map(|(j, a)| (j, a.to_string().parse().expect("integer")))
        .collect()
}

/// Node assignment read off a point whose projection is a pseudo-Boolean
/// point of `h`, or `None` when the projection is fractional or inconsistent.
pub fn binary_projection(h: &SignedHypergraph, sys: &PolyhedralSystem, point: &[Rational]) -> Option<BTreeMap<NodeId, bool>> {
    let mut nodes = BTreeMap::new();
    for v in h.nodes() {
        let j = sys.index_of(&VarKey::Node(v.clone()))?;
        let x = &point[j];
        if !(x.is_zero() || *x == Rational::one()) {
            return None;
        }
        nodes.insert(v.clone(), !x.is_zero());
    }
    for s in h.edges() {
        let j = sys.index_of(&VarKey::Edge(s.clone()))?;
        let expected = s.evaluate(|v| nodes[v]);
        if point[j] != if expected { Rational::one() } else { Rational::zero() } {
            return None;
        }
    }
    Some(nodes)
}

/// Checks that an optimum of the integer objective `c` over `sys` is attained
/// at a pseudo-Boolean point, by re-solving with a perturbation that makes
/// the optimal projection unique. Returns that point's node assignment.
pub fn integral_optimum(
    h: &SignedHypergraph,
    sys: &PolyhedralSystem,
    simplex: &mut Simplex,
    c: &BTreeMap<usize, BigInt>,
) -> Result<Option<BTreeMap<NodeId, bool>>> {
    let proj = sys.projection();
    let sol = simplex.maximize(&perturbed(c, &proj))?;
    Ok(binary_projection(h, sys, &sol.point))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EfSolution {
    pub optimum: Rational,
    pub assignment: BTreeMap<NodeId, bool>,
    pub num_vars: usize,
    pub num_constraints: usize,
}

/// The instance objective on the projection variables of `sys`, without the
/// offset.
pub fn ef_objective(inst: &PboInstance, sys: &PolyhedralSystem) -> Result<BTreeMap<usize, Rational>> {
    let index = |key: VarKey| {
        sys.index_of(&key)
            .ok_or_else(|| Error::InvalidSystem(format!("no variable for {key}")))
    };
    let mut costs = BTreeMap::new();
    for (v, c) in inst.node_costs() {
        costs.insert(index(VarKey::Node(v.clone()))?, c.clone());
    }
    for (s, c) in inst.edge_costs() {
        if !c.is_zero() {
            costs.insert(index(VarKey::Edge(s.clone()))?, c.clone());
        }
    }
    Ok(costs)
}

/// Solves the instance by linear programming over its compiled extended
/// formulation.
pub fn solve_via_ef(inst: &PboInstance, order: &NestSetEliminationOrder) -> Result<EfSolution> {
    let h = inst.hypergraph();
    let sys = compile_ef(h, order)?.system;
    let costs = ef_objective(inst, &sys)?;
    let lcm = costs.values().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
    let integral: BTreeMap<usize, BigInt> = costs
        .iter()
        .map(|(j, c)| (*j, c.numer() * (&lcm / c.denom())))
        .collect();
    let mut simplex = Simplex::with_start(&sys, &origin_start(&sys))?;
    let assignment = integral_optimum(h, &sys, &mut simplex, &integral)?
        .ok_or_else(|| Error::InvalidSystem("extended formulation optimum is not a pseudo-Boolean point".into()))?;
    let optimum = inst.evaluate(|v| assignment[v]);
    Ok(EfSolution {
        optimum,
        assignment,
        num_vars: sys.num_vars(),
        num_constraints: sys.num_constraints(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ef::{Relation, Role};
    use crate::solvers::{brute_force_solve, lp_max};
    use crate::structure::{beta_acyclic, nsg_exact, Limits};

    fn mccormick() -> (SignedHypergraph, PolyhedralSystem) {
        let h = SignedHypergraph::from_specs(&["a", "b"], &["a+ b+"]);
        let mut sys = PolyhedralSystem::new();
        let a = sys.variable(VarKey::Node("a".into()), Role::Node);
        let b = sys.variable(VarKey::Node("b".into()), Role::Node);
        let s = sys.variable(VarKey::Edge(h.edges().iter().next().unwrap().clone()), Role::SignedEdge);
        let one = Rational::one;
        let neg = || Rational::from_int(-1);
        sys.push_indexed(vec![(s, one()), (a, neg())], Relation::Le, Rational::zero());
        sys.push_indexed(vec![(s, one()), (b, neg())], Relation::Le, Rational::zero());
        sys.push_indexed(vec![(s, one()), (a, neg()), (b, neg())], Relation::Ge, neg());
        (h, sys)
    }

    #[test]
    fn mccormick_hull_passes() {
        let (h, sys) = mccormick();
        let report = verify_ef(&h, &sys, 50, 7).unwrap();
        assert!(report.passed(), "{}", report.to_json());
        assert_eq!(report.trials, 50);
    }

    #[test]
    fn weakened_mccormick_fails() {
        let (h, mut sys) = mccormick();
        sys.remove_constraint(2);
        let report = verify_ef(&h, &sys, 50, 7).unwrap();
        assert!(!report.passed());
        let f = &report.failures[0];
        assert!(f.lp_value.as_ref().unwrap() > &f.oracle_value);
        assert!(f.lp_witness.is_some());
    }

    #[test]
    fn zero_trials_is_vacuous() {
        let (h, mut sys) = mccormick();
        sys.remove_constraint(0);
        let report = verify_ef(&h, &sys, 0, 1).unwrap();
        assert!(report.passed());
        assert!(report.failures.is_empty());
    }

    #[test]
    fn deterministic_in_seed() {
        let (h, mut sys) = mccormick();
        sys.remove_constraint(2);
        assert_eq!(verify_ef(&h, &sys, 30, 99).unwrap(), verify_ef(&h, &sys, 30, 99).unwrap());
        let draws: Vec<_> = (0..5).map(|t| trial_objective(3, t, 4)).collect();
        assert_ne!(draws[0], draws[1]);
        assert!(draws.iter().flatten().all(|a| (-10..=10).contains(a)));
    }

    #[test]
    fn rejects_foreign_projection_variables() {
        let (_, sys) = mccormick();
        let other = SignedHypergraph::from_specs(&["a", "b"], &["a+ b-"]);
        assert!(verify_ef(&other, &sys, 5, 0).is_err());
    }

    #[test]
    fn mccormick_vertex_objectives() {
        let (_, sys) = mccormick();
        let obj = |c: [i64; 3]| c.iter().enumerate().map(|(j, a)| (j, Rational::from_int(*a))).collect();
        assert_eq!(lp_max(&sys, &obj([-1, -1, 1])).unwrap().value, Rational::zero());
        assert_eq!(lp_max(&sys, &obj([0, 0, 0])).unwrap().value, Rational::zero());
    }

    #[test]
    fn compiled_cycle_is_exact_and_integral() {
        let h = SignedHypergraph::from_specs(
            &["a", "b", "c", "d"],
            &["a+ b+", "b+ c-", "c+ d+", "a- d+", "a+ c+ d-"],
        );
        let (_, order) = nsg_exact(&h.underlying(), &Limits::default()).unwrap();
        let sys = compile_ef(&h, &order).unwrap().system;
        let report = verify_ef(&h, &sys, 50, 11).unwrap();
        assert!(report.passed(), "{}", report.to_json());
        let mut simplex = Simplex::new(&sys).unwrap();
        for t in 0..20 {
            let proj = sys.projection();
            let c = trial_objective(5, t, proj.len())
                .into_iter()
                .zip(&proj)
                .map(|(a, &j)| (j, BigInt::from(a)))
                .collect();
            assert!(integral_optimum(&h, &sys, &mut simplex, &c).unwrap().is_some());
        }
    }

    #[test]
    fn ef_solve_matches_brute_force() {
        let h = SignedHypergraph::from_specs(&["a", "b", "c"], &["a+ b-", "a- b+ c+", "b+ c+"]);
        let costs = h
            .edges()
            .iter()
            .zip([Rational::new(3, 2), Rational::from_int(-2), Rational::new(5, 3)])
            .map(|(s, c)| (s.clone(), c))
            .collect();
        let nodes = [("a".to_string(), Rational::new(-1, 2)), ("c".to_string(), Rational::from_int(-1))].into();
        let p = PboInstance::new(h.clone(), nodes, costs, Rational::from_int(4)).unwrap();
        let order = beta_acyclic(&h.underlying()).unwrap().unwrap();
        let ef = solve_via_ef(&p, &order).unwrap();
        let bf = brute_force_solve(&p, 20).unwrap();
        assert_eq!(ef.optimum, bf.optimum);
        assert!(bf.is_optimal(|v| ef.assignment[v]));
    }
}
