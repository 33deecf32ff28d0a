use pbpoly::ef::{compile_ef, read_lp, write_lp, Sidecar};
use pbpoly::solvers::{brute_force_solve, ef_objective, lp_max, solve_via_ef, verify_ef};
use pbpoly::structure::{nsg_exact, Limits};
use pbpoly::{PboInstance, Rational};

const MIXED: &str = include_str!("../../../data/mixed.json");
const MCCORMICK: &str = include_str!("../../../data/mccormick.json");

fn compile_round_trip(text: &str) {
    let inst = PboInstance::from_json(text).unwrap();
    let h = inst.hypergraph();
    let (_, order) = nsg_exact(&h.underlying(), &Limits::default()).unwrap();
    let ef = compile_ef(h, &order).unwrap();
    let objective = ef_objective(&inst, &ef.system).unwrap();
    let (lp, sidecar) = write_lp(&ef.system, &objective, inst.offset());
    let parsed = read_lp(&lp, &Sidecar::from_json(&sidecar.to_json()).unwrap()).unwrap();
    assert_eq!(parsed.system.num_vars(), ef.system.num_vars());
    assert_eq!(parsed.system.constraints(), ef.system.constraints());
    assert_eq!(parsed.objective, objective);
    assert!(verify_ef(h, &parsed.system, 30, 5).unwrap().passed());
    let brute = brute_force_solve(&inst, 20).unwrap().optimum;
    let lp_value = lp_max(&parsed.system, &parsed.objective).unwrap().value + &parsed.offset;
    assert_eq!(lp_value, brute);
    assert_eq!(solve_via_ef(&inst, &order).unwrap().optimum, brute);
}

#[test]
fn mixed_instance_round_trips() {
    compile_round_trip(MIXED);
}

#[test]
fn mccormick_round_trips() {
    compile_round_trip(MCCORMICK);
    let inst = PboInstance::from_json(MCCORMICK).unwrap();
    assert_eq!(brute_force_solve(&inst, 20).unwrap().optimum, Rational::zero());
}
