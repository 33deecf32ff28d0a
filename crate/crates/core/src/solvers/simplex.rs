//! Exact bounded-variable primal simplex over rationals with Bland's rule.

use std::collections::BTreeMap;

use crate::ef::{PolyhedralSystem, Relation};
use crate::error::{Error, Result};
use crate::rational::Rational;

const MAX_PIVOTS: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    /// Values of the system's variables.
    pub point: Vec<Rational>,
}

/// Maximizes `Σ objective[j] x_j` over `sys` with `0 ≤ x ≤ 1`.
pub fn lp_max(sys: &PolyhedralSystem, objective: &BTreeMap<usize, Rational>) -> Result<LpSolution> {
    Simplex::new(sys)?.maximize(objective)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Structural,
    Slack,
    Artificial,
}

/// Sparse row, sorted by column.
type Row = Vec<(usize, Rational)>;

fn entry(row: &Row, j: usize) -> Option<&Rational> {
    row.binary_search_by_key(&j, |e| e.0).ok().map(|p| &row[p].1)
}

/// `row - f · pivot`, dropping cancelled entries.
fn eliminate(row: Row, f: &Rational, pivot: &Row) -> Row {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let mut a = row.into_iter().peekable();
    let mut b = pivot.iter().peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some((ka, _)), Some((kb, _))) if ka == kb => {
                let (k, mut v) = a.next().expect("peeked");
                let (_, w) = b.next().expect("peeked");
                v.sub_mul_assign(f, w);
                if !v.is_zero() {
                    out.push((k, v));
                }
            }
            (Some((ka, _)), Some((kb, _))) if ka < kb => out.push(a.next().expect("peeked")),
            (_, Some(_)) => {
                let (k, w) = b.next().expect("peeked");
                out.push((*k, -(f * w)));
            }
            (Some(_), None) => out.push(a.next().expect("peeked")),
            (None, None) => return out,
        }
    }
}

/// A feasible basis of a system, reusable across objectives.
///
/// Each sparse row holds `B⁻¹A`. Nonbasic columns sit at their lower bound 0
/// or at their upper bound.
#[derive(Debug, Clone)]
pub struct Simplex {
    n: usize,
    kinds: Vec<Column>,
    upper: Vec<Option<Rational>>,
    rows: Vec<Row>,
    basis: Vec<usize>,
    /// Values of the basic variables.
    beta: Vec<Rational>,
    at_upper: Vec<bool>,
    is_basic: Vec<bool>,
    pivots: usize,
}

impl Simplex {
    /// Finds a feasible basis (phase one).
    pub fn new(sys: &PolyhedralSystem) -> Result<Self> {
        Self::with_start(sys, &vec![false; sys.num_vars()])
    }

    /// Finds a feasible basis, starting phase one with every structural
    /// variable nonbasic at `start` (upper bound when true). A feasible
    /// `start` leaves nothing for phase one to do but pivot out artificials.
    pub fn with_start(sys: &PolyhedralSystem, start: &[bool]) -> Result<Self> {
        let n = sys.num_vars();
        assert_eq!(start.len(), n, "one start value per variable");
        let m = sys.num_constraints();
        let mut kinds = vec![Column::Structural; n];
        let mut upper = vec![Some(Rational::one()); n];
        let mut at_upper = start.to_vec();
        let mut rows = Vec::with_capacity(m);
        let mut beta = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        // slack columns first so that artificials come last
        let mut slack_of = vec![None; m];
        for (i, c) in sys.constraints().iter().enumerate() {
            if c.relation != Relation::Eq {
                slack_of[i] = Some(kinds.len());
                kinds.push(Column::Slack);
                upper.push(None);
            }
        }
        let first_artificial = kinds.len();
        let mut artificials = 0;
        let mut infeasible_start = false;
        for (i, c) in sys.constraints().iter().enumerate() {
            let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
            for (j, a) in &c.coeffs {
                *row.entry(*j).or_default() += a;
            }
            let mut residual = c.rhs.clone();
            for (j, a) in &row {
                if start[*j] {
                    residual -= a;
                }
            }
            let flip = residual.is_negative();
            if flip {
                for a in row.values_mut() {
                    *a = -a.clone();
                }
            }
            let slack_sign = match c.relation {
                Relation::Le => 1,
                Relation::Ge => -1,
                Relation::Eq => 0,
            } * if flip { -1 } else { 1 };
            if let Some(s) = slack_of[i] {
                row.insert(s, Rational::from_int(slack_sign));
            }
            if slack_sign == 1 {
                basis.push(slack_of[i].expect("slack column"));
            } else {
                let a = first_artificial + artificials;
                artificials += 1;
                row.insert(a, Rational::one());
                basis.push(a);
                infeasible_start |= !residual.is_zero();
            }
            beta.push(residual.abs());
            rows.push(row.into_iter().filter(|(_, a)| !a.is_zero()).collect());
        }
        kinds.extend(std::iter::repeat(Column::Artificial).take(artificials));
        upper.extend(std::iter::repeat(None).take(artificials));
        let total = kinds.len();
        at_upper.resize(total, false);
        let mut is_basic = vec![false; total];
        for &b in &basis {
            is_basic[b] = true;
        }
        let mut lp = Simplex {
            n,
            kinds,
            upper,
            rows,
            basis,
            beta,
            at_upper,
            is_basic,
            pivots: 0,
        };
        if artificials > 0 {
            if infeasible_start {
                let cost: Vec<Rational> = lp
                    .kinds
                    .iter()
                    .map(|k| if *k == Column::Artificial { Rational::from_int(-1) } else { Rational::zero() })
                    .collect();
                lp.optimize(&cost, true)?;
                if lp.value(&cost).is_negative() {
                    return Err(Error::Infeasible);
                }
            }
            lp.drive_out_artificials();
            lp.drop_artificials(first_artificial);
        }
        Ok(lp)
    }

    /// Number of pivots performed so far, including phase one.
    pub fn pivots(&self) -> usize {
        self.pivots
    }

    /// Optimizes a new objective from the current basis.
    pub fn maximize(&mut self, objective: &BTreeMap<usize, Rational>) -> Result<LpSolution> {
        let mut cost = vec![Rational::zero(); self.kinds.len()];
        for (j, c) in objective {
            if *j >= self.n {
                return Err(Error::InvalidSystem(format!("objective names variable {j} of {}", self.n)));
            }
            cost[*j] = c.clone();
        }
        self.optimize(&cost, false)?;
        let point = self.point();
        let value = objective.iter().map(|(j, c)| c * &point[*j]).sum();
        Ok(LpSolution { value, point })
    }

    fn column_value(&self, j: usize) -> Rational {
        if self.at_upper[j] {
            self.upper[j].clone().expect("finite upper bound")
        } else {
            Rational::zero()
        }
    }

    fn values(&self) -> Vec<Rational> {
        let mut x: Vec<Rational> = (0..self.kinds.len()).map(|j| self.column_value(j)).collect();
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.beta[i].clone();
        }
        x
    }

    fn point(&self) -> Vec<Rational> {
        let mut x = self.values();
        x.truncate(self.n);
        x
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        self.values().iter().zip(cost).filter(|(_, c)| !c.is_zero()).map(|(x, c)| x * c).sum()
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut d = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (k, a) in &self.rows[i] {
                d[*k].sub_mul_assign(cb, a);
            }
        }
        d
    }

    fn can_enter(&self, j: usize, phase_one: bool) -> bool {
        !self.is_basic[j] && (phase_one || self.kinds[j] != Column::Artificial)
    }

    fn optimize(&mut self, cost: &[Rational], phase_one: bool) -> Result<()> {
        let mut d = self.reduced_costs(cost);
        loop {
            let entering = (0..d.len()).find(|&j| {
                self.can_enter(j, phase_one)
                    && if self.at_upper[j] {
                        d[j].is_negative()
                    } else {
                        d[j].is_positive()
                    }
            });
            let Some(j) = entering else {
                return Ok(());
            };
            self.pivots += 1;
            if self.pivots > MAX_PIVOTS {
                return Err(Error::InvalidSystem("pivot limit exceeded".into()));
            }
            let increasing = !self.at_upper[j];
            let column: Vec<(usize, Rational)> = (0..self.rows.len())
                .filter_map(|i| entry(&self.rows[i], j).map(|a| (i, a.clone())))
                .collect();
            // (step length, variable index, row or None for a bound flip)
            let mut best: Option<(Rational, usize, Option<usize>)> = None;
            let mut consider = |t: Rational, var: usize, row: Option<usize>| {
                let better = match &best {
                    None => true,
                    Some((bt, bv, _)) => t < *bt || (t == *bt && var < *bv),
                };
                if better {
                    best = Some((t, var, row));
                }
            };
            if let Some(u) = &self.upper[j] {
                consider(u.clone(), j, None);
            }
            for (i, a) in &column {
                let alpha = if increasing { a.clone() } else { -a.clone() };
                let b = self.basis[*i];
                if alpha.is_positive() {
                    consider(&self.beta[*i] / &alpha, b, Some(*i));
                } else if let Some(u) = &self.upper[b] {
                    consider(&(u - &self.beta[*i]) / &(-alpha), b, Some(*i));
                }
            }
            let Some((t, _, row)) = best else {
                return Err(Error::Unbounded);
            };
            let delta = if increasing { t } else { -t };
            if !delta.is_zero() {
                for (i, a) in &column {
                    self.beta[*i].sub_mul_assign(a, &delta);
                }
            }
            match row {
                None => self.at_upper[j] = !self.at_upper[j],
                Some(r) => {
                    let entering_value = &self.column_value(j) + &delta;
                    let leaving = self.basis[r];
                    let a_rj = &column.iter().find(|(i, _)| *i == r).expect("pivot row").1;
                    // the leaving variable stops at whichever bound it reached
                    self.at_upper[leaving] = if increasing { a_rj.is_negative() } else { a_rj.is_positive() };
                    if self.at_upper[leaving] && self.upper[leaving].is_none() {
                        unreachable!("leaving variable has no upper bound");
                    }
                    self.at_upper[j] = false;
                    self.pivot(r, j, &column, &mut d);
                    self.beta[r] = entering_value;
                }
            }
        }
    }

    /// Makes column `j` basic in row `r`; `column` lists the nonzeros of
    /// column `j`. Updates the reduced costs `d`.
    fn pivot(&mut self, r: usize, j: usize, column: &[(usize, Rational)], d: &mut [Rational]) {
        let mut pivot_row = std::mem::take(&mut self.rows[r]);
        let inv = entry(&pivot_row, j).expect("nonzero pivot").recip();
        for (_, a) in &mut pivot_row {
            *a = &*a * &inv;
        }
        for (i, f) in column {
            if *i != r {
                let row = std::mem::take(&mut self.rows[*i]);
                self.rows[*i] = eliminate(row, f, &pivot_row);
            }
        }
        if !d[j].is_zero() {
            let f = d[j].clone();
            for (k, a) in &pivot_row {
                d[*k].sub_mul_assign(&f, a);
            }
        }
        self.rows[r] = pivot_row;
        let leaving = self.basis[r];
        self.is_basic[leaving] = false;
        self.is_basic[j] = true;
        self.basis[r] = j;
    }

    /// Removes the artificial columns (indices from `first`) and the rows whose
    /// basic variable is still artificial; those rows are redundant.
    fn drop_artificials(&mut self, first: usize) {
        let keep: Vec<bool> = self.basis.iter().map(|&b| b < first).collect();
        let mut kept = keep.iter();
        self.rows.retain(|_| *kept.next().expect("one flag per row"));
        for row in &mut self.rows {
            row.retain(|(k, _)| *k < first);
        }
        let mut kept = keep.iter();
        self.beta.retain(|_| *kept.next().expect("one flag per row"));
        self.basis.retain(|&b| b < first);
        self.kinds.truncate(first);
        self.upper.truncate(first);
        self.at_upper.truncate(first);
        self.is_basic.truncate(first);
    }

    /// Pivots zero-valued basic artificials out where another column allows.
    fn drive_out_artificials(&mut self) {
        let mut scratch = vec![Rational::zero(); self.kinds.len()];
        for r in 0..self.rows.len() {
            if self.kinds[self.basis[r]] != Column::Artificial {
                continue;
            }
            debug_assert!(self.beta[r].is_zero());
            let candidate = self.rows[r].iter().map(|e| e.0).find(|&k| self.can_enter(k, false));
            if let Some(k) = candidate {
                let value = self.column_value(k);
                let column: Vec<(usize, Rational)> = (0..self.rows.len())
                    .filter_map(|i| entry(&self.rows[i], k).map(|a| (i, a.clone())))
                    .collect();
                let leaving = self.basis[r];
                self.at_upper[leaving] = false;
                self.at_upper[k] = false;
                self.pivots += 1;
                self.pivot(r, k, &column, &mut scratch);
                self.beta[r] = value;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ef::{Role, VarKey};

    fn system(n: usize, rows: &[(&[i64], Relation, i64)]) -> PolyhedralSystem {
        let mut sys = PolyhedralSystem::new();
        let vars: Vec<usize> = (0..n).map(|i| sys.variable(VarKey::Node(format!("x{i}")), Role::Node)).collect();
        for (coeffs, rel, rhs) in rows {
            let terms = coeffs.iter().enumerate().map(|(i, a)| (vars[i], Rational::from_int(*a))).collect();
            sys.push_indexed(terms, *rel, Rational::from_int(*rhs));
        }
        sys
    }

    fn obj(c: &[i64]) -> BTreeMap<usize, Rational> {
        c.iter().enumerate().map(|(i, a)| (i, Rational::from_int(*a))).collect()
    }

    #[test]
    fn single_variable() {
        let sys = system(1, &[(&[1], Relation::Le, 1)]);
        assert_eq!(lp_max(&sys, &obj(&[1])).unwrap().value, Rational::one());
        assert_eq!(lp_max(&sys, &obj(&[0])).unwrap().value, Rational::zero());
    }

    #[test]
    fn mccormick_origin() {
        // x0 = a, x1 = b, x2 = s
        let sys = system(
            3,
            &[
                (&[-1, 0, 1], Relation::Le, 0),
                (&[0, -1, 1], Relation::Le, 0),
                (&[1, 1, -1], Relation::Le, 1),
            ],
        );
        let sol = lp_max(&sys, &obj(&[-1, -1, 1])).unwrap();
        assert_eq!(sol.value, Rational::zero());
        assert!(sys.contains(&sol.point));
        let sol = lp_max(&sys, &obj(&[1, 1, -3])).unwrap();
        assert_eq!(sol.value, Rational::one());
    }

    #[test]
    fn fractional_vertices() {
        // x + y >= 1/2 style via 2x + 2y >= 1, maximize -x - y
        let mut sys = system(2, &[]);
        sys.push_indexed(
            vec![(0, Rational::from_int(2)), (1, Rational::from_int(2))],
            Relation::Ge,
            Rational::one(),
        );
        let sol = lp_max(&sys, &obj(&[-1, -1])).unwrap();
        assert_eq!(sol.value, Rational::new(-1, 2));
        assert!(sys.contains(&sol.point));
    }

    #[test]
    fn infeasible_and_redundant() {
        let sys = system(2, &[(&[1, 1], Relation::Eq, 3)]);
        assert_eq!(lp_max(&sys, &obj(&[1, 1])), Err(Error::Infeasible));
        let sys = system(2, &[(&[1, -1], Relation::Eq, 0), (&[2, -2], Relation::Eq, 0), (&[1, 1], Relation::Ge, 1)]);
        let sol = lp_max(&sys, &obj(&[1, -2])).unwrap();
        assert_eq!(sol.value, Rational::new(-1, 2));
        assert!(sys.contains(&sol.point));
    }

    #[test]
    fn negative_right_hand_sides() {
        let sys = system(2, &[(&[-1, -1], Relation::Le, -1), (&[-1, 0], Relation::Ge, -1)]);
        let sol = lp_max(&sys, &obj(&[-3, -1])).unwrap();
        assert_eq!(sol.value, Rational::from_int(-1));
    }

    #[test]
    fn warm_start_matches_cold_start() {
        let sys = system(
            4,
            &[
                (&[1, 1, 1, 1], Relation::Eq, 2),
                (&[1, -1, 0, 0], Relation::Le, 0),
                (&[0, 0, 1, 1], Relation::Ge, 1),
            ],
        );
        let mut warm = Simplex::new(&sys).unwrap();
        for c in [[1, 2, 3, 4], [-4, 3, -2, 1], [0, 0, 0, 0], [5, -5, 5, -5], [1, 1, -1, -1]] {
            let a = warm.maximize(&obj(&c)).unwrap();
            let b = lp_max(&sys, &obj(&c)).unwrap();
            assert_eq!(a.value, b.value);
            assert!(sys.contains(&a.point));
        }
    }

    #[test]
    fn start_points_agree_with_cold_start() {
        let sys = system(
            4,
            &[
                (&[1, 1, 1, 1], Relation::Eq, 2),
                (&[1, -1, 0, 0], Relation::Le, 0),
                (&[0, 0, 1, 1], Relation::Ge, 1),
            ],
        );
        // feasible, infeasible, and every-bound starts
        for start in [[false, true, true, false], [true, true, true, true], [true, false, false, false]] {
            let mut warm = Simplex::with_start(&sys, &start).unwrap();
            for c in [[1, 2, 3, 4], [-4, 3, -2, 1], [5, -5, 5, -5]] {
                let a = warm.maximize(&obj(&c)).unwrap();
                assert_eq!(a.value, lp_max(&sys, &obj(&c)).unwrap().value);
                assert!(sys.contains(&a.point));
            }
        }
        let feasible = Simplex::with_start(&sys, &[false, true, true, false]).unwrap();
        // only the two artificial rows are pivoted out
        assert_eq!(feasible.pivots(), 2);
        let sys = system(2, &[(&[1, 1], Relation::Eq, 3)]);
        assert_eq!(Simplex::with_start(&sys, &[true, true]).err(), Some(Error::Infeasible));
    }

    #[test]
    fn empty_system() {
        let sys = PolyhedralSystem::new();
        assert_eq!(lp_max(&sys, &BTreeMap::new()).unwrap().value, Rational::zero());
    }
}
