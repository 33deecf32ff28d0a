use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeId, NodeSet};
use crate::instance::BqoInstance;
use crate::rational::Rational;

use super::{Provenance, Reduction};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: NodeId,
    pub positive: bool,
}

impl Literal {
    pub fn new(var: impl Into<NodeId>, positive: bool) -> Self {
        Literal { var: var.into(), positive }
    }
}

/// A CNF formula whose clauses have one or two literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCnf {
    variables: Vec<NodeId>,
    clauses: Vec<Vec<Literal>>,
}

impl TwoCnf {
    pub fn new(variables: Vec<NodeId>, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let known: BTreeSet<&NodeId> = variables.iter().collect();
        if known.len() != variables.len() {
            return Err(Error::InvalidInstance("repeated variable".into()));
        }
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() || c.len() > 2 {
                return Err(Error::InvalidInstance(format!("clause {i} has {} literals", c.len())));
            }
            if let Some(l) = c.iter().find(|l| !known.contains(&l.var)) {
                return Err(Error::InvalidInstance(format!("clause {i} uses unknown variable {}", l.var)));
            }
        }
        Ok(TwoCnf { variables, clauses })
    }

    pub fn variables(&self) -> &[NodeId] {
        &self.variables
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// Number of clauses satisfied by an assignment.
    pub fn satisfied(&self, value: impl Fn(&str) -> bool) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.iter().any(|l| value(&l.var) == l.positive))
            .count()
    }

    /// Reads DIMACS CNF. Variable `i` becomes node `x<i>`.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let err = |line: usize, column: usize, message: String| Error::Parse { line, column, message };
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        let mut open_at = (0, 0);
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
                continue;
            }
            let indent = raw.len() - trimmed.len();
            if trimmed.starts_with('p') {
                let fields: Vec<&str> = trimmed.split_whitespace().collect();
                if header.is_some() {
                    return Err(err(line, indent + 1, "second problem line".into()));
                }
                if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                    return Err(err(line, indent + 1, "expected `p cnf <variables> <clauses>`".into()));
                }
                let n = fields[2].parse().map_err(|_| err(line, indent + 1, "bad variable count".into()))?;
                let m = fields[3].parse().map_err(|_| err(line, indent + 1, "bad clause count".into()))?;
                header = Some((n, m));
                continue;
            }
            let Some((n, _)) = header else {
                return Err(err(line, indent + 1, "clause before the problem line".into()));
            };
            let mut pos = 0;
            for token in raw.split_whitespace() {
                let column = raw[pos..].find(token).expect("token in line") + pos + 1;
                pos = column - 1 + token.len();
                let x: i64 = token
                    .parse()
                    .map_err(|_| err(line, column, format!("expected an integer literal, found {token:?}")))?;
                if x == 0 {
                    if current.is_empty() {
                        return Err(err(line, column, "empty clause".into()));
                    }
                    clauses.push(std::mem::take(&mut current));
                    continue;
                }
                if x.unsigned_abs() as usize > n {
                    return Err(err(line, column, format!("variable {} exceeds the declared {n}", x.abs())));
                }
                if current.len() == 2 {
                    return Err(err(line, column, "clause has more than two literals".into()));
                }
                if current.is_empty() {
                    open_at = (line, column);
                }
                current.push(Literal::new(format!("x{}", x.abs()), x > 0));
            }
        }
        let Some((n, m)) = header else {
            return Err(err(1, 1, "missing problem line".into()));
        };
        if !current.is_empty() {
            return Err(err(open_at.0, open_at.1, "clause is not terminated by 0".into()));
        }
        if clauses.len() != m {
            return Err(err(
                text.lines().count().max(1),
                1,
                format!("declared {m} clauses, found {}", clauses.len()),
            ));
        }
        Self::new((1..=n).map(|i| format!("x{i}")).collect(), clauses)
    }
}

/// `(1 - l)` as `(constant, coefficient of the variable)`.
fn falsity(l: &Literal) -> (i64, i64) {
    if l.positive {
        (1, -1)
    } else {
        (0, 1)
    }
}

/// Sums the satisfaction polynomials `1 - Π (1 - l)` of all clauses.
pub fn max2sat_to_bqo(f: &TwoCnf) -> Reduction<BqoInstance> {
    let mut offset = Rational::zero();
    let mut nodes: BTreeMap<NodeId, Rational> = BTreeMap::new();
    let mut edges: BTreeMap<NodeSet, Rational> = BTreeMap::new();
    let mut support: BTreeSet<NodeSet> = BTreeSet::new();
    for clause in f.clauses() {
        let mut lits = clause.clone();
        lits.sort();
        lits.dedup();
        offset += &Rational::one();
        match lits.as_slice() {
            [a, b] if a.var == b.var => {
                // x ∨ ¬x
            }
            [l] => {
                let (a, b) = falsity(l);
                offset -= &Rational::from_int(a);
                *nodes.entry(l.var.clone()).or_default() -= &Rational::from_int(b);
            }
            [l, k] => {
                let ((a1, b1), (a2, b2)) = (falsity(l), falsity(k));
                offset -= &Rational::from_int(a1 * a2);
                *nodes.entry(l.var.clone()).or_default() -= &Rational::from_int(b1 * a2);
                *nodes.entry(k.var.clone()).or_default() -= &Rational::from_int(a1 * b2);
                let e: NodeSet = [l.var.clone(), k.var.clone()].into_iter().collect();
                *edges.entry(e.clone()).or_default() -= &Rational::from_int(b1 * b2);
                support.insert(e);
            }
            _ => unreachable!("validated clause length"),
        }
    }
    let graph = Hypergraph::new(f.variables().iter().cloned(), support).expect("pairs of known variables");
    let range = |vals: Vec<&Rational>| {
        let lo = vals.iter().min().map(|r| (*r).clone()).unwrap_or_default();
        let hi = vals.iter().max().map(|r| (*r).clone()).unwrap_or_default();
        [lo, hi]
    };
    let log = Provenance::new("max2sat")
        .param("variables", f.variables().len())
        .param("clauses", f.clauses().len())
        .param("node_cost_range", range(nodes.values().collect()))
        .param("edge_cost_range", range(edges.values().collect()));
    let instance = BqoInstance::new(graph, nodes, edges, offset).expect("costs on known items");
    Reduction { instance, log }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::node_set;
    use crate::solvers::brute_force_solve;

    fn lit(s: &str) -> Literal {
        match s.strip_prefix('-') {
            Some(v) => Literal::new(v, false),
            None => Literal::new(s, true),
        }
    }

    fn formula(vars: &[&str], clauses: &[&[&str]]) -> TwoCnf {
        TwoCnf::new(
            vars.iter().map(|v| v.to_string()).collect(),
            clauses.iter().map(|c| c.iter().map(|l| lit(l)).collect()).collect(),
        )
        .unwrap()
    }

    fn max_satisfied(f: &TwoCnf) -> usize {
        let n = f.variables().len();
        (0u32..1 << n)
            .map(|x| f.satisfied(|v| x >> f.variables().iter().position(|w| w == v).unwrap() & 1 == 1))
            .max()
            .unwrap()
    }

    #[test]
    fn single_positive_clause() {
        let q = max2sat_to_bqo(&formula(&["x", "y"], &[&["x", "y"]])).instance;
        assert_eq!(q.node_cost("x"), Rational::one());
        assert_eq!(q.node_cost("y"), Rational::one());
        assert_eq!(q.edge_cost(&node_set(["x", "y"])), Rational::from_int(-1));
        assert_eq!(*q.offset(), Rational::zero());
        assert_eq!(brute_force_solve(&q, 20).unwrap().optimum, Rational::one());
    }

    #[test]
    fn two_clauses_fold_constant_into_offset() {
        let q = max2sat_to_bqo(&formula(&["x", "y"], &[&["x", "y"], &["-x", "-y"]])).instance;
        assert_eq!(q.node_cost("x"), Rational::one());
        assert_eq!(q.edge_cost(&node_set(["x", "y"])), Rational::from_int(-2));
        assert_eq!(*q.offset(), Rational::one());
        let sol = brute_force_solve(&q, 20).unwrap();
        assert_eq!(sol.optimum, Rational::from_int(2));
        assert!(sol.is_optimal(|v| v == "x"));
    }

    #[test]
    fn clause_polynomials() {
        let q = max2sat_to_bqo(&formula(&["x", "y"], &[&["-x", "y"]])).instance;
        assert_eq!((q.node_cost("x"), q.node_cost("y")), (Rational::from_int(-1), Rational::zero()));
        assert_eq!(q.edge_cost(&node_set(["x", "y"])), Rational::one());
        assert_eq!(*q.offset(), Rational::one());
        let q = max2sat_to_bqo(&formula(&["x"], &[&["-x"]])).instance;
        assert_eq!((q.node_cost("x"), q.offset().clone()), (Rational::from_int(-1), Rational::one()));
    }

    #[test]
    fn empty_formula() {
        let q = max2sat_to_bqo(&formula(&["x", "y"], &[])).instance;
        assert_eq!(q.coefficient_mass(), Rational::zero());
        assert_eq!(brute_force_solve(&q, 20).unwrap().optimum, Rational::zero());
    }

    #[test]
    fn degenerate_clauses() {
        let f = formula(&["x", "y"], &[&["x", "-x"], &["y", "y"], &["x", "y"], &["x", "y"]]);
        let q = max2sat_to_bqo(&f).instance;
        assert_eq!(brute_force_solve(&q, 20).unwrap().optimum, Rational::from_int(max_satisfied(&f) as i64));
    }

    #[test]
    fn all_small_formulas_match_clause_counts() {
        let vars = ["a", "b", "c"];
        let mut pool: Vec<Vec<Literal>> = Vec::new();
        for (i, v) in vars.iter().enumerate() {
            for s in [true, false] {
                pool.push(vec![Literal::new(*v, s)]);
                for w in &vars[i + 1..] {
                    for t in [true, false] {
                        pool.push(vec![Literal::new(*v, s), Literal::new(*w, t)]);
                    }
                }
            }
        }
        // every multiset of up to three clauses from the pool
        let mut count = 0;
        for a in 0..pool.len() {
            for b in a..pool.len() {
                for c in b..pool.len() {
                    let f = TwoCnf::new(
                        vars.iter().map(|v| v.to_string()).collect(),
                        vec![pool[a].clone(), pool[b].clone(), pool[c].clone()],
                    )
                    .unwrap();
                    let q = max2sat_to_bqo(&f).instance;
                    let opt = brute_force_solve(&q, 20).unwrap().optimum;
                    assert_eq!(opt, Rational::from_int(max_satisfied(&f) as i64));
                    count += 1;
                }
            }
        }
        assert!(count > 1000);
    }

    #[test]
    fn dimacs() {
        let f = TwoCnf::parse_dimacs("c demo\np cnf 3 3\n1 -2 0\n3 0 -1\n-3 0\n").unwrap();
        assert_eq!(f.variables(), ["x1", "x2", "x3"]);
        assert_eq!(f.clauses().len(), 3);
        assert_eq!(f.clauses()[2], vec![Literal::new("x1", false), Literal::new("x3", false)]);
    }

    #[test]
    fn dimacs_errors_are_positioned() {
        let e = TwoCnf::parse_dimacs("p cnf 3 1\n1 2 3 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 5, .. }), "{e}");
        let e = TwoCnf::parse_dimacs("p cnf 2 1\n1 x 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 3, .. }), "{e}");
        let e = TwoCnf::parse_dimacs("p cnf 2 1\n0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 1, .. }), "{e}");
        assert!(TwoCnf::parse_dimacs("1 2 0\n").is_err());
        assert!(TwoCnf::parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
        assert!(TwoCnf::parse_dimacs("p cnf 2 1\n3 0\n").is_err());
    }
}
