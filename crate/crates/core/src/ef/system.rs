use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{NodeId, SignedEdge};
use crate::rational::Rational;

/// Canonical identity of a variable. Two systems that mention the same key
/// refer to the same variable when juxtaposed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKey {
    /// `z_v`.
    Node(NodeId),
    /// `z_s`.
    Edge(SignedEdge),
    /// `λ_x` of the piece pointed at `apex`; `bits` lists `x` over the
    /// piece's node set in sorted order.
    Lambda { apex: NodeId, bits: String },
}

impl VarKey {
    pub fn kind(&self) -> VarKind {
        match self {
            VarKey::Node(_) => VarKind::Node,
            VarKey::Edge(_) => VarKind::SignedEdge,
            VarKey::Lambda { .. } => VarKind::Lambda,
        }
    }

    /// Text form used in sidecars: `a`, `a+,b-`, `a:0110`.
    pub fn encode(&self) -> String {
        match self {
            VarKey::Node(v) => v.clone(),
            VarKey::Edge(s) => s.key(),
            VarKey::Lambda { apex, bits } => format!("{apex}:{bits}"),
        }
    }

    pub fn decode(kind: VarKind, text: &str) -> Result<VarKey> {
        let bad = || Error::InvalidSystem(format!("bad {kind} key {text:?}"));
        Ok(match kind {
            VarKind::Node => VarKey::Node(text.to_string()),
            VarKind::SignedEdge => {
                let mut literals = BTreeMap::new();
                for lit in text.split(',') {
                    let (id, sign) = lit.split_at(lit.len().checked_sub(1).ok_or_else(bad)?);
                    let sign = match sign {
                        "+" => crate::hypergraph::Sign::Pos,
                        "-" => crate::hypergraph::Sign::Neg,
                        _ => return Err(bad()),
                    };
                    literals.insert(id.to_string(), sign);
                }
                VarKey::Edge(SignedEdge::new(literals).map_err(|_| bad())?)
            }
            VarKind::Lambda => {
                let (apex, bits) = text.rsplit_once(':').ok_or_else(bad)?;
                VarKey::Lambda {
                    apex: apex.to_string(),
                    bits: bits.to_string(),
                }
            }
        })
    }
}

impl fmt::Display for VarKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarKey::Node(v) => write!(f, "z[{v}]"),
            VarKey::Edge(s) => write!(f, "z[{s}]"),
            VarKey::Lambda { apex, bits } => write!(f, "λ[{apex}:{bits}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarKind {
    Node,
    SignedEdge,
    Lambda,
}

impl fmt::Display for VarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VarKind::Node => "node",
            VarKind::SignedEdge => "signed-edge",
            VarKind::Lambda => "lambda",
        })
    }
}

/// Where a variable came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Node,
    /// A signed edge of the input hypergraph.
    SignedEdge,
    /// Member of an inflation family that was not an input edge.
    Inflation,
    /// A subedge `s - v` added before a decomposition step.
    Derived,
    Lambda,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub key: VarKey,
    pub role: Role,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }
}

/// `Σ coeffs[i].1 · x[coeffs[i].0]  (relation)  rhs`, indices sorted and unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, point: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(j, a)| a * &point[*j]).sum()
    }

    pub fn satisfied_by(&self, point: &[Rational]) -> bool {
        self.relation.holds(&self.lhs(point), &self.rhs)
    }
}

/// A linear system over variables with bounds `0 ≤ x ≤ 1`.
///
/// Node and input signed-edge variables form the projection.
#[derive(Debug, Clone, Default)]
pub struct PolyhedralSystem {
    variables: Vec<Variable>,
    index: HashMap<VarKey, usize>,
    constraints: Vec<Constraint>,
}

impl PolyhedralSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index of `key`, adding it with `role` when absent. An existing
    /// variable keeps its role.
    pub fn variable(&mut self, key: VarKey, role: Role) -> usize {
        if let Some(&j) = self.index.get(&key) {
            return j;
        }
        let j = self.variables.len();
        self.index.insert(key.clone(), j);
        self.variables.push(Variable { key, role });
        j
    }

    pub fn index_of(&self, key: &VarKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Indices of the projection variables.
    pub fn projection(&self) -> Vec<usize> {
        (0..self.variables.len()).filter(|&j| self.is_projection(j)).collect()
    }

    pub fn is_projection(&self, j: usize) -> bool {
        matches!(self.variables[j].role, Role::Node | Role::SignedEdge)
    }

    /// Adds a constraint over keyed terms; unknown keys get `role`.
    /// Repeated keys are summed and zero terms dropped.
    pub fn add_constraint(&mut self, terms: Vec<(VarKey, Rational)>, relation: Relation, rhs: Rational, role: Role) {
        let terms = terms.into_iter().map(|(k, a)| (self.variable(k, role), a)).collect();
        self.push_indexed(terms, relation, rhs);
    }

    pub fn push_indexed(&mut self, terms: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, a) in terms {
            assert!(j < self.variables.len(), "variable index out of range");
            *merged.entry(j).or_default() += &a;
        }
        let coeffs = merged.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn remove_constraint(&mut self, i: usize) -> Constraint {
        self.constraints.remove(i)
    }

    /// Union of two systems; variables with equal keys are identified.
    pub fn juxtapose(&mut self, other: &PolyhedralSystem) {
        let map: Vec<usize> = other
            .variables
            .iter()
            .map(|v| self.variable(v.key.clone(), v.role))
            .collect();
        for c in &other.constraints {
            let terms = c.coeffs.iter().map(|(j, a)| (map[*j], a.clone())).collect();
            self.push_indexed(terms, c.relation, c.rhs.clone());
        }
    }

    /// Exact membership test including the bounds.
    pub fn contains(&self, point: &[Rational]) -> bool {
        point.len() == self.variables.len()
            && point.iter().all(|x| !x.is_negative() && *x <= Rational::one())
            && self.constraints.iter().all(|c| c.satisfied_by(point))
    }

    /// True iff every coefficient and right-hand side lies in `{0, ±1}`.
    pub fn has_unit_coefficients(&self) -> bool {
        let unit = |a: &Rational| a.is_zero() || a.abs() == Rational::one();
        self.constraints
            .iter()
            .all(|c| unit(&c.rhs) && c.coeffs.iter().all(|(_, a)| unit(a)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeReport {
    pub num_vars: usize,
    pub num_constraints: usize,
}

pub fn ef_size_report(sys: &PolyhedralSystem) -> SizeReport {
    SizeReport {
        num_vars: sys.num_vars(),
        num_constraints: sys.num_constraints(),
    }
}
