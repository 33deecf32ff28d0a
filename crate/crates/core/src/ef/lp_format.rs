//! CPLEX LP text for compiled systems, plus a JSON sidecar naming each
//! variable.
//!
//! LP names are `n<i>`, `s<i>` and `l<i>` for node, signed-edge and λ
//! variables. The objective is scaled to integer coefficients; the sidecar
//! stores the scale and the constant offset, so that the instance objective
//! equals `LP objective / scale + offset`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::system::{PolyhedralSystem, Relation, Role, VarKey, VarKind};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub const SIDECAR_FORMAT: &str = "pbpoly-ef/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub format: String,
    pub objective_scale: Rational,
    pub objective_offset: Rational,
    pub variables: Vec<SidecarVariable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SidecarVariable {
    pub name: String,
    pub kind: VarKind,
    pub key: String,
    pub role: Role,
}

impl Sidecar {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Sidecar = serde_json::from_str(text).map_err(crate::instance::parse_error)?;
        if s.format != SIDECAR_FORMAT {
            return Err(Error::InvalidSystem(format!("unknown sidecar format {:?}", s.format)));
        }
        if !s.objective_scale.is_positive() {
            return Err(Error::InvalidSystem("objective scale must be positive".into()));
        }
        Ok(s)
    }
}

/// A system read back from LP text, with its objective in instance units.
#[derive(Debug, Clone)]
pub struct LpFile {
    pub system: PolyhedralSystem,
    pub objective: BTreeMap<usize, Rational>,
    pub offset: Rational,
}

fn names(sys: &PolyhedralSystem) -> Vec<String> {
    let mut counts: HashMap<VarKind, usize> = HashMap::new();
    sys.variables()
        .iter()
        .map(|v| {
            let kind = v.key.kind();
            let c = counts.entry(kind).or_default();
            let prefix = match kind {
                VarKind::Node => 'n',
                VarKind::SignedEdge => 's',
                VarKind::Lambda => 'l',
            };
            *c += 1;
            format!("{prefix}{}", *c - 1)
        })
        .collect()
}

fn lcm_of_denominators<'a>(values: impl Iterator<Item = &'a Rational>) -> Rational {
    let l = values.fold(num_bigint::BigInt::one(), |acc, r| acc.lcm(&r.denom()));
    l.to_string().parse().expect("integer")
}

fn write_term(out: &mut String, first: bool, a: &Rational, name: &str) {
    let sign = if a.is_negative() { "-" } else { "+" };
    let mag = a.abs();
    if first && !a.is_negative() {
        out.push(' ');
    } else {
        let _ = write!(out, " {sign} ");
    }
    if mag == Rational::one() {
        out.push_str(name);
    } else {
        let _ = write!(out, "{mag} {name}");
    }
}

/// LP text and sidecar for `sys` with objective `Σ objective[j] x_j + offset`
/// (maximized).
pub fn write_lp(sys: &PolyhedralSystem, objective: &BTreeMap<usize, Rational>, offset: &Rational) -> (String, Sidecar) {
    let names = names(sys);
    let scale = lcm_of_denominators(objective.values());
    let mut out = String::new();
    let _ = writeln!(out, "\\ {} variables, {} constraints", sys.num_vars(), sys.num_constraints());
    out.push_str("Maximize\n obj:");
    let terms: Vec<(usize, Rational)> = objective
        .iter()
        .filter(|(_, a)| !a.is_zero())
        .map(|(j, a)| (*j, a * &scale))
        .collect();
    if terms.is_empty() {
        out.push_str(" 0 n0");
    }
    for (i, (j, a)) in terms.iter().enumerate() {
        write_term(&mut out, i == 0, a, &names[*j]);
    }
    out.push_str("\nSubject To\n");
    for (i, c) in sys.constraints().iter().enumerate() {
        let _ = write!(out, " c{i}:");
        if c.coeffs.is_empty() {
            out.push_str(" 0 n0");
        }
        for (k, (j, a)) in c.coeffs.iter().enumerate() {
            write_term(&mut out, k == 0, a, &names[*j]);
        }
        let _ = writeln!(out, " {} {}", c.relation.symbol(), c.rhs);
    }
    out.push_str("Bounds\n");
    for name in &names {
        let _ = writeln!(out, " 0 <= {name} <= 1");
    }
    out.push_str("End\n");
    let sidecar = Sidecar {
        format: SIDECAR_FORMAT.to_string(),
        objective_scale: scale,
        objective_offset: offset.clone(),
        variables: sys
            .variables()
            .iter()
            .zip(&names)
            .map(|(v, name)| SidecarVariable {
                name: name.clone(),
                kind: v.key.kind(),
                key: v.key.encode(),
                role: v.role,
            })
            .collect(),
    };
    (out, sidecar)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Number(Rational),
    Sign(bool),
    Rel(Relation),
    Label(String),
}

struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('\\').next().unwrap_or("");
        let bytes = line.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let column = i + 1;
            let push = |out: &mut Vec<Token>, tok| {
                out.push(Token {
                    tok,
                    line: ln + 1,
                    column,
                })
            };
            if c.is_whitespace() {
                i += 1;
            } else if c == '+' || c == '-' {
                push(&mut out, Tok::Sign(c == '+'));
                i += 1;
            } else if c == '<' || c == '>' || c == '=' {
                let mut j = i + 1;
                while j < bytes.len() && matches!(bytes[j], b'<' | b'>' | b'=') {
                    j += 1;
                }
                let rel = match &line[i..j] {
                    "<=" | "=<" | "<" => Relation::Le,
                    ">=" | "=>" | ">" => Relation::Ge,
                    "=" => Relation::Eq,
                    other => return Err(perr(ln + 1, column, format!("unknown relation {other:?}"))),
                };
                push(&mut out, Tok::Rel(rel));
                i = j;
            } else if c.is_ascii_digit() {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_digit() || bytes[j] == b'/') {
                    j += 1;
                }
                if j < bytes.len() && (bytes[j] == b'.' || bytes[j] == b'e' || bytes[j] == b'E') {
                    return Err(perr(ln + 1, column, "only integer and p/q coefficients are supported"));
                }
                let value = line[i..j]
                    .parse::<Rational>()
                    .map_err(|e| perr(ln + 1, column, format!("bad number {:?}: {e}", &line[i..j])))?;
                push(&mut out, Tok::Number(value));
                i = j;
            } else {
                let mut j = i;
                while j < bytes.len() && !(bytes[j] as char).is_whitespace() && !b"+-<>=:".contains(&bytes[j]) {
                    j += 1;
                }
                if j == i {
                    return Err(perr(ln + 1, column, format!("unexpected character {c:?}")));
                }
                let word = line[i..j].to_string();
                if j < bytes.len() && bytes[j] == b':' {
                    push(&mut out, Tok::Label(word));
                    j += 1;
                } else {
                    push(&mut out, Tok::Word(word));
                }
                i = j;
            }
        }
    }
    Ok(out)
}

#[derive(PartialEq)]
enum Section {
    None,
    Objective,
    Constraints,
    Bounds,
    End,
}

fn section_word(tokens: &[Token], i: usize) -> Option<(Section, usize)> {
    let word = |k: usize| match tokens.get(k).map(|t| &t.tok) {
        Some(Tok::Word(w)) => Some(w.to_ascii_lowercase()),
        _ => None,
    };
    match word(i)?.as_str() {
        "maximize" | "maximise" | "max" => Some((Section::Objective, 1)),
        "subject" if word(i + 1).as_deref() == Some("to") => Some((Section::Constraints, 2)),
        "st" | "s.t." => Some((Section::Constraints, 1)),
        "bounds" => Some((Section::Bounds, 1)),
        "end" => Some((Section::End, 1)),
        _ => None,
    }
}

/// Parses a linear expression starting at `i`; stops at a relation, label or
/// section keyword.
fn expression(tokens: &[Token], mut i: usize, names: &HashMap<&str, usize>) -> Result<(Vec<(usize, Rational)>, usize)> {
    let mut terms = Vec::new();
    loop {
        let mut negative = false;
        let mut coeff: Option<Rational> = None;
        let start = i;
        while let Some(Tok::Sign(plus)) = tokens.get(i).map(|t| &t.tok) {
            negative ^= !plus;
            i += 1;
        }
        if let Some(Tok::Number(n)) = tokens.get(i).map(|t| &t.tok) {
            coeff = Some(n.clone());
            i += 1;
        }
        match tokens.get(i) {
            Some(Token {
                tok: Tok::Word(w),
                line,
                column,
            }) if section_word(tokens, i).is_none() => {
                let j = *names
                    .get(w.as_str())
                    .ok_or_else(|| perr(*line, *column, format!("unknown variable {w:?}")))?;
                let a = coeff.unwrap_or_else(Rational::one);
                terms.push((j, if negative { -a } else { a }));
                i += 1;
            }
            _ => {
                if i != start {
                    let t = &tokens[start];
                    return Err(perr(t.line, t.column, "dangling sign or coefficient"));
                }
                return Ok((terms, i));
            }
        }
    }
}

fn signed_number(tokens: &[Token], mut i: usize) -> Result<(Rational, usize)> {
    let mut negative = false;
    while let Some(Tok::Sign(plus)) = tokens.get(i).map(|t| &t.tok) {
        negative ^= !plus;
        i += 1;
    }
    match tokens.get(i) {
        Some(Token { tok: Tok::Number(n), .. }) => Ok((if negative { -n.clone() } else { n.clone() }, i + 1)),
        Some(t) => Err(perr(t.line, t.column, "expected a number")),
        None => Err(perr(0, 0, "unexpected end of file, expected a number")),
    }
}

/// Reads LP text written by `write_lp` (or compatible hand edits) back into a
/// system keyed by the sidecar. All bounds must be `0 <= x <= 1`.
pub fn read_lp(text: &str, sidecar: &Sidecar) -> Result<LpFile> {
    let mut sys = PolyhedralSystem::new();
    let mut names: HashMap<&str, usize> = HashMap::new();
    for v in &sidecar.variables {
        let key = VarKey::decode(v.kind, &v.key)?;
        let before = sys.num_vars();
        let j = sys.variable(key, v.role);
        if j != before || names.insert(v.name.as_str(), j).is_some() {
            return Err(Error::InvalidSystem(format!("duplicate sidecar variable {:?}", v.name)));
        }
    }
    let tokens = tokenize(text)?;
    let mut section = Section::None;
    let mut objective = BTreeMap::new();
    let mut bounded = vec![false; sys.num_vars()];
    let mut i = 0;
    while i < tokens.len() {
        if let Some((s, width)) = section_word(&tokens, i) {
            section = s;
            i += width;
            continue;
        }
        let t = &tokens[i];
        match section {
            Section::None => return Err(perr(t.line, t.column, "expected Maximize")),
            Section::End => return Err(perr(t.line, t.column, "text after End")),
            Section::Objective => {
                if let Tok::Label(_) = t.tok {
                    i += 1;
                }
                let (terms, next) = expression(&tokens, i, &names)?;
                for (j, a) in terms {
                    *objective.entry(j).or_insert_with(Rational::zero) += &(a / &sidecar.objective_scale);
                }
                if next == i {
                    return Err(perr(t.line, t.column, "unexpected token in objective"));
                }
                i = next;
            }
            Section::Constraints => {
                if let Tok::Label(_) = t.tok {
                    i += 1;
                }
                let (terms, next) = expression(&tokens, i, &names)?;
                let Some(Token { tok: Tok::Rel(rel), .. }) = tokens.get(next) else {
                    let t = tokens.get(next).unwrap_or(t);
                    return Err(perr(t.line, t.column, "expected a relation"));
                };
                let (rhs, next) = signed_number(&tokens, next + 1)?;
                sys.push_indexed(terms, *rel, rhs);
                i = next;
            }
            Section::Bounds => {
                let (lo, next) = signed_number(&tokens, i)?;
                let name_tok = tokens.get(next + 1);
                let ok = matches!(tokens.get(next).map(|t| &t.tok), Some(Tok::Rel(Relation::Le)))
                    && matches!(tokens.get(next + 2).map(|t| &t.tok), Some(Tok::Rel(Relation::Le)));
                let Some(Token { tok: Tok::Word(w), line, column }) = name_tok.filter(|_| ok) else {
                    return Err(perr(t.line, t.column, "bounds must read `0 <= x <= 1`"));
                };
                let (hi, after) = signed_number(&tokens, next + 3)?;
                let j = *names
                    .get(w.as_str())
                    .ok_or_else(|| perr(*line, *column, format!("unknown variable {w:?}")))?;
                if !lo.is_zero() || hi != Rational::one() {
                    return Err(perr(t.line, t.column, "only unit bounds 0 <= x <= 1 are supported"));
                }
                bounded[j] = true;
                i = after;
            }
        }
    }
    if section != Section::End {
        return Err(perr(text.lines().count(), 1, "missing End"));
    }
    if let Some(j) = bounded.iter().position(|b| !b) {
        return Err(Error::InvalidSystem(format!(
            "variable {} has no bounds line",
            sidecar.variables[j].name
        )));
    }
    objective.retain(|_, a: &mut Rational| !a.is_zero());
    Ok(LpFile {
        system: sys,
        objective,
        offset: sidecar.objective_offset.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ef::{compile_ef, PolyhedralSystem};
    use crate::hypergraph::SignedHypergraph;
    use crate::structure::beta_acyclic;

    fn compiled() -> PolyhedralSystem {
        let h = SignedHypergraph::from_specs(&["a", "b", "c"], &["a+ b-", "a- b+ c+"]);
        compile_ef(&h, &beta_acyclic(&h.underlying()).unwrap().unwrap()).unwrap().system
    }

    #[test]
    fn round_trip_preserves_system_and_objective() {
        let sys = compiled();
        let objective: BTreeMap<usize, Rational> =
            [(0, Rational::new(1, 2)), (3, Rational::new(-2, 3)), (1, Rational::from_int(4))].into();
        let offset = Rational::new(7, 5);
        let (text, sidecar) = write_lp(&sys, &objective, &offset);
        assert_eq!(sidecar.objective_scale, Rational::from_int(6));
        let back = read_lp(&text, &Sidecar::from_json(&sidecar.to_json()).unwrap()).unwrap();
        assert_eq!(back.system.variables(), sys.variables());
        assert_eq!(back.system.constraints(), sys.constraints());
        assert_eq!(back.objective, objective);
        assert_eq!(back.offset, offset);
    }

    #[test]
    fn output_is_integral_text() {
        let sys = compiled();
        let (text, _) = write_lp(&sys, &[(0, Rational::new(1, 3))].into(), &Rational::zero());
        assert!(text.contains("obj: n0"), "{text}");
        assert!(!text.contains('/'));
        assert!(text.ends_with("End\n"));
    }

    #[test]
    fn errors_are_positioned() {
        let sys = compiled();
        let (text, sidecar) = write_lp(&sys, &BTreeMap::new(), &Rational::zero());
        let broken = text.replacen(" c0:", " c0: 2.5 n0 +", 1);
        match read_lp(&broken, &sidecar) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }
        let unknown = text.replacen(" c0:", " c0: zz +", 1);
        assert!(matches!(read_lp(&unknown, &sidecar), Err(Error::Parse { .. })));
        let wide = text.replacen("0 <= n0 <= 1", "0 <= n0 <= 2", 1);
        assert!(read_lp(&wide, &sidecar).is_err());
        let no_end = text.replace("End\n", "");
        assert!(read_lp(&no_end, &sidecar).is_err());
    }

    #[test]
    fn hand_written_forms_are_accepted() {
        let mut sys = PolyhedralSystem::new();
        sys.variable(VarKey::Node("x".into()), Role::Node);
        sys.variable(VarKey::Node("y".into()), Role::Node);
        let (_, sidecar) = write_lp(&sys, &BTreeMap::new(), &Rational::zero());
        let text = "\\ comment\nmaximize\n obj: 2 n0 -n1\nst\n -n0 - -n1 >= -1\n n0\n + n1 =< 3/2\nbounds\n0<=n0<=1\n 0 <= n1 <= 1\nend\n";
        let lp = read_lp(text, &sidecar).unwrap();
        assert_eq!(lp.objective[&0], Rational::from_int(2));
        assert_eq!(lp.objective[&1], Rational::from_int(-1));
        assert_eq!(lp.system.constraints()[0].coeffs, vec![(0, Rational::from_int(-1)), (1, Rational::one())]);
        assert_eq!(lp.system.constraints()[1].rhs, Rational::new(3, 2));
    }
}
