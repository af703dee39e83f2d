//! Iterated-join expressions such as `K2+Q` or `C5+C5+C5`.
//!
//! Grammar: atoms `K<m>` (m >= 0), `C<m>` (m >= 3) and `Q`, separated by `+`.
//! Whitespace is ignored anywhere.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyAtom {
    Complete(usize),
    Cycle(usize),
    Q,
}

impl FamilyAtom {
    pub fn vertex_count(self) -> usize {
        match self {
            FamilyAtom::Complete(m) | FamilyAtom::Cycle(m) => m,
            FamilyAtom::Q => 13,
        }
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        match self {
            FamilyAtom::Complete(m) => Graph::complete(m),
            FamilyAtom::Cycle(m) => Graph::cycle(m),
            FamilyAtom::Q => Ok(Graph::kery_q()),
        }
    }
}

impl fmt::Display for FamilyAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyAtom::Complete(m) => write!(f, "K{m}"),
            FamilyAtom::Cycle(m) => write!(f, "C{m}"),
            FamilyAtom::Q => f.write_str("Q"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyExpr {
    pub terms: Vec<FamilyAtom>,
}

impl FamilyExpr {
    pub fn new(terms: Vec<FamilyAtom>) -> Result<Self, GraphError> {
        if terms.is_empty() {
            return Err(GraphError::Family("empty expression".into()));
        }
        for t in &terms {
            if let FamilyAtom::Cycle(m) = t {
                if *m < 3 {
                    return Err(GraphError::Family(format!("C{m}: cycles need m >= 3")));
                }
            }
        }
        Ok(Self { terms })
    }

    /// `K_m + Q`.
    pub fn km_q(m: usize) -> Self {
        Self::with_complete_part(m, vec![FamilyAtom::Q])
    }

    /// `K_m + C5 + C5 + C5`.
    pub fn km_triple_c5(m: usize) -> Self {
        Self::with_complete_part(m, vec![FamilyAtom::Cycle(5); 3])
    }

    // `K0` is dropped so names read `Q`, `C5+C5+C5`
    fn with_complete_part(m: usize, rest: Vec<FamilyAtom>) -> Self {
        let mut terms = Vec::with_capacity(rest.len() + 1);
        if m > 0 {
            terms.push(FamilyAtom::Complete(m));
        }
        terms.extend(rest);
        Self { terms }
    }

    pub fn vertex_count(&self) -> usize {
        self.terms.iter().map(|t| t.vertex_count()).sum()
    }

    /// Left fold of join over the atoms.
    pub fn build(&self) -> Result<Graph, GraphError> {
        let total = self.vertex_count();
        if total > crate::graph::MAX_VERTICES {
            return Err(GraphError::Capacity(total));
        }
        let mut acc = Graph::empty(0)?;
        for t in &self.terms {
            acc = acc.join(&t.build()?)?;
        }
        Ok(acc.with_label(self.to_string()))
    }
}

pub fn build_family(expr: &str) -> Result<Graph, GraphError> {
    expr.parse::<FamilyExpr>()?.build()
}

impl fmt::Display for FamilyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for FamilyExpr {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(GraphError::Family("empty expression".into()));
        }
        let mut terms = Vec::new();
        for atom in compact.split('+') {
            let bad = || GraphError::Family(format!("malformed atom {atom:?}"));
            let parse_count = |digits: &str| -> Result<usize, GraphError> {
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                digits.parse().map_err(|_| bad())
            };
            let t = match atom.as_bytes().first() {
                Some(b'K') => FamilyAtom::Complete(parse_count(&atom[1..])?),
                Some(b'C') => FamilyAtom::Cycle(parse_count(&atom[1..])?),
                Some(b'Q') if atom.len() == 1 => FamilyAtom::Q,
                _ => return Err(bad()),
            };
            terms.push(t);
        }
        Self::new(terms)
    }
}
