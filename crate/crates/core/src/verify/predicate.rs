//! Filter predicates for graph6 scans, e.g. `f >= 2 and n <= 10`.
//!
//! Evaluation starts from cheap bounds (greedy clique, greedy colouring) and
//! only runs the exact solvers for comparisons the bounds leave undecided.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::graph::Graph;
use crate::invariants::{
    chromatic_number, clique_number, colour_count, greedy_clique, greedy_coloring,
    independence_number,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    N,
    Chi,
    Omega,
    Alpha,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op {
    Ge,
    Le,
    Eq,
    Ne,
    Lt,
    Gt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub field: Field,
    pub op: Op,
    pub value: i64,
}

/// Conjunction of comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicate {
    pub clauses: Vec<Comparison>,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::N => "n",
            Field::Chi => "chi",
            Field::Omega => "omega",
            Field::Alpha => "alpha",
            Field::F => "f",
        })
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Ge => ">=",
            Op::Le => "<=",
            Op::Eq => "==",
            Op::Ne => "!=",
            Op::Lt => "<",
            Op::Gt => ">",
        })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" and ")?;
            }
            write!(f, "{} {} {}", c.field, c.op, c.value)?;
        }
        Ok(())
    }
}

fn parse_comparison(text: &str) -> Result<Comparison, VerifyError> {
    let bad = |msg: &str| VerifyError::Predicate(format!("{msg} in {text:?}"));
    let t = text.trim();
    let start = t
        .find(|c: char| "<>=!".contains(c))
        .ok_or_else(|| bad("missing comparison operator"))?;
    let (lhs, rest) = t.split_at(start);
    let op_len = rest.chars().take_while(|c| "<>=!".contains(*c)).count();
    let (op, rhs) = rest.split_at(op_len);
    let field = match lhs.trim().to_ascii_lowercase().as_str() {
        "n" => Field::N,
        "chi" => Field::Chi,
        "omega" => Field::Omega,
        "alpha" => Field::Alpha,
        "f" => Field::F,
        other => return Err(bad(&format!("unknown field {other:?}"))),
    };
    let op = match op {
        ">=" => Op::Ge,
        "<=" => Op::Le,
        "==" | "=" => Op::Eq,
        "!=" => Op::Ne,
        "<" => Op::Lt,
        ">" => Op::Gt,
        other => return Err(bad(&format!("unknown operator {other:?}"))),
    };
    let value = rhs
        .trim()
        .parse()
        .map_err(|_| bad(&format!("bad integer {:?}", rhs.trim())))?;
    Ok(Comparison { field, op, value })
}

impl FromStr for Predicate {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut clauses = Vec::new();
        for part in s.split("&&") {
            let mut rest = part;
            // split on the word "and", case-insensitively
            loop {
                let lower = rest.to_ascii_lowercase();
                match lower.find(" and ") {
                    Some(i) => {
                        clauses.push(parse_comparison(&rest[..i])?);
                        rest = &rest[i + 5..];
                    }
                    None => {
                        clauses.push(parse_comparison(rest)?);
                        break;
                    }
                }
            }
        }
        Ok(Predicate { clauses })
    }
}

#[derive(Clone, Copy, Debug)]
struct Interval {
    lo: i64,
    hi: i64,
}

impl Interval {
    fn exact(v: usize) -> Self {
        Self {
            lo: v as i64,
            hi: v as i64,
        }
    }

    /// `Some(truth)` when every value in the interval agrees.
    fn decide(self, op: Op, v: i64) -> Option<bool> {
        let (always, never) = match op {
            Op::Ge => (self.lo >= v, self.hi < v),
            Op::Le => (self.hi <= v, self.lo > v),
            Op::Gt => (self.lo > v, self.hi <= v),
            Op::Lt => (self.hi < v, self.lo >= v),
            Op::Eq => (self.lo == v && self.hi == v, v < self.lo || v > self.hi),
            Op::Ne => (v < self.lo || v > self.hi, self.lo == v && self.hi == v),
        };
        if always {
            Some(true)
        } else if never {
            Some(false)
        } else {
            None
        }
    }
}

struct Bounds<'a> {
    g: &'a Graph,
    omega: Interval,
    chi: Interval,
    alpha: Interval,
    exact_omega: bool,
    exact_chi: bool,
    exact_alpha: bool,
}

impl<'a> Bounds<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        let clique_lo = greedy_clique(g).count_ones() as usize;
        let colour_hi = colour_count(&greedy_coloring(g));
        let indep_lo = greedy_clique(&g.complement()).count_ones() as usize;
        Self {
            g,
            omega: Interval {
                lo: clique_lo as i64,
                hi: colour_hi as i64,
            },
            chi: Interval {
                lo: clique_lo as i64,
                hi: colour_hi as i64,
            },
            alpha: Interval {
                lo: indep_lo as i64,
                hi: n as i64,
            },
            exact_omega: false,
            exact_chi: false,
            exact_alpha: false,
        }
    }

    fn get(&self, field: Field) -> Interval {
        match field {
            Field::N => Interval::exact(self.g.n()),
            Field::Chi => self.chi,
            Field::Omega => self.omega,
            Field::Alpha => self.alpha,
            Field::F => Interval {
                lo: (self.chi.lo - self.omega.hi).max(0),
                hi: (self.chi.hi - self.omega.lo).max(0),
            },
        }
    }

    fn refine(&mut self, field: Field) {
        match field {
            Field::N => {}
            Field::Omega => self.refine_omega(),
            Field::Chi => self.refine_chi(),
            Field::Alpha => {
                if !self.exact_alpha {
                    self.alpha = Interval::exact(independence_number(self.g));
                    self.exact_alpha = true;
                }
            }
            Field::F => {
                self.refine_omega();
                self.refine_chi();
            }
        }
    }

    fn refine_omega(&mut self) {
        if !self.exact_omega {
            self.omega = Interval::exact(clique_number(self.g));
            self.chi.lo = self.chi.lo.max(self.omega.lo);
            self.exact_omega = true;
        }
    }

    fn refine_chi(&mut self) {
        if !self.exact_chi {
            self.chi = Interval::exact(chromatic_number(self.g));
            self.omega.hi = self.omega.hi.min(self.chi.hi);
            self.exact_chi = true;
        }
    }
}

impl Predicate {
    pub fn matches(&self, g: &Graph) -> bool {
        if self.clauses.is_empty() {
            return true;
        }
        let mut b = Bounds::new(g);
        // settle what the cheap bounds already decide before any exact work
        let mut pending = Vec::new();
        for c in &self.clauses {
            match b.get(c.field).decide(c.op, c.value) {
                Some(false) => return false,
                Some(true) => {}
                None => pending.push(*c),
            }
        }
        for c in pending {
            let truth = match b.get(c.field).decide(c.op, c.value) {
                Some(t) => t,
                None => {
                    b.refine(c.field);
                    b.get(c.field)
                        .decide(c.op, c.value)
                        .expect("exact values decide every comparison")
                }
            };
            if !truth {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_family;

    #[test]
    fn parses_variants() {
        let p: Predicate = "f>=2 and n <= 10 AND chi=4 && alpha != 3".parse().unwrap();
        assert_eq!(p.clauses.len(), 4);
        assert_eq!(p.clauses[2].op, Op::Eq);
        assert_eq!(p.to_string(), "f >= 2 and n <= 10 and chi == 4 and alpha != 3");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "x >= 1", "f >> 2", "f >= two", "f 2"] {
            assert!(s.parse::<Predicate>().is_err(), "{s:?}");
        }
    }

    #[test]
    fn evaluates() {
        let g = build_family("C5+C5").unwrap();
        assert!("f >= 2 and n == 10".parse::<Predicate>().unwrap().matches(&g));
        assert!(!"f >= 3".parse::<Predicate>().unwrap().matches(&g));
        assert!("alpha == 2 and omega = 4 and chi = 6".parse::<Predicate>().unwrap().matches(&g));
        assert!(!"chi < 6".parse::<Predicate>().unwrap().matches(&g));
    }
}
