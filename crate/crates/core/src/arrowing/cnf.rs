//! DIMACS export of arrowing instances. Satisfying assignments are exactly
//! the good colourings, so the formula is UNSAT iff the graph arrows.
//!
//! Variable `var_index(e, c, r) = e * r + c + 1` means "edge `e` has colour
//! `c + 1`", with edges in graph6 column order.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::search::{clique_edge_lists, edge_index};
use super::{ArrowingError, ArrowingInstance};

pub fn var_index(edge: usize, colour: usize, r: usize) -> i32 {
    (edge * r + colour + 1) as i32
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfSummary {
    pub variables: usize,
    pub clauses: usize,
    pub edges: usize,
    pub colours: usize,
    /// One at-least-one clause plus pairwise at-most-one clauses per edge.
    pub exactly_one_groups: usize,
    /// One clause per (target clique, colour) pair.
    pub clique_clauses: usize,
    pub symmetry_clauses: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub comments: Vec<String>,
}

pub fn build_cnf(inst: &ArrowingInstance) -> (Cnf, CnfSummary) {
    let g = inst.graph();
    let targets = inst.targets();
    let r = targets.len();
    let (edges, index) = edge_index(g);
    let mut clauses = Vec::new();
    for e in 0..edges.len() {
        clauses.push((0..r).map(|c| var_index(e, c, r)).collect());
        for c in 0..r {
            for d in c + 1..r {
                clauses.push(vec![-var_index(e, c, r), -var_index(e, d, r)]);
            }
        }
    }
    let mut clique_clauses = 0;
    for (c, &a) in targets.iter().enumerate() {
        for q in clique_edge_lists(g, &index, a) {
            clauses.push(q.iter().map(|&e| -var_index(e as usize, c, r)).collect());
            clique_clauses += 1;
        }
    }
    let symmetric = r >= 2 && targets.iter().all(|&a| a == targets[0]);
    let mut symmetry_clauses = 0;
    if symmetric && !edges.is_empty() {
        clauses.push(vec![var_index(0, 0, r)]);
        symmetry_clauses = 1;
    }
    let mut comments = vec![
        format!("edge arrowing instance: n={} targets={targets:?}", g.n()),
        format!("var(e,c) = e*{r} + c, colour c in 1..={r}, edges in graph6 column order"),
    ];
    comments.extend(
        edges
            .iter()
            .enumerate()
            .map(|(i, (u, v))| format!("edge {i} {u} {v}")),
    );
    let summary = CnfSummary {
        variables: edges.len() * r,
        clauses: clauses.len(),
        edges: edges.len(),
        colours: r,
        exactly_one_groups: edges.len(),
        clique_clauses,
        symmetry_clauses,
    };
    (
        Cnf {
            num_vars: summary.variables,
            clauses,
            comments,
        },
        summary,
    )
}

impl Cnf {
    pub fn write_dimacs<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for c in &self.comments {
            writeln!(w, "c {c}")?;
        }
        writeln!(w, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        let mut line = String::new();
        for clause in &self.clauses {
            line.clear();
            for lit in clause {
                let _ = write!(line, "{lit} ");
            }
            line.push('0');
            writeln!(w, "{line}")?;
        }
        w.flush()
    }

    pub fn to_dimacs(&self) -> String {
        let mut buf = Vec::new();
        self.write_dimacs(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}

pub fn export_cnf(inst: &ArrowingInstance, path: &Path) -> Result<CnfSummary, ArrowingError> {
    let (cnf, summary) = build_cnf(inst);
    cnf.write_dimacs(BufWriter::new(File::create(path)?))?;
    Ok(summary)
}

/// Parses DIMACS CNF, checking the header counts and literal ranges.
pub fn parse_dimacs(text: &str) -> Result<Cnf, ArrowingError> {
    let bad = |line: usize, msg: String| ArrowingError::Io(format!("dimacs line {line}: {msg}"));
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut comments = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('c') {
            comments.push(c.trim().to_string());
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                ["cnf", v, c] if header.is_none() => {
                    let v = v.parse().map_err(|_| bad(i + 1, "bad variable count".into()))?;
                    let c = c.parse().map_err(|_| bad(i + 1, "bad clause count".into()))?;
                    header = Some((v, c));
                }
                _ => return Err(bad(i + 1, "malformed problem line".into())),
            }
            continue;
        }
        let (nv, _) = header.ok_or_else(|| bad(i + 1, "clause before header".into()))?;
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| bad(i + 1, format!("bad literal {tok:?}")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > nv {
                return Err(bad(i + 1, format!("literal {lit} exceeds {nv} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let (num_vars, nc) = header.ok_or_else(|| bad(0, "missing header".into()))?;
    if !current.is_empty() {
        return Err(bad(0, "unterminated final clause".into()));
    }
    if clauses.len() != nc {
        return Err(bad(0, format!("header promises {nc} clauses, found {}", clauses.len())));
    }
    Ok(Cnf {
        num_vars,
        clauses,
        comments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn inst(g: Graph, t: &[usize]) -> ArrowingInstance {
        ArrowingInstance::new(g, t.to_vec()).unwrap()
    }

    #[test]
    fn k5_structure() {
        let (cnf, s) = build_cnf(&inst(Graph::complete(5).unwrap(), &[3, 3]));
        assert_eq!(s.variables, 20);
        assert_eq!(s.clique_clauses, 20);
        assert_eq!(s.symmetry_clauses, 1);
        assert_eq!(s.clauses, 10 * 2 + 20 + 1);
        assert_eq!(cnf.clauses.last().unwrap(), &vec![1]);
    }

    #[test]
    fn c5_has_no_clique_clauses() {
        let (_, s) = build_cnf(&inst(Graph::cycle(5).unwrap(), &[3, 3]));
        assert_eq!(s.clique_clauses, 0);
        assert_eq!(s.variables, 10);
    }

    #[test]
    fn asymmetric_targets_skip_symmetry_clause() {
        let (_, s) = build_cnf(&inst(Graph::complete(5).unwrap(), &[3, 4]));
        assert_eq!(s.symmetry_clauses, 0);
        assert_eq!(s.clique_clauses, 10 + 5);
    }

    #[test]
    fn dimacs_roundtrip() {
        let (cnf, _) = build_cnf(&inst(Graph::complete(4).unwrap(), &[3, 3, 3]));
        let text = cnf.to_dimacs();
        assert!(text.contains("p cnf 18 "));
        let back = parse_dimacs(&text).unwrap();
        assert_eq!(back.num_vars, cnf.num_vars);
        assert_eq!(back.clauses, cnf.clauses);
    }

    #[test]
    fn dimacs_rejects_garbage() {
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 2\n").is_err());
    }
}
