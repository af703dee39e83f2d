//! The ways of naming a single input graph.

use std::fs;
use std::path::PathBuf;

use clap::Args;
use folkman_core::{build_family, parse_graph6, Graph};

use crate::CliError;

#[derive(Args, Debug, Clone, Default)]
pub struct GraphSource {
    /// `Kn`, `Cn`, `Q`, or a graph6 string.
    #[arg(long)]
    pub graph: Option<String>,
    /// Join expression such as `K2+Q` or `K1+C5+C5+C5`.
    #[arg(long)]
    pub family: Option<String>,
    /// File holding exactly one graph6 record.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Circulant `m:d1,d2,...`; the connection set is closed under negation.
    #[arg(long)]
    pub circulant: Option<String>,
}

pub struct Loaded {
    pub graph: Graph,
    /// What the user asked for, for the report.
    pub name: String,
    /// For circulants: whether closing the connection set changed it.
    pub closure_changed: Option<bool>,
}

fn circulant(text: &str) -> Result<(Graph, bool), CliError> {
    let bad = || CliError::Input(format!("circulant {text:?}: expected m:d1,d2,..."));
    let (m, ds) = text.split_once(':').ok_or_else(bad)?;
    let m: usize = m.trim().parse().map_err(|_| bad())?;
    let ds = ds
        .split(',')
        .map(str::trim)
        .filter(|d| !d.is_empty())
        .map(|d| d.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    Graph::circulant(m, &ds).map_err(|e| CliError::Input(e.to_string()))
}

fn named(text: &str) -> Option<Result<Graph, CliError>> {
    if text == "Q" {
        return Some(Ok(Graph::kery_q()));
    }
    let (kind, digits) = text.split_at(1);
    if !matches!(kind, "K" | "C")
        || digits.is_empty()
        || !digits.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    // long digit runs are more likely graph6 than a vertex count
    let m: usize = digits
        .parse()
        .ok()
        .filter(|&m| m <= folkman_core::MAX_VERTICES)?;
    let g = if kind == "K" {
        Graph::complete(m)
    } else {
        Graph::cycle(m)
    };
    Some(g.map_err(|e| CliError::Input(e.to_string())))
}

impl GraphSource {
    pub fn given(&self) -> usize {
        [
            self.graph.is_some(),
            self.family.is_some(),
            self.file.is_some(),
            self.circulant.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count()
    }

    pub fn load(&self) -> Result<Loaded, CliError> {
        if self.given() != 1 {
            return Err(CliError::Usage(
                "give exactly one of --graph, --family, --file, --circulant".into(),
            ));
        }
        if let Some(text) = &self.graph {
            let graph = match named(text) {
                Some(g) => g?,
                None => parse_graph6(text).map_err(|e| CliError::Input(e.to_string()))?,
            };
            return Ok(Loaded {
                graph,
                name: text.clone(),
                closure_changed: None,
            });
        }
        if let Some(text) = &self.circulant {
            let (graph, changed) = circulant(text)?;
            return Ok(Loaded {
                graph,
                name: format!("circulant {text}"),
                closure_changed: Some(changed),
            });
        }
        if let Some(expr) = &self.family {
            let graph = build_family(expr).map_err(|e| CliError::Input(e.to_string()))?;
            return Ok(Loaded {
                graph,
                name: expr.clone(),
                closure_changed: None,
            });
        }
        let path = self.file.as_ref().expect("one source given");
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let first = lines
            .next()
            .ok_or_else(|| CliError::Input(format!("{}: no graph", path.display())))?;
        if lines.next().is_some() {
            return Err(CliError::Input(format!(
                "{}: more than one graph; use scan or verify for streams",
                path.display()
            )));
        }
        let graph =
            parse_graph6(first).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Ok(Loaded {
            graph,
            name: path.display().to_string(),
            closure_changed: None,
        })
    }
}
