//! One representative per isomorphism class of graphs on `n <= 7` vertices.
//!
//! Orderly generation over upper-triangle edge codes read in column order
//! `(0,1), (0,2), (1,2), (0,3), ...`, first position most significant. A code
//! is canonical when no relabelling yields a larger code. Deleting the last
//! edge of a canonical code leaves a canonical code, so canonical graphs are
//! reached from the empty graph by appending edges after the last one.

use crate::graph::{bit, Graph};

/// Largest `n` the built-in enumerator handles.
pub const MAX_BUILTIN_N: usize = 7;

/// Number of unlabelled graphs on `n` vertices, `n = 0..=7`.
pub const KNOWN_COUNTS: [usize; 8] = [1, 1, 2, 4, 11, 34, 156, 1044];

fn positions(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// True if some relabelling of `adj` has a lexicographically larger code.
/// Builds the relabelling one column at a time and abandons a branch as
/// soon as its column compares smaller.
fn has_larger_relabelling(adj: &[u64], n: usize) -> bool {
    fn rec(adj: &[u64], n: usize, j: usize, order: &mut Vec<usize>, used: u64) -> bool {
        if j == n {
            return false;
        }
        for v in 0..n {
            if used & bit(v) != 0 {
                continue;
            }
            let mut cmp = std::cmp::Ordering::Equal;
            for (i, &w) in order.iter().enumerate() {
                let permuted = adj[w] & bit(v) != 0;
                let original = adj[i] & bit(j) != 0;
                if permuted != original {
                    cmp = permuted.cmp(&original);
                    break;
                }
            }
            match cmp {
                std::cmp::Ordering::Greater => return true,
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => {
                    order.push(v);
                    let found = rec(adj, n, j + 1, order, used | bit(v));
                    order.pop();
                    if found {
                        return true;
                    }
                }
            }
        }
        false
    }
    rec(adj, n, 0, &mut Vec::with_capacity(n), 0)
}

/// Canonical representatives, depth-first from the empty graph.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, super::VerifyError> {
    if n > MAX_BUILTIN_N {
        return Err(super::VerifyError::EnumerationTooLarge(n));
    }
    let pos = positions(n);
    let mut out = Vec::new();
    let mut adj = vec![0u64; n];
    fn grow(
        n: usize,
        pos: &[(usize, usize)],
        from: usize,
        adj: &mut Vec<u64>,
        out: &mut Vec<Graph>,
    ) {
        out.push(Graph::from_rows_unchecked(adj.clone()));
        for (p, &(i, j)) in pos.iter().enumerate().skip(from) {
            adj[i] |= bit(j);
            adj[j] |= bit(i);
            if !has_larger_relabelling(adj, n) {
                grow(n, pos, p + 1, adj, out);
            }
            adj[i] &= !bit(j);
            adj[j] &= !bit(i);
        }
    }
    grow(n, &pos, 0, &mut adj, &mut out);
    Ok(out)
}
