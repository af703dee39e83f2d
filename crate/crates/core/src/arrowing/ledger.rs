//! Persistent record of Ramsey values and edge-Folkman bounds.
//!
//! Literature constants are seed data. They feed the bound bookkeeping but
//! are never asserted by local computation. Computed Ramsey values carry a
//! good colouring of `K_{R-1}` so the lower half of the bracket can be
//! re-checked without searching.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    arrows, check_coloring, ArrowingError, ArrowingInstance, EdgeColoring, SearchOptions,
};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Established by this tool's own search.
    Computed,
    /// Cited constant, not recomputed.
    Literature,
    /// Follows from other ledger entries by a stated inequality.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyEntry {
    pub targets: Vec<usize>,
    pub value: usize,
    pub provenance: Provenance,
    /// Colour classes of a good colouring of `K_{value-1}` (graph6, comma
    /// separated, in `targets` order).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_graph6: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FolkmanEntry {
    pub targets: Vec<usize>,
    pub q: usize,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub ramsey: Vec<RamseyEntry>,
    pub folkman: Vec<FolkmanEntry>,
}

/// Targets sorted ascending; `R` and `F_e` are symmetric in them.
pub fn normalize_targets(targets: &[usize]) -> Vec<usize> {
    let mut t = targets.to_vec();
    t.sort_unstable();
    t
}

fn literature_ramsey(targets: &[usize], value: usize) -> RamseyEntry {
    RamseyEntry {
        targets: targets.to_vec(),
        value,
        provenance: Provenance::Literature,
        witness_graph6: None,
    }
}

fn literature_folkman(
    targets: &[usize],
    q: usize,
    lower: usize,
    upper: Option<usize>,
    note: Option<&str>,
) -> FolkmanEntry {
    FolkmanEntry {
        targets: targets.to_vec(),
        q,
        lower: Some(lower),
        upper,
        provenance: Provenance::Literature,
        note: note.map(str::to_string),
    }
}

impl Ledger {
    /// Ledger holding the cited constants.
    pub fn seeded() -> Self {
        Self {
            ramsey: vec![
                literature_ramsey(&[3, 3], 6),
                literature_ramsey(&[3, 4], 9),
                literature_ramsey(&[3, 5], 14),
                literature_ramsey(&[4, 4], 18),
                literature_ramsey(&[3, 3, 3], 17),
            ],
            folkman: vec![
                literature_folkman(&[3, 3, 3], 15, 23, Some(23), None),
                literature_folkman(&[3, 4], 8, 16, Some(16), None),
                literature_folkman(
                    &[3, 4],
                    7,
                    17,
                    None,
                    Some("stated as a consequence of F_e(3,4;8) = 16; inference not re-derived"),
                ),
            ],
        }
    }

    pub fn load(path: &Path) -> Result<Self, ArrowingError> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| ArrowingError::Ledger(format!("{}: {e}", path.display())))
    }

    /// Loads `path`, or returns the seeded ledger when it does not exist.
    pub fn load_or_seed(path: &Path) -> Result<Self, ArrowingError> {
        if path.exists() {
            Self::load(path)
        } else {
            Ok(Self::seeded())
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), ArrowingError> {
        let text = serde_json::to_string_pretty(self).map_err(|e| ArrowingError::Internal(e.to_string()))?;
        fs::write(path, text + "\n")?;
        Ok(())
    }

    pub fn ramsey_entry(&self, targets: &[usize]) -> Option<&RamseyEntry> {
        let key = normalize_targets(targets);
        // computed values take precedence over cited ones
        self.ramsey
            .iter()
            .filter(|e| normalize_targets(&e.targets) == key)
            .min_by_key(|e| e.provenance != Provenance::Computed)
    }

    pub fn ramsey_value(&self, targets: &[usize]) -> Option<usize> {
        self.ramsey_entry(targets).map(|e| e.value)
    }

    /// Adds or replaces the entry for the same target multiset and
    /// provenance. A value contradicting an existing entry is rejected.
    pub fn record_ramsey(&mut self, entry: RamseyEntry) -> Result<(), ArrowingError> {
        let key = normalize_targets(&entry.targets);
        if let Some(other) = self
            .ramsey
            .iter()
            .find(|e| normalize_targets(&e.targets) == key && e.value != entry.value)
        {
            return Err(ArrowingError::Ledger(format!(
                "R{:?} = {} conflicts with recorded {} ({:?})",
                entry.targets, entry.value, other.value, other.provenance
            )));
        }
        self.ramsey
            .retain(|e| !(normalize_targets(&e.targets) == key && e.provenance == entry.provenance));
        self.ramsey.push(entry);
        Ok(())
    }

    pub fn folkman(&self, targets: &[usize], q: usize) -> Vec<&FolkmanEntry> {
        let key = normalize_targets(targets);
        self.folkman
            .iter()
            .filter(|e| e.q == q && normalize_targets(&e.targets) == key)
            .collect()
    }

    /// Best known `(lower, upper)` over all entries for `F_e(targets; q)`.
    pub fn folkman_bounds(&self, targets: &[usize], q: usize) -> (Option<usize>, Option<usize>) {
        let es = self.folkman(targets, q);
        (
            es.iter().filter_map(|e| e.lower).max(),
            es.iter().filter_map(|e| e.upper).min(),
        )
    }

    /// Records a lower bound, replacing a weaker one of the same provenance.
    pub fn record_folkman_lower(
        &mut self,
        targets: &[usize],
        q: usize,
        lower: usize,
        provenance: Provenance,
        note: Option<String>,
    ) -> Result<FolkmanEntry, ArrowingError> {
        let (_, upper) = self.folkman_bounds(targets, q);
        if let Some(u) = upper {
            if lower > u {
                return Err(ArrowingError::Ledger(format!(
                    "lower bound {lower} for F_e{targets:?};{q} exceeds recorded upper bound {u}"
                )));
            }
        }
        let key = normalize_targets(targets);
        let entry = FolkmanEntry {
            targets: targets.to_vec(),
            q,
            lower: Some(lower),
            upper: None,
            provenance,
            note,
        };
        if let Some(e) = self.folkman.iter_mut().find(|e| {
            e.q == q && e.provenance == provenance && normalize_targets(&e.targets) == key && e.upper.is_none()
        }) {
            if e.lower.is_none_or(|l| l < lower) {
                *e = entry.clone();
            }
            return Ok(e.clone());
        }
        self.folkman.push(entry.clone());
        Ok(entry)
    }

    /// Re-checks every computed Ramsey entry: `K_R` arrows and the stored
    /// witness is a good colouring of `K_{R-1}`.
    pub fn verify_computed(&self, opts: &SearchOptions) -> Result<usize, ArrowingError> {
        let mut checked = 0;
        for e in self.ramsey.iter().filter(|e| e.provenance == Provenance::Computed) {
            let bad = |reason: &str| ArrowingError::InvalidRamsey {
                targets: e.targets.clone(),
                value: e.value,
                reason: reason.to_string(),
            };
            if e.value == 0 {
                return Err(bad("zero"));
            }
            let top = ArrowingInstance::new(Graph::complete(e.value)?, e.targets.clone())?;
            if !arrows(&top, opts)?.arrows {
                return Err(bad("K_R does not arrow"));
            }
            let text = e.witness_graph6.as_deref().ok_or_else(|| bad("missing witness"))?;
            let (n, col) = EdgeColoring::from_class_graph6(text)?;
            let below = ArrowingInstance::new(Graph::complete(e.value - 1)?, e.targets.clone())?;
            if n != e.value - 1 || !check_coloring(&below, &col)? {
                return Err(bad("witness is not a good colouring of K_{R-1}"));
            }
            checked += 1;
        }
        Ok(checked)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrowing::ramsey;

    #[test]
    fn seeded_values() {
        let l = Ledger::seeded();
        assert_eq!(l.ramsey_value(&[5, 3]), Some(14));
        assert_eq!(l.ramsey_value(&[4, 4]), Some(18));
        assert_eq!(l.ramsey_value(&[3, 3, 3]), Some(17));
        assert_eq!(l.ramsey_value(&[5, 5]), None);
        assert_eq!(l.folkman_bounds(&[3, 3, 3], 15), (Some(23), Some(23)));
        assert_eq!(l.folkman_bounds(&[3, 4], 7), (Some(17), None));
    }

    #[test]
    fn computed_entry_roundtrip_and_verification() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ledger.json");
        let opts = SearchOptions::default();
        let mut l = Ledger::seeded();
        let r = ramsey(&[3, 3], &opts).unwrap();
        l.record_ramsey(r.ledger_entry().unwrap()).unwrap();
        l.save(&path).unwrap();
        let back = Ledger::load(&path).unwrap();
        assert_eq!(back, l);
        assert_eq!(back.ramsey_entry(&[3, 3]).unwrap().provenance, Provenance::Computed);
        assert_eq!(back.verify_computed(&opts).unwrap(), 1);
    }

    #[test]
    fn conflicting_values_rejected() {
        let mut l = Ledger::seeded();
        let err = l.record_ramsey(literature_ramsey(&[3, 3], 7)).unwrap_err();
        assert!(matches!(err, ArrowingError::Ledger(_)));
    }

    #[test]
    fn forged_witness_fails_verification() {
        let mut l = Ledger::default();
        l.record_ramsey(RamseyEntry {
            targets: vec![3, 3],
            value: 6,
            provenance: Provenance::Computed,
            // K5 all in colour 1: not good
            witness_graph6: Some("D~{,D??".into()),
        })
        .unwrap();
        assert!(l.verify_computed(&SearchOptions::default()).is_err());
    }

    #[test]
    fn lower_bounds_keep_the_strongest() {
        let mut l = Ledger::default();
        l.record_folkman_lower(&[3, 5], 12, 20, Provenance::Derived, None).unwrap();
        l.record_folkman_lower(&[5, 3], 12, 18, Provenance::Derived, None).unwrap();
        assert_eq!(l.folkman_bounds(&[3, 5], 12), (Some(20), None));
        assert_eq!(l.folkman.len(), 1);
        let mut s = Ledger::seeded();
        assert!(s.record_folkman_lower(&[3, 4], 8, 17, Provenance::Derived, None).is_err());
    }
}
