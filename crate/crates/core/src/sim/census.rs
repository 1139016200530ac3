use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::fsl::{node_census, segment_tree, FslParams, NodeKind, SegmentMode};
use crate::polar::CodeSpec;
use crate::Result;

/// Published leaf counts for `N = 1024, K = 512` (PW), in
/// `R0, Rep, ML, Gen, SPC, R1` order.
pub const REFERENCE_CENSUS: [(SegmentMode, [usize; 6]); 4] = [
    (SegmentMode::FourBitMl, [30, 0, 154, 0, 0, 0]),
    (SegmentMode::FastSscl, [21, 23, 0, 0, 23, 24]),
    (SegmentMode::Fsl8, [15, 0, 26, 5, 11, 13]),
    (SegmentMode::Fsl16, [7, 0, 14, 11, 5, 9]),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub mode: String,
    pub counts: BTreeMap<NodeKind, usize>,
    pub total: usize,
    pub reference: Option<[usize; 6]>,
}

impl CensusRow {
    pub fn reference_total(&self) -> Option<usize> {
        self.reference.map(|r| r.iter().sum())
    }
}

fn params_for(mode: SegmentMode) -> FslParams {
    match mode {
        SegmentMode::Fsl8 => FslParams::for_block_len(8),
        _ => FslParams::for_block_len(16),
    }
}

/// Leaf census of `spec` under the four segmentation policies; the
/// reference counts are attached when `spec` is the reference code.
pub fn census(spec: &CodeSpec) -> Result<Vec<CensusRow>> {
    let is_reference = spec.n_mother() == 1024 && spec.k_total() == 512 && !spec.is_hybrid();
    Ok(REFERENCE_CENSUS
        .iter()
        .map(|&(mode, reference)| {
            let nodes = segment_tree(spec, &params_for(mode), mode);
            CensusRow {
                mode: mode.name(),
                counts: node_census(&nodes),
                total: nodes.len(),
                reference: is_reference.then_some(reference),
            }
        })
        .collect())
}

/// Fixed-width table of our counts, each followed by the reference count
/// in brackets when there is one.
pub fn render_census(rows: &[CensusRow]) -> String {
    let mut s = format!("{:<10}", "Decoder");
    for k in NodeKind::ALL {
        let _ = write!(s, "{:>10}", k.name());
    }
    let _ = writeln!(s, "{:>11}", "Total");
    for r in rows {
        let _ = write!(s, "{:<10}", r.mode);
        let cell = |ours: usize, theirs: Option<usize>| match theirs {
            Some(t) => format!("{ours} [{t}]"),
            None => ours.to_string(),
        };
        for (i, k) in NodeKind::ALL.iter().enumerate() {
            let _ = write!(s, "{:>10}", cell(r.counts[k], r.reference.map(|x| x[i])));
        }
        let _ = writeln!(s, "{:>11}", cell(r.total, r.reference_total()));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_totals() {
        let totals: Vec<usize> = REFERENCE_CENSUS.iter().map(|(_, c)| c.iter().sum()).collect();
        assert_eq!(totals, vec![184, 91, 70, 46]);
    }

    #[test]
    fn census_is_consistent() {
        let spec = CodeSpec::pw(1024, 512, 0).unwrap();
        let rows = census(&spec).unwrap();
        for r in &rows {
            assert_eq!(r.counts.values().sum::<usize>(), r.total);
            assert!(r.reference.is_some());
        }
        assert_eq!(rows[0].counts[&NodeKind::Gen], 0);
        assert_eq!(rows[1].counts[&NodeKind::Ml] + rows[1].counts[&NodeKind::Gen], 0);
        assert!(rows[3].total < rows[2].total && rows[2].total < rows[1].total);
        let text = render_census(&rows);
        assert!(text.contains("16b-FSL") && text.contains("[46]"));
    }
}
