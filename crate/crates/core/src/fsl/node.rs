//! Segmentation of the SC tree into constituent blocks.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::construct::{OuterCode, OuterFamily};
use crate::gf2::low_mask;
use crate::polar::{kernel_row, CodeSpec};

use super::FslParams;

/// Longest R0/Rep/SPC/R1 block decoded in one step.
pub const B_MAX: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    R0,
    Rep,
    Ml,
    Gen,
    Spc,
    R1,
}

impl NodeKind {
    pub const ALL: [NodeKind; 6] = [NodeKind::R0, NodeKind::Rep, NodeKind::Ml, NodeKind::Gen, NodeKind::Spc, NodeKind::R1];

    pub fn name(self) -> &'static str {
        match self {
            NodeKind::R0 => "R0",
            NodeKind::Rep => "Rep",
            NodeKind::Ml => "ML",
            NodeKind::Gen => "Gen",
            NodeKind::Spc => "SPC",
            NodeKind::R1 => "R1",
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Kind of a polar block that a special decoder handles, from its
/// information-position word (bit `j` set ⇔ local position `j` is info).
pub fn special_kind(info_word: u32, len: usize) -> Option<NodeKind> {
    let all = low_mask(len);
    let info = info_word & all;
    if info == 0 {
        Some(NodeKind::R0)
    } else if info == all {
        Some(NodeKind::R1)
    } else if info == 1 << (len - 1) {
        Some(NodeKind::Rep)
    } else if len > 1 && info == all & !1 {
        Some(NodeKind::Spc)
    } else {
        None
    }
}

/// One leaf of the pruned decoding tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDescriptor {
    pub start: usize,
    pub len: usize,
    pub kind: NodeKind,
    pub k_local: usize,
    /// Bit `j` set ⇔ local position `j` is frozen.
    pub frozen_mask: u32,
}

impl NodeDescriptor {
    pub fn bit_range(&self) -> Range<usize> {
        self.start..self.start + self.len
    }
}

/// Tree segmentation policies compared in the leaf census.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentMode {
    /// R0 blocks up to `B_MAX`, every other span as 4-bit ML blocks.
    FourBitMl,
    /// R0/Rep/SPC/R1 blocks up to `B_MAX`, split down to single bits.
    FastSscl,
    /// Special blocks up to `B_MAX`, general blocks of 8 bits.
    Fsl8,
    /// Special blocks up to `B_MAX`, general blocks of 16 bits.
    Fsl16,
    /// Every block is a length-`B` exhaustive block.
    ForcedMl(usize),
}

impl SegmentMode {
    pub fn for_block_len(block_len: usize) -> SegmentMode {
        if block_len == 8 {
            SegmentMode::Fsl8
        } else {
            SegmentMode::Fsl16
        }
    }

    pub fn name(self) -> String {
        match self {
            SegmentMode::FourBitMl => "4b-ML".into(),
            SegmentMode::FastSscl => "Fast-SSCL".into(),
            SegmentMode::Fsl8 => "8b-FSL".into(),
            SegmentMode::Fsl16 => "16b-FSL".into(),
            SegmentMode::ForcedMl(b) => format!("{b}b-ML"),
        }
    }
}

/// A leaf together with what its decoder needs.
#[derive(Clone, Debug)]
pub(crate) struct PlanLeaf {
    pub desc: NodeDescriptor,
    pub log_len: usize,
    /// Local generator for ML and general blocks.
    pub generator: Vec<u32>,
    /// Outer-code parity checks for hybrid blocks; `None` for polar blocks.
    pub outer_checks: Option<Vec<u32>>,
}

struct Planner<'a> {
    info: Vec<bool>,
    hybrid: Option<(usize, Vec<OuterCode>)>,
    params: &'a FslParams,
    mode: SegmentMode,
    /// R0 spans may exceed `B_MAX` (decoder plans only).
    long_r0: bool,
    out: Vec<PlanLeaf>,
}

impl Planner<'_> {
    fn info_word(&self, start: usize, len: usize) -> u32 {
        (0..len).filter(|&j| self.info[start + j]).fold(0, |m, j| m | 1 << j)
    }

    fn all_frozen(&self, start: usize, len: usize) -> bool {
        !self.info[start..start + len].iter().any(|&b| b)
    }

    fn exhaustive(&self, k: usize) -> bool {
        self.params.prefers_exhaustive(k)
    }

    fn push(&mut self, start: usize, len: usize, kind: NodeKind, generator: Vec<u32>, outer_checks: Option<Vec<u32>>) {
        let info = if len <= 32 { self.info_word(start, len) } else { 0 };
        let k_local = self.info[start..start + len].iter().filter(|&&b| b).count();
        let frozen_mask = if len <= 32 { !info & low_mask(len) } else { u32::MAX };
        self.out.push(PlanLeaf {
            desc: NodeDescriptor { start, len, kind, k_local, frozen_mask },
            log_len: len.trailing_zeros() as usize,
            generator,
            outer_checks,
        });
    }

    fn polar_leaf(&mut self, start: usize, len: usize, forced: Option<NodeKind>) {
        let info = self.info_word(start, len);
        let generator: Vec<u32> = (0..len).filter(|j| info >> j & 1 == 1).map(|j| kernel_row(j, len)).collect();
        let kind = forced.unwrap_or(if self.exhaustive(generator.len()) { NodeKind::Ml } else { NodeKind::Gen });
        self.push(start, len, kind, generator, None);
    }

    fn visit(&mut self, start: usize, len: usize) {
        if let Some((b, codes)) = &self.hybrid {
            if len == *b {
                let code = &codes[start / b];
                if code.family != OuterFamily::Polar {
                    let kind = if self.exhaustive(code.k_local) { NodeKind::Ml } else { NodeKind::Gen };
                    let (g, h) = (code.generator.clone(), code.parity_checks());
                    self.push(start, len, kind, g, Some(h));
                    return;
                }
            }
        }
        let forced = matches!(self.mode, SegmentMode::ForcedMl(_));
        if !forced && self.all_frozen(start, len) && (len <= B_MAX || self.long_r0) {
            return self.push(start, len, NodeKind::R0, Vec::new(), None);
        }
        match self.mode {
            SegmentMode::ForcedMl(b) => {
                if len <= b {
                    return self.polar_leaf(start, len, Some(NodeKind::Ml));
                }
            }
            SegmentMode::FourBitMl => {
                if len <= 4 {
                    return self.polar_leaf(start, len, Some(NodeKind::Ml));
                }
            }
            SegmentMode::FastSscl | SegmentMode::Fsl8 | SegmentMode::Fsl16 => {
                if len <= B_MAX {
                    if let Some(kind) = special_kind(self.info_word(start, len), len) {
                        return self.push(start, len, kind, Vec::new(), None);
                    }
                }
                let b = match self.mode {
                    SegmentMode::Fsl8 => 8,
                    SegmentMode::Fsl16 => 16,
                    _ => 0,
                };
                if len <= b {
                    return self.polar_leaf(start, len, None);
                }
            }
        }
        let h = len / 2;
        self.visit(start, h);
        self.visit(start + h, h);
    }
}

pub(crate) fn plan(spec: &CodeSpec, params: &FslParams, mode: SegmentMode, long_r0: bool) -> Vec<PlanLeaf> {
    let mut p = Planner { info: spec.info_mask(), hybrid: spec.outer_codes(), params, mode, long_r0, out: Vec::new() };
    p.visit(0, spec.n_mother());
    p.out
}

/// Leaves of the pruned SC tree in decoding order. Blocks before the first
/// information bit are skipped; the remaining leaves tile the rest of
/// `[0, N)`. R0/Rep/SPC/R1 blocks are at most `B_MAX` long.
pub fn segment_tree(spec: &CodeSpec, params: &FslParams, mode: SegmentMode) -> Vec<NodeDescriptor> {
    let leaves = plan(spec, params, mode, false);
    let first = leaves.iter().position(|l| l.desc.k_local > 0).unwrap_or(leaves.len());
    leaves[first..].iter().map(|l| l.desc).collect()
}

/// Leaf count per kind.
pub fn node_census(nodes: &[NodeDescriptor]) -> BTreeMap<NodeKind, usize> {
    let mut m: BTreeMap<NodeKind, usize> = NodeKind::ALL.iter().map(|&k| (k, 0)).collect();
    for n in nodes {
        *m.entry(n.kind).or_default() += 1;
    }
    m
}
