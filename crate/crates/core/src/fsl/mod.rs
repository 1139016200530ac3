//! Flip-syndrome-list decoding.
//!
//! LLRs are propagated down to each constituent block only; the block is
//! then decided from its hard estimate in one step per path (fixed flip
//! patterns for R1/SPC, syndrome lookup for general blocks, exhaustive
//! search for low-rate blocks) followed by a single prune back to `L`.

mod extend;
mod node;
mod patterns;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use extend::{
    block_pm_update, extend_exhaustive, extend_general, hard_decision, recover_info, BlockCandidate,
};
pub use node::{node_census, segment_tree, special_kind, NodeDescriptor, NodeKind, SegmentMode, B_MAX};
pub use patterns::{
    extend_r1, extend_spc, spc_patterns, SortedLlrView, PATTERN_LIST_SIZE, PATTERN_MIN_BLOCK, R1_PATTERNS,
    SPC_EVEN_PATTERNS, SPC_ODD_PATTERNS,
};
pub use crate::tree::{prune_global, PathCandidate, PruneRecord};

use crate::polar::CodeSpec;
use crate::scl::DecodeOutcome;
use crate::syndrome::{SyndromeTable, TableCache};
use crate::tree::{LeafExtender, LeafSpan, ListEngine};
use crate::{Error, Result};

use node::PlanLeaf;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FslParams {
    pub block_len: usize,
    /// Flipping budget `T`.
    pub flip_t: usize,
    /// Error patterns stored per syndrome.
    pub l_sd: usize,
    pub list_size: usize,
    pub saturation_llr: f64,
    /// Largest `K_B` an exhaustive block may have.
    pub exhaustive_guard: usize,
}

impl Default for FslParams {
    fn default() -> Self {
        FslParams::for_block_len(16)
    }
}

impl FslParams {
    /// `B = 8: T = 2, L_sd = 4`; `B = 16: T = 3, L_sd = 8`; `L = 8`.
    pub fn for_block_len(block_len: usize) -> Self {
        let (flip_t, l_sd) = if block_len <= 8 { (2, 4) } else { (3, 8) };
        FslParams { block_len, flip_t, l_sd, list_size: 8, saturation_llr: 1e9, exhaustive_guard: 12 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_len != 8 && self.block_len != 16 {
            return Err(Error::invalid(format!("block length must be 8 or 16, got {}", self.block_len)));
        }
        if self.list_size == 0 || self.l_sd == 0 {
            return Err(Error::invalid("list size and l_sd must be at least 1"));
        }
        if self.flip_t > self.block_len {
            return Err(Error::invalid("flip budget exceeds the block length"));
        }
        if !(self.saturation_llr.is_finite() && self.saturation_llr > 0.0) {
            return Err(Error::invalid("saturation LLR must be positive and finite"));
        }
        Ok(())
    }

    /// Exhaustive search is used when `2^{K_B} <= 2^T · L_sd`.
    pub fn prefers_exhaustive(&self, k_local: usize) -> bool {
        (k_local as u32) < 64 && (1u128 << k_local) <= (1u128 << self.flip_t.min(64)) * self.l_sd as u128
    }

    /// `T + log2 L_sd`, the smallest `K_B` at which a syndrome table is
    /// no larger than exhaustive search.
    pub fn syndrome_threshold(&self) -> usize {
        self.flip_t + self.l_sd.ilog2() as usize
    }
}

enum LeafAction {
    Rep,
    R1,
    Spc,
    Ml(Vec<u32>),
    Gen(Arc<SyndromeTable>),
}

struct FslLeaves<'a> {
    actions: &'a [Option<LeafAction>],
    params: &'a FslParams,
    buf: Vec<BlockCandidate>,
}

impl LeafExtender for FslLeaves<'_> {
    fn extend(&mut self, leaf: usize, alpha: &[f64], out: &mut Vec<(u32, f64)>) {
        self.buf.clear();
        let action = self.actions[leaf].as_ref().expect("frozen leaves are handled by the engine");
        match action {
            LeafAction::Rep => extend::extend_rep_into(alpha, &mut self.buf),
            LeafAction::R1 => patterns::extend_r1_into(alpha, self.params.list_size, &mut self.buf),
            LeafAction::Spc => patterns::extend_spc_into(alpha, self.params.list_size, &mut self.buf),
            LeafAction::Ml(g) => extend::extend_exhaustive_into(alpha, g, &mut self.buf),
            LeafAction::Gen(t) => {
                extend::extend_general_into(alpha, t, self.params.flip_t, self.params.saturation_llr, &mut self.buf)
            }
        }
        out.extend(self.buf.iter().map(|c| (c.bits, c.delta)));
    }
}

/// Reusable FSL decoder for one code: the segmentation and the syndrome
/// tables it needs are prepared once.
pub struct FslDecoder {
    spec: CodeSpec,
    params: FslParams,
    mode: SegmentMode,
    spans: Vec<LeafSpan>,
    actions: Vec<Option<LeafAction>>,
    nodes: Vec<NodeDescriptor>,
    engine: ListEngine,
}

impl FslDecoder {
    /// Builds the decoder, creating missing tables through `$FSLPOLAR_TABLE_CACHE`
    /// (or in memory).
    pub fn new(spec: &CodeSpec, params: &FslParams) -> Result<Self> {
        Self::with_tables(spec, params, SegmentMode::for_block_len(params.block_len), &TableCache::from_env())
    }

    pub fn with_tables(spec: &CodeSpec, params: &FslParams, mode: SegmentMode, tables: &TableCache) -> Result<Self> {
        params.validate()?;
        if let SegmentMode::ForcedMl(b) = mode {
            if !b.is_power_of_two() || b > 32 {
                return Err(Error::invalid(format!("forced ML block length {b} unsupported")));
            }
        }
        let leaves = node::plan(spec, params, mode, true);
        let mut spans = Vec::with_capacity(leaves.len());
        let mut actions = Vec::with_capacity(leaves.len());
        for leaf in &leaves {
            let frozen = leaf.desc.kind == NodeKind::R0;
            spans.push(LeafSpan { start: leaf.desc.start, log_len: leaf.log_len, frozen });
            actions.push(if frozen { None } else { Some(Self::action(leaf, params, tables)?) });
        }
        Ok(FslDecoder {
            spec: spec.clone(),
            params: *params,
            mode,
            spans,
            actions,
            nodes: leaves.iter().map(|l| l.desc).collect(),
            engine: ListEngine::new(spec.log_n(), params.list_size),
        })
    }

    fn action(leaf: &PlanLeaf, params: &FslParams, tables: &TableCache) -> Result<LeafAction> {
        let d = &leaf.desc;
        Ok(match d.kind {
            NodeKind::Rep => LeafAction::Rep,
            NodeKind::R1 => LeafAction::R1,
            NodeKind::Spc => LeafAction::Spc,
            NodeKind::Ml => {
                if d.k_local > params.exhaustive_guard {
                    return Err(Error::ExhaustiveTooLarge { k_local: d.k_local, guard: params.exhaustive_guard });
                }
                LeafAction::Ml(leaf.generator.clone())
            }
            NodeKind::Gen => {
                let table = match &leaf.outer_checks {
                    Some(h) => tables.for_checks(d.len, h, params.l_sd),
                    None => tables.polar(d.len, d.frozen_mask, params.l_sd),
                };
                LeafAction::Gen(table.map_err(|_| Error::TableNotBuilt {
                    start: d.start,
                    len: d.len,
                    k_local: d.k_local,
                })?)
            }
            NodeKind::R0 => unreachable!("R0 leaves carry no action"),
        })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn params(&self) -> &FslParams {
        &self.params
    }

    pub fn mode(&self) -> SegmentMode {
        self.mode
    }

    /// Every leaf the decoder visits, including leading R0 spans.
    pub fn nodes(&self) -> &[NodeDescriptor] {
        &self.nodes
    }

    pub fn decode(&mut self, llrs: &[f64]) -> Result<DecodeOutcome> {
        if llrs.len() != self.spec.n_mother() {
            return Err(Error::invalid(format!("expected {} LLRs, got {}", self.spec.n_mother(), llrs.len())));
        }
        let mut ext = FslLeaves { actions: &self.actions, params: &self.params, buf: Vec::new() };
        let list = self.engine.run(llrs, &self.spans, &mut ext);
        Ok(DecodeOutcome::select(&self.spec, list))
    }

    pub fn decode_traced(&mut self, llrs: &[f64]) -> Result<(DecodeOutcome, Vec<PruneRecord>)> {
        self.engine.trace = Some(Vec::new());
        let out = self.decode(llrs);
        let trace = self.engine.trace.take().unwrap_or_default();
        Ok((out?, trace))
    }
}

/// One-shot decode; tables come from `tables` (built on demand).
pub fn fsl_decode(llrs: &[f64], spec: &CodeSpec, params: &FslParams, tables: &TableCache) -> Result<DecodeOutcome> {
    FslDecoder::with_tables(spec, params, SegmentMode::for_block_len(params.block_len), tables)?.decode(llrs)
}
