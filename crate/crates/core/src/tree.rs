//! List-decoding traversal of the SC tree shared by the bit-level SCL
//! reference and the block-level FSL decoder.
//!
//! Soft values are kept stage-major: `alpha[s]` holds one length-`2^s` row
//! per live path, so the f/g updates of a node touch only two stages. A
//! node returns, for every path alive when it finishes, the index of the
//! path it descends from at node entry; parents use that map to read the
//! right upper-stage LLRs and left-child estimates.

use crate::scl::{f_update, g_update};

/// A contiguous leaf span `[start, start + 2^log_len)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct LeafSpan {
    pub start: usize,
    pub log_len: usize,
    /// Every bit frozen: the estimate is forced to zero and no split occurs.
    pub frozen: bool,
}

/// One candidate extension of a path at a leaf.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathCandidate {
    pub parent: usize,
    pub bits: u32,
    pub pm: f64,
}

/// Indices of the `keep` smallest metrics in ascending order; equal
/// metrics keep index order, as a stable sort would.
fn smallest_indices(pm: impl Fn(usize) -> f64, count: usize, keep: usize, order: &mut Vec<usize>) {
    order.clear();
    order.extend(0..count);
    let cmp = |a: &usize, b: &usize| pm(*a).total_cmp(&pm(*b)).then(a.cmp(b));
    if keep < count {
        if keep == 0 {
            order.clear();
            return;
        }
        order.select_nth_unstable_by(keep - 1, cmp);
        order.truncate(keep);
    }
    order.sort_unstable_by(cmp);
}

/// The L smallest path metrics. Stable: on equal metrics the candidate that
/// appears first (lower parent, then lower extension index) survives.
pub fn prune_global(candidates: &[PathCandidate], list_size: usize) -> Vec<PathCandidate> {
    let mut order = Vec::new();
    smallest_indices(|i| candidates[i].pm, candidates.len(), list_size, &mut order);
    order.into_iter().map(|i| candidates[i]).collect()
}

/// All candidate and surviving metrics of one prune.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PruneRecord {
    pub leaf_start: usize,
    pub candidates: Vec<f64>,
    pub survivors: Vec<f64>,
}

/// Produces the candidates of one path at one non-frozen leaf of at most
/// 32 bits: `(codeword bits, ΔPM)`.
pub(crate) trait LeafExtender {
    fn extend(&mut self, leaf: usize, alpha: &[f64], out: &mut Vec<(u32, f64)>);
}

pub(crate) struct ListEngine {
    log_n: usize,
    list_size: usize,
    alpha: Vec<Vec<f64>>,
    beta: Vec<Vec<u8>>,
    beta_left: Vec<Vec<u8>>,
    pm: Vec<f64>,
    live: usize,
    local: Vec<(u32, f64)>,
    cands: Vec<PathCandidate>,
    order: Vec<usize>,
    pub trace: Option<Vec<PruneRecord>>,
}

/// Final list after a full traversal, ascending path metric.
pub(crate) struct FinalList {
    pub codewords: Vec<Vec<u8>>,
    pub metrics: Vec<f64>,
}

impl ListEngine {
    pub fn new(log_n: usize, list_size: usize) -> Self {
        let rows = |s: usize| list_size << s;
        ListEngine {
            log_n,
            list_size,
            alpha: (0..=log_n).map(|s| vec![0.0; rows(s)]).collect(),
            beta: (0..=log_n).map(|s| vec![0; rows(s)]).collect(),
            beta_left: (0..=log_n).map(|s| vec![0; rows(s)]).collect(),
            pm: vec![0.0; list_size],
            live: 1,
            local: Vec::new(),
            cands: Vec::new(),
            order: Vec::new(),
            trace: None,
        }
    }

    pub fn list_size(&self) -> usize {
        self.list_size
    }

    pub fn run<E: LeafExtender>(&mut self, llrs: &[f64], leaves: &[LeafSpan], ext: &mut E) -> FinalList {
        let n = 1usize << self.log_n;
        debug_assert_eq!(llrs.len(), n);
        self.alpha[self.log_n][..n].copy_from_slice(llrs);
        self.pm[0] = 0.0;
        self.live = 1;
        if let Some(t) = self.trace.as_mut() {
            t.clear();
        }
        let mut cursor = 0;
        self.node(self.log_n, 0, leaves, &mut cursor, ext);
        debug_assert_eq!(cursor, leaves.len());

        let mut order: Vec<usize> = (0..self.live).collect();
        order.sort_by(|&a, &b| self.pm[a].total_cmp(&self.pm[b]));
        FinalList {
            codewords: order.iter().map(|&l| self.beta[self.log_n][l * n..(l + 1) * n].to_vec()).collect(),
            metrics: order.iter().map(|&l| self.pm[l]).collect(),
        }
    }

    fn node<E: LeafExtender>(
        &mut self,
        s: usize,
        start: usize,
        leaves: &[LeafSpan],
        cursor: &mut usize,
        ext: &mut E,
    ) -> Vec<usize> {
        let leaf = leaves[*cursor];
        if leaf.start == start && leaf.log_len == s {
            let idx = *cursor;
            *cursor += 1;
            return if leaf.frozen { self.frozen_leaf(s) } else { self.leaf(s, idx, ext) };
        }
        debug_assert!(s > 0, "leaf spans do not tile the tree");
        let h = 1usize << (s - 1);
        let len = h << 1;

        let (lower, upper) = self.alpha.split_at_mut(s);
        let (a_up, a_dn) = (&upper[0], &mut lower[s - 1]);
        for l in 0..self.live {
            let a = &a_up[l * len..(l + 1) * len];
            let out = &mut a_dn[l * h..(l + 1) * h];
            for i in 0..h {
                out[i] = f_update(a[i], a[i + h]);
            }
        }
        let perm_l = self.node(s - 1, start, leaves, cursor, ext);

        let live = self.live;
        self.beta_left[s][..live * h].copy_from_slice(&self.beta[s - 1][..live * h]);
        let (lower, upper) = self.alpha.split_at_mut(s);
        let (a_up, a_dn) = (&upper[0], &mut lower[s - 1]);
        let left = &self.beta_left[s];
        for l in 0..live {
            let a = &a_up[perm_l[l] * len..(perm_l[l] + 1) * len];
            let b = &left[l * h..(l + 1) * h];
            let out = &mut a_dn[l * h..(l + 1) * h];
            for i in 0..h {
                out[i] = g_update(a[i], a[i + h], b[i]);
            }
        }
        let perm_r = self.node(s - 1, start + h, leaves, cursor, ext);

        let live = self.live;
        let (lower, upper) = self.beta.split_at_mut(s);
        let (b_up, b_dn) = (&mut upper[0], &lower[s - 1]);
        let left = &self.beta_left[s];
        for l in 0..live {
            let bl = &left[perm_r[l] * h..(perm_r[l] + 1) * h];
            let br = &b_dn[l * h..(l + 1) * h];
            let out = &mut b_up[l * len..(l + 1) * len];
            for i in 0..h {
                out[i] = bl[i] ^ br[i];
                out[i + h] = br[i];
            }
        }
        perm_r.iter().map(|&p| perm_l[p]).collect()
    }

    fn frozen_leaf(&mut self, s: usize) -> Vec<usize> {
        let len = 1usize << s;
        for l in 0..self.live {
            let a = &self.alpha[s][l * len..(l + 1) * len];
            self.pm[l] += a.iter().filter(|&&x| x < 0.0).map(|x| -x).sum::<f64>();
            self.beta[s][l * len..(l + 1) * len].fill(0);
        }
        (0..self.live).collect()
    }

    fn leaf<E: LeafExtender>(&mut self, s: usize, idx: usize, ext: &mut E) -> Vec<usize> {
        let len = 1usize << s;
        let traced = self.trace.is_some();
        self.cands.clear();
        for l in 0..self.live {
            self.local.clear();
            ext.extend(idx, &self.alpha[s][l * len..(l + 1) * len], &mut self.local);
            let base = self.pm[l];
            if traced || self.local.len() <= self.list_size {
                self.cands.extend(self.local.iter().map(|&(bits, d)| PathCandidate { parent: l, bits, pm: base + d }));
            } else {
                // a path's candidates beyond its own best L cannot survive the global prune
                let local = &self.local;
                smallest_indices(|i| local[i].1, local.len(), self.list_size, &mut self.order);
                self.order.sort_unstable();
                self.cands.extend(
                    self.order.iter().map(|&i| PathCandidate { parent: l, bits: local[i].0, pm: base + local[i].1 }),
                );
            }
        }
        let cands = &self.cands;
        smallest_indices(|i| cands[i].pm, cands.len(), self.list_size, &mut self.order);
        if let Some(t) = self.trace.as_mut() {
            t.push(PruneRecord {
                leaf_start: idx,
                candidates: cands.iter().map(|c| c.pm).collect(),
                survivors: self.order.iter().map(|&i| cands[i].pm).collect(),
            });
        }
        let row = &mut self.beta[s];
        for (l, &i) in self.order.iter().enumerate() {
            let c = cands[i];
            for (j, b) in row[l * len..(l + 1) * len].iter_mut().enumerate() {
                *b = (c.bits >> j & 1) as u8;
            }
            self.pm[l] = c.pm;
        }
        self.live = self.order.len();
        self.order.iter().map(|&i| cands[i].parent).collect()
    }
}
