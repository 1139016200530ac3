//! Small dense GF(2) linear algebra over row bitmasks.
//!
//! A row is a `u32` whose bit `j` holds column `j`, so every routine here
//! is limited to at most 32 columns. That covers every constituent block
//! the decoder handles.

/// Mask with the low `width` bits set.
#[inline]
pub fn low_mask(width: usize) -> u32 {
    debug_assert!(width <= 32);
    if width == 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

#[inline]
pub fn parity(x: u32) -> u8 {
    (x.count_ones() & 1) as u8
}

/// `x · G`, where bit `i` of `x` selects row `i`.
#[inline]
pub fn combine(rows: &[u32], x: u32) -> u32 {
    rows.iter()
        .enumerate()
        .filter(|(i, _)| x >> i & 1 == 1)
        .fold(0, |acc, (_, r)| acc ^ r)
}

pub fn rank(rows: &[u32]) -> usize {
    reduce(rows).0.len()
}

/// Reduced row-echelon form. Returns the non-zero reduced rows, their pivot
/// columns, and for each reduced row the mask of original rows it sums.
fn reduce(rows: &[u32]) -> (Vec<u32>, Vec<usize>, Vec<u32>) {
    let mut reduced: Vec<u32> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut origin: Vec<u32> = Vec::new();
    for (i, &row) in rows.iter().enumerate() {
        let mut r = row;
        let mut o = 1u32 << i;
        for (k, &p) in pivots.iter().enumerate() {
            if r >> p & 1 == 1 {
                r ^= reduced[k];
                o ^= origin[k];
            }
        }
        if r == 0 {
            continue;
        }
        let p = r.trailing_zeros() as usize;
        for k in 0..reduced.len() {
            if reduced[k] >> p & 1 == 1 {
                reduced[k] ^= r;
                origin[k] ^= o;
            }
        }
        reduced.push(r);
        pivots.push(p);
        origin.push(o);
    }
    (reduced, pivots, origin)
}

/// Basis of `{ h : G hᵀ = 0 }` for a `width`-column generator `rows`.
pub fn null_space(rows: &[u32], width: usize) -> Vec<u32> {
    let (reduced, pivots, _) = reduce(rows);
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = 1u32 << free;
            for (r, &p) in reduced.iter().zip(&pivots) {
                if r >> free & 1 == 1 {
                    v |= 1 << p;
                }
            }
            v
        })
        .collect()
}

/// Recovers the message `x` from a codeword `x · G` of a full-rank generator.
#[derive(Clone, Debug)]
pub struct MessageSolver {
    pivots: Vec<usize>,
    origin: Vec<u32>,
}

impl MessageSolver {
    /// `None` when the rows are linearly dependent.
    pub fn new(rows: &[u32]) -> Option<Self> {
        let (reduced, pivots, origin) = reduce(rows);
        (reduced.len() == rows.len()).then_some(Self { pivots, origin })
    }

    pub fn solve(&self, codeword: u32) -> u32 {
        self.pivots
            .iter()
            .zip(&self.origin)
            .filter(|(&p, _)| codeword >> p & 1 == 1)
            .fold(0, |acc, (_, &o)| acc ^ o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_is_orthogonal_and_complementary() {
        let g = [0b1011u32, 0b0110];
        let h = null_space(&g, 4);
        assert_eq!(h.len(), 2);
        for &a in &g {
            for &b in &h {
                assert_eq!(parity(a & b), 0);
            }
        }
        assert_eq!(rank(&h), 2);
    }

    #[test]
    fn solver_inverts_combine() {
        let g = [0b1111_0000u32, 0b1100_1100, 0b1010_1010, 0b1111_1111];
        let s = MessageSolver::new(&g).unwrap();
        for x in 0..16 {
            assert_eq!(s.solve(combine(&g, x)), x);
        }
    }

    #[test]
    fn dependent_rows_are_rejected() {
        assert!(MessageSolver::new(&[0b11, 0b01, 0b10]).is_none());
        assert_eq!(rank(&[0b11, 0b01, 0b10]), 2);
    }
}
