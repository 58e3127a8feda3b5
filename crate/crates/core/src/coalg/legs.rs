//! Leg-numbered application of operators on tensor powers `A^{⊗k}`.
//!
//! A basis tensor `e_{i_0} ⊗ … ⊗ e_{i_{k-1}}` has index `Σ i_l n^{k-1-l}`.

use crate::exactla::{Accumulator, SparseOp, SparseVec};
use crate::fdalg::Algebra;

pub fn encode(n: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, d| acc * n + d)
}

pub fn decode(n: usize, k: usize, mut x: usize) -> Vec<usize> {
    let mut d = vec![0; k];
    for l in (0..k).rev() {
        d[l] = x % n;
        x /= n;
    }
    d
}

pub fn basis3(n: usize, a: usize, b: usize, c: usize) -> SparseVec {
    SparseVec::unit(encode(n, &[a, b, c]))
}

/// Applies an operator on `A` to leg `leg` of a vector in `A^{⊗k}`.
pub fn apply_single(op: &SparseOp, n: usize, k: usize, leg: usize, x: &SparseVec) -> SparseVec {
    let mut acc = Accumulator::new();
    for (idx, c) in x.iter() {
        let mut d = decode(n, k, *idx);
        for (r, v) in op.col(d[leg]).iter() {
            d[leg] = *r;
            acc.add_mul(encode(n, &d), c, v);
        }
    }
    acc.finish()
}

/// Applies an operator on `A⊗A` to legs `(la, lb)` of a vector in
/// `A^{⊗k}`: its first tensor factor acts on leg `la`, its second on `lb`.
pub fn apply_pair(op: &SparseOp, n: usize, k: usize, legs: (usize, usize), x: &SparseVec) -> SparseVec {
    let (la, lb) = legs;
    let mut acc = Accumulator::new();
    for (idx, c) in x.iter() {
        let mut d = decode(n, k, *idx);
        let col = d[la] * n + d[lb];
        for (r, v) in op.col(col).iter() {
            d[la] = r / n;
            d[lb] = r % n;
            acc.add_mul(encode(n, &d), c, v);
        }
    }
    acc.finish()
}

/// Places `v ∈ A⊗A` in legs `(la, lb)` of `A^{⊗3}` with `e_fixed` in the remaining leg.
pub fn place(v: &SparseVec, n: usize, legs: (usize, usize), fixed: usize) -> SparseVec {
    let other = 3 - legs.0 - legs.1;
    SparseVec::from_entries(v.iter().map(|(ij, c)| {
        let mut d = [0usize; 3];
        d[legs.0] = ij / n;
        d[legs.1] = ij % n;
        d[other] = fixed;
        (encode(n, &d), c.clone())
    }))
}

/// Splits a vector of `A^{⊗3}` by the index of leg `leg`, returning for each
/// occurring index the remaining two legs (in order) as a vector of `A⊗A`.
pub fn slices(x: &SparseVec, n: usize, leg: usize) -> Vec<(usize, SparseVec)> {
    let mut parts: std::collections::BTreeMap<usize, Vec<(usize, crate::exactla::Scalar)>> = Default::default();
    for (idx, c) in x.iter() {
        let d = decode(n, 3, *idx);
        let rest: Vec<usize> = (0..3).filter(|&l| l != leg).map(|l| d[l]).collect();
        parts
            .entry(d[leg])
            .or_default()
            .push((rest[0] * n + rest[1], c.clone()));
    }
    parts
        .into_iter()
        .map(|(k, v)| (k, SparseVec::from_entries(v)))
        .collect()
}

/// Product in `A^{⊗k}` computed legwise.
pub fn tensor_mul(alg: &Algebra, k: usize, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let n = alg.dim();
    let mut acc = Accumulator::new();
    for (ix, a) in x.iter() {
        let dx = decode(n, k, *ix);
        for (iy, b) in y.iter() {
            let dy = decode(n, k, *iy);
            // expand the product of legwise products
            let mut partial: Vec<(usize, crate::exactla::Scalar)> = vec![(0, a * b)];
            for l in 0..k {
                let p = alg.product(dx[l], dy[l]);
                if p.is_zero() {
                    partial.clear();
                    break;
                }
                let mut next = Vec::with_capacity(partial.len() * p.nnz());
                for (idx, c) in &partial {
                    for (r, v) in p.iter() {
                        next.push((idx * n + r, c * v));
                    }
                }
                partial = next;
            }
            for (idx, c) in partial {
                acc.add(idx, &c);
            }
        }
    }
    acc.finish()
}

/// Applies the flip to a vector of `A⊗A`.
pub fn flip(v: &SparseVec, n: usize) -> SparseVec {
    v.map_indices(|ij| (ij % n) * n + ij / n)
}

/// Applies `x ↦ op_left ⊗ op_right` to a vector of `A⊗A`.
pub fn apply_kron(left: &SparseOp, right: &SparseOp, n: usize, v: &SparseVec) -> SparseVec {
    let mut acc = Accumulator::new();
    for (ij, c) in v.iter() {
        let (i, j) = (ij / n, ij % n);
        for (p, a) in left.col(i).iter() {
            for (q, b) in right.col(j).iter() {
                let ab = a * b;
                acc.add_mul(p * n + q, c, &ab);
            }
        }
    }
    acc.finish()
}
