//! Random `(t, e, f)` triples for the generalized inverse.
//!
//! `t = P·D·Q` with `D` the rank-`r` coordinate projection. `e` projects
//! onto `image(t)` along a random complement and `1-f` onto `kernel(t)`,
//! again along a random complement.

use proptest::prelude::*;
use wmha::{Matrix, Scalar};

#[derive(Clone, Debug)]
pub struct Triple {
    pub t: Matrix,
    pub e: Matrix,
    pub f: Matrix,
    pub rank: usize,
}

struct Draw<'a>(std::slice::Iter<'a, (i64, i64)>);

impl Draw<'_> {
    fn next(&mut self) -> Scalar {
        let (re, im) = *self.0.next().expect("enough random entries");
        Scalar::gaussian(re, im)
    }
}

fn unit_triangular(n: usize, lower: bool, d: &mut Draw) -> Matrix {
    let mut m = Matrix::identity(n);
    for r in 0..n {
        for c in 0..n {
            if (lower && r > c) || (!lower && r < c) {
                m.set(r, c, d.next());
            }
        }
    }
    m
}

fn invertible(n: usize, d: &mut Draw) -> Matrix {
    unit_triangular(n, true, d).mul(&unit_triangular(n, false, d))
}

fn head_projection(n: usize, r: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| Scalar::from_int(i64::from(i == j && i < r)))
}

pub fn build(m: usize, n: usize, r: usize, entries: &[(i64, i64)]) -> Triple {
    let d = &mut Draw(entries.iter());
    let p = invertible(m, d);
    let q = invertible(n, d);
    let q_inv = q.inverse().expect("invertible by construction");
    let proj = Matrix::from_fn(m, n, |i, j| Scalar::from_int(i64::from(i == j && i < r)));
    let t = p.mul(&proj).mul(&q);
    // Upper unit triangular keeps the first r columns of P inside image(t).
    let pe = p.mul(&unit_triangular(m, false, d));
    let e = pe.mul(&head_projection(m, r)).mul(&pe.inverse().unwrap());
    // Lower unit triangular keeps the last n-r columns of Q⁻¹ inside kernel(t).
    let rf = q_inv.mul(&unit_triangular(n, true, d));
    let f = rf.mul(&head_projection(n, r)).mul(&rf.inverse().unwrap());
    Triple { t, e, f, rank: r }
}

/// Dimensions 2 to 6 on both sides, any rank, small Gaussian entries.
pub fn triples() -> impl Strategy<Value = Triple> {
    (2usize..=6, 2usize..=6)
        .prop_flat_map(|(m, n)| (Just(m), Just(n), 0..=m.min(n)))
        .prop_flat_map(|(m, n, r)| {
            let needed = 2 * m * m + 2 * n * n;
            (
                Just((m, n, r)),
                proptest::collection::vec((-3i64..=3, prop_oneof![3 => Just(0i64), 1 => -2i64..=2]), needed),
            )
        })
        .prop_map(|((m, n, r), entries)| build(m, n, r, &entries))
}
