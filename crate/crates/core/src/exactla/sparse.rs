use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Scalar;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Scalar::one())],
        }
    }

    pub fn single(i: usize, c: Scalar) -> Self {
        if c.is_zero() {
            SparseVec::new()
        } else {
            SparseVec { entries: vec![(i, c)] }
        }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn from_map(m: BTreeMap<usize, Scalar>) -> Self {
        SparseVec {
            entries: m.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Builds from unsorted, possibly repeated entries (repeats are summed).
    pub fn from_entries<I: IntoIterator<Item = (usize, Scalar)>>(it: I) -> Self {
        let mut acc = Accumulator::new();
        for (i, c) in it {
            acc.add(i, &c);
        }
        acc.finish()
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn get_ref(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|p| &self.entries[p].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn map_indices<F: Fn(usize) -> usize>(&self, f: F) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }

    pub fn conj(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, c)| (*i, c.conj())).collect(),
        }
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let mut s = x.clone();
                        s.add_mul(y, c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&-Scalar::one(), other)
    }

    pub fn dot(&self, dense: &[Scalar]) -> Scalar {
        let mut s = Scalar::zero();
        for (i, c) in &self.entries {
            s.add_mul(c, &dense[*i]);
        }
        s
    }

    /// Index of the first coordinate where the two vectors differ.
    pub fn first_difference(&self, other: &SparseVec) -> Option<usize> {
        self.sub(other).leading().map(|e| e.0)
    }
}

/// Accumulates a linear combination of sparse vectors.
#[derive(Default)]
pub struct Accumulator {
    map: BTreeMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator { map: BTreeMap::new() }
    }

    pub fn add(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        *self.map.entry(i).or_default() += c;
    }

    pub fn add_mul(&mut self, i: usize, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        self.map.entry(i).or_default().add_mul(a, b);
    }

    pub fn add_vec(&mut self, c: &Scalar, v: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.add_mul(*i, c, x);
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec::from_map(self.map)
    }
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Debug, Clone)]
pub enum Insertion {
    /// The vector was independent and now owns the pivot column.
    Independent(usize),
    /// The vector reduced to zero; the tagged part of the residual is returned.
    Dependent(SparseVec),
}

#[derive(Clone, Debug)]
struct Row {
    left: SparseVec,
    right: SparseVec,
}

/// Incrementally maintained fully reduced row echelon form.
///
/// Each row carries a "right" tag vector that undergoes the same row
/// operations, which gives solution bookkeeping, preimages and kernels
/// without a second pass. Because rows are kept fully reduced, the final
/// left parts do not depend on insertion order.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Row>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.pivot_row.keys().copied().collect()
    }

    /// Reduces `(left, right)` against the current rows.
    pub fn reduce(&self, left: &SparseVec, right: &SparseVec) -> (SparseVec, SparseVec) {
        let mut l = Accumulator::new();
        let mut r = Accumulator::new();
        for (i, c) in left.iter() {
            l.add(*i, c);
        }
        for (i, c) in right.iter() {
            r.add(*i, c);
        }
        for (k, c) in left.iter() {
            if let Some(&ri) = self.pivot_row.get(k) {
                let neg = -c;
                l.add_vec(&neg, &self.rows[ri].left);
                r.add_vec(&neg, &self.rows[ri].right);
            }
        }
        (l.finish(), r.finish())
    }

    pub fn reduce_left(&self, left: &SparseVec) -> SparseVec {
        let mut l = Accumulator::new();
        for (i, c) in left.iter() {
            l.add(*i, c);
        }
        for (k, c) in left.iter() {
            if let Some(&ri) = self.pivot_row.get(k) {
                l.add_vec(&-c, &self.rows[ri].left);
            }
        }
        l.finish()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_left(v).is_zero()
    }

    pub fn insert(&mut self, left: &SparseVec, right: &SparseVec) -> Insertion {
        let (l, r) = self.reduce(left, right);
        let Some((p, lead)) = l.leading().cloned() else {
            return Insertion::Dependent(r);
        };
        let inv = lead.inv().expect("nonzero leading coefficient");
        let row = Row {
            left: l.scale(&inv),
            right: r.scale(&inv),
        };
        for existing in self.rows.iter_mut() {
            if let Some(c) = existing.left.get_ref(p).cloned() {
                let neg = -c;
                existing.left = existing.left.axpy(&neg, &row.left);
                existing.right = existing.right.axpy(&neg, &row.right);
            }
        }
        self.rows.push(row);
        let idx = self.rows.len() - 1;
        self.pivot_row.insert(p, idx);
        Insertion::Independent(idx)
    }

    pub fn insert_left(&mut self, left: &SparseVec) -> bool {
        matches!(self.insert(left, &SparseVec::new()), Insertion::Independent(_))
    }

    /// Rows `(pivot, left, right)` in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec, &SparseVec)> {
        self.pivot_row
            .iter()
            .map(move |(p, &ri)| (*p, &self.rows[ri].left, &self.rows[ri].right))
    }

    /// Left parts in canonical order.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows().map(|(_, l, _)| l.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[i64]) -> SparseVec {
        SparseVec::from_dense(&v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn axpy_merges_and_cancels() {
        let a = sv(&[1, 0, 2]);
        let b = sv(&[1, 3, 0]);
        assert_eq!(a.sub(&b), sv(&[0, -3, 2]));
        assert_eq!(a.sub(&a), SparseVec::new());
    }

    #[test]
    fn echelon_is_order_independent() {
        let vs = [sv(&[1, 1, 0]), sv(&[0, 1, 1]), sv(&[1, 2, 1]), sv(&[2, 0, 1])];
        let mut e1 = Echelon::new(3);
        let mut e2 = Echelon::new(3);
        for v in vs.iter() {
            e1.insert_left(v);
        }
        for v in vs.iter().rev() {
            e2.insert_left(v);
        }
        assert_eq!(e1.basis(), e2.basis());
        assert_eq!(e1.rank(), 3);
    }

    #[test]
    fn dependent_insert_reports_tag_combination() {
        let mut e = Echelon::new(2);
        e.insert(&sv(&[1, 1]), &SparseVec::unit(0));
        e.insert(&sv(&[1, -1]), &SparseVec::unit(1));
        match e.insert(&sv(&[2, 0]), &SparseVec::unit(2)) {
            Insertion::Dependent(r) => {
                // 2·(1,0) = (1,1) + (1,-1)
                assert_eq!(r, sv(&[-1, -1, 1]));
            }
            Insertion::Independent(_) => panic!("expected dependence"),
        }
    }
}
