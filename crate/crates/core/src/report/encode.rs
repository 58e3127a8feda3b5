use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coalg::TensorMultiplier;
use crate::exactla::{Matrix, Scalar, SparseOp, SparseVec};
use crate::fdalg::Multiplier;

/// Sparse entry `[row, col, re, im]`.
pub type Entry = (usize, usize, String, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Entry>,
}

/// Left and right actions of a multiplier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierDoc {
    pub left: MatrixDoc,
    pub right: MatrixDoc,
}

fn entry(r: usize, c: usize, v: &Scalar) -> Entry {
    (r, c, v.re_string(), v.im_string())
}

/// Entries sorted by row, then column.
pub fn op_doc(op: &SparseOp) -> MatrixDoc {
    let mut entries: Vec<Entry> = op
        .cols()
        .iter()
        .enumerate()
        .flat_map(|(c, col)| col.iter().map(move |(r, v)| entry(*r, c, v)))
        .collect();
    entries.sort_by_key(|e| (e.0, e.1));
    MatrixDoc {
        rows: op.rows(),
        cols: op.ncols(),
        entries,
    }
}

pub fn matrix_doc(m: &Matrix) -> MatrixDoc {
    MatrixDoc {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.nonzeros().into_iter().map(|(r, c, v)| entry(r, c, v)).collect(),
    }
}

pub(crate) fn tensor_doc(x: &TensorMultiplier) -> MultiplierDoc {
    MultiplierDoc {
        left: op_doc(&x.left),
        right: op_doc(&x.right),
    }
}

pub(crate) fn multiplier_doc(m: &Multiplier) -> MultiplierDoc {
    MultiplierDoc {
        left: matrix_doc(&m.left),
        right: matrix_doc(&m.right),
    }
}

fn parse_entries(rows: usize, cols: usize, entries: &[Entry]) -> Result<BTreeMap<(usize, usize), Scalar>, String> {
    let mut out = BTreeMap::new();
    for (k, (r, c, re, im)) in entries.iter().enumerate() {
        if *r >= rows || *c >= cols {
            return Err(format!("entry {k} at ({r},{c}) is outside a {rows}x{cols} matrix"));
        }
        let v = Scalar::parse_parts(re, im).map_err(|e| format!("entry {k}: {e}"))?;
        if out.insert((*r, *c), v).is_some() {
            return Err(format!("entry {k} repeats position ({r},{c})"));
        }
    }
    Ok(out)
}

pub fn parse_op(rows: usize, cols: usize, entries: &[Entry]) -> Result<SparseOp, String> {
    let mut by_col = vec![Vec::new(); cols];
    for ((r, c), v) in parse_entries(rows, cols, entries)? {
        by_col[c].push((r, v));
    }
    Ok(SparseOp::from_cols(
        rows,
        by_col.into_iter().map(SparseVec::from_entries).collect(),
    ))
}

pub fn parse_matrix(rows: usize, cols: usize, entries: &[Entry]) -> Result<Matrix, String> {
    let mut m = Matrix::zeros(rows, cols);
    for ((r, c), v) in parse_entries(rows, cols, entries)? {
        m.set(r, c, v);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn op_round_trip() {
        let m = Matrix::from_int_rows(&[&[0, 2], &[1, 0]]);
        let op = SparseOp::from_matrix(&m);
        let d = op_doc(&op);
        assert_eq!(d.entries[0], (0, 1, "2".to_string(), "0".to_string()));
        assert_eq!(parse_op(2, 2, &d.entries).unwrap(), op);
        assert_eq!(parse_matrix(2, 2, &matrix_doc(&m).entries).unwrap(), m);
    }

    #[test]
    fn bad_entries_are_rejected() {
        let e = |r, c, re: &str| (r, c, re.to_string(), "0".to_string());
        assert!(parse_op(2, 2, &[e(2, 0, "1")]).is_err());
        assert!(parse_op(2, 2, &[e(0, 0, "1/0")]).is_err());
        assert!(parse_op(2, 2, &[e(0, 0, "1"), e(0, 0, "2")]).is_err());
    }
}
