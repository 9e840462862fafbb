//! Dense linear algebra over a field.

use alloc::vec::Vec;

use crate::arith::{Field, Scalar};

/// Row echelon form in place; returns the pivot columns.
pub(crate) fn echelon(field: &Field, rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else { continue };
        rows.swap(r, pr);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = field.mul(v, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !field.is_zero(&rows[i][c]) {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = field.mul(&f, &rows[r][j]);
                    rows[i][j] = field.sub(&rows[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    echelon(field, &mut m).len()
}

/// Basis of `{v : rows * v = 0}` with `ncols` unknowns.
pub fn kernel(field: &Field, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = echelon(field, &mut m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = alloc::vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(&m[r][free]);
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_a_line() {
        let f = Field::prime(3).unwrap();
        let rows = alloc::vec![alloc::vec![f.from_i64(-2), f.one()]];
        assert_eq!(rank(&f, &rows), 1);
        let k = kernel(&f, &rows, 2);
        assert_eq!(k, alloc::vec![alloc::vec![f.from_i64(2), f.one()]]);
    }
}
