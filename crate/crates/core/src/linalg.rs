//! Gaussian elimination over a [`Field`].
//!
//! Vectors are plain `Symbol` slices; all routines are exact.

use crate::galois::{Field, Symbol};

/// Incrementally built row-echelon basis. Every stored row is zero at the
/// pivots of the rows inserted before it and has a one at its own pivot.
#[derive(Clone)]
pub struct Echelon<'f> {
    field: &'f Field,
    width: usize,
    rows: Vec<Symbol>,
    pivots: Vec<usize>,
    scratch: Vec<Symbol>,
}

impl<'f> Echelon<'f> {
    pub fn new(field: &'f Field, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::with_capacity(width * width),
            pivots: Vec::with_capacity(width),
            scratch: vec![0; width],
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn clear(&mut self) {
        self.rows.clear();
        self.pivots.clear();
    }

    fn reduce(&self, v: &mut [Symbol]) {
        let f = self.field;
        for (r, &piv) in self.pivots.iter().enumerate() {
            let c = v[piv];
            if c == 0 {
                continue;
            }
            let row = &self.rows[r * self.width..(r + 1) * self.width];
            for (x, &y) in v.iter_mut().zip(row) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Symbol]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        if self.pivots.len() == self.width {
            return false;
        }
        let mut buf = std::mem::take(&mut self.scratch);
        buf.copy_from_slice(v);
        self.reduce(&mut buf);
        let grew = match buf.iter().position(|&x| x != 0) {
            Some(piv) => {
                let inv = self.field.inv_nonzero(buf[piv]);
                self.rows.extend(buf.iter().map(|&x| self.field.mul(x, inv)));
                self.pivots.push(piv);
                true
            }
            None => false,
        };
        self.scratch = buf;
        grew
    }

    /// Whether `v` lies in the current span.
    pub fn contains(&mut self, v: &[Symbol]) -> bool {
        let mut buf = std::mem::take(&mut self.scratch);
        buf.copy_from_slice(v);
        self.reduce(&mut buf);
        let inside = buf.iter().all(|&x| x == 0);
        self.scratch = buf;
        inside
    }
}

/// Rank of a set of equal-length vectors.
pub fn rank(field: &Field, vectors: &[Vec<Symbol>]) -> usize {
    let Some(width) = vectors.first().map(Vec::len) else {
        return 0;
    };
    let mut e = Echelon::new(field, width);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(field: &Field, mat: &mut [Vec<Symbol>]) -> Vec<usize> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| mat[i][c] != 0) else {
            continue;
        };
        mat.swap(r, sel);
        let inv = field.inv_nonzero(mat[r][c]);
        for x in mat[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && mat[i][c] != 0 {
                let factor = mat[i][c];
                let (pivot_row, other) = if i < r {
                    let (lo, hi) = mat.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = mat.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, &y) in other.iter_mut().zip(pivot_row.iter()) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `a * x = b` for square nonsingular `a` (given as rows).
pub fn solve_square(field: &Field, a: Vec<Vec<Symbol>>, b: Vec<Symbol>) -> Option<Vec<Symbol>> {
    let n = a.len();
    let mut aug: Vec<Vec<Symbol>> = a
        .into_iter()
        .zip(b)
        .map(|(mut row, rhs)| {
            row.push(rhs);
            row
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n]).collect())
}

/// Coefficients `lambda` with `sum_l lambda_l * columns[l] = target`, if the
/// target lies in the span. Unique when the columns are independent.
pub fn express_in_span(field: &Field, columns: &[&[Symbol]], target: &[Symbol]) -> Option<Vec<Symbol>> {
    let height = target.len();
    let r = columns.len();
    let mut aug: Vec<Vec<Symbol>> = (0..height)
        .map(|i| {
            let mut row: Vec<Symbol> = columns.iter().map(|c| c[i]).collect();
            row.push(target[i]);
            row
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&r) {
        return None;
    }
    let mut lambda = vec![0; r];
    for (row, &p) in pivots.iter().enumerate() {
        lambda[p] = aug[row][r];
    }
    Some(lambda)
}

/// Basis of `{x : mat * x = 0}` where `mat` is given as rows.
pub fn null_space(field: &Field, mat: &[Vec<Symbol>]) -> Vec<Vec<Symbol>> {
    let cols = mat.first().map_or(0, Vec::len);
    let mut m = mat.to_vec();
    let pivots = rref(field, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0; cols];
            x[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = field.neg(m[row][fc]);
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_null_space_over_gf5() {
        let f = Field::new(5, 1, 1).unwrap();
        let mat = vec![vec![1, 2, 3, 4], vec![2, 4, 1, 3], vec![0, 0, 0, 0]];
        // second row is twice the first mod 5
        assert_eq!(rank(&f, &mat), 1);
        let ns = null_space(&f, &mat);
        assert_eq!(ns.len(), 3);
        for x in &ns {
            for row in &mat {
                let dot = row.iter().zip(x).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn solve_and_express() {
        let f = Field::new(2, 4, 1).unwrap();
        let a = vec![vec![0, 0, 7], vec![1, 2, 3], vec![0, 5, 6]];
        let x = vec![9, 11, 13];
        let b: Vec<Symbol> = a
            .iter()
            .map(|row| row.iter().zip(&x).fold(0, |acc, (&p, &q)| f.add(acc, f.mul(p, q))))
            .collect();
        assert_eq!(solve_square(&f, a.clone(), b.clone()), Some(x.clone()));
        let cols: Vec<Vec<Symbol>> = (0..3).map(|j| a.iter().map(|r| r[j]).collect()).collect();
        let refs: Vec<&[Symbol]> = cols.iter().map(Vec::as_slice).collect();
        assert_eq!(express_in_span(&f, &refs, &b), Some(x));
        assert_eq!(express_in_span(&f, &refs[..1], &b), None);
    }

    #[test]
    fn echelon_contains() {
        let f = Field::new(3, 1, 1).unwrap();
        let mut e = Echelon::new(&f, 3);
        assert!(e.insert(&[1, 1, 0]));
        assert!(e.insert(&[0, 1, 1]));
        assert!(!e.insert(&[1, 2, 1]));
        assert!(e.contains(&[2, 1, 2]));
        assert!(!e.contains(&[0, 0, 1]));
        assert_eq!(e.rank(), 2);
    }
}
