//! Dense exact linear algebra over a function field. Plain Gaussian
//! elimination with first-nonzero pivoting; determinism matters more
//! than pivot-size heuristics here.

use super::{FieldDesc, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    desc: FieldDesc,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zero(desc: FieldDesc, rows: usize, cols: usize) -> Self {
        Matrix {
            desc,
            rows,
            cols,
            data: vec![FieldElement::zero(desc); rows * cols],
        }
    }

    pub fn identity(desc: FieldDesc, n: usize) -> Self {
        let mut m = Self::zero(desc, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one(desc));
        }
        m
    }

    pub fn from_fn<F>(desc: FieldDesc, rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> FieldElement,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert_eq!(v.desc(), desc, "matrix entry from a different field");
                data.push(v);
            }
        }
        Matrix {
            desc,
            rows,
            cols,
            data,
        }
    }

    /// Columns are the given vectors.
    pub fn from_columns(desc: FieldDesc, dim: usize, cols: &[Vec<FieldElement>]) -> Self {
        Matrix::from_fn(desc, dim, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn desc(&self) -> FieldDesc {
        self.desc
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        assert_eq!(v.desc(), self.desc);
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.desc, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn map<F>(&self, desc: FieldDesc, f: F) -> Matrix
    where
        F: Fn(&FieldElement) -> FieldElement,
    {
        Matrix {
            desc,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matmul");
        Matrix::from_fn(self.desc, self.rows, rhs.cols, |i, j| {
            let mut acc = FieldElement::zero(self.desc);
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * rhs.get(k, j));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = FieldElement::zero(self.desc);
                for (j, vj) in v.iter().enumerate() {
                    acc = &acc + &(self.get(i, j) * vj);
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form; returns the reduced matrix and the pivot
    /// column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // first nonzero pivot in this column
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.get(row, col).inverse().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = m.get(r, j) - &(&factor * m.get(row, j));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space; empty iff the columns are
    /// independent. Each basis vector has a 1 in one free column.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![FieldElement::zero(self.desc); self.cols];
            v[free] = FieldElement::one(self.desc);
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -&r.get(prow, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Any solution of self * x = b, or None if inconsistent.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(b.len(), self.rows);
        // eliminate the augmented matrix
        let aug = Matrix::from_fn(self.desc, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the rhs column
        }
        let mut x = vec![FieldElement::zero(self.desc); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = r.get(prow, self.cols).clone();
        }
        Some(x)
    }

    /// True when v lies in the column span.
    pub fn contains_in_span(&self, v: &[FieldElement]) -> bool {
        self.solve(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldDesc;

    fn k2() -> FieldDesc {
        FieldDesc::base(2).unwrap()
    }

    fn el(s: &str) -> FieldElement {
        FieldElement::parse(k2(), s).unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = Matrix::identity(k2(), 3);
        assert!(m.kernel_basis().is_empty());
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn kernel_of_1x2() {
        // [t, t^2] has kernel spanned by (t, -1) up to scaling
        let m = Matrix::from_fn(k2(), 1, 2, |_, j| if j == 0 { el("t") } else { el("t^2") });
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert!(m.mul_vec(v).iter().all(FieldElement::is_zero));
        // proportional to (t, -1): v0 * (-1) - v1 * t = 0
        assert!((&(-&v[0]) - &(&v[1] * &el("t"))).is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_columns(k2(), 2, &[vec![el("1"), el("0")], vec![el("t"), el("0")]]);
        let x = m.solve(&[el("t+1"), el("0")]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![el("t+1"), el("0")]);
        assert!(m.solve(&[el("0"), el("1")]).is_none());
    }

    #[test]
    fn rank_nullity() {
        let m = Matrix::from_fn(k2(), 3, 4, |i, j| {
            FieldElement::from_int(k2(), ((i + j) % 2) as i64)
        });
        assert_eq!(m.rank() + m.kernel_basis().len(), 4);
    }
}
