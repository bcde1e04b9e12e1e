//! Exact linear algebra over F_p: matrices, rank, kernels.

use serde::Serialize;

use crate::poly::inv_mod;

/// Dense matrix over F_p, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MatFp {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl MatFp {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        MatFp {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from column vectors.
    pub fn from_cols(p: u64, rows: usize, cols: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(p, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v % p;
            }
        }
        m
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn rows_vec(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn mul(&self, other: &MatFp) -> MatFp {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = MatFp::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.data[k * other.cols + j]) % p;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let p = self.p;
        let mut out = vec![0u64; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (j, &x) in v.iter().enumerate() {
                acc = (acc + self.data[i * self.cols + j] * x) % p;
            }
            *o = acc;
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rs = RowSpace::new(self.p, self.cols);
        for i in 0..self.rows {
            rs.insert(self.data[i * self.cols..(i + 1) * self.cols].to_vec());
            if rs.rank() == self.cols.min(self.rows) {
                break;
            }
        }
        rs.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Inverse by Gauss-Jordan on the augmented matrix.
    pub fn inverse(&self) -> Option<MatFp> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let p = self.p;
        let mut a = self.data.clone();
        let mut inv = MatFp::identity(p, n).data;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let scale = inv_mod(a[col * n + col], p);
            for j in 0..n {
                a[col * n + j] = a[col * n + j] * scale % p;
                inv[col * n + j] = inv[col * n + j] * scale % p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = (a[r * n + j] + p * p - f * a[col * n + j] % p) % p;
                    inv[r * n + j] = (inv[r * n + j] + p * p - f * inv[col * n + j] % p) % p;
                }
            }
        }
        Some(MatFp {
            p,
            rows: n,
            cols: n,
            data: inv,
        })
    }

    /// Flat encoding used for deterministic ordering and equality.
    pub fn encoding(&self) -> &[u64] {
        &self.data
    }
}

impl std::fmt::Debug for MatFp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MatFp({}x{} mod {})", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        Ok(())
    }
}

/// Row space in reduced echelon form, built incrementally. Used for rank
/// bookkeeping, span membership and kernel extraction without materializing
/// large constraint matrices.
#[derive(Clone)]
pub struct RowSpace {
    p: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(p: u64, cols: usize) -> Self {
        RowSpace {
            p,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn reduce(&self, row: &mut [u64]) {
        let p = self.p;
        for (r, &piv) in self.rows.iter().zip(&self.pivots) {
            let f = row[piv];
            if f == 0 {
                continue;
            }
            for j in 0..self.cols {
                row[j] = (row[j] + p * p - f * r[j] % p) % p;
            }
        }
    }

    /// Insert a row; returns true when it enlarged the span.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        assert_eq!(row.len(), self.cols);
        let p = self.p;
        for v in row.iter_mut() {
            *v %= p;
        }
        self.reduce(&mut row);
        let piv = match row.iter().position(|&c| c != 0) {
            Some(piv) => piv,
            None => return false,
        };
        let scale = inv_mod(row[piv], p);
        for v in row.iter_mut() {
            *v = *v * scale % p;
        }
        // clear the new pivot column in existing rows
        for (r, _) in self.rows.iter_mut().zip(&self.pivots) {
            let f = r[piv];
            if f == 0 {
                continue;
            }
            for j in 0..self.cols {
                r[j] = (r[j] + p * p - f * row[j] % p) % p;
            }
        }
        let pos = self.pivots.iter().position(|&q| q > piv).unwrap_or(self.rows.len());
        self.rows.insert(pos, row);
        self.pivots.insert(pos, piv);
        true
    }

    pub fn contains(&self, row: &[u64]) -> bool {
        let mut r: Vec<u64> = row.iter().map(|&v| v % self.p).collect();
        self.reduce(&mut r);
        r.iter().all(|&c| c == 0)
    }

    /// Basis of the solution space { x : row · x = 0 for every inserted row },
    /// one vector per free column, in ascending column order.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut out = Vec::new();
        for free in 0..self.cols {
            if self.pivots.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &piv) in self.rows.iter().zip(&self.pivots) {
                v[piv] = (p - r[free]) % p;
            }
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel_mod2() {
        // rows: (1,1,0), (0,1,1) over F_2 -> kernel spanned by (1,1,1)
        let mut rs = RowSpace::new(2, 3);
        assert!(rs.insert(vec![1, 1, 0]));
        assert!(rs.insert(vec![0, 1, 1]));
        assert!(!rs.insert(vec![1, 0, 1]));
        assert_eq!(rs.rank(), 2);
        let k = rs.kernel_basis();
        assert_eq!(k, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let rows = [vec![2, 1, 0, 4], vec![1, 1, 3, 0], vec![3, 2, 3, 4]];
        let mut rs = RowSpace::new(5, 4);
        for r in &rows {
            rs.insert(r.clone());
        }
        for k in rs.kernel_basis() {
            for r in &rows {
                let dot: u64 = r.iter().zip(&k).map(|(a, b)| a * b).sum();
                assert_eq!(dot % 5, 0);
            }
        }
        assert_eq!(rs.rank() + rs.kernel_basis().len(), 4);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = MatFp::from_cols(7, 3, &[vec![1, 2, 0], vec![3, 1, 4], vec![0, 5, 6]]);
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.mul(&inv), MatFp::identity(7, 3));
        assert_eq!(inv.mul(&m), MatFp::identity(7, 3));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = MatFp::from_cols(3, 2, &[vec![1, 2], vec![2, 2]]);
        assert!(m.inverse().is_some());
        let s = MatFp::from_cols(3, 2, &[vec![1, 2], vec![2, 1]]);
        assert!(!s.is_invertible());
        assert!(s.inverse().is_none());
    }

    #[test]
    fn matrix_apply() {
        let m = MatFp::from_cols(5, 2, &[vec![1, 0], vec![0, 2]]);
        assert_eq!(m.apply(&[3, 4]), vec![3, 3]);
    }
}
