//! Dense linear algebra over F_p: row reduction, rank, nullspace, and an
//! incremental echelon form used to reduce vectors against a growing span.

use crate::field::PrimeField;

#[derive(Debug, Clone)]
pub struct FpMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u32>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        FpMatrix {
            rows: r,
            cols,
            data,
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rank(&self, field: &PrimeField) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec(), field);
        }
        e.rank()
    }

    /// Basis of the right nullspace `{v : M v = 0}`.
    pub fn nullspace(&self, field: &PrimeField) -> Vec<Vec<u32>> {
        // Row-reduce a copy, then back-substitute free columns.
        let mut m = self.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut rank = 0usize;
        for col in 0..m.cols {
            // find pivot row
            let mut pr = None;
            for r in rank..m.rows {
                if m.get(r, col) != 0 {
                    pr = Some(r);
                    break;
                }
            }
            let pr = match pr {
                Some(r) => r,
                None => continue,
            };
            // swap into place
            if pr != rank {
                for j in 0..m.cols {
                    let a = m.get(rank, j);
                    let b = m.get(pr, j);
                    m.set(rank, j, b);
                    m.set(pr, j, a);
                }
            }
            // normalize
            let inv = field.inv(m.get(rank, col));
            for j in col..m.cols {
                let v = field.mul(m.get(rank, j), inv);
                m.set(rank, j, v);
            }
            // eliminate everywhere else
            for r in 0..m.rows {
                if r != rank && m.get(r, col) != 0 {
                    let factor = m.get(r, col);
                    for j in col..m.cols {
                        let v = field.sub(m.get(r, j), field.mul(factor, m.get(rank, j)));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push((rank, col));
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![0u32; m.cols];
            v[free] = 1;
            for &(r, c) in &pivots {
                // row r: x_c + sum_{j>c} m[r][j] x_j = 0
                v[c] = field.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }
}

/// Row echelon accumulator with full reduction bookkeeping.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub cols: usize,
    /// Rows in echelon form, each normalized to pivot coefficient 1.
    rows: Vec<Vec<u32>>,
    /// Pivot column of each stored row.
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains(&col)
    }

    /// Reduce `v` against the stored rows (in place result returned).
    pub fn reduce(&self, mut v: Vec<u32>, field: &PrimeField) -> Vec<u32> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for j in p..self.cols {
                    if row[j] != 0 {
                        v[j] = field.sub(v[j], field.mul(c, row[j]));
                    }
                }
            }
        }
        v
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: Vec<u32>, field: &PrimeField) -> bool {
        let mut v = self.reduce(v, field);
        let pivot = match v.iter().position(|&c| c != 0) {
            Some(p) => p,
            None => return false,
        };
        let inv = field.inv(v[pivot]);
        for c in v.iter_mut() {
            *c = field.mul(*c, inv);
        }
        // Back-substitute into existing rows to keep reduction canonical.
        for row in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for j in pivot..self.cols {
                    if v[j] != 0 {
                        row[j] = field.sub(row[j], field.mul(c, v[j]));
                    }
                }
            }
        }
        // keep rows sorted by pivot for determinism
        let at = self
            .pivots
            .iter()
            .position(|&p| p > pivot)
            .unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, pivot);
        true
    }

    pub fn contains(&self, v: Vec<u32>, field: &PrimeField) -> bool {
        self.reduce(v, field).iter().all(|&c| c == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let f = PrimeField::default_field();
        // [1 2 3; 2 4 6; 1 0 1] over F_p: rank 2
        let m = FpMatrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]], 3);
        assert_eq!(m.rank(&f), 2);
        let ns = m.nullspace(&f);
        assert_eq!(ns.len(), 1);
        // check M v = 0
        for v in &ns {
            for i in 0..m.rows {
                let mut acc = 0u32;
                for (j, &vj) in v.iter().enumerate() {
                    acc = f.add(acc, f.mul(m.get(i, j), vj));
                }
                assert_eq!(acc, 0);
            }
        }
    }

    #[test]
    fn echelon_membership() {
        let f = PrimeField::default_field();
        let mut e = Echelon::new(3);
        assert!(e.insert(vec![0, 1, 1], &f));
        assert!(e.insert(vec![1, 1, 0], &f));
        assert!(!e.insert(vec![1, 2, 1], &f)); // dependent
        assert!(e.contains(vec![2, 3, 1], &f));
        assert!(!e.contains(vec![0, 0, 1], &f));
        assert_eq!(e.rank(), 2);
    }
}
