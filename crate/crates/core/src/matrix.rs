//! Dense matrices of polynomials: presentations, chain maps, minors.
//!
//! Sizes here are desk scale (rarely above 20 x 20), so determinants use
//! Laplace expansion and products are cubic. Entries are polynomials over
//! the ambient polynomial ring; reduction modulo the ring ideal happens at
//! the call sites that need canonical representatives.

use crate::field::PrimeField;
use crate::monomial::Vars;
use crate::poly::Polynomial;
use crate::vector::FreeVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Polynomial::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = PolyMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(nvars));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            entries.extend(row);
        }
        PolyMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    /// Build from columns given as sparse vectors over `rows` components.
    pub fn from_columns(columns: &[FreeVector], rows: usize) -> Self {
        let mut m = PolyMatrix::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, p) in col.iter() {
                assert!(i < rows, "column entry outside row range");
                m.set(i, j, p.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> FreeVector {
        FreeVector::from_components((0..self.rows).filter_map(|i| {
            let p = self.get(i, j);
            if p.is_zero() {
                None
            } else {
                Some((i, p.clone()))
            }
        }))
    }

    pub fn columns(&self) -> Vec<FreeVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut m = PolyMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix, field: &PrimeField, vars: &Vars) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut m = PolyMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b, field, vars), field, vars);
                    }
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn sub(&self, other: &PolyMatrix, field: &PrimeField, vars: &Vars) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = PolyMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).sub(other.get(i, j), field, vars));
            }
        }
        m
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = PolyMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::zero(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Laplace expansion along the first row.
    pub fn determinant(&self, field: &PrimeField, vars: &Vars) -> Polynomial {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Polynomial::one(vars.len());
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = Polynomial::zero();
        let rest_rows: Vec<usize> = (1..n).collect();
        for j in 0..n {
            let a = self.get(0, j);
            if a.is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let mut term = a.mul(
                &self.submatrix(&rest_rows, &cols).determinant(field, vars),
                field,
                vars,
            );
            if j % 2 == 1 {
                term = term.neg(field);
            }
            acc = acc.add(&term, field, vars);
        }
        acc
    }

    /// All size x size minors, in lexicographic order of (row set, col set).
    pub fn minors(&self, size: usize, field: &PrimeField, vars: &Vars) -> Vec<Polynomial> {
        if size == 0 {
            return vec![Polynomial::one(vars.len())];
        }
        if size > self.rows || size > self.cols {
            return Vec::new();
        }
        let mut out = Vec::new();
        for rs in combinations(self.rows, size) {
            for cs in combinations(self.cols, size) {
                out.push(self.submatrix(&rs, &cs).determinant(field, vars));
            }
        }
        out
    }

    /// Adjugate of a square matrix: adj * self = det * id.
    pub fn adjugate(&self, field: &PrimeField, vars: &Vars) -> PolyMatrix {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = PolyMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let mut c = self.submatrix(&rows, &cols).determinant(field, vars);
                if (i + j) % 2 == 1 {
                    c = c.neg(field);
                }
                m.set(i, j, c);
            }
        }
        m
    }

    /// Kronecker product: row (i1, i2) -> i1 * other.rows + i2, same for
    /// columns. Used to build tensor-product presentations.
    pub fn kronecker(&self, other: &PolyMatrix, field: &PrimeField, vars: &Vars) -> PolyMatrix {
        let mut m = PolyMatrix::zero(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        m.set(
                            i1 * other.rows + i2,
                            j1 * other.cols + j2,
                            a.mul(b, field, vars),
                        );
                    }
                }
            }
        }
        m
    }

    pub fn display(&self, vars: &Vars) -> String {
        (0..self.rows)
            .map(|i| {
                let row: Vec<String> = (0..self.cols)
                    .map(|j| self.get(i, j).display(vars))
                    .collect();
                format!("[{}]", row.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// k-subsets of {0..n-1} in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..=(n - need) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut cur, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn setup() -> (PrimeField, Vars) {
        (
            PrimeField::default_field(),
            Vars::standard(&["x", "y"]).unwrap(),
        )
    }

    fn m2(entries: [&str; 4], f: &PrimeField, v: &Vars) -> PolyMatrix {
        PolyMatrix::from_rows(vec![
            vec![
                parse_polynomial(entries[0], f, v).unwrap(),
                parse_polynomial(entries[1], f, v).unwrap(),
            ],
            vec![
                parse_polynomial(entries[2], f, v).unwrap(),
                parse_polynomial(entries[3], f, v).unwrap(),
            ],
        ])
    }

    #[test]
    fn adjugate_identity() {
        let (f, v) = setup();
        let a = m2(["y", "x^2", "x", "y"], &f, &v);
        let adj = a.adjugate(&f, &v);
        let det = a.determinant(&f, &v);
        assert_eq!(det, parse_polynomial("y^2 - x^3", &f, &v).unwrap());
        let prod = a.mul(&adj, &f, &v);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j {
                    det.clone()
                } else {
                    Polynomial::zero()
                };
                assert_eq!(prod.get(i, j), &expect);
            }
        }
        let prod2 = adj.mul(&a, &f, &v);
        assert_eq!(prod2.get(0, 0), &det);
        assert_eq!(prod2.get(1, 1), &det);
    }

    #[test]
    fn minors_of_diagonal() {
        let (f, v) = setup();
        let d = m2(["x", "0", "0", "y"], &f, &v);
        let ones = d.minors(1, &f, &v);
        let nonzero: Vec<_> = ones.into_iter().filter(|p| !p.is_zero()).collect();
        assert_eq!(nonzero.len(), 2);
        let twos = d.minors(2, &f, &v);
        assert_eq!(twos, vec![parse_polynomial("x*y", &f, &v).unwrap()]);
    }

    #[test]
    fn kronecker_shapes() {
        let (f, v) = setup();
        let a = m2(["x", "0", "0", "y"], &f, &v);
        let id3 = PolyMatrix::identity(3, 2);
        let k = a.kronecker(&id3, &f, &v);
        assert_eq!((k.rows, k.cols), (6, 6));
        assert_eq!(k.get(0, 0), &parse_polynomial("x", &f, &v).unwrap());
        assert_eq!(k.get(4, 4), &parse_polynomial("y", &f, &v).unwrap());
        assert!(k.get(0, 1).is_zero());
    }

    #[test]
    fn combination_enumeration() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
    }
}
