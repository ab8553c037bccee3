//! Dense row-major matrices over a [`Field`].
//!
//! A matrix does not carry its field; every operation that needs field
//! arithmetic takes it explicitly.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is only consulted when
    /// there are no rows.
    pub fn from_rows(rows: &[Vec<Elem>], cols: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, expected {cols}",
                bad + 1,
                rows[bad].len()
            )));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        self.row_iter().map(<[Elem]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        Matrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let v = (0..self.cols).fold(0, |acc, j| {
                    field.add(acc, field.mul(self.get(r, j), other.get(j, c)))
                });
                out.set(r, c, v);
            }
        }
        Ok(out)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, field: &Field, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(rows, cols);
        for (ar, ac) in (0..self.rows).flat_map(|r| (0..self.cols).map(move |c| (r, c))) {
            let a = self.get(ar, ac);
            if a == 0 {
                continue;
            }
            for br in 0..other.rows {
                for bc in 0..other.cols {
                    out.set(
                        ar * other.rows + br,
                        ac * other.cols + bc,
                        field.mul(a, other.get(br, bc)),
                    );
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduces in place to reduced row-echelon form and returns the pivot
    /// columns, one per nonzero row.
    pub fn rref_in_place(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(lead, p);
            let inv = field.inv(self.get(lead, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = field.mul(self.get(lead, j), inv);
                self.set(lead, j, v);
            }
            for r in 0..self.rows {
                let factor = self.get(r, c);
                if r == lead || factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.sub(self.get(r, j), field.mul(factor, self.get(lead, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rref(&self, field: &Field) -> Matrix {
        let mut m = self.clone();
        m.rref_in_place(field);
        m
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.clone().rref_in_place(field).len()
    }

    /// The nonzero rows of the reduced row-echelon form: a canonical basis of
    /// the row space.
    pub fn row_space_basis(&self, field: &Field) -> Matrix {
        let mut m = self.clone();
        let rank = m.rref_in_place(field).len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        m
    }

    /// Basis of `{x : M x^T = 0}`, one basis vector per row. The basis vector
    /// for free column `f` has a 1 at `f` and zeros at every other free column.
    pub fn nullspace_basis(&self, field: &Field) -> Matrix {
        let mut reduced = self.clone();
        let pivots = reduced.rref_in_place(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(free.len(), self.cols);
        for (b, &f) in free.iter().enumerate() {
            basis.set(b, f, 1);
            for (r, &p) in pivots.iter().enumerate() {
                basis.set(b, p, field.neg(reduced.get(r, f)));
            }
        }
        basis
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.row_iter() {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
