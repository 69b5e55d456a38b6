//! Exact dense matrices over the rational-function field, plus small helpers
//! over plain rationals for point-wise work.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::chart::Chart;
use super::scalar::ScalarField;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("matrix is singular (zero determinant)")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct SfMatrix {
    chart: Chart,
    rows: usize,
    cols: usize,
    entries: Vec<ScalarField>,
}

impl SfMatrix {
    pub fn zero(chart: &Chart, rows: usize, cols: usize) -> Self {
        SfMatrix {
            chart: chart.clone(),
            rows,
            cols,
            entries: vec![ScalarField::zero(chart); rows * cols],
        }
    }

    pub fn identity(chart: &Chart, n: usize) -> Self {
        let mut m = SfMatrix::zero(chart, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ScalarField::one(chart);
        }
        m
    }

    pub fn from_rows(chart: &Chart, rows: Vec<Vec<ScalarField>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        SfMatrix {
            chart: chart.clone(),
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(
        chart: &Chart,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> ScalarField,
    ) -> Self {
        let mut m = SfMatrix::zero(chart, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &ScalarField {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut ScalarField {
        &mut self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> SfMatrix {
        SfMatrix::from_fn(&self.chart, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &SfMatrix) -> SfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        SfMatrix::from_fn(&self.chart, self.rows, self.cols, |i, j| {
            self.at(i, j) + other.at(i, j)
        })
    }

    pub fn sub(&self, other: &SfMatrix) -> SfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        SfMatrix::from_fn(&self.chart, self.rows, self.cols, |i, j| {
            self.at(i, j) - other.at(i, j)
        })
    }

    pub fn neg(&self) -> SfMatrix {
        SfMatrix::from_fn(&self.chart, self.rows, self.cols, |i, j| -self.at(i, j))
    }

    pub fn scale(&self, c: &ScalarField) -> SfMatrix {
        SfMatrix::from_fn(&self.chart, self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    pub fn mul(&self, other: &SfMatrix) -> SfMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product dimension mismatch"
        );
        SfMatrix::from_fn(&self.chart, self.rows, other.cols, |i, j| {
            let mut acc = ScalarField::zero(&self.chart);
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                acc += &(a * other.at(k, j));
            }
            acc
        })
    }

    pub fn pow(&self, e: u32) -> SfMatrix {
        assert!(self.is_square());
        let mut acc = SfMatrix::identity(&self.chart, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> ScalarField {
        assert!(self.is_square());
        let mut acc = ScalarField::zero(&self.chart);
        for i in 0..self.rows {
            acc += self.at(i, i);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_skew_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if !(self.at(i, j) + self.at(j, i)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn map(&self, mut f: impl FnMut(&ScalarField) -> ScalarField) -> SfMatrix {
        SfMatrix::from_fn(&self.chart, self.rows, self.cols, |i, j| f(self.at(i, j)))
    }

    pub fn try_map<E>(
        &self,
        mut f: impl FnMut(&ScalarField) -> Result<ScalarField, E>,
    ) -> Result<SfMatrix, E> {
        let mut out = SfMatrix::zero(&self.chart, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = f(self.at(i, j))?;
            }
        }
        Ok(out)
    }

    /// Fraction-free Bareiss elimination. Exact over the scalar field; on
    /// polynomial input all intermediate entries stay polynomial.
    pub fn det(&self) -> ScalarField {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return ScalarField::one(&self.chart);
        }
        let mut m: Vec<Vec<ScalarField>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut sign = 1i64;
        let mut prev = ScalarField::one(&self.chart);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return ScalarField::zero(&self.chart),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = &num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let mut d = m[n - 1][n - 1].clone();
        if sign < 0 {
            d = -d;
        }
        d
    }

    /// Solves `self * X = rhs` by exact Gauss-Jordan elimination.
    pub fn solve(&self, rhs: &SfMatrix) -> Result<SfMatrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::Dimension("solve needs a square matrix".into()));
        }
        if rhs.rows != self.rows {
            return Err(MatrixError::Dimension(
                "right-hand side row count mismatch".into(),
            ));
        }
        let n = self.rows;
        let w = rhs.cols;
        let mut a: Vec<Vec<ScalarField>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.at(i, j).clone())
                    .chain((0..w).map(|j| rhs.at(i, j).clone()))
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return Err(MatrixError::Singular),
            };
            a.swap(col, pivot);
            let inv = a[col][col].inverse().expect("pivot nonzero");
            for j in col..n + w {
                a[col][j] = &a[col][j] * &inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in col..n + w {
                    let t = &a[col][j] * &f;
                    a[r][j] = &a[r][j] - &t;
                }
            }
        }
        Ok(SfMatrix::from_fn(&self.chart, n, w, |i, j| {
            a[i][n + j].clone()
        }))
    }

    pub fn inverse(&self) -> Result<SfMatrix, MatrixError> {
        self.solve(&SfMatrix::identity(&self.chart, self.rows))
    }

    /// Entry-wise evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Result<Vec<Vec<BigRational>>, super::scalar::ScalarError> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.at(i, j).eval(point)?);
            }
            out.push(row);
        }
        Ok(out)
    }

    /// Entry-wise substitution of one variable.
    pub fn substitute(
        &self,
        v: usize,
        value: &ScalarField,
    ) -> Result<SfMatrix, super::scalar::ScalarError> {
        self.try_map(|e| e.substitute(v, value))
    }

    /// Entry-wise chart transfer by coordinate names.
    pub fn map_chart(&self, chart: &Chart) -> Result<SfMatrix, super::scalar::ScalarError> {
        let mut out = SfMatrix::zero(chart, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).map_chart(chart)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SfMatrix({}x{})\n{}", self.rows, self.cols, self)
    }
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn qmatrix_rank(m: &[Vec<BigRational>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&r| !a[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        a.swap(row, pivot);
        let inv = BigRational::from_integer(1.into()) / a[row][col].clone();
        for j in col..cols {
            a[row][j] = &a[row][j] * &inv;
        }
        for r in 0..rows {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..cols {
                let t = &a[row][j] * &f;
                a[r][j] = &a[r][j] - &t;
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::poly::rat_int;

    fn chart() -> Chart {
        Chart::new(["x", "y"]).unwrap()
    }

    #[test]
    fn det_of_symbolic_matrix() {
        let c = chart();
        let x = ScalarField::var(&c, 0);
        let y = ScalarField::var(&c, 1);
        let m = SfMatrix::from_rows(
            &c,
            vec![
                vec![x.clone(), ScalarField::one(&c)],
                vec![y.clone(), x.clone()],
            ],
        );
        assert_eq!(m.det(), &(&x * &x) - &y);
    }

    #[test]
    fn bareiss_matches_cofactor_3x3() {
        let c = chart();
        let x = ScalarField::var(&c, 0);
        let y = ScalarField::var(&c, 1);
        let one = ScalarField::one(&c);
        let m = SfMatrix::from_rows(
            &c,
            vec![
                vec![x.clone(), y.clone(), one.clone()],
                vec![one.clone(), x.clone(), y.clone()],
                vec![y.clone(), one.clone(), x.clone()],
            ],
        );
        // cofactor expansion oracle
        let det = &(&x * &(&(&x * &x) - &y))
            - &(&y * &(&x - &(&y * &y)))
            + &(&one * &(&one - &(&x * &y)));
        assert_eq!(m.det(), det);
    }

    #[test]
    fn inverse_round_trip() {
        let c = chart();
        let x = ScalarField::var(&c, 0);
        let one = ScalarField::one(&c);
        let m = SfMatrix::from_rows(
            &c,
            vec![
                vec![one.clone(), x.clone()],
                vec![ScalarField::zero(&c), one.clone()],
            ],
        );
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), SfMatrix::identity(&c, 2));
        assert_eq!(inv.mul(&m), SfMatrix::identity(&c, 2));
    }

    #[test]
    fn singular_matrix_rejected() {
        let c = chart();
        let x = ScalarField::var(&c, 0);
        let m = SfMatrix::from_rows(
            &c,
            vec![vec![x.clone(), x.clone()], vec![x.clone(), x.clone()]],
        );
        assert!(m.det().is_zero());
        assert_eq!(m.inverse(), Err(MatrixError::Singular));
    }

    #[test]
    fn rank_over_rationals() {
        let rows = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
            vec![rat_int(0), rat_int(1)],
        ];
        assert_eq!(qmatrix_rank(&rows), 2);
    }
}
