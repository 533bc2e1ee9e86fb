use std::fmt;

use super::{ArithError, Field, UniPoly};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactMatrix<S: Field> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Reduced row echelon form. `reduced` keeps the input shape with the zero
/// rows at the bottom.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rref<S: Field> {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: ExactMatrix<S>,
}

impl<S: Field> Rref<S> {
    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize, pivots: Vec<usize>) -> Self {
        let reduced = ExactMatrix::from_rows_with_cols(rows, cols)
            .expect("row reduction preserves the shape");
        Rref { rank: pivots.len(), pivots, reduced }
    }
}

/// Outcome of expressing a vector in the row span of a matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SpanSolution<S: Field> {
    /// Coefficients `c` with `sum_i c[i] * row_i == target`.
    InSpan(Vec<S>),
    /// The target is outside the span. `column` indexes a nonzero entry of
    /// the residual left after reducing by the span.
    NotInSpan { column: usize, residual: Vec<S> },
}

impl<S: Field> SpanSolution<S> {
    pub fn is_in_span(&self) -> bool {
        matches!(self, SpanSolution::InSpan(_))
    }
}

impl<S: Field> ExactMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// Builds a matrix from rows; ragged input is rejected.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, ArithError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`from_rows`](Self::from_rows) but with an explicit column count,
    /// so that a matrix with no rows still has a width.
    pub fn from_rows_with_cols(rows: Vec<Vec<S>>, cols: usize) -> Result<Self, ArithError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(ArithError::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(ExactMatrix { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> ExactMatrix<T> {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Entrywise map that may fail, e.g. instantiating `k`.
    pub fn try_map<T: Field, E>(&self, f: impl Fn(&S) -> Result<T, E>) -> Result<ExactMatrix<T>, E> {
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        if self.cols != other.rows {
            return Err(ArithError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(ArithError::Dimension("shape mismatch in subtraction".into()));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn rref(&self) -> Rref<S> {
        S::row_reduce(self)
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (i, &p) in r.pivots.iter().enumerate() {
                    v[p] = r.reduced.get(i, f).neg();
                }
                v
            })
            .collect()
    }

    /// Precomputes the data needed to solve many span-membership queries
    /// against the rows of this matrix.
    pub fn span_solver(&self) -> SpanSolver<S> {
        let n = self.rows;
        let aug: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
                r
            })
            .collect();
        let aug = ExactMatrix::from_rows_with_cols(aug, self.cols + n).expect("rectangular");
        let rr = aug.rref();
        let pivots: Vec<usize> = rr.pivots.iter().copied().take_while(|&p| p < self.cols).collect();
        let rank = pivots.len();
        let reduced = (0..rank).map(|i| rr.reduced.row(i)[..self.cols].to_vec()).collect();
        let transform = (0..rank).map(|i| rr.reduced.row(i)[self.cols..].to_vec()).collect();
        let left_kernel = (rank..n).map(|i| rr.reduced.row(i)[self.cols..].to_vec()).collect();
        SpanSolver { cols: self.cols, pivots, reduced, transform, left_kernel }
    }

    /// Expresses `target` as a combination of the rows.
    pub fn solve_in_span(&self, target: &[S]) -> Result<SpanSolution<S>, ArithError> {
        self.span_solver().solve(target)
    }

    /// Basis of the left kernel `{y : y M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<S>> {
        self.span_solver().left_kernel
    }

    pub fn det(&self) -> Result<S, ArithError> {
        if self.rows != self.cols {
            return Err(ArithError::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(S::zero());
            };
            if p != c {
                a.swap(p, c);
                det = det.neg();
            }
            det = det.mul(&a[c][c]);
            let inv = a[c][c].inv()?;
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].mul(&inv);
                for j in c..n {
                    let t = f.mul(&a[c][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(x I - M)` by the Faddeev-LeVerrier
    /// recurrence.
    pub fn charpoly(&self) -> Result<UniPoly<S>, ArithError> {
        if self.rows != self.cols {
            return Err(ArithError::Dimension("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = S::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            let prev_c = coeffs[n + 1 - k].clone();
            let mut next = self.mul(&m)?;
            for i in 0..n {
                let v = next.get(i, i).add(&prev_c);
                next.set(i, i, v);
            }
            m = next;
            let tr = self.mul(&m)?.trace();
            coeffs[n - k] = tr.neg().div(&S::from_int(k as i64))?;
        }
        Ok(UniPoly::new(coeffs))
    }
}

impl<S: Field> fmt::Display for ExactMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Reusable row-span solver produced by [`ExactMatrix::span_solver`].
#[derive(Clone, Debug)]
pub struct SpanSolver<S: Field> {
    cols: usize,
    pivots: Vec<usize>,
    reduced: Vec<Vec<S>>,
    transform: Vec<Vec<S>>,
    left_kernel: Vec<Vec<S>>,
}

impl<S: Field> SpanSolver<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn left_kernel(&self) -> &[Vec<S>] {
        &self.left_kernel
    }

    /// Reduces `target` by the reduced rows; the result is zero exactly when
    /// the target lies in the span.
    pub fn residual(&self, target: &[S]) -> Vec<S> {
        let mut res = target.to_vec();
        for (row, &p) in self.reduced.iter().zip(&self.pivots) {
            let c = res[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in res.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&c.mul(r));
                }
            }
        }
        res
    }

    pub fn solve(&self, target: &[S]) -> Result<SpanSolution<S>, ArithError> {
        if target.len() != self.cols {
            return Err(ArithError::Dimension(format!(
                "target has {} entries, expected {}",
                target.len(),
                self.cols
            )));
        }
        let residual = self.residual(target);
        if let Some(column) = residual.iter().position(|x| !x.is_zero()) {
            return Ok(SpanSolution::NotInSpan { column, residual });
        }
        let n = self.transform.first().map_or(self.left_kernel.first().map_or(0, Vec::len), Vec::len);
        let mut coeffs = vec![S::zero(); n];
        for (t, &p) in self.transform.iter().zip(&self.pivots) {
            let c = &target[p];
            if c.is_zero() {
                continue;
            }
            for (x, v) in coeffs.iter_mut().zip(t) {
                if !v.is_zero() {
                    *x = x.add(&c.mul(v));
                }
            }
        }
        Ok(SpanSolution::InSpan(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{RatFuncK, Rational};

    fn m(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        ExactMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect(),
        )
        .unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn ragged_rows_rejected() {
        let r = ExactMatrix::from_rows(vec![v(&[1, 2]), v(&[3])]);
        assert!(matches!(r, Err(ArithError::Dimension(_))));
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let r = a.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.reduced.row(0), v(&[1, 0, 1]).as_slice());
        assert_eq!(r.reduced.row(1), v(&[0, 1, 1]).as_slice());
        assert_eq!(r.reduced.row(2), v(&[0, 0, 0]).as_slice());
    }

    #[test]
    fn span_membership_with_certificate() {
        let a = m(&[&[1, 2, 3], &[0, 1, 1], &[1, 3, 4]]);
        let t = v(&[2, 5, 7]);
        match a.solve_in_span(&t).unwrap() {
            SpanSolution::InSpan(c) => {
                let back: Vec<Rational> = (0..3)
                    .map(|j| (0..3).fold(Rational::zero(), |acc, i| acc.add(&c[i].mul(a.get(i, j)))))
                    .collect();
                assert_eq!(back, t);
            }
            other => panic!("expected in span, got {other:?}"),
        }
        assert!(!a.solve_in_span(&v(&[0, 0, 1])).unwrap().is_in_span());
        assert_eq!(a.left_kernel().len(), 1);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 7, 9]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for x in ker {
            for i in 0..2 {
                let s = (0..4).fold(Rational::zero(), |acc, j| acc.add(&a.get(i, j).mul(&x[j])));
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn det_and_charpoly() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(a.det().unwrap(), Rational::from(5));
        // x^2 - 5x + 5
        assert_eq!(a.charpoly().unwrap().coeffs(), v(&[5, -5, 1]).as_slice());
    }

    #[test]
    fn symbolic_rank_drops_at_special_level() {
        let k = RatFuncK::k();
        let two = RatFuncK::from_int(2);
        let a = ExactMatrix::from_rows(vec![
            vec![RatFuncK::one(), two.clone()],
            vec![k.clone(), two.mul(&two)],
        ])
        .unwrap();
        assert_eq!(a.rank(), 2);
        let at2 = a.try_map(|x| x.instantiate_k(&Rational::from(2))).unwrap();
        assert_eq!(at2.rank(), 1);
    }
}
