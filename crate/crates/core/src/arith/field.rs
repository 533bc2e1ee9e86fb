use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{ArithError, ExactMatrix, Rational, Rref};

/// How the level `k` is represented: a fixed positive integer, or a formal
/// parameter carried through rational-function coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Concrete(u32),
    Symbolic,
}

impl ScalarMode {
    pub fn concrete_level(self) -> Option<u32> {
        match self {
            ScalarMode::Concrete(k) => Some(k),
            ScalarMode::Symbolic => None,
        }
    }
}

impl Display for ScalarMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarMode::Concrete(k) => write!(f, "k={k}"),
            ScalarMode::Symbolic => f.write_str("symbolic k"),
        }
    }
}

/// An exact field of scalars.
///
/// Values are always kept in canonical form, so structural equality is
/// mathematical equality.
pub trait Field: Clone + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_bigint(n: BigInt) -> Self;
    fn from_rational(q: &Rational) -> Self;

    /// The level `k` in the given mode.
    fn level(mode: ScalarMode) -> Result<Self, ArithError>;

    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ArithError>;

    /// The value as a rational number, when it does not depend on `k`.
    fn as_rational(&self) -> Option<Rational>;

    fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&other.inv()?))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    fn is_k_free(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Row reduction entry point. Fields may override with a specialized
    /// strategy; the result must match [`gauss_jordan`] exactly.
    fn row_reduce(m: &ExactMatrix<Self>) -> Rref<Self> {
        gauss_jordan(m)
    }
}

/// Plain Gauss-Jordan elimination with first-nonzero pivoting.
pub fn gauss_jordan<S: Field>(m: &ExactMatrix<S>) -> Rref<S> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<S>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        for x in a[r].iter_mut().skip(c) {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for j in c..cols {
                if a[r][j].is_zero() {
                    continue;
                }
                let t = factor.mul(&a[r][j]);
                a[i][j] = a[i][j].sub(&t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref::from_rows(a, cols, pivots)
}
