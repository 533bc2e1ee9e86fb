use std::fmt::{self, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::gauss_jordan;
use super::{ArithError, ExactMatrix, Field, Rref, ScalarMode};

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ArithError> {
        let d = denom.into();
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), d)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// The value as a positive machine integer, if it is one.
    pub fn to_positive_u32(&self) -> Option<u32> {
        if self.is_integer() && self.is_positive() {
            self.numer().to_u32()
        } else {
            None
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::integer(n)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_bigint(n: BigInt) -> Self {
        Rational::integer(n)
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn level(mode: ScalarMode) -> Result<Self, ArithError> {
        match mode {
            ScalarMode::Concrete(k) if k >= 1 => Ok(Rational::integer(k)),
            ScalarMode::Concrete(k) => Err(ArithError::InvalidLevel(k.to_string())),
            ScalarMode::Symbolic => Err(ArithError::ModeMismatch(
                "rational scalars need a concrete level".into(),
            )),
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn inv(&self) -> Result<Self, ArithError> {
        if self.0.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn row_reduce(m: &ExactMatrix<Self>) -> Rref<Self> {
        bareiss_rref(m)
    }
}

/// Fraction-free row reduction: rows are cleared of denominators, forward
/// elimination runs over the integers with Bareiss exact division, and the
/// echelon form is normalized to reduced form at the end.
pub fn bareiss_rref(m: &ExactMatrix<Rational>) -> Rref<Rational> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 {
        return gauss_jordan(m);
    }
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = v / &prev;
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }

    // Back substitution in the rationals on the (small) echelon block.
    let mut red: Vec<Vec<Rational>> = a
        .into_iter()
        .take(r)
        .map(|row| row.into_iter().map(Rational::integer).collect())
        .collect();
    for (i, &c) in pivots.iter().enumerate().rev() {
        let inv = red[i][c].inv().expect("pivot is nonzero");
        for x in red[i].iter_mut().skip(c) {
            *x = x.mul(&inv);
        }
        for up in 0..i {
            if red[up][c].is_zero() {
                continue;
            }
            let factor = red[up][c].clone();
            for j in c..cols {
                if red[i][j].is_zero() {
                    continue;
                }
                let t = factor.mul(&red[i][j]);
                red[up][j] = red[up][j].sub(&t);
            }
        }
    }
    red.extend((r..rows).map(|_| vec![Rational::zero(); cols]));
    Rref::from_rows(red, cols, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn field_ops() {
        assert_eq!(q(1, 2).add(&q(1, 3)), q(5, 6));
        assert_eq!(q(1, 2).sub(&q(1, 3)), q(1, 6));
        assert_eq!(q(2, 3).mul(&q(3, 4)), q(1, 2));
        assert_eq!(q(2, 3).div(&q(4, 3)).unwrap(), q(1, 2));
        assert_eq!(q(0, 5), Rational::zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q(1, 2).div(&Rational::zero()), Err(ArithError::DivisionByZero));
        assert_eq!(Rational::new(1, 0), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn canonical_form() {
        let a = q(6, -4);
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(2));
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(q(10, 5).to_string(), "2");
    }

    #[test]
    fn level_in_modes() {
        assert_eq!(Rational::level(ScalarMode::Concrete(5)).unwrap(), q(5, 1));
        assert!(Rational::level(ScalarMode::Symbolic).is_err());
        assert!(Rational::level(ScalarMode::Concrete(0)).is_err());
    }
}
