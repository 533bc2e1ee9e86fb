use std::fmt::{self, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ArithError, Field, Rational, ScalarMode, UniPoly};

/// A rational function of the level `k` over the rationals, kept as a
/// reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFuncK {
    num: UniPoly<Rational>,
    den: UniPoly<Rational>,
}

impl RatFuncK {
    /// Builds `num/den` in canonical form.
    pub fn new(num: UniPoly<Rational>, den: UniPoly<Rational>) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: UniPoly<Rational>, den: UniPoly<Rational>) -> Self {
        if num.is_zero() {
            return RatFuncK::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).unwrap().0, den.div_rem(&g).unwrap().0)
        };
        let lead = d.leading().cloned().expect("denominator is nonzero");
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFuncK { num: n, den: d }
    }

    pub fn polynomial(p: UniPoly<Rational>) -> Self {
        RatFuncK { num: p, den: UniPoly::constant(Rational::one()) }
    }

    /// The formal parameter `k`.
    pub fn k() -> Self {
        Self::polynomial(UniPoly::x())
    }

    /// Polynomial in `k` from integer coefficients, constant term first.
    pub fn from_coeffs(cs: &[i64]) -> Self {
        Self::polynomial(UniPoly::new(cs.iter().map(|&c| Rational::from(c)).collect()))
    }

    pub fn numer(&self) -> &UniPoly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly<Rational> {
        &self.den
    }

    /// Exact evaluation at `k = k0`.
    pub fn eval(&self, k0: &Rational) -> Result<Rational, ArithError> {
        let d = self.den.eval(k0);
        if d.is_zero() {
            return Err(ArithError::Pole(k0.to_string()));
        }
        self.num.eval(k0).div(&d)
    }

    /// Evaluation at a level, which must be a positive integer.
    pub fn instantiate_k(&self, k0: &Rational) -> Result<Rational, ArithError> {
        if k0.to_positive_u32().is_none() {
            return Err(ArithError::InvalidLevel(k0.to_string()));
        }
        self.eval(k0)
    }
}

/// Splits `p` as `content * q` with `q` an integer polynomial whose
/// coefficients have gcd 1 and whose leading coefficient is positive.
fn integer_content(p: &UniPoly<Rational>) -> (Rational, UniPoly<Rational>) {
    let Some(lead) = p.leading() else {
        return (Rational::one(), UniPoly::zero());
    };
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if lead.is_negative() {
        g = -g;
    }
    let prim = UniPoly::new(ints.iter().map(|c| Rational::integer(c / &g)).collect());
    (Rational::new(g, lcm).expect("lcm is nonzero"), prim)
}

impl Display for RatFuncK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            return f.write_str(&self.num.display_with("k"));
        }
        let (cn, pn) = integer_content(&self.num);
        let (cd, pd) = integer_content(&self.den);
        let c = cn.div(&cd).expect("content is nonzero");
        let n = pn.scale(&Rational::integer(c.numer().clone())).display_with("k");
        let d = pd.scale(&Rational::integer(c.denom().clone())).display_with("k");
        if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            write!(f, "({n})/({d})")
        } else {
            write!(f, "{n}/({d})")
        }
    }
}

impl Field for RatFuncK {
    fn zero() -> Self {
        RatFuncK { num: UniPoly::zero(), den: UniPoly::constant(Rational::one()) }
    }

    fn one() -> Self {
        Self::polynomial(UniPoly::constant(Rational::one()))
    }

    fn from_bigint(n: BigInt) -> Self {
        Self::polynomial(UniPoly::constant(Rational::integer(n)))
    }

    fn from_rational(q: &Rational) -> Self {
        Self::polynomial(UniPoly::constant(q.clone()))
    }

    fn level(mode: ScalarMode) -> Result<Self, ArithError> {
        match mode {
            ScalarMode::Symbolic => Ok(Self::k()),
            ScalarMode::Concrete(k) => Ok(Self::from_rational(&Rational::level(
                ScalarMode::Concrete(k),
            )?)),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::reduced(self.num.add(&other.num), self.den.clone());
        }
        Self::reduced(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    fn neg(&self) -> Self {
        RatFuncK { num: self.num.neg(), den: self.den.clone() }
    }

    fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    fn as_rational(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => Some(self.num.coeff(0)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> RatFuncK {
        RatFuncK::k()
    }

    fn c(n: i64) -> RatFuncK {
        RatFuncK::from_int(n)
    }

    #[test]
    fn reduces_on_construction() {
        // (k^2 - 4)/(k - 2) = k + 2
        let f = k().mul(&k()).sub(&c(4)).div(&k().sub(&c(2))).unwrap();
        assert_eq!(f, k().add(&c(2)));
        assert_eq!(f.denom().degree(), Some(0));
    }

    #[test]
    fn denominator_is_monic() {
        let f = c(1).div(&c(2).mul(&k()).add(&c(4))).unwrap();
        assert!(f.denom().leading().unwrap().is_one());
        assert_eq!(f.numer().coeff(0), Rational::new(1, 2).unwrap());
    }

    #[test]
    fn instantiate_rational_coefficient() {
        // 36k(2k+3)/(16k+17) at k = 5
        let f = c(36)
            .mul(&k())
            .mul(&c(2).mul(&k()).add(&c(3)))
            .div(&c(16).mul(&k()).add(&c(17)))
            .unwrap();
        assert_eq!(f.instantiate_k(&Rational::from(5)).unwrap(), Rational::new(2340, 97).unwrap());
    }

    #[test]
    fn instantiate_errors() {
        let f = c(1).div(&c(2).mul(&k()).mul(&k().add(&c(2)))).unwrap();
        assert_eq!(f.instantiate_k(&Rational::from(5)).unwrap(), Rational::new(1, 70).unwrap());
        assert_eq!(k().add(&c(2)).instantiate_k(&Rational::from(3)).unwrap(), Rational::from(5));
        let g = c(1).div(&c(16).mul(&k()).add(&c(17))).unwrap();
        assert!(matches!(
            g.instantiate_k(&Rational::new(-17, 16).unwrap()),
            Err(ArithError::InvalidLevel(_))
        ));
        assert!(matches!(g.eval(&Rational::new(-17, 16).unwrap()), Err(ArithError::Pole(_))));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(k().div(&RatFuncK::zero()), Err(ArithError::DivisionByZero));
        assert!(RatFuncK::new(UniPoly::x(), UniPoly::zero()).is_err());
    }

    #[test]
    fn display_forms() {
        let f = c(36).mul(&k()).div(&c(16).mul(&k()).add(&c(17))).unwrap();
        assert_eq!(f.to_string(), "36*k/(16*k + 17)");
        assert_eq!(k().add(&c(2)).to_string(), "k + 2");
        let g = c(-1).div(&c(2).mul(&k()).mul(&k().add(&c(2)))).unwrap();
        assert_eq!(g.to_string(), "-1/(2*k^2 + 4*k)");
    }
}
