use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Monomial, PolyError, RingRef};
use crate::arith::{Field, RatFuncK, Rational, ScalarMode};

/// A polynomial over `S` in a weighted ring. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WPoly<S: Field> {
    ring: RingRef,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Field> WPoly<S> {
    pub fn zero(ring: &RingRef) -> Self {
        WPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &RingRef, c: S) -> Self {
        Self::monomial(ring, vec![0; ring.nvars()], c)
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, S::one())
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: S) -> Self {
        assert_eq!(m.len(), ring.nvars(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        WPoly { ring: ring.clone(), terms }
    }

    /// The `i`-th ring variable.
    pub fn var(ring: &RingRef, i: usize) -> Self {
        let mut m = vec![0; ring.nvars()];
        m[i] = 1;
        Self::monomial(ring, m, S::one())
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Self, PolyError> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| PolyError::InvalidRing(format!("no variable {name}")))?;
        Ok(Self::var(ring, i))
    }

    pub fn from_terms(
        ring: &RingRef,
        terms: impl IntoIterator<Item = (Monomial, S)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            if m.len() != ring.nvars() {
                return Err(PolyError::Arity { expected: ring.nvars(), got: m.len() });
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, S> {
        &self.terms
    }

    pub fn coeff(&self, m: &[u32]) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add(c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn same_ring(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, &ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        WPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        WPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by a single monomial.
    pub fn shift(&self, m: &[u32]) -> Self {
        WPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.iter().zip(m).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        }
    }

    /// Weights occurring among the terms, ascending.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.terms.keys().map(|m| self.ring.monomial_weight(m)).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// The common weight of all terms; `None` for zero or mixed weights.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        match self.weights().as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }

    /// True when every term has weight `n` (vacuously for zero).
    pub fn is_homogeneous_of(&self, n: u32) -> bool {
        self.terms.keys().all(|m| self.ring.monomial_weight(m) == n)
    }

    pub fn weight_component(&self, n: u32) -> Self {
        WPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.monomial_weight(m) == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut d = m.clone();
            d[i] -= 1;
            out.add_term(d, &c.mul(&S::from_int(m[i] as i64)));
        }
        out
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[WPoly<S>]) -> Result<WPoly<S>, PolyError> {
        if images.len() != self.ring.nvars() {
            return Err(PolyError::Arity { expected: self.ring.nvars(), got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return WPoly::from_terms(&self.ring, self.terms.clone()),
        };
        for p in images {
            if *p.ring != *target {
                return Err(PolyError::RingMismatch);
            }
        }
        let mut powers: Vec<Vec<WPoly<S>>> = images.iter().map(|p| vec![WPoly::one(&p.ring)]).collect();
        let mut out = WPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = WPoly::constant(&target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().checked_mul(&images[i])?;
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.checked_mul(&powers[i][e as usize])?;
                }
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    /// Coefficient-wise map into another scalar field and ring with the same
    /// variables.
    pub fn map_coeffs<T: Field, E>(
        &self,
        ring: &RingRef,
        f: impl Fn(&S) -> Result<T, E>,
    ) -> Result<WPoly<T>, E> {
        let mut out = WPoly::zero(ring);
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        Ok(out)
    }

    /// Coordinates over an ordered monomial list. Fails if a term lies
    /// outside the list.
    pub fn coordinates(&self, basis: &[Monomial]) -> Result<Vec<S>, PolyError> {
        let mut v = vec![S::zero(); basis.len()];
        let mut hit = 0;
        for (i, m) in basis.iter().enumerate() {
            if let Some(c) = self.terms.get(m) {
                v[i] = c.clone();
                hit += 1;
            }
        }
        if hit != self.terms.len() {
            let w = self.weights();
            return Err(PolyError::Inhomogeneous(w.first().copied().unwrap_or(0)));
        }
        Ok(v)
    }

    pub fn from_coordinates(ring: &RingRef, basis: &[Monomial], coords: &[S]) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in basis.iter().zip(coords) {
            p.add_term(m.clone(), c);
        }
        p
    }

    /// True when every coefficient is free of `k`.
    pub fn is_k_free(&self) -> bool {
        self.terms.values().all(Field::is_k_free)
    }

    /// Terms ordered by descending weight, then descending exponents.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &S)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| {
            self.ring
                .monomial_weight(b)
                .cmp(&self.ring.monomial_weight(a))
                .then_with(|| b.cmp(a))
        });
        ts
    }
}

impl WPoly<RatFuncK> {
    /// Evaluates every coefficient at `k = k0`.
    pub fn instantiate(&self, k0: u32) -> Result<WPoly<Rational>, PolyError> {
        let ring = self.ring.with_mode(ScalarMode::Concrete(k0));
        let k = Rational::from(k0 as i64);
        Ok(self.map_coeffs(&ring, |c| c.instantiate_k(&k))?)
    }
}

impl WPoly<Rational> {
    /// Lifts to constant rational-function coefficients over the same ring.
    pub fn lift(&self) -> WPoly<RatFuncK> {
        self.map_coeffs(&self.ring, |c| Ok::<_, PolyError>(RatFuncK::from_rational(c)))
            .expect("infallible")
    }
}

fn needs_parens(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    body.contains(['+', '-', ' '])
}

impl<S: Field> fmt::Display for WPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms() {
            let s = c.to_string();
            let (neg, body) = if needs_parens(&s) {
                (false, format!("({s})"))
            } else if let Some(b) = s.strip_prefix('-') {
                (true, b.to_string())
            } else {
                (false, s)
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = self.ring.format_monomial(m);
            match (body.as_str(), mono.as_str()) {
                (b, "1") => f.write_str(b)?,
                ("1", mo) => f.write_str(mo)?,
                (b, mo) => write!(f, "{b}*{mo}")?,
            }
        }
        Ok(())
    }
}

impl<S: Field> Add for &WPoly<S> {
    type Output = WPoly<S>;
    /// Panics on ring mismatch; use [`WPoly::checked_add`] to handle it.
    fn add(self, rhs: Self) -> WPoly<S> {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<S: Field> Sub for &WPoly<S> {
    type Output = WPoly<S>;
    fn sub(self, rhs: Self) -> WPoly<S> {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<S: Field> Mul for &WPoly<S> {
    type Output = WPoly<S>;
    fn mul(self, rhs: Self) -> WPoly<S> {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl<S: Field> Neg for &WPoly<S> {
    type Output = WPoly<S>;
    fn neg(self) -> WPoly<S> {
        WPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::WRing;

    fn ring() -> RingRef {
        WRing::yz(ScalarMode::Concrete(5))
    }

    fn yz() -> (WPoly<Rational>, WPoly<Rational>) {
        let r = ring();
        (WPoly::var(&r, 0), WPoly::var(&r, 1))
    }

    fn c(n: i64) -> WPoly<Rational> {
        WPoly::constant(&ring(), Rational::from(n))
    }

    #[test]
    fn g2_times_g3_at_level_five() {
        let (y, z) = yz();
        let g2 = &(&y * &y) - &(&c(10) * &z);
        let g3 = &y.pow(3) - &(&c(15) * &(&y * &z));
        let expect = &(&y.pow(5) - &(&c(25) * &(&y.pow(3) * &z))) + &(&c(150) * &(&y * &z.pow(2)));
        assert_eq!(&g2 * &g3, expect);
        assert_eq!((&g2 * &g3).to_string(), "y^5 - 25*y^3*z + 150*y*z^2");
    }

    #[test]
    fn components_and_weights() {
        let (y, z) = yz();
        let p = &(&y.pow(3) + &(&y * &z)) + &y;
        assert_eq!(p.weight_component(3), &y.pow(3) + &(&y * &z));
        assert_eq!(p.homogeneous_weight(), None);
        assert_eq!(p.weights(), vec![1, 3]);
        assert_eq!(c(1).weight_component(0), c(1));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let other = WRing::y012(ScalarMode::Concrete(5));
        let a: WPoly<Rational> = WPoly::var(&other, 0);
        let (y, _) = yz();
        assert_eq!(a.checked_add(&y), Err(PolyError::RingMismatch));
    }

    #[test]
    fn collapse_substitution() {
        let r3 = WRing::y012(ScalarMode::Concrete(5));
        let m: WPoly<Rational> = WPoly::monomial(&r3, vec![2, 3, 3], Rational::one());
        let (y, z) = yz();
        // y1 -> z, y2 -> 1 realizes y1*y2 -> z on balanced monomials
        let img = m.substitute(&[y.clone(), z.clone(), c(1)]).unwrap();
        assert_eq!(img, &y.pow(2) * &z.pow(3));
    }

    #[test]
    fn display_symbolic() {
        let r = WRing::yz(ScalarMode::Symbolic);
        let k = RatFuncK::k();
        let y: WPoly<RatFuncK> = WPoly::var(&r, 0);
        let z: WPoly<RatFuncK> = WPoly::var(&r, 1);
        let g3 = &y.pow(3) - &(&y * &z).scale(&k.mul(&RatFuncK::from_int(3)));
        assert_eq!(g3.to_string(), "y^3 - 3*k*y*z");
        let d = (&y * &y).scale(&k.add(&RatFuncK::from_int(2)));
        assert_eq!(d.to_string(), "(k + 2)*y^2");
        assert_eq!(g3.instantiate(5).unwrap().to_string(), "y^3 - 15*y*z");
    }
}
