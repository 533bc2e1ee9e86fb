use super::{PolyError, RingRef, WPoly};
use crate::arith::Field;

/// A derivation determined by its values on the ring variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpec<S: Field> {
    ring: RingRef,
    images: Vec<WPoly<S>>,
    weight_shift: i64,
}

impl<S: Field> DerivationSpec<S> {
    /// Each image must be zero or homogeneous of weight
    /// `weight(variable) + weight_shift`.
    pub fn new(ring: &RingRef, images: Vec<WPoly<S>>, weight_shift: i64) -> Result<Self, PolyError> {
        if images.len() != ring.nvars() {
            return Err(PolyError::Arity { expected: ring.nvars(), got: images.len() });
        }
        for (i, img) in images.iter().enumerate() {
            if **img.ring() != **ring {
                return Err(PolyError::RingMismatch);
            }
            let expected = ring.weights()[i] as i64 + weight_shift;
            if img.is_zero() {
                continue;
            }
            match img.homogeneous_weight() {
                Some(w) if w as i64 == expected => {}
                other => {
                    return Err(PolyError::BadDerivation {
                        var: ring.vars()[i].clone(),
                        got: other.unwrap_or_else(|| img.weights()[0]),
                        expected,
                    })
                }
            }
        }
        Ok(DerivationSpec { ring: ring.clone(), images, weight_shift })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn images(&self) -> &[WPoly<S>] {
        &self.images
    }

    pub fn weight_shift(&self) -> i64 {
        self.weight_shift
    }

    /// `sum_i (d p / d x_i) * image_i`.
    pub fn apply(&self, p: &WPoly<S>) -> Result<WPoly<S>, PolyError> {
        if **p.ring() != *self.ring {
            return Err(PolyError::RingMismatch);
        }
        let mut out = WPoly::zero(&self.ring);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = p.partial(i);
            if !d.is_zero() {
                out = out.checked_add(&d.checked_mul(img)?)?;
            }
        }
        Ok(out)
    }

    pub fn apply_n(&self, p: &WPoly<S>, times: u32) -> Result<WPoly<S>, PolyError> {
        let mut cur = p.clone();
        for _ in 0..times {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    pub fn map_coeffs<T: Field, E>(
        &self,
        ring: &RingRef,
        f: impl Fn(&S) -> Result<T, E> + Copy,
    ) -> Result<DerivationSpec<T>, E> {
        Ok(DerivationSpec {
            ring: ring.clone(),
            images: self.images.iter().map(|p| p.map_coeffs(ring, f)).collect::<Result<_, _>>()?,
            weight_shift: self.weight_shift,
        })
    }
}

impl<S: Field> std::fmt::Display for DerivationSpec<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (v, img) in self.ring.vars().iter().zip(&self.images) {
            writeln!(f, "{v} -> {img}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Rational, ScalarMode};
    use crate::poly::WRing;

    #[test]
    fn euler_operator_scales_by_weight() {
        let r = WRing::yz(ScalarMode::Concrete(5));
        let y: WPoly<Rational> = WPoly::var(&r, 0);
        let z: WPoly<Rational> = WPoly::var(&r, 1);
        let e = DerivationSpec::new(&r, vec![y.clone(), z.scale(&Rational::from(2))], 0).unwrap();
        let yz = &y * &z;
        assert_eq!(e.apply(&yz).unwrap(), yz.scale(&Rational::from(3)));
        assert!(e.apply(&WPoly::constant(&r, Rational::from(7))).unwrap().is_zero());
    }

    #[test]
    fn rejects_wrong_image_weight() {
        let r = WRing::yz(ScalarMode::Concrete(5));
        let y: WPoly<Rational> = WPoly::var(&r, 0);
        let z: WPoly<Rational> = WPoly::var(&r, 1);
        let err = DerivationSpec::new(&r, vec![z.clone(), z], 1).unwrap_err();
        assert!(matches!(err, PolyError::BadDerivation { .. }));
        assert!(DerivationSpec::new(&r, vec![y], 0).is_err());
    }
}
