//! The level-`k` vacuum Weyl module of affine sl₂ on its PBW basis:
//! straightening of current modes, vertex operator modes of composite
//! vectors, and the reduction to ℂ[y0, y1, y2] modulo the C₂-space.

mod engine;
mod pbw;

pub use engine::{ResourceCaps, WeylEngine};
pub use pbw::{Letter, PbwMonomial, PbwVector};

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{factorial, ArithError, Field, ScalarMode};
use crate::poly::{PolyError, RingRef, WPoly, WRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("argument out of range: {0}")]
    Range(String),
    #[error("charge {0} is not zero; cannot express in y, z")]
    Charged(i64),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn mono(h: &[u32], e: &[u32], f: &[u32]) -> PbwMonomial {
    PbwMonomial::new(h, e, f).expect("positive depths")
}

fn vector<S: Field>(mode: ScalarMode, terms: Vec<(PbwMonomial, S)>) -> PbwVector<S> {
    PbwVector::from_terms(mode, terms)
}

/// The Sugawara conformal vector.
pub fn omega_aff<S: Field>(mode: ScalarMode) -> Result<PbwVector<S>, WeylError> {
    let k = S::level(mode)?;
    let c = S::from_int(2).mul(&k.add(&S::from_int(2))).inv()?;
    let half = S::from_int(2).inv()?;
    let v = vector(
        mode,
        vec![
            (mono(&[2], &[], &[]), S::from_int(-1)),
            (mono(&[1, 1], &[], &[]), half),
            (mono(&[], &[1], &[1]), S::from_int(2)),
        ],
    );
    Ok(v.scale(&c))
}

/// The conformal vector of the Heisenberg commutant.
pub fn w2<S: Field>(mode: ScalarMode) -> Result<PbwVector<S>, WeylError> {
    let k = S::level(mode)?;
    let c = S::from_int(2).mul(&k).mul(&k.add(&S::from_int(2))).inv()?;
    let v = vector(
        mode,
        vec![
            (mono(&[2], &[], &[]), k.neg()),
            (mono(&[1, 1], &[], &[]), S::from_int(-1)),
            (mono(&[], &[1], &[1]), S::from_int(2).mul(&k)),
        ],
    );
    Ok(v.scale(&c))
}

/// The weight-3 primary generator of the commutant.
pub fn w3<S: Field>(mode: ScalarMode) -> Result<PbwVector<S>, WeylError> {
    let k = S::level(mode)?;
    let k2 = k.mul(&k);
    let i = S::from_int;
    Ok(vector(
        mode,
        vec![
            (mono(&[3], &[], &[]), k2.clone()),
            (mono(&[2, 1], &[], &[]), i(3).mul(&k)),
            (mono(&[1, 1, 1], &[], &[]), i(2)),
            (mono(&[1], &[1], &[1]), i(-6).mul(&k)),
            (mono(&[], &[2], &[1]), i(3).mul(&k2)),
            (mono(&[], &[1], &[2]), i(-3).mul(&k2)),
        ],
    ))
}

/// The value of `W³₁ e(-2)1`, written out term by term.
pub fn w3_1_e2_expected<S: Field>(mode: ScalarMode) -> Result<PbwVector<S>, WeylError> {
    let k = S::level(mode)?;
    let k2 = k.mul(&k);
    let i = S::from_int;
    // -3(5k²-6k-16), -3(7k²-2k-8), 6(k+2), -12k, 6k(k-2)(5k+8)
    let c1 = i(-3).mul(&i(5).mul(&k2).sub(&i(6).mul(&k)).sub(&i(16)));
    let c2 = i(-3).mul(&i(7).mul(&k2).sub(&i(2).mul(&k)).sub(&i(8)));
    let c3 = i(6).mul(&k.add(&i(2)));
    let c4 = i(-12).mul(&k);
    let c5 = i(6).mul(&k).mul(&k.sub(&i(2))).mul(&i(5).mul(&k).add(&i(8)));
    Ok(vector(
        mode,
        vec![
            (mono(&[2], &[1], &[]), c1),
            (mono(&[1], &[2], &[]), c2),
            (mono(&[1, 1], &[1], &[]), c3),
            (mono(&[], &[1, 1], &[1]), c4),
            (mono(&[], &[3], &[]), c5),
        ],
    ))
}

/// Image in ℂ[y0, y1, y2]: monomials with a mode of depth at least two
/// vanish, and `h(-1)^p e(-1)^q f(-1)^r 1` maps to `y0^p y1^q y2^r`.
pub fn reduce_c2<S: Field>(v: &PbwVector<S>) -> WPoly<S> {
    let ring = WRing::y012(v.mode());
    let mut out = WPoly::zero(&ring);
    for (m, c) in v.terms() {
        if m.is_shallow() {
            let term = WPoly::monomial(&ring, m.counts().to_vec(), c.clone());
            out = &out + &term;
        }
    }
    out
}

/// Rewrites a charge-zero polynomial in y0, y1, y2 in terms of
/// `y = y0` and `z = y1 y2`.
pub fn collapse_yz<S: Field>(p: &WPoly<S>) -> Result<WPoly<S>, WeylError> {
    let ring = WRing::yz(p.ring().mode());
    let mut out = WPoly::zero(&ring);
    for (m, c) in p.terms() {
        if m[1] != m[2] {
            return Err(WeylError::Charged(2 * (m[1] as i64 - m[2] as i64)));
        }
        out = &out + &WPoly::monomial(&ring, vec![m[0], m[1]], c.clone());
    }
    Ok(out)
}

/// `f(0)^s e(-1)^n 1` reduced modulo C₂, computed by straightening.
pub fn f0_power_oracle<S: Field>(engine: &WeylEngine<S>, n: u32, s: u32) -> Result<WPoly<S>, WeylError> {
    check_ns(n, s)?;
    Ok(reduce_c2(&engine.f0_power_on_e(s, n)?))
}

fn check_ns(n: u32, s: u32) -> Result<(), WeylError> {
    if n == 0 || s > 2 * n {
        return Err(WeylError::Range(format!("need n >= 1 and 0 <= s <= 2n, got n={n}, s={s}")));
    }
    Ok(())
}

/// Closed form of `f(0)^s e(-1)^n 1` modulo C₂:
/// `sum_j (-1)^{s-j} s! n! / ((s-2j)! (n-s+j)! j!) y0^{s-2j} y1^{n-s+j} y2^j`.
pub fn f0_power_closed_form<S: Field>(ring: &RingRef, n: u32, s: u32) -> Result<WPoly<S>, WeylError> {
    check_ns(n, s)?;
    let mut out = WPoly::zero(ring);
    let lo = s.saturating_sub(n);
    for j in lo..=s / 2 {
        let num = factorial(s) * factorial(n);
        let den = factorial(s - 2 * j) * factorial(n + j - s) * factorial(j);
        let c = num / den;
        let c = if (s - j) % 2 == 0 { c } else { -c };
        let term = WPoly::monomial(ring, vec![s - 2 * j, n + j - s, j], S::from_bigint(c));
        out = &out + &term;
    }
    Ok(out)
}

/// `(2 y2 d/dy0 - y0 d/dy1)^s` applied to `y1^n`.
pub fn f0_power_by_operator<S: Field>(ring: &RingRef, n: u32, s: u32) -> Result<WPoly<S>, WeylError> {
    check_ns(n, s)?;
    let y0 = WPoly::var(ring, 0);
    let y2 = WPoly::var(ring, 2);
    let two_y2 = y2.scale(&S::from_int(2));
    let mut p = WPoly::var(ring, 1).pow(n);
    for _ in 0..s {
        let a = p.partial(0).checked_mul(&two_y2)?;
        let b = p.partial(1).checked_mul(&y0)?;
        p = a.checked_sub(&b)?;
    }
    Ok(p)
}

/// Sum over `1 <= i_1 < .. < i_j <= s` with `i_t >= 2t` of
/// `prod_t (i_t - 2t + 1)`, by direct enumeration.
pub fn q_brute(s: u32, j: u32) -> BigInt {
    fn go(s: u32, t: u32, j: u32, lo: u32) -> BigInt {
        if t > j {
            return BigInt::from(1);
        }
        let mut acc = BigInt::from(0);
        for i in lo.max(2 * t)..=s {
            acc += BigInt::from(i - 2 * t + 1) * go(s, t + 1, j, i + 1);
        }
        acc
    }
    go(s, 1, j, 1)
}

/// `s! / (2^j (s-2j)! j!)`.
pub fn q_closed(s: u32, j: u32) -> BigInt {
    if 2 * j > s {
        return BigInt::from(0);
    }
    factorial(s) / (BigInt::from(2).pow(j) * factorial(s - 2 * j) * factorial(j))
}

/// Coefficients of `f0` in ℂ[y, z]: `c_j = (-1)^j (k+1)! / ((k+1-2j)! (j!)^2)`.
pub fn f0_closed_form<S: Field>(ring: &RingRef, k0: u32) -> WPoly<S> {
    let mut out = WPoly::zero(ring);
    for j in 0..=(k0 + 1) / 2 {
        let c = factorial(k0 + 1) / (factorial(k0 + 1 - 2 * j) * factorial(j) * factorial(j));
        let c = if j % 2 == 0 { c } else { -c };
        out = &out + &WPoly::monomial(ring, vec![k0 + 1 - 2 * j, j], S::from_bigint(c));
    }
    out
}

/// `(-1)^{k+1} / (k+1)!` times the reduced singular vector, in y and z.
pub fn f0_from_singular_vector<S: Field>(engine: &WeylEngine<S>, k0: u32) -> Result<WPoly<S>, WeylError> {
    let u0 = engine.singular_vector(k0)?;
    let p = collapse_yz(&reduce_c2(&u0))?;
    let c = S::from_bigint(factorial(k0 + 1)).inv()?;
    let c = if (k0 + 1) % 2 == 0 { c } else { c.neg() };
    Ok(p.scale(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::{E, F, H};
    use crate::arith::{RatFuncK, Rational};

    fn conc(k: u32) -> WeylEngine<Rational> {
        WeylEngine::new(ScalarMode::Concrete(k)).unwrap()
    }

    fn sym() -> WeylEngine<RatFuncK> {
        WeylEngine::new(ScalarMode::Symbolic).unwrap()
    }

    #[test]
    fn single_commutator() {
        let eng = conc(4);
        let v = eng.word(&[(F, -1)]).unwrap();
        let r = eng.current_mode(E, 1, &v).unwrap();
        assert_eq!(r, eng.vacuum().scale(&Rational::from(4)));
        let s = sym();
        let v = s.word(&[(F, -1)]).unwrap();
        assert_eq!(s.current_mode(E, 1, &v).unwrap(), s.vacuum().scale(s.k()));
    }

    #[test]
    fn charge_zero_killed_by_h0() {
        let eng = conc(3);
        let v = eng.word(&[(E, -1), (F, -2)]).unwrap();
        assert!(eng.current_mode(H, 0, &v).unwrap().is_zero());
    }

    #[test]
    fn f0_on_e_squared() {
        let eng = conc(5);
        let v = eng.word(&[(E, -1), (E, -1)]).unwrap();
        let r = eng.current_mode(F, 0, &v).unwrap();
        // -2 e(-1)h(-1)1 - 2 e(-2)1, written out of PBW order
        let eh = eng.word(&[(E, -1), (H, -1)]).unwrap().scale(&Rational::from(-2));
        let e2 = eng.word(&[(E, -2)]).unwrap().scale(&Rational::from(-2));
        assert_eq!(r, eh.add(&e2));
        let expected = PbwVector::from_terms(
            eng.mode(),
            vec![(mono(&[1], &[1], &[]), Rational::from(-2)), (mono(&[], &[2], &[]), Rational::from(2))],
        );
        assert_eq!(r, expected);
    }

    #[test]
    fn words_straighten_out_of_order() {
        let eng = conc(2);
        // f(-1) h(-1) 1 = h(-1) f(-1) 1 + [f,h](-2) 1 = h(-1)f(-1)1 + 2 f(-2)1
        let v = eng.word(&[(F, -1), (H, -1)]).unwrap();
        let expected = PbwVector::from_terms(
            eng.mode(),
            vec![(mono(&[1], &[], &[1]), Rational::from(1)), (mono(&[], &[], &[2]), Rational::from(2))],
        );
        assert_eq!(v, expected);
    }

    #[test]
    fn conformal_weight_of_e() {
        let s = sym();
        let e = s.word(&[(E, -1)]).unwrap();
        let om = omega_aff(ScalarMode::Symbolic).unwrap();
        assert_eq!(s.vector_mode(&om, 1, &e).unwrap(), e);
    }

    #[test]
    fn w3_kills_h() {
        let s = sym();
        let h = s.word(&[(H, -1)]).unwrap();
        let w = w3(ScalarMode::Symbolic).unwrap();
        assert!(s.vector_mode(&w, 1, &h).unwrap().is_zero());
    }

    #[test]
    fn w3_is_primary_of_weight_three() {
        let s = sym();
        let w = w3::<RatFuncK>(ScalarMode::Symbolic).unwrap();
        let t = w2(ScalarMode::Symbolic).unwrap();
        assert_eq!(s.vector_mode(&t, 1, &w).unwrap(), w.scale(&RatFuncK::from_int(3)));
        assert!(s.vector_mode(&t, 2, &w).unwrap().is_zero());
    }

    #[test]
    fn w3_on_e2_display() {
        let s = sym();
        let e2 = s.word(&[(E, -2)]).unwrap();
        let w = w3(ScalarMode::Symbolic).unwrap();
        let got = s.vector_mode(&w, 1, &e2).unwrap();
        assert_eq!(got, w3_1_e2_expected(ScalarMode::Symbolic).unwrap());
    }

    #[test]
    fn vacuum_modes() {
        let eng = conc(3);
        let v = eng.word(&[(E, -2), (F, -1)]).unwrap();
        let vac = eng.vacuum();
        assert_eq!(eng.vector_mode(&vac, -1, &v).unwrap(), v);
        assert!(eng.vector_mode(&vac, 0, &v).unwrap().is_zero());
        // u_{-1} 1 = u
        assert_eq!(eng.vector_mode(&v, -1, &vac).unwrap(), v);
    }

    #[test]
    fn iterate_agrees_with_derivative_rule() {
        let eng = conc(3);
        let targets = [mono(&[1], &[], &[]), mono(&[], &[2], &[1]), mono(&[1], &[1], &[1])];
        for a in Letter::ALL {
            for i in 1..=3u32 {
                for v in &targets {
                    for n in -3..=4i64 {
                        let direct = eng.vector_mode(
                            &PbwVector::monomial(eng.mode(), mono_of(a, i), Rational::from(1)),
                            n,
                            &PbwVector::monomial(eng.mode(), v.clone(), Rational::from(1)),
                        )
                        .unwrap();
                        let it = eng.iterate_for_test(a, i, &PbwMonomial::vacuum(), n, v).unwrap();
                        assert_eq!(direct, it, "{a:?} i={i} n={n} v={v}");
                    }
                }
            }
        }
    }

    fn mono_of(a: Letter, i: u32) -> PbwMonomial {
        PbwMonomial::vacuum().insert(a, i)
    }

    #[test]
    fn reductions_of_generators() {
        let mode = ScalarMode::Symbolic;
        let r = WRing::y012(mode);
        let k = RatFuncK::k();
        let y0 = WPoly::var(&r, 0);
        let z = &WPoly::var(&r, 1) * &WPoly::var(&r, 2);
        let w3bar = reduce_c2(&w3::<RatFuncK>(mode).unwrap());
        let expected = &y0.pow(3).scale(&RatFuncK::from_int(2)) - &(&y0 * &z).scale(&k.mul(&RatFuncK::from_int(6)));
        assert_eq!(w3bar, expected);
        let w2bar = reduce_c2(&w2::<RatFuncK>(mode).unwrap());
        let c = RatFuncK::from_int(2).mul(&k).mul(&k.add(&RatFuncK::from_int(2))).inv().unwrap().neg();
        let expected = (&y0.pow(2) - &z.scale(&k.mul(&RatFuncK::from_int(2)))).scale(&c);
        assert_eq!(w2bar, expected);
        let h2: PbwVector<RatFuncK> = PbwVector::monomial(mode, mono(&[2], &[], &[]), RatFuncK::one());
        assert!(reduce_c2(&h2).is_zero());
    }

    #[test]
    fn small_oracle_values() {
        let eng = conc(2);
        let r = WRing::y012(eng.mode());
        assert_eq!(f0_power_oracle(&eng, 1, 1).unwrap().to_string(), "-y0");
        assert_eq!(f0_power_oracle(&eng, 1, 2).unwrap().to_string(), "-2*y2");
        assert_eq!(f0_power_oracle(&eng, 2, 2).unwrap().to_string(), "2*y0^2 - 4*y1*y2");
        assert_eq!(f0_power_closed_form::<Rational>(&r, 2, 2).unwrap().to_string(), "2*y0^2 - 4*y1*y2");
        assert!(f0_power_oracle(&eng, 1, 3).is_err());
        assert!(f0_power_oracle(&eng, 0, 0).is_err());
    }

    #[test]
    fn singular_vector_small_levels() {
        let eng = conc(1);
        let u = eng.singular_vector(1).unwrap();
        assert_eq!(u.homogeneous_weight(), Some(2));
        assert_eq!(u.homogeneous_charge(), Some(0));
        assert_eq!(reduce_c2(&u).to_string(), "2*y0^2 - 4*y1*y2");
        let eng = conc(2);
        let u = eng.singular_vector(2).unwrap();
        assert_eq!((u.homogeneous_weight(), u.homogeneous_charge()), (Some(3), Some(0)));
        assert!(matches!(eng.singular_vector(9), Err(WeylError::Resource(_))));
    }

    #[test]
    fn q_counts() {
        assert_eq!(q_brute(4, 2), BigInt::from(3));
        for s in 2..=10 {
            for j in 1..=s / 2 {
                assert_eq!(q_brute(s, j), q_closed(s, j), "s={s} j={j}");
            }
        }
    }

    #[test]
    fn f0_matches_singular_vector() {
        for k0 in 1..=4 {
            let eng = conc(k0);
            let r = WRing::yz(eng.mode());
            assert_eq!(f0_from_singular_vector(&eng, k0).unwrap(), f0_closed_form(&r, k0), "k0={k0}");
        }
    }
}

#[cfg(test)]
mod bridge_tests {
    use super::*;
    use crate::arith::Rational;
    use crate::poly::Corpus;

    #[test]
    fn w3_on_singular_vector_is_multiple_of_f1() {
        for k0 in 1..=6u32 {
            let mode = ScalarMode::Concrete(k0);
            let eng: WeylEngine<Rational> = WeylEngine::new(mode).unwrap();
            let u0 = eng.singular_vector(k0).unwrap();
            let r = eng.vector_mode(&w3(mode).unwrap(), 1, &u0).unwrap();
            let got = collapse_yz(&reduce_c2(&r)).unwrap();
            let corpus: Corpus<Rational> = Corpus::new(mode).unwrap();
            let f1 = corpus.poly("f1").unwrap();
            let c = Rational::from(-6 * k0 as i64).mul(&Rational::from(factorial(k0 + 1)));
            let c = if (k0 + 1) % 2 == 0 { c } else { c.neg() };
            assert_eq!(got, f1.scale(&c), "k0={k0}");
        }
    }
}
