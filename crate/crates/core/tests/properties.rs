use proptest::prelude::*;

use c2cert::arith::{bareiss_rref, gauss_jordan, ExactMatrix, RatFuncK, Rational, ScalarMode};
use c2cert::poly::{Corpus, Monomial, WPoly, WRing};
use c2cert::weyl::{f0_power_oracle, reduce_c2, Letter, PbwMonomial, PbwVector, WeylEngine};

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..5, c), r))
}

fn to_matrix(rows: &[Vec<i64>]) -> ExactMatrix<Rational> {
    ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
}

fn yz_poly() -> impl Strategy<Value = Vec<((u32, u32), i64)>> {
    prop::collection::vec(((0u32..4, 0u32..3), -5i64..6), 0..5)
}

fn build(ring: &c2cert::poly::RingRef, terms: &[((u32, u32), i64)]) -> WPoly<Rational> {
    terms.iter().fold(WPoly::zero(ring), |acc, &((a, b), c)| {
        acc.checked_add(&WPoly::monomial(ring, vec![a, b], q(c))).unwrap()
    })
}

fn t_poly() -> impl Strategy<Value = Vec<(Monomial, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..3, 4), -3i64..4), 1..4)
}

fn pbw() -> impl Strategy<Value = PbwMonomial> {
    let modes = || prop::collection::vec(1u32..3, 0..2);
    (modes(), modes(), modes()).prop_map(|(h, e, f)| PbwMonomial::new(&h, &e, &f).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fraction_free_matches_gauss_jordan(rows in matrix()) {
        let m = to_matrix(&rows);
        prop_assert_eq!(bareiss_rref(&m), gauss_jordan(&m));
    }

    #[test]
    fn rref_is_idempotent(rows in matrix()) {
        let r = to_matrix(&rows).rref();
        prop_assert_eq!(r.reduced.rref(), r);
    }

    #[test]
    fn rank_ignores_row_order(rows in matrix(), seed in 0usize..100) {
        let mut shuffled = rows.clone();
        let n = shuffled.len();
        shuffled.rotate_left(seed % n);
        shuffled.swap(0, (seed / 7) % n);
        prop_assert_eq!(to_matrix(&rows).rank(), to_matrix(&shuffled).rank());
    }

    #[test]
    fn symbolic_corpus_instantiates_to_concrete(k in 1u32..40, idx in 0usize..8) {
        let names = ["g2", "g3", "Wbar2", "Wbar4", "Wbar5_in_g", "g4_in_Wbar", "rel1", "rel3"];
        let sym: Corpus<RatFuncK> = Corpus::new(ScalarMode::Symbolic).unwrap();
        let conc: Corpus<Rational> = Corpus::new(ScalarMode::Concrete(k)).unwrap();
        let name = names[idx];
        prop_assert_eq!(sym.poly(name).unwrap().instantiate(k).unwrap(), conc.poly(name).unwrap());
    }

    #[test]
    fn derivation_obeys_leibniz(a in yz_poly(), b in yz_poly(), k in 5u32..9) {
        let c: Corpus<Rational> = Corpus::new(ScalarMode::Concrete(k)).unwrap();
        let (p, r) = (build(c.ring_yz(), &a), build(c.ring_yz(), &b));
        for name in ["D", "E"] {
            let d = c.derivation(name).unwrap();
            let lhs = d.apply(&p.checked_mul(&r).unwrap()).unwrap();
            let rhs = d.apply(&p).unwrap().checked_mul(&r).unwrap()
                .checked_add(&p.checked_mul(&d.apply(&r).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn substitution_is_a_ring_map(a in t_poly(), b in t_poly()) {
        let c: Corpus<Rational> = Corpus::new(ScalarMode::Concrete(6)).unwrap();
        let t = c.ring_t();
        let mk = |ts: &[(Monomial, i64)]| ts.iter().fold(WPoly::zero(t), |acc, (m, x)| {
            acc.checked_add(&WPoly::monomial(t, m.clone(), q(*x))).unwrap()
        });
        let (p, r) = (mk(&a), mk(&b));
        let g: Vec<_> = (2..=5).map(|s| c.poly(&format!("g{s}")).unwrap()).collect();
        let lhs = p.checked_mul(&r).unwrap().substitute(&g).unwrap();
        let rhs = p.substitute(&g).unwrap().checked_mul(&r.substitute(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weights_add_under_products(a in 0u32..8, b in 0u32..8, seed in 0usize..50) {
        let ring = WRing::yz(ScalarMode::Concrete(5));
        let pick = |n: u32| {
            let ms = ring.monomials_of_weight(n);
            WPoly::monomial(&ring, ms[seed % ms.len()].clone(), q(3))
                .checked_add(&WPoly::monomial(&ring, ms[(seed / 3) % ms.len()].clone(), q(-1))).unwrap()
        };
        let prod = pick(a).checked_mul(&pick(b)).unwrap();
        prop_assert!(prod.is_zero() || prod.is_homogeneous_of(a + b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The reduction onto the polynomial quotient turns the (-1)-product
    /// into the ordinary product.
    #[test]
    fn reduction_is_multiplicative(u in pbw(), v in pbw()) {
        let mode = ScalarMode::Concrete(3);
        let e = WeylEngine::<Rational>::new(mode).unwrap();
        let (uv, vv) = (PbwVector::monomial(mode, u, q(1)), PbwVector::monomial(mode, v, q(1)));
        let prod = e.vector_mode(&uv, -1, &vv).unwrap();
        let expect = reduce_c2(&uv).checked_mul(&reduce_c2(&vv)).unwrap();
        prop_assert_eq!(reduce_c2(&prod), expect);
    }

    /// `f(0)` descends to the quotient as the derivation `f0_action`.
    #[test]
    fn f_zero_descends_to_a_derivation(v in pbw(), k in 2u32..5) {
        let mode = ScalarMode::Concrete(k);
        let e = WeylEngine::<Rational>::new(mode).unwrap();
        let c: Corpus<Rational> = Corpus::new(mode).unwrap();
        let vv = PbwVector::monomial(mode, v, q(1));
        let lhs = reduce_c2(&e.current_mode(Letter::F, 0, &vv).unwrap());
        let rhs = c.derivation("f0_action").unwrap().apply(&reduce_c2(&vv)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

/// `f(0)^s e(-1)^n 1` reduced mod C2 has coefficients independent of the level.
#[test]
fn f0_powers_do_not_depend_on_level() {
    let engines: Vec<_> = [2u32, 3, 5].iter().map(|&k| WeylEngine::<Rational>::new(ScalarMode::Concrete(k)).unwrap()).collect();
    for n in 1..=3 {
        for s in 0..=2 * n {
            let polys: Vec<_> = engines.iter().map(|e| f0_power_oracle(e, n, s).unwrap()).collect();
            let strip = |p: &WPoly<Rational>| p.terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect::<Vec<_>>();
            assert_eq!(strip(&polys[0]), strip(&polys[1]), "n={n} s={s}");
            assert_eq!(strip(&polys[0]), strip(&polys[2]), "n={n} s={s}");
        }
    }
}

#[test]
fn symbolic_engine_instantiates() {
    let sym = WeylEngine::<RatFuncK>::new(ScalarMode::Symbolic).unwrap();
    let conc = WeylEngine::<Rational>::new(ScalarMode::Concrete(7)).unwrap();
    let word = [(Letter::E, -1), (Letter::F, 1), (Letter::E, -1), (Letter::F, -1)];
    let a = sym.word(&word).unwrap();
    let b = conc.word(&word).unwrap();
    let k = Rational::from(7);
    for (m, c) in a.terms() {
        assert_eq!(c.instantiate_k(&k).unwrap(), b.coeff(m));
    }
    assert!(!a.is_empty());
    assert_eq!(a.len(), b.len());
}
