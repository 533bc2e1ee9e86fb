use std::fmt;

use num_bigint::BigInt;

use super::{DerivationSpec, PolyError, RingRef, WPoly, WRing};
use crate::arith::{factorial, ExactMatrix, Field, Rational, ScalarMode};

/// Stable names accepted by [`Corpus::get`]. `f<r>` stands for any `r >= 0`.
pub const CORPUS_NAMES: &[&str] = &[
    "Wbar2", "Wbar3", "Wbar4", "Wbar5",
    "Wbar2_in_g", "Wbar3_in_g", "Wbar4_in_g", "Wbar5_in_g",
    "g2_in_Wbar", "g3_in_Wbar", "g4_in_Wbar", "g5_in_Wbar",
    "g2", "g3", "g4", "g5",
    "rel1", "rel2", "rel3",
    "z2_in_g", "yz2_in_g", "z3_in_g", "yz3_in_g",
    "f<r>", "p", "q", "det_DE",
    "eig_W2", "eig_W3",
    "D", "E", "f0_action", "W31", "W31_on_g", "W31_transported",
    "a_rs",
];

/// A deliberate corruption: adds `delta` to the coefficient of the
/// `index`-th term of the named object (terms in display order; for a
/// derivation the images are concatenated; for a matrix, row-major entries).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub name: String,
    pub index: usize,
    pub delta: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusItem<S: Field> {
    Poly(WPoly<S>),
    Derivation(DerivationSpec<S>),
    Matrix(ExactMatrix<S>),
}

impl<S: Field> fmt::Display for CorpusItem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusItem::Poly(p) => write!(f, "{p}"),
            CorpusItem::Derivation(d) => write!(f, "{d}"),
            CorpusItem::Matrix(m) => write!(f, "{m}"),
        }
    }
}

/// Named polynomials, derivations and matrices at one scalar mode.
#[derive(Clone, Debug)]
pub struct Corpus<S: Field> {
    mode: ScalarMode,
    k: S,
    mutation: Option<Mutation>,
    yz: RingRef,
    y012: RingRef,
    x: RingRef,
    t: RingRef,
    ij: RingRef,
}

impl<S: Field> Corpus<S> {
    pub fn new(mode: ScalarMode) -> Result<Self, PolyError> {
        Ok(Corpus {
            mode,
            k: S::level(mode)?,
            mutation: None,
            yz: WRing::yz(mode),
            y012: WRing::y012(mode),
            x: WRing::x2345(mode),
            t: WRing::t2345(mode),
            ij: WRing::new(&["i", "j"], &[1, 1], mode)?,
        })
    }

    pub fn with_mutation(mut self, m: Mutation) -> Self {
        self.mutation = Some(m);
        self
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn k(&self) -> &S {
        &self.k
    }

    /// ℂ[y, z] with weights 1, 2.
    pub fn ring_yz(&self) -> &RingRef {
        &self.yz
    }

    /// ℂ[y0, y1, y2].
    pub fn ring_y012(&self) -> &RingRef {
        &self.y012
    }

    /// Abstract generators x2..x5.
    pub fn ring_x(&self) -> &RingRef {
        &self.x
    }

    /// Abstract generators t2..t5 standing for g2..g5.
    pub fn ring_t(&self) -> &RingRef {
        &self.t
    }

    pub fn ring_ij(&self) -> &RingRef {
        &self.ij
    }

    pub fn get(&self, name: &str) -> Result<CorpusItem<S>, PolyError> {
        match name {
            "D" | "E" | "f0_action" | "W31" | "W31_on_g" | "W31_transported" => {
                self.derivation(name).map(CorpusItem::Derivation)
            }
            "a_rs" => self.matrix(name).map(CorpusItem::Matrix),
            _ => self.poly(name).map(CorpusItem::Poly),
        }
    }

    pub fn poly(&self, name: &str) -> Result<WPoly<S>, PolyError> {
        let p = self.build_poly(name)?;
        Ok(self.mutate_poly(name, p))
    }

    pub fn derivation(&self, name: &str) -> Result<DerivationSpec<S>, PolyError> {
        let d = self.build_derivation(name)?;
        match &self.mutation {
            Some(m) if m.name == name => {
                let delta = S::from_rational(&m.delta);
                let mut idx = m.index;
                let mut images = d.images().to_vec();
                for img in images.iter_mut() {
                    if idx < img.len() {
                        *img = bump(img, idx, &delta);
                        break;
                    }
                    idx -= img.len();
                }
                DerivationSpec::new(d.ring(), images, d.weight_shift())
            }
            _ => Ok(d),
        }
    }

    pub fn matrix(&self, name: &str) -> Result<ExactMatrix<S>, PolyError> {
        if name != "a_rs" {
            return Err(PolyError::UnknownName(name.into()));
        }
        let mut a = self.a_rs()?;
        if let Some(m) = self.mutation.as_ref().filter(|m| m.name == name) {
            let idx = m.index % 16;
            let (i, j) = (idx / 4, idx % 4);
            let v = a.get(i, j).add(&S::from_rational(&m.delta));
            a.set(i, j, v);
        }
        Ok(a)
    }

    fn mutate_poly(&self, name: &str, p: WPoly<S>) -> WPoly<S> {
        match &self.mutation {
            Some(m) if m.name == name => bump(&p, m.index, &S::from_rational(&m.delta)),
            _ => p,
        }
    }

    /// Integer-coefficient polynomial in `k`, constant term first.
    fn kp(&self, cs: &[i64]) -> S {
        cs.iter().rev().fold(S::zero(), |acc, &c| acc.mul(&self.k).add(&S::from_int(c)))
    }

    fn frac(&self, num: S, den: S) -> Result<S, PolyError> {
        Ok(num.div(&den)?)
    }

    fn c(&self, ring: &RingRef, v: S) -> WPoly<S> {
        WPoly::constant(ring, v)
    }

    fn y(&self) -> WPoly<S> {
        WPoly::var(&self.yz, 0)
    }

    fn z(&self) -> WPoly<S> {
        WPoly::var(&self.yz, 1)
    }

    fn t(&self, s: usize) -> WPoly<S> {
        WPoly::var(&self.t, s - 2)
    }

    fn x(&self, s: usize) -> WPoly<S> {
        WPoly::var(&self.x, s - 2)
    }

    /// `c * y^a * z^b` in ℂ[y, z].
    fn yzm(&self, c: S, a: u32, b: u32) -> WPoly<S> {
        WPoly::monomial(&self.yz, vec![a, b], c)
    }

    fn concrete_level(&self, what: &str) -> Result<u32, PolyError> {
        self.mode.concrete_level().ok_or_else(|| PolyError::NeedsConcreteLevel(what.into()))
    }

    fn build_poly(&self, name: &str) -> Result<WPoly<S>, PolyError> {
        let k = &self.k;
        let n = |c: i64| S::from_int(c);
        Ok(match name {
            "g2" => &self.yzm(S::one(), 2, 0) - &self.yzm(self.kp(&[0, 2]), 0, 1),
            "g3" => &self.yzm(S::one(), 3, 0) - &self.yzm(self.kp(&[0, 3]), 1, 1),
            "g4" => self.yzm(S::one(), 0, 2),
            "g5" => self.yzm(S::one(), 1, 2),
            "Wbar2" => {
                let c = self.frac(n(-1), self.kp(&[0, 4, 2]))?;
                self.build_poly("g2")?.scale(&c)
            }
            "Wbar3" => self.build_poly("g3")?.scale(&n(2)),
            "Wbar4" => {
                // -(11k+6)y^4 + 4k(11k+6)y^2z - 2k^2(6k-5)z^2
                let a = self.kp(&[6, 11]);
                let w = &self.yzm(a.neg(), 4, 0) + &self.yzm(n(4).mul(k).mul(&a), 2, 1);
                &w - &self.yzm(n(2).mul(&k.pow(2)).mul(&self.kp(&[-5, 6])), 0, 2)
            }
            "Wbar5" => {
                // -2(19k+12)y^5 + 10k(19k+12)y^3z - 10k^2(10k-7)yz^2
                let a = self.kp(&[12, 19]);
                let w = &self.yzm(n(-2).mul(&a), 5, 0) + &self.yzm(n(10).mul(k).mul(&a), 3, 1);
                &w - &self.yzm(n(10).mul(&k.pow(2)).mul(&self.kp(&[-7, 10])), 1, 2)
            }
            "Wbar2_in_g" => self.t(2).scale(&self.frac(n(-1), self.kp(&[0, 4, 2]))?),
            "Wbar3_in_g" => self.t(3).scale(&n(2)),
            "Wbar4_in_g" => {
                // -(11k+6)g2^2 + 2k^2(16k+17)g4
                &self.t(2).pow(2).scale(&self.kp(&[6, 11]).neg())
                    + &self.t(4).scale(&n(2).mul(&k.pow(2)).mul(&self.kp(&[17, 16])))
            }
            "Wbar5_in_g" => {
                // -2(19k+12)g2g3 + 2k^2(64k+107)g5
                &(&self.t(2) * &self.t(3)).scale(&n(-2).mul(&self.kp(&[12, 19])))
                    + &self.t(5).scale(&n(2).mul(&k.pow(2)).mul(&self.kp(&[107, 64])))
            }
            "g2_in_Wbar" => self.x(2).scale(&self.kp(&[0, -4, -2])),
            "g3_in_Wbar" => self.x(3).scale(&self.frac(n(1), n(2))?),
            "g4_in_Wbar" => {
                // 2(k+2)^2(11k+6)/(16k+17) W2^2 + 1/(2k^2(16k+17)) W4
                let d = self.kp(&[17, 16]);
                let a = self.frac(n(2).mul(&self.kp(&[2, 1]).pow(2)).mul(&self.kp(&[6, 11])), d.clone())?;
                let b = self.frac(n(1), n(2).mul(&k.pow(2)).mul(&d))?;
                &self.x(2).pow(2).scale(&a) + &self.x(4).scale(&b)
            }
            "g5_in_Wbar" => {
                // -(k+2)(19k+12)/(k(64k+107)) W2 W3 + 1/(2k^2(64k+107)) W5
                let d = self.kp(&[107, 64]);
                let a = self.frac(self.kp(&[2, 1]).mul(&self.kp(&[12, 19])).neg(), k.mul(&d))?;
                let b = self.frac(n(1), n(2).mul(&k.pow(2)).mul(&d))?;
                &(&self.x(2) * &self.x(3)).scale(&a) + &self.x(5).scale(&b)
            }
            "rel1" => {
                // g2^4 - g2g3^2 - 5k^2g2^2g4 + 4k^4g4^2 + 2k^2g3g5
                let (t2, t3, t4, t5) = (self.t(2), self.t(3), self.t(4), self.t(5));
                let k2 = k.pow(2);
                let a = &t2.pow(4) - &(&t2 * &t3.pow(2));
                let b = &(&t2.pow(2) * &t4).scale(&n(-5).mul(&k2)) + &t4.pow(2).scale(&n(4).mul(&k.pow(4)));
                &(&a + &b) + &(&t3 * &t5).scale(&n(2).mul(&k2))
            }
            "rel2" => {
                // g2^3g3 - g3^3 - 5k^2g2g3g4 + 2k^2g2^2g5 - 2k^4g4g5
                let (t2, t3, t4, t5) = (self.t(2), self.t(3), self.t(4), self.t(5));
                let k2 = k.pow(2);
                let a = &(&t2.pow(3) * &t3) - &t3.pow(3);
                let b = &(&(&t2 * &t3) * &t4).scale(&n(-5).mul(&k2))
                    + &(&t2.pow(2) * &t5).scale(&n(2).mul(&k2));
                &(&a + &b) + &(&t4 * &t5).scale(&n(-2).mul(&k.pow(4)))
            }
            "rel3" => {
                // g2^3g4 - g3^2g4 - 4k^2g2g4^2 + k^2g5^2
                let (t2, t3, t4, t5) = (self.t(2), self.t(3), self.t(4), self.t(5));
                let k2 = k.pow(2);
                let a = &(&t2.pow(3) * &t4) - &(&t3.pow(2) * &t4);
                &(&a + &(&t2 * &t4.pow(2)).scale(&n(-4).mul(&k2))) + &t5.pow(2).scale(&k2)
            }
            "z2_in_g" => self.t(4),
            "yz2_in_g" => self.t(5),
            "z3_in_g" => {
                // (3/2k)g2g4 - (1/2k^3)(g2^3 - g3^2)
                let a = self.frac(n(3), n(2).mul(k))?;
                let b = self.frac(n(-1), n(2).mul(&k.pow(3)))?;
                &(&self.t(2) * &self.t(4)).scale(&a) + &(&self.t(2).pow(3) - &self.t(3).pow(2)).scale(&b)
            }
            "yz3_in_g" => {
                // (1/k)(g2g5 - g3g4)
                let a = self.frac(n(1), k.clone())?;
                (&(&self.t(2) * &self.t(5)) - &(&self.t(3) * &self.t(4))).scale(&a)
            }
            "p" => {
                // -(k+1)(k+2)^2((k+1)y^2 + kz)
                let c = self.kp(&[1, 1]).mul(&self.kp(&[2, 1]).pow(2)).neg();
                &self.yzm(c.mul(&self.kp(&[1, 1])), 2, 0) + &self.yzm(c.mul(k), 0, 1)
            }
            "q" => self.yzm(self.kp(&[2, 1]).mul(&self.kp(&[3, 2])), 1, 0),
            "det_DE" => {
                // -k(y^2 + 4z)z
                &self.yzm(k.neg(), 2, 1) + &self.yzm(n(-4).mul(k), 0, 2)
            }
            "eig_W2" => {
                // (k m - m^2 + 2k(i-j+1)j) / (2k(k+2)),  m = i - 2j
                let (m, ij1j) = self.eig_parts();
                let c = self.c(&self.ij, k.clone());
                let num = &(&(&c * &m) - &m.pow(2)) + &(&c * &ij1j).scale(&n(2));
                num.scale(&self.frac(n(1), self.kp(&[0, 4, 2]))?)
            }
            "eig_W3" => {
                // k^2 m - 3k m^2 + 2m^3 - 6k m (i-j+1) j
                let (m, ij1j) = self.eig_parts();
                let a = &m.scale(&k.pow(2)) - &m.pow(2).scale(&n(3).mul(k));
                &(&a + &m.pow(3).scale(&n(2))) - &(&m * &ij1j).scale(&n(6).mul(k))
            }
            _ => {
                if let Some(r) = name.strip_prefix('f').and_then(|s| s.parse::<u32>().ok()) {
                    return self.f(r);
                }
                return Err(PolyError::UnknownName(name.into()));
            }
        })
    }

    /// `(i - 2j, (i - j + 1) j)` in ℂ[i, j].
    fn eig_parts(&self) -> (WPoly<S>, WPoly<S>) {
        let i: WPoly<S> = WPoly::var(&self.ij, 0);
        let j: WPoly<S> = WPoly::var(&self.ij, 1);
        let m = &i - &j.scale(&S::from_int(2));
        let ij1 = &(&i - &j) + &WPoly::one(&self.ij);
        (m, &ij1 * &j)
    }

    /// `f_r = D^r f_0` with `f_0` from its closed-form coefficients.
    fn f(&self, r: u32) -> Result<WPoly<S>, PolyError> {
        let k0 = self.concrete_level("f0")?;
        if r > 0 {
            let prev = self.poly(&format!("f{}", r - 1))?;
            return self.derivation("D")?.apply(&prev);
        }
        let mut terms = Vec::new();
        for j in 0..=(k0 + 1) / 2 {
            let num = factorial(k0 + 1);
            let den = factorial(k0 + 1 - 2 * j) * factorial(j) * factorial(j);
            let mut c: BigInt = num / den;
            if j % 2 == 1 {
                c = -c;
            }
            terms.push((vec![k0 + 1 - 2 * j, j], S::from_bigint(c)));
        }
        WPoly::from_terms(&self.yz, terms)
    }

    fn build_derivation(&self, name: &str) -> Result<DerivationSpec<S>, PolyError> {
        let k = &self.k;
        let n = |c: i64| S::from_int(c);
        match name {
            "D" => {
                // ((k+2)y^2 - 2kz) d/dy + (3k+4)yz d/dz
                let dy = &self.yzm(self.kp(&[2, 1]), 2, 0) - &self.yzm(n(2).mul(k), 0, 1);
                let dz = self.yzm(self.kp(&[4, 3]), 1, 1);
                DerivationSpec::new(&self.yz, vec![dy, dz], 1)
            }
            "E" => DerivationSpec::new(&self.yz, vec![self.y(), self.z().scale(&n(2))], 0),
            "f0_action" => {
                // 2 y2 d/dy0 - y0 d/dy1
                let r = &self.y012;
                let y0: WPoly<S> = WPoly::var(r, 0);
                let y2: WPoly<S> = WPoly::var(r, 2);
                DerivationSpec::new(r, vec![y2.scale(&n(2)), y0.neg(), WPoly::zero(r)], 0)
            }
            "W31" => {
                let (x2, x3, x4, x5) = (self.x(2), self.x(3), self.x(4), self.x(5));
                let d3 = self.kp(&[17, 16]);
                let d4 = self.kp(&[107, 64]);
                let kp2 = self.kp(&[2, 1]);
                let kp3 = self.kp(&[3, 2]);
                let kp4 = self.kp(&[4, 3]);
                // 3 x3
                let i2 = x3.scale(&n(3));
                // (288k^3(k-2)(k+2)^2(3k+4) x2^2 + 36k(2k+3) x4) / (16k+17)
                let a = n(288).mul(&k.pow(3)).mul(&self.kp(&[-2, 1])).mul(&kp2.pow(2)).mul(&kp4);
                let b = n(36).mul(k).mul(&kp3);
                let i3 = &x2.pow(2).scale(&self.frac(a, d3.clone())?) + &x4.scale(&self.frac(b, d3.clone())?);
                // (1248k^2(k-3)(k+2)(2k+1)(2k+3) x2x3 - 12k(3k+4)(16k+17) x5) / (64k+107)
                let a = n(1248)
                    .mul(&k.pow(2))
                    .mul(&self.kp(&[-3, 1]))
                    .mul(&kp2)
                    .mul(&self.kp(&[1, 2]))
                    .mul(&kp3);
                let b = n(-12).mul(k).mul(&kp4).mul(&d3);
                let i4 = &(&x2 * &x3).scale(&self.frac(a, d4.clone())?) + &x5.scale(&self.frac(b, d4)?);
                // 240k^4(k+2)^3(2k+3)(3k+4)(202k-169)/(16k+17) x2^3
                //   - 15k(2k+3)(41k+61) x3^2
                //   + 60k^2(k+2)(404k^2+1170k+835)/(16k+17) x2x4
                let a = n(240)
                    .mul(&k.pow(4))
                    .mul(&kp2.pow(3))
                    .mul(&kp3)
                    .mul(&kp4)
                    .mul(&self.kp(&[-169, 202]));
                let b = n(-15).mul(k).mul(&kp3).mul(&self.kp(&[61, 41]));
                let c = n(60).mul(&k.pow(2)).mul(&kp2).mul(&self.kp(&[835, 1170, 404]));
                let i5 = &(&x2.pow(3).scale(&self.frac(a, d3.clone())?) + &x3.pow(2).scale(&b))
                    + &(&x2 * &x4).scale(&self.frac(c, d3)?);
                DerivationSpec::new(&self.x, vec![i2, i3, i4, i5], 1)
            }
            "W31_on_g" => {
                let (t2, t3, t4, t5) = (self.t(2), self.t(3), self.t(4), self.t(5));
                // -12k(k+2) g3
                let i2 = t3.scale(&n(-12).mul(k).mul(&self.kp(&[2, 1])));
                // -18k(k+2) g2^2 + 36k^3(2k+3) g4
                let i3 = &t2.pow(2).scale(&n(-18).mul(k).mul(&self.kp(&[2, 1])))
                    + &t4.scale(&n(36).mul(&k.pow(3)).mul(&self.kp(&[3, 2])));
                // -12k(3k+4) g5
                let i4 = t5.scale(&n(-12).mul(k).mul(&self.kp(&[4, 3])));
                // 6(7k+9)/k (g2^3 - g3^2) - 6k(28k+37) g2g4
                let a = self.frac(n(6).mul(&self.kp(&[9, 7])), k.clone())?;
                let i5 = &(&t2.pow(3) - &t3.pow(2)).scale(&a)
                    + &(&t2 * &t4).scale(&n(-6).mul(k).mul(&self.kp(&[37, 28])));
                DerivationSpec::new(&self.t, vec![i2, i3, i4, i5], 1)
            }
            "W31_transported" => self.w31_transported(),
            _ => Err(PolyError::UnknownName(name.into())),
        }
    }

    /// The `x`-derivation `W31` carried to the `t` (that is, `g`) coordinates:
    /// `t_s -> sum_r d(g_s in Wbar)/dx_r * W31(x_r)`, then `x_r -> Wbar_r in g`.
    fn w31_transported(&self) -> Result<DerivationSpec<S>, PolyError> {
        let w31 = self.derivation("W31")?;
        let to_g: Vec<WPoly<S>> =
            (2..=5).map(|s| self.poly(&format!("Wbar{s}_in_g"))).collect::<Result<_, _>>()?;
        let mut images = Vec::with_capacity(4);
        for s in 2..=5 {
            let gs = self.poly(&format!("g{s}_in_Wbar"))?;
            images.push(w31.apply(&gs)?.substitute(&to_g)?);
        }
        DerivationSpec::new(&self.t, images, 1)
    }

    /// The 4x4 matrix `(a_rs)`, rows and columns indexed by `r, s = 2..5`.
    fn a_rs(&self) -> Result<ExactMatrix<S>, PolyError> {
        let k = &self.k;
        let n = |c: i64| S::from_int(c);
        let d3 = self.kp(&[17, 16]);
        let d4 = self.kp(&[107, 64]);
        let mut a = ExactMatrix::zeros(4, 4);
        a.set(0, 1, n(2));
        a.set(
            1,
            0,
            self.frac(
                n(54).mul(&k.pow(3)).mul(&self.kp(&[-2, 1])).mul(&self.kp(&[2, 1])).mul(&self.kp(&[4, 3])),
                d3.clone(),
            )?,
        );
        a.set(1, 2, self.frac(n(18).mul(k).mul(&self.kp(&[3, 2])), d3.clone())?);
        a.set(
            2,
            1,
            self.frac(
                n(32)
                    .mul(&k.pow(2))
                    .mul(&self.kp(&[-3, 1]))
                    .mul(&self.kp(&[1, 2]))
                    .mul(&self.kp(&[3, 2]))
                    .mul(&self.kp(&[7, 2])),
                d4.clone(),
            )?,
        );
        a.set(
            2,
            3,
            self.frac(n(-24).mul(k).mul(&self.kp(&[4, 3])).mul(&d3), n(5).mul(&d4))?,
        );
        a.set(
            3,
            0,
            self.frac(
                n(120)
                    .mul(&k.pow(4))
                    .mul(&self.kp(&[2, 1]))
                    .mul(&self.kp(&[1, 2]))
                    .mul(&self.kp(&[3, 2]))
                    .mul(&self.kp(&[4, 3]))
                    .mul(&self.kp(&[5, 5, 8])),
                d3.clone(),
            )?,
        );
        a.set(
            3,
            2,
            self.frac(n(-15).mul(&k.pow(2)).mul(&self.kp(&[120, 580, 649, 208])), n(2).mul(&d3))?,
        );
        Ok(a)
    }
}

/// Adds `delta` to the coefficient of the `index`-th displayed term.
fn bump<S: Field>(p: &WPoly<S>, index: usize, delta: &S) -> WPoly<S> {
    let Some((m, _)) = p.sorted_terms().get(index).map(|(m, c)| ((*m).clone(), (*c).clone())) else {
        return p.clone();
    };
    let d = WPoly::monomial(p.ring(), m, delta.clone());
    &d + p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RatFuncK;

    #[test]
    fn f0_at_level_five() {
        let c: Corpus<Rational> = Corpus::new(ScalarMode::Concrete(5)).unwrap();
        assert_eq!(c.poly("f0").unwrap().to_string(), "y^6 - 30*y^4*z + 90*y^2*z^2 - 20*z^3");
    }

    #[test]
    fn symbolic_g3_and_matrix_entry() {
        let c: Corpus<RatFuncK> = Corpus::new(ScalarMode::Symbolic).unwrap();
        assert_eq!(c.poly("g3").unwrap().to_string(), "y^3 - 3*k*y*z");
        assert_eq!(c.matrix("a_rs").unwrap().get(0, 1), &RatFuncK::from_int(2));
        assert!(matches!(c.poly("f0"), Err(PolyError::NeedsConcreteLevel(_))));
        assert!(matches!(c.get("nope"), Err(PolyError::UnknownName(_))));
    }

    #[test]
    fn d_of_g2_at_level_five() {
        let c: Corpus<Rational> = Corpus::new(ScalarMode::Concrete(5)).unwrap();
        let dg2 = c.derivation("D").unwrap().apply(&c.poly("g2").unwrap()).unwrap();
        assert_eq!(dg2, c.poly("g3").unwrap().scale(&Rational::from(14)));
    }

    #[test]
    fn mutation_changes_one_coefficient() {
        let m = Mutation { name: "g3".into(), index: 1, delta: Rational::from(1) };
        let c: Corpus<Rational> = Corpus::new(ScalarMode::Concrete(5)).unwrap().with_mutation(m);
        assert_eq!(c.poly("g3").unwrap().to_string(), "y^3 - 14*y*z");
        assert_eq!(c.poly("g2").unwrap().to_string(), "y^2 - 10*z");
    }
}
