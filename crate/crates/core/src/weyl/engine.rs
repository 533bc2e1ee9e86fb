use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::sync::Arc;

use super::{Letter, PbwMonomial, PbwVector, WeylError};
use crate::arith::{binomial, Field, ScalarMode};

/// Limits that turn runaway computations into errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceCaps {
    /// Largest weight of any intermediate vector.
    pub max_weight: u32,
    /// Largest number of terms stored across the memo tables.
    pub max_terms: usize,
    /// Largest level accepted by [`WeylEngine::singular_vector`].
    pub max_singular_level: u32,
}

impl Default for ResourceCaps {
    fn default() -> Self {
        ResourceCaps { max_weight: 14, max_terms: 2_000_000, max_singular_level: 8 }
    }
}

type Shared<S> = Arc<PbwVector<S>>;

/// Straightening engine for the level-`k` vacuum module of affine sl₂.
///
/// Results of single-mode actions and of vector modes on monomials are
/// memoized, so one engine should be reused for related computations.
/// The engine is not `Sync`; give each worker its own.
pub struct WeylEngine<S: Field> {
    mode: ScalarMode,
    k: S,
    caps: ResourceCaps,
    stored: Cell<usize>,
    act_memo: RefCell<HashMap<(Letter, i64, PbwMonomial), Shared<S>>>,
    mode_memo: RefCell<HashMap<(PbwMonomial, i64, PbwMonomial), Shared<S>>>,
}

impl<S: Field> WeylEngine<S> {
    pub fn new(mode: ScalarMode) -> Result<Self, WeylError> {
        Self::with_caps(mode, ResourceCaps::default())
    }

    pub fn with_caps(mode: ScalarMode, caps: ResourceCaps) -> Result<Self, WeylError> {
        Ok(WeylEngine {
            mode,
            k: S::level(mode)?,
            caps,
            stored: Cell::new(0),
            act_memo: RefCell::new(HashMap::new()),
            mode_memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn k(&self) -> &S {
        &self.k
    }

    pub fn caps(&self) -> ResourceCaps {
        self.caps
    }

    pub fn vacuum(&self) -> PbwVector<S> {
        PbwVector::vacuum(self.mode)
    }

    pub fn zero(&self) -> PbwVector<S> {
        PbwVector::zero(self.mode)
    }

    /// `a(-i_1) a(-i_2) .. 1` for a list of creation modes applied right
    /// to left, straightened.
    pub fn word(&self, ops: &[(Letter, i64)]) -> Result<PbwVector<S>, WeylError> {
        let mut v = self.vacuum();
        for &(a, n) in ops.iter().rev() {
            v = self.current_mode(a, n, &v)?;
        }
        Ok(v)
    }

    /// The action of `a(n)` on `v`.
    pub fn current_mode(&self, a: Letter, n: i64, v: &PbwVector<S>) -> Result<PbwVector<S>, WeylError> {
        let mut out = self.zero();
        for (m, c) in v.terms() {
            out.add_scaled(&*self.act(a, n, m)?, c);
        }
        self.debug_shift(v, &out, -n, a.charge());
        Ok(out)
    }

    /// The mode `u_n` of the vertex operator of `u`, applied to `v`.
    pub fn vector_mode(&self, u: &PbwVector<S>, n: i64, v: &PbwVector<S>) -> Result<PbwVector<S>, WeylError> {
        let mut out = self.zero();
        for (mu, cu) in u.terms() {
            for (mv, cv) in v.terms() {
                out.add_scaled(&*self.mode_mono(mu, n, mv)?, &cu.mul(cv));
            }
        }
        if let (Some(wu), Some(cu)) = (u.homogeneous_weight(), u.homogeneous_charge()) {
            self.debug_shift(v, &out, wu as i64 - n - 1, cu);
        }
        Ok(out)
    }

    /// `f(0)^{k0+1} e(-1)^{k0+1} 1`.
    pub fn singular_vector(&self, k0: u32) -> Result<PbwVector<S>, WeylError> {
        if k0 == 0 {
            return Err(WeylError::Range(format!("singular vector needs k0 >= 1, got {k0}")));
        }
        if k0 > self.caps.max_singular_level {
            return Err(WeylError::Resource(format!(
                "singular vector at k0={k0} exceeds the configured cap {}",
                self.caps.max_singular_level
            )));
        }
        self.f0_power_on_e(k0 + 1, k0 + 1)
    }

    /// `f(0)^s e(-1)^n 1`.
    pub fn f0_power_on_e(&self, s: u32, n: u32) -> Result<PbwVector<S>, WeylError> {
        let e = PbwMonomial::new(&[], &vec![1; n as usize], &[]).expect("positive depths");
        let mut v = PbwVector::monomial(self.mode, e, S::one());
        for _ in 0..s {
            v = self.current_mode(Letter::F, 0, &v)?;
        }
        Ok(v)
    }

    fn check_weight(&self, w: i64) -> Result<(), WeylError> {
        if w > self.caps.max_weight as i64 {
            return Err(WeylError::Resource(format!(
                "intermediate weight {w} exceeds cap {}",
                self.caps.max_weight
            )));
        }
        Ok(())
    }

    fn remember(&self, len: usize) -> Result<(), WeylError> {
        let total = self.stored.get() + len;
        self.stored.set(total);
        if total > self.caps.max_terms {
            return Err(WeylError::Resource(format!(
                "stored term count {total} exceeds cap {}",
                self.caps.max_terms
            )));
        }
        Ok(())
    }

    fn debug_shift(&self, v: &PbwVector<S>, out: &PbwVector<S>, dw: i64, dc: i64) {
        if cfg!(debug_assertions) {
            if let (Some(w), Some(c)) = (v.homogeneous_weight(), v.homogeneous_charge()) {
                for m in out.terms().keys() {
                    debug_assert_eq!(m.weight() as i64, w as i64 + dw, "weight shift violated");
                    debug_assert_eq!(m.charge(), c + dc, "charge shift violated");
                }
            }
        }
    }

    /// `a(n)` applied to one monomial.
    fn act(&self, a: Letter, n: i64, m: &PbwMonomial) -> Result<Shared<S>, WeylError> {
        let w = m.weight() as i64;
        if n > w {
            return Ok(Arc::new(self.zero()));
        }
        self.check_weight(w - n)?;
        let key = (a, n, m.clone());
        if let Some(r) = self.act_memo.borrow().get(&key) {
            return Ok(r.clone());
        }
        let r = Arc::new(self.act_uncached(a, n, m)?);
        self.remember(r.len())?;
        self.act_memo.borrow_mut().insert(key, r.clone());
        Ok(r)
    }

    fn act_uncached(&self, a: Letter, n: i64, m: &PbwMonomial) -> Result<PbwVector<S>, WeylError> {
        let mode = self.mode;
        let Some((b, d)) = m.first() else {
            return Ok(if n < 0 {
                PbwVector::monomial(mode, m.insert(a, (-n) as u32), S::one())
            } else {
                self.zero()
            });
        };
        if a == Letter::H && n == 0 {
            return Ok(PbwVector::monomial(mode, m.clone(), S::from_int(m.charge())));
        }
        if n < 0 && a <= b {
            return Ok(PbwVector::monomial(mode, m.insert(a, (-n) as u32), S::one()));
        }
        // a(n) b(-d) rest = b(-d) a(n) rest + [a(n), b(-d)] rest
        let rest = m.rest();
        let mut out = self.zero();
        let moved = self.act(a, n, &rest)?;
        for (mm, c) in moved.terms() {
            out.add_scaled(&*self.act(b, -(d as i64), mm)?, c);
        }
        if let Some((c, l)) = a.bracket(b) {
            out.add_scaled(&*self.act(l, n - d as i64, &rest)?, &S::from_int(c));
        }
        if n == d as i64 {
            let c = n * a.form(b);
            if c != 0 {
                out.add_term(rest, &S::from_int(c).mul(&self.k));
            }
        }
        Ok(out)
    }

    fn mode_mono(&self, u: &PbwMonomial, n: i64, v: &PbwMonomial) -> Result<Shared<S>, WeylError> {
        let w = u.weight() as i64 + v.weight() as i64 - n - 1;
        if w < 0 {
            return Ok(Arc::new(self.zero()));
        }
        self.check_weight(w)?;
        let key = (u.clone(), n, v.clone());
        if let Some(r) = self.mode_memo.borrow().get(&key) {
            return Ok(r.clone());
        }
        let r = Arc::new(self.mode_uncached(u, n, v)?);
        self.remember(r.len())?;
        self.mode_memo.borrow_mut().insert(key, r.clone());
        Ok(r)
    }

    fn mode_uncached(&self, u: &PbwMonomial, n: i64, v: &PbwMonomial) -> Result<PbwVector<S>, WeylError> {
        let Some((a, i)) = u.first() else {
            return Ok(if n == -1 {
                PbwVector::monomial(self.mode, v.clone(), S::one())
            } else {
                self.zero()
            });
        };
        let rest = u.rest();
        if rest.is_vacuum() {
            // (a(-i)1)_n = (-1)^{i-1} C(n, i-1) a(n-i+1)
            let c = binomial(n, i - 1);
            let c = if i % 2 == 0 { -c } else { c };
            return Ok(self.act(a, n - i as i64 + 1, v)?.scale(&S::from_bigint(c)));
        }
        self.iterate(a, i, &rest, n, v)
    }

    /// `(a(-i) u)_n v` expanded with the iterate formula for `m = -i`:
    /// `sum_j (-1)^j C(m,j) (a(m-j) u_{n+j} v - (-1)^m u_{m+n-j} a(j) v)`.
    /// The first sum stops once `u_{n+j} v` has negative weight, the second
    /// once `a(j)` kills `v`.
    fn iterate(&self, a: Letter, i: u32, u: &PbwMonomial, n: i64, v: &PbwMonomial) -> Result<PbwVector<S>, WeylError> {
        let m = -(i as i64);
        let mut out = self.zero();
        let top1 = u.weight() as i64 + v.weight() as i64 - n - 1;
        for j in 0..=top1.max(-1) {
            let c: S = signed_binomial(m, j);
            let inner = self.mode_mono(u, n + j, v)?;
            for (mm, x) in inner.terms() {
                out.add_scaled(&*self.act(a, m - j, mm)?, &x.mul(&c));
            }
        }
        let sign_m = if i % 2 == 0 { 1 } else { -1 };
        for j in 0..=v.weight() as i64 {
            let c = signed_binomial::<S>(m, j).mul(&S::from_int(-sign_m));
            let inner = self.act(a, j, v)?;
            for (mm, x) in inner.terms() {
                out.add_scaled(&*self.mode_mono(u, m + n - j, mm)?, &x.mul(&c));
            }
        }
        Ok(out)
    }

    #[cfg(test)]
    pub(crate) fn iterate_for_test(
        &self,
        a: Letter,
        i: u32,
        u: &PbwMonomial,
        n: i64,
        v: &PbwMonomial,
    ) -> Result<PbwVector<S>, WeylError> {
        self.iterate(a, i, u, n, v)
    }
}

/// `(-1)^j C(m, j)` as a field element.
fn signed_binomial<S: Field>(m: i64, j: i64) -> S {
    let c = binomial(m, j as u32);
    S::from_bigint(if j % 2 == 0 { c } else { -c })
}
