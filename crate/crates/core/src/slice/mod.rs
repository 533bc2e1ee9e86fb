//! Finite-dimensional weight slices of graded polynomial rings, their spans,
//! intersections and kernels, and graded codimension counts.

mod ideals;

pub use ideals::{IdealSpace, IdealTower};

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{ArithError, ExactMatrix, Field};
use crate::poly::{Monomial, PolyError, RingRef, WPoly, WRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("expected a homogeneous polynomial of weight {expected}, got {got}")]
    Inhomogeneous { expected: u32, got: String },
    #[error("operands live in different rings or ambient spaces")]
    Mismatch,
    #[error("weight bookkeeping mismatch: {0}")]
    Weight(String),
    #[error("subspace not contained in ambient space at weight {0}")]
    NotContained(u32),
    #[error("not stabilized at weight {weight}: ambient dim {ambient}, sub dim {sub}")]
    NotStabilized { weight: u32, ambient: usize, sub: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// All monomials of weight `n`, in lexicographically descending order.
pub fn monomial_slice(ring: &WRing, n: u32) -> Vec<Monomial> {
    ring.monomials_of_weight(n)
}

/// A subspace of the weight-`n` part of a graded space, stored as a reduced
/// row echelon basis over an ordered list of ambient monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceBasis<S: Field> {
    ring: RingRef,
    weight: u32,
    ambient: Arc<Vec<Monomial>>,
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

/// Result of a membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership<S: Field> {
    /// `p = sum_i coeffs[i] * basis[i]`.
    Member { coeffs: Vec<S> },
    /// `residual` is `p` reduced by the basis; `monomial` is its leading
    /// surviving term.
    NonMember { monomial: Monomial, residual: WPoly<S> },
}

impl<S: Field> Membership<S> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

impl<S: Field> SliceBasis<S> {
    /// Row-reduces coordinate vectors over `ambient`.
    pub fn from_vectors(
        ring: &RingRef,
        weight: u32,
        ambient: Arc<Vec<Monomial>>,
        vectors: Vec<Vec<S>>,
    ) -> Result<Self, SliceError> {
        let m = ExactMatrix::from_rows_with_cols(vectors, ambient.len())?;
        let r = m.rref();
        let rows = (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect();
        Ok(SliceBasis { ring: ring.clone(), weight, ambient, rows, pivots: r.pivots })
    }

    /// The zero subspace.
    pub fn zero(ring: &RingRef, weight: u32, ambient: Arc<Vec<Monomial>>) -> Self {
        SliceBasis { ring: ring.clone(), weight, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    /// The whole weight-`n` slice of `ring`.
    pub fn full(ring: &RingRef, n: u32) -> Self {
        let ambient = Arc::new(monomial_slice(ring, n));
        let d = ambient.len();
        let rows = (0..d)
            .map(|i| (0..d).map(|j| if i == j { S::one() } else { S::zero() }).collect())
            .collect();
        SliceBasis { ring: ring.clone(), weight: n, ambient, rows, pivots: (0..d).collect() }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> &Arc<Vec<Monomial>> {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The basis as polynomials.
    pub fn basis(&self) -> Vec<WPoly<S>> {
        self.rows.iter().map(|r| WPoly::from_coordinates(&self.ring, &self.ambient, r)).collect()
    }

    fn coords(&self, p: &WPoly<S>) -> Result<Vec<S>, SliceError> {
        if **p.ring() != *self.ring {
            return Err(SliceError::Mismatch);
        }
        p.coordinates(&self.ambient).map_err(|_| SliceError::Inhomogeneous {
            expected: self.weight,
            got: format!("{:?}", p.weights()),
        })
    }

    /// Reduces a coordinate vector by the basis.
    fn reduce(&self, mut v: Vec<S>) -> Vec<S> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&c.mul(r));
                }
            }
        }
        v
    }

    pub fn contains(&self, p: &WPoly<S>) -> Result<Membership<S>, SliceError> {
        let v = self.coords(p)?;
        let res = self.reduce(v.clone());
        match res.iter().position(|x| !x.is_zero()) {
            None => Ok(Membership::Member {
                coeffs: self.pivots.iter().map(|&c| v[c].clone()).collect(),
            }),
            Some(i) => Ok(Membership::NonMember {
                monomial: self.ambient[i].clone(),
                residual: WPoly::from_coordinates(&self.ring, &self.ambient, &res),
            }),
        }
    }

    fn compatible(&self, other: &Self) -> Result<(), SliceError> {
        if self.ring != other.ring || self.weight != other.weight || self.ambient != other.ambient {
            return Err(SliceError::Mismatch);
        }
        Ok(())
    }

    /// First basis vector of `self` outside `other`, if any.
    pub fn first_not_in(&self, other: &Self) -> Result<Option<usize>, SliceError> {
        self.compatible(other)?;
        Ok(self
            .rows
            .iter()
            .position(|r| other.reduce(r.clone()).iter().any(|x| !x.is_zero())))
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, SliceError> {
        Ok(self.first_not_in(other)?.is_none())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, SliceError> {
        self.compatible(other)?;
        let vs = self.rows.iter().chain(&other.rows).cloned().collect();
        Self::from_vectors(&self.ring, self.weight, self.ambient.clone(), vs)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, SliceError> {
        self.compatible(other)?;
        let stacked: Vec<Vec<S>> = self.rows.iter().chain(&other.rows).cloned().collect();
        let m = ExactMatrix::from_rows_with_cols(stacked, self.ambient.len())?;
        let da = self.rows.len();
        let vs = m
            .left_kernel()
            .into_iter()
            .map(|w| combine(&w[..da], &self.rows, self.ambient.len()))
            .collect();
        Self::from_vectors(&self.ring, self.weight, self.ambient.clone(), vs)
    }
}

fn combine<S: Field>(coeffs: &[S], rows: &[Vec<S>], width: usize) -> Vec<S> {
    let mut out = vec![S::zero(); width];
    for (c, r) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (x, v) in out.iter_mut().zip(r) {
            if !v.is_zero() {
                *x = x.add(&c.mul(v));
            }
        }
    }
    out
}

fn check_weight<S: Field>(p: &WPoly<S>, n: u32) -> Result<(), SliceError> {
    if p.is_homogeneous_of(n) {
        Ok(())
    } else {
        Err(SliceError::Inhomogeneous { expected: n, got: format!("{:?}", p.weights()) })
    }
}

/// Linear span of homogeneous polynomials of weight `n`.
pub fn span_slice<S: Field>(ring: &RingRef, n: u32, polys: &[WPoly<S>]) -> Result<SliceBasis<S>, SliceError> {
    let ambient = Arc::new(monomial_slice(ring, n));
    let mut vs = Vec::with_capacity(polys.len());
    for p in polys {
        if **p.ring() != **ring {
            return Err(SliceError::Mismatch);
        }
        check_weight(p, n)?;
        vs.push(p.coordinates(&ambient)?);
    }
    SliceBasis::from_vectors(ring, n, ambient, vs)
}

/// Weight-`n` part of the subalgebra generated by homogeneous `gens`, by
/// evaluating every product of generators of total weight `n`.
pub fn subalgebra_slice<S: Field>(
    ring: &RingRef,
    gens: &[WPoly<S>],
    n: u32,
) -> Result<SliceBasis<S>, SliceError> {
    let mut weights = Vec::with_capacity(gens.len());
    for g in gens {
        match g.homogeneous_weight() {
            Some(w) if w > 0 => weights.push(w),
            _ => return Err(SliceError::Weight("generators must be homogeneous of positive weight".into())),
        }
    }
    let gen_ring = WRing::new(
        &(0..gens.len()).map(|i| format!("_g{i}")).collect::<Vec<_>>().iter().map(String::as_str).collect::<Vec<_>>(),
        &weights,
        ring.mode(),
    )?;
    let mut powers: HashMap<(usize, u32), WPoly<S>> = HashMap::new();
    let mut products = Vec::new();
    for e in gen_ring.monomials_of_weight(n) {
        let mut p = WPoly::one(ring);
        for (i, &ei) in e.iter().enumerate() {
            if ei == 0 {
                continue;
            }
            let pw = powers.entry((i, ei)).or_insert_with(|| gens[i].pow(ei)).clone();
            p = p.checked_mul(&pw)?;
        }
        products.push(p);
    }
    span_slice(ring, n, &products)
}

/// Weight-`n` slices of a subalgebra for every `n <= cap`, built from
/// `A_n = sum_s g_s A_{n - wt g_s}`.
pub fn subalgebra_tower<S: Field>(
    ring: &RingRef,
    gens: &[WPoly<S>],
    cap: u32,
) -> Result<Vec<SliceBasis<S>>, SliceError> {
    let mut weights = Vec::with_capacity(gens.len());
    for g in gens {
        match g.homogeneous_weight() {
            Some(w) if w > 0 => weights.push(w),
            _ => return Err(SliceError::Weight("generators must be homogeneous of positive weight".into())),
        }
    }
    let mut tower: Vec<SliceBasis<S>> = Vec::with_capacity(cap as usize + 1);
    tower.push(span_slice(ring, 0, &[WPoly::one(ring)])?);
    for n in 1..=cap {
        let mut polys = Vec::new();
        for (g, &w) in gens.iter().zip(&weights) {
            if w <= n {
                for b in tower[(n - w) as usize].basis() {
                    polys.push(b.checked_mul(g)?);
                }
            }
        }
        tower.push(span_slice(ring, n, &polys)?);
    }
    Ok(tower)
}

/// `sum_i multipliers_i * anchors_i` at weight `n`.
pub fn module_slice<S: Field>(
    ring: &RingRef,
    n: u32,
    parts: &[(&SliceBasis<S>, &WPoly<S>)],
) -> Result<SliceBasis<S>, SliceError> {
    let mut polys = Vec::new();
    for (slice, anchor) in parts {
        if anchor.is_zero() {
            continue;
        }
        let w = anchor
            .homogeneous_weight()
            .ok_or_else(|| SliceError::Weight("anchor is not homogeneous".into()))?;
        if slice.weight() + w != n {
            return Err(SliceError::Weight(format!(
                "multiplier weight {} plus anchor weight {w} is not {n}",
                slice.weight()
            )));
        }
        for b in slice.basis() {
            polys.push(b.checked_mul(anchor)?);
        }
    }
    span_slice(ring, n, &polys)
}

/// Weight-`n` part of the ideal generated by homogeneous `gens`.
pub fn ideal_slice<S: Field>(ring: &RingRef, gens: &[WPoly<S>], n: u32) -> Result<SliceBasis<S>, SliceError> {
    let mut polys = Vec::new();
    for g in gens {
        let w = g
            .homogeneous_weight()
            .ok_or_else(|| SliceError::Weight("ideal generator is not homogeneous".into()))?;
        if w > n {
            continue;
        }
        for m in monomial_slice(ring, n - w) {
            polys.push(g.shift(&m));
        }
    }
    span_slice(ring, n, &polys)
}

/// Weight-`n` kernel of the homomorphism sending the `i`-th variable of
/// `domain` to `images[i]`.
pub fn kernel_slice<S: Field>(
    domain: &RingRef,
    images: &[WPoly<S>],
    n: u32,
) -> Result<SliceBasis<S>, SliceError> {
    if images.len() != domain.nvars() {
        return Err(PolyError::Arity { expected: domain.nvars(), got: images.len() }.into());
    }
    let target = images.first().map(|p| p.ring().clone()).ok_or(SliceError::Mismatch)?;
    for (img, w) in images.iter().zip(domain.weights()) {
        check_weight(img, *w)?;
    }
    let dom = Arc::new(monomial_slice(domain, n));
    let tgt = monomial_slice(&target, n);
    let mut powers: HashMap<(usize, u32), WPoly<S>> = HashMap::new();
    let mut rows = Vec::with_capacity(dom.len());
    for m in dom.iter() {
        let mut p = WPoly::one(&target);
        for (i, &e) in m.iter().enumerate() {
            if e > 0 {
                let pw = powers.entry((i, e)).or_insert_with(|| images[i].pow(e)).clone();
                p = p.checked_mul(&pw)?;
            }
        }
        rows.push(p.coordinates(&tgt)?);
    }
    let m = ExactMatrix::from_rows_with_cols(rows, tgt.len())?;
    SliceBasis::from_vectors(domain, n, dom, m.left_kernel())
}

/// Relation pairs `(a, b)` with `a * anchors.0 + b * anchors.1 = 0` in
/// weight `n`, as elements `a P0 + b P1` of the free module on `P0, P1`.
/// The returned slice lives in a ring with two extra variables `P0`, `P1`
/// weighted like the anchors, restricted to monomials linear in them.
pub fn syzygy_slice<S: Field>(
    anchors: (&WPoly<S>, &WPoly<S>),
    n: u32,
) -> Result<SliceBasis<S>, SliceError> {
    let (f0, f1) = anchors;
    if f0.ring() != f1.ring() {
        return Err(SliceError::Mismatch);
    }
    let base = f0.ring();
    let w0 = f0.homogeneous_weight().ok_or_else(|| SliceError::Weight("anchor must be homogeneous".into()))?;
    let w1 = f1.homogeneous_weight().ok_or_else(|| SliceError::Weight("anchor must be homogeneous".into()))?;
    let module = free_module_ring(base, w0, w1)?;
    let nv = base.nvars();
    let lift = |m: &Monomial, slot: usize| {
        let mut e = m.clone();
        e.extend([0, 0]);
        e[nv + slot] = 1;
        e
    };
    let a_mons = if n >= w0 { monomial_slice(base, n - w0) } else { Vec::new() };
    let b_mons = if n >= w1 { monomial_slice(base, n - w1) } else { Vec::new() };
    let ambient: Vec<Monomial> =
        a_mons.iter().map(|m| lift(m, 0)).chain(b_mons.iter().map(|m| lift(m, 1))).collect();
    let tgt = monomial_slice(base, n);
    let mut rows = Vec::with_capacity(ambient.len());
    for m in &a_mons {
        rows.push(f0.shift(m).coordinates(&tgt)?);
    }
    for m in &b_mons {
        rows.push(f1.shift(m).coordinates(&tgt)?);
    }
    let mat = ExactMatrix::from_rows_with_cols(rows, tgt.len())?;
    SliceBasis::from_vectors(&module, n, Arc::new(ambient), mat.left_kernel())
}

/// The base ring extended by module generators `P0`, `P1` of the given
/// weights.
pub fn free_module_ring(base: &WRing, w0: u32, w1: u32) -> Result<RingRef, SliceError> {
    let mut vars: Vec<&str> = base.vars().iter().map(String::as_str).collect();
    vars.extend(["P0", "P1"]);
    let mut weights = base.weights().to_vec();
    weights.extend([w0, w1]);
    Ok(WRing::new(&vars, &weights, base.mode())?)
}

/// Codimension of a graded subspace summed over weights `0..=cap`, with the
/// requirement that sub and ambient agree at every weight of the top window
/// `[cap - 2, cap]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodimReport {
    pub total: usize,
    pub per_weight: Vec<(u32, usize, usize)>,
    /// Smallest weight from which sub and ambient agree up to `cap`.
    pub stable_from: u32,
}

pub fn graded_codim<S: Field>(
    sub: &[SliceBasis<S>],
    ambient: &[SliceBasis<S>],
    cap: u32,
) -> Result<CodimReport, SliceError> {
    if sub.len() <= cap as usize || ambient.len() <= cap as usize {
        return Err(SliceError::Weight(format!("need slices for every weight up to {cap}")));
    }
    let mut total = 0;
    let mut per_weight = Vec::with_capacity(cap as usize + 1);
    for n in 0..=cap {
        let (s, a) = (&sub[n as usize], &ambient[n as usize]);
        if !s.is_subspace_of(a)? {
            return Err(SliceError::NotContained(n));
        }
        total += a.dim() - s.dim();
        per_weight.push((n, a.dim(), s.dim()));
    }
    for n in cap.saturating_sub(2)..=cap {
        let (_, a, s) = per_weight[n as usize];
        if a != s {
            return Err(SliceError::NotStabilized { weight: n, ambient: a, sub: s });
        }
    }
    let stable_from = per_weight
        .iter()
        .rev()
        .take_while(|(_, a, s)| a == s)
        .last()
        .map_or(cap, |(n, _, _)| *n);
    Ok(CodimReport { total, per_weight, stable_from })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Rational, ScalarMode};
    use crate::poly::Corpus;

    fn corpus() -> Corpus<Rational> {
        Corpus::new(ScalarMode::Concrete(5)).unwrap()
    }

    #[test]
    fn weight_eight_relation_rank() {
        let c = corpus();
        let g: Vec<_> = (2..=5).map(|s| c.poly(&format!("g{s}")).unwrap()).collect();
        let prods = vec![
            g[0].pow(4),
            &g[0] * &g[1].pow(2),
            &g[0].pow(2) * &g[2],
            g[2].pow(2),
            &g[1] * &g[3],
        ];
        let s = span_slice(c.ring_yz(), 8, &prods).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.ambient_dim(), 5);
    }

    #[test]
    fn span_basics() {
        let c = corpus();
        let r = c.ring_yz();
        let y: WPoly<Rational> = WPoly::var(r, 0);
        let z: WPoly<Rational> = WPoly::var(r, 1);
        let s = span_slice(r, 2, &[c.poly("g2").unwrap(), &y * &y, z.clone()]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(span_slice::<Rational>(r, 2, &[]).unwrap().dim(), 0);
        assert!(span_slice(r, 2, &[y.clone()]).is_err());
        assert!(s.contains(&WPoly::zero(r)).unwrap().is_member());
    }

    #[test]
    fn subalgebra_small_weights() {
        let c = corpus();
        let g: Vec<_> = (2..=5).map(|s| c.poly(&format!("g{s}")).unwrap()).collect();
        let r = c.ring_yz();
        assert_eq!(subalgebra_slice(r, &g, 0).unwrap().dim(), 1);
        assert_eq!(subalgebra_slice(r, &g, 1).unwrap().dim(), 0);
        assert_eq!(subalgebra_slice(r, &g, 5).unwrap().dim(), 2);
        let tower = subalgebra_tower(r, &g, 12).unwrap();
        for n in 0..=12 {
            assert_eq!(tower[n as usize], subalgebra_slice(r, &g, n).unwrap());
        }
    }

    #[test]
    fn syzygies_start_at_twice_level_plus_three() {
        let c = corpus();
        let (f0, f1) = (c.poly("f0").unwrap(), c.poly("f1").unwrap());
        assert_eq!(syzygy_slice((&f0, &f1), 12).unwrap().dim(), 0);
        assert_eq!(syzygy_slice((&f0, &f1), 13).unwrap().dim(), 1);
        assert_eq!(syzygy_slice((&f0, &f1), 15).unwrap().dim(), 2);
    }

    #[test]
    fn intersection_dimension() {
        let c = corpus();
        let r = c.ring_yz();
        let y: WPoly<Rational> = WPoly::var(r, 0);
        let z: WPoly<Rational> = WPoly::var(r, 1);
        let a = span_slice(r, 4, &[y.pow(4), &y * &(&y * &z)]).unwrap();
        let b = span_slice(r, 4, &[&y.pow(4) + &(&y * &(&y * &z)), z.pow(2)]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.is_subspace_of(&a).unwrap() && i.is_subspace_of(&b).unwrap());
    }
}
