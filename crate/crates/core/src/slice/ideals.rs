use std::fmt;

use rayon::prelude::*;

use super::{module_slice, subalgebra_tower, SliceBasis, SliceError};
use crate::arith::Field;
use crate::poly::{Corpus, WPoly};

/// The graded subspaces of ℂ[y, z] tracked per weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealSpace {
    /// ℂ[y, z] itself.
    Full,
    /// The subalgebra generated by g2..g5.
    A,
    /// The ideal of ℂ[y, z] generated by f0, f1.
    J,
    JCapA,
    /// The ideal of `A` generated by f0, f1.
    I2,
    /// `I2 + A f2`.
    I3,
    /// `I3 + A f3`.
    I4,
}

impl IdealSpace {
    pub const ALL: [IdealSpace; 7] = [
        IdealSpace::Full,
        IdealSpace::A,
        IdealSpace::J,
        IdealSpace::JCapA,
        IdealSpace::I2,
        IdealSpace::I3,
        IdealSpace::I4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdealSpace::Full => "C[y,z]",
            IdealSpace::A => "A",
            IdealSpace::J => "J",
            IdealSpace::JCapA => "J∩A",
            IdealSpace::I2 => "I2",
            IdealSpace::I3 => "I3",
            IdealSpace::I4 => "I4",
        }
    }
}

impl fmt::Display for IdealSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Weight slices `0..=cap` of every [`IdealSpace`] at one concrete level.
#[derive(Clone, Debug)]
pub struct IdealTower<S: Field> {
    cap: u32,
    f: Vec<WPoly<S>>,
    full: Vec<SliceBasis<S>>,
    a: Vec<SliceBasis<S>>,
    j: Vec<SliceBasis<S>>,
    j_cap_a: Vec<SliceBasis<S>>,
    i2: Vec<SliceBasis<S>>,
    i3: Vec<SliceBasis<S>>,
    i4: Vec<SliceBasis<S>>,
}

struct Layer<S: Field> {
    j: SliceBasis<S>,
    j_cap_a: SliceBasis<S>,
    i2: SliceBasis<S>,
    i3: SliceBasis<S>,
    i4: SliceBasis<S>,
}

impl<S: Field> IdealTower<S> {
    /// Builds every slice up to weight `cap`. Weights are processed in
    /// parallel once the subalgebra slices are known.
    pub fn build(corpus: &Corpus<S>, cap: u32) -> Result<Self, SliceError> {
        let ring = corpus.ring_yz().clone();
        let g: Vec<WPoly<S>> =
            (2..=5).map(|s| corpus.poly(&format!("g{s}"))).collect::<Result<_, _>>()?;
        let f: Vec<WPoly<S>> =
            (0..4).map(|r| corpus.poly(&format!("f{r}"))).collect::<Result<_, _>>()?;
        let fw: Vec<u32> = f
            .iter()
            .map(|p| p.homogeneous_weight().ok_or_else(|| SliceError::Weight("f_r is not homogeneous".into())))
            .collect::<Result<_, _>>()?;
        let full: Vec<SliceBasis<S>> = (0..=cap).map(|n| SliceBasis::full(&ring, n)).collect();
        let a = subalgebra_tower(&ring, &g, cap)?;

        let layers: Vec<Layer<S>> = (0..=cap)
            .into_par_iter()
            .map(|n| {
                let j = module_slice(&ring, n, &parts(&full, &f, &fw, n, 2))?;
                let j_cap_a = j.intersect(&a[n as usize])?;
                let i2 = module_slice(&ring, n, &parts(&a, &f, &fw, n, 2))?;
                let i3 = module_slice(&ring, n, &parts(&a, &f, &fw, n, 3))?;
                let i4 = module_slice(&ring, n, &parts(&a, &f, &fw, n, 4))?;
                Ok(Layer { j, j_cap_a, i2, i3, i4 })
            })
            .collect::<Result<_, SliceError>>()?;

        let mut t = IdealTower {
            cap,
            f,
            full,
            a,
            j: Vec::new(),
            j_cap_a: Vec::new(),
            i2: Vec::new(),
            i3: Vec::new(),
            i4: Vec::new(),
        };
        for l in layers {
            t.j.push(l.j);
            t.j_cap_a.push(l.j_cap_a);
            t.i2.push(l.i2);
            t.i3.push(l.i3);
            t.i4.push(l.i4);
        }
        Ok(t)
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// `f_0..f_3` as used for the ideals.
    pub fn f(&self) -> &[WPoly<S>] {
        &self.f
    }

    pub fn slices(&self, space: IdealSpace) -> &[SliceBasis<S>] {
        match space {
            IdealSpace::Full => &self.full,
            IdealSpace::A => &self.a,
            IdealSpace::J => &self.j,
            IdealSpace::JCapA => &self.j_cap_a,
            IdealSpace::I2 => &self.i2,
            IdealSpace::I3 => &self.i3,
            IdealSpace::I4 => &self.i4,
        }
    }

    pub fn slice(&self, space: IdealSpace, n: u32) -> &SliceBasis<S> {
        &self.slices(space)[n as usize]
    }

    pub fn dim(&self, space: IdealSpace, n: u32) -> usize {
        self.slice(space, n).dim()
    }
}

/// Multiplier slices paired with the first `upto` anchors at weight `n`.
fn parts<'a, S: Field>(
    base: &'a [SliceBasis<S>],
    f: &'a [WPoly<S>],
    fw: &[u32],
    n: u32,
    upto: usize,
) -> Vec<(&'a SliceBasis<S>, &'a WPoly<S>)> {
    f.iter()
        .zip(fw)
        .take(upto)
        .filter(|(_, &w)| w <= n)
        .map(|(p, &w)| (&base[(n - w) as usize], p))
        .collect()
}
