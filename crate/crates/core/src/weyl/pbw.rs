use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{Field, ScalarMode};

/// A basis element of sl₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    H,
    E,
    F,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::H, Letter::E, Letter::F];

    fn idx(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::H => 'h',
            Letter::E => 'e',
            Letter::F => 'f',
        }
    }

    /// Change of h(0)-eigenvalue caused by one mode of this letter.
    pub fn charge(self) -> i64 {
        match self {
            Letter::H => 0,
            Letter::E => 2,
            Letter::F => -2,
        }
    }

    /// `[self, other] = c * letter`, or `None` when the bracket vanishes.
    pub fn bracket(self, other: Letter) -> Option<(i64, Letter)> {
        use Letter::*;
        match (self, other) {
            (H, E) => Some((2, E)),
            (H, F) => Some((-2, F)),
            (E, F) => Some((1, H)),
            (E, H) => Some((-2, E)),
            (F, H) => Some((2, F)),
            (F, E) => Some((-1, H)),
            _ => None,
        }
    }

    /// The invariant form with `<h,h> = 2`, `<e,f> = <f,e> = 1`.
    pub fn form(self, other: Letter) -> i64 {
        use Letter::*;
        match (self, other) {
            (H, H) => 2,
            (E, F) | (F, E) => 1,
            _ => 0,
        }
    }
}

/// `h(-i_1)..h(-i_p) e(-j_1)..e(-j_q) f(-m_1)..f(-m_r) 1` with every
/// list non-increasing. The empty monomial is the vacuum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    modes: [Vec<u32>; 3],
}

impl PbwMonomial {
    pub fn vacuum() -> Self {
        PbwMonomial::default()
    }

    /// Sorts each list; zero depths are rejected.
    pub fn new(h: &[u32], e: &[u32], f: &[u32]) -> Option<Self> {
        let mut modes = [h.to_vec(), e.to_vec(), f.to_vec()];
        for m in modes.iter_mut() {
            if m.contains(&0) {
                return None;
            }
            m.sort_unstable_by(|a, b| b.cmp(a));
        }
        Some(PbwMonomial { modes })
    }

    pub fn modes(&self, a: Letter) -> &[u32] {
        &self.modes[a.idx()]
    }

    pub fn is_vacuum(&self) -> bool {
        self.modes.iter().all(Vec::is_empty)
    }

    pub fn len(&self) -> usize {
        self.modes.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_vacuum()
    }

    pub fn weight(&self) -> u32 {
        self.modes.iter().flatten().sum()
    }

    pub fn charge(&self) -> i64 {
        2 * (self.modes[1].len() as i64 - self.modes[2].len() as i64)
    }

    /// The leftmost creation mode as `(letter, depth)`.
    pub fn first(&self) -> Option<(Letter, u32)> {
        Letter::ALL
            .into_iter()
            .find_map(|a| self.modes[a.idx()].first().map(|&d| (a, d)))
    }

    /// The monomial with its leftmost mode removed.
    pub fn rest(&self) -> PbwMonomial {
        let mut out = self.clone();
        if let Some((a, _)) = self.first() {
            out.modes[a.idx()].remove(0);
        }
        out
    }

    /// Inserts `a(-depth)`. Only valid when no mode of a later letter
    /// stands in front, which callers guarantee.
    pub(crate) fn insert(&self, a: Letter, depth: u32) -> PbwMonomial {
        let mut out = self.clone();
        let list = &mut out.modes[a.idx()];
        let pos = list.iter().position(|&d| d < depth).unwrap_or(list.len());
        list.insert(pos, depth);
        out
    }

    /// True when every mode has depth 1.
    pub fn is_shallow(&self) -> bool {
        self.modes.iter().flatten().all(|&d| d == 1)
    }

    pub fn counts(&self) -> [u32; 3] {
        [self.modes[0].len() as u32, self.modes[1].len() as u32, self.modes[2].len() as u32]
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in Letter::ALL {
            let list = &self.modes[a.idx()];
            let mut i = 0;
            while i < list.len() {
                let d = list[i];
                let run = list[i..].iter().take_while(|&&x| x == d).count();
                write!(f, "{}(-{d})", a.symbol())?;
                if run > 1 {
                    write!(f, "^{run}")?;
                }
                i += run;
            }
        }
        f.write_str("1")
    }
}

/// A finite linear combination of PBW monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwVector<S: Field> {
    mode: ScalarMode,
    terms: BTreeMap<PbwMonomial, S>,
}

impl<S: Field> PbwVector<S> {
    pub fn zero(mode: ScalarMode) -> Self {
        PbwVector { mode, terms: BTreeMap::new() }
    }

    pub fn vacuum(mode: ScalarMode) -> Self {
        Self::monomial(mode, PbwMonomial::vacuum(), S::one())
    }

    pub fn monomial(mode: ScalarMode, m: PbwMonomial, c: S) -> Self {
        let mut v = Self::zero(mode);
        v.add_term(m, &c);
        v
    }

    pub fn from_terms(mode: ScalarMode, terms: impl IntoIterator<Item = (PbwMonomial, S)>) -> Self {
        let mut v = Self::zero(mode);
        for (m, c) in terms {
            v.add_term(m, &c);
        }
        v
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn terms(&self) -> &BTreeMap<PbwMonomial, S> {
        &self.terms
    }

    pub fn coeff(&self, m: &PbwMonomial) -> S {
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

    pub fn add_term(&mut self, m: PbwMonomial, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.add(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &PbwVector<S>, c: &S) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), &x.mul(c));
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.mode);
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one().neg());
        out
    }

    /// The common weight of all terms, if there is one.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(PbwMonomial::weight);
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    /// The common h(0)-eigenvalue of all terms, if there is one.
    pub fn homogeneous_charge(&self) -> Option<i64> {
        let mut cs = self.terms.keys().map(PbwMonomial::charge);
        let c = cs.next()?;
        cs.all(|x| x == c).then_some(c)
    }
}

impl<S: Field> fmt::Display for PbwVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|(a, _), (b, _)| b.weight().cmp(&a.weight()).then(a.cmp(b)));
        for (i, (m, c)) in sorted.into_iter().enumerate() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', ' ']) => (true, rest.to_string()),
                _ => (false, s),
            };
            let body = if body.contains(['+', ' ', '-']) { format!("({body})") } else { body };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if body == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{body}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    #[test]
    fn monomial_bookkeeping() {
        let m = PbwMonomial::new(&[1, 2], &[1, 1], &[3]).unwrap();
        assert_eq!(m.modes(Letter::H), &[2, 1]);
        assert_eq!(m.weight(), 8);
        assert_eq!(m.charge(), 2);
        assert_eq!(m.first(), Some((Letter::H, 2)));
        assert_eq!(m.rest().first(), Some((Letter::H, 1)));
        assert_eq!(m.to_string(), "h(-2)h(-1)e(-1)^2f(-3)1");
        assert!(PbwMonomial::new(&[0], &[], &[]).is_none());
    }

    #[test]
    fn cancellation_removes_terms() {
        let mode = ScalarMode::Concrete(3);
        let m = PbwMonomial::new(&[2], &[], &[]).unwrap();
        let v = PbwVector::monomial(mode, m, Rational::from(3));
        assert!(v.sub(&v).is_zero());
        assert_eq!(v.scale(&Rational::from(-1)).to_string(), "-3*h(-2)1");
    }
}
