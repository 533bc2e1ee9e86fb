use std::fmt;
use std::sync::Arc;

use super::PolyError;
use crate::arith::ScalarMode;

/// Exponent vector, one entry per ring variable.
pub type Monomial = Vec<u32>;

pub type RingRef = Arc<WRing>;

/// A polynomial ring with named variables of positive integer weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WRing {
    vars: Vec<String>,
    weights: Vec<u32>,
    mode: ScalarMode,
}

impl WRing {
    pub fn new(vars: &[&str], weights: &[u32], mode: ScalarMode) -> Result<RingRef, PolyError> {
        if vars.len() != weights.len() {
            return Err(PolyError::InvalidRing(format!(
                "{} variables but {} weights",
                vars.len(),
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(PolyError::InvalidRing(format!("variable {} has weight 0", vars[i])));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(PolyError::InvalidRing(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(WRing {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            weights: weights.to_vec(),
            mode,
        }))
    }

    /// ℂ[y, z] with weights 1 and 2.
    pub fn yz(mode: ScalarMode) -> RingRef {
        Self::new(&["y", "z"], &[1, 2], mode).expect("valid ring")
    }

    /// ℂ[y0, y1, y2], all of weight 1.
    pub fn y012(mode: ScalarMode) -> RingRef {
        Self::new(&["y0", "y1", "y2"], &[1, 1, 1], mode).expect("valid ring")
    }

    /// Abstract generators `x2..x5` of weights 2..5.
    pub fn x2345(mode: ScalarMode) -> RingRef {
        Self::new(&["x2", "x3", "x4", "x5"], &[2, 3, 4, 5], mode).expect("valid ring")
    }

    /// Abstract generators `t2..t5` of weights 2..5.
    pub fn t2345(mode: ScalarMode) -> RingRef {
        Self::new(&["t2", "t3", "t4", "t5"], &[2, 3, 4, 5], mode).expect("valid ring")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn monomial_weight(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    /// The same variables over another scalar mode.
    pub fn with_mode(&self, mode: ScalarMode) -> RingRef {
        Arc::new(WRing { mode, ..self.clone() })
    }

    /// All monomials of weight `n`, lexicographically descending in the
    /// declared variable order.
    pub fn monomials_of_weight(&self, n: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.nvars()];
        self.fill(0, n, &mut cur, &mut out);
        out
    }

    fn fill(&self, i: usize, rem: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = self.weights[i];
        for e in (0..=rem / w).rev() {
            cur[i] = e;
            self.fill(i + 1, rem - e * w, cur, out);
        }
        cur[i] = 0;
    }

    pub fn format_monomial(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(&self.vars)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for WRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> =
            self.vars.iter().zip(&self.weights).map(|(v, w)| format!("{v}:{w}")).collect();
        write!(f, "Q[{}] ({})", vs.join(", "), self.mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_rings() {
        let m = ScalarMode::Concrete(5);
        assert!(WRing::new(&["y"], &[0], m).is_err());
        assert!(WRing::new(&["y", "y"], &[1, 1], m).is_err());
        assert!(WRing::new(&["y"], &[1, 2], m).is_err());
    }

    #[test]
    fn monomials_in_order() {
        let r = WRing::yz(ScalarMode::Concrete(5));
        assert_eq!(r.monomials_of_weight(5), vec![vec![5, 0], vec![3, 1], vec![1, 2]]);
        assert_eq!(r.monomials_of_weight(0), vec![vec![0, 0]]);
        assert_eq!(WRing::y012(ScalarMode::Symbolic).monomials_of_weight(2).len(), 6);
    }
}
