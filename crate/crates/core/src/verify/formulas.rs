//! Closed-form dimension counts, used as oracles for the computed slices.

use crate::slice::IdealSpace;

/// `dim C[y,z]_(n)`.
pub fn dim_full(n: u32) -> usize {
    (n / 2 + 1) as usize
}

/// `dim A_(n)`.
pub fn dim_a(n: u32) -> usize {
    match n {
        0 => 1,
        1 => 0,
        _ => (n / 2) as usize,
    }
}

/// `dim J_(n)`.
pub fn dim_j(k: u32, n: u32) -> usize {
    if n <= k {
        0
    } else if n <= 2 * k + 2 {
        (n - k) as usize
    } else {
        dim_full(n)
    }
}

/// `dim (J ∩ A)_(n)`.
pub fn dim_j_cap_a(k: u32, n: u32) -> usize {
    if n <= k {
        0
    } else if n == k + 1 {
        1
    } else if n <= 2 * k + 2 {
        (n - k - 1) as usize
    } else {
        dim_a(n)
    }
}

/// `dim I2_(n)`.
pub fn dim_i2(k: u32, n: u32) -> usize {
    if n <= k {
        0
    } else if n <= k + 2 {
        1
    } else if n <= 2 * k + 2 {
        (n - k - 2) as usize
    } else if n == 2 * k + 3 {
        k as usize
    } else {
        dim_a(n)
    }
}

/// `dim I3_(n)`: one more than `I2` at `k+3` and on `k+5..=2k+3`.
pub fn dim_i3(k: u32, n: u32) -> usize {
    let bump = n == k + 3 || (k + 5..=2 * k + 3).contains(&n);
    dim_i2(k, n) + usize::from(bump)
}

/// `dim I4_(n)`: `I3` plus the line spanned by `f3` at weight `k+4`.
pub fn dim_i4(k: u32, n: u32) -> usize {
    dim_i3(k, n) + usize::from(n == k + 4)
}

pub fn dim_space(space: IdealSpace, k: u32, n: u32) -> usize {
    match space {
        IdealSpace::Full => dim_full(n),
        IdealSpace::A => dim_a(n),
        IdealSpace::J => dim_j(k, n),
        IdealSpace::JCapA => dim_j_cap_a(k, n),
        IdealSpace::I2 => dim_i2(k, n),
        IdealSpace::I3 => dim_i3(k, n),
        IdealSpace::I4 => dim_i4(k, n),
    }
}

/// Total codimensions: `C[y,z]/J`, `A/I2`, `A/I3`, `A/I4`.
pub fn codim_j(k: u32) -> usize {
    ((k + 1) * (k + 2) / 2) as usize
}

pub fn codim_i2(k: u32) -> usize {
    codim_j(k)
}

pub fn codim_i3(k: u32) -> usize {
    (k * (k + 1) / 2 + 1) as usize
}

pub fn codim_i4(k: u32) -> usize {
    (k * (k + 1) / 2) as usize
}

/// Weight-`n` relations among `f0, f1`.
pub fn dim_syzygy(k: u32, n: u32) -> usize {
    if n <= 2 * k + 2 {
        0
    } else {
        ((n - 2 * k - 3) / 2 + 1) as usize
    }
}

/// `dim C[y,z]_(n-k-1) P0 + C[y,z]_(n-k-2) P1`.
pub fn dim_free(k: u32, n: u32) -> usize {
    let part = |d: i64| if d >= 0 { d as usize / 2 + 1 } else { 0 };
    part(n as i64 - k as i64 - 1) + part(n as i64 - k as i64 - 2)
}

/// Charge-zero part of the C₂-algebra of the simple quotient at weight `n`.
pub fn dim_rlh(k: u32, n: u32) -> usize {
    if n <= k {
        dim_full(n)
    } else if n <= 2 * k {
        (n / 2 + 1 + k - n) as usize
    } else {
        0
    }
}

/// Number of `y0^p y1^q y2^r` with `r <= k`, `p + r <= k`, `p + q <= k`.
pub fn rl_basis_count(k: u32) -> usize {
    ((k + 1) * (k + 2) * (2 * k + 3) / 6) as usize
}
