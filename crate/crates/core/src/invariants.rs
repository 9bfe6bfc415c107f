//! Closed-form integer invariants.
//!
//! Everything here is integer arithmetic; overflow is reported as an
//! [`Error::InvalidParameter`] rather than wrapping.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters `(m, n)` of the Wall manifold `Q(m,n)`, of dimension `m + 2n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WallParams {
    m: u64,
    n: u64,
}

impl WallParams {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        // dim and every derived quantity must fit in u64
        n.checked_mul(2)
            .and_then(|x| x.checked_add(m))
            .and_then(|x| x.checked_add(1))
            .ok_or_else(|| Error::InvalidParameter(format!("dimension of Q({m},{n}) overflows")))?;
        Ok(Self { m, n })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `dim Q(m,n) = m + 2n + 1`.
    pub fn dim(&self) -> u64 {
        self.m + 2 * self.n + 1
    }

    /// `ν(n+1)`.
    pub fn nu(&self) -> u32 {
        (self.n + 1).trailing_zeros()
    }

    /// Number of constructed line fields, `2ν(n+1) + m + 1`.
    pub fn delta(&self) -> u64 {
        pspan_wall(*self)
    }
}

/// 2-adic valuation: the largest `e` with `2^e | k`.
pub fn nu(k: u64) -> Result<u32> {
    if k == 0 {
        return Err(Error::InvalidParameter("2-adic valuation of 0 is undefined".into()));
    }
    Ok(k.trailing_zeros())
}

/// `pspan(Q(m,n)) = 2ν(n+1) + m + 1`.
pub fn pspan_wall(p: WallParams) -> u64 {
    2 * u64::from(p.nu()) + p.m + 1
}

/// Stable span of `CP^n`, `2ν(n+1)`.
pub fn sspan_cpn(n: u64) -> Result<u64> {
    let k = n
        .checked_add(1)
        .ok_or_else(|| Error::InvalidParameter("n + 1 overflows".into()))?;
    Ok(2 * u64::from(nu(k)?))
}

/// Upper bound from the fibration `CP^n → Q(m,n) → Q(m,0)`:
/// stable span of the fibre plus the dimension `m + 1` of the base.
pub fn upper_bound_fibration(p: WallParams) -> u64 {
    // n + 1 cannot overflow: WallParams::new checked 2n + m + 1
    let fibre = 2 * u64::from(p.nu());
    let base_dim = p.m + 1;
    fibre + base_dim
}

/// Hurwitz–Radon number: for `n = 2^{4a+b} · odd` with `0 ≤ b ≤ 3`,
/// `ρ(n) = 8a + 2^b`. `ρ(n) − 1` is the span of `S^{n−1}`.
pub fn hurwitz_radon(n: u64) -> Result<u64> {
    let e = nu(n)?;
    let (a, b) = (e / 4, e % 4);
    Ok(8 * u64::from(a) + (1u64 << b))
}

/// Lower bound `k(k−1)/2` on the projective span of the real flag manifold
/// `F(1,…,1,n−k)` coming from the splitting of its tangent bundle into line
/// bundles.
pub fn flag_lower_bound(k: u64) -> Result<u64> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("flag bound needs k >= 2, got {k}")));
    }
    // k(k-1) is even; divide first to avoid overflow where possible
    let (x, y) = if k.is_multiple_of(2) { (k / 2, k - 1) } else { (k, (k - 1) / 2) };
    x.checked_mul(y)
        .ok_or_else(|| Error::InvalidParameter(format!("binomial({k},2) overflows")))
}
