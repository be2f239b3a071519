//! `f(c^j) = Tr(c^j ϑ(c^j) e^{-H})` for `L = 2` and `H = ζ c ϑ(c)`.
//!
//! Positivity fails for a single generator: `f(c) = ζ^{n-1} S_n n` with
//! `S_n = Σ_{ℓ≥1} 1/(ℓn − 1)!`, which is `sinh 1` only for `n = 2`.

use num_complex::Complex64;
use serde::Serialize;

use super::TraceFunctional;
use crate::algebra::{PhaseExponent, Polynomial};
use crate::error::{Error, Result};
use crate::exponents::ExponentVector;
use crate::hamiltonian::{CouplingTable, HamiltonianSpec};
use crate::representation::{Representation, DIMENSION_CAP};

/// Absolute tolerance on `Re f ≥ 0` and `|Im f| = 0`.
pub const FAMILY_TOLERANCE: f64 = 1e-9;

/// `H = H0 = ζ c_1 ϑ(c_1)` on two sites.
pub fn single_bond_spec(order: u32) -> Result<HamiltonianSpec> {
    let table = CouplingTable::from_entries(order, 2, [(ExponentVector::unit(order, 2, 1, 1)?, 1.0)])?;
    HamiltonianSpec::assemble(Polynomial::zero(order, 2)?, table)
}

/// `f(c^j)` by exact matrices. `j = 0` and `j = n` both give the partition
/// function.
pub fn counterexample_f(order: u32, j: u32) -> Result<Complex64> {
    if j > order {
        return Err(Error::Domain(format!("power j={j} outside 0..={order}")));
    }
    let rep = Representation::new(order, 2)?;
    let spec = single_bond_spec(order)?;
    let c = ExponentVector::unit(order, 2, 1, j % order)?;
    let a = Polynomial::monomial(c);
    TraceFunctional::for_spec(&spec, &rep)?.evaluate(&a, &a)
}

/// `S_n = Σ_{ℓ≥1} 1/(ℓn − 1)!`, summed until terms drop below `1e-18`.
pub fn series_sum(order: u32) -> f64 {
    let mut total = 0.0;
    let mut term = 1.0; // 1/m! for m = 0
    let mut m = 0u64;
    loop {
        m += 1;
        term /= m as f64;
        if (m + 1).is_multiple_of(order as u64) {
            total += term;
        }
        if term < 1e-18 {
            break;
        }
    }
    total
}

/// `ζ^{n-1} S_n n`.
pub fn counterexample_closed_form(order: u32) -> Complex64 {
    PhaseExponent::zeta_pow(order, order as i64 - 1).to_complex() * (series_sum(order) * order as f64)
}

/// The three `(n, j)` families on which `f(c^j)` is asserted positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    /// `n = k³`, `j = k²`
    Cube,
    /// `n = 2k²`, `j = 2kj'` with `1 ≤ j' < k`
    TwiceSquare,
    /// `n = k²`, `j = j'k` with `k` odd and `1 ≤ j' < k`
    OddSquare,
}

impl Family {
    pub fn from_index(i: u32) -> Result<Self> {
        match i {
            1 => Ok(Family::Cube),
            2 => Ok(Family::TwiceSquare),
            3 => Ok(Family::OddSquare),
            _ => Err(Error::InvalidParameters(format!("family must be 1, 2 or 3, got {i}"))),
        }
    }

    pub fn index(self) -> u32 {
        match self {
            Family::Cube => 1,
            Family::TwiceSquare => 2,
            Family::OddSquare => 3,
        }
    }

    /// `(n, j)` for parameters `k` and `j'` (ignored by the cube family).
    pub fn pair(self, k: u32, jprime: u32) -> Result<(u32, u32)> {
        let bad = |why: &str| Err(Error::InvalidParameters(format!("family {}: {why}", self.index())));
        let (n, j) = match self {
            Family::Cube => {
                if k < 2 {
                    return bad("k must be at least 2");
                }
                (k.checked_pow(3), k * k)
            }
            Family::TwiceSquare => {
                if jprime < 1 || jprime >= k {
                    return bad("need 1 ≤ j' < k");
                }
                (k.checked_mul(k).and_then(|x| x.checked_mul(2)), 2 * k * jprime)
            }
            Family::OddSquare => {
                if k.is_multiple_of(2) {
                    return bad("k must be odd");
                }
                if jprime < 1 || jprime >= k {
                    return bad("need 1 ≤ j' < k");
                }
                (k.checked_mul(k), jprime * k)
            }
        };
        match n {
            Some(n) if n as usize <= DIMENSION_CAP => Ok((n, j)),
            _ => Err(Error::Resource {
                what: format!("family {} order", self.index()),
                required: (k as u128).pow(3).max(2 * (k as u128).pow(2)),
                cap: DIMENSION_CAP as u128,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairValue {
    pub n: u32,
    pub j: u32,
    pub value: Complex64,
    pub positive: bool,
}

fn is_positive(value: Complex64) -> bool {
    value.re >= -FAMILY_TOLERANCE && value.im.abs() <= FAMILY_TOLERANCE
}

pub fn family_check(family: Family, k: u32, jprime: u32) -> Result<PairValue> {
    let (n, j) = family.pair(k, jprime)?;
    let value = counterexample_f(n, j)?;
    Ok(PairValue {
        n,
        j,
        value,
        positive: is_positive(value),
    })
}

/// `f(c^j)` for every `2 ≤ n ≤ max_order`, `1 ≤ j < n`. Exploratory only.
pub fn scan_pairs(max_order: u32) -> Result<Vec<PairValue>> {
    let mut out = Vec::new();
    for n in 2..=max_order {
        for j in 1..n {
            let value = counterexample_f(n, j)?;
            out.push(PairValue {
                n,
                j,
                value,
                positive: is_positive(value),
            });
        }
    }
    Ok(out)
}
