//! Exponent multi-indices of ordered parafermion monomials.
//!
//! An [`ExponentVector`] `(n_1, ..., n_L)` labels the monomial
//! `c_1^{n_1} c_2^{n_2} ... c_L^{n_L}` with every exponent reduced mod `n`.
//! Sites are numbered `1..=L` in the public API. The left half
//! `1..=L/2` is the minus side of the reflection plane, `L/2+1..=L` the plus side.
//!
//! Sign convention for [`ExponentVector::circ`]: the sum runs over pairs whose
//! *left* factor sits on the strictly larger site,
//! `I ∘ I' = Σ_{j > j'} n_j n'_{j'}`. With this choice
//! `C_I C_I' = ω^{-(I∘I')} C_{I+I'}` agrees with the matrix representation
//! (for example `c_2 c_1 = ω^{-1} c_1 c_2`). The opposite ordering of the
//! indices would give `ω^0` for that product. For `I ⊂ Λ+` and `I' ⊂ Λ-`
//! this makes `I ∧ I' = +|I||I'|`; written with the other ordering convention
//! the same quantity reads `-|I||I'|`.

use std::fmt;

use crate::error::{Error, Result};

/// Which half of the chain the non-zero entries of a vector occupy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    /// The zero vector.
    Empty,
    Minus,
    Plus,
    /// Non-zero entries on both sides of the cut.
    Crossing,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    order: u32,
    entries: Vec<u32>,
}

pub(crate) fn check_order_sites(order: u32, sites: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::InvalidParameters(format!(
            "order n must be at least 2, got {order}"
        )));
    }
    if sites < 2 || !sites.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!(
            "number of sites L must be even and at least 2, got {sites}"
        )));
    }
    Ok(())
}

impl ExponentVector {
    pub fn new(order: u32, entries: Vec<u32>) -> Result<Self> {
        check_order_sites(order, entries.len())?;
        if let Some((j, &e)) = entries.iter().enumerate().find(|(_, &e)| e >= order) {
            return Err(Error::Domain(format!(
                "exponent {e} at site {} is outside 0..={}",
                j + 1,
                order - 1
            )));
        }
        Ok(Self { order, entries })
    }

    /// Builds a vector from arbitrary integers, reducing each entry mod `n`.
    pub fn reduced(order: u32, entries: &[i64]) -> Result<Self> {
        check_order_sites(order, entries.len())?;
        let n = order as i64;
        Ok(Self {
            order,
            entries: entries.iter().map(|e| e.rem_euclid(n) as u32).collect(),
        })
    }

    pub fn zero(order: u32, sites: usize) -> Result<Self> {
        check_order_sites(order, sites)?;
        Ok(Self {
            order,
            entries: vec![0; sites],
        })
    }

    /// `c_site^power` as an exponent vector; `site` is 1-based.
    pub fn unit(order: u32, sites: usize, site: usize, power: u32) -> Result<Self> {
        let mut v = Self::zero(order, sites)?;
        if site == 0 || site > sites {
            return Err(Error::Domain(format!("site {site} outside 1..={sites}")));
        }
        v.entries[site - 1] = power % order;
        Ok(v)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn sites(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Exponent at a 1-based site.
    pub fn get(&self, site: usize) -> u32 {
        self.entries[site - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Total degree `Σ n_j`, not reduced mod `n`.
    pub fn degree(&self) -> u64 {
        self.entries.iter().map(|&e| e as u64).sum()
    }

    /// Globally gauge invariant: total degree divisible by `n`.
    pub fn is_observable(&self) -> bool {
        self.degree().is_multiple_of(self.order as u64)
    }

    pub fn support(&self) -> Support {
        let half = self.sites() / 2;
        let minus = self.entries[..half].iter().any(|&e| e != 0);
        let plus = self.entries[half..].iter().any(|&e| e != 0);
        match (minus, plus) {
            (false, false) => Support::Empty,
            (true, false) => Support::Minus,
            (false, true) => Support::Plus,
            (true, true) => Support::Crossing,
        }
    }

    /// True when the vector is zero on `Λ+` (the empty vector included).
    pub fn on_minus(&self) -> bool {
        matches!(self.support(), Support::Minus | Support::Empty)
    }

    pub fn on_plus(&self) -> bool {
        matches!(self.support(), Support::Plus | Support::Empty)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.order != other.order || self.sites() != other.sites() {
            return Err(Error::DimensionMismatch {
                expected_order: self.order,
                expected_sites: self.sites(),
                found_order: other.order,
                found_sites: other.sites(),
            });
        }
        Ok(())
    }

    /// Componentwise sum mod `n`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let n = self.order;
        Self {
            order: n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| (a + b) % n)
                .collect(),
        }
    }

    /// `Σ_{j > j'} n_j n'_{j'}`.
    pub fn circ(&self, other: &Self) -> Result<u64> {
        self.check_same(other)?;
        Ok(self.circ_unchecked(other))
    }

    pub(crate) fn circ_unchecked(&self, other: &Self) -> u64 {
        // prefix[j] = Σ_{j' < j} n'_{j'}
        let mut prefix = 0u64;
        let mut total = 0u64;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            total += *a as u64 * prefix;
            prefix += *b as u64;
        }
        total
    }

    /// `I ∧ I' = I∘I' − I'∘I`.
    pub fn wedge(&self, other: &Self) -> Result<i64> {
        self.check_same(other)?;
        Ok(self.circ_unchecked(other) as i64 - other.circ_unchecked(self) as i64)
    }

    /// `(n − n_j) mod n` in every entry, so zeros stay zero.
    pub fn complement(&self) -> Self {
        let n = self.order;
        Self {
            order: n,
            entries: self.entries.iter().map(|&e| (n - e) % n).collect(),
        }
    }

    /// Site reversal `j ↦ L − j + 1`.
    pub fn reflect(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        Self {
            order: self.order,
            entries,
        }
    }

    /// Every exponent vector for `(n, L)`, in lexicographic order.
    pub fn all(order: u32, sites: usize) -> Result<impl Iterator<Item = ExponentVector>> {
        check_order_sites(order, sites)?;
        Ok(OdometerIter::new(order, sites, sites))
    }

    /// Every exponent vector supported on `Λ-`, the zero vector included.
    pub fn all_minus(order: u32, sites: usize) -> Result<impl Iterator<Item = ExponentVector>> {
        check_order_sites(order, sites)?;
        Ok(OdometerIter::new(order, sites, sites / 2))
    }

    /// Observables supported on `Λ-`: minus-side vectors whose degree is a
    /// multiple of `n`. These monomials span `𝔄-^n`.
    pub fn minus_observables(order: u32, sites: usize) -> Result<Vec<ExponentVector>> {
        Ok(Self::all_minus(order, sites)?.filter(|v| v.is_observable()).collect())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Counts through all vectors whose first `free` entries range over `0..n`
/// and whose remaining entries are zero.
struct OdometerIter {
    order: u32,
    free: usize,
    current: Option<Vec<u32>>,
}

impl OdometerIter {
    fn new(order: u32, sites: usize, free: usize) -> Self {
        Self {
            order,
            free,
            current: Some(vec![0; sites]),
        }
    }
}

impl Iterator for OdometerIter {
    type Item = ExponentVector;

    fn next(&mut self) -> Option<ExponentVector> {
        let cur = self.current.take()?;
        let out = ExponentVector {
            order: self.order,
            entries: cur.clone(),
        };
        let mut next = cur;
        let mut pos = self.free;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            next[pos] += 1;
            if next[pos] < self.order {
                self.current = Some(next);
                break;
            }
            next[pos] = 0;
        }
        Some(out)
    }
}
