//! Normal-ordered parafermion polynomials.
//!
//! A [`Polynomial`] is a finite sum `Σ a_I C_I` over ordered monomials
//! `C_I = c_1^{n_1} ... c_L^{n_L}`. Every operation returns the result in
//! this ascending-site normal form, so two polynomials denote the same
//! operator exactly when their term maps agree.
//!
//! Root-of-unity factors produced while reordering are accumulated as
//! integer exponents of `ζ = ω^{1/2}` ([`PhaseExponent`]) and converted to a
//! complex number once per term.

mod phase;
mod text;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;

pub use phase::{expansion_phase, PhaseExponent};

use crate::error::{Error, Result};
use crate::exponents::{check_order_sites, ExponentVector, Support};

/// Coefficients smaller than this fraction of the operands' scale are
/// treated as cancellation residue and dropped.
const PRUNE_RELATIVE: f64 = 1e-14;

/// Default tolerance for [`Polynomial::approx_eq`].
pub const COEFFICIENT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub coefficient: Complex64,
    pub exponents: ExponentVector,
}

impl Monomial {
    pub fn new(coefficient: Complex64, exponents: ExponentVector) -> Self {
        Self { coefficient, exponents }
    }

    pub fn unit(exponents: ExponentVector) -> Self {
        Self::new(Complex64::new(1.0, 0.0), exponents)
    }
}

/// `C_I C_I' = ω^{-(I∘I')} C_{I+I'}`.
pub fn canonical_product(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    let circ = a.exponents.circ(&b.exponents)?;
    let order = a.exponents.order();
    let phase = PhaseExponent::omega_pow(order, -(circ as i64));
    Ok(Monomial::new(
        a.coefficient * b.coefficient * phase.to_complex(),
        a.exponents.add_unchecked(&b.exponents),
    ))
}

/// Phase and exponents of the product `C_I ϑ(C_I)`.
pub(crate) fn monomial_times_reflection(exps: &ExponentVector) -> (PhaseExponent, ExponentVector) {
    let order = exps.order();
    let reflected = exps.complement().reflect();
    // ϑ(C_I) = ω^{-(I∘I)} C_{ϑI^c}, then reorder the product
    let circ = exps.circ_unchecked(exps) + exps.circ_unchecked(&reflected);
    (
        PhaseExponent::omega_pow(order, -((circ % order as u64) as i64)),
        exps.add_unchecked(&reflected),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Scalar,
    Minus,
    Plus,
    Crossing,
}

/// Membership of a polynomial in the subalgebras `𝔄±` and `𝔄^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SideClass {
    pub side: Side,
    /// Every term has degree divisible by `n`.
    pub observable: bool,
}

impl SideClass {
    /// In `𝔄-^n`: minus side (or scalar) and gauge invariant.
    pub fn is_minus_observable(&self) -> bool {
        self.observable && matches!(self.side, Side::Minus | Side::Scalar)
    }

    pub fn is_plus_observable(&self) -> bool {
        self.observable && matches!(self.side, Side::Plus | Side::Scalar)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    order: u32,
    sites: usize,
    terms: BTreeMap<ExponentVector, Complex64>,
}

impl Polynomial {
    pub fn zero(order: u32, sites: usize) -> Result<Self> {
        check_order_sites(order, sites)?;
        Ok(Self {
            order,
            sites,
            terms: BTreeMap::new(),
        })
    }

    pub fn scalar(order: u32, sites: usize, value: Complex64) -> Result<Self> {
        let mut p = Self::zero(order, sites)?;
        if value != Complex64::new(0.0, 0.0) {
            p.terms.insert(ExponentVector::zero(order, sites)?, value);
        }
        Ok(p)
    }

    pub fn identity(order: u32, sites: usize) -> Result<Self> {
        Self::scalar(order, sites, Complex64::new(1.0, 0.0))
    }

    /// The generator `c_site` (1-based).
    pub fn generator(order: u32, sites: usize, site: usize) -> Result<Self> {
        Ok(Self::monomial(ExponentVector::unit(order, sites, site, 1)?))
    }

    /// `C_I` with unit coefficient.
    pub fn monomial(exponents: ExponentVector) -> Self {
        Self::from_monomial(Monomial::unit(exponents))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        let (order, sites) = (m.exponents.order(), m.exponents.sites());
        if m.coefficient != Complex64::new(0.0, 0.0) {
            terms.insert(m.exponents, m.coefficient);
        }
        Self { order, sites, terms }
    }

    /// Sums the given terms; repeated exponent vectors are merged and exact
    /// zeros dropped.
    pub fn from_terms<I>(order: u32, sites: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Complex64)>,
    {
        let mut p = Self::zero(order, sites)?;
        for (exps, c) in terms {
            p.check_vector(&exps)?;
            *p.terms.entry(exps).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        p.terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(p)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Complex64)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(e, c)| Monomial::new(*c, e.clone()))
    }

    pub fn coefficient(&self, exps: &ExponentVector) -> Complex64 {
        self.terms.get(exps).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `Σ |a_I|`.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.order != other.order || self.sites != other.sites {
            return Err(Error::DimensionMismatch {
                expected_order: self.order,
                expected_sites: self.sites,
                found_order: other.order,
                found_sites: other.sites,
            });
        }
        Ok(())
    }

    fn check_vector(&self, exps: &ExponentVector) -> Result<()> {
        if exps.order() != self.order || exps.sites() != self.sites {
            return Err(Error::DimensionMismatch {
                expected_order: self.order,
                expected_sites: self.sites,
                found_order: exps.order(),
                found_sites: exps.sites(),
            });
        }
        Ok(())
    }

    fn empty_like(&self) -> Self {
        Self {
            order: self.order,
            sites: self.sites,
            terms: BTreeMap::new(),
        }
    }

    fn prune(&mut self, scale: f64) {
        let cutoff = PRUNE_RELATIVE * scale;
        self.terms.retain(|_, c| c.norm() > cutoff);
    }

    /// Drops every term with `|a_I| ≤ cutoff`.
    pub fn truncate(&self, cutoff: f64) -> Self {
        let mut out = self.clone();
        out.terms.retain(|_, c| c.norm() > cutoff);
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let scale = self.max_abs_coefficient().max(other.max_abs_coefficient());
        let mut out = self.clone();
        for (e, c) in &other.terms {
            *out.terms.entry(e.clone()).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        out.prune(scale);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.empty_like();
        if factor != Complex64::new(0.0, 0.0) {
            out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect();
        }
        out
    }

    /// Normal-ordered product, extended bilinearly from
    /// [`canonical_product`].
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.empty_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let circ = e1.circ_unchecked(e2);
                let phase = PhaseExponent::omega_pow(self.order, -((circ % self.order as u64) as i64));
                *out.terms
                    .entry(e1.add_unchecked(e2))
                    .or_insert(Complex64::new(0.0, 0.0)) += c1 * c2 * phase.to_complex();
            }
        }
        out.prune(self.max_abs_coefficient() * other.max_abs_coefficient());
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.order, self.sites).expect("validated shape");
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same shape");
        }
        acc
    }

    /// Hermitian adjoint: `C_I* = ω^{-(I∘I)} C_{I^c}`.
    pub fn adjoint(&self) -> Self {
        self.map_terms(|e, c| {
            let phase = self_circ_phase(e);
            (e.complement(), c.conj() * phase.to_complex())
        })
    }

    /// The anti-linear reflection automorphism `ϑ(c_i) = c_{L-i+1}^{n-1}`,
    /// acting as `ϑ(C_I) = ω^{-(I∘I)} C_{ϑI^c}`.
    pub fn reflect(&self) -> Self {
        self.map_terms(|e, c| {
            let phase = self_circ_phase(e);
            (e.complement().reflect(), c.conj() * phase.to_complex())
        })
    }

    /// Local gauge automorphism `U_site` (`c_j ↦ ω^{δ_{j,site}} c_j`), or the
    /// global one `U = Π_j U_j` when `site` is `None`.
    pub fn gauge_apply(&self, site: Option<usize>) -> Result<Self> {
        if let Some(s) = site {
            if s == 0 || s > self.sites {
                return Err(Error::Domain(format!("gauge site {s} outside 1..={}", self.sites)));
            }
        }
        let order = self.order;
        Ok(self.map_terms(|e, c| {
            let k = match site {
                Some(s) => e.get(s) as i64,
                None => (e.degree() % order as u64) as i64,
            };
            (e.clone(), c * PhaseExponent::omega_pow(order, k).to_complex())
        }))
    }

    pub fn classify(&self) -> SideClass {
        let mut minus = false;
        let mut plus = false;
        let mut observable = true;
        for e in self.terms.keys() {
            match e.support() {
                Support::Empty => {}
                Support::Minus => minus = true,
                Support::Plus => plus = true,
                Support::Crossing => {
                    minus = true;
                    plus = true;
                }
            }
            observable &= e.is_observable();
        }
        let side = match (minus, plus) {
            (false, false) => Side::Scalar,
            (true, false) => Side::Minus,
            (false, true) => Side::Plus,
            (true, true) => Side::Crossing,
        };
        SideClass { side, observable }
    }

    /// Coefficientwise comparison: `max |a_I − b_I| ≤ tol · max(1, max |a|, max |b|)`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.check_compatible(other).is_err() {
            return false;
        }
        let scale = 1f64.max(self.max_abs_coefficient()).max(other.max_abs_coefficient());
        self.max_difference(other) <= tol * scale
    }

    pub fn max_difference(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (e, c) in &self.terms {
            worst = worst.max((c - other.coefficient(e)).norm());
        }
        for (e, c) in &other.terms {
            if !self.terms.contains_key(e) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }

    fn map_terms<F>(&self, f: F) -> Self
    where
        F: Fn(&ExponentVector, &Complex64) -> (ExponentVector, Complex64),
    {
        let mut out = self.empty_like();
        for (e, c) in &self.terms {
            let (e2, c2) = f(e, c);
            *out.terms.entry(e2).or_insert(Complex64::new(0.0, 0.0)) += c2;
        }
        out
    }
}

fn self_circ_phase(e: &ExponentVector) -> PhaseExponent {
    let order = e.order();
    PhaseExponent::omega_pow(order, -((e.circ_unchecked(e) % order as u64) as i64))
}

/// `X_I = J ζ^{|I|²} C_I ϑ(C_I)`, reflection invariant and globally gauge
/// invariant for every `I ⊂ Λ-`.
pub fn build_x(exps: &ExponentVector, coupling: f64) -> Result<Polynomial> {
    if !exps.on_minus() || exps.is_zero() {
        return Err(Error::Domain(format!(
            "X_I needs a non-zero exponent vector supported on the minus half, got {exps}"
        )));
    }
    let order = exps.order();
    let d = exps.degree() % (2 * order as u64);
    let (phase, target) = monomial_times_reflection(exps);
    let phase = phase * PhaseExponent::zeta_pow(order, (d * d) as i64);
    Ok(Polynomial::from_monomial(Monomial::new(
        phase.to_complex() * coupling,
        target,
    )))
}

/// Whether the crossing monomial built on `I` can be hermitian: `I^c = I`,
/// i.e. every non-zero exponent equals `n/2`.
pub fn hermiticity_condition(exps: &ExponentVector) -> bool {
    let n = exps.order();
    exps.entries().iter().all(|&e| e == 0 || 2 * e == n)
}

/// `Y + Y*`.
pub fn hermitian_pair(y: &Polynomial) -> Polynomial {
    y.checked_add(&y.adjoint()).expect("adjoint preserves shape")
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// Panics if the operands were built for different `(n, L)`.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial shapes differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial shapes differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial shapes differ")
    }
}

impl Mul<Complex64> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Complex64) -> Polynomial {
        self.scale(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
