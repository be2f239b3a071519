//! Schwarz-type bounds for `H = H- + H0 + H+` with independent halves.
//!
//! With `⟨A, B⟩_- = Tr(A ϑ(B) e^{-(H- + H0 + ϑ(H-))})` and
//! `⟨A, B⟩_+ = Tr(A ϑ(B) e^{-(ϑ(H+) + H0 + H+)})` the two inequalities are
//!
//! ```text
//! |f(A, B)| ≤ ‖A‖_- ‖B‖_+      (minus-side A, B)
//! |f(A, B)| ≤ ‖A‖_+ ‖B‖_-      (plus-side A, B)
//! ```
//!
//! and for `A = B = 1` both reduce to `|Tr e^{-H}| ≤ Z_-^{1/2} Z_+^{1/2}`.
//! When `H+ = ϑ(H-)` both auxiliary Hamiltonians equal `H` and the bounds are
//! the Schwarz inequality, on either side.

use num_complex::Complex64;
use serde::Serialize;

use super::TraceFunctional;
use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSpec;
use crate::representation::Representation;

#[derive(Debug, Clone, PartialEq)]
pub struct SplitHamiltonian {
    pub h_minus: Polynomial,
    pub h_zero: Polynomial,
    pub h_plus: Polynomial,
}

impl SplitHamiltonian {
    /// `h_minus` must lie in `𝔄-^n`, `h_plus` in `𝔄+^n`.
    pub fn new(h_minus: Polynomial, h_zero: Polynomial, h_plus: Polynomial) -> Result<Self> {
        h_minus.check_compatible(&h_zero)?;
        h_minus.check_compatible(&h_plus)?;
        if !h_minus.classify().is_minus_observable() {
            return Err(Error::Domain(
                "H- is not a gauge-invariant minus-side observable".into(),
            ));
        }
        if !h_plus.classify().is_plus_observable() {
            return Err(Error::Domain("H+ is not a gauge-invariant plus-side observable".into()));
        }
        Ok(Self {
            h_minus,
            h_zero,
            h_plus,
        })
    }

    pub fn from_spec(spec: &HamiltonianSpec) -> Self {
        Self {
            h_minus: spec.h_minus().clone(),
            h_zero: spec.h_zero().clone(),
            h_plus: spec.h_plus().clone(),
        }
    }

    pub fn total(&self) -> Polynomial {
        &(&self.h_minus + &self.h_zero) + &self.h_plus
    }

    /// `H- + H0 + ϑ(H-)`
    pub fn minus_doubled(&self) -> Polynomial {
        &(&self.h_minus + &self.h_zero) + &self.h_minus.reflect()
    }

    /// `ϑ(H+) + H0 + H+`
    pub fn plus_doubled(&self) -> Polynomial {
        &(&self.h_plus.reflect() + &self.h_zero) + &self.h_plus
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsReport {
    /// `|f(A, B)|`
    pub value: f64,
    pub norm_a_minus: f64,
    pub norm_b_plus: f64,
    pub norm_a_plus: f64,
    pub norm_b_minus: f64,
    /// `(‖A‖_- ‖B‖_+ − |f|) / (1 + ‖A‖_- ‖B‖_+)`
    pub bound_1_margin: f64,
    /// `(‖A‖_+ ‖B‖_- − |f|) / (1 + ‖A‖_+ ‖B‖_-)`
    pub bound_2_margin: f64,
    /// Same margin for `A = B = 1`.
    pub partition_margin: f64,
    /// An auxiliary norm square came out negative or complex beyond
    /// tolerance, so that auxiliary Hamiltonian is not reflection positive.
    pub auxiliary_violation: bool,
}

impl BoundsReport {
    pub fn bound_1_holds(&self, tolerance: f64) -> bool {
        !self.auxiliary_violation && self.bound_1_margin >= -tolerance
    }

    pub fn bound_2_holds(&self, tolerance: f64) -> bool {
        !self.auxiliary_violation && self.bound_2_margin >= -tolerance
    }

    pub fn partition_bound_holds(&self, tolerance: f64) -> bool {
        !self.auxiliary_violation && self.partition_margin >= -tolerance
    }

    pub fn passed(&self, tolerance: f64) -> bool {
        self.bound_1_holds(tolerance) && self.bound_2_holds(tolerance) && self.partition_bound_holds(tolerance)
    }
}

fn margin(bound: f64, value: f64) -> f64 {
    (bound - value) / (1.0 + bound)
}

/// Norm from a diagonal value; flags values that are not real and
/// non-negative within `tolerance`.
fn norm_of(v: Complex64, tolerance: f64, violated: &mut bool) -> f64 {
    let scale = 1.0 + v.norm();
    if v.re < -tolerance * scale || v.im.abs() > tolerance * scale {
        *violated = true;
    }
    v.re.max(0.0).sqrt()
}

pub fn rp_bounds_check(
    a: &Polynomial,
    b: &Polynomial,
    split: &SplitHamiltonian,
    rep: &Representation,
    tolerance: f64,
) -> Result<BoundsReport> {
    let full = TraceFunctional::new(rep, &split.total())?;
    let minus = TraceFunctional::new(rep, &split.minus_doubled())?;
    let plus = TraceFunctional::new(rep, &split.plus_doubled())?;
    let mut violated = false;
    let value = full.evaluate(a, b)?.norm();
    let norm_a_minus = norm_of(minus.evaluate(a, a)?, tolerance, &mut violated);
    let norm_b_minus = norm_of(minus.evaluate(b, b)?, tolerance, &mut violated);
    let norm_a_plus = norm_of(plus.evaluate(a, a)?, tolerance, &mut violated);
    let norm_b_plus = norm_of(plus.evaluate(b, b)?, tolerance, &mut violated);
    let z_minus = norm_of(minus.partition_function(), tolerance, &mut violated);
    let z_plus = norm_of(plus.partition_function(), tolerance, &mut violated);
    let z = full.partition_function().norm();
    Ok(BoundsReport {
        value,
        norm_a_minus,
        norm_b_plus,
        norm_a_plus,
        norm_b_minus,
        bound_1_margin: margin(norm_a_minus * norm_b_plus, value),
        bound_2_margin: margin(norm_a_plus * norm_b_minus, value),
        partition_margin: margin(z_minus * z_plus, z),
        auxiliary_violation: violated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::ExponentVector;
    use crate::hamiltonian::baxter;

    #[test]
    fn degenerate_split_is_tight_for_identity() {
        let r = Representation::new(3, 2).unwrap();
        let spec = super::super::counterexample::single_bond_spec(3).unwrap();
        let split = SplitHamiltonian::from_spec(&spec);
        let id = Polynomial::identity(3, 2).unwrap();
        let rep = rp_bounds_check(&id, &id, &split, &r, 1e-9).unwrap();
        assert!(rep.passed(1e-9));
        assert!(rep.bound_1_margin.abs() < 1e-12 && rep.partition_margin.abs() < 1e-12);
    }

    #[test]
    fn baxter_partition_bound() {
        let r = Representation::new(2, 4).unwrap();
        let spec = baxter(2, 4, &[0.7, 1.1, 0.7]).unwrap();
        let id = Polynomial::identity(2, 4).unwrap();
        let rep = rp_bounds_check(&id, &id, &SplitHamiltonian::from_spec(&spec), &r, 1e-9).unwrap();
        assert!(rep.partition_bound_holds(1e-9), "{rep:?}");
    }

    #[test]
    fn rejects_wrong_sides() {
        let e = ExponentVector::new(2, vec![0, 0, 1, 1]).unwrap();
        let plus = Polynomial::monomial(e);
        let zero = Polynomial::zero(2, 4).unwrap();
        assert!(SplitHamiltonian::new(plus.clone(), zero.clone(), zero.clone()).is_err());
        assert!(SplitHamiltonian::new(zero.clone(), zero.clone(), plus).is_ok());
    }
}
