//! Ground-state expectations of loop operators `W_A = A ϑ(A)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::representation::{Matrix, Representation};

/// Relative width of the ground-energy window, and the tolerance on the
/// ground-space block and on positivity.
pub const GROUND_TOLERANCE: f64 = 1e-8;
const HERMITICITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopReport {
    pub ground_energy: f64,
    pub degeneracy: usize,
    /// `P W P` is a multiple of `P` on the ground space `P`.
    pub w_order: bool,
    /// `⟨Ω, W Ω⟩` for an orthonormal basis of the ground space.
    pub expectations: Vec<Complex64>,
    /// Whether every expectation is real and non-negative; only asserted when
    /// `w_order` holds.
    pub positive: Option<bool>,
}

pub fn loop_expectation(a: &Polynomial, h: &Polynomial, rep: &Representation) -> Result<LoopReport> {
    if !a.classify().is_minus_observable() {
        return Err(Error::Domain(
            "A must be a gauge-invariant minus-side observable".into(),
        ));
    }
    let hm = rep.to_matrix(h)?;
    let asymmetry = (&hm - hm.adjoint()).norm();
    if asymmetry > HERMITICITY_TOLERANCE {
        return Err(Error::Unsupported(format!(
            "loop expectations need a hermitian Hamiltonian (‖H − H*‖ = {asymmetry:.3e})"
        )));
    }
    let eig = hm.symmetric_eigen();
    let values = eig.eigenvalues.as_slice();
    let lowest = values.iter().copied().fold(f64::INFINITY, f64::min);
    let highest = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let window = GROUND_TOLERANCE * (highest - lowest).max(1.0);
    let ground: Vec<usize> = (0..values.len()).filter(|&i| values[i] <= lowest + window).collect();

    let w = rep.to_matrix(&(a * &a.reflect()))?;
    let vectors: Vec<Matrix> = ground
        .iter()
        .map(|&i| eig.eigenvectors.columns(i, 1).into_owned())
        .collect();
    let g = ground.len();
    let block = Matrix::from_fn(g, g, |r, c| (vectors[r].adjoint() * &w * &vectors[c])[(0, 0)]);
    let expectations: Vec<Complex64> = (0..g).map(|i| block[(i, i)]).collect();
    let scale = 1.0 + block.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut w_order = true;
    for r in 0..g {
        for c in 0..g {
            let off = if r == c {
                block[(r, c)] - block[(0, 0)]
            } else {
                block[(r, c)]
            };
            w_order &= off.norm() <= GROUND_TOLERANCE * scale;
        }
    }
    let positive = w_order.then(|| {
        expectations
            .iter()
            .all(|e| e.re >= -GROUND_TOLERANCE && e.im.abs() <= GROUND_TOLERANCE * scale)
    });
    Ok(LoopReport {
        ground_energy: lowest,
        degeneracy: g,
        w_order,
        expectations,
        positive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_identity_loop() {
        let r = Representation::new(3, 2).unwrap();
        let id = Polynomial::identity(3, 2).unwrap();
        let rep = loop_expectation(&id, &Polynomial::zero(3, 2).unwrap(), &r).unwrap();
        assert_eq!(rep.degeneracy, 3);
        assert!(rep.w_order);
        assert_eq!(rep.positive, Some(true));
        assert!(rep
            .expectations
            .iter()
            .all(|e| (e - Complex64::new(1.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn rejects_bad_inputs() {
        let r = Representation::new(3, 2).unwrap();
        let c = Polynomial::generator(3, 2, 1).unwrap();
        let id = Polynomial::identity(3, 2).unwrap();
        assert!(matches!(
            loop_expectation(&c, &Polynomial::zero(3, 2).unwrap(), &r),
            Err(Error::Domain(_))
        ));
        let h = Polynomial::monomial(crate::ExponentVector::new(3, vec![1, 2]).unwrap());
        assert!(matches!(loop_expectation(&id, &h, &r), Err(Error::Unsupported(_))));
    }
}
