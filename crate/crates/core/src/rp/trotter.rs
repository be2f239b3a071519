//! Lie–Trotter approximants `[(1 − H0/k) e^{-H-/k} e^{-H+/k}]^k` of `e^{-H}`.

use num_complex::Complex64;
use serde::Serialize;

use super::matrix_exp;
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSpec;
use crate::representation::{Matrix, Representation};

pub fn trotter_approximant(spec: &HamiltonianSpec, rep: &Representation, k: u32) -> Result<Matrix> {
    if k == 0 {
        return Err(Error::InvalidParameters("Trotter step count must be at least 1".into()));
    }
    let inv = Complex64::new(1.0 / k as f64, 0.0);
    let dim = rep.dim();
    let crossing = Matrix::identity(dim, dim) - rep.to_matrix(spec.h_zero())? * inv;
    let minus = matrix_exp(&(rep.to_matrix(spec.h_minus())? * -inv))?;
    let plus = matrix_exp(&(rep.to_matrix(spec.h_plus())? * -inv))?;
    Ok((crossing * minus * plus).pow(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrotterPoint {
    pub k: u32,
    /// `‖approximant(k) − e^{-H}‖` in Frobenius norm.
    pub error: f64,
}

pub fn trotter_errors(spec: &HamiltonianSpec, rep: &Representation, ks: &[u32]) -> Result<Vec<TrotterPoint>> {
    let exact = matrix_exp(&-rep.to_matrix(&spec.total())?)?;
    ks.iter()
        .map(|&k| {
            Ok(TrotterPoint {
                k,
                error: (trotter_approximant(spec, rep, k)? - &exact).norm(),
            })
        })
        .collect()
}

/// Successive error ratios `error(k_i) / error(k_{i+1})`.
pub fn convergence_ratios(points: &[TrotterPoint]) -> Vec<f64> {
    points.windows(2).map(|w| w[0].error / w[1].error).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;
    use crate::exponents::ExponentVector;
    use crate::hamiltonian::{baxter, CouplingTable};

    #[test]
    fn single_step_is_the_definition() {
        let r = Representation::new(3, 4).unwrap();
        let spec = baxter(3, 4, &[0.3, -0.2, 0.3]).unwrap();
        let one = trotter_approximant(&spec, &r, 1).unwrap();
        let expect = (Matrix::identity(9, 9) - r.to_matrix(spec.h_zero()).unwrap())
            * matrix_exp(&-r.to_matrix(spec.h_minus()).unwrap()).unwrap()
            * matrix_exp(&-r.to_matrix(spec.h_plus()).unwrap()).unwrap();
        assert_eq!(one, expect);
        assert!(trotter_approximant(&spec, &r, 0).is_err());
    }

    #[test]
    fn crossing_only_limit() {
        let r = Representation::new(3, 2).unwrap();
        let table = CouplingTable::from_entries(3, 2, [(ExponentVector::unit(3, 2, 1, 1).unwrap(), 1.0)]).unwrap();
        let spec = HamiltonianSpec::assemble(Polynomial::zero(3, 2).unwrap(), table).unwrap();
        let pts = trotter_errors(&spec, &r, &[32, 64, 128, 256]).unwrap();
        for ratio in convergence_ratios(&pts) {
            assert!((1.6..=2.4).contains(&ratio), "{ratio}");
        }
    }
}
