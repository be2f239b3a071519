//! Reflection positivity of `f(A, B) = Tr(A ϑ(B) e^{-H})`.
//!
//! [`check_rp`] samples gauge-invariant observables on the minus half and
//! records every diagonal value that fails to be real and non-negative,
//! together with the smallest eigenvalue of a Gram matrix on a structured
//! basis. The submodules cover the Trotter product, the conservation law
//! behind the positivity proof, Schwarz-type bounds for split Hamiltonians,
//! the single-generator counterexample and loop-operator expectations.

pub mod bounds;
pub mod conservation;
pub mod counterexample;
mod expm;
pub mod loops;
pub mod trotter;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

pub use expm::matrix_exp;

use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::exponents::ExponentVector;
use crate::hamiltonian::HamiltonianSpec;
use crate::representation::{Matrix, Representation};

/// Default relative tolerance for positivity checks.
pub const POSITIVITY_TOLERANCE: f64 = 1e-9;

/// Upper bound on the number of terms in a sampled observable.
pub const MAX_SAMPLE_TERMS: usize = 8;

/// `Σ_ij x_ij y_ji = Tr(x y)` without forming the product.
pub(crate) fn trace_product(x: &Matrix, y: &Matrix) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..x.nrows() {
        for j in 0..x.ncols() {
            acc += x[(i, j)] * y[(j, i)];
        }
    }
    acc
}

/// `f(A, B) = Tr(A ϑ(B) W)` for a fixed weight `W = e^{-H}`.
#[derive(Debug, Clone)]
pub struct TraceFunctional<'a> {
    rep: &'a Representation,
    weight: Matrix,
}

impl<'a> TraceFunctional<'a> {
    pub fn new(rep: &'a Representation, h: &Polynomial) -> Result<Self> {
        let weight = matrix_exp(&-rep.to_matrix(h)?)?;
        Ok(Self { rep, weight })
    }

    pub fn for_spec(spec: &HamiltonianSpec, rep: &'a Representation) -> Result<Self> {
        Self::new(rep, &spec.total())
    }

    pub fn representation(&self) -> &Representation {
        self.rep
    }

    pub fn weight(&self) -> &Matrix {
        &self.weight
    }

    pub fn partition_function(&self) -> Complex64 {
        self.weight.trace()
    }

    pub fn evaluate(&self, a: &Polynomial, b: &Polynomial) -> Result<Complex64> {
        let ma = self.rep.to_matrix(a)?;
        let rb = self.rep.to_matrix(&b.reflect())?;
        Ok(trace_product(&ma, &(rb * &self.weight)))
    }

    /// `(Tr(A ϑ(A) W), Tr(ϑ(A) A W))`.
    pub fn diagonal_both_orders(&self, a: &Polynomial) -> Result<(Complex64, Complex64)> {
        let ma = self.rep.to_matrix(a)?;
        let ra = self.rep.to_matrix(&a.reflect())?;
        Ok((
            trace_product(&ma, &(&ra * &self.weight)),
            trace_product(&ra, &(&ma * &self.weight)),
        ))
    }
}

/// `Tr(A ϑ(B) e^{-H})`.
pub fn rp_functional(
    a: &Polynomial,
    b: &Polynomial,
    spec: &HamiltonianSpec,
    rep: &Representation,
) -> Result<Complex64> {
    TraceFunctional::for_spec(spec, rep)?.evaluate(a, b)
}

/// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`.
pub fn standard_complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let normal = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).expect("valid deviation");
    Complex64::new(normal.sample(rng), normal.sample(rng))
}

/// A polynomial of 1 to `max_terms` terms drawn uniformly from `basis`, with
/// standard complex Gaussian coefficients.
pub fn random_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    order: u32,
    sites: usize,
    basis: &[ExponentVector],
    max_terms: usize,
) -> Polynomial {
    let count = rng.random_range(1..=max_terms.max(1));
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let e = basis[rng.random_range(0..basis.len())].clone();
            (e, standard_complex_normal(rng))
        })
        .collect();
    Polynomial::from_terms(order, sites, terms).expect("basis matches shape")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub witness: String,
    pub value: Complex64,
}

/// Outcome of [`check_rp`]. The diagonal statistics are relative:
/// `Re f / (1 + |f|)` and `|Im f| / (1 + |f|)` over all witnesses, and the
/// Gram eigenvalue is divided by `1 + max |eigenvalue|`, so a report has
/// violations exactly when one of them crosses the tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RPReport {
    pub partition_function: Complex64,
    pub min_diagonal_real: f64,
    pub max_diagonal_imag_abs: f64,
    pub gram_min_eigenvalue: f64,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub violations: Vec<Violation>,
}

impl RPReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct GramReport {
    pub raw: Matrix,
    /// `(G + G*) / 2`
    pub hermitized: Matrix,
    pub min_eigenvalue: f64,
    pub max_abs_eigenvalue: f64,
    /// `min_{a,b} (G_aa G_bb − |G_ab|²)`, non-negative when the Schwarz
    /// inequality holds.
    pub schwarz_margin: f64,
}

/// Gram matrix `G_ab = f(A_a, A_b)` of an arbitrary list of polynomials.
pub fn gram_matrix(functional: &TraceFunctional<'_>, basis: &[Polynomial]) -> Result<GramReport> {
    let rep = functional.representation();
    let left: Vec<Matrix> = basis.iter().map(|a| rep.to_matrix(a)).collect::<Result<_>>()?;
    let right: Vec<Matrix> = basis
        .iter()
        .map(|b| Ok(rep.to_matrix(&b.reflect())? * functional.weight()))
        .collect::<Result<_>>()?;
    let m = basis.len();
    let raw = Matrix::from_fn(m, m, |a, b| trace_product(&left[a], &right[b]));
    let hermitized = (&raw + raw.adjoint()) * Complex64::new(0.5, 0.0);
    let eigenvalues = hermitized.clone().symmetric_eigen().eigenvalues;
    let min_eigenvalue = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let max_abs_eigenvalue = eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut schwarz_margin = f64::INFINITY;
    for a in 0..m {
        for b in 0..m {
            let margin = raw[(a, a)].re * raw[(b, b)].re - raw[(a, b)].norm_sqr();
            schwarz_margin = schwarz_margin.min(margin);
        }
    }
    Ok(GramReport {
        raw,
        hermitized,
        min_eigenvalue: if m == 0 { 0.0 } else { min_eigenvalue },
        max_abs_eigenvalue,
        schwarz_margin: if m == 0 { 0.0 } else { schwarz_margin },
    })
}

/// [`gram_matrix`] for a basis of gauge-invariant minus-side observables.
pub fn gram_psd(spec: &HamiltonianSpec, rep: &Representation, basis: &[Polynomial]) -> Result<GramReport> {
    if let Some(i) = basis.iter().position(|p| !p.classify().is_minus_observable()) {
        return Err(Error::Domain(format!(
            "basis element {i} is not a gauge-invariant minus-side observable"
        )));
    }
    gram_matrix(&TraceFunctional::for_spec(spec, rep)?, basis)
}

/// The identity and every monomial observable on the minus half.
pub fn structured_witnesses(order: u32, sites: usize) -> Result<Vec<(String, Polynomial)>> {
    Ok(ExponentVector::minus_observables(order, sites)?
        .into_iter()
        .map(|e| {
            let name = if e.is_zero() {
                "identity".to_string()
            } else {
                format!("monomial:{e}")
            };
            (name, Polynomial::monomial(e))
        })
        .collect())
}

#[cfg(feature = "parallel")]
fn evaluate_all(
    functional: &TraceFunctional<'_>,
    witnesses: &[(String, Polynomial)],
) -> Result<Vec<(Complex64, Complex64)>> {
    use rayon::prelude::*;
    witnesses
        .par_iter()
        .map(|(_, a)| functional.diagonal_both_orders(a))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn evaluate_all(
    functional: &TraceFunctional<'_>,
    witnesses: &[(String, Polynomial)],
) -> Result<Vec<(Complex64, Complex64)>> {
    witnesses
        .iter()
        .map(|(_, a)| functional.diagonal_both_orders(a))
        .collect()
}

/// Checks `Tr(A ϑ(A) e^{-H}) ≥ 0` and `= Tr(ϑ(A) A e^{-H})` on the
/// structured witnesses and `samples` random observables, plus positivity of
/// the Gram matrix on the structured basis. Violations are recorded, never
/// raised; results do not depend on the thread count.
pub fn check_rp(
    spec: &HamiltonianSpec,
    rep: &Representation,
    samples: usize,
    seed: u64,
    tolerance: f64,
) -> Result<RPReport> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidParameters(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let (order, sites) = (spec.order(), spec.sites());
    let functional = TraceFunctional::for_spec(spec, rep)?;
    let basis = ExponentVector::minus_observables(order, sites)?;
    let structured = structured_witnesses(order, sites)?;

    let mut witnesses = structured.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let a = random_polynomial(&mut rng, order, sites, &basis, MAX_SAMPLE_TERMS);
        witnesses.push((format!("sample:{i}"), a));
    }
    let values = evaluate_all(&functional, &witnesses)?;

    let mut min_real = f64::INFINITY;
    let mut max_imag = 0.0f64;
    let mut violations = Vec::new();
    for ((name, _), (f, g)) in witnesses.iter().zip(&values) {
        let scale = 1.0 + f.norm();
        let real = f.re / scale;
        let imag = f.im.abs() / scale;
        min_real = min_real.min(real);
        max_imag = max_imag.max(imag);
        if real < -tolerance || imag > tolerance {
            violations.push(Violation {
                witness: name.clone(),
                value: *f,
            });
        }
        if (f - g).norm() > tolerance * scale {
            violations.push(Violation {
                witness: format!("{name}:order"),
                value: f - g,
            });
        }
    }

    let basis_polys: Vec<Polynomial> = structured.into_iter().map(|(_, p)| p).collect();
    let gram = gram_matrix(&functional, &basis_polys)?;
    let gram_min = gram.min_eigenvalue / (1.0 + gram.max_abs_eigenvalue);
    if gram_min < -tolerance {
        violations.push(Violation {
            witness: "gram".into(),
            value: Complex64::new(gram.min_eigenvalue, 0.0),
        });
    }

    Ok(RPReport {
        partition_function: functional.partition_function(),
        min_diagonal_real: min_real,
        max_diagonal_imag_abs: max_imag,
        gram_min_eigenvalue: gram_min,
        samples,
        seed,
        tolerance,
        violations,
    })
}
