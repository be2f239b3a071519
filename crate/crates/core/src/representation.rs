//! The clock/shift representation on `(C^n)^{⊗ L/2}`.
//!
//! Generators are
//!
//! ```text
//! c_{2a-1} = τ ⊗ … ⊗ τ ⊗ σ ⊗ 1 ⊗ … ⊗ 1
//! c_{2a}   = ζ^{n-1} τ ⊗ … ⊗ τ ⊗ στ ⊗ 1 ⊗ … ⊗ 1
//! ```
//!
//! with `a - 1` leading factors of `τ`. Every monomial in the generators is a
//! permutation matrix with root-of-unity entries, so the fast paths work on
//! [`PhasedPermutation`]s with exact phase exponents and only materialize a
//! dense matrix at the end. The dense Kronecker construction is kept as an
//! independent reference.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{PhaseExponent, Polynomial};
use crate::error::{Error, Result};
use crate::exponents::{check_order_sites, ExponentVector};

pub type Matrix = DMatrix<Complex64>;

/// Largest Hilbert-space dimension a [`Representation`] will build.
pub const DIMENSION_CAP: usize = 4096;

/// Largest number of basis monomials [`Representation::decompose`] will visit.
pub const ENUMERATION_CAP: u128 = 1 << 16;

/// Tolerance for matrix identities, measured in Frobenius norm.
pub const MATRIX_TOLERANCE: f64 = 1e-10;

/// A matrix sending basis vector `e_k` to `phase[k] · e_{target[k]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhasedPermutation {
    target: Vec<usize>,
    phase: Vec<PhaseExponent>,
}

impl PhasedPermutation {
    pub fn identity(order: u32, dim: usize) -> Self {
        Self {
            target: (0..dim).collect(),
            phase: vec![PhaseExponent::one(order); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let (target, phase) = rhs
            .target
            .iter()
            .zip(&rhs.phase)
            .map(|(&t, &p)| (self.target[t], self.phase[t] * p))
            .unzip();
        Self { target, phase }
    }

    pub fn scaled(&self, factor: PhaseExponent) -> Self {
        Self {
            target: self.target.clone(),
            phase: self.phase.iter().map(|&p| p * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.target
            .iter()
            .enumerate()
            .filter(|(k, &t)| *k == t)
            .map(|(k, _)| self.phase[k].to_complex())
            .sum()
    }

    /// `Tr(self* · a)`, the Hilbert–Schmidt overlap with a dense matrix.
    pub fn overlap(&self, a: &Matrix) -> Complex64 {
        self.target
            .iter()
            .zip(&self.phase)
            .enumerate()
            .map(|(k, (&t, p))| p.to_complex().conj() * a[(t, k)])
            .sum()
    }

    /// Adds `coefficient · self` into a dense matrix.
    pub fn accumulate_into(&self, coefficient: Complex64, out: &mut Matrix) {
        for (k, (&t, p)) in self.target.iter().zip(&self.phase).enumerate() {
            out[(t, k)] += coefficient * p.to_complex();
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let order = self.phase.first().map_or(2, |p| p.order());
        let mut target = vec![0; self.dim()];
        let mut phase = vec![PhaseExponent::one(order); self.dim()];
        for (k, (&t, p)) in self.target.iter().zip(&self.phase).enumerate() {
            target[t] = k;
            phase[t] = p.conj();
        }
        Self { target, phase }
    }

    /// `‖self − factor · other‖` in Frobenius norm, without densifying.
    pub fn distance(&self, other: &Self, factor: Complex64) -> f64 {
        let mut sum = 0.0;
        for k in 0..self.dim() {
            let a = self.phase[k].to_complex();
            let b = factor * other.phase[k].to_complex();
            sum += if self.target[k] == other.target[k] {
                (a - b).norm_sqr()
            } else {
                a.norm_sqr() + b.norm_sqr()
            };
        }
        sum.sqrt()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        self.accumulate_into(Complex64::new(1.0, 0.0), &mut m);
        m
    }
}

/// The clock matrix `σ = diag(1, ω, …, ω^{n-1})` and the shift `τ|k⟩ = |k+1⟩`.
pub fn clock_shift(order: u32) -> Result<(Matrix, Matrix)> {
    if order < 2 {
        return Err(Error::InvalidParameters(format!(
            "order must be at least 2, got {order}"
        )));
    }
    let n = order as usize;
    let sigma = Matrix::from_fn(n, n, |r, c| {
        if r == c {
            PhaseExponent::omega_pow(order, r as i64).to_complex()
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let tau = Matrix::from_fn(n, n, |r, c| {
        if r == (c + 1) % n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok((sigma, tau))
}

#[derive(Debug, Clone)]
pub struct Representation {
    order: u32,
    sites: usize,
    dim: usize,
    generators: Vec<PhasedPermutation>,
}

impl Representation {
    pub fn new(order: u32, sites: usize) -> Result<Self> {
        Self::with_cap(order, sites, DIMENSION_CAP)
    }

    pub fn with_cap(order: u32, sites: usize, cap: usize) -> Result<Self> {
        check_order_sites(order, sites)?;
        let dim = dimension(order, sites, cap)?;
        let blocks = sites / 2;
        let n = order as usize;
        let generators = (0..sites)
            .map(|j| {
                let block = j / 2;
                let even = j % 2 == 1;
                // digits of the basis index, most significant factor first
                let stride = n.pow((blocks - 1 - block) as u32);
                let prefix_stride = stride * n;
                let mut target = Vec::with_capacity(dim);
                let mut phase = Vec::with_capacity(dim);
                for k in 0..dim {
                    let digit = (k / stride) % n;
                    // τ on each earlier factor
                    let mut t = 0usize;
                    for b in 0..block {
                        let s = n.pow((blocks - 1 - b) as u32);
                        t += ((k / s % n + 1) % n) * s;
                    }
                    let tail = k % prefix_stride;
                    let (new_digit, p) = if even {
                        let nd = (digit + 1) % n;
                        (
                            nd,
                            PhaseExponent::omega_pow(order, nd as i64)
                                * PhaseExponent::zeta_pow(order, order as i64 - 1),
                        )
                    } else {
                        (digit, PhaseExponent::omega_pow(order, digit as i64))
                    };
                    t += tail - digit * stride + new_digit * stride;
                    target.push(t);
                    phase.push(p);
                }
                PhasedPermutation { target, phase }
            })
            .collect();
        Ok(Self {
            order,
            sites,
            dim,
            generators,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dense matrix of `c_site` (1-based).
    pub fn generator(&self, site: usize) -> Matrix {
        self.generators[site - 1].to_dense()
    }

    pub fn generators(&self) -> Vec<Matrix> {
        self.generators.iter().map(PhasedPermutation::to_dense).collect()
    }

    fn check_shape(&self, order: u32, sites: usize) -> Result<()> {
        if order != self.order || sites != self.sites {
            return Err(Error::DimensionMismatch {
                expected_order: self.order,
                expected_sites: self.sites,
                found_order: order,
                found_sites: sites,
            });
        }
        Ok(())
    }

    fn check_matrix(&self, a: &Matrix) -> Result<()> {
        if a.nrows() != self.dim || a.ncols() != self.dim {
            return Err(Error::InvalidParameters(format!(
                "matrix is {}x{}, representation has dimension {}",
                a.nrows(),
                a.ncols(),
                self.dim
            )));
        }
        Ok(())
    }

    /// `C_I` as a phased permutation, multiplying generators in ascending
    /// site order.
    pub fn monomial(&self, exps: &ExponentVector) -> Result<PhasedPermutation> {
        self.check_shape(exps.order(), exps.sites())?;
        let mut acc = PhasedPermutation::identity(self.order, self.dim);
        for (j, &e) in exps.entries().iter().enumerate() {
            for _ in 0..e {
                acc = acc.compose(&self.generators[j]);
            }
        }
        Ok(acc)
    }

    pub fn to_matrix(&self, p: &Polynomial) -> Result<Matrix> {
        self.check_shape(p.order(), p.sites())?;
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (exps, c) in p.terms() {
            self.monomial(exps)?.accumulate_into(*c, &mut out);
        }
        Ok(out)
    }

    /// Same as [`to_matrix`](Self::to_matrix) but through dense products of
    /// the Kronecker-built generators.
    pub fn to_matrix_reference(&self, p: &Polynomial) -> Result<Matrix> {
        self.check_shape(p.order(), p.sites())?;
        let gens = kronecker_generators(self.order, self.sites)?;
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (exps, c) in p.terms() {
            let mut m = Matrix::identity(self.dim, self.dim);
            for (j, &e) in exps.entries().iter().enumerate() {
                for _ in 0..e {
                    m = &m * &gens[j];
                }
            }
            out += m * *c;
        }
        Ok(out)
    }

    /// Expansion `A = Σ a_I C_I` with `a_I = Tr(C_I* A) / dim`.
    pub fn decompose(&self, a: &Matrix) -> Result<Polynomial> {
        self.check_matrix(a)?;
        let count = (self.order as u128).pow(self.sites as u32);
        if count > ENUMERATION_CAP {
            return Err(Error::Resource {
                what: format!("basis enumeration for n={}, L={}", self.order, self.sites),
                required: count,
                cap: ENUMERATION_CAP,
            });
        }
        let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut terms = Vec::new();
        for exps in ExponentVector::all(self.order, self.sites)? {
            let coefficient = self.monomial(&exps)?.overlap(a) / self.dim as f64;
            terms.push((exps, coefficient));
        }
        Ok(Polynomial::from_terms(self.order, self.sites, terms)?.truncate(1e-14 * scale))
    }

    /// Relation residuals of the generators, computed on the permutation
    /// form so no dense matrix is built.
    pub fn verify(&self) -> RelationReport {
        let omega = PhaseExponent::omega_pow(self.order, 1).to_complex();
        let one = Complex64::new(1.0, 0.0);
        let id = PhasedPermutation::identity(self.order, self.dim);
        let mut report = RelationReport {
            order_residual: 0.0,
            commutation_residual: 0.0,
            unitarity_residual: 0.0,
        };
        for (j, g) in self.generators.iter().enumerate() {
            let mut power = id.clone();
            for _ in 0..self.order {
                power = power.compose(g);
            }
            report.order_residual = report.order_residual.max(power.distance(&id, one));
            report.unitarity_residual = report
                .unitarity_residual
                .max(g.compose(&g.adjoint()).distance(&id, one));
            for h in &self.generators[j + 1..] {
                let gap = g.compose(h).distance(&h.compose(g), omega);
                report.commutation_residual = report.commutation_residual.max(gap);
            }
        }
        report
    }
}

fn dimension(order: u32, sites: usize, cap: usize) -> Result<usize> {
    let required = (order as u128).checked_pow((sites / 2) as u32).unwrap_or(u128::MAX);
    if required > cap as u128 {
        return Err(Error::Resource {
            what: format!("Hilbert space dimension n^(L/2) for n={order}, L={sites}"),
            required,
            cap: cap as u128,
        });
    }
    Ok(required as usize)
}

/// Dense generators built directly from [`clock_shift`] by Kronecker
/// products.
pub fn kronecker_generators(order: u32, sites: usize) -> Result<Vec<Matrix>> {
    check_order_sites(order, sites)?;
    dimension(order, sites, DIMENSION_CAP)?;
    let (sigma, tau) = clock_shift(order)?;
    let n = order as usize;
    let id = Matrix::identity(n, n);
    let sigma_tau = &sigma * &tau;
    let prefactor = PhaseExponent::zeta_pow(order, order as i64 - 1).to_complex();
    let blocks = sites / 2;
    let mut out = Vec::with_capacity(sites);
    for a in 0..blocks {
        for (local, scale) in [(&sigma, Complex64::new(1.0, 0.0)), (&sigma_tau, prefactor)] {
            let mut m = Matrix::identity(1, 1);
            for b in 0..blocks {
                let factor = match b.cmp(&a) {
                    std::cmp::Ordering::Less => &tau,
                    std::cmp::Ordering::Equal => local,
                    std::cmp::Ordering::Greater => &id,
                };
                m = m.kronecker(factor);
            }
            out.push(m * scale);
        }
    }
    Ok(out)
}

/// Residuals of the defining relations, in Frobenius norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelationReport {
    /// `max_j ‖c_j^n − 1‖`
    pub order_residual: f64,
    /// `max_{j<j'} ‖c_j c_j' − ω c_j' c_j‖`
    pub commutation_residual: f64,
    /// `max_j ‖c_j c_j* − 1‖`
    pub unitarity_residual: f64,
}

impl RelationReport {
    pub fn max_residual(&self) -> f64 {
        self.order_residual
            .max(self.commutation_residual)
            .max(self.unitarity_residual)
    }
}

/// Measures how far the given matrices are from satisfying the order-`n`
/// parafermion relations. Never fails: bad generators show up as large
/// residuals.
pub fn verify_relations(order: u32, generators: &[Matrix]) -> RelationReport {
    let omega = PhaseExponent::omega_pow(order, 1).to_complex();
    let mut report = RelationReport {
        order_residual: 0.0,
        commutation_residual: 0.0,
        unitarity_residual: 0.0,
    };
    for (j, g) in generators.iter().enumerate() {
        let id = Matrix::identity(g.nrows(), g.ncols());
        let mut power = id.clone();
        for _ in 0..order {
            power = &power * g;
        }
        report.order_residual = report.order_residual.max((power - &id).norm());
        report.unitarity_residual = report.unitarity_residual.max((g * g.adjoint() - &id).norm());
        for h in &generators[j + 1..] {
            let gap = g * h - (h * g) * omega;
            report.commutation_residual = report.commutation_residual.max(gap.norm());
        }
    }
    report
}

/// `Tr C_I`: the dimension for the identity monomial, zero otherwise.
pub fn trace_monomial(exps: &ExponentVector) -> Complex64 {
    if exps.is_zero() {
        let dim = (exps.order() as f64).powi((exps.sites() / 2) as i32);
        Complex64::new(dim, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Row-major text grid with `re+im i` entries, one row per line.
pub fn matrix_to_text(m: &Matrix) -> String {
    let mut out = String::new();
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|c| {
                let z = m[(r, c)];
                if z.im.is_sign_negative() {
                    format!("{}-{}i", z.re, -z.im)
                } else {
                    format!("{}+{}i", z.re, z.im)
                }
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_case() {
        let (s, t) = clock_shift(2).unwrap();
        assert_eq!(
            s,
            Matrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
        );
        assert_eq!(
            t,
            Matrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
        );
        let r = Representation::new(2, 2).unwrap();
        // c_2 = i Z X = -Y
        let minus_y = Matrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 1.), c(0., -1.), c(0., 0.)]);
        assert!((r.generator(2) - minus_y).norm() < 1e-15);
        assert!(clock_shift(1).is_err());
    }

    #[test]
    fn clock_shift_relation() {
        for n in 2..8 {
            let (s, t) = clock_shift(n).unwrap();
            let w = PhaseExponent::omega_pow(n, 1).to_complex();
            assert!((&s * &t - (&t * &s) * w).norm() < 1e-14);
            assert!(s.trace().norm() < 1e-14 && t.trace().norm() == 0.0);
        }
    }

    #[test]
    fn odd_order_needs_prefactor() {
        let (s, t) = clock_shift(3).unwrap();
        let st = &s * &t;
        let cube = &st * &st * &st;
        assert!((cube - Matrix::identity(3, 3)).norm() < 1e-14);
        let (s, t) = clock_shift(4).unwrap();
        let st = &s * &t;
        let fourth = &st * &st * &st * &st;
        assert!((fourth + Matrix::identity(4, 4)).norm() < 1e-14);
    }

    #[test]
    fn permutation_generators_match_kronecker() {
        for (n, l) in [(2, 2), (2, 4), (3, 4), (4, 4), (5, 2), (3, 6)] {
            let r = Representation::new(n, l).unwrap();
            let k = kronecker_generators(n, l).unwrap();
            for (j, dense) in k.iter().enumerate() {
                assert!((r.generator(j + 1) - dense).norm() < 1e-13, "n={n} l={l} j={j}");
            }
        }
    }

    #[test]
    fn relations_hold() {
        for (n, l) in [(2, 2), (3, 4), (5, 2)] {
            let rep = Representation::new(n, l).unwrap().verify();
            assert!(rep.max_residual() < 1e-12, "{rep:?}");
        }
    }

    #[test]
    fn sparse_and_dense_residuals_agree() {
        for (n, l) in [(2, 4), (3, 4), (4, 2), (9, 2)] {
            let sparse = Representation::new(n, l).unwrap().verify();
            let dense = verify_relations(n, &kronecker_generators(n, l).unwrap());
            assert!(
                sparse.max_residual() < 1e-12 && dense.max_residual() < 1e-12,
                "{sparse:?} {dense:?}"
            );
        }
    }

    #[test]
    fn permutation_distance_and_adjoint() {
        let r = Representation::new(3, 4).unwrap();
        let a = r.monomial(&ExponentVector::new(3, vec![1, 2, 0, 1]).unwrap()).unwrap();
        let b = r.monomial(&ExponentVector::new(3, vec![1, 2, 0, 0]).unwrap()).unwrap();
        let z = c(0.3, -1.2);
        let dense = (a.to_dense() - b.to_dense() * z).norm();
        assert!((a.distance(&b, z) - dense).abs() < 1e-12);
        assert_eq!(a.adjoint().to_dense(), a.to_dense().adjoint());
    }

    #[test]
    fn corrupted_generator_reported() {
        let r = Representation::new(3, 2).unwrap();
        let mut gens = r.generators();
        gens[1] = &gens[1] * c(1.3, 0.0);
        let rep = verify_relations(3, &gens);
        assert!(rep.max_residual() > 0.1);
    }

    #[test]
    fn dimension_cap() {
        assert!(matches!(
            Representation::new(2, 26),
            Err(Error::Resource {
                required: 8192,
                cap: 4096,
                ..
            })
        ));
        assert!(Representation::with_cap(2, 26, 1 << 13).is_ok());
    }

    #[test]
    fn monomial_traces() {
        let e = |n, v: &[u32]| ExponentVector::new(n, v.to_vec()).unwrap();
        let r = Representation::new(3, 2).unwrap();
        assert_eq!(trace_monomial(&e(3, &[0, 0])), c(3.0, 0.0));
        assert!(r.monomial(&e(3, &[1, 2])).unwrap().trace().norm() < 1e-12);
        let r = Representation::new(4, 4).unwrap();
        assert_eq!(trace_monomial(&e(4, &[2, 2, 2, 2])), c(0.0, 0.0));
        assert!(r.monomial(&e(4, &[2, 2, 2, 2])).unwrap().trace().norm() < 1e-12);
    }

    #[test]
    fn decompose_single_monomial_and_identity() {
        let r = Representation::new(3, 4).unwrap();
        let id = r.decompose(&Matrix::identity(9, 9)).unwrap();
        assert_eq!(id, Polynomial::identity(3, 4).unwrap());
        let exps = ExponentVector::new(3, vec![1, 0, 2, 1]).unwrap();
        let p = r.decompose(&r.monomial(&exps).unwrap().to_dense()).unwrap();
        assert!(p.approx_eq(&Polynomial::monomial(exps), 1e-12));
        assert!(r.decompose(&Matrix::identity(3, 3)).is_err());
    }

    #[test]
    fn decompose_enumeration_cap() {
        let r = Representation::new(2, 18).unwrap();
        let a = Matrix::identity(r.dim(), r.dim());
        assert!(matches!(r.decompose(&a), Err(Error::Resource { .. })));
    }

    #[test]
    fn text_dump() {
        let (s, _) = clock_shift(2).unwrap();
        assert_eq!(matrix_to_text(&s), "1+0i 0+0i\n0+0i -1+0i\n");
    }
}
