#![allow(dead_code)]

use num_complex::Complex64;
use parafermion::hamiltonian::{CouplingRule, CouplingTable, HamiltonianSpec};
use parafermion::{ExponentVector, Matrix, Polynomial};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `C_I` as a plain product of dense generator powers.
pub fn dense_monomial(generators: &[Matrix], exps: &ExponentVector) -> Matrix {
    let dim = generators[0].nrows();
    let mut out = Matrix::identity(dim, dim);
    for (site, &power) in exps.entries().iter().enumerate() {
        for _ in 0..power {
            out *= &generators[site];
        }
    }
    out
}

/// `ϑ(z C_I) = z̄ Π_i (c_{L-i+1}^{n-1})^{n_i}` from the generators alone.
pub fn dense_reflection(generators: &[Matrix], coefficient: Complex64, exps: &ExponentVector) -> Matrix {
    let dim = generators[0].nrows();
    let l = generators.len();
    let n = exps.order();
    let mut out = Matrix::identity(dim, dim) * coefficient.conj();
    for (i, &power) in exps.entries().iter().enumerate() {
        for _ in 0..power * (n - 1) {
            out *= &generators[l - 1 - i];
        }
    }
    out
}

pub fn random_exponents(rng: &mut ChaCha8Rng, order: u32, sites: usize) -> ExponentVector {
    ExponentVector::new(order, (0..sites).map(|_| rng.random_range(0..order)).collect()).unwrap()
}

/// Random exponents supported on the minus half.
pub fn random_minus(rng: &mut ChaCha8Rng, order: u32, sites: usize) -> ExponentVector {
    let half = sites / 2;
    let entries = (0..sites)
        .map(|i| if i < half { rng.random_range(0..order) } else { 0 })
        .collect();
    ExponentVector::new(order, entries).unwrap()
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    parafermion::rp::standard_complex_normal(rng)
}

/// Frobenius distance relative to `max(1, ‖b‖)`.
pub fn gap(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// A reflection-symmetric Hamiltonian with complex gauge-invariant `H-` and
/// couplings obeying `rule`, which must guarantee positivity.
pub fn random_valid_spec(rng: &mut ChaCha8Rng, order: u32, sites: usize, rule: CouplingRule) -> HamiltonianSpec {
    let observables: Vec<ExponentVector> = ExponentVector::minus_observables(order, sites)
        .unwrap()
        .into_iter()
        .filter(|e| !e.is_zero())
        .collect();
    loop {
        let mut terms = Vec::new();
        if !observables.is_empty() {
            for _ in 0..rng.random_range(0..=3) {
                let e = observables[rng.random_range(0..observables.len())].clone();
                terms.push((e, gaussian(rng) * 0.5));
            }
        }
        let h_minus = Polynomial::from_terms(order, sites, terms).unwrap();
        let mut table = CouplingTable::new(order, sites).unwrap();
        for _ in 0..rng.random_range(1..=3) {
            let e = random_minus(rng, order, sites);
            if e.is_zero() {
                continue;
            }
            let magnitude = rng.random_range(0.05..1.0);
            let j = match rule {
                CouplingRule::AllNonneg => magnitude,
                CouplingRule::EvenNAlternating if e.degree().is_multiple_of(2) => magnitude,
                CouplingRule::EvenNAlternating => -magnitude,
                CouplingRule::None => panic!("no guarantee to sample"),
            };
            // redraw rather than accumulate two couplings on one key
            if table.iter().any(|(k, _)| *k == e) {
                continue;
            }
            table.insert(e, j).unwrap();
        }
        if table.is_empty() {
            continue;
        }
        let spec = HamiltonianSpec::assemble(h_minus, table).unwrap();
        if spec.rule() == rule {
            return spec;
        }
    }
}
