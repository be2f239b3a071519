//! The clock chain, Trotter convergence, loop expectations and matrix
//! decomposition.

mod common;

use common::*;
use num_complex::Complex64;
use parafermion::algebra::{build_x, hermitian_pair};
use parafermion::hamiltonian::{baxter, baxter_unsplit, validate_couplings, CouplingRule, SpecFile};
use parafermion::rp::counterexample::single_bond_spec;
use parafermion::rp::loops::loop_expectation;
use parafermion::rp::trotter::{convergence_ratios, trotter_errors};
use parafermion::rp::{check_rp, matrix_exp, random_polynomial};
use parafermion::{ExponentVector, Matrix, Polynomial, Representation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The chain summed bond by bond from raw generator matrices, in the order
/// the factors are written.
fn dense_chain(order: u32, sites: usize, t: &[f64]) -> Matrix {
    let rep = Representation::new(order, sites).unwrap();
    let gens = rep.generators();
    let dim = rep.dim();
    let mut h = Matrix::zeros(dim, dim);
    for (coefficient, factors) in baxter_unsplit(order, sites, t).unwrap() {
        let mut term = Matrix::identity(dim, dim) * coefficient;
        for (site, power) in factors {
            for _ in 0..power {
                term *= &gens[site - 1];
            }
        }
        h += term;
    }
    h
}

#[test]
fn split_chain_equals_unsplit_chain() {
    for (n, l, t) in [
        (2, 4, vec![0.7, -1.3, 0.7]),
        (3, 4, vec![0.4, -0.9, 0.4]),
        (3, 6, vec![1.0, 0.5, -0.2, 0.5, 1.0]),
        (4, 4, vec![0.3, 0.8, 0.3]),
        (5, 2, vec![-1.1]),
    ] {
        let rep = Representation::new(n, l).unwrap();
        let spec = baxter(n, l, &t).unwrap();
        let split = rep.to_matrix(&spec.total()).unwrap();
        assert!(gap(&split, &dense_chain(n, l, &t)) <= 1e-10, "n={n} L={l}");
    }
}

#[test]
fn middle_bond_sign_gates_positivity() {
    let negative = baxter(3, 4, &[0.8, -0.5, 0.8]).unwrap();
    assert_eq!(negative.rule(), CouplingRule::AllNonneg);
    let rep = Representation::new(3, 4).unwrap();
    let report = check_rp(&negative, &rep, 500, 7, 1e-9).unwrap();
    assert!(report.passed(), "{:?}", report.violations);

    let positive = baxter(3, 4, &[0.8, 0.5, 0.8]).unwrap();
    assert_eq!(validate_couplings(positive.couplings()), CouplingRule::None);
}

#[test]
fn equal_couplings_are_symmetric_across_shapes() {
    for (n, l) in [(2, 4), (3, 4), (4, 4), (3, 6)] {
        let t = vec![-0.6; l - 1];
        let spec = baxter(n, l, &t).unwrap();
        let rep = Representation::new(n, l).unwrap();
        assert!(spec.check_symmetries(&rep).unwrap().passed(), "n={n} L={l}");
    }
}

#[test]
fn trotter_error_halves() {
    let specs = [single_bond_spec(3).unwrap(), baxter(3, 4, &[0.5, -0.7, 0.5]).unwrap()];
    for spec in &specs {
        let rep = Representation::new(spec.order(), spec.sites()).unwrap();
        let points = trotter_errors(spec, &rep, &[32, 64, 128, 256]).unwrap();
        for r in convergence_ratios(&points) {
            assert!((1.6..=2.4).contains(&r), "{points:?}");
        }
    }
}

#[test]
fn exponential_of_chain_is_hermitian_eigen_exponential() {
    // the symmetrized chain H + H* is hermitian
    let (n, l) = (3, 4);
    let rep = Representation::new(n, l).unwrap();
    let spec = baxter(n, l, &[0.5, -0.7, 0.5]).unwrap();
    let h = rep.to_matrix(&hermitian_pair(&spec.total())).unwrap();
    let eig = h.clone().symmetric_eigen();
    let d = Matrix::from_diagonal(&eig.eigenvalues.map(|x| Complex64::new((-x).exp(), 0.0)));
    let reference = &eig.eigenvectors * d * eig.eigenvectors.adjoint();
    assert!(gap(&matrix_exp(&-h).unwrap(), &reference) <= 1e-12);
}

fn majorana_chain() -> Polynomial {
    let n = 2;
    let bond = |e: Vec<u32>, j: f64| {
        hermitian_pair(&Polynomial::monomial(ExponentVector::new(n, e).unwrap()).scale(Complex64::new(0.0, j)))
    };
    let minus = bond(vec![1, 1, 0, 0], 0.8);
    let crossing = hermitian_pair(&build_x(&ExponentVector::new(n, vec![0, 1, 0, 0]).unwrap(), 1.1).unwrap());
    &(&minus + &minus.reflect()) + &crossing
}

#[test]
fn loop_expectation_on_majorana_chain() {
    let rep = Representation::new(2, 4).unwrap();
    let h = majorana_chain();
    let m = rep.to_matrix(&h).unwrap();
    assert!((&m - m.adjoint()).norm() <= 1e-12);
    let a = Polynomial::parse(2, 4, "c1 c2").unwrap();
    let report = loop_expectation(&a, &h, &rep).unwrap();
    assert!(report.degeneracy >= 1);
    assert_eq!(report.expectations.len(), report.degeneracy);
    if report.w_order {
        assert_eq!(report.positive, Some(true), "{report:?}");
    } else {
        assert_eq!(report.positive, None);
    }
}

#[test]
fn decompose_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (n, l) in [(2, 4), (3, 4), (4, 2), (5, 2)] {
        let rep = Representation::new(n, l).unwrap();
        let all: Vec<ExponentVector> = ExponentVector::all(n, l).unwrap().collect();
        for _ in 0..20 {
            let p = random_polynomial(&mut rng, n, l, &all, 8);
            let back = rep.decompose(&rep.to_matrix(&p).unwrap()).unwrap();
            assert!(back.approx_eq(&p, 1e-10), "n={n} L={l}");
        }
    }
}

#[test]
fn spec_file_builds_the_chain() {
    let text = r#"{"baxter": {"n": 3, "L": 4, "t": [0.5, -0.7, 0.5]}}"#;
    let from_file = SpecFile::parse(text).unwrap().build().unwrap();
    assert_eq!(from_file, baxter(3, 4, &[0.5, -0.7, 0.5]).unwrap());

    let general = r#"{
        "n": 3, "L": 4,
        "h_minus": [{"coefficient": [0.5, 0.0], "exponents": [1, 2, 0, 0]}],
        "couplings": [{"exponents": [1, 0, 0, 0], "J": 0.25}]
    }"#;
    let spec = SpecFile::parse(general).unwrap().build().unwrap();
    assert_eq!(spec.rule(), CouplingRule::AllNonneg);
    assert_eq!(spec.h_minus().len(), 1);
}
