//! The rearrangement and conservation identities used in the positivity
//! proof, checked on random data.
//!
//! For crossing vectors `I_1..I_k ⊂ Λ-` and observables `A, B_j ∈ 𝔄-^n`, with
//! `D = C_{I_1} B_1 ⋯ C_{I_k} B_k`:
//!
//! ```text
//! A ϑ(A) Π_j C_{I_j} ϑ(C_{I_j}) B_j ϑ(B_j) = ω^{Σ_{j<j'} |I_j||I_j'|} AD ϑ(AD)
//! Tr(AD ϑ(AD)) = 0   unless Σ_j |I_j| ≡ 0 mod n
//! ```

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{random_polynomial, trace_product};
use crate::algebra::{PhaseExponent, Polynomial, COEFFICIENT_TOLERANCE};
use crate::error::Result;
use crate::exponents::ExponentVector;
use crate::representation::{Representation, MATRIX_TOLERANCE};

/// Terms per sampled `A` or `B_j`.
const TERMS: usize = 4;
/// Longest crossing tuple drawn.
const MAX_TUPLE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservationReport {
    pub trials: usize,
    /// Largest `|Tr(AD ϑ(AD))|` over tuples with `Σ|I_j| ≢ 0 mod n`.
    pub max_forbidden_trace: f64,
    /// Largest Frobenius gap in the rearrangement identity.
    pub max_rearrangement_gap: f64,
    /// The rearrangement identity held symbolically on every trial.
    pub symbolic_rearrangement: bool,
}

impl ConservationReport {
    pub fn passed(&self) -> bool {
        self.max_forbidden_trace <= MATRIX_TOLERANCE
            && self.max_rearrangement_gap <= MATRIX_TOLERANCE
            && self.symbolic_rearrangement
    }
}

struct Tuple {
    a: Polynomial,
    crossings: Vec<ExponentVector>,
    bs: Vec<Polynomial>,
}

impl Tuple {
    fn draw(rng: &mut ChaCha8Rng, order: u32, sites: usize, all: &[ExponentVector], obs: &[ExponentVector]) -> Self {
        let k = rng.random_range(1..=MAX_TUPLE);
        let crossings: Vec<ExponentVector> = (0..k).map(|_| all[rng.random_range(0..all.len())].clone()).collect();
        let a = random_polynomial(rng, order, sites, obs, TERMS);
        let bs: Vec<Polynomial> = (0..k)
            .map(|_| random_polynomial(rng, order, sites, obs, TERMS))
            .collect();
        // unit ℓ1 norm keeps every monomial matrix product bounded by one
        let normalize = |p: Polynomial| {
            let n = p.l1_norm();
            p.scale(Complex64::new(1.0 / n, 0.0))
        };
        Self {
            a: normalize(a),
            crossings,
            bs: bs.into_iter().map(normalize).collect(),
        }
    }

    fn total_degree(&self) -> u64 {
        self.crossings.iter().map(ExponentVector::degree).sum()
    }

    /// `AD`
    fn product(&self) -> Polynomial {
        let mut t = self.a.clone();
        for (c, b) in self.crossings.iter().zip(&self.bs) {
            t = &(&t * &Polynomial::monomial(c.clone())) * b;
        }
        t
    }

    /// The left side, in the order written.
    fn interleaved(&self) -> Polynomial {
        let mut t = &self.a * &self.a.reflect();
        for (c, b) in self.crossings.iter().zip(&self.bs) {
            let m = Polynomial::monomial(c.clone());
            t = &(&(&(&t * &m) * &m.reflect()) * b) * &b.reflect();
        }
        t
    }

    fn phase(&self, order: u32) -> PhaseExponent {
        let degrees: Vec<u64> = self.crossings.iter().map(ExponentVector::degree).collect();
        let mut s = 0u64;
        for (i, di) in degrees.iter().enumerate() {
            for dj in &degrees[i + 1..] {
                s += di * dj;
            }
        }
        PhaseExponent::omega_pow(order, (s % order as u64) as i64)
    }
}

/// Draws `trials` tuples with `Σ|I_j| ≢ 0 mod n` for the trace test and
/// `trials` unconstrained tuples for the rearrangement identity.
pub fn conservation_law_check(rep: &Representation, trials: usize, seed: u64) -> Result<ConservationReport> {
    let (order, sites) = (rep.order(), rep.sites());
    let all: Vec<ExponentVector> = ExponentVector::all_minus(order, sites)?.collect();
    let obs = ExponentVector::minus_observables(order, sites)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut max_forbidden_trace = 0.0f64;
    let mut drawn = 0;
    while drawn < trials {
        let t = Tuple::draw(&mut rng, order, sites, &all, &obs);
        if t.total_degree().is_multiple_of(order as u64) {
            continue;
        }
        drawn += 1;
        let p = t.product();
        let m = rep.to_matrix(&p)?;
        let r = rep.to_matrix(&p.reflect())?;
        max_forbidden_trace = max_forbidden_trace.max(trace_product(&m, &r).norm());
    }

    let mut max_gap = 0.0f64;
    let mut symbolic = true;
    for _ in 0..trials {
        let t = Tuple::draw(&mut rng, order, sites, &all, &obs);
        let lhs = t.interleaved();
        let p = t.product();
        let rhs = (&p * &p.reflect()).scale(t.phase(order).to_complex());
        symbolic &= lhs.approx_eq(&rhs, COEFFICIENT_TOLERANCE);
        // matrix side: multiply the factors as matrices, not the polynomials
        let mut left = rep.to_matrix(&t.a)? * rep.to_matrix(&t.a.reflect())?;
        for (c, b) in t.crossings.iter().zip(&t.bs) {
            let m = Polynomial::monomial(c.clone());
            left = left
                * rep.to_matrix(&m)?
                * rep.to_matrix(&m.reflect())?
                * rep.to_matrix(b)?
                * rep.to_matrix(&b.reflect())?;
        }
        let mut ad = rep.to_matrix(&t.a)?;
        for (c, b) in t.crossings.iter().zip(&t.bs) {
            ad = ad * rep.to_matrix(&Polynomial::monomial(c.clone()))? * rep.to_matrix(b)?;
        }
        let right = ad * rep.to_matrix(&p.reflect())? * t.phase(order).to_complex();
        max_gap = max_gap.max((left - right).norm());
    }

    Ok(ConservationReport {
        trials,
        max_forbidden_trace,
        max_rearrangement_gap: max_gap,
        symbolic_rearrangement: symbolic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_degree_one_crossing_has_no_trace() {
        let r = Representation::new(3, 4).unwrap();
        let c = Polynomial::generator(3, 4, 1).unwrap();
        let m = r.to_matrix(&c).unwrap();
        let t = trace_product(&m, &r.to_matrix(&c.reflect()).unwrap());
        assert!(t.norm() < 1e-12);
    }

    #[test]
    fn degrees_summing_to_n_survive() {
        // I_1 = (1,0), I_2 = (2,0): D is the identity
        let r = Representation::new(3, 4).unwrap();
        let d = &Polynomial::parse(3, 4, "c1").unwrap() * &Polynomial::parse(3, 4, "c1^2").unwrap();
        let t = trace_product(&r.to_matrix(&d).unwrap(), &r.to_matrix(&d.reflect()).unwrap());
        assert!(t.norm() > 1.0);
    }

    #[test]
    fn small_run_passes() {
        for (n, l) in [(2, 4), (3, 4)] {
            let r = Representation::new(n, l).unwrap();
            let rep = conservation_law_check(&r, 20, 4).unwrap();
            assert!(rep.passed(), "n={n}: {rep:?}");
        }
    }
}
