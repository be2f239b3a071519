//! Reflection-symmetric, gauge-invariant Hamiltonians `H = H- + H0 + ϑ(H-)`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{monomial_times_reflection, PhaseExponent, Polynomial};
use crate::error::{Error, Result};
use crate::exponents::{check_order_sites, ExponentVector};
use crate::representation::{Representation, MATRIX_TOLERANCE};

/// Which sign hypothesis on the crossing couplings holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingRule {
    /// Every `J ≥ 0`.
    AllNonneg,
    /// `n` even and every `(-1)^{|I|} J_I ≥ 0`.
    EvenNAlternating,
    /// Neither hypothesis holds; positivity is not guaranteed.
    None,
}

impl CouplingRule {
    pub fn guarantees_positivity(self) -> bool {
        self != CouplingRule::None
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CouplingRule::AllNonneg => "all_nonneg",
            CouplingRule::EvenNAlternating => "even_n_alternating",
            CouplingRule::None => "none",
        }
    }
}

impl fmt::Display for CouplingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Real couplings `J_I` of the crossing terms `C_I ϑ(C_I)`, keyed by
/// exponent vectors on the minus half.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingTable {
    order: u32,
    sites: usize,
    entries: BTreeMap<ExponentVector, f64>,
}

impl CouplingTable {
    pub fn new(order: u32, sites: usize) -> Result<Self> {
        check_order_sites(order, sites)?;
        Ok(Self {
            order,
            sites,
            entries: BTreeMap::new(),
        })
    }

    pub fn from_entries<I>(order: u32, sites: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, f64)>,
    {
        let mut table = Self::new(order, sites)?;
        for (e, j) in entries {
            table.insert(e, j)?;
        }
        Ok(table)
    }

    /// Adds `j` to the coupling of `exps`.
    pub fn insert(&mut self, exps: ExponentVector, j: f64) -> Result<()> {
        if exps.order() != self.order || exps.sites() != self.sites {
            return Err(Error::DimensionMismatch {
                expected_order: self.order,
                expected_sites: self.sites,
                found_order: exps.order(),
                found_sites: exps.sites(),
            });
        }
        if exps.is_zero() || !exps.on_minus() {
            return Err(Error::Domain(format!(
                "coupling key {exps} must be non-zero and supported on sites 1..={}",
                self.sites / 2
            )));
        }
        if !j.is_finite() {
            return Err(Error::InvalidParameters(format!("coupling for {exps} is not finite")));
        }
        *self.entries.entry(exps).or_insert(0.0) += j;
        Ok(())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentVector, f64)> {
        self.entries.iter().map(|(e, &j)| (e, j))
    }
}

/// Phase `(-1)^{|I|+1} ζ^{|I|²}` multiplying `J_I C_I ϑ(C_I)` in `H0`.
pub fn crossing_phase(exps: &ExponentVector) -> PhaseExponent {
    let order = exps.order();
    let d = exps.degree() % (2 * order as u64);
    PhaseExponent::sign(order, d as i64 + 1) * PhaseExponent::zeta_pow(order, (d * d) as i64)
}

/// `H0 = Σ (-1)^{|I|+1} ζ^{|I|²} J_I C_I ϑ(C_I)`.
pub fn build_h0(couplings: &CouplingTable) -> Polynomial {
    let terms = couplings.iter().map(|(exps, j)| {
        let (phase, target) = monomial_times_reflection(exps);
        let phase = phase * crossing_phase(exps);
        (target, phase.to_complex() * j)
    });
    Polynomial::from_terms(couplings.order, couplings.sites, terms).expect("keys validated on insert")
}

pub fn validate_couplings(couplings: &CouplingTable) -> CouplingRule {
    if couplings.iter().all(|(_, j)| j >= 0.0) {
        CouplingRule::AllNonneg
    } else if couplings.order.is_multiple_of(2)
        && couplings
            .iter()
            .all(|(e, j)| if e.degree() % 2 == 0 { j >= 0.0 } else { j <= 0.0 })
    {
        CouplingRule::EvenNAlternating
    } else {
        CouplingRule::None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    h_minus: Polynomial,
    couplings: CouplingTable,
    h_zero: Polynomial,
    h_plus: Polynomial,
    rule: CouplingRule,
}

impl HamiltonianSpec {
    pub fn assemble(h_minus: Polynomial, couplings: CouplingTable) -> Result<Self> {
        h_minus.check_compatible(&Polynomial::zero(couplings.order, couplings.sites)?)?;
        let offending: Vec<String> = h_minus
            .terms()
            .filter(|(e, _)| !(e.on_minus() && e.is_observable()))
            .map(|(e, _)| e.to_string())
            .collect();
        if !offending.is_empty() {
            return Err(Error::Domain(format!(
                "H- must be a gauge-invariant element of the minus subalgebra; offending terms: {}",
                offending.join(", ")
            )));
        }
        let h_zero = build_h0(&couplings);
        let h_plus = h_minus.reflect();
        let rule = validate_couplings(&couplings);
        let spec = Self {
            h_minus,
            couplings,
            h_zero,
            h_plus,
            rule,
        };
        debug_assert!(spec.total().reflect().approx_eq(&spec.total(), 1e-12));
        Ok(spec)
    }

    pub fn order(&self) -> u32 {
        self.h_minus.order()
    }

    pub fn sites(&self) -> usize {
        self.h_minus.sites()
    }

    pub fn h_minus(&self) -> &Polynomial {
        &self.h_minus
    }

    pub fn h_zero(&self) -> &Polynomial {
        &self.h_zero
    }

    pub fn h_plus(&self) -> &Polynomial {
        &self.h_plus
    }

    pub fn couplings(&self) -> &CouplingTable {
        &self.couplings
    }

    pub fn rule(&self) -> CouplingRule {
        self.rule
    }

    /// `H = H- + H0 + H+`.
    pub fn total(&self) -> Polynomial {
        &(&self.h_minus + &self.h_zero) + &self.h_plus
    }

    pub fn check_symmetries(&self, rep: &Representation) -> Result<SymmetryReport> {
        check_polynomial_symmetries(&self.total(), rep)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub reflection_invariant: bool,
    pub gauge_invariant: bool,
    /// `‖M(ϑ(H)) − M(H)‖`
    pub reflection_matrix_gap: f64,
    /// `‖M(U(H)) − M(H)‖`
    pub gauge_matrix_gap: f64,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.reflection_invariant
            && self.gauge_invariant
            && self.reflection_matrix_gap <= MATRIX_TOLERANCE
            && self.gauge_matrix_gap <= MATRIX_TOLERANCE
    }
}

/// Reflection and global gauge invariance of an arbitrary polynomial, both
/// symbolically and through its matrix.
pub fn check_polynomial_symmetries(h: &Polynomial, rep: &Representation) -> Result<SymmetryReport> {
    let reflected = h.reflect();
    let gauged = h.gauge_apply(None)?;
    let m = rep.to_matrix(h)?;
    Ok(SymmetryReport {
        reflection_invariant: reflected.approx_eq(h, crate::algebra::COEFFICIENT_TOLERANCE),
        gauge_invariant: gauged.approx_eq(h, crate::algebra::COEFFICIENT_TOLERANCE),
        reflection_matrix_gap: (rep.to_matrix(&reflected)? - &m).norm(),
        gauge_matrix_gap: (rep.to_matrix(&gauged)? - &m).norm(),
    })
}

/// The clock chain `H = ζ^{n-1} Σ_j t_j c_{j+1}* c_j = -ζ Σ_j t_j c_j c_{j+1}*`
/// split at the middle bond. `t` holds the `L-1` bond couplings and must be
/// mirror symmetric.
pub fn baxter(order: u32, sites: usize, t: &[f64]) -> Result<HamiltonianSpec> {
    check_order_sites(order, sites)?;
    if t.len() != sites - 1 {
        return Err(Error::InvalidParameters(format!(
            "expected {} bond couplings for L={sites}, got {}",
            sites - 1,
            t.len()
        )));
    }
    if let Some(i) = t.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidParameters(format!("t_{} is not finite", i + 1)));
    }
    let half = sites / 2;
    for j in 1..half {
        if t[j - 1] != t[sites - j - 1] {
            return Err(Error::InvalidParameters(format!(
                "bond couplings must be mirror symmetric: t_{j} = {} but t_{} = {}",
                t[j - 1],
                sites - j,
                t[sites - j - 1]
            )));
        }
    }
    // c_j c_{j+1}* = c_j c_{j+1}^{n-1} is already normal ordered
    let minus_zeta = PhaseExponent::minus_one(order) * PhaseExponent::zeta_pow(order, 1);
    let mut terms = Vec::new();
    for j in 1..half {
        let mut e = vec![0; sites];
        e[j - 1] = 1;
        e[j] = order - 1;
        terms.push((ExponentVector::new(order, e)?, minus_zeta.to_complex() * t[j - 1]));
    }
    let h_minus = Polynomial::from_terms(order, sites, terms)?;
    let couplings = CouplingTable::from_entries(
        order,
        sites,
        [(ExponentVector::unit(order, sites, half, 1)?, -t[half - 1])],
    )?;
    HamiltonianSpec::assemble(h_minus, couplings)
}

/// A coefficient times an ordered word of `(site, power)` factors.
pub type Word = (Complex64, Vec<(usize, u32)>);

/// The unsplit chain `ζ^{n-1} Σ_j t_j c_{j+1}^{n-1} c_j` written in
/// generator order as given, without normal ordering.
pub fn baxter_unsplit(order: u32, sites: usize, t: &[f64]) -> Result<Vec<Word>> {
    check_order_sites(order, sites)?;
    if t.len() != sites - 1 {
        return Err(Error::InvalidParameters(format!(
            "expected {} bond couplings for L={sites}, got {}",
            sites - 1,
            t.len()
        )));
    }
    let prefactor = PhaseExponent::zeta_pow(order, order as i64 - 1).to_complex();
    Ok(t.iter()
        .enumerate()
        .map(|(i, &tj)| (prefactor * tj, vec![(i + 2, order - 1), (i + 1, 1)]))
        .collect())
}

/// On-disk description of a Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecFile {
    General {
        order: Option<u32>,
        sites: Option<usize>,
        h_minus: Vec<(Complex64, Vec<i64>, String)>,
        couplings: Vec<(Vec<i64>, f64, String)>,
    },
    Baxter {
        order: u32,
        sites: usize,
        t: Vec<f64>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    n: Option<u32>,
    #[serde(rename = "L")]
    l: Option<usize>,
    #[serde(default)]
    h_minus: Vec<RawTerm>,
    #[serde(default)]
    couplings: Vec<RawCoupling>,
    baxter: Option<RawBaxter>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coefficient: [f64; 2],
    exponents: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoupling {
    exponents: Vec<i64>,
    #[serde(rename = "J")]
    j: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBaxter {
    n: u32,
    #[serde(rename = "L")]
    l: usize,
    t: Vec<f64>,
}

impl SpecFile {
    /// Parses the JSON spec format. Syntax errors carry a line and column;
    /// semantic errors carry the JSON path of the offending value.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| {
            let message = e.to_string();
            // serde appends the position, which is already the location
            let message = message
                .rsplit_once(" at line ")
                .map_or(message.as_str(), |(m, _)| m)
                .to_string();
            Error::parse(format!("line {} column {}", e.line(), e.column()), message)
        })?;
        if let Some(b) = raw.baxter {
            if !raw.h_minus.is_empty() || !raw.couplings.is_empty() {
                return Err(Error::parse(
                    "baxter",
                    "the baxter shortcut cannot be combined with h_minus or couplings",
                ));
            }
            return Ok(SpecFile::Baxter {
                order: b.n,
                sites: b.l,
                t: b.t,
            });
        }
        let h_minus = raw
            .h_minus
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                (
                    Complex64::new(t.coefficient[0], t.coefficient[1]),
                    t.exponents,
                    format!("h_minus[{i}]"),
                )
            })
            .collect();
        let couplings = raw
            .couplings
            .into_iter()
            .enumerate()
            .map(|(i, c)| (c.exponents, c.j, format!("couplings[{i}]")))
            .collect();
        Ok(SpecFile::General {
            order: raw.n,
            sites: raw.l,
            h_minus,
            couplings,
        })
    }

    pub fn order(&self) -> Option<u32> {
        match self {
            SpecFile::General { order, .. } => *order,
            SpecFile::Baxter { order, .. } => Some(*order),
        }
    }

    pub fn sites(&self) -> Option<usize> {
        match self {
            SpecFile::General { sites, .. } => *sites,
            SpecFile::Baxter { sites, .. } => Some(*sites),
        }
    }

    /// Replaces `n` and `L` where given.
    pub fn override_shape(&mut self, n: Option<u32>, l: Option<usize>) {
        match self {
            SpecFile::General { order, sites, .. } => {
                if n.is_some() {
                    *order = n;
                }
                if l.is_some() {
                    *sites = l;
                }
            }
            SpecFile::Baxter { order, sites, .. } => {
                if let Some(n) = n {
                    *order = n;
                }
                if let Some(l) = l {
                    *sites = l;
                }
            }
        }
    }

    pub fn build(&self) -> Result<HamiltonianSpec> {
        match self {
            SpecFile::Baxter { order, sites, t } => baxter(*order, *sites, t),
            SpecFile::General {
                order,
                sites,
                h_minus,
                couplings,
            } => {
                let order = order.ok_or_else(|| Error::parse("n", "missing field"))?;
                let sites = sites.ok_or_else(|| Error::parse("L", "missing field"))?;
                check_order_sites(order, sites).map_err(|e| Error::parse("n/L", e.to_string()))?;
                let mut terms = Vec::new();
                for (c, exps, path) in h_minus {
                    if !c.re.is_finite() || !c.im.is_finite() {
                        return Err(Error::parse(format!("{path}.coefficient"), "must be finite"));
                    }
                    terms.push((checked_vector(order, sites, exps, path)?, *c));
                }
                let mut table = CouplingTable::new(order, sites)?;
                for (exps, j, path) in couplings {
                    if !j.is_finite() {
                        return Err(Error::parse(format!("{path}.J"), "must be finite"));
                    }
                    let e = checked_vector(order, sites, exps, path)?;
                    table
                        .insert(e, *j)
                        .map_err(|err| Error::parse(format!("{path}.exponents"), err.to_string()))?;
                }
                let h = Polynomial::from_terms(order, sites, terms)?;
                HamiltonianSpec::assemble(h, table)
            }
        }
    }
}

fn checked_vector(order: u32, sites: usize, exps: &[i64], path: &str) -> Result<ExponentVector> {
    if exps.len() != sites {
        return Err(Error::parse(
            format!("{path}.exponents"),
            format!("expected {sites} entries, found {}", exps.len()),
        ));
    }
    if let Some(i) = exps.iter().position(|&e| e < 0 || e >= order as i64) {
        return Err(Error::parse(
            format!("{path}.exponents[{i}]"),
            format!("exponent {} outside 0..{order}", exps[i]),
        ));
    }
    ExponentVector::new(order, exps.iter().map(|&e| e as u32).collect())
}
