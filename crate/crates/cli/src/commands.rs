use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use parafermion::hamiltonian::{baxter, CouplingTable, HamiltonianSpec, SpecFile};
use parafermion::representation::{kronecker_generators, verify_relations};
use parafermion::rp::bounds::{rp_bounds_check, BoundsReport, SplitHamiltonian};
use parafermion::rp::counterexample::{
    counterexample_closed_form, counterexample_f, family_check, series_sum, Family, PairValue,
};
use parafermion::rp::trotter::{convergence_ratios, trotter_errors};
use parafermion::rp::{check_rp, gram_psd, matrix_exp, random_polynomial, structured_witnesses};
use parafermion::{Error, ExponentVector, Polynomial, Representation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Cli, Command};

/// Largest dimension for which the dense Kronecker relation check also runs.
const REFERENCE_DIMENSION: usize = 512;
/// Accepted band for the error ratio between k and 2k Trotter steps.
const TROTTER_BAND: (f64, f64) = (1.6, 2.4);
/// Terms per random operator in the bounds check.
const BOUNDS_TERMS: usize = 4;
/// Pairs checked when `--family` is not given.
const LISTED_PAIRS: [(u32, u32, u32); 4] = [(2, 2, 1), (3, 3, 1), (3, 3, 2), (1, 3, 0)];

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
    Core(Error),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Io(m) => write!(f, "{m}"),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

pub struct Report {
    pub report: Value,
    pub passed: bool,
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn validate(cli: &Cli) -> Outcome<()> {
    if cli.samples < 1 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::Usage(format!(
            "--tol must be a positive number, got {}",
            cli.tol
        )));
    }
    if cli.k < 1 {
        return Err(Failure::Usage("--k must be at least 1".into()));
    }
    if matches!(cli.n, Some(n) if n < 2) {
        return Err(Failure::Usage("--n must be at least 2".into()));
    }
    if matches!(cli.sites, Some(l) if l == 0 || l % 2 == 1) {
        return Err(Failure::Usage("--L must be even and positive".into()));
    }
    Ok(())
}

fn read_spec_file(cli: &Cli) -> Outcome<Option<SpecFile>> {
    let Some(path) = &cli.spec else { return Ok(None) };
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut file = SpecFile::parse(&text).map_err(|e| match e {
        Error::Parse { location, message } => Failure::Core(Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        }),
        other => Failure::Core(other),
    })?;
    file.override_shape(cli.n, cli.sites);
    Ok(Some(file))
}

/// The spec from `--spec`, or `fallback` built from `--n` and `--L`.
fn load_spec(cli: &Cli, fallback: impl FnOnce(u32, usize) -> Outcome<HamiltonianSpec>) -> Outcome<HamiltonianSpec> {
    match read_spec_file(cli)? {
        Some(file) => Ok(file.build()?),
        None => {
            let (n, l) = shape_flags(cli)?;
            fallback(n, l)
        }
    }
}

fn require_spec(cli: &Cli) -> Outcome<HamiltonianSpec> {
    load_spec(cli, |_, _| Err(Failure::Usage("this command needs --spec".into())))
}

fn shape_flags(cli: &Cli) -> Outcome<(u32, usize)> {
    match (cli.n, cli.sites) {
        (Some(n), Some(l)) => Ok((n, l)),
        _ => Err(Failure::Usage("give --spec or both --n and --L".into())),
    }
}

fn shape(cli: &Cli) -> Outcome<(u32, usize)> {
    if let Some(file) = read_spec_file(cli)? {
        if let (Some(n), Some(l)) = (file.order(), file.sites()) {
            return Ok((n, l));
        }
    }
    shape_flags(cli)
}

fn free_spec(n: u32, l: usize) -> Outcome<HamiltonianSpec> {
    Ok(HamiltonianSpec::assemble(
        Polynomial::zero(n, l)?,
        CouplingTable::new(n, l)?,
    )?)
}

pub fn run(cli: &Cli) -> Outcome<Report> {
    validate(cli)?;
    match cli.command {
        Command::VerifyRelations => verify(cli),
        Command::RpCheck => rp_check(cli),
        Command::Gram => gram(cli),
        Command::Trotter => trotter(cli),
        Command::Bounds => bounds(cli),
        Command::Counterexample => counterexample(cli),
        Command::Families => families(cli),
        Command::Baxter => baxter_chain(cli),
        Command::Decompose => decompose(cli),
    }
}

/// Writes `report` as pretty JSON with sorted keys and a trailing newline.
pub fn emit(report: &Value, out: Option<&Path>) -> Outcome<()> {
    let mut text = serde_json::to_string_pretty(report).map_err(|e| Failure::Io(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("cannot write report: {e}"))),
    }
}

fn verify(cli: &Cli) -> Outcome<Report> {
    let (n, l) = shape(cli)?;
    let rep = Representation::new(n, l)?;
    let relations = rep.verify();
    let mut passed = relations.max_residual() <= cli.tol;
    let reference = if rep.dim() <= REFERENCE_DIMENSION {
        let dense = verify_relations(n, &kronecker_generators(n, l)?);
        let gens = rep.generators();
        let kron = kronecker_generators(n, l)?;
        let gap = gens.iter().zip(&kron).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        passed &= dense.max_residual() <= cli.tol && gap <= cli.tol;
        json!({"relations": dense, "generator_gap": gap})
    } else {
        Value::Null
    };
    Ok(Report {
        report: json!({
            "n": n,
            "L": l,
            "dim": rep.dim(),
            "relations": relations,
            "reference": reference,
            "tolerance": cli.tol,
            "passed": passed,
        }),
        passed,
    })
}

fn rp_check(cli: &Cli) -> Outcome<Report> {
    let spec = require_spec(cli)?;
    let rep = Representation::new(spec.order(), spec.sites())?;
    let report = check_rp(&spec, &rep, cli.samples, cli.seed, cli.tol)?;
    Ok(Report {
        passed: report.passed(),
        report: serde_json::to_value(&report).expect("report serializes"),
    })
}

fn gram(cli: &Cli) -> Outcome<Report> {
    let spec = require_spec(cli)?;
    let (n, l) = (spec.order(), spec.sites());
    let rep = Representation::new(n, l)?;
    let witnesses = structured_witnesses(n, l)?;
    let basis: Vec<Polynomial> = witnesses.iter().map(|(_, p)| p.clone()).collect();
    let g = gram_psd(&spec, &rep, &basis)?;
    let scale = g.raw.iter().map(|z| z.norm_sqr()).fold(1.0, f64::max);
    let relative = g.min_eigenvalue / (1.0 + g.max_abs_eigenvalue);
    let passed = relative >= -cli.tol && g.schwarz_margin >= -cli.tol * scale;
    let rows: Vec<Value> = g
        .raw
        .row_iter()
        .map(|r| Value::Array(r.iter().map(|z| complex(*z)).collect()))
        .collect();
    Ok(Report {
        report: json!({
            "basis": witnesses.iter().map(|(name, _)| name.clone()).collect::<Vec<_>>(),
            "gram": rows,
            "min_eigenvalue": g.min_eigenvalue,
            "relative_min_eigenvalue": relative,
            "max_abs_eigenvalue": g.max_abs_eigenvalue,
            "schwarz_margin": g.schwarz_margin,
            "rule": spec.rule(),
            "tolerance": cli.tol,
            "passed": passed,
        }),
        passed,
    })
}

fn trotter(cli: &Cli) -> Outcome<Report> {
    let spec = load_spec(cli, |n, _| Ok(parafermion::rp::counterexample::single_bond_spec(n)?))?;
    let rep = Representation::new(spec.order(), spec.sites())?;
    let ks: Vec<u32> = (0..4)
        .map(|i| cli.k.checked_mul(1 << i))
        .collect::<Option<_>>()
        .ok_or_else(|| Failure::Usage(format!("--k {} is too large", cli.k)))?;
    let points = trotter_errors(&spec, &rep, &ks)?;
    let ratios = convergence_ratios(&points);
    let passed = ratios.iter().all(|r| (TROTTER_BAND.0..=TROTTER_BAND.1).contains(r));
    Ok(Report {
        report: json!({
            "n": spec.order(),
            "L": spec.sites(),
            "points": points,
            "ratios": ratios,
            "band": [TROTTER_BAND.0, TROTTER_BAND.1],
            "passed": passed,
        }),
        passed,
    })
}

struct Worst {
    bound_1: f64,
    bound_2: f64,
    auxiliary_violation: bool,
}

impl Worst {
    fn new() -> Self {
        Self {
            bound_1: f64::INFINITY,
            bound_2: f64::INFINITY,
            auxiliary_violation: false,
        }
    }

    fn absorb(&mut self, r: &BoundsReport) {
        self.bound_1 = self.bound_1.min(r.bound_1_margin);
        self.bound_2 = self.bound_2.min(r.bound_2_margin);
        self.auxiliary_violation |= r.auxiliary_violation;
    }

    fn to_json(&self) -> Value {
        json!({
            "min_bound_1_margin": self.bound_1,
            "min_bound_2_margin": self.bound_2,
            "auxiliary_violation": self.auxiliary_violation,
        })
    }
}

fn bounds(cli: &Cli) -> Outcome<Report> {
    let spec = require_spec(cli)?;
    let (n, l) = (spec.order(), spec.sites());
    let rep = Representation::new(n, l)?;
    let split = SplitHamiltonian::from_spec(&spec);
    let id = Polynomial::identity(n, l)?;
    let identity = rp_bounds_check(&id, &id, &split, &rep, cli.tol)?;
    let observables = ExponentVector::minus_observables(n, l)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let (mut minus, mut plus) = (Worst::new(), Worst::new());
    for _ in 0..cli.samples {
        let a = random_polynomial(&mut rng, n, l, &observables, BOUNDS_TERMS);
        let b = random_polynomial(&mut rng, n, l, &observables, BOUNDS_TERMS);
        minus.absorb(&rp_bounds_check(&a, &b, &split, &rep, cli.tol)?);
        plus.absorb(&rp_bounds_check(&a.reflect(), &b.reflect(), &split, &rep, cli.tol)?);
    }
    let ok = |w: &Worst| !w.auxiliary_violation && w.bound_1 >= -cli.tol && w.bound_2 >= -cli.tol;
    let passed = identity.passed(cli.tol) && ok(&minus) && ok(&plus);
    Ok(Report {
        report: json!({
            "identity": identity,
            "minus_side": minus.to_json(),
            "plus_side": plus.to_json(),
            "samples": cli.samples,
            "seed": cli.seed,
            "tolerance": cli.tol,
            "passed": passed,
        }),
        passed,
    })
}

fn counterexample(cli: &Cli) -> Outcome<Report> {
    let n = cli.n.ok_or_else(|| Failure::Usage("counterexample needs --n".into()))?;
    let value = counterexample_f(n, cli.j)?;
    let positive = value.re >= -cli.tol * (1.0 + value.norm()) && value.im.abs() <= cli.tol * (1.0 + value.norm());
    let (closed, series) = if cli.j == 1 {
        (complex(counterexample_closed_form(n)), json!(series_sum(n)))
    } else {
        (Value::Null, Value::Null)
    };
    Ok(Report {
        report: json!({
            "n": n,
            "j": cli.j,
            "value": complex(value),
            "closed_form": closed,
            "series_sum": series,
            "positive": positive,
            "tolerance": cli.tol,
        }),
        passed: positive,
    })
}

fn pair_json(family: Family, k: u32, jprime: u32, v: &PairValue) -> Value {
    json!({
        "family": family.index(),
        "k": k,
        "jprime": jprime,
        "n": v.n,
        "j": v.j,
        "value": complex(v.value),
        "positive": v.positive,
    })
}

fn families(cli: &Cli) -> Outcome<Report> {
    let requests: Vec<(u32, u32, u32)> = match cli.family {
        Some(f) => {
            let k = cli
                .kparam
                .ok_or_else(|| Failure::Usage("--family needs --kparam".into()))?;
            vec![(f, k, cli.jprime.unwrap_or(0))]
        }
        None => LISTED_PAIRS.to_vec(),
    };
    let mut pairs = Vec::new();
    let mut passed = true;
    for (f, k, jprime) in requests {
        let family = Family::from_index(f)?;
        let v = family_check(family, k, jprime)?;
        passed &= v.positive;
        pairs.push(pair_json(family, k, jprime, &v));
    }
    Ok(Report {
        report: json!({"pairs": pairs, "passed": passed}),
        passed,
    })
}

fn baxter_chain(cli: &Cli) -> Outcome<Report> {
    let spec = load_spec(cli, |n, l| Ok(baxter(n, l, &vec![-1.0; l.saturating_sub(1)])?))?;
    let rep = Representation::new(spec.order(), spec.sites())?;
    let symmetry = spec.check_symmetries(&rep)?;
    let rp = check_rp(&spec, &rep, cli.samples, cli.seed, cli.tol)?;
    let passed = symmetry.passed() && rp.passed();
    Ok(Report {
        report: json!({
            "n": spec.order(),
            "L": spec.sites(),
            "rule": spec.rule(),
            "guaranteed": spec.rule().guarantees_positivity(),
            "symmetry": symmetry,
            "rp": rp,
            "passed": passed,
        }),
        passed,
    })
}

fn terms_json(p: &Polynomial) -> Value {
    Value::Array(
        p.terms()
            .map(|(e, c)| json!({"exponents": e.entries(), "coefficient": complex(*c)}))
            .collect(),
    )
}

fn decompose(cli: &Cli) -> Outcome<Report> {
    let spec = load_spec(cli, free_spec)?;
    let rep = Representation::new(spec.order(), spec.sites())?;
    let total = spec.total();
    let h = rep.to_matrix(&total)?;
    let expanded = rep.decompose(&h)?;
    let round_trip = expanded.max_difference(&total);
    let exact = matrix_exp(&-h)?;
    let weight = rep.decompose(&exact)?;
    let reconstruction = (rep.to_matrix(&weight)? - &exact).norm() / exact.norm();
    let passed = round_trip <= cli.tol * (1.0 + total.max_abs_coefficient()) && reconstruction <= cli.tol;
    Ok(Report {
        report: json!({
            "n": spec.order(),
            "L": spec.sites(),
            "hamiltonian": terms_json(&expanded),
            "weight": terms_json(&weight),
            "round_trip_error": round_trip,
            "reconstruction_error": reconstruction,
            "passed": passed,
        }),
        passed,
    })
}
