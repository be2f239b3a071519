//! Matrix exponential by scaling and squaring with diagonal Padé
//! approximants of degree 3 to 13.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::representation::Matrix;

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// 1-norm bounds below which each approximant is accurate to unit roundoff.
const THETA: [(f64, &[f64]); 4] = [
    (1.495585217958292e-2, &PADE3),
    (2.539_398_330_063_23e-1, &PADE5),
    (9.504178996162932e-1, &PADE7),
    (2.097847961257068, &PADE9),
];
const THETA13: f64 = 5.371920351148152;

fn one_norm(a: &Matrix) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn scaled_identity(n: usize, s: f64) -> Matrix {
    Matrix::identity(n, n) * Complex64::new(s, 0.0)
}

/// Odd and even parts `(U, V)` of a low-degree approximant.
fn pade_parts(a: &Matrix, b: &[f64]) -> (Matrix, Matrix) {
    let n = a.nrows();
    let a2 = a * a;
    let mut odd = scaled_identity(n, b[1]);
    let mut even = scaled_identity(n, b[0]);
    let mut power = Matrix::identity(n, n);
    for i in 1..b.len() / 2 {
        power = &power * &a2;
        odd += &power * Complex64::new(b[2 * i + 1], 0.0);
        even += &power * Complex64::new(b[2 * i], 0.0);
    }
    (a * odd, even)
}

fn pade13_parts(a: &Matrix) -> (Matrix, Matrix) {
    let b = &PADE13;
    let n = a.nrows();
    let c = |x: f64| Complex64::new(x, 0.0);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = &a6 * (&a6 * c(b[13]) + &a4 * c(b[11]) + &a2 * c(b[9]));
    let u = a * (inner_u + &a6 * c(b[7]) + &a4 * c(b[5]) + &a2 * c(b[3]) + scaled_identity(n, b[1]));
    let inner_v = &a6 * (&a6 * c(b[12]) + &a4 * c(b[10]) + &a2 * c(b[8]));
    let v = inner_v + &a6 * c(b[6]) + &a4 * c(b[4]) + &a2 * c(b[2]) + scaled_identity(n, b[0]);
    (u, v)
}

/// `e^A`. The zero matrix maps to the identity exactly.
pub fn matrix_exp(a: &Matrix) -> Result<Matrix> {
    if a.nrows() != a.ncols() {
        return Err(Error::InvalidParameters(format!(
            "matrix exponential needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidParameters("matrix has non-finite entries".into()));
    }
    let n = a.nrows();
    if a.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        return Ok(Matrix::identity(n, n));
    }
    let norm = one_norm(a);
    let (u, v, squarings) = match THETA.iter().find(|(theta, _)| norm <= *theta) {
        Some((_, b)) => {
            let (u, v) = pade_parts(a, b);
            (u, v, 0)
        }
        None => {
            let s = if norm > THETA13 {
                (norm / THETA13).log2().ceil() as i32
            } else {
                0
            };
            let scaled = a * Complex64::new(2f64.powi(-s), 0.0);
            let (u, v) = pade13_parts(&scaled);
            (u, v, s)
        }
    };
    let numerator = &v + &u;
    let denominator = &v - &u;
    let mut x = denominator
        .lu()
        .solve(&numerator)
        .ok_or_else(|| Error::Domain("Padé denominator is singular".into()))?;
    for _ in 0..squarings {
        x = &x * &x;
    }
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Resource {
            what: format!("finite matrix exponential (input 1-norm {norm:.3e})"),
            required: norm.ceil() as u128,
            cap: 709,
        });
    }
    Ok(x)
}
