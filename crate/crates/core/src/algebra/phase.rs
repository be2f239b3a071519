//! Exact powers of `ζ = e^{iπ/n}`, the square root of `ω = e^{2πi/n}`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

/// `ζ^value` with `value` reduced mod `2n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhaseExponent {
    value: u32,
    order: u32,
}

impl PhaseExponent {
    pub fn one(order: u32) -> Self {
        Self { value: 0, order }
    }

    /// `ζ^k`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let m = 2 * order as i64;
        Self {
            value: k.rem_euclid(m) as u32,
            order,
        }
    }

    /// `ω^k = ζ^{2k}`.
    pub fn omega_pow(order: u32, k: i64) -> Self {
        Self::zeta_pow(order, 2 * (k.rem_euclid(order as i64)))
    }

    /// `-1 = ζ^n`.
    pub fn minus_one(order: u32) -> Self {
        Self::zeta_pow(order, order as i64)
    }

    /// `(-1)^k`.
    pub fn sign(order: u32, k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Self::one(order)
        } else {
            Self::minus_one(order)
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn modulus(self) -> u32 {
        2 * self.order
    }

    pub fn is_one(self) -> bool {
        self.value == 0
    }

    pub fn conj(self) -> Self {
        Self::zeta_pow(self.order, -(self.value as i64))
    }

    pub fn pow(self, k: i64) -> Self {
        let m = self.modulus() as i128;
        let v = (self.value as i128 * k as i128).rem_euclid(m);
        Self {
            value: v as u32,
            order: self.order,
        }
    }

    /// The complex number `e^{iπ value / n}`.
    ///
    /// Quarter turns are returned exactly, so `ζ^n = -1` carries no rounding.
    pub fn to_complex(self) -> Complex64 {
        let m = self.modulus() as u64;
        let v = self.value as u64;
        if (4 * v).is_multiple_of(m) {
            return match 4 * v / m {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
        }
        // evaluate in the upper half plane so that conjugate exponents give
        // bitwise conjugate values
        let (v, flip) = if self.value > self.order {
            (2 * self.order - self.value, true)
        } else {
            (self.value, false)
        };
        let (s, c) = (PI * v as f64 / self.order as f64).sin_cos();
        Complex64::new(c, if flip { -s } else { s })
    }
}

impl Mul for PhaseExponent {
    type Output = PhaseExponent;

    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.order, rhs.order);
        Self {
            value: (self.value + rhs.value) % self.modulus(),
            order: self.order,
        }
    }
}

impl fmt::Debug for PhaseExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ^{} (n={})", self.value, self.order)
    }
}

/// The phase `(-1)^s ζ^{s²}` that multiplies a term of total crossing degree
/// `s` in the Trotter expansion of `e^{-H}`. It equals one whenever `s` is a
/// multiple of `n`.
pub fn expansion_phase(order: u32, total_degree: u64) -> PhaseExponent {
    let m = 2 * order as u128;
    let s = total_degree as u128;
    let sq = (s * s) % m;
    PhaseExponent::sign(order, (s % 2) as i64) * PhaseExponent::zeta_pow(order, sq as i64)
}
