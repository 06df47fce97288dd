//! Complex scalar kernels: shifted factorials, complex log-gamma and an
//! overflow-safe polar representation for long products.

use std::f64::consts::PI;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Every parameter of the toolkit is a double-precision complex number.
pub type ComplexScalar = Complex64;

/// Products up to this length are formed factor by factor.
pub const DIRECT_PRODUCT_MAX: usize = 64;

/// Largest `ln|z|` that still exponentiates to a finite `f64`.
const LN_MAX: f64 = 709.78;

/// A complex number held as `exp(log_magnitude + i·phase)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogComplex {
    pub log_magnitude: f64,
    pub phase: f64,
    pub is_zero: bool,
}

impl LogComplex {
    pub const ONE: LogComplex = LogComplex {
        log_magnitude: 0.0,
        phase: 0.0,
        is_zero: false,
    };
    pub const ZERO: LogComplex = LogComplex {
        log_magnitude: f64::NEG_INFINITY,
        phase: 0.0,
        is_zero: true,
    };

    pub fn new(log_magnitude: f64, phase: f64) -> Self {
        LogComplex {
            log_magnitude,
            phase: wrap_phase(phase),
            is_zero: false,
        }
    }

    pub fn from_complex(z: ComplexScalar) -> Self {
        if z == ComplexScalar::new(0.0, 0.0) {
            Self::ZERO
        } else {
            Self::new(z.norm().ln(), z.arg())
        }
    }

    /// `ln z` for some branch; only `exp` of the result is meaningful.
    pub fn from_ln(ln: ComplexScalar) -> Self {
        Self::new(ln.re, ln.im)
    }

    pub fn to_complex(self) -> Result<ComplexScalar> {
        if self.is_zero {
            return Ok(ComplexScalar::new(0.0, 0.0));
        }
        if self.log_magnitude > LN_MAX {
            return Err(Error::Overflow(format!(
                "magnitude e^{:.1}",
                self.log_magnitude
            )));
        }
        Ok(ComplexScalar::from_polar(self.log_magnitude.exp(), self.phase))
    }

    pub fn recip(self) -> Result<Self> {
        if self.is_zero {
            return Err(Error::Pole("reciprocal of zero".into()));
        }
        Ok(Self::new(-self.log_magnitude, -self.phase))
    }

    pub fn powi(self, n: usize) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        if self.is_zero {
            return Self::ZERO;
        }
        Self::new(self.log_magnitude * n as f64, self.phase * n as f64)
    }
}

impl Mul for LogComplex {
    type Output = LogComplex;

    fn mul(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero || rhs.is_zero {
            return LogComplex::ZERO;
        }
        LogComplex::new(
            self.log_magnitude + rhs.log_magnitude,
            self.phase + rhs.phase,
        )
    }
}

fn wrap_phase(phase: f64) -> f64 {
    let p = phase.rem_euclid(2.0 * PI);
    if p > PI {
        p - 2.0 * PI
    } else {
        p
    }
}

/// True when `a` lies on the lattice 0, −1, −2, … under the exact-integer rule.
pub fn is_nonpositive_integer(a: ComplexScalar) -> bool {
    a.im == 0.0 && a.re <= 0.0 && (a.re - a.re.round()).abs() <= 1e-300
}

/// Distance from `a` to the nearest point of 0, −1, −2, ….
pub fn distance_to_pole_lattice(a: ComplexScalar) -> f64 {
    let nearest = if a.re > 0.0 { 0.0 } else { a.re.round() };
    (a - ComplexScalar::new(nearest, 0.0)).norm()
}

/// The shifted factorial `(a)_l = a (a+1) ⋯ (a+l−1)`.
pub fn pochhammer(a: ComplexScalar, l: usize) -> Result<ComplexScalar> {
    if l == 0 {
        return Ok(ComplexScalar::new(1.0, 0.0));
    }
    if l <= DIRECT_PRODUCT_MAX {
        let mut acc = ComplexScalar::new(1.0, 0.0);
        for j in 0..l {
            acc *= a + j as f64;
        }
        if !(acc.re.is_finite() && acc.im.is_finite()) {
            return Err(Error::Overflow(format!("({a})_{l}")));
        }
        return Ok(acc);
    }
    log_pochhammer(a, l).to_complex()
}

/// The ratio `(a)_{l+1} / (a)_l`, i.e. `a + l`, defined even when `(a)_l = 0`.
pub fn pochhammer_step(a: ComplexScalar, l: usize) -> ComplexScalar {
    a + l as f64
}

/// `(a)_l` in polar-log form; never overflows.
pub fn log_pochhammer(a: ComplexScalar, l: usize) -> LogComplex {
    if l == 0 {
        return LogComplex::ONE;
    }
    if is_nonpositive_integer(a) && (-a.re) < l as f64 {
        return LogComplex::ZERO;
    }
    // Near the poles of Γ the reflection formula loses digits; sum logs instead.
    let near_lattice =
        distance_to_pole_lattice(a) < 0.5 || distance_to_pole_lattice(a + l as f64) < 0.5;
    if near_lattice || l <= 16 {
        let mut ln = ComplexScalar::new(0.0, 0.0);
        for j in 0..l {
            let f = a + j as f64;
            if f == ComplexScalar::new(0.0, 0.0) {
                return LogComplex::ZERO;
            }
            ln += f.ln();
        }
        return LogComplex::from_ln(ln);
    }
    LogComplex::from_ln(ln_gamma(a + l as f64) - ln_gamma(a))
}

/// `(a)_l` as a `LogComplex`, using the direct product whenever it is finite.
pub fn pochhammer_scaled(a: ComplexScalar, l: usize) -> LogComplex {
    if l <= DIRECT_PRODUCT_MAX {
        if let Ok(v) = pochhammer(a, l) {
            return LogComplex::from_complex(v);
        }
    }
    log_pochhammer(a, l)
}

/// `l!` in polar-log form.
pub fn log_factorial(l: usize) -> LogComplex {
    pochhammer_scaled(ComplexScalar::new(1.0, 0.0), l)
}

// Stirling coefficients B_{2j} / (2j (2j−1)).
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// Complex `ln Γ(z)` on some branch (only `exp` of it is branch-free).
///
/// Uses upward recurrence to `|z| ≥ 15` followed by an eight-term Stirling
/// series, and the reflection formula for `Re z < 1/2`.
pub fn ln_gamma(z: ComplexScalar) -> ComplexScalar {
    if z.re < 0.5 {
        let one = ComplexScalar::new(1.0, 0.0);
        return ComplexScalar::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(one - z);
    }
    let mut w = z;
    let mut shift = ComplexScalar::new(0.0, 0.0);
    while w.norm() < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = ComplexScalar::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift
}

fn ln_sin_pi(z: ComplexScalar) -> ComplexScalar {
    if z.im.abs() < 20.0 {
        return (z * PI).sin().ln();
    }
    // sin(πz) = e^{−iπz} (1 − e^{2iπz}) · i/2 for Im z > 0.
    let i = ComplexScalar::new(0.0, 1.0);
    if z.im > 0.0 {
        -i * PI * z + (1.0 - (2.0 * i * PI * z).exp()).ln() + (i * 0.5).ln()
    } else {
        ln_sin_pi(z.conj()).conj()
    }
}

/// `Γ(z)`; fails at the poles and on overflow.
pub fn gamma(z: ComplexScalar) -> Result<ComplexScalar> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("Γ({z})")));
    }
    LogComplex::from_ln(ln_gamma(z)).to_complex()
}

/// `(−1)^n` folded through the parity of `n`.
pub fn sign_pow(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Relative distance `|a − b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff(a: ComplexScalar, b: ComplexScalar) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}
