use ndarray::Array2;

use super::params::{check_lower_param, SeriesSpec};
use crate::error::{Error, Result};
use crate::numerics::{log_factorial, pochhammer_scaled, sign_pow, ComplexScalar, LogComplex};

/// Cells whose linear index is a multiple of this are rebuilt from scratch.
pub const REFRESH_STRIDE: usize = 16;

/// Truncated coefficients `A[m][n]` of `x^m y^n` on `0..=M × 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientGrid {
    pub coeffs: Array2<ComplexScalar>,
    pub provenance: SeriesSpec,
}

impl CoefficientGrid {
    pub fn max_m(&self) -> usize {
        self.coeffs.nrows() - 1
    }

    pub fn max_n(&self) -> usize {
        self.coeffs.ncols() - 1
    }

    pub fn get(&self, m: usize, n: usize) -> ComplexScalar {
        self.coeffs[[m, n]]
    }
}

/// `(−1)^{lk} (−t)_{lk}` factor attached to one summation index.
#[derive(Debug, Clone, Copy)]
struct Discrete {
    t: ComplexScalar,
    k: u32,
}

impl Discrete {
    /// Ratio of the factor at `l + 1` to the factor at `l`: `∏_j (t − lk − j)`.
    fn ratio(self, l: usize) -> ComplexScalar {
        let base = l as f64 * self.k as f64;
        (0..self.k).fold(ComplexScalar::new(1.0, 0.0), |acc, j| {
            acc * (self.t - base - j as f64)
        })
    }

    fn scratch(self, l: usize) -> LogComplex {
        let len = l * self.k as usize;
        let sign = LogComplex::from_complex(ComplexScalar::new(sign_pow(len as i64), 0.0));
        sign * pochhammer_scaled(-self.t, len)
    }
}

/// Every supported series, flattened into one Kampé de Fériet shape with
/// optional discrete factors on `m`, `n` and `m + n`.
#[derive(Debug, Clone)]
pub(crate) struct Kernel {
    coupled_num: Vec<ComplexScalar>,
    coupled_den: Vec<ComplexScalar>,
    x_num: Vec<ComplexScalar>,
    x_den: Vec<ComplexScalar>,
    y_num: Vec<ComplexScalar>,
    y_den: Vec<ComplexScalar>,
    disc_x: Option<Discrete>,
    disc_y: Option<Discrete>,
    disc_xy: Option<Discrete>,
}

fn disc(t: ComplexScalar, k: u32) -> Option<Discrete> {
    (k > 0).then_some(Discrete { t, k })
}

impl Kernel {
    pub(crate) fn new(spec: &SeriesSpec) -> Kernel {
        match spec {
            SeriesSpec::F41(p) => Kernel {
                coupled_num: vec![p.a, p.b],
                coupled_den: vec![],
                x_num: vec![],
                x_den: vec![p.c1],
                y_num: vec![],
                y_den: vec![p.c2],
                disc_x: disc(p.t1, p.k1),
                disc_y: disc(p.t2, p.k2),
                disc_xy: None,
            },
            SeriesSpec::F42(p) => Kernel {
                coupled_num: vec![p.a, p.b],
                coupled_den: vec![],
                x_num: vec![],
                x_den: vec![p.c1],
                y_num: vec![],
                y_den: vec![p.c2],
                disc_x: None,
                disc_y: None,
                disc_xy: disc(p.t, p.k),
            },
            SeriesSpec::F4(p) => Kernel {
                coupled_num: vec![p.a, p.b],
                coupled_den: vec![],
                x_num: vec![],
                x_den: vec![p.c1],
                y_num: vec![],
                y_den: vec![p.c2],
                disc_x: None,
                disc_y: None,
                disc_xy: None,
            },
            SeriesSpec::Kdf(p) => Kernel {
                coupled_num: p.coupled_num.clone(),
                coupled_den: p.coupled_den.clone(),
                x_num: p.x_num.clone(),
                x_den: p.x_den.clone(),
                y_num: p.y_num.clone(),
                y_den: p.y_den.clone(),
                disc_x: None,
                disc_y: None,
                disc_xy: None,
            },
        }
    }

    pub(crate) fn check_poles(&self, max_m: usize, max_n: usize) -> Result<()> {
        for (i, d) in self.coupled_den.iter().enumerate() {
            check_lower_param(&format!("coupled denominator {i}"), *d, max_m + max_n)?;
        }
        for (i, d) in self.x_den.iter().enumerate() {
            check_lower_param(&format!("x denominator {i}"), *d, max_m)?;
        }
        for (i, d) in self.y_den.iter().enumerate() {
            check_lower_param(&format!("y denominator {i}"), *d, max_n)?;
        }
        Ok(())
    }

    /// `A[m][n]` from independent shifted factorials, in polar-log form.
    pub(crate) fn scratch_log(&self, m: usize, n: usize) -> Result<LogComplex> {
        let s = m + n;
        let mut acc = LogComplex::ONE;
        for a in &self.coupled_num {
            acc = acc * pochhammer_scaled(*a, s);
        }
        for a in &self.x_num {
            acc = acc * pochhammer_scaled(*a, m);
        }
        for a in &self.y_num {
            acc = acc * pochhammer_scaled(*a, n);
        }
        if let Some(d) = self.disc_x {
            acc = acc * d.scratch(m);
        }
        if let Some(d) = self.disc_y {
            acc = acc * d.scratch(n);
        }
        if let Some(d) = self.disc_xy {
            acc = acc * d.scratch(s);
        }
        let mut den = log_factorial(m) * log_factorial(n);
        for c in &self.coupled_den {
            den = den * pochhammer_scaled(*c, s);
        }
        for c in &self.x_den {
            den = den * pochhammer_scaled(*c, m);
        }
        for c in &self.y_den {
            den = den * pochhammer_scaled(*c, n);
        }
        if acc.is_zero {
            return Ok(LogComplex::ZERO);
        }
        Ok(acc * den.recip()?)
    }

    /// `A[m+1][n] / A[m][n]`.
    pub(crate) fn ratio_m(&self, m: usize, n: usize) -> ComplexScalar {
        let s = (m + n) as f64;
        let mf = m as f64;
        let mut num = ComplexScalar::new(1.0, 0.0);
        let mut den = ComplexScalar::new(mf + 1.0, 0.0);
        for a in &self.coupled_num {
            num *= a + s;
        }
        for c in &self.coupled_den {
            den *= c + s;
        }
        for a in &self.x_num {
            num *= a + mf;
        }
        for c in &self.x_den {
            den *= c + mf;
        }
        if let Some(d) = self.disc_x {
            num *= d.ratio(m);
        }
        if let Some(d) = self.disc_xy {
            num *= d.ratio(m + n);
        }
        num / den
    }

    /// `A[m][n+1] / A[m][n]`.
    pub(crate) fn ratio_n(&self, m: usize, n: usize) -> ComplexScalar {
        let s = (m + n) as f64;
        let nf = n as f64;
        let mut num = ComplexScalar::new(1.0, 0.0);
        let mut den = ComplexScalar::new(nf + 1.0, 0.0);
        for a in &self.coupled_num {
            num *= a + s;
        }
        for c in &self.coupled_den {
            den *= c + s;
        }
        for a in &self.y_num {
            num *= a + nf;
        }
        for c in &self.y_den {
            den *= c + nf;
        }
        if let Some(d) = self.disc_y {
            num *= d.ratio(n);
        }
        if let Some(d) = self.disc_xy {
            num *= d.ratio(m + n);
        }
        num / den
    }

    /// Grid of `A[m][n] x^m y^n` built by ratio recurrences with periodic
    /// scratch refresh.
    pub(crate) fn weighted_grid(
        &self,
        max_m: usize,
        max_n: usize,
        x: ComplexScalar,
        y: ComplexScalar,
    ) -> Result<Array2<ComplexScalar>> {
        self.check_poles(max_m, max_n)?;
        let lx = LogComplex::from_complex(x);
        let ly = LogComplex::from_complex(y);
        let mut grid = Array2::<ComplexScalar>::zeros((max_m + 1, max_n + 1));
        for m in 0..=max_m {
            for n in 0..=max_n {
                let linear = m * (max_n + 1) + n;
                let v = if linear.is_multiple_of(REFRESH_STRIDE) {
                    (self.scratch_log(m, n)? * lx.powi(m) * ly.powi(n)).to_complex()?
                } else if n == 0 {
                    grid[[m - 1, 0]] * self.ratio_m(m - 1, 0) * x
                } else {
                    grid[[m, n - 1]] * self.ratio_n(m, n - 1) * y
                };
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::Overflow(format!("coefficient ({m}, {n})")));
                }
                grid[[m, n]] = v;
            }
        }
        Ok(grid)
    }

    pub(crate) fn scratch_grid(
        &self,
        max_m: usize,
        max_n: usize,
    ) -> Result<Array2<ComplexScalar>> {
        self.check_poles(max_m, max_n)?;
        let mut grid = Array2::<ComplexScalar>::zeros((max_m + 1, max_n + 1));
        for ((m, n), cell) in grid.indexed_iter_mut() {
            *cell = self.scratch_log(m, n)?.to_complex()?;
        }
        Ok(grid)
    }
}

/// Coefficients of `x^m y^n` (arguments stripped) built by ratio recurrences,
/// refreshed from direct shifted-factorial products every
/// [`REFRESH_STRIDE`] cells.
pub fn coefficient_grid(spec: &SeriesSpec, max_m: usize, max_n: usize) -> Result<CoefficientGrid> {
    let one = ComplexScalar::new(1.0, 0.0);
    let coeffs = Kernel::new(spec).weighted_grid(max_m, max_n, one, one)?;
    Ok(CoefficientGrid {
        coeffs,
        provenance: spec.clone(),
    })
}

/// Same cells as [`coefficient_grid`], each from independent products.
pub fn scratch_grid(spec: &SeriesSpec, max_m: usize, max_n: usize) -> Result<CoefficientGrid> {
    let coeffs = Kernel::new(spec).scratch_grid(max_m, max_n)?;
    Ok(CoefficientGrid {
        coeffs,
        provenance: spec.clone(),
    })
}

/// Single term `A[m][n] x^m y^n` of any supported series.
pub fn term(spec: &SeriesSpec, m: usize, n: usize) -> Result<ComplexScalar> {
    let k = Kernel::new(spec);
    k.check_poles(m, n)?;
    let lx = LogComplex::from_complex(spec.x());
    let ly = LogComplex::from_complex(spec.y());
    (k.scratch_log(m, n)? * lx.powi(m) * ly.powi(n)).to_complex()
}

pub fn term_f41(p: &super::F41Params, m: usize, n: usize) -> Result<ComplexScalar> {
    term(&SeriesSpec::F41(*p), m, n)
}

pub fn term_f42(p: &super::F42Params, m: usize, n: usize) -> Result<ComplexScalar> {
    term(&SeriesSpec::F42(*p), m, n)
}
