use ndarray::{s, Array2};

use crate::error::{Error, Result};
use crate::numerics::ComplexScalar;

const OFFSET_TOL: f64 = 1e-9;

/// `x^ex y^ey Σ coeffs[m][n] x^m y^n`, exact for `m ≤ rows−1`, `n ≤ cols−1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    pub ex: ComplexScalar,
    pub ey: ComplexScalar,
    pub coeffs: Array2<ComplexScalar>,
}

fn integer_offset(a: ComplexScalar, b: ComplexScalar) -> Result<i64> {
    let d = a - b;
    let r = d.re.round();
    if (d.re - r).abs() > OFFSET_TOL || d.im.abs() > OFFSET_TOL {
        return Err(Error::IncomparableExponents(format!("{a} vs {b}")));
    }
    Ok(r as i64)
}

/// Exponent window shared by a family of series along one variable.
#[derive(Debug, Clone, Copy)]
struct Window {
    base: ComplexScalar,
    lo: i64,
    hi: i64,
}

fn window(exps: &[(ComplexScalar, usize)]) -> Result<Window> {
    let base = exps[0].0;
    let mut lo = i64::MAX;
    let mut hi = i64::MAX;
    for (e, len) in exps {
        let off = integer_offset(*e, base)?;
        lo = lo.min(off);
        hi = hi.min(off + *len as i64 - 1);
    }
    if hi < lo {
        return Err(Error::Margin(format!(
            "no common exponent range (lowest {lo}, highest exact {hi})"
        )));
    }
    Ok(Window { base, lo, hi })
}

impl PowerSeries {
    pub fn from_grid(coeffs: Array2<ComplexScalar>) -> Self {
        PowerSeries {
            ex: ComplexScalar::new(0.0, 0.0),
            ey: ComplexScalar::new(0.0, 0.0),
            coeffs,
        }
    }

    pub fn rows(&self) -> usize {
        self.coeffs.nrows()
    }

    pub fn cols(&self) -> usize {
        self.coeffs.ncols()
    }

    pub fn scale(mut self, c: ComplexScalar) -> Self {
        self.coeffs.mapv_inplace(|v| v * c);
        self
    }

    /// `θ`: multiply cell `(m, n)` by `ex + m`.
    pub fn theta_x(mut self) -> Self {
        let ex = self.ex;
        for ((m, _), v) in self.coeffs.indexed_iter_mut() {
            *v *= ex + m as f64;
        }
        self
    }

    /// `φ`: multiply cell `(m, n)` by `ey + n`.
    pub fn phi_y(mut self) -> Self {
        let ey = self.ey;
        for ((_, n), v) in self.coeffs.indexed_iter_mut() {
            *v *= ey + n as f64;
        }
        self
    }

    pub fn deriv_x(self) -> Self {
        let mut s = self.theta_x();
        s.ex -= 1.0;
        s
    }

    pub fn deriv_y(self) -> Self {
        let mut s = self.phi_y();
        s.ey -= 1.0;
        s
    }

    pub fn mul_x_pow(mut self, e: ComplexScalar) -> Self {
        self.ex += e;
        self
    }

    pub fn mul_y_pow(mut self, e: ComplexScalar) -> Self {
        self.ey += e;
        self
    }

    /// Re-express on the exponent windows, padding below with exact zeros.
    fn restrict(&self, wx: Window, wy: Window) -> Result<Array2<ComplexScalar>> {
        let ox = integer_offset(self.ex, wx.base)?;
        let oy = integer_offset(self.ey, wy.base)?;
        let rows = (wx.hi - wx.lo + 1) as usize;
        let cols = (wy.hi - wy.lo + 1) as usize;
        let mut out = Array2::zeros((rows, cols));
        for i in 0..rows {
            let m = wx.lo + i as i64 - ox;
            if m < 0 {
                continue;
            }
            for j in 0..cols {
                let n = wy.lo + j as i64 - oy;
                if n < 0 {
                    continue;
                }
                out[[i, j]] = self.coeffs[[m as usize, n as usize]];
            }
        }
        Ok(out)
    }

    /// Bring every series onto the largest window where all are exact.
    pub fn align(all: &[&PowerSeries]) -> Result<Vec<PowerSeries>> {
        if all.is_empty() {
            return Ok(vec![]);
        }
        let xs: Vec<_> = all.iter().map(|s| (s.ex, s.rows())).collect();
        let ys: Vec<_> = all.iter().map(|s| (s.ey, s.cols())).collect();
        let wx = window(&xs)?;
        let wy = window(&ys)?;
        let ex = wx.base + wx.lo as f64;
        let ey = wy.base + wy.lo as f64;
        all.iter()
            .map(|s| {
                Ok(PowerSeries {
                    ex,
                    ey,
                    coeffs: s.restrict(wx, wy)?,
                })
            })
            .collect()
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries> {
        let mut v = Self::align(&[self, other])?;
        let b = v.pop().expect("two series");
        let mut a = v.pop().expect("two series");
        a.coeffs += &b.coeffs;
        Ok(a)
    }

    pub fn sub(&self, other: &PowerSeries) -> Result<PowerSeries> {
        self.add(&other.clone().scale(ComplexScalar::new(-1.0, 0.0)))
    }

    /// Keep the leading `rows × cols` block.
    pub fn truncate(&self, rows: usize, cols: usize) -> PowerSeries {
        let r = rows.min(self.rows());
        let c = cols.min(self.cols());
        PowerSeries {
            ex: self.ex,
            ey: self.ey,
            coeffs: self.coeffs.slice(s![..r, ..c]).to_owned(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `Σ coeffs[m][n] x^{ex+m} y^{ey+n}` over the stored block.
    pub fn sum_at(&self, x: ComplexScalar, y: ComplexScalar) -> ComplexScalar {
        let mut total = ComplexScalar::new(0.0, 0.0);
        for ((m, n), c) in self.coeffs.indexed_iter() {
            if *c == ComplexScalar::new(0.0, 0.0) {
                continue;
            }
            total += c * cpow(x, self.ex + m as f64) * cpow(y, self.ey + n as f64);
        }
        total
    }

    /// Largest `|coeff · x^{ex+m} y^{ey+n}|` over the stored block.
    pub fn max_weighted(&self, x: ComplexScalar, y: ComplexScalar) -> f64 {
        self.coeffs
            .indexed_iter()
            .filter(|(_, c)| **c != ComplexScalar::new(0.0, 0.0))
            .map(|((m, n), c)| {
                (c * cpow(x, self.ex + m as f64) * cpow(y, self.ey + n as f64)).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// `z^e` on the principal branch, with exact handling of integer powers.
fn cpow(z: ComplexScalar, e: ComplexScalar) -> ComplexScalar {
    if e.im == 0.0 && e.re == e.re.round() && e.re.abs() < 1e6 {
        return z.powi(e.re as i32);
    }
    if z == ComplexScalar::new(0.0, 0.0) {
        return z;
    }
    (e * z.ln()).exp()
}
