use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{ln_gamma, ComplexScalar};

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 256;

const QL_MAX_SWEEPS: usize = 60;
const NEWTON_STEPS: usize = 4;
const RESCALE: f64 = 1e150;

/// Gauss rule for `∫₀^∞ u^alpha e^{−u} f(u) du`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaguerreRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// `ln` of each weight, finite even where the weight underflows.
    pub log_weights: Vec<f64>,
    pub order: usize,
    pub alpha: f64,
}

impl LaguerreRule {
    /// `Σ wᵢ f(uᵢ)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(u, w)| w * f(*u)).sum()
    }

    /// `Σ wᵢ uᵢ^j`.
    pub fn moment(&self, j: i32) -> f64 {
        self.integrate(|u| u.powi(j))
    }
}

fn ln_gamma_real(x: f64) -> f64 {
    ln_gamma(ComplexScalar::new(x, 0.0)).re
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e[1..]`, by implicit QL with Wilkinson-type shifts.
fn tridiagonal_ql(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > QL_MAX_SWEEPS {
                return Err(Error::Convergence(format!(
                    "implicit QL stalled at index {l} of {n}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}

/// `(L_n^{(α)}(u), L_{n−1}^{(α)}(u), ln scale)` with both values divided by `e^{scale}`.
fn laguerre_pair(n: usize, alpha: f64, u: f64) -> (f64, f64, f64) {
    let (mut prev, mut cur) = (0.0, 1.0);
    let mut log_scale = 0.0;
    for j in 0..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + alpha - u) * cur - (jf + alpha) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    (cur, prev, log_scale)
}

/// Standard rule, `alpha = 0`; weights sum to one.
pub fn laguerre_rule(order: usize) -> Result<LaguerreRule> {
    generalized_laguerre_rule(order, 0.0)
}

/// Rule for the weight `u^alpha e^{−u}`; weights sum to `Γ(alpha + 1)`.
pub fn generalized_laguerre_rule(order: usize, alpha: f64) -> Result<LaguerreRule> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::InvalidArgument(format!(
            "rule order {order} outside {MIN_ORDER}..={MAX_ORDER}"
        )));
    }
    if !alpha.is_finite() || alpha <= -1.0 {
        return Err(Error::InvalidArgument(format!(
            "alpha = {alpha} must be finite and > -1"
        )));
    }
    let n = order;
    let diag: Vec<f64> = (0..n).map(|i| 2.0 * i as f64 + 1.0 + alpha).collect();
    let off: Vec<f64> = (0..n)
        .map(|i| {
            let i = i as f64;
            (i * (i + alpha)).sqrt()
        })
        .collect();
    let mut nodes = tridiagonal_ql(diag, off)?;
    nodes.sort_by(f64::total_cmp);

    let nf = n as f64;
    let ln_norm = ln_gamma_real(nf + alpha + 1.0) - ln_gamma_real(nf + 1.0);
    let mut log_weights = Vec::with_capacity(n);
    for u in &mut nodes {
        let mut deriv_ln = 0.0;
        for _ in 0..NEWTON_STEPS {
            let (p, q, ls) = laguerre_pair(n, alpha, *u);
            let dp = (nf * p - (nf + alpha) * q) / *u;
            deriv_ln = dp.abs().ln() + ls;
            let step = p / dp;
            *u -= step;
            if step.abs() <= 4.0 * f64::EPSILON * u.abs() {
                break;
            }
        }
        let (p, q, ls) = laguerre_pair(n, alpha, *u);
        let dp = (nf * p - (nf + alpha) * q) / *u;
        if dp != 0.0 {
            deriv_ln = dp.abs().ln() + ls;
        }
        log_weights.push(ln_norm - u.ln() - 2.0 * deriv_ln);
    }
    if nodes.windows(2).any(|w| w[1] <= w[0]) || nodes[0] <= 0.0 {
        return Err(Error::Convergence(
            "rule nodes not strictly increasing and positive".into(),
        ));
    }
    // Pin the zeroth moment to Γ(α + 1).
    let ln_mu0 = ln_gamma_real(alpha + 1.0);
    let total = log_weights
        .iter()
        .rev()
        .map(|l| (l - ln_mu0).exp())
        .fold((0.0f64, 0.0f64), |(s, c), w| {
            let y = w - c;
            let t = s + y;
            (t, (t - s) - y)
        })
        .0;
    let fix = total.ln();
    log_weights.iter_mut().for_each(|l| *l -= fix);
    let weights = log_weights.iter().map(|l| l.exp()).collect();
    Ok(LaguerreRule {
        nodes,
        weights,
        log_weights,
        order,
        alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ql_recovers_known_spectrum() {
        let mut d = tridiagonal_ql(vec![2.0, 2.0, 2.0], vec![0.0, -1.0, -1.0]).unwrap();
        d.sort_by(f64::total_cmp);
        let want = [2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        for (a, b) in d.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn log_weights_match_weights() {
        let r = laguerre_rule(40).unwrap();
        for (w, lw) in r.weights.iter().zip(&r.log_weights) {
            if *w > 1e-250 {
                assert!((w.ln() - lw).abs() < 1e-10);
            }
        }
    }
}
