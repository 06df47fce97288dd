use serde::{Deserialize, Serialize};

use super::params::{KdfParams, SeriesSpec};
use crate::error::{Error, Result};

/// A Kampé de Fériet realization of a discrete analogue with `k ≤ 1`.
///
/// `kdf.x = x_sign · x` and `kdf.y = y_sign · y` for the source arguments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KdfReduction {
    pub kdf: KdfParams,
    pub x_sign: f64,
    pub y_sign: f64,
}

fn sign(k: u32) -> f64 {
    if k == 1 {
        -1.0
    } else {
        1.0
    }
}

fn check_k(name: &str, k: u32) -> Result<()> {
    if k > 1 {
        return Err(Error::UnsupportedK(format!("{name} = {k}; reductions need 0 or 1")));
    }
    Ok(())
}

/// Express an `F41` or `F42` instance with orders in `{0, 1}` as a KdF series.
///
/// `(−1)^m (−t)_m x^m = (−t)_m (−x)^m`, so every order-one discrete factor
/// becomes a numerator parameter `−t` with the matching argument negated.
pub fn reduce_to_kdf(spec: &SeriesSpec) -> Result<KdfReduction> {
    match spec {
        SeriesSpec::F41(p) => {
            check_k("k1", p.k1)?;
            check_k("k2", p.k2)?;
            let (xs, ys) = (sign(p.k1), sign(p.k2));
            Ok(KdfReduction {
                kdf: KdfParams {
                    coupled_num: vec![p.a, p.b],
                    x_num: if p.k1 == 1 { vec![-p.t1] } else { vec![] },
                    y_num: if p.k2 == 1 { vec![-p.t2] } else { vec![] },
                    x_den: vec![p.c1],
                    y_den: vec![p.c2],
                    x: p.x * xs,
                    y: p.y * ys,
                    ..KdfParams::default()
                },
                x_sign: xs,
                y_sign: ys,
            })
        }
        SeriesSpec::F42(p) => {
            check_k("k", p.k)?;
            let mut coupled = vec![p.a, p.b];
            if p.k == 1 {
                coupled.push(-p.t);
            }
            let s = sign(p.k);
            Ok(KdfReduction {
                kdf: KdfParams {
                    coupled_num: coupled,
                    x_den: vec![p.c1],
                    y_den: vec![p.c2],
                    x: p.x * s,
                    y: p.y * s,
                    ..KdfParams::default()
                },
                x_sign: s,
                y_sign: s,
            })
        }
        other => Err(Error::InvalidArgument(format!(
            "{} is not a discrete analogue",
            other.family_name()
        ))),
    }
}
