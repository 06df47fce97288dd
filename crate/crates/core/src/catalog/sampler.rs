use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::identity::{Identity, Target};
use super::verify::SamplePoint;
use crate::numerics::ComplexScalar;
use crate::series::{F41Params, F42Params, SeriesSpec};

pub const DEFAULT_SEED: u64 = 42;

/// Reproducible source of parameter points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamSampler {
    pub seed: u64,
    pub draws: usize,
    /// Radius of the disk holding `a, b, c1, c2, t1, t2, t`.
    pub param_radius: f64,
    /// Radius of the disk holding `x, y`.
    pub arg_radius: f64,
    /// Inclusive range of the orders `k1, k2, k`.
    pub k_range: (u32, u32),
    /// Largest free integer `r` or `s`.
    pub max_index: i64,
    /// Minimum distance of `c1, c2` from the integers.
    pub pole_margin: f64,
    /// Fixed nonnegative integer `t` and `k = 1`, for exact finite sums.
    pub terminating: Option<u32>,
}

impl Default for ParamSampler {
    fn default() -> Self {
        ParamSampler {
            seed: DEFAULT_SEED,
            draws: 20,
            param_radius: 3.0,
            arg_radius: 0.25,
            k_range: (1, 3),
            max_index: 3,
            pole_margin: 1e-6,
            terminating: None,
        }
    }
}

fn disk(rng: &mut ChaCha8Rng, radius: f64) -> ComplexScalar {
    let r = radius * rng.random::<f64>().sqrt();
    let phi = std::f64::consts::TAU * rng.random::<f64>();
    ComplexScalar::from_polar(r, phi)
}

fn near_integer(z: ComplexScalar, margin: f64) -> bool {
    z.im.abs() < margin && (z.re - z.re.round()).abs() < margin
}

impl ParamSampler {
    pub fn new(seed: u64, draws: usize) -> Self {
        ParamSampler {
            seed,
            draws,
            ..Default::default()
        }
    }

    /// The terminating variant: `t = t1 = t2 = t_value`, `k = k1 = k2 = 1`.
    pub fn terminating(mut self, t_value: u32) -> Self {
        self.terminating = Some(t_value);
        self
    }

    fn rng(&self, draw: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(draw);
        rng
    }

    /// Point number `draw` for `ident`, honouring its constraints.
    pub fn draw(&self, ident: &Identity, draw: u64) -> SamplePoint {
        let mut rng = self.rng(draw);
        let rad = self.param_radius;
        let (a, b) = (disk(&mut rng, rad), disk(&mut rng, rad));
        let mut c = || loop {
            let z = disk(&mut rng, rad);
            if !near_integer(z, self.pole_margin) {
                break z;
            }
        };
        let (c1, c2) = (c(), c());
        let (t1, t2, t) = (
            disk(&mut rng, rad),
            disk(&mut rng, rad),
            disk(&mut rng, rad),
        );
        let (lo, hi) = self.k_range;
        let mut ks = [0u32; 3];
        for k in &mut ks {
            *k = rng.random_range(lo..=hi);
        }
        let (x, y) = (
            disk(&mut rng, self.arg_radius),
            disk(&mut rng, self.arg_radius),
        );
        let cons = &ident.constraints;
        let index = if cons.indexed {
            let lo = cons.min_index;
            rng.random_range(lo..=self.max_index.max(lo))
        } else {
            0
        };
        let [mut k1, mut k2, mut k] = ks;
        let (mut t1, mut t2, mut t) = (t1, t2, t);
        if let Some(tv) = self.terminating {
            let tv = ComplexScalar::new(tv as f64, 0.0);
            (t1, t2, t) = (tv, tv, tv);
            (k1, k2, k) = (1, 1, 1);
        }
        if cons.k1_one {
            k1 = 1;
        }
        if cons.k2_one {
            k2 = 1;
        }
        if cons.k_one {
            k = 1;
        }
        if cons.k_parity_differs && (k1 + k2) % 2 == 0 {
            k2 = if k1 == 2 { 1 } else { 2 };
        }
        let spec = match ident.target {
            Target::F41 => SeriesSpec::F41(F41Params {
                a,
                b,
                c1,
                c2,
                t1,
                t2,
                k1,
                k2,
                x,
                y,
            }),
            Target::F42 => SeriesSpec::F42(F42Params {
                a,
                b,
                c1,
                c2,
                t,
                k,
                x,
                y,
            }),
        };
        SamplePoint { spec, index }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;

    #[test]
    fn terminating_points_fix_orders_and_parameters() {
        let cat = builtin_catalog();
        let s = ParamSampler::new(3, 4).terminating(4);
        for i in cat.iter().filter(|i| !i.constraints.k_parity_differs) {
            match s.draw(i, 2).spec {
                SeriesSpec::F41(p) => {
                    assert_eq!((p.k1, p.k2), (1, 1));
                    assert_eq!(p.t1, ComplexScalar::new(4.0, 0.0));
                }
                SeriesSpec::F42(p) => assert_eq!((p.k, p.t.re), (1, 4.0)),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn draws_stay_in_their_disks() {
        let cat = builtin_catalog();
        let s = ParamSampler::new(8, 50);
        for d in 0..50 {
            let p = s.draw(&cat[0], d).spec;
            assert!(p.x().norm() <= s.arg_radius && p.y().norm() <= s.arg_radius);
            let c1 = p.get(crate::series::Param::C1).unwrap();
            assert!(!near_integer(c1, s.pole_margin));
        }
    }
}
