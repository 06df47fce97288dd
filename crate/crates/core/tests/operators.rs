use appell4::numerics::{pochhammer, rel_diff, sign_pow};
use appell4::operators::*;
use appell4::series::*;
use appell4::{ComplexScalar, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

fn f41(k1: u32, k2: u32) -> SeriesSpec {
    SeriesSpec::F41(F41Params {
        a: c(0.6, 0.1),
        b: c(1.2, -0.3),
        c1: c(1.7, 0.2),
        c2: c(0.9, -0.2),
        t1: c(2.3, 0.4),
        t2: c(-0.7, 0.2),
        k1,
        k2,
        x: c(0.07, 0.02),
        y: c(-0.04, 0.05),
    })
}

fn f42(k: u32) -> SeriesSpec {
    SeriesSpec::F42(F42Params {
        a: c(0.6, 0.1),
        b: c(1.2, -0.3),
        c1: c(1.7, 0.2),
        c2: c(0.9, -0.2),
        t: c(2.3, 0.4),
        k,
        x: c(0.07, 0.02),
        y: c(-0.04, 0.05),
    })
}

fn value(s: &PowerSeries, spec: &SeriesSpec) -> ComplexScalar {
    s.sum_at(spec.x(), spec.y())
}

fn max_diff(a: &PowerSeries, b: &PowerSeries) -> f64 {
    a.sub(b).unwrap().max_abs() / a.max_abs().max(b.max_abs())
}

#[test]
fn big_theta_eigenfunction() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n: usize = rng.random_range(0..6);
        let k: u32 = rng.random_range(1..4);
        let t = c(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let SeriesSpec::F42(mut p) = f42(k) else { unreachable!() };
        p.t = t;
        let spec = SeriesSpec::F42(p);
        let l = n * k as usize;
        let f = |s: &SeriesSpec| -> appell4::Result<ComplexScalar> {
            Ok(sign_pow(l as i64) * pochhammer(-s.get(Param::T)?, l)?)
        };
        let lhs = apply_numeric(&PrimitiveOp::BigTheta(TParam::T), &f, &spec).unwrap();
        let rhs = f(&spec).unwrap() * l as f64;
        if l == 0 {
            assert!(lhs.norm() < 1e-15);
        } else {
            assert!(rel_diff(lhs, rhs) < 1e-12, "n={n} k={k} t={t}");
        }
    }
}

#[test]
fn termwise_and_shifted_agree() {
    let shape = GridShape::square(14);
    let cases: Vec<(SeriesSpec, OperatorExpr)> = vec![
        (f41(2, 1), ops::big_theta(TParam::T1) * ops::theta()),
        (f41(1, 3), ops::big_theta(TParam::T2) + ops::phi() * ops::phi()),
        (f41(1, 2), ops::delta(TParam::T1) * ops::theta()),
        (f41(3, 2), ops::stheta(TParam::T1) + ops::theta()),
        (f42(2), ops::big_theta(TParam::T) * ops::x() * ops::dx()),
        (f42(1), ops::delta(TParam::T) + ops::y() * ops::dy()),
    ];
    for (spec, expr) in cases {
        let a = apply_termwise(&expr, &Instance::base(), &spec, shape).unwrap();
        let b = apply_shifted(&expr, &Operand::Instance(Instance::base()), &spec, shape).unwrap();
        assert!(max_diff(&a, &b) < 1e-12, "{expr:?}");
    }
}

#[test]
fn scaled_theta_is_index_weight() {
    let spec = f41(3, 1);
    let shape = GridShape::square(10);
    let a = apply_termwise(&ops::stheta(TParam::T1), &Instance::base(), &spec, shape).unwrap();
    let b = apply_termwise(&ops::theta(), &Instance::base(), &spec, shape).unwrap();
    assert!(max_diff(&a, &b) < 1e-14);
}

#[test]
fn termwise_rejects_moved_discrete_parameter() {
    let shifted = Instance::shifted(&[(Param::T1, IntExpr::konst(1))]);
    let err = apply_termwise(
        &(ops::big_theta(TParam::T1) * ops::rho(TParam::T1, 1)),
        &shifted,
        &f41(1, 1),
        GridShape::square(6),
    );
    assert!(matches!(err, Err(Error::InvalidOp(_))));
}

#[test]
fn scaled_theta_needs_positive_order() {
    let err = apply_shifted(
        &ops::stheta(TParam::T1),
        &Operand::Instance(Instance::base()),
        &f41(0, 1),
        GridShape::square(6),
    );
    assert!(matches!(err, Err(Error::InvalidOp(_))));
}

#[test]
fn numeric_euler_operators_match_series() {
    let SeriesSpec::F41(mut p) = f41(1, 2) else { unreachable!() };
    p.t1 = c(5.0, 0.0);
    p.t2 = c(3.0, 0.0);
    let spec = SeriesSpec::F41(p);
    let shape = GridShape::square(40);
    let f = |s: &SeriesSpec| -> appell4::Result<ComplexScalar> {
        Ok(eval(s, &TruncationPolicy::fixed(40, 40))?.value)
    };
    for (op, expr) in [
        (PrimitiveOp::ThetaX, ops::theta()),
        (PrimitiveOp::PhiY, ops::phi()),
        (PrimitiveOp::DerivX, ops::dx()),
        (PrimitiveOp::DerivY, ops::dy()),
    ] {
        let num = apply_numeric(&op, &f, &spec).unwrap();
        let exact = value(&apply_termwise(&expr, &Instance::base(), &spec, shape).unwrap(), &spec);
        assert!(rel_diff(num, exact) < 1e-8, "{op:?}: {num} vs {exact}");
    }
}

#[test]
fn numeric_discrete_operators_match_series() {
    let spec = f41(1, 1);
    let shape = GridShape::square(30);
    let f = |s: &SeriesSpec| -> appell4::Result<ComplexScalar> {
        Ok(eval(s, &TruncationPolicy::fixed(30, 30))?.value)
    };
    for (op, expr) in [
        (PrimitiveOp::DeltaT(TParam::T1), ops::delta(TParam::T1)),
        (PrimitiveOp::BigTheta(TParam::T2), ops::big_theta(TParam::T2)),
        (
            PrimitiveOp::Rho {
                t: TParam::T1,
                power: IntExpr::konst(2),
            },
            ops::rho(TParam::T1, 2),
        ),
    ] {
        let num = apply_numeric(&op, &f, &spec).unwrap();
        let sh = apply_shifted(&expr, &Operand::Instance(Instance::base()), &spec, shape).unwrap();
        assert!(rel_diff(num, value(&sh, &spec)) < 1e-12, "{op:?}");
    }
}

#[test]
fn big_theta_is_t_rho_delta() {
    let spec = f42(2);
    let shape = GridShape::square(12);
    let base = Operand::Instance(Instance::base());
    let a = apply_shifted(&ops::big_theta(TParam::T), &base, &spec, shape).unwrap();
    let composed = OperatorExpr::from(Param::T) * ops::rho(TParam::T, 1) * ops::delta(TParam::T);
    let b = apply_shifted(&composed, &base, &spec, shape).unwrap();
    assert!(max_diff(&a, &b) < 1e-12);
}

#[test]
fn power_series_alignment_pads_with_zeros() {
    let g = coefficient_grid(&f41(1, 1), 4, 4).unwrap();
    let s = PowerSeries::from_grid(g.coeffs.clone());
    let lifted = s.clone().mul_x_pow(c(1.0, 0.0));
    let sum = s.add(&lifted).unwrap();
    assert_eq!(sum.rows(), s.rows());
    let diff = s.sub(&s).unwrap();
    assert_eq!(diff.max_abs(), 0.0);
    let half = s.clone().mul_x_pow(c(0.5, 0.0));
    assert!(s.add(&half).is_err());
}
