use appell4::numerics::rel_diff;
use appell4::series::*;
use appell4::{ComplexScalar, Error};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

fn r(v: f64) -> ComplexScalar {
    c(v, 0.0)
}

fn f41(k1: u32, k2: u32) -> F41Params {
    F41Params {
        a: c(0.7, 0.2),
        b: c(1.3, -0.4),
        c1: c(1.6, 0.3),
        c2: c(0.8, -0.1),
        t1: c(2.4, 0.5),
        t2: c(-1.1, 0.3),
        k1,
        k2,
        x: c(0.08, 0.03),
        y: c(-0.05, 0.04),
    }
}

fn f42(k: u32) -> F42Params {
    F42Params {
        a: c(0.7, 0.2),
        b: c(1.3, -0.4),
        c1: c(1.6, 0.3),
        c2: c(0.8, -0.1),
        t: c(2.4, 0.5),
        k,
        x: c(0.08, 0.03),
        y: c(-0.05, 0.04),
    }
}

fn max_rel(a: &CoefficientGrid, b: &CoefficientGrid) -> f64 {
    let scale = a.coeffs.iter().map(|v| v.norm()).fold(0.0, f64::max);
    a.coeffs
        .iter()
        .zip(b.coeffs.iter())
        .map(|(p, q)| (p - q).norm())
        .fold(0.0, f64::max)
        / scale
}

#[test]
fn origin_term_is_one() {
    for spec in [SeriesSpec::F41(f41(2, 3)), SeriesSpec::F42(f42(2))] {
        assert_eq!(term(&spec, 0, 0).unwrap(), r(1.0));
    }
}

#[test]
fn f41_term_matches_definition() {
    let p = f41(2, 1);
    let (m, n) = (3usize, 2usize);
    let poch = |a: ComplexScalar, l: usize| (0..l).fold(r(1.0), |acc, j| acc * (a + j as f64));
    let fact = |l: usize| (1..=l).map(|v| v as f64).product::<f64>();
    let sgn = |e: usize| if e.is_multiple_of(2) { 1.0 } else { -1.0 };
    let expect = poch(p.a, m + n) * poch(p.b, m + n) * sgn(m * 2) * poch(-p.t1, m * 2)
        * sgn(n) * poch(-p.t2, n)
        / (poch(p.c1, m) * poch(p.c2, n) * fact(m) * fact(n))
        * p.x.powi(m as i32)
        * p.y.powi(n as i32);
    assert!(rel_diff(term_f41(&p, m, n).unwrap(), expect) < 1e-14);
}

#[test]
fn f42_term_matches_definition() {
    let p = f42(2);
    let (m, n) = (2usize, 3usize);
    let poch = |a: ComplexScalar, l: usize| (0..l).fold(r(1.0), |acc, j| acc * (a + j as f64));
    let fact = |l: usize| (1..=l).map(|v| v as f64).product::<f64>();
    let expect = poch(p.a, m + n) * poch(p.b, m + n) * poch(-p.t, 2 * (m + n))
        / (poch(p.c1, m) * poch(p.c2, n) * fact(m) * fact(n))
        * p.x.powi(m as i32)
        * p.y.powi(n as i32);
    assert!(rel_diff(term_f42(&p, m, n).unwrap(), expect) < 1e-14);
}

#[test]
fn recurrence_grid_matches_scratch_grid() {
    for spec in [
        SeriesSpec::F41(f41(1, 2)),
        SeriesSpec::F41(f41(3, 0)),
        SeriesSpec::F42(f42(1)),
        SeriesSpec::F42(f42(3)),
    ] {
        let g = coefficient_grid(&spec, 20, 18).unwrap();
        let s = scratch_grid(&spec, 20, 18).unwrap();
        assert_eq!(g.coeffs.dim(), (21, 19));
        assert!(max_rel(&g, &s) < 1e-12, "{spec:?}");
    }
}

#[test]
fn k_zero_equals_classical_f4() {
    let p = f41(0, 0);
    let pol = TruncationPolicy::fixed(30, 30);
    let f4 = eval_f4_classic(p.a, p.b, p.c1, p.c2, p.x, p.y, &pol).unwrap().value;
    assert!(rel_diff(eval_f41(&p, &pol).unwrap().value, f4) < 1e-14);
    let q = f42(0);
    assert!(rel_diff(eval_f42(&q, &pol).unwrap().value, f4) < 1e-14);
}

#[test]
fn geometric_oracle() {
    let spec = SeriesSpec::F4(F4Params {
        a: r(1.0),
        b: r(1.0),
        c1: r(1.0),
        c2: r(1.0),
        x: r(0.3),
        y: r(0.0),
    });
    let v = eval(&spec, &TruncationPolicy::fixed(120, 4)).unwrap().value;
    assert!(rel_diff(v, r(1.0 / 0.7)) < 1e-10);
}

#[test]
fn terminating_sum_is_exact() {
    let p = F41Params {
        a: r(1.0),
        b: r(1.0),
        c1: r(2.0),
        c2: r(2.0),
        t1: r(4.0),
        t2: r(4.0),
        k1: 1,
        k2: 1,
        x: r(0.1),
        y: r(0.1),
    };
    let res = eval_f41(&p, &TruncationPolicy::default()).unwrap();
    assert!(!res.divergence_flag);
    assert_eq!(res.tail_estimate, 0.0);
    assert_eq!(res.terms_used, 25);
    let direct: ComplexScalar = (0..=4)
        .flat_map(|m| (0..=4).map(move |n| (m, n)))
        .map(|(m, n)| term_f41(&p, m, n).unwrap())
        .sum();
    assert!(rel_diff(res.value, direct) < 1e-15);
}

#[test]
fn swapping_variables_is_a_symmetry() {
    let p = f41(2, 1);
    let q = F41Params {
        c1: p.c2,
        c2: p.c1,
        t1: p.t2,
        t2: p.t1,
        k1: p.k2,
        k2: p.k1,
        x: p.y,
        y: p.x,
        ..p
    };
    let pol = TruncationPolicy::fixed(25, 25);
    let a = eval_f41(&p, &pol).unwrap().value;
    let b = eval_f41(&q, &pol).unwrap().value;
    assert!(rel_diff(a, b) < 1e-13);
}

#[test]
fn printed_reductions_hold_cellwise() {
    let specs = [
        SeriesSpec::F41(f41(0, 0)),
        SeriesSpec::F41(f41(1, 0)),
        SeriesSpec::F41(f41(0, 1)),
        SeriesSpec::F41(f41(1, 1)),
        SeriesSpec::F42(f42(0)),
        SeriesSpec::F42(f42(1)),
    ];
    for spec in specs {
        let red = reduce_to_kdf(&spec).unwrap();
        let kdf = SeriesSpec::Kdf(red.kdf.clone());
        for m in 0..12 {
            for n in 0..12 {
                let a = term(&spec, m, n).unwrap();
                let b = term(&kdf, m, n).unwrap();
                assert!(rel_diff(a, b) < 1e-11, "{spec:?} at ({m},{n})");
            }
        }
        let pol = TruncationPolicy::fixed(20, 20);
        let v = eval(&spec, &pol).unwrap().value;
        assert!(rel_diff(v, eval_kdf(&red.kdf, &pol).unwrap().value) < 1e-11);
    }
}

#[test]
fn second_analogue_order_one_needs_negated_arguments() {
    let p = f42(1);
    let red = reduce_to_kdf(&SeriesSpec::F42(p)).unwrap();
    assert_eq!((red.x_sign, red.y_sign), (-1.0, -1.0));
    let mut printed = red.kdf.clone();
    printed.x = p.x;
    printed.y = p.y;
    let spec = SeriesSpec::Kdf(printed);
    assert!(rel_diff(term(&spec, 1, 0).unwrap(), term_f42(&p, 1, 0).unwrap()) > 1.0);
}

#[test]
fn higher_orders_have_no_reduction() {
    assert!(matches!(
        reduce_to_kdf(&SeriesSpec::F41(f41(2, 1))),
        Err(Error::UnsupportedK(_))
    ));
    assert!(matches!(
        reduce_to_kdf(&SeriesSpec::F42(f42(3))),
        Err(Error::UnsupportedK(_))
    ));
}

#[test]
fn lower_parameter_pole_is_reported() {
    let mut p = f41(1, 1);
    p.c1 = r(-2.0);
    assert!(matches!(
        coefficient_grid(&SeriesSpec::F41(p), 5, 5),
        Err(Error::Pole(_))
    ));
    assert!(coefficient_grid(&SeriesSpec::F41(p), 2, 5).is_ok());
}

#[test]
fn adaptive_stops_early_inside_region() {
    let p = f41(0, 0);
    let fixed = eval_f41(&p, &TruncationPolicy::fixed(60, 60)).unwrap();
    let adapt = eval_f41(&p, &TruncationPolicy::adaptive(60, 60, 1e-15)).unwrap();
    assert!(adapt.terms_used < fixed.terms_used);
    assert!(rel_diff(adapt.value, fixed.value) < 1e-13);
}

#[test]
fn divergent_discrete_series_is_flagged() {
    let p = F41Params {
        a: r(1.0),
        b: r(1.0),
        c1: r(2.0),
        c2: r(2.0),
        t1: r(0.5),
        t2: r(0.0),
        k1: 1,
        k2: 0,
        x: r(0.05),
        y: r(0.0),
    };
    let spec = SeriesSpec::F41(p);
    let rep = divergence_diagnostic(&spec, 40).unwrap();
    assert!(rep.growth_flag && rep.divergence_flag);
    assert!(eval(&spec, &TruncationPolicy::default()).unwrap().divergence_flag);
    assert!(matches!(
        divergence_diagnostic(&spec, 7),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn region_geometry() {
    let (inside, margin) = convergence_region(r(0.25), r(0.25));
    assert!(!inside);
    assert!(margin.abs() < 1e-15);
    assert!(convergence_region(r(0.04), c(0.0, 0.09)).0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn grids_agree_for_random_parameters(
        are in -3.0..3.0f64, aim in -3.0..3.0f64,
        bre in -3.0..3.0f64, c1re in 0.1..3.0f64, c2re in 0.1..3.0f64,
        tre in -3.0..3.0f64, tim in -1.0..1.0f64,
        k1 in 0u32..4, k2 in 0u32..4,
    ) {
        let p = F41Params {
            a: c(are, aim), b: c(bre, 0.3), c1: c(c1re, 0.2), c2: c(c2re, -0.2),
            t1: c(tre, tim), t2: c(-tre, 0.5), k1, k2, x: r(0.1), y: r(0.1),
        };
        let spec = SeriesSpec::F41(p);
        let g = coefficient_grid(&spec, 18, 18).unwrap();
        let s = scratch_grid(&spec, 18, 18).unwrap();
        prop_assert!(max_rel(&g, &s) < 1e-12);
    }
}
