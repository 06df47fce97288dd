use std::collections::{HashMap, HashSet};

use appell4::catalog::*;
use appell4::exec::Execution;
use appell4::operators::GridShape;
use appell4::series::{coefficient_grid, Param, SeriesSpec};
use appell4::{ComplexScalar, Error};

fn find<'a>(cat: &'a [Identity], id: &str) -> &'a Identity {
    cat.iter().find(|i| i.id == id).unwrap_or_else(|| panic!("{id} missing"))
}

#[test]
fn catalog_shape() {
    let cat = builtin_catalog();
    assert_eq!(cat.len(), 187);
    assert_eq!(cat.iter().filter(|i| i.is_twin()).count(), 15);
    let ids: HashSet<_> = cat.iter().map(|i| i.id.as_str()).collect();
    assert_eq!(ids.len(), cat.len());
    assert!(ids.contains("F41.ddeq.1"));
    let mut per_family: HashMap<(Family, Target), usize> = HashMap::new();
    for i in cat.iter().filter(|i| !i.is_twin()) {
        *per_family.entry((i.family, i.target)).or_default() += 1;
    }
    for t in [Target::F41, Target::F42] {
        assert_eq!(per_family[&(Family::A_ddeq, t)], 2);
        assert_eq!(per_family[&(Family::B_diff_formulas, t)], 4);
        assert_eq!(per_family[&(Family::C_partial_formulas, t)], 6);
        assert_eq!(per_family[&(Family::D_recursion_sums, t)], 5);
        assert_eq!(per_family[&(Family::E_first_order, t)], 16);
    }
}

#[test]
fn suspected_entries_are_cross_linked() {
    let cat = builtin_catalog();
    for i in &cat {
        match i.expected_status {
            ExpectedStatus::SuspectedTypo => {
                assert!(i.justification.as_deref().is_some_and(|j| !j.is_empty()), "{}", i.id);
                let twin = find(&cat, i.twin.as_deref().expect("twin"));
                assert!(twin.is_twin());
                assert_eq!(twin.twin.as_deref(), Some(i.id.as_str()));
                assert_eq!(twin.expected_status, ExpectedStatus::Verified);
            }
            ExpectedStatus::Verified if i.is_twin() => {
                let printed = find(&cat, i.twin.as_deref().expect("printed"));
                assert_eq!(printed.expected_status, ExpectedStatus::SuspectedTypo);
            }
            _ => {}
        }
        assert!(!i.anchor.is_empty());
    }
}

#[test]
fn family_b_corrected_forms_pass_everywhere() {
    let cat = builtin_catalog();
    let filter = AuditFilter {
        families: vec![Family::B_diff_formulas],
        include_twins: true,
        ..Default::default()
    };
    let out = audit_catalog(
        &cat,
        &ParamSampler::new(3, 8),
        &VerifyOptions::default(),
        &filter,
        Execution::Parallel,
    );
    assert_eq!(out.len(), 8);
    assert!(out.iter().all(|e| e.status == "verified" && e.passes == 8));
    let printed = audit_catalog(
        &cat,
        &ParamSampler::new(3, 8),
        &VerifyOptions::default(),
        &AuditFilter {
            families: vec![Family::B_diff_formulas],
            include_suspected: true,
            ..Default::default()
        },
        Execution::Parallel,
    );
    assert_eq!(printed.iter().filter(|e| e.status == "suspected_typo").count(), 6);
}

#[test]
fn ledger_typo_fails_while_correction_passes() {
    let cat = builtin_catalog();
    let sampler = ParamSampler::new(11, 6);
    let opts = VerifyOptions::default();
    for id in ["F41.diffrec.13", "F42.diffrec.24"] {
        let printed = find(&cat, id);
        let fixed = find(&cat, &format!("{id}.corrected"));
        for d in 0..6 {
            let p = sampler.draw(printed, d);
            assert!(!verify_identity(printed, &p, &opts).unwrap().pass);
            let q = sampler.draw(fixed, d);
            assert!(verify_identity(fixed, &q, &opts).unwrap().pass);
        }
    }
}

#[test]
fn first_order_raise_and_lower_pairs() {
    let cat = builtin_catalog();
    let sampler = ParamSampler::new(5, 5);
    let opts = VerifyOptions {
        tolerance: 1e-11,
        ..Default::default()
    };
    let pairs = [(1, 2, Param::A), (3, 4, Param::B), (6, 5, Param::C1), (8, 7, Param::C2)];
    for t in ["F41", "F42"] {
        for kind in ["diffrel", "deltarel"] {
            for (up, down, param) in pairs {
                let raise = find(&cat, &format!("{t}.{kind}.{up}"));
                let lower = find(&cat, &format!("{t}.{kind}.{down}"));
                for d in 0..5 {
                    let p = sampler.draw(raise, d);
                    assert!(verify_identity(raise, &p, &opts).unwrap().pass, "{}", raise.id);
                    let moved = SamplePoint {
                        spec: p.spec.shifted(param, 1).unwrap(),
                        index: 0,
                    };
                    assert!(verify_identity(lower, &moved, &opts).unwrap().pass, "{}", lower.id);
                }
            }
        }
    }
}

#[test]
fn first_order_example_residual() {
    let cat = builtin_catalog();
    let ident = find(&cat, "F41.diffrel.1");
    let sampler = ParamSampler::new(9, 10);
    for d in 0..10 {
        let r = verify_identity(ident, &sampler.draw(ident, d), &VerifyOptions::default()).unwrap();
        assert!(r.rel_residual <= 1e-12);
        assert!(r.cells_checked > 0);
    }
}

#[test]
fn recursion_sums_at_depth_three() {
    let cat = builtin_catalog();
    let sampler = ParamSampler::new(21, 4);
    let opts = VerifyOptions {
        shape: GridShape::square(10),
        tolerance: 1e-11,
        ..Default::default()
    };
    for i in cat
        .iter()
        .filter(|i| i.family == Family::D_recursion_sums)
        .filter(|i| i.expected_status == ExpectedStatus::Verified)
    {
        for d in 0..4 {
            let p = sampler.draw(i, d);
            let r = verify_recursion_sum(i, &p.spec, 3, &opts).unwrap();
            assert!(r.pass, "{} {}", i.id, r.rel_residual);
        }
    }
}

#[test]
fn recursion_sums_at_origin() {
    let cat = builtin_catalog();
    let sampler = ParamSampler::new(2, 3).terminating(3);
    let zero = ComplexScalar::new(0.0, 0.0);
    let opts = VerifyOptions::summed(GridShape::square(12));
    for i in cat
        .iter()
        .filter(|i| i.family == Family::D_recursion_sums)
        .filter(|i| i.expected_status == ExpectedStatus::Verified)
    {
        for d in 0..3 {
            let p = sampler.draw(i, d);
            let spec = p.spec.with_args(zero, zero);
            let r = verify_recursion_sum(i, &spec, p.index, &opts).unwrap();
            assert!(r.pass && r.max_abs_residual < 1e-14, "{}", i.id);
        }
    }
}

#[test]
fn recursion_sum_argument_checks() {
    let cat = builtin_catalog();
    let d1 = find(&cat, "F41.rec.1");
    let p = ParamSampler::new(1, 1).draw(d1, 0);
    assert!(matches!(
        verify_recursion_sum(d1, &p.spec, 0, &VerifyOptions::default()),
        Err(Error::Constraint(_))
    ));
    let e1 = find(&cat, "F41.diffrel.1");
    assert!(matches!(
        verify_recursion_sum(e1, &p.spec, 1, &VerifyOptions::default()),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn constraint_violations_are_errors() {
    let cat = builtin_catalog();
    let f41 = find(&cat, "F41.diffrel.1");
    let f42 = find(&cat, "F42.diffrel.1");
    let p = ParamSampler::new(1, 1).draw(f42, 0);
    assert!(matches!(
        verify_identity(f41, &p, &VerifyOptions::default()),
        Err(Error::Constraint(_))
    ));
    let parity = find(&cat, "F41.rec.4");
    let mut q = ParamSampler::new(1, 1).draw(parity, 0);
    if let SeriesSpec::F41(ref mut s) = q.spec {
        s.k1 = 2;
        s.k2 = 2;
    }
    assert!(matches!(
        verify_identity(parity, &q, &VerifyOptions::default()),
        Err(Error::Constraint(_))
    ));
}

#[test]
fn single_cell_window_still_compares() {
    let cat = builtin_catalog();
    let d1 = find(&cat, "F41.rec.1");
    let p = ParamSampler::new(1, 1).draw(d1, 0);
    let tiny = VerifyOptions {
        shape: GridShape::square(0),
        ..Default::default()
    };
    let r = verify_recursion_sum(d1, &p.spec, 2, &tiny).unwrap();
    assert_eq!(r.cells_checked, 1);
    assert!(r.pass);
}

#[test]
fn sampler_is_deterministic_and_respects_constraints() {
    let cat = builtin_catalog();
    let s = ParamSampler::new(123, 10);
    for i in &cat {
        for d in 0..3 {
            let p = s.draw(i, d);
            assert_eq!(p, s.draw(i, d));
            let c = &i.constraints;
            if c.indexed {
                assert!(p.index >= c.min_index);
            }
            if let SeriesSpec::F41(f) = &p.spec {
                if c.k_parity_differs {
                    assert_ne!(f.k1 % 2, f.k2 % 2);
                }
                if c.k1_one {
                    assert_eq!(f.k1, 1);
                }
            }
        }
    }
    let id = find(&cat, "F41.ddeq.1");
    assert_ne!(s.draw(id, 0), s.draw(id, 1));
    assert_ne!(s.draw(id, 0), ParamSampler::new(124, 10).draw(id, 0));
}

#[test]
fn audit_is_reproducible_and_schedule_independent() {
    let cat = builtin_catalog();
    let sampler = ParamSampler::new(DEFAULT_SEED, 3);
    let filter = AuditFilter {
        families: vec![Family::C_partial_formulas, Family::D_recursion_sums],
        include_suspected: true,
        include_twins: true,
        ..Default::default()
    };
    let opts = VerifyOptions::default();
    let a = audit_catalog(&cat, &sampler, &opts, &filter, Execution::Parallel);
    let b = audit_catalog(&cat, &sampler, &opts, &filter, Execution::Sequential);
    assert_eq!(a, b);
    let order: Vec<_> = cat.iter().filter(|i| filter.admits(i)).map(|i| &i.id).collect();
    assert_eq!(a.iter().map(|e| &e.id).collect::<Vec<_>>(), order);
    for e in &a {
        let ident = find(&cat, &e.id);
        let want = match ident.expected_status {
            ExpectedStatus::Verified => "verified",
            ExpectedStatus::SuspectedTypo => "suspected_typo",
        };
        assert_eq!(e.status, want, "{}", e.id);
    }
}

#[test]
fn empty_sampler_gives_empty_summary() {
    let cat = builtin_catalog();
    let out = audit_catalog(
        &cat,
        &ParamSampler::new(1, 0),
        &VerifyOptions::default(),
        &AuditFilter::everything(),
        Execution::Sequential,
    );
    assert!(out.is_empty());
}

#[test]
fn mixed_argument_formulas_use_composite_arguments() {
    let cat = builtin_catalog();
    let c_entries: Vec<_> = cat
        .iter()
        .filter(|i| i.family == Family::C_partial_formulas && !i.is_twin())
        .collect();
    assert_eq!(c_entries.len(), 12);
    let sampler = ParamSampler::new(8, 4);
    for i in c_entries.iter().filter(|i| i.expected_status == ExpectedStatus::Verified) {
        for d in 0..4 {
            let r = verify_identity(i, &sampler.draw(i, d), &VerifyOptions::default()).unwrap();
            assert!(r.pass, "{} {}", i.id, r.rel_residual);
        }
    }
    let g = coefficient_grid(&sampler.draw(c_entries[0], 0).spec, 3, 3).unwrap();
    assert_eq!(g.coeffs.dim(), (4, 4));
}
