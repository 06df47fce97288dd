use appell4::catalog::{
    audit_catalog, builtin_catalog, AuditFilter, Family, ParamSampler, Target, VerifyMode,
    VerifyOptions, DEFAULT_SEED, DEFAULT_TOLERANCE,
};
use appell4::exec::Execution;
use appell4::operators::GridShape;
use appell4::quadrature::{
    default_tolerance, generalized_laguerre_rule, integral_rep_check_tol,
    IntegralRepSpec, QuadCheckReport, Representation,
};
use appell4::series::{
    convergence_region, divergence_diagnostic, eval, F41Params, F42Params, F4Params, KdfParams,
    SeriesSpec, TruncationPolicy,
};
use appell4::{ComplexScalar, Error};
use serde::Serialize;

use crate::config::{
    AuditConfig, Cplx, EvalConfig, FunctionKind, ModeChoice, QuadConfig, RepChoice, RunConfig,
    SweepConfig,
};
use crate::json::{to_report, Cx, Num};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EVAL: i32 = 3;

pub const SEED_ENV: &str = "APPELL4_SEED";
pub const SWEEP_HEADER: &str = "abs_x,abs_y,inside,margin,divergence";
/// Required agreement between the two integral representations.
pub const REP_AGREEMENT_TOL: f64 = 1e-9;

/// Exit code, report text and an optional diagnostic for standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Option<String>,
    pub message: Option<String>,
}

impl Outcome {
    fn report(code: i32, report: String) -> Self {
        Outcome {
            code,
            report: Some(report),
            message: None,
        }
    }

    pub fn error(code: i32, message: impl Into<String>) -> Self {
        Outcome {
            code,
            report: None,
            message: Some(message.into()),
        }
    }
}

fn c(v: f64) -> ComplexScalar {
    ComplexScalar::new(v, 0.0)
}

fn get(v: Option<Cplx>, default: f64) -> ComplexScalar {
    v.map_or(c(default), |z| z.0)
}

/// Seed precedence: explicit setting, then the environment, then the default.
pub fn resolve_seed(explicit: Option<u64>) -> Result<u64, String> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| format!("{SEED_ENV}={v:?} is not a seed: {e}")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Parameter echo; only the fields meaningful for the function are present.
#[derive(Debug, Default, Serialize)]
pub struct ParamsOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c1: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c2: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t1: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t2: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k1: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k2: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    coupled_num: Vec<Cx>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    x_num: Vec<Cx>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    y_num: Vec<Cx>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    coupled_den: Vec<Cx>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    x_den: Vec<Cx>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    y_den: Vec<Cx>,
    x: Cx,
    y: Cx,
}

fn cxs(v: &[ComplexScalar]) -> Vec<Cx> {
    v.iter().map(|z| Cx(*z)).collect()
}

impl ParamsOut {
    fn of(spec: &SeriesSpec) -> Self {
        match spec {
            SeriesSpec::F41(p) => ParamsOut {
                a: Some(Cx(p.a)),
                b: Some(Cx(p.b)),
                c1: Some(Cx(p.c1)),
                c2: Some(Cx(p.c2)),
                t1: Some(Cx(p.t1)),
                t2: Some(Cx(p.t2)),
                k1: Some(p.k1),
                k2: Some(p.k2),
                x: Cx(p.x),
                y: Cx(p.y),
                ..Default::default()
            },
            SeriesSpec::F42(p) => ParamsOut {
                a: Some(Cx(p.a)),
                b: Some(Cx(p.b)),
                c1: Some(Cx(p.c1)),
                c2: Some(Cx(p.c2)),
                t: Some(Cx(p.t)),
                k: Some(p.k),
                x: Cx(p.x),
                y: Cx(p.y),
                ..Default::default()
            },
            SeriesSpec::F4(p) => ParamsOut {
                a: Some(Cx(p.a)),
                b: Some(Cx(p.b)),
                c1: Some(Cx(p.c1)),
                c2: Some(Cx(p.c2)),
                x: Cx(p.x),
                y: Cx(p.y),
                ..Default::default()
            },
            SeriesSpec::Kdf(p) => ParamsOut {
                coupled_num: cxs(&p.coupled_num),
                x_num: cxs(&p.x_num),
                y_num: cxs(&p.y_num),
                coupled_den: cxs(&p.coupled_den),
                x_den: cxs(&p.x_den),
                y_den: cxs(&p.y_den),
                x: Cx(p.x),
                y: Cx(p.y),
                ..Default::default()
            },
        }
    }
}

#[derive(Debug, Serialize)]
struct EvalReport {
    function: &'static str,
    params: ParamsOut,
    value: Cx,
    terms_used: usize,
    tail_estimate: Num,
    divergence_flag: bool,
    max_term_ratio: Num,
    region_warning: bool,
}

/// The series described by the eval flags.
pub fn eval_spec(e: &EvalConfig) -> SeriesSpec {
    let (a, b) = (get(e.a, 1.0), get(e.b, 1.0));
    let (c1, c2) = (get(e.c1, 2.0), get(e.c2, 2.0));
    let (x, y) = (get(e.x, 0.1), get(e.y, 0.1));
    let list = |v: &[Cplx]| v.iter().map(|z| z.0).collect::<Vec<_>>();
    match e.function.unwrap_or(FunctionKind::F41) {
        FunctionKind::F41 => SeriesSpec::F41(F41Params {
            a,
            b,
            c1,
            c2,
            t1: get(e.t1, 0.0),
            t2: get(e.t2, 0.0),
            k1: e.k1.unwrap_or(0),
            k2: e.k2.unwrap_or(0),
            x,
            y,
        }),
        FunctionKind::F42 => SeriesSpec::F42(F42Params {
            a,
            b,
            c1,
            c2,
            t: get(e.t, 0.0),
            k: e.k.unwrap_or(0),
            x,
            y,
        }),
        FunctionKind::F4 => SeriesSpec::F4(F4Params { a, b, c1, c2, x, y }),
        FunctionKind::Kdf => SeriesSpec::Kdf(KdfParams {
            coupled_num: list(&e.coupled_num),
            x_num: list(&e.x_num),
            y_num: list(&e.y_num),
            coupled_den: list(&e.coupled_den),
            x_den: list(&e.x_den),
            y_den: list(&e.y_den),
            x,
            y,
        }),
    }
}

pub fn cmd_eval(cfg: &RunConfig) -> Outcome {
    let e = &cfg.eval;
    let m = cfg.common.max_m.unwrap_or(40);
    let n = cfg.common.max_n.unwrap_or(m);
    let pol = if e.adaptive.unwrap_or(false) {
        TruncationPolicy::adaptive(m, n, cfg.common.tolerance.unwrap_or(1e-16))
    } else {
        TruncationPolicy::fixed(m, n)
    };
    let spec = eval_spec(e);
    match eval(&spec, &pol) {
        Ok(r) => Outcome::report(
            EXIT_OK,
            to_report(&EvalReport {
                function: spec.family_name(),
                params: ParamsOut::of(&spec),
                value: Cx(r.value),
                terms_used: r.terms_used,
                tail_estimate: Num(r.tail_estimate),
                divergence_flag: r.divergence_flag,
                max_term_ratio: Num(r.max_term_ratio),
                region_warning: r.region_warning,
            }),
        ),
        Err(err) => Outcome::error(EXIT_EVAL, format!("evaluation failed: {err}")),
    }
}

#[derive(Debug, Serialize)]
struct AuditOut<'a> {
    id: &'a str,
    paper_anchor: &'a str,
    draws: usize,
    passes: usize,
    worst_rel_residual: Num,
    status: &'a str,
}

fn audit_filter(a: &AuditConfig) -> Result<AuditFilter, String> {
    let families = a
        .family
        .iter()
        .map(|f| Family::parse(f).ok_or_else(|| format!("unknown family {f:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    let targets = a
        .target
        .iter()
        .map(|t| Target::parse(t).ok_or_else(|| format!("unknown target {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    let wide = a.include_suspected.unwrap_or(false);
    Ok(AuditFilter {
        families,
        targets,
        include_suspected: wide,
        include_twins: wide,
    })
}

pub fn cmd_audit(cfg: &RunConfig) -> Outcome {
    let a = &cfg.audit;
    let seed = match resolve_seed(cfg.common.seed) {
        Ok(s) => s,
        Err(e) => return Outcome::error(EXIT_USAGE, e),
    };
    let filter = match audit_filter(a) {
        Ok(f) => f,
        Err(e) => return Outcome::error(EXIT_USAGE, e),
    };
    let m = cfg.common.max_m.unwrap_or(12);
    let n = cfg.common.max_n.unwrap_or(m);
    if m == 0 || n == 0 {
        return Outcome::error(EXIT_USAGE, "truncation must be at least 1x1");
    }
    let mut sampler = ParamSampler::new(seed, a.draws.unwrap_or(20));
    let mode = match a.mode.unwrap_or(ModeChoice::Coefficientwise) {
        ModeChoice::Coefficientwise => VerifyMode::Coefficientwise,
        ModeChoice::SummedTerminating => {
            sampler = sampler.terminating(a.terminating_t.unwrap_or(4));
            VerifyMode::SummedTerminating
        }
    };
    let opts = VerifyOptions {
        mode,
        shape: GridShape { max_m: m, max_n: n },
        tolerance: cfg.common.tolerance.unwrap_or(DEFAULT_TOLERANCE),
    };
    let exec = if a.sequential.unwrap_or(false) {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let entries = audit_catalog(&builtin_catalog(), &sampler, &opts, &filter, exec);
    let out: Vec<AuditOut> = entries
        .iter()
        .map(|e| AuditOut {
            id: &e.id,
            paper_anchor: &e.paper_anchor,
            draws: e.draws,
            passes: e.passes,
            worst_rel_residual: Num(e.worst_rel_residual),
            status: &e.status,
        })
        .collect();
    let code = if entries.iter().any(|e| e.status == "regression") {
        EXIT_FAIL
    } else {
        EXIT_OK
    };
    Outcome::report(code, to_report(&out))
}

#[derive(Debug, Serialize)]
struct QuadOut {
    which: Representation,
    k: u32,
    params: ParamsOut,
    order: usize,
    alpha: Num,
    quadrature_value: Cx,
    series_value: Cx,
    abs_residual: Num,
    rel_residual: Num,
    tolerance: Num,
    pass: bool,
}

impl From<&QuadCheckReport> for QuadOut {
    fn from(r: &QuadCheckReport) -> Self {
        QuadOut {
            which: r.which,
            k: r.k,
            params: ParamsOut::of(&SeriesSpec::F41(r.params)),
            order: r.order,
            alpha: Num(r.alpha),
            quadrature_value: Cx(r.quadrature_value),
            series_value: Cx(r.series_value),
            abs_residual: Num(r.abs_residual),
            rel_residual: Num(r.rel_residual),
            tolerance: Num(r.tolerance),
            pass: r.pass,
        }
    }
}

#[derive(Debug, Serialize)]
struct QuadReport {
    reports: Vec<QuadOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rep_agreement: Option<Num>,
    pass: bool,
}

pub fn quad_params(q: &QuadConfig) -> F41Params {
    let k = q.k.unwrap_or(0);
    F41Params {
        a: get(q.a, 1.5),
        b: get(q.b, 0.7),
        c1: get(q.c1, 1.2),
        c2: get(q.c2, 0.9),
        t1: get(q.t1, 3.0),
        t2: get(q.t2, 3.0),
        k1: k,
        k2: k,
        x: get(q.x, 0.05),
        y: get(q.y, 0.05),
    }
}

fn quad_one(
    which: Representation,
    q: &QuadConfig,
    cfg: &RunConfig,
) -> Result<QuadCheckReport, Error> {
    let k = q.k.unwrap_or(0);
    let spec = IntegralRepSpec::new(which, k, quad_params(q));
    let natural = spec.natural_alpha();
    let alpha = q
        .alpha
        .unwrap_or(if natural > -1.0 { natural } else { 0.0 });
    let rule = generalized_laguerre_rule(q.order.unwrap_or(64), alpha)?;
    let m = cfg.common.max_m.unwrap_or(100);
    let pol = TruncationPolicy::fixed(m, cfg.common.max_n.unwrap_or(m));
    let tol = cfg.common.tolerance.unwrap_or(default_tolerance(k));
    integral_rep_check_tol(&spec, &rule, &pol, tol)
}

pub fn cmd_quadcheck(cfg: &RunConfig) -> Outcome {
    let q = &cfg.quadcheck;
    let reps: &[Representation] = match q.rep.unwrap_or(RepChoice::A) {
        RepChoice::A => &[Representation::RepA],
        RepChoice::B => &[Representation::RepB],
        RepChoice::Both => &[Representation::RepA, Representation::RepB],
    };
    let mut reports = Vec::new();
    let mut values = Vec::new();
    for which in reps {
        match quad_one(*which, q, cfg) {
            Ok(r) => {
                values.push(r.quadrature_value);
                reports.push(r);
            }
            Err(e @ Error::InvalidArgument(_)) => {
                return Outcome::error(EXIT_USAGE, format!("quadcheck: {e}"))
            }
            Err(e) => return Outcome::error(EXIT_EVAL, format!("quadcheck: {e}")),
        }
    }
    let rep_agreement = (values.len() == 2).then(|| appell4::numerics::rel_diff(values[0], values[1]));
    let pass = reports.iter().all(|r| r.pass)
        && rep_agreement.is_none_or(|d| d <= REP_AGREEMENT_TOL);
    let out = QuadReport {
        reports: reports.iter().map(QuadOut::from).collect(),
        rep_agreement: rep_agreement.map(Num),
        pass,
    };
    Outcome::report(if pass { EXIT_OK } else { EXIT_FAIL }, to_report(&out))
}

/// Grid points `0, step, …` up to `max`, tolerating rounding at the end.
fn axis(max: f64, step: f64) -> Vec<f64> {
    let count = (max / step + 1e-9).floor() as usize;
    (0..=count).map(|i| i as f64 * step).collect()
}

pub fn sweep_rows(s: &SweepConfig, diag_m: usize) -> Result<Vec<String>, Outcome> {
    let x_max = s.x_max.unwrap_or(0.5);
    let y_max = s.y_max.unwrap_or(0.5);
    let step = s.step.unwrap_or(0.1);
    let finite = x_max.is_finite() && y_max.is_finite() && step.is_finite();
    if !finite || step <= 0.0 || x_max < 0.0 || y_max < 0.0 {
        return Err(Outcome::error(
            EXIT_USAGE,
            format!("bad sweep bounds: x_max={x_max}, y_max={y_max}, step={step}"),
        ));
    }
    if (x_max / step) > 1e6 || (y_max / step) > 1e6 {
        return Err(Outcome::error(EXIT_USAGE, "sweep grid too fine"));
    }
    let k = s.k.unwrap_or(0);
    let base = F41Params {
        a: get(s.a, 0.5),
        b: get(s.b, 0.75),
        c1: get(s.c1, 1.25),
        c2: get(s.c2, 1.5),
        t1: get(s.t1, 0.5),
        t2: get(s.t2, 0.5),
        k1: k,
        k2: k,
        x: c(0.0),
        y: c(0.0),
    };
    let mut rows = vec![SWEEP_HEADER.to_string()];
    for ax in axis(x_max, step) {
        for ay in axis(y_max, step) {
            let spec = SeriesSpec::F41(F41Params {
                x: c(ax),
                y: c(ay),
                ..base
            });
            let (inside, margin) = convergence_region(c(ax), c(ay));
            let flag = divergence_diagnostic(&spec, diag_m)
                .map_err(|e| Outcome::error(EXIT_EVAL, format!("sweep: {e}")))?
                .divergence_flag;
            rows.push(format!("{ax},{ay},{inside},{margin},{flag}"));
        }
    }
    Ok(rows)
}

pub fn cmd_sweep(cfg: &RunConfig) -> Outcome {
    let m = cfg.common.max_m.unwrap_or(40);
    if m < 8 {
        return Outcome::error(EXIT_USAGE, format!("sweep needs --m >= 8, got {m}"));
    }
    match sweep_rows(&cfg.sweep, m) {
        Ok(rows) => {
            let mut text = rows.join("\n");
            text.push('\n');
            Outcome::report(EXIT_OK, text)
        }
        Err(o) => o,
    }
}
