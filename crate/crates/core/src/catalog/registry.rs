use std::sync::Arc;

use super::identity::{
    Constraints, ExpectedStatus, Family, Identity, RelTerm, Relation, Target,
};
use crate::operators::{ops, ArgMap, Coef, Instance, IntExpr, OperatorExpr, TParam};
use crate::series::{Order, Param};

use Param::{A, B, C1, C2, T, T1, T2};

fn p(x: Param) -> Coef {
    Coef::p(x)
}

fn one() -> OperatorExpr {
    OperatorExpr::identity()
}

fn at(shifts: &[(Param, IntExpr)]) -> Instance {
    Instance::shifted(shifts)
}

fn sh(param: Param, by: i64) -> (Param, IntExpr) {
    (param, IntExpr::konst(by))
}

fn base() -> Instance {
    Instance::base()
}

fn term(coef: impl Into<Coef>, op: OperatorExpr, instance: Instance) -> RelTerm {
    RelTerm {
        coef: coef.into(),
        op,
        instance,
    }
}

/// `(−1)^k (−t)_k` where `k` is the order attached to `t`.
fn disc(t: TParam) -> Coef {
    let k = IntExpr::order(t.order());
    Coef::sign_pow(k) * (-p(t.param())).poch(k)
}

/// `t − k` as an instance shift.
fn lowered(t: TParam) -> (Param, IntExpr) {
    (t.param(), -IntExpr::order(t.order()))
}

/// Discrete parameters attached to `x` and to `y` for each target.
fn axes(target: Target) -> (TParam, TParam) {
    match target {
        Target::F41 => (TParam::T1, TParam::T2),
        Target::F42 => (TParam::T, TParam::T),
    }
}

fn title(target: Target) -> &'static str {
    match target {
        Target::F41 => "first discrete analogue",
        Target::F42 => "second discrete analogue",
    }
}

struct Entry {
    id: String,
    family: Family,
    target: Target,
    anchor: String,
    constraints: Constraints,
    status: ExpectedStatus,
    justification: Option<String>,
    twin: Option<String>,
    build: Arc<dyn Fn(i64) -> Relation + Send + Sync>,
}

impl Entry {
    fn new(
        id: String,
        family: Family,
        target: Target,
        anchor: String,
        constraints: Constraints,
        build: impl Fn(i64) -> Relation + Send + Sync + 'static,
    ) -> Self {
        Entry {
            id,
            family,
            target,
            anchor,
            constraints,
            status: ExpectedStatus::Verified,
            justification: None,
            twin: None,
            build: Arc::new(build),
        }
    }

    fn suspected(mut self, why: &str) -> Self {
        self.status = ExpectedStatus::SuspectedTypo;
        self.justification = Some(why.to_string());
        self.twin = Some(format!("{}.corrected", self.id));
        self
    }

    fn note(mut self, why: &str) -> Self {
        self.justification = Some(why.to_string());
        self
    }

    /// The corrected counterpart of a suspected entry.
    fn corrected(
        &self,
        why: &str,
        constraints: Constraints,
        build: impl Fn(i64) -> Relation + Send + Sync + 'static,
    ) -> Entry {
        Entry {
            id: format!("{}.corrected", self.id),
            family: self.family,
            target: self.target,
            anchor: format!("{} (corrected)", self.anchor),
            constraints,
            status: ExpectedStatus::Verified,
            justification: Some(why.to_string()),
            twin: Some(self.id.clone()),
            build: Arc::new(build),
        }
    }

    fn finish(self) -> Identity {
        Identity {
            id: self.id,
            family: self.family,
            target: self.target,
            anchor: self.anchor,
            constraints: self.constraints,
            expected_status: self.status,
            justification: self.justification,
            twin: self.twin,
            build: self.build,
        }
    }
}

fn single(lhs: RelTerm, rhs: RelTerm) -> Relation {
    Relation {
        lhs: vec![lhs],
        rhs: vec![rhs],
    }
}

fn family_a(target: Target) -> Vec<Entry> {
    let anchor = |v: &str| {
        format!(
            "{}: difference-differential equation in {v}",
            title(target)
        )
    };
    let id = |i: u32| format!("{target}.ddeq.{i}");
    let cons = Constraints::default();
    match target {
        Target::F41 => {
            let pair = |ab: Coef| {
                ops::stheta(TParam::T1) + ops::stheta(TParam::T2) + OperatorExpr::coef(ab)
            };
            let eq = move |t: TParam, c: Param, var: OperatorExpr| {
                let lhs = ops::big_theta(t) * (ops::stheta(t) + p(c) - 1.0);
                let k = Coef::int(IntExpr::order(t.order()));
                let rhs = var * ops::rho(t, IntExpr::order(t.order())) * pair(p(A)) * pair(p(B));
                single(term(1.0, lhs, base()), term(k * disc(t), rhs, base()))
            };
            vec![
                Entry::new(id(1), Family::A_ddeq, target, anchor("x"), cons, move |_| {
                    eq(TParam::T1, C1, ops::x())
                }),
                Entry::new(id(2), Family::A_ddeq, target, anchor("y"), cons, move |_| {
                    eq(TParam::T2, C2, ops::y())
                }),
            ]
        }
        Target::F42 => {
            let pair = |ab: Param| ops::stheta(TParam::T) + p(ab);
            let eq = move |euler: OperatorExpr, c: Param, var: OperatorExpr| {
                let lhs = euler.clone() * (euler + p(c) - 1.0);
                let rhs = var * ops::rho(TParam::T, Order::K) * pair(A) * pair(B);
                single(term(1.0, lhs, base()), term(disc(TParam::T), rhs, base()))
            };
            vec![
                Entry::new(id(1), Family::A_ddeq, target, anchor("x"), cons, move |_| {
                    eq(ops::theta(), C1, ops::x())
                }),
                Entry::new(id(2), Family::A_ddeq, target, anchor("y"), cons, move |_| {
                    eq(ops::phi(), C2, ops::y())
                })
                .note("the unsubscripted Θ in the second factor is read as Θ_t"),
            ]
        }
    }
}

const EULER_POWER_NOTE: &str = "the r-th power of the Euler operator does not match the stated \
right side for r >= 2: cellwise the ratio is (m+r)^r m!/(m+r)!; the stated right side equals \
x^r (d/dx)^r F (resp. y^r (d/dy)^r F)";

/// `θ^r F = coef · x^r F(shifted)` and its corrected `x^r ∂^r` twin.
fn euler_power(
    entry_id: String,
    target: Target,
    anchor: String,
    along_x: bool,
    k_one: bool,
) -> Vec<Entry> {
    let (euler, var, deriv, cpar) = if along_x {
        (ops::theta(), ops::x(), ops::dx(), C1)
    } else {
        (ops::phi(), ops::y(), ops::dy(), C2)
    };
    let rhs = move |r: i64| {
        let rk = IntExpr {
            k1: if target == Target::F41 && along_x { r } else { 0 },
            k2: if target == Target::F41 && !along_x { r } else { 0 },
            k: if target == Target::F42 { r } else { 0 },
            konst: 0,
        };
        let tp = match (target, along_x) {
            (Target::F41, true) => T1,
            (Target::F41, false) => T2,
            (Target::F42, _) => T,
        };
        let coef = Coef::sign_pow(rk) * p(A).poch(r) * p(B).poch(r) * (-p(tp)).poch(rk)
            / p(cpar).poch(r);
        let inst = at(&[sh(A, r), sh(B, r), sh(cpar, r), (tp, -rk)]);
        (coef, inst)
    };
    let mut cons = Constraints::indexed(2);
    cons.k_one = k_one;
    let (euler_c, var_c) = (euler.clone(), var.clone());
    let printed = Entry::new(
        entry_id,
        Family::B_diff_formulas,
        target,
        anchor,
        cons,
        move |r| {
            let (coef, inst) = rhs(r);
            single(
                term(1.0, euler_c.pow(r as usize), base()),
                term(coef, var_c.pow(r as usize), inst),
            )
        },
    )
    .suspected(EULER_POWER_NOTE);
    let mut twin_cons = Constraints::indexed(1);
    twin_cons.k_one = k_one;
    let twin = printed.corrected(
        "left side replaced by the r-th power of the variable times the r-th derivative",
        twin_cons,
        move |r| {
            let (coef, inst) = rhs(r);
            let n = r as usize;
            single(
                term(1.0, var.pow(n) * deriv.pow(n), base()),
                term(coef, var.pow(n), inst),
            )
        },
    );
    vec![printed, twin]
}

fn family_b(target: Target) -> Vec<Entry> {
    let anchor = |l: char| {
        format!(
            "{}: difference and differential formulas, item {l}",
            title(target)
        )
    };
    let id = |l: char| format!("{target}.euler.{l}");
    let mut out = Vec::new();
    match target {
        Target::F41 => {
            for (l, t, cpar, along_x) in [('a', TParam::T1, C1, true), ('b', TParam::T2, C2, false)]
            {
                let mut cons = Constraints::indexed(1);
                if along_x {
                    cons.k1_one = true;
                } else {
                    cons.k2_one = true;
                }
                out.push(Entry::new(
                    id(l),
                    Family::B_diff_formulas,
                    target,
                    anchor(l),
                    cons,
                    move |r| {
                        let var = if along_x { ops::x() } else { ops::y() };
                        let n = r as usize;
                        let coef = p(A).poch(r) * p(B).poch(r) / p(cpar).poch(r);
                        single(
                            term(1.0, ops::delta(t).pow(n), base()),
                            term(coef, var.pow(n), at(&[sh(A, r), sh(B, r), sh(cpar, r)])),
                        )
                    },
                ));
            }
            out.extend(euler_power(id('c'), target, anchor('c'), true, false));
            out.extend(euler_power(id('d'), target, anchor('d'), false, false));
        }
        Target::F42 => {
            out.extend(euler_power(id('a'), target, anchor('a'), true, false));
            out.extend(euler_power(id('b'), target, anchor('b'), false, false));
            out.extend(euler_power(id('c'), target, anchor('c'), true, true));
            out.extend(euler_power(id('d'), target, anchor('d'), false, true));
        }
    }
    out
}

fn family_c(target: Target) -> Vec<Entry> {
    let anchor = |l: char| format!("{}: differential formulas, item {l}", title(target));
    let id = |l: char| format!("{target}.partial.{l}");
    let cons = Constraints::indexed(1);
    let mut out = Vec::new();
    // (∂)^r [v^{q+r−1} F(q)] = v^{q−1} (q)_r F(q + r) on composite arguments.
    for (l, q, along_x) in [('a', B, true), ('b', B, false), ('c', A, true), ('d', A, false)] {
        out.push(Entry::new(
            id(l),
            Family::C_partial_formulas,
            target,
            anchor(l),
            cons,
            move |r| {
                let (d, vpow, args): (OperatorExpr, fn(Coef) -> OperatorExpr, ArgMap) = if along_x {
                    (ops::dx(), |e| ops::x_pow(e), ArgMap::XxY)
                } else {
                    (ops::dy(), |e| ops::y_pow(e), ArgMap::XyY)
                };
                let lhs = d.pow(r as usize) * vpow(p(q) + (r - 1) as f64);
                let rhs = vpow(p(q) - 1.0);
                single(
                    term(1.0, lhs, base().with_args(args)),
                    term(p(q).poch(r), rhs, at(&[sh(q, r)]).with_args(args)),
                )
            },
        ));
    }
    // (∂)^r [v^{c−1} F] = (−1)^r (1−c)_r v^{c−r−1} F(c − r).
    for (l, c, along_x) in [('e', C1, true), ('f', C2, false)] {
        out.push(Entry::new(
            id(l),
            Family::C_partial_formulas,
            target,
            anchor(l),
            cons,
            move |r| {
                let (d, vpow): (OperatorExpr, fn(Coef) -> OperatorExpr) = if along_x {
                    (ops::dx(), |e| ops::x_pow(e))
                } else {
                    (ops::dy(), |e| ops::y_pow(e))
                };
                let lhs = d.pow(r as usize) * vpow(p(c) - 1.0);
                let rhs = vpow(p(c) - (r + 1) as f64);
                let coef = Coef::sign_pow(r) * (-p(c) + 1.0).poch(r);
                single(
                    term(1.0, lhs, base()),
                    term(coef, rhs, at(&[sh(c, -r)])),
                )
            },
        ));
    }
    out
}

/// One `Σ_r coef · v · F(shifts(r))` block of a recursion sum.
fn block(
    coef: Coef,
    var: OperatorExpr,
    range: std::ops::RangeInclusive<i64>,
    shifts: impl Fn(i64) -> Vec<(Param, IntExpr)>,
    per_r: impl Fn(i64) -> Coef,
) -> Vec<RelTerm> {
    range
        .map(|r| term(coef.clone() * per_r(r), var.clone(), at(&shifts(r))))
        .collect()
}

fn family_d(target: Target) -> Vec<Entry> {
    let anchor = |i: u32| format!("{}: recursion formulas, item {i}", title(target));
    let id = |i: u32| format!("{target}.rec.{i}");
    let (tx, ty) = axes(target);
    let cons = Constraints::indexed(1);
    let unit = |_r: i64| Coef::one();
    let fam = Family::D_recursion_sums;
    let mut out = Vec::new();

    out.push(Entry::new(id(1), fam, target, anchor(1), cons, move |s| {
        let mut rhs = vec![term(1.0, one(), base())];
        rhs.extend(block(
            disc(tx) * p(B) / p(C1),
            ops::x(),
            1..=s,
            |r| vec![sh(A, r), sh(B, 1), sh(C1, 1), lowered(tx)],
            unit,
        ));
        rhs.extend(block(
            disc(ty) * p(B) / p(C2),
            ops::y(),
            1..=s,
            |r| vec![sh(A, r), sh(B, 1), sh(C2, 1), lowered(ty)],
            unit,
        ));
        Relation {
            lhs: vec![term(1.0, one(), at(&[sh(A, s)]))],
            rhs,
        }
    }));

    out.push(Entry::new(id(2), fam, target, anchor(2), cons, move |s| {
        let mut rhs = vec![term(1.0, one(), base())];
        rhs.extend(block(
            -(disc(tx) * p(B) / p(C1)),
            ops::x(),
            0..=s - 1,
            |r| vec![sh(A, -r), sh(B, 1), sh(C1, 1), lowered(tx)],
            unit,
        ));
        rhs.extend(block(
            -(disc(ty) * p(B) / p(C2)),
            ops::y(),
            0..=s - 1,
            |r| vec![sh(A, -r), sh(B, 1), sh(C2, 1), lowered(ty)],
            unit,
        ));
        Relation {
            lhs: vec![term(1.0, one(), at(&[sh(A, -s)]))],
            rhs,
        }
    }));

    out.push(Entry::new(id(3), fam, target, anchor(3), cons, move |s| {
        let mut rhs = vec![term(1.0, one(), base())];
        rhs.extend(block(
            disc(tx) * p(A) / p(C1),
            ops::x(),
            1..=s,
            |r| vec![sh(A, 1), sh(B, r), sh(C1, 1), lowered(tx)],
            unit,
        ));
        rhs.extend(block(
            disc(ty) * p(A) / p(C2),
            ops::y(),
            1..=s,
            |r| vec![sh(A, 1), sh(B, r), sh(C2, 1), lowered(ty)],
            unit,
        ));
        Relation {
            lhs: vec![term(1.0, one(), at(&[sh(B, s)]))],
            rhs,
        }
    }));

    // b-lowering; `y_sign` is the order whose parity sets the sign of the y block.
    let b_lower = move |y_sign: TParam| {
        move |s: i64| {
            let ysign = Coef::sign_pow(IntExpr::order(y_sign.order()));
            let yfac = {
                let k = IntExpr::order(ty.order());
                ysign * (-p(ty.param())).poch(k)
            };
            let mut rhs = vec![term(1.0, one(), base())];
            rhs.extend(block(
                -(disc(tx) * p(A) / p(C1)),
                ops::x(),
                0..=s - 1,
                |r| vec![sh(A, 1), sh(B, -r), sh(C1, 1), lowered(tx)],
                unit,
            ));
            rhs.extend(block(
                -(yfac * p(A) / p(C2)),
                ops::y(),
                0..=s - 1,
                |r| vec![sh(A, 1), sh(B, -r), sh(C2, 1), lowered(ty)],
                unit,
            ));
            Relation {
                lhs: vec![term(1.0, one(), at(&[sh(B, -s)]))],
                rhs,
            }
        }
    };
    match target {
        Target::F41 => {
            let printed = Entry::new(id(4), fam, target, anchor(4), {
                let mut c = cons;
                c.k_parity_differs = true;
                c
            }, b_lower(TParam::T1))
            .suspected(
                "the y block carries the sign (-1)^k1 while its shifted factorial is \
                 (-t2)_k2; the contiguous step in y produces (-1)^k2. The two readings \
                 coincide when k1 and k2 have equal parity, so the entry is sampled at \
                 opposite parity",
            );
            let twin = printed.corrected(
                "sign of the y block set to (-1)^k2",
                cons,
                b_lower(TParam::T2),
            );
            out.push(printed);
            out.push(twin);
        }
        Target::F42 => {
            out.push(
                Entry::new(id(4), fam, target, anchor(4), cons, b_lower(TParam::T)).note(
                    "the first block prints the discrete arguments as (t1 - k, t2); they are \
                     read as t - k, the only discrete parameter of this function",
                ),
            );
        }
    }

    let c_lower = move |with_y: bool| {
        move |s: i64| {
            let pair = |r: i64| -> Coef {
                Coef::one() / ((p(C1) - r as f64) * (p(C1) - (r - 1) as f64))
            };
            let mut rhs = vec![term(1.0, one(), base())];
            rhs.extend(block(
                disc(tx) * p(A) * p(B),
                ops::x(),
                1..=s,
                |r| vec![sh(A, 1), sh(B, 1), sh(C1, 2 - r), lowered(tx)],
                pair,
            ));
            if with_y {
                rhs.extend(block(
                    disc(ty) * p(A) * p(B),
                    ops::y(),
                    1..=s,
                    |r| vec![sh(A, 1), sh(B, 1), sh(C1, 2 - r), lowered(ty)],
                    pair,
                ));
            }
            Relation {
                lhs: vec![term(1.0, one(), at(&[sh(C1, -s)]))],
                rhs,
            }
        }
    };
    let printed = Entry::new(id(5), fam, target, anchor(5), cons, c_lower(true)).suspected(
        "lowering c1 only changes the (c1)_m denominators, so the difference F(c1 - s) - F \
         has no pure y contribution; the printed y block is spurious",
    );
    let twin = printed.corrected("y block removed", cons, c_lower(false));
    out.push(printed);
    out.push(twin);
    out
}

/// Building blocks `a + Σ`, `c1 + Σ₁`, … of the first- and second-order lists.
#[derive(Clone)]
struct Syms {
    /// Operator added to `a` and `b`.
    ab: OperatorExpr,
    /// Operator added to `c1`.
    c1: OperatorExpr,
    /// Operator added to `c2`.
    c2: OperatorExpr,
}

impl Syms {
    fn differential() -> Self {
        Syms {
            ab: ops::theta() + ops::phi(),
            c1: ops::theta(),
            c2: ops::phi(),
        }
    }

    fn difference(target: Target) -> Self {
        match target {
            Target::F41 => Syms {
                ab: ops::stheta(TParam::T1) + ops::stheta(TParam::T2),
                c1: ops::stheta(TParam::T1),
                c2: ops::stheta(TParam::T2),
            },
            Target::F42 => Syms {
                ab: ops::stheta(TParam::T),
                c1: ops::theta(),
                c2: ops::phi(),
            },
        }
    }

    fn a(&self) -> OperatorExpr {
        self.ab.clone() + p(A)
    }
    fn a1(&self) -> OperatorExpr {
        self.a() - 1.0
    }
    fn b(&self) -> OperatorExpr {
        self.ab.clone() + p(B)
    }
    fn b1(&self) -> OperatorExpr {
        self.b() - 1.0
    }
    fn c(&self) -> OperatorExpr {
        self.c1.clone() + p(C1)
    }
    fn c_1(&self) -> OperatorExpr {
        self.c() - 1.0
    }
    fn d(&self) -> OperatorExpr {
        self.c2.clone() + p(C2)
    }
    fn d_1(&self) -> OperatorExpr {
        self.d() - 1.0
    }
}

/// `coef · op F(shift)`, one side of a two-term relation.
#[derive(Clone)]
struct Side {
    coef: Coef,
    op: OperatorExpr,
    shift: (Param, i64),
}

fn side(coef: impl Into<Coef>, op: OperatorExpr, shift: (Param, i64)) -> Side {
    Side {
        coef: coef.into(),
        op,
        shift,
    }
}

fn side_term(s: &Side) -> RelTerm {
    let inst = if s.shift.1 == 0 {
        base()
    } else {
        at(&[sh(s.shift.0, s.shift.1)])
    };
    term(s.coef.clone(), s.op.clone(), inst)
}

fn two_term(lhs: Side, rhs: Side) -> impl Fn(i64) -> Relation + Send + Sync + 'static {
    move |_| single(side_term(&lhs), side_term(&rhs))
}

fn family_e(target: Target) -> Vec<Entry> {
    let mut out = Vec::new();
    for (kind, syms, what) in [
        ("diffrel", Syms::differential(), "simple differential relations"),
        ("deltarel", Syms::difference(target), "simple difference relations"),
    ] {
        let s = syms;
        let list = vec![
            (side(p(A), one(), (A, 1)), side(1.0, s.a(), (A, 0))),
            (side(1.0, s.a1(), (A, -1)), side(p(A) - 1.0, one(), (A, 0))),
            (side(p(B), one(), (B, 1)), side(1.0, s.b(), (B, 0))),
            (side(1.0, s.b1(), (B, -1)), side(p(B) - 1.0, one(), (B, 0))),
            (side(p(C1) - 1.0, one(), (C1, -1)), side(1.0, s.c_1(), (C1, 0))),
            (side(1.0, s.c(), (C1, 1)), side(p(C1), one(), (C1, 0))),
            (side(p(C2) - 1.0, one(), (C2, -1)), side(1.0, s.d_1(), (C2, 0))),
            (side(1.0, s.d(), (C2, 1)), side(p(C2), one(), (C2, 0))),
        ];
        for (i, (l, r)) in list.into_iter().enumerate() {
            out.push(Entry::new(
                format!("{target}.{kind}.{}", i + 1),
                Family::E_first_order,
                target,
                format!("{}: {what}, item {}", title(target), i + 1),
                Constraints::default(),
                two_term(l, r),
            ));
        }
    }
    out
}

/// How the printed differential list departs from the pattern at the
/// positions that differ between lists.
enum LedgerKind {
    /// Differential list as printed (duplicate at 10, `c1 + φ` at 13, 24, 25).
    Printed,
    /// The regular pattern.
    Regular,
}

fn ledger(s: &Syms, kind: LedgerKind) -> Vec<(Side, Side)> {
    let (a, b, c1, c2) = (p(A), p(B), p(C1), p(C2));
    let (ap, am) = ((A, 1), (A, -1));
    let (bp, bm) = ((B, 1), (B, -1));
    let (cp, cm) = ((C1, 1), (C1, -1));
    let (dp, dm) = ((C2, 1), (C2, -1));
    let printed = matches!(kind, LedgerKind::Printed);
    let c1_phi = ops::phi() + p(C1);
    let e10 = if printed {
        (
            side(a.clone(), s.d_1(), ap),
            side(c2.clone() - 1.0, s.a(), dm),
        )
    } else {
        (
            side(1.0, s.a1() * s.d_1(), am),
            side((c2.clone() - 1.0) * (a.clone() - 1.0), one(), dm),
        )
    };
    let e13 = if printed { c1_phi.clone() } else { s.d() };
    let e24 = if printed { c1_phi.clone() - 1.0 } else { s.c_1() };
    let e25 = if printed { (c1_phi - 1.0) * s.d() } else { s.c_1() * s.d() };
    vec![
        (
            side(a.clone() * (a.clone() - 1.0), one(), ap),
            side(1.0, s.a() * s.a1(), am),
        ),
        (
            side(a.clone() * (b.clone() - 1.0), one(), ap),
            side(1.0, s.a() * s.b1(), bm),
        ),
        (side(a.clone() * c1.clone(), one(), ap), side(1.0, s.a() * s.c(), cp)),
        (side(a.clone() * c2.clone(), one(), ap), side(1.0, s.a() * s.d(), dp)),
        (side(a.clone(), s.b(), ap), side(b.clone(), s.a(), bp)),
        (side(a.clone(), s.c_1(), ap), side(c1.clone() - 1.0, s.a(), cm)),
        (side(a.clone(), s.d_1(), ap), side(c2.clone() - 1.0, s.a(), dm)),
        (
            side(1.0, s.a1() * s.b(), am),
            side(b.clone() * (a.clone() - 1.0), one(), bp),
        ),
        (
            side(1.0, s.a1() * s.c_1(), am),
            side((c1.clone() - 1.0) * (a.clone() - 1.0), one(), cm),
        ),
        e10,
        (
            side(b.clone() - 1.0, s.a1(), am),
            side(a.clone() - 1.0, s.b1(), bm),
        ),
        (side(c1.clone(), s.a1(), am), side(a.clone() - 1.0, s.c(), cp)),
        (side(c2.clone(), s.a1(), am), side(a.clone() - 1.0, e13, dp)),
        (
            side(b.clone() * (b.clone() - 1.0), one(), bp),
            side(1.0, s.b() * s.b1(), bm),
        ),
        (side(b.clone(), s.c_1(), bp), side(c1.clone() - 1.0, s.b(), cm)),
        (side(b.clone(), s.d_1(), bp), side(c2.clone() - 1.0, s.b(), dm)),
        (side(b.clone() * c1.clone(), one(), bp), side(1.0, s.c() * s.b(), cp)),
        (side(b.clone() * c2.clone(), one(), bp), side(1.0, s.d() * s.b(), dp)),
        (
            side(1.0, s.b1() * s.c_1(), bm),
            side((c1.clone() - 1.0) * (b.clone() - 1.0), one(), cm),
        ),
        (
            side(1.0, s.b1() * s.d_1(), bm),
            side((c2.clone() - 1.0) * (b.clone() - 1.0), one(), dm),
        ),
        (side(c1.clone(), s.b1(), bm), side(b.clone() - 1.0, s.c(), cp)),
        (side(c2.clone(), s.b1(), bm), side(b.clone() - 1.0, s.d(), dp)),
        (
            side(c1.clone() * (c1.clone() - 1.0), one(), cm),
            side(1.0, s.c_1() * s.c(), cp),
        ),
        (side(c1.clone() - 1.0, s.d_1(), cm), side(c2.clone() - 1.0, e24, dm)),
        (side(c2.clone() * (c1.clone() - 1.0), one(), cm), side(1.0, e25, dp)),
        (
            side(1.0, s.c() * s.d_1(), cp),
            side(c1.clone() * (c2.clone() - 1.0), one(), dm),
        ),
        (side(c2.clone(), s.c(), cp), side(c1.clone(), s.d(), dp)),
        (
            side(c2.clone() * (c2 - 1.0), one(), dm),
            side(1.0, s.d_1() * s.d(), dp),
        ),
    ]
}

const C1_PHI_NOTE: &str = "the factor c1 + phi pairs the c1 parameter with the y-operator; \
every neighbouring entry pairs c1 with theta and c2 with phi";

fn family_f(target: Target) -> Vec<Entry> {
    let fam = Family::F_second_order;
    let mut out = Vec::new();

    let diff = Syms::differential();
    let printed = ledger(&diff, LedgerKind::Printed);
    let regular = ledger(&diff, LedgerKind::Regular);
    for (i, (l, r)) in printed.into_iter().enumerate() {
        let pos = i + 1;
        let entry = Entry::new(
            format!("{target}.diffrec.{pos:02}"),
            fam,
            target,
            format!("{}: differential recursion list, item {pos}", title(target)),
            Constraints::default(),
            two_term(l, r),
        );
        match pos {
            10 => out.push(entry.note(
                "repeats item 7 verbatim; the repeated relation is true and is verified as printed",
            )),
            13 | 24 | 25 => {
                let (cl, cr) = regular[i].clone();
                let twin = entry.corrected(
                    match pos {
                        13 => "c1 + phi replaced by c2 + phi",
                        _ => "c1 + phi - 1 replaced by c1 + theta - 1",
                    },
                    Constraints::default(),
                    two_term(cl, cr),
                );
                out.push(entry.suspected(C1_PHI_NOTE));
                out.push(twin);
            }
            _ => out.push(entry),
        }
    }

    let delta = Syms::difference(target);
    let len = match target {
        Target::F41 => 28,
        Target::F42 => 22,
    };
    let note = match target {
        Target::F41 => None,
        Target::F42 => Some(
            "keeps theta and phi next to c1 and c2 while a and b carry (1/k) Theta_t; verified as printed",
        ),
    };
    for (i, (l, r)) in ledger(&delta, LedgerKind::Regular)
        .into_iter()
        .take(len)
        .enumerate()
    {
        let pos = i + 1;
        let mut entry = Entry::new(
            format!("{target}.deltarec.{pos:02}"),
            fam,
            target,
            format!("{}: difference recursion list, item {pos}", title(target)),
            Constraints::default(),
            two_term(l, r),
        );
        if let Some(n) = note {
            entry = entry.note(n);
        }
        out.push(entry);
    }
    out
}

/// Every catalogued relation, in a fixed order: family, then target, then
/// position in its list, each corrected twin right after its printed entry.
pub fn builtin_catalog() -> Vec<Identity> {
    let mut entries = Vec::new();
    for build in [family_a, family_b, family_c, family_d, family_e, family_f] {
        for target in [Target::F41, Target::F42] {
            entries.extend(build(target));
        }
    }
    entries.into_iter().map(Entry::finish).collect()
}
