//! Shared generators, oracles and property suites.
//!
//! The property suites live here so that the `properties` test target and
//! the `acceptance` harness run exactly the same checks.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use pms_metrics::assessment::{
    AutonomyAssessment, BandedScore, CoverageEvidence, PmsIdentity, SourceRef,
};
use pms_metrics::metrics::{
    autonomy_total, coverage_ratio, module_complexity, pms_complexity, portability_score,
    scalability_score, AutonomyProfile, ModuleComplexity,
};
use pms_metrics::report::{diff_reports, Metric};
use pms_metrics::rules::{analyze_source, classify_io, cyclomatic, parse_source, BlackBoxSpec};
use pms_metrics::{
    load_assessment, serialize_assessment, AnalyzerConfig, AssessmentDocument, ComplexityInputs,
    ComplexitySource, MetricsReport, ModuleAssessment,
};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

// ---------------------------------------------------------------------------
// Random rule programs

const VARS: [&str; 13] = [
    "A", "B", "C", "X", "Y", "MOTOR", "LEVEL", "P", "K1", "K7", "T", "OFF", "HI",
];
const TARGETS: [&str; 9] = ["A", "B", "C", "X", "Y", "MOTOR", "P", "K1", "OFF"];
const COUNTERS: [&str; 3] = ["I", "J", "X"];
const FUNCTIONS: [&str; 2] = ["F", "G"];
const CALLEES: [&str; 4] = ["F", "G", "SIN", "ABS"];
const PARAMS: [&str; 2] = ["P", "Q"];
const BINARY: [&str; 12] = ["AND", "OR", "<", "<=", ">", ">=", "=", "<>", "+", "-", "*", "/"];

#[derive(Debug, Clone)]
pub enum GExpr {
    Num(u32),
    Var(&'static str),
    Call(&'static str, Box<GExpr>),
    Not(Box<GExpr>),
    Neg(Box<GExpr>),
    Bin(&'static str, Box<GExpr>, Box<GExpr>),
}

#[derive(Debug, Clone)]
pub struct GAction {
    pub set: bool,
    pub target: &'static str,
    pub value: GExpr,
}

#[derive(Debug, Clone)]
pub enum GStmt {
    If {
        cond: GExpr,
        then: Vec<GAction>,
        els: Option<Vec<GAction>>,
    },
    Switch {
        scrutinee: GExpr,
        cases: Vec<(GExpr, Vec<GAction>)>,
        default: Option<Vec<GAction>>,
    },
    Equation {
        target: &'static str,
        param: Option<&'static str>,
        body: GExpr,
    },
    Set(GAction),
    While {
        cond: GExpr,
        body: Vec<GStmt>,
    },
    For {
        counter: &'static str,
        from: GExpr,
        to: GExpr,
        body: Vec<GStmt>,
    },
}

#[derive(Debug, Clone)]
pub struct GProgram {
    pub statements: Vec<GStmt>,
}

fn expr_strategy() -> impl Strategy<Value = GExpr> {
    let leaf = prop_oneof![
        (0u32..100).prop_map(GExpr::Num),
        proptest::sample::select(&VARS[..]).prop_map(GExpr::Var),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (proptest::sample::select(&BINARY[..]), inner.clone(), inner.clone())
                .prop_map(|(op, l, r)| GExpr::Bin(op, Box::new(l), Box::new(r))),
            inner.clone().prop_map(|e| GExpr::Not(Box::new(e))),
            inner.clone().prop_map(|e| GExpr::Neg(Box::new(e))),
            (proptest::sample::select(&CALLEES[..]), inner)
                .prop_map(|(f, e)| GExpr::Call(f, Box::new(e))),
        ]
    })
}

fn action_strategy() -> impl Strategy<Value = GAction> {
    (
        any::<bool>(),
        proptest::sample::select(&TARGETS[..]),
        expr_strategy(),
    )
        .prop_map(|(set, target, value)| GAction { set, target, value })
}

fn actions_strategy() -> impl Strategy<Value = Vec<GAction>> {
    proptest::collection::vec(action_strategy(), 1..3)
}

fn flat_statement_strategy() -> impl Strategy<Value = GStmt> {
    prop_oneof![
        (
            expr_strategy(),
            actions_strategy(),
            proptest::option::of(actions_strategy())
        )
            .prop_map(|(cond, then, els)| GStmt::If { cond, then, els }),
        (
            expr_strategy(),
            proptest::collection::vec((expr_strategy(), actions_strategy()), 1..4),
            proptest::option::of(actions_strategy())
        )
            .prop_map(|(scrutinee, cases, default)| GStmt::Switch {
                scrutinee,
                cases,
                default
            }),
        (proptest::sample::select(&TARGETS[..]), expr_strategy()).prop_map(|(target, body)| {
            GStmt::Equation {
                target,
                param: None,
                body,
            }
        }),
        (
            proptest::sample::select(&FUNCTIONS[..]),
            proptest::sample::select(&PARAMS[..]),
            expr_strategy()
        )
            .prop_map(|(target, param, body)| GStmt::Equation {
                target,
                param: Some(param),
                body
            }),
        action_strategy().prop_map(|a| GStmt::Set(GAction { set: true, ..a })),
    ]
}

fn statement_strategy() -> impl Strategy<Value = GStmt> {
    flat_statement_strategy().prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            (expr_strategy(), proptest::collection::vec(inner.clone(), 0..3))
                .prop_map(|(cond, body)| GStmt::While { cond, body }),
            (
                proptest::sample::select(&COUNTERS[..]),
                expr_strategy(),
                expr_strategy(),
                proptest::collection::vec(inner, 0..3)
            )
                .prop_map(|(counter, from, to, body)| GStmt::For {
                    counter,
                    from,
                    to,
                    body
                }),
        ]
    })
}

/// Programs with at most `max` top-level statements.
pub fn program_strategy(max: usize) -> impl Strategy<Value = GProgram> {
    proptest::collection::vec(statement_strategy(), 0..=max)
        .prop_map(|statements| GProgram { statements })
}

/// Tiny deterministic case scrambler so one program can be printed in many
/// spellings.
struct Casing(u64);

impl Casing {
    fn word(&mut self, w: &str) -> String {
        if self.0 == 0 {
            return w.to_string();
        }
        w.chars()
            .map(|c| {
                self.0 ^= self.0 << 13;
                self.0 ^= self.0 >> 7;
                self.0 ^= self.0 << 17;
                if self.0 & 1 == 1 {
                    c.to_ascii_lowercase()
                } else {
                    c.to_ascii_uppercase()
                }
            })
            .collect()
    }
}

impl GProgram {
    /// Source text. `case_seed == 0` prints everything upper case; any other
    /// seed mixes the case of keywords and identifiers.
    pub fn render(&self, case_seed: u64) -> String {
        let mut casing = Casing(case_seed);
        let mut out = String::new();
        for (i, s) in self.statements.iter().enumerate() {
            render_stmt(s, &mut casing, &mut out);
            out.push_str(if i % 2 == 0 { ";\n" } else { "\n" });
        }
        out
    }

    /// Decision points counted straight from the generated tree.
    pub fn decisions(&self, extended: bool) -> u32 {
        stmt_decisions(&self.statements, extended)
    }

    /// Names the module reads and writes, computed from the generated tree.
    pub fn flow(&self) -> (BTreeSet<String>, BTreeSet<String>, BTreeSet<String>) {
        let mut functions = BTreeSet::new();
        collect_functions(&self.statements, &mut functions);
        let mut reads = BTreeSet::new();
        let mut writes = BTreeSet::new();
        stmt_flow(&self.statements, &functions, &mut reads, &mut writes);
        (reads, writes, functions)
    }
}

fn render_expr(e: &GExpr, c: &mut Casing, out: &mut String) {
    match e {
        GExpr::Num(n) => out.push_str(&n.to_string()),
        GExpr::Var(v) => out.push_str(&c.word(v)),
        GExpr::Call(f, arg) => {
            out.push_str(&c.word(f));
            out.push_str(" (");
            render_expr(arg, c, out);
            out.push(')');
        }
        GExpr::Not(inner) => {
            out.push('(');
            out.push_str(&c.word("NOT"));
            out.push_str(" (");
            render_expr(inner, c, out);
            out.push_str("))");
        }
        GExpr::Neg(inner) => {
            out.push_str("-(");
            render_expr(inner, c, out);
            out.push(')');
        }
        GExpr::Bin(op, l, r) => {
            out.push('(');
            render_expr(l, c, out);
            out.push(' ');
            out.push_str(&c.word(op));
            out.push(' ');
            render_expr(r, c, out);
            out.push(')');
        }
    }
}

fn render_actions(actions: &[GAction], c: &mut Casing, out: &mut String) {
    for (i, a) in actions.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        render_action(a, c, out);
    }
}

fn render_action(a: &GAction, c: &mut Casing, out: &mut String) {
    if a.set {
        out.push_str(&c.word("SET"));
        out.push(' ');
    }
    out.push_str(&c.word(a.target));
    out.push_str(" = ");
    render_expr(&a.value, c, out);
}

fn render_stmt(s: &GStmt, c: &mut Casing, out: &mut String) {
    match s {
        GStmt::If { cond, then, els } => {
            out.push_str(&c.word("IF"));
            out.push(' ');
            render_expr(cond, c, out);
            out.push(' ');
            out.push_str(&c.word("THEN"));
            out.push(' ');
            render_actions(then, c, out);
            if let Some(els) = els {
                out.push(' ');
                out.push_str(&c.word("ELSE"));
                out.push(' ');
                render_actions(els, c, out);
            }
        }
        GStmt::Switch {
            scrutinee,
            cases,
            default,
        } => {
            out.push_str(&c.word("SWITCH"));
            out.push_str(" (");
            render_expr(scrutinee, c, out);
            out.push_str(") {\n");
            for (i, (guard, actions)) in cases.iter().enumerate() {
                out.push_str(&c.word("CASE"));
                out.push(' ');
                render_expr(guard, c, out);
                out.push_str(": ");
                render_actions(actions, c, out);
                out.push_str(if i % 2 == 0 { ";\n" } else { "\n" });
            }
            if let Some(actions) = default {
                out.push_str(&c.word("DEFAULT"));
                out.push_str(": ");
                render_actions(actions, c, out);
                out.push_str(";\n");
            }
            out.push('}');
        }
        GStmt::Equation {
            target,
            param,
            body,
        } => {
            out.push_str(&c.word(target));
            if let Some(p) = param {
                out.push('(');
                out.push_str(&c.word(p));
                out.push(')');
            }
            out.push_str(" = ");
            render_expr(body, c, out);
        }
        GStmt::Set(a) => render_action(a, c, out),
        GStmt::While { cond, body } => {
            out.push_str(&c.word("WHILE"));
            out.push(' ');
            render_expr(cond, c, out);
            out.push(' ');
            out.push_str(&c.word("DO"));
            out.push('\n');
            for s in body {
                render_stmt(s, c, out);
                out.push_str(";\n");
            }
            out.push_str(&c.word("END"));
        }
        GStmt::For {
            counter,
            from,
            to,
            body,
        } => {
            out.push_str(&c.word("FOR"));
            out.push(' ');
            out.push_str(&c.word(counter));
            out.push_str(" = ");
            render_expr(from, c, out);
            out.push(' ');
            out.push_str(&c.word("TO"));
            out.push(' ');
            render_expr(to, c, out);
            out.push(' ');
            out.push_str(&c.word("DO"));
            out.push('\n');
            for s in body {
                render_stmt(s, c, out);
                out.push('\n');
            }
            out.push_str(&c.word("END"));
        }
    }
}

fn bool_ops(e: &GExpr) -> u32 {
    match e {
        GExpr::Num(_) | GExpr::Var(_) => 0,
        GExpr::Call(_, a) | GExpr::Not(a) | GExpr::Neg(a) => bool_ops(a),
        GExpr::Bin(op, l, r) => {
            u32::from(*op == "AND" || *op == "OR") + bool_ops(l) + bool_ops(r)
        }
    }
}

fn stmt_decisions(statements: &[GStmt], extended: bool) -> u32 {
    let extra = |e: &GExpr| if extended { bool_ops(e) } else { 0 };
    let mut n = 0;
    for s in statements {
        n += match s {
            GStmt::If { cond, .. } => 1 + extra(cond),
            GStmt::Switch { cases, .. } => cases.iter().map(|(g, _)| 1 + extra(g)).sum(),
            GStmt::Equation { .. } | GStmt::Set(_) => 0,
            GStmt::While { cond, body } => 1 + extra(cond) + stmt_decisions(body, extended),
            GStmt::For { body, .. } => 1 + stmt_decisions(body, extended),
        };
    }
    n
}

fn collect_functions(statements: &[GStmt], out: &mut BTreeSet<String>) {
    for s in statements {
        match s {
            GStmt::Equation {
                target,
                param: Some(_),
                ..
            } => {
                out.insert(target.to_string());
            }
            GStmt::While { body, .. } | GStmt::For { body, .. } => collect_functions(body, out),
            _ => {}
        }
    }
}

fn expr_reads(e: &GExpr, bound: Option<&str>, functions: &BTreeSet<String>, reads: &mut BTreeSet<String>) {
    match e {
        GExpr::Num(_) => {}
        GExpr::Var(v) => {
            if Some(*v) != bound {
                reads.insert(v.to_string());
            }
        }
        GExpr::Call(f, arg) => {
            if functions.contains(*f) {
                reads.insert(f.to_string());
            }
            expr_reads(arg, bound, functions, reads);
        }
        GExpr::Not(a) | GExpr::Neg(a) => expr_reads(a, bound, functions, reads),
        GExpr::Bin(_, l, r) => {
            expr_reads(l, bound, functions, reads);
            expr_reads(r, bound, functions, reads);
        }
    }
}

fn stmt_flow(
    statements: &[GStmt],
    functions: &BTreeSet<String>,
    reads: &mut BTreeSet<String>,
    writes: &mut BTreeSet<String>,
) {
    let actions = |list: &[GAction], reads: &mut BTreeSet<String>, writes: &mut BTreeSet<String>| {
        for a in list {
            writes.insert(a.target.to_string());
            expr_reads(&a.value, None, functions, reads);
        }
    };
    for s in statements {
        match s {
            GStmt::If { cond, then, els } => {
                expr_reads(cond, None, functions, reads);
                actions(then, reads, writes);
                if let Some(els) = els {
                    actions(els, reads, writes);
                }
            }
            GStmt::Switch {
                scrutinee,
                cases,
                default,
            } => {
                expr_reads(scrutinee, None, functions, reads);
                for (g, list) in cases {
                    expr_reads(g, None, functions, reads);
                    actions(list, reads, writes);
                }
                if let Some(list) = default {
                    actions(list, reads, writes);
                }
            }
            GStmt::Equation {
                target,
                param,
                body,
            } => {
                writes.insert(target.to_string());
                if param.is_some() {
                    reads.insert(target.to_string());
                }
                expr_reads(body, *param, functions, reads);
            }
            GStmt::Set(a) => actions(std::slice::from_ref(a), reads, writes),
            GStmt::While { cond, body } => {
                expr_reads(cond, None, functions, reads);
                stmt_flow(body, functions, reads, writes);
            }
            GStmt::For {
                counter,
                from,
                to,
                body,
            } => {
                reads.insert(counter.to_string());
                writes.insert(counter.to_string());
                expr_reads(from, None, functions, reads);
                expr_reads(to, None, functions, reads);
                stmt_flow(body, functions, reads, writes);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Domain strategies

pub fn factor() -> impl Strategy<Value = f64> {
    prop_oneof![
        proptest::sample::select(vec![0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0]),
        0.0..=3.0f64,
    ]
}

pub fn weight() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), 0.01..100.0f64]
}

pub fn percent() -> impl Strategy<Value = f64> {
    prop_oneof![
        proptest::sample::select(vec![0.0, 25.0, 50.0, 75.0, 100.0]),
        0.0..=100.0f64,
    ]
}

pub fn inputs_strategy() -> impl Strategy<Value = ComplexityInputs> {
    (1.0..=3.0f64, 1u32..50, 0u32..30, 0u32..30)
        .prop_map(|(r, m, i, o)| ComplexityInputs::new(r, m, i, o))
}

fn coverage_strategy() -> impl Strategy<Value = CoverageEvidence> {
    prop_oneof![
        (1u64..1000)
            .prop_flat_map(|total| (0..=total, Just(total)))
            .prop_map(|(auto, total)| CoverageEvidence::counts(auto, total)),
        percent().prop_map(CoverageEvidence::percent),
    ]
}

fn complexity_source_strategy() -> impl Strategy<Value = ComplexitySource> {
    prop_oneof![
        inputs_strategy().prop_map(ComplexitySource::Manual),
        "[a-z]{1,8}\\.rl".prop_map(|path| ComplexitySource::Source(SourceRef { path })),
        (0u32..20, 0u32..20)
            .prop_map(|(inputs, outputs)| ComplexitySource::BlackBox(BlackBoxSpec { inputs, outputs })),
    ]
}

pub fn modules_strategy() -> impl Strategy<Value = Vec<ModuleAssessment>> {
    proptest::collection::vec(
        (weight(), factor(), factor(), complexity_source_strategy()),
        1..8,
    )
    .prop_map(|rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, (weight, portability, scalability, complexity))| ModuleAssessment {
                name: format!("module-{i}"),
                weight,
                portability,
                scalability,
                complexity,
            })
            .collect()
    })
}

fn config_strategy() -> impl Strategy<Value = AnalyzerConfig> {
    (
        proptest::sample::subsequence(vec!["K#", "C#", "GAIN", "PI"], 0..=4),
        proptest::sample::subsequence(vec!["T", "NOW"], 0..=2),
        any::<bool>(),
    )
        .prop_map(|(patterns, builtins, extended)| AnalyzerConfig {
            constant_patterns: patterns.into_iter().map(|p| p.parse().unwrap()).collect(),
            builtins: builtins.into_iter().map(String::from).collect(),
            extended_decision_counting: extended,
            ..AnalyzerConfig::default()
        })
}

pub fn document_strategy() -> impl Strategy<Value = AssessmentDocument> {
    (
        "[a-z][a-z-]{0,10}",
        "[0-9]\\.[0-9]",
        modules_strategy(),
        coverage_strategy(),
        coverage_strategy(),
        percent(),
        "[A-Za-z ]{0,20}",
        percent(),
        config_strategy(),
    )
        .prop_map(
            |(name, version, modules, oi, sp, strategy, why, coordination, analyzer_config)| {
                AssessmentDocument {
                    pms: PmsIdentity::new(name, version),
                    modules,
                    autonomy: AutonomyAssessment {
                        operator_independence: oi,
                        self_preservation: sp,
                        strategy: BandedScore::new(strategy, why),
                        coordination: BandedScore::new(coordination, ""),
                    },
                    analyzer_config,
                }
            },
        )
}

pub fn profile_strategy() -> impl Strategy<Value = AutonomyProfile> {
    (percent(), percent(), percent(), percent())
        .prop_map(|(i, p, s, c)| AutonomyProfile::from_percents(i, p, s, c).unwrap())
}

pub fn report_strategy() -> impl Strategy<Value = MetricsReport> {
    (
        "[a-z]{1,6}",
        "[0-9]",
        factor(),
        factor(),
        proptest::collection::vec(inputs_strategy(), 1..4),
        profile_strategy(),
    )
        .prop_map(|(name, version, p, s, inputs, autonomy)| {
            let module_complexities: Vec<ModuleComplexity> = inputs
                .into_iter()
                .enumerate()
                .map(|(i, x)| module_complexity(&format!("m{i}"), x))
                .collect();
            let weighted: Vec<_> = module_complexities.iter().map(|m| (1.0, m.clone())).collect();
            MetricsReport {
                pms: PmsIdentity::new(name, version),
                portability: p,
                scalability: s,
                modifiability_length: p + s,
                modifiability_offset: (s - p) / 2.0,
                complexity: pms_complexity(&weighted).unwrap(),
                module_complexities,
                autonomy,
            }
        })
}

// ---------------------------------------------------------------------------
// Property suites

pub const CYCLOMATIC_CASES: u32 = 600;

pub type SuiteResult = Result<(), String>;

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> SuiteResult {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn suite_bounds(cases: u32) -> SuiteResult {
    run(
        cases,
        (modules_strategy(), profile_strategy(), inputs_strategy(), coverage_strategy()),
        |(modules, profile, inputs, coverage)| {
            let p = portability_score(&modules).unwrap();
            let s = scalability_score(&modules).unwrap();
            prop_assert!((0.0..=3.0).contains(&p), "P = {p}");
            prop_assert!((0.0..=3.0).contains(&s), "S = {s}");
            prop_assert!((0.0..=4.0).contains(&profile.total), "total = {}", profile.total);
            prop_assert!(module_complexity("m", inputs).c >= 0.0);
            let ratio = coverage_ratio(&coverage).unwrap();
            prop_assert!((0.0..=100.0).contains(&ratio));
            Ok(())
        },
    )
}

pub fn suite_monotonicity(cases: u32) -> SuiteResult {
    let modules_and_bump = modules_strategy().prop_flat_map(|m| {
        let n = m.len();
        (Just(m), 0..n, 0.0..=3.0f64)
    });
    run(
        cases,
        (
            modules_and_bump,
            inputs_strategy(),
            0usize..4,
            1u32..5,
            (percent(), percent(), percent(), percent()),
            0usize..4,
            0.0..=100.0f64,
        ),
        |((modules, idx, raise), inputs, which, step, (i, p, s, c), axis, bump)| {
            let p0 = portability_score(&modules).unwrap();
            let s0 = scalability_score(&modules).unwrap();
            let mut up = modules.clone();
            up[idx].portability = (up[idx].portability + raise).min(3.0);
            up[idx].scalability = (up[idx].scalability + raise).min(3.0);
            prop_assert!(portability_score(&up).unwrap() >= p0);
            prop_assert!(scalability_score(&up).unwrap() >= s0);

            let c0 = module_complexity("m", inputs).c;
            let mut more = inputs;
            match which {
                0 => more.readability = (more.readability + f64::from(step) / 4.0).min(3.0),
                1 => more.mccabe += step,
                2 => more.fan_in += step,
                _ => more.fan_out += step,
            }
            prop_assert!(module_complexity("m", more).c >= c0);

            let base = [i, p, s, c];
            let mut raised = base;
            raised[axis] = (raised[axis] + bump).min(100.0);
            let t0 = autonomy_total(base[0], base[1], base[2], base[3]).unwrap();
            let t1 = autonomy_total(raised[0], raised[1], raised[2], raised[3]).unwrap();
            prop_assert!(t1 >= t0, "{base:?} -> {raised:?}");

            let total = 1 + u64::from(step) * 10;
            let lo = coverage_ratio(&CoverageEvidence::counts(u64::from(step), total)).unwrap();
            let hi = coverage_ratio(&CoverageEvidence::counts(u64::from(step) + 1, total)).unwrap();
            prop_assert!(hi >= lo);
            Ok(())
        },
    )
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

pub fn suite_weight_scaling(cases: u32) -> SuiteResult {
    run(
        cases,
        (
            modules_strategy(),
            proptest::collection::vec((weight(), inputs_strategy()), 1..6),
            prop_oneof![Just(2.0), Just(0.5), 1e-3..1e3f64],
        ),
        |(modules, weighted, k)| {
            let scaled: Vec<_> = modules
                .iter()
                .map(|m| ModuleAssessment {
                    weight: m.weight * k,
                    ..m.clone()
                })
                .collect();
            let (p0, p1) = (portability_score(&modules).unwrap(), portability_score(&scaled).unwrap());
            let (s0, s1) = (scalability_score(&modules).unwrap(), scalability_score(&scaled).unwrap());
            prop_assert!(close(p0, p1), "P {p0} vs {p1} (k = {k})");
            prop_assert!(close(s0, s1), "S {s0} vs {s1} (k = {k})");

            let cs: Vec<_> = weighted
                .iter()
                .map(|(w, x)| (*w, module_complexity("m", *x)))
                .collect();
            let cs_scaled: Vec<_> = cs.iter().map(|(w, m)| (w * k, m.clone())).collect();
            let (c0, c1) = (pms_complexity(&cs).unwrap(), pms_complexity(&cs_scaled).unwrap());
            prop_assert!(close(c0, c1), "C {c0} vs {c1} (k = {k})");
            Ok(())
        },
    )
}

pub fn suite_mediancy(cases: u32) -> SuiteResult {
    run(
        cases,
        (
            modules_strategy(),
            proptest::collection::vec((weight(), inputs_strategy()), 1..6),
        ),
        |(modules, weighted)| {
            let bounds = |vals: Vec<f64>| {
                (
                    vals.iter().copied().fold(f64::INFINITY, f64::min),
                    vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                )
            };
            let (lo, hi) = bounds(modules.iter().map(|m| m.portability).collect());
            let p = portability_score(&modules).unwrap();
            prop_assert!(lo <= p && p <= hi, "P = {p} outside [{lo}, {hi}]");
            let (lo, hi) = bounds(modules.iter().map(|m| m.scalability).collect());
            let s = scalability_score(&modules).unwrap();
            prop_assert!(lo <= s && s <= hi, "S = {s} outside [{lo}, {hi}]");

            let cs: Vec<_> = weighted
                .iter()
                .map(|(w, x)| (*w, module_complexity("m", *x)))
                .collect();
            let (lo, hi) = bounds(cs.iter().map(|(_, m)| m.c).collect());
            let c = pms_complexity(&cs).unwrap();
            prop_assert!(lo <= c && c <= hi, "C = {c} outside [{lo}, {hi}]");
            Ok(())
        },
    )
}

pub fn suite_classify_io(cases: u32) -> SuiteResult {
    let cfg = AnalyzerConfig::default();
    run(cases, program_strategy(10), |program| {
        let src = program.render(0);
        let ast = parse_source(&src).map_err(|e| TestCaseError::fail(format!("{e}\n{src}")))?;
        let io = classify_io(&ast, &cfg);

        let sets = [&io.inputs, &io.outputs, &io.internals, &io.excluded];
        for (a, x) in sets.iter().enumerate() {
            for y in &sets[a + 1..] {
                prop_assert!(x.is_disjoint(y), "overlap in {io:?}");
            }
        }

        let (reads, writes, functions) = program.flow();
        let names: BTreeSet<String> = reads.union(&writes).cloned().collect();
        let mut expected = pms_metrics::rules::IoClassification::default();
        for name in names {
            let excluded = name == "T" || name.starts_with('K');
            let literal = name == "OFF" || name == "HI";
            if excluded {
                expected.excluded.insert(name);
            } else if literal && !writes.contains(&name) {
            } else if functions.contains(&name) || (reads.contains(&name) && writes.contains(&name)) {
                expected.internals.insert(name);
            } else if reads.contains(&name) {
                expected.inputs.insert(name);
            } else {
                expected.outputs.insert(name);
            }
        }
        prop_assert_eq!(io, expected, "{}", src);
        Ok(())
    })
}

pub fn suite_cyclomatic(cases: u32) -> SuiteResult {
    let basic = AnalyzerConfig::default();
    let extended = AnalyzerConfig {
        extended_decision_counting: true,
        ..AnalyzerConfig::default()
    };
    run(cases, (program_strategy(10), any::<u64>()), |(program, seed)| {
        let src = program.render(seed);
        let ast = parse_source(&src).map_err(|e| TestCaseError::fail(format!("{e}\n{src}")))?;
        prop_assert_eq!(cyclomatic(&ast, &basic), 1 + program.decisions(false), "{}", src);
        prop_assert_eq!(cyclomatic(&ast, &extended), 1 + program.decisions(true), "{}", src);
        Ok(())
    })
}

pub fn suite_case_insensitivity(cases: u32) -> SuiteResult {
    let cfg = AnalyzerConfig::default();
    run(cases, (program_strategy(6), 1u64..u64::MAX), |(program, seed)| {
        let upper = analyze_source(&program.render(0), &cfg).unwrap();
        let mixed = analyze_source(&program.render(seed), &cfg).unwrap();
        prop_assert_eq!(upper, mixed);
        Ok(())
    })
}

pub fn suite_monotone_exclusion(cases: u32) -> SuiteResult {
    run(cases, program_strategy(6), |program| {
        let src = program.render(0);
        let narrow = AnalyzerConfig {
            constant_patterns: Vec::new(),
            builtins: BTreeSet::new(),
            ..AnalyzerConfig::default()
        };
        let wide = AnalyzerConfig::default();
        let a = analyze_source(&src, &narrow).unwrap().inputs;
        let b = analyze_source(&src, &wide).unwrap().inputs;
        prop_assert!(b.fan_in <= a.fan_in && b.fan_out <= a.fan_out, "{}", src);
        Ok(())
    })
}

pub fn suite_diff(cases: u32) -> SuiteResult {
    run(cases, (report_strategy(), report_strategy()), |(a, b)| {
        let ab = diff_reports(&a, &b).deltas;
        let ba = diff_reports(&b, &a).deltas;
        let aa = diff_reports(&a, &a);
        for m in Metric::ALL {
            prop_assert_eq!(ab.get(m), -ba.get(m), "{}", m);
            prop_assert_eq!(aa.deltas.get(m), 0.0, "{}", m);
        }
        prop_assert!(aa.changed_modules.is_empty());
        Ok(())
    })
}

pub fn suite_round_trip(cases: u32) -> SuiteResult {
    run(cases, document_strategy(), |doc| {
        let bytes = serialize_assessment(&doc);
        let back = load_assessment(&bytes).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serialize_assessment(&back), bytes);
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Fixture reports and SVG inspection

pub fn evaluate_fixture(name: &str) -> MetricsReport {
    let path = fixture(name);
    let doc = load_assessment(&std::fs::read(&path).unwrap()).unwrap();
    pms_metrics::evaluate_pms(&doc, path.parent().unwrap()).unwrap()
}

pub const FIXTURE_DOCUMENTS: [&str; 6] = [
    "hydro.json",
    "candidates/plant-v1.json",
    "candidates/plant-v2.json",
    "candidates/first.json",
    "candidates/second.json",
    "candidates/third.json",
];

pub const SVG_NS: &str = "http://www.w3.org/2000/svg";

/// Parses `svg` and checks the root element; returns a message on failure.
pub fn check_svg(svg: &str) -> Result<(), String> {
    let doc = roxmltree::Document::parse(svg).map_err(|e| e.to_string())?;
    let root = doc.root_element();
    if root.tag_name().name() != "svg" || root.tag_name().namespace() != Some(SVG_NS) {
        return Err(format!("root element is {:?}", root.tag_name()));
    }
    Ok(())
}

pub fn parse_points(points: &str) -> Vec<(f64, f64)> {
    points
        .split_whitespace()
        .map(|pair| {
            let (x, y) = pair.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

/// Point lists of every `<polygon>` with the given class, in document order.
pub fn polygons(svg: &str, class: &str) -> Vec<Vec<(f64, f64)>> {
    let doc = roxmltree::Document::parse(svg).unwrap();
    doc.descendants()
        .filter(|n| n.has_tag_name("polygon") && n.attribute("class") == Some(class))
        .map(|n| parse_points(n.attribute("points").unwrap()))
        .collect()
}

/// Lengths of the `axis` lines, in document order.
pub fn axis_lengths(svg: &str) -> Vec<f64> {
    let doc = roxmltree::Document::parse(svg).unwrap();
    doc.descendants()
        .filter(|n| n.has_tag_name("line") && n.attribute("class") == Some("axis"))
        .map(|n| {
            let f = |a| n.attribute(a).unwrap().parse::<f64>().unwrap();
            (f("x2") - f("x1")).hypot(f("y2") - f("y1"))
        })
        .collect()
}

pub fn shoelace(points: &[(f64, f64)]) -> f64 {
    let n = points.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (x0, y0) = points[i];
            let (x1, y1) = points[(i + 1) % n];
            x0 * y1 - x1 * y0
        })
        .sum();
    twice.abs() / 2.0
}

/// Area of the autonomy polygon in axis units, where a full-length axis is 1.
pub fn autonomy_area(svg: &str) -> f64 {
    let radius = axis_lengths(svg)[0];
    let poly = &polygons(svg, "autonomy")[0];
    let unit: Vec<_> = poly.iter().map(|(x, y)| (x / radius, y / radius)).collect();
    shoelace(&unit)
}

/// Every figure kind rendered from the fixture set, labelled for messages.
pub fn fixture_figures() -> Vec<(String, String)> {
    use pms_metrics::render::*;
    let spec = RenderSpec::default();
    let reports: Vec<_> = FIXTURE_DOCUMENTS.iter().map(|d| evaluate_fixture(d)).collect();
    let mut out = Vec::new();
    for (name, r) in FIXTURE_DOCUMENTS.iter().zip(&reports) {
        out.push((format!("{name} modifiability"), render_modifiability(r, &spec).unwrap()));
        out.push((format!("{name} surface"), render_surface(r, &spec).unwrap()));
        out.push((format!("{name} autonomy"), render_autonomy(&r.autonomy, &spec).unwrap()));
    }
    let autonomy: Vec<_> = reports
        .iter()
        .map(|r| Panel::autonomy(r.pms.label(), r.autonomy.clone()))
        .collect();
    let surfaces: Vec<_> = reports
        .iter()
        .map(|r| Panel::report(r.pms.label(), r.clone()))
        .collect();
    out.push(("autonomy panels".into(), render_panels(&autonomy, &spec).unwrap()));
    out.push(("surface panels".into(), render_panels(&surfaces, &spec).unwrap()));
    out
}

// ---------------------------------------------------------------------------
// CLI

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn pms(args: &[&str]) -> Outcome {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_pms-metrics"))
        .args(args)
        .output()
        .unwrap();
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn path_arg(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

/// Names of everything directly inside `dir`.
pub fn listing(dir: &std::path::Path) -> BTreeSet<String> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect()
}

/// The CLI contract: one entry per golden invocation plus the failed-write
/// check, each with a pass flag and a short note.
pub fn cli_contract() -> Vec<(String, bool, String)> {
    let mut checks = Vec::new();
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();

    let report = dir.join("report.json");
    let r = pms(&["evaluate", &path_arg("hydro.json"), "--out", report.to_str().unwrap()]);
    let ok = r.code == 0
        && r.stderr.is_empty()
        && std::fs::read(&report)
            .ok()
            .and_then(|b| serde_json::from_slice::<MetricsReport>(&b).ok())
            .is_some_and(|m| {
                m.portability == 2.25 && m.scalability == 1.625 && m.autonomy.total == 3.0
            });
    checks.push(("evaluate hydro.json -> 0".into(), ok, format!("exit {}", r.code)));

    let r = pms(&["analyze", &path_arg("example.rl")]);
    let ok = r.code == 0
        && r.stderr.is_empty()
        && ["1.25", "6", "complexity"].iter().all(|s| r.stdout.contains(s))
        && r.stdout.lines().any(|l| l.contains("complexity") && l.contains("30"));
    checks.push(("analyze example.rl -> 0".into(), ok, format!("exit {}", r.code)));

    let r = pms(&["validate", &path_arg("broken.json")]);
    let ok = r.code == 1 && r.stderr.contains("3.5");
    checks.push(("validate broken.json -> 1".into(), ok, format!("exit {}", r.code)));

    let svg = dir.join("a.svg");
    let r = pms(&["render", report.to_str().unwrap(), "--figure", "autonomy", "--out", svg.to_str().unwrap()]);
    let ok = r.code == 0
        && std::fs::read_to_string(&svg).is_ok_and(|s| check_svg(&s).is_ok());
    checks.push(("render --figure autonomy -> 0".into(), ok, format!("exit {}", r.code)));

    let r = pms(&["analyze", &path_arg("broken.rl")]);
    checks.push(("analyze broken.rl -> 2".into(), r.code == 2, format!("exit {}", r.code)));

    let r = pms(&["frobnicate"]);
    checks.push(("unknown subcommand -> 4".into(), r.code == 4, format!("exit {}", r.code)));

    // The target is an existing directory, so the final rename must fail.
    let blocker = dir.join("blocked.json");
    std::fs::create_dir(&blocker).unwrap();
    std::fs::write(blocker.join("keep"), b"x").unwrap();
    let before = listing(dir);
    let r = pms(&["evaluate", &path_arg("hydro.json"), "--out", blocker.to_str().unwrap()]);
    let ok = r.code == 3 && listing(dir) == before && listing(&blocker).len() == 1;
    checks.push(("failed write leaves no files".into(), ok, format!("exit {}", r.code)));

    checks
}

pub fn suite_radar_area(cases: u32) -> SuiteResult {
    let spec = pms_metrics::render::RenderSpec::default();
    run(cases, profile_strategy(), |p| {
        let svg = pms_metrics::render::render_autonomy(&p, &spec).unwrap();
        let area = autonomy_area(&svg);
        prop_assert!((area - p.total / 2.0).abs() < 1e-9, "area {} vs total {}", area, p.total);
        Ok(())
    })
}
