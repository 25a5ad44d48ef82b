use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ast::*;
use super::config::AnalyzerConfig;

/// Data-flow roles of every variable in a module.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IoClassification {
    /// Read but never assigned: field inputs.
    pub inputs: BTreeSet<String>,
    /// Assigned but never read: field outputs.
    pub outputs: BTreeSet<String>,
    /// Both read and assigned, plus defined equation functions.
    pub internals: BTreeSet<String>,
    /// Constants and builtins.
    pub excluded: BTreeSet<String>,
}

/// McCabe number: decision points plus one.
///
/// Each IF, each CASE guard and each loop is a decision point. DEFAULT arms
/// are not. With `extended_decision_counting`, every AND / OR inside an IF
/// condition, CASE guard or WHILE condition adds one more.
pub fn cyclomatic(ast: &RuleModule, config: &AnalyzerConfig) -> u32 {
    1 + decisions(&ast.statements, config.extended_decision_counting)
}

fn decisions(statements: &[Statement], extended: bool) -> u32 {
    let conditions = |e: &Expr| if extended { boolean_operators(e) } else { 0 };
    statements
        .iter()
        .map(|stmt| match stmt {
            Statement::If(s) => 1 + conditions(&s.condition),
            Statement::Switch(s) => s.cases.iter().map(|c| 1 + conditions(&c.guard)).sum(),
            Statement::Loop(l) => {
                let own = match &l.kind {
                    LoopKind::While { condition } => 1 + conditions(condition),
                    LoopKind::For { .. } => 1,
                };
                own + decisions(&l.body, extended)
            }
            Statement::Equation(_) | Statement::Action(_) => 0,
        })
        .sum()
}

fn boolean_operators(expr: &Expr) -> u32 {
    let mut n = 0;
    expr.walk(&mut |e| {
        if let Expr::Binary {
            op: BinaryOp::And | BinaryOp::Or,
            ..
        } = e
        {
            n += 1;
        }
    });
    n
}

/// Readability level of one top-level statement.
pub fn statement_level(stmt: &Statement) -> u8 {
    match stmt {
        Statement::If(_) | Statement::Switch(_) | Statement::Action(_) => 1,
        Statement::Equation(_) => 2,
        Statement::Loop(_) => 3,
    }
}

/// Mean readability level over top-level statements; 1 for an empty module.
pub fn readability(ast: &RuleModule) -> f64 {
    if ast.statements.is_empty() {
        return 1.0;
    }
    let total: u32 = ast
        .statements
        .iter()
        .map(|s| u32::from(statement_level(s)))
        .sum();
    f64::from(total) / ast.statements.len() as f64
}

/// Partitions the module's variables into inputs, outputs, internals and
/// excluded names.
///
/// Equations with a parameter, such as `F(A) = ...`, define a function:
/// the function name is internal, the parameter is bound inside the body
/// and a call `F(B)` reads `B` plus the body's free variables. Callees that
/// are not defined in the module (`SIN`) are library functions and carry no
/// data. A FOR counter is internal. State literals that are never assigned
/// are values, not variables, and appear in no set.
pub fn classify_io(ast: &RuleModule, config: &AnalyzerConfig) -> IoClassification {
    let functions: BTreeSet<String> = ast
        .statements
        .iter()
        .flat_map(collect_functions)
        .collect();

    let mut flow = Flow {
        functions: &functions,
        reads: BTreeSet::new(),
        writes: BTreeSet::new(),
    };
    flow.statements(&ast.statements);

    let mut io = IoClassification::default();
    for name in flow.reads.union(&flow.writes) {
        let read = flow.reads.contains(name);
        let written = flow.writes.contains(name);
        if config.is_excluded(name) {
            io.excluded.insert(name.clone());
        } else if !written && config.is_state_literal(name) {
            continue;
        } else if read && written {
            io.internals.insert(name.clone());
        } else if read {
            io.inputs.insert(name.clone());
        } else {
            io.outputs.insert(name.clone());
        }
    }
    io
}

fn collect_functions(stmt: &Statement) -> Vec<String> {
    match stmt {
        Statement::Equation(Equation {
            target,
            parameter: Some(_),
            ..
        }) => vec![target.name.clone()],
        Statement::Loop(l) => l.body.iter().flat_map(collect_functions).collect(),
        _ => Vec::new(),
    }
}

struct Flow<'a> {
    functions: &'a BTreeSet<String>,
    reads: BTreeSet<String>,
    writes: BTreeSet<String>,
}

impl Flow<'_> {
    fn statements(&mut self, statements: &[Statement]) {
        for stmt in statements {
            self.statement(stmt);
        }
    }

    fn statement(&mut self, stmt: &Statement) {
        match stmt {
            Statement::If(s) => {
                self.expr(&s.condition, None);
                self.actions(&s.then_actions);
                if let Some(actions) = &s.else_actions {
                    self.actions(actions);
                }
            }
            Statement::Switch(s) => {
                self.expr(&s.scrutinee, None);
                for case in &s.cases {
                    self.expr(&case.guard, None);
                    self.actions(&case.actions);
                }
                if let Some(actions) = &s.default {
                    self.actions(actions);
                }
            }
            Statement::Equation(eq) => {
                self.writes.insert(eq.target.name.clone());
                match &eq.parameter {
                    Some(param) => {
                        self.reads.insert(eq.target.name.clone());
                        self.expr(&eq.body, Some(&param.name));
                    }
                    None => self.expr(&eq.body, None),
                }
            }
            Statement::Loop(l) => {
                match &l.kind {
                    LoopKind::While { condition } => self.expr(condition, None),
                    LoopKind::For { counter, from, to } => {
                        self.reads.insert(counter.name.clone());
                        self.writes.insert(counter.name.clone());
                        self.expr(from, None);
                        self.expr(to, None);
                    }
                }
                self.statements(&l.body);
            }
            Statement::Action(a) => self.action(a),
        }
    }

    fn actions(&mut self, actions: &[Action]) {
        for a in actions {
            self.action(a);
        }
    }

    fn action(&mut self, a: &Action) {
        self.writes.insert(a.target.name.clone());
        self.expr(&a.value, None);
    }

    /// Records reads in `expr`. `bound` is an equation parameter that is not
    /// a module variable inside its own body.
    fn expr(&mut self, expr: &Expr, bound: Option<&str>) {
        expr.walk(&mut |e| match e {
            Expr::Ident(id) if Some(id.name.as_str()) != bound => {
                self.reads.insert(id.name.clone());
            }
            Expr::Call { callee, .. } if self.functions.contains(&callee.name) => {
                self.reads.insert(callee.name.clone());
            }
            _ => {}
        });
    }
}
