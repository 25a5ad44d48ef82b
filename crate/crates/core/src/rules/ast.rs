//! Syntax tree for the rule language.

/// Whether an identifier occurrence reads or assigns the variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Read,
    Write,
}

/// A variable occurrence. `name` is canonicalized to upper case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub role: Role,
    pub line: u32,
    pub column: u32,
}

/// A name that is not a variable occurrence: a function callee or an
/// equation's formal parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Name {
    pub name: String,
    pub line: u32,
    pub column: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Not,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Or,
    And,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Decimal literal, kept as written.
    Number(String),
    Bool(bool),
    Ident(Ident),
    Call {
        callee: Name,
        args: Vec<Expr>,
    },
    Unary {
        op: UnaryOp,
        operand: Box<Expr>,
    },
    Binary {
        op: BinaryOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
}

impl Expr {
    /// Visits this expression and every sub-expression, parents first.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Number(_) | Expr::Bool(_) | Expr::Ident(_) => {}
            Expr::Call { args, .. } => args.iter().for_each(|a| a.walk(f)),
            Expr::Unary { operand, .. } => operand.walk(f),
            Expr::Binary { lhs, rhs, .. } => {
                lhs.walk(f);
                rhs.walk(f);
            }
        }
    }
}

/// `SET target = value` (the `SET` is optional inside THEN/ELSE/CASE arms).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    pub target: Ident,
    pub value: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IfStatement {
    pub condition: Expr,
    pub then_actions: Vec<Action>,
    pub else_actions: Option<Vec<Action>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case {
    pub guard: Expr,
    pub actions: Vec<Action>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchStatement {
    pub scrutinee: Expr,
    /// Never empty.
    pub cases: Vec<Case>,
    pub default: Option<Vec<Action>>,
}

/// `target = body` or `target(parameter) = body` written without `SET`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub target: Ident,
    pub parameter: Option<Name>,
    pub body: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopKind {
    While {
        condition: Expr,
    },
    For {
        counter: Ident,
        from: Expr,
        to: Expr,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopStatement {
    pub kind: LoopKind,
    pub body: Vec<Statement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    If(IfStatement),
    Switch(SwitchStatement),
    Equation(Equation),
    Loop(LoopStatement),
    Action(Action),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleModule {
    pub statements: Vec<Statement>,
}

impl RuleModule {
    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }
}
