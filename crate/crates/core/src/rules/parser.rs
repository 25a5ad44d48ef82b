//! Recursive descent parser for the rule language.
//!
//! ```text
//! program   := statement* ;
//! statement := (if | switch | equation | action | loop) ";"? ;
//! if        := "IF" expr "THEN" actions ("ELSE" actions)? ;
//! switch    := "SWITCH" "(" expr ")" "{" ("CASE" expr ":" actions ";"?)+
//!              ("DEFAULT" ":" actions ";"?)? "}" ;
//! equation  := IDENT ("(" IDENT ")")? "=" expr ;
//! action    := "SET"? IDENT "=" expr ;     (a statement only with SET)
//! actions   := action ("," action)* ;
//! loop      := "WHILE" expr "DO" statement* "END"
//!            | "FOR" IDENT "=" expr "TO" expr "DO" statement* "END" ;
//! ```
//!
//! Expression precedence, loosest first: OR, AND, NOT, comparisons
//! (`< <= > >= = <>`), `+ -`, `* /`, unary minus, then calls, parentheses,
//! literals and identifiers.

use thiserror::Error;

use super::ast::*;
use super::lexer::{Keyword, Token, TokenKind};

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected {expected}, found {found} at line {line}, column {column}")]
pub struct ParseError {
    pub expected: String,
    /// The offending lexeme, or `end of input`.
    pub found: String,
    pub line: u32,
    pub column: u32,
}

pub fn parse(tokens: &[Token]) -> Result<RuleModule, ParseError> {
    let mut parser = Parser {
        tokens,
        pos: 0,
        depth: 0,
    };
    let mut statements = Vec::new();
    while !parser.at_end() {
        statements.push(parser.statement()?);
    }
    Ok(RuleModule { statements })
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    depth: usize,
}

impl<'t> Parser<'t> {
    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> &'t Token {
        let tok = &self.tokens[self.pos];
        self.pos += 1;
        tok
    }

    fn error(&self, expected: impl Into<String>) -> ParseError {
        let expected = expected.into();
        match self.peek() {
            Some(tok) => ParseError {
                expected,
                found: format!("{:?}", tok.text),
                line: tok.line,
                column: tok.column,
            },
            None => {
                let (line, column) = self
                    .tokens
                    .last()
                    .map(|t| (t.line, t.column + t.text.chars().count() as u32))
                    .unwrap_or((1, 1));
                ParseError {
                    expected,
                    found: "end of input".to_string(),
                    line,
                    column,
                }
            }
        }
    }

    fn check_keyword(&self, kw: Keyword) -> bool {
        self.peek().is_some_and(|t| t.is_keyword(kw))
    }

    fn check_symbol(&self, sym: &str) -> bool {
        self.peek().is_some_and(|t| t.is_symbol(sym))
    }

    fn eat_keyword(&mut self, kw: Keyword) -> bool {
        let hit = self.check_keyword(kw);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn eat_symbol(&mut self, sym: &str) -> bool {
        let hit = self.check_symbol(sym);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn expect_keyword(&mut self, kw: Keyword) -> Result<(), ParseError> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error(format!("keyword {kw}")))
        }
    }

    fn expect_symbol(&mut self, sym: &str) -> Result<(), ParseError> {
        if self.eat_symbol(sym) {
            Ok(())
        } else {
            Err(self.error(format!("{sym:?}")))
        }
    }

    fn expect_identifier(&mut self, what: &str) -> Result<&'t Token, ParseError> {
        match self.peek() {
            Some(tok) if tok.kind == TokenKind::Identifier => Ok(self.bump()),
            _ => Err(self.error(what)),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            Err(self.error(format!("nesting shallower than {MAX_DEPTH} levels")))
        } else {
            Ok(())
        }
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        self.enter()?;
        let stmt = match self.peek().map(|t| t.kind) {
            Some(TokenKind::Keyword(Keyword::If)) => Statement::If(self.if_statement()?),
            Some(TokenKind::Keyword(Keyword::Switch)) => Statement::Switch(self.switch()?),
            Some(TokenKind::Keyword(Keyword::While | Keyword::For)) => {
                Statement::Loop(self.loop_statement()?)
            }
            Some(TokenKind::Keyword(Keyword::Set)) => Statement::Action(self.action()?),
            Some(TokenKind::Identifier) => Statement::Equation(self.equation()?),
            _ => return Err(self.error("a statement")),
        };
        self.eat_symbol(";");
        self.leave();
        Ok(stmt)
    }

    fn if_statement(&mut self) -> Result<IfStatement, ParseError> {
        self.expect_keyword(Keyword::If)?;
        let condition = self.expr()?;
        self.expect_keyword(Keyword::Then)?;
        let then_actions = self.actions()?;
        let else_actions = if self.eat_keyword(Keyword::Else) {
            Some(self.actions()?)
        } else {
            None
        };
        Ok(IfStatement {
            condition,
            then_actions,
            else_actions,
        })
    }

    fn switch(&mut self) -> Result<SwitchStatement, ParseError> {
        self.expect_keyword(Keyword::Switch)?;
        self.expect_symbol("(")?;
        let scrutinee = self.expr()?;
        self.expect_symbol(")")?;
        self.expect_symbol("{")?;

        let mut cases = Vec::new();
        while self.eat_keyword(Keyword::Case) {
            let guard = self.expr()?;
            self.expect_symbol(":")?;
            let actions = self.actions()?;
            self.eat_symbol(";");
            cases.push(Case { guard, actions });
        }
        if cases.is_empty() {
            return Err(self.error("keyword CASE"));
        }

        let default = if self.eat_keyword(Keyword::Default) {
            self.expect_symbol(":")?;
            let actions = self.actions()?;
            self.eat_symbol(";");
            Some(actions)
        } else {
            None
        };

        if !self.eat_symbol("}") {
            let expected = if default.is_some() {
                "\"}\""
            } else {
                "keyword CASE, keyword DEFAULT or \"}\""
            };
            return Err(self.error(expected));
        }
        Ok(SwitchStatement {
            scrutinee,
            cases,
            default,
        })
    }

    fn loop_statement(&mut self) -> Result<LoopStatement, ParseError> {
        let kind = if self.eat_keyword(Keyword::While) {
            let condition = self.expr()?;
            LoopKind::While { condition }
        } else {
            self.expect_keyword(Keyword::For)?;
            let tok = self.expect_identifier("a loop counter")?;
            let counter = ident(tok, Role::Write);
            self.expect_symbol("=")?;
            let from = self.expr()?;
            self.expect_keyword(Keyword::To)?;
            let to = self.expr()?;
            LoopKind::For { counter, from, to }
        };
        self.expect_keyword(Keyword::Do)?;
        let mut body = Vec::new();
        while !self.check_keyword(Keyword::End) {
            if self.at_end() {
                return Err(self.error("keyword END"));
            }
            body.push(self.statement()?);
        }
        self.expect_keyword(Keyword::End)?;
        Ok(LoopStatement { kind, body })
    }

    fn equation(&mut self) -> Result<Equation, ParseError> {
        let tok = self.expect_identifier("an equation target")?;
        let target = ident(tok, Role::Write);
        let parameter = if self.eat_symbol("(") {
            let p = self.expect_identifier("a parameter name")?;
            self.expect_symbol(")")?;
            Some(name(p))
        } else {
            None
        };
        self.expect_symbol("=")?;
        let body = self.expr()?;
        Ok(Equation {
            target,
            parameter,
            body,
        })
    }

    fn actions(&mut self) -> Result<Vec<Action>, ParseError> {
        let mut actions = vec![self.action()?];
        while self.eat_symbol(",") {
            actions.push(self.action()?);
        }
        Ok(actions)
    }

    fn action(&mut self) -> Result<Action, ParseError> {
        self.eat_keyword(Keyword::Set);
        let tok = self.expect_identifier("an action (SET target = value)")?;
        let target = ident(tok, Role::Write);
        self.expect_symbol("=")?;
        let value = self.expr()?;
        Ok(Action { target, value })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let e = self.or_expr();
        self.leave();
        e
    }

    fn or_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and_expr()?;
        while self.eat_keyword(Keyword::Or) {
            let rhs = self.and_expr()?;
            lhs = binary(BinaryOp::Or, lhs, rhs);
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.not_expr()?;
        while self.eat_keyword(Keyword::And) {
            let rhs = self.not_expr()?;
            lhs = binary(BinaryOp::And, lhs, rhs);
        }
        Ok(lhs)
    }

    fn not_expr(&mut self) -> Result<Expr, ParseError> {
        if self.eat_keyword(Keyword::Not) {
            self.enter()?;
            let operand = self.not_expr()?;
            self.leave();
            Ok(Expr::Unary {
                op: UnaryOp::Not,
                operand: Box::new(operand),
            })
        } else {
            self.comparison()
        }
    }

    fn comparison(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.additive()?;
        loop {
            let op = match self.peek() {
                Some(t) if t.kind == TokenKind::Operator => match t.text.as_str() {
                    "<" => BinaryOp::Lt,
                    "<=" => BinaryOp::Le,
                    ">" => BinaryOp::Gt,
                    ">=" => BinaryOp::Ge,
                    "=" => BinaryOp::Eq,
                    "<>" => BinaryOp::Ne,
                    _ => break,
                },
                _ => break,
            };
            self.pos += 1;
            let rhs = self.additive()?;
            lhs = binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn additive(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.multiplicative()?;
        loop {
            let op = if self.eat_symbol("+") {
                BinaryOp::Add
            } else if self.eat_symbol("-") {
                BinaryOp::Sub
            } else {
                break;
            };
            let rhs = self.multiplicative()?;
            lhs = binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn multiplicative(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat_symbol("*") {
                BinaryOp::Mul
            } else if self.eat_symbol("/") {
                BinaryOp::Div
            } else {
                break;
            };
            let rhs = self.unary()?;
            lhs = binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat_symbol("-") {
            self.enter()?;
            let operand = self.unary()?;
            self.leave();
            Ok(Expr::Unary {
                op: UnaryOp::Neg,
                operand: Box::new(operand),
            })
        } else {
            self.primary()
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let Some(tok) = self.peek() else {
            return Err(self.error("an expression"));
        };
        match tok.kind {
            TokenKind::Number => {
                self.pos += 1;
                Ok(Expr::Number(tok.text.clone()))
            }
            TokenKind::BooleanLiteral => {
                self.pos += 1;
                Ok(Expr::Bool(tok.text.eq_ignore_ascii_case("TRUE")))
            }
            TokenKind::Identifier => {
                self.pos += 1;
                if self.check_symbol("(") {
                    self.pos += 1;
                    let mut args = Vec::new();
                    if !self.check_symbol(")") {
                        args.push(self.expr()?);
                        while self.eat_symbol(",") {
                            args.push(self.expr()?);
                        }
                    }
                    self.expect_symbol(")")?;
                    Ok(Expr::Call {
                        callee: name(tok),
                        args,
                    })
                } else {
                    Ok(Expr::Ident(ident(tok, Role::Read)))
                }
            }
            _ if tok.is_symbol("(") => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect_symbol(")")?;
                Ok(inner)
            }
            _ => Err(self.error("an expression")),
        }
    }
}

fn ident(tok: &Token, role: Role) -> Ident {
    Ident {
        name: tok.text.to_ascii_uppercase(),
        role,
        line: tok.line,
        column: tok.column,
    }
}

fn name(tok: &Token) -> Name {
    Name {
        name: tok.text.to_ascii_uppercase(),
        line: tok.line,
        column: tok.column,
    }
}

fn binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Expr {
    Expr::Binary {
        op,
        lhs: Box::new(lhs),
        rhs: Box::new(rhs),
    }
}
