//! Integer predicate mini-language for custom index sets.
//!
//! Grammar (no host-language evaluation, byte-offset errors):
//!
//! ```text
//! pred   := or
//! or     := and ( "||" and )*
//! and    := not ( "&&" not )*
//! not    := "!" not | "(" pred ")" | cmp
//! cmp    := sum ( "==" | "!=" | "<=" | ">=" | "<" | ">" ) sum
//! sum    := term ( ("+" | "-") term )*
//! term   := factor ( ("*" | "/" | "%") factor )*
//! factor := "-" factor | integer | "n" | "(" sum ")"
//! ```
//!
//! Arithmetic runs in 128-bit integers; division and modulo by zero
//! evaluate to a non-member (the predicate is total).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum IntExpr {
    Const(i128),
    Var,
    Neg(Box<IntExpr>),
    Add(Box<IntExpr>, Box<IntExpr>),
    Sub(Box<IntExpr>, Box<IntExpr>),
    Mul(Box<IntExpr>, Box<IntExpr>),
    Div(Box<IntExpr>, Box<IntExpr>),
    Rem(Box<IntExpr>, Box<IntExpr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Le,
    Ge,
    Lt,
    Gt,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoolExpr {
    Cmp(CmpOp, IntExpr, IntExpr),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Not(Box<BoolExpr>),
}

impl IntExpr {
    fn eval(&self, n: i128) -> Option<i128> {
        Some(match self {
            IntExpr::Const(c) => *c,
            IntExpr::Var => n,
            IntExpr::Neg(e) => e.eval(n)?.checked_neg()?,
            IntExpr::Add(a, b) => a.eval(n)?.checked_add(b.eval(n)?)?,
            IntExpr::Sub(a, b) => a.eval(n)?.checked_sub(b.eval(n)?)?,
            IntExpr::Mul(a, b) => a.eval(n)?.checked_mul(b.eval(n)?)?,
            IntExpr::Div(a, b) => a.eval(n)?.checked_div(b.eval(n)?)?,
            IntExpr::Rem(a, b) => a.eval(n)?.checked_rem(b.eval(n)?)?,
        })
    }
}

impl BoolExpr {
    /// Total evaluation: arithmetic failure (overflow, zero divisor)
    /// makes the index a non-member.
    pub fn eval(&self, n: u64) -> bool {
        self.eval_opt(n as i128).unwrap_or(false)
    }

    fn eval_opt(&self, n: i128) -> Option<bool> {
        Some(match self {
            BoolExpr::Cmp(op, a, b) => {
                let (x, y) = (a.eval(n)?, b.eval(n)?);
                match op {
                    CmpOp::Eq => x == y,
                    CmpOp::Ne => x != y,
                    CmpOp::Le => x <= y,
                    CmpOp::Ge => x >= y,
                    CmpOp::Lt => x < y,
                    CmpOp::Gt => x > y,
                }
            }
            BoolExpr::And(a, b) => a.eval_opt(n)? && b.eval_opt(n)?,
            BoolExpr::Or(a, b) => a.eval_opt(n)? || b.eval_opt(n)?,
            BoolExpr::Not(a) => !a.eval_opt(n)?,
        })
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn parse_pred(&mut self) -> Result<BoolExpr> {
        let mut lhs = self.parse_and()?;
        while self.eat("||") {
            let rhs = self.parse_and()?;
            lhs = BoolExpr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<BoolExpr> {
        let mut lhs = self.parse_not()?;
        while self.eat("&&") {
            let rhs = self.parse_not()?;
            lhs = BoolExpr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_not(&mut self) -> Result<BoolExpr> {
        self.skip_ws();
        if self.peek() == Some(b'!') && self.src.get(self.pos + 1) != Some(&b'=') {
            self.pos += 1;
            return Ok(BoolExpr::Not(Box::new(self.parse_not()?)));
        }
        // a parenthesis could open either a boolean group or an
        // arithmetic subexpression: try the boolean reading first
        if self.peek() == Some(b'(') {
            let save = self.pos;
            self.pos += 1;
            if let Ok(inner) = self.parse_pred() {
                if self.eat(")") {
                    return Ok(inner);
                }
            }
            self.pos = save;
        }
        self.parse_cmp()
    }

    fn parse_cmp(&mut self) -> Result<BoolExpr> {
        let lhs = self.parse_sum()?;
        self.skip_ws();
        let op = if self.eat("==") {
            CmpOp::Eq
        } else if self.eat("!=") {
            CmpOp::Ne
        } else if self.eat("<=") {
            CmpOp::Le
        } else if self.eat(">=") {
            CmpOp::Ge
        } else if self.eat("<") {
            CmpOp::Lt
        } else if self.eat(">") {
            CmpOp::Gt
        } else {
            return self.err("expected a comparison operator");
        };
        let rhs = self.parse_sum()?;
        Ok(BoolExpr::Cmp(op, lhs, rhs))
    }

    fn parse_sum(&mut self) -> Result<IntExpr> {
        let mut lhs = self.parse_term()?;
        loop {
            if self.eat("+") {
                lhs = IntExpr::Add(Box::new(lhs), Box::new(self.parse_term()?));
            } else if self.peek() == Some(b'-') {
                self.pos += 1;
                lhs = IntExpr::Sub(Box::new(lhs), Box::new(self.parse_term()?));
            } else {
                break;
            }
        }
        Ok(lhs)
    }

    fn parse_term(&mut self) -> Result<IntExpr> {
        let mut lhs = self.parse_factor()?;
        loop {
            if self.eat("*") {
                lhs = IntExpr::Mul(Box::new(lhs), Box::new(self.parse_factor()?));
            } else if self.eat("/") {
                lhs = IntExpr::Div(Box::new(lhs), Box::new(self.parse_factor()?));
            } else if self.eat("%") {
                lhs = IntExpr::Rem(Box::new(lhs), Box::new(self.parse_factor()?));
            } else {
                break;
            }
        }
        Ok(lhs)
    }

    fn parse_factor(&mut self) -> Result<IntExpr> {
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(IntExpr::Neg(Box::new(self.parse_factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_sum()?;
                if !self.eat(")") {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(b'n') => {
                self.pos += 1;
                Ok(IntExpr::Var)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_digit())
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match text.parse::<i128>() {
                    Ok(v) => Ok(IntExpr::Const(v)),
                    Err(_) => {
                        self.pos = start;
                        self.err("integer literal out of range")
                    }
                }
            }
            _ => self.err("expected '-', '(', 'n', or an integer"),
        }
    }
}

/// Parse a boolean predicate over the index variable `n`.
pub fn parse_predicate(text: &str) -> Result<BoolExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.parse_pred()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err("trailing input after predicate");
    }
    Ok(e)
}
