//! Recursive-descent parser for the formula DSL.
//!
//! ```text
//! formula  := conj ('|' conj)*
//! conj     := unary ('&' unary)*
//! unary    := '!' unary | '(' formula ')' | 'true' | 'false' | atom
//! atom     := sum relop thr                     single or multi-centre shorthand
//!           | 'affine' '{' sum relop thr '}'
//!           | 'div' '(' factored [';' 'c' '=' expr] '|' factored [';' 'c' '=' expr] ')'
//!           | 'x' ('=' | '!=') expr
//! sum      := ['-'] term (('+' | '-') term)*     term := [int ['*']] 'v' '(' lin ')'
//! lin      := 'x' [('+' | '-') expr]
//! factored := item ('*' item)*                   item := '(' lin ')' ['^' int] | 'x' ['^' int] | expr
//! thr      := tterm (('+' | '-') tterm)*         tterm := ['-' | '+'] (int | 'inf' | 'v' '(' expr ')')
//! expr     := ordinary field arithmetic over integers, 't' and parameter names
//! ```
//!
//! Parsing yields a [`FormulaTemplate`] whose elements are still symbolic, so
//! a formula with parameters is parsed once and instantiated per parameter
//! tuple.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{AffineValuationConstraint, Atom, Divides, Factored, QfError, QfFormula, Relation};
use crate::ext_int::ExtInt;
use crate::field::{FieldContext, FieldElement};

// ---- lexer ----

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(&'static str),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

const SYMBOLS: [&str; 20] = [
    "<=", ">=", "!=", "+", "-", "*", "/", "^", "(", ")", "{", "}", "|", "&", "!", ";", "=", "<", ">",
    ",",
];

fn lex(text: &str) -> Result<Vec<Token>, QfError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push(Token { tok: Tok::Int(n), pos: start });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(text[start..i].into()), pos: start });
        } else if let Some(sym) = SYMBOLS.iter().find(|s| text[i..].starts_with(**s)) {
            out.push(Token { tok: Tok::Sym(sym), pos: i });
            i += sym.len();
        } else {
            let ch = text[i..].chars().next().unwrap();
            return Err(QfError::Syntax { pos: i, msg: format!("unexpected character {ch:?}") });
        }
    }
    out.push(Token { tok: Tok::End, pos: text.len() });
    Ok(out)
}

// ---- symbolic syntax ----

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Int(BigInt),
    T,
    Param(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Thr {
    Lit(ExtInt),
    Val(Expr),
    Neg(Box<Thr>),
    Add(Box<Thr>, Box<Thr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TAtom {
    Affine { terms: Vec<(i64, Expr)>, rel: Relation, thr: Thr },
    Divides { f: (Vec<(Expr, u32)>, Vec<Expr>), g: (Vec<(Expr, u32)>, Vec<Expr>) },
    Equals(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TFormula {
    Const(bool),
    Atom(TAtom),
    Not(Box<TFormula>),
    And(Vec<TFormula>),
    Or(Vec<TFormula>),
}

/// A parsed formula whose field elements may mention named parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaTemplate {
    body: TFormula,
    params: Vec<String>,
}

impl FormulaTemplate {
    /// Parameter names in order of first appearance.
    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// Substitutes one value per parameter.
    pub fn instantiate(&self, ctx: &FieldContext, values: &[FieldElement]) -> Result<QfFormula, QfError> {
        if values.len() != self.params.len() {
            return Err(QfError::ParameterCount { expected: self.params.len(), got: values.len() });
        }
        let env = Env { ctx, values };
        env.formula(&self.body)
    }

    /// Reorders parameters to the given names; every name must occur.
    pub fn with_param_order(mut self, names: &[String]) -> Result<Self, QfError> {
        let mut perm = Vec::with_capacity(self.params.len());
        for p in &self.params {
            match names.iter().position(|n| n == p) {
                Some(i) => perm.push(i),
                None => return Err(QfError::UnknownParameter(p.clone())),
            }
        }
        remap_formula(&mut self.body, &perm);
        self.params = names.to_vec();
        Ok(self)
    }
}

fn remap_expr(e: &mut Expr, perm: &[usize]) {
    match e {
        Expr::Param(i) => *i = perm[*i],
        Expr::Int(_) | Expr::T => {}
        Expr::Neg(a) | Expr::Pow(a, _) => remap_expr(a, perm),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            remap_expr(a, perm);
            remap_expr(b, perm);
        }
    }
}

fn remap_thr(t: &mut Thr, perm: &[usize]) {
    match t {
        Thr::Lit(_) => {}
        Thr::Val(e) => remap_expr(e, perm),
        Thr::Neg(a) => remap_thr(a, perm),
        Thr::Add(a, b) => {
            remap_thr(a, perm);
            remap_thr(b, perm);
        }
    }
}

fn remap_formula(f: &mut TFormula, perm: &[usize]) {
    match f {
        TFormula::Const(_) => {}
        TFormula::Atom(TAtom::Affine { terms, thr, .. }) => {
            terms.iter_mut().for_each(|(_, e)| remap_expr(e, perm));
            remap_thr(thr, perm);
        }
        TFormula::Atom(TAtom::Divides { f, g }) => {
            for side in [f, g] {
                side.0.iter_mut().for_each(|(e, _)| remap_expr(e, perm));
                side.1.iter_mut().for_each(|e| remap_expr(e, perm));
            }
        }
        TFormula::Atom(TAtom::Equals(e)) => remap_expr(e, perm),
        TFormula::Not(a) => remap_formula(a, perm),
        TFormula::And(fs) | TFormula::Or(fs) => fs.iter_mut().for_each(|g| remap_formula(g, perm)),
    }
}

struct Env<'a> {
    ctx: &'a FieldContext,
    values: &'a [FieldElement],
}

impl Env<'_> {
    fn expr(&self, e: &Expr) -> Result<FieldElement, QfError> {
        let ctx = self.ctx;
        Ok(match e {
            Expr::Int(n) => ctx.from_bigint(n),
            Expr::T => ctx.t()?,
            Expr::Param(i) => self.values[*i].clone(),
            Expr::Neg(a) => ctx.neg(&self.expr(a)?),
            Expr::Add(a, b) => ctx.add(&self.expr(a)?, &self.expr(b)?),
            Expr::Sub(a, b) => ctx.sub(&self.expr(a)?, &self.expr(b)?),
            Expr::Mul(a, b) => ctx.mul(&self.expr(a)?, &self.expr(b)?),
            Expr::Div(a, b) => ctx.div(&self.expr(a)?, &self.expr(b)?)?,
            Expr::Pow(a, k) => ctx.pow(&self.expr(a)?, *k)?,
        })
    }

    fn thr(&self, t: &Thr) -> Result<ExtInt, QfError> {
        Ok(match t {
            Thr::Lit(v) => *v,
            Thr::Val(e) => self.ctx.valuation(&self.expr(e)?),
            Thr::Neg(a) => -self.thr(a)?,
            Thr::Add(a, b) => self.thr(a)?.checked_add(self.thr(b)?).ok_or_else(|| QfError::Syntax {
                pos: 0,
                msg: "threshold evaluates to -inf + +inf".into(),
            })?,
        })
    }

    fn factored(&self, side: &(Vec<(Expr, u32)>, Vec<Expr>), unit: Option<&Expr>) -> Result<Factored, QfError> {
        let mut c = match unit {
            Some(u) => self.expr(u)?,
            None => self.ctx.one(),
        };
        for k in &side.1 {
            c = self.ctx.mul(&c, &self.expr(k)?);
        }
        let mut roots: Vec<(FieldElement, u32)> = Vec::new();
        for (r, m) in &side.0 {
            let r = self.expr(r)?;
            match roots.iter_mut().find(|(s, _)| *s == r) {
                Some(slot) => slot.1 += m,
                None => roots.push((r, *m)),
            }
        }
        Ok(Factored { unit: c, roots })
    }

    fn formula(&self, f: &TFormula) -> Result<QfFormula, QfError> {
        Ok(match f {
            TFormula::Const(c) => QfFormula::Const(*c),
            TFormula::Atom(TAtom::Affine { terms, rel, thr }) => {
                let terms = terms
                    .iter()
                    .map(|(n, e)| Ok((*n, self.expr(e)?)))
                    .collect::<Result<Vec<_>, QfError>>()?;
                QfFormula::Atom(Atom::Affine(AffineValuationConstraint::new(terms, *rel, self.thr(thr)?)?))
            }
            TFormula::Atom(TAtom::Divides { f, g }) => QfFormula::Atom(Atom::Divides(Divides {
                f: self.factored(f, None)?,
                g: self.factored(g, None)?,
            })),
            TFormula::Atom(TAtom::Equals(e)) => QfFormula::Atom(Atom::Equals(self.expr(e)?)),
            TFormula::Not(a) => QfFormula::Not(Box::new(self.formula(a)?)),
            TFormula::And(fs) => QfFormula::And(fs.iter().map(|g| self.formula(g)).collect::<Result<_, _>>()?),
            TFormula::Or(fs) => QfFormula::Or(fs.iter().map(|g| self.formula(g)).collect::<Result<_, _>>()?),
        })
    }
}

// ---- parser ----

const RESERVED: [&str; 8] = ["x", "t", "v", "inf", "affine", "div", "true", "false"];

struct Parser {
    toks: Vec<Token>,
    at: usize,
    params: Vec<String>,
}

type PResult<T> = Result<T, QfError>;
/// Root factors with multiplicities, and the unit factors.
type FactoredSide = (Vec<(Expr, u32)>, Vec<Expr>);

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser { toks: lex(text)?, at: 0, params: Vec::new() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> usize {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(QfError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(format!("expected '{s}', found {}", describe(self.peek())))
        }
    }

    fn expect_ident(&mut self, s: &str) -> PResult<()> {
        if self.is_ident(s) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected '{s}', found {}", describe(self.peek())))
        }
    }

    fn expect_end(&mut self) -> PResult<()> {
        match self.peek() {
            Tok::End => Ok(()),
            other => self.error(format!("unexpected {} after the end of the input", describe(other))),
        }
    }

    fn small_int(&mut self) -> PResult<i64> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => i64::try_from(n).map_err(|_| QfError::Syntax { pos, msg: "integer too large".into() }),
            other => Err(QfError::Syntax { pos, msg: format!("expected an integer, found {}", describe(&other)) }),
        }
    }

    // formulas

    fn formula(&mut self) -> PResult<TFormula> {
        let mut parts = alloc::vec![self.conj()?];
        while self.eat_sym("|") {
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { TFormula::Or(parts) })
    }

    fn conj(&mut self) -> PResult<TFormula> {
        let mut parts = alloc::vec![self.unary()?];
        while self.eat_sym("&") {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { TFormula::And(parts) })
    }

    fn unary(&mut self) -> PResult<TFormula> {
        if self.eat_sym("!") {
            return Ok(TFormula::Not(Box::new(self.unary()?)));
        }
        if self.eat_sym("(") {
            let f = self.formula()?;
            self.expect_sym(")")?;
            return Ok(f);
        }
        if self.is_ident("true") || self.is_ident("false") {
            let val = self.is_ident("true");
            self.bump();
            return Ok(TFormula::Const(val));
        }
        if self.is_ident("affine") {
            self.bump();
            self.expect_sym("{")?;
            let atom = self.affine()?;
            self.expect_sym("}")?;
            return Ok(TFormula::Atom(atom));
        }
        if self.is_ident("div") {
            self.bump();
            return self.divides().map(TFormula::Atom);
        }
        if self.is_ident("x") {
            self.bump();
            let negate = if self.eat_sym("=") {
                false
            } else if self.eat_sym("!=") {
                true
            } else {
                return self.error("expected '=' or '!=' after x; valuation atoms are written v(x-a) >= n");
            };
            let atom = TFormula::Atom(TAtom::Equals(self.expr()?));
            return Ok(if negate { TFormula::Not(Box::new(atom)) } else { atom });
        }
        if self.is_ident("v") || self.is_sym("-") || matches!(self.peek(), Tok::Int(_)) {
            return Ok(TFormula::Atom(self.affine()?));
        }
        self.error(format!("expected an atom, found {}", describe(self.peek())))
    }

    fn affine(&mut self) -> PResult<TAtom> {
        let mut terms = Vec::new();
        let mut sign = if self.eat_sym("-") { -1 } else { 1 };
        loop {
            let n = if matches!(self.peek(), Tok::Int(_)) {
                let n = self.small_int()?;
                self.eat_sym("*");
                n
            } else {
                1
            };
            self.expect_ident("v")?;
            self.expect_sym("(")?;
            let center = self.lin()?;
            self.expect_sym(")")?;
            terms.push((sign * n, center));
            if self.eat_sym("+") {
                sign = 1;
            } else if self.eat_sym("-") {
                sign = -1;
            } else {
                break;
            }
        }
        let rel = self.relop()?;
        let thr = self.thr()?;
        Ok(TAtom::Affine { terms, rel, thr })
    }

    fn relop(&mut self) -> PResult<Relation> {
        let rel = match self.peek() {
            Tok::Sym("<") => Relation::Lt,
            Tok::Sym("<=") => Relation::Le,
            Tok::Sym("=") => Relation::Eq,
            Tok::Sym(">=") => Relation::Ge,
            Tok::Sym(">") => Relation::Gt,
            other => return self.error(format!("expected a comparison, found {}", describe(other))),
        };
        self.bump();
        Ok(rel)
    }

    /// `x ± expr`; returns the centre.
    fn lin(&mut self) -> PResult<Expr> {
        self.expect_ident("x")?;
        if self.is_sym("+") || self.is_sym("-") {
            // lin = x + R, centre = −R
            let rest = self.expr()?;
            Ok(neg(rest))
        } else {
            Ok(Expr::Int(BigInt::from(0)))
        }
    }

    fn thr(&mut self) -> PResult<Thr> {
        let mut acc = self.tterm()?;
        loop {
            if self.eat_sym("+") {
                acc = Thr::Add(Box::new(acc), Box::new(self.tterm_unsigned()?));
            } else if self.eat_sym("-") {
                acc = Thr::Add(Box::new(acc), Box::new(Thr::Neg(Box::new(self.tterm_unsigned()?))));
            } else {
                return Ok(acc);
            }
        }
    }

    fn tterm(&mut self) -> PResult<Thr> {
        if self.eat_sym("-") {
            return Ok(Thr::Neg(Box::new(self.tterm_unsigned()?)));
        }
        self.eat_sym("+");
        self.tterm_unsigned()
    }

    fn tterm_unsigned(&mut self) -> PResult<Thr> {
        match self.peek().clone() {
            Tok::Int(_) => Ok(Thr::Lit(ExtInt::Fin(self.small_int()?))),
            Tok::Ident(s) if s == "inf" => {
                self.bump();
                Ok(Thr::Lit(ExtInt::PosInf))
            }
            Tok::Ident(s) if s == "v" => {
                self.bump();
                self.expect_sym("(")?;
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(Thr::Val(e))
            }
            other => self.error(format!("expected a threshold, found {}", describe(&other))),
        }
    }

    fn divides(&mut self) -> PResult<TAtom> {
        self.expect_sym("(")?;
        let f = self.factored_side()?;
        self.expect_sym("|")?;
        let g = self.factored_side()?;
        self.expect_sym(")")?;
        Ok(TAtom::Divides { f, g })
    }

    fn factored_side(&mut self) -> PResult<FactoredSide> {
        let mut roots = Vec::new();
        let mut units = Vec::new();
        loop {
            let start = self.pos();
            if self.is_sym("(") && matches!(self.peek_at(1), Tok::Ident(s) if s == "x") {
                self.bump();
                let r = self.lin()?;
                self.expect_sym(")")?;
                roots.push((r, self.multiplicity()?));
            } else if self.is_ident("x") {
                let r = self.lin()?;
                roots.push((r, self.multiplicity()?));
            } else {
                units.push(self.power()?);
            }
            if self.eat_sym("*") {
                continue;
            }
            if self.is_sym(";") {
                self.bump();
                self.expect_ident("c")?;
                self.expect_sym("=")?;
                units.push(self.expr()?);
            }
            if self.is_sym("|") || self.is_sym(")") {
                return Ok((roots, units));
            }
            return Err(QfError::NotFactored { pos: start });
        }
    }

    fn multiplicity(&mut self) -> PResult<u32> {
        if self.eat_sym("^") {
            let pos = self.pos();
            let k = self.small_int()?;
            return u32::try_from(k).map_err(|_| QfError::Syntax { pos, msg: "multiplicity must be nonnegative".into() });
        }
        Ok(1)
    }

    // field expressions

    fn expr(&mut self) -> PResult<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym("+") {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat_sym("-") {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut acc = self.signed()?;
        loop {
            if self.eat_sym("*") {
                acc = Expr::Mul(Box::new(acc), Box::new(self.signed()?));
            } else if self.is_sym("/") {
                self.bump();
                acc = Expr::Div(Box::new(acc), Box::new(self.signed()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn signed(&mut self) -> PResult<Expr> {
        if self.eat_sym("-") {
            return Ok(neg(self.signed()?));
        }
        if self.eat_sym("+") {
            return self.signed();
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.primary()?;
        if self.eat_sym("^") {
            let negative = self.eat_sym("-");
            let k = self.small_int()?;
            return Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }));
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Sym("(") => {
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            Tok::Ident(s) if s == "t" => Ok(Expr::T),
            Tok::Ident(s) if s == "x" => Err(QfError::Syntax {
                pos,
                msg: "x may only appear as v(x-a), (x-a)^k inside div(...), or x = a".into(),
            }),
            Tok::Ident(s) if RESERVED.contains(&s.as_str()) => {
                Err(QfError::Syntax { pos, msg: format!("'{s}' cannot be used as a value") })
            }
            Tok::Ident(s) => {
                let idx = match self.params.iter().position(|p| *p == s) {
                    Some(i) => i,
                    None => {
                        self.params.push(s);
                        self.params.len() - 1
                    }
                };
                Ok(Expr::Param(idx))
            }
            other => Err(QfError::Syntax { pos, msg: format!("expected a value, found {}", describe(&other)) }),
        }
    }
}

fn neg(e: Expr) -> Expr {
    match e {
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("'{n}'"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Sym(s) => format!("'{s}'"),
        Tok::End => "end of input".to_string(),
    }
}

/// Parses a formula that may mention parameters.
pub fn parse_template(text: &str) -> Result<FormulaTemplate, QfError> {
    let mut p = Parser::new(text)?;
    let body = p.formula()?;
    p.expect_end()?;
    Ok(FormulaTemplate { body, params: p.params })
}

/// Parses a closed formula.
pub fn parse(ctx: &FieldContext, text: &str) -> Result<QfFormula, QfError> {
    let tpl = parse_template(text)?;
    if let Some(name) = tpl.params.first() {
        return Err(QfError::UnknownParameter(name.clone()));
    }
    tpl.instantiate(ctx, &[])
}

/// Parses a field element such as `(1+t^2)/t` or `7/3`.
pub fn parse_element(ctx: &FieldContext, text: &str) -> Result<FieldElement, QfError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.expect_end()?;
    if let Some(name) = p.params.first() {
        return Err(QfError::UnknownParameter(name.clone()));
    }
    Env { ctx, values: &[] }.expr(&e)
}
