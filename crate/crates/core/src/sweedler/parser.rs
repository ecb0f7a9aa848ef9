use std::collections::{BTreeMap, BTreeSet};

use crate::sweedler::ast::{Atom, Coaction, Equation, Expr, Factor, Func, Lit, PhiComp, Term};
use crate::sweedler::DslError;

/// What a declared variable ranges over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Algebra,
    Module(String),
}

/// Free variables and the coactions available on each module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decls {
    pub vars: BTreeMap<String, Sort>,
    pub coactions: BTreeSet<(Coaction, String)>,
}

const RESERVED: &[&str] = &[
    "alpha", "beta", "S", "S2", "Sinv", "eps", "rho0", "rho1", "lam0", "lam1", "X", "Y", "Z", "P",
    "Q", "R", "var", "coaction", "algebra", "module",
];

impl Decls {
    pub fn new() -> Decls {
        Decls::default()
    }

    pub fn var(mut self, name: &str, sort: Sort) -> Result<Decls, DslError> {
        if RESERVED.contains(&name) || !is_ident(name) {
            return Err(DslError::Type(format!(
                "`{name}` cannot be used as a variable name"
            )));
        }
        self.vars.insert(name.to_string(), sort);
        Ok(self)
    }

    pub fn algebra_var(self, name: &str) -> Decls {
        self.var(name, Sort::Algebra).expect("valid name")
    }

    pub fn module_var(self, name: &str, module: &str) -> Decls {
        self.var(name, Sort::Module(module.to_string()))
            .expect("valid name")
    }

    pub fn coaction(mut self, kind: Coaction, module: &str) -> Decls {
        self.coactions.insert((kind, module.to_string()));
        self
    }

    /// Parses header lines `var h : algebra`, `var m : module M`,
    /// `coaction rho on M` and `coaction lam on M`.
    pub fn parse_line(&mut self, line: usize, text: &str) -> Result<(), DslError> {
        let err = |msg: &str| DslError::Syntax {
            line,
            col: 1,
            msg: msg.to_string(),
        };
        let words: Vec<&str> = text.split_whitespace().collect();
        match words.as_slice() {
            ["var", name, ":", "algebra"] => {
                *self = std::mem::take(self).var(name, Sort::Algebra)?;
            }
            ["var", name, ":", "module", module] if is_ident(module) => {
                *self = std::mem::take(self).var(name, Sort::Module(module.to_string()))?;
            }
            ["coaction", kind, "on", module] if is_ident(module) => {
                let kind = match *kind {
                    "rho" => Coaction::Rho,
                    "lam" => Coaction::Lam,
                    _ => return Err(err("coaction must be `rho` or `lam`")),
                };
                self.coactions.insert((kind, module.to_string()));
            }
            _ => {
                return Err(err(
                    "expected `var <name> : algebra|module <M>` or `coaction rho|lam on <M>`",
                ))
            }
        }
        Ok(())
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

/// A `.swd` document: header declarations and one equation.
pub fn parse_file(text: &str) -> Result<(Decls, Equation), DslError> {
    let (decls, body, start) = split_header(text)?;
    let eq = parse_equation_at(&body, &decls, start)?;
    Ok((decls, eq))
}

/// Like [`parse_file`] for a document whose body is a single expression.
pub fn parse_expr_file(text: &str) -> Result<(Decls, Expr), DslError> {
    let (decls, body, start) = split_header(text)?;
    let mut p = Parser::new(&body, &decls, start)?;
    let e = p.expr()?;
    p.expect(&Tok::Eof, "end of input")?;
    crate::sweedler::compile::compile(&e, &decls)?;
    Ok((decls, e))
}

fn split_header(text: &str) -> Result<(Decls, String, usize), DslError> {
    let mut decls = Decls::new();
    let mut body = String::new();
    let mut body_start = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.starts_with("var ") || line.starts_with("coaction ") {
            if body_start.is_some() {
                return Err(DslError::Syntax {
                    line: i + 1,
                    col: 1,
                    msg: "declarations must precede the equation".into(),
                });
            }
            decls.parse_line(i + 1, line)?;
        } else if body_start.is_some() || !line.is_empty() {
            body_start.get_or_insert(i + 1);
            body.push_str(raw);
            body.push('\n');
        }
    }
    let start = body_start.ok_or(DslError::Syntax {
        line: 1,
        col: 1,
        msg: "no equation found".into(),
    })?;
    Ok((decls, body, start))
}

pub fn parse_equation(text: &str, decls: &Decls) -> Result<Equation, DslError> {
    parse_equation_at(text, decls, 1)
}

fn parse_equation_at(text: &str, decls: &Decls, first_line: usize) -> Result<Equation, DslError> {
    let mut p = Parser::new(text, decls, first_line)?;
    let lhs = p.expr()?;
    p.expect(&Tok::Eq, "`=`")?;
    let rhs = p.expr()?;
    p.expect(&Tok::Eof, "end of input")?;
    let eq = Equation { lhs, rhs };
    let l = crate::sweedler::compile::compile(&eq.lhs, decls)?;
    let r = crate::sweedler::compile::compile(&eq.rhs, decls)?;
    if l.output != r.output {
        return Err(DslError::Type(
            "the two sides have different numbers or sorts of tensor factors".into(),
        ));
    }
    Ok(eq)
}

pub fn parse_expr(text: &str, decls: &Decls) -> Result<Expr, DslError> {
    let mut p = Parser::new(text, decls, 1)?;
    let e = p.expr()?;
    p.expect(&Tok::Eof, "end of input")?;
    crate::sweedler::compile::compile(&e, decls)?;
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Tensor,
    LParen,
    RParen,
    Plus,
    Minus,
    Eq,
    Caret,
    LBrace,
    RBrace,
    Lt,
    Gt,
    LBrack,
    RBrack,
    Semi,
    Underscore,
    Slash,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str, first_line: usize) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, first_line, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: tl,
                col: tc,
            })
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            push(&mut out, Tok::Ident(s));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            push(&mut out, Tok::Num(s));
            continue;
        }
        if c == '(' {
            // "(x)" is always the tensor separator.
            let mut j = i + 1;
            while j < chars.len() && chars[j] == ' ' {
                j += 1;
            }
            if j < chars.len() && chars[j] == 'x' {
                let mut k = j + 1;
                while k < chars.len() && chars[k] == ' ' {
                    k += 1;
                }
                if k < chars.len() && chars[k] == ')' {
                    col += k + 1 - i;
                    i = k + 1;
                    push(&mut out, Tok::Tensor);
                    continue;
                }
            }
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '=' => Tok::Eq,
            '^' => Tok::Caret,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '<' => Tok::Lt,
            '>' => Tok::Gt,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ';' => Tok::Semi,
            '_' => Tok::Underscore,
            '/' => Tok::Slash,
            _ => {
                return Err(DslError::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        push(&mut out, tok);
        i += 1;
        col += 1;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    decls: &'a Decls,
}

impl<'a> Parser<'a> {
    fn new(text: &str, decls: &'a Decls, first_line: usize) -> Result<Parser<'a>, DslError> {
        Ok(Parser {
            toks: lex(text, first_line)?,
            pos: 0,
            decls,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> DslError {
        let t = &self.toks[self.pos];
        DslError::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), DslError> {
        if self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {}", describe(self.peek()))))
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            terms.push(self.term(negative)?);
            negative = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        Ok(Expr { terms })
    }

    fn term(&mut self, negative: bool) -> Result<Term, DslError> {
        let mut factors = vec![self.factor()?];
        while self.peek() == &Tok::Tensor {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(Term { negative, factors })
    }

    fn factor(&mut self) -> Result<Factor, DslError> {
        let mut coeff = Lit::ONE;
        let mut atoms = Vec::new();
        loop {
            match self.peek() {
                Tok::Num(_) => {
                    let lit = self.literal()?;
                    coeff = coeff
                        .mul(lit)
                        .ok_or_else(|| self.error("literal overflow"))?;
                }
                Tok::Ident(_) | Tok::LParen => atoms.push(self.atom()?),
                _ => break,
            }
        }
        if atoms.is_empty() && coeff == Lit::ONE && !self.last_was_literal() {
            return Err(self.error(format!(
                "expected a factor, found {}",
                describe(self.peek())
            )));
        }
        Ok(Factor { coeff, atoms })
    }

    fn last_was_literal(&self) -> bool {
        self.pos > 0 && matches!(self.toks[self.pos - 1].tok, Tok::Num(_))
    }

    fn literal(&mut self) -> Result<Lit, DslError> {
        let num = self.number()?;
        if self.peek() == &Tok::Slash {
            self.bump();
            let den = self.number()?;
            if den == 0 {
                return Err(self.error("zero denominator"));
            }
            return Ok(Lit { num, den });
        }
        Ok(Lit { num, den: 1 })
    }

    fn number(&mut self) -> Result<i64, DslError> {
        match self.bump() {
            Tok::Num(s) => s
                .parse()
                .map_err(|_| self.error(format!("number `{s}` is too large"))),
            t => Err(self.error(format!("expected a number, found {}", describe(&t)))),
        }
    }

    fn label(&mut self) -> Result<String, DslError> {
        match self.bump() {
            Tok::Ident(s) | Tok::Num(s) => Ok(s),
            t => Err(self.error(format!("expected a label, found {}", describe(&t)))),
        }
    }

    fn optional_label(&mut self) -> Result<String, DslError> {
        if self.peek() == &Tok::Underscore {
            self.bump();
            self.label()
        } else {
            Ok(String::new())
        }
    }

    fn parenthesized(&mut self) -> Result<Factor, DslError> {
        self.expect(&Tok::LParen, "`(`")?;
        let f = self.factor()?;
        if matches!(self.peek(), Tok::Plus | Tok::Minus) {
            return Err(self.error("sums are not allowed inside parentheses"));
        }
        self.expect(&Tok::RParen, "`)`")?;
        Ok(f)
    }

    fn atom(&mut self) -> Result<Atom, DslError> {
        let primary = match self.peek().clone() {
            Tok::LParen => Atom::Group {
                body: Box::new(self.parenthesized()?),
                path: None,
            },
            Tok::Ident(name) => {
                self.bump();
                self.named_atom(&name)?
            }
            t => return Err(self.error(format!("expected an atom, found {}", describe(&t)))),
        };
        self.postfix(primary)
    }

    fn named_atom(&mut self, name: &str) -> Result<Atom, DslError> {
        if let Some(func) = Func::from_name(name) {
            if self.peek() == &Tok::LParen {
                let arg = self.parenthesized()?;
                return Ok(Atom::Apply {
                    func,
                    arg: Box::new(arg),
                });
            }
            return Err(self.error(format!(
                "`{name}` must be applied to a parenthesized argument"
            )));
        }
        let leg_fn = match name {
            "rho0" => Some((Coaction::Rho, 0)),
            "rho1" => Some((Coaction::Rho, 1)),
            "lam0" => Some((Coaction::Lam, 0)),
            "lam1" => Some((Coaction::Lam, 1)),
            _ => None,
        };
        if let Some((kind, leg)) = leg_fn {
            let label = self.optional_label()?;
            let arg = self.parenthesized()?;
            let base = match arg.atoms.as_slice() {
                [a @ Atom::Var { path: None, .. }] | [a @ Atom::Group { path: None, .. }]
                    if arg.coeff.is_one() =>
                {
                    a.clone()
                }
                _ => Atom::Group {
                    body: Box::new(arg),
                    path: None,
                },
            };
            return Ok(Atom::Leg {
                base: Box::new(base),
                kind,
                leg,
                label,
                path: None,
            });
        }
        match name {
            "alpha" => return Ok(Atom::Alpha),
            "beta" => return Ok(Atom::Beta),
            _ => {}
        }
        if let Some(comp) = PhiComp::from_letter(name) {
            let label = self.optional_label()?;
            return Ok(Atom::Phi {
                comp,
                label,
                path: None,
            });
        }
        if self.decls.vars.contains_key(name) {
            if self.peek() == &Tok::Underscore {
                return Err(self.error("variables do not take instance labels"));
            }
            return Ok(Atom::Var {
                name: name.to_string(),
                path: None,
            });
        }
        self.pos -= 1;
        Err(match self.peek_at(1) {
            Tok::LParen => DslError::UnknownFunction(name.to_string()),
            _ => DslError::UnknownVariable(name.to_string()),
        })
    }

    fn postfix(&mut self, mut atom: Atom) -> Result<Atom, DslError> {
        if matches!(self.peek(), Tok::Lt | Tok::LBrack) {
            let (kind, close) = match self.bump() {
                Tok::Lt => (Coaction::Rho, Tok::Gt),
                _ => (Coaction::Lam, Tok::RBrack),
            };
            if matches!(
                atom,
                Atom::Var { path: Some(_), .. } | Atom::Group { path: Some(_), .. }
            ) {
                return Err(
                    self.error("a coaction applies to module elements, which have no coproduct")
                );
            }
            let leg = match self.number()? {
                0 => 0,
                1 => 1,
                _ => return Err(self.error("coaction legs are 0 and 1")),
            };
            let label = if self.peek() == &Tok::Semi {
                self.bump();
                self.label()?
            } else {
                String::new()
            };
            self.expect(&close, "the closing bracket of a coaction leg")?;
            atom = Atom::Leg {
                base: Box::new(atom),
                kind,
                leg,
                label,
                path: None,
            };
        }
        if self.peek() == &Tok::Caret {
            self.bump();
            self.expect(&Tok::LBrace, "`{`")?;
            let at = self.pos;
            let p = match self.bump() {
                Tok::Num(s) => s,
                t => {
                    return Err(
                        self.error(format!("expected a coproduct path, found {}", describe(&t)))
                    )
                }
            };
            if !p.chars().all(|c| c == '1' || c == '2') {
                self.pos = at;
                return Err(self.error(format!(
                    "invalid coproduct path `{p}`: paths are binary addresses over 1 and 2"
                )));
            }
            self.expect(&Tok::RBrace, "`}`")?;
            match &mut atom {
                Atom::Var { path, .. }
                | Atom::Phi { path, .. }
                | Atom::Group { path, .. }
                | Atom::Leg { path, .. } => *path = Some(p),
                _ => {
                    return Err(self
                        .error("only variables, groups and Phi components take coproduct paths"))
                }
            }
        }
        Ok(atom)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(s) => format!("`{s}`"),
        Tok::Tensor => "`(x)`".into(),
        Tok::Eof => "end of input".into(),
        other => format!("{other:?}"),
    }
}
