use std::sync::Arc;

use super::formula::{Formula, Rel, Term, F};
use crate::algebra::BinOp;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Zero,
    Inf,
    Top,
    Bot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Forall,
    Exists,
    Eq,
    Neq,
    Op(BinOp),
    LParen,
    RParen,
    Comma,
    Dot,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        other => format!("{other:?}").to_lowercase(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let starts = |i: usize, s: &str| text[chars[i].0..].starts_with(s);
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let sym = [
            ("<->", Tok::Iff),
            ("->", Tok::Implies),
            ("!=", Tok::Neq),
            ("↔", Tok::Iff),
            ("→", Tok::Implies),
            ("≠", Tok::Neq),
            ("¬", Tok::Not),
            ("~", Tok::Not),
            ("∧", Tok::And),
            ("&", Tok::And),
            ("∨", Tok::Or),
            ("|", Tok::Or),
            ("∀", Tok::Forall),
            ("∃", Tok::Exists),
            ("⊤", Tok::Top),
            ("⊥", Tok::Bot),
            ("∞", Tok::Inf),
            ("=", Tok::Eq),
            ("⊔", Tok::Op(BinOp::Join)),
            ("+", Tok::Op(BinOp::Join)),
            ("⊖", Tok::Op(BinOp::Minus)),
            ("-", Tok::Op(BinOp::Minus)),
            ("·", Tok::Op(BinOp::Meet)),
            ("*", Tok::Op(BinOp::Meet)),
            (";", Tok::Op(BinOp::Comp)),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            (",", Tok::Comma),
            (".", Tok::Dot),
        ]
        .into_iter()
        .find(|(s, _)| starts(i, s));
        if let Some((s, tok)) = sym {
            out.push((tok, pos));
            i += s.chars().count();
            continue;
        }
        if c == '0' {
            out.push((Tok::Zero, pos));
            i += 1;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut end = i;
            while end < chars.len() && (chars[end].1.is_alphanumeric() || chars[end].1 == '_' || chars[end].1 == '\'') {
                end += 1;
            }
            let stop = chars.get(end).map_or(text.len(), |&(p, _)| p);
            let word = &text[pos..stop];
            let tok = match word {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "true" => Tok::Top,
                "false" => Tok::Bot,
                "inf" => Tok::Inf,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((tok, pos));
            i = end;
            continue;
        }
        return Err(error_at(text, pos, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

fn error_at(text: &str, pos: usize, message: String) -> Error {
    let before = &text[..pos];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Error::Parse { line, column, message }
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.text.len(), |&(_, p)| p)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(error_at(self.text, self.pos(), msg.into()))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            match self.peek() {
                Some(got) => self.fail(format!("expected {}, found {}", describe(&t), describe(got))),
                None => self.fail(format!("expected {}, found end of input", describe(&t))),
            }
        }
    }

    fn formula(&mut self) -> Result<F> {
        let lhs = self.implication()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.formula()?;
            return Ok(Arc::new(Formula::Iff(lhs, rhs)));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<F> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication()?;
            return Ok(Arc::new(Formula::Implies(lhs, rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<F> {
        let mut parts = vec![self.conjunction()?];
        while self.eat(&Tok::Or) {
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Arc::new(Formula::Or(parts)) })
    }

    fn conjunction(&mut self) -> Result<F> {
        let mut parts = vec![self.unary()?];
        while self.eat(&Tok::And) {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Arc::new(Formula::And(parts)) })
    }

    fn unary(&mut self) -> Result<F> {
        match self.peek() {
            Some(Tok::Not) => {
                self.at += 1;
                Ok(Arc::new(Formula::Not(self.unary()?)))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let universal = self.peek() == Some(&Tok::Forall);
                self.at += 1;
                let mut vars = vec![self.ident()?];
                while self.eat(&Tok::Comma) {
                    vars.push(self.ident()?);
                }
                // A dot extends the scope as far right as possible.
                let body = if self.eat(&Tok::Dot) { self.formula()? } else { self.unary()? };
                Ok(Arc::new(if universal {
                    Formula::Forall(vars, body)
                } else {
                    Formula::Exists(vars, body)
                }))
            }
            Some(Tok::Top) => {
                self.at += 1;
                Ok(Arc::new(Formula::True))
            }
            Some(Tok::Bot) => {
                self.at += 1;
                Ok(Arc::new(Formula::False))
            }
            Some(Tok::LParen) if self.paren_is_formula() => {
                self.at += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(name)) if (name == "J" || name == "K") && self.toks.get(self.at + 1).map(|t| &t.0) == Some(&Tok::LParen) => {
                let r = if name == "J" { Rel::J } else { Rel::K };
                self.at += 2;
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::Comma)?;
                let c = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Arc::new(Formula::Rel(r, [a, b, c])))
            }
            Some(_) => {
                let a = self.term()?;
                let negated = match self.peek() {
                    Some(Tok::Eq) => false,
                    Some(Tok::Neq) => true,
                    _ => return self.fail("expected `=` or `≠` after a term"),
                };
                self.at += 1;
                let b = self.term()?;
                let atom = Arc::new(Formula::Eq(a, b));
                Ok(if negated { Arc::new(Formula::Not(atom)) } else { atom })
            }
            None => self.fail("unexpected end of input"),
        }
    }

    /// Decides whether the parenthesis at the cursor opens a formula or a term,
    /// by scanning to its matching close and looking at what follows.
    fn paren_is_formula(&self) -> bool {
        let mut depth = 0usize;
        for (k, (t, _)) in self.toks.iter().enumerate().skip(self.at) {
            match t {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        let next = self.toks.get(k + 1).map(|t| &t.0);
                        return !matches!(next, Some(Tok::Eq) | Some(Tok::Neq) | Some(Tok::Op(_)));
                    }
                }
                _ => {}
            }
        }
        true
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.fail("expected a variable name"),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.atom_term()?;
        while let Some(Tok::Op(op)) = self.peek() {
            let op = *op;
            self.at += 1;
            let rhs = self.atom_term()?;
            t = Term::op(op, t, rhs);
        }
        Ok(t)
    }

    fn atom_term(&mut self) -> Result<Term> {
        match self.peek() {
            Some(Tok::Ident(_)) => Ok(Term::Var(self.ident()?)),
            Some(Tok::Zero) => {
                self.at += 1;
                Ok(Term::Zero)
            }
            Some(Tok::Inf) => {
                self.at += 1;
                Ok(Term::Infinity)
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(t) => self.fail(format!("expected a term, found {}", describe(t))),
            None => self.fail("expected a term, found end of input"),
        }
    }
}

/// Parses a formula written with Unicode or ASCII connectives.
///
/// ASCII forms: `~ & | -> <->`, `forall x.` / `exists x.`, `true false`,
/// `+ - * ;` for the operations, `0`, `inf`, `=` and `!=`.
pub fn parse_formula(text: &str) -> Result<F> {
    let toks = lex(text)?;
    let mut p = Parser { text, toks, at: 0 };
    let f = p.formula()?;
    if p.at < p.toks.len() {
        return p.fail(format!("unexpected {}", describe(&p.toks[p.at].0)));
    }
    Ok(f)
}

/// Parses a single term.
pub fn parse_term(text: &str) -> Result<Term> {
    let toks = lex(text)?;
    let mut p = Parser { text, toks, at: 0 };
    let t = p.term()?;
    if p.at < p.toks.len() {
        return p.fail(format!("unexpected {}", describe(&p.toks[p.at].0)));
    }
    Ok(t)
}
