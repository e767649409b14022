use super::term::{Builder, Equation, Node, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Var(&'a str),
    Zero,
    Plus,
    Open,
    Close,
    Equals,
    End,
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    /// Line and column (both from 1, columns in characters) of a byte offset.
    fn locate(&self, at: usize) -> (usize, usize) {
        let before = &self.text[..at];
        let line = before.matches('\n').count() + 1;
        let start = before.rfind('\n').map_or(0, |i| i + 1);
        (line, before[start..].chars().count() + 1)
    }

    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.locate(at);
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// The next token and its byte offset.
    fn next(&mut self) -> Result<(Tok<'a>, usize)> {
        let rest = &self.text[self.pos..];
        let trimmed = rest.trim_start();
        let at = self.pos + (rest.len() - trimmed.len());
        let Some(c) = trimmed.chars().next() else {
            self.pos = self.text.len();
            return Ok((Tok::End, at));
        };
        let (tok, len) = match c {
            '+' => (Tok::Plus, 1),
            '(' => (Tok::Open, 1),
            ')' => (Tok::Close, 1),
            '=' => (Tok::Equals, 1),
            '0' => (Tok::Zero, 1),
            'a'..='z' => {
                let len = trimmed
                    .find(|ch: char| !(ch.is_ascii_lowercase() || ch.is_ascii_digit()))
                    .unwrap_or(trimmed.len());
                (Tok::Var(&trimmed[..len]), len)
            }
            _ => return Err(self.error(at, format!("unexpected character `{c}`"))),
        };
        self.pos = at + len;
        Ok((tok, at))
    }
}

fn describe(t: Tok<'_>) -> String {
    match t {
        Tok::Var(v) => format!("variable `{v}`"),
        Tok::Zero => "`0`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Open => "`(`".into(),
        Tok::Close => "`)`".into(),
        Tok::Equals => "`=`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses one term and returns it with the token that ended it. Uses an
/// explicit stack of open brackets, so nesting depth is not limited by the
/// call stack.
fn term<'a>(lx: &mut Lexer<'a>) -> Result<(Term, Tok<'a>, usize)> {
    let mut b = Builder::default();
    // One accumulated operand per open bracket level, with the bracket position.
    let mut levels: Vec<(Option<usize>, usize)> = vec![(None, 0)];
    let mut expect_operand = true;
    loop {
        let (tok, at) = lx.next()?;
        let operand = match (tok, expect_operand) {
            (Tok::Var(v), true) => Some(b.var(v)),
            (Tok::Zero, true) => Some(b.push(Node::Zero)),
            (Tok::Open, true) => {
                levels.push((None, at));
                None
            }
            (Tok::Plus, false) => {
                expect_operand = true;
                None
            }
            (Tok::Close, false) if levels.len() > 1 => {
                let (inner, _) = levels.pop().unwrap();
                inner
            }
            (Tok::Close, false) => return Err(lx.error(at, "unmatched `)`")),
            (Tok::Equals | Tok::End, false) => {
                if levels.len() > 1 {
                    let (_, open) = levels[levels.len() - 1];
                    return Err(lx.error(open, "unclosed `(`"));
                }
                return Ok((b.finish(), tok, at));
            }
            (t, true) => return Err(lx.error(at, format!("expected a term, found {}", describe(t)))),
            (t, false) => return Err(lx.error(at, format!("expected `+`, `)`, `=` or end of input, found {}", describe(t)))),
        };
        if let Some(node) = operand {
            let top = &mut levels.last_mut().unwrap().0;
            *top = Some(match *top {
                None => node,
                Some(acc) => b.push(Node::Join(acc, node)),
            });
            expect_operand = false;
        }
    }
}

/// Parses a term such as `(a + b) + 0`; `+` associates to the left.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut lx = Lexer { text, pos: 0 };
    let (t, end, at) = term(&mut lx)?;
    if end != Tok::End {
        return Err(lx.error(at, format!("expected end of input, found {}", describe(end))));
    }
    Ok(t)
}

/// Parses `s = t`.
pub fn parse_equation(text: &str) -> Result<Equation> {
    let mut lx = Lexer { text, pos: 0 };
    let (lhs, end, at) = term(&mut lx)?;
    if end != Tok::Equals {
        return Err(lx.error(at, "expected `=`"));
    }
    let (rhs, end, at) = term(&mut lx)?;
    if end != Tok::End {
        return Err(lx.error(at, format!("expected end of input, found {}", describe(end))));
    }
    Ok(Equation::new(lhs, rhs))
}
