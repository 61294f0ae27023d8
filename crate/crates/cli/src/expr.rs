//! Element expressions over FG.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := coeff ('*' mono)? | mono
//! mono   := factor ('*' factor)*
//! factor := gen ('^' int)?
//! gen    := 'b' | 'a' digits | '1'
//! coeff  := int | '[' int (',' int)* ']'
//! ```
//!
//! A leading `-` on a term folds into its coefficient. Integers may be
//! negative and are reduced mod p; generator exponents are reduced mod the
//! generator's order. Bracketed coefficients list `c₀, c₁, ...` in the
//! polynomial basis of GF(p^f). Whitespace is ignored. The printed form of
//! an [`AlgElem`] parses back to the same element.

use std::sync::Arc;

use ncomp_core::algebra::{AlgElem, GroupAlgebra};
use ncomp_core::field::FieldElem;
use ncomp_core::group::GroupElem;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    B,
    A(u64),
    Plus,
    Minus,
    Star,
    Caret,
    LBracket,
    RBracket,
    Comma,
}

fn syntax(col: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("column {col}: {msg}"))
}

/// Tokens with their 1-based columns.
fn lex(text: &str) -> Result<Vec<(Tok, usize)>, CliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> String {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect()
    };
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let s = digits(&mut i);
                let v = s
                    .parse()
                    .map_err(|_| syntax(col, format!("integer '{s}' is too large")))?;
                out.push((Tok::Int(v), col));
                continue;
            }
            'a' => {
                i += 1;
                let s = digits(&mut i);
                if s.is_empty() {
                    return Err(syntax(col, "expected a generator index after 'a'"));
                }
                let v = s
                    .parse()
                    .map_err(|_| syntax(col, format!("generator index '{s}' is too large")))?;
                out.push((Tok::A(v), col));
                continue;
            }
            'b' => Tok::B,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            other => return Err(syntax(col, format!("unexpected character '{other}'"))),
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    alg: &'a Arc<GroupAlgebra>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expected(&self, what: &str) -> CliError {
        match self.toks.get(self.pos) {
            Some((t, c)) => syntax(*c, format!("expected {what}, found {}", describe(t))),
            None => syntax(self.end_col, format!("expected {what}, found end of input")),
        }
    }

    /// `'-'? digits`.
    fn int(&mut self) -> Result<i64, CliError> {
        let neg = self.eat(&Tok::Minus);
        match self.peek() {
            Some(&Tok::Int(v)) => {
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.expected("an integer")),
        }
    }

    fn expr(&mut self) -> Result<AlgElem, CliError> {
        let mut acc = AlgElem::zero(self.alg);
        let mut negate = self.eat(&Tok::Minus);
        loop {
            let t = self.term(negate)?;
            acc = &acc + &t;
            if self.eat(&Tok::Plus) {
                negate = false;
            } else if self.eat(&Tok::Minus) {
                negate = true;
            } else {
                break;
            }
        }
        match self.peek() {
            None => Ok(acc),
            Some(_) => Err(self.expected("'+', '-' or end of input")),
        }
    }

    fn term(&mut self, negate: bool) -> Result<AlgElem, CliError> {
        let field = self.alg.field();
        let starts_coeff = match self.peek() {
            Some(Tok::LBracket) => true,
            // `1^k` is the generator 1, a bare `1` is a coefficient.
            Some(&Tok::Int(v)) => !(v == 1 && self.peek_at(1) == Some(&Tok::Caret)),
            _ => false,
        };
        let (coeff, g) = if starts_coeff {
            let c = self.coeff()?;
            let g = if self.eat(&Tok::Star) {
                self.mono()?
            } else {
                self.alg.group().identity()
            };
            (c, g)
        } else {
            (FieldElem::ONE, self.mono()?)
        };
        let coeff = if negate { field.neg(coeff) } else { coeff };
        Ok(AlgElem::group_elem(self.alg, g).scale(coeff))
    }

    fn coeff(&mut self) -> Result<FieldElem, CliError> {
        let field = self.alg.field();
        if let Some(&Tok::Int(v)) = self.peek() {
            self.pos += 1;
            return Ok(field.from_int(v));
        }
        let open = self.col();
        if !self.eat(&Tok::LBracket) {
            return Err(self.expected("a coefficient"));
        }
        let mut list = vec![self.int()?];
        while self.eat(&Tok::Comma) {
            list.push(self.int()?);
        }
        if !self.eat(&Tok::RBracket) {
            return Err(self.expected("',' or ']'"));
        }
        field
            .from_coeffs(&list)
            .map_err(|e| CliError::Math(format!("column {open}: {e}")))
    }

    fn mono(&mut self) -> Result<GroupElem, CliError> {
        let g = self.alg.group();
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            let next = self.factor()?;
            acc = g.mul(acc, next);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GroupElem, CliError> {
        let g = self.alg.group();
        let col = self.col();
        // The generator as a group element together with its order.
        let (gen, order) = match self.peek() {
            Some(Tok::B) => (g.b(), g.q() as u64),
            Some(&Tok::Int(1)) => (g.identity(), 1),
            Some(&Tok::A(i)) => {
                let rank = g.rank() as u64;
                if i == 0 || i > rank {
                    return Err(CliError::Math(format!(
                        "column {col}: generator a{i} out of range (A has generators a1..a{rank})"
                    )));
                }
                let factor = g.abelian().factors[i as usize - 1];
                (
                    GroupElem {
                        a: g.a_generator(i as usize - 1),
                        j: 0,
                    },
                    factor,
                )
            }
            _ => return Err(self.expected("a generator 'b', 'a<k>' or '1'")),
        };
        self.pos += 1;
        let exp = if self.eat(&Tok::Caret) { self.int()? } else { 1 };
        Ok(g.pow(gen, exp.rem_euclid(order as i64) as u64))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("integer {v}"),
        Tok::B => "'b'".into(),
        Tok::A(i) => format!("'a{i}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LBracket => "'['".into(),
        Tok::RBracket => "']'".into(),
        Tok::Comma => "','".into(),
    }
}

/// Parses an expression into an element of `alg`.
pub fn parse_element(text: &str, alg: &Arc<GroupAlgebra>) -> Result<AlgElem, CliError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(syntax(1, "empty expression"));
    }
    let mut p = Parser {
        alg,
        toks,
        pos: 0,
        end_col: text.chars().count() + 1,
    };
    p.expr()
}
