use super::lexer::{lex, Tok, Token};
use super::{Atom, Expr, Term};
use crate::error::{Error, Result};
use crate::ground::{Gamma, GroupElement, Scalar, Q};

/// Scalar syntax before generator names are resolved.
enum SExpr {
    Num(Q),
    Var(String),
    Neg(Box<SExpr>),
    Bin(char, Box<SExpr>, Box<SExpr>),
    Pow(Box<SExpr>, i32),
}

struct Parser<'a> {
    gamma: &'a Gamma,
    toks: Vec<Token>,
    pos: usize,
}

pub fn parse(gamma: &Gamma, src: &str) -> Result<Expr> {
    let mut p = Parser {
        gamma,
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

/// Parses a scalar such as `-3/2` or `(g1 + 1)/g2^2`; specialised generators
/// are replaced by their values.
pub fn parse_scalar(gamma: &Gamma, src: &str) -> Result<Scalar> {
    let mut p = Parser {
        gamma,
        toks: lex(src)?,
        pos: 0,
    };
    let s = p.ssum()?;
    p.expect_eof()?;
    p.resolve(&s)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Int(s) | Tok::Ident(s) => format!("{s:?}"),
            Tok::Sym(c) => format!("{c:?}"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}, found {}", self.describe())))
        }
    }

    fn expect_eof(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", self.describe())))
        }
    }

    fn int(&mut self) -> Result<String> {
        if let Tok::Int(s) = self.peek() {
            let s = s.clone();
            self.pos += 1;
            Ok(s)
        } else {
            Err(self.error(format!("expected an integer, found {}", self.describe())))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let ends_here = matches!(self.peek_at(1), Tok::Eof | Tok::Sym(',' | ')' | ']'));
        if *self.peek() == Tok::Int("0".into()) && ends_here {
            self.pos += 1;
            return Ok(Expr { terms: Vec::new() });
        }
        let mut terms = Vec::new();
        let mut negative = false;
        if self.is_sym('-') {
            self.pos += 1;
            negative = true;
        }
        loop {
            terms.push(self.term(negative)?);
            if self.is_sym('+') {
                negative = false;
            } else if self.is_sym('-') {
                negative = true;
            } else {
                break;
            }
            self.pos += 1;
        }
        Ok(Expr { terms })
    }

    /// Tries `scalar '*' atom` first and falls back to a bare atom.
    fn term(&mut self, negative: bool) -> Result<Term> {
        let start = self.pos;
        let mut coefficient_error = None;
        if let Ok(s) = self.sproduct() {
            if self.is_sym('*') {
                self.pos += 1;
                match self.atom() {
                    Ok(atom) => {
                        return Ok(Term {
                            negative,
                            coeff: Some(self.resolve(&s)?),
                            atom,
                        })
                    }
                    Err(e) => coefficient_error = Some(e),
                }
            }
        }
        self.pos = start;
        match self.atom() {
            Ok(atom) => Ok(Term {
                negative,
                coeff: None,
                atom,
            }),
            Err(e) => Err(farthest(e, coefficient_error)),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.peek().clone() {
            Tok::Ident(name) if name == "L" => {
                self.pos += 1;
                self.expect('(')?;
                let degree = self.group()?;
                self.expect(',')?;
                let text = self.int()?;
                let level = text.parse::<u32>().map_err(|_| {
                    self.pos -= 1;
                    self.error(format!("level {text} is too large"))
                })?;
                self.expect(')')?;
                Ok(Atom::Basis(degree, level))
            }
            Tok::Ident(name) if name == "C" => {
                self.pos += 1;
                Ok(Atom::Central)
            }
            Tok::Sym('[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(Atom::Bracket(Box::new(a), Box::new(b)))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(Atom::Group(Box::new(e)))
            }
            _ => Err(self.error(format!(
                "expected L(...), C, [...] or (...), found {}",
                self.describe()
            ))),
        }
    }

    /// `2g1 - 3g2`, `-g1`, or a plain integer when the rank is 1.
    fn group(&mut self) -> Result<GroupElement> {
        let rank = self.gamma.rank();
        let mut acc = self.gamma.zero();
        let mut sign = 1i64;
        if self.is_sym('-') {
            sign = -1;
            self.pos += 1;
        } else if self.is_sym('+') {
            self.pos += 1;
        }
        loop {
            let int_pos = self.pos;
            let n = match self.peek() {
                Tok::Int(_) => {
                    let text = self.int()?;
                    Some(text.parse::<i64>().map_err(|_| {
                        self.pos = int_pos;
                        self.error(format!("integer {text} is too large"))
                    })?)
                }
                _ => None,
            };
            if n.is_some() && self.is_sym('*') && matches!(self.peek_at(1), Tok::Ident(_)) {
                self.pos += 1;
            }
            let part = match self.peek().clone() {
                Tok::Ident(name) => {
                    let k = self
                        .gamma
                        .generator_index(&name)
                        .ok_or(Error::UnknownGenerator(name))?;
                    self.pos += 1;
                    self.gamma.unit_vector(k).scale(n.unwrap_or(1))
                }
                _ => match n {
                    Some(0) => self.gamma.zero(),
                    Some(n) if rank == 1 => self.gamma.element(&[n]),
                    Some(_) => {
                        self.pos = int_pos;
                        return Err(self.error(
                            "a bare integer degree needs rank 1; write it with generator names",
                        ));
                    }
                    None => {
                        return Err(
                            self.error(format!("expected a degree, found {}", self.describe()))
                        )
                    }
                },
            };
            acc = acc.add(&part.scale(sign));
            if self.is_sym('+') {
                sign = 1;
            } else if self.is_sym('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
            self.pos += 1;
        }
    }

    fn ssum(&mut self) -> Result<SExpr> {
        let mut acc = self.sproduct()?;
        while self.is_sym('+') || self.is_sym('-') {
            let Tok::Sym(op) = *self.peek() else {
                unreachable!()
            };
            self.pos += 1;
            let rhs = self.sproduct()?;
            acc = SExpr::Bin(op, Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    /// Factors joined by `*` and `/`. A `*` not followed by a factor is left
    /// for the caller, which reads it as the coefficient separator.
    fn sproduct(&mut self) -> Result<SExpr> {
        let mut acc = self.sunary()?;
        while self.is_sym('*') || self.is_sym('/') {
            let Tok::Sym(op) = *self.peek() else {
                unreachable!()
            };
            let save = self.pos;
            self.pos += 1;
            match self.sunary() {
                Ok(rhs) => acc = SExpr::Bin(op, Box::new(acc), Box::new(rhs)),
                Err(_) if op == '*' => {
                    self.pos = save;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        Ok(acc)
    }

    fn sunary(&mut self) -> Result<SExpr> {
        if self.is_sym('-') {
            self.pos += 1;
            return Ok(SExpr::Neg(Box::new(self.sunary()?)));
        }
        let base = self.sprimary()?;
        if self.is_sym('^') {
            self.pos += 1;
            let negative = self.is_sym('-');
            if negative {
                self.pos += 1;
            }
            let text = self.int()?;
            let e: i32 = text
                .parse()
                .map_err(|_| self.error(format!("exponent {text} is too large")))?;
            return Ok(SExpr::Pow(Box::new(base), if negative { -e } else { e }));
        }
        Ok(base)
    }

    fn sprimary(&mut self) -> Result<SExpr> {
        match self.peek().clone() {
            Tok::Int(text) => {
                self.pos += 1;
                Ok(SExpr::Num(
                    text.parse().map_err(|_| self.error("invalid number"))?,
                ))
            }
            Tok::Ident(name)
                if self.gamma.generator_index(&name).is_some() || (name != "L" && name != "C") =>
            {
                self.pos += 1;
                Ok(SExpr::Var(name))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let inner = self.ssum()?;
                self.expect(')')?;
                Ok(inner)
            }
            _ => Err(self.error(format!("expected a scalar, found {}", self.describe()))),
        }
    }

    fn resolve(&self, s: &SExpr) -> Result<Scalar> {
        Ok(match s {
            SExpr::Num(q) => Scalar::from_q(q.clone()),
            SExpr::Var(name) => {
                let k = self
                    .gamma
                    .generator_index(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                self.gamma.generator_value(k).clone()
            }
            SExpr::Neg(a) => self.resolve(a)?.neg(),
            SExpr::Bin(op, a, b) => {
                let (a, b) = (self.resolve(a)?, self.resolve(b)?);
                match op {
                    '+' => a.add(&b),
                    '-' => a.sub(&b),
                    '*' => a.mul(&b),
                    _ => a.div(&b)?,
                }
            }
            SExpr::Pow(a, e) => self.resolve(a)?.pow(*e)?,
        })
    }
}

fn farthest(a: Error, b: Option<Error>) -> Error {
    let pos = |e: &Error| match e {
        Error::Syntax { line, column, .. } => Some((*line, *column)),
        _ => None,
    };
    match b {
        Some(b) if pos(&b) > pos(&a) => b,
        _ => a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_instances() {
        let z = Gamma::integers();
        let e = parse(&z, "[L(1,0), L(-1,2)] + 3*L(0,1)").unwrap();
        assert_eq!(e.terms.len(), 2);
        assert!(matches!(e.terms[0].atom, Atom::Bracket(..)));
        assert_eq!(e.terms[1].coeff, Some(Scalar::from_int(3)));
        assert!(matches!(e.terms[1].atom, Atom::Basis(_, 1)));
        let g = Gamma::symbolic(2);
        let e = parse(&g, "L(2g1-3g2, 4)").unwrap();
        assert_eq!(e.terms[0].atom, Atom::Basis(GroupElement::new(&[2, -3]), 4));
    }

    #[test]
    fn errors() {
        let z = Gamma::integers();
        assert!(matches!(
            parse(&z, "[L(1,0)"),
            Err(Error::Syntax {
                line: 1,
                column: 8,
                ..
            })
        ));
        assert!(matches!(parse(&z, "garbage("), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse(&z, "L(1,0) +\n  L(2,"),
            Err(Error::Syntax {
                line: 2,
                column: 7,
                ..
            })
        ));
        assert_eq!(
            parse(&z, "L(2x, 0)"),
            Err(Error::UnknownGenerator("x".into()))
        );
        assert_eq!(
            parse(&z, "q*L(0,0)"),
            Err(Error::UnknownGenerator("q".into()))
        );
        let g = Gamma::symbolic(2);
        assert!(matches!(
            parse(&g, "L(3, 0)"),
            Err(Error::Syntax { column: 3, .. })
        ));
    }

    #[test]
    fn scalars() {
        let g = Gamma::symbolic(2);
        let s = parse_scalar(&g, "(g1 + 1)/g2^2 - 1/2").unwrap();
        let expect = Scalar::var(0)
            .add(&Scalar::one())
            .div(&Scalar::var(1).pow(2).unwrap())
            .unwrap()
            .sub(&Scalar::ratio(1, 2));
        assert_eq!(s, expect);
        assert_eq!(parse_scalar(&g, &g.display_scalar(&s)).unwrap(), s);
        // a specialised generator reads as its value
        assert_eq!(
            parse_scalar(&Gamma::integers(), "3*g1").unwrap(),
            Scalar::from_int(3)
        );
        assert_eq!(parse_scalar(&g, "1/0"), Err(Error::DivisionByZero));
    }
}
