//! A small text language for elements of W and Ŵ.
//!
//! ```text
//! expr   := '0' | ['-'] term (('+' | '-') term)*
//! term   := (scalar '*')? atom
//! atom   := 'L' '(' group ',' nat ')' | 'C' | '[' expr ',' expr ']' | '(' expr ')'
//! group  := integer combination of generator names, e.g. 2g1 - 3g2
//!           (a plain integer when the rank is 1)
//! scalar := rational function in the generator names, e.g. 3/2 or (g1 + 1)/g2
//! ```

mod lexer;
mod parser;

use std::fmt::Write as _;

use crate::error::Result;
use crate::ground::{Gamma, GroupElement, Scalar};
use crate::lie::{bracket, BracketRule, Element};

pub use parser::{parse, parse_scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub negative: bool,
    pub coeff: Option<Scalar>,
    pub atom: Atom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Basis(GroupElement, u32),
    Central,
    Bracket(Box<Expr>, Box<Expr>),
    Group(Box<Expr>),
}

/// Prints an expression in a form [`parse`] reads back to the same tree.
pub fn print(gamma: &Gamma, e: &Expr) -> String {
    let mut out = String::new();
    print_into(gamma, e, &mut out);
    out
}

fn print_into(gamma: &Gamma, e: &Expr, out: &mut String) {
    if e.terms.is_empty() {
        out.push('0');
        return;
    }
    for (n, t) in e.terms.iter().enumerate() {
        match (n, t.negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if let Some(c) = &t.coeff {
            let text = gamma.display_scalar(c);
            if c.is_rational() && !c.is_negative_leading() {
                let _ = write!(out, "{text}*");
            } else {
                let _ = write!(out, "({text})*");
            }
        }
        match &t.atom {
            Atom::Basis(d, i) => {
                let _ = write!(out, "L({},{i})", gamma.format_degree(d));
            }
            Atom::Central => out.push('C'),
            Atom::Bracket(a, b) => {
                out.push('[');
                print_into(gamma, a, out);
                out.push_str(", ");
                print_into(gamma, b, out);
                out.push(']');
            }
            Atom::Group(inner) => {
                out.push('(');
                print_into(gamma, inner, out);
                out.push(')');
            }
        }
    }
}

/// Bottom-up evaluation under `rule`.
pub fn eval(gamma: &Gamma, e: &Expr, rule: BracketRule) -> Result<Element> {
    let mut acc = Element::zero();
    for t in &e.terms {
        let mut v = match &t.atom {
            Atom::Basis(d, i) => Element::basis(*d, *i),
            Atom::Central => Element::central(),
            Atom::Bracket(a, b) => {
                bracket(gamma, &eval(gamma, a, rule)?, &eval(gamma, b, rule)?, rule)?
            }
            Atom::Group(inner) => eval(gamma, inner, rule)?,
        };
        rule.check_input(&v)?;
        if let Some(c) = &t.coeff {
            v = v.scale(c);
        }
        acc = if t.negative { acc.sub(&v) } else { acc.add(&v) };
    }
    Ok(acc)
}

/// Parses and evaluates in one step.
pub fn eval_str(gamma: &Gamma, src: &str, rule: BracketRule) -> Result<Element> {
    eval(gamma, &parse(gamma, src)?, rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn z() -> Gamma {
        Gamma::integers()
    }

    #[test]
    fn evaluation_examples() {
        let g = z();
        let out = |s: &str, r: BracketRule| eval_str(&g, s, r).unwrap().format(&g);
        assert_eq!(
            out("[L(1,2), L(3,1)]", BracketRule::WGamma),
            "2*L(4,3) - L(4,4)"
        );
        assert_eq!(out("L(1,0) - L(1,0)", BracketRule::WGamma), "0");
        assert_eq!(
            out("[L(2,0), L(-2,0)]", BracketRule::WGammaHat),
            "-4*L(0,0) + 1/2*C"
        );
        assert_eq!(
            out("[L(1,0), L(-1,2)] + 3*L(0,1)", BracketRule::WGamma),
            "3*L(0,1) - 2*L(0,2) + 2*L(0,3)"
        );
        assert!(matches!(
            eval_str(&g, "C", BracketRule::WGamma),
            Err(Error::CentralTerm(_))
        ));
        assert!(matches!(
            eval_str(&g, "L(0,5)", BracketRule::Subquotient(0, 2)),
            Err(Error::LevelOutOfRange { level: 5, .. })
        ));
    }

    #[test]
    fn canonical_output_reparses() {
        let g = Gamma::symbolic(2);
        let x = eval_str(
            &g,
            "((g1 + 1)/(g1*g2))*L(g1,0) - 3/2*L(-g2,2) + [L(g1,1), L(g2,0)]",
            BracketRule::WGamma,
        )
        .unwrap();
        let text = x.format(&g);
        assert_eq!(
            eval_str(&g, &text, BracketRule::WGamma).unwrap(),
            x,
            "{text}"
        );
    }

    #[test]
    fn print_parse_identity() {
        let g = Gamma::symbolic(2);
        for src in [
            "-L(2g1-3g2,4)",
            "(-3)*[L(g1,0), (L(0,1) - C)] + ((g1 + g2)/g2^2)*L(-g1,1)",
            "0",
            "[0, L(g2,3)]",
        ] {
            let e = parse(&g, src).unwrap();
            assert_eq!(parse(&g, &print(&g, &e)).unwrap(), e, "{src}");
        }
    }
}
