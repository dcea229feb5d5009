use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

const SYMBOLS: &[char] = &['+', '-', '*', '/', '^', '(', ')', '[', ']', ','];

/// Splits `src` into tokens carrying 1-based line and column (in characters).
/// The Unicode minus sign is read as `-`.
pub(crate) fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (start_line, start_column) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        let begin = k;
        let tok = if c.is_ascii_digit() {
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            Tok::Int(chars[begin..k].iter().collect())
        } else if c.is_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            Tok::Ident(chars[begin..k].iter().collect())
        } else if c == '−' {
            k += 1;
            Tok::Sym('-')
        } else if SYMBOLS.contains(&c) {
            k += 1;
            Tok::Sym(c)
        } else {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("unexpected character {c:?}"),
            });
        };
        column += k - begin;
        out.push(Token {
            tok,
            line: start_line,
            column: start_column,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions() {
        let t = lex("[L(1,0)").unwrap();
        assert_eq!(t.len(), 8);
        assert_eq!(t.last().unwrap().column, 8);
        let t = lex("L(2g1 −3g2,\n 4)").unwrap();
        assert_eq!(t[2].tok, Tok::Int("2".into()));
        assert_eq!(t[3].tok, Tok::Ident("g1".into()));
        assert_eq!(t[4].tok, Tok::Sym('-'));
        let four = t.iter().find(|x| x.tok == Tok::Int("4".into())).unwrap();
        assert_eq!((four.line, four.column), (2, 2));
        assert!(matches!(
            lex("L(1,0) # x"),
            Err(Error::Syntax { column: 8, .. })
        ));
    }
}
