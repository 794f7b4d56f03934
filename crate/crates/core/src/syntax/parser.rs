use std::fmt;

use thiserror::Error;

use super::Exp;

const ATOM_START: [&str; 4] = ["0", "1", "symbol", "("];

/// A syntax error: byte offset into the input plus the tokens that would
/// have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: expected {}, found {}", ExpectedList(expected), found_text(*found))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: Option<char>,
}

struct ExpectedList<'a>(&'a [&'static str]);

impl fmt::Display for ExpectedList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, token) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(if i + 1 == self.0.len() { " or " } else { ", " })?;
            }
            if token.len() == 1 {
                write!(f, "'{token}'")?;
            } else {
                f.write_str(token)?;
            }
        }
        Ok(())
    }
}

fn found_text(found: Option<char>) -> String {
    match found {
        Some(c) => format!("'{c}'"),
        None => "end of input".to_string(),
    }
}

fn is_reserved(c: char) -> bool {
    matches!(c, '0' | '1' | '+' | '*' | '(' | ')')
}

/// Parses the concrete syntax
///
/// ```text
/// sum  := cat { "+" cat }
/// cat  := star { star }
/// star := atom { "*" }
/// atom := "0" | "1" | CHAR | "(" sum ")"
/// ```
///
/// Whitespace between tokens is ignored. Chains of `+` and of juxtaposition
/// nest to the right, which is the shape [`print`](super::print) omits
/// parentheses for.
pub fn parse(text: &str) -> Result<Exp<char>, ParseError> {
    let mut parser = Parser { text, pos: 0 };
    let e = parser.sum()?;
    match parser.peek() {
        None => Ok(e),
        Some((offset, c)) => Err(ParseError {
            offset,
            expected: after_operand(&["end of input"]),
            found: Some(c),
        }),
    }
}

/// Tokens that may follow a complete operand, plus the closer of the
/// enclosing context.
fn after_operand(closer: &[&'static str]) -> Vec<&'static str> {
    let mut expected = vec!["+", "*"];
    expected.extend(ATOM_START);
    expected.extend_from_slice(closer);
    expected
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<(usize, char)> {
        let rest = &self.text[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        trimmed.chars().next().map(|c| (self.pos, c))
    }

    fn bump(&mut self, c: char) {
        self.pos += c.len_utf8();
    }

    fn sum(&mut self) -> Result<Exp<char>, ParseError> {
        let mut terms = vec![self.cat()?];
        while let Some((_, '+')) = self.peek() {
            self.bump('+');
            terms.push(self.cat()?);
        }
        Ok(fold_right(terms, Exp::plus))
    }

    fn cat(&mut self) -> Result<Exp<char>, ParseError> {
        let mut factors = vec![self.star()?];
        while let Some((_, c)) = self.peek() {
            if c == '+' || c == '*' || c == ')' {
                break;
            }
            factors.push(self.star()?);
        }
        Ok(fold_right(factors, Exp::comp))
    }

    fn star(&mut self) -> Result<Exp<char>, ParseError> {
        let mut e = self.atom()?;
        while let Some((_, '*')) = self.peek() {
            self.bump('*');
            e = Exp::star(e);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Exp<char>, ParseError> {
        let unexpected = |offset, found| ParseError {
            offset,
            expected: ATOM_START.to_vec(),
            found,
        };
        match self.peek() {
            None => Err(unexpected(self.pos, None)),
            Some((_, '0')) => {
                self.bump('0');
                Ok(Exp::Zero)
            }
            Some((_, '1')) => {
                self.bump('1');
                Ok(Exp::One)
            }
            Some((_, '(')) => {
                self.bump('(');
                let inner = self.sum()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.bump(')');
                        Ok(inner)
                    }
                    other => Err(ParseError {
                        offset: other.map_or(self.pos, |(offset, _)| offset),
                        expected: after_operand(&[")"]),
                        found: other.map(|(_, c)| c),
                    }),
                }
            }
            Some((offset, c)) if is_reserved(c) => Err(unexpected(offset, Some(c))),
            Some((_, c)) => {
                self.bump(c);
                Ok(Exp::Char(c))
            }
        }
    }
}

fn fold_right<T>(mut items: Vec<T>, join: impl Fn(T, T) -> T) -> T {
    let mut acc = items.pop().expect("at least one operand");
    while let Some(item) = items.pop() {
        acc = join(item, acc);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: char) -> Exp<char> {
        Exp::Char(a)
    }

    #[test]
    fn constants() {
        assert_eq!(parse("0"), Ok(Exp::Zero));
        assert_eq!(parse("1"), Ok(Exp::One));
    }

    #[test]
    fn precedence_star_over_cat_over_plus() {
        assert_eq!(
            parse("(a+1)b*"),
            Ok(Exp::comp(Exp::plus(c('a'), Exp::One), Exp::star(c('b'))))
        );
        assert_eq!(
            parse("a+bc"),
            Ok(Exp::plus(c('a'), Exp::comp(c('b'), c('c'))))
        );
        assert_eq!(parse("ab*"), Ok(Exp::comp(c('a'), Exp::star(c('b')))));
    }

    #[test]
    fn chains_nest_right() {
        assert_eq!(
            parse("a+b+c"),
            Ok(Exp::plus(c('a'), Exp::plus(c('b'), c('c'))))
        );
        assert_eq!(
            parse("abc"),
            Ok(Exp::comp(c('a'), Exp::comp(c('b'), c('c'))))
        );
        assert_eq!(parse("a**"), Ok(Exp::star(Exp::star(c('a')))));
    }

    #[test]
    fn whitespace_between_tokens_is_ignored() {
        assert_eq!(parse(" ( a + 1 ) b * "), parse("(a+1)b*"));
    }

    #[test]
    fn unicode_symbols() {
        assert_eq!(parse("λμ"), Ok(Exp::comp(c('λ'), c('μ'))));
        let err = parse("λ+").unwrap_err();
        assert_eq!(err.offset, 3);
    }

    #[test]
    fn doubled_plus_is_rejected_at_second_operator() {
        let err = parse("a++").unwrap_err();
        assert_eq!(err.offset, 2);
        assert_eq!(err.found, Some('+'));
        assert_eq!(err.expected, ATOM_START.to_vec());
    }

    #[test]
    fn empty_input_is_an_error() {
        let err = parse("").unwrap_err();
        assert_eq!(err.offset, 0);
        assert_eq!(err.found, None);
        assert!(parse("   ").is_err());
    }

    #[test]
    fn unbalanced_parentheses() {
        let err = parse("(ab").unwrap_err();
        assert_eq!(err.offset, 3);
        assert!(err.expected.contains(&")"));
        let err = parse("ab)").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.expected.contains(&"end of input"));
        assert!(parse("()").is_err());
        assert!(parse("*a").is_err());
    }

    #[test]
    fn error_message_lists_expected_tokens() {
        let msg = parse("a++").unwrap_err().to_string();
        assert_eq!(
            msg,
            "syntax error at offset 2: expected '0', '1', symbol or '(', found '+'"
        );
    }
}
