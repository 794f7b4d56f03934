//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regeq::{Alphabet, Exp};

/// Base seed of every seeded suite; each suite mixes in its own stream id.
pub const SEED: u64 = 0x5EED_0B15_1A11;

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn sigma() -> Alphabet<char> {
    Alphabet::from_text("ab").unwrap()
}

fn leaf(rng: &mut ChaCha8Rng) -> Exp<char> {
    match rng.gen_range(0..6) {
        0 => Exp::Zero,
        1 => Exp::One,
        2 | 3 => Exp::Char('a'),
        _ => Exp::Char('b'),
    }
}

/// A random expression with exactly `size` constructors.
pub fn exp_of_size(rng: &mut ChaCha8Rng, size: usize) -> Exp<char> {
    match size {
        0 | 1 => leaf(rng),
        2 => Exp::star(leaf(rng)),
        _ => match rng.gen_range(0..5) {
            0 => Exp::star(exp_of_size(rng, size - 1)),
            k => {
                let left = rng.gen_range(1..size - 1);
                let (l, r) = (exp_of_size(rng, left), exp_of_size(rng, size - 1 - left));
                if k <= 2 {
                    Exp::plus(l, r)
                } else {
                    Exp::comp(l, r)
                }
            }
        },
    }
}

/// A random expression whose size is uniform in `1..=max_size`.
pub fn exp(rng: &mut ChaCha8Rng, max_size: usize) -> Exp<char> {
    let size = rng.gen_range(1..=max_size);
    exp_of_size(rng, size)
}

/// Rewrites `e` by randomly chosen Kleene-algebra laws, so the result
/// denotes the same language but usually differs syntactically.
pub fn scramble(rng: &mut ChaCha8Rng, e: &Exp<char>) -> Exp<char> {
    let inner = match e {
        Exp::Zero | Exp::One | Exp::Char(_) => e.clone(),
        Exp::Plus(l, r) => {
            let (l, r) = (scramble(rng, l), scramble(rng, r));
            match (rng.gen_range(0..4), &r) {
                (0, _) => Exp::plus(r, l),
                (1, Exp::Plus(x, y)) => Exp::plus(Exp::plus(l, (**x).clone()), (**y).clone()),
                _ => Exp::plus(l, r),
            }
        }
        Exp::Comp(l, r) => {
            let (l, r) = (scramble(rng, l), scramble(rng, r));
            match (rng.gen_range(0..3), &r) {
                (0, Exp::Comp(x, y)) => Exp::comp(Exp::comp(l, (**x).clone()), (**y).clone()),
                _ => Exp::comp(l, r),
            }
        }
        Exp::Star(x) => {
            let x = scramble(rng, x);
            match rng.gen_range(0..5) {
                0 => Exp::star(Exp::star(x)),
                1 => Exp::plus(Exp::One, Exp::comp(x.clone(), Exp::star(x))),
                2 => Exp::plus(Exp::One, Exp::comp(Exp::star(x.clone()), x)),
                _ => Exp::star(x),
            }
        }
    };
    match rng.gen_range(0..10) {
        0 => Exp::plus(inner.clone(), inner),
        1 => Exp::plus(inner, Exp::Zero),
        2 => Exp::plus(Exp::Zero, inner),
        3 => Exp::comp(Exp::One, inner),
        4 => Exp::comp(inner, Exp::One),
        _ => inner,
    }
}

/// Every word over `alphabet` of length at most `max_len`, shortest first
/// and in alphabet order within a length.
pub fn all_words(alphabet: &Alphabet<char>, max_len: usize) -> Vec<Vec<char>> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Vec<char>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&a| {
                    let mut next = w.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub type WordSet = BTreeSet<Vec<char>>;

fn concat(x: &WordSet, y: &WordSet, max_len: usize) -> WordSet {
    let mut out = WordSet::new();
    for u in x {
        for v in y {
            if u.len() + v.len() <= max_len {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.insert(w);
            }
        }
    }
    out
}

/// The words of length at most `max_len` in the language of `e`, computed
/// from the set-theoretic meaning of each constructor without derivatives.
pub fn words(e: &Exp<char>, max_len: usize) -> WordSet {
    match e {
        Exp::Zero => WordSet::new(),
        Exp::One => WordSet::from([vec![]]),
        Exp::Char(a) if max_len >= 1 => WordSet::from([vec![*a]]),
        Exp::Char(_) => WordSet::new(),
        Exp::Plus(l, r) => {
            let mut out = words(l, max_len);
            out.extend(words(r, max_len));
            out
        }
        Exp::Comp(l, r) => concat(&words(l, max_len), &words(r, max_len), max_len),
        Exp::Star(x) => {
            let base = words(x, max_len);
            let mut acc = WordSet::from([vec![]]);
            loop {
                let mut next = acc.clone();
                next.extend(concat(&acc, &base, max_len));
                if next.len() == acc.len() {
                    return acc;
                }
                acc = next;
            }
        }
    }
}

/// Shortest (then alphabet-first) word of length at most `max_len` on
/// which the two languages differ.
pub fn first_difference(
    e1: &Exp<char>,
    e2: &Exp<char>,
    alphabet: &Alphabet<char>,
    max_len: usize,
) -> Option<Vec<char>> {
    let (x, y) = (words(e1, max_len), words(e2, max_len));
    all_words(alphabet, max_len)
        .into_iter()
        .find(|w| x.contains(w) != y.contains(w))
}

/// Checks `text` against the DOT grammar subset:
///
/// ```text
/// graph : 'digraph' ID '{' stmt* '}'
/// stmt  : ID '=' ID ';'
///       | ID attrs? ';'
///       | ID '->' ID attrs? ';'
/// attrs : '[' (ID '=' ID (',' ID '=' ID)*)? ']'
/// ID    : [A-Za-z_][A-Za-z0-9_]* | number | '"' ( '\"' | '\\' | [^"\\] )* '"'
/// ```
///
/// Returns the declared nodes and the edges, each with its attributes.
pub fn parse_dot(text: &str) -> Result<DotGraph, String> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let next = |pos: &mut usize| -> Result<Token, String> {
        let t = tokens.get(*pos).cloned().ok_or("unexpected end of input")?;
        *pos += 1;
        Ok(t)
    };
    let expect = |pos: &mut usize, want: Token| -> Result<(), String> {
        let got = next(pos)?;
        if got == want {
            Ok(())
        } else {
            Err(format!("expected {want:?}, found {got:?}"))
        }
    };
    let id = |pos: &mut usize| -> Result<String, String> {
        match next(pos)? {
            Token::Id(s) => Ok(s),
            other => Err(format!("expected identifier, found {other:?}")),
        }
    };

    expect(&mut pos, Token::Id("digraph".into()))?;
    id(&mut pos)?;
    expect(&mut pos, Token::Open)?;
    let mut graph = DotGraph::default();
    loop {
        let first = match next(&mut pos)? {
            Token::Close => break,
            Token::Id(s) => s,
            other => return Err(format!("expected statement, found {other:?}")),
        };
        match next(&mut pos)? {
            Token::Equals => {
                id(&mut pos)?;
                expect(&mut pos, Token::Semi)?;
            }
            Token::Semi => {
                graph.nodes.push((first, Vec::new()));
            }
            Token::OpenAttr => {
                let attrs = attr_list(&tokens, &mut pos)?;
                expect(&mut pos, Token::Semi)?;
                graph.nodes.push((first, attrs));
            }
            Token::Arrow => {
                let target = id(&mut pos)?;
                let attrs = match next(&mut pos)? {
                    Token::Semi => Vec::new(),
                    Token::OpenAttr => {
                        let attrs = attr_list(&tokens, &mut pos)?;
                        expect(&mut pos, Token::Semi)?;
                        attrs
                    }
                    other => return Err(format!("expected ';' or '[', found {other:?}")),
                };
                graph.edges.push((first, target, attrs));
            }
            other => return Err(format!("unexpected {other:?}")),
        }
    }
    if pos != tokens.len() {
        return Err("trailing input after graph".into());
    }
    Ok(graph)
}

pub type Attrs = Vec<(String, String)>;

#[derive(Debug, Default)]
pub struct DotGraph {
    pub nodes: Vec<(String, Attrs)>,
    pub edges: Vec<(String, String, Attrs)>,
}

impl DotGraph {
    pub fn attr<'a>(attrs: &'a [(String, String)], key: &str) -> Option<&'a str> {
        attrs
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn attr_list(tokens: &[Token], pos: &mut usize) -> Result<Attrs, String> {
    let mut attrs = Vec::new();
    loop {
        let key = match tokens.get(*pos) {
            Some(Token::CloseAttr) if attrs.is_empty() => {
                *pos += 1;
                return Ok(attrs);
            }
            Some(Token::Id(key)) => key.clone(),
            other => return Err(format!("expected attribute, found {other:?}")),
        };
        if tokens.get(*pos + 1) != Some(&Token::Equals) {
            return Err("expected '=' in attribute".into());
        }
        let value = match tokens.get(*pos + 2) {
            Some(Token::Id(value)) => value.clone(),
            other => return Err(format!("expected attribute value, found {other:?}")),
        };
        *pos += 3;
        attrs.push((key, value));
        match tokens.get(*pos) {
            Some(Token::Comma) => *pos += 1,
            Some(Token::CloseAttr) => {
                *pos += 1;
                return Ok(attrs);
            }
            other => return Err(format!("expected ',' or ']', found {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Id(String),
    Open,
    Close,
    OpenAttr,
    CloseAttr,
    Equals,
    Semi,
    Comma,
    Arrow,
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        let token = match c {
            c if c.is_whitespace() => continue,
            '{' => Token::Open,
            '}' => Token::Close,
            '[' => Token::OpenAttr,
            ']' => Token::CloseAttr,
            '=' => Token::Equals,
            ';' => Token::Semi,
            ',' => Token::Comma,
            '-' if chars.peek() == Some(&'>') => {
                chars.next();
                Token::Arrow
            }
            '"' => {
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => return Err("unterminated string".into()),
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some(escaped @ ('"' | '\\')) => s.push(escaped),
                            Some('n') => s.push('\n'),
                            Some(other) => {
                                s.push('\\');
                                s.push(other);
                            }
                            None => return Err("unterminated escape".into()),
                        },
                        Some(other) => s.push(other),
                    }
                }
                Token::Id(s)
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut s = String::from(c);
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' || d == '.' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                Token::Id(s)
            }
            other => return Err(format!("unexpected character {other:?}")),
        };
        tokens.push(token);
    }
    Ok(tokens)
}
