//! Regular-expression syntax: the expression tree, words over an alphabet,
//! the concrete grammar (parser and printer) and the canonical normal form.
//!
//! Expressions are immutable trees with reference-counted children, so
//! cloning a subterm is cheap and derivatives can share structure with the
//! expression they were taken from.
//!
//! The derived [`Ord`] on [`Exp`] is the canonical order used by
//! normalization: constructors rank `Zero < One < Char < Plus < Comp < Star`,
//! ties are broken lexicographically on the children (and on the symbol for
//! `Char`).

mod normalize;
mod parser;
mod printer;

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::ops::Deref;
use std::sync::Arc;

use thiserror::Error;

pub use normalize::normalize;
pub use parser::{parse, ParseError};
pub use printer::print;

/// An alphabet element.
///
/// Anything with decidable equality, a total order and a hash qualifies.
/// The `Send + Sync` bounds let behaviors built over the symbol type be
/// shared across threads.
pub trait Symbol: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync + 'static {}

impl<T> Symbol for T where T: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync + 'static {}

/// Regular-expression abstract syntax.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exp<S> {
    /// The empty language.
    Zero,
    /// The language containing only the empty word.
    One,
    Char(S),
    Plus(Arc<Exp<S>>, Arc<Exp<S>>),
    Comp(Arc<Exp<S>>, Arc<Exp<S>>),
    Star(Arc<Exp<S>>),
}

impl<S> Exp<S> {
    pub fn plus(left: Exp<S>, right: Exp<S>) -> Self {
        Exp::Plus(Arc::new(left), Arc::new(right))
    }

    pub fn comp(left: Exp<S>, right: Exp<S>) -> Self {
        Exp::Comp(Arc::new(left), Arc::new(right))
    }

    pub fn star(inner: Exp<S>) -> Self {
        Exp::Star(Arc::new(inner))
    }

    /// Number of constructor nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Exp::Zero | Exp::One | Exp::Char(_) => 1,
            Exp::Plus(l, r) | Exp::Comp(l, r) => 1 + l.size() + r.size(),
            Exp::Star(e) => 1 + e.size(),
        }
    }
}

impl<S: Clone + Ord> Exp<S> {
    /// Distinct symbols occurring in the expression, in ascending order.
    pub fn symbols(&self) -> Vec<S> {
        fn walk<S: Clone>(e: &Exp<S>, out: &mut Vec<S>) {
            match e {
                Exp::Zero | Exp::One => {}
                Exp::Char(a) => out.push(a.clone()),
                Exp::Plus(l, r) | Exp::Comp(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                Exp::Star(inner) => walk(inner, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

/// Total order on expressions; `Equal` iff the trees are structurally equal.
pub fn compare<S: Ord>(e1: &Exp<S>, e2: &Exp<S>) -> Ordering {
    e1.cmp(e2)
}

/// A finite sequence of symbols. The empty word is a valid value.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word<S>(Vec<S>);

impl<S> Word<S> {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn into_vec(self) -> Vec<S> {
        self.0
    }

    /// The word extended by one symbol.
    pub fn pushed(&self, a: S) -> Self
    where
        S: Clone,
    {
        let mut symbols = self.0.clone();
        symbols.push(a);
        Word(symbols)
    }
}

impl<S> Deref for Word<S> {
    type Target = [S];

    fn deref(&self) -> &[S] {
        &self.0
    }
}

impl<S> From<Vec<S>> for Word<S> {
    fn from(symbols: Vec<S>) -> Self {
        Word(symbols)
    }
}

impl<S> FromIterator<S> for Word<S> {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Word<char> {
    /// Reads a word of single-character symbols. `""` and `"ε"` both denote
    /// the empty word.
    pub fn from_text(text: &str) -> Self {
        if text == "ε" {
            return Word::empty();
        }
        text.chars().collect()
    }
}

impl fmt::Display for Word<char> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("alphabet must contain at least one symbol")]
    Empty,
    #[error("alphabet lists symbol {0} more than once")]
    Duplicate(String),
}

/// A nonempty, duplicate-free, ordered list of symbols.
///
/// The order matters: successor expansion and word enumeration follow it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet<S>(Vec<S>);

impl<S: Symbol> Alphabet<S> {
    pub fn new(symbols: Vec<S>) -> Result<Self, AlphabetError> {
        if symbols.is_empty() {
            return Err(AlphabetError::Empty);
        }
        let mut seen = HashSet::with_capacity(symbols.len());
        for a in &symbols {
            if !seen.insert(a) {
                return Err(AlphabetError::Duplicate(format!("{a:?}")));
            }
        }
        Ok(Alphabet(symbols))
    }

    pub fn symbols(&self) -> &[S] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, a: &S) -> Option<usize> {
        self.0.iter().position(|b| b == a)
    }

    pub fn contains(&self, a: &S) -> bool {
        self.index_of(a).is_some()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.0.iter()
    }
}

impl Alphabet<char> {
    /// One symbol per character of `text`.
    pub fn from_text(text: &str) -> Result<Self, AlphabetError> {
        Alphabet::new(text.chars().collect())
    }
}

impl<'a, S> IntoIterator for &'a Alphabet<S> {
    type Item = &'a S;
    type IntoIter = std::slice::Iter<'a, S>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
