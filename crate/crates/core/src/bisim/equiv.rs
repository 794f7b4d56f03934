use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use super::union_find::UnionFind;
use crate::semantics::{delta_norm, eps};
use crate::syntax::{normalize, Alphabet, Exp, Symbol, Word};

/// Pair budget used by [`decide_equiv`].
pub const DEFAULT_PAIR_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivResult<S> {
    Equivalent,
    /// `witness` is in exactly one of the two languages, and no shorter
    /// word is.
    Distinguished {
        witness: Word<S>,
    },
}

impl<S> EquivResult<S> {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivResult::Equivalent)
    }

    pub fn witness(&self) -> Option<&Word<S>> {
        match self {
            EquivResult::Equivalent => None,
            EquivResult::Distinguished { witness } => Some(witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("gave up after relating {explored} state pairs (cap {cap})")]
    BudgetExceeded { explored: usize, cap: usize },
}

/// Decides language equivalence with the default pair budget.
pub fn decide_equiv<S: Symbol>(
    e1: &Exp<S>,
    e2: &Exp<S>,
    alphabet: &Alphabet<S>,
) -> Result<EquivResult<S>, EquivError> {
    decide_equiv_with_cap(e1, e2, alphabet, DEFAULT_PAIR_CAP)
}

/// Hopcroft–Karp over the normalized derivative automata of `e1` and `e2`.
///
/// Pairs of derivatives are explored breadth first. A pair whose states
/// are already in the same union-find class is skipped, since it follows
/// from pairs already queued by symmetry and transitivity. The first pair
/// that disagrees on acceptance yields the witness; breadth-first order
/// makes it a shortest distinguishing word.
///
/// More than `cap` related pairs is reported as [`EquivError`], never as
/// a verdict.
pub fn decide_equiv_with_cap<S: Symbol>(
    e1: &Exp<S>,
    e2: &Exp<S>,
    alphabet: &Alphabet<S>,
    cap: usize,
) -> Result<EquivResult<S>, EquivError> {
    let mut states = States::default();
    let x0 = states.intern(normalize(e1));
    let y0 = states.intern(normalize(e2));
    if states.accepting[x0] != states.accepting[y0] {
        return Ok(EquivResult::Distinguished {
            witness: Word::empty(),
        });
    }

    let mut explored = 1;
    if explored > cap {
        return Err(EquivError::BudgetExceeded { explored, cap });
    }
    states.classes.union(x0, y0);
    let mut queue = VecDeque::from([(x0, y0, Word::empty())]);

    while let Some((x, y, word)) = queue.pop_front() {
        for a in alphabet {
            let x1 = states.step(x, a);
            let y1 = states.step(y, a);
            if states.classes.find(x1) == states.classes.find(y1) {
                continue;
            }
            let next = word.pushed(a.clone());
            if states.accepting[x1] != states.accepting[y1] {
                return Ok(EquivResult::Distinguished { witness: next });
            }
            explored += 1;
            if explored > cap {
                return Err(EquivError::BudgetExceeded { explored, cap });
            }
            states.classes.union(x1, y1);
            queue.push_back((x1, y1, next));
        }
    }
    Ok(EquivResult::Equivalent)
}

/// Normalized expressions from both automata, numbered on first sight.
struct States<S> {
    ids: HashMap<Exp<S>, usize>,
    exps: Vec<Exp<S>>,
    accepting: Vec<bool>,
    successors: HashMap<(usize, S), usize>,
    classes: UnionFind,
}

impl<S> Default for States<S> {
    fn default() -> Self {
        States {
            ids: HashMap::new(),
            exps: Vec::new(),
            accepting: Vec::new(),
            successors: HashMap::new(),
            classes: UnionFind::default(),
        }
    }
}

impl<S: Symbol> States<S> {
    fn intern(&mut self, e: Exp<S>) -> usize {
        match self.ids.entry(e) {
            Entry::Occupied(slot) => *slot.get(),
            Entry::Vacant(slot) => {
                let id = self.classes.push();
                self.accepting.push(eps(slot.key()));
                self.exps.push(slot.key().clone());
                slot.insert(id);
                id
            }
        }
    }

    fn step(&mut self, state: usize, a: &S) -> usize {
        if let Some(&next) = self.successors.get(&(state, a.clone())) {
            return next;
        }
        let next = self.intern(delta_norm(&self.exps[state], a));
        self.successors.insert((state, a.clone()), next);
        next
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn sigma() -> Alphabet<char> {
        Alphabet::from_text("ab").unwrap()
    }

    fn decide(x: &str, y: &str) -> EquivResult<char> {
        decide_equiv(&parse(x).unwrap(), &parse(y).unwrap(), &sigma()).unwrap()
    }

    fn witness(x: &str, y: &str) -> String {
        decide(x, y).witness().expect("distinguished").to_string()
    }

    #[test]
    fn star_of_sum_equals_star_of_products() {
        assert!(decide("(a+b)*", "(a*b*)*").is_equivalent());
    }

    #[test]
    fn identical_expressions() {
        for text in ["0", "1", "a", "(ab+b)*a", "a**"] {
            assert!(decide(text, text).is_equivalent(), "{text}");
        }
    }

    #[test]
    fn empty_word_witness() {
        assert_eq!(witness("a*", "aa*"), "ε");
    }

    #[test]
    fn witnesses_are_shortest() {
        assert_eq!(witness("a", "b"), "a");
        assert_eq!(witness("a*", "1+a+aa"), "aaa");
        assert_eq!(witness("(a+b)*", "(a+b)*a+1"), "b");
        assert_eq!(witness("ab", "ba"), "ab");
    }

    #[test]
    fn classic_identities() {
        assert!(decide("(ab)*a", "a(ba)*").is_equivalent());
        assert!(decide("a*a*", "a*").is_equivalent());
        assert!(decide("(a+b)*", "a*(ba*)*").is_equivalent());
        assert!(!decide("(a+b)*", "a*b*").is_equivalent());
    }

    #[test]
    fn budget_exhaustion_is_not_a_verdict() {
        let x = parse("(a+b)*a(a+b)(a+b)(a+b)").unwrap();
        let y = parse("(a+b)*b(a+b)(a+b)(a+b)").unwrap();
        let err = decide_equiv_with_cap(&x, &y, &sigma(), 2).unwrap_err();
        assert!(matches!(err, EquivError::BudgetExceeded { cap: 2, .. }));
        // same pair with room to spare
        assert!(decide_equiv_with_cap(&x, &y, &sigma(), 10_000).is_ok());
    }
}
