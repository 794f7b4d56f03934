//! Bisimilarity of behaviors.
//!
//! Full bisimilarity is the conjunction of the depth-indexed relations
//! [`bisimilar_k`] over every `k`, so it can only be refuted, never
//! confirmed, by looking at opaque [`Lang`] values. This module offers:
//!
//! * `bisimilar_k` and executable depth-`k` forms of the relation laws,
//!   the congruence laws, and the algebra/coalgebra homomorphism
//!   predicates;
//! * [`decide_equiv`], a terminating decision procedure for behaviors that
//!   are given syntactically as expressions.

mod equiv;
mod union_find;

use std::fmt;

use rustc_hash::FxHashMap as HashMap;

use thiserror::Error;

use crate::language::{self, Lang};
use crate::semantics::{delta, eps};
use crate::syntax::{Alphabet, Exp, Symbol};

pub use equiv::{decide_equiv, decide_equiv_with_cap, EquivError, EquivResult, DEFAULT_PAIR_CAP};

/// Depth-`k` bisimilarity: `k = 0` relates everything; otherwise the
/// acceptance bits agree and every pair of same-symbol derivatives is
/// related at depth `k - 1`.
///
/// Two languages are related at depth `k` exactly when they agree on all
/// words shorter than `k`.
pub fn bisimilar_k<S: Symbol>(
    k: usize,
    l1: &Lang<S>,
    l2: &Lang<S>,
    alphabet: &Alphabet<S>,
) -> bool {
    Unroll::default().related(k, l1, l2, alphabet)
}

/// The recursion of [`bisimilar_k`], remembering pairs already shown
/// related. Behaviors are hash-consed, so the same pair of objects recurs
/// along different words.
struct Unroll<S> {
    // pair of behavior addresses -> greatest depth shown related
    proven: HashMap<(usize, usize), usize>,
    // every behavior visited, so that addresses in `proven` stay valid
    // and cached derivatives stay reachable
    held: Vec<Lang<S>>,
}

impl<S> Default for Unroll<S> {
    fn default() -> Self {
        Unroll {
            proven: HashMap::default(),
            held: Vec::new(),
        }
    }
}

impl<S: Symbol> Unroll<S> {
    fn related(&mut self, k: usize, l1: &Lang<S>, l2: &Lang<S>, alphabet: &Alphabet<S>) -> bool {
        if k == 0 {
            return true;
        }
        if l1.eps() != l2.eps() {
            return false;
        }
        let key = (l1.addr(), l2.addr());
        if self.proven.get(&key).is_some_and(|&depth| depth >= k) {
            return true;
        }
        for a in alphabet {
            let (d1, d2) = (l1.delta(a), l2.delta(a));
            // derivatives are cached only while alive; keeping them lets
            // sibling subtrees reuse shared sub-derivatives
            self.held.push(d1.clone());
            self.held.push(d2.clone());
            if !self.related(k - 1, &d1, &d2, alphabet) {
                return false;
            }
        }
        self.proven.insert(key, k);
        true
    }
}

pub fn check_reflexive<S: Symbol>(k: usize, l: &Lang<S>, alphabet: &Alphabet<S>) -> bool {
    bisimilar_k(k, l, l, alphabet)
}

pub fn check_symmetric<S: Symbol>(
    k: usize,
    l1: &Lang<S>,
    l2: &Lang<S>,
    alphabet: &Alphabet<S>,
) -> bool {
    !bisimilar_k(k, l1, l2, alphabet) || bisimilar_k(k, l2, l1, alphabet)
}

/// Transitivity at a single, matched depth.
pub fn check_transitive<S: Symbol>(
    k: usize,
    l1: &Lang<S>,
    l2: &Lang<S>,
    l3: &Lang<S>,
    alphabet: &Alphabet<S>,
) -> bool {
    !(bisimilar_k(k, l1, l2, alphabet) && bisimilar_k(k, l2, l3, alphabet))
        || bisimilar_k(k, l1, l3, alphabet)
}

pub fn check_plus_congruence<S: Symbol>(
    k: usize,
    l1a: &Lang<S>,
    l1b: &Lang<S>,
    l2a: &Lang<S>,
    l2b: &Lang<S>,
    alphabet: &Alphabet<S>,
) -> bool {
    let premise = bisimilar_k(k, l1a, l1b, alphabet) && bisimilar_k(k, l2a, l2b, alphabet);
    !premise
        || bisimilar_k(
            k,
            &language::plus(l1a.clone(), l2a.clone()),
            &language::plus(l1b.clone(), l2b.clone()),
            alphabet,
        )
}

/// Premises and conclusion are both checked at depth `k`. Unlike the
/// union and star cases this is validated empirically rather than by
/// construction: a word shorter than `k` only splits into a prefix and a
/// suffix that are themselves shorter than `k`.
pub fn check_comp_congruence<S: Symbol>(
    k: usize,
    l1a: &Lang<S>,
    l1b: &Lang<S>,
    l2a: &Lang<S>,
    l2b: &Lang<S>,
    alphabet: &Alphabet<S>,
) -> bool {
    let premise = bisimilar_k(k, l1a, l1b, alphabet) && bisimilar_k(k, l2a, l2b, alphabet);
    !premise
        || bisimilar_k(
            k,
            &language::comp(l1a.clone(), l2a.clone()),
            &language::comp(l1b.clone(), l2b.clone()),
            alphabet,
        )
}

pub fn check_star_congruence<S: Symbol>(
    k: usize,
    l1: &Lang<S>,
    l2: &Lang<S>,
    alphabet: &Alphabet<S>,
) -> bool {
    !bisimilar_k(k, l1, l2, alphabet)
        || bisimilar_k(
            k,
            &language::star(l1.clone()),
            &language::star(l2.clone()),
            alphabet,
        )
}

/// Does `f` commute with the constructor at the root of `e`, up to
/// depth-`k` bisimilarity? `f(Plus(x, y))` must be related to
/// `plus(f(x), f(y))`, and likewise for every other constructor.
pub fn is_algebra_homomorphism_at<S, F>(f: F, e: &Exp<S>, k: usize, alphabet: &Alphabet<S>) -> bool
where
    S: Symbol,
    F: Fn(&Exp<S>) -> Lang<S>,
{
    let expected = match e {
        Exp::Zero => language::zero(),
        Exp::One => language::one(),
        Exp::Char(a) => language::singleton(a.clone()),
        Exp::Plus(l, r) => language::plus(f(l), f(r)),
        Exp::Comp(l, r) => language::comp(f(l), f(r)),
        Exp::Star(inner) => language::star(f(inner)),
    };
    bisimilar_k(k, &f(e), &expected, alphabet)
}

/// Does `f` respect the syntactic coalgebra at `e`: `f(e).eps == eps(e)`
/// and `f(e).delta(a)` related at depth `k` to `f(delta(e, a))` for every
/// symbol.
pub fn is_coalgebra_homomorphism_at<S, F>(
    f: F,
    e: &Exp<S>,
    k: usize,
    alphabet: &Alphabet<S>,
) -> bool
where
    S: Symbol,
    F: Fn(&Exp<S>) -> Lang<S>,
{
    let image = f(e);
    image.eps() == eps(e)
        && alphabet
            .iter()
            .all(|a| bisimilar_k(k, &image.delta(a), &f(&delta(e, a)), alphabet))
}

/// Which of the two maps handed to [`agree_as_coalgebra_homomorphisms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::First => "first",
            Side::Second => "second",
        })
    }
}

/// The homomorphism precondition failed, so no verdict was computed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{side} map is not a coalgebra homomorphism at {expr:?} (checked to depth {depth})")]
pub struct HomomorphismViolation<S: fmt::Debug> {
    pub side: Side,
    pub expr: Exp<S>,
    pub depth: usize,
}

/// Any two coalgebra homomorphisms out of expressions agree: returns
/// `bisimilar_k(k, f(e), g(e))` after confirming the precondition.
///
/// The precondition is checked exactly as far as a depth-`k` conclusion
/// needs it: for every raw derivative `d` of `e` reached in `j < k` steps,
/// both maps must pass [`is_coalgebra_homomorphism_at`] at `d` with depth
/// `k - j - 1`. A failure there is reported as an error, never as a
/// `false` verdict.
pub fn agree_as_coalgebra_homomorphisms<S, F, G>(
    f: F,
    g: G,
    e: &Exp<S>,
    k: usize,
    alphabet: &Alphabet<S>,
) -> Result<bool, HomomorphismViolation<S>>
where
    S: Symbol,
    F: Fn(&Exp<S>) -> Lang<S>,
    G: Fn(&Exp<S>) -> Lang<S>,
{
    let mut level = vec![e.clone()];
    for j in 0..k {
        let depth = k - j - 1;
        for d in &level {
            for (side, ok) in [
                (
                    Side::First,
                    is_coalgebra_homomorphism_at(&f, d, depth, alphabet),
                ),
                (
                    Side::Second,
                    is_coalgebra_homomorphism_at(&g, d, depth, alphabet),
                ),
            ] {
                if !ok {
                    return Err(HomomorphismViolation {
                        side,
                        expr: d.clone(),
                        depth,
                    });
                }
            }
        }
        if depth == 0 {
            break;
        }
        // no deduplication: raw derivatives are DAGs, hashing them walks trees
        level = level
            .iter()
            .flat_map(|d| alphabet.iter().map(move |a| delta(d, a)))
            .collect();
    }
    Ok(bisimilar_k(k, &f(e), &g(e), alphabet))
}
