//! Languages as behaviors.
//!
//! A [`Lang`] is observed through two things only: whether it contains the
//! empty word ([`Lang::eps`]) and its derivative with respect to a symbol
//! ([`Lang::delta`]). Derivatives are computed on demand, so a behavior may
//! have infinitely many states while every single observation terminates.
//!
//! The six combinators build nodes whose derivatives are exactly the
//! Brzozowski clauses; no algebraic simplification happens anywhere. Two
//! mechanisms keep repeated derivation tractable:
//!
//! * combinator nodes are hash-consed: building `plus(x, y)` while an
//!   identical node over the same `x` and `y` is alive returns that node;
//! * each node caches its derivative per symbol for as long as the
//!   derivative is alive elsewhere.
//!
//! Both tables hold weak references only. Strong edges run from a node to
//! its operands, never back, so no reference cycle can form.
//!
//! No set of words is ever materialized. Operations that range over symbols
//! ([`enumerate`], bisimilarity) take the alphabet explicitly.

use std::any::{Any, TypeId};
use std::cell::RefCell;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, Weak};

use rustc_hash::FxHashMap as HashMap;

use crate::syntax::{Alphabet, Symbol, Word};

type Step<S> = dyn Fn(&S) -> Lang<S> + Send + Sync;

enum Kind<S> {
    Zero,
    One,
    Singleton(S),
    Plus(Lang<S>, Lang<S>),
    Comp(Lang<S>, Lang<S>),
    Star(Lang<S>),
    Unfold(Box<Step<S>>),
}

struct Node<S> {
    eps: bool,
    kind: Kind<S>,
    memo: Mutex<HashMap<S, Weak<Node<S>>>>,
}

/// A language presented by its acceptance bit and derivatives.
///
/// Cloning is cheap; clones are the same behavior object.
pub struct Lang<S>(Arc<Node<S>>);

impl<S> Clone for Lang<S> {
    fn clone(&self) -> Self {
        Lang(Arc::clone(&self.0))
    }
}

impl<S> fmt::Debug for Lang<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.0.kind {
            Kind::Zero => "zero",
            Kind::One => "one",
            Kind::Singleton(_) => "singleton",
            Kind::Plus(..) => "plus",
            Kind::Comp(..) => "comp",
            Kind::Star(_) => "star",
            Kind::Unfold(_) => "unfold",
        };
        f.debug_struct("Lang")
            .field("kind", &kind)
            .field("eps", &self.0.eps)
            .finish_non_exhaustive()
    }
}

impl<S: Symbol> Lang<S> {
    /// Builds a behavior from its acceptance bit and a derivative function.
    ///
    /// `step` is not called here; it runs on the first `delta` at each
    /// symbol. Behaviors built this way are never shared with other calls.
    pub fn unfold<F>(eps: bool, step: F) -> Self
    where
        F: Fn(&S) -> Lang<S> + Send + Sync + 'static,
    {
        Lang(Arc::new(Node::new(eps, Kind::Unfold(Box::new(step)))))
    }

    pub fn eps(&self) -> bool {
        self.0.eps
    }

    /// The derivative at `a`. While the result is alive, every caller
    /// (on any thread) receives the same behavior object.
    pub fn delta(&self, a: &S) -> Lang<S> {
        if let Some(hit) = self.cached(a) {
            return hit;
        }
        // computed outside the lock: deriving observes other behaviors
        let fresh = match &self.0.kind {
            Kind::Zero | Kind::One => zero(),
            Kind::Singleton(b) => {
                if a == b {
                    one()
                } else {
                    zero()
                }
            }
            Kind::Plus(l1, l2) => plus(l1.delta(a), l2.delta(a)),
            Kind::Comp(l1, l2) => {
                let guard = if l1.eps() { one() } else { zero() };
                plus(comp(l1.delta(a), l2.clone()), comp(guard, l2.delta(a)))
            }
            Kind::Star(l) => comp(l.delta(a), star(l.clone())),
            Kind::Unfold(step) => step(a),
        };
        let mut memo = self.0.memo.lock().unwrap();
        if let Some(winner) = memo.get(a).and_then(Weak::upgrade) {
            return Lang(winner);
        }
        memo.insert(a.clone(), Arc::downgrade(&fresh.0));
        fresh
    }

    fn cached(&self, a: &S) -> Option<Lang<S>> {
        self.0
            .memo
            .lock()
            .unwrap()
            .get(a)
            .and_then(Weak::upgrade)
            .map(Lang)
    }

    /// Whether two handles point at the same behavior object.
    pub fn ptr_eq(&self, other: &Lang<S>) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn addr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }
}

impl<S> Node<S> {
    fn new(eps: bool, kind: Kind<S>) -> Self {
        Node {
            eps,
            kind,
            memo: Mutex::new(HashMap::default()),
        }
    }
}

/// Identity of a combinator node: its constructor and the addresses of its
/// operands. An address is only compared while the node holding it is
/// alive, and a live node keeps its operands alive.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Shape<S> {
    Zero,
    One,
    Singleton(S),
    Plus(usize, usize),
    Comp(usize, usize),
    Star(usize),
}

struct Interner<S> {
    table: HashMap<Shape<S>, Weak<Node<S>>>,
    purge_at: usize,
}

const MIN_PURGE: usize = 1 << 12;

impl<S: Symbol> Interner<S> {
    fn get_or_insert(&mut self, shape: Shape<S>, build: impl FnOnce() -> Node<S>) -> Lang<S> {
        if let Some(live) = self.table.get(&shape).and_then(Weak::upgrade) {
            return Lang(live);
        }
        if self.table.len() >= self.purge_at {
            self.table.retain(|_, node| node.strong_count() > 0);
            self.purge_at = (2 * self.table.len()).max(MIN_PURGE);
        }
        let node = Arc::new(build());
        self.table.insert(shape, Arc::downgrade(&node));
        Lang(node)
    }
}

type Registry = HashMap<TypeId, Arc<dyn Any + Send + Sync>>;

/// The process-wide interner for symbol type `S`.
fn interner<S: Symbol>() -> Arc<Mutex<Interner<S>>> {
    static REGISTRY: OnceLock<Mutex<Registry>> = OnceLock::new();
    thread_local! {
        // per-thread copies of the registry handles, to skip its lock
        static HANDLES: RefCell<Registry> = RefCell::default();
    }
    let entry = HANDLES.with(|handles| {
        let mut handles = handles.borrow_mut();
        let entry = handles.entry(TypeId::of::<S>()).or_insert_with(|| {
            let mut registry = REGISTRY.get_or_init(Default::default).lock().unwrap();
            let shared = registry.entry(TypeId::of::<S>()).or_insert_with(|| {
                Arc::new(Mutex::new(Interner::<S> {
                    table: HashMap::default(),
                    purge_at: MIN_PURGE,
                }))
            });
            Arc::clone(shared)
        });
        Arc::clone(entry)
    });
    entry
        .downcast::<Mutex<Interner<S>>>()
        .expect("registry entry keyed by its own type")
}

fn intern<S: Symbol>(shape: Shape<S>, eps: bool, kind: impl FnOnce() -> Kind<S>) -> Lang<S> {
    let interner = interner::<S>();
    let mut interner = interner.lock().unwrap();
    interner.get_or_insert(shape, || Node::new(eps, kind()))
}

/// The language with no words.
pub fn zero<S: Symbol>() -> Lang<S> {
    intern(Shape::Zero, false, || Kind::Zero)
}

/// The language containing only the empty word.
pub fn one<S: Symbol>() -> Lang<S> {
    intern(Shape::One, true, || Kind::One)
}

/// The language containing only the one-symbol word `a`.
pub fn singleton<S: Symbol>(a: S) -> Lang<S> {
    intern(Shape::Singleton(a.clone()), false, || Kind::Singleton(a))
}

/// Union.
pub fn plus<S: Symbol>(l1: Lang<S>, l2: Lang<S>) -> Lang<S> {
    let eps = l1.eps() || l2.eps();
    intern(Shape::Plus(l1.addr(), l2.addr()), eps, || {
        Kind::Plus(l1, l2)
    })
}

/// Concatenation, with the derivative
/// `(L1;L2)_a = L1_a;L2 + (if eps(L1) then 1 else 0);L2_a`.
pub fn comp<S: Symbol>(l1: Lang<S>, l2: Lang<S>) -> Lang<S> {
    let eps = l1.eps() && l2.eps();
    intern(Shape::Comp(l1.addr(), l2.addr()), eps, || {
        Kind::Comp(l1, l2)
    })
}

/// Kleene star: `(L*)_a = L_a;L*`.
pub fn star<S: Symbol>(l: Lang<S>) -> Lang<S> {
    intern(Shape::Star(l.addr()), true, || Kind::Star(l))
}

/// Follows `delta` along `w`, then reads `eps`.
pub fn member<S: Symbol>(l: &Lang<S>, w: &[S]) -> bool {
    let mut cur = l.clone();
    for a in w {
        cur = cur.delta(a);
    }
    cur.eps()
}

/// Every member of `l` of length at most `max_len`, shortest first and
/// lexicographically (in alphabet order) within a length.
pub fn enumerate<S: Symbol>(l: &Lang<S>, alphabet: &Alphabet<S>, max_len: usize) -> Vec<Word<S>> {
    let mut found = Vec::new();
    let mut layer = vec![(Word::empty(), l.clone())];
    for len in 0..=max_len {
        found.extend(
            layer
                .iter()
                .filter(|(_, state)| state.eps())
                .map(|(w, _)| w.clone()),
        );
        if len == max_len {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|(w, state)| {
                alphabet
                    .iter()
                    .map(move |a| (w.pushed(a.clone()), state.delta(a)))
            })
            .collect();
    }
    found
}
