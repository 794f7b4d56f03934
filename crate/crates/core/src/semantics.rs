//! The two ways of giving an expression a language.
//!
//! [`denotational`] interprets each constructor by the matching language
//! combinator. [`operational`] instead runs the expression as a state of
//! the syntactic automaton given by [`eps`] and [`delta`]. The two agree up
//! to bisimilarity on every expression; the `bisim` module checks this.
//!
//! Raw derivatives are never simplified, so as trees they grow
//! exponentially with the length of the word. They are built as DAGs
//! instead: every node created while deriving is hash-consed against the
//! nodes already present, and `eps` and `delta` are cached per node.

use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap as HashMap;

use crate::language::{self, Lang};
use crate::syntax::{normalize, Exp, Symbol};

fn addr<S>(e: &Exp<S>) -> usize {
    e as *const Exp<S> as usize
}

/// Structural interpretation into the language algebra.
pub fn denotational<S: Symbol>(e: &Exp<S>) -> Lang<S> {
    fn go<S: Symbol>(e: &Exp<S>, seen: &mut HashMap<usize, Lang<S>>) -> Lang<S> {
        if let Some(l) = seen.get(&addr(e)) {
            return l.clone();
        }
        let l = match e {
            Exp::Zero => language::zero(),
            Exp::One => language::one(),
            Exp::Char(a) => language::singleton(a.clone()),
            Exp::Plus(l, r) => language::plus(go(l, seen), go(r, seen)),
            Exp::Comp(l, r) => language::comp(go(l, seen), go(r, seen)),
            Exp::Star(inner) => language::star(go(inner, seen)),
        };
        seen.insert(addr(e), l.clone());
        l
    }
    go(e, &mut HashMap::default())
}

/// Does `e` accept the empty word.
pub fn eps<S>(e: &Exp<S>) -> bool {
    fn go<S>(e: &Exp<S>, seen: &mut HashMap<usize, bool>) -> bool {
        if let Some(&b) = seen.get(&addr(e)) {
            return b;
        }
        let b = match e {
            Exp::Zero | Exp::Char(_) => false,
            Exp::One | Exp::Star(_) => true,
            Exp::Plus(l, r) => go(l, seen) || go(r, seen),
            Exp::Comp(l, r) => go(l, seen) && go(r, seen),
        };
        seen.insert(addr(e), b);
        b
    }
    match e {
        // skip the cache where the answer is immediate
        Exp::Zero | Exp::Char(_) => false,
        Exp::One | Exp::Star(_) => true,
        _ => go(e, &mut HashMap::default()),
    }
}

/// Brzozowski derivative, unsimplified.
///
/// The product case keeps the guarded form
/// `Plus(Comp(delta(l), r), Comp(if eps(l) then One else Zero, delta(r)))`.
pub fn delta<S: Symbol>(e: &Exp<S>, a: &S) -> Exp<S> {
    let root = Arc::new(e.clone());
    let mut dag = Dag::seeded(&root);
    Exp::clone(&dag.derive(&root, a))
}

/// `normalize(delta(e, a))`, the transition of the finite derivative
/// automaton.
pub fn delta_norm<S: Symbol>(e: &Exp<S>, a: &S) -> Exp<S> {
    normalize(&delta(e, a))
}

/// Iterated raw derivative along a word.
pub fn delta_word<S: Symbol>(e: &Exp<S>, w: &[S]) -> Exp<S> {
    let mut cur = Arc::new(e.clone());
    let mut dag = Dag::seeded(&cur);
    for a in w {
        cur = dag.derive(&cur, a);
    }
    Exp::clone(&cur)
}

/// Iterated normalized derivative along a word.
pub fn delta_norm_word<S: Symbol>(e: &Exp<S>, w: &[S]) -> Exp<S> {
    w.iter().fold(normalize(e), |acc, a| delta_norm(&acc, a))
}

/// The expression run as a state of the syntactic automaton: acceptance is
/// `eps(e)`, the derivative at `a` is `operational(delta(e, a))`.
///
/// All behaviors unfolded from one call share a derivative DAG, so deep
/// observations stay proportional to the number of distinct subterms.
pub fn operational<S: Symbol>(e: &Exp<S>) -> Lang<S> {
    let root = Arc::new(e.clone());
    let dag = Dag::seeded(&root);
    let eps = dag.eps_of(&root);
    unfold_state(Arc::new(Mutex::new(dag)), root, eps)
}

fn unfold_state<S: Symbol>(dag: Arc<Mutex<Dag<S>>>, state: Arc<Exp<S>>, eps: bool) -> Lang<S> {
    Lang::unfold(eps, move |a| {
        let (next, next_eps) = {
            let mut dag = dag.lock().unwrap();
            let next = dag.derive(&state, a);
            let next_eps = dag.eps_of(&next);
            (next, next_eps)
        };
        unfold_state(Arc::clone(&dag), next, next_eps)
    })
}

/// Node identity for hash-consing: constructor plus operand addresses.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Key<S> {
    Zero,
    One,
    Char(S),
    Plus(usize, usize),
    Comp(usize, usize),
    Star(usize),
}

impl<S: Clone> Key<S> {
    fn of(e: &Exp<S>) -> Self {
        match e {
            Exp::Zero => Key::Zero,
            Exp::One => Key::One,
            Exp::Char(a) => Key::Char(a.clone()),
            Exp::Plus(l, r) => Key::Plus(addr(l), addr(r)),
            Exp::Comp(l, r) => Key::Comp(addr(l), addr(r)),
            Exp::Star(inner) => Key::Star(addr(inner)),
        }
    }
}

/// A growing DAG of expressions. Every node it has seen is kept alive,
/// which makes the address-keyed tables sound.
struct Dag<S> {
    canonical: HashMap<Key<S>, Arc<Exp<S>>>,
    eps: HashMap<usize, bool>,
    derivatives: HashMap<(usize, S), Arc<Exp<S>>>,
    // nodes reachable from the seed that lost the hash-consing race
    pinned: Vec<Arc<Exp<S>>>,
}

impl<S: Symbol> Dag<S> {
    fn seeded(root: &Arc<Exp<S>>) -> Self {
        let mut dag = Dag {
            canonical: HashMap::default(),
            eps: HashMap::default(),
            derivatives: HashMap::default(),
            pinned: Vec::new(),
        };
        dag.register(root);
        dag
    }

    /// Records `e` and everything below it; returns `eps(e)`.
    fn register(&mut self, e: &Arc<Exp<S>>) -> bool {
        if let Some(&b) = self.eps.get(&addr(e)) {
            return b;
        }
        let b = match &**e {
            Exp::Zero | Exp::Char(_) => false,
            Exp::One => true,
            Exp::Star(inner) => {
                self.register(inner);
                true
            }
            Exp::Plus(l, r) => {
                let (x, y) = (self.register(l), self.register(r));
                x || y
            }
            Exp::Comp(l, r) => {
                let (x, y) = (self.register(l), self.register(r));
                x && y
            }
        };
        self.eps.insert(addr(e), b);
        match self.canonical.entry(Key::of(e)) {
            std::collections::hash_map::Entry::Vacant(slot) => {
                slot.insert(Arc::clone(e));
            }
            std::collections::hash_map::Entry::Occupied(_) => self.pinned.push(Arc::clone(e)),
        }
        b
    }

    fn eps_of(&self, e: &Arc<Exp<S>>) -> bool {
        self.eps[&addr(e)]
    }

    /// Hash-consed node construction; operands must already be known.
    fn make(&mut self, e: Exp<S>) -> Arc<Exp<S>> {
        let key = Key::of(&e);
        if let Some(existing) = self.canonical.get(&key) {
            return Arc::clone(existing);
        }
        let b = match &e {
            Exp::Zero | Exp::Char(_) => false,
            Exp::One | Exp::Star(_) => true,
            Exp::Plus(l, r) => self.eps_of(l) || self.eps_of(r),
            Exp::Comp(l, r) => self.eps_of(l) && self.eps_of(r),
        };
        let node = Arc::new(e);
        self.eps.insert(addr(&node), b);
        self.canonical.insert(key, Arc::clone(&node));
        node
    }

    fn derive(&mut self, e: &Arc<Exp<S>>, a: &S) -> Arc<Exp<S>> {
        let memo_key = (addr(e), a.clone());
        if let Some(d) = self.derivatives.get(&memo_key) {
            return Arc::clone(d);
        }
        let d = match &**e {
            Exp::Zero | Exp::One => self.make(Exp::Zero),
            Exp::Char(b) => self.make(if a == b { Exp::One } else { Exp::Zero }),
            Exp::Plus(l, r) => {
                let (dl, dr) = (self.derive(l, a), self.derive(r, a));
                self.make(Exp::Plus(dl, dr))
            }
            Exp::Comp(l, r) => {
                let dl = self.derive(l, a);
                let left = self.make(Exp::Comp(dl, Arc::clone(r)));
                let guard = self.make(if self.eps_of(l) { Exp::One } else { Exp::Zero });
                let dr = self.derive(r, a);
                let right = self.make(Exp::Comp(guard, dr));
                self.make(Exp::Plus(left, right))
            }
            Exp::Star(inner) => {
                let di = self.derive(inner, a);
                self.make(Exp::Comp(di, Arc::clone(e)))
            }
        };
        self.derivatives.insert(memo_key, Arc::clone(&d));
        d
    }
}
