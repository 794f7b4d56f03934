//! The derivative automaton of an expression, built explicitly.
//!
//! States are normalized expressions, reached from `normalize(root)` by
//! normalized derivatives. Normalization keeps the state set finite.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::semantics::{delta_norm, eps};
use crate::syntax::{normalize, Alphabet, Exp, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExploreError {
    #[error("more than {cap} states discovered ({discovered} so far)")]
    CapExceeded { cap: usize, discovered: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DfaError {
    #[error("symbol {symbol} at position {position} is not in the alphabet")]
    UnknownSymbol { symbol: String, position: usize },
}

/// A complete deterministic automaton over normalized expressions.
///
/// State 0 is the start state. Numbering follows breadth-first discovery
/// with successors expanded in alphabet order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa<S> {
    states: Vec<Exp<S>>,
    // row-major: transitions[state * alphabet.len() + symbol index]
    transitions: Vec<usize>,
    accepting: BTreeSet<usize>,
    alphabet: Alphabet<S>,
}

impl<S: Symbol> Dfa<S> {
    pub fn states(&self) -> &[Exp<S>] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn alphabet(&self) -> &Alphabet<S> {
        &self.alphabet
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting.contains(&state)
    }

    /// Successor of `state` on the symbol at `index` in the alphabet.
    pub fn next_by_index(&self, state: usize, index: usize) -> usize {
        self.transitions[state * self.alphabet.len() + index]
    }

    pub fn next(&self, state: usize, a: &S) -> Option<usize> {
        self.alphabet
            .index_of(a)
            .map(|i| self.next_by_index(state, i))
    }

    /// Runs `w` from state 0.
    pub fn run(&self, w: &[S]) -> Result<bool, DfaError> {
        let mut state = 0;
        for (position, a) in w.iter().enumerate() {
            state = self.next(state, a).ok_or_else(|| DfaError::UnknownSymbol {
                symbol: format!("{a:?}"),
                position,
            })?;
        }
        Ok(self.is_accepting(state))
    }
}

/// Breadth-first construction from `normalize(e)`; fails once more than
/// `cap` states have been discovered.
pub fn explore<S: Symbol>(
    e: &Exp<S>,
    alphabet: &Alphabet<S>,
    cap: usize,
) -> Result<Dfa<S>, ExploreError> {
    let root = normalize(e);
    let mut ids = HashMap::from([(root.clone(), 0)]);
    let mut states = vec![root];
    let mut transitions = Vec::new();
    let mut queue = VecDeque::from([0]);
    if cap == 0 {
        return Err(ExploreError::CapExceeded { cap, discovered: 1 });
    }

    while let Some(state) = queue.pop_front() {
        for a in alphabet {
            let target = delta_norm(&states[state], a);
            let id = match ids.get(&target) {
                Some(&id) => id,
                None => {
                    let id = states.len();
                    if id >= cap {
                        return Err(ExploreError::CapExceeded {
                            cap,
                            discovered: id + 1,
                        });
                    }
                    ids.insert(target.clone(), id);
                    states.push(target);
                    queue.push_back(id);
                    id
                }
            };
            transitions.push(id);
        }
    }

    let accepting = states
        .iter()
        .enumerate()
        .filter(|(_, s)| eps(s))
        .map(|(i, _)| i)
        .collect();
    Ok(Dfa {
        states,
        transitions,
        accepting,
        alphabet: alphabet.clone(),
    })
}

/// Runs `w` through `d`; see [`Dfa::run`].
pub fn run_dfa<S: Symbol>(d: &Dfa<S>, w: &[S]) -> Result<bool, DfaError> {
    d.run(w)
}

fn escape(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    for c in label.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out
}

/// Graphviz rendering. Nodes are `s0`..`sN` labeled with the printed
/// state; accepting states are double circles; an invisible `start` point
/// has the single unlabeled edge into `s0`. `root_label` becomes the graph
/// label.
pub fn export_dot<S: Symbol + fmt::Display>(d: &Dfa<S>, root_label: &str) -> String {
    let mut out = String::new();
    // writing into a String cannot fail
    let _ = writeln!(out, "digraph dfa {{");
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  label=\"{}\";", escape(root_label));
    let _ = writeln!(out, "  labelloc=t;");
    let _ = writeln!(out, "  start [shape=point, label=\"\"];");
    for (i, state) in d.states.iter().enumerate() {
        let shape = if d.is_accepting(i) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(
            out,
            "  s{i} [label=\"{}\", shape={shape}];",
            escape(&state.to_string())
        );
    }
    let _ = writeln!(out, "  start -> s0;");
    for i in 0..d.len() {
        for (index, a) in d.alphabet.iter().enumerate() {
            let _ = writeln!(
                out,
                "  s{i} -> s{} [label=\"{}\"];",
                d.next_by_index(i, index),
                escape(&a.to_string())
            );
        }
    }
    out.push_str("}\n");
    out
}
