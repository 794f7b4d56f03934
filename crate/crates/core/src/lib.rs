//! Regular expressions with two semantics: a structural one into a lazy
//! language algebra, and an operational one driven by Brzozowski
//! derivatives.
//!
//! ```
//! use regeq::syntax::{parse, Alphabet};
//! use regeq::bisim::decide_equiv;
//!
//! let sigma = Alphabet::from_text("ab").unwrap();
//! let x = parse("(a+b)*").unwrap();
//! let y = parse("(a*b*)*").unwrap();
//! assert!(decide_equiv(&x, &y, &sigma).unwrap().is_equivalent());
//! ```

pub mod automaton;
pub mod bisim;
pub mod language;
pub mod semantics;
pub mod syntax;

pub use language::Lang;
pub use syntax::{Alphabet, Exp, Symbol, Word};
