use std::fmt;

use super::Exp;

// Binding strength, loosest first.
const SUM: u8 = 0;
const CAT: u8 = 1;
const STAR: u8 = 2;
const ATOM: u8 = 3;

fn binding<S>(e: &Exp<S>) -> u8 {
    match e {
        Exp::Plus(..) => SUM,
        Exp::Comp(..) => CAT,
        Exp::Star(_) => STAR,
        Exp::Zero | Exp::One | Exp::Char(_) => ATOM,
    }
}

fn write_at<S: fmt::Display>(e: &Exp<S>, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if binding(e) < min {
        f.write_str("(")?;
        write_at(e, SUM, f)?;
        return f.write_str(")");
    }
    match e {
        Exp::Zero => f.write_str("0"),
        Exp::One => f.write_str("1"),
        Exp::Char(a) => write!(f, "{a}"),
        Exp::Plus(l, r) => {
            write_at(l, CAT, f)?;
            f.write_str("+")?;
            write_at(r, SUM, f)
        }
        Exp::Comp(l, r) => {
            write_at(l, STAR, f)?;
            write_at(r, CAT, f)
        }
        Exp::Star(inner) => {
            write_at(inner, STAR, f)?;
            f.write_str("*")
        }
    }
}

/// Minimally parenthesized concrete syntax. Both binary operators are
/// printed right-associated, so a left-nested chain keeps its parentheses
/// and `parse(print(e)) == e` holds for every tree.
impl<S: fmt::Display> fmt::Display for Exp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, SUM, f)
    }
}

pub fn print<S: fmt::Display>(e: &Exp<S>) -> String {
    e.to_string()
}
