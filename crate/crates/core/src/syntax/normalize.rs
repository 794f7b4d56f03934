use std::sync::Arc;

use super::Exp;

/// Canonical form modulo associativity, commutativity and idempotence of
/// `+`, the unit and annihilator laws, and star collapse:
///
/// * sums are flattened, `0` operands dropped, the rest sorted by the
///   canonical order and deduplicated, then rebuilt right-nested;
/// * `0;x = x;0 = 0`, `1;x = x;1 = x`;
/// * `x** = x*`, `0* = 1* = 1`.
///
/// No distributivity or other Kleene-algebra rewriting is applied. The
/// result is a fixed point of `normalize`.
pub fn normalize<S: Clone + Ord>(e: &Exp<S>) -> Exp<S> {
    match e {
        Exp::Zero | Exp::One | Exp::Char(_) => e.clone(),
        Exp::Plus(..) => {
            let mut operands = Vec::new();
            collect_sum(e, &mut operands);
            operands.retain(|x| !matches!(x, Exp::Zero));
            operands.sort();
            operands.dedup();
            let mut operands = operands.into_iter().rev();
            match operands.next() {
                None => Exp::Zero,
                Some(last) => operands.fold(last, |acc, x| Exp::plus(x, acc)),
            }
        }
        Exp::Comp(l, r) => match (normalize(l), normalize(r)) {
            (Exp::Zero, _) | (_, Exp::Zero) => Exp::Zero,
            (Exp::One, x) | (x, Exp::One) => x,
            (x, y) => Exp::Comp(Arc::new(x), Arc::new(y)),
        },
        Exp::Star(inner) => match normalize(inner) {
            Exp::Zero | Exp::One => Exp::One,
            starred @ Exp::Star(_) => starred,
            x => Exp::Star(Arc::new(x)),
        },
    }
}

/// Pushes the normalized, non-sum summands of `e`.
fn collect_sum<S: Clone + Ord>(e: &Exp<S>, out: &mut Vec<Exp<S>>) {
    match e {
        Exp::Plus(l, r) => {
            collect_sum(l, out);
            collect_sum(r, out);
        }
        _ => match normalize(e) {
            // normalizing a star or product may expose a sum
            sum @ Exp::Plus(..) => collect_sum(&sum, out),
            x => out.push(x),
        },
    }
}
