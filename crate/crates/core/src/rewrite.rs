//! Rewriting expressions to normal form.
//!
//! Three oriented rules, applied innermost-leftmost until none matches:
//!
//! ```text
//! R1: (x *1 y) *1 z  ->  x *1 (y *1 z)
//! R2: (x *2 y) *2 z  ->  x *2 (y *2 z)
//! R3: (x *2 y) *1 z  ->  x *2 (y *1 z) + x *1 (y *2 z) - (x *1 y) *2 z
//! ```
//!
//! Termination is guarded by an asserted measure, lexicographic in
//!
//! 1. the number of `*2` nodes lying inside left subtrees of `*1` nodes, and
//! 2. the total left weight (sum over product nodes of the leaf count of
//!    the left child).
//!
//! R1 and R2 strictly shrink the second component without growing the
//! first; each R3 summand strictly shrinks the first. Every rewrite step
//! checks the decrease and panics if it ever fails, so a run that completes
//! silently certifies its own termination argument.

use crate::expr::{Expr, ExprLinComb, NFLinComb, NFMonomial};
use crate::products::ProductOp;
use crate::rational::Rational;

/// Fully rewrites a combination of expressions; the result is supported on
/// normal-form monomials. Linear, idempotent, degree- and leaf-preserving.
pub fn normal_form(x: &ExprLinComb) -> NFLinComb {
    let mut out = NFLinComb::zero();
    for (e, c) in x.iter() {
        out.add_scaled(&rewrite_monomial(e), c);
    }
    out
}

/// Convenience wrapper for a single expression.
pub fn normal_form_expr(e: &Expr) -> NFLinComb {
    rewrite_monomial(e)
}

fn rewrite_monomial(e: &Expr) -> NFLinComb {
    let mut out = NFLinComb::zero();
    let mut work: Vec<(Expr, Rational)> = vec![(e.clone(), Rational::one())];
    while let Some((expr, coeff)) = work.pop() {
        match step(&expr) {
            None => {
                let nf = NFMonomial::try_new(expr)
                    .expect("rewriting terminated on a non-normal expression");
                out.add_term(nf, &coeff);
            }
            Some(summands) => {
                let before = measure(&expr);
                for (next, sign) in summands {
                    assert!(
                        measure(&next) < before,
                        "termination measure failed to decrease: {} -> {}",
                        expr.render(),
                        next.render()
                    );
                    work.push((next, &coeff * &sign));
                }
            }
        }
    }
    out
}

/// Rewrites the single innermost-leftmost redex, if any.
fn step(e: &Expr) -> Option<Vec<(Expr, Rational)>> {
    let Expr::Node { op, left, right } = e else { return None };
    if let Some(sub) = step(left) {
        return Some(
            sub.into_iter()
                .map(|(l, s)| (Expr::node(*op, l, (**right).clone()), s))
                .collect(),
        );
    }
    if let Some(sub) = step(right) {
        return Some(
            sub.into_iter()
                .map(|(r, s)| (Expr::node(*op, (**left).clone(), r), s))
                .collect(),
        );
    }
    let Expr::Node { op: inner_op, left: x, right: y } = &**left else { return None };
    let (x, y, z) = ((**x).clone(), (**y).clone(), (**right).clone());
    let one = Rational::one();
    match (inner_op, op) {
        (ProductOp::Star1, ProductOp::Star1) => Some(vec![(
            Expr::node(ProductOp::Star1, x, Expr::node(ProductOp::Star1, y, z)),
            one,
        )]),
        (ProductOp::Star2, ProductOp::Star2) => Some(vec![(
            Expr::node(ProductOp::Star2, x, Expr::node(ProductOp::Star2, y, z)),
            one,
        )]),
        (ProductOp::Star2, ProductOp::Star1) => Some(vec![
            (
                Expr::node(
                    ProductOp::Star2,
                    x.clone(),
                    Expr::node(ProductOp::Star1, y.clone(), z.clone()),
                ),
                one.clone(),
            ),
            (
                Expr::node(
                    ProductOp::Star1,
                    x.clone(),
                    Expr::node(ProductOp::Star2, y.clone(), z.clone()),
                ),
                one.clone(),
            ),
            (
                Expr::node(ProductOp::Star2, Expr::node(ProductOp::Star1, x, y), z),
                -one,
            ),
        ]),
        (ProductOp::Star1, ProductOp::Star2) => None,
    }
}

fn measure(e: &Expr) -> (u64, u64) {
    fn walk(e: &Expr) -> (u64, u64, u64, u64) {
        // (star2 count, leaves, bad pairs, left weight)
        match e {
            Expr::Gen(_) => (0, 1, 0, 0),
            Expr::Node { op, left, right } => {
                let (s2l, ll, bl, wl) = walk(left);
                let (s2r, lr, br, wr) = walk(right);
                let s2 = s2l + s2r + u64::from(*op == ProductOp::Star2);
                let bad = bl + br + if *op == ProductOp::Star1 { s2l } else { 0 };
                (s2, ll + lr, bad, wl + wr + ll)
            }
        }
    }
    let (_, _, bad, weight) = walk(e);
    (bad, weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Tag;
    use crate::tree::Alphabet;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    fn e(s: &str) -> Expr {
        Expr::parse(s, &abc()).unwrap()
    }

    fn nf(s: &str) -> NFLinComb {
        normal_form_expr(&e(s))
    }

    #[test]
    fn compatibility_rewrite() {
        assert_eq!(
            nf("((a *2 b) *1 c)").render(),
            "- 1 ((a *1 b) *2 c) + 1 (a *1 (b *2 c)) + 1 (a *2 (b *1 c))"
        );
    }

    #[test]
    fn single_reassociation() {
        assert_eq!(nf("((a *1 b) *1 c)").render(), "1 (a *1 (b *1 c))");
        assert_eq!(nf("((a *2 b) *2 c)").render(), "1 (a *2 (b *2 c))");
    }

    #[test]
    fn normal_forms_are_fixed_points() {
        for s in ["a", "(a *1 (b *2 c))", "((a *1 b) *2 c)", "(a *2 (b *1 c))"] {
            let out = nf(s);
            assert_eq!(out.len(), 1);
            let (m, c) = out.iter().next().unwrap();
            assert_eq!(m.expr(), &e(s));
            assert!(c.is_one());
        }
    }

    #[test]
    fn idempotent_and_linear() {
        let x = ExprLinComb::from_pairs([
            (e("((a *2 b) *1 c)"), Rational::from(2)),
            (e("((a *1 b) *1 c)"), Rational::from(-1)),
        ]);
        let once = normal_form(&x);
        let again = normal_form(&once.map_keys(|m| m.expr().clone()));
        assert_eq!(once, again);

        // linearity against the two pieces rewritten separately
        let first = normal_form_expr(&e("((a *2 b) *1 c)")).scale(&Rational::from(2));
        let second = normal_form_expr(&e("((a *1 b) *1 c)")).neg();
        assert_eq!(once, first.add(&second));
    }

    #[test]
    fn preserves_degree_and_leaves() {
        let deep = e("(((a *2 b) *1 c) *1 ((a *1 b) *2 c))");
        for (m, _) in normal_form_expr(&deep).iter() {
            assert_eq!(m.degree(), deep.degree());
            assert_eq!(m.expr().label_multiset(), deep.label_multiset());
        }
    }

    #[test]
    fn deep_left_combs_normalize() {
        // all tags present, multiple R3 firings
        let expr = e("((((a *2 b) *2 c) *1 a) *1 b)");
        let out = normal_form_expr(&expr);
        assert!(!out.is_zero());
        for (m, _) in out.iter() {
            assert!(matches!(m.top_tag(), Tag::One | Tag::Two));
        }
    }
}
