//! Expression syntax over the two products, and normal-form monomials.
//!
//! Grammar (fully parenthesized, no precedence):
//!
//! ```text
//! Expr := Label | "(" Expr ("*1"|"*2") Expr ")"
//! ```
//!
//! A monomial is in normal form when every `*1` node has a bare generator as
//! its left child and every `*2` node has a tag-1 expression (a generator or
//! a `*1` node) as its left child; right children are arbitrary normal
//! forms. The top-level tag is 1 for generators and `*1` nodes, 2 for `*2`
//! nodes.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::lincomb::{Key, LinComb};
use crate::products::ProductOp;
use crate::text::Cursor;
use crate::tree::{Alphabet, Label};

/// A syntax tree over the two products: a generator leaf or a binary node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Gen(Label),
    Node { op: ProductOp, left: Box<Expr>, right: Box<Expr> },
}

impl Expr {
    pub fn gen(label: Label) -> Expr {
        Expr::Gen(label)
    }

    pub fn node(op: ProductOp, left: Expr, right: Expr) -> Expr {
        Expr::Node { op, left: Box::new(left), right: Box::new(right) }
    }

    /// Number of generator leaves.
    pub fn degree(&self) -> usize {
        match self {
            Expr::Gen(_) => 1,
            Expr::Node { left, right, .. } => left.degree() + right.degree(),
        }
    }

    pub fn leaves(&self) -> Vec<&Label> {
        let mut out = Vec::new();
        fn walk<'a>(e: &'a Expr, out: &mut Vec<&'a Label>) {
            match e {
                Expr::Gen(l) => out.push(l),
                Expr::Node { left, right, .. } => {
                    walk(left, out);
                    walk(right, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    /// Sorted label indices of the leaves.
    pub fn label_multiset(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.leaves().iter().map(|l| l.index()).collect();
        out.sort_unstable();
        out
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Expr> {
        let mut cur = Cursor::new(text);
        cur.skip_ws();
        let e = Self::parse_cursor(&mut cur, alphabet)?;
        cur.expect_end()?;
        Ok(e)
    }

    pub fn parse_cursor(cur: &mut Cursor, alphabet: &Alphabet) -> Result<Expr> {
        cur.skip_ws();
        match cur.peek() {
            Some(b'(') => {
                cur.bump();
                let left = Self::parse_cursor(cur, alphabet)?;
                cur.skip_ws();
                cur.expect(b'*')?;
                let op = match cur.bump() {
                    Some(b'1') => ProductOp::Star1,
                    Some(b'2') => ProductOp::Star2,
                    _ => return Err(cur.error("expected `*1` or `*2`")),
                };
                let right = Self::parse_cursor(cur, alphabet)?;
                cur.skip_ws();
                cur.expect(b')')?;
                Ok(Expr::node(op, left, right))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let name = cur.ident()?;
                Ok(Expr::Gen(alphabet.label(&name)?))
            }
            _ => Err(cur.error("expected expression")),
        }
    }

    /// Canonical fully parenthesized form, e.g. `((a *2 b) *1 c)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        match self {
            Expr::Gen(l) => out.push_str(l.text()),
            Expr::Node { op, left, right } => {
                out.push('(');
                left.render_into(out);
                out.push_str(if *op == ProductOp::Star1 { " *1 " } else { " *2 " });
                right.render_into(out);
                out.push(')');
            }
        }
    }

    fn tokens(&self, out: &mut Vec<ExprTok>) {
        match self {
            Expr::Gen(l) => out.push(ExprTok::Label(l.index())),
            Expr::Node { op, left, right } => {
                out.push(ExprTok::Open);
                left.tokens(out);
                out.push(ExprTok::Sep);
                out.push(match op {
                    ProductOp::Star1 => ExprTok::Star1,
                    ProductOp::Star2 => ExprTok::Star2,
                });
                out.push(ExprTok::Sep);
                right.tokens(out);
                out.push(ExprTok::Close);
            }
        }
    }
}

/// Token order matches byte order of renderings (` ` < `(` < `)` < `*` <
/// letters), with labels compared by alphabet position.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum ExprTok {
    Sep,
    Open,
    Close,
    Star1,
    Star2,
    Label(u32),
}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Expr {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = Vec::new();
        let mut b = Vec::new();
        self.tokens(&mut a);
        other.tokens(&mut b);
        a.cmp(&b)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Key for Expr {
    fn render(&self) -> String {
        Expr::render(self)
    }
}

/// The top-level tag of a normal-form monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tag {
    One = 1,
    Two = 2,
}

impl Tag {
    pub fn id(self) -> u8 {
        self as u8
    }
}

/// An expression certified to be in normal form, with its top-level tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NFMonomial {
    expr: Expr,
    tag: Tag,
}

impl NFMonomial {
    pub fn try_new(expr: Expr) -> Result<NFMonomial> {
        match nf_tag(&expr) {
            Some(tag) => Ok(NFMonomial { expr, tag }),
            None => Err(Error::NotNormalForm(expr.render())),
        }
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn into_expr(self) -> Expr {
        self.expr
    }

    /// 1 for generators and `s *1 b`, 2 for `b1 *2 b2`.
    pub fn top_tag(&self) -> Tag {
        self.tag
    }

    pub fn degree(&self) -> usize {
        self.expr.degree()
    }

    pub fn render(&self) -> String {
        self.expr.render()
    }
}

/// The tag of `e` if it is in normal form, `None` otherwise.
fn nf_tag(e: &Expr) -> Option<Tag> {
    match e {
        Expr::Gen(_) => Some(Tag::One),
        Expr::Node { op: ProductOp::Star1, left, right } => {
            matches!(**left, Expr::Gen(_)).then_some(())?;
            nf_tag(right)?;
            Some(Tag::One)
        }
        Expr::Node { op: ProductOp::Star2, left, right } => {
            (nf_tag(left)? == Tag::One).then_some(())?;
            nf_tag(right)?;
            Some(Tag::Two)
        }
    }
}

pub fn is_normal_form(e: &Expr) -> bool {
    nf_tag(e).is_some()
}

impl PartialOrd for NFMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NFMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.expr.cmp(&other.expr)
    }
}

impl fmt::Display for NFMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.expr.render())
    }
}

impl Key for NFMonomial {
    fn render(&self) -> String {
        self.expr.render()
    }
}

/// Sums of raw expressions.
pub type ExprLinComb = LinComb<Expr>;

/// Sums of normal-form monomials (basis coordinates).
pub type NFLinComb = LinComb<NFMonomial>;

/// Syntactic bilinear product: joins every key pair under a new node.
pub fn expr_mul(op: ProductOp, x: &ExprLinComb, y: &ExprLinComb) -> ExprLinComb {
    let mut out = ExprLinComb::zero();
    for (kx, cx) in x.iter() {
        for (ky, cy) in y.iter() {
            out.add_term(Expr::node(op, kx.clone(), ky.clone()), &(cx * cy));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    fn e(s: &str) -> Expr {
        Expr::parse(s, &abc()).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert!(matches!(e("a"), Expr::Gen(_)));
        let ab = e("(a *1 b)");
        assert!(matches!(&ab, Expr::Node { op: ProductOp::Star1, .. }));
        assert_eq!(ab.degree(), 2);
        let nested = e("((a *2 b) *1 c)");
        assert_eq!(nested.degree(), 3);
        match &nested {
            Expr::Node { op, left, .. } => {
                assert_eq!(*op, ProductOp::Star1);
                assert!(matches!(**left, Expr::Node { op: ProductOp::Star2, .. }));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn parse_errors_have_positions() {
        for bad in ["", "(a *1 b", "(a *3 b)", "(a b)", "a b"] {
            match Expr::parse(bad, &abc()) {
                Err(Error::Parse { .. }) | Err(Error::UnknownLabel(_)) => {}
                other => panic!("expected parse error for {bad:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn render_roundtrip() {
        for s in ["a", "(a *1 b)", "((a *2 b) *1 c)", "(a *2 (b *1 c))"] {
            assert_eq!(e(s).render(), s);
            assert_eq!(Expr::parse(&e(s).render(), &abc()).unwrap(), e(s));
        }
    }

    #[test]
    fn top_tags() {
        let m = |s: &str| NFMonomial::try_new(e(s)).unwrap();
        assert_eq!(m("a").top_tag(), Tag::One);
        assert_eq!(m("(a *1 b)").top_tag(), Tag::One);
        assert_eq!(m("((a *1 b) *2 c)").top_tag(), Tag::Two);
    }

    #[test]
    fn normal_form_recognition() {
        assert!(is_normal_form(&e("a")));
        assert!(is_normal_form(&e("(a *1 (b *2 c))")));
        assert!(is_normal_form(&e("((a *1 b) *2 c)")));
        // *1 with a non-generator left child
        assert!(!is_normal_form(&e("((a *1 b) *1 c)")));
        assert!(!is_normal_form(&e("((a *2 b) *1 c)")));
        // *2 with a tag-2 left child
        assert!(!is_normal_form(&e("((a *2 b) *2 c)")));
        assert!(NFMonomial::try_new(e("((a *2 b) *1 c)")).is_err());
    }
}
