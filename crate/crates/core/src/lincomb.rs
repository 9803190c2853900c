//! Finitely supported linear combinations over a canonically ordered key
//! domain, with exact rational coefficients.
//!
//! The same container carries tree sums, tree-pair tensors, expression
//! combinations and basis coordinates; the key type supplies the canonical
//! order (its `Ord`) and the canonical text rendering.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::Result;
use crate::rational::Rational;
use crate::text::Cursor;

/// A key domain with a canonical total order and a canonical text form.
///
/// The `Ord` implementation *is* the canonical order: for structured keys it
/// compares the canonical renderings (with labels ordered by the session
/// alphabet), for integer keys it is the numeric order.
pub trait Key: Ord + Clone {
    fn render(&self) -> String;
}

impl Key for usize {
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Finite map from keys to nonzero rational coefficients.
///
/// Zero coefficients are never stored; iteration is in canonical key order;
/// equality is exact term-by-term equality.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<K: Key> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Key> std::fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

impl<K: Key> LinComb<K> {
    pub fn zero() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn single(key: K, coeff: Rational) -> Self {
        let mut t = LinComb::zero();
        t.add_term(key, &coeff);
        t
    }

    /// One key with coefficient 1.
    pub fn unit(key: K) -> Self {
        Self::single(key, Rational::one())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (K, Rational)>) -> Self {
        let mut t = LinComb::zero();
        for (k, c) in pairs {
            t.add_term(k, &c);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn contains(&self, key: &K) -> bool {
        self.terms.contains_key(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Adds `coeff * key`, dropping the term if it cancels to zero.
    pub fn add_term(&mut self, key: K, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// In-place `self += c * other`.
    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &(v * c));
        }
    }

    /// `ca * a + cb * b`, with zero terms dropped.
    pub fn combine(a: &LinComb<K>, b: &LinComb<K>, ca: &Rational, cb: &Rational) -> LinComb<K> {
        let mut out = LinComb::zero();
        out.add_scaled(a, ca);
        out.add_scaled(b, cb);
        out
    }

    pub fn scale(&self, c: &Rational) -> LinComb<K> {
        let mut out = LinComb::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> LinComb<K> {
        self.scale(&-Rational::one())
    }

    pub fn add(&self, other: &LinComb<K>) -> LinComb<K> {
        Self::combine(self, other, &Rational::one(), &Rational::one())
    }

    pub fn sub(&self, other: &LinComb<K>) -> LinComb<K> {
        Self::combine(self, other, &Rational::one(), &-Rational::one())
    }

    /// Re-keys every term, accumulating collisions.
    pub fn map_keys<K2: Key>(&self, f: impl Fn(&K) -> K2) -> LinComb<K2> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c);
        }
        out
    }

    /// Canonical text form: `c1 KEY1 + c2 KEY2`, negatives as `- |c| KEY`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                out.push_str(if i == 0 { "- " } else { " - " });
            } else if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&c.abs().to_string());
            out.push(' ');
            out.push_str(&k.render());
        }
        out
    }

    /// JSON form `{"terms":[{"coeff":"1","<field>":"(a b)"}, ...]}` with
    /// terms in canonical order.
    pub fn to_json(&self, field: &str) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| json!({"coeff": c.to_string(), field: k.render()}))
            .collect();
        json!({ "terms": terms })
    }
}

/// Parses the canonical text form, delegating key syntax to `parse_key`.
///
/// Accepts a bare key as shorthand for coefficient 1, and `0` for the empty
/// combination.
pub fn parse_lincomb<K: Key>(
    text: &str,
    mut parse_key: impl FnMut(&mut Cursor) -> Result<K>,
) -> Result<LinComb<K>> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.peek() == Some(b'0') {
        cur.bump();
        cur.expect_end()?;
        return Ok(LinComb::zero());
    }
    let mut out = LinComb::zero();
    let mut negative = {
        cur.skip_ws();
        cur.eat(b'-')
    };
    loop {
        cur.skip_ws();
        let coeff = match cur.peek() {
            Some(b) if b.is_ascii_digit() => cur.rational_token()?,
            _ => Rational::one(),
        };
        cur.skip_ws();
        let key = parse_key(&mut cur)?;
        let signed = if negative { -coeff } else { coeff };
        out.add_term(key, &signed);
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
        negative = if cur.eat(b'+') {
            false
        } else if cur.eat(b'-') {
            true
        } else {
            return Err(cur.error("expected `+` or `-` between terms"));
        };
    }
    Ok(out)
}

/// Bilinear extension of a product on keys: applies `f` to every key pair
/// and accumulates with the coefficient products.
pub fn bilinear<K1: Key, K2: Key, K3: Key>(
    x: &LinComb<K1>,
    y: &LinComb<K2>,
    mut f: impl FnMut(&K1, &K2) -> Result<LinComb<K3>>,
) -> Result<LinComb<K3>> {
    let mut out = LinComb::zero();
    for (kx, cx) in x.iter() {
        for (ky, cy) in y.iter() {
            out.add_scaled(&f(kx, ky)?, &(cx * cy));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lc(pairs: &[(usize, i64)]) -> LinComb<usize> {
        LinComb::from_pairs(pairs.iter().map(|&(k, c)| (k, Rational::from(c))))
    }

    #[test]
    fn combine_cancellation() {
        let x = lc(&[(7, 1)]);
        let out = LinComb::combine(&x, &x, &Rational::one(), &-Rational::one());
        assert!(out.is_zero());
        assert_eq!(out.render(), "0");
    }

    #[test]
    fn combine_with_empty() {
        let x = lc(&[(7, 1)]);
        let out = LinComb::combine(&x, &LinComb::zero(), &Rational::new(3, 2), &Rational::one());
        assert_eq!(out.render(), "3/2 7");
    }

    #[test]
    fn combine_single_term_cancel() {
        let a = lc(&[(1, 2), (2, 1)]);
        let b = lc(&[(2, 1)]);
        let out = LinComb::combine(&a, &b, &Rational::one(), &-Rational::one());
        assert_eq!(out, lc(&[(1, 2)]));
    }

    #[test]
    fn render_negative_terms() {
        let x = lc(&[(1, -1), (2, 2)]);
        assert_eq!(x.render(), "- 1 1 + 2 2");
    }

    #[test]
    fn parse_text_form() {
        let parse = |s: &str| {
            parse_lincomb(s, |cur| {
                let r = cur.rational_token()?;
                r.to_integer()
                    .map(|n| usize::try_from(n).unwrap())
                    .ok_or_else(|| cur.error("bad key"))
            })
        };
        assert_eq!(parse("0").unwrap(), LinComb::zero());
        assert_eq!(parse("2 3 - 1 4").unwrap(), lc(&[(3, 2), (4, -1)]));
        assert_eq!(parse("- 1 4").unwrap(), lc(&[(4, -1)]));
        assert!(parse("1 2 * 3 4").is_err());
    }

    #[cfg(test)]
    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_lincomb() -> impl Strategy<Value = LinComb<usize>> {
            proptest::collection::vec((0usize..6, -4i64..=4), 0..6)
                .prop_map(|pairs| LinComb::from_pairs(pairs.into_iter().map(|(k, c)| (k, Rational::from(c)))))
        }

        proptest! {
            #[test]
            fn addition_commutes(a in arb_lincomb(), b in arb_lincomb()) {
                let one = Rational::one();
                prop_assert_eq!(
                    LinComb::combine(&a, &b, &one, &one),
                    LinComb::combine(&b, &a, &one, &one)
                );
            }

            #[test]
            fn no_zero_terms_stored(a in arb_lincomb(), b in arb_lincomb()) {
                let out = LinComb::combine(&a, &b, &Rational::one(), &-Rational::one());
                prop_assert!(out.iter().all(|(_, c)| !c.is_zero()));
            }
        }
    }
}
