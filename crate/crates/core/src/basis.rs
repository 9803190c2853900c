//! Monomial bases of the free algebra on two compatible products.
//!
//! The multilinear basis on an ordered label set `A` is defined recursively:
//! the single generator for `|A| = 1`; otherwise every `a_k *1 b'` with
//! `b'` a basis monomial on `A \ {a_k}` (tag 1), and every `b1 *2 b2` with
//! `b1` a tag-1 basis monomial on `A1`, `b2` a basis monomial on `A2`, over
//! all ordered splittings `A1 ⊔ A2 = A` (tag 2). Its size is
//! `(2n)! / (n+1)!`.
//!
//! Word monomials are the same recursion with "a distinguished label" read
//! as "any label, repeats allowed"; they count `c_n * |S|^n` in each degree
//! and are the row domain of the evaluation blocks used for inversion.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::combinat::binomial;
use crate::expr::{Expr, NFMonomial, Tag};
use crate::products::ProductOp;
use crate::tree::Alphabet;

/// The multilinear basis monomials over the whole alphabet, each label used
/// exactly once, ordered by (tag, canonical rendering).
pub fn gen_multilinear_basis(alphabet: &Alphabet) -> Vec<NFMonomial> {
    let n = alphabet.len();
    assert!(n >= 1, "multilinear basis needs at least one label");
    assert!(n < 32, "label-set bitmask is u32");
    let mut memo: HashMap<u32, Vec<(Expr, Tag)>> = HashMap::new();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let raw = basis_for_mask(full, alphabet, &mut memo);
    finalize(raw)
}

fn basis_for_mask(
    mask: u32,
    alphabet: &Alphabet,
    memo: &mut HashMap<u32, Vec<(Expr, Tag)>>,
) -> Vec<(Expr, Tag)> {
    if let Some(hit) = memo.get(&mask) {
        return hit.clone();
    }
    let bits: Vec<usize> = (0..alphabet.len()).filter(|i| mask & (1 << i) != 0).collect();
    let mut out = Vec::new();
    if bits.len() == 1 {
        out.push((Expr::gen(alphabet.label_at(bits[0])), Tag::One));
    } else {
        // tag 1: a_k *1 b' over the rest
        for &k in &bits {
            let rest = mask & !(1 << k);
            for (b, _) in basis_for_mask(rest, alphabet, memo) {
                out.push((
                    Expr::node(ProductOp::Star1, Expr::gen(alphabet.label_at(k)), b),
                    Tag::One,
                ));
            }
        }
        // tag 2: b1 *2 b2 over ordered proper splittings, t(b1) = 1
        let mut sub = (mask - 1) & mask;
        while sub != 0 {
            let a1 = sub;
            let a2 = mask & !sub;
            for (b1, t1) in basis_for_mask(a1, alphabet, memo) {
                if t1 != Tag::One {
                    continue;
                }
                for (b2, _) in basis_for_mask(a2, alphabet, memo) {
                    out.push((Expr::node(ProductOp::Star2, b1.clone(), b2), Tag::Two));
                }
            }
            sub = (sub - 1) & mask;
        }
    }
    memo.insert(mask, out.clone());
    out
}

/// All normal-form monomials of the given degree with leaves drawn freely
/// from the alphabet, ordered by (tag, canonical rendering). Count is
/// `c_n * |S|^n`.
pub fn gen_word_monomials(degree: usize, alphabet: &Alphabet) -> Vec<NFMonomial> {
    assert!(degree >= 1, "word monomials start at degree 1");
    let mut memo: Vec<Vec<(Expr, Tag)>> = vec![Vec::new()];
    for n in 1..=degree {
        let next = words_of_degree(n, alphabet, &memo);
        memo.push(next);
    }
    finalize(memo.pop().unwrap())
}

fn words_of_degree(
    n: usize,
    alphabet: &Alphabet,
    memo: &[Vec<(Expr, Tag)>],
) -> Vec<(Expr, Tag)> {
    let mut out = Vec::new();
    if n == 1 {
        for l in alphabet.iter() {
            out.push((Expr::gen(l), Tag::One));
        }
        return out;
    }
    // tag 1: g *1 b' with b' of degree n-1
    for l in alphabet.iter() {
        for (b, _) in &memo[n - 1] {
            out.push((Expr::node(ProductOp::Star1, Expr::gen(l.clone()), b.clone()), Tag::One));
        }
    }
    // tag 2: b1 *2 b2 with t(b1) = 1, degrees k + (n-k)
    for k in 1..n {
        for (b1, t1) in &memo[k] {
            if *t1 != Tag::One {
                continue;
            }
            for (b2, _) in &memo[n - k] {
                out.push((Expr::node(ProductOp::Star2, b1.clone(), b2.clone()), Tag::Two));
            }
        }
    }
    out
}

fn finalize(raw: Vec<(Expr, Tag)>) -> Vec<NFMonomial> {
    let mut out: Vec<NFMonomial> = raw
        .into_iter()
        .map(|(e, tag)| {
            let m = NFMonomial::try_new(e).expect("basis recursion produced a normal form");
            debug_assert_eq!(m.top_tag(), tag);
            m
        })
        .collect();
    out.sort_by(|a, b| (a.top_tag(), a.expr()).cmp(&(b.top_tag(), b.expr())));
    out
}

/// Multilinear basis counts on `n` labels split by top tag:
/// `(count tag 1, count tag 2, total)`. Computed by the counting recursion
/// `beta_1(n) = n * beta(n-1)` and
/// `beta_2(n) = sum_k C(n,k) beta_1(k) beta(n-k)`; the total equals
/// `(2n)!/(n+1)! = n! * c_n`.
pub fn count_basis_by_tag(n: usize) -> (BigInt, BigInt, BigInt) {
    assert!(n >= 1);
    let mut beta1: Vec<BigInt> = vec![BigInt::from(0); n + 1];
    let mut beta2: Vec<BigInt> = vec![BigInt::from(0); n + 1];
    let mut beta: Vec<BigInt> = vec![BigInt::from(0); n + 1];
    beta1[1] = BigInt::from(1);
    beta[1] = BigInt::from(1);
    for m in 2..=n {
        beta1[m] = BigInt::from(m as u64) * &beta[m - 1];
        let mut b2 = BigInt::from(0);
        for k in 1..m {
            b2 += binomial(m as u64, k as u64) * &beta1[k] * &beta[m - k];
        }
        beta2[m] = b2;
        beta[m] = &beta1[m] + &beta2[m];
    }
    (beta1[n].clone(), beta2[n].clone(), beta[n].clone())
}
