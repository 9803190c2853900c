//! Acceptance suite: one test per verification criterion, each printing a
//! pass/fail line (visible with `--nocapture`) and asserting the frozen
//! expected values independently of the checker that computes them.

use as2trees::algebra::TreeAlgebra;
use as2trees::basis::count_basis_by_tag;
use as2trees::checks::{fchar_series, narayana_series};
use as2trees::combinat::{catalan, narayana};
use as2trees::expr::Expr;
use as2trees::products::TreeLinComb;
use as2trees::rational::Rational;
use as2trees::report::Report;
use as2trees::rewrite::normal_form_expr;
use as2trees::tree::{Alphabet, PlanarTree};
use as2trees::verify::{self, Params};

use num_bigint::BigInt;

fn finish(report: Report) {
    println!("{}", report.render_line());
    assert!(report.pass, "{}", report.render_table());
}

#[test]
fn criterion_01_tree_counts() {
    // independent frozen values
    let expected = [1u64, 2, 5, 14, 42, 132, 429, 1430];
    for (i, &c) in expected.iter().enumerate() {
        assert_eq!(catalan(i as u64 + 1), BigInt::from(c));
    }
    finish(verify::criterion_01_tree_counts());
}

#[test]
fn criterion_02_laws() {
    // one frozen associativity instance, fully spelled out:
    // ((a *1 b) *1 c) and (a *1 (b *1 c)) must agree term by term
    let abc = Alphabet::new(["a", "b", "c"]).unwrap();
    let mut alg = TreeAlgebra::new(&abc);
    let t = |s: &str| PlanarTree::parse(s, &abc).unwrap();
    let ab = alg.star1(&t("(a)"), &t("(b)")).unwrap();
    let bc = alg.star1(&t("(b)"), &t("(c)")).unwrap();
    let lhs = alg
        .star_lin(as2trees::products::ProductOp::Star1, &ab, &TreeLinComb::unit(t("(c)")), false)
        .unwrap();
    let rhs = alg
        .star_lin(as2trees::products::ProductOp::Star1, &TreeLinComb::unit(t("(a)")), &bc, false)
        .unwrap();
    assert_eq!(lhs, rhs);

    finish(verify::criterion_02_laws(&Params::default()));
}

#[test]
fn criterion_03_basis_counts() {
    // (2n)!/(n+1)! by direct product, frozen
    for n in 1..=6usize {
        let fact2n: BigInt = (1..=2 * n as u64).product::<u64>().into();
        let factn1: BigInt = (1..=n as u64 + 1).product::<u64>().into();
        let expected = [1u64, 4, 30, 336, 5040, 95040][n - 1];
        assert_eq!(&fact2n / &factn1, BigInt::from(expected));
        let (_, _, total) = count_basis_by_tag(n);
        assert_eq!(total, BigInt::from(expected));
    }
    finish(verify::criterion_03_basis_counts());
}

#[test]
fn criterion_04_rewriting_soundness() {
    // the displayed compatibility rewrite, frozen
    let abc = Alphabet::new(["a", "b", "c"]).unwrap();
    let e = Expr::parse("((a *2 b) *1 c)", &abc).unwrap();
    assert_eq!(
        normal_form_expr(&e).render(),
        "- 1 ((a *1 b) *2 c) + 1 (a *1 (b *2 c)) + 1 (a *2 (b *1 c))"
    );
    finish(verify::criterion_04_rewriting(&Params::default()));
}

#[test]
fn criterion_05_multilinear_rank() {
    // expected ranks are n! * c_n computed from scratch
    for (n, rows, rank) in [(2u64, 4, 4), (3, 48, 30), (4, 960, 336)] {
        let fact: u64 = (1..=n).product();
        assert_eq!(BigInt::from(fact) * catalan(n), BigInt::from(rank));
        let _ = rows;
    }
    finish(verify::criterion_05_multilinear_rank(&Params::default()));
}

#[test]
fn criterion_06_iso_roundtrip() {
    // 224 = c_4 * 2^4 trees at degree 4 over two labels
    assert_eq!(catalan(4) * BigInt::from(16), BigInt::from(224));
    finish(verify::criterion_06_roundtrip(&Params::default()));
}

#[test]
fn criterion_07_series_identities() {
    // frozen spot values
    assert_eq!(narayana(3, 1).unwrap(), BigInt::from(3));
    assert_eq!(narayana(4, 1).unwrap(), BigInt::from(6));
    let f = fchar_series(3);
    assert_eq!(f.coeff(2).render("q"), "q + q^-1");
    assert_eq!(f.coeff(3).render("q"), "q^2 + 3 + q^-2");
    // N(t,x) starts 1 + t + ...
    let n = narayana_series(2);
    assert_eq!(n.coeff(0).render("x"), "1");
    assert_eq!(n.coeff(1).render("x"), "1");
    finish(verify::criterion_07_series(&Params::default()));
}

#[test]
fn criterion_08_sl2_corollary() {
    // n = 4 character and its decomposition, frozen
    let chi = fchar_series(4).coeff(4).clone();
    assert_eq!(chi.render("q"), "q^3 + 6*q + 6*q^-1 + q^-3");
    let d = as2trees::checks::sl2_decompose(&chi).unwrap();
    assert_eq!(d.render(), "L(3) + L(1)^5");
    finish(verify::criterion_08_sl2());
}

#[test]
fn criterion_09_hopf() {
    finish(verify::criterion_09_hopf(&Params::default()));
}

#[test]
fn criterion_10_grossman_larson() {
    let report = verify::criterion_10_gl_freeness(&Params::default());
    // degree-n generator count (one label) is c_{n-1}: 1, 1, 2, 5
    for (n, expect) in [(1usize, 1i64), (2, 1), (3, 2), (4, 5)] {
        let field = report
            .fields
            .iter()
            .find(|(k, _)| k == &format!("degree{n}"))
            .map(|(_, v)| v.as_str().unwrap().to_string())
            .unwrap();
        assert!(field.starts_with(&format!("gens {expect} ")), "degree {n}: {field}");
    }
    finish(report);
}

#[test]
fn criterion_11_pencil() {
    // independent recomputation of the witness defect
    let two = Alphabet::numbered(2);
    let witness = verify::pencil_four_term_witness(&two).expect("witness must exist");
    let (k1, k2, k3, defect) = witness;
    assert!(!defect.is_zero());
    let mut alg = TreeAlgebra::new(&two);
    let one = Rational::one();
    let zero = Rational::zero();
    type P = as2trees::products::TreePairLinComb;
    let x = P::unit(k1);
    let y = P::unit(k2);
    let z = P::unit(k3);
    let p = |alg: &mut TreeAlgebra, a: &P, b: &P| {
        alg.pencil_tensor_product(&one, &zero, a, b, false).unwrap()
    };
    let q = |alg: &mut TreeAlgebra, a: &P, b: &P| {
        alg.pencil_tensor_product(&zero, &one, a, b, false).unwrap()
    };
    let xpy = p(&mut alg, &x, &y);
    let xqy = q(&mut alg, &x, &y);
    let ypz = p(&mut alg, &y, &z);
    let yqz = q(&mut alg, &y, &z);
    let recomputed = q(&mut alg, &xpy, &z)
        .add(&p(&mut alg, &xqy, &z))
        .sub(&p(&mut alg, &x, &yqz))
        .sub(&q(&mut alg, &x, &ypz));
    assert_eq!(recomputed, defect);

    finish(verify::criterion_11_pencil());
}
