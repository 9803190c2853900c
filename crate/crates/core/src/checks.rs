//! Generating-function and character identities: Narayana and Catalan
//! series, the q-character of the two-products operad, dual-composition
//! checks, tag-count identities and SL2 decompositions.
//!
//! Every checker is split into a builder (the series under test) and a
//! residual, so tests can perturb a single coefficient and watch the
//! checker fail; a checker that cannot fail verifies nothing.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::basis::count_basis_by_tag;
use crate::combinat::{catalan, factorial, narayana};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::report::Report;
use crate::series::{QPoly, QSeries, SeriesKind};

fn big(b: BigInt) -> Rational {
    Rational::from(b)
}

/// `N(t, x) = 1 + sum_{n>=1} sum_{k=0}^{n-1} N_{n,k} t^n x^k`, truncated in
/// `t`; coefficients are polynomials in `x`.
pub fn narayana_series(order: usize) -> QSeries {
    QSeries::from_fn(order, SeriesKind::Ordinary, |n| {
        if n == 0 {
            QPoly::one()
        } else {
            QPoly::from_pairs(
                (0..n).map(|k| (k as i64, big(narayana(n as u64, k as u64).unwrap()))),
            )
        }
    })
}

/// `t x N^2 - t x N + t N - N + 1`; identically zero for the Narayana
/// series.
pub fn narayana_residual(n: &QSeries) -> QSeries {
    let x = QPoly::monomial(1, Rational::one());
    let one = QSeries::one(n.order(), n.kind());
    let txn2 = n.mul(n).mul_var(1).scale_qpoly(&x);
    let txn = n.mul_var(1).scale_qpoly(&x);
    let tn = n.mul_var(1);
    txn2.sub(&txn).add(&tn).sub(n).add(&one)
}

pub fn check_narayana_eq(order: usize) -> Report {
    let residual = narayana_residual(&narayana_series(order));
    Report::new("narayana_equation")
        .field("order", order)
        .field("residual_zero", residual.is_zero())
        .passing(residual.is_zero())
}

/// The q-character of the operad of two compatible products:
/// coefficient of `p1^n` is `q^{n-1} + N_{n,1} q^{n-3} + ... + N_{n,n-1} q^{1-n}`.
pub fn fchar_series(order: usize) -> QSeries {
    QSeries::from_fn(order, SeriesKind::Exponential, |n| {
        if n == 0 {
            QPoly::zero()
        } else {
            QPoly::from_pairs((0..n).map(|k| {
                (n as i64 - 1 - 2 * k as i64, big(narayana(n as u64, k as u64).unwrap()))
            }))
        }
    })
}

/// `F - p1 (1 + q F)(1 + q^-1 F)`; identically zero for the character.
pub fn funcas_residual(f: &QSeries) -> QSeries {
    let one = QSeries::one(f.order(), f.kind());
    let q = QPoly::monomial(1, Rational::one());
    let qinv = QPoly::monomial(-1, Rational::one());
    let lhs = one.add(&f.scale_qpoly(&q)).mul(&one.add(&f.scale_qpoly(&qinv))).mul_var(1);
    f.sub(&lhs)
}

pub fn check_funcas(order: usize) -> Report {
    let residual = funcas_residual(&fchar_series(order));
    Report::new("funcas_equation")
        .field("order", order)
        .field("residual_zero", residual.is_zero())
        .passing(residual.is_zero())
}

/// `sum_{n>=1} c_n x^n`: both the dimension series of the free algebra on
/// one generator (exponential) and the tree count series (ordinary).
pub fn catalan_series(order: usize, kind: SeriesKind) -> QSeries {
    QSeries::from_fn(order, kind, |n| {
        if n == 0 {
            QPoly::zero()
        } else {
            QPoly::constant(big(catalan(n as u64)))
        }
    })
}

/// Dimension series of the dual operad: `x / (1 - x)^2 = sum n x^n`.
pub fn dual_dim_series(order: usize) -> QSeries {
    let x = QSeries::variable(order, SeriesKind::Exponential);
    let geo = QSeries::geometric(&x);
    x.mul(&geo).mul(&geo)
}

/// `f(-f_dual(-x)) - x`; zero exactly when the two dimension series are
/// compositional inverses up to signs.
pub fn koszul_residual(f: &QSeries, f_dual: &QSeries) -> QSeries {
    let x = QSeries::variable(f.order().min(f_dual.order()), f.kind());
    let inner = f_dual.alternate_signs().neg();
    f.compose(&inner).sub(&x)
}

pub fn check_koszul_gf(order: usize) -> Report {
    let f = catalan_series(order, SeriesKind::Exponential);
    let residual = koszul_residual(&f, &dual_dim_series(order));
    // sanity: the self-dual associative series x/(1-x) passes the same test
    let x = QSeries::variable(order, SeriesKind::Exponential);
    let f_as = x.mul(&QSeries::geometric(&x));
    let self_dual = koszul_residual(&f_as, &f_as).is_zero();
    Report::new("koszul_inverse")
        .field("order", order)
        .field("residual_zero", residual.is_zero())
        .field("self_dual_as_sanity", self_dual)
        .passing(residual.is_zero() && self_dual)
}

/// Exponential generating series of the tag counts:
/// `(beta, beta_1, beta_2)` with coefficient `beta_{i,n} / n!` at `x^n`.
pub fn beta_series(order: usize) -> (QSeries, QSeries, QSeries) {
    let mut b = QSeries::zero(order, SeriesKind::Exponential);
    let mut b1 = QSeries::zero(order, SeriesKind::Exponential);
    let mut b2 = QSeries::zero(order, SeriesKind::Exponential);
    for n in 1..=order {
        let (c1, c2, c) = count_basis_by_tag(n);
        let fact = big(factorial(n as u64));
        b.set_coeff(n, QPoly::constant(&big(c) / &fact));
        b1.set_coeff(n, QPoly::constant(&big(c1) / &fact));
        b2.set_coeff(n, QPoly::constant(&big(c2) / &fact));
    }
    (b, b1, b2)
}

/// The three tag-count identities: `beta_1 - x = x beta`,
/// `beta (1 - beta_1) = beta_1`, and `f_As ∘ beta_1 = sum c_n x^n`.
pub fn beta_residuals(b: &QSeries, b1: &QSeries, b2: &QSeries) -> [QSeries; 4] {
    let order = b.order();
    let x = QSeries::variable(order, SeriesKind::Exponential);
    let one = QSeries::one(order, SeriesKind::Exponential);
    let split = b1.add(b2).sub(b);
    let eqbeta = b1.sub(&x).sub(&x.mul(b));
    let circ = b.mul(&one.sub(b1)).sub(b1);
    let f_as = x.mul(&QSeries::geometric(&x));
    let lift = f_as.compose(b1).sub(&catalan_series(order, SeriesKind::Exponential));
    [split, eqbeta, circ, lift]
}

pub fn check_beta_eqs(order: usize) -> Report {
    let (b, b1, b2) = beta_series(order);
    let residuals = beta_residuals(&b, &b1, &b2);
    let all_zero = residuals.iter().all(QSeries::is_zero);
    let (_, _, total) = count_basis_by_tag(6);
    Report::new("beta_equations")
        .field("order", order)
        .field("split_zero", residuals[0].is_zero())
        .field("eqbeta_zero", residuals[1].is_zero())
        .field("as_circ_beta1_zero", residuals[2].is_zero())
        .field("lift_zero", residuals[3].is_zero())
        .field("beta6", total.to_string())
        .passing(all_zero)
}

/// Character series of the dual operad:
/// `p1 / ((1 - q p1)(1 - q^-1 p1))`, whose `p1^n` coefficient is the
/// `n`-dimensional irreducible character `q^{n-1} + q^{n-3} + ... + q^{1-n}`.
pub fn dual_char_series(order: usize) -> QSeries {
    let p1 = QSeries::variable(order, SeriesKind::Exponential);
    let q = QPoly::monomial(1, Rational::one());
    let qinv = QPoly::monomial(-1, Rational::one());
    let a = QSeries::geometric(&p1.scale_qpoly(&q));
    let b = QSeries::geometric(&p1.scale_qpoly(&qinv));
    a.mul(&b).mul_var(1)
}

/// `eps(F) ∘ eps(F_dual) - p1`, with the sign involution applied per
/// `p1`-power and composition substituting the inner series for `p1` with
/// `q` untouched. Both characters in play depend on `p1` and `q` only, so
/// this restricted plethysm is the whole statement.
pub fn duality_residual(f: &QSeries, f_dual: &QSeries) -> QSeries {
    let order = f.order().min(f_dual.order());
    let p1 = QSeries::variable(order, f.kind());
    f.alternate_signs().compose(&f_dual.alternate_signs()).sub(&p1)
}

pub fn check_character_duality(order: usize) -> Report {
    let residual = duality_residual(&fchar_series(order), &dual_char_series(order));
    Report::new("character_duality")
        .field("order", order)
        .field("residual_zero", residual.is_zero())
        .passing(residual.is_zero())
}

/// A finite sum of irreducible SL2 characters: highest weights with
/// positive multiplicities, weights descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SL2Decomposition {
    pub parts: Vec<(u32, BigInt)>,
}

impl SL2Decomposition {
    pub fn render(&self) -> String {
        if self.parts.is_empty() {
            return "0".to_string();
        }
        self.parts
            .iter()
            .map(|(d, m)| if *m == BigInt::from(1) {
                format!("L({d})")
            } else {
                format!("L({d})^{m}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// The character this decomposition stands for.
    pub fn reconstruct(&self) -> QPoly {
        let mut out = QPoly::zero();
        for (d, m) in &self.parts {
            let mult = big(m.clone());
            let mut e = *d as i64;
            loop {
                out.add_term(e, &mult);
                if e <= -(*d as i64) {
                    break;
                }
                e -= 2;
            }
        }
        out
    }
}

/// Splits a symmetric nonnegative-integer Laurent polynomial into
/// irreducible SL2 characters: the multiplicity of the weight-`d`
/// irreducible is `coeff(q^d) - coeff(q^{d+2})`.
pub fn sl2_decompose(chi: &QPoly) -> Result<SL2Decomposition> {
    for (_, c) in chi.iter() {
        if !c.is_integer() || c.is_negative() {
            return Err(Error::NotACharacter(format!(
                "coefficient {c} is not a nonnegative integer"
            )));
        }
    }
    if !chi.is_symmetric() {
        return Err(Error::NotACharacter("not symmetric under q <-> q^-1".to_string()));
    }
    let mut parts = Vec::new();
    if let Some(max) = chi.max_exp() {
        for d in (0..=max).rev() {
            let m = &chi.coeff(d) - &chi.coeff(d + 2);
            if m.is_negative() {
                return Err(Error::NotACharacter(format!(
                    "multiplicity of L({d}) would be {m}"
                )));
            }
            if !m.is_zero() {
                parts.push((d as u32, m.to_integer().unwrap()));
            }
        }
    }
    let decomposition = SL2Decomposition { parts };
    if &decomposition.reconstruct() != chi {
        return Err(Error::NotACharacter("reconstruction mismatch".to_string()));
    }
    Ok(decomposition)
}

/// For each `n <= max_n`, decomposes the `p1^n` character coefficient and
/// checks the multiplicity of `L(n-1-2k)` equals `N_{n,k} - N_{n,k-1}`.
pub fn check_sl2_corollary(max_n: usize) -> Report {
    let f = fchar_series(max_n);
    let mut report = Report::new("sl2_corollary").field("max_n", max_n);
    let mut all = true;
    for n in 1..=max_n {
        let got = match sl2_decompose(f.coeff(n)) {
            Ok(d) => d,
            Err(e) => {
                report = report.field(format!("n{n}"), format!("error: {e}"));
                all = false;
                continue;
            }
        };
        let mut expected = Vec::new();
        let mut k = 0i64;
        loop {
            let weight = n as i64 - 1 - 2 * k;
            if weight < 0 {
                break;
            }
            let prev = if k == 0 {
                BigInt::from(0)
            } else {
                narayana(n as u64, k as u64 - 1).unwrap()
            };
            let m = narayana(n as u64, k as u64).unwrap() - prev;
            if m.is_negative() {
                all = false;
            }
            if m.is_positive() {
                expected.push((weight as u32, m));
            }
            k += 1;
        }
        let ok = got.parts == expected;
        all = all && ok;
        if n == 4 || !ok {
            report = report.field(format!("n{n}"), got.render());
        }
    }
    report.passing(all)
}

/// Free-associative generating identity behind the one-root-child
/// generators: with `f = sum c_n x^n` and `g = x (1 + f)`, checks
/// `g / (1 - g) = f`.
pub fn check_gl_series(order: usize) -> Report {
    let f = catalan_series(order, SeriesKind::Ordinary);
    let one = QSeries::one(order, SeriesKind::Ordinary);
    let g = one.add(&f).mul_var(1);
    let residual = g.mul(&QSeries::geometric(&g)).sub(&f);
    Report::new("grossman_larson_series")
        .field("order", order)
        .field("residual_zero", residual.is_zero())
        .passing(residual.is_zero())
}

/// Every series checker must fail when a single coefficient is perturbed.
pub fn mutation_sanity(order: usize) -> Report {
    let bump = |s: &QSeries, n: usize| {
        let mut out = s.clone();
        out.set_coeff(n, out.coeff(n).add(&QPoly::one()));
        out
    };

    let narayana_fails = !narayana_residual(&bump(&narayana_series(order), 2)).is_zero();
    let funcas_fails = !funcas_residual(&bump(&fchar_series(order), 3)).is_zero();
    let koszul_fails = {
        let f = bump(&catalan_series(order, SeriesKind::Exponential), 4);
        !koszul_residual(&f, &dual_dim_series(order)).is_zero()
    };
    let beta_fails = {
        let (b, b1, b2) = beta_series(order);
        // drop one basis element from the tag-1 count at degree 3
        let mut b1m = b1.clone();
        let delta = QPoly::constant(&Rational::from(-1) / &big(factorial(3)));
        b1m.set_coeff(3, b1m.coeff(3).add(&delta));
        beta_residuals(&b, &b1m, &b2).iter().any(|r| !r.is_zero())
    };
    let duality_fails =
        !duality_residual(&bump(&fchar_series(order), 2), &dual_char_series(order)).is_zero();

    let all = narayana_fails && funcas_fails && koszul_fails && beta_fails && duality_fails;
    Report::new("series_mutation_sanity")
        .field("order", order)
        .field("narayana_detects", narayana_fails)
        .field("funcas_detects", funcas_fails)
        .field("koszul_detects", koszul_fails)
        .field("beta_detects", beta_fails)
        .field("duality_detects", duality_fails)
        .passing(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn narayana_equation_orders() {
        for order in [1, 5, 12] {
            assert!(check_narayana_eq(order).pass, "order {order}");
        }
    }

    #[test]
    fn fchar_low_coefficients() {
        let f = fchar_series(4);
        assert_eq!(f.coeff(2).render("q"), "q + q^-1");
        assert_eq!(f.coeff(3).render("q"), "q^2 + 3 + q^-2");
        assert_eq!(f.coeff(4).render("q"), "q^3 + 6*q + 6*q^-1 + q^-3");
    }

    #[test]
    fn fchar_specializes_to_catalan_at_q_one() {
        let f = fchar_series(12);
        for n in 1..=12 {
            assert_eq!(f.coeff(n).eval_at_one(), big(catalan(n as u64)), "n = {n}");
        }
    }

    #[test]
    fn funcas_holds() {
        for order in [2, 8] {
            assert!(check_funcas(order).pass, "order {order}");
        }
    }

    #[test]
    fn koszul_inverse_holds() {
        assert!(check_koszul_gf(10).pass);
        // order-2 hand check: f = x + 2x^2 + ..., f_dual = x + 2x^2 + ...,
        // composition = x + 0 x^2 + O(x^3)
        let f = catalan_series(2, SeriesKind::Exponential);
        let inner = dual_dim_series(2).alternate_signs().neg();
        let comp = f.compose(&inner);
        assert_eq!(comp.coeff(1), &QPoly::one());
        assert!(comp.coeff(2).is_zero());
    }

    #[test]
    fn beta_equations_hold() {
        let r = check_beta_eqs(6);
        assert!(r.pass);
        let (_, _, b6) = count_basis_by_tag(6);
        assert_eq!(b6, BigInt::from(95040));
        assert!(check_beta_eqs(12).pass);
        // n = 2 term of eqbeta: beta_{1,2}/2! = 1 equals the x^2
        // coefficient of x beta(x)
        let (b, b1, _) = beta_series(2);
        assert_eq!(b1.coeff(2), &QPoly::one());
        let x = QSeries::variable(2, SeriesKind::Exponential);
        assert_eq!(x.mul(&b).coeff(2), &QPoly::one());
    }

    #[test]
    fn duality_holds_and_specializes() {
        assert!(check_character_duality(8).pass);
        // order-1 coefficient of the composition is p1 itself
        let comp = fchar_series(4)
            .alternate_signs()
            .compose(&dual_char_series(4).alternate_signs());
        assert_eq!(comp.coeff(1), &QPoly::one());
        // q = 1 specialization reproduces the dimension-series inverse pair
        let f = fchar_series(8).eval_q_at_one();
        let fd = dual_char_series(8).eval_q_at_one();
        assert_eq!(f, catalan_series(8, SeriesKind::Exponential));
        assert_eq!(fd, dual_dim_series(8));
    }

    #[test]
    fn sl2_examples() {
        let chi = QPoly::from_pairs([(1, Rational::one()), (-1, Rational::one())]);
        assert_eq!(sl2_decompose(&chi).unwrap().parts, vec![(1, BigInt::from(1))]);

        let chi4 = fchar_series(4).coeff(4).clone();
        let d = sl2_decompose(&chi4).unwrap();
        assert_eq!(d.parts, vec![(3, BigInt::from(1)), (1, BigInt::from(5))]);
        assert_eq!(d.render(), "L(3) + L(1)^5");

        let one = QPoly::one();
        assert_eq!(sl2_decompose(&one).unwrap().parts, vec![(0, BigInt::from(1))]);
    }

    #[test]
    fn sl2_rejects_non_characters() {
        let asym = QPoly::monomial(1, Rational::one());
        assert!(matches!(sl2_decompose(&asym), Err(Error::NotACharacter(_))));
        // q^2 + q^-2 misses the weight-0 slot of L(2)
        let hole = QPoly::from_pairs([(2, Rational::one()), (-2, Rational::one())]);
        assert!(matches!(sl2_decompose(&hole), Err(Error::NotACharacter(_))));
        let frac = QPoly::constant(Rational::new(1, 2));
        assert!(matches!(sl2_decompose(&frac), Err(Error::NotACharacter(_))));
    }

    #[test]
    fn sl2_corollary_to_eight() {
        assert!(check_sl2_corollary(8).pass);
    }

    #[test]
    fn gl_series_to_ten() {
        assert!(check_gl_series(10).pass);
    }

    #[test]
    fn mutations_are_detected() {
        assert!(mutation_sanity(8).pass);
    }

    #[cfg(test)]
    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn sl2_reconstruct_roundtrip(mults in proptest::collection::vec(0u32..4, 1..6)) {
                let parts: Vec<(u32, BigInt)> = mults
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &m)| m > 0)
                    .map(|(d, &m)| (d as u32, BigInt::from(m)))
                    .collect();
                let d = SL2Decomposition { parts };
                let chi = d.reconstruct();
                prop_assert_eq!(sl2_decompose(&chi).unwrap(), d);
            }
        }
    }
}
