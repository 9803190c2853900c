//! Laurent polynomials in one variable and truncated power series with
//! Laurent-polynomial coefficients.
//!
//! A [`QSeries`] is truncated at a fixed order in its series variable; all
//! arithmetic truncates consistently, and composition requires the inner
//! series to have positive valuation. Each series carries a kind marker so
//! that ordinary counting series and exponential series never mix by
//! accident: the identities in this crate are stated for one kind or the
//! other, never across.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::Rational;

/// Laurent polynomial: finite map from integer exponents to nonzero
/// rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> QPoly {
        QPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> QPoly {
        QPoly::monomial(0, c)
    }

    /// `c * q^exp`.
    pub fn monomial(exp: i64, c: Rational) -> QPoly {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        QPoly { coeffs }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Rational)>) -> QPoly {
        let mut out = QPoly::zero();
        for (e, c) in pairs {
            out.add_term(e, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, exp: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, &-c.clone());
        }
        out
    }

    pub fn neg(&self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly { coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Substitutes `q = 1`: the coefficient sum.
    pub fn eval_at_one(&self) -> Rational {
        self.coeffs.values().fold(Rational::zero(), |acc, c| &acc + c)
    }

    /// Symmetric under `q <-> q^-1`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| self.coeff(-e) == *c)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Renders with exponents descending, e.g. `q^3 + 6*q + 6*q^-1 + q^-3`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            match (e, a.is_one()) {
                (0, _) => out.push_str(&a.to_string()),
                (_, true) => {}
                (_, false) => {
                    out.push_str(&a.to_string());
                    out.push('*');
                }
            }
            if e != 0 {
                out.push_str(var);
                if e != 1 {
                    out.push_str(&format!("^{e}"));
                }
            }
        }
        out
    }
}

/// Whether a series carries ordinary counting coefficients or exponential
/// (divided by `n!`) ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Ordinary,
    Exponential,
}

/// Power series in one variable truncated at `order`, coefficients Laurent
/// polynomials in a secondary variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    order: usize,
    kind: SeriesKind,
    coeffs: Vec<QPoly>,
}

impl QSeries {
    pub fn zero(order: usize, kind: SeriesKind) -> QSeries {
        QSeries { order, kind, coeffs: vec![QPoly::zero(); order + 1] }
    }

    /// The identity series: the variable itself.
    pub fn variable(order: usize, kind: SeriesKind) -> QSeries {
        let mut s = QSeries::zero(order, kind);
        if order >= 1 {
            s.coeffs[1] = QPoly::one();
        }
        s
    }

    pub fn one(order: usize, kind: SeriesKind) -> QSeries {
        let mut s = QSeries::zero(order, kind);
        s.coeffs[0] = QPoly::one();
        s
    }

    pub fn from_fn(order: usize, kind: SeriesKind, f: impl Fn(usize) -> QPoly) -> QSeries {
        QSeries { order, kind, coeffs: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn coeff(&self, n: usize) -> &QPoly {
        &self.coeffs[n]
    }

    pub fn set_coeff(&mut self, n: usize, p: QPoly) {
        self.coeffs[n] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QPoly::is_zero)
    }

    fn check_compatible(&self, other: &QSeries) -> usize {
        assert_eq!(self.kind, other.kind, "mixing ordinary and exponential series");
        self.order.min(other.order)
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let order = self.check_compatible(other);
        QSeries::from_fn(order, self.kind, |n| self.coeffs[n].add(&other.coeffs[n]))
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let order = self.check_compatible(other);
        QSeries::from_fn(order, self.kind, |n| self.coeffs[n].sub(&other.coeffs[n]))
    }

    pub fn neg(&self) -> QSeries {
        QSeries::from_fn(self.order, self.kind, |n| self.coeffs[n].neg())
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = self.check_compatible(other);
        let mut out = QSeries::zero(order, self.kind);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                let term = self.coeffs[i].mul(&other.coeffs[j]);
                out.coeffs[i + j] = out.coeffs[i + j].add(&term);
            }
        }
        out
    }

    /// Multiplies by `var^k` (shifts coefficients up, truncating).
    pub fn mul_var(&self, k: usize) -> QSeries {
        let mut out = QSeries::zero(self.order, self.kind);
        for n in 0..=self.order {
            if n + k <= self.order {
                out.coeffs[n + k] = self.coeffs[n].clone();
            }
        }
        out
    }

    pub fn scale_qpoly(&self, p: &QPoly) -> QSeries {
        QSeries::from_fn(self.order, self.kind, |n| self.coeffs[n].mul(p))
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries::from_fn(self.order, self.kind, |n| self.coeffs[n].scale(c))
    }

    /// Substitutes `-var` for the variable: coefficient `n` picks up
    /// `(-1)^n`. This is also the restriction of the sign involution on
    /// power sums to a series in the first power sum.
    pub fn alternate_signs(&self) -> QSeries {
        QSeries::from_fn(self.order, self.kind, |n| {
            if n % 2 == 0 {
                self.coeffs[n].clone()
            } else {
                self.coeffs[n].neg()
            }
        })
    }

    /// Substitutes `inner` for the variable. Requires `inner` to have
    /// positive valuation (zero constant coefficient).
    pub fn compose(&self, inner: &QSeries) -> QSeries {
        let order = self.check_compatible(inner);
        assert!(
            inner.coeffs[0].is_zero(),
            "composition needs positive valuation of the inner series"
        );
        let mut acc = QSeries::zero(order, self.kind);
        for n in (0..=order).rev() {
            acc = acc.mul(inner);
            let c = self.coeffs[n].clone();
            acc.coeffs[0] = acc.coeffs[0].add(&c);
        }
        acc
    }

    /// `1 / (1 - u) = 1 + u + u^2 + ...` for `u` of positive valuation.
    pub fn geometric(u: &QSeries) -> QSeries {
        assert!(u.coeffs[0].is_zero(), "geometric series needs positive valuation");
        let mut acc = QSeries::one(u.order, u.kind);
        for _ in 0..u.order {
            acc = acc.mul(u);
            acc.coeffs[0] = acc.coeffs[0].add(&QPoly::one());
        }
        acc
    }

    /// Substitutes `q = 1` in every coefficient.
    pub fn eval_q_at_one(&self) -> QSeries {
        QSeries::from_fn(self.order, self.kind, |n| {
            QPoly::constant(self.coeffs[n].eval_at_one())
        })
    }

    /// Rendering as a table of `coeff(q) * var^n` lines.
    pub fn render(&self, var: &str, coeff_var: &str) -> String {
        let mut lines = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                lines.push(format!("{var}^{n}: {}", c.render(coeff_var)));
            }
        }
        if lines.is_empty() {
            lines.push("0".to_string());
        }
        lines.join("\n")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}
