//! Truncated multivariate polynomial jets over `Q[tau]`.
//!
//! A jet is trusted through a tracked total degree: `Truncated(n)` means every
//! coefficient of total degree `<= n` is exact and nothing is known beyond,
//! while `Exact` marks a genuine polynomial. Arithmetic propagates the trusted
//! order so that downstream consumers can refuse to read untrusted data.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::coefficient::Coefficient;
use crate::linalg::Rat;
use crate::linear_form::LinearForm;

/// Trusted truncation order of a jet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JetOrder {
    Truncated(i64),
    Exact,
}

impl JetOrder {
    pub fn min(self, other: JetOrder) -> JetOrder {
        match (self, other) {
            (JetOrder::Exact, o) | (o, JetOrder::Exact) => o,
            (JetOrder::Truncated(a), JetOrder::Truncated(b)) => JetOrder::Truncated(a.min(b)),
        }
    }

    pub fn shift(self, d: i64) -> JetOrder {
        match self {
            JetOrder::Exact => JetOrder::Exact,
            JetOrder::Truncated(n) => JetOrder::Truncated(n + d),
        }
    }

    pub fn at_least(self, degree: i64) -> bool {
        match self {
            JetOrder::Exact => true,
            JetOrder::Truncated(n) => n >= degree,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            JetOrder::Exact => None,
            JetOrder::Truncated(n) => Some(n),
        }
    }
}

impl PartialOrd for JetOrder {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for JetOrder {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (JetOrder::Exact, JetOrder::Exact) => std::cmp::Ordering::Equal,
            (JetOrder::Exact, _) => std::cmp::Ordering::Greater,
            (_, JetOrder::Exact) => std::cmp::Ordering::Less,
            (JetOrder::Truncated(a), JetOrder::Truncated(b)) => a.cmp(b),
        }
    }
}

/// Multivariate jet in canonical form: zero coefficients are not stored and
/// no stored monomial exceeds the trusted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    dim: usize,
    order: JetOrder,
    terms: BTreeMap<Vec<u32>, Coefficient>,
}

fn degree(expts: &[u32]) -> i64 {
    expts.iter().map(|&e| i64::from(e)).sum()
}

impl Jet {
    pub fn zero(dim: usize) -> Self {
        Jet {
            dim,
            order: JetOrder::Exact,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Coefficient) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; dim], c);
        }
        Jet {
            dim,
            order: JetOrder::Exact,
            terms,
        }
    }

    pub fn one(dim: usize) -> Self {
        Jet::constant(dim, Coefficient::one())
    }

    pub fn monomial(dim: usize, expts: Vec<u32>, c: Coefficient) -> Self {
        assert_eq!(expts.len(), dim);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(expts, c);
        }
        Jet {
            dim,
            order: JetOrder::Exact,
            terms,
        }
    }

    /// The form as an exact degree-one jet.
    pub fn from_linear_form(l: &LinearForm) -> Self {
        let dim = l.dim();
        let mut terms = BTreeMap::new();
        for a in 0..dim {
            let c = l.coeff(a);
            if !c.is_zero() {
                let mut e = vec![0; dim];
                e[a] = 1;
                terms.insert(e, Coefficient::from_rat(c));
            }
        }
        Jet {
            dim,
            order: JetOrder::Exact,
            terms,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> JetOrder {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Coefficient)> {
        self.terms.iter()
    }

    /// Lowest total degree of a stored monomial; `None` for the zero jet.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().map(|e| degree(e)).min()
    }

    /// Highest total degree of a stored monomial; `None` for the zero jet.
    pub fn top_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| degree(e)).max()
    }

    pub fn coeff(&self, expts: &[u32]) -> Coefficient {
        self.terms.get(expts).cloned().unwrap_or_else(Coefficient::zero)
    }

    /// The degree-zero coefficient.
    pub fn constant_term(&self) -> Coefficient {
        self.coeff(&vec![0; self.dim])
    }

    fn normalize(&mut self) {
        let order = self.order;
        self.terms.retain(|e, c| !c.is_zero() && order.at_least(degree(e)));
    }

    /// Restricts the trusted order, dropping now-untrusted monomials.
    pub fn truncate_to(&self, order: JetOrder) -> Jet {
        let mut out = self.clone();
        out.order = self.order.min(order);
        out.normalize();
        out
    }

    pub fn embed(&self, dim: usize) -> Jet {
        assert!(dim >= self.dim);
        if dim == self.dim {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2.resize(dim, 0);
                (e2, c.clone())
            })
            .collect();
        Jet {
            dim,
            order: self.order,
            terms,
        }
    }

    pub fn add(&self, other: &Jet) -> Jet {
        let dim = self.dim.max(other.dim);
        let a = self.embed(dim);
        let b = other.embed(dim);
        let mut terms = a.terms;
        for (e, c) in b.terms {
            let entry = terms.entry(e).or_insert_with(Coefficient::zero);
            *entry = entry.add(&c);
        }
        let mut out = Jet {
            dim,
            order: a.order.min(b.order),
            terms,
        };
        out.normalize();
        out
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Jet {
        Jet {
            dim: self.dim,
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Jet {
        if c.is_zero() {
            return Jet::zero(self.dim);
        }
        let mut out = Jet {
            dim: self.dim,
            order: self.order,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k.mul(c))).collect(),
        };
        out.normalize();
        out
    }

    pub fn scale_rat(&self, q: &Rat) -> Jet {
        self.scale(&Coefficient::from_rat(q.clone()))
    }

    /// Product with trust propagation: the result is trusted through
    /// `min(order(a) + val(b), order(b) + val(a))`.
    pub fn mul(&self, other: &Jet) -> Jet {
        let dim = self.dim.max(other.dim);
        if self.is_zero() || other.is_zero() {
            return Jet::zero(dim);
        }
        let a = self.embed(dim);
        let b = other.embed(dim);
        let va = a.valuation().unwrap();
        let vb = b.valuation().unwrap();
        let order = a.order.shift(vb).min(b.order.shift(va));
        let mut terms: BTreeMap<Vec<u32>, Coefficient> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                if !order.at_least(degree(ea) + degree(eb)) {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(e).or_insert_with(Coefficient::zero);
                *entry = entry.add(&ca.mul(cb));
            }
        }
        let mut out = Jet { dim, order, terms };
        out.normalize();
        out
    }

    pub fn pow(&self, k: u32) -> Jet {
        let mut out = Jet::one(self.dim);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes variable `a` by the linear form `forms[a]`; the forms live
    /// in the target space. Linear substitution maps total degree to total
    /// degree, so the trusted order carries over.
    pub fn substitute(&self, forms: &[LinearForm]) -> Jet {
        assert_eq!(forms.len(), self.dim);
        let target_dim = forms.iter().map(LinearForm::dim).max().unwrap_or(0);
        let mut out = Jet::zero(target_dim);
        // Memoised powers of each substituted variable.
        let mut powers: Vec<Vec<Jet>> = forms
            .iter()
            .map(|l| vec![Jet::one(target_dim), Jet::from_linear_form(l).embed(target_dim)])
            .collect();
        for (expts, c) in &self.terms {
            let mut prod = Jet::one(target_dim);
            for (a, &e) in expts.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[a].len() <= e as usize {
                    let next = powers[a].last().unwrap().mul(&powers[a][1]);
                    powers[a].push(next);
                }
                prod = prod.mul(&powers[a][e as usize]);
            }
            out = out.add(&prod.scale(c));
        }
        out.truncate_to(self.order)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let m: f64 = e
                    .iter()
                    .enumerate()
                    .map(|(a, &k)| point[a].powi(k as i32))
                    .product();
                c.to_f64() * m
            })
            .sum()
    }

    pub fn eval_rat(&self, point: &[Rat]) -> Coefficient {
        let mut acc = Coefficient::zero();
        for (e, c) in &self.terms {
            let mut m = Rat::from_integer(1.into());
            for (a, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    m *= &point[a];
                }
            }
            acc = acc.add(&c.mul_rat(&m));
        }
        acc
    }

    /// Exact division by variable `a`, when every stored monomial contains
    /// it. The quotient loses one trusted degree.
    pub fn divide_by_variable(&self, a: usize) -> Option<Jet> {
        if self.terms.keys().any(|e| e[a] == 0) {
            return None;
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[a] -= 1;
                (e2, c.clone())
            })
            .collect();
        Some(Jet {
            dim: self.dim,
            order: self.order.shift(-1),
            terms,
        })
    }

    /// Partial derivative with respect to variable `a`.
    pub fn derivative(&self, a: usize) -> Jet {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[a] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[a] -= 1;
            let factor = Rat::from_integer(e[a].into());
            terms.insert(e2, c.mul_rat(&factor));
        }
        let mut out = Jet {
            dim: self.dim,
            order: self.order.shift(-1),
            terms,
        };
        out.normalize();
        out
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<(i64, Vec<u32>, String)> = Vec::new();
        for (e, c) in &self.terms {
            let mut s = format!("({c})");
            for (a, &k) in e.iter().enumerate() {
                if k == 1 {
                    s.push_str(&format!("*e{}", a + 1));
                } else if k > 1 {
                    s.push_str(&format!("*e{}^{}", a + 1, k));
                }
            }
            parts.push((degree(e), e.clone(), s));
        }
        parts.sort();
        let strs: Vec<String> = parts.into_iter().map(|(_, _, s)| s).collect();
        write!(f, "{}", strs.join(" + "))
    }
}
