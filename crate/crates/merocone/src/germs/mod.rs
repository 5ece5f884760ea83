//! Exact multivariate meromorphic germs at zero with linear poles.
//!
//! A germ is a finite sum of terms `jet / (L_1^{m_1} ... L_k^{m_k})` with
//! canonical primitive integer denominator forms. The trusted degree window
//! of a germ is derived from its representation: `d_min` is minus the largest
//! total denominator multiplicity and `d_max` the smallest numerator trust
//! order minus that term's denominator multiplicity. Every operation
//! propagates the window; extracting data outside it is an error.

mod project;
mod reduce;
mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, Ordering};

use thiserror::Error;

use crate::coefficient::Coefficient;
use crate::inner_product::{InnerProduct, InnerProductError};
use crate::jet::{Jet, JetOrder};
use crate::linalg::{rref, Rat};
use num::Zero;
use crate::linear_form::LinearForm;

pub use text::{parse_germ, ParseGermError};

#[derive(Debug, Error)]
pub enum GermError {
    #[error("insufficient working order: {missing} more trusted degrees of jet data are needed")]
    InsufficientOrder { missing: i64 },
    #[error("germ has polar terms; evaluation at zero is only defined on holomorphic germs")]
    NotHolomorphic,
    #[error("evaluation point lies on the pole hyperplane of {form}")]
    PoleEvaluation { form: String },
    #[error("the disjoint-support relation is only defined for the identity inner product")]
    SupportNeedsIdentity,
    #[error("zero linear form used as a denominator factor")]
    ZeroDenominator,
    #[error("computation interrupted")]
    Interrupted,
    #[error(transparent)]
    InnerProduct(#[from] InnerProductError),
}

/// Cooperative cancellation flag checked between reduction passes.
#[derive(Debug, Default)]
pub struct CancelFlag(AtomicBool);

impl CancelFlag {
    pub fn new() -> Self {
        CancelFlag(AtomicBool::new(false))
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

/// One summand `numerator / prod denominator`. Denominator factors are kept
/// as sorted `(canonical primitive form, multiplicity)` pairs; scalars from
/// canonicalisation are absorbed into the numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermTerm {
    pub(crate) numerator: Jet,
    pub(crate) denominator: Vec<(LinearForm, u32)>,
}

impl GermTerm {
    pub fn numerator(&self) -> &Jet {
        &self.numerator
    }

    pub fn denominator(&self) -> &[(LinearForm, u32)] {
        &self.denominator
    }

    pub(crate) fn total_multiplicity(&self) -> i64 {
        self.denominator.iter().map(|(_, m)| i64::from(*m)).sum()
    }

    /// Trusted degree bound of this term as a germ.
    pub(crate) fn d_max(&self) -> JetOrder {
        self.numerator.order().shift(-self.total_multiplicity())
    }

    fn embed(&self, dim: usize) -> GermTerm {
        GermTerm {
            numerator: self.numerator.embed(dim),
            denominator: self
                .denominator
                .iter()
                .map(|(l, m)| (l.embed(dim), *m))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Germ {
    dim: usize,
    terms: Vec<GermTerm>,
}

impl Germ {
    pub fn zero(dim: usize) -> Self {
        Germ { dim, terms: Vec::new() }
    }

    pub fn one(dim: usize) -> Self {
        Germ::from_jet(Jet::one(dim))
    }

    pub fn from_jet(jet: Jet) -> Self {
        let dim = jet.dim();
        if jet.is_zero() {
            return Germ::zero(dim);
        }
        Germ {
            dim,
            terms: vec![GermTerm {
                numerator: jet,
                denominator: Vec::new(),
            }],
        }
    }

    /// Builds `numerator / prod raw_denominator`; raw factors are
    /// canonicalised and their scalars pushed into the numerator.
    pub fn from_term(numerator: Jet, raw_denominator: &[LinearForm]) -> Result<Self, GermError> {
        let dim = raw_denominator
            .iter()
            .map(LinearForm::dim)
            .fold(numerator.dim(), usize::max);
        let mut num = numerator.embed(dim);
        let mut mults: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for l in raw_denominator {
            let (prim, scalar) = l.embed(dim).primitive_part().ok_or(GermError::ZeroDenominator)?;
            num = num.scale_rat(&(Rat::from_integer(1.into()) / scalar));
            *mults.entry(prim).or_insert(0) += 1;
        }
        if num.is_zero() {
            return Ok(Germ::zero(dim));
        }
        Ok(Germ {
            dim,
            terms: vec![GermTerm {
                numerator: num,
                denominator: mults.into_iter().collect(),
            }],
        })
    }

    /// `1 / prod raw_denominator`.
    pub fn inverse_of_forms(dim: usize, raw_denominator: &[LinearForm]) -> Result<Self, GermError> {
        Germ::from_term(Jet::one(dim), raw_denominator)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[GermTerm] {
        &self.terms
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.iter().all(|t| t.denominator.is_empty())
    }

    /// Lower end of the trusted degree window.
    pub fn d_min(&self) -> i64 {
        -self
            .terms
            .iter()
            .map(GermTerm::total_multiplicity)
            .max()
            .unwrap_or(0)
    }

    /// Upper end of the trusted degree window.
    pub fn d_max(&self) -> JetOrder {
        self.terms
            .iter()
            .map(GermTerm::d_max)
            .min()
            .unwrap_or(JetOrder::Exact)
    }

    pub fn embed(&self, dim: usize) -> Germ {
        assert!(dim >= self.dim);
        if dim == self.dim {
            return self.clone();
        }
        Germ {
            dim,
            terms: self.terms.iter().map(|t| t.embed(dim)).collect(),
        }
    }

    fn coembed(&self, other: &Germ) -> (Germ, Germ) {
        let dim = self.dim.max(other.dim);
        (self.embed(dim), other.embed(dim))
    }

    pub fn add(&self, other: &Germ) -> Germ {
        let (a, mut b) = self.coembed(other);
        let mut terms = a.terms;
        terms.append(&mut b.terms);
        Germ { dim: a.dim, terms }.merge_terms()
    }

    pub fn sub(&self, other: &Germ) -> Germ {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Germ {
        Germ {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| GermTerm {
                    numerator: t.numerator.neg(),
                    denominator: t.denominator.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Germ {
        Germ {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| GermTerm {
                    numerator: t.numerator.scale(c),
                    denominator: t.denominator.clone(),
                })
                .collect(),
        }
        .merge_terms()
    }

    pub fn scale_rat(&self, q: &Rat) -> Germ {
        self.scale(&Coefficient::from_rat(q.clone()))
    }

    /// The pointwise product. Total as a map; orthogonality gating is a
    /// separate query.
    pub fn mul(&self, other: &Germ) -> Germ {
        let (a, b) = self.coembed(other);
        let mut terms = Vec::new();
        for ta in &a.terms {
            for tb in &b.terms {
                let numerator = ta.numerator.mul(&tb.numerator);
                if numerator.is_zero() {
                    continue;
                }
                let mut denominator: BTreeMap<LinearForm, u32> =
                    ta.denominator.iter().cloned().collect();
                for (l, m) in &tb.denominator {
                    *denominator.entry(l.clone()).or_insert(0) += m;
                }
                terms.push(GermTerm {
                    numerator,
                    denominator: denominator.into_iter().collect(),
                });
            }
        }
        Germ { dim: a.dim, terms }.merge_terms()
    }

    pub(crate) fn merge_terms(self) -> Germ {
        let mut by_den: BTreeMap<Vec<(LinearForm, u32)>, Jet> = BTreeMap::new();
        for t in self.terms {
            match by_den.entry(t.denominator) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(t.numerator);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(&t.numerator);
                    *e.get_mut() = sum;
                }
            }
        }
        let terms = by_den
            .into_iter()
            .filter(|(_, n)| !n.is_zero())
            .map(|(denominator, numerator)| GermTerm { numerator, denominator })
            .collect();
        Germ { dim: self.dim, terms }
    }

    /// Clears all denominators of the difference and checks that every
    /// trusted coefficient vanishes. Two germs compare equal exactly when
    /// their difference passes this test; the verdict is only meaningful on
    /// the shared trusted window.
    pub fn is_zero_within_window(&self) -> bool {
        self.cleared_numerator().is_zero()
    }

    /// Value-level equality of the trusted windows.
    pub fn value_eq(&self, other: &Germ) -> bool {
        self.sub(other).is_zero_within_window()
    }

    /// Numerator after bringing every term over the common denominator.
    fn cleared_numerator(&self) -> Jet {
        let mut common: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for t in &self.terms {
            for (l, m) in &t.denominator {
                let e = common.entry(l.clone()).or_insert(0);
                *e = (*e).max(*m);
            }
        }
        let mut acc = Jet::zero(self.dim);
        for t in &self.terms {
            let mut num = t.numerator.clone();
            for (l, m) in &common {
                let have = t
                    .denominator
                    .iter()
                    .find(|(lf, _)| lf == l)
                    .map_or(0, |(_, mm)| *mm);
                for _ in have..*m {
                    num = num.mul(&Jet::from_linear_form(&l.embed(self.dim)));
                }
            }
            acc = acc.add(&num);
        }
        acc
    }

    /// A basis of the dependence space: the span of all denominator forms
    /// together with the minimal form space of every numerator jet (computed
    /// from the gradient coefficients, so e.g. a numerator `e1+e2` depends on
    /// one form, not two coordinates). Expected on reduced germs.
    pub fn dep(&self) -> Vec<LinearForm> {
        let n = self.dim;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for t in &self.terms {
            for (l, _) in &t.denominator {
                rows.push(l.coeffs().to_vec());
            }
            // Gradient rows: one per (monomial, tau-degree) of the partials.
            let partials: Vec<Jet> = (0..n).map(|a| t.numerator.derivative(a)).collect();
            let mut monomials: BTreeSet<(Vec<u32>, usize)> = BTreeSet::new();
            for p in &partials {
                for (e, c) in p.terms() {
                    for k in 0..=c.tau_degree().unwrap_or(0) {
                        monomials.insert((e.clone(), k));
                    }
                }
            }
            for (e, k) in monomials {
                rows.push(
                    partials
                        .iter()
                        .map(|p| p.coeff(&e).tau_coeff(k))
                        .collect(),
                );
            }
        }
        let _ = rref(&mut rows);
        rows.into_iter().map(LinearForm::new).collect()
    }

    /// Coordinate indices touched by the dependence space.
    pub fn supp(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for l in self.dep() {
            for a in 0..l.dim() {
                if !l.coeff(a).is_zero() {
                    out.insert(a);
                }
            }
        }
        out
    }

    pub fn numeric_eval(&self, point: &[f64]) -> Result<f64, GermError> {
        let mut acc = 0.0;
        for t in &self.terms {
            let mut den = 1.0;
            for (l, m) in &t.denominator {
                let v = l.eval_f64(point);
                if v == 0.0 {
                    return Err(GermError::PoleEvaluation { form: l.render() });
                }
                den *= v.powi(*m as i32);
            }
            acc += t.numerator.eval_f64(point) / den;
        }
        Ok(acc)
    }

    /// The constant coefficient of a holomorphic germ.
    pub fn ev0(&self) -> Result<Coefficient, GermError> {
        let reduced = self.reduce();
        if !reduced.is_holomorphic() {
            return Err(GermError::NotHolomorphic);
        }
        match reduced.d_max() {
            JetOrder::Truncated(n) if n < 0 => Err(GermError::InsufficientOrder { missing: -n }),
            _ => {
                let mut acc = Coefficient::zero();
                for t in &reduced.terms {
                    acc = acc.add(&t.numerator.constant_term());
                }
                Ok(acc)
            }
        }
    }

    /// The multivariate minimal-subtraction value: evaluate the orthogonal
    /// projection onto holomorphic germs at zero.
    pub fn renormalised_value(&self, q: &InnerProduct) -> Result<Coefficient, GermError> {
        self.project_plus(q)?.ev0()
    }
}

/// Which independence relation to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndependenceMode {
    /// Dependence spaces orthogonal under the inner product.
    PerpQ,
    /// Disjoint coordinate supports (identity inner product only).
    TopD,
}

/// Tests independence of two germs. `TopD` implies `PerpQ` for the identity
/// inner product.
pub fn are_independent(
    f: &Germ,
    g: &Germ,
    q: &InnerProduct,
    mode: IndependenceMode,
) -> Result<bool, GermError> {
    match mode {
        IndependenceMode::PerpQ => {
            let df = f.dep();
            let dg = g.dep();
            for a in &df {
                for b in &dg {
                    if !q.orthogonal(a, b)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        IndependenceMode::TopD => {
            if !q.is_identity() {
                return Err(GermError::SupportNeedsIdentity);
            }
            Ok(f.supp().is_disjoint(&g.supp()))
        }
    }
}

#[cfg(test)]
mod tests;
