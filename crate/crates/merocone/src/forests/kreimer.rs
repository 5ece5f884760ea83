//! Exact toy-model iterated integrals on decorated forests.
//!
//! The grafting action sends a symbol term `g * x^m` to
//! `g * Phi(L - m) * x^{m - L}`, where `Phi(a) = pi / sin(pi a)` is the
//! meromorphic continuation of `int_0^infty y^{-a}/(y+x) dy` at `x = 1`,
//! realised exactly as the germ `(1/a) * (pi a / sin(pi a))` with
//! coefficients in `Q[tau]`, `tau` standing for `pi^2`. Evaluating the lift
//! at `x = 1` and projecting onto holomorphic germs yields the renormalised
//! value of a properly decorated forest.

use std::collections::BTreeMap;

use num::{BigInt, Zero};

use crate::coefficient::Coefficient;
use crate::germs::Germ;
use crate::inner_product::InnerProduct;
use crate::jet::{Jet, JetOrder};
use crate::linalg::Rat;
use crate::linear_form::LinearForm;

use super::lift::{lift, OperatedAlgebra};
use super::{DecoratedForest, ForestError};

/// Element of the group algebra of exponents over germs: a finite sum
/// `sum_i f_i * x^{L_i}` with pairwise distinct exponents and nonzero germs.
#[derive(Clone, Debug)]
pub struct SymbolSum {
    terms: Vec<(Germ, LinearForm)>,
}

impl SymbolSum {
    /// The unit `1 * x^0`.
    pub fn unit() -> Self {
        SymbolSum {
            terms: vec![(Germ::one(0), LinearForm::zero(0))],
        }
    }

    pub fn from_terms(terms: Vec<(Germ, LinearForm)>) -> Self {
        let mut merged: BTreeMap<LinearForm, Germ> = BTreeMap::new();
        for (g, l) in terms {
            let key = l.trimmed();
            match merged.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(g);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(&g);
                    *e.get_mut() = sum;
                }
            }
        }
        SymbolSum {
            terms: merged
                .into_iter()
                .filter(|(_, g)| !g.reduce().terms().is_empty())
                .map(|(l, g)| (g, l))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Germ, LinearForm)] {
        &self.terms
    }

    /// Evaluation at `x = 1`: every `x^L` becomes `1`.
    pub fn evaluate_at_one(&self) -> Germ {
        let mut acc = Germ::zero(0);
        for (g, _) in &self.terms {
            acc = acc.add(g);
        }
        acc.reduce()
    }
}

/// Coefficients `c_k` of `pi a / sin(pi a) = sum_k c_k a^{2k}` with
/// `c_k in Q tau^k`, obtained by inverting the power series of
/// `sin(pi a) / (pi a)`.
fn phi_series(half_orders: usize) -> Vec<Coefficient> {
    // a_j = (-1)^j tau^j / (2j+1)!
    let mut direct: Vec<Coefficient> = Vec::with_capacity(half_orders + 1);
    let mut factorial = Rat::from_integer(BigInt::from(1));
    for j in 0..=half_orders {
        if j > 0 {
            factorial *= Rat::from_integer(BigInt::from(2 * j));
            factorial *= Rat::from_integer(BigInt::from(2 * j + 1));
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        direct.push(Coefficient::tau_power(
            Rat::from_integer(BigInt::from(sign)) / &factorial,
            j,
        ));
    }
    // b_0 = 1, b_m = -sum_{j=1..m} a_j b_{m-j}
    let mut inverse = vec![Coefficient::one()];
    for m in 1..=half_orders {
        let mut acc = Coefficient::zero();
        for j in 1..=m {
            acc = acc.add(&direct[j].mul(&inverse[m - j]));
        }
        inverse.push(acc.neg());
    }
    inverse
}

/// The germ `Phi(l) = pi / sin(pi l)` truncated to the working order:
/// `1/l + (tau/6) l + (7 tau^2/360) l^3 + ...`, an odd series.
pub fn phi_germ(l: &LinearForm, order: i64) -> Result<Germ, ForestError> {
    let top = (order + 1).max(0) as usize;
    let series = phi_series(top / 2);
    let ljet = Jet::from_linear_form(l);
    let lsq = ljet.mul(&ljet);
    let mut numerator = Jet::zero(l.dim());
    let mut power = Jet::one(l.dim());
    for c in &series {
        numerator = numerator.add(&power.scale(c));
        power = power.mul(&lsq);
    }
    let numerator = numerator.truncate_to(JetOrder::Truncated(order + 1));
    Ok(Germ::from_term(numerator, std::slice::from_ref(l))?)
}

fn dependence_with_exponent(g: &Germ, l: &LinearForm) -> Vec<LinearForm> {
    let mut dep = g.dep();
    if !l.is_zero() {
        dep.push(l.clone());
    }
    dep
}

fn check_orthogonal(
    q: &InnerProduct,
    left: &[LinearForm],
    right: &[LinearForm],
    what: &str,
) -> Result<(), ForestError> {
    for a in left {
        for b in right {
            let pairing = q.pairing(a, b)?;
            if !pairing.is_zero() {
                return Err(ForestError::SymbolLocality(format!(
                    "{what}: {} against {} pairs to {}",
                    a.render(),
                    b.render(),
                    pairing
                )));
            }
        }
    }
    Ok(())
}

/// One grafting step: `g * x^m` becomes `g * Phi(l - m) * x^{m - l}`,
/// guarded by independence of `l` from the term's germ dependence and
/// exponent.
pub fn kreimer_beta(
    l: &LinearForm,
    u: &SymbolSum,
    q: &InnerProduct,
    order: i64,
) -> Result<SymbolSum, ForestError> {
    let mut out = Vec::new();
    for (g, m) in u.terms() {
        check_orthogonal(
            q,
            std::slice::from_ref(l),
            &dependence_with_exponent(g, m),
            "grafting decoration",
        )?;
        let argument = l.sub(m);
        let phi = phi_germ(&argument, order)?;
        out.push((g.mul(&phi), m.sub(l)));
    }
    Ok(SymbolSum::from_terms(out))
}

/// The toy-model target of the universal lift.
pub struct KreimerAlgebra {
    pub q: InnerProduct,
    pub order: i64,
}

impl OperatedAlgebra for KreimerAlgebra {
    type Elem = SymbolSum;
    type Error = ForestError;

    fn unit(&self) -> SymbolSum {
        SymbolSum::unit()
    }

    fn mul(&self, a: &SymbolSum, b: &SymbolSum) -> Result<SymbolSum, ForestError> {
        // Bilinear product (f x^l)(g x^m) = fg x^{l+m}, gated on independence
        // of the two sums.
        for (f, l) in a.terms() {
            let left = dependence_with_exponent(f, l);
            for (g, m) in b.terms() {
                check_orthogonal(&self.q, &left, &dependence_with_exponent(g, m), "product")?;
            }
        }
        let mut out = Vec::new();
        for (f, l) in a.terms() {
            for (g, m) in b.terms() {
                out.push((f.mul(g), l.add(m)));
            }
        }
        Ok(SymbolSum::from_terms(out))
    }

    fn graft(&self, decoration: &LinearForm, below: &SymbolSum) -> Result<SymbolSum, ForestError> {
        kreimer_beta(decoration, below, &self.q, self.order)
    }
}

/// The lift of a properly decorated forest into symbol sums.
pub fn kreimer_symbol(
    forest: &DecoratedForest,
    q: &InnerProduct,
    order: i64,
) -> Result<SymbolSum, ForestError> {
    forest.validate_locality(q)?;
    let algebra = KreimerAlgebra {
        q: q.clone(),
        order,
    };
    lift(&algebra, forest)
}

/// The lift evaluated at `x = 1`: a single germ carrying the iterated
/// integral of the forest.
pub fn kreimer_r1(
    forest: &DecoratedForest,
    q: &InnerProduct,
    order: i64,
) -> Result<Germ, ForestError> {
    Ok(kreimer_symbol(forest, q, order)?.evaluate_at_one())
}

/// Renormalised value of the forest: holomorphic projection of the lift at
/// `x = 1`, evaluated at zero.
pub fn kreimer_renormalised(
    forest: &DecoratedForest,
    q: &InnerProduct,
    order: i64,
) -> Result<Coefficient, ForestError> {
    Ok(kreimer_r1(forest, q, order)?.renormalised_value(q)?)
}
