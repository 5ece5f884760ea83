//! The orthogonal projection of a germ onto holomorphic germs along the
//! complement generated by polar germs.
//!
//! Per reduced term `h / prod L_i^{m_i}` the numerator is rewritten in
//! coordinates adapted to the denominator: the forms `L_i` themselves plus a
//! basis of their orthogonal complement under the inner product. Monomials
//! that cancel every denominator factor are holomorphic; monomials whose
//! non-cancelled numerator part is orthogonal to the surviving denominator
//! span are polar; any remaining numerator factor `L_i` is split into its
//! projection onto the surviving denominator span (which cancels further)
//! plus an orthogonal remainder. Each split lowers the non-orthogonal
//! numerator degree, so the rewriting terminates, and every polar output term
//! has its numerator dependence orthogonal to its denominator span — the
//! defining property that makes the decomposition unique.

use std::collections::BTreeMap;

use num::Zero;

use crate::coefficient::Coefficient;
use crate::inner_product::InnerProduct;
use crate::jet::{Jet, JetOrder};
use crate::linalg::{invert, nullspace, solve_combination, Rat};
use crate::linear_form::LinearForm;

use super::{Germ, GermError, GermTerm};

impl Germ {
    /// The holomorphic component of the decomposition.
    pub fn project_plus(&self, q: &InnerProduct) -> Result<Germ, GermError> {
        Ok(self.project_pair(q)?.0)
    }

    /// The polar component of the decomposition.
    pub fn project_minus(&self, q: &InnerProduct) -> Result<Germ, GermError> {
        Ok(self.project_pair(q)?.1)
    }

    /// Both components at once; `self = plus + minus` exactly on the trusted
    /// window. Requires the window to reach degree zero.
    pub fn project_pair(&self, q: &InnerProduct) -> Result<(Germ, Germ), GermError> {
        let f = self.reduce();
        if let JetOrder::Truncated(n) = f.d_max() {
            if n < 0 {
                return Err(GermError::InsufficientOrder { missing: -n });
            }
        }
        let mut plus = Germ::zero(f.dim);
        let mut minus = Germ::zero(f.dim);
        for term in &f.terms {
            let (p, m) = project_term(f.dim, term, q)?;
            plus = plus.add(&p);
            minus = minus.add(&m);
        }
        Ok((plus.reduce(), minus.reduce()))
    }
}

/// Work item key: exponents of the surviving denominator-adapted numerator
/// factors, remaining denominator multiplicities, and the multiset of
/// already-orthogonal linear factors.
type ItemKey = (Vec<u32>, Vec<u32>, Vec<LinearForm>);

fn project_term(
    dim: usize,
    term: &GermTerm,
    q: &InnerProduct,
) -> Result<(Germ, Germ), GermError> {
    if term.denominator.is_empty() {
        return Ok((Germ::from_jet(term.numerator.clone()), Germ::zero(dim)));
    }
    let forms: Vec<LinearForm> = term.denominator.iter().map(|(l, _)| l.clone()).collect();
    let mults: Vec<u32> = term.denominator.iter().map(|(_, m)| *m).collect();
    let k = forms.len();

    // Adapted coordinates: u_i = L_i, w_j spanning the orthogonal complement.
    let pairing_rows: Vec<Vec<Rat>> = forms
        .iter()
        .map(|l| q.pairing_row(l, dim))
        .collect::<Result<_, _>>()?;
    let w_basis: Vec<LinearForm> = nullspace(&pairing_rows, dim)
        .into_iter()
        .map(LinearForm::new)
        .collect();
    let mut a_rows = vec![vec![Rat::zero(); dim]; dim];
    for (j, l) in forms.iter().chain(w_basis.iter()).enumerate() {
        for i in 0..dim {
            a_rows[i][j] = l.coeff(i);
        }
    }
    let a_inv = invert(&a_rows).expect("denominator forms plus complement form a basis");
    let to_adapted: Vec<LinearForm> = (0..dim)
        .map(|a| LinearForm::new((0..dim).map(|i| a_inv[i][a].clone()).collect()))
        .collect();
    let h = term.numerator.substitute(&to_adapted);

    let mut work: BTreeMap<ItemKey, Coefficient> = BTreeMap::new();
    let push = |work: &mut BTreeMap<ItemKey, Coefficient>, key: ItemKey, c: Coefficient| {
        if c.is_zero() {
            return;
        }
        let entry = work.entry(key).or_insert_with(Coefficient::zero);
        *entry = entry.add(&c);
    };
    for (expts, c) in h.terms() {
        let upows: Vec<u32> = expts[..k].to_vec();
        let mut ortho = Vec::new();
        for (j, &e) in expts[k..].iter().enumerate() {
            for _ in 0..e {
                ortho.push(w_basis[j].clone());
            }
        }
        ortho.sort();
        push(&mut work, (upows, mults.clone(), ortho), c.clone());
    }

    let mut plus_jet = Jet::zero(dim);
    let mut minus_terms: Vec<GermTerm> = Vec::new();
    while let Some(((mut upows, mut den, ortho), coeff)) = work.pop_first() {
        if coeff.is_zero() {
            continue;
        }
        for i in 0..k {
            let cancel = upows[i].min(den[i]);
            upows[i] -= cancel;
            den[i] -= cancel;
        }
        if den.iter().all(|&m| m == 0) {
            let mut mono = Jet::constant(dim, coeff);
            for (i, &e) in upows.iter().enumerate() {
                mono = mono.mul(&Jet::from_linear_form(&forms[i].embed(dim)).pow(e));
            }
            for l in &ortho {
                mono = mono.mul(&Jet::from_linear_form(&l.embed(dim)));
            }
            plus_jet = plus_jet.add(&mono);
        } else if upows.iter().all(|&e| e == 0) {
            let mut num = Jet::constant(dim, coeff);
            for l in &ortho {
                num = num.mul(&Jet::from_linear_form(&l.embed(dim)));
            }
            minus_terms.push(GermTerm {
                numerator: num,
                denominator: forms
                    .iter()
                    .zip(&den)
                    .filter(|(_, &m)| m > 0)
                    .map(|(l, &m)| (l.clone(), m))
                    .collect(),
            });
        } else {
            // Split one surviving numerator factor against the surviving
            // denominator span.
            let i0 = (0..k).find(|&i| upows[i] > 0).unwrap();
            let surviving: Vec<usize> = (0..k).filter(|&i| den[i] > 0).collect();
            let gram_cols: Vec<Vec<Rat>> = surviving
                .iter()
                .map(|&j| {
                    surviving
                        .iter()
                        .map(|&r| q.pairing(&forms[r], &forms[j]))
                        .collect::<Result<_, _>>()
                })
                .collect::<Result<_, _>>()?;
            let target: Vec<Rat> = surviving
                .iter()
                .map(|&r| q.pairing(&forms[r], &forms[i0]))
                .collect::<Result<_, _>>()?;
            let combo = solve_combination(&gram_cols, &target)
                .expect("gram matrix of independent forms is invertible");
            let mut remainder = forms[i0].embed(dim);
            upows[i0] -= 1;
            for (&j, a) in surviving.iter().zip(&combo) {
                if a.is_zero() {
                    continue;
                }
                remainder = remainder.sub(&forms[j].scale(a).embed(dim));
                let mut child_den = den.clone();
                child_den[j] -= 1;
                push(
                    &mut work,
                    (upows.clone(), child_den, ortho.clone()),
                    coeff.mul_rat(a),
                );
            }
            if !remainder.is_zero() {
                let mut child_ortho = ortho.clone();
                child_ortho.push(remainder);
                child_ortho.sort();
                push(&mut work, (upows, den, child_ortho), coeff);
            }
        }
    }

    // Trust bookkeeping: every output inherits the term's trusted window.
    let d_max = term.d_max();
    let plus = Germ::from_jet(plus_jet.truncate_to(d_max));
    let minus = Germ {
        dim,
        terms: minus_terms
            .into_iter()
            .map(|t| {
                let mult = t.total_multiplicity();
                GermTerm {
                    numerator: t.numerator.truncate_to(d_max.shift(mult)),
                    denominator: t.denominator,
                }
            })
            .collect(),
    }
    .merge_terms();
    Ok((plus, minus))
}
