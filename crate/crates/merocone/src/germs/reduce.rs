//! Canonical reduction of germs: cancel denominator factors dividing the
//! numerator, then split terms with linearly dependent denominator forms by
//! exact partial-fraction steps until every term's distinct denominator forms
//! are independent. The value is unchanged at every step.

use std::collections::BTreeMap;

use num::Zero;

use crate::jet::Jet;
use crate::linalg::{rank, solve_combination, Rat};
use crate::linear_form::LinearForm;

use super::{CancelFlag, Germ, GermError, GermTerm};

impl Germ {
    pub fn reduce(&self) -> Germ {
        // Infallible: without a cancel flag the worklist always drains.
        self.reduce_impl(None).expect("reduce without cancellation cannot fail")
    }

    /// Reduction with a cooperative cancellation flag, checked between
    /// partial-fraction passes.
    pub fn reduce_cancellable(&self, flag: &CancelFlag) -> Result<Germ, GermError> {
        self.reduce_impl(Some(flag))
    }

    fn reduce_impl(&self, flag: Option<&CancelFlag>) -> Result<Germ, GermError> {
        let dim = self.dim;
        let mut work: Vec<(Jet, BTreeMap<LinearForm, u32>)> = self
            .terms
            .iter()
            .map(|t| (t.numerator.clone(), t.denominator.iter().cloned().collect()))
            .collect();
        let mut done: Vec<GermTerm> = Vec::new();
        while let Some((mut num, mut den)) = work.pop() {
            if flag.is_some_and(CancelFlag::is_cancelled) {
                return Err(GermError::Interrupted);
            }
            cancel_common_factors(dim, &mut num, &mut den);
            if num.is_zero() {
                continue;
            }
            let forms: Vec<LinearForm> = den.keys().cloned().collect();
            match dependency(&forms) {
                None => done.push(GermTerm {
                    numerator: num,
                    denominator: den.into_iter().collect(),
                }),
                Some((k, combo)) => {
                    // forms[k] = sum_i combo_i * forms[i]; trade one power of
                    // each contributing factor for one power of forms[k].
                    for (i, a) in combo.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        let mut child_den = den.clone();
                        *child_den.get_mut(&forms[i]).unwrap() -= 1;
                        if child_den[&forms[i]] == 0 {
                            child_den.remove(&forms[i]);
                        }
                        *child_den.get_mut(&forms[k]).unwrap() += 1;
                        work.push((num.scale_rat(a), child_den));
                    }
                }
            }
        }
        Ok(Germ { dim, terms: done }.merge_terms())
    }
}

/// Divides out denominator factors that divide the numerator exactly.
fn cancel_common_factors(dim: usize, num: &mut Jet, den: &mut BTreeMap<LinearForm, u32>) {
    'restart: loop {
        if num.is_zero() {
            den.clear();
            return;
        }
        let forms: Vec<LinearForm> = den.keys().cloned().collect();
        for l in forms {
            if let Some(q) = divide_jet_by_form(dim, num, &l) {
                *num = q;
                let m = den.get_mut(&l).unwrap();
                *m -= 1;
                if *m == 0 {
                    den.remove(&l);
                }
                continue 'restart;
            }
        }
        return;
    }
}

/// Exact division of a jet by a linear form via an adapted coordinate basis.
fn divide_jet_by_form(dim: usize, jet: &Jet, l: &LinearForm) -> Option<Jet> {
    if jet.is_zero() {
        return Some(jet.clone());
    }
    // Complete {l} to a basis with standard coordinate forms.
    let mut cols: Vec<Vec<Rat>> = vec![l.coeffs().to_vec()];
    let mut basis: Vec<LinearForm> = vec![l.clone()];
    for a in 0..dim {
        if basis.len() == dim {
            break;
        }
        let candidate = LinearForm::coordinate(dim, a);
        cols.push(candidate.coeffs().to_vec());
        if rank(&cols) == cols.len() {
            basis.push(candidate);
        } else {
            cols.pop();
        }
    }
    let to_new = change_of_coordinates(dim, &basis);
    let in_new = jet.substitute(&to_new);
    let quotient = in_new.divide_by_variable(0)?;
    Some(quotient.substitute(&basis))
}

/// For a covector basis, expresses each old coordinate form as a combination
/// of the basis: the result can be fed to `Jet::substitute` to rewrite a jet
/// in the new coordinates.
pub(crate) fn change_of_coordinates(dim: usize, basis: &[LinearForm]) -> Vec<LinearForm> {
    assert_eq!(basis.len(), dim);
    let cols: Vec<Vec<Rat>> = basis.iter().map(|b| b.coeffs().to_vec()).collect();
    (0..dim)
        .map(|a| {
            let mut target = vec![Rat::zero(); dim];
            target[a] = Rat::from_integer(1.into());
            let coords = solve_combination(&cols, &target)
                .expect("basis must span the coordinate forms");
            LinearForm::new(coords)
        })
        .collect()
}

/// Finds the first (in canonical order) denominator form lying in the span of
/// the greedily selected independent forms before it, together with its
/// expansion over all forms. `None` when the forms are independent.
fn dependency(forms: &[LinearForm]) -> Option<(usize, Vec<Rat>)> {
    let mut selected: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (i, l) in forms.iter().enumerate() {
        rows.push(l.coeffs().to_vec());
        if rank(&rows) == rows.len() {
            selected.push(i);
        } else {
            rows.pop();
            let cols: Vec<Vec<Rat>> = selected.iter().map(|&j| forms[j].coeffs().to_vec()).collect();
            let partial = solve_combination(&cols, l.coeffs())
                .expect("skipped form must depend on the earlier selected ones");
            let mut combo = vec![Rat::zero(); forms.len()];
            for (&j, a) in selected.iter().zip(partial) {
                combo[j] = a;
            }
            return Some((i, combo));
        }
    }
    None
}
