//! Non-planar rooted forests with pairwise-independent linear-form
//! decorations, the universal lift of an operated structure to the forest
//! algebra, and the exact toy-model iterated integrals built on it.

mod kreimer;
mod lift;

use thiserror::Error;

use crate::germs::GermError;
use crate::inner_product::{InnerProduct, InnerProductError};
use crate::linear_form::LinearForm;
use num::Zero;

pub use kreimer::{
    kreimer_beta, kreimer_r1, kreimer_renormalised, kreimer_symbol, phi_germ, KreimerAlgebra,
    SymbolSum,
};
pub use lift::{lift, OperatedAlgebra};

#[derive(Debug, Error)]
pub enum ForestError {
    #[error("vertex {vertex} has out-of-range parent {parent}")]
    BadParent { vertex: usize, parent: usize },
    #[error("parent chain through vertex {0} contains a cycle")]
    Cycle(usize),
    #[error("vertex {0} carries the zero form as decoration")]
    ZeroDecoration(usize),
    #[error("decorations of vertices {a} and {b} are not independent (pairing {pairing})")]
    LocalityViolation { a: usize, b: usize, pairing: String },
    #[error("grafting decoration is not independent of vertex {vertex} (pairing {pairing})")]
    GraftViolation { vertex: usize, pairing: String },
    #[error("symbol terms are not independent: {0}")]
    SymbolLocality(String),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    InnerProduct(#[from] InnerProductError),
}

/// A rooted forest on vertices `0..len` with a linear form at every vertex.
/// Proper decoration (pairwise independence) is checked against an inner
/// product by [`DecoratedForest::validate_locality`] and by the operations
/// that combine forests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedForest {
    parent: Vec<Option<usize>>,
    decoration: Vec<LinearForm>,
}

impl DecoratedForest {
    pub fn new(
        parent: Vec<Option<usize>>,
        decoration: Vec<LinearForm>,
    ) -> Result<Self, ForestError> {
        assert_eq!(parent.len(), decoration.len(), "one decoration per vertex");
        let n = parent.len();
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                if *p >= n {
                    return Err(ForestError::BadParent { vertex: v, parent: *p });
                }
            }
        }
        // Walk each parent chain; more than n steps means a cycle.
        for v in 0..n {
            let mut cur = v;
            for _ in 0..=n {
                match parent[cur] {
                    None => break,
                    Some(p) => {
                        if p == v {
                            return Err(ForestError::Cycle(v));
                        }
                        cur = p;
                    }
                }
            }
            if parent[cur].is_some() {
                return Err(ForestError::Cycle(v));
            }
        }
        for (v, d) in decoration.iter().enumerate() {
            if d.is_zero() {
                return Err(ForestError::ZeroDecoration(v));
            }
        }
        Ok(DecoratedForest { parent, decoration })
    }

    pub fn empty() -> Self {
        DecoratedForest {
            parent: Vec::new(),
            decoration: Vec::new(),
        }
    }

    pub fn single(decoration: LinearForm) -> Result<Self, ForestError> {
        DecoratedForest::new(vec![None], vec![decoration])
    }

    /// Forest on the given parent structure with vertex `i` decorated by the
    /// fresh coordinate `e_{i+1}`; fresh coordinates are automatically
    /// pairwise independent.
    pub fn with_fresh_decorations(parent: Vec<Option<usize>>) -> Result<Self, ForestError> {
        let n = parent.len();
        let decoration = (0..n).map(|i| LinearForm::coordinate(n, i)).collect();
        DecoratedForest::new(parent, decoration)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn decoration(&self, v: usize) -> &LinearForm {
        &self.decoration[v]
    }

    pub fn decorations(&self) -> &[LinearForm] {
        &self.decoration
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.parent[v].is_none()).collect()
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.parent[c] == Some(v)).collect()
    }

    /// Checks proper decoration: every pair of distinct vertices carries
    /// independent forms.
    pub fn validate_locality(&self, q: &InnerProduct) -> Result<(), ForestError> {
        for a in 0..self.len() {
            for b in (a + 1)..self.len() {
                let pairing = q.pairing(&self.decoration[a], &self.decoration[b])?;
                if !pairing.is_zero() {
                    return Err(ForestError::LocalityViolation {
                        a,
                        b,
                        pairing: pairing.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Disjoint union; the other forest's vertices are re-indexed after this
    /// one's. Cross decorations must be independent.
    pub fn concat(&self, other: &DecoratedForest, q: &InnerProduct) -> Result<Self, ForestError> {
        let n = self.len();
        for a in 0..n {
            for b in 0..other.len() {
                let pairing = q.pairing(&self.decoration[a], &other.decoration[b])?;
                if !pairing.is_zero() {
                    return Err(ForestError::LocalityViolation {
                        a,
                        b: n + b,
                        pairing: pairing.to_string(),
                    });
                }
            }
        }
        let mut parent = self.parent.clone();
        parent.extend(other.parent.iter().map(|p| p.map(|x| x + n)));
        let mut decoration = self.decoration.clone();
        decoration.extend(other.decoration.iter().cloned());
        DecoratedForest::new(parent, decoration)
    }

    /// Adds a new root decorated by `l`, grafting every current root below
    /// it. The decoration must be independent of every existing one.
    pub fn graft(&self, l: LinearForm, q: &InnerProduct) -> Result<Self, ForestError> {
        if l.is_zero() {
            return Err(ForestError::ZeroDecoration(self.len()));
        }
        for v in 0..self.len() {
            let pairing = q.pairing(&l, &self.decoration[v])?;
            if !pairing.is_zero() {
                return Err(ForestError::GraftViolation {
                    vertex: v,
                    pairing: pairing.to_string(),
                });
            }
        }
        let root = self.len();
        let mut parent = self.parent.clone();
        for v in 0..self.len() {
            if parent[v].is_none() {
                parent[v] = Some(root);
            }
        }
        parent.push(None);
        let mut decoration = self.decoration.clone();
        decoration.push(l);
        DecoratedForest::new(parent, decoration)
    }

    /// The same forest with vertices renamed by `perm` (vertex `v` becomes
    /// `perm[v]`); used to check that nothing depends on sibling enumeration
    /// order.
    pub fn relabelled(&self, perm: &[usize]) -> Result<Self, ForestError> {
        assert_eq!(perm.len(), self.len());
        let n = self.len();
        let mut parent = vec![None; n];
        let mut decoration = vec![LinearForm::zero(0); n];
        for v in 0..n {
            parent[perm[v]] = self.parent[v].map(|p| perm[p]);
            decoration[perm[v]] = self.decoration[v].clone();
        }
        DecoratedForest::new(parent, decoration)
    }
}
