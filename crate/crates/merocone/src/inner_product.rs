//! Rational positive-definite inner products. A single Gram matrix drives
//! both orthogonality relations in the crate: between linear forms (germ
//! dependence spaces, forest decorations) and between cone span vectors.

use thiserror::Error;

use crate::linalg::{determinant, Rat};
use crate::linear_form::LinearForm;
use num::Zero;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InnerProductError {
    #[error("gram matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("gram matrix must be symmetric")]
    NotSymmetric,
    #[error("gram matrix must be positive definite (leading principal minor {index} is not positive)")]
    NotPositiveDefinite { index: usize },
    #[error("gram matrix of size {gram_dim} cannot pair vectors of dimension {dim}")]
    DimensionTooSmall { gram_dim: usize, dim: usize },
}

/// An inner product on the ambient space. `Identity` works in every
/// dimension; an explicit Gram matrix pairs vectors up to its own size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InnerProduct {
    Identity,
    Gram(Vec<Vec<Rat>>),
}

impl InnerProduct {
    pub fn identity() -> Self {
        InnerProduct::Identity
    }

    /// Validates symmetry and positive definiteness (all leading principal
    /// minors positive) before accepting the matrix.
    pub fn from_matrix(matrix: Vec<Vec<Rat>>) -> Result<Self, InnerProductError> {
        let n = matrix.len();
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(InnerProductError::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(InnerProductError::NotSymmetric);
                }
            }
        }
        for k in 1..=n {
            let minor: Vec<Vec<Rat>> = matrix[..k].iter().map(|r| r[..k].to_vec()).collect();
            if determinant(&minor) <= Rat::zero() {
                return Err(InnerProductError::NotPositiveDefinite { index: k });
            }
        }
        Ok(InnerProduct::Gram(matrix))
    }

    pub fn is_identity(&self) -> bool {
        match self {
            InnerProduct::Identity => true,
            InnerProduct::Gram(m) => m
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, v)| {
                    if i == j {
                        *v == Rat::from_integer(1.into())
                    } else {
                        v.is_zero()
                    }
                })),
        }
    }

    pub fn pairing_slices(&self, a: &[Rat], b: &[Rat]) -> Result<Rat, InnerProductError> {
        match self {
            InnerProduct::Identity => {
                Ok(a.iter().zip(b).map(|(x, y)| x * y).sum())
            }
            InnerProduct::Gram(m) => {
                let dim = a.len().max(b.len());
                if dim > m.len() {
                    return Err(InnerProductError::DimensionTooSmall {
                        gram_dim: m.len(),
                        dim,
                    });
                }
                let mut acc = Rat::zero();
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        acc += x * &m[i][j] * y;
                    }
                }
                Ok(acc)
            }
        }
    }

    pub fn pairing(&self, a: &LinearForm, b: &LinearForm) -> Result<Rat, InnerProductError> {
        self.pairing_slices(a.coeffs(), b.coeffs())
    }

    /// The row vector of `x -> <x, l>` in coordinates, i.e. the Gram matrix
    /// applied to the form, padded to the requested dimension.
    pub fn pairing_row(&self, l: &LinearForm, dim: usize) -> Result<Vec<Rat>, InnerProductError> {
        match self {
            InnerProduct::Identity => {
                let mut row = l.coeffs().to_vec();
                row.resize(dim, Rat::zero());
                Ok(row)
            }
            InnerProduct::Gram(m) => {
                if dim > m.len() {
                    return Err(InnerProductError::DimensionTooSmall {
                        gram_dim: m.len(),
                        dim,
                    });
                }
                Ok((0..dim)
                    .map(|a| {
                        (0..l.dim().min(dim))
                            .map(|b| &m[a][b] * &l.coeff(b))
                            .sum()
                    })
                    .collect())
            }
        }
    }

    pub fn orthogonal(&self, a: &LinearForm, b: &LinearForm) -> Result<bool, InnerProductError> {
        Ok(self.pairing(a, b)?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_int};

    #[test]
    fn identity_pairing_is_the_dot_product() {
        let q = InnerProduct::identity();
        let a = LinearForm::from_integers(&[1, 1]);
        let b = LinearForm::from_integers(&[1, -1]);
        assert!(q.orthogonal(&a, &b).unwrap());
        assert_eq!(q.pairing(&a, &a).unwrap(), rat_int(2));
    }

    #[test]
    fn gram_validation() {
        assert!(InnerProduct::from_matrix(vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ])
        .is_ok());
        assert_eq!(
            InnerProduct::from_matrix(vec![
                vec![rat_int(1), rat_int(2)],
                vec![rat_int(2), rat_int(1)],
            ]),
            Err(InnerProductError::NotPositiveDefinite { index: 2 })
        );
        assert_eq!(
            InnerProduct::from_matrix(vec![
                vec![rat_int(1), rat_int(2)],
                vec![rat_int(0), rat_int(1)],
            ]),
            Err(InnerProductError::NotSymmetric)
        );
    }

    #[test]
    fn explicit_identity_detected() {
        let g = InnerProduct::from_matrix(vec![
            vec![rat_int(1), rat(0, 1)],
            vec![rat(0, 1), rat_int(1)],
        ])
        .unwrap();
        assert!(g.is_identity());
    }

    #[test]
    fn gram_changes_orthogonality() {
        let g = InnerProduct::from_matrix(vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(1), rat_int(2)],
        ])
        .unwrap();
        let a = LinearForm::from_integers(&[1, 1]);
        let b = LinearForm::from_integers(&[1, -1]);
        // (1,1) G (1,-1) = 2+1-1-2 = 0 still, but (1,0) G (0,1) = 1.
        assert!(g.orthogonal(&a, &b).unwrap());
        let e1 = LinearForm::from_integers(&[1, 0]);
        let e2 = LinearForm::from_integers(&[0, 1]);
        assert!(!g.orthogonal(&e1, &e2).unwrap());
    }
}
