//! The universal property of decorated forests: a unit, a partial product
//! and a decoration-indexed grafting action determine a unique map from the
//! forest algebra.

use crate::linear_form::LinearForm;

use super::DecoratedForest;

/// Target of the universal lift: a unital algebra with a locality-gated
/// product and a grafting action indexed by linear forms. Gates reject
/// dependent arguments through `Error`.
pub trait OperatedAlgebra {
    type Elem: Clone;
    type Error;

    fn unit(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Self::Error>;
    fn graft(&self, decoration: &LinearForm, below: &Self::Elem)
        -> Result<Self::Elem, Self::Error>;
}

/// Structural recursion defining the lift: the empty forest maps to the
/// unit, disjoint union to the product, and a tree to the grafting action
/// applied to the lift of its root's subforest. Commutativity of the gated
/// product on independent elements makes the result independent of sibling
/// enumeration order.
pub fn lift<A: OperatedAlgebra>(
    algebra: &A,
    forest: &DecoratedForest,
) -> Result<A::Elem, A::Error> {
    let mut acc = algebra.unit();
    for root in forest.roots() {
        let tree = lift_tree(algebra, forest, root)?;
        acc = algebra.mul(&acc, &tree)?;
    }
    Ok(acc)
}

fn lift_tree<A: OperatedAlgebra>(
    algebra: &A,
    forest: &DecoratedForest,
    vertex: usize,
) -> Result<A::Elem, A::Error> {
    let mut acc = algebra.unit();
    for child in forest.children(vertex) {
        let sub = lift_tree(algebra, forest, child)?;
        acc = algebra.mul(&acc, &sub)?;
    }
    algebra.graft(forest.decoration(vertex), &acc)
}
