//! Tuple predicates for the axiom hierarchy and the exhaustive scanners.
//!
//! Every predicate answers "is this specific tuple a violation?", so a
//! reported witness can be replayed through exactly the check that found it.
//! Products missing from the finite fragment (related pair, no table entry)
//! make a tuple inconclusive rather than a violation.

use super::{Axiom, FiniteLocalityStructure, LocalityError, ProductValue};

/// Three-valued outcome of one side of a biconditional.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Tri {
    False,
    True,
    Unknown,
}

pub(super) fn first_violation(
    s: &FiniteLocalityStructure,
    axiom: Axiom,
) -> Result<Option<Vec<usize>>, LocalityError> {
    let n = s.len();
    match axiom {
        Axiom::Symmetric => Ok(scan_pairs(n, |x, y| violates_symmetric(s, x, y))),
        Axiom::Transitive => Ok(scan_triples(n, |x, y, z| violates_transitive(s, x, y, z))),
        Axiom::LocalitySemigroup => {
            if let Some(w) = scan_pairs(n, |x, y| violates_symmetric(s, x, y)) {
                return Ok(Some(w));
            }
            Ok(scan_triples(n, |x, y, z| violates_locality_triple(s, x, y, z)))
        }
        Axiom::StrongSemigroup => Ok(scan_triples(n, |x, y, z| violates_strong(s, x, y, z))),
        Axiom::RefinedSemigroup => Ok(scan_triples(n, |x, y, z| violates_refined(s, x, y, z))),
        Axiom::PartialSemigroup => Ok(scan_triples(n, |x, y, z| violates_partial(s, x, y, z))),
        Axiom::SelectiveOneObject => {
            let unit = s.unit().ok_or(LocalityError::SelectiveNeedsUnit)?;
            for x in 0..n {
                if violates_selective_unit(s, unit, x) {
                    return Ok(Some(vec![x]));
                }
            }
            if let Some(w) = scan_pairs(n, |x, y| violates_selective_inverse(s, unit, x, y)) {
                return Ok(Some(w));
            }
            Ok(scan_triples(n, |x, y, z| violates_partial(s, x, y, z)))
        }
    }
}

pub(super) fn violates(
    s: &FiniteLocalityStructure,
    axiom: Axiom,
    tuple: &[usize],
) -> Result<bool, LocalityError> {
    Ok(match (axiom, tuple) {
        (Axiom::Symmetric, &[x, y]) => violates_symmetric(s, x, y),
        (Axiom::Transitive, &[x, y, z]) => violates_transitive(s, x, y, z),
        (Axiom::LocalitySemigroup, &[x, y]) => violates_symmetric(s, x, y),
        (Axiom::LocalitySemigroup, &[x, y, z]) => violates_locality_triple(s, x, y, z),
        (Axiom::StrongSemigroup, &[x, y, z]) => violates_strong(s, x, y, z),
        (Axiom::RefinedSemigroup, &[x, y, z]) => violates_refined(s, x, y, z),
        (Axiom::PartialSemigroup, &[x, y, z]) => violates_partial(s, x, y, z),
        (Axiom::SelectiveOneObject, t) => {
            let unit = s.unit().ok_or(LocalityError::SelectiveNeedsUnit)?;
            match *t {
                [x] => violates_selective_unit(s, unit, x),
                [x, y] => violates_selective_inverse(s, unit, x, y),
                [x, y, z] => violates_partial(s, x, y, z),
                _ => false,
            }
        }
        _ => false,
    })
}

fn scan_pairs(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            if f(x, y) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

fn scan_triples(n: usize, mut f: impl FnMut(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if f(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

fn violates_symmetric(s: &FiniteLocalityStructure, x: usize, y: usize) -> bool {
    s.is_related(x, y) && !s.is_related(y, x)
}

fn violates_transitive(s: &FiniteLocalityStructure, x: usize, y: usize, z: usize) -> bool {
    s.is_related(x, y) && s.is_related(y, z) && !s.is_related(x, z)
}

/// When all four products involved exist in the fragment, do the two
/// bracketings disagree?
fn assoc_mismatch(s: &FiniteLocalityStructure, x: usize, y: usize, z: usize) -> bool {
    let (ProductValue::Value(xy), ProductValue::Value(yz)) = (s.product(x, y), s.product(y, z))
    else {
        return false;
    };
    let (ProductValue::Value(l), ProductValue::Value(r)) = (s.product(xy, z), s.product(x, yz))
    else {
        return false;
    };
    l != r
}

/// Pointwise closure conditions plus associativity on pairwise-related
/// triples.
fn violates_locality_triple(s: &FiniteLocalityStructure, x: usize, y: usize, z: usize) -> bool {
    if let ProductValue::Value(xy) = s.product(x, y) {
        if s.is_related(x, z) && s.is_related(y, z) && !s.is_related(xy, z) {
            return true;
        }
        if s.is_related(z, x) && s.is_related(z, y) && !s.is_related(z, xy) {
            return true;
        }
    }
    s.is_related(x, y)
        && s.is_related(y, z)
        && s.is_related(x, z)
        && assoc_mismatch(s, x, y, z)
}

fn violates_strong(s: &FiniteLocalityStructure, x: usize, y: usize, z: usize) -> bool {
    if !(s.is_related(x, y) && s.is_related(y, z)) {
        return false;
    }
    if let ProductValue::Value(xy) = s.product(x, y) {
        if !s.is_related(xy, z) {
            return true;
        }
    }
    if let ProductValue::Value(yz) = s.product(y, z) {
        if !s.is_related(x, yz) {
            return true;
        }
    }
    assoc_mismatch(s, x, y, z)
}

fn violates_refined(s: &FiniteLocalityStructure, x: usize, y: usize, z: usize) -> bool {
    if let ProductValue::Value(xy) = s.product(x, y) {
        if s.is_related(y, z) != s.is_related(xy, z) {
            return true;
        }
    }
    if let ProductValue::Value(yz) = s.product(y, z) {
        if s.is_related(x, y) != s.is_related(x, yz) {
            return true;
        }
    }
    s.is_related(x, y) && s.is_related(y, z) && assoc_mismatch(s, x, y, z)
}

/// The associativity biconditional of partial semigroups, evaluated in the
/// fragment: `(x T y and xy T z) <=> (y T z and x T yz)`, with equal triple
/// products when both sides hold.
fn violates_partial(s: &FiniteLocalityStructure, x: usize, y: usize, z: usize) -> bool {
    let lhs = match s.product(x, y) {
        ProductValue::NotRelated => Tri::False,
        ProductValue::Undefined => Tri::Unknown,
        ProductValue::Value(xy) => {
            if s.is_related(xy, z) {
                Tri::True
            } else {
                Tri::False
            }
        }
    };
    let rhs = match s.product(y, z) {
        ProductValue::NotRelated => Tri::False,
        ProductValue::Undefined => Tri::Unknown,
        ProductValue::Value(yz) => {
            if s.is_related(x, yz) {
                Tri::True
            } else {
                Tri::False
            }
        }
    };
    match (lhs, rhs) {
        (Tri::Unknown, _) | (_, Tri::Unknown) => false,
        (Tri::True, Tri::True) => assoc_mismatch(s, x, y, z),
        (l, r) => l != r,
    }
}

/// Unit totality and identity laws.
fn violates_selective_unit(s: &FiniteLocalityStructure, unit: usize, x: usize) -> bool {
    s.product(unit, x) != ProductValue::Value(x) || s.product(x, unit) != ProductValue::Value(x)
}

/// Two-sided coherence of inverses: a product equal to the unit must also
/// hold with the factors swapped.
fn violates_selective_inverse(
    s: &FiniteLocalityStructure,
    unit: usize,
    x: usize,
    y: usize,
) -> bool {
    s.product(x, y) == ProductValue::Value(unit) && s.product(y, x) != ProductValue::Value(unit)
}
