//! Finite partial-product structures and exhaustive axiom checkers.
//!
//! A [`FiniteLocalityStructure`] is an explicit carrier with a binary
//! relation and a partial product defined on (a subset of) the related pairs.
//! Infinite motivating structures are represented by finite closed fragments:
//! a related pair may lack a product when the true product falls outside the
//! carrier, and the checkers quantify only over tuples whose intermediate
//! products stay inside. [`check_axiom`] verifies one axiom of the partial
//! semigroup hierarchy exhaustively and reports the first violating tuple in
//! element order.

mod axioms;
mod builtins;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use builtins::{builtin_structure, BuiltinStructure};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LocalityError {
    #[error("unknown element id {0:?}")]
    UnknownElement(String),
    #[error("index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("product defined on ({a}, {b}) which is not in the relation")]
    ProductOutsideRelation { a: String, b: String },
    #[error("product result index {index} out of range for carrier of size {size}")]
    ProductResultOutOfRange { index: usize, size: usize },
    #[error("duplicate element id {0:?}")]
    DuplicateElement(String),
    #[error("the selective-one-object axiom needs a designated unit")]
    SelectiveNeedsUnit,
}

/// Explicit finite carrier, relation graph, and partial product table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLocalityStructure {
    elements: Vec<String>,
    relation: BTreeSet<(usize, usize)>,
    product: BTreeMap<(usize, usize), usize>,
    unit: Option<usize>,
}

/// Result of looking up a partial product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductValue {
    /// The pair is not in the relation, so no product can exist.
    NotRelated,
    /// The pair is related but its product lies outside the finite fragment.
    Undefined,
    /// Product of the pair, as a carrier index.
    Value(usize),
}

impl FiniteLocalityStructure {
    pub fn new(
        elements: Vec<String>,
        relation: impl IntoIterator<Item = (usize, usize)>,
        product: impl IntoIterator<Item = (usize, usize, usize)>,
        unit: Option<usize>,
    ) -> Result<Self, LocalityError> {
        let size = elements.len();
        let mut seen = BTreeSet::new();
        for id in &elements {
            if !seen.insert(id) {
                return Err(LocalityError::DuplicateElement(id.clone()));
            }
        }
        let check = |index: usize| {
            if index >= size {
                Err(LocalityError::IndexOutOfRange { index, size })
            } else {
                Ok(index)
            }
        };
        let mut rel = BTreeSet::new();
        for (a, b) in relation {
            rel.insert((check(a)?, check(b)?));
        }
        let mut prod = BTreeMap::new();
        for (a, b, c) in product {
            check(a)?;
            check(b)?;
            if !rel.contains(&(a, b)) {
                return Err(LocalityError::ProductOutsideRelation {
                    a: elements[a].clone(),
                    b: elements[b].clone(),
                });
            }
            if c >= size {
                return Err(LocalityError::ProductResultOutOfRange { index: c, size });
            }
            prod.insert((a, b), c);
        }
        if let Some(u) = unit {
            check(u)?;
        }
        Ok(FiniteLocalityStructure {
            elements,
            relation: rel,
            product: prod,
            unit,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn index_of(&self, id: &str) -> Result<usize, LocalityError> {
        self.elements
            .iter()
            .position(|e| e == id)
            .ok_or_else(|| LocalityError::UnknownElement(id.to_string()))
    }

    pub fn is_related(&self, a: usize, b: usize) -> bool {
        self.relation.contains(&(a, b))
    }

    pub fn relation(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.relation.iter().copied()
    }

    pub fn products(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.product.iter().map(|(&k, &v)| (k, v))
    }

    pub fn product(&self, a: usize, b: usize) -> ProductValue {
        if !self.is_related(a, b) {
            return ProductValue::NotRelated;
        }
        match self.product.get(&(a, b)) {
            Some(&c) => ProductValue::Value(c),
            None => ProductValue::Undefined,
        }
    }
}

/// Side of a polar set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolarSide {
    /// `{ x | (x, u) related for all u in U }`
    Left,
    /// `{ x | (u, x) related for all u in U }`
    Right,
}

/// The polar set of `subset`; for symmetric relations both sides agree, and
/// the empty subset yields the whole carrier.
pub fn polar_set(
    s: &FiniteLocalityStructure,
    subset: &[&str],
    side: PolarSide,
) -> Result<BTreeSet<String>, LocalityError> {
    let indices: Vec<usize> = subset
        .iter()
        .map(|id| s.index_of(id))
        .collect::<Result<_, _>>()?;
    Ok((0..s.len())
        .filter(|&x| {
            indices.iter().all(|&u| match side {
                PolarSide::Left => s.is_related(x, u),
                PolarSide::Right => s.is_related(u, x),
            })
        })
        .map(|x| s.elements[x].clone())
        .collect())
}

/// The checkable axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    LocalitySemigroup,
    StrongSemigroup,
    RefinedSemigroup,
    PartialSemigroup,
    Transitive,
    Symmetric,
    SelectiveOneObject,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::LocalitySemigroup,
        Axiom::StrongSemigroup,
        Axiom::RefinedSemigroup,
        Axiom::PartialSemigroup,
        Axiom::Transitive,
        Axiom::Symmetric,
        Axiom::SelectiveOneObject,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::LocalitySemigroup => "locality-semigroup",
            Axiom::StrongSemigroup => "strong-semigroup",
            Axiom::RefinedSemigroup => "refined-semigroup",
            Axiom::PartialSemigroup => "partial-semigroup",
            Axiom::Transitive => "transitive",
            Axiom::Symmetric => "symmetric",
            Axiom::SelectiveOneObject => "selective-one-object",
        }
    }

    pub fn from_name(name: &str) -> Option<Axiom> {
        Axiom::ALL.into_iter().find(|a| a.name() == name)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Verdict of a check, with the first violating tuple when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub holds: bool,
    pub witness: Option<Vec<String>>,
}

/// Exhaustively verifies `axiom` on `s`. Failing reports carry the first
/// violating tuple in element order; [`replay_witness`] re-checks any witness
/// against the same tuple predicate.
pub fn check_axiom(
    s: &FiniteLocalityStructure,
    axiom: Axiom,
) -> Result<AxiomReport, LocalityError> {
    let witness = axioms::first_violation(s, axiom)?;
    Ok(AxiomReport {
        axiom,
        holds: witness.is_none(),
        witness: witness.map(|t| t.into_iter().map(|i| s.elements[i].clone()).collect()),
    })
}

/// Returns `true` when the tuple of element ids is a genuine violation of the
/// axiom on `s`.
pub fn replay_witness(
    s: &FiniteLocalityStructure,
    axiom: Axiom,
    witness: &[String],
) -> Result<bool, LocalityError> {
    let tuple: Vec<usize> = witness
        .iter()
        .map(|id| s.index_of(id))
        .collect::<Result<_, _>>()?;
    axioms::violates(s, axiom, &tuple)
}
