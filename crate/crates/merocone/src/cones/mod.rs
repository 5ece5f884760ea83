//! Lattice cones: simplicial rational-polyhedral cones paired with a lattice
//! of their span, the Minkowski product making them a partial monoid, stellar
//! subdivision into unimodular pieces, and the germ-valued exponential sums,
//! integrals and renormalised conical zeta values.

mod laplace;
mod subdivision;

use std::collections::BTreeSet;

use num::{BigInt, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::germs::GermError;
use crate::inner_product::{InnerProduct, InnerProductError};
use crate::linalg::{integer_kernel, rank, row_hnf, solve_combination, Rat};

pub use laplace::{i_cone, s_closed, s_closed_with_subdivision, s_open, zeta_closed, zeta_open};
pub use subdivision::{
    open_decomposition, smooth_subdivision, smooth_subdivision_with, Closure, SmoothOpenConeSum,
};

#[derive(Debug, Error)]
pub enum ConeError {
    #[error("zero vector cannot generate a cone ray")]
    ZeroGenerator,
    #[error("generators are dependent in a way that is not simplicial or not strongly convex")]
    NotSimplicial,
    #[error("generator lies outside the span of the lattice")]
    GeneratorOutsideLatticeSpan,
    #[error("lattice must span exactly the span of the generators")]
    LatticeSpanMismatch,
    #[error(
        "the primitive lattice point on a generator ray is not an integer vector; \
         rescale the coordinates so the lattice is integral"
    )]
    FractionalRay,
    #[error("subdivision did not terminate; the forced choice sequence never reached smooth cones")]
    SubdivisionDiverged,
    #[error("forced subdivision vector is not a lattice point interior to a face of the cone")]
    BadSubdivisionVector,
    #[error("the disjoint-support relation is only defined for the identity inner product")]
    SupportNeedsIdentity,
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    InnerProduct(#[from] InnerProductError),
}

/// A lattice of rational vectors, stored through its canonical Hermite basis
/// so equal lattices compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<Rat>>,
}

impl Lattice {
    /// Lattice generated by the given rational vectors.
    pub fn from_rational_rows(dim: usize, rows: &[Vec<Rat>]) -> Lattice {
        if rows.is_empty() {
            return Lattice { dim, basis: Vec::new() };
        }
        let mut denom = BigInt::one();
        for row in rows {
            for x in row {
                denom = denom.lcm(x.denom());
            }
        }
        let scaled: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| row.iter().map(|x| x.numer() * &denom / x.denom()).collect())
            .collect();
        let h = row_hnf(scaled);
        let basis = h
            .into_iter()
            .map(|row| row.into_iter().map(|v| Rat::new(v, denom.clone())).collect())
            .collect();
        Lattice { dim, basis }
    }

    /// The standard lattice `Z^dim`.
    pub fn standard(dim: usize) -> Lattice {
        let basis = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        Lattice { dim, basis }
    }

    /// `Z^dim` intersected with the rational span of the given rows.
    pub fn saturation_of_span(dim: usize, span_rows: &[Vec<Rat>]) -> Lattice {
        if span_rows.is_empty() {
            return Lattice { dim, basis: Vec::new() };
        }
        // Integer normal vectors of the span, then their integer kernel.
        let normals: Vec<Vec<BigInt>> = crate::linalg::nullspace(span_rows, dim)
            .into_iter()
            .map(|row| {
                let mut denom = BigInt::one();
                for x in &row {
                    denom = denom.lcm(x.denom());
                }
                row.iter().map(|x| x.numer() * &denom / x.denom()).collect()
            })
            .collect();
        let kernel = integer_kernel(&normals, dim);
        let rows: Vec<Vec<Rat>> = kernel
            .into_iter()
            .map(|r| r.into_iter().map(Rat::from_integer).collect())
            .collect();
        Lattice::from_rational_rows(dim, &rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn embed(&self, dim: usize) -> Lattice {
        assert!(dim >= self.dim);
        Lattice {
            dim,
            basis: self
                .basis
                .iter()
                .map(|row| {
                    let mut r = row.clone();
                    r.resize(dim, Rat::zero());
                    r
                })
                .collect(),
        }
    }

    /// Coordinates of `v` in the lattice basis, when `v` lies in the span.
    pub fn coords_in_span(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let cols: Vec<Vec<Rat>> = self.basis.iter().cloned().collect();
        solve_combination(&cols, v)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coords_in_span(v)
            .is_some_and(|c| c.iter().all(|x| x.denom().is_one()))
    }

    /// The smallest lattice containing both.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        let dim = self.dim.max(other.dim);
        let mut rows: Vec<Vec<Rat>> = self.embed(dim).basis;
        rows.extend(other.embed(dim).basis);
        Lattice::from_rational_rows(dim, &rows)
    }
}

/// Scales a rational vector by a positive rational into the primitive integer
/// vector on the same ray.
pub(crate) fn ray_primitive(v: &[Rat]) -> Option<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let mut denom = BigInt::one();
    for x in v {
        denom = denom.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &denom / x.denom()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / &gcd).collect())
}

/// A simplicial lattice cone: independent integer generators plus a lattice
/// spanning exactly their span. The generators are stored as given; canonical
/// comparison primitivises and sorts them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCone {
    dim: usize,
    generators: Vec<Vec<BigInt>>,
    lattice: Lattice,
}

impl LatticeCone {
    pub fn new(
        dim: usize,
        generators: Vec<Vec<BigInt>>,
        lattice: Option<Lattice>,
    ) -> Result<Self, ConeError> {
        let gen_rows: Vec<Vec<Rat>> = generators
            .iter()
            .map(|g| {
                let mut row: Vec<Rat> = g.iter().cloned().map(Rat::from_integer).collect();
                row.resize(dim, Rat::zero());
                row
            })
            .collect();
        if gen_rows.iter().any(|g| g.iter().all(Zero::is_zero)) {
            return Err(ConeError::ZeroGenerator);
        }
        if rank(&gen_rows) != gen_rows.len() {
            return Err(ConeError::NotSimplicial);
        }
        let lattice = match lattice {
            Some(l) => {
                let l = l.embed(dim.max(l.dim()));
                if l.dim() != dim {
                    return Err(ConeError::LatticeSpanMismatch);
                }
                if l.rank() != gen_rows.len() {
                    return Err(ConeError::LatticeSpanMismatch);
                }
                for g in &gen_rows {
                    if l.coords_in_span(g).is_none() {
                        return Err(ConeError::GeneratorOutsideLatticeSpan);
                    }
                }
                l
            }
            None => Lattice::saturation_of_span(dim, &gen_rows),
        };
        let generators = gen_rows
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.numer().clone()).collect())
            .collect();
        Ok(LatticeCone {
            dim,
            generators,
            lattice,
        })
    }

    pub fn from_integer_generators(dim: usize, gens: &[&[i64]]) -> Result<Self, ConeError> {
        LatticeCone::new(
            dim,
            gens.iter()
                .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            None,
        )
    }

    /// The unit of the Minkowski product: no generators, zero lattice.
    pub fn zero_cone(dim: usize) -> Self {
        LatticeCone {
            dim,
            generators: Vec::new(),
            lattice: Lattice {
                dim,
                basis: Vec::new(),
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn span_rank(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero_cone(&self) -> bool {
        self.generators.is_empty()
    }

    pub(crate) fn generator_rows(&self) -> Vec<Vec<Rat>> {
        self.generators
            .iter()
            .map(|g| g.iter().cloned().map(Rat::from_integer).collect())
            .collect()
    }

    pub fn embed(&self, dim: usize) -> LatticeCone {
        assert!(dim >= self.dim);
        LatticeCone {
            dim,
            generators: self
                .generators
                .iter()
                .map(|g| {
                    let mut g = g.clone();
                    g.resize(dim, BigInt::zero());
                    g
                })
                .collect(),
            lattice: self.lattice.embed(dim),
        }
    }

    /// Canonical form: generators primitivised and sorted. Cone equality is
    /// equality of canonical forms.
    pub fn canonical(&self) -> LatticeCone {
        let mut generators: Vec<Vec<BigInt>> = self
            .generators
            .iter()
            .map(|g| {
                let row: Vec<Rat> = g.iter().cloned().map(Rat::from_integer).collect();
                ray_primitive(&row).expect("generators are nonzero")
            })
            .collect();
        generators.sort();
        generators.dedup();
        LatticeCone {
            dim: self.dim,
            generators,
            lattice: self.lattice.clone(),
        }
    }

    pub fn canonical_eq(&self, other: &LatticeCone) -> bool {
        let dim = self.dim.max(other.dim);
        self.embed(dim).canonical() == other.embed(dim).canonical()
    }

    /// Membership of a rational point; `strict` asks for the relative
    /// interior.
    pub fn contains(&self, point: &[Rat], strict: bool) -> bool {
        let cols = self.generator_rows();
        match solve_combination(&cols, point) {
            None => false,
            Some(coords) => coords.iter().all(|c| {
                if strict {
                    c > &Rat::zero()
                } else {
                    c >= &Rat::zero()
                }
            }),
        }
    }

    /// True when the generators, written in the lattice basis, form an
    /// integer matrix of determinant +-1, i.e. they are a basis of the
    /// lattice.
    pub fn is_smooth(&self) -> bool {
        if self.is_zero_cone() {
            return true;
        }
        let mut coord_rows = Vec::new();
        for g in self.generator_rows() {
            match self.lattice.coords_in_span(&g) {
                None => return false,
                Some(coords) => {
                    if coords.iter().any(|c| !c.denom().is_one()) {
                        return false;
                    }
                    coord_rows.push(coords);
                }
            }
        }
        let det = crate::linalg::determinant(&coord_rows);
        det.abs() == Rat::one()
    }
}

/// Minkowski product of lattice cones: the cone generated by both generator
/// sets with the sum lattice. Redundant generators are pruned; a union that
/// is not simplicial (or not strongly convex) is rejected.
pub fn minkowski(c1: &LatticeCone, c2: &LatticeCone) -> Result<LatticeCone, ConeError> {
    let dim = c1.dim().max(c2.dim());
    let a = c1.embed(dim);
    let b = c2.embed(dim);
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for g in a.generators().iter().chain(b.generators()) {
        let row: Vec<Rat> = g.iter().cloned().map(Rat::from_integer).collect();
        let prim = ray_primitive(&row).ok_or(ConeError::ZeroGenerator)?;
        if !gens.contains(&prim) {
            gens.push(prim);
        }
    }
    gens.sort();
    let lattice = a.lattice().sum(b.lattice());
    let rows: Vec<Vec<Rat>> = gens
        .iter()
        .map(|g| g.iter().cloned().map(Rat::from_integer).collect())
        .collect();
    let r = rank(&rows);
    let selected = if r == gens.len() {
        gens
    } else {
        prune_to_extreme_rays(&gens, &rows, r).ok_or(ConeError::NotSimplicial)?
    };
    LatticeCone::new(dim, selected, Some(lattice))
}

/// Searches for an independent subset of the rays whose cone contains all the
/// others; that subset, when it exists, is the set of extreme rays of a
/// simplicial cone.
fn prune_to_extreme_rays(
    gens: &[Vec<BigInt>],
    rows: &[Vec<Rat>],
    r: usize,
) -> Option<Vec<Vec<BigInt>>> {
    let n = gens.len();
    let mut subset: Vec<usize> = (0..r).collect();
    loop {
        let sub_rows: Vec<Vec<Rat>> = subset.iter().map(|&i| rows[i].clone()).collect();
        if rank(&sub_rows) == r {
            let cols = sub_rows;
            let all_inside = (0..n).filter(|i| !subset.contains(i)).all(|i| {
                solve_combination(&cols, &rows[i])
                    .is_some_and(|c| c.iter().all(|x| x >= &Rat::zero()))
            });
            if all_inside {
                return Some(subset.iter().map(|&i| gens[i].clone()).collect());
            }
        }
        // Next lexicographic r-combination of {0..n}.
        let mut k = r;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if subset[k] + 1 <= n - (r - k) {
                subset[k] += 1;
                for j in (k + 1)..r {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Independence of two cones: orthogonality of their spans, or disjointness
/// of their coordinate supports.
pub fn cone_independent(
    c1: &LatticeCone,
    c2: &LatticeCone,
    q: &InnerProduct,
    mode: crate::germs::IndependenceMode,
) -> Result<bool, ConeError> {
    match mode {
        crate::germs::IndependenceMode::PerpQ => {
            for a in c1.generator_rows() {
                for b in c2.generator_rows() {
                    if !q.pairing_slices(&a, &b)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        crate::germs::IndependenceMode::TopD => {
            if !q.is_identity() {
                return Err(ConeError::SupportNeedsIdentity);
            }
            let support = |c: &LatticeCone| -> BTreeSet<usize> {
                let mut s = BTreeSet::new();
                for g in c.generators() {
                    for (i, x) in g.iter().enumerate() {
                        if !x.is_zero() {
                            s.insert(i);
                        }
                    }
                }
                s
            };
            Ok(support(c1).is_disjoint(&support(c2)))
        }
    }
}

#[cfg(test)]
mod tests;
