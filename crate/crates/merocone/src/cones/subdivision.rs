//! Stellar subdivision into unimodular pieces and the indicator-calculus
//! decomposition of a cone into relatively open smooth faces.
//!
//! All subdivision work happens in lattice coordinates, where the lattice is
//! the standard integer lattice of the span; generators become primitive
//! integer vectors there even when the ambient lattice is rational.

use num::{BigInt, One, Signed, Zero};

use crate::linalg::{determinant, solve_combination, Rat};

use super::{ray_primitive, ConeError, Lattice, LatticeCone};

/// Whether a decomposition covers the closed cone or only its relative
/// interior.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    Open,
    Closed,
}

/// An integer combination of indicator functions of relatively open smooth
/// cones.
#[derive(Clone, Debug)]
pub struct SmoothOpenConeSum {
    pub dim: usize,
    pub terms: Vec<(i64, LatticeCone)>,
}

/// A maximal piece or face in lattice coordinates: rows are generators
/// expressed in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct CoordCone {
    pub rows: Vec<Vec<BigInt>>,
}

pub(crate) struct OpenFace {
    pub rows: Vec<Vec<BigInt>>,
    /// Relative interior contained in the interior of the original cone.
    pub interior: bool,
}

fn rows_to_rat(rows: &[Vec<BigInt>]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.iter().cloned().map(Rat::from_integer).collect())
        .collect()
}

fn ambient_vector(lattice: &Lattice, coords: &[BigInt]) -> Vec<Rat> {
    let dim = lattice.dim();
    let mut v = vec![Rat::zero(); dim];
    for (c, row) in coords.iter().zip(lattice.basis()) {
        for (a, x) in row.iter().enumerate() {
            v[a] += Rat::from_integer(c.clone()) * x;
        }
    }
    v
}

pub(crate) fn ambient_rows(lattice: &Lattice, rows: &[Vec<BigInt>]) -> Vec<Vec<Rat>> {
    rows.iter().map(|r| ambient_vector(lattice, r)).collect()
}

fn abs_determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let det = determinant(&rows_to_rat(rows));
    det.numer().abs()
}

/// Lattice points of the half-open fundamental parallelepiped
/// `{sum t_i rows_i : 0 <= t_i < 1}`, excluding the origin.
fn parallelepiped_points(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let k = rows.len();
    if k == 0 {
        return Vec::new();
    }
    let n = rows[0].len();
    let mut lo = vec![BigInt::zero(); n];
    let mut hi = vec![BigInt::zero(); n];
    for row in rows {
        for (j, x) in row.iter().enumerate() {
            if x.is_negative() {
                lo[j] += x;
            } else {
                hi[j] += x;
            }
        }
    }
    let cols = rows_to_rat(rows);
    let mut out = Vec::new();
    let mut current = lo.clone();
    'outer: loop {
        if current.iter().any(|x| !x.is_zero()) {
            let target: Vec<Rat> = current.iter().cloned().map(Rat::from_integer).collect();
            if let Some(t) = solve_combination(&cols, &target) {
                if t.iter().all(|x| x >= &Rat::zero() && x < &Rat::one()) {
                    out.push(current.clone());
                }
            }
        }
        for j in 0..n {
            current[j] += 1;
            if current[j] <= hi[j] {
                continue 'outer;
            }
            current[j] = lo[j].clone();
        }
        break;
    }
    out
}

/// Subdivides in lattice coordinates. The chooser sees each non-smooth piece
/// as an ambient cone and may force a subdivision vector (an ambient lattice
/// point inside the piece); `None` takes the default, the shortest nonzero
/// lattice point of the fundamental parallelepiped with lexicographic
/// tie-break. Termination of the default choice follows from strict descent
/// of the lattice index; forced sequences are guarded by a step budget.
pub(crate) fn subdivide_coords(
    cone: &LatticeCone,
    chooser: &mut dyn FnMut(&LatticeCone) -> Option<Vec<Rat>>,
) -> Result<Vec<CoordCone>, ConeError> {
    if cone.is_zero_cone() {
        return Ok(vec![CoordCone { rows: Vec::new() }]);
    }
    let lattice = cone.lattice();
    let init: Vec<Vec<BigInt>> = cone
        .generator_rows()
        .iter()
        .map(|g| {
            let coords = lattice
                .coords_in_span(g)
                .ok_or(ConeError::GeneratorOutsideLatticeSpan)?;
            ray_primitive(&coords).ok_or(ConeError::ZeroGenerator)
        })
        .collect::<Result<_, _>>()?;

    let mut work = vec![CoordCone { rows: init }];
    let mut out = Vec::new();
    let mut budget = 100_000usize;
    while let Some(piece) = work.pop() {
        budget = budget.checked_sub(1).ok_or(ConeError::SubdivisionDiverged)?;
        let index = abs_determinant(&piece.rows);
        assert!(!index.is_zero(), "pieces stay simplicial");
        if index.is_one() {
            out.push(piece);
            continue;
        }
        let w = match chooser(&coord_cone_to_lattice_cone(cone, &piece)?) {
            Some(ambient) => {
                let coords = lattice
                    .coords_in_span(&ambient)
                    .ok_or(ConeError::BadSubdivisionVector)?;
                if coords.iter().any(|c| !c.denom().is_one())
                    || coords.iter().all(Zero::is_zero)
                {
                    return Err(ConeError::BadSubdivisionVector);
                }
                coords.into_iter().map(|c| c.numer().clone()).collect::<Vec<_>>()
            }
            None => {
                let mut points = parallelepiped_points(&piece.rows);
                assert!(
                    !points.is_empty(),
                    "a piece of lattice index > 1 contains parallelepiped points"
                );
                points.sort_by_key(|p| {
                    let norm: Rat = ambient_vector(lattice, p)
                        .iter()
                        .map(|x| x * x)
                        .sum();
                    (norm, p.clone())
                });
                points.remove(0)
            }
        };
        let target: Vec<Rat> = w.iter().cloned().map(Rat::from_integer).collect();
        let t = solve_combination(&rows_to_rat(&piece.rows), &target)
            .ok_or(ConeError::BadSubdivisionVector)?;
        if t.iter().any(|x| x < &Rat::zero()) || t.iter().all(Zero::is_zero) {
            return Err(ConeError::BadSubdivisionVector);
        }
        let w_prim = ray_primitive(&target).expect("subdivision vector is nonzero");
        let positives: Vec<usize> = (0..t.len()).filter(|&i| t[i] > Rat::zero()).collect();
        if positives.len() == 1 && w_prim == piece.rows[positives[0]] {
            // The forced vector lies on an existing primitive ray: no progress.
            return Err(ConeError::BadSubdivisionVector);
        }
        for &i in &positives {
            let mut rows = piece.rows.clone();
            rows[i] = w_prim.clone();
            work.push(CoordCone { rows });
        }
    }
    out.sort();
    Ok(out)
}

fn coord_cone_to_lattice_cone(
    original: &LatticeCone,
    piece: &CoordCone,
) -> Result<LatticeCone, ConeError> {
    let ambient = ambient_rows(original.lattice(), &piece.rows);
    let gens: Vec<Vec<BigInt>> = ambient
        .iter()
        .map(|g| {
            if g.iter().any(|x| !x.denom().is_one()) {
                Err(ConeError::FractionalRay)
            } else {
                Ok(g.iter().map(|x| x.numer().clone()).collect())
            }
        })
        .collect::<Result<_, _>>()?;
    LatticeCone::new(original.dim(), gens, Some(original.lattice().clone()))
}

/// Subdivides into smooth cones carrying the original lattice; their union is
/// the cone and their interiors are pairwise disjoint.
pub fn smooth_subdivision(cone: &LatticeCone) -> Result<Vec<LatticeCone>, ConeError> {
    smooth_subdivision_with(cone, &mut |_| None)
}

/// Subdivision with a forced vector choice, used to check that the germ maps
/// do not depend on how a cone is subdivided.
pub fn smooth_subdivision_with(
    cone: &LatticeCone,
    chooser: &mut dyn FnMut(&LatticeCone) -> Option<Vec<Rat>>,
) -> Result<Vec<LatticeCone>, ConeError> {
    let pieces = subdivide_coords(cone, chooser)?;
    pieces
        .iter()
        .map(|p| coord_cone_to_lattice_cone(cone, p))
        .collect()
}

/// All distinct relatively open faces of the subdivision fan, marked with
/// whether they lie in the interior of the cone.
pub(crate) fn open_faces(
    cone: &LatticeCone,
    chooser: &mut dyn FnMut(&LatticeCone) -> Option<Vec<Rat>>,
) -> Result<Vec<OpenFace>, ConeError> {
    let pieces = subdivide_coords(cone, chooser)?;
    let mut distinct: std::collections::BTreeSet<Vec<Vec<BigInt>>> = std::collections::BTreeSet::new();
    for piece in &pieces {
        let k = piece.rows.len();
        for mask in 0..(1u32 << k) {
            let mut rows: Vec<Vec<BigInt>> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| piece.rows[i].clone())
                .collect();
            rows.sort();
            distinct.insert(rows);
        }
    }
    // Interior test: a face lies on the boundary exactly when it is contained
    // in a facet span of the (simplicial) cone, i.e. some generator
    // coordinate vanishes on all its generators.
    let gen_cols = cone.generator_rows();
    let k = gen_cols.len();
    let lattice = cone.lattice();
    let mut out = Vec::new();
    for rows in distinct {
        let interior = if rows.is_empty() {
            k == 0
        } else {
            let coords: Vec<Vec<Rat>> = ambient_rows(lattice, &rows)
                .iter()
                .map(|g| {
                    solve_combination(&gen_cols, g)
                        .expect("face generators lie in the span of the cone")
                })
                .collect();
            (0..k).all(|i| coords.iter().any(|c| !c[i].is_zero()))
        };
        out.push(OpenFace { rows, interior });
    }
    Ok(out)
}

/// Indicator decomposition into relatively open smooth faces: `Closed` covers
/// the cone, `Open` its relative interior, each face with coefficient one and
/// the integer span of its generators as lattice.
pub fn open_decomposition(
    cone: &LatticeCone,
    closure: Closure,
) -> Result<SmoothOpenConeSum, ConeError> {
    let faces = open_faces(cone, &mut |_| None)?;
    let lattice = cone.lattice();
    let mut terms = Vec::new();
    for face in faces {
        if closure == Closure::Open && !face.interior {
            continue;
        }
        let ambient = ambient_rows(lattice, &face.rows);
        let gens: Vec<Vec<BigInt>> = ambient
            .iter()
            .map(|g| {
                if g.iter().any(|x| !x.denom().is_one()) {
                    Err(ConeError::FractionalRay)
                } else {
                    Ok(g.iter().map(|x| x.numer().clone()).collect())
                }
            })
            .collect::<Result<_, _>>()?;
        let face_lattice = Lattice::from_rational_rows(cone.dim(), &ambient);
        terms.push((
            1,
            LatticeCone::new(cone.dim(), gens, Some(face_lattice))?,
        ));
    }
    Ok(SmoothOpenConeSum {
        dim: cone.dim(),
        terms,
    })
}
