//! Germ-valued discrete and continuous Laplace transforms of cone indicator
//! functions, and the renormalised conical zeta values they induce.
//!
//! For a smooth relatively open cone with lattice-basis generators `v_i` and
//! pairing forms `L_i = <v_i, .>`, the exponential sum over interior lattice
//! points factorises as `prod_i e^{L_i} / (1 - e^{L_i})`, each factor
//! expanded exactly with Bernoulli coefficients. General simplicial cones go
//! through the open-face decomposition and linearity. The integral uses
//! `int_0^infty e^{tL} dt = -1/L` per lattice direction, with the measure
//! normalised to unit lattice covolume.

use num::{BigInt, One, Zero};

use crate::coefficient::Coefficient;
use crate::germs::Germ;
use crate::inner_product::InnerProduct;
use crate::jet::{Jet, JetOrder};
use crate::linalg::Rat;
use crate::linear_form::LinearForm;

use super::subdivision::{ambient_rows, open_faces, subdivide_coords};
use super::{ConeError, LatticeCone};

/// `B_0 .. B_n` by the defining recurrence.
fn bernoulli_through(n: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    b.push(Rat::one());
    for m in 1..=n {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            let c = num::integer::binomial(BigInt::from(m + 1), BigInt::from(j));
            acc += Rat::from_integer(c) * bj;
        }
        b.push(-acc / Rat::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Endpoint of the Bernoulli-polynomial evaluation used by a factor: `1` for
/// open cones, `0` for closed ones.
#[derive(Clone, Copy, PartialEq, Eq)]
enum FactorKind {
    Open,
    Closed,
}

/// The one-dimensional factor `e^{xL}/(1 - e^{L})` as an exact germ through
/// the working order: `-sum_k B_k(x) L^{k-1} / k!` with `x = 1` or `x = 0`.
fn factor_germ(l: &LinearForm, order: i64, kind: FactorKind) -> Result<Germ, ConeError> {
    let top = (order + 1).max(0) as usize;
    let bernoulli = bernoulli_through(top);
    let ljet = Jet::from_linear_form(l);
    let mut numerator = Jet::zero(l.dim());
    let mut power = Jet::one(l.dim());
    let mut factorial = Rat::one();
    for (k, bk) in bernoulli.iter().enumerate().take(top + 1) {
        if k > 0 {
            factorial *= Rat::from_integer(BigInt::from(k));
        }
        let mut value = bk.clone();
        if k == 1 && kind == FactorKind::Open {
            // B_1(1) = 1/2 while B_1(0) = -1/2.
            value += Rat::one();
        }
        numerator = numerator.add(&power.scale_rat(&(-value / &factorial)));
        power = power.mul(&ljet);
    }
    let numerator = numerator.truncate_to(JetOrder::Truncated(order + 1));
    Ok(Germ::from_term(numerator, std::slice::from_ref(l))?)
}

fn forms_of(gens: &[Vec<Rat>]) -> Vec<LinearForm> {
    gens.iter().map(|g| LinearForm::new(g.clone())).collect()
}

fn product_of_open_factors(
    dim: usize,
    gens: &[Vec<Rat>],
    order: i64,
) -> Result<Germ, ConeError> {
    let mut acc = Germ::one(dim);
    for l in forms_of(gens) {
        acc = acc.mul(&factor_germ(&l, order, FactorKind::Open)?);
    }
    Ok(acc)
}

/// Exponential sum over the lattice points of the relative interior,
/// extended to arbitrary simplicial cones by subdivision and linearity.
pub fn s_open(cone: &LatticeCone, order: i64) -> Result<Germ, ConeError> {
    s_map(cone, order, true)
}

/// Exponential sum over all lattice points of the closed cone.
pub fn s_closed(cone: &LatticeCone, order: i64) -> Result<Germ, ConeError> {
    if cone.is_smooth() {
        // Direct product of closed factors over the lattice-basis generators.
        let mut acc = Germ::one(cone.dim());
        for l in forms_of(&cone.generator_rows()) {
            acc = acc.mul(&factor_germ(&l, order, FactorKind::Closed)?);
        }
        return Ok(acc.reduce());
    }
    s_map(cone, order, false)
}

fn s_map(cone: &LatticeCone, order: i64, interior_only: bool) -> Result<Germ, ConeError> {
    let faces = open_faces(cone, &mut |_| None)?;
    let lattice = cone.lattice();
    let mut acc = Germ::zero(cone.dim());
    for face in faces {
        if interior_only && !face.interior {
            continue;
        }
        let gens = ambient_rows(lattice, &face.rows);
        acc = acc.add(&product_of_open_factors(cone.dim(), &gens, order)?);
    }
    Ok(acc.reduce())
}

/// As `s_open` but with a forced subdivision choice; the result must not
/// depend on it.
pub fn s_closed_with_subdivision(
    cone: &LatticeCone,
    order: i64,
    chooser: &mut dyn FnMut(&LatticeCone) -> Option<Vec<Rat>>,
) -> Result<Germ, ConeError> {
    let faces = open_faces(cone, chooser)?;
    let lattice = cone.lattice();
    let mut acc = Germ::zero(cone.dim());
    for face in faces {
        let gens = ambient_rows(lattice, &face.rows);
        acc = acc.add(&product_of_open_factors(cone.dim(), &gens, order)?);
    }
    Ok(acc.reduce())
}

/// Lattice-normalised integral of `e^{<eps, x>}` over the cone: exactly
/// `prod_i (-1/L_i)` on smooth cones, summed over the maximal pieces of a
/// subdivision otherwise (overlaps have measure zero).
pub fn i_cone(cone: &LatticeCone) -> Result<Germ, ConeError> {
    if cone.is_zero_cone() {
        return Ok(Germ::one(cone.dim()));
    }
    let pieces = subdivide_coords(cone, &mut |_| None)?;
    let lattice = cone.lattice();
    let mut acc = Germ::zero(cone.dim());
    for piece in pieces {
        let gens = ambient_rows(lattice, &piece.rows);
        let forms = forms_of(&gens);
        let sign = if forms.len() % 2 == 0 {
            Coefficient::one()
        } else {
            Coefficient::from_int(-1)
        };
        let germ = Germ::from_term(Jet::constant(cone.dim(), sign), &forms)?;
        acc = acc.add(&germ);
    }
    Ok(acc.reduce())
}

/// Renormalised open conical zeta value: evaluate the holomorphic projection
/// of the open exponential sum at zero.
pub fn zeta_open(
    cone: &LatticeCone,
    q: &InnerProduct,
    order: i64,
) -> Result<Coefficient, ConeError> {
    Ok(s_open(cone, order)?.renormalised_value(q)?)
}

/// Renormalised closed conical zeta value.
pub fn zeta_closed(
    cone: &LatticeCone,
    q: &InnerProduct,
    order: i64,
) -> Result<Coefficient, ConeError> {
    Ok(s_closed(cone, order)?.renormalised_value(q)?)
}

#[cfg(test)]
pub(crate) fn bernoulli_for_tests(n: usize) -> Vec<Rat> {
    bernoulli_through(n)
}
