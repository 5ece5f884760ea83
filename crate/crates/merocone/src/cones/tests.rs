use super::*;
use crate::coefficient::Coefficient;
use crate::germs::{Germ, IndependenceMode};
use crate::jet::Jet;
use crate::linalg::{rat, rat_int};
use crate::linear_form::LinearForm;

fn cone2(gens: &[&[i64]]) -> LatticeCone {
    LatticeCone::from_integer_generators(2, gens).unwrap()
}

fn ray() -> LatticeCone {
    LatticeCone::from_integer_generators(1, &[&[1]]).unwrap()
}

fn assert_germ_eq(a: &Germ, b: &Germ) {
    let d = a.sub(b);
    assert!(d.d_max().at_least(0), "window too small: {:?}", d.d_max());
    assert!(d.is_zero_within_window(), "left {} != right {}", a.render(), b.render());
}

#[test]
fn minkowski_of_orthogonal_rays_is_the_quadrant() {
    let c1 = cone2(&[&[1, 0]]);
    let c2 = cone2(&[&[0, 1]]);
    let p = minkowski(&c1, &c2).unwrap();
    assert_eq!(p.generators().len(), 2);
    assert!(p.lattice().contains(&[rat_int(1), rat_int(0)]));
    assert!(p.lattice().contains(&[rat_int(0), rat_int(1)]));
    assert_eq!(p.lattice().rank(), 2);
}

#[test]
fn zero_cone_is_the_minkowski_unit() {
    let c = cone2(&[&[1, 0], &[1, 2]]);
    let unit = LatticeCone::zero_cone(2);
    let p = minkowski(&c, &unit).unwrap();
    assert!(p.canonical_eq(&c));
    assert_eq!(p.lattice(), c.lattice());
}

#[test]
fn minkowski_is_idempotent_up_to_canonical_form() {
    for c in [ray(), cone2(&[&[1, 0], &[1, 2]])] {
        let p = minkowski(&c, &c).unwrap();
        assert!(p.canonical_eq(&c));
        assert_eq!(p.lattice(), c.lattice());
    }
}

#[test]
fn minkowski_prunes_redundant_rays_and_rejects_lines() {
    let quadrant = cone2(&[&[1, 0], &[0, 1]]);
    let diag = cone2(&[&[1, 1]]);
    let p = minkowski(&quadrant, &diag).unwrap();
    assert!(p.canonical_eq(&quadrant));

    let left = cone2(&[&[-1, 0]]);
    let right = cone2(&[&[1, 0]]);
    assert!(matches!(minkowski(&left, &right), Err(ConeError::NotSimplicial)));
}

#[test]
fn independence_of_cones() {
    let q = InnerProduct::identity();
    let e1 = cone2(&[&[1, 0]]);
    let e2 = cone2(&[&[0, 1]]);
    assert!(cone_independent(&e1, &e2, &q, IndependenceMode::PerpQ).unwrap());
    assert!(cone_independent(&e1, &e2, &q, IndependenceMode::TopD).unwrap());

    let diag = cone2(&[&[1, 1]]);
    let anti = cone2(&[&[1, -1]]);
    assert!(cone_independent(&diag, &anti, &q, IndependenceMode::PerpQ).unwrap());
    assert!(!cone_independent(&diag, &anti, &q, IndependenceMode::TopD).unwrap());

    assert!(!cone_independent(&e1, &diag, &q, IndependenceMode::PerpQ).unwrap());
    assert!(!cone_independent(&e1, &diag, &q, IndependenceMode::TopD).unwrap());
}

#[test]
fn smoothness_is_unimodularity_in_the_lattice() {
    assert!(cone2(&[&[1, 0], &[0, 1]]).is_smooth());
    assert!(cone2(&[&[1, 0], &[1, 1]]).is_smooth());
    assert!(!cone2(&[&[1, 0], &[1, 2]]).is_smooth());
    assert!(LatticeCone::zero_cone(3).is_smooth());
    // Generator outside the lattice: not smooth rather than an error.
    let coarse = Lattice::from_rational_rows(1, &[vec![rat_int(2)]]);
    let c = LatticeCone::new(1, vec![vec![1.into()]], Some(coarse)).unwrap();
    assert!(!c.is_smooth());
}

#[test]
fn stellar_subdivision_examples() {
    let smooth = cone2(&[&[1, 0], &[1, 1]]);
    let got = smooth_subdivision(&smooth).unwrap();
    assert_eq!(got.len(), 1);
    assert!(got[0].canonical_eq(&smooth));

    let c = cone2(&[&[1, 0], &[1, 2]]);
    let got = smooth_subdivision(&c).unwrap();
    assert_eq!(got.len(), 2);
    assert!(got.iter().all(LatticeCone::is_smooth));
    assert!(got.iter().any(|p| p.canonical_eq(&cone2(&[&[1, 0], &[1, 1]]))));
    assert!(got.iter().any(|p| p.canonical_eq(&cone2(&[&[1, 1], &[1, 2]]))));

    let c3 = cone2(&[&[1, 0], &[1, 3]]);
    let got = smooth_subdivision(&c3).unwrap();
    assert_eq!(got.len(), 3);
    assert!(got.iter().all(LatticeCone::is_smooth));
    for expected in [
        cone2(&[&[1, 0], &[1, 1]]),
        cone2(&[&[1, 1], &[1, 2]]),
        cone2(&[&[1, 2], &[1, 3]]),
    ] {
        assert!(got.iter().any(|p| p.canonical_eq(&expected)));
    }
}

#[test]
fn subdivision_rescales_generators_into_a_coarse_lattice() {
    let coarse = Lattice::from_rational_rows(1, &[vec![rat_int(2)]]);
    let c = LatticeCone::new(1, vec![vec![1.into()]], Some(coarse)).unwrap();
    let got = smooth_subdivision(&c).unwrap();
    assert_eq!(got.len(), 1);
    assert_eq!(got[0].generators(), &[vec![num::BigInt::from(2)]]);
    assert!(got[0].is_smooth());
}

#[test]
fn fractional_lattices_cannot_be_represented_publicly() {
    let fine = Lattice::from_rational_rows(1, &[vec![rat(1, 2)]]);
    let c = LatticeCone::new(1, vec![vec![1.into()]], Some(fine)).unwrap();
    assert!(matches!(smooth_subdivision(&c), Err(ConeError::FractionalRay)));
}

#[test]
fn open_decomposition_face_counts() {
    let zero = LatticeCone::zero_cone(2);
    let d = open_decomposition(&zero, Closure::Closed).unwrap();
    assert_eq!(d.terms.len(), 1);
    assert!(d.terms[0].1.is_zero_cone());
    let d = open_decomposition(&zero, Closure::Open).unwrap();
    assert_eq!(d.terms.len(), 1);

    let r = ray();
    let closed = open_decomposition(&r, Closure::Closed).unwrap();
    assert_eq!(closed.terms.len(), 2);
    let open = open_decomposition(&r, Closure::Open).unwrap();
    assert_eq!(open.terms.len(), 1);
    assert!(!open.terms[0].1.is_zero_cone());

    // Two maximal cones, three rays (the shared ray counted once), origin.
    let c = cone2(&[&[1, 0], &[1, 2]]);
    let closed = open_decomposition(&c, Closure::Closed).unwrap();
    assert_eq!(closed.terms.len(), 6);
    assert!(closed.terms.iter().all(|(k, f)| *k == 1 && f.is_smooth()));
    let open = open_decomposition(&c, Closure::Open).unwrap();
    // Interior: both maximal cones and the shared ray.
    assert_eq!(open.terms.len(), 3);
}

#[test]
fn bernoulli_numbers_match_the_table() {
    let b = laplace::bernoulli_for_tests(12);
    assert_eq!(b[0], rat_int(1));
    assert_eq!(b[1], rat(-1, 2));
    assert_eq!(b[2], rat(1, 6));
    assert_eq!(b[3], rat_int(0));
    assert_eq!(b[4], rat(-1, 30));
    assert_eq!(b[6], rat(1, 42));
    assert_eq!(b[8], rat(-1, 30));
    assert_eq!(b[10], rat(5, 66));
    assert_eq!(b[12], rat(-691, 2730));
}

#[test]
fn exponential_sum_of_the_half_line() {
    // S_open(<e1>) = -1/e1 - 1/2 - e1/12 + e1^3/720 - ...
    let s = s_open(&ray(), 4).unwrap();
    let jet = Jet::constant(1, Coefficient::from_rat(rat(-1, 2)))
        .add(&Jet::monomial(1, vec![1], Coefficient::from_rat(rat(-1, 12))))
        .add(&Jet::monomial(1, vec![3], Coefficient::from_rat(rat(1, 720))));
    let expected = Germ::from_jet(jet).add(
        &Germ::from_term(
            Jet::constant(1, Coefficient::from_int(-1)),
            &[LinearForm::from_integers(&[1])],
        )
        .unwrap(),
    );
    assert_germ_eq(&s, &expected);

    // S_closed = S_open + 1 (the lattice point at the origin).
    let c = s_closed(&ray(), 4).unwrap();
    assert_germ_eq(&c, &s.add(&Germ::one(1)));

    // And of the zero cone: the single lattice point 0.
    let z = s_closed(&LatticeCone::zero_cone(1), 4).unwrap();
    assert_germ_eq(&z, &Germ::one(1));
}

#[test]
fn integral_examples() {
    let i1 = i_cone(&ray()).unwrap();
    let expected = Germ::from_term(
        Jet::constant(1, Coefficient::from_int(-1)),
        &[LinearForm::from_integers(&[1])],
    )
    .unwrap();
    assert_germ_eq(&i1, &expected);

    let quadrant = cone2(&[&[1, 0], &[0, 1]]);
    let i2 = i_cone(&quadrant).unwrap();
    let expected = Germ::from_term(
        Jet::one(2),
        &[LinearForm::from_integers(&[1, 0]), LinearForm::from_integers(&[0, 1])],
    )
    .unwrap();
    assert_germ_eq(&i2, &expected);

    // Subdivision additivity: I(<(1,0),(1,2)>) = 2/(e1*(e1+2e2)).
    let c = cone2(&[&[1, 0], &[1, 2]]);
    let i3 = i_cone(&c).unwrap();
    let expected = Germ::from_term(
        Jet::constant(2, Coefficient::from_int(2)),
        &[LinearForm::from_integers(&[1, 0]), LinearForm::from_integers(&[1, 2])],
    )
    .unwrap();
    assert_germ_eq(&i3, &expected);
    let p = [-0.3, -0.7];
    assert!((i3.numeric_eval(&p).unwrap() - expected.numeric_eval(&p).unwrap()).abs() < 1e-12);
}

#[test]
fn integral_respects_lattice_covolume() {
    // Coarser lattice 2Z: half as many points per unit length, I halves.
    let coarse = Lattice::from_rational_rows(1, &[vec![rat_int(2)]]);
    let c = LatticeCone::new(1, vec![vec![1.into()]], Some(coarse)).unwrap();
    let i = i_cone(&c).unwrap();
    let expected = Germ::from_term(
        Jet::constant(1, Coefficient::from_rat(rat(-1, 2))),
        &[LinearForm::from_integers(&[1])],
    )
    .unwrap();
    assert_germ_eq(&i, &expected);

    // Finer lattice Z/2 doubles it; this also exercises rational pieces.
    let fine = Lattice::from_rational_rows(1, &[vec![rat(1, 2)]]);
    let c = LatticeCone::new(1, vec![vec![1.into()]], Some(fine)).unwrap();
    let i = i_cone(&c).unwrap();
    let expected = Germ::from_term(
        Jet::constant(1, Coefficient::from_int(-2)),
        &[LinearForm::from_integers(&[1])],
    )
    .unwrap();
    assert_germ_eq(&i, &expected);
}

#[test]
fn zeta_values_of_small_cones() {
    let q = InnerProduct::identity();
    assert_eq!(zeta_open(&ray(), &q, 4).unwrap().as_rat().unwrap(), rat(-1, 2));
    assert_eq!(zeta_closed(&ray(), &q, 4).unwrap().as_rat().unwrap(), rat(1, 2));
    let quadrant = cone2(&[&[1, 0], &[0, 1]]);
    assert_eq!(zeta_open(&quadrant, &q, 6).unwrap().as_rat().unwrap(), rat(1, 4));
}

#[test]
fn exponential_sums_do_not_depend_on_the_subdivision() {
    // Default: stellar at (1,1). Forced: stellar at (2,1) first, giving a
    // three-piece fan.
    let c = cone2(&[&[1, 0], &[1, 2]]);
    let default = s_closed(&c, 6).unwrap();
    let mut first = true;
    let forced = s_closed_with_subdivision(&c, 6, &mut |_| {
        if first {
            first = false;
            Some(vec![rat_int(2), rat_int(1)])
        } else {
            None
        }
    })
    .unwrap();
    assert_germ_eq(&default, &forced);

    // The forced fan is genuinely different.
    let mut first = true;
    let pieces = smooth_subdivision_with(&c, &mut |_| {
        if first {
            first = false;
            Some(vec![rat_int(2), rat_int(1)])
        } else {
            None
        }
    })
    .unwrap();
    assert_eq!(pieces.len(), 3);
}

#[test]
fn s_open_is_multiplicative_on_orthogonal_cones_but_not_under_idempotency() {
    let q = InnerProduct::identity();
    let e1 = cone2(&[&[1, 0]]);
    let e2 = cone2(&[&[0, 1]]);
    assert!(cone_independent(&e1, &e2, &q, IndependenceMode::PerpQ).unwrap());
    let lhs = s_open(&minkowski(&e1, &e2).unwrap(), 6).unwrap();
    let rhs = s_open(&e1, 6).unwrap().mul(&s_open(&e2, 6).unwrap());
    assert_germ_eq(&lhs, &rhs);

    // c.c = c while S(c)^2 has a double pole: not a homomorphism for the
    // Minkowski product without the orthogonality gate.
    let s = s_open(&ray(), 6).unwrap();
    let s_of_product = s_open(&minkowski(&ray(), &ray()).unwrap(), 6).unwrap();
    assert_germ_eq(&s_of_product, &s);
    assert!(!s_of_product.value_eq(&s.mul(&s)));
}

#[test]
fn numeric_oracle_for_the_open_sum() {
    // Truncated lattice sum over the interior of <(1,0),(1,2)> against the
    // germ, at a point in the dual-negative region.
    let c = cone2(&[&[1, 0], &[1, 2]]);
    let s = s_open(&c, 12).unwrap();
    let eps = [-0.3, -0.7];
    let mut sum = 0.0;
    for x in 0..=60i64 {
        for y in 0..=60i64 {
            let p = [rat_int(x), rat_int(y)];
            if c.contains(&p, true) {
                sum += (eps[0] * x as f64 + eps[1] * y as f64).exp();
            }
        }
    }
    let fitted = s.numeric_eval(&eps).unwrap();
    assert!(
        (sum - fitted).abs() < 1e-6,
        "lattice sum {sum} vs germ {fitted}"
    );
}

#[test]
fn membership_queries() {
    let c = cone2(&[&[1, 0], &[1, 2]]);
    assert!(c.contains(&[rat_int(1), rat_int(1)], true));
    assert!(c.contains(&[rat_int(1), rat_int(2)], false));
    assert!(!c.contains(&[rat_int(1), rat_int(2)], true));
    assert!(!c.contains(&[rat_int(-1), rat_int(0)], false));
}
