use super::*;
use crate::linalg::{rat, rat_int};

fn e(dim: usize, index: usize) -> LinearForm {
    LinearForm::coordinate(dim, index)
}

fn jet_of(l: &LinearForm) -> Jet {
    Jet::from_linear_form(l)
}

/// `1 / l`
fn inv(l: &LinearForm) -> Germ {
    Germ::inverse_of_forms(l.dim(), std::slice::from_ref(l)).unwrap()
}

fn assert_value_eq(a: &Germ, b: &Germ) {
    let diff = a.sub(b);
    assert!(
        diff.d_max().at_least(0),
        "difference window too small to compare: d_max = {:?}",
        diff.d_max()
    );
    assert!(
        diff.is_zero_within_window(),
        "germs differ:\n  left  = {}\n  right = {}",
        a.render(),
        b.render()
    );
}

#[test]
fn cancellation_of_a_numerator_factor() {
    // (1/e1) * e1 = 1
    let g = inv(&e(1, 0)).mul(&Germ::from_jet(jet_of(&e(1, 0))));
    let r = g.reduce();
    assert!(r.is_holomorphic());
    assert_value_eq(&r, &Germ::one(1));
}

#[test]
fn additive_inverse_cancels() {
    let g = inv(&e(1, 0)).add(&inv(&e(1, 0)).neg());
    assert!(g.is_zero_within_window());
    assert!(g.reduce().terms().is_empty());
}

#[test]
fn product_with_independent_denominators_stays_one_term() {
    let l12 = LinearForm::from_integers(&[1, 1]);
    let g = inv(&e(2, 0)).mul(&inv(&l12));
    let r = g.reduce();
    assert_eq!(r.terms().len(), 1);
    let dens: Vec<_> = r.terms()[0].denominator().to_vec();
    assert_eq!(dens, vec![(e(2, 0), 1), (l12, 1)]);
}

#[test]
fn repeated_factor_is_not_a_dependency() {
    let g = Germ::from_term(Jet::one(1), &[e(1, 0), e(1, 0)]).unwrap();
    let r = g.reduce();
    assert_eq!(r.terms().len(), 1);
    assert_eq!(r.terms()[0].denominator(), &[(e(1, 0), 2)]);
}

#[test]
fn partial_fraction_splits_dependent_denominators() {
    // 1/(e1*e2*(e1+e2)) = 1/(e2*(e1+e2)^2) + 1/(e1*(e1+e2)^2)
    let l12 = LinearForm::from_integers(&[1, 1]);
    let g = Germ::from_term(Jet::one(2), &[e(2, 0), e(2, 1), l12.clone()]).unwrap();
    let r = g.reduce();
    for t in r.terms() {
        let rows: Vec<Vec<Rat>> = t
            .denominator()
            .iter()
            .map(|(l, _)| l.coeffs().to_vec())
            .collect();
        assert_eq!(crate::linalg::rank(&rows), rows.len(), "independent after reduce");
    }
    let expected = Germ::from_term(Jet::one(2), &[e(2, 1), l12.clone(), l12.clone()])
        .unwrap()
        .add(&Germ::from_term(Jet::one(2), &[e(2, 0), l12.clone(), l12]).unwrap());
    assert_value_eq(&r, &expected);
    // And numerically, off the poles.
    let p = [0.13, 0.29];
    assert!((g.numeric_eval(&p).unwrap() - r.numeric_eval(&p).unwrap()).abs() < 1e-9);
}

#[test]
fn pure_jet_reduce_is_identity() {
    let jet = Jet::monomial(2, vec![1, 1], Coefficient::one());
    let g = Germ::from_jet(jet.clone());
    let r = g.reduce();
    assert_eq!(r.terms().len(), 1);
    assert_eq!(r.terms()[0].numerator(), &jet);
}

#[test]
fn dep_reads_off_denominators_and_minimal_numerator_forms() {
    let l12 = LinearForm::from_integers(&[1, 1]);
    assert_eq!(inv(&l12).dep(), vec![l12.clone()]);

    let constant = Germ::from_jet(Jet::constant(1, Coefficient::from_int(5)));
    assert!(constant.dep().is_empty());

    // e3/(e1*e2) spans {e1,e2,e3}
    let g = Germ::from_term(jet_of(&e(3, 2)), &[e(3, 0), e(3, 1)]).unwrap();
    assert_eq!(g.dep().len(), 3);

    // A numerator e1+e2 depends on one form only.
    let h = Germ::from_jet(jet_of(&l12));
    assert_eq!(h.dep(), vec![l12]);
}

#[test]
fn independence_relations() {
    let q = InnerProduct::identity();
    let f = inv(&LinearForm::from_integers(&[1, 1]));
    let g = inv(&LinearForm::from_integers(&[1, -1]));
    assert!(are_independent(&f, &g, &q, IndependenceMode::PerpQ).unwrap());
    assert!(!are_independent(&f, &g, &q, IndependenceMode::TopD).unwrap());

    let f1 = inv(&e(2, 0));
    let g1 = inv(&e(2, 1));
    assert!(are_independent(&f1, &g1, &q, IndependenceMode::PerpQ).unwrap());
    assert!(are_independent(&f1, &g1, &q, IndependenceMode::TopD).unwrap());

    let g2 = inv(&LinearForm::from_integers(&[1, 1]));
    assert!(!are_independent(&f1, &g2, &q, IndependenceMode::PerpQ).unwrap());
    assert!(!are_independent(&f1, &g2, &q, IndependenceMode::TopD).unwrap());

    let gram = InnerProduct::from_matrix(vec![
        vec![rat_int(2), rat_int(1)],
        vec![rat_int(1), rat_int(2)],
    ])
    .unwrap();
    assert!(matches!(
        are_independent(&f1, &g1, &gram, IndependenceMode::TopD),
        Err(GermError::SupportNeedsIdentity)
    ));
}

#[test]
fn one_variable_laurent_split() {
    // f = -1/e1 - 1/2 - e1/12
    let jet = Jet::constant(1, Coefficient::from_rat(rat(-1, 2))).add(&Jet::monomial(
        1,
        vec![1],
        Coefficient::from_rat(rat(-1, 12)),
    ));
    let f = Germ::from_jet(jet.clone()).add(
        &Germ::from_term(Jet::constant(1, Coefficient::from_int(-1)), &[e(1, 0)]).unwrap(),
    );
    let (plus, minus) = f.project_pair(&InnerProduct::identity()).unwrap();
    assert_value_eq(&plus, &Germ::from_jet(jet));
    assert_value_eq(
        &minus,
        &Germ::from_term(Jet::constant(1, Coefficient::from_int(-1)), &[e(1, 0)]).unwrap(),
    );
}

#[test]
fn two_variable_projection_splits_along_q() {
    // f = e2/(e1+e2): plus = 1/2, minus = (1/2)(e2-e1)/(e1+e2)
    let l12 = LinearForm::from_integers(&[1, 1]);
    let f = Germ::from_term(jet_of(&e(2, 1)), &[l12.clone()]).unwrap();
    let (plus, minus) = f.project_pair(&InnerProduct::identity()).unwrap();
    assert_value_eq(
        &plus,
        &Germ::from_jet(Jet::constant(2, Coefficient::from_rat(rat(1, 2)))),
    );
    let expected_minus = Germ::from_term(
        jet_of(&LinearForm::from_integers(&[-1, 1])).scale_rat(&rat(1, 2)),
        &[l12],
    )
    .unwrap();
    assert_value_eq(&minus, &expected_minus);
    // Decomposition identity, numerically.
    let p = [0.1, 0.3];
    let total = plus.numeric_eval(&p).unwrap() + minus.numeric_eval(&p).unwrap();
    assert!((total - f.numeric_eval(&p).unwrap()).abs() < 1e-12);
    assert!((f.numeric_eval(&p).unwrap() - 0.75).abs() < 1e-12);
}

#[test]
fn pure_jet_projects_to_itself() {
    let f = Germ::from_jet(Jet::monomial(2, vec![2, 1], Coefficient::one()));
    let (plus, minus) = f.project_pair(&InnerProduct::identity()).unwrap();
    assert_value_eq(&plus, &f);
    assert!(minus.is_zero_within_window());
}

#[test]
fn projection_is_idempotent() {
    let q = InnerProduct::identity();
    let l = LinearForm::from_integers(&[1, 2]);
    let f = Germ::from_term(
        jet_of(&e(2, 0)).mul(&jet_of(&e(2, 0))).add(&Jet::one(2)),
        &[l.clone(), l],
    )
    .unwrap();
    let (plus, minus) = f.project_pair(&q).unwrap();
    let plus2 = plus.project_plus(&q).unwrap();
    assert_value_eq(&plus2, &plus);
    let minus_plus = minus.project_plus(&q).unwrap();
    assert!(minus_plus.is_zero_within_window());
}

#[test]
fn evaluation_at_zero() {
    let jet = Jet::constant(1, Coefficient::from_rat(rat(-1, 2))).add(&Jet::monomial(
        1,
        vec![1],
        Coefficient::from_rat(rat(-1, 12)),
    ));
    assert_eq!(
        Germ::from_jet(jet.clone()).ev0().unwrap().as_rat().unwrap(),
        rat(-1, 2)
    );
    let f = Germ::from_jet(jet).add(
        &Germ::from_term(Jet::constant(1, Coefficient::from_int(-1)), &[e(1, 0)]).unwrap(),
    );
    assert!(matches!(f.ev0(), Err(GermError::NotHolomorphic)));
    assert_eq!(
        f.renormalised_value(&InnerProduct::identity())
            .unwrap()
            .as_rat()
            .unwrap(),
        rat(-1, 2)
    );
    // Purely polar: renormalised value zero.
    let polar = Germ::from_term(Jet::one(2), &[e(2, 0), e(2, 1)]).unwrap();
    assert!(polar
        .renormalised_value(&InnerProduct::identity())
        .unwrap()
        .is_zero());
}

#[test]
fn non_orthogonal_projection_is_not_multiplicative() {
    // f = 1/e1 + e1: plus(f*f) = 2 + e1^2 while plus(f)^2 = e1^2.
    let q = InnerProduct::identity();
    let f = inv(&e(1, 0)).add(&Germ::from_jet(jet_of(&e(1, 0))));
    let ff = f.mul(&f);
    let lhs = ff.project_plus(&q).unwrap();
    let rhs = f.project_plus(&q).unwrap();
    let rhs2 = rhs.mul(&rhs);
    assert!(!lhs.value_eq(&rhs2));
    assert_eq!(lhs.ev0().unwrap().as_rat().unwrap(), rat_int(2));
}

#[test]
fn orthogonal_projection_is_multiplicative() {
    let q = InnerProduct::identity();
    let f = Germ::from_term(jet_of(&e(2, 0)).add(&Jet::one(2)), &[e(2, 0)]).unwrap();
    let g = Germ::from_term(
        jet_of(&e(2, 1)).mul(&jet_of(&e(2, 1))).add(&Jet::one(2)),
        &[e(2, 1), e(2, 1)],
    )
    .unwrap();
    assert!(are_independent(&f, &g, &q, IndependenceMode::PerpQ).unwrap());
    let lhs = f.mul(&g).project_plus(&q).unwrap();
    let rhs = f.project_plus(&q).unwrap().mul(&g.project_plus(&q).unwrap());
    assert_value_eq(&lhs, &rhs);
}

#[test]
fn polar_ideal_absorbs_orthogonal_products() {
    // minus-part germ times an orthogonal germ stays polar.
    let q = InnerProduct::identity();
    let f = inv(&e(2, 0));
    let g = Germ::from_jet(jet_of(&e(2, 1)).add(&Jet::one(2)));
    assert!(are_independent(&f, &g, &q, IndependenceMode::PerpQ).unwrap());
    let prod = f.mul(&g);
    let plus = prod.project_plus(&q).unwrap();
    assert!(plus.is_zero_within_window());
}

#[test]
fn window_bookkeeping_blocks_underresolved_extraction() {
    // Numerator trusted only through degree 1, double pole: d_max = -1.
    let num = Jet::one(2).truncate_to(JetOrder::Truncated(1));
    let f = Germ::from_term(num, &[e(2, 0), e(2, 1)]).unwrap();
    assert_eq!(f.d_max(), JetOrder::Truncated(-1));
    match f.project_plus(&InnerProduct::identity()) {
        Err(GermError::InsufficientOrder { missing }) => assert_eq!(missing, 1),
        other => panic!("expected InsufficientOrder, got {other:?}"),
    }
}

#[test]
fn numeric_eval_detects_poles() {
    let f = inv(&e(2, 0));
    assert!((f.numeric_eval(&[0.5, 1.0]).unwrap() - 2.0).abs() < 1e-12);
    assert!(matches!(
        f.numeric_eval(&[0.0, 1.0]),
        Err(GermError::PoleEvaluation { .. })
    ));
}

#[test]
fn reduce_is_interruptible() {
    let flag = CancelFlag::new();
    flag.cancel();
    let l12 = LinearForm::from_integers(&[1, 1]);
    let g = Germ::from_term(Jet::one(2), &[e(2, 0), e(2, 1), l12]).unwrap();
    assert!(matches!(
        g.reduce_cancellable(&flag),
        Err(GermError::Interrupted)
    ));
}

#[test]
fn mul_window_matches_the_conservative_bound() {
    let order = JetOrder::Truncated(4);
    let f = Germ::from_term(Jet::one(1).truncate_to(order), &[e(1, 0)]).unwrap();
    let p = f.mul(&f);
    // d_min adds, d_max = min(dmax_f + dmin_g, dmax_g + dmin_f).
    assert_eq!(p.d_min(), -2);
    assert_eq!(p.d_max(), JetOrder::Truncated(2));
}
