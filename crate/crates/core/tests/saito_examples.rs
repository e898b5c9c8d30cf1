use coxsaito::coxeter::{build_datum, builtin_invariants, validate_invariants, CoxeterError, GroupType};
use coxsaito::exactalg::{FactoredFraction, Monomial, MultiPoly, Scalar};
use coxsaito::saito::{build_context, DerivationDegree, Frame, PolyDerivation, SaitoContext};
use coxsaito::verify::{contact_order_check, run_suites, Bounds, CheckStatus, Suite};

fn builtin(t: GroupType, n: u32) -> SaitoContext {
    let d = build_datum(&t, n).unwrap();
    build_context(&d, &builtin_invariants(&d).unwrap()).unwrap()
}

fn poly(ctx_field: &coxsaito::exactalg::Field, terms: &[([u32; 2], i64, i64)]) -> MultiPoly {
    MultiPoly::from_terms(
        ctx_field,
        2,
        terms.iter().map(|(e, n, d)| (Monomial::from_exponents(e), Scalar::from_ratio(ctx_field, *n, *d))),
    )
}

/// `P1 = (x^2 + y^2)/8`, `P2 = x^4/4 - 3/2 x^2 y^2 + y^4/4`.
fn b2_flat() -> SaitoContext {
    let d = build_datum(&GroupType::B, 2).unwrap();
    let f = d.field().clone();
    let p1 = poly(&f, &[([2, 0], 1, 8), ([0, 2], 1, 8)]);
    let p2 = poly(&f, &[([4, 0], 1, 4), ([2, 2], -3, 2), ([0, 4], 1, 4)]);
    let inv = validate_invariants(&d, vec![p1, p2]).unwrap();
    build_context(&d, &inv).unwrap()
}

#[test]
fn b2_flat_invariants_give_closed_form() {
    let ctx = b2_flat();
    let expected = [["0", "3/4", "1/4", "0"], ["0", "7/4", "5/4", "0"], ["0", "11/4", "9/4", "0"]];
    for (k, want) in (1..=3).zip(expected) {
        let b = ctx.bk_matrix(k).unwrap();
        let got: Vec<String> = b.entries().map(|(_, _, p)| p.render()).collect();
        assert_eq!(got, want, "k = {k}");
    }
    let report = run_suites(&ctx, &[Suite::Flat], Bounds::default(), "flat");
    assert!(report.results.iter().all(|r| r.status == CheckStatus::Pass));
}

#[test]
fn catalogue_b2_is_not_flat_normalized() {
    let ctx = builtin(GroupType::B, 2);
    let report = run_suites(&ctx, &[Suite::Flat], Bounds::default(), "builtin");
    assert_eq!(report.get("flat/det-dg-constant").unwrap().status, CheckStatus::Pass);
    assert!(matches!(report.get("flat/normalized").unwrap().status, CheckStatus::Skipped(_)));
}

#[test]
fn contact_order_of_rank_one_basis() {
    let ctx = builtin(GroupType::A, 1);
    let xi3 = ctx.xi_basis(3).unwrap().derivation(0);
    assert!(contact_order_check(&xi3, 3, ctx.datum()).unwrap().passed());
    assert!(!contact_order_check(&xi3, 4, ctx.datum()).unwrap().passed());
}

#[test]
fn first_basis_has_contact_order_one_only() {
    let ctx = builtin(GroupType::B, 2);
    let xi1 = ctx.xi_basis(1).unwrap().derivation(1);
    let report = contact_order_check(&xi1, 2, ctx.datum()).unwrap();
    assert!(!report.passed());
    assert!(report.first_failure().is_some());
    assert!(contact_order_check(&xi1, 1, ctx.datum()).unwrap().passed());
}

#[test]
fn b2_third_basis_degrees() {
    let ctx = builtin(GroupType::B, 2);
    let degrees: Vec<DerivationDegree> =
        ctx.xi_basis(3).unwrap().derivations().iter().map(PolyDerivation::degree).collect();
    assert_eq!(degrees, [DerivationDegree::Degree(5), DerivationDegree::Degree(7)]);
}

#[test]
fn nabla_of_first_basis_in_rank_one() {
    let ctx = builtin(GroupType::A, 1);
    let out = ctx.nabla_d(&ctx.xi_basis(1).unwrap().derivation(0)).unwrap();
    let out = out.to_frame(Frame::P, &ctx);
    assert_eq!(out.coeffs()[0].render(), "2");
}

#[test]
fn bracket_of_euler_field() {
    let ctx = builtin(GroupType::A, 1);
    let f = ctx.datum().field().clone();
    let d = PolyDerivation::from_polys(Frame::X, &[MultiPoly::one(&f, 1)]);
    let e = PolyDerivation::from_polys(Frame::X, &[MultiPoly::var(&f, 1, 0)]);
    assert!(d.bracket(&e, &ctx).same_as(&d, &ctx));
    assert!(e
        .bracket(&d, &ctx)
        .same_as(&d.scale_by(&FactoredFraction::constant(&Scalar::from_int(&f, -1), 1)), &ctx));
}

#[test]
fn dependent_invariants_are_rejected() {
    let d = build_datum(&GroupType::B, 2).unwrap();
    let f = d.field().clone();
    let p1 = poly(&f, &[([2, 0], 1, 1), ([0, 2], 1, 1)]);
    let p2 = p1.pow(2);
    let err = validate_invariants(&d, vec![p1, p2]).err().unwrap();
    assert!(matches!(err, CoxeterError::JacobianCriterionFailed(_)));
}

#[test]
fn dihedral_bk_difference_holds() {
    let ctx = builtin(GroupType::I2(5), 5);
    let report = run_suites(&ctx, &[Suite::Bk], Bounds { k_max: 2, m_max: 3, p_max: 1 }, "builtin");
    assert!(report.all_passed());
    assert_eq!(report.field, ctx.datum().field().render_minimal_polynomial());
}
