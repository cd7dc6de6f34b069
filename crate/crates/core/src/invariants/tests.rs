use super::*;
use crate::algebra::q;

fn inv(j0: (&str, &str), j1: (&str, &str)) -> ApproxInvariant {
    ApproxInvariant::parse(j0, j1).unwrap()
}

#[test]
fn invariant_examples() {
    let x = gardner_combination(&[(1, "1"), (6, "1")]).unwrap();
    assert!(
        check_invariant(&x, &inv(("w", "1"), ("x", "1")))
            .unwrap()
            .holds
    );
    assert!(
        check_invariant(&x, &inv(("t", "1"), ("0", "1")))
            .unwrap()
            .holds
    );
    let v7 = gardner_combination(&[(7, "1")]).unwrap();
    assert!(
        check_invariant(&v7, &inv(("t", "x^3"), ("0", "1")))
            .unwrap()
            .holds
    );
    let v1 = gardner_combination(&[(1, "1")]).unwrap();
    let r = check_invariant(&v1, &inv(("x", "1"), ("0", "1"))).unwrap();
    assert!(!r.holds);
    assert_eq!(r.residual.num().coeff(0), &Poly::one());
}

#[test]
fn table_audit() {
    let report = audit_table(TABLE).unwrap();
    assert_eq!(report.len(), 32);
    for r in &report {
        assert_eq!(
            r.verdict,
            RowVerdict::Confirmed,
            "{} [{}] {}",
            r.operator,
            r.case,
            r.invariant
        );
    }
}

#[test]
fn alternative_f_reading_fails() {
    let x = gardner_combination(&[(7, "1"), (1, "alpha"), (3, "gamma")]).unwrap();
    let j = inv(("gamma*(x + 6*t*w) + alpha*w", "1"), F_ALTERNATIVE);
    assert!(!check_invariant(&x, &j).unwrap().holds);
}

#[test]
fn corrupted_row_gets_suggestion() {
    let rows = [InvariantRow {
        operator: "v3",
        case: "corrupted",
        field: &[(3, "1")],
        invariants: &[(("x + 6*t*w", "1"), ("-12*t*x*w + x^2", "6*t"))],
    }];
    let report = audit_table(&rows).unwrap();
    let RowVerdict::Erratum { suggestion, .. } = &report[0].verdict else {
        panic!("corruption not detected");
    };
    let s = suggestion.as_ref().expect("re-solve finds a correction");
    assert!(s.contains("6*t*w^2"), "{s}");
}

#[test]
fn suggestion_solves_condition() {
    let x = gardner_combination(&[(3, "1")]).unwrap();
    let j0 = inv(("x + 6*t*w", "1"), ("0", "1")).j0;
    let j1 = suggest_correction(&x, &j0).unwrap().unwrap();
    assert!(
        check_invariant(&x, &ApproxInvariant::new(j0, j1))
            .unwrap()
            .holds
    );
}

#[test]
fn linear_solution_residual() {
    let r = residual(&linear_solution(), &Equation::gardner(), 4).unwrap();
    assert_eq!(r.den(), &Poly::one());
    let want = EpsSeries::from_coeffs(
        ["0", "0", "-6*x", "0", "6*x^2"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect(),
    );
    assert_eq!(r.num(), &want);
    assert!(r.with_order(1).is_o_zero());
}

#[test]
fn trivial_residuals() {
    let zero = SolutionCandidate::new(RationalExpr::from_poly(Poly::zero(), 1));
    assert!(residual(&zero, &Equation::gardner(), 1)
        .unwrap()
        .is_o_zero());
    let w = galilean_kdv_solution();
    assert!(residual(&w, &Equation::kdv(), 0).unwrap().is_o_zero());
}

#[test]
fn galilean_reduction() {
    let r = galilean_reduce(&GalileanParams::default()).unwrap();
    assert!(r.zeroth_order.is_o_zero());
    assert!(r.k3_absent);
    assert!(r.rhs_matches, "{}", r.rhs);
    assert!(r.v_z_matches, "{}", r.v_z);
    assert!(r.integral_matches, "{}", r.integral_yz);
    assert!(r.v_matches, "{}", r.v);
    assert!(r.round_trip);
}

#[test]
fn galilean_closure() {
    let r = galilean_reduce(&GalileanParams::default()).unwrap();
    let c = galilean_close(&r).unwrap();
    assert!(c.reduces_to_ode);
    assert!(c.ode_solved);
    assert!(c.matches_closed_form);
    assert!(c.o_eps);
    assert!(!c.residual.level(2).is_o_zero());
}

#[test]
fn galilean_specializations() {
    let r = galilean_reduce(&GalileanParams::default()).unwrap();
    let zeros: BTreeMap<Symbol, Rational> = ["k1", "k2", "k4"]
        .iter()
        .map(|k| (Symbol::param(k), q(0, 1)))
        .collect();
    let v = specialize(&r.v, &zeros).unwrap();
    let want = RationalExpr::new(
        EpsSeries::from_poly("-(c - x)^2 + 36*t^2*F".parse().unwrap(), 0),
        "36*t^2".parse().unwrap(),
    )
    .unwrap();
    assert!(v.equivalent(&want).unwrap());
}

#[test]
fn gardner_transformation() {
    assert!(gardner_transform_check().unwrap());
    let eps = Symbol::param("eps");
    let (l, r) = gardner_transform_sides(&eps).unwrap();
    let zero = Poly::zero();
    let kdv: Poly = "w_t - 6*w*w_x + w_xxx".parse().unwrap();
    assert_eq!(l.substitute(&eps, &zero), kdv);
    assert_eq!(r.substitute(&eps, &zero), kdv);
    assert!(l
        .substitute(&Symbol::W, &zero)
        .substitute_all(
            &["w_x", "w_t", "w_xx", "w_xt", "w_xxx", "w_xxxx"]
                .iter()
                .map(|s| (Symbol::parse(s), Poly::zero()))
                .collect()
        )
        .is_zero());
}
