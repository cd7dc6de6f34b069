use super::*;
use crate::equations::{gardner_basis, kdv_basis, kdv_generic_field};

fn p(s: &str) -> Poly {
    s.parse().unwrap()
}

#[test]
fn ansatz_size() {
    let a = Ansatz::new(3, 1);
    assert_eq!(a.unknowns.len(), 3 * 2 * 20);
    assert_eq!(point_monomials(2).len(), 10);
}

#[test]
fn kdv_has_four_point_symmetries() {
    let s = exact_symmetries(&Equation::kdv(), 3).unwrap();
    assert_eq!(s.dimension(), 4);
    assert_eq!(s.basis().generators, kdv_basis());
}

#[test]
fn kdv_generic_field_matches_fixture() {
    let s = exact_symmetries(&Equation::kdv(), 3).unwrap();
    let (g, names) = s.generic_field(&[], 1);
    assert_eq!(names.len(), 4);
    assert_eq!(g, kdv_generic_field());
}

#[test]
fn kdv_degree_zero_keeps_translations() {
    let s = exact_symmetries(&Equation::kdv(), 0).unwrap();
    assert_eq!(s.dimension(), 2);
}

#[test]
fn transport_equation() {
    // w_t = 0: ξ and η free of t, τ arbitrary (degree ≤ 1).
    let f = Equation::parse("transport", &["w_t"]).unwrap();
    let s = exact_symmetries(&f, 1).unwrap();
    assert_eq!(s.dimension(), 10);
}

#[test]
fn auxiliary_function() {
    let f = Equation::gardner();
    let h = auxiliary_h(&kdv_generic_field(), &f).unwrap();
    assert_eq!(h, p("12*w*w_x*(C4*w - C3)"));
}

#[test]
fn auxiliary_rejects_non_symmetry() {
    let v = VectorField::from_levels(&["x"], &["0"], &["0"]).unwrap();
    assert!(matches!(
        auxiliary_h(&v, &Equation::gardner()),
        Err(Error::NotExactSymmetry { .. })
    ));
}

#[test]
fn gardner_approximate_symmetries() {
    let a = approximate_symmetries(&Equation::gardner(), 3).unwrap();
    assert_eq!(a.exact.len(), 4);
    assert_eq!(a.approximate.len(), 7);
    assert_eq!(a.constraints, vec![p("C4")]);
    assert_eq!(a.unstable, vec!["X4".to_string()]);
    assert!(same_span(&a.approximate.generators, &gardner_basis()).unwrap());
    assert_eq!(a.approximate.generators, gardner_basis());
}

#[test]
fn gardner_basis_holds() {
    let f = Equation::gardner();
    for v in gardner_basis() {
        assert!(verify_approximate_symmetry(&v, &f).unwrap().holds, "{v}");
    }
}

#[test]
fn one_step_route_agrees() {
    let f = Equation::gardner();
    let s = solve_nullspace(&assemble_approximate(&f, &Ansatz::new(2, 1)).unwrap()).unwrap();
    let basis = s.basis();
    assert_eq!(basis.len(), 7);
    assert!(same_span(&basis.generators, &gardner_basis()).unwrap());
}

#[test]
fn scaling_is_not_stable() {
    let f = Equation::gardner();
    let x4 = kdv_basis()[3].with_order(1);
    let r = verify_approximate_symmetry(&x4, &f).unwrap();
    assert!(!r.holds);
    assert_eq!(r.residual.coeff(1), &p("12*w^2*w_x"));
}

#[test]
fn saturation() {
    let a = approximate_symmetries(&Equation::gardner(), 4).unwrap();
    assert_eq!(a.exact.len(), 4);
    assert_eq!(a.approximate.len(), 7);
}

#[test]
fn matrix_dump_has_one_row_per_equation() {
    let a = Ansatz::new(1, 0);
    let sys = assemble_exact(&Equation::kdv(), &a).unwrap();
    let dump = sys.matrix_dump().unwrap();
    let mut lines = dump.lines();
    let header = lines.next().unwrap();
    assert_eq!(header.split(' ').count(), 1 + a.unknowns.len() + 2);
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), sys.equations.len());
    assert!(rows.iter().all(|r| r.ends_with("| 0")));
}

#[test]
fn gardner_generic_field_parametrization() {
    let a = approximate_symmetries(&Equation::gardner(), 3).unwrap();
    let expected = VectorField::from_levels(
        &["C1 - 6*C3*t", "C5 + C8*x - 6*C7*t"],
        &["C2", "C6 + 3*C8*t"],
        &["C3", "C7 - 2*(C3 + C8)*w"],
    )
    .unwrap();
    assert_eq!(a.generic, expected);
}
