use super::golden::{self, compare_adjoint, compare_commutators, computed_adjoint_table};
use super::optimal::{normalize_optimal, verify_optimal_system, AlgebraElement, ParamExpr};
use super::*;
use crate::equations::{gardner_basis, GARDNER_LABELS};

fn gardner() -> LieAlgebra {
    LieAlgebra::new(gardner_basis(), &GARDNER_LABELS).unwrap()
}

fn p(s: &str) -> Poly {
    s.parse().unwrap()
}

fn coords(g: &LieAlgebra, v: &VectorField) -> Vec<i64> {
    g.coordinates(v)
        .unwrap()
        .iter()
        .map(|c| c.to_integer().try_into().unwrap())
        .collect()
}

#[test]
fn sample_brackets() {
    let g = gardner();
    let v = gardner_basis();
    assert_eq!(
        coords(&g, &bracket(&v[1], &v[2]).unwrap()),
        [6, 0, 0, 0, 0, 0, 0]
    );
    assert!(bracket(&v[0], &v[0]).unwrap().is_zero());
    assert!(bracket(&v[4], &v[5]).unwrap().is_zero());
    assert_eq!(
        coords(&g, &bracket(&v[6], &v[0]).unwrap()),
        [0, 0, 0, -1, 0, 0, 0]
    );
}

#[test]
fn commutator_table_matches_reference() {
    let g = gardner();
    let m = compare_commutators(&g, &g.commutator_table(), &golden::commutator_table());
    assert!(m.is_empty(), "{m:?}");
}

#[test]
fn adjoint_table_matches_reference() {
    let g = gardner();
    let t = computed_adjoint_table(&g, &mu()).unwrap();
    let m = compare_adjoint(&g, &t, &golden::adjoint_table(&mu()));
    assert!(m.is_empty(), "{m:?}");
}

#[test]
fn corrupted_reference_is_detected() {
    let g = gardner();
    let t = computed_adjoint_table(&g, &mu()).unwrap();
    let mut bad = golden::adjoint_table(&mu());
    bad[1][2][0] = p("6*mu");
    let m = compare_adjoint(&g, &t, &bad);
    assert_eq!(m.len(), 1);
    assert_eq!((m[0].row, m[0].column), (2, 3));
    assert_eq!(m[0].computed, "v3 - 6*mu*v1");
}

#[test]
fn small_tables() {
    let v = gardner_basis();
    let one = LieAlgebra::new(vec![v[0].clone()], &["v1"]).unwrap();
    assert!(one.commutator_table()[0][0][0].is_zero());
    let eps_part = LieAlgebra::new(v[3..].to_vec(), &["v4", "v5", "v6", "v7"]).unwrap();
    assert!(eps_part
        .commutator_table()
        .iter()
        .flatten()
        .flatten()
        .all(Zero::is_zero));
}

#[test]
fn dependent_and_open_sets_rejected() {
    let v = gardner_basis();
    assert!(matches!(
        LieAlgebra::new(
            vec![v[0].clone(), v[0].scale(&crate::algebra::q(2, 1))],
            &["a", "b"]
        ),
        Err(Error::DependentBasis)
    ));
    let x = VectorField::from_levels(&["x^2", "0"], &["0", "0"], &["0", "0"]).unwrap();
    assert!(matches!(
        LieAlgebra::new(vec![v[0].clone(), x], &["a", "b"]),
        Err(Error::NotClosed { .. })
    ));
}

#[test]
fn solvable_with_ideal_chain() {
    let g = gardner();
    let dims: Vec<usize> = g.derived_series().iter().map(Vec::len).collect();
    assert_eq!(dims, [7, 4, 0]);
    assert!(g.is_solvable());
    let chain = golden::ideal_chain();
    for w in chain.windows(2) {
        let a = g.subspace(&w[0]).unwrap();
        let b = g.subspace(&w[1]).unwrap();
        assert!(g.is_ideal(&a, &b), "{:?} in {:?}", w[0], w[1]);
    }
    // ⟨v2⟩ is not an ideal of ⟨v2, v3⟩
    let a = g.subspace(&[1]).unwrap();
    let b = g.subspace(&[1, 2]).unwrap();
    assert!(!g.is_ideal(&a, &b));
}

#[test]
fn abelian_series() {
    let v = gardner_basis();
    let h = LieAlgebra::new(vec![v[3].clone(), v[4].clone()], &["v4", "v5"]).unwrap();
    let dims: Vec<usize> = h.derived_series().iter().map(Vec::len).collect();
    assert_eq!(dims, [2, 0]);
}

#[test]
fn adjoint_examples() {
    let g = gardner();
    let a = g.adjoint_map(3, &mu()).unwrap();
    assert!(a.is_identity());
    assert!(g.adjoint_map(4, &Poly::zero()).unwrap().is_identity());
    let a = g.adjoint_map(6, &mu()).unwrap();
    assert_eq!(g.format(&a.images[0]), "v1 + mu*v4");
    assert!(a.terms <= 2);
}

#[test]
fn adjoint_inverse() {
    let g = gardner();
    for i in 0..7 {
        let a = g.adjoint_map(i, &mu()).unwrap();
        let b = g.adjoint_map(i, &-mu()).unwrap();
        let c = a.compose(&b);
        for (j, img) in c.iter().enumerate() {
            for (k, e) in img.iter().enumerate() {
                assert_eq!(e, &if j == k { Poly::one() } else { Poly::zero() });
            }
        }
    }
}

#[test]
fn strata_confirmed() {
    let g = gardner();
    let r = verify_optimal_system(&g).unwrap();
    for s in &r.strata {
        assert!(s.confirmed, "{}: {} vs {}", s.name, s.computed, s.claimed);
        assert!(s.reachable, "{}", s.name);
    }
    assert!(r.v4_trivial);
    assert!(r.max_series_terms <= 2);
}

#[test]
fn normalization_examples() {
    let g = gardner();
    let v = AlgebraElement::parse(&["a1", "0", "0", "a4", "1", "0", "0"]).unwrap();
    let out = normalize_optimal(&g, &v, &[(2, ParamExpr::parse("-a4/6").unwrap())]).unwrap();
    assert!(out.equals(&[p("a1"), p("0"), p("0"), p("0"), p("1"), p("0"), p("0")]));
    assert_eq!(normalize_optimal(&g, &v, &[]).unwrap(), v);
    let bad = ParamExpr {
        num: Poly::one(),
        den: Poly::zero(),
    };
    assert!(matches!(
        normalize_optimal(&g, &v, &[(0, bad)]),
        Err(Error::ZeroDenominator)
    ));
}

#[test]
fn rational_parameters() {
    // Ad(exp(v7/a)) applied to v1 is v1 + v4/a
    let g = gardner();
    let v = AlgebraElement::parse(&["1", "0", "0", "0", "0", "0", "0"]).unwrap();
    let step = ParamExpr::new(Poly::one(), p("a")).unwrap();
    let out = normalize_optimal(&g, &v, &[(6, step)]).unwrap();
    assert_eq!(out.den, p("a"));
    assert_eq!(out.coords[3], Poly::one());
    assert_eq!(out.coords[0], p("a"));
}
