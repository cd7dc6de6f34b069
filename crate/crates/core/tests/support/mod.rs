//! Random generators shared by the property suites.
#![allow(dead_code)]

use approxsym_core::algebra::q;
use approxsym_core::jet::VectorField;
use approxsym_core::{EpsSeries, Monomial, Poly, Rational, Symbol};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

/// Polynomials of total degree at most `max_degree` over `symbols`.
pub fn poly_over(symbols: Vec<Symbol>, max_degree: usize, max_terms: usize) -> BoxedStrategy<Poly> {
    let n = symbols.len();
    prop::collection::vec(
        (rational(), prop::collection::vec(0..n, 0..=max_degree)),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let mut p = Poly::zero();
        for (c, picks) in terms {
            let m = Monomial::from_powers(picks.into_iter().map(|i| (symbols[i].clone(), 1)));
            p.add_term(m, c);
        }
        p
    })
    .boxed()
}

/// Six symbols mixing coordinates, jets and a parameter.
pub fn ring_symbols() -> Vec<Symbol> {
    vec![
        Symbol::X,
        Symbol::T,
        Symbol::W,
        Symbol::w(1, 0),
        Symbol::w(2, 0),
        Symbol::param("a"),
    ]
}

pub fn poly() -> BoxedStrategy<Poly> {
    poly_over(ring_symbols(), 4, 5)
}

/// Jet expressions up to third order, as a differential function would be.
pub fn jet_poly() -> BoxedStrategy<Poly> {
    poly_over(
        vec![
            Symbol::X,
            Symbol::T,
            Symbol::W,
            Symbol::w(1, 0),
            Symbol::w(0, 1),
            Symbol::w(2, 0),
            Symbol::w(3, 0),
        ],
        3,
        4,
    )
}

pub fn point_poly() -> BoxedStrategy<Poly> {
    poly_over(vec![Symbol::X, Symbol::T, Symbol::W], 2, 3)
}

pub fn series(order: usize) -> BoxedStrategy<EpsSeries> {
    prop::collection::vec(poly_over(ring_symbols(), 3, 3), order + 1)
        .prop_map(EpsSeries::from_coeffs)
        .boxed()
}

/// First-order (`ε⁰ + ε¹`) point fields with quadratic coefficients.
pub fn field() -> BoxedStrategy<VectorField> {
    prop::collection::vec(point_poly(), 6)
        .prop_map(|c| {
            let s = |a: &Poly, b: &Poly| EpsSeries::from_coeffs(vec![a.clone(), b.clone()]);
            VectorField::new(s(&c[0], &c[1]), s(&c[2], &c[3]), s(&c[4], &c[5]))
                .expect("point field")
        })
        .boxed()
}

pub fn coords(dim: usize) -> BoxedStrategy<Vec<Rational>> {
    prop::collection::vec(rational(), dim).boxed()
}

/// Property bodies, shared between the default-size property tests and the
/// 1000-case acceptance runs.
pub mod props {
    use approxsym_core::algebra::q;
    use approxsym_core::jet::{act, total_derivative_poly, Direction, VectorField};
    use approxsym_core::lie::{bracket, LieAlgebra};
    use approxsym_core::{EpsSeries, Poly, Rational, Symbol};
    use proptest::prelude::*;
    use proptest::test_runner::TestCaseError;

    type Outcome = Result<(), TestCaseError>;

    pub fn ring_laws(a: &Poly, b: &Poly, c: &Poly) -> Outcome {
        prop_assert_eq!(&(a + b), &(b + a));
        prop_assert_eq!(&(a * b), &(b * a));
        prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
        prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
        prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
        prop_assert_eq!(&(a * &Poly::one()), a);
        prop_assert!((a - a).is_zero());
        Ok(())
    }

    /// Truncated series arithmetic agrees with polynomial arithmetic in an
    /// explicit `eps` followed by dropping high powers.
    pub fn eps_truncation(a: &EpsSeries, b: &EpsSeries) -> Outcome {
        let eps = Symbol::param("eps");
        let p = a.order();
        let (pa, pb) = (a.to_poly_in(&eps), b.to_poly_in(&eps));
        prop_assert_eq!(&(a * b), &EpsSeries::from_poly_in(&(&pa * &pb), &eps, p));
        prop_assert_eq!(&(a + b), &EpsSeries::from_poly_in(&(&pa + &pb), &eps, p));
        Ok(())
    }

    pub fn collect_reassembles(a: &Poly) -> Outcome {
        for basis in [&[Symbol::X][..], &[Symbol::W, Symbol::w(1, 0)], &[]] {
            let parts = a.collect_coefficients(|s| basis.contains(s));
            let mut sum = Poly::zero();
            for (m, c) in &parts {
                prop_assert!(c.symbols().iter().all(|s| !basis.contains(s)));
                sum += &c.mul_monomial(m, &q(1, 1));
            }
            prop_assert_eq!(&sum, a);
        }
        Ok(())
    }

    pub fn leibniz(a: &Poly, b: &Poly) -> Outcome {
        for s in super::ring_symbols() {
            let lhs = (a * b).partial_derivative(&s);
            let rhs = &(&a.partial_derivative(&s) * b) + &(a * &b.partial_derivative(&s));
            prop_assert_eq!(lhs, rhs);
        }
        for dir in [Direction::X, Direction::T] {
            let d = |p: &Poly| total_derivative_poly(p, dir).expect("jet order");
            prop_assert_eq!(d(&(a * b)), &(&d(a) * b) + &(a * &d(b)));
        }
        Ok(())
    }

    pub fn total_derivatives_commute(p: &Poly) -> Outcome {
        let dx = |p: &Poly| total_derivative_poly(p, Direction::X).expect("jet order");
        let dt = |p: &Poly| total_derivative_poly(p, Direction::T).expect("jet order");
        prop_assert_eq!(dx(&dt(p)), dt(&dx(p)));
        Ok(())
    }

    pub fn prolongation_linear(
        x: &VectorField,
        y: &VectorField,
        c: &Rational,
        f: &Poly,
    ) -> Outcome {
        let f = EpsSeries::from_poly(f.clone(), 1);
        let combined = &(x + &y.scale(c));
        let lhs = act(combined, &f).expect("prolongation");
        let rhs = &act(x, &f).expect("prolongation") + &act(y, &f).expect("prolongation").scale(c);
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }

    pub fn antisymmetry_jacobi(x: &VectorField, y: &VectorField, z: &VectorField) -> Outcome {
        let br = |a: &VectorField, b: &VectorField| bracket(a, b).expect("bracket");
        prop_assert_eq!(br(x, y), br(y, x).scale(&q(-1, 1)));
        let sum = &(&br(x, &br(y, z)) + &br(y, &br(z, x))) + &br(z, &br(x, y));
        prop_assert!(sum.is_zero(), "Jacobi sum {}", sum);
        Ok(())
    }

    fn polys(c: &[Rational]) -> Vec<Poly> {
        c.iter().cloned().map(Poly::constant).collect()
    }

    /// `Ad(exp(μ vᵢ))` preserves brackets, with μ symbolic.
    pub fn adjoint_automorphism(
        g: &LieAlgebra,
        i: usize,
        u: &[Rational],
        v: &[Rational],
    ) -> Outcome {
        let ad = g.adjoint_map(i, &Poly::param("mu")).expect("nilpotent");
        let (u, v) = (polys(u), polys(v));
        let lhs = g.bracket_coords(&ad.apply(&u), &ad.apply(&v));
        let rhs = ad.apply(&g.bracket_coords(&u, &v));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }

    /// `Ad(exp(μ vᵢ)) ∘ Ad(exp(ν vᵢ)) = Ad(exp((μ + ν) vᵢ))`.
    pub fn adjoint_group_law(g: &LieAlgebra, i: usize, u: &[Rational]) -> Outcome {
        let (m, n) = (Poly::param("mu"), Poly::param("nu"));
        let a = g.adjoint_map(i, &m).expect("nilpotent");
        let b = g.adjoint_map(i, &n).expect("nilpotent");
        let ab = g.adjoint_map(i, &(&m + &n)).expect("nilpotent");
        let u = polys(u);
        prop_assert_eq!(a.apply(&b.apply(&u)), ab.apply(&u));
        Ok(())
    }

    /// Structure constants reproduce the bracket of the fields themselves.
    pub fn bracket_two_ways(g: &LieAlgebra, u: &[Rational], v: &[Rational]) -> Outcome {
        let by_fields = bracket(&g.field(u), &g.field(v)).expect("bracket");
        let coords: Vec<Rational> = g
            .bracket_coords(&polys(u), &polys(v))
            .iter()
            .map(|c| c.as_constant().unwrap_or_default())
            .collect();
        prop_assert_eq!(g.field(&coords), by_fields);
        Ok(())
    }
}
