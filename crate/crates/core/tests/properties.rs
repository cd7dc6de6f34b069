mod support;

use approxsym_core::equations::{gardner_basis, GARDNER_LABELS};
use approxsym_core::lie::LieAlgebra;
use proptest::prelude::*;
use std::sync::OnceLock;
use support::props;

fn gardner() -> &'static LieAlgebra {
    static G: OnceLock<LieAlgebra> = OnceLock::new();
    G.get_or_init(|| LieAlgebra::new(gardner_basis(), &GARDNER_LABELS).unwrap())
}

proptest! {
    #[test]
    fn ring_laws(a in support::poly(), b in support::poly(), c in support::poly()) {
        props::ring_laws(&a, &b, &c)?;
    }

    #[test]
    fn eps_truncation((a, b) in (0usize..4).prop_flat_map(|p| (support::series(p), support::series(p)))) {
        props::eps_truncation(&a, &b)?;
    }

    #[test]
    fn collect_reassembles(a in support::poly()) {
        props::collect_reassembles(&a)?;
    }

    #[test]
    fn leibniz(a in support::jet_poly(), b in support::jet_poly()) {
        props::leibniz(&a, &b)?;
    }

    #[test]
    fn total_derivatives_commute(p in support::jet_poly()) {
        props::total_derivatives_commute(&p)?;
    }

    #[test]
    fn prolongation_linear(
        x in support::field(),
        y in support::field(),
        c in support::rational(),
        f in support::jet_poly(),
    ) {
        props::prolongation_linear(&x, &y, &c, &f)?;
    }

    #[test]
    fn antisymmetry_jacobi(x in support::field(), y in support::field(), z in support::field()) {
        props::antisymmetry_jacobi(&x, &y, &z)?;
    }

    #[test]
    fn adjoint_automorphism(i in 0usize..7, u in support::coords(7), v in support::coords(7)) {
        props::adjoint_automorphism(gardner(), i, &u, &v)?;
    }

    #[test]
    fn adjoint_group_law(i in 0usize..7, u in support::coords(7)) {
        props::adjoint_group_law(gardner(), i, &u)?;
    }

    #[test]
    fn bracket_two_ways(u in support::coords(7), v in support::coords(7)) {
        props::bracket_two_ways(gardner(), &u, &v)?;
    }
}
