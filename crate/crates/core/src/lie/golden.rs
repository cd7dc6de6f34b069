//! Reference commutator and adjoint tables of the seven-dimensional
//! approximate algebra of the Gardner equation, transcribed entry by entry.
//!
//! Only cells that differ from the trivial value are listed: `0` for the
//! commutator table and `vⱼ` for the adjoint table.

use num_traits::Zero;

use super::{format_with_lead, Coords, LieAlgebra};
use crate::algebra::{Poly, Rational};

/// `(row, column, [(index, coefficient)])` with 1-based indices.
type Cell = (usize, usize, &'static [(usize, i64)]);

const COMMUTATORS: &[Cell] = &[
    (1, 7, &[(4, 1)]),
    (2, 3, &[(1, 6)]),
    (2, 6, &[(4, 6)]),
    (2, 7, &[(5, 3)]),
    (3, 2, &[(1, -6)]),
    (3, 5, &[(4, -6)]),
    (3, 7, &[(6, -2)]),
    (5, 3, &[(4, 6)]),
    (6, 2, &[(4, -6)]),
    (7, 1, &[(4, -1)]),
    (7, 2, &[(5, -3)]),
    (7, 3, &[(6, 2)]),
];

/// Extra terms `coefficient·μ·v_index` added to `vⱼ`.
const ADJOINT: &[Cell] = &[
    (1, 7, &[(4, -1)]),
    (2, 3, &[(1, -6)]),
    (2, 6, &[(4, -6)]),
    (2, 7, &[(5, -3)]),
    (3, 2, &[(1, 6)]),
    (3, 5, &[(4, 6)]),
    (3, 7, &[(6, 2)]),
    (5, 3, &[(4, -6)]),
    (6, 2, &[(4, 6)]),
    (7, 1, &[(4, 1)]),
    (7, 2, &[(5, 3)]),
    (7, 3, &[(6, -2)]),
];

pub const DIM: usize = 7;

/// `table[i][j]` = coordinates of `[vᵢ₊₁, vⱼ₊₁]`.
pub fn commutator_table() -> Vec<Vec<Coords>> {
    let mut t = vec![vec![vec![Rational::zero(); DIM]; DIM]; DIM];
    for (i, j, terms) in COMMUTATORS {
        for (k, c) in terms.iter() {
            t[i - 1][j - 1][k - 1] = Rational::from_integer((*c).into());
        }
    }
    t
}

/// `table[i][j]` = coordinates of `Ad(exp(μ vᵢ₊₁)) vⱼ₊₁`, polynomial in `mu`.
pub fn adjoint_table(mu: &Poly) -> Vec<Vec<Vec<Poly>>> {
    let mut t = vec![vec![vec![Poly::zero(); DIM]; DIM]; DIM];
    for row in t.iter_mut() {
        for (j, cell) in row.iter_mut().enumerate() {
            cell[j] = Poly::one();
        }
    }
    for (i, j, terms) in ADJOINT {
        for (k, c) in terms.iter() {
            t[i - 1][j - 1][k - 1] += &(mu * &Poly::int(*c));
        }
    }
    t
}

/// A cell where the computed and reference tables disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub row: usize,
    pub column: usize,
    pub computed: String,
    pub expected: String,
}

fn as_poly(v: &[Rational]) -> Vec<Poly> {
    v.iter().cloned().map(Poly::constant).collect()
}

/// Cell-by-cell comparison of two commutator tables.
pub fn compare_commutators(
    g: &LieAlgebra,
    computed: &[Vec<Coords>],
    expected: &[Vec<Coords>],
) -> Vec<Mismatch> {
    compare(g, &lift(computed), &lift(expected), false)
}

fn lift(t: &[Vec<Coords>]) -> Vec<Vec<Vec<Poly>>> {
    t.iter()
        .map(|row| row.iter().map(|c| as_poly(c)).collect())
        .collect()
}

/// Cell-by-cell comparison of two adjoint tables.
pub fn compare_adjoint(
    g: &LieAlgebra,
    computed: &[Vec<Vec<Poly>>],
    expected: &[Vec<Vec<Poly>>],
) -> Vec<Mismatch> {
    compare(g, computed, expected, true)
}

fn compare(
    g: &LieAlgebra,
    computed: &[Vec<Vec<Poly>>],
    expected: &[Vec<Vec<Poly>>],
    lead: bool,
) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for (i, (crow, erow)) in computed.iter().zip(expected).enumerate() {
        for (j, (c, e)) in crow.iter().zip(erow).enumerate() {
            if c != e {
                let l = lead.then_some(j);
                out.push(Mismatch {
                    row: i + 1,
                    column: j + 1,
                    computed: format_with_lead(c, g.labels(), l),
                    expected: format_with_lead(e, g.labels(), l),
                });
            }
        }
    }
    out
}

/// Computes the adjoint table of `g` in the parameter `mu`.
pub fn computed_adjoint_table(g: &LieAlgebra, mu: &Poly) -> crate::Result<Vec<Vec<Vec<Poly>>>> {
    (0..g.dim())
        .map(|i| Ok(g.adjoint_map(i, mu)?.images))
        .collect()
}

/// The ideal chain `0 ⊂ ⟨v4⟩ ⊂ ⟨v4,v5⟩ ⊂ … ⊂ g`, as 0-based index sets.
pub fn ideal_chain() -> Vec<Vec<usize>> {
    vec![
        vec![],
        vec![3],
        vec![3, 4],
        vec![3, 4, 5],
        vec![3, 4, 5, 6],
        vec![0, 3, 4, 5, 6],
        vec![0, 1, 3, 4, 5, 6],
        (0..DIM).collect(),
    ]
}
