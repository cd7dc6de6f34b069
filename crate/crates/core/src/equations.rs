//! Governing equations and the generators that the Gardner analysis
//! produces, written out explicitly for checks and fixtures.

use crate::algebra::{EpsSeries, Poly};
use crate::error::Result;
use crate::jet::{SolutionManifold, VectorField};

/// An evolution equation `F = F₀ + εF₁ + … ≈ 0` with its solution manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub series: EpsSeries,
    pub manifold: SolutionManifold,
}

impl Equation {
    pub fn new(name: impl Into<String>, series: EpsSeries) -> Result<Self> {
        let manifold = SolutionManifold::solve_for_wt(&series)?;
        Ok(Self {
            name: name.into(),
            series,
            manifold,
        })
    }

    /// Parses one string per ε-level.
    pub fn parse(name: impl Into<String>, levels: &[&str]) -> Result<Self> {
        let coeffs = levels
            .iter()
            .map(|s| s.parse::<Poly>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(name, EpsSeries::from_coeffs(coeffs))
    }

    /// `w_t - 6 w w_x + w_xxx = 0`.
    pub fn kdv() -> Self {
        Self::parse("kdv", &["w_t - 6*w*w_x + w_xxx"]).expect("KdV is evolutionary")
    }

    /// `w_t - 6(w + εw²) w_x + w_xxx = 0` at first-order precision.
    pub fn gardner() -> Self {
        Self::parse("gardner", &["w_t - 6*w*w_x + w_xxx", "-6*w^2*w_x"])
            .expect("Gardner is evolutionary")
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// The ε-free equation `F₀ = 0`.
    pub fn unperturbed(&self) -> Self {
        Self::new(
            format!("{} (unperturbed)", self.name),
            EpsSeries::from_poly(self.series.coeff(0).clone(), 0),
        )
        .expect("unperturbed part of an evolutionary equation is evolutionary")
    }
}

fn field(xi: &[&str], tau: &[&str], eta: &[&str]) -> VectorField {
    VectorField::from_levels(xi, tau, eta).expect("fixture fields are well formed")
}

/// Basis `∂x, ∂t, 6t∂x − ∂w, x∂x + 3t∂t − 2w∂w` of the KdV point symmetries.
pub fn kdv_basis() -> Vec<VectorField> {
    vec![
        field(&["1"], &["0"], &["0"]),
        field(&["0"], &["1"], &["0"]),
        field(&["6*t"], &["0"], &["-1"]),
        field(&["x"], &["3*t"], &["-2*w"]),
    ]
}

/// Generic KdV symmetry with constants `C1..C4`:
/// `(C1 − 6C3 t + C4 x)∂x + (C2 + 3C4 t)∂t + (C3 − 2C4 w)∂w`.
pub fn kdv_generic_field() -> VectorField {
    field(&["C1 - 6*C3*t + C4*x"], &["C2 + 3*C4*t"], &["C3 - 2*C4*w"])
}

/// The seven first-order approximate symmetries `v1..v7` of the Gardner
/// equation, as order-1 fields.
pub fn gardner_basis() -> Vec<VectorField> {
    vec![
        field(&["1", "0"], &["0", "0"], &["0", "0"]),
        field(&["0", "0"], &["1", "0"], &["0", "0"]),
        field(&["6*t", "0"], &["0", "0"], &["-1", "2*w"]),
        field(&["0", "1"], &["0", "0"], &["0", "0"]),
        field(&["0", "0"], &["0", "1"], &["0", "0"]),
        field(&["0", "6*t"], &["0", "0"], &["0", "-1"]),
        field(&["0", "x"], &["0", "3*t"], &["0", "-2*w"]),
    ]
}

pub const GARDNER_LABELS: [&str; 7] = ["v1", "v2", "v3", "v4", "v5", "v6", "v7"];
pub const KDV_LABELS: [&str; 4] = ["X0^1", "X0^2", "X0^3", "X0^4"];
