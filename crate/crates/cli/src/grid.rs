//! Floating-point sampling of the exact closed-form solutions. Every value
//! is computed exactly and rounded once when converted to `f64`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use approxsym_core::algebra::parse_rational;
use approxsym_core::equations::Equation;
use approxsym_core::invariants::{
    galilean_close, galilean_kdv_solution, galilean_reduce, linear_solution, residual,
    GalileanParams, SolutionCandidate, GALILEAN_RESIDUAL_ORDER,
};
use approxsym_core::{Rational, RationalExpr, Symbol};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub x_range: (Rational, Rational),
    pub t_range: (Rational, Rational),
    pub nx: usize,
    pub nt: usize,
    pub eps: Rational,
    pub params: BTreeMap<String, Rational>,
}

impl GridSpec {
    /// `−3 ≤ x ≤ 3`, `0.1 ≤ t ≤ 3`, `c = C = k1 = k2 = k4 = 1`, `ε = 0.1`.
    pub fn standard() -> Self {
        let r = |s: &str| parse_rational(s).expect("literal");
        Self {
            x_range: (r("-3"), r("3")),
            t_range: (r("0.1"), r("3")),
            nx: 61,
            nt: 30,
            eps: r("0.1"),
            params: ["c", "C", "k1", "k2", "k4"]
                .iter()
                .map(|k| (k.to_string(), r("1")))
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.nx < 2 || self.nt < 2 {
            return Err(CliError::Grid("nx and nt must be at least 2".into()));
        }
        let (a, b) = &self.t_range;
        if a > b || self.x_range.0 > self.x_range.1 {
            return Err(CliError::Grid("ranges must be increasing".into()));
        }
        if a <= &Rational::zero() && b >= &Rational::zero() {
            return Err(CliError::Grid("t-range must exclude 0".into()));
        }
        Ok(())
    }

    fn axis((a, b): &(Rational, Rational), n: usize) -> Vec<Rational> {
        let step = (b - a) / Rational::from_integer(((n - 1) as i64).into());
        (0..n)
            .map(|i| a + &step * Rational::from_integer((i as i64).into()))
            .collect()
    }

    /// Grid points in t-major order.
    pub fn points(&self) -> Vec<(Rational, Rational)> {
        let xs = Self::axis(&self.x_range, self.nx);
        let ts = Self::axis(&self.t_range, self.nt);
        ts.iter()
            .flat_map(|t| xs.iter().map(move |x| (x.clone(), t.clone())))
            .collect()
    }

    fn param_values(&self) -> BTreeMap<Symbol, Rational> {
        self.params
            .iter()
            .map(|(k, v)| (Symbol::param(k), v.clone()))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionKind {
    GalileanUnperturbed,
    GalileanApproximate,
    Linear,
}

/// The closed form of a solution, with all parameters still symbolic.
pub fn solution(kind: SolutionKind) -> Result<SolutionCandidate, CliError> {
    Ok(match kind {
        SolutionKind::GalileanUnperturbed => galilean_kdv_solution(),
        SolutionKind::GalileanApproximate => {
            let r = galilean_reduce(&GalileanParams::default())?;
            galilean_close(&r)?.solution
        }
        SolutionKind::Linear => linear_solution(),
    })
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn with_point(
    params: &BTreeMap<Symbol, Rational>,
    x: &Rational,
    t: &Rational,
) -> BTreeMap<Symbol, Rational> {
    let mut v = params.clone();
    v.insert(Symbol::X, x.clone());
    v.insert(Symbol::T, t.clone());
    v
}

/// `(x, t, w)` samples of the solution at `spec.eps`.
pub fn sample(spec: &GridSpec, kind: SolutionKind) -> Result<Vec<(f64, f64, f64)>, CliError> {
    spec.validate()?;
    let w = solution(kind)?.expr;
    let params = spec.param_values();
    spec.points()
        .iter()
        .map(|(x, t)| {
            let v = w.evaluate(&with_point(&params, x, t), &spec.eps)?;
            Ok((to_f64(x), to_f64(t), to_f64(&v)))
        })
        .collect()
}

pub fn to_csv(rows: &[(f64, f64, f64)]) -> String {
    let mut out = String::from("x,t,w\n");
    for (x, t, w) in rows {
        let _ = writeln!(out, "{x},{t},{w}");
    }
    out
}

/// Exact residual of the solution on the Gardner equation with the
/// numeric parameters substituted.
pub fn residual_expr(
    spec: &GridSpec,
    kind: SolutionKind,
    order: usize,
) -> Result<RationalExpr, CliError> {
    let mut cand = solution(kind)?;
    cand.expr = approxsym_core::invariants::specialize(&cand.expr, &spec.param_values())?;
    Ok(residual(&cand, &Equation::gardner(), order)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingRow {
    pub eps: f64,
    pub sup_residual: f64,
    /// `r(ε_prev) / r(ε)` for the previous entry.
    pub ratio: Option<f64>,
}

/// Residual series order that keeps every ε power of the closed forms.
pub const DEFAULT_RESIDUAL_ORDER: usize = GALILEAN_RESIDUAL_ORDER;

/// Sup-norm of the exact residual on the grid for each `ε`, with the
/// residual's ε-series kept through `ε^order`.
pub fn residual_scaling(
    spec: &GridSpec,
    kind: SolutionKind,
    eps_list: &[Rational],
    order: usize,
) -> Result<Vec<ScalingRow>, CliError> {
    spec.validate()?;
    if eps_list.iter().any(|e| e < &Rational::zero()) {
        return Err(CliError::Grid("eps values must be non-negative".into()));
    }
    if eps_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(CliError::Grid("eps values must be decreasing".into()));
    }
    let r = residual_expr(spec, kind, order)?;
    let levels: Vec<RationalExpr> = (0..=r.order()).map(|k| r.level(k)).collect();
    let points = spec.points();
    let mut values: Vec<Vec<Rational>> = Vec::with_capacity(points.len());
    for (x, t) in &points {
        let at = with_point(&BTreeMap::new(), x, t);
        values.push(
            levels
                .iter()
                .map(|l| l.evaluate(&at, &Rational::zero()))
                .collect::<Result<_, _>>()?,
        );
    }
    let mut rows: Vec<ScalingRow> = Vec::new();
    for eps in eps_list {
        let sup = values
            .iter()
            .map(|lv| {
                let mut acc = Rational::zero();
                let mut e = Rational::from_integer(1.into());
                for c in lv {
                    acc += c * &e;
                    e *= eps;
                }
                to_f64(&acc).abs()
            })
            .fold(0.0_f64, f64::max);
        let ratio = rows
            .last()
            .filter(|_| sup > 0.0)
            .map(|prev| prev.sup_residual / sup);
        rows.push(ScalingRow {
            eps: to_f64(eps),
            sup_residual: sup,
            ratio,
        });
    }
    Ok(rows)
}
