//! Jet space of one dependent variable `w(x, t)`: total derivatives,
//! point vector fields and their prolongations, and restriction of jet
//! expressions to the solution manifold of an evolution equation.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{EpsSeries, JetIndex, Poly, Rational, RationalExpr, Symbol};
use crate::error::{Error, Result};

/// Largest jet order any operation will produce.
///
/// Restricting a third-order evolution equation doubles the x-order of mixed
/// jets (`w_xxxt ↦ D_x³(…w_xxx)` reaches `w_xxxxxx`), so the bound sits well
/// above the prolongation order.
pub const MAX_JET_ORDER: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    X,
    T,
}

impl Direction {
    pub fn symbol(self) -> Symbol {
        match self {
            Direction::X => Symbol::X,
            Direction::T => Symbol::T,
        }
    }

    fn step(self, j: JetIndex) -> JetIndex {
        match self {
            Direction::X => j.dx(),
            Direction::T => j.dt(),
        }
    }
}

/// `D_dir p = ∂p/∂dir + Σ_J w_{J+dir} ∂p/∂w_J`.
pub fn total_derivative_poly(p: &Poly, dir: Direction) -> Result<Poly> {
    let mut out = p.partial_derivative(&dir.symbol());
    for s in p.symbols() {
        if let Some(j) = s.as_jet() {
            let next = dir.step(j);
            if next.order() > MAX_JET_ORDER {
                return Err(Error::JetOrderOverflow(next));
            }
            out += &(&p.partial_derivative(&s) * &Poly::var(Symbol::jet(next)));
        }
    }
    Ok(out)
}

pub fn total_derivative(e: &EpsSeries, dir: Direction) -> Result<EpsSeries> {
    Ok(EpsSeries::from_coeffs(
        e.coeffs()
            .iter()
            .map(|p| total_derivative_poly(p, dir))
            .collect::<Result<_>>()?,
    ))
}

/// Highest jet order occurring in `e` (0 if only `w` or no jets).
pub fn jet_order(e: &EpsSeries) -> u32 {
    e.symbols()
        .iter()
        .filter_map(Symbol::as_jet)
        .map(JetIndex::order)
        .max()
        .unwrap_or(0)
}

/// Point vector field `ξ ∂/∂x + τ ∂/∂t + η ∂/∂w` with coefficients in
/// `(x, t, w)` and free parameters, each an ε-series of a common order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub xi: EpsSeries,
    pub tau: EpsSeries,
    pub eta: EpsSeries,
}

impl VectorField {
    pub fn new(xi: EpsSeries, tau: EpsSeries, eta: EpsSeries) -> Result<Self> {
        for c in [&tau, &eta] {
            if c.order() != xi.order() {
                return Err(Error::OrderMismatch {
                    left: xi.order(),
                    right: c.order(),
                });
            }
        }
        for c in [&xi, &tau, &eta] {
            if let Some(j) = c.symbols().iter().find(|s| matches!(s, Symbol::Jet(_))) {
                return Err(Error::NotPointField(j.to_string()));
            }
        }
        Ok(Self { xi, tau, eta })
    }

    /// Builds from per-level strings, e.g. `xi = &["6*t", "0"]` for `ξ = 6t`.
    pub fn from_levels(xi: &[&str], tau: &[&str], eta: &[&str]) -> Result<Self> {
        let series = |cs: &[&str]| -> Result<EpsSeries> {
            Ok(EpsSeries::from_coeffs(
                cs.iter()
                    .map(|s| s.parse::<Poly>())
                    .collect::<Result<_, _>>()?,
            ))
        };
        Self::new(series(xi)?, series(tau)?, series(eta)?)
    }

    pub fn zero(order: usize) -> Self {
        Self {
            xi: EpsSeries::zero(order),
            tau: EpsSeries::zero(order),
            eta: EpsSeries::zero(order),
        }
    }

    pub fn order(&self) -> usize {
        self.xi.order()
    }

    pub fn components(&self) -> [&EpsSeries; 3] {
        [&self.xi, &self.tau, &self.eta]
    }

    pub fn map(&self, mut f: impl FnMut(&EpsSeries) -> EpsSeries) -> Self {
        Self {
            xi: f(&self.xi),
            tau: f(&self.tau),
            eta: f(&self.eta),
        }
    }

    pub fn with_order(&self, order: usize) -> Self {
        self.map(|c| c.with_order(order))
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_o_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|s| s.scale(c))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        self.map(|s| s.mul_poly(p))
    }

    /// `ε·self`, truncated at the field's order.
    pub fn times_eps(&self) -> Self {
        self.map(|s| {
            let mut coeffs = vec![Poly::zero()];
            coeffs.extend(s.coeffs()[..s.order()].iter().cloned());
            EpsSeries::from_coeffs(coeffs)
        })
    }

    /// The ε-free field formed by the `k`-th coefficient of each component.
    pub fn level(&self, k: usize) -> Self {
        self.map(|s| EpsSeries::from_poly(s.coeff(k).clone(), 0))
    }

    /// Directional derivative `ξ f_x + τ f_t + η f_w`, truncated.
    pub fn apply(&self, f: &EpsSeries) -> Result<EpsSeries> {
        let fx = f.partial_derivative(&Symbol::X);
        let ft = f.partial_derivative(&Symbol::T);
        let fw = f.partial_derivative(&Symbol::W);
        self.xi
            .checked_mul(&fx)?
            .checked_add(&self.tau.checked_mul(&ft)?)?
            .checked_add(&self.eta.checked_mul(&fw)?)
    }

    /// `X(f)` for a quotient `f`.
    pub fn apply_rational(&self, f: &RationalExpr) -> Result<RationalExpr> {
        let mut acc = RationalExpr::from_series(EpsSeries::zero(self.order()));
        for (c, s) in self
            .components()
            .into_iter()
            .zip([Symbol::X, Symbol::T, Symbol::W])
        {
            let d = f.partial_derivative(&s).with_order(self.order());
            acc = acc.add(&d.mul_series(c)?)?;
        }
        Ok(acc)
    }

    /// Characteristic `Q = η - ξ w_x - τ w_t`.
    pub fn characteristic(&self) -> EpsSeries {
        let p = self.order();
        let wx = EpsSeries::from_poly(Poly::var(Symbol::w(1, 0)), p);
        let wt = EpsSeries::from_poly(Poly::var(Symbol::w(0, 1)), p);
        &(&self.eta - &(&self.xi * &wx)) - &(&self.tau * &wt)
    }

    /// Replaces a parameter by a polynomial in every component.
    pub fn substitute(&self, s: &Symbol, value: &Poly) -> Self {
        self.map(|c| c.map(|p| p.substitute(s, value)))
    }
}

impl std::ops::Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            xi: &self.xi + &rhs.xi,
            tau: &self.tau + &rhs.tau,
            eta: &self.eta + &rhs.eta,
        }
    }
}

impl std::ops::Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            xi: &self.xi - &rhs.xi,
            tau: &self.tau - &rhs.tau,
            eta: &self.eta - &rhs.eta,
        }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, d) in self.components().into_iter().zip(["d/dx", "d/dt", "d/dw"]) {
            if c.is_o_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*{d}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A vector field together with the coefficients of `∂/∂w_J` on jet space.
#[derive(Clone, Debug)]
pub struct ProlongedField {
    pub base: VectorField,
    pub jet_coeffs: BTreeMap<JetIndex, EpsSeries>,
}

/// Computes `D_J Q` for each requested `J`, sharing intermediate derivatives.
struct CharacteristicDerivatives {
    cache: BTreeMap<JetIndex, EpsSeries>,
}

impl CharacteristicDerivatives {
    fn new(q: EpsSeries) -> Self {
        let mut cache = BTreeMap::new();
        cache.insert(JetIndex::W, q);
        Self { cache }
    }

    fn get(&mut self, j: JetIndex) -> Result<EpsSeries> {
        if let Some(v) = self.cache.get(&j) {
            return Ok(v.clone());
        }
        let v = if j.nt > 0 {
            total_derivative(&self.get(JetIndex::new(j.nx, j.nt - 1))?, Direction::T)?
        } else {
            total_derivative(&self.get(JetIndex::new(j.nx - 1, 0))?, Direction::X)?
        };
        self.cache.insert(j, v.clone());
        Ok(v)
    }
}

/// Prolongation of `v` to every jet of order `≤ order`.
///
/// Uses the characteristic form `η^J = D_J Q + ξ w_{J,x} + τ w_{J,t}`.
pub fn prolong(v: &VectorField, order: u32) -> Result<ProlongedField> {
    if order + 1 > MAX_JET_ORDER {
        return Err(Error::JetOrderOverflow(JetIndex::new(order + 1, 0)));
    }
    let jets = (0..=order).flat_map(|n| (0..=n).map(move |nt| JetIndex::new(n - nt, nt)));
    prolong_jets(v, jets)
}

/// Prolongation restricted to the listed jets (plus `w` itself).
pub fn prolong_jets(
    v: &VectorField,
    jets: impl IntoIterator<Item = JetIndex>,
) -> Result<ProlongedField> {
    let p = v.order();
    let mut dq = CharacteristicDerivatives::new(v.characteristic());
    let mut jet_coeffs = BTreeMap::new();
    jet_coeffs.insert(JetIndex::W, v.eta.clone());
    for j in jets {
        if j == JetIndex::W || jet_coeffs.contains_key(&j) {
            continue;
        }
        if j.order() + 1 > MAX_JET_ORDER {
            return Err(Error::JetOrderOverflow(j));
        }
        let wjx = EpsSeries::from_poly(Poly::var(Symbol::jet(j.dx())), p);
        let wjt = EpsSeries::from_poly(Poly::var(Symbol::jet(j.dt())), p);
        let coeff = &(&dq.get(j)? + &(&v.xi * &wjx)) + &(&v.tau * &wjt);
        jet_coeffs.insert(j, coeff);
    }
    Ok(ProlongedField {
        base: v.clone(),
        jet_coeffs,
    })
}

impl ProlongedField {
    pub fn coefficient(&self, j: JetIndex) -> Option<&EpsSeries> {
        self.jet_coeffs.get(&j)
    }
}

/// `ξ ∂F/∂x + τ ∂F/∂t + Σ_J η^J ∂F/∂w_J`.
pub fn apply_prolonged(pv: &ProlongedField, f: &EpsSeries) -> Result<EpsSeries> {
    let base = &pv.base;
    let mut acc = base
        .xi
        .checked_mul(&f.partial_derivative(&Symbol::X))?
        .checked_add(&base.tau.checked_mul(&f.partial_derivative(&Symbol::T))?)?;
    for s in f.symbols() {
        let Some(j) = s.as_jet() else { continue };
        let coeff = pv
            .jet_coeffs
            .get(&j)
            .ok_or(Error::InsufficientProlongation(j))?;
        acc = acc.checked_add(&coeff.checked_mul(&f.partial_derivative(&s))?)?;
    }
    Ok(acc)
}

/// Prolongs `v` exactly as far as `f` needs and applies it.
pub fn act(v: &VectorField, f: &EpsSeries) -> Result<EpsSeries> {
    let jets: Vec<JetIndex> = f.symbols().iter().filter_map(Symbol::as_jet).collect();
    apply_prolonged(&prolong_jets(v, jets)?, f)
}

/// The solution manifold of an evolution equation `w_t = replacement`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionManifold {
    pub solved_jet: JetIndex,
    pub replacement: EpsSeries,
}

fn has_time_jet(e: &EpsSeries) -> Option<JetIndex> {
    e.symbols()
        .iter()
        .filter_map(Symbol::as_jet)
        .find(|j| j.nt > 0)
}

impl SolutionManifold {
    pub fn new(replacement: EpsSeries) -> Result<Self> {
        if let Some(j) = has_time_jet(&replacement) {
            return Err(Error::SubstitutionCycle(j));
        }
        Ok(Self {
            solved_jet: JetIndex::new(0, 1),
            replacement,
        })
    }

    /// Solves `F = c·w_t + rest = 0` for `w_t`, where `c` is a nonzero
    /// rational and `rest` is free of time derivatives.
    pub fn solve_for_wt(f: &EpsSeries) -> Result<Self> {
        let wt = Symbol::w(0, 1);
        let coeff = f.coeff(0).partial_derivative(&wt);
        let c = coeff
            .as_constant()
            .filter(|c| !num_traits::Zero::is_zero(c))
            .ok_or_else(|| Error::NotEvolutionary(format!("coefficient of w_t is {coeff}")))?;
        let lead = EpsSeries::from_poly(
            &Poly::var(wt.clone()) * &Poly::constant(c.clone()),
            f.order(),
        );
        let rest = f - &lead;
        if let Some(j) = has_time_jet(&rest) {
            return Err(Error::NotEvolutionary(format!(
                "{} appears outside c*w_t",
                Symbol::jet(j)
            )));
        }
        Self::new(rest.scale(&(-c.recip())))
    }

    /// Eliminates every time derivative `w_{x^a t^b}` (b ≥ 1).
    pub fn restrict(&self, e: &EpsSeries) -> Result<EpsSeries> {
        Restrictor::new(self, e.order()).restrict(e)
    }
}

struct Restrictor {
    replacement: EpsSeries,
    cache: BTreeMap<JetIndex, EpsSeries>,
}

impl Restrictor {
    fn new(m: &SolutionManifold, order: usize) -> Self {
        Self {
            replacement: m.replacement.with_order(order),
            cache: BTreeMap::new(),
        }
    }

    /// Value of `w_{a,b}` on the manifold, free of time derivatives.
    fn jet(&mut self, j: JetIndex) -> Result<EpsSeries> {
        if let Some(v) = self.cache.get(&j) {
            return Ok(v.clone());
        }
        let v = if j.nt == 0 {
            EpsSeries::from_poly(Poly::var(Symbol::jet(j)), self.replacement.order())
        } else if j.nx > 0 {
            total_derivative(&self.jet(JetIndex::new(j.nx - 1, j.nt))?, Direction::X)?
        } else if j.nt == 1 {
            self.replacement.clone()
        } else {
            let prev = self.jet(JetIndex::new(0, j.nt - 1))?;
            let d = total_derivative(&prev, Direction::T)?;
            self.substitute_first_order(&d)?
        };
        self.cache.insert(j, v.clone());
        Ok(v)
    }

    fn substitute_first_order(&mut self, e: &EpsSeries) -> Result<EpsSeries> {
        let mut out = e.clone();
        for s in e.symbols() {
            if let Some(j) = s.as_jet().filter(|j| j.nt > 0) {
                debug_assert_eq!(j.nt, 1);
                let v = self.jet(j)?;
                out = out.substitute(&s, &v)?;
            }
        }
        Ok(out)
    }

    fn restrict(&mut self, e: &EpsSeries) -> Result<EpsSeries> {
        let mut out = e.clone();
        for s in e.symbols() {
            if let Some(j) = s.as_jet().filter(|j| j.nt > 0) {
                let v = self.jet(j)?;
                out = out.substitute(&s, &v)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn e0(s: &str) -> EpsSeries {
        EpsSeries::from_poly(p(s), 0)
    }

    fn kdv() -> EpsSeries {
        e0("w_t - 6*w*w_x + w_xxx")
    }

    fn v3() -> VectorField {
        VectorField::from_levels(&["6*t"], &["0"], &["-1"]).unwrap()
    }

    fn scaling() -> VectorField {
        VectorField::from_levels(&["x"], &["3*t"], &["-2*w"]).unwrap()
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(total_derivative(&e0("w"), Direction::X).unwrap(), e0("w_x"));
        assert_eq!(
            total_derivative(&e0("w^2"), Direction::X).unwrap(),
            e0("2*w*w_x")
        );
        assert_eq!(
            total_derivative(&e0("-1 - 6*t*w_x"), Direction::T).unwrap(),
            e0("-6*w_x - 6*t*w_xt")
        );
    }

    #[test]
    fn total_derivative_overflow_names_jet() {
        let top = Symbol::w(MAX_JET_ORDER, 0);
        let e = EpsSeries::from_poly(Poly::var(top), 0);
        assert_eq!(
            total_derivative(&e, Direction::T),
            Err(Error::JetOrderOverflow(JetIndex::new(MAX_JET_ORDER, 1)))
        );
    }

    #[test]
    fn prolong_constant_field_is_trivial() {
        let v1 = VectorField::from_levels(&["1"], &["0"], &["0"]).unwrap();
        let pv = prolong(&v1, 3).unwrap();
        assert_eq!(pv.jet_coeffs.len(), 10);
        assert!(pv.jet_coeffs.values().all(EpsSeries::is_o_zero));
    }

    #[test]
    fn prolong_galilean_boost() {
        let pv = prolong(&v3(), 1).unwrap();
        assert_eq!(pv.coefficient(JetIndex::new(0, 1)).unwrap(), &e0("-6*w_x"));
        assert!(pv.coefficient(JetIndex::new(1, 0)).unwrap().is_o_zero());
        assert_eq!(pv.coefficient(JetIndex::W).unwrap(), &v3().eta);
    }

    #[test]
    fn prolong_scaling_weights() {
        // w_t has scaling weight -5 under x∂x + 3t∂t - 2w∂w.
        let pv = prolong(&scaling(), 1).unwrap();
        assert_eq!(pv.coefficient(JetIndex::new(0, 1)).unwrap(), &e0("-5*w_t"));
        assert_eq!(pv.coefficient(JetIndex::new(1, 0)).unwrap(), &e0("-3*w_x"));
    }

    #[test]
    fn boost_annihilates_kdv() {
        assert!(act(&v3(), &kdv()).unwrap().is_o_zero());
    }

    #[test]
    fn scaling_multiplies_kdv() {
        assert_eq!(
            act(&scaling(), &kdv()).unwrap(),
            kdv().scale(&crate::algebra::q(-5, 1))
        );
    }

    #[test]
    fn zero_field_acts_trivially() {
        assert!(act(&VectorField::zero(0), &kdv()).unwrap().is_o_zero());
    }

    #[test]
    fn insufficient_prolongation_rejected() {
        let pv = prolong(&v3(), 1).unwrap();
        assert_eq!(
            apply_prolonged(&pv, &kdv()),
            Err(Error::InsufficientProlongation(JetIndex::new(3, 0)))
        );
    }

    #[test]
    fn restriction_examples() {
        let m = SolutionManifold::solve_for_wt(&kdv()).unwrap();
        assert_eq!(m.restrict(&e0("w_t")).unwrap(), e0("6*w*w_x - w_xxx"));
        assert_eq!(m.restrict(&e0("w_x")).unwrap(), e0("w_x"));

        let gardner = EpsSeries::from_coeffs(vec![p("w_t - 6*w*w_x + w_xxx"), p("-6*w^2*w_x")]);
        let g = SolutionManifold::solve_for_wt(&gardner).unwrap();
        let wxt = EpsSeries::from_poly(p("w_xt"), 1);
        let r = EpsSeries::from_coeffs(vec![p("6*w*w_x - w_xxx"), p("6*w^2*w_x")]);
        assert_eq!(
            g.restrict(&wxt).unwrap(),
            total_derivative(&r, Direction::X).unwrap()
        );
    }

    #[test]
    fn restricted_second_time_derivative_is_consistent() {
        // w_tt restricted equals D_t(R) with w_t-family substituted, and
        // agrees with restricting D_t D_t w computed unrestricted.
        let m = SolutionManifold::solve_for_wt(&kdv()).unwrap();
        let wtt = m.restrict(&e0("w_tt")).unwrap();
        let via = m
            .restrict(&total_derivative(&m.replacement, Direction::T).unwrap())
            .unwrap();
        assert_eq!(wtt, via);
        assert!(!wtt
            .symbols()
            .iter()
            .any(|s| s.as_jet().is_some_and(|j| j.nt > 0)));
    }

    #[test]
    fn cyclic_manifold_rejected() {
        assert!(matches!(
            SolutionManifold::new(e0("w_xt")),
            Err(Error::SubstitutionCycle(_))
        ));
        assert!(SolutionManifold::solve_for_wt(&e0("w_x*w_t")).is_err());
    }

    #[test]
    fn jet_coefficients_rejected_in_point_fields() {
        assert!(matches!(
            VectorField::from_levels(&["w_x"], &["0"], &["0"]),
            Err(Error::NotPointField(_))
        ));
    }
}
