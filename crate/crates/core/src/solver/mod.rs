//! Determining equations for exact and first-order approximate point
//! symmetries under a polynomial ansatz, and their exact solution.
//!
//! The approximate problem is solved in two stages. First the exact
//! symmetries `X₀` of the unperturbed equation are found. The ε¹ defect of
//! the generic `X₀` on the perturbed equation, `H`, then becomes the source
//! term of a linear equation for the deformation `X₁`. The constants of `X₀`
//! are carried as unknowns in that second system, so any exact symmetry that
//! admits no deformation shows up as a linear constraint on them.

pub mod linear;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::{EpsSeries, Monomial, Poly, Rational, Symbol};
use crate::equations::Equation;
use crate::error::{Error, Result};
use crate::jet::{act, VectorField};

pub use linear::{Echelon, LinearSolution};

const COMPONENTS: [&str; 3] = ["xi", "tau", "eta"];

/// Monomials in `(x, t, w)` of total degree `≤ degree`, ascending.
pub fn point_monomials(degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=degree {
        for a in 0..=d {
            for b in 0..=d - a {
                let c = d - a - b;
                out.push(Monomial::from_powers([
                    (Symbol::X, a),
                    (Symbol::T, b),
                    (Symbol::W, c),
                ]));
            }
        }
    }
    out.sort();
    out
}

fn monomial_tag(m: &Monomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.powers()
        .iter()
        .map(|(s, e)| {
            if *e == 1 {
                s.to_string()
            } else {
                format!("{s}{e}")
            }
        })
        .collect()
}

/// Polynomial ansatz for the infinitesimals: one unknown per monomial per
/// component per ε-level.
#[derive(Clone, Debug)]
pub struct Ansatz {
    pub degree: u32,
    /// Unknowns ordered by ε-level, then monomial degree, then component
    /// (ξ, τ, η), then monomial. Earlier means simpler.
    pub unknowns: Vec<Symbol>,
    pub field: VectorField,
}

impl Ansatz {
    /// Full ansatz `X₀ + εX₁ + … + εᵖXₚ`.
    pub fn new(degree: u32, order: usize) -> Self {
        Self::build(degree, order, (0..=order).map(|k| (k, k)).collect())
    }

    /// A single ε-free field whose unknowns are tagged with `level`
    /// (e.g. the deformation `X₁` of an exact symmetry).
    pub fn single_level(degree: u32, level: usize) -> Self {
        Self::build(degree, 0, vec![(level, 0)])
    }

    fn build(degree: u32, order: usize, levels: Vec<(usize, usize)>) -> Self {
        let monomials = point_monomials(degree);
        let mut unknowns = Vec::new();
        let mut comps = [
            vec![Poly::zero(); order + 1],
            vec![Poly::zero(); order + 1],
            vec![Poly::zero(); order + 1],
        ];
        for (tag, slot) in levels {
            for d in 0..=degree {
                for (ci, name) in COMPONENTS.iter().enumerate() {
                    for m in monomials.iter().filter(|m| m.degree() == d) {
                        let u = Symbol::param(&format!("{name}{tag}_{}", monomial_tag(m)));
                        comps[ci][slot] += &Poly::var(u.clone())
                            .mul_monomial(m, &Rational::from_integer(1.into()));
                        unknowns.push(u);
                    }
                }
            }
        }
        let [xi, tau, eta] = comps.map(EpsSeries::from_coeffs);
        Self {
            degree,
            unknowns,
            field: VectorField { xi, tau, eta },
        }
    }
}

/// Linear equations in `unknowns`, plus the field they parametrize.
#[derive(Clone, Debug)]
pub struct DeterminingSystem {
    pub equations: Vec<Poly>,
    pub unknowns: Vec<Symbol>,
    /// Field whose coefficients are linear in the unknowns.
    pub template: VectorField,
}

/// Splits `expr ≡ 0` into one equation per ε-level and per monomial in all
/// symbols other than the unknowns.
fn split(expr: &EpsSeries, unknowns: &BTreeSet<Symbol>) -> Vec<Poly> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for level in expr.coeffs() {
        for (_, c) in level.collect_coefficients(|s| !unknowns.contains(s)) {
            let (key, _) = c.primitive_part();
            if seen.insert(key.to_string()) {
                out.push(c);
            }
        }
    }
    out
}

impl DeterminingSystem {
    fn from_expression(expr: &EpsSeries, unknowns: Vec<Symbol>, template: VectorField) -> Self {
        let set: BTreeSet<Symbol> = unknowns.iter().cloned().collect();
        Self {
            equations: split(expr, &set),
            unknowns,
            template,
        }
    }

    /// Largest total degree of any equation in the unknowns.
    pub fn max_unknown_degree(&self) -> u32 {
        let set: BTreeSet<&Symbol> = self.unknowns.iter().collect();
        self.equations
            .iter()
            .map(|e| e.degree_where(|s| set.contains(s)))
            .max()
            .unwrap_or(0)
    }

    /// Text dump of the coefficient matrix: a header naming the unknowns,
    /// then one row of rationals per equation, with the constant term last.
    /// `None` if some equation is not affine in the unknowns.
    pub fn matrix_dump(&self) -> Option<String> {
        let mut out = String::from("#");
        for u in &self.unknowns {
            out.push(' ');
            out.push_str(&u.to_string());
        }
        out.push_str(" | 1\n");
        for e in &self.equations {
            let (row, constant) = e.affine_coefficients(&self.unknowns)?;
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push_str(&format!(" | {constant}\n"));
        }
        Some(out)
    }
}

/// `X₀^{(k)} F₀ |_{F₀ = 0} = 0` for the ansatz field.
pub fn assemble_exact(f0: &Equation, ansatz: &Ansatz) -> Result<DeterminingSystem> {
    let field = ansatz.field.with_order(f0.order());
    let expr = f0.manifold.restrict(&act(&field, &f0.series)?)?;
    Ok(DeterminingSystem::from_expression(
        &expr,
        ansatz.unknowns.clone(),
        ansatz.field.clone(),
    ))
}

/// `[X^{(k)} F]_{F ≈ 0} = o(εᵖ)` for a full ε-ansatz `X = X₀ + εX₁ + …`,
/// assembled in one step.
pub fn assemble_approximate(f: &Equation, ansatz: &Ansatz) -> Result<DeterminingSystem> {
    let field = ansatz.field.with_order(f.order());
    let expr = f.manifold.restrict(&act(&field, &f.series)?)?;
    Ok(DeterminingSystem::from_expression(
        &expr,
        ansatz.unknowns.clone(),
        field,
    ))
}

/// Result of applying a field to an equation on its solution manifold.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub residual: EpsSeries,
}

/// Restricted action `[X^{(k)} F]_{F≈0}`.
pub fn restricted_action(v: &VectorField, f: &Equation) -> Result<EpsSeries> {
    let v = v.with_order(f.order());
    f.manifold.restrict(&act(&v, &f.series)?)
}

/// Checks `[X^{(k)} F]_{F ≈ 0} = o(εᵖ)` and returns the residual.
pub fn verify_approximate_symmetry(v: &VectorField, f: &Equation) -> Result<Verdict> {
    let residual = restricted_action(v, f)?;
    Ok(Verdict {
        holds: residual.is_o_zero(),
        residual,
    })
}

/// The auxiliary function `H`: the ε¹ coefficient of `X₀^{(k)} F` restricted
/// to the perturbed manifold, for an exact symmetry `X₀` of `F₀`.
pub fn auxiliary_h(x0: &VectorField, f: &Equation) -> Result<Poly> {
    let base = x0.level(0);
    let f0 = f.unperturbed();
    let exact = restricted_action(&base, &f0)?;
    if !exact.is_o_zero() {
        return Err(Error::NotExactSymmetry {
            residual: exact.to_string(),
        });
    }
    let full = restricted_action(&base, &f.with_order_at_least(1))?;
    debug_assert!(full.coeff(0).is_zero());
    Ok(full.coeff(1).clone())
}

impl Equation {
    fn with_order_at_least(&self, order: usize) -> Equation {
        if self.order() >= order {
            return self.clone();
        }
        Equation::new(self.name.clone(), self.series.with_order(order)).expect("still evolutionary")
    }
}

/// `X₁^{(k)} F₀ |_{F₀=0} + H = 0` in the `X₁` ansatz unknowns together with
/// the constants of the generic exact symmetry.
///
/// `x0` is the generic exact symmetry whose constants `params` appear in
/// `h`; the template of the returned system is `x0 + εX₁`.
pub fn assemble_deformation(
    f0: &Equation,
    h: &Poly,
    ansatz: &Ansatz,
    x0: &VectorField,
    params: &[Symbol],
) -> Result<DeterminingSystem> {
    let mut expr = act(&ansatz.field.with_order(0), &f0.series)?;
    expr = f0.manifold.restrict(&expr)?;
    let expr = &expr + &EpsSeries::from_poly(h.clone(), 0);
    let mut unknowns = params.to_vec();
    unknowns.extend(ansatz.unknowns.iter().cloned());
    let template = &x0.level(0).with_order(1) + &ansatz.field.with_order(1).times_eps();
    Ok(DeterminingSystem::from_expression(
        &expr, unknowns, template,
    ))
}

/// A solved determining system.
#[derive(Clone, Debug)]
pub struct SolvedSystem {
    pub system: DeterminingSystem,
    pub solution: LinearSolution,
}

/// Basis of symmetry generators with presentation labels.
#[derive(Clone, Debug)]
pub struct SymmetryBasis {
    pub generators: Vec<VectorField>,
    pub labels: Vec<String>,
}

impl SymmetryBasis {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn with_labels<S: ToString>(mut self, labels: &[S]) -> Self {
        assert_eq!(labels.len(), self.generators.len());
        self.labels = labels.iter().map(ToString::to_string).collect();
        self
    }
}

impl fmt::Display for SymmetryBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, g) in self.labels.iter().zip(&self.generators) {
            writeln!(f, "{l} = {g}")?;
        }
        Ok(())
    }
}

impl SolvedSystem {
    pub fn dimension(&self) -> usize {
        self.solution.nullspace.len()
    }

    fn assignment(&self, values: &[Rational]) -> BTreeMap<Symbol, Poly> {
        self.system
            .unknowns
            .iter()
            .zip(values)
            .map(|(u, v)| (u.clone(), Poly::constant(v.clone())))
            .collect()
    }

    fn instantiate(&self, values: &BTreeMap<Symbol, Poly>) -> VectorField {
        self.system
            .template
            .map(|c| c.map(|p| p.substitute_all(values)))
    }

    /// One generator per free unknown, rescaled to primitive integer
    /// coefficients with a positive leading coefficient.
    pub fn basis(&self) -> SymmetryBasis {
        let generators: Vec<VectorField> = self
            .solution
            .nullspace
            .iter()
            .map(|v| normalize_field(&self.instantiate(&self.assignment(v))))
            .collect();
        let labels = (1..=generators.len()).map(|i| format!("X{i}")).collect();
        SymmetryBasis { generators, labels }
    }

    /// The general solution, with each free unknown replaced by a named
    /// constant. Free unknowns listed in `keep` keep their own name; the
    /// rest become `C{first_fresh}`, `C{first_fresh+1}`, …
    pub fn generic_field(&self, keep: &[Symbol], first_fresh: usize) -> (VectorField, Vec<Symbol>) {
        let mut next = first_fresh;
        let names: Vec<Symbol> = self
            .solution
            .free
            .iter()
            .map(|&c| {
                let u = &self.system.unknowns[c];
                if keep.contains(u) {
                    u.clone()
                } else {
                    let s = Symbol::param(&format!("C{next}"));
                    next += 1;
                    s
                }
            })
            .collect();
        let mut values: BTreeMap<Symbol, Poly> = BTreeMap::new();
        for (i, u) in self.system.unknowns.iter().enumerate() {
            let mut p = Poly::constant(self.solution.particular[i].clone());
            for (v, name) in self.solution.nullspace.iter().zip(&names) {
                if !v[i].is_zero() {
                    p += &Poly::var(name.clone()).scale(&v[i]);
                }
            }
            values.insert(u.clone(), p);
        }
        (self.instantiate(&values), names)
    }

    /// Linear forms in `params` that vanish on every solution.
    pub fn constraints_on(&self, params: &[Symbol]) -> Vec<Poly> {
        let cols: Vec<usize> = params
            .iter()
            .filter_map(|p| self.system.unknowns.iter().position(|u| u == p))
            .collect();
        // Forms c with Σ c_i·v[col_i] = 0 for all solution vectors v.
        let mut e = Echelon::new(cols.len());
        let mut vectors = self.solution.nullspace.clone();
        if self.solution.particular.iter().any(|c| !c.is_zero()) {
            vectors.push(self.solution.particular.clone());
        }
        for v in &vectors {
            let row: Vec<(usize, Rational)> = cols
                .iter()
                .enumerate()
                .map(|(k, &c)| (k, v[c].clone()))
                .collect();
            e.push(&row, Rational::zero()).expect("homogeneous");
        }
        e.solution()
            .nullspace
            .iter()
            .map(|c| {
                let form = cols.iter().zip(c).fold(Poly::zero(), |acc, (&col, k)| {
                    &acc + &Poly::var(self.system.unknowns[col].clone()).scale(k)
                });
                form.primitive_part().0
            })
            .collect()
    }
}

/// Exact Gaussian elimination; the basis is ordered by free unknown.
pub fn solve_nullspace(system: &DeterminingSystem) -> Result<SolvedSystem> {
    let mut e = Echelon::new(system.unknowns.len());
    for eq in &system.equations {
        let (coeffs, constant) = system_row(eq, &system.unknowns)?;
        let row: Vec<(usize, Rational)> = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if e.push(&row, -constant).is_err() {
            return Err(Error::Inconsistent {
                witness: format!("{eq} = 0"),
            });
        }
    }
    Ok(SolvedSystem {
        system: system.clone(),
        solution: e.solution(),
    })
}

fn system_row(eq: &Poly, unknowns: &[Symbol]) -> Result<(Vec<Rational>, Rational)> {
    eq.affine_coefficients(unknowns)
        .ok_or_else(|| Error::NonlinearEquation(eq.to_string()))
}

/// Rescales a rational-coefficient field to coprime integer coefficients
/// whose first nonzero entry (level 0 first, then ξ, τ, η, ascending
/// monomials) is positive.
pub fn normalize_field(v: &VectorField) -> VectorField {
    let mut coeffs = Vec::new();
    for k in 0..=v.order() {
        for c in v.components() {
            for (_, r) in c.coeff(k).terms() {
                coeffs.push(r.clone());
            }
        }
    }
    let Some(first) = coeffs.iter().find(|c| !c.is_zero()).cloned() else {
        return v.clone();
    };
    let scaled = linear::primitive(&coeffs);
    let factor = &scaled[coeffs.iter().position(|c| !c.is_zero()).unwrap()] / &first;
    let factor = if (&first * &factor).is_negative() {
        -factor
    } else {
        factor
    };
    v.scale(&factor)
}

/// Outcome of the two-stage approximate symmetry computation.
#[derive(Clone, Debug)]
pub struct ApproximateAnalysis {
    pub exact: SymmetryBasis,
    /// Generic exact symmetry in constants `C1..Cn`.
    pub generic_x0: VectorField,
    pub exact_params: Vec<Symbol>,
    pub h: Poly,
    pub deformation: SolvedSystem,
    /// Linear conditions on the exact constants required for a deformation.
    pub constraints: Vec<Poly>,
    /// Exact generators that admit no deformation.
    pub unstable: Vec<String>,
    pub approximate: SymmetryBasis,
    /// General approximate symmetry, in the original and fresh constants.
    pub generic: VectorField,
}

/// Exact point symmetries of `f0` under a degree-`degree` ansatz.
pub fn exact_symmetries(f0: &Equation, degree: u32) -> Result<SolvedSystem> {
    let ansatz = Ansatz::single_level(degree, 0);
    solve_nullspace(&assemble_exact(f0, &ansatz)?)
}

/// Exact symmetries of `F₀`, the auxiliary function, the deformation system
/// and the resulting approximate basis for `f = F₀ + εF₁`.
pub fn approximate_symmetries(f: &Equation, degree: u32) -> Result<ApproximateAnalysis> {
    let f0 = f.unperturbed();
    let exact_solved = exact_symmetries(&f0, degree)?;
    let exact = exact_solved.basis();
    let (x0, params) = exact_solved.generic_field(&[], 1);
    let h = auxiliary_h(&x0, f)?;
    let ansatz = Ansatz::single_level(degree, 1);
    let system = assemble_deformation(&f0, &h, &ansatz, &x0, &params)?;
    let deformation = solve_nullspace(&system)?;
    let constraints = deformation.constraints_on(&params);
    let unstable = params
        .iter()
        .zip(&exact.labels)
        .filter(|(p, _)| constraints.iter().any(|c| c.len() == 1 && c.contains(p)))
        .map(|(_, l)| l.clone())
        .collect();
    let approximate = deformation.basis();
    let (generic, _) = deformation.generic_field(&params, params.len() + 1);
    Ok(ApproximateAnalysis {
        exact,
        generic_x0: x0,
        exact_params: params,
        h,
        deformation,
        constraints,
        unstable,
        approximate,
        generic,
    })
}

/// True if `fields` and `other` span the same space over the rationals.
pub fn same_span(fields: &[VectorField], other: &[VectorField]) -> Result<bool> {
    let rank = |vs: &[VectorField]| -> Result<usize> {
        let coords = field_coordinates(vs)?;
        let mut e = Echelon::new(coords.columns);
        for row in &coords.rows {
            e.push(row, Rational::zero()).expect("homogeneous");
        }
        Ok(e.rank())
    };
    let mut all = fields.to_vec();
    all.extend(other.iter().cloned());
    let (a, b, ab) = (rank(fields)?, rank(other)?, rank(&all)?);
    Ok(a == b && b == ab)
}

/// Coordinates of rational-coefficient fields in a shared monomial basis.
pub struct FieldCoordinates {
    pub columns: usize,
    pub keys: Vec<(usize, usize, Monomial)>,
    pub rows: Vec<Vec<(usize, Rational)>>,
}

pub fn field_coordinates(fields: &[VectorField]) -> Result<FieldCoordinates> {
    let mut keys: BTreeMap<(usize, usize, Monomial), usize> = BTreeMap::new();
    let mut raw = Vec::new();
    for v in fields {
        let mut row = Vec::new();
        for k in 0..=v.order() {
            for (ci, c) in v.components().into_iter().enumerate() {
                let p = c.coeff(k);
                if let Some(s) = p.symbols().iter().find(|s| s.is_parameter()) {
                    return Err(Error::SymbolicField(s.to_string()));
                }
                for (m, r) in p.terms() {
                    row.push(((k, ci, m.clone()), r.clone()));
                }
            }
        }
        for (key, _) in &row {
            let n = keys.len();
            keys.entry(key.clone()).or_insert(n);
        }
        raw.push(row);
    }
    let rows = raw
        .into_iter()
        .map(|row| row.into_iter().map(|(k, r)| (keys[&k], r)).collect())
        .collect();
    let mut ordered: Vec<_> = keys.into_iter().collect();
    ordered.sort_by_key(|(_, i)| *i);
    Ok(FieldCoordinates {
        columns: ordered.len(),
        keys: ordered.into_iter().map(|(k, _)| k).collect(),
        rows,
    })
}

#[cfg(test)]
mod tests;
