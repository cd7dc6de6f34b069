//! Finite-dimensional Lie algebras of point vector fields, taken modulo
//! `εᵖ⁺¹`: structure constants, derived series, adjoint action and the
//! normalization scripts used to classify one-dimensional subalgebras.

pub mod golden;
pub mod optimal;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Monomial, Poly, Rational, Symbol};
use crate::error::{Error, Result};
use crate::jet::VectorField;
use crate::solver::{field_coordinates, Echelon};

/// Commutator `[X, Y]` of first-order operators, truncated at the common
/// ε-order.
pub fn bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    if x.order() != y.order() {
        return Err(Error::OrderMismatch {
            left: x.order(),
            right: y.order(),
        });
    }
    let comp = |a: &crate::EpsSeries, b: &crate::EpsSeries| -> Result<crate::EpsSeries> {
        x.apply(b)?.checked_add(&-y.apply(a)?)
    };
    Ok(VectorField {
        xi: comp(&x.xi, &y.xi)?,
        tau: comp(&x.tau, &y.tau)?,
        eta: comp(&x.eta, &y.eta)?,
    })
}

/// Coordinates of an element with respect to a basis.
pub type Coords = Vec<Rational>;

/// A Lie algebra spanned by rational-coefficient vector fields.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    basis: Vec<VectorField>,
    labels: Vec<String>,
    /// `structure[i][j]` holds the coordinates of `[vᵢ, vⱼ]`.
    structure: Vec<Vec<Coords>>,
    keys: Vec<(usize, usize, Monomial)>,
    columns: Vec<Vec<(usize, Rational)>>,
}

impl LieAlgebra {
    /// Builds the algebra and its structure constants. Fails if the fields
    /// are dependent, carry free parameters, or do not close.
    pub fn new<S: ToString>(basis: Vec<VectorField>, labels: &[S]) -> Result<Self> {
        if labels.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: labels.len(),
            });
        }
        let coords = field_coordinates(&basis)?;
        let mut e = Echelon::new(coords.columns);
        for row in &coords.rows {
            if !e.push(row, Rational::zero()).expect("homogeneous") {
                return Err(Error::DependentBasis);
            }
        }
        // columns[key] lists (basis index, coefficient)
        let mut columns = vec![Vec::new(); coords.columns];
        for (i, row) in coords.rows.iter().enumerate() {
            for (k, c) in row {
                columns[*k].push((i, c.clone()));
            }
        }
        let mut g = Self {
            basis,
            labels: labels.iter().map(ToString::to_string).collect(),
            structure: Vec::new(),
            keys: coords.keys,
            columns,
        };
        let n = g.dim();
        let mut structure = vec![vec![vec![Rational::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                if j < i {
                    structure[i][j] = structure[j][i].iter().map(|c| -c).collect();
                    continue;
                }
                let b = bracket(&g.basis[i], &g.basis[j])?;
                structure[i][j] = g.coordinates(&b).map_err(|e| match e {
                    Error::NotClosed { residual, .. } => Error::NotClosed {
                        left: g.labels[i].clone(),
                        right: g.labels[j].clone(),
                        residual,
                    },
                    other => other,
                })?;
            }
        }
        g.structure = structure;
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[VectorField] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constants(&self) -> &[Vec<Coords>] {
        &self.structure
    }

    /// Coordinates of `v` in the basis, or `NotClosed` if `v` is outside
    /// the span.
    pub fn coordinates(&self, v: &VectorField) -> Result<Coords> {
        let not_closed = || Error::NotClosed {
            left: String::new(),
            right: String::new(),
            residual: v.to_string(),
        };
        let target = field_coordinates(std::slice::from_ref(v))?;
        let mut rhs: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, c) in &target.rows[0] {
            let key = &target.keys[*k];
            let col = self
                .keys
                .iter()
                .position(|kk| kk == key)
                .ok_or_else(not_closed)?;
            rhs.insert(col, c.clone());
        }
        let mut e = Echelon::new(self.dim());
        for (col, entries) in self.columns.iter().enumerate() {
            let b = rhs.get(&col).cloned().unwrap_or_else(Rational::zero);
            e.push(entries, b).map_err(|_| not_closed())?;
        }
        Ok(e.solution().particular)
    }

    /// The field `Σ cᵢ vᵢ`.
    pub fn field(&self, coords: &[Rational]) -> VectorField {
        let mut acc = VectorField::zero(self.basis[0].order());
        for (c, v) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = &acc + &v.scale(c);
            }
        }
        acc
    }

    /// `[u, v]` computed from the structure constants; coordinates may be
    /// polynomials in parameters.
    pub fn bracket_coords(&self, u: &[Poly], v: &[Poly]) -> Vec<Poly> {
        let n = self.dim();
        let mut out = vec![Poly::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &uv.scale(c);
                    }
                }
            }
        }
        out
    }

    /// `commutator_table()[i][j]` = coordinates of `[vᵢ, vⱼ]`.
    pub fn commutator_table(&self) -> Vec<Vec<Coords>> {
        self.structure.clone()
    }

    /// Basis of the span of `vectors`, in reduced form.
    pub fn span(&self, vectors: &[Coords]) -> Vec<Coords> {
        let mut e = Echelon::new(self.dim());
        let mut out = Vec::new();
        for v in vectors {
            if e.push(&sparse(v), Rational::zero()).expect("homogeneous") {
                out.push(v.clone());
            }
        }
        out
    }

    fn bracket_span(&self, a: &[Coords], b: &[Coords]) -> Vec<Coords> {
        let mut all = Vec::new();
        for u in a {
            for v in b {
                all.push(self.bracket_rational(u, v));
            }
        }
        self.span(&all)
    }

    fn bracket_rational(&self, u: &[Rational], v: &[Rational]) -> Coords {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            for j in 0..n {
                if u[i].is_zero() || v[j].is_zero() {
                    continue;
                }
                let f = &u[i] * &v[j];
                for k in 0..n {
                    out[k] += &f * &self.structure[i][j][k];
                }
            }
        }
        out
    }

    /// `g ⊇ [g,g] ⊇ …`, stopping at zero or when the series stabilizes.
    pub fn derived_series(&self) -> Vec<Vec<Coords>> {
        let mut current: Vec<Coords> = (0..self.dim()).map(|i| unit(self.dim(), i)).collect();
        let mut out = vec![current.clone()];
        while !current.is_empty() {
            let next = self.bracket_span(&current, &current);
            if next.len() == current.len() {
                break;
            }
            out.push(next.clone());
            current = next;
        }
        out
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Vec::is_empty)
    }

    /// True if `span(ideal)` is an ideal of `span(ambient)`, which must
    /// contain it.
    pub fn is_ideal(&self, ideal: &[Coords], ambient: &[Coords]) -> bool {
        let mut e = Echelon::new(self.dim());
        for v in ideal {
            e.push(&sparse(v), Rational::zero()).expect("homogeneous");
        }
        let mut amb = e.clone();
        for v in ambient {
            amb.push(&sparse(v), Rational::zero()).expect("homogeneous");
        }
        if amb.rank() != self.span(ambient).len() {
            return false;
        }
        ambient.iter().all(|a| {
            ideal
                .iter()
                .all(|i| e.contains(&sparse(&self.bracket_rational(a, i))))
        })
    }

    /// Span of the named basis elements.
    pub fn subspace(&self, indices: &[usize]) -> Result<Vec<Coords>> {
        indices
            .iter()
            .map(|&i| {
                if i < self.dim() {
                    Ok(unit(self.dim(), i))
                } else {
                    Err(Error::IndexOutOfRange(i))
                }
            })
            .collect()
    }

    /// `Ad(exp(μ vᵢ)) = exp(−μ ad vᵢ)` as a terminating series in `mu`.
    pub fn adjoint_map(&self, i: usize, mu: &Poly) -> Result<AdjointMap> {
        let n = self.dim();
        if i >= n {
            return Err(Error::IndexOutOfRange(i));
        }
        let bound = n + 1;
        let mut images = Vec::with_capacity(n);
        let mut terms = 1;
        for j in 0..n {
            // term_{k+1} = (−μ / (k+1)) · ad_{vᵢ}(term_k)
            let mut term: Vec<Poly> = unit(n, j).into_iter().map(Poly::constant).collect();
            let mut sum = term.clone();
            let mut k = 0;
            loop {
                let e_i: Vec<Poly> = unit(n, i).into_iter().map(Poly::constant).collect();
                let next = self.bracket_coords(&e_i, &term);
                if next.iter().all(Poly::is_zero) {
                    break;
                }
                k += 1;
                if k >= bound {
                    return Err(Error::NonNilpotent { index: i, bound });
                }
                let f = -Rational::one() / Rational::from_integer(k.into());
                term = next.iter().map(|c| (c * mu).scale(&f)).collect();
                for (s, t) in sum.iter_mut().zip(&term) {
                    *s += t;
                }
            }
            terms = terms.max(k + 1);
            images.push(sum);
        }
        Ok(AdjointMap {
            generator: i,
            parameter: mu.clone(),
            images,
            terms,
        })
    }

    /// Coordinates with each entry rendered `c*label`, e.g. `v3 - 6*mu*v1`.
    pub fn format(&self, coords: &[Poly]) -> String {
        format_combination(coords, &self.labels)
    }
}

fn unit(n: usize, i: usize) -> Coords {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

fn sparse(v: &[Rational]) -> Vec<(usize, Rational)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Renders `Σ cᵢ·labelᵢ` in basis order, e.g. `a1*v1 + (a2 - 1)*v3`.
pub fn format_combination(coords: &[Poly], labels: &[String]) -> String {
    format_with_lead(coords, labels, None)
}

/// Like [`format_combination`] but with entry `lead` first, as in
/// `v3 - 6*mu*v1`.
pub fn format_with_lead(coords: &[Poly], labels: &[String], lead: Option<usize>) -> String {
    let mut order: Vec<usize> = lead.into_iter().collect();
    order.extend((0..coords.len()).filter(|&i| Some(i) != lead));
    let mut parts: Vec<(bool, String)> = Vec::new();
    for i in order {
        let (c, l) = (&coords[i], &labels[i]);
        if c.is_zero() {
            continue;
        }
        let part = if let Some(k) = c.as_constant() {
            if k.is_one() {
                (false, l.clone())
            } else if (-&k).is_one() {
                (true, l.clone())
            } else if k < Rational::zero() {
                (true, format!("{}*{l}", -k))
            } else {
                (false, format!("{k}*{l}"))
            }
        } else if c.len() == 1 {
            let s = c.to_string();
            match s.strip_prefix('-') {
                Some(rest) => (true, format!("{rest}*{l}")),
                None => (false, format!("{s}*{l}")),
            }
        } else {
            (false, format!("({c})*{l}"))
        };
        parts.push(part);
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, s)) in parts.iter().enumerate() {
        match (i, neg) {
            (0, false) => out.push_str(s),
            (0, true) => {
                out.push('-');
                out.push_str(s);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(s);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(s);
            }
        }
    }
    out
}

/// Matrix of `Ad(exp(μ vᵢ))`: `images[j]` are the coordinates of the image
/// of `vⱼ`, polynomial in the parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointMap {
    pub generator: usize,
    pub parameter: Poly,
    pub images: Vec<Vec<Poly>>,
    /// Number of nonzero terms in the longest Lie series.
    pub terms: usize,
}

impl AdjointMap {
    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        let n = self.images.len();
        let mut out = vec![Poly::zero(); n];
        for (a, img) in v.iter().zip(&self.images) {
            if a.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(img) {
                *o += &(a * c);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AdjointMap) -> Vec<Vec<Poly>> {
        other.images.iter().map(|img| self.apply(img)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, img)| {
            img.iter().enumerate().all(|(k, c)| {
                if j == k {
                    c == &Poly::one()
                } else {
                    c.is_zero()
                }
            })
        })
    }
}

/// The default symbol for adjoint-map parameters.
pub fn mu() -> Poly {
    Poly::var(Symbol::param("mu"))
}

impl fmt::Display for AdjointMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=self.images.len()).map(|i| format!("v{i}")).collect();
        for (j, img) in self.images.iter().enumerate() {
            writeln!(
                f,
                "{} -> {}",
                labels[j],
                format_with_lead(img, &labels, Some(j))
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
