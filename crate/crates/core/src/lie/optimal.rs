//! Normalization of a general element `a₁v₁ + … + a₇v₇` by compositions of
//! adjoint maps, and a replay of the case analysis that yields the optimal
//! system of one-dimensional subalgebras.

use std::fmt;

use super::{format_combination, mu, LieAlgebra};
use crate::algebra::{Poly, Symbol};
use crate::error::{Error, Result};

/// Quotient of parameter polynomials used as an adjoint-map parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamExpr {
    pub num: Poly,
    pub den: Poly,
}

impl ParamExpr {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::poly(s.parse()?))
    }
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// `(Σ coordsᵢ vᵢ) / den` with coordinates polynomial in parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub coords: Vec<Poly>,
    pub den: Poly,
}

impl AlgebraElement {
    pub fn new(coords: Vec<Poly>) -> Self {
        Self {
            coords,
            den: Poly::one(),
        }
    }

    pub fn parse(coords: &[&str]) -> Result<Self> {
        Ok(Self::new(
            coords
                .iter()
                .map(|s| s.parse::<Poly>())
                .collect::<Result<_, _>>()?,
        ))
    }

    /// Equality with a polynomial element, clearing the denominator.
    pub fn equals(&self, other: &[Poly]) -> bool {
        self.coords.len() == other.len()
            && self
                .coords
                .iter()
                .zip(other)
                .all(|(a, b)| a == &(b * &self.den))
    }

    /// Coordinates divided through when the denominator is a constant.
    pub fn reduced(&self) -> Option<Vec<Poly>> {
        let d = self.den.as_constant()?;
        let inv = d.recip();
        Some(self.coords.iter().map(|c| c.scale(&inv)).collect())
    }

    pub fn render(&self, labels: &[String]) -> String {
        match self.reduced() {
            Some(c) => format_combination(&c, labels),
            None => format!(
                "({}) / ({})",
                format_combination(&self.coords, labels),
                self.den
            ),
        }
    }
}

/// One step `Ad(exp(param · v_generator))`, generator 0-based.
pub type ScriptStep = (usize, ParamExpr);

/// Applies `Ad(exp(p₁vᵢ₁)) ∘ … ∘ Ad(exp(pₙvᵢₙ))` to `v`. The script is
/// listed in composition order, so the last step acts first.
pub fn normalize_optimal(
    g: &LieAlgebra,
    v: &AlgebraElement,
    script: &[ScriptStep],
) -> Result<AlgebraElement> {
    if v.coords.len() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            got: v.coords.len(),
        });
    }
    let m = mu();
    let mu_symbol = Symbol::param("mu");
    let mut current = v.clone();
    for (i, p) in script.iter().rev() {
        if p.den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let map = g.adjoint_map(*i, &m)?;
        let image = map.apply(&current.coords);
        let k = image
            .iter()
            .map(|c| c.degree_in(&mu_symbol))
            .max()
            .unwrap_or(0);
        let coords = image
            .iter()
            .map(|c| {
                c.collect_coefficients(|s| s == &mu_symbol)
                    .into_iter()
                    .fold(Poly::zero(), |acc, (mono, coeff)| {
                        let e = mono.exponent(&mu_symbol);
                        &acc + &(&coeff * &(&p.num.pow(e) * &p.den.pow(k - e)))
                    })
            })
            .collect();
        current = AlgebraElement {
            coords,
            den: &current.den * &p.den.pow(k),
        };
    }
    Ok(current)
}

/// One stratum of the case analysis.
pub struct Stratum {
    pub name: &'static str,
    pub conditions: &'static [&'static str],
    pub input: [&'static str; 7],
    /// `(generator, parameter)`, generator 1-based, in composition order.
    pub script: &'static [(usize, &'static str)],
    pub claimed: [&'static str; 7],
    /// 1-based index whose coefficient the representative normalizes to 1.
    pub lead: usize,
    /// 1-based indices allowed to carry free coefficients.
    pub support: &'static [usize],
    pub representative: &'static str,
}

pub const STRATA: &[Stratum] = &[
    Stratum {
        name: "V1'",
        conditions: &["a7 != 0 (scaled to a7 = 1)"],
        input: ["a1", "a2", "a3", "a4", "a5", "a6", "1"],
        script: &[(1, "a4 - 3*a6*a5"), (2, "a5/3"), (3, "-a6/2")],
        claimed: ["a1 - 3*a2*a6 - 2*a3*a5", "a2", "a3", "0", "0", "0", "1"],
        lead: 7,
        support: &[1, 2, 3, 7],
        representative: "v7 + alpha*v1 + beta*v2 + gamma*v3",
    },
    Stratum {
        name: "V2'",
        conditions: &["a7 = 0", "a3 != 0 (scaled to a3 = 1)"],
        input: ["a1", "a2", "1", "a4", "a5", "a6", "0"],
        script: &[(2, "a1/6"), (5, "(a1*a6 + 2*a4)/12"), (7, "a6/2")],
        claimed: ["0", "a2", "1", "0", "(3*a2*a6 + 2*a5)/2", "0", "0"],
        lead: 3,
        support: &[2, 3, 5],
        representative: "v3 + alpha*v2 + beta*v5",
    },
    Stratum {
        name: "V3'",
        conditions: &["a3 = a7 = 0", "a2 != 0 (scaled to a2 = 1)"],
        input: ["a1", "1", "0", "a4", "a5", "a6", "0"],
        script: &[(3, "-a1/6"), (6, "(a1*a5 - 3*a4)/18"), (7, "-a5/3")],
        claimed: ["0", "1", "0", "0", "0", "a6", "0"],
        lead: 2,
        support: &[2, 6],
        representative: "v2 + alpha*v6",
    },
    Stratum {
        name: "V4'",
        conditions: &["a2 = a3 = a7 = 0", "a6 != 0 (scaled to a6 = 1)"],
        input: ["a1", "0", "0", "a4", "a5", "1", "0"],
        script: &[(2, "a4/6")],
        claimed: ["a1", "0", "0", "0", "a5", "1", "0"],
        lead: 6,
        support: &[1, 5, 6],
        representative: "v6 + alpha*v1 + beta*v5",
    },
    Stratum {
        name: "V5'",
        conditions: &["a2 = a3 = a6 = a7 = 0", "a5 != 0 (scaled to a5 = 1)"],
        input: ["a1", "0", "0", "a4", "1", "0", "0"],
        script: &[(3, "-a4/6")],
        claimed: ["a1", "0", "0", "0", "1", "0", "0"],
        lead: 5,
        support: &[1, 5],
        representative: "v5 + alpha*v1",
    },
    Stratum {
        name: "V6'",
        conditions: &["a2 = a3 = a5 = a6 = a7 = 0", "a1 != 0 (scaled to a1 = 1)"],
        input: ["1", "0", "0", "a4", "0", "0", "0"],
        script: &[(7, "-a4")],
        claimed: ["1", "0", "0", "0", "0", "0", "0"],
        lead: 1,
        support: &[1],
        representative: "v1",
    },
];

/// Outcome of replaying one stratum.
#[derive(Clone, Debug, PartialEq)]
pub struct StratumReport {
    pub name: String,
    pub conditions: Vec<String>,
    pub input: String,
    pub script: String,
    pub computed: String,
    pub claimed: String,
    pub confirmed: bool,
    pub representative: String,
    /// The claimed normal form has the representative's shape.
    pub reachable: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimalReport {
    pub strata: Vec<StratumReport>,
    /// Every adjoint map fixes `v4`.
    pub v4_trivial: bool,
    /// Longest Lie series encountered among all `Ad(exp(μ vᵢ))`.
    pub max_series_terms: usize,
}

impl OptimalReport {
    pub fn all_confirmed(&self) -> bool {
        self.v4_trivial && self.strata.iter().all(|s| s.confirmed && s.reachable)
    }
}

fn parse_all(v: &[&str]) -> Result<Vec<Poly>> {
    v.iter()
        .map(|s| s.parse::<Poly>().map_err(Error::from))
        .collect()
}

/// Replays one stratum on `g`.
pub fn replay(g: &LieAlgebra, s: &Stratum) -> Result<StratumReport> {
    let labels = g.labels();
    let input = AlgebraElement::new(parse_all(&s.input)?);
    let script: Vec<ScriptStep> = s
        .script
        .iter()
        .map(|(i, p)| Ok((i - 1, ParamExpr::parse(p)?)))
        .collect::<Result<_>>()?;
    let claimed = parse_all(&s.claimed)?;
    let computed = normalize_optimal(g, &input, &script)?;
    let script_text = script
        .iter()
        .map(|(i, p)| format!("Ad(exp(({p})*{}))", labels[*i]))
        .collect::<Vec<_>>()
        .join(" o ");
    let reachable = claimed.iter().enumerate().all(|(k, c)| {
        if k + 1 == s.lead {
            c == &Poly::one()
        } else {
            c.is_zero() || s.support.contains(&(k + 1))
        }
    });
    Ok(StratumReport {
        name: s.name.to_string(),
        conditions: s.conditions.iter().map(|c| c.to_string()).collect(),
        input: input.render(labels),
        script: script_text,
        computed: computed.render(labels),
        claimed: format_combination(&claimed, labels),
        confirmed: computed.equals(&claimed),
        representative: s.representative.to_string(),
        reachable,
    })
}

/// Replays every stratum and the trivial `v4` case.
pub fn verify_optimal_system(g: &LieAlgebra) -> Result<OptimalReport> {
    let strata = STRATA
        .iter()
        .map(|s| replay(g, s))
        .collect::<Result<Vec<_>>>()?;
    let mut v4_trivial = true;
    let mut max_series_terms = 0;
    let v4 = 3;
    for i in 0..g.dim() {
        let map = g.adjoint_map(i, &mu())?;
        max_series_terms = max_series_terms.max(map.terms);
        let fixed = map.images[v4].iter().enumerate().all(|(k, c)| {
            if k == v4 {
                c == &Poly::one()
            } else {
                c.is_zero()
            }
        });
        v4_trivial &= fixed;
    }
    Ok(OptimalReport {
        strata,
        v4_trivial,
        max_series_terms,
    })
}
