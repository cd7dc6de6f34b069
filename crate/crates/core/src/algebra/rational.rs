use std::fmt;

use num_traits::{One, Zero};

use super::{EpsSeries, Monomial, Poly, Rational, Symbol};
use crate::error::{Error, Result};

/// Quotient of an ε-series by an ε-free polynomial.
///
/// Never reduced by a polynomial gcd. Identity tests clear denominators, and
/// only common monomial factors (and constants) are cancelled.
#[derive(Clone, Debug)]
pub struct RationalExpr {
    num: EpsSeries,
    den: Poly,
}

impl RationalExpr {
    pub fn new(num: EpsSeries, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self { num, den }.normalized())
    }

    pub fn from_series(num: EpsSeries) -> Self {
        Self {
            num,
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly, order: usize) -> Self {
        Self::from_series(EpsSeries::from_poly(p, order))
    }

    /// `J₀ + εJ₁` from two ε-free quotients, at order 1.
    pub fn from_levels(j0: &RationalExpr, j1: &RationalExpr) -> Result<Self> {
        let a = j0.with_order(1);
        let b = j1.with_order(1);
        let eps = RationalExpr::from_series(EpsSeries::eps_times(Poly::one(), 1));
        a.add(&eps.mul(&b)?)
    }

    pub fn num(&self) -> &EpsSeries {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn order(&self) -> usize {
        self.num.order()
    }

    pub fn with_order(&self, order: usize) -> Self {
        Self {
            num: self.num.with_order(order),
            den: self.den.clone(),
        }
    }

    /// The ε-free quotient `aₖ / den`.
    pub fn level(&self, k: usize) -> RationalExpr {
        Self {
            num: EpsSeries::from_poly(self.num.coeff(k).clone(), 0),
            den: self.den.clone(),
        }
        .normalized()
    }

    pub fn is_o_zero(&self) -> bool {
        self.num.is_o_zero()
    }

    /// `self ≈ other` up to `o(εᵖ)`, by cross-multiplication.
    pub fn equivalent(&self, other: &RationalExpr) -> Result<bool> {
        let lhs = self.num.mul_poly(&other.den);
        let rhs = other.num.mul_poly(&self.den);
        Ok(lhs.checked_add(&-rhs)?.is_o_zero())
    }

    fn normalized(mut self) -> Self {
        if self.num.is_o_zero() {
            self.den = Poly::one();
            return self;
        }
        if let Some((m, c)) = self.den.as_monomial() {
            let (m, c) = (m.clone(), c.clone());
            let g = self
                .num
                .coeffs()
                .iter()
                .filter(|p| !p.is_zero())
                .map(Poly::monomial_content)
                .fold(m.clone(), |g, n| g.gcd(&n));
            let num = self
                .num
                .map(|p| p.div_monomial(&g, &c).expect("gcd divides every term"));
            let den = Monomial::divide(&m, &g).expect("gcd divides the denominator");
            return Self {
                num,
                den: Poly::term(Rational::one(), den),
            };
        }
        self
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RationalExpr) -> Result<Self> {
        if self.den == other.den {
            return Self::new(self.num.checked_add(&other.num)?, self.den.clone());
        }
        if let (Some((m, _)), Some((n, _))) = (self.den.as_monomial(), other.den.as_monomial()) {
            // Monomial denominators are monic after normalization.
            let l = m.lcm(n);
            let fa = Poly::term(Rational::one(), l.divide(m).unwrap());
            let fb = Poly::term(Rational::one(), l.divide(n).unwrap());
            let num = self
                .num
                .mul_poly(&fa)
                .checked_add(&other.num.mul_poly(&fb))?;
            return Self::new(num, Poly::term(Rational::one(), l));
        }
        let num = self
            .num
            .mul_poly(&other.den)
            .checked_add(&other.num.mul_poly(&self.den))?;
        Self::new(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &RationalExpr) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalExpr) -> Result<Self> {
        Self::new(self.num.checked_mul(&other.num)?, &self.den * &other.den)
    }

    pub fn mul_series(&self, s: &EpsSeries) -> Result<Self> {
        Self::new(self.num.checked_mul(s)?, self.den.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .normalized()
    }

    /// Quotient rule, then monomial cancellation.
    pub fn partial_derivative(&self, s: &Symbol) -> Self {
        let dn = self.num.partial_derivative(s);
        let dd = self.den.partial_derivative(s);
        if dd.is_zero() {
            return Self {
                num: dn,
                den: self.den.clone(),
            }
            .normalized();
        }
        let num = &dn.mul_poly(&self.den) - &self.num.mul_poly(&dd);
        Self {
            num,
            den: &self.den * &self.den,
        }
        .normalized()
    }

    /// Replaces `s` by `value` throughout numerator and denominator.
    pub fn substitute(&self, s: &Symbol, value: &RationalExpr) -> Result<Self> {
        if value.num.order() != self.num.order() {
            return Err(Error::OrderMismatch {
                left: self.num.order(),
                right: value.num.order(),
            });
        }
        let order = self.num.order();
        // Σ cₖ sᵏ  ↦  Σ cₖ nᵏ d^(a-k) / d^a
        let homogenize = |levels: &EpsSeries| -> Result<(EpsSeries, u32)> {
            let a = levels
                .coeffs()
                .iter()
                .map(|p| p.degree_in(s))
                .max()
                .unwrap_or(0);
            let mut out = EpsSeries::zero(order);
            let mut npow = vec![EpsSeries::from_poly(Poly::one(), order)];
            let mut dpow = vec![Poly::one()];
            for _ in 0..a {
                npow.push(npow.last().unwrap().checked_mul(&value.num)?);
                dpow.push(dpow.last().unwrap() * &value.den);
            }
            for (k, level) in levels.coeffs().iter().enumerate() {
                for (m, c) in level.terms() {
                    let (e, rest) = m.remove(s);
                    let factor = dpow[(a - e) as usize].mul_monomial(&rest, c);
                    let mut shifted = vec![Poly::zero(); order + 1];
                    for (j, q) in npow[e as usize].coeffs()[..=order - k].iter().enumerate() {
                        shifted[k + j] = q * &factor;
                    }
                    out = out.checked_add(&EpsSeries::from_coeffs(shifted))?;
                }
            }
            Ok((out, a))
        };
        let (n, a) = homogenize(&self.num)?;
        let (d, b) = homogenize(&EpsSeries::from_poly(self.den.clone(), order))?;
        if !d.coeffs()[1..].iter().all(Poly::is_zero) {
            return Err(Error::EpsInDenominator);
        }
        let d0 = d.coeff(0).clone();
        // n / d^a  ÷  d0 / d^b
        let (num, den) = if a >= b {
            (n, &d0 * &value.den.pow(a - b))
        } else {
            (n.mul_poly(&value.den.pow(b - a)), d0)
        };
        Self::new(num, den)
    }

    /// Exact value with every symbol assigned; `eps` is substituted for ε.
    pub fn evaluate(
        &self,
        values: &std::collections::BTreeMap<Symbol, Rational>,
        eps: &Rational,
    ) -> Result<Rational> {
        let d = self.den.evaluate(values).ok_or(Error::UnassignedSymbol)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut acc = Rational::zero();
        let mut e = Rational::one();
        for c in self.num.coeffs() {
            acc += c.evaluate(values).ok_or(Error::UnassignedSymbol)? * &e;
            e *= eps;
        }
        Ok(acc / d)
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn r(num: &str, den: &str) -> RationalExpr {
        RationalExpr::new(EpsSeries::from_poly(p(num), 1), p(den)).unwrap()
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RationalExpr::new(EpsSeries::zero(1), Poly::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn monomial_content_cancels() {
        let q = r("6*t^2*x", "12*t^3");
        assert_eq!(q.den(), &p("t"));
        assert_eq!(q.num().coeff(0), &p("1/2*x"));
    }

    #[test]
    fn cross_multiplied_equality() {
        assert!(r("x", "x + t").equivalent(&r("2*x", "2*x + 2*t")).unwrap());
        assert!(!r("x", "t").equivalent(&r("x", "2*t")).unwrap());
    }

    #[test]
    fn quotient_rule() {
        // d/dx of (c - x)/(6t) is -1/(6t)
        let w = r("c - x", "6*t");
        assert!(w
            .partial_derivative(&Symbol::X)
            .equivalent(&r("-1", "6*t"))
            .unwrap());
        // d/dt of t/x^3 is 1/x^3
        assert!(r("t", "x^3")
            .partial_derivative(&Symbol::T)
            .equivalent(&r("1", "x^3"))
            .unwrap());
        // d/dt of 1/(a + t) = -1/(a+t)^2
        assert!(r("1", "a + t")
            .partial_derivative(&Symbol::T)
            .equivalent(&r("-1", "(a+t)^2"))
            .unwrap());
    }

    #[test]
    fn substitution_of_quotient() {
        // z^2 + z with z = (c - x)/(6t)
        let z = Symbol::param("z");
        let e = r("z^2 + z", "1");
        let got = e.substitute(&z, &r("c - x", "6*t")).unwrap();
        let want = r("(c - x)^2 + 6*t*(c - x)", "36*t^2");
        assert!(got.equivalent(&want).unwrap());
    }

    #[test]
    fn sums_over_different_denominators() {
        let a = r("1", "t");
        let b = r("1", "t^2");
        assert!(a.add(&b).unwrap().equivalent(&r("t + 1", "t^2")).unwrap());
        let c = r("1", "a + t");
        assert!(a
            .add(&c)
            .unwrap()
            .equivalent(&r("a + 2*t", "t*(a+t)"))
            .unwrap());
    }
}
