use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Poly, Rational, Symbol};
use crate::error::{Error, Result};

/// Truncated power series `a₀ + εa₁ + … + εᵖaₚ` with polynomial coefficients.
///
/// This is the canonical representative of a class of functions that agree
/// up to `o(εᵖ)`; every product discards powers above `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsSeries {
    coeffs: Vec<Poly>,
}

impl EpsSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn from_poly(p: Poly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = p;
        s
    }

    /// Builds from explicit coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Poly>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Self { coeffs }
    }

    /// `ε·p` at the given order (zero when `order == 0`).
    pub fn eps_times(p: Poly, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = p;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    /// True when every retained coefficient vanishes, i.e. the function is
    /// `o(εᵖ)`.
    pub fn is_o_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Pads with zeros or truncates to a new order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Poly::zero());
        Self { coeffs }
    }

    pub fn map(&self, f: impl FnMut(&Poly) -> Poly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        self.map(|q| q * p)
    }

    pub fn partial_derivative(&self, s: &Symbol) -> Self {
        self.map(|p| p.partial_derivative(s))
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.coeffs.iter().any(|p| p.contains(s))
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Symbol> {
        self.coeffs.iter().flat_map(|p| p.symbols()).collect()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Cauchy product truncated at `εᵖ`; rejects differing orders.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let p = self.order();
        let mut out = Self::zero(p);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=p - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::from_poly(Poly::one(), self.order()), |acc, _| {
            &acc * self
        })
    }

    /// Replaces `s` by a series, truncating at this series' order.
    pub fn substitute(&self, s: &Symbol, value: &EpsSeries) -> Result<Self> {
        self.check_order(value)?;
        let p = self.order();
        let mut powers = vec![Self::from_poly(Poly::one(), p)];
        let mut out = Self::zero(p);
        for (k, level) in self.coeffs.iter().enumerate() {
            for (m, c) in level.terms() {
                let (e, rest) = m.remove(s);
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * value;
                    powers.push(next);
                }
                for (j, q) in powers[e as usize].coeffs[..=p - k].iter().enumerate() {
                    out.coeffs[k + j] += &q.mul_monomial(&rest, c);
                }
            }
        }
        Ok(out)
    }

    /// Collapses to a single polynomial in an explicit symbol standing for ε.
    pub fn to_poly_in(&self, eps: &Symbol) -> Poly {
        let e = Poly::var(eps.clone());
        let mut acc = Poly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += &(c * &e.pow(k as u32));
        }
        acc
    }

    /// Reads a polynomial in the symbol `eps` as a series, discarding powers
    /// above `order`.
    pub fn from_poly_in(p: &Poly, eps: &Symbol, order: usize) -> Self {
        let mut out = Self::zero(order);
        for (m, c) in p.terms() {
            let (e, rest) = m.remove(eps);
            if (e as usize) <= order {
                out.coeffs[e as usize].add_term(rest, c.clone());
            }
        }
        out
    }
}

impl Add for &EpsSeries {
    type Output = EpsSeries;
    fn add(self, rhs: &EpsSeries) -> EpsSeries {
        self.checked_add(rhs).expect("series order mismatch")
    }
}

impl Sub for &EpsSeries {
    type Output = EpsSeries;
    fn sub(self, rhs: &EpsSeries) -> EpsSeries {
        self.checked_add(&-rhs).expect("series order mismatch")
    }
}

/// Truncated product; panics on order mismatch (see [`EpsSeries::checked_mul`]).
impl Mul for &EpsSeries {
    type Output = EpsSeries;
    fn mul(self, rhs: &EpsSeries) -> EpsSeries {
        self.checked_mul(rhs).expect("series order mismatch")
    }
}

impl Neg for &EpsSeries {
    type Output = EpsSeries;
    fn neg(self) -> EpsSeries {
        self.map(|p| -p)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for EpsSeries {
            type Output = EpsSeries;
            fn $f(self, rhs: EpsSeries) -> EpsSeries { (&self).$f(&rhs) }
        }
        impl $tr<&EpsSeries> for EpsSeries {
            type Output = EpsSeries;
            fn $f(self, rhs: &EpsSeries) -> EpsSeries { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for EpsSeries {
    type Output = EpsSeries;
    fn neg(self) -> EpsSeries {
        -&self
    }
}

impl fmt::Display for EpsSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "eps*({c})")?,
                _ => write!(f, "eps^{k}*({c})")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn s(a0: &str, a1: &str) -> EpsSeries {
        EpsSeries::from_coeffs(vec![p(a0), p(a1)])
    }

    #[test]
    fn second_order_terms_truncate() {
        assert_eq!(s("1", "x") * s("1", "-x"), s("1", "0"));
        assert_eq!(s("0", "x") * s("0", "t"), EpsSeries::zero(1));
    }

    #[test]
    fn order_two_product() {
        let a = EpsSeries::from_coeffs(vec![p("w"), p("w_x"), p("0")]);
        let b = EpsSeries::from_coeffs(vec![p("w"), p("-w_x"), p("0")]);
        // Oracle: expand (w + e*w_x)(w - e*w_x) in an explicit symbol e.
        let e = Symbol::param("e");
        let direct = p("(w + e*w_x)*(w - e*w_x)");
        assert_eq!((a * b).to_poly_in(&e), direct);
        assert_eq!(direct, p("w^2 - e^2*w_x^2"));
    }

    #[test]
    fn mismatched_orders_rejected() {
        let a = EpsSeries::zero(1);
        let b = EpsSeries::zero(2);
        assert!(matches!(
            a.checked_mul(&b),
            Err(Error::OrderMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn substitution_truncates() {
        let a = s("w^2", "w");
        let v = s("x", "1");
        // (x + e)^2 + e (x + e) = x^2 + 3 e x + O(e^2)
        assert_eq!(a.substitute(&Symbol::W, &v).unwrap(), s("x^2", "3*x"));
    }

    #[test]
    fn display() {
        assert_eq!(s("w", "2*w^2").to_string(), "w + eps*(2*w^2)");
        assert_eq!(EpsSeries::zero(2).to_string(), "0");
    }
}
