use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, Symbol};

/// Power product of symbols, stored sorted by symbol with positive exponents.
///
/// Ordered graded-lexicographically: total degree first, then by the
/// exponent of the earliest symbol in the global order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Symbol, u32)>) -> Self {
        let mut acc: BTreeMap<Symbol, u32> = BTreeMap::new();
        for (s, e) in powers {
            if e > 0 {
                *acc.entry(s).or_default() += e;
            }
        }
        Monomial(acc.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, s: &Symbol) -> u32 {
        self.0
            .binary_search_by(|(x, _)| x.cmp(s))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn powers(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.0.iter().map(|(s, _)| s)
    }

    /// Splits into the part whose symbols satisfy `pred` and the rest.
    pub fn split(&self, mut pred: impl FnMut(&Symbol) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().cloned().partition(|(s, _)| pred(s));
        (Monomial(a), Monomial(b))
    }

    /// `self` with the exponent of `s` removed, and that exponent.
    pub fn remove(&self, s: &Symbol) -> (u32, Monomial) {
        match self.0.binary_search_by(|(x, _)| x.cmp(s)) {
            Ok(i) => {
                let mut v = self.0.clone();
                let (_, e) = v.remove(i);
                (e, Monomial(v))
            }
            Err(_) => (0, self.clone()),
        }
    }

    fn with_exponent(&self, s: &Symbol, e: u32) -> Monomial {
        let mut v = self.0.clone();
        match v.binary_search_by(|(x, _)| x.cmp(s)) {
            Ok(i) if e == 0 => {
                v.remove(i);
            }
            Ok(i) => v[i].1 = e,
            Err(_) if e == 0 => {}
            Err(i) => v.insert(i, (s.clone(), e)),
        }
        Monomial(v)
    }

    /// Exact quotient `self / other`, if `other` divides `self`.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.clone();
        for (s, e) in &other.0 {
            let have = out.exponent(s);
            if have < *e {
                return None;
            }
            out = out.with_exponent(s, have - e);
        }
        Some(out)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|(s, e)| {
                    let f = other.exponent(s);
                    (f > 0).then(|| (s.clone(), (*e).min(f)))
                })
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (s, e) in &other.0 {
            if out.exponent(s) < *e {
                out = out.with_exponent(s, *e);
            }
        }
        out
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (l, r) in self.0.iter().zip(&other.0) {
                match l.0.cmp(&r.0) {
                    // `self` carries an earlier symbol that `other` lacks.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match l.1.cmp(&r.1) {
                        Ordering::Equal => {}
                        ord => return ord,
                    },
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::constant(Rational::new(n.into(), d.into()))
    }

    pub fn var(s: Symbol) -> Self {
        Self::term(Rational::one(), Monomial::var(s))
    }

    pub fn param(name: &str) -> Self {
        Self::var(Symbol::param(name))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(n, k)| (n * m, k * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.symbols().cloned())
            .collect()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.terms.keys().any(|m| m.exponent(s) > 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    /// Total degree counting only symbols selected by `pred`.
    pub fn degree_where(&self, mut pred: impl FnMut(&Symbol) -> bool) -> u32 {
        self.terms
            .keys()
            .map(|m| {
                m.powers()
                    .iter()
                    .filter(|(s, _)| pred(s))
                    .map(|(_, e)| e)
                    .sum()
            })
            .max()
            .unwrap_or(0)
    }

    /// Formal partial derivative with respect to `s`.
    pub fn partial_derivative(&self, s: &Symbol) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            if e > 0 {
                out.add_term(
                    m.with_exponent(s, e - 1),
                    c * Rational::from_integer(e.into()),
                );
            }
        }
        out
    }

    /// Antiderivative in `s` with zero integration constant.
    pub fn integrate(&self, s: &Symbol) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s) + 1;
            out.add_term(m.with_exponent(s, e), c / Rational::from_integer(e.into()));
        }
        out
    }

    /// Splits `self = Σ monomial · coefficient` where each monomial uses only
    /// symbols in `basis` and each coefficient is free of them.
    pub fn collect_coefficients(
        &self,
        mut basis: impl FnMut(&Symbol) -> bool,
    ) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, rest) = m.split(&mut basis);
            out.entry(inside).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// [`Poly::collect_coefficients`] over an explicit symbol set.
    pub fn collect_by(&self, basis: &BTreeSet<Symbol>) -> BTreeMap<Monomial, Poly> {
        self.collect_coefficients(|s| basis.contains(s))
    }

    /// Replaces every occurrence of `s` by `value`.
    pub fn substitute(&self, s: &Symbol, value: &Poly) -> Poly {
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.remove(s);
            while powers.len() <= e as usize {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            out += &powers[e as usize].mul_monomial(&rest, c);
        }
        out
    }

    /// Substitutes several symbols simultaneously.
    pub fn substitute_all(&self, values: &BTreeMap<Symbol, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::one();
            let mut kept = Vec::new();
            for (s, e) in m.powers() {
                match values.get(s) {
                    Some(v) => term = &term * &v.pow(*e),
                    None => kept.push((s.clone(), *e)),
                }
            }
            out += &term.mul_monomial(&Monomial(kept), c);
        }
        out
    }

    /// Exact evaluation with every symbol assigned.
    pub fn evaluate(&self, values: &BTreeMap<Symbol, Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (s, e) in m.powers() {
                v *= num_traits::pow(values.get(s)?.clone(), *e as usize);
            }
            acc += v;
        }
        Some(acc)
    }

    /// Greatest common divisor of all term monomials.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial, c: &Rational) -> Option<Poly> {
        assert!(!c.is_zero(), "division by zero coefficient");
        let mut out = BTreeMap::new();
        for (n, k) in &self.terms {
            out.insert(n.divide(m)?, k / c);
        }
        Some(Poly { terms: out })
    }

    /// Rescales to coprime integer coefficients with positive leading
    /// (highest-monomial) coefficient. Returns the factor applied.
    pub fn primitive_part(&self) -> (Poly, Rational) {
        let Some((_, lead)) = self.terms.iter().next_back() else {
            return (Poly::zero(), Rational::one());
        };
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut factor = Rational::new(den, num);
        if lead.is_negative() {
            factor = -factor;
        }
        (self.scale(&factor), factor)
    }

    /// Linear coefficients: returns `(coeffs, constant)` such that
    /// `self = Σ coeffs[i]·unknowns[i] + constant`, or `None` if `self` is
    /// not affine in the unknowns with rational coefficients.
    pub fn affine_coefficients(&self, unknowns: &[Symbol]) -> Option<(Vec<Rational>, Rational)> {
        let mut coeffs = vec![Rational::zero(); unknowns.len()];
        let mut constant = Rational::zero();
        for (m, c) in &self.terms {
            match m.powers() {
                [] => constant += c,
                [(s, 1)] => {
                    let i = unknowns.iter().position(|u| u == s)?;
                    coeffs[i] += c;
                }
                _ => return None,
            }
        }
        Some((coeffs, constant))
    }
}

impl From<Symbol> for Poly {
    fn from(s: Symbol) -> Self {
        Poly::var(s)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::int(n)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, k) in &rhs.terms {
                out.add_term(m * n, c * k);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { (&self).$f(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly { (&self).$f(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { self.$f(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub(crate) fn fmt_coefficient_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rational,
    m: &Monomial,
) -> fmt::Result {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    let a = c.abs();
    if m.is_one() {
        write!(f, "{a}")
    } else if a.is_one() {
        write!(f, "{m}")
    } else {
        write!(f, "{a}*{m}")
    }
}

/// Terms in descending graded-lex order with explicit rational coefficients.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            fmt_coefficient_term(f, k == 0, c, m)?;
        }
        Ok(())
    }
}
