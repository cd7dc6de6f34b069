//! Exact sparse Gaussian elimination over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

type Row = BTreeMap<usize, Rational>;

/// Solution set of `A u = b`: `particular + span(nullspace)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    pub columns: usize,
    pub particular: Vec<Rational>,
    /// One vector per free column, in ascending column order; the free
    /// column carries a 1.
    pub nullspace: Vec<Vec<Rational>>,
    pub free: Vec<usize>,
    pub pivots: Vec<usize>,
}

/// Reduced echelon form that prefers pivots in *later* columns.
///
/// Consequently the free unknowns are the earliest ones that can be free,
/// which lets callers order unknowns from simplest to most complex and get
/// the simplest parametrization of the solution space.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    columns: usize,
    rows: BTreeMap<usize, (Row, Rational)>,
}

/// Index of the input row that made a system inconsistent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inconsistent(pub usize);

impl Echelon {
    pub fn new(columns: usize) -> Self {
        Self {
            columns,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, row: &mut Row, rhs: &mut Rational) {
        let hits: Vec<usize> = row
            .keys()
            .copied()
            .filter(|c| self.rows.contains_key(c))
            .collect();
        for p in hits {
            let Some(f) = row.get(&p).cloned() else {
                continue;
            };
            let (prow, prhs) = &self.rows[&p];
            axpy(row, &-&f, prow);
            *rhs -= &f * prhs;
        }
    }

    /// Adds `Σ row[c]·u[c] = rhs`. Returns `Ok(true)` if the rank grew.
    pub fn push(&mut self, row: &[(usize, Rational)], rhs: Rational) -> Result<bool, ()> {
        let mut r: Row = BTreeMap::new();
        for (c, v) in row {
            assert!(*c < self.columns, "column out of range");
            if !v.is_zero() {
                let e = r.entry(*c).or_insert_with(Rational::zero);
                *e += v;
                if e.is_zero() {
                    r.remove(c);
                }
            }
        }
        let mut rhs = rhs;
        self.reduce(&mut r, &mut rhs);
        let Some((&pivot, lead)) = r.iter().next_back() else {
            return if rhs.is_zero() { Ok(false) } else { Err(()) };
        };
        let inv = lead.recip();
        for v in r.values_mut() {
            *v *= &inv;
        }
        rhs *= &inv;
        for (prow, prhs) in self.rows.values_mut() {
            if let Some(f) = prow.get(&pivot).cloned() {
                axpy(prow, &-&f, &r);
                *prhs -= &f * &rhs;
            }
        }
        self.rows.insert(pivot, (r, rhs));
        Ok(true)
    }

    /// True if the homogeneous row lies in the span of the rows pushed so far.
    pub fn contains(&self, row: &[(usize, Rational)]) -> bool {
        let mut r: Row = BTreeMap::new();
        axpy(&mut r, &Rational::one(), &row.iter().cloned().collect());
        let mut rhs = Rational::zero();
        self.reduce(&mut r, &mut rhs);
        r.is_empty()
    }

    pub fn solution(&self) -> LinearSolution {
        let n = self.columns;
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let free: Vec<usize> = (0..n).filter(|c| !self.rows.contains_key(c)).collect();
        let mut particular = vec![Rational::zero(); n];
        for (&p, (_, rhs)) in &self.rows {
            particular[p] = rhs.clone();
        }
        let nullspace = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); n];
                v[f] = Rational::one();
                for (&p, (row, _)) in &self.rows {
                    if let Some(c) = row.get(&f) {
                        v[p] = -c;
                    }
                }
                v
            })
            .collect();
        LinearSolution {
            columns: n,
            particular,
            nullspace,
            free,
            pivots,
        }
    }
}

fn axpy(row: &mut Row, f: &Rational, other: &Row) {
    for (c, v) in other {
        let e = row.entry(*c).or_insert_with(Rational::zero);
        *e += f * v;
        if e.is_zero() {
            row.remove(c);
        }
    }
}

/// Solves a dense system; on inconsistency returns the first offending row.
pub fn solve(
    rows: &[Vec<Rational>],
    rhs: &[Rational],
    columns: usize,
) -> Result<LinearSolution, Inconsistent> {
    let mut e = Echelon::new(columns);
    for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
        let sparse: Vec<(usize, Rational)> = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        e.push(&sparse, b.clone()).map_err(|_| Inconsistent(i))?;
    }
    Ok(e.solution())
}

/// Rescales to coprime integers. The sign is left unchanged.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for c in v {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    if num.is_zero() {
        return v.to_vec();
    }
    let f = Rational::new(den, num.abs());
    v.iter().map(|c| c * &f).collect()
}
