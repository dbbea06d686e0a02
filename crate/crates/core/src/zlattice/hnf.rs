use std::fmt;

use num_bigint::BigUint;

use super::vector::IntVector;
use crate::error::{Error, Result};

/// A full-rank sublattice of Z^n held by its row-style Hermite normal form:
/// upper triangular, positive diagonal, and every entry above a pivot reduced
/// into [0, pivot). Two lattices are equal iff their HNF matrices are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    n: usize,
    rows: Vec<Vec<i64>>,
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::IntegerOverflow)
}

/// Extended gcd with g > 0: s·a + t·b = g.
fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Echelon basis built one generator at a time; rows are indexed by pivot.
pub(crate) struct HnfBuilder {
    n: usize,
    rows: Vec<Option<Vec<i64>>>,
}

impl HnfBuilder {
    pub(crate) fn new(n: usize) -> Self {
        HnfBuilder {
            n,
            rows: vec![None; n],
        }
    }

    pub(crate) fn insert(&mut self, v: &[i64]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        let mut v: Vec<i64> = v.to_vec();
        let mut changed = false;
        for j in 0..self.n {
            if v[j] == 0 {
                continue;
            }
            let Some(row) = self.rows[j].as_mut() else {
                if v[j] < 0 {
                    for x in &mut v {
                        *x = x.checked_neg().ok_or(Error::IntegerOverflow)?;
                    }
                }
                self.rows[j] = Some(v);
                changed = true;
                break;
            };
            let p = i128::from(row[j]);
            let vj = i128::from(v[j]);
            if vj % p == 0 {
                let q = vj / p;
                for k in j..self.n {
                    v[k] = narrow(i128::from(v[k]) - q * i128::from(row[k]))?;
                }
                continue;
            }
            let (g, s, t) = xgcd(p, vj);
            let (pg, vg) = (p / g, vj / g);
            for k in j..self.n {
                let (rk, vk) = (i128::from(row[k]), i128::from(v[k]));
                row[k] = narrow(s * rk + t * vk)?;
                v[k] = narrow(pg * vk - vg * rk)?;
            }
            changed = true;
        }
        if changed {
            self.reduce()?;
        }
        Ok(())
    }

    /// Brings entries above each present pivot into [0, pivot).
    fn reduce(&mut self) -> Result<()> {
        for j in 0..self.n {
            let Some(pivot_row) = self.rows[j].clone() else {
                continue;
            };
            let p = i128::from(pivot_row[j]);
            for k in 0..j {
                if let Some(row) = self.rows[k].as_mut() {
                    let q = i128::from(row[j]).div_euclid(p);
                    if q != 0 {
                        for c in j..self.n {
                            row[c] = narrow(i128::from(row[c]) - q * i128::from(pivot_row[c]))?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn finish(self) -> Result<Lattice> {
        let mut rows = Vec::with_capacity(self.n);
        for (j, r) in self.rows.into_iter().enumerate() {
            rows.push(r.ok_or(Error::NotFullRank { column: j })?);
        }
        Ok(Lattice { n: self.n, rows })
    }
}

/// Canonical HNF basis of the subgroup generated by `generators`.
pub fn hnf(generators: &[IntVector], n: usize) -> Result<Lattice> {
    let mut b = HnfBuilder::new(n);
    for g in generators {
        b.insert(g.as_slice())?;
    }
    b.finish()
}

/// Result of comparing two lattices, with witnesses for every strict side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    /// The first lattice is a proper sublattice; the witness lies in the
    /// second only.
    FirstInSecond { witness: IntVector },
    /// The second lattice is a proper sublattice; the witness lies in the
    /// first only.
    SecondInFirst { witness: IntVector },
    Incomparable {
        first_only: IntVector,
        second_only: IntVector,
    },
}

impl Comparison {
    pub fn label(&self) -> &'static str {
        match self {
            Comparison::Equal => "equal",
            Comparison::FirstInSecond { .. } => "first-in-second",
            Comparison::SecondInFirst { .. } => "second-in-first",
            Comparison::Incomparable { .. } => "incomparable",
        }
    }
}

impl Lattice {
    pub fn integers(n: usize) -> Self {
        Lattice::scaled_integers(n, 1)
    }

    /// m·Z^n.
    pub fn scaled_integers(n: usize, m: i64) -> Self {
        assert!(m > 0);
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = m;
                r
            })
            .collect();
        Lattice { n, rows }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<IntVector> {
        self.rows.iter().cloned().map(IntVector::new).collect()
    }

    pub fn pivots(&self) -> impl Iterator<Item = i64> + '_ {
        self.rows.iter().enumerate().map(|(i, r)| r[i])
    }

    /// |Z^n / L|, the product of the pivots.
    pub fn determinant(&self) -> BigUint {
        self.pivots().fold(BigUint::from(1u32), |acc, p| acc * (p as u64))
    }

    /// The determinant when it fits a u128.
    pub fn determinant_u128(&self) -> Option<u128> {
        self.pivots()
            .try_fold(1u128, |acc, p| acc.checked_mul(p as u128))
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: len,
            });
        }
        Ok(())
    }

    /// Membership by back-substitution against the triangular basis.
    pub fn contains(&self, v: &IntVector) -> Result<bool> {
        self.check_dim(v.len())?;
        let mut w: Vec<i128> = v.as_slice().iter().map(|&x| i128::from(x)).collect();
        for (j, row) in self.rows.iter().enumerate() {
            let p = i128::from(row[j]);
            if w[j] % p != 0 {
                return Ok(false);
            }
            let q = w[j] / p;
            if q != 0 {
                for k in j..self.n {
                    w[k] = w[k]
                        .checked_sub(q.checked_mul(i128::from(row[k])).ok_or(Error::IntegerOverflow)?)
                        .ok_or(Error::IntegerOverflow)?;
                }
            }
        }
        Ok(true)
    }

    fn first_row_outside(&self, other: &Lattice) -> Result<Option<IntVector>> {
        for r in &self.rows {
            let v = IntVector::new(r.clone());
            if !other.contains(&v)? {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> Result<bool> {
        Ok(self.first_row_outside(other)?.is_none())
    }

    /// Inclusion in both directions, checked on basis rows.
    pub fn compare(&self, other: &Lattice) -> Result<Comparison> {
        self.check_dim(other.n)?;
        let first_only = self.first_row_outside(other)?;
        let second_only = other.first_row_outside(self)?;
        Ok(match (first_only, second_only) {
            (None, None) => Comparison::Equal,
            (None, Some(w)) => Comparison::FirstInSecond { witness: w },
            (Some(w), None) => Comparison::SecondInFirst { witness: w },
            (Some(a), Some(b)) => Comparison::Incomparable {
                first_only: a,
                second_only: b,
            },
        })
    }

    /// L1 + L2, the smallest lattice containing both.
    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_dim(other.n)?;
        let mut b = HnfBuilder::new(self.n);
        for r in self.rows.iter().chain(&other.rows) {
            b.insert(r)?;
        }
        b.finish()
    }

    /// Whether m·Z^n ⊆ L.
    pub fn contains_scaled_integers(&self, m: i64) -> Result<bool> {
        for i in 0..self.n {
            if !self.contains(&IntVector::unit(self.n, i, m))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// L1 + L2.
pub fn lattice_sum(a: &Lattice, b: &Lattice) -> Result<Lattice> {
    a.sum(b)
}

/// {x ∈ Z^n : rows[j]·x ≡ 0 (mod moduli[j]) for all j}.
///
/// Congruences are intersected one at a time: for the current basis, the
/// coefficient vectors meeting the new congruence form a kernel that is found
/// by unimodular elimination on the basis values modulo m.
pub fn congruence_kernel(rows: &[IntVector], moduli: &[u64], n: usize) -> Result<Lattice> {
    if rows.len() != moduli.len() {
        return Err(Error::LengthMismatch {
            expected: rows.len(),
            found: moduli.len(),
        });
    }
    let mut basis: Vec<Vec<i64>> = Lattice::integers(n).rows;
    for (h, &m) in rows.iter().zip(moduli) {
        if h.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: h.len(),
            });
        }
        if m == 0 {
            return Err(Error::OutOfRange("modulus must be positive".into()));
        }
        if m == 1 {
            continue;
        }
        let m = i128::from(m);
        let mut vals: Vec<i128> = basis
            .iter()
            .map(|b| {
                IntVector::new(b.clone())
                    .dot(h)
                    .map(|d| d.rem_euclid(m))
            })
            .collect::<Result<_>>()?;
        for i in 1..basis.len() {
            if vals[i] == 0 {
                continue;
            }
            if vals[0] == 0 {
                basis.swap(0, i);
                vals.swap(0, i);
                continue;
            }
            let (g, s, t) = xgcd(vals[0], vals[i]);
            let (a0, ai) = (vals[0] / g, vals[i] / g);
            let (b0, bi) = (basis[0].clone(), basis[i].clone());
            for k in 0..n {
                let (x, y) = (i128::from(b0[k]), i128::from(bi[k]));
                basis[0][k] = narrow(s * x + t * y)?;
                basis[i][k] = narrow(a0 * y - ai * x)?;
            }
            vals[0] = g;
            vals[i] = 0;
        }
        let g = vals[0];
        if g != 0 {
            let (gg, _, _) = xgcd(g, m);
            let k = m / gg;
            for x in &mut basis[0] {
                *x = narrow(i128::from(*x) * k)?;
            }
        }
        let mut builder = HnfBuilder::new(n);
        for b in &basis {
            builder.insert(b)?;
        }
        basis = builder.finish()?.rows;
    }
    Ok(Lattice { n, rows: basis })
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice{:?}", self.rows)
    }
}
