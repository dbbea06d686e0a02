//! Linear codes over U_a = F2[u]/u^a, the embedding Φ into Z^n, and
//! Construction A′.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{BitVector, ChainBasis, NestedChain, MAX_ENUM_DIM, MAX_LEVELS, MAX_LEN};
use crate::zlattice::{is_subgroup, CosetSet, HnfBuilder, IntVector, Lattice, Residue};

fn check_depth(a: usize) -> Result<()> {
    if a == 0 || a > MAX_LEVELS {
        return Err(Error::OutOfRange(format!("a must be in 1..={MAX_LEVELS}, got {a}")));
    }
    Ok(())
}

/// An element Σ b_j u^j of U_a; bit j of `coeffs` is b_j.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UaElement {
    coeffs: u8,
    a: u8,
}

impl UaElement {
    pub fn new(coeffs: u8, a: usize) -> Result<Self> {
        check_depth(a)?;
        if u32::from(coeffs) >> a != 0 {
            return Err(Error::OutOfRange(format!("coefficients {coeffs:#b} exceed degree {}", a - 1)));
        }
        Ok(UaElement { coeffs, a: a as u8 })
    }

    pub fn zero(a: usize) -> Self {
        UaElement { coeffs: 0, a: a as u8 }
    }

    pub fn one(a: usize) -> Self {
        UaElement { coeffs: 1, a: a as u8 }
    }

    /// u (zero when a = 1).
    pub fn u(a: usize) -> Self {
        UaElement {
            coeffs: (2u32 & ((1 << a) - 1)) as u8,
            a: a as u8,
        }
    }

    pub fn coeffs(&self) -> u8 {
        self.coeffs
    }

    pub fn depth(&self) -> usize {
        self.a as usize
    }

    pub fn coeff(&self, j: usize) -> bool {
        self.coeffs >> j & 1 == 1
    }

    /// Integer value Σ b_j 2^j.
    pub fn phi(&self) -> i64 {
        i64::from(self.coeffs)
    }

    fn same_ring(&self, other: &UaElement) -> Result<()> {
        if self.a != other.a {
            return Err(Error::LengthMismatch {
                expected: self.a as usize,
                found: other.a as usize,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &UaElement) -> Result<UaElement> {
        self.same_ring(other)?;
        Ok(UaElement {
            coeffs: self.coeffs ^ other.coeffs,
            a: self.a,
        })
    }

    pub fn mul(&self, other: &UaElement) -> Result<UaElement> {
        self.same_ring(other)?;
        let mut acc = 0u32;
        for j in 0..self.a {
            if self.coeff(j as usize) {
                acc ^= u32::from(other.coeffs) << j;
            }
        }
        Ok(UaElement {
            coeffs: (acc & ((1 << self.a) - 1)) as u8,
            a: self.a,
        })
    }

    /// Little-endian coefficient string, e.g. `110` for 1+u in U_3.
    pub fn coeff_string(&self) -> String {
        (0..self.a as usize)
            .map(|j| if self.coeff(j) { '1' } else { '0' })
            .collect()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let a = s.len();
        check_depth(a)?;
        let mut coeffs = 0u8;
        for (j, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => coeffs |= 1 << j,
                _ => return Err(Error::OutOfRange(format!("bad coefficient string {s:?}"))),
            }
        }
        Ok(UaElement { coeffs, a: a as u8 })
    }
}

impl fmt::Display for UaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs == 0 {
            return f.write_str("0");
        }
        let mut first = true;
        for j in 0..self.a as usize {
            if !self.coeff(j) {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match j {
                0 => f.write_str("1")?,
                1 => f.write_str("u")?,
                _ => write!(f, "u^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A vector of U_a^n stored as a binary slice vectors: w = Σ w_j u^j.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UaVector {
    n: u8,
    a: u8,
    slices: [u64; MAX_LEVELS],
}

impl UaVector {
    pub fn zero(n: usize, a: usize) -> Self {
        UaVector {
            n: n as u8,
            a: a as u8,
            slices: [0; MAX_LEVELS],
        }
    }

    pub fn from_elements(elements: &[UaElement], a: usize) -> Result<Self> {
        check_depth(a)?;
        if elements.len() > MAX_LEN {
            return Err(Error::OutOfRange(format!("length {} exceeds {MAX_LEN}", elements.len())));
        }
        let mut v = UaVector::zero(elements.len(), a);
        for (p, e) in elements.iter().enumerate() {
            if e.depth() != a {
                return Err(Error::LengthMismatch {
                    expected: a,
                    found: e.depth(),
                });
            }
            for j in 0..a {
                if e.coeff(j) {
                    v.slices[j] |= 1 << p;
                }
            }
        }
        Ok(v)
    }

    /// Σ slices[j] u^j; slices beyond the a-th must be absent.
    pub fn from_slices(slices: &[BitVector], a: usize) -> Result<Self> {
        check_depth(a)?;
        if slices.len() > a {
            return Err(Error::OutOfRange(format!("{} slices for a = {a}", slices.len())));
        }
        let n = slices.first().map_or(0, BitVector::len);
        let mut v = UaVector::zero(n, a);
        for (j, s) in slices.iter().enumerate() {
            if s.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: s.len(),
                });
            }
            v.slices[j] = s.word();
        }
        Ok(v)
    }

    /// u^j · x for a binary vector x.
    pub fn monomial(x: &BitVector, j: usize, a: usize) -> Result<Self> {
        check_depth(a)?;
        let mut v = UaVector::zero(x.len(), a);
        if j < a {
            v.slices[j] = x.word();
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn depth(&self) -> usize {
        self.a as usize
    }

    pub fn slice(&self, j: usize) -> BitVector {
        BitVector::from_word(self.len(), self.slices[j])
    }

    pub fn get(&self, p: usize) -> UaElement {
        let mut coeffs = 0u8;
        for j in 0..self.depth() {
            coeffs |= ((self.slices[j] >> p & 1) as u8) << j;
        }
        UaElement { coeffs, a: self.a }
    }

    pub fn elements(&self) -> Vec<UaElement> {
        (0..self.len()).map(|p| self.get(p)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(|&s| s == 0)
    }

    fn check(&self, other: &UaVector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        if self.a != other.a {
            return Err(Error::LengthMismatch {
                expected: self.depth(),
                found: other.depth(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &UaVector) -> Result<UaVector> {
        self.check(other)?;
        Ok(self.xor(other))
    }

    fn xor(&self, other: &UaVector) -> UaVector {
        let mut out = *self;
        for j in 0..MAX_LEVELS {
            out.slices[j] ^= other.slices[j];
        }
        out
    }

    /// Scalar multiple e·w.
    pub fn scale(&self, e: &UaElement) -> Result<UaVector> {
        if e.depth() != self.depth() {
            return Err(Error::LengthMismatch {
                expected: self.depth(),
                found: e.depth(),
            });
        }
        let a = self.depth();
        let mut out = UaVector::zero(self.len(), a);
        for s in 0..a {
            if e.coeff(s) {
                for j in 0..a - s {
                    out.slices[j + s] ^= self.slices[j];
                }
            }
        }
        Ok(out)
    }

    /// u·w: slices move up one degree, the top one vanishes.
    pub fn shift(&self) -> UaVector {
        let a = self.depth();
        let mut out = UaVector::zero(self.len(), a);
        for j in 1..a {
            out.slices[j] = self.slices[j - 1];
        }
        out
    }

    /// The residue of Φ(w) modulo 2^a; its bit slices are those of w.
    pub fn residue(&self) -> Residue {
        Residue::from_slices(&self.slices[..self.depth()])
    }
}

impl fmt::Display for UaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for p in 0..self.len() {
            if p > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.get(p))?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for UaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for UaVector {
    type Err = Error;

    /// Whitespace-separated coefficient strings, e.g. `110 111`.
    fn from_str(s: &str) -> Result<Self> {
        let elements = s
            .split_whitespace()
            .map(UaElement::parse)
            .collect::<Result<Vec<_>>>()?;
        let a = elements.first().map_or(1, UaElement::depth);
        UaVector::from_elements(&elements, a)
    }
}

/// Slice-wise product w ∗ z = Σ (w_j ∗ z_j) u^j.
pub fn schur_ua(w: &UaVector, z: &UaVector) -> Result<UaVector> {
    w.check(z)?;
    let mut out = *w;
    for j in 0..MAX_LEVELS {
        out.slices[j] &= z.slices[j];
    }
    Ok(out)
}

/// (c_1 ∗ c_2)u.
pub fn shifted_schur(c1: &UaVector, c2: &UaVector) -> Result<UaVector> {
    Ok(schur_ua(c1, c2)?.shift())
}

/// Φ(w) = Σ ψ(w_j) 2^j, entries in [0, 2^a).
pub fn phi(w: &UaVector) -> IntVector {
    IntVector::new((0..w.len()).map(|p| w.get(p).phi()).collect())
}

/// The code {dG : d ∈ U_a^k} of a generator matrix G.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UaCode {
    n: usize,
    a: usize,
    gen: Vec<UaVector>,
}

impl UaCode {
    pub fn new(n: usize, a: usize, gen: Vec<UaVector>) -> Result<Self> {
        check_depth(a)?;
        if n > MAX_LEN {
            return Err(Error::OutOfRange(format!("length {n} exceeds {MAX_LEN}")));
        }
        for g in &gen {
            if g.len() != n || g.depth() != a {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
        }
        Ok(UaCode { n, a, gen })
    }

    pub fn from_rows(a: usize, rows: &[&[u8]]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        let gen = rows
            .iter()
            .map(|r| {
                let els = r
                    .iter()
                    .map(|&c| UaElement::new(c, a))
                    .collect::<Result<Vec<_>>>()?;
                UaVector::from_elements(&els, a)
            })
            .collect::<Result<Vec<_>>>()?;
        UaCode::new(n, a, gen)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn depth(&self) -> usize {
        self.a
    }

    pub fn generators(&self) -> &[UaVector] {
        &self.gen
    }

    /// An F2-basis of the code: the code is the F2-span of u^j g for every
    /// generator g and 0 ≤ j < a.
    pub fn f2_basis(&self) -> Vec<UaVector> {
        let mut basis: Vec<(usize, UaVector)> = Vec::new();
        for g in &self.gen {
            let mut x = *g;
            for _ in 0..self.a {
                let mut r = x;
                for (pivot, b) in &basis {
                    if bit_at(&r, *pivot) {
                        r = r.xor(b);
                    }
                }
                if let Some(p) = leading_bit(&r, self.a) {
                    for (_, b) in basis.iter_mut() {
                        if bit_at(b, p) {
                            *b = b.xor(&r);
                        }
                    }
                    basis.push((p, r));
                }
                x = x.shift();
            }
        }
        basis.sort_by_key(|(p, _)| *p);
        basis.into_iter().map(|(_, b)| b).collect()
    }

    /// log2 of the number of codewords.
    pub fn f2_dim(&self) -> usize {
        self.f2_basis().len()
    }
}

fn bit_at(v: &UaVector, pos: usize) -> bool {
    v.slices[pos / MAX_LEN] >> (pos % MAX_LEN) & 1 == 1
}

fn leading_bit(v: &UaVector, a: usize) -> Option<usize> {
    (0..a)
        .find(|&j| v.slices[j] != 0)
        .map(|j| j * MAX_LEN + v.slices[j].trailing_zeros() as usize)
}

/// All codewords, sorted and distinct. Guarded by log2|C| ≤ 20.
pub fn enumerate_ua(code: &UaCode) -> Result<Vec<UaVector>> {
    enumerate_ua_with_limit(code, MAX_ENUM_DIM)
}

pub fn enumerate_ua_with_limit(code: &UaCode, max_dim: usize) -> Result<Vec<UaVector>> {
    let basis = code.f2_basis();
    let k = basis.len();
    if k > max_dim {
        return Err(Error::CodeTooLarge { dim: k, max_dim });
    }
    let mut out = Vec::with_capacity(1 << k);
    let mut c = UaVector::zero(code.n, code.a);
    out.push(c);
    for i in 1u64..(1u64 << k) {
        c = c.xor(&basis[i.trailing_zeros() as usize]);
        out.push(c);
    }
    out.sort_unstable();
    Ok(out)
}

/// Default cap on |C| for the all-pairs shifted Schur check.
pub const MAX_PAIR_WORDS: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedSchurCheck {
    pub closed: bool,
    /// c_1, c_2 ∈ C with (c_1 ∗ c_2)u ∉ C.
    pub witness: Option<(UaVector, UaVector)>,
}

/// Checks every ordered pair of codewords, in sorted order.
pub fn is_shifted_schur_closed(code: &UaCode) -> Result<ShiftedSchurCheck> {
    is_shifted_schur_closed_with_limit(code, MAX_PAIR_WORDS)
}

pub fn is_shifted_schur_closed_with_limit(code: &UaCode, max_words: usize) -> Result<ShiftedSchurCheck> {
    let words = enumerate_ua(code)?;
    if words.len() > max_words {
        return Err(Error::GuardExceeded {
            what: "shifted Schur pair check",
            limit: max_words as u64,
        });
    }
    for (i, x) in words.iter().enumerate() {
        for y in &words[i..] {
            let p = schur_ua(x, y)?.shift();
            if words.binary_search(&p).is_err() {
                return Ok(ShiftedSchurCheck {
                    closed: false,
                    witness: Some((*x, *y)),
                });
            }
        }
    }
    Ok(ShiftedSchurCheck {
        closed: true,
        witness: None,
    })
}

/// Γ_A′ = Φ(C) + 2^aZ^n as residues, and the smallest lattice containing it.
pub fn construction_a_prime(code: &UaCode) -> Result<(CosetSet, Lattice)> {
    let words = enumerate_ua(code)?;
    let gamma = CosetSet::new(code.n, code.a, words.iter().map(UaVector::residue))?;
    let mut b = HnfBuilder::new(code.n);
    for i in 0..code.n {
        b.insert(IntVector::unit(code.n, i, 1 << code.a).as_slice())?;
    }
    for w in &words {
        b.insert(phi(w).as_slice())?;
    }
    Ok((gamma, b.finish()?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APrimeLatticeReport {
    pub gamma_is_subgroup: bool,
    pub shifted_schur_closed: bool,
    pub subgroup_witness: Option<(IntVector, IntVector)>,
    pub schur_witness: Option<(UaVector, UaVector)>,
}

/// Runs the subgroup test on Φ(C) and the shifted Schur closure test
/// separately; fails with `EquivalenceViolation` if they disagree.
pub fn a_prime_lattice_check(code: &UaCode) -> Result<APrimeLatticeReport> {
    let words = enumerate_ua(code)?;
    let gamma = CosetSet::new(code.n, code.a, words.iter().map(UaVector::residue))?;
    let sub = is_subgroup(&gamma);
    let closed = is_shifted_schur_closed(code)?;
    if sub.is_subgroup != closed.closed {
        return Err(Error::EquivalenceViolation(format!(
            "gamma_is_subgroup={} shifted_schur_closed={}",
            sub.is_subgroup, closed.closed
        )));
    }
    Ok(APrimeLatticeReport {
        gamma_is_subgroup: sub.is_subgroup,
        shifted_schur_closed: closed.closed,
        subgroup_witness: sub.witness,
        schur_witness: closed.witness,
    })
}

/// Checks Φ(c_1) + Φ(c_2) − Φ(c_1 + c_2) = Φ((c_1 ∗ c_2)u) + 2^a l and
/// returns l.
pub fn phi_sum_identity(c1: &UaVector, c2: &UaVector) -> Result<(bool, IntVector)> {
    let sum = c1.add(c2)?;
    let lhs = phi(c1).checked_add(&phi(c2))?.checked_sub(&phi(&sum))?;
    let diff = lhs.checked_sub(&phi(&shifted_schur(c1, c2)?))?;
    let m = 1i64 << c1.depth();
    let holds = diff.as_slice().iter().all(|x| x.rem_euclid(m) == 0);
    let l = IntVector::new(diff.as_slice().iter().map(|x| x.div_euclid(m)).collect());
    Ok((holds, l))
}

/// The U_a code with generator rows u^i b for each basis vector b in block i,
/// so that Φ(C) + 2^aZ^n is the code-formula set of the chain.
pub fn chain_to_ua_code(chain: &NestedChain, basis: &ChainBasis) -> Result<UaCode> {
    basis.check_against(chain)?;
    let a = chain.levels();
    let mut gen = Vec::with_capacity(chain.total_dim());
    for i in 0..a {
        for b in basis.block(i) {
            gen.push(UaVector::monomial(b, i, a)?);
        }
    }
    UaCode::new(chain.len(), a, gen)
}

impl fmt::Display for UaCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} a={}", self.n, self.a)?;
        for g in &self.gen {
            let row: Vec<String> = g.elements().iter().map(UaElement::coeff_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
