use std::fmt;

use super::bitvec::{BitVector, Span, MAX_LEN};
use crate::error::{Error, Result};

/// Largest code dimension that may be enumerated codeword by codeword.
pub const MAX_ENUM_DIM: usize = 20;

/// A binary linear code held by its reduced row-echelon basis.
///
/// Pivots are leading (lowest-index) positions, strictly increasing down the
/// basis, and each pivot column carries a single 1. Equality of codes is
/// equality of these canonical bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    n: usize,
    basis: Vec<BitVector>,
}

/// Row-reduces `rows` (all of length `n`) to the canonical basis of their span.
pub fn rref(n: usize, rows: &[BitVector]) -> Result<(BinaryCode, usize)> {
    if n > MAX_LEN {
        return Err(Error::OutOfRange(format!("code length {n} > {MAX_LEN}")));
    }
    for r in rows {
        if r.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: r.len(),
            });
        }
    }
    let mut work: Vec<u64> = rows.iter().map(BitVector::word).filter(|&w| w != 0).collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(found) = (rank..work.len()).find(|&r| work[r] >> col & 1 == 1) else {
            continue;
        };
        work.swap(rank, found);
        let pivot_row = work[rank];
        for (r, row) in work.iter_mut().enumerate() {
            if r != rank && *row >> col & 1 == 1 {
                *row ^= pivot_row;
            }
        }
        rank += 1;
    }
    work.truncate(rank);
    let basis = work.into_iter().map(|w| BitVector::from_word(n, w)).collect();
    Ok((BinaryCode { n, basis }, rank))
}

impl BinaryCode {
    pub fn from_rows(n: usize, rows: &[BitVector]) -> Result<Self> {
        rref(n, rows).map(|(c, _)| c)
    }

    /// Convenience constructor from 0/1 strings.
    pub fn from_strs(n: usize, rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<BitVector>>>()?;
        BinaryCode::from_rows(n, &rows)
    }

    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_LEN);
        BinaryCode { n, basis: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_LEN);
        BinaryCode {
            n,
            basis: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.n
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().map(|b| b.leading_position().unwrap())
    }

    /// Membership by reduction against the canonical basis.
    pub fn contains(&self, v: &BitVector) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut w = *v;
        for row in &self.basis {
            if w.get(row.leading_position().unwrap()) {
                w = w.xor(row);
            }
        }
        w.is_zero()
    }

    pub fn is_subcode_of(&self, other: &BinaryCode) -> bool {
        self.n == other.n && self.basis.iter().all(|b| other.contains(b))
    }

    /// Codeword for message index `t`, whose binary digits are the message
    /// bits with the first basis vector as the most significant digit.
    pub fn encode_index(&self, t: u64) -> BitVector {
        let k = self.dim();
        let mut c = BitVector::zero(self.n);
        for (j, row) in self.basis.iter().enumerate() {
            if t >> (k - 1 - j) & 1 == 1 {
                c = c.xor(row);
            }
        }
        c
    }

    /// All 2^k codewords, lexicographic over message tuples.
    pub fn codewords(&self) -> Result<Vec<BitVector>> {
        self.codewords_with_limit(MAX_ENUM_DIM)
    }

    pub fn codewords_with_limit(&self, max_dim: usize) -> Result<Vec<BitVector>> {
        let k = self.dim();
        if k > max_dim {
            return Err(Error::CodeTooLarge { dim: k, max_dim });
        }
        // Gray-code walk, then place each word at its message index.
        let mut out = vec![BitVector::zero(self.n); 1usize << k];
        let mut c = BitVector::zero(self.n);
        let mut gray = 0u64;
        for i in 1u64..(1u64 << k) {
            let bit = i.trailing_zeros() as usize;
            gray ^= 1 << bit;
            c = c.xor(&self.basis[k - 1 - bit]);
            out[gray as usize] = c;
        }
        Ok(out)
    }

    /// Minimum nonzero weight; `None` stands for +∞ (the zero code).
    pub fn min_distance(&self) -> Result<Option<u32>> {
        let words = self.codewords()?;
        Ok(words.iter().filter(|c| !c.is_zero()).map(BitVector::weight).min())
    }

    /// The dual code {x : x·c = 0 for all c}.
    pub fn dual(&self) -> BinaryCode {
        let pivots: Vec<usize> = self.pivots().collect();
        let mut rows = Vec::with_capacity(self.n - self.dim());
        for f in (0..self.n).filter(|c| !pivots.contains(c)) {
            let mut h = BitVector::unit(self.n, f);
            for (row, &p) in self.basis.iter().zip(&pivots) {
                if row.get(f) {
                    h.set(p, true);
                }
            }
            rows.push(h);
        }
        BinaryCode::from_rows(self.n, &rows).expect("rows have length n")
    }

    /// Smallest code containing both.
    pub fn sum(&self, other: &BinaryCode) -> Result<BinaryCode> {
        let rows: Vec<BitVector> = self.basis.iter().chain(&other.basis).copied().collect();
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        BinaryCode::from_rows(self.n, &rows)
    }

    /// span{x ∗ y : x ∈ self, y ∈ other}, via basis pairs (∗ is bilinear).
    pub fn schur_span(&self, other: &BinaryCode) -> Result<BinaryCode> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut span = Span::new(self.n);
        let mut rows = Vec::new();
        for x in &self.basis {
            for y in &other.basis {
                let p = x.and(y);
                if span.insert(&p) {
                    rows.push(p);
                }
            }
        }
        BinaryCode::from_rows(self.n, &rows)
    }
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for row in &self.basis {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        write!(f, "BinaryCode[n={}, k={}]{:?}", self.n, self.dim(), rows)
    }
}

/// Reed–Muller code RM(r, m): evaluations of multilinear monomials of degree
/// ≤ r at the points of F2^m. Coordinate `p` is the point whose variable
/// `x_i` equals bit `i` of `p`.
pub fn reed_muller(r: usize, m: usize) -> Result<BinaryCode> {
    if m > 6 || r > m {
        return Err(Error::OutOfRange(format!(
            "Reed-Muller parameters need 0 ≤ r ≤ m ≤ 6, got r={r}, m={m}"
        )));
    }
    let n = 1usize << m;
    let rows: Vec<BitVector> = (0u32..(1 << m))
        .filter(|mono| mono.count_ones() as usize <= r)
        .map(|mono| {
            let mut word = 0u64;
            for p in 0..n as u32 {
                if p & mono == mono {
                    word |= 1 << p;
                }
            }
            BitVector::from_word(n, word)
        })
        .collect();
    BinaryCode::from_rows(n, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn rref_identity_and_duplicates() {
        let id: Vec<BitVector> = (0..5).map(|i| BitVector::unit(5, i)).collect();
        let (c, rank) = rref(5, &id).unwrap();
        assert_eq!(rank, 5);
        assert_eq!(c, BinaryCode::full(5));

        let (_, rank) = rref(4, &[bv("1100"), bv("1100")]).unwrap();
        assert_eq!(rank, 1);

        let (c, rank) = rref(4, &[bv("1100"), bv("1010"), bv("1001")]).unwrap();
        assert_eq!(rank, 3);
        let again = BinaryCode::from_rows(4, c.basis()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn rref_rejects_mismatched_rows() {
        assert!(matches!(
            rref(4, &[bv("1100"), bv("101")]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn rref_canonical_form_shape() {
        let (c, _) = rref(6, &[bv("011010"), bv("110011"), bv("101001")]).unwrap();
        let pivots: Vec<usize> = c.pivots().collect();
        assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        for (i, &p) in pivots.iter().enumerate() {
            for (j, row) in c.basis().iter().enumerate() {
                assert_eq!(row.get(p), i == j);
            }
        }
    }

    #[test]
    fn enumerate_small_codes() {
        assert_eq!(BinaryCode::zero(3).codewords().unwrap(), vec![BitVector::zero(3)]);
        let mut all: Vec<String> = BinaryCode::full(2)
            .codewords()
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        all.sort();
        assert_eq!(all, ["00", "01", "10", "11"]);
    }

    #[test]
    fn enumerate_even_weight_code_by_brute_force() {
        let c = BinaryCode::from_strs(4, &["1100", "1010", "1001"]).unwrap();
        let mut words = c.codewords().unwrap();
        words.sort();
        // brute-force closure of the three generators under addition
        let gens = [bv("1100"), bv("1010"), bv("1001")];
        let mut expect: Vec<BitVector> = (0..8u32)
            .map(|m| {
                (0..3).fold(BitVector::zero(4), |acc, j| {
                    if m >> j & 1 == 1 {
                        acc.xor(&gens[j])
                    } else {
                        acc
                    }
                })
            })
            .collect();
        expect.sort();
        expect.dedup();
        assert_eq!(words, expect);
        assert!(words.iter().all(|w| w.weight() % 2 == 0));
    }

    #[test]
    fn codeword_order_is_message_lexicographic() {
        let c = BinaryCode::from_strs(3, &["100", "010"]).unwrap();
        let w: Vec<String> = c.codewords().unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(w, ["000", "010", "100", "110"]);
        for t in 0..4 {
            assert_eq!(c.encode_index(t), c.codewords().unwrap()[t as usize]);
        }
    }

    #[test]
    fn enumeration_guard() {
        let c = BinaryCode::full(21);
        assert!(matches!(c.codewords(), Err(Error::CodeTooLarge { dim: 21, .. })));
    }

    #[test]
    fn min_distance_cases() {
        assert_eq!(BinaryCode::full(5).min_distance().unwrap(), Some(1));
        let rep = BinaryCode::from_rows(7, &[BitVector::ones(7)]).unwrap();
        assert_eq!(rep.min_distance().unwrap(), Some(7));
        assert_eq!(BinaryCode::zero(4).min_distance().unwrap(), None);
        assert_eq!(reed_muller(1, 4).unwrap().min_distance().unwrap(), Some(8));
    }

    #[test]
    fn reed_muller_small_cases() {
        let rep = reed_muller(0, 3).unwrap();
        assert_eq!(rep.dim(), 1);
        assert_eq!(rep.basis()[0], BitVector::ones(8));
        assert_eq!(reed_muller(3, 3).unwrap(), BinaryCode::full(8));
        let rm13 = reed_muller(1, 3).unwrap();
        assert_eq!(rm13.dim(), 4);
        // brute-force weight enumeration
        let d = (1u64..16)
            .map(|t| rm13.encode_index(t).weight())
            .min()
            .unwrap();
        assert_eq!(d, 4);
        assert!(reed_muller(4, 3).is_err());
        assert!(reed_muller(2, 7).is_err());
    }

    #[test]
    fn dual_of_example_codes() {
        let c0 = BinaryCode::from_strs(4, &["1100", "1010"]).unwrap();
        let d = c0.dual();
        assert_eq!(d.dim(), 2);
        for h in d.basis() {
            for c in c0.basis() {
                assert!(!h.dot(c).unwrap());
            }
        }
        assert_eq!(d.dual(), c0);
        assert_eq!(BinaryCode::full(3).dual(), BinaryCode::zero(3));
    }
}
