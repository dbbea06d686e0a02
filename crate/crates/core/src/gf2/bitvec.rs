use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::zlattice::IntVector;

/// Longest supported code length; one machine word per vector.
pub const MAX_LEN: usize = 64;

/// A vector in F2^n, n ≤ 64. Position `i` lives in bit `i` of the word.
///
/// Ordering is the lexicographic order of the 0/1 strings (position 0 first),
/// with shorter vectors sorting before longer ones.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVector {
    bits: u64,
    len: u8,
}

#[inline]
pub(crate) fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl BitVector {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_LEN, "bit vector length {len} exceeds {MAX_LEN}");
        BitVector { bits: 0, len: len as u8 }
    }

    pub fn ones(len: usize) -> Self {
        BitVector::from_word(len, mask(len))
    }

    pub fn unit(len: usize, i: usize) -> Self {
        assert!(i < len);
        BitVector::from_word(len, 1u64 << i)
    }

    /// Builds a vector from a word; bits at positions ≥ `len` are discarded.
    pub fn from_word(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_LEN, "bit vector length {len} exceeds {MAX_LEN}");
        BitVector {
            bits: bits & mask(len),
            len: len as u8,
        }
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.len() > MAX_LEN {
            return Err(Error::OutOfRange(format!("length {} > {MAX_LEN}", bits.len())));
        }
        let mut word = 0u64;
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => word |= 1 << i,
                _ => return Err(Error::OutOfRange(format!("entry {b} is not a bit"))),
            }
        }
        Ok(BitVector::from_word(bits.len(), word))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn word(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        self.bits >> i & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len());
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Index of the first nonzero position.
    #[inline]
    pub fn leading_position(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    fn check_len(&self, other: &BitVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    /// Sum over F2.
    pub fn add(&self, other: &BitVector) -> Result<BitVector> {
        self.check_len(other)?;
        Ok(self.xor(other))
    }

    /// Componentwise (Schur) product.
    pub fn schur(&self, other: &BitVector) -> Result<BitVector> {
        self.check_len(other)?;
        Ok(self.and(other))
    }

    /// Inner product over F2.
    pub fn dot(&self, other: &BitVector) -> Result<bool> {
        self.check_len(other)?;
        Ok((self.bits & other.bits).count_ones() & 1 == 1)
    }

    #[inline]
    pub(crate) fn xor(&self, other: &BitVector) -> BitVector {
        debug_assert_eq!(self.len, other.len);
        BitVector {
            bits: self.bits ^ other.bits,
            len: self.len,
        }
    }

    #[inline]
    pub(crate) fn and(&self, other: &BitVector) -> BitVector {
        debug_assert_eq!(self.len, other.len);
        BitVector {
            bits: self.bits & other.bits,
            len: self.len,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// The natural embedding into Z^n (0 ↦ 0, 1 ↦ 1).
    pub fn psi(&self) -> IntVector {
        IntVector::new(self.iter().map(i64::from).collect())
    }
}

/// The natural embedding F2^n → Z^n.
pub fn psi(x: &BitVector) -> IntVector {
    x.psi()
}

impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            let diff = self.bits ^ other.bits;
            if diff == 0 {
                Ordering::Equal
            } else if self.bits >> diff.trailing_zeros() & 1 == 1 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        })
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    /// Parses a contiguous 0/1 string such as `1100`.
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::OutOfRange(format!("character {c:?} is not a bit"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        BitVector::from_bits(&bits)
    }
}

/// Incremental span over F2, rows stored by their leading position.
#[derive(Clone, Debug)]
pub(crate) struct Span {
    len: usize,
    slots: Vec<Option<u64>>,
    rank: usize,
}

impl Span {
    pub(crate) fn new(len: usize) -> Self {
        Span {
            len,
            slots: vec![None; len],
            rank: 0,
        }
    }

    pub(crate) fn reduce(&self, v: u64) -> u64 {
        let mut v = v;
        for p in 0..self.len {
            if v >> p & 1 == 1 {
                if let Some(row) = self.slots[p] {
                    v ^= row;
                }
            }
        }
        v
    }

    pub(crate) fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v.word()) == 0
    }

    /// Inserts `v`; returns false if it was already in the span.
    pub(crate) fn insert(&mut self, v: &BitVector) -> bool {
        let r = self.reduce(v.word());
        if r == 0 {
            return false;
        }
        self.slots[r.trailing_zeros() as usize] = Some(r);
        self.rank += 1;
        true
    }

    pub(crate) fn rank(&self) -> usize {
        self.rank
    }
}
