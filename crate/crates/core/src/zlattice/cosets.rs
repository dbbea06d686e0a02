use std::collections::HashSet;
use std::fmt;

use super::hnf::{HnfBuilder, Lattice};
use super::vector::IntVector;
use crate::error::{Error, Result};
use crate::gf2::{mask, BitVector, MAX_LEVELS};

/// Default cap on the size of residue sets built by closure or enumeration.
pub const MAX_CLOSURE: usize = 1 << 20;

/// An element of (Z/2^a Z)^n in bit-sliced form: slice `t` holds bit `t` of
/// every entry, one position per bit. Slices at index ≥ a are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Residue {
    slices: [u64; MAX_LEVELS],
}

impl Residue {
    pub const ZERO: Residue = Residue {
        slices: [0; MAX_LEVELS],
    };

    pub fn from_slices(slices: &[u64]) -> Self {
        assert!(slices.len() <= MAX_LEVELS);
        let mut r = Residue::ZERO;
        r.slices[..slices.len()].copy_from_slice(slices);
        r
    }

    pub fn slices(&self) -> &[u64; MAX_LEVELS] {
        &self.slices
    }

    pub fn slice(&self, t: usize) -> u64 {
        self.slices[t]
    }

    /// Reduces `v` modulo 2^bits.
    pub fn from_vector(v: &IntVector, bits: usize) -> Self {
        assert!(bits <= MAX_LEVELS && v.len() <= 64);
        let m = 1i64 << bits;
        let mut r = Residue::ZERO;
        for (i, &x) in v.as_slice().iter().enumerate() {
            let x = x.rem_euclid(m);
            for t in 0..bits {
                if x >> t & 1 == 1 {
                    r.slices[t] |= 1 << i;
                }
            }
        }
        r
    }

    /// Representative with entries in [0, 2^bits).
    pub fn to_vector(&self, n: usize) -> IntVector {
        IntVector::new(
            (0..n)
                .map(|i| {
                    (0..MAX_LEVELS)
                        .map(|t| ((self.slices[t] >> i & 1) as i64) << t)
                        .sum()
                })
                .collect(),
        )
    }

    /// Sum modulo 2^bits: ripple carry across slices. The carry out of slice
    /// t is exactly the Schur product of the summands there.
    pub fn add(&self, other: &Residue, bits: usize) -> Residue {
        let mut out = Residue::ZERO;
        let mut carry = 0u64;
        for t in 0..bits {
            let (x, y) = (self.slices[t], other.slices[t]);
            out.slices[t] = x ^ y ^ carry;
            carry = (x & y) | (carry & (x ^ y));
        }
        out
    }

    pub fn neg(&self, n: usize, bits: usize) -> Residue {
        let m = mask(n);
        let mut flipped = Residue::ZERO;
        for t in 0..bits {
            flipped.slices[t] = !self.slices[t] & m;
        }
        let mut one = Residue::ZERO;
        if bits > 0 {
            one.slices[0] = m;
        }
        flipped.add(&one, bits)
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(|&s| s == 0)
    }

    /// Slice `t` as a binary vector of length n.
    pub fn slice_vector(&self, t: usize, n: usize) -> BitVector {
        BitVector::from_word(n, self.slices[t])
    }
}

/// A finite subset S of (Z/2^a Z)^n standing for the point set S + 2^a Z^n.
#[derive(Clone, PartialEq, Eq)]
pub struct CosetSet {
    n: usize,
    bits: usize,
    reps: Vec<Residue>,
}

impl CosetSet {
    pub fn new(n: usize, bits: usize, reps: impl IntoIterator<Item = Residue>) -> Result<Self> {
        if n > 64 {
            return Err(Error::OutOfRange(format!("length {n} > 64")));
        }
        if bits == 0 || bits > MAX_LEVELS {
            return Err(Error::OutOfRange(format!(
                "modulus 2^{bits} outside 2^1..=2^{MAX_LEVELS}"
            )));
        }
        let m = mask(n);
        let mut reps: Vec<Residue> = reps.into_iter().collect();
        for r in &reps {
            if r.slices.iter().enumerate().any(|(t, &s)| s & !m != 0 || (t >= bits && s != 0)) {
                return Err(Error::OutOfRange("residue outside (Z/2^a)^n".into()));
            }
        }
        reps.sort_unstable();
        reps.dedup();
        Ok(CosetSet { n, bits, reps })
    }

    /// Reduces each vector modulo 2^bits.
    pub fn from_vectors(n: usize, bits: usize, vectors: &[IntVector]) -> Result<Self> {
        for v in vectors {
            if v.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        CosetSet::new(n, bits, vectors.iter().map(|v| Residue::from_vector(v, bits)))
    }

    /// All of (Z/2^a)^n; only sensible for tiny n·a.
    pub fn full(n: usize, bits: usize) -> Result<Self> {
        let total = n * bits;
        if total > 20 {
            return Err(Error::GuardExceeded {
                what: "full residue group",
                limit: MAX_CLOSURE as u64,
            });
        }
        let reps = (0u64..(1 << total)).map(|code| {
            let mut r = Residue::ZERO;
            for i in 0..n {
                for t in 0..bits {
                    if code >> (i * bits + t) & 1 == 1 {
                        r.slices[t] |= 1 << i;
                    }
                }
            }
            r
        });
        CosetSet::new(n, bits, reps)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// a, with modulus 2^a.
    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn modulus(&self) -> i64 {
        1 << self.bits
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn residues(&self) -> &[Residue] {
        &self.reps
    }

    pub fn contains(&self, r: &Residue) -> bool {
        self.reps.binary_search(r).is_ok()
    }

    pub fn contains_vector(&self, v: &IntVector) -> bool {
        v.len() == self.n && self.contains(&Residue::from_vector(v, self.bits))
    }

    /// Representatives in [0, 2^a)^n, sorted lexicographically.
    pub fn vectors(&self) -> Vec<IntVector> {
        let mut v: Vec<IntVector> = self.reps.iter().map(|r| r.to_vector(self.n)).collect();
        v.sort();
        v
    }

    pub fn is_subset_of(&self, other: &CosetSet) -> bool {
        self.n == other.n && self.bits == other.bits && self.reps.iter().all(|r| other.contains(r))
    }
}

impl fmt::Debug for CosetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CosetSet[n={}, mod={}, size={}]", self.n, self.modulus(), self.len())
    }
}

struct Closure {
    elements: Vec<Residue>,
    generators: Vec<Residue>,
    complete: bool,
}

/// Closure of `seeds` under addition, built coset by coset: adjoining s to a
/// subgroup H adds H + s, H + 2s, … until a multiple of s falls back into H.
/// Stops (incomplete) once the group would exceed `limit` elements. The seeds
/// that enlarged the group are kept, in order.
fn closure(bits: usize, seeds: impl IntoIterator<Item = Residue>, limit: usize) -> Closure {
    let mut elements = vec![Residue::ZERO];
    let mut seen: HashSet<Residue> = HashSet::from([Residue::ZERO]);
    let mut generators = Vec::new();
    for s in seeds {
        if seen.contains(&s) {
            continue;
        }
        generators.push(s);
        let old = elements.len();
        let mut t = s;
        while !seen.contains(&t) {
            if elements.len() + old > limit {
                return Closure {
                    elements,
                    generators,
                    complete: false,
                };
            }
            for h in 0..old {
                let x = elements[h].add(&t, bits);
                seen.insert(x);
                elements.push(x);
            }
            t = t.add(&s, bits);
        }
    }
    Closure {
        elements,
        generators,
        complete: true,
    }
}

/// Smallest subgroup of (Z/2^a)^n containing S.
pub fn subgroup_closure(s: &CosetSet) -> Result<CosetSet> {
    subgroup_closure_with_limit(s, MAX_CLOSURE)
}

pub fn subgroup_closure_with_limit(s: &CosetSet, limit: usize) -> Result<CosetSet> {
    let c = closure(s.bits, s.reps.iter().copied(), limit);
    if !c.complete {
        return Err(Error::ClosureTooLarge { limit });
    }
    CosetSet::new(s.n, s.bits, c.elements)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupCheck {
    pub is_subgroup: bool,
    /// u, v ∈ S with u + v ∉ S.
    pub witness: Option<(IntVector, IntVector)>,
}

/// Whether S is an additive subgroup of (Z/2^a)^n.
///
/// Decided by comparing S with its closure (abandoned as soon as it outgrows
/// S). The witness search pairs the elements of S that enlarged the closure
/// with all of S, in sorted order: if every such translate kept S inside
/// itself, S would be a union of cosets of a group larger than S, so a
/// failing pair always turns up.
pub fn is_subgroup(s: &CosetSet) -> SubgroupCheck {
    if s.is_empty() {
        return SubgroupCheck {
            is_subgroup: false,
            witness: None,
        };
    }
    let c = closure(s.bits, s.reps.iter().copied(), s.len());
    if c.complete && c.elements.len() == s.len() {
        return SubgroupCheck {
            is_subgroup: true,
            witness: None,
        };
    }
    for g in &c.generators {
        for v in &s.reps {
            if !s.contains(&g.add(v, s.bits)) {
                return SubgroupCheck {
                    is_subgroup: false,
                    witness: Some((g.to_vector(s.n), v.to_vector(s.n))),
                };
            }
        }
    }
    unreachable!("a set that is not a subgroup always has a failing translate")
}

/// The lattice S + 2^a Z^n for a subgroup S.
pub fn lattice_from_cosets(s: &CosetSet) -> Result<Lattice> {
    if s.is_empty() {
        return Err(Error::NotASubgroup);
    }
    let c = closure(s.bits, s.reps.iter().copied(), s.len());
    if !c.complete || c.elements.len() != s.len() {
        return Err(Error::NotASubgroup);
    }
    let mut b = HnfBuilder::new(s.n);
    for i in 0..s.n {
        b.insert(IntVector::unit(s.n, i, s.modulus()).as_slice())?;
    }
    for g in c.generators {
        b.insert(g.to_vector(s.n).as_slice())?;
    }
    b.finish()
}

/// Residues of L modulo 2^bits, for L ⊇ 2^bits Z^n.
pub fn cosets_of_lattice(l: &Lattice, bits: usize) -> Result<CosetSet> {
    cosets_of_lattice_with_limit(l, bits, MAX_CLOSURE)
}

pub fn cosets_of_lattice_with_limit(l: &Lattice, bits: usize, limit: usize) -> Result<CosetSet> {
    if bits == 0 || bits > MAX_LEVELS {
        return Err(Error::OutOfRange(format!("modulus 2^{bits}")));
    }
    let m = 1i64 << bits;
    if !l.contains_scaled_integers(m)? {
        return Err(Error::MissingScaledIntegers { modulus: m as u64 });
    }
    let n = l.dim();
    let seeds: Vec<Residue> = l.basis().iter().map(|r| Residue::from_vector(r, bits)).collect();
    let c = closure(bits, seeds, limit);
    if !c.complete {
        return Err(Error::ClosureTooLarge { limit });
    }
    CosetSet::new(n, bits, c.elements)
}
