use std::fmt;

use super::bitvec::{BitVector, Span};
use super::code::BinaryCode;
use crate::error::{Error, Result};

/// Most explicit levels a chain may carry.
pub const MAX_LEVELS: usize = 6;

/// Nested codes C_0 ⊆ C_1 ⊆ … ⊆ C_{a-1}. The top level C_a = F2^n is implicit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NestedChain {
    n: usize,
    codes: Vec<BinaryCode>,
}

impl NestedChain {
    pub fn new(codes: Vec<BinaryCode>) -> Result<Self> {
        if codes.is_empty() || codes.len() > MAX_LEVELS {
            return Err(Error::OutOfRange(format!(
                "chain needs 1..={MAX_LEVELS} levels, got {}",
                codes.len()
            )));
        }
        let n = codes[0].len();
        for c in &codes {
            if c.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: c.len(),
                });
            }
        }
        for (i, w) in codes.windows(2).enumerate() {
            if !w[0].is_subcode_of(&w[1]) {
                return Err(Error::NotNested { level: i });
            }
        }
        Ok(NestedChain { n, codes })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of explicit levels `a`.
    pub fn levels(&self) -> usize {
        self.codes.len()
    }

    pub fn codes(&self) -> &[BinaryCode] {
        &self.codes
    }

    pub fn code(&self, i: usize) -> &BinaryCode {
        &self.codes[i]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.codes.iter().map(BinaryCode::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.codes.iter().map(BinaryCode::dim).sum()
    }

    /// Level `i` of the chain with the implicit top: C_a = F2^n.
    pub fn code_or_full(&self, i: usize) -> BinaryCode {
        self.codes.get(i).cloned().unwrap_or_else(|| BinaryCode::full(self.n))
    }

    /// Levelwise inclusion C_i ⊆ other.C_i.
    pub fn is_levelwise_subchain_of(&self, other: &NestedChain) -> bool {
        self.n == other.n
            && self.levels() == other.levels()
            && self.codes.iter().zip(&other.codes).all(|(a, b)| a.is_subcode_of(b))
    }
}

impl fmt::Debug for NestedChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NestedChain[n={}, dims={:?}]", self.n, self.dims())
    }
}

/// A failing Schur pair: `left ∗ right = product ∉ C_{level+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurWitness {
    pub level: usize,
    pub left: BitVector,
    pub right: BitVector,
    pub product: BitVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurCheck {
    pub closed: bool,
    pub witness: Option<SchurWitness>,
}

/// Decides whether C_i ∗ C_i ⊆ C_{i+1} for every level.
///
/// Only canonical basis pairs are checked: (x + x') ∗ y = x ∗ y + x' ∗ y, so
/// closure on a basis gives closure on the span. The witness is the first
/// failing pair in (level, j, l) order with j ≤ l.
pub fn is_schur_closed(chain: &NestedChain) -> SchurCheck {
    for i in 0..chain.levels() {
        let next = chain.code_or_full(i + 1);
        if next.is_full() {
            continue;
        }
        let basis = chain.code(i).basis();
        for (j, x) in basis.iter().enumerate() {
            for y in &basis[j..] {
                let p = x.and(y);
                if !next.contains(&p) {
                    return SchurCheck {
                        closed: false,
                        witness: Some(SchurWitness {
                            level: i,
                            left: *x,
                            right: *y,
                            product: p,
                        }),
                    };
                }
            }
        }
    }
    SchurCheck {
        closed: true,
        witness: None,
    }
}

/// C'_0 = C_0 and C'_i = span(C_i ∪ C'_{i-1} ∗ C'_{i-1}).
pub fn schur_closure_chain(chain: &NestedChain) -> NestedChain {
    let mut codes: Vec<BinaryCode> = Vec::with_capacity(chain.levels());
    codes.push(chain.code(0).clone());
    for i in 1..chain.levels() {
        let prev = &codes[i - 1];
        let squares = prev.schur_span(prev).expect("equal lengths");
        codes.push(chain.code(i).sum(&squares).expect("equal lengths"));
    }
    NestedChain::new(codes).expect("closure chain is nested")
}

/// Ordered basis b_1..b_n of F2^n whose prefixes of length k_i span C_i.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ChainBasis {
    vectors: Vec<BitVector>,
    cut_points: Vec<usize>,
}

impl ChainBasis {
    /// Validates `vectors` against `chain`.
    pub fn new(chain: &NestedChain, vectors: Vec<BitVector>) -> Result<Self> {
        let n = chain.len();
        if vectors.len() != n {
            return Err(Error::InvalidBasis(format!(
                "expected {n} vectors, got {}",
                vectors.len()
            )));
        }
        let (full, rank) = super::code::rref(n, &vectors)?;
        if rank != n {
            return Err(Error::InvalidBasis(format!(
                "vectors have rank {rank}, not {n}"
            )));
        }
        debug_assert!(full.is_full());
        let cut_points = chain.dims();
        for (i, &k) in cut_points.iter().enumerate() {
            if BinaryCode::from_rows(n, &vectors[..k])? != *chain.code(i) {
                return Err(Error::InvalidBasis(format!(
                    "first {k} vectors do not span C_{i}"
                )));
            }
        }
        Ok(ChainBasis { vectors, cut_points })
    }

    /// For bases already known to be valid for the chain.
    pub(crate) fn from_parts(vectors: Vec<BitVector>, cut_points: Vec<usize>) -> Self {
        ChainBasis { vectors, cut_points }
    }

    /// Re-validates a basis against a chain it was not built from.
    pub fn check_against(&self, chain: &NestedChain) -> Result<()> {
        let n = chain.len();
        let ok = self.cut_points == chain.dims()
            && self.vectors.len() == n
            && self.vectors.iter().all(|v| v.len() == n)
            && (0..chain.levels())
                .all(|i| self.prefix(i).iter().all(|b| chain.code(i).contains(b)))
            && super::code::rref(n, &self.vectors)?.1 == n;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidBasis("basis does not belong to this chain".into()))
        }
    }

    pub fn vectors(&self) -> &[BitVector] {
        &self.vectors
    }

    /// k_0 ≤ k_1 ≤ … ≤ k_{a-1}.
    pub fn cut_points(&self) -> &[usize] {
        &self.cut_points
    }

    /// The basis vectors spanning C_i.
    pub fn prefix(&self, level: usize) -> &[BitVector] {
        &self.vectors[..self.cut_points[level]]
    }

    /// The vectors b_j with k_{i-1} < j ≤ k_i (k_{-1} = 0).
    pub fn block(&self, level: usize) -> &[BitVector] {
        let lo = if level == 0 { 0 } else { self.cut_points[level - 1] };
        &self.vectors[lo..self.cut_points[level]]
    }
}

fn greedy_chain_basis(n: usize, codes: &[BinaryCode]) -> (Vec<BitVector>, Vec<usize>) {
    let mut span = Span::new(n);
    let mut vectors = Vec::with_capacity(n);
    let mut cuts = Vec::with_capacity(codes.len());
    for code in codes {
        for b in code.basis() {
            if span.insert(b) {
                vectors.push(*b);
            }
        }
        cuts.push(vectors.len());
    }
    for i in 0..n {
        let e = BitVector::unit(n, i);
        if span.insert(&e) {
            vectors.push(e);
        }
    }
    debug_assert_eq!(span.rank(), n);
    (vectors, cuts)
}

/// The deterministic chain basis: canonical basis of C_0, extended by the
/// canonical basis vectors of C_1, C_2, … not yet in the span (lowest index
/// first), and finally by unit vectors.
pub fn chain_basis(chain: &NestedChain) -> ChainBasis {
    let (vectors, cut_points) = greedy_chain_basis(chain.len(), chain.codes());
    debug_assert_eq!(cut_points, chain.dims());
    ChainBasis { vectors, cut_points }
}

/// Ordered basis h_1..h_n of F2^n with C_i = {c : c·h_j = 0, j ≤ r_i}.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParityChainBasis {
    vectors: Vec<BitVector>,
    cut_points: Vec<usize>,
}

impl ParityChainBasis {
    pub fn new(chain: &NestedChain, vectors: Vec<BitVector>) -> Result<Self> {
        let n = chain.len();
        if vectors.len() != n {
            return Err(Error::InvalidBasis(format!(
                "expected {n} vectors, got {}",
                vectors.len()
            )));
        }
        let (_, rank) = super::code::rref(n, &vectors)?;
        if rank != n {
            return Err(Error::InvalidBasis(format!(
                "vectors have rank {rank}, not {n}"
            )));
        }
        let cut_points: Vec<usize> = chain.dims().iter().map(|k| n - k).collect();
        for (i, &r) in cut_points.iter().enumerate() {
            if BinaryCode::from_rows(n, &vectors[..r])? != chain.code(i).dual() {
                return Err(Error::InvalidBasis(format!(
                    "first {r} vectors do not check C_{i}"
                )));
            }
        }
        Ok(ParityChainBasis { vectors, cut_points })
    }

    pub fn vectors(&self) -> &[BitVector] {
        &self.vectors
    }

    /// r_0 ≥ r_1 ≥ … ≥ r_{a-1}; r_a = 0 is implicit.
    pub fn cut_points(&self) -> &[usize] {
        &self.cut_points
    }

    /// r_i with the convention r_a = 0.
    pub fn r(&self, level: usize) -> usize {
        self.cut_points.get(level).copied().unwrap_or(0)
    }
}

/// Chain basis of the dual chain C_{a-1}^⊥ ⊆ … ⊆ C_0^⊥, so that h_1..h_{r_i}
/// span C_i^⊥.
pub fn parity_chain_basis(chain: &NestedChain) -> ParityChainBasis {
    let duals: Vec<BinaryCode> = chain.codes().iter().rev().map(BinaryCode::dual).collect();
    let (vectors, mut cuts) = greedy_chain_basis(chain.len(), &duals);
    cuts.reverse();
    ParityChainBasis {
        vectors,
        cut_points: cuts,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceVariant {
    /// Bound 4^{a-i}/γ.
    D,
    /// Bound γ·4^{a-i-1}.
    DPrime,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDistance {
    pub level: usize,
    pub required: u64,
    /// `None` is +∞ (zero code).
    pub actual: Option<u32>,
    pub pass: bool,
}

/// Classical minimum-distance conditions, reported per level. Advisory: the
/// constructions never require them.
pub fn check_distance_conditions(
    chain: &NestedChain,
    gamma: u8,
    variant: DistanceVariant,
) -> Result<Vec<LevelDistance>> {
    if gamma != 1 && gamma != 2 {
        return Err(Error::OutOfRange(format!("gamma must be 1 or 2, got {gamma}")));
    }
    let a = chain.levels() as u32;
    let gamma = u64::from(gamma);
    chain
        .codes()
        .iter()
        .enumerate()
        .map(|(i, code)| {
            let i = i as u32;
            let required = match variant {
                DistanceVariant::D => 4u64.pow(a - i) / gamma,
                DistanceVariant::DPrime => gamma * 4u64.pow(a - i - 1),
            };
            let actual = code.min_distance()?;
            let pass = actual.is_none_or(|d| u64::from(d) >= required);
            Ok(LevelDistance {
                level: i as usize,
                required,
                actual,
                pass,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::reed_muller;

    fn example_chain() -> NestedChain {
        NestedChain::new(vec![
            BinaryCode::from_strs(4, &["1100", "1010"]).unwrap(),
            BinaryCode::from_strs(4, &["1100", "1010", "1001"]).unwrap(),
        ])
        .unwrap()
    }

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn chain_rejects_non_nested_codes() {
        let r = NestedChain::new(vec![
            BinaryCode::from_strs(4, &["1000"]).unwrap(),
            BinaryCode::from_strs(4, &["0100"]).unwrap(),
        ]);
        assert_eq!(r.unwrap_err(), Error::NotNested { level: 0 });
        assert!(NestedChain::new(vec![]).is_err());
        let seven = vec![BinaryCode::full(2); 7];
        assert!(NestedChain::new(seven).is_err());
    }

    #[test]
    fn example_chain_is_not_schur_closed() {
        let check = is_schur_closed(&example_chain());
        assert!(!check.closed);
        let w = check.witness.unwrap();
        assert_eq!(w.level, 0);
        assert_eq!(w.product, w.left.schur(&w.right).unwrap());
        assert!(!example_chain().code(1).contains(&w.product));
        // the product of the generators used in the literature fails as well
        assert!(!example_chain().code(1).contains(&bv("1000")));
    }

    #[test]
    fn reed_muller_chain_is_schur_closed() {
        let chain = NestedChain::new(vec![reed_muller(1, 4).unwrap(), reed_muller(3, 4).unwrap()])
            .unwrap();
        assert!(is_schur_closed(&chain).closed);
    }

    #[test]
    fn closure_of_example_chain() {
        let closed = schur_closure_chain(&example_chain());
        assert_eq!(closed.code(0), example_chain().code(0));
        assert!(closed.code(1).is_full());
        assert!(is_schur_closed(&closed).closed);
    }

    #[test]
    fn closure_fixes_closed_chains() {
        let chain = NestedChain::new(vec![reed_muller(1, 4).unwrap(), reed_muller(3, 4).unwrap()])
            .unwrap();
        assert_eq!(schur_closure_chain(&chain), chain);
    }

    #[test]
    fn canonical_chain_basis() {
        let single = NestedChain::new(vec![BinaryCode::full(3)]).unwrap();
        let b = chain_basis(&single);
        assert_eq!(b.vectors(), BinaryCode::full(3).basis());

        let b = chain_basis(&example_chain());
        assert_eq!(b.cut_points(), &[2, 3]);
        assert!(ChainBasis::new(&example_chain(), b.vectors().to_vec()).is_ok());

        let literature = vec![bv("1100"), bv("1010"), bv("1001"), bv("1000")];
        assert!(ChainBasis::new(&example_chain(), literature).is_ok());

        let c = BinaryCode::from_strs(3, &["110"]).unwrap();
        let flat = NestedChain::new(vec![c.clone(), c]).unwrap();
        assert_eq!(chain_basis(&flat).cut_points(), &[1, 1]);
    }

    #[test]
    fn chain_basis_rejects_bad_prefixes() {
        let wrong = vec![bv("1100"), bv("1001"), bv("1010"), bv("1000")];
        assert!(matches!(
            ChainBasis::new(&example_chain(), wrong),
            Err(Error::InvalidBasis(_))
        ));
        let dependent = vec![bv("1100"), bv("1010"), bv("0110"), bv("1000")];
        assert!(ChainBasis::new(&example_chain(), dependent).is_err());
    }

    #[test]
    fn canonical_parity_chain_basis() {
        let p = parity_chain_basis(&example_chain());
        assert_eq!(p.cut_points(), &[2, 1]);
        assert_eq!(p.r(2), 0);
        assert!(ParityChainBasis::new(&example_chain(), p.vectors().to_vec()).is_ok());
        let literature = vec![bv("1111"), bv("0001"), bv("1000"), bv("0100")];
        assert!(ParityChainBasis::new(&example_chain(), literature).is_ok());

        let full = NestedChain::new(vec![BinaryCode::full(3)]).unwrap();
        let p = parity_chain_basis(&full);
        assert_eq!(p.cut_points(), &[0]);
        assert_eq!(p.vectors(), BinaryCode::full(3).basis());

        let zero = NestedChain::new(vec![BinaryCode::zero(3)]).unwrap();
        assert_eq!(parity_chain_basis(&zero).cut_points(), &[3]);
    }

    #[test]
    fn distance_conditions() {
        let rm = NestedChain::new(vec![reed_muller(1, 3).unwrap()]).unwrap();
        let rep = check_distance_conditions(&rm, 2, DistanceVariant::D).unwrap();
        assert_eq!(rep[0].required, 2);
        assert_eq!(rep[0].actual, Some(4));
        assert!(rep[0].pass);

        let rep = check_distance_conditions(&example_chain(), 1, DistanceVariant::D).unwrap();
        assert_eq!((rep[0].required, rep[0].actual, rep[0].pass), (16, Some(2), false));
        assert_eq!(rep[1].required, 4);

        let full = NestedChain::new(vec![BinaryCode::full(4)]).unwrap();
        let rep = check_distance_conditions(&full, 2, DistanceVariant::D).unwrap();
        assert_eq!((rep[0].required, rep[0].actual, rep[0].pass), (2, Some(1), false));

        let rep = check_distance_conditions(&example_chain(), 2, DistanceVariant::DPrime).unwrap();
        assert_eq!(rep[0].required, 8);
        assert_eq!(rep[1].required, 2);

        assert!(check_distance_conditions(&full, 3, DistanceVariant::D).is_err());
        let zero = NestedChain::new(vec![BinaryCode::zero(4)]).unwrap();
        assert!(check_distance_conditions(&zero, 1, DistanceVariant::D).unwrap()[0].pass);
    }
}
