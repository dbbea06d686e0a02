//! Random codes, chains and bases for property checks and the acceptance
//! trials. All generators are driven by a caller-supplied RNG.

use rand::Rng;

use crate::gf2::{mask, BinaryCode, BitVector, ChainBasis, NestedChain, Span, MAX_LEVELS};
use crate::ua_codes::{UaCode, UaElement, UaVector};

pub fn random_bitvector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BitVector {
    BitVector::from_word(n, rng.random::<u64>() & mask(n))
}

/// A uniformly random codeword of `code`.
pub fn random_codeword<R: Rng + ?Sized>(rng: &mut R, code: &BinaryCode) -> BitVector {
    let k = code.dim();
    let t = if k == 0 { 0 } else { rng.random::<u64>() & mask(k) };
    code.encode_index(t)
}

/// A random chain C_0 ⊆ … ⊆ C_{a-1} of length n with Σ dim C_i ≤ max_total_dim.
pub fn random_chain<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    a: usize,
    max_total_dim: usize,
) -> NestedChain {
    assert!((1..=MAX_LEVELS).contains(&a), "a must be in 1..={MAX_LEVELS}");
    let mut dims = Vec::with_capacity(a);
    let mut prev = 0;
    let mut budget = max_total_dim;
    for i in 0..a {
        let levels_left = a - i;
        let cap = n.min(budget / levels_left);
        // cap ≥ prev, since earlier levels took at most their share
        let k = rng.random_range(prev..=cap);
        dims.push(k);
        budget = budget.saturating_sub(k);
        prev = k;
    }
    let mut span = Span::new(n);
    let mut rows = Vec::new();
    let mut codes = Vec::with_capacity(a);
    for &k in &dims {
        while span.rank() < k {
            let v = random_bitvector(rng, n);
            if span.insert(&v) {
                rows.push(v);
            }
        }
        codes.push(BinaryCode::from_rows(n, &rows).expect("lengths agree"));
    }
    NestedChain::new(codes).expect("nested by construction")
}

/// A random ordered basis of F2^n adapted to the chain.
pub fn random_chain_basis<R: Rng + ?Sized>(rng: &mut R, chain: &NestedChain) -> ChainBasis {
    let n = chain.len();
    let mut span = Span::new(n);
    let mut vectors = Vec::with_capacity(n);
    for code in chain.codes().iter().cloned().chain([BinaryCode::full(n)]) {
        while span.rank() < code.dim() {
            let v = random_codeword(rng, &code);
            if span.insert(&v) {
                vectors.push(v);
            }
        }
    }
    ChainBasis::new(chain, vectors).expect("valid by construction")
}

/// k random generator rows over U_a of length n.
pub fn random_ua_code<R: Rng + ?Sized>(rng: &mut R, n: usize, a: usize, k: usize) -> UaCode {
    let gen = (0..k).map(|_| random_ua_vector(rng, n, a)).collect();
    UaCode::new(n, a, gen).expect("valid parameters")
}

pub fn random_ua_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, a: usize) -> UaVector {
    let els: Vec<UaElement> = (0..n)
        .map(|_| UaElement::new(rng.random_range(0..1u8 << a), a).expect("in range"))
        .collect();
    UaVector::from_elements(&els, a).expect("valid parameters")
}
