//! Lattices and point sets from nested binary codes: Constructions A, D, D′,
//! the code formula, Construction A over Z_q, and the report tying the
//! code-formula lattice criteria together.

use crate::error::{Error, Result};
use crate::gf2::{
    is_schur_closed, BinaryCode, BitVector, ChainBasis, NestedChain, ParityChainBasis,
    SchurWitness, Span, MAX_ENUM_DIM,
};
use crate::zlattice::{
    cosets_of_lattice, is_subgroup, CosetSet, HnfBuilder, IntVector, Lattice, Residue,
};

fn scaled_integer_rows(b: &mut HnfBuilder, n: usize, m: i64) -> Result<()> {
    for i in 0..n {
        b.insert(IntVector::unit(n, i, m).as_slice())?;
    }
    Ok(())
}

fn scaled_psi(v: &BitVector, scale: i64) -> Vec<i64> {
    v.iter().map(|b| if b { scale } else { 0 }).collect()
}

/// ψ(C) + 2Z^n.
pub fn construction_a(code: &BinaryCode) -> Result<Lattice> {
    let n = code.len();
    let mut b = HnfBuilder::new(n);
    scaled_integer_rows(&mut b, n, 2)?;
    for row in code.basis() {
        b.insert(&scaled_psi(row, 1))?;
    }
    b.finish()
}

/// Construction D: generated by 2^i ψ(b_j) for j ≤ k_i, together with 2^a Z^n.
pub fn construction_d(chain: &NestedChain, basis: &ChainBasis) -> Result<Lattice> {
    basis.check_against(chain)?;
    let n = chain.len();
    let mut b = HnfBuilder::new(n);
    scaled_integer_rows(&mut b, n, 1 << chain.levels())?;
    for i in 0..chain.levels() {
        for v in basis.prefix(i) {
            b.insert(&scaled_psi(v, 1 << i))?;
        }
    }
    b.finish()
}

/// The congruence system of Construction D′: x·ψ(h_j) ≡ 0 mod 2^{i+1} for
/// r_{i+1} ≤ j ≤ r_i (1-based, both ends inclusive, r_a = 0).
pub fn construction_d_prime_system(pbasis: &ParityChainBasis) -> (Vec<IntVector>, Vec<u64>) {
    let mut rows = Vec::new();
    let mut moduli = Vec::new();
    let levels = pbasis.cut_points().len();
    for i in 0..levels {
        let (lo, hi) = (pbasis.r(i + 1).max(1), pbasis.r(i));
        for j in lo..=hi {
            rows.push(pbasis.vectors()[j - 1].psi());
            moduli.push(1u64 << (i + 1));
        }
    }
    (rows, moduli)
}

/// Construction D′: the lattice cut out by the nested parity checks.
pub fn construction_d_prime(chain: &NestedChain, pbasis: &ParityChainBasis) -> Result<Lattice> {
    let expected: Vec<usize> = chain.dims().iter().map(|k| chain.len() - k).collect();
    if pbasis.cut_points() != expected.as_slice() || pbasis.vectors().len() != chain.len() {
        return Err(Error::InvalidBasis("parity basis does not belong to this chain".into()));
    }
    let (rows, moduli) = construction_d_prime_system(pbasis);
    crate::zlattice::congruence_kernel(&rows, &moduli, chain.len())
}

/// Residues of Γ_CF = ψ(C_0) + 2ψ(C_1) + … + 2^{a-1}ψ(C_{a-1}) + 2^a Z^n.
///
/// A residue's bit slices are exactly (c_0, …, c_{a-1}), so the set is the
/// product of the codes, slice by slice.
pub fn code_formula_cosets(chain: &NestedChain) -> Result<CosetSet> {
    code_formula_cosets_with_limit(chain, MAX_ENUM_DIM)
}

pub fn code_formula_cosets_with_limit(chain: &NestedChain, max_total_dim: usize) -> Result<CosetSet> {
    let total = chain.total_dim();
    if total > max_total_dim {
        return Err(Error::CodeTooLarge {
            dim: total,
            max_dim: max_total_dim,
        });
    }
    let mut partial: Vec<Vec<u64>> = vec![Vec::new()];
    for code in chain.codes() {
        let words = code.codewords_with_limit(max_total_dim)?;
        let mut next = Vec::with_capacity(partial.len() * words.len());
        for p in &partial {
            for w in &words {
                let mut s = p.clone();
                s.push(w.word());
                next.push(s);
            }
        }
        partial = next;
    }
    CosetSet::new(
        chain.len(),
        chain.levels(),
        partial.iter().map(|s| Residue::from_slices(s)),
    )
}

/// Whether v ∈ Γ_CF: each bit slice of v mod 2^a lies in its level's code.
pub fn code_formula_contains(chain: &NestedChain, v: &IntVector) -> bool {
    if v.len() != chain.len() {
        return false;
    }
    let r = Residue::from_vector(v, chain.levels());
    chain
        .codes()
        .iter()
        .enumerate()
        .all(|(i, c)| c.contains(&r.slice_vector(i, chain.len())))
}

/// Λ_CF, the smallest lattice containing Γ_CF, generated by 2^i ψ(c) for
/// every codeword c of C_i together with 2^a Z^n.
pub fn code_formula_lattice(chain: &NestedChain) -> Result<Lattice> {
    let n = chain.len();
    let mut b = HnfBuilder::new(n);
    scaled_integer_rows(&mut b, n, 1 << chain.levels())?;
    for (i, code) in chain.codes().iter().enumerate() {
        for c in code.codewords()? {
            b.insert(&scaled_psi(&c, 1 << i))?;
        }
    }
    b.finish()
}

/// Whether Γ_CF is a lattice, by counting: Γ_CF ⊆ Λ_CF always and Γ_CF has
/// 2^{Σk_i} residues, so equality holds iff det(Λ_CF) = 2^{an − Σk_i}.
/// Needs no enumeration of Γ_CF.
pub fn code_formula_is_lattice_by_count(chain: &NestedChain) -> Result<bool> {
    let l = code_formula_lattice(chain)?;
    let exponent = (chain.levels() * chain.len() - chain.total_dim()) as u64;
    Ok(l.determinant() == num_bigint::BigUint::from(1u32) << exponent)
}

/// Four independently computed facts about a chain that must agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionReport {
    pub gamma_is_lattice: bool,
    pub gamma_equals_lambda_cf: bool,
    pub schur_closed: bool,
    pub gamma_equals_lambda_d: bool,
    /// u, v ∈ Γ_CF with u + v ∉ Γ_CF.
    pub subgroup_witness: Option<(IntVector, IntVector)>,
    pub schur_witness: Option<SchurWitness>,
    /// A residue of Λ_D outside Γ_CF or vice versa.
    pub lambda_d_witness: Option<IntVector>,
    pub gamma_size: usize,
    pub lambda_cf_residues: usize,
}

impl ConstructionReport {
    /// Fails with `EquivalenceViolation` unless the four booleans agree.
    pub fn new(
        gamma_is_lattice: bool,
        gamma_equals_lambda_cf: bool,
        schur_closed: bool,
        gamma_equals_lambda_d: bool,
    ) -> Result<Self> {
        let all = [
            gamma_is_lattice,
            gamma_equals_lambda_cf,
            schur_closed,
            gamma_equals_lambda_d,
        ];
        if all.iter().any(|&b| b != all[0]) {
            return Err(Error::EquivalenceViolation(format!(
                "gamma_is_lattice={gamma_is_lattice} gamma_equals_lambda_cf={gamma_equals_lambda_cf} \
                 schur_closed={schur_closed} gamma_equals_lambda_d={gamma_equals_lambda_d}"
            )));
        }
        Ok(ConstructionReport {
            gamma_is_lattice,
            gamma_equals_lambda_cf,
            schur_closed,
            gamma_equals_lambda_d,
            subgroup_witness: None,
            schur_witness: None,
            lambda_d_witness: None,
            gamma_size: 0,
            lambda_cf_residues: 0,
        })
    }

    pub fn holds(&self) -> bool {
        self.gamma_is_lattice
    }
}

/// Runs the four checks on a chain: Γ_CF closed under addition; |Γ_CF| equal
/// to the index of 2^aZ^n in Λ_CF; Schur closure of the chain; Γ_CF equal to
/// the residues of Λ_D for the canonical chain basis.
pub fn equivalence_report(chain: &NestedChain) -> Result<ConstructionReport> {
    let n = chain.len();
    let bits = chain.levels();
    let gamma = code_formula_cosets(chain)?;

    let subgroup = is_subgroup(&gamma);

    let lambda_cf = code_formula_lattice(chain)?;
    let index = lambda_cf_index(&lambda_cf, n, bits)?;
    let equals_cf = index == Some(gamma.len() as u128);

    let schur = is_schur_closed(chain);

    let lambda_d = construction_d(chain, &crate::gf2::chain_basis(chain))?;
    let d_cosets = cosets_of_lattice(&lambda_d, bits)?;
    let lambda_d_witness = d_cosets
        .residues()
        .iter()
        .find(|r| !gamma.contains(r))
        .or_else(|| gamma.residues().iter().find(|r| !d_cosets.contains(r)))
        .map(|r| r.to_vector(n));

    let mut report = ConstructionReport::new(
        subgroup.is_subgroup,
        equals_cf,
        schur.closed,
        lambda_d_witness.is_none(),
    )?;
    report.subgroup_witness = subgroup.witness;
    report.schur_witness = schur.witness;
    report.lambda_d_witness = lambda_d_witness;
    report.gamma_size = gamma.len();
    report.lambda_cf_residues = index.map_or(usize::MAX, |x| x as usize);
    Ok(report)
}

/// |Λ / 2^a Z^n| = 2^{an} / det(Λ), when small enough to matter.
fn lambda_cf_index(l: &Lattice, n: usize, bits: usize) -> Result<Option<u128>> {
    let total = (n * bits) as u32;
    let Some(det) = l.determinant_u128() else {
        return Ok(None);
    };
    if total >= 128 {
        return Ok(None);
    }
    Ok(Some((1u128 << total) / det))
}

/// Construction A over Z_q: the generators plus qZ^n.
pub fn construction_a_zq(generators: &[IntVector], n: usize, q: u64) -> Result<Lattice> {
    if q == 0 || q > i64::MAX as u64 {
        return Err(Error::OutOfRange(format!("modulus {q}")));
    }
    let q = q as i64;
    let mut b = HnfBuilder::new(n);
    scaled_integer_rows(&mut b, n, q)?;
    for g in generators {
        if g.as_slice().iter().any(|&x| !(0..q).contains(&x)) {
            return Err(Error::OutOfRange(format!("generator {g} is not reduced mod {q}")));
        }
        b.insert(g.as_slice())?;
    }
    b.finish()
}

/// Default cap on the length of chains whose bases are enumerated.
pub const MAX_BASIS_ENUM_LEN: usize = 5;

/// Every ordered basis of F2^n whose prefixes span the chain codes, in
/// depth-first order over codeword enumeration order.
pub struct ChainBases {
    n: usize,
    cut_points: Vec<usize>,
    candidates: Vec<Vec<BitVector>>,
    cursor: Vec<usize>,
    chosen: Vec<BitVector>,
    spans: Vec<Span>,
    done: bool,
}

pub fn all_chain_bases(chain: &NestedChain) -> Result<ChainBases> {
    all_chain_bases_with_limit(chain, MAX_BASIS_ENUM_LEN)
}

pub fn all_chain_bases_with_limit(chain: &NestedChain, max_len: usize) -> Result<ChainBases> {
    let n = chain.len();
    if n > max_len {
        return Err(Error::GuardExceeded {
            what: "chain basis enumeration",
            limit: max_len as u64,
        });
    }
    let dims = chain.dims();
    let full = BinaryCode::full(n).codewords()?;
    let mut per_level: Vec<Vec<BitVector>> = Vec::new();
    for c in chain.codes() {
        per_level.push(c.codewords()?);
    }
    let candidates = (0..n)
        .map(|p| match dims.iter().position(|&k| p < k) {
            Some(level) => per_level[level].clone(),
            None => full.clone(),
        })
        .collect();
    Ok(ChainBases {
        n,
        cut_points: dims,
        candidates,
        cursor: vec![0; n + 1],
        chosen: Vec::with_capacity(n),
        spans: vec![Span::new(n)],
        done: false,
    })
}

impl Iterator for ChainBases {
    type Item = ChainBasis;

    fn next(&mut self) -> Option<ChainBasis> {
        loop {
            if self.done {
                return None;
            }
            let depth = self.chosen.len();
            if depth == self.n {
                let out = ChainBasis::from_parts(self.chosen.clone(), self.cut_points.clone());
                self.backtrack();
                return Some(out);
            }
            let span = self.spans.last().expect("root span");
            let cands = &self.candidates[depth];
            let found = (self.cursor[depth]..cands.len()).find(|&i| !span.contains(&cands[i]));
            match found {
                Some(i) => {
                    self.cursor[depth] = i + 1;
                    let v = cands[i];
                    let mut next = span.clone();
                    next.insert(&v);
                    self.spans.push(next);
                    self.chosen.push(v);
                    self.cursor[depth + 1] = 0;
                }
                None => {
                    if depth == 0 {
                        self.done = true;
                        return None;
                    }
                    self.cursor[depth] = 0;
                    self.backtrack();
                }
            }
        }
    }
}

impl ChainBases {
    fn backtrack(&mut self) {
        self.chosen.pop();
        self.spans.pop();
        if self.spans.is_empty() {
            self.done = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::gf2::{chain_basis, parity_chain_basis, reed_muller};
    use crate::zlattice::{hnf, Comparison};

    fn iv<const N: usize>(v: [i64; N]) -> IntVector {
        IntVector::from(v)
    }

    #[test]
    fn construction_a_cases() {
        assert_eq!(construction_a(&BinaryCode::full(4)).unwrap(), Lattice::integers(4));
        assert_eq!(construction_a(&BinaryCode::zero(4)).unwrap(), Lattice::scaled_integers(4, 2));
        let rm = construction_a(&reed_muller(1, 3).unwrap()).unwrap();
        assert_eq!(rm.determinant_u128(), Some(16));
        let single = NestedChain::new(vec![reed_muller(1, 3).unwrap()]).unwrap();
        assert_eq!(code_formula_lattice(&single).unwrap(), rm);
        assert_eq!(construction_d(&single, &chain_basis(&single)).unwrap(), rm);
    }

    #[test]
    fn construction_d_on_example_chain() {
        let chain = catalog::example1_chain();
        let basis = catalog::example1_basis();
        let d = construction_d(&chain, &basis).unwrap();
        assert_eq!(d.determinant_u128(), Some(8));
        for v in d.basis() {
            assert_eq!((v[0] - v[1] - v[2] - v[3]).rem_euclid(4), 0);
        }
        assert!(!d.contains(&iv([0, 1, 1, 0])).unwrap());
        assert!(d.contains(&iv([1, 1, 0, 0])).unwrap());
    }

    #[test]
    fn construction_d_rejects_foreign_basis() {
        let chain = catalog::example1_chain();
        let other = NestedChain::new(vec![BinaryCode::full(4)]).unwrap();
        assert!(construction_d(&chain, &chain_basis(&other)).is_err());
    }

    #[test]
    fn construction_d_prime_on_example_chain() {
        let chain = catalog::example1_chain();
        let lit = catalog::example1_parity_basis();
        let (rows, moduli) = construction_d_prime_system(&lit);
        // h_1, h_2 mod 2 and h_1 mod 4
        assert_eq!(moduli, vec![2, 2, 4]);
        assert_eq!(rows[1], iv([0, 0, 0, 1]));
        assert_eq!(rows[2], iv([1, 1, 1, 1]));
        let dp = construction_d_prime(&chain, &lit).unwrap();
        let gens = hnf(
            &[iv([1, -1, 0, 0]), iv([1, 0, -1, 0]), iv([2, 0, 0, 2]), iv([4, 0, 0, 0])],
            4,
        )
        .unwrap();
        assert_eq!(dp, gens);
        assert_eq!(construction_d_prime(&chain, &parity_chain_basis(&chain)).unwrap(), dp);
        assert!(dp.contains(&iv([1, 3, 0, 0])).unwrap());
        assert!(!dp.contains(&iv([1, 1, 0, 0])).unwrap());
    }

    #[test]
    fn d_prime_trivial_chain() {
        let chain = NestedChain::new(vec![BinaryCode::full(3)]).unwrap();
        let l = construction_d_prime(&chain, &parity_chain_basis(&chain)).unwrap();
        assert_eq!(l, Lattice::integers(3));
        let zero = NestedChain::new(vec![BinaryCode::zero(3)]).unwrap();
        let l = construction_d_prime(&zero, &parity_chain_basis(&zero)).unwrap();
        assert_eq!(l, Lattice::scaled_integers(3, 2));
    }

    #[test]
    fn code_formula_cosets_cases() {
        let zero = NestedChain::new(vec![BinaryCode::zero(3)]).unwrap();
        assert_eq!(code_formula_cosets(&zero).unwrap().len(), 1);

        let gamma = code_formula_cosets(&catalog::example1_chain()).unwrap();
        assert_eq!(gamma.len(), 32);
        assert!(!gamma.contains_vector(&iv([2, 0, 0, 0])));
        assert!(gamma.contains_vector(&iv([0, 1, 1, 0])));

        let full = NestedChain::new(vec![BinaryCode::full(2), BinaryCode::full(2)]).unwrap();
        assert_eq!(code_formula_cosets(&full).unwrap(), CosetSet::full(2, 2).unwrap());

        let wide = NestedChain::new(vec![BinaryCode::full(21)]).unwrap();
        assert!(code_formula_cosets(&wide).unwrap_err().is_guard());
    }

    #[test]
    fn code_formula_lattice_on_example_chain() {
        let chain = catalog::example1_chain();
        let cf = code_formula_lattice(&chain).unwrap();
        assert!(cf.contains(&iv([0, 1, 1, 0])).unwrap());
        let d = construction_d(&chain, &catalog::example1_basis()).unwrap();
        assert!(matches!(d.compare(&cf).unwrap(), Comparison::FirstInSecond { .. }));
        // ψ(C_0) + 2Z^4
        assert_eq!(cf, construction_a(chain.code(0)).unwrap());
        assert_eq!(cf.determinant_u128(), Some(4));
        assert!(!code_formula_is_lattice_by_count(&chain).unwrap());
    }

    #[test]
    fn membership_in_gamma() {
        let chain = catalog::example1_chain();
        let gamma = code_formula_cosets(&chain).unwrap();
        for x in -4..8 {
            for y in -4..8 {
                let v = iv([x, y, 1, 3]);
                assert_eq!(code_formula_contains(&chain, &v), gamma.contains_vector(&v));
            }
        }
    }

    #[test]
    fn reports() {
        let r = equivalence_report(&catalog::example1_chain()).unwrap();
        assert!(!r.gamma_is_lattice && !r.gamma_equals_lambda_cf);
        assert!(!r.schur_closed && !r.gamma_equals_lambda_d);
        assert_eq!(r.gamma_size, 32);
        assert_eq!(r.lambda_cf_residues, 64);
        assert!(r.subgroup_witness.is_some() && r.schur_witness.is_some());

        let trivial = NestedChain::new(vec![BinaryCode::full(5)]).unwrap();
        assert!(equivalence_report(&trivial).unwrap().holds());

        assert!(matches!(
            ConstructionReport::new(true, true, false, true),
            Err(Error::EquivalenceViolation(_))
        ));
    }

    #[test]
    fn zq_construction() {
        assert_eq!(construction_a_zq(&[], 3, 8).unwrap(), Lattice::scaled_integers(3, 8));
        let l = construction_a_zq(&[iv([1, 5])], 2, 8).unwrap();
        assert_eq!(l.determinant_u128(), Some(8));
        for p in [[0, 0], [2, 2], [4, 4], [6, 6], [1, 5], [5, 1], [3, 7], [7, 3]] {
            assert!(l.contains(&iv(p)).unwrap());
        }
        assert!(!l.contains(&iv([1, 1])).unwrap());
        let units: Vec<IntVector> = (0..3).map(|i| IntVector::unit(3, i, 1)).collect();
        assert_eq!(construction_a_zq(&units, 3, 4).unwrap(), Lattice::integers(3));
        assert!(construction_a_zq(&[iv([9, 0])], 2, 8).is_err());
    }

    #[test]
    fn chain_basis_enumeration() {
        let trivial = NestedChain::new(vec![BinaryCode::zero(1)]).unwrap();
        let all: Vec<ChainBasis> = all_chain_bases(&trivial).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].vectors()[0].to_string(), "1");

        // ordered bases of F2^3: 7·6·4
        let full = NestedChain::new(vec![BinaryCode::full(3)]).unwrap();
        let all: Vec<ChainBasis> = all_chain_bases(&full).unwrap().collect();
        assert_eq!(all.len(), 168);
        let sum = all
            .iter()
            .map(|b| construction_d(&full, b).unwrap())
            .reduce(|a, b| a.sum(&b).unwrap())
            .unwrap();
        assert_eq!(sum, Lattice::integers(3));

        // C_0 bases: 3·2, C_1 extension: 4, F2^4 extension: 8
        let chain = catalog::example1_chain();
        let all: Vec<ChainBasis> = all_chain_bases(&chain).unwrap().collect();
        assert_eq!(all.len(), 192);
        for b in &all {
            assert!(ChainBasis::new(&chain, b.vectors().to_vec()).is_ok());
        }

        let wide = NestedChain::new(vec![BinaryCode::full(6)]).unwrap();
        assert!(all_chain_bases(&wide).is_err());
    }
}
