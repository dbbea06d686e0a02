//! Fixed codes, chains and bases from the literature, used by tests and the
//! `examples` command.

use crate::gf2::{reed_muller, BinaryCode, BitVector, ChainBasis, NestedChain, ParityChainBasis};
use crate::ua_codes::UaCode;
use crate::zlattice::IntVector;

fn bv(s: &str) -> BitVector {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    compact.parse().expect("catalog vectors are well formed")
}

fn code(n: usize, rows: &[&str]) -> BinaryCode {
    let rows: Vec<BitVector> = rows.iter().map(|s| bv(s)).collect();
    BinaryCode::from_rows(n, &rows).expect("catalog codes are well formed")
}

/// C_0 = ⟨1100, 1010⟩ ⊆ C_1 = ⟨1100, 1010, 1001⟩ ⊆ F2^4.
pub fn example1_chain() -> NestedChain {
    NestedChain::new(vec![
        code(4, &["1100", "1010"]),
        code(4, &["1100", "1010", "1001"]),
    ])
    .expect("nested")
}

/// b_1 = 1100, b_2 = 1010, b_3 = 1001, b_4 = 1000.
pub fn example1_basis() -> ChainBasis {
    let v = ["1100", "1010", "1001", "1000"].map(bv).to_vec();
    ChainBasis::new(&example1_chain(), v).expect("valid chain basis")
}

/// h_1 = 1111 checks C_1; h_1, h_2 = 0001 check C_0; h_3 = 1000, h_4 = 0100.
pub fn example1_parity_basis() -> ParityChainBasis {
    let v = ["1111", "0001", "1000", "0100"].map(bv).to_vec();
    ParityChainBasis::new(&example1_chain(), v).expect("valid parity basis")
}

/// Generators (1,-1,0,0), (1,0,-1,0), (2,0,0,2), (4,0,0,0) of Λ_D′.
pub fn example1_d_prime_generators() -> Vec<IntVector> {
    vec![
        IntVector::from([1, -1, 0, 0]),
        IntVector::from([1, 0, -1, 0]),
        IntVector::from([2, 0, 0, 2]),
        IntVector::from([4, 0, 0, 0]),
    ]
}

const SIMPLEX_ROWS: [&str; 4] = [
    "000 0000 1111 1111",
    "000 1111 0000 1111",
    "011 0011 0011 0011",
    "101 0101 0101 0101",
];

const SIMPLEX_ORDER2_ROWS: [&str; 6] = [
    "000 0000 0000 1111",
    "000 0000 0011 0011",
    "000 0000 0101 0101",
    "000 0011 0000 0011",
    "000 0101 0000 0101",
    "001 0001 0001 0001",
];

const SIMPLEX_ORDER3_ROWS: [&str; 4] = [
    "000 0000 0000 0011",
    "000 0000 0000 0101",
    "000 0000 0001 0001",
    "000 0001 0000 0001",
];

/// The [15, 4] simplex code.
pub fn simplex15() -> BinaryCode {
    code(15, &SIMPLEX_ROWS)
}

/// The printed 10-row matrix (shortened second-order Reed-Muller code).
pub fn simplex15_order2() -> BinaryCode {
    let rows: Vec<&str> = SIMPLEX_ROWS.iter().chain(&SIMPLEX_ORDER2_ROWS).copied().collect();
    code(15, &rows)
}

/// The printed 14-row matrix (shortened third-order Reed-Muller code).
pub fn simplex15_order3() -> BinaryCode {
    let rows: Vec<&str> = SIMPLEX_ROWS
        .iter()
        .chain(&SIMPLEX_ORDER2_ROWS)
        .chain(&SIMPLEX_ORDER3_ROWS)
        .copied()
        .collect();
    code(15, &rows)
}

/// C ⊆ C ⊆ C ⊆ F2^15 for the simplex code C.
pub fn simplex15_chain() -> NestedChain {
    NestedChain::new(vec![simplex15(), simplex15(), simplex15()]).expect("nested")
}

/// (0,0,2,0,0,0,2,0,0,0,2,2,2,2,0): in 2ψ(C_1) of the closure chain, not in Λ_CF.
pub fn simplex15_witness() -> IntVector {
    IntVector::from([0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2, 2, 2, 2, 0])
}

/// The code over U_3 generated by (1+u, 1+u+u²).
pub fn example4_code() -> UaCode {
    UaCode::from_rows(3, &[&[0b011, 0b111]]).expect("well formed")
}

/// RM(1,4) ⊆ RM(3,4), the two-level chain behind the Barnes-Wall lattice in
/// dimension 16.
pub fn rm_chain() -> NestedChain {
    NestedChain::new(vec![
        reed_muller(1, 4).expect("valid"),
        reed_muller(3, 4).expect("valid"),
    ])
    .expect("nested")
}

/// RM(1,3), whose Construction A lattice is a scaled copy of E8.
pub fn e8_code() -> BinaryCode {
    reed_muller(1, 3).expect("valid")
}
