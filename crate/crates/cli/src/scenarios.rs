use codelat::catalog;
use codelat::constructions::{
    code_formula_contains, code_formula_cosets, code_formula_is_lattice_by_count,
    code_formula_lattice, construction_a, construction_a_zq, construction_d, construction_d_prime,
};
use codelat::gf2::{chain_basis, is_schur_closed, schur_closure_chain, ChainBasis};
use codelat::ua_codes::{construction_a_prime, enumerate_ua};
use codelat::zlattice::{
    cosets_of_lattice, hnf, is_subgroup, shortest_vector, Comparison, CosetSet, IntVector,
};

use crate::commands::Outcome;
use crate::report::Report;
use crate::Scenario;

struct Facts {
    report: Report,
    all: bool,
}

impl Facts {
    fn new(name: &str) -> Self {
        Facts {
            report: Report::new(&format!("examples {name}")),
            all: true,
        }
    }

    fn fact(&mut self, name: &str, holds: bool) {
        self.all &= holds;
        self.report.kv(&format!("fact.{name}"), holds);
    }

    fn finish(mut self) -> Outcome {
        self.report.kv("all_facts_hold", self.all);
        Ok((self.report, self.all))
    }
}

fn iv<const N: usize>(v: [i64; N]) -> IntVector {
    IntVector::from(v)
}

pub fn run(name: Scenario) -> Outcome {
    match name {
        Scenario::Example1 => example1(),
        Scenario::Simplex15 => simplex15(),
        Scenario::Example4 => example4(),
        Scenario::Bw16 => bw16(),
        Scenario::E8 => e8(),
    }
}

fn example1() -> Outcome {
    let mut f = Facts::new("example1");
    let chain = catalog::example1_chain();
    let d = construction_d(&chain, &catalog::example1_basis())?;
    let dp = construction_d_prime(&chain, &catalog::example1_parity_basis())?;
    let cf = code_formula_lattice(&chain)?;
    let gamma = code_formula_cosets(&chain)?;
    let cf_cosets = cosets_of_lattice(&cf, 2)?;

    let sub = is_subgroup(&gamma);
    f.fact("i.gamma_not_subgroup", !sub.is_subgroup);
    if let Some((x, y)) = &sub.witness {
        f.report.vector("i.witness_left", x);
        f.report.vector("i.witness_right", y);
    }
    f.fact("i.2000_absent", !gamma.contains_vector(&iv([2, 0, 0, 0])));
    f.fact("i.gamma_strictly_inside_lambda_cf", gamma.is_subset_of(&cf_cosets) && gamma.len() < cf_cosets.len());
    f.report.kv("gamma_size", gamma.len());
    f.report.kv("lambda_cf_residues", cf_cosets.len());

    let w = iv([0, 1, 1, 0]);
    f.fact("ii.0110_in_lambda_cf_not_lambda_d", cf.contains(&w)? && !d.contains(&w)?);
    let law = cosets_of_lattice(&d, 2)?
        .vectors()
        .iter()
        .all(|v| (v[0] - v[1] - v[2] - v[3]).rem_euclid(4) == 0);
    f.fact("ii.lambda_d_congruence", law);
    f.fact("ii.lambda_d_strictly_inside_lambda_cf", matches!(d.compare(&cf)?, Comparison::FirstInSecond { .. }));

    let (x, y) = (iv([1, 3, 0, 0]), iv([1, 1, 0, 0]));
    f.fact("iii.1300_in_lambda_dprime_only", dp.contains(&x)? && !d.contains(&x)?);
    f.fact("iii.1100_in_lambda_d_only", d.contains(&y)? && !dp.contains(&y)?);
    f.fact("iii.incomparable", matches!(d.compare(&dp)?, Comparison::Incomparable { .. }));

    f.fact("iv.kernel_equals_listed_generators", hnf(&catalog::example1_d_prime_generators(), 4)? == dp);
    f.fact("iv.1100_in_lambda_cf_not_lambda_dprime", cf.contains(&y)? && !dp.contains(&y)?);
    f.fact("iv.lambda_dprime_strictly_inside_lambda_cf", matches!(dp.compare(&cf)?, Comparison::FirstInSecond { .. }));

    let schur = is_schur_closed(&chain);
    if let Some(w) = schur.witness {
        f.report.kv("schur_witness", format!("{} * {} = {}", w.left, w.right, w.product));
    }
    f.report.lattice("lambda_d", &d);
    f.report.lattice("lambda_dprime", &dp);
    f.report.lattice("lambda_cf", &cf);
    f.finish()
}

fn simplex15() -> Outcome {
    let mut f = Facts::new("simplex15");
    let chain = catalog::simplex15_chain();
    f.fact("chain_not_schur_closed", !is_schur_closed(&chain).closed);
    let closed = schur_closure_chain(&chain);
    let dims: Vec<String> = closed.dims().iter().map(usize::to_string).collect();
    f.report.kv("closure_dims", dims.join(","));
    f.fact("closure_c1_matches_printed", closed.code(1) == &catalog::simplex15_order2());
    f.fact("closure_c2_matches_printed", closed.code(2) == &catalog::simplex15_order3());
    f.fact("closure_gamma_is_lattice", code_formula_is_lattice_by_count(&closed)?);
    let v = catalog::simplex15_witness();
    f.report.vector("witness", &v);
    f.fact("witness_in_closure_gamma", code_formula_contains(&closed, &v));
    let cf = code_formula_lattice(&chain)?;
    f.fact("witness_not_in_lambda_cf", !cf.contains(&v)?);
    f.fact("lambda_cf_entry_sums_divisible_by_8", cf.basis().iter().all(|r| r.sum().rem_euclid(8) == 0));
    f.report.lattice("lambda_cf", &cf);
    f.finish()
}

fn example4() -> Outcome {
    let mut f = Facts::new("example4");
    let code = catalog::example4_code();
    let words = enumerate_ua(&code)?;
    f.report.rows("codewords", words.iter());
    f.fact("eight_codewords", words.len() == 8);
    let (gamma, lattice) = construction_a_prime(&code)?;
    let pairs = [[0, 0], [2, 2], [4, 4], [6, 6], [1, 5], [5, 1], [3, 7], [7, 3]];
    f.fact("cosets_match", gamma == CosetSet::from_vectors(2, 3, &pairs.map(iv))?);
    f.fact("gamma_is_subgroup", is_subgroup(&gamma).is_subgroup);
    f.fact("equals_z8_construction_a", lattice == construction_a_zq(&[iv([1, 5])], 2, 8)?);
    f.report.lattice("lattice", &lattice);
    f.finish()
}

/// The chain basis with each block reversed.
fn reversed_blocks(basis: &ChainBasis, chain: &codelat::gf2::NestedChain) -> codelat::Result<ChainBasis> {
    let mut vectors = Vec::new();
    for i in 0..chain.levels() {
        vectors.extend(basis.block(i).iter().rev());
    }
    vectors.extend(basis.vectors()[chain.dims()[chain.levels() - 1]..].iter().rev());
    ChainBasis::new(chain, vectors)
}

fn bw16() -> Outcome {
    let mut f = Facts::new("bw16");
    let chain = catalog::rm_chain();
    f.fact("schur_closed", is_schur_closed(&chain).closed);
    let cf = code_formula_lattice(&chain)?;
    let basis = chain_basis(&chain);
    f.fact("lambda_d_equals_lambda_cf", construction_d(&chain, &basis)? == cf);
    f.fact(
        "lambda_d_basis_independent",
        construction_d(&chain, &reversed_blocks(&basis, &chain)?)? == cf,
    );
    f.fact("gamma_is_lattice", code_formula_is_lattice_by_count(&chain)?);
    f.fact("determinant_is_2^12", cf.determinant_u128() == Some(1 << 12));
    f.report.lattice("lattice", &cf);
    f.finish()
}

fn e8() -> Outcome {
    let mut f = Facts::new("e8");
    let l = construction_a(&catalog::e8_code())?;
    f.fact("determinant_16", l.determinant_u128() == Some(16));
    let mv = shortest_vector(&l, 50_000_000)?;
    f.report.kv("min_norm", mv.norm_sq);
    f.report.kv("minimal_vectors", mv.count);
    f.fact("min_norm_4", mv.norm_sq == 4);
    f.fact("kissing_240", mv.count == 240);
    f.report.lattice("lattice", &l);
    f.finish()
}
