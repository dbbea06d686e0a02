use codelat::constructions::{
    all_chain_bases, code_formula_cosets, code_formula_lattice, construction_d,
    construction_d_prime_system,
};
use codelat::gf2::{
    chain_basis, is_schur_closed, parity_chain_basis, psi, reed_muller, rref, schur_closure_chain,
    BinaryCode, BitVector, NestedChain,
};
use codelat::random::{random_bitvector, random_chain, random_chain_basis, random_ua_code, random_ua_vector};
use codelat::ua_codes::{
    chain_to_ua_code, construction_a_prime, enumerate_ua, is_shifted_schur_closed, phi,
    phi_sum_identity, a_prime_lattice_check, UaElement,
};
use codelat::zlattice::{
    congruence_kernel, cosets_of_lattice, hnf, is_subgroup, lattice_from_cosets, lattice_sum,
    subgroup_closure, Comparison, CosetSet, IntVector, Lattice, Residue,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn brute_force_schur_closed(chain: &NestedChain) -> bool {
    (0..chain.levels()).all(|i| {
        let next = chain.code_or_full(i + 1);
        let words = chain.code(i).codewords().unwrap();
        words
            .iter()
            .all(|x| words.iter().all(|y| next.contains(&x.schur(y).unwrap())))
    })
}

fn random_lattice(r: &mut ChaCha8Rng, n: usize, a: usize) -> Lattice {
    let m = 1i64 << a;
    let mut gens: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i, m)).collect();
    for _ in 0..r.random_range(0..=n + 1) {
        gens.push(IntVector::new((0..n).map(|_| r.random_range(-m..m)).collect()));
    }
    hnf(&gens, n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_ignores_row_order(seed in any::<u64>(), n in 1usize..=16, k in 0usize..=10) {
        let mut r = rng(seed);
        let mut rows: Vec<BitVector> = (0..k).map(|_| random_bitvector(&mut r, n)).collect();
        let (a, _) = rref(n, &rows).unwrap();
        rows.reverse();
        rows.rotate_left(k / 2);
        let (b, _) = rref(n, &rows).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn psi_carry_identity(x in any::<u64>(), y in any::<u64>(), n in 1usize..=16) {
        let m = (1u64 << n) - 1;
        let (x, y) = (BitVector::from_word(n, x & m), BitVector::from_word(n, y & m));
        let lhs = psi(&x).checked_add(&psi(&y)).unwrap().checked_sub(&psi(&x.add(&y).unwrap())).unwrap();
        prop_assert_eq!(lhs, psi(&x.schur(&y).unwrap()).scaled(2).unwrap());
    }

    #[test]
    fn schur_check_matches_all_pairs(seed in any::<u64>(), n in 1usize..=8, a in 1usize..=3) {
        let chain = random_chain(&mut rng(seed), n, a, 9);
        let check = is_schur_closed(&chain);
        prop_assert_eq!(check.closed, brute_force_schur_closed(&chain));
        if let Some(w) = check.witness {
            prop_assert!(!chain.code_or_full(w.level + 1).contains(&w.product));
            prop_assert_eq!(w.left.schur(&w.right).unwrap(), w.product);
        }
    }

    #[test]
    fn schur_closure_is_closed_and_idempotent(seed in any::<u64>(), n in 1usize..=10, a in 1usize..=4) {
        let chain = random_chain(&mut rng(seed), n, a, 16);
        let closed = schur_closure_chain(&chain);
        prop_assert!(is_schur_closed(&closed).closed);
        prop_assert!(chain.is_levelwise_subchain_of(&closed));
        prop_assert_eq!(schur_closure_chain(&closed), closed);
    }

    #[test]
    fn chain_and_parity_bases_cut_out_the_codes(seed in any::<u64>(), n in 1usize..=10, a in 1usize..=4) {
        let chain = random_chain(&mut rng(seed), n, a, 20);
        let b = chain_basis(&chain);
        let h = parity_chain_basis(&chain);
        for i in 0..chain.levels() {
            prop_assert_eq!(&BinaryCode::from_rows(n, b.prefix(i)).unwrap(), chain.code(i));
            let checks = &h.vectors()[..h.r(i)];
            for x in BinaryCode::full(n).codewords().unwrap() {
                let in_kernel = checks.iter().all(|c| !c.dot(&x).unwrap());
                prop_assert_eq!(in_kernel, chain.code(i).contains(&x));
            }
        }
    }

    #[test]
    fn hnf_is_canonical(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let mut gens: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i, 8)).collect();
        for _ in 0..4 {
            gens.push(IntVector::new((0..n).map(|_| r.random_range(-20..20)).collect()));
        }
        let l = hnf(&gens, n).unwrap();
        gens.reverse();
        prop_assert_eq!(&hnf(&gens, n).unwrap(), &l);
        prop_assert_eq!(hnf(&l.basis(), n).unwrap(), l);
    }

    #[test]
    fn determinant_times_cosets_is_full_count(seed in any::<u64>(), n in 1usize..=5, a in 1usize..=3) {
        let l = random_lattice(&mut rng(seed), n, a);
        let cosets = cosets_of_lattice(&l, a).unwrap();
        prop_assert_eq!(l.determinant_u128().unwrap() * cosets.len() as u128, 1u128 << (a * n));
    }

    #[test]
    fn membership_agrees_with_residues(seed in any::<u64>(), n in 1usize..=5, a in 1usize..=3) {
        let mut r = rng(seed);
        let l = random_lattice(&mut r, n, a);
        let cosets = cosets_of_lattice(&l, a).unwrap();
        let b = 1i64 << (a + 1);
        for _ in 0..50 {
            let v = IntVector::new((0..n).map(|_| r.random_range(-b..=b)).collect());
            prop_assert_eq!(l.contains(&v).unwrap(), cosets.contains_vector(&v));
        }
    }

    #[test]
    fn lattice_sum_laws(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let (x, y, z) = (random_lattice(&mut r, n, 2), random_lattice(&mut r, n, 2), random_lattice(&mut r, n, 2));
        let xy = lattice_sum(&x, &y).unwrap();
        prop_assert_eq!(&xy, &lattice_sum(&y, &x).unwrap());
        prop_assert_eq!(lattice_sum(&xy, &z).unwrap(), lattice_sum(&x, &lattice_sum(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(lattice_sum(&x, &x).unwrap(), x);
    }

    #[test]
    fn congruence_kernel_meets_every_congruence(seed in any::<u64>(), n in 1usize..=6, k in 1usize..=4) {
        let mut r = rng(seed);
        let rows: Vec<IntVector> = (0..k).map(|_| IntVector::new((0..n).map(|_| r.random_range(-5..=5)).collect())).collect();
        let moduli: Vec<u64> = (0..k).map(|_| 1u64 << r.random_range(1..=3)).collect();
        let l = congruence_kernel(&rows, &moduli, n).unwrap();
        for b in l.basis() {
            for (h, &m) in rows.iter().zip(&moduli) {
                prop_assert_eq!(b.dot(h).unwrap().rem_euclid(m as i128), 0);
            }
        }
        let lcm = *moduli.iter().max().unwrap() as i64;
        prop_assert!(l.contains_scaled_integers(lcm).unwrap());
    }

    #[test]
    fn closure_ignores_redundant_seeds(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let vs: Vec<IntVector> = (0..4).map(|_| IntVector::new((0..n).map(|_| r.random_range(0..4)).collect())).collect();
        let s = CosetSet::from_vectors(n, 2, &vs).unwrap();
        let closure = subgroup_closure(&s).unwrap();
        for drop in s.residues() {
            let rest = CosetSet::new(n, 2, s.residues().iter().copied().filter(|x| x != drop)).unwrap();
            if rest.is_empty() {
                continue;
            }
            let c = subgroup_closure(&rest).unwrap();
            if c.contains(drop) {
                prop_assert_eq!(&c, &closure);
            }
        }
    }

    #[test]
    fn lambda_d_inside_lambda_cf(seed in any::<u64>(), n in 1usize..=8, a in 1usize..=3) {
        let mut r = rng(seed);
        let chain = random_chain(&mut r, n, a, 10);
        let d = construction_d(&chain, &random_chain_basis(&mut r, &chain)).unwrap();
        let cf = code_formula_lattice(&chain).unwrap();
        let cmp = d.compare(&cf).unwrap();
        let inside = matches!(cmp, Comparison::Equal | Comparison::FirstInSecond { .. });
        prop_assert!(inside, "{}", cmp.label());
    }

    #[test]
    fn lambda_cf_two_ways(seed in any::<u64>(), n in 1usize..=6, a in 1usize..=3) {
        let chain = random_chain(&mut rng(seed), n, a, 10);
        let gamma = code_formula_cosets(&chain).unwrap();
        let via_closure = lattice_from_cosets(&subgroup_closure(&gamma).unwrap()).unwrap();
        prop_assert_eq!(via_closure, code_formula_lattice(&chain).unwrap());
    }

    #[test]
    fn gamma_grows_with_codes(seed in any::<u64>(), n in 1usize..=6, a in 1usize..=3) {
        let mut r = rng(seed);
        let chain = random_chain(&mut r, n, a, 10);
        let level = r.random_range(0..a);
        let extra = random_bitvector(&mut r, n);
        let codes: Vec<BinaryCode> = chain
            .codes()
            .iter()
            .enumerate()
            .map(|(i, c)| if i >= level { c.sum(&BinaryCode::from_rows(n, &[extra]).unwrap()).unwrap() } else { c.clone() })
            .collect();
        let bigger = NestedChain::new(codes).unwrap();
        prop_assert!(code_formula_cosets(&chain).unwrap().is_subset_of(&code_formula_cosets(&bigger).unwrap()));
    }

    #[test]
    fn d_prime_lower_endpoint_is_redundant(seed in any::<u64>(), n in 1usize..=8, a in 1usize..=4) {
        let chain = random_chain(&mut rng(seed), n, a, 20);
        let h = parity_chain_basis(&chain);
        let (rows, moduli) = construction_d_prime_system(&h);
        let inclusive = congruence_kernel(&rows, &moduli, n).unwrap();
        // keep only r_{i+1} < j ≤ r_i
        let mut strict_rows = Vec::new();
        let mut strict_mod = Vec::new();
        for i in 0..a {
            for j in h.r(i + 1) + 1..=h.r(i) {
                strict_rows.push(h.vectors()[j - 1].psi());
                strict_mod.push(1u64 << (i + 1));
            }
        }
        prop_assert_eq!(congruence_kernel(&strict_rows, &strict_mod, n).unwrap(), inclusive);
    }

    #[test]
    fn ring_laws_random(seed in any::<u64>(), a in 4usize..=6) {
        let mut r = rng(seed);
        let mut el = || UaElement::new(r.random_range(0..1u8 << a), a).unwrap();
        let (x, y, z) = (el(), el(), el());
        prop_assert_eq!(x.mul(&y.mul(&z).unwrap()).unwrap(), x.mul(&y).unwrap().mul(&z).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
        let mut p = UaElement::one(a);
        for _ in 0..a {
            p = p.mul(&UaElement::u(a)).unwrap();
        }
        prop_assert_eq!(p, UaElement::zero(a));
    }

    #[test]
    fn phi_is_injective_and_satisfies_carry_law(seed in any::<u64>(), n in 1usize..=8, a in 1usize..=6) {
        let mut r = rng(seed);
        let (x, y) = (random_ua_vector(&mut r, n, a), random_ua_vector(&mut r, n, a));
        prop_assert_eq!(phi(&x) == phi(&y), x == y);
        prop_assert!(phi(&x).as_slice().iter().all(|&e| (0..1 << a).contains(&e)));
        prop_assert!(phi_sum_identity(&x, &y).unwrap().0);
    }

    #[test]
    fn theorem2_random(seed in any::<u64>(), n in 1usize..=6, a in 1usize..=3, k in 1usize..=3) {
        let code = random_ua_code(&mut rng(seed), n, a, k);
        prop_assert!(a_prime_lattice_check(&code).is_ok());
    }

    #[test]
    fn chain_to_ua_code_reproduces_gamma(seed in any::<u64>(), n in 1usize..=8, a in 1usize..=3) {
        let mut r = rng(seed);
        let chain = random_chain(&mut r, n, a, 10);
        let code = chain_to_ua_code(&chain, &random_chain_basis(&mut r, &chain)).unwrap();
        let (gamma, _) = construction_a_prime(&code).unwrap();
        prop_assert_eq!(gamma, code_formula_cosets(&chain).unwrap());
    }

    #[test]
    fn schur_closed_chains_give_shifted_closed_codes(seed in any::<u64>(), n in 1usize..=6, a in 1usize..=3) {
        let chain = schur_closure_chain(&random_chain(&mut rng(seed), n, a, 6));
        if chain.total_dim() <= 12 {
            let code = chain_to_ua_code(&chain, &chain_basis(&chain)).unwrap();
            prop_assert!(is_shifted_schur_closed(&code).unwrap().closed);
            let (gamma, _) = construction_a_prime(&code).unwrap();
            prop_assert!(is_subgroup(&gamma).is_subgroup);
        }
    }

    #[test]
    fn a_prime_lattice_is_the_closure(seed in any::<u64>(), n in 1usize..=4, a in 1usize..=3, k in 1usize..=2) {
        let code = random_ua_code(&mut rng(seed), n, a, k);
        let (gamma, lattice) = construction_a_prime(&code).unwrap();
        let cosets = cosets_of_lattice(&lattice, a).unwrap();
        prop_assert!(gamma.is_subset_of(&cosets));
        prop_assert_eq!(&cosets, &subgroup_closure(&gamma).unwrap());
        // dropping any residue added by the closure leaves a non-subgroup
        for x in cosets.residues().iter().filter(|x| !gamma.contains(x)).take(4) {
            let rest = CosetSet::new(n, a, cosets.residues().iter().copied().filter(|y| y != x)).unwrap();
            prop_assert!(!is_subgroup(&rest).is_subgroup);
        }
        prop_assert_eq!(enumerate_ua(&code).unwrap().len(), gamma.len());
    }
}

#[test]
fn reed_muller_dimensions_and_nesting() {
    let binom = |m: usize, j: usize| (0..j).fold(1usize, |acc, t| acc * (m - t) / (t + 1));
    for m in 0..=5 {
        for r in 0..=m {
            let c = reed_muller(r, m).unwrap();
            assert_eq!(c.dim(), (0..=r).map(|j| binom(m, j)).sum::<usize>());
            if r < m {
                assert!(c.is_subcode_of(&reed_muller(r + 1, m).unwrap()));
            }
        }
    }
}

#[test]
fn closed_chains_give_one_d_lattice() {
    let mut r = rng(11);
    let mut seen = 0;
    while seen < 10 {
        let n = r.random_range(1..=4);
        let a = r.random_range(1..=3);
        let chain = schur_closure_chain(&random_chain(&mut r, n, a, 8));
        let cf = code_formula_lattice(&chain).unwrap();
        for b in all_chain_bases(&chain).unwrap() {
            assert_eq!(construction_d(&chain, &b).unwrap(), cf);
        }
        seen += 1;
    }
}

#[test]
fn residue_round_trip() {
    let mut r = rng(5);
    for _ in 0..200 {
        let n = r.random_range(1..=10);
        let a = r.random_range(1..=6);
        let m = 1i64 << a;
        let v = IntVector::new((0..n).map(|_| r.random_range(-3 * m..3 * m)).collect());
        let res = Residue::from_vector(&v, a);
        assert_eq!(res.to_vector(n), v.rem_euclid(m));
    }
}
