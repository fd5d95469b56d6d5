mod common;

use common::{m, random_gamma, random_pauli};
use qudit_frustration::gf::GfMatrix;
use qudit_frustration::group::{self, GroupSpec};
use qudit_frustration::oracle::{self, OptimizerConfig};
use qudit_frustration::pauli::PauliOperator;
use qudit_frustration::stabilizer::{self, Stabilizer};
use qudit_frustration::symplectic;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn closed_form_clique_matches_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..150 {
        let d = m([2, 3][trial % 2]);
        let k = rng.gen_range(1..=4);
        if (d.get() as u64).pow(k as u32) > 81 {
            continue;
        }
        let spec = GroupSpec::from_gamma(random_gamma(&mut rng, d, k)).unwrap();
        let graph = group::commutation_graph(&spec, 81).unwrap();
        assert_eq!(
            group::clique_number(&spec).unwrap(),
            group::clique_number_bruteforce(&graph).unwrap(),
            "trial {trial}, gamma {}",
            spec.gamma()
        );
    }
}

#[test]
fn chromatic_number_at_least_clique() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let k = rng.gen_range(1..=3);
        let d = m(if k == 3 { 2 } else { 3 });
        let spec = GroupSpec::from_gamma(random_gamma(&mut rng, d, k)).unwrap();
        let graph = group::commutation_graph(&spec, 64).unwrap();
        let chi = group::chromatic_number_exact(&graph).unwrap();
        let omega = group::clique_number_bruteforce(&graph).unwrap();
        assert!(chi >= omega);
        assert!(chi as usize <= graph.vertex_count());
    }
}

#[test]
fn sos_sandwich_on_random_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let cfg = OptimizerConfig {
        restarts: 4,
        max_iters: 200,
        ..OptimizerConfig::default()
    };
    for trial in 0..30 {
        let d = m([2, 3][trial % 2]);
        let n = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=3);
        let gens = (0..k).map(|_| random_pauli(&mut rng, d, n)).collect();
        let spec = GroupSpec::from_generators(gens).unwrap();
        let bound = group::sos_bound(&spec).unwrap() as f64;
        let res = oracle::max_sos(&spec, &cfg).unwrap();
        assert!(
            res.iterated <= bound + 1e-9,
            "trial {trial}: {} > {bound}",
            res.iterated
        );
        assert!(
            (res.witness - bound).abs() <= 1e-9,
            "trial {trial}: witness {}",
            res.witness
        );
        assert!((res.value - bound).abs() <= 1e-9);
    }
}

#[test]
fn sum_eigenvalue_respects_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for trial in 0..20 {
        let d = m([3, 5][trial % 2]);
        let n = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=2);
        let gens = (0..k).map(|_| random_pauli(&mut rng, d, n)).collect();
        let spec = GroupSpec::from_generators(gens).unwrap();
        let res = oracle::max_sum_eigenvalue(&spec).unwrap();
        let bound = group::sum_bound(&spec).unwrap();
        assert!(
            res.lambda_max <= bound + 1e-9,
            "trial {trial}: {} > {bound}",
            res.lambda_max
        );
        assert!(res.residual < 1e-9 * res.hamiltonian_norm.max(1.0));
    }
}

#[test]
fn block_reduction_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for trial in 0..200 {
        let d = m([2, 3, 5, 7][trial % 4]);
        let k = rng.gen_range(1..=8);
        let gamma = random_gamma(&mut rng, d, k);
        let br = symplectic::block_reduce(&gamma).unwrap();
        let reduced = br.o.transpose().mul(&gamma).unwrap().mul(&br.o).unwrap();
        let (n, mm) = (br.n, br.m());
        assert_eq!(n - mm, gamma.nullity(), "trial {trial}");
        for r in 0..n {
            for c in 0..n {
                assert_eq!(reduced.get(r, c), 0);
            }
        }
        let block: Vec<Vec<i64>> = (0..n)
            .map(|r| (n..k).map(|c| d.signed(reduced.get(r, c))).collect())
            .collect();
        let block = GfMatrix::from_rows(d, &block).unwrap();
        assert_eq!(block, br.d_block);
        assert_eq!(br.d_block.rank(), mm);
    }
}

/// Stabilizers are grown one random commuting generator at a time.
#[test]
fn numeric_overlap_matches_rank_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let cfg = OptimizerConfig {
        restarts: 8,
        ..OptimizerConfig::default()
    };
    let d = m(2);
    let mut tested = 0;
    while tested < 12 {
        let n = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=n);
        let mut gens = Vec::new();
        for _ in 0..50 {
            if gens.len() == k {
                break;
            }
            let mut p = random_pauli(&mut rng, d, n);
            p = p.with_phase_exp(0).canonical_unit_phase();
            if gens
                .iter()
                .all(|g: &PauliOperator| g.commutes_with(&p).unwrap())
            {
                let mut trial = gens.clone();
                trial.push(p);
                if Stabilizer::new(trial.clone()).is_ok() {
                    gens = trial;
                }
            }
        }
        let Ok(s) = Stabilizer::new(gens) else {
            continue;
        };
        for b in stabilizer::gm_reports(&s, 16).unwrap() {
            let o = oracle::max_product_overlap(&s, &b.q, &cfg).unwrap();
            assert!(
                ((1.0 - o.overlap) - b.gm_value()).abs() < 1e-6,
                "{:?} Q={}: {} vs {}",
                s.generators()
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>(),
                b.q,
                1.0 - o.overlap,
                b.gm
            );
        }
        tested += 1;
    }
}
