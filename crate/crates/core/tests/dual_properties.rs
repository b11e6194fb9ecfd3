//! Invariants of the multiplicity-matrix oracle and its agreement with the engine.

mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use sparsemult_core::dual::{
    build_s_k, dz, multiplicity_dz, nullity_profile, planted_triangular_system, random_family, random_system,
    shift, SparsePolynomial, SparseSystem, DEFAULT_BOUND, DEFAULT_K_MAX,
};
use sparsemult_core::engine::mult0;
use sparsemult_core::num::{rat, ratio};
use sparsemult_core::support::{check_conditions, reduce_minimal};
use sparsemult_core::{LatticePoint, PointSet, Rational, SupportFamily};

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0xd0a1), failure_persistence: None, ..Config::default() }
}

fn origin(n: usize) -> Vec<Rational> {
    vec![rat(0); n]
}

fn isolated_families(count: usize, start: u64) -> Vec<(u64, SupportFamily)> {
    let mut out = Vec::new();
    let mut seed = start;
    while out.len() < count {
        let n = 2 + (seed % 2) as usize;
        let a = random_family(n, 4, 4, seed).unwrap();
        let c = check_conditions(&a);
        if c.h1 && c.h2 {
            out.push((seed, a));
        }
        seed += 1;
    }
    out
}

fn cap_for(expected: u64) -> usize {
    DEFAULT_K_MAX.max(expected as usize + 1)
}

fn polynomial(n: usize) -> impl Strategy<Value = SparsePolynomial> {
    proptest::collection::vec((proptest::collection::vec(0i64..=3, n), -9i64..=9), 1..=5).prop_map(move |t| {
        SparsePolynomial::from_terms(n, t.into_iter().map(|(a, c)| (LatticePoint::new(a), rat(c))))
    })
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn shift_round_trips(
        p in (2usize..=3).prop_flat_map(polynomial),
        z in proptest::collection::vec((-4i64..=4, 1i64..=3), 3),
        ys in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 3), 10),
    ) {
        let n = p.n();
        let zeta: Vec<Rational> = z[..n].iter().map(|&(a, b)| ratio(a, b)).collect();
        let q = shift(&p, &zeta).unwrap();
        for y in ys {
            let y: Vec<Rational> = y[..n].iter().map(|&v| rat(v)).collect();
            let back: Vec<Rational> = y.iter().zip(&zeta).map(|(a, b)| a - b).collect();
            prop_assert_eq!(q.evaluate(&back), p.evaluate(&y));
        }
    }
}

#[test]
fn random_systems_are_deterministic() {
    let a = SupportFamily::new(common::ex1()).unwrap();
    let s = random_system(&a, 11, DEFAULT_BOUND).unwrap();
    assert_eq!(s, random_system(&a, 11, DEFAULT_BOUND).unwrap());
    assert_ne!(s.polys, random_system(&a, 12, DEFAULT_BOUND).unwrap().polys);
    for (p, set) in s.polys.iter().zip(a.supports()) {
        assert_eq!(&p.support(), set);
    }
    assert!(random_system(&a, 0, 1).is_err());
}

#[test]
fn origin_matrices_are_raw_coefficients() {
    for (seed, a) in isolated_families(6, 0) {
        let f = random_system(&a, seed, 50).unwrap();
        let m = build_s_k(&f, &origin(a.n()), 4).unwrap();
        for (r, (beta, j)) in m.rows.iter().enumerate() {
            for (c, alpha) in m.cols.iter().enumerate() {
                let want = if alpha.dominates(beta) { f.polys[*j].coeff(&alpha.sub(beta)) } else { rat(0) };
                assert_eq!(m.entry(r, c), want, "seed {seed}");
            }
        }
    }
}

#[test]
fn matrix_dimensions_follow_the_binomial_formula() {
    let a = SupportFamily::new(common::ex1()).unwrap();
    let f = random_system(&a, 1, DEFAULT_BOUND).unwrap();
    let binom = |n: usize, k: usize| -> usize { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
    for k in 1..=5 {
        let m = build_s_k(&f, &origin(3), k).unwrap();
        assert_eq!(m.shape(), (binom(k - 1 + 3, k - 1) * 3, binom(k + 3, k)));
    }
}

#[test]
fn nullities_rise_strictly_then_stay() {
    for (seed, a) in isolated_families(20, 100) {
        let expected = mult0(&a, None).unwrap();
        let f = random_system(&a, seed, DEFAULT_BOUND).unwrap();
        let z = origin(a.n());
        let r = dz(&f, &z, cap_for(expected)).unwrap();
        let profile = nullity_profile(&f, &z, r.k0 + 2).unwrap();
        for k in 0..r.k0 {
            assert!(profile[k] < profile[k + 1], "seed {seed}: {profile:?}");
        }
        assert_eq!(profile[r.k0], profile[r.k0 + 1], "seed {seed}");
        assert_eq!(profile[r.k0 + 1], profile[r.k0 + 2], "seed {seed}");
        assert_eq!(r.multiplicity as u64, expected, "seed {seed}");
    }
}

#[test]
fn scaling_and_translation_preserve_multiplicity() {
    for (seed, a) in isolated_families(10, 300) {
        let n = a.n();
        let f = random_system(&a, seed, DEFAULT_BOUND).unwrap();
        let base = multiplicity_dz(&f, &origin(n), DEFAULT_K_MAX).unwrap();

        let mut scaled = f.clone();
        scaled.polys[0] = scaled.polys[0].scale(&ratio(-7, 3));
        assert_eq!(multiplicity_dz(&scaled, &origin(n), DEFAULT_K_MAX).unwrap(), base, "seed {seed}");

        let zeta: Vec<Rational> = (0..n).map(|i| ratio(i as i64 + 2, 3)).collect();
        let minus: Vec<Rational> = zeta.iter().map(|v| -v).collect();
        let moved = SparseSystem {
            polys: f.polys.iter().map(|p| shift(p, &minus).unwrap()).collect(),
            seed: f.seed,
        };
        assert_eq!(multiplicity_dz(&moved, &zeta, DEFAULT_K_MAX).unwrap(), base, "seed {seed}");
    }
}

#[test]
fn engine_matches_oracle_on_conic_pair() {
    let a = SupportFamily::new(common::family(2, &[&[&[2, 0], &[1, 1]], &[&[1, 1], &[0, 2]]])).unwrap();
    let m = mult0(&a, None).unwrap();
    let f = random_system(&a, 5, DEFAULT_BOUND).unwrap();
    assert_eq!(multiplicity_dz(&f, &origin(2), DEFAULT_K_MAX).unwrap() as u64, m);
    assert_eq!(m, 4);
}

#[test]
fn reduction_preserves_multiplicity_on_instances() {
    for (seed, a) in isolated_families(20, 500) {
        let expected = mult0(&a, None).unwrap();
        let reduced = reduce_minimal(&a);
        assert_eq!(mult0(&reduced, None).unwrap(), expected, "seed {seed}");
        let f = random_system(&reduced, seed, DEFAULT_BOUND).unwrap();
        let got = multiplicity_dz(&f, &origin(a.n()), cap_for(expected)).unwrap();
        assert_eq!(got as u64, expected, "seed {seed}");
    }
}

#[test]
fn planted_examples() {
    let empty = || PointSet::new(1, []).unwrap();
    // h_1 linear in x_1, lower part on the planar pair with multiplicity 7.
    let p = planted_triangular_system(&[empty()], &common::ex2(), 3, DEFAULT_BOUND).unwrap();
    assert!(p.system.is_zero_at(&p.zeta));
    assert_eq!(multiplicity_dz(&p.system, &p.zeta, DEFAULT_K_MAX).unwrap(), 7);
    assert_eq!(multiplicity_dz(&p.specialize(), &origin(2), DEFAULT_K_MAX).unwrap(), 7);

    let upper = common::family(2, &[&[&[2, 0], &[1, 1]], &[&[0, 2]]]);
    let p = planted_triangular_system(&upper, &[], 4, DEFAULT_BOUND).unwrap();
    assert_eq!(multiplicity_dz(&p.system, &p.zeta, DEFAULT_K_MAX).unwrap(), 1);

    let p = planted_triangular_system(&[empty()], &common::family(1, &[&[&[2]]]), 5, DEFAULT_BOUND).unwrap();
    assert_eq!(multiplicity_dz(&p.system, &p.zeta, DEFAULT_K_MAX).unwrap(), 2);

    let with_origin = common::family(1, &[&[&[0], &[2]]]);
    assert!(planted_triangular_system(&[empty()], &with_origin, 5, DEFAULT_BOUND).is_err());
}

#[test]
fn planted_zero_matches_specialization() {
    let mut done = 0;
    let mut seed = 0u64;
    while done < 20 {
        seed += 1;
        let r = 1 + (seed % 2) as usize;
        let m = 1 + (seed / 2 % 2) as usize;
        let lower = random_family(m, 3, 3, seed).unwrap();
        let c = check_conditions(&lower);
        if !(c.h1 && c.h2) {
            continue;
        }
        let upper = random_family(r, 2, 2, seed + 1000).unwrap();
        let p = planted_triangular_system(upper.supports(), lower.supports(), seed, DEFAULT_BOUND).unwrap();
        let expected = mult0(&lower, None).unwrap();
        let cap = cap_for(expected);
        let at_zeta = multiplicity_dz(&p.system, &p.zeta, cap).unwrap();
        let specialized = multiplicity_dz(&p.specialize(), &origin(m), cap).unwrap();
        assert_eq!(at_zeta, specialized, "seed {seed}");
        assert_eq!(specialized as u64, expected, "seed {seed}");
        for k in 1..=4 {
            assert_eq!(
                nullity_profile(&p.system, &p.zeta, k).unwrap()[k],
                nullity_profile(&p.specialize(), &origin(m), k).unwrap()[k],
                "seed {seed}, k = {k}"
            );
        }
        done += 1;
    }
}
