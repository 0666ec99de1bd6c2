mod support;

use std::collections::BTreeMap;

use frobex_core::cartier::{bound_check, pair_exponent, validate_fgraded, DEFAULT_SLACK};
use frobex_core::{CartierSpec, Ideal, MonomialOrder, Ring, RingContext};
use num_rational::Ratio;
use proptest::prelude::*;
use support::{random, MonomialSystem};

fn small_ring(p: u64, n: usize) -> Ring {
    let names = ["x", "y", "z"];
    RingContext::new(p, &names[..n]).unwrap()
}

fn minors(p: u64) -> Ideal {
    let r = RingContext::new(p, &["a", "b", "c", "d", "e", "f"]).unwrap();
    Ideal::parse(&r, &["a*e - b*d", "a*f - c*d", "b*f - c*e"]).unwrap()
}

fn cs(spec: &CartierSpec, emax: u32) -> Vec<u64> {
    (1..=emax)
        .map(|e| spec.complexity_term(e).unwrap().c)
        .collect()
}

#[test]
fn polynomial_rings_are_generated_in_degree_one() {
    for p in [2u64, 3, 5] {
        for n in 1..=3 {
            let spec = CartierSpec::total(Ideal::zero(&small_ring(p, n))).unwrap();
            assert_eq!(cs(&spec, 3), vec![1, 0, 0]);
            let report = spec.complexity_sequence(3).unwrap();
            assert_eq!(report.exponent_estimate, f64::NEG_INFINITY);
            assert!(report.bound.ok);
        }
    }
}

#[test]
fn univariate_powers_match_closed_form() {
    for p in [2u64, 3] {
        for a in 1..=3u64 {
            let r = small_ring(p, 1);
            let i = Ideal::parse(&r, &[format!("x^{a}")]).unwrap();
            let spec = CartierSpec::total(i).unwrap();
            for e in 1..=3 {
                let (l, k, c) = support::univariate(a, p, e);
                let level = spec.level_ideal(e).unwrap();
                let want_l = Ideal::parse(&r, &[format!("x^{l}")]).unwrap();
                let want_k = Ideal::parse(&r, &[format!("x^{k}")]).unwrap();
                assert!(level.ideal.equals(&want_l).unwrap());
                assert_eq!(level.generating_degree, l);
                assert!(spec.subring_piece(e).unwrap().equals(&want_k).unwrap());
                assert_eq!(spec.complexity_term(e).unwrap().c, c, "a={a} p={p} e={e}");
            }
        }
    }
    // x^2 over F_2: L_1 = (x^2), K_2 = (x^6), c = [1, 0, 0]
    assert_eq!(support::univariate(2, 2, 1), (2, 4, 1));
    assert_eq!(support::univariate(2, 2, 2), (6, 6, 0));
}

#[test]
fn determinantal_sequence_matches_segre_model() {
    let i = minors(2);
    assert_eq!(i.krull_dimension().unwrap(), 4);
    let spec = CartierSpec::total(i).unwrap();
    let report = spec.complexity_sequence(3).unwrap();
    let got: Vec<u64> = report.records.iter().map(|r| r.c).collect();
    assert_eq!(got, support::segre_complexity(2, 3));
    assert_eq!(got, vec![3, 1, 3]);
    let degrees: Vec<u64> = report.records.iter().map(|r| r.d).collect();
    assert_eq!(degrees, vec![4, 12, 28]);
    assert!(report.bound.ok);
    assert_eq!(report.bound.rhs, 64.0);
}

#[test]
fn typical_pair_system_is_fgraded() {
    let r = small_ring(2, 2);
    let a = Ideal::parse(&r, &["x", "y"]).unwrap();
    let t = Ratio::new(1, 2);
    let levels: BTreeMap<u32, Ideal> = (0..=3)
        .map(|e| (e, a.power(pair_exponent(t, 2, e).unwrap()).unwrap()))
        .collect();
    assert_eq!(validate_fgraded(&levels, 3).unwrap(), None);
}

#[test]
fn bound_check_records_inputs() {
    let r = small_ring(2, 1);
    let spec = CartierSpec::total(Ideal::parse(&r, &["x^2"]).unwrap()).unwrap();
    let report = spec.complexity_sequence(3).unwrap();
    assert_eq!(report.exponent_estimate, f64::NEG_INFINITY);
    let verdict = bound_check(&report, DEFAULT_SLACK);
    assert!(verdict.ok);
    assert_eq!((verdict.n, verdict.dim), (1, 0));
    assert_eq!(verdict.rhs, 0.0);
    // l = max log_2(d_e)/e over d = 2, 6, 14, attained at e = 2
    assert!((verdict.l - 6f64.log2() / 2.0).abs() < 1e-12);
}

fn monomial_spec(r: &Ring, i: &[Vec<u64>], system: &MonomialSystem) -> CartierSpec {
    let base = random::to_ideal(r, i);
    match system {
        MonomialSystem::Total => CartierSpec::total(base).unwrap(),
        MonomialSystem::Pair { a, num, den } => {
            CartierSpec::pair(base, random::to_ideal(r, a), Ratio::new(*num, *den)).unwrap()
        }
    }
}

fn system_strategy(n: usize) -> impl Strategy<Value = MonomialSystem> {
    prop_oneof![
        Just(MonomialSystem::Total),
        (any::<u64>(), 0u64..=3, 1u64..=2).prop_map(move |(seed, num, den)| {
            let mut rng = random::rng(seed);
            MonomialSystem::Pair {
                a: random::monomial_ideal(&mut rng, n, 2, 2),
                num,
                den,
            }
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn staircase_oracle_agrees(seed in any::<u64>(), (n, system) in (1usize..=2).prop_flat_map(|n| (Just(n), system_strategy(n)))) {
        let r = small_ring(2, n);
        let mut rng = random::rng(seed);
        let i = random::monomial_ideal(&mut rng, n, 3, 2);
        let spec = monomial_spec(&r, &i, &system);
        for e in 1..=2 {
            let c = spec.complexity_term(e).unwrap().c;
            prop_assert_eq!(c, support::staircase_complexity(&i, n, 2, e, &system), "e = {}", e);
            let level = spec.level_ideal(e).unwrap();
            let want = random::to_ideal(&r, &support::staircase_level(&i, n, 2, e, &system));
            prop_assert!(level.ideal.equals(&want).unwrap());
        }
    }

    #[test]
    fn levels_are_sandwiched_and_closed(seed in any::<u64>(), n in 1usize..=3, p in prop::sample::select(vec![2u64, 3]), pair in any::<bool>()) {
        let r = small_ring(p, n);
        let mut rng = random::rng(seed);
        let base = random::homogeneous_ideal(&mut rng, &r, 2, 2);
        prop_assume!(!base.is_unit().unwrap());
        let spec = if pair {
            CartierSpec::pair(base.clone(), Ideal::maximal(&r), Ratio::new(1, 2)).unwrap()
        } else {
            CartierSpec::total(base.clone()).unwrap()
        };
        for e in 1..=2 {
            let level = spec.level_ideal(e).unwrap();
            prop_assert!(base.sandwiches(&level).unwrap());
            let k = spec.subring_piece(e).unwrap();
            prop_assert!(level.ideal.contains_ideal(&k).unwrap());
            let exact = spec.complexity_term(e).unwrap();
            let deeper = spec.complexity_term_to_degree(e, level.generating_degree + 3).unwrap();
            prop_assert_eq!(exact.c, deeper.c);
        }
    }

    #[test]
    fn complexity_is_order_and_presentation_independent(seed in any::<u64>(), n in 1usize..=3) {
        let r = small_ring(2, n);
        let mut rng = random::rng(seed);
        let base = random::homogeneous_ideal(&mut rng, &r, 2, 2);
        prop_assume!(!base.is_unit().unwrap());
        let spec = CartierSpec::total(base.clone()).unwrap();
        let want = cs(&spec, 2);
        let lex = spec.reordered(MonomialOrder::Lex).unwrap();
        prop_assert_eq!(cs(&lex, 2), want.clone());
        let mut gens = base.gens().to_vec();
        gens.push(gens[0].mul(&frobex_core::Polynomial::variable(&r, 0)).unwrap());
        gens.reverse();
        let regen = CartierSpec::total(Ideal::new(&r, gens).unwrap()).unwrap();
        prop_assert_eq!(cs(&regen, 2), want);
    }

    #[test]
    fn pair_with_zero_exponent_is_total(seed in any::<u64>(), n in 1usize..=2, p in prop::sample::select(vec![2u64, 3])) {
        let r = small_ring(p, n);
        let mut rng = random::rng(seed);
        let base = random::homogeneous_ideal(&mut rng, &r, 2, 2);
        prop_assume!(!base.is_unit().unwrap());
        let total = CartierSpec::total(base.clone()).unwrap();
        let pair = CartierSpec::pair(base, Ideal::maximal(&r), Ratio::from_integer(0)).unwrap();
        for e in 1..=2 {
            prop_assert!(pair.level_ideal(e).unwrap().ideal.equals(&total.level_ideal(e).unwrap().ideal).unwrap());
        }
    }
}
