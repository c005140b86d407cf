use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use ulrc::optimize::{move_to_right, residue_shift};
use ulrc::sim::random_pattern;
use ulrc::{
    canonicalize, exhaustive_optimal_profiles, gabidulin_lrc, greedy_optimal_profile, objective, planted_random_code,
    pyramid_unequal, respects, unequal_info_bound, witness_set_from, AllSymbolLocalityProfile, DecodeOutcome,
    DesignedRepair, ErasurePattern, Execution, Field, InfoLocalityProfile, LinearCode, LinearizedPolynomial,
    LocalityMethod, LocalityRequirement, OracleConfig, Symbol,
};

fn field(idx: usize) -> Field {
    match idx {
        0 => Field::with_order(2).unwrap(),
        1 => Field::with_order(5).unwrap(),
        2 => Field::with_order(9).unwrap(),
        3 => Field::with_order(64).unwrap(),
        4 => Field::new(2, 2, 3).unwrap(),
        _ => Field::new(3, 2, 2).unwrap(),
    }
}

fn planted(seed: u64) -> LinearCode {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let f = Field::with_order([2, 4, 8][rng.random_range(0..3)]).unwrap();
    let k = rng.random_range(1..=5);
    planted_random_code(&f, k, 3, 3, 10, &mut rng).unwrap()
}

fn requirement() -> impl Strategy<Value = LocalityRequirement> {
    prop::collection::vec(0usize..5, 1..=5)
        .prop_filter("total within the exhaustive budget", |v| {
            (1..=14).contains(&v.iter().sum::<usize>())
        })
        .prop_map(|v| LocalityRequirement::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(idx in 0usize..6, seed: u64) {
        let f = field(idx);
        let mut rng = SplitMix64::seed_from_u64(seed);
        let order = f.order();
        let [a, b, c]: [Symbol; 3] = std::array::from_fn(|_| rng.random_range(0..order) as Symbol);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.div(f.mul(a, b), a).unwrap(), b);
        }
        prop_assert_eq!(f.from_vector(&f.to_vector(a)).unwrap(), a);
    }

    #[test]
    fn frobenius_is_a_base_field_automorphism(idx in 0usize..6, seed: u64) {
        let f = field(idx);
        let mut rng = SplitMix64::seed_from_u64(seed);
        let order = f.order();
        let [a, b]: [Symbol; 2] = std::array::from_fn(|_| rng.random_range(0..order) as Symbol);
        let s = rng.random_range(0..f.base_order()) as Symbol;
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(s, 1), s);
        prop_assert_eq!(f.frobenius(a, f.ext_degree()), a);
    }

    #[test]
    fn moore_round_trip(seed: u64, big_k in 1usize..=3) {
        let f = Field::new(2, 2, 3).unwrap();
        let mut rng = SplitMix64::seed_from_u64(seed);
        let order = f.order();
        let points: Vec<Symbol> = loop {
            let p: Vec<Symbol> = (0..big_k).map(|_| rng.random_range(1..order) as Symbol).collect();
            if f.base_rank(&p) == big_k {
                break p;
            }
        };
        let coeffs: Vec<Symbol> = (0..big_k).map(|_| rng.random_range(0..order) as Symbol).collect();
        let poly = LinearizedPolynomial::new(&f, coeffs.clone()).unwrap();
        let values: Vec<Symbol> = points.iter().map(|&x| poly.eval(x)).collect();
        let back = LinearizedPolynomial::moore_solve(&f, &points, &values).unwrap();
        prop_assert_eq!(back.coefficients(), coeffs.as_slice());
    }

    #[test]
    fn dual_annihilates_codewords(seed: u64) {
        let code = planted(seed);
        let f = code.field();
        let mut rng = SplitMix64::seed_from_u64(seed ^ 1);
        let msg: Vec<Symbol> = (0..code.k()).map(|_| rng.random_range(0..f.order()) as Symbol).collect();
        let word = code.encode(&msg).unwrap();
        let dual = code.dual_basis();
        prop_assert_eq!(dual.len(), code.n() - code.k());
        for h in dual {
            let dot = h.iter().zip(&word).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
            prop_assert_eq!(dot, 0);
        }
    }

    #[test]
    fn oracles_agree(seed: u64) {
        let code = planted(seed);
        let seq = OracleConfig::sequential();
        let par = OracleConfig::default().with_execution(Execution::Parallel);
        let d = code.min_distance(&seq).unwrap();
        prop_assert_eq!(d, code.min_distance(&par).unwrap());
        prop_assert_eq!(d, code.min_distance_by_enumeration(&seq).unwrap());
        let dual = code.localities(&seq.with_locality_method(LocalityMethod::DualEnumeration)).unwrap();
        let subset = code.localities(&par.with_locality_method(LocalityMethod::SubsetSpan)).unwrap();
        prop_assert_eq!(&dual, &subset);
    }

    #[test]
    fn decoding_below_distance_and_bounds(seed: u64) {
        let code = planted(seed);
        let cfg = OracleConfig::default();
        let d = code.min_distance(&cfg).unwrap();
        let n = code.n();
        let mut rng = SplitMix64::seed_from_u64(seed ^ 2);
        let msg: Vec<Symbol> = (0..code.k()).map(|_| rng.random_range(0..code.field().order()) as Symbol).collect();
        let mut word = code.encode(&msg).unwrap();
        let erased = random_pattern(n, rng.random_range(0..d), &mut rng);
        for &e in &erased {
            word[e] = 0;
        }
        let pattern = ErasurePattern::new(n, erased).unwrap();
        prop_assert_eq!(code.erasure_decode(&word, &pattern).unwrap(), DecodeOutcome::Recovered(msg));

        let loc = code.localities(&cfg).unwrap();
        let info = code.info_profile_from(&loc).unwrap();
        prop_assert!(d as i64 <= unequal_info_bound(n, code.k(), &info).unwrap().bound);
        let w = witness_set_from(&code, &loc).unwrap();
        prop_assert_eq!(code.rank_of(&w.coordinates) + 1, code.k());
        prop_assert!(w.len() + d <= n);
    }

    #[test]
    fn oracle_locality_within_designed_groups(c1 in 0usize..3, c2 in 0usize..3, c3 in 0usize..3, d in 2usize..4) {
        prop_assume!(c1 + c2 + c3 > 0);
        let cfg = OracleConfig::default();
        let p = pyramid_unequal(&InfoLocalityProfile::new(vec![c1, c2, c3]).unwrap(), d, &Field::with_order(16).unwrap()).unwrap();
        let loc = p.code.localities(&cfg).unwrap();
        for (i, l) in loc.iter().enumerate() {
            if let Ok(g) = p.repair_group_of(i) {
                prop_assert!(l.value().unwrap() <= g.len());
            }
        }
        let big_n = c1 + 2 * c2;
        if let Ok(nprofile) = AllSymbolLocalityProfile::new(vec![2 * c1, 3 * c2]) {
            let g = gabidulin_lrc(nprofile.max_locality(), &nprofile, 4, big_n).unwrap();
            for (i, l) in g.code.localities(&cfg).unwrap().iter().enumerate() {
                prop_assert!(l.value().unwrap() <= g.repair_group_of(i).unwrap().len());
            }
        }
    }

    #[test]
    fn greedy_identities(req in requirement()) {
        let (profile, trace) = greedy_optimal_profile(&req);
        let k_star = trace.k_star();
        let r = req.r();
        prop_assert!(respects(&profile, &req));
        prop_assert_eq!(k_star.iter().sum::<usize>(), req.k());
        for j in 1..=r {
            prop_assert_eq!(k_star[j - 1] % j, 0);
            prop_assert!(trace.g(j) < j);
            let g_next = if j < r { trace.g(j + 1) } else { 0 };
            prop_assert_eq!(k_star[j - 1] + trace.g(j), req.counts()[j - 1] + g_next);
            let suffix_star: usize = k_star[j - 1..].iter().sum();
            let suffix_req: usize = req.counts()[j - 1..].iter().sum();
            prop_assert_eq!(suffix_star, suffix_req - trace.g(j));
        }
    }

    #[test]
    fn optimal_profiles_and_transform(req in requirement()) {
        let (_, trace) = greedy_optimal_profile(&req);
        let k_star = trace.k_star();
        let (best, optima) = exhaustive_optimal_profiles(&req).unwrap();
        prop_assert_eq!(best, objective(&k_star));
        for o in &optima {
            // largest differing coordinate of a divisible optimum is below k*
            if o.iter().enumerate().all(|(i, &c)| c % (i + 1) == 0) && o != &k_star {
                let j = (0..o.len()).rev().find(|&j| o[j] != k_star[j]).unwrap();
                prop_assert!(o[j] < k_star[j]);
            }
            let c = canonicalize(&InfoLocalityProfile::new(o.clone()).unwrap(), &req).unwrap();
            prop_assert_eq!(c.result.padded(req.r()), k_star.clone());
            prop_assert!(c.steps.iter().all(|s| s.objective == best));
        }
    }

    #[test]
    fn moves_never_increase_the_objective(counts in prop::collection::vec(0usize..12, 2..=6), seed: u64) {
        let mut rng = SplitMix64::seed_from_u64(seed);
        let r = counts.len();
        let j = rng.random_range(2..=r);
        let i = rng.random_range(1..j);
        let unit = if rng.random_bool(0.5) { i } else { j };
        let steps = counts[i - 1] / unit;
        let before = objective(&counts);
        if steps > 0 {
            let mut moved = counts.clone();
            move_to_right(&mut moved, i, j, unit * rng.random_range(1..=steps));
            prop_assert!(objective(&moved) <= before);
        }
        let mut shifted = counts.clone();
        residue_shift(&mut shifted, j);
        prop_assert_eq!(objective(&shifted), before);
        prop_assert_eq!(shifted[j - 1] % j, 0);
    }
}
