use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use exkh::diagram::Diagram;
use exkh::extreme::{extreme_via_brute, extreme_via_lando};
use exkh::families::corpus::{corpus, random_complex};
use exkh::khovanov::khovanov_cohomology;
use exkh::simplicial::{join_homology, smith_normal_form, IntMatrix, Ring};
use exkh::Limits;

const CAP: usize = 1 << 16;

fn diagram(seed: u64, max_crossings: usize) -> Diagram {
    corpus(seed, 1, max_crossings).pop().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pd_text_round_trips(seed in any::<u64>()) {
        let d = diagram(seed, 10);
        let back: Diagram = d.to_string().parse().unwrap();
        prop_assert_eq!(back.to_string(), d.to_string());
        prop_assert_eq!(back.signs(), d.signs());
        let json = Diagram::from_json(&d.to_json()).unwrap();
        prop_assert_eq!(json.to_string(), d.to_string());
    }

    #[test]
    fn mirror_is_an_involution_and_reflects_cohomology(seed in any::<u64>()) {
        let d = diagram(seed, 6);
        let m = d.mirror();
        prop_assert_eq!(m.mirror().to_string(), d.to_string());
        prop_assert_eq!(m.writhe(), -d.writhe());
        let l = Limits::default();
        let h = khovanov_cohomology(&d, Ring::Rationals, &l).unwrap();
        let hm = khovanov_cohomology(&m, Ring::Rationals, &l).unwrap();
        let reflected: Vec<_> = hm.groups.iter().map(|(&(i, j), g)| ((-i, -j), g.clone())).collect();
        let mut reflected = reflected;
        reflected.sort_by_key(|x| x.0);
        let ours: Vec<_> = h.groups.iter().map(|(&k, g)| (k, g.clone())).collect();
        prop_assert_eq!(ours, reflected);
    }

    #[test]
    fn lando_route_matches_brute_force(seed in any::<u64>()) {
        let d = diagram(seed, 8);
        let l = Limits::default();
        let a = extreme_via_lando(&d, Ring::Integers, &l).unwrap();
        let b = extreme_via_brute(&d, Ring::Integers, &l).unwrap();
        prop_assert!(a.same_groups(&b), "{}: {} vs {}", d, a.summary(), b.summary());
    }

    #[test]
    fn alexander_dual_is_an_involution(seed in any::<u64>(), n in 1usize..=7) {
        let x = random_complex(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let d = x.alexander_dual(CAP).unwrap();
        prop_assert_eq!(d.alexander_dual(CAP).unwrap().faces(CAP).unwrap(), x.faces(CAP).unwrap());
    }

    #[test]
    fn join_follows_the_kunneth_formula(seed in any::<u64>(), n in 1usize..=4, m in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_complex(&mut rng, n);
        let y = random_complex(&mut rng, m);
        prop_assume!(!x.is_void() && !y.is_void());
        let shifted = exkh::simplicial::SimplicialComplex::from_facets(
            (1..=m as u32).map(|v| v + n as u32).collect(),
            y.facets().to_vec(),
        ).unwrap();
        let j = x.join(&shifted).unwrap();
        let hj = j.homology(Ring::Integers, CAP).unwrap();
        let hx = x.homology(Ring::Integers, CAP).unwrap();
        let hy = y.homology(Ring::Integers, CAP).unwrap();
        prop_assert_eq!(hj, join_homology(&hx, &hy));
    }

    #[test]
    fn smith_factors_divide_in_order(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 1..5)) {
        let m = IntMatrix::from_dense(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.factors.len(), s.rank);
        for w in s.factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.factors.iter().all(|d| *d > BigInt::zero()));
        // The first factor is the gcd of all entries.
        let g = rows.iter().flatten().fold(0i64, |a, &b| a.gcd(&b));
        if g != 0 {
            prop_assert_eq!(&s.factors[0], &BigInt::from(g));
        }
    }
}
