use std::collections::BTreeSet;

use proptest::prelude::*;
use tc7_core::forge::{corpus, coverage, generate, GenSpec, Profile};
use tc7_core::patterns::hypothesis_report;
use tc7_core::ConfigurationKind;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), n in 3usize..60) {
        for profile in Profile::ALL {
            let spec = GenSpec::new(seed, n, profile);
            let (a, b) = (generate(&spec), generate(&spec));
            match (a, b) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.rotations(), b.rotations()),
                (Err(a), Err(b)) => prop_assert_eq!(a, b),
                _ => prop_assert!(false, "outcomes differ"),
            }
        }
    }

    #[test]
    fn profiles_deliver_what_they_promise(seed in any::<u64>(), n in 16usize..60) {
        for profile in Profile::ALL {
            let Ok(g) = generate(&GenSpec::new(seed, n, profile)) else {
                continue;
            };
            let rep = hypothesis_report(&g);
            prop_assert!(g.is_connected());
            prop_assert!(rep.max_degree <= 6);
            prop_assert_eq!(g.vertex_count() as i64 - g.edge_count() as i64 + g.face_count() as i64, 2);
            match profile {
                Profile::Hypothesis => prop_assert!(rep.satisfied),
                Profile::NearMissDiamond => prop_assert!(rep.diamond_witness.is_some()),
                Profile::NearMissHouse => prop_assert!(rep.house_witness.is_some()),
                Profile::NearMissCycles => prop_assert!(!rep.cycle_violations.is_empty()),
                Profile::Unconstrained => {}
            }
            if profile != Profile::Hypothesis && profile != Profile::Unconstrained {
                prop_assert!(!rep.satisfied);
            }
        }
    }
}

#[test]
fn hypothesis_profile_reaches_its_target() {
    for seed in 0..20 {
        for n in [10, 40, 120] {
            let g = generate(&GenSpec::new(seed, n, Profile::Hypothesis)).unwrap();
            assert_eq!(g.vertex_count(), n, "seed {seed}");
            assert_eq!(g.max_degree(), 6);
        }
    }
}

#[test]
fn corpus_covers_the_catalog() {
    let c = corpus(500, 10, 60, 7);
    assert!(c.failures.is_empty());
    let specs: BTreeSet<u64> = c.graphs.iter().map(|(s, _)| s.seed).collect();
    assert_eq!(specs.len(), c.graphs.len());
    let cov = coverage(c.graphs.iter().map(|(_, g)| g));
    assert_eq!(cov.graphs, 500);
    for kind in ConfigurationKind::ALL {
        assert!(cov.per_kind[&kind] > 0, "{kind} never appears");
    }
    assert!(cov.with_two_vertex > 0 && cov.with_six_on_four_face > 0);
}
