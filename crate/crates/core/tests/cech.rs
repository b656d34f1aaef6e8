use proptest::prelude::*;
use toric_cox::corpus;
use toric_cox::fan::{cartier_data, cech_transitions, Fan, TorusInvariantDivisor};

fn fans() -> Vec<(&'static str, Fan)> {
    corpus::smooth_complete()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transitions_form_an_additive_cocycle(idx in 0usize..8, a in proptest::collection::vec(-4i64..=4, 8), b in proptest::collection::vec(-4i64..=4, 8)) {
        let (_, f) = &fans()[idx];
        let n = f.num_rays();
        let d1 = TorusInvariantDivisor(a[..n].to_vec());
        let d2 = TorusInvariantDivisor(b[..n].to_vec());
        let g1 = cech_transitions(f, &d1).unwrap();
        let g2 = cech_transitions(f, &d2).unwrap();
        prop_assert!(g1.satisfies_cocycle());
        prop_assert!(g1.is_antisymmetric());
        prop_assert_eq!(cech_transitions(f, &d1.add(&d2)).unwrap(), g1.add(&g2));
    }

    #[test]
    fn local_data_matches_the_divisor(idx in 0usize..8, a in proptest::collection::vec(-4i64..=4, 8)) {
        let (_, f) = &fans()[idx];
        let d = TorusInvariantDivisor(a[..f.num_rays()].to_vec());
        let cd = cartier_data(f, &d).unwrap();
        for (cone, m) in f.max_cones().iter().zip(&cd.m) {
            for &rho in cone {
                let pairing: i64 = m.iter().zip(&f.rays()[rho]).map(|(x, y)| x * y).sum();
                prop_assert_eq!(pairing, -d.coefficients()[rho]);
            }
        }
    }
}
