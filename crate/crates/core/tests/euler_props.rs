use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use toric_cox::euler::kappa_weights;
use toric_cox::{
    corpus, little_hilbert_check, CoxData, EulerModule, LinearFormKappa, Polynomial, Strategy,
};

fn module(name: &str) -> EulerModule {
    let (_, fan) = corpus::smooth_complete()
        .into_iter()
        .find(|(n, _)| *n == name)
        .unwrap();
    EulerModule::new(CoxData::new(fan).unwrap())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn leibniz_rule(idx in 0usize..8, seed in any::<u64>()) {
        let (_, fan) = &corpus::smooth_complete()[idx];
        let em = EulerModule::new(CoxData::new(fan.clone()).unwrap());
        let rep = em.verify_leibniz(4, 5, seed).unwrap();
        prop_assert!(rep.holds(), "{:?}", rep.failures);
    }

    #[test]
    fn derivation_is_linear(seed in any::<u64>()) {
        let em = module("hirzebruch_1");
        let ps = em.random_homogeneous_batch(4, 2, seed);
        let (s, t) = (&ps[0], &ps[1]);
        let s_deg = em.cox().grade(s).unwrap().degree;
        let t_deg = em.cox().grade(t).unwrap().degree;
        if s_deg == t_deg {
            let sum = em.derivation_of(&s.add(t)).unwrap();
            let parts = em.add(&em.derivation_of(s).unwrap(), &em.derivation_of(t).unwrap());
            prop_assert_eq!(sum.components, parts.components);
        }
    }
}

#[test]
fn euler_identity_across_the_corpus() {
    for (name, fan) in corpus::smooth_complete() {
        let em = EulerModule::new(CoxData::new(fan).unwrap());
        let k = em.cox().kappa().clone();
        let rep = em
            .verify_euler_identity(&k, 4, 20, 11, Strategy::default())
            .unwrap();
        assert!(rep.holds(), "{name}: {:?}", rep.failures);
    }
}

#[test]
fn zero_satisfies_the_identity() {
    let em = module("p2");
    let k = em.cox().kappa().clone();
    let zero = em.cox().grade(&Polynomial::zero(3)).unwrap();
    let out = em.kappa_hat(&em.derivation(&zero).unwrap(), &k).unwrap();
    assert!(out.poly.is_zero());
}

#[test]
fn conclusions_do_not_depend_on_kappa() {
    let em = module("hirzebruch_1");
    let k1 = LinearFormKappa::from_i64(&[1, 2]);
    let k2 = LinearFormKappa::from_i64(&[1, 3]);
    for k in [&k1, &k2] {
        assert!(em.verify_surjectivity(k, 5).unwrap().holds());
        let gens: Vec<Polynomial> = em
            .generation_transfer(k)
            .unwrap()
            .into_iter()
            .map(|g| g.poly)
            .collect();
        assert!(little_hilbert_check(&kappa_weights(em.cox(), k), &gens, 5).unwrap());
    }
    // the two maps differ by a positive scalar on each basis element
    let a = em.generation_transfer(&k1).unwrap();
    let b = em.generation_transfer(&k2).unwrap();
    for (rho, (x, y)) in a.iter().zip(&b).enumerate() {
        let v = Polynomial::variable(4, rho);
        let cx = x.poly.coefficient(&v.terms().next().unwrap().0.clone());
        let cy = y.poly.coefficient(&v.terms().next().unwrap().0.clone());
        assert!(cx > BigRational::from_integer(BigInt::from(0)));
        assert!(cy >= cx);
    }
    assert_ne!(a, b);
}

#[test]
fn plane_cotangent_sections() {
    // h0(Omega(d)) = 3 C(d+1, 2) - C(d+2, 2) for d >= 1 on the plane
    let em = module("p2");
    let window: Vec<Vec<i64>> = (0..=5).map(|d| vec![d]).collect();
    let rep = em.tinvariant_decomposition_check(&window).unwrap();
    assert!(rep.holds());
    for row in &rep.rows {
        let d = row.degree[0] as usize;
        let expected = if d == 0 {
            0
        } else {
            3 * binomial(d + 1, 2) - binomial(d + 2, 2)
        };
        assert_eq!(row.omega_dim, expected, "degree {d}");
    }
}

#[test]
fn quadric_cotangent_sections() {
    // Omega = O(-2,0) + O(0,-2) on P1 x P1
    let h0 = |a: i64, b: i64| {
        if a < 0 || b < 0 {
            0
        } else {
            ((a + 1) * (b + 1)) as usize
        }
    };
    let em = module("p1xp1");
    let window: Vec<Vec<i64>> = (-1..=3)
        .flat_map(|a| (-1..=3).map(move |b| vec![a, b]))
        .collect();
    let rep = em.tinvariant_decomposition_check(&window).unwrap();
    assert!(rep.holds());
    for row in &rep.rows {
        let (a, b) = (row.degree[0], row.degree[1]);
        assert_eq!(
            row.omega_dim,
            h0(a - 2, b) + h0(a, b - 2),
            "degree ({a},{b})"
        );
    }
}

#[test]
fn no_global_one_forms() {
    for (name, fan) in corpus::smooth_complete() {
        let em = EulerModule::new(CoxData::new(fan).unwrap());
        let r = em.cox().cl_rank();
        let rep = em.tinvariant_decomposition_check(&[vec![0; r]]).unwrap();
        assert_eq!(rep.rows[0].omega_dim, 0, "{name}");
        assert_eq!(rep.rank, rep.dim + rep.cl_rank, "{name}");
    }
}
