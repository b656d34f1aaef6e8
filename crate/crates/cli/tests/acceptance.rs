//! One line per acceptance criterion. Every comparison is exact: integers
//! and rationals, no floating point, so no tolerance applies.

use std::path::PathBuf;
use std::process::{Command, ExitCode};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_cox::euler::kappa_weights;
use toric_cox::fan::{
    anticanonical, cech_transitions, is_ample, verify_exactness, TorusInvariantDivisor,
};
use toric_cox::reconstruct::{
    reconstruct_fan, roundtrip_check, splitting_certificate, SmoothnessDefect,
};
use toric_cox::{
    corpus, little_hilbert_check, CoxData, EulerModule, Fan, GradingInput, Polynomial,
    ReconstructError, Strategy,
};
use toric_cox_cli::degree_window;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn modules() -> Vec<(&'static str, Fan, EulerModule)> {
    corpus::smooth_complete()
        .into_iter()
        .map(|(n, f)| (n, f.clone(), EulerModule::new(CoxData::new(f).unwrap())))
        .collect()
}

fn exactness() -> Check {
    for (name, fan) in corpus::smooth_complete() {
        let ex = verify_exactness(&fan).map_err(|e| e.to_string())?;
        ensure(ex.holds(), || format!("{name}: {ex:?}"))?;
        ensure(ex.class_group_rank == fan.num_rays() - fan.dim(), || {
            format!("{name}: rank")
        })?;
    }
    Ok("8 fans, Q*div = 0, ker Q = im div, rank Cl = #rays - n".into())
}

fn dual_oracle() -> Check {
    let mut degrees = 0;
    for (name, fan) in corpus::smooth_complete() {
        let cd = CoxData::new(fan).unwrap();
        for lambda in degree_window(cd.cl_rank(), 4) {
            cd.graded_dimension_with(&lambda, Strategy::Parallel)
                .map_err(|e| format!("{name}: {e}"))?;
            degrees += 1;
        }
    }
    let p2 = CoxData::new(corpus::p2()).unwrap();
    for d in 0..=4i64 {
        let got = p2.graded_dimension(&[d]).unwrap();
        ensure(got as i64 == (d + 1) * (d + 2) / 2, || {
            format!("P2 degree {d}: {got}")
        })?;
    }
    Ok(format!(
        "{degrees} degrees with |lambda_i| <= 4 agree; P2 gives (d+1)(d+2)/2 for d <= 4"
    ))
}

fn euler_identity() -> Check {
    let mut checked = 0;
    for (name, _, em) in modules() {
        let k = em.cox().kappa().clone();
        let rep = em
            .verify_euler_identity(&k, 6, 0, 0, Strategy::Parallel)
            .map_err(|e| e.to_string())?;
        ensure(rep.holds(), || format!("{name}: {:?}", rep.failures))?;
        checked += rep.checked;
    }
    Ok(format!("{checked} monomials of kappa-weight <= 6"))
}

fn leibniz() -> Check {
    for (name, _, em) in modules() {
        let rep = em.verify_leibniz(4, 100, 2024).map_err(|e| e.to_string())?;
        ensure(rep.checked == 100 && rep.holds(), || {
            format!("{name}: {:?}", rep.failures)
        })?;
    }
    Ok("100 random homogeneous pairs per fan".into())
}

fn surjectivity() -> Check {
    let mut checked = 0;
    for (name, _, em) in modules() {
        let rep = em
            .verify_surjectivity(em.cox().kappa(), 6)
            .map_err(|e| e.to_string())?;
        ensure(rep.holds(), || format!("{name}: {rep:?}"))?;
        checked += rep.checked;
    }
    Ok(format!(
        "no constant terms; {checked} witnesses dm/kappa(deg m) map back to m"
    ))
}

fn generation() -> Check {
    for (name, _, em) in modules() {
        let k = em.cox().kappa().clone();
        let gens: Vec<Polynomial> = em
            .generation_transfer(&k)
            .unwrap()
            .into_iter()
            .map(|g| g.poly)
            .collect();
        ensure(gens.len() == em.rank(), || format!("{name}: rank"))?;
        let ok = little_hilbert_check(&kappa_weights(em.cox(), &k), &gens, 6)
            .map_err(|e| e.to_string())?;
        ensure(ok, || format!("{name}: images do not generate"))?;
    }
    let x = Polynomial::variable(2, 0);
    let y = Polynomial::variable(2, 1);
    let rejected = !little_hilbert_check(&[1, 1], &[x.mul(&x), y], 3).unwrap();
    ensure(rejected, || "{x^2, y} accepted".into())?;
    Ok("n+r images generate S to weight 6; {x^2, y} rejected".into())
}

fn splitting() -> Check {
    for (name, fan) in corpus::smooth_complete() {
        let c = splitting_certificate(&fan).map_err(|e| e.to_string())?;
        ensure(c.rank == fan.num_rays() && c.holds(), || {
            format!("{name}: {c:?}")
        })?;
    }
    let c = splitting_certificate(&corpus::p2()).unwrap();
    let sum: i64 = c.degree_multiset.iter().map(|d| d[0]).sum();
    ensure(c.degree_multiset == vec![vec![1]; 3] && sum == 3, || {
        format!("P2: {c:?}")
    })?;
    Ok("rank n+r, degrees sum to -K; P2 = {1,1,1}, sum 3".into())
}

fn small_divisors(n: usize) -> Vec<TorusInvariantDivisor> {
    (0..3usize.pow(n as u32))
        .map(|mut k| {
            TorusInvariantDivisor(
                (0..n)
                    .map(|_| {
                        let c = (k % 3) as i64;
                        k /= 3;
                        c
                    })
                    .collect(),
            )
        })
        .collect()
}

fn round_trip() -> Check {
    let mut total = 0;
    for (name, fan) in corpus::smooth_complete() {
        for d in small_divisors(fan.num_rays()) {
            if is_ample(&fan, &d).unwrap() {
                total += 1;
                let ok = roundtrip_check(&fan, &d).map_err(|e| format!("{name}: {e}"))?;
                ensure(ok, || format!("{name}: {:?}", d.coefficients()))?;
            }
        }
    }
    let bad = reconstruct_fan(&GradingInput {
        q: vec![vec![1, 2]],
        w: vec![2],
    });
    ensure(
        matches!(
            bad,
            Err(ReconstructError::NotSmooth(
                SmoothnessDefect::NonPrimitiveRay { .. }
            ))
        ),
        || format!("Q=[[1,2]]: {bad:?}"),
    )?;
    let semi = reconstruct_fan(&GradingInput {
        q: vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]],
        w: vec![1, 0],
    });
    ensure(
        matches!(semi, Err(ReconstructError::NotAmpleLift(_))),
        || format!("w=(1,0): {semi:?}"),
    )?;
    Ok(format!(
        "{total} ample divisors with coefficients <= 2; bad gradings rejected"
    ))
}

fn cech() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, fan) in corpus::smooth_complete() {
        let n = fan.num_rays();
        let mut prev: Option<(TorusInvariantDivisor, _)> = None;
        for _ in 0..20 {
            let d = TorusInvariantDivisor((0..n).map(|_| rng.gen_range(-5..=5)).collect());
            let g = cech_transitions(&fan, &d).map_err(|e| e.to_string())?;
            ensure(g.satisfies_cocycle() && g.is_antisymmetric(), || {
                format!("{name}: cocycle")
            })?;
            if let Some((p, pg)) = &prev {
                let sum = cech_transitions(&fan, &d.add(p)).unwrap();
                ensure(sum == g.add(pg), || format!("{name}: additivity"))?;
            }
            prev = Some((d, g));
        }
        let k = cech_transitions(&fan, &anticanonical(&fan)).unwrap();
        ensure(k.satisfies_cocycle(), || format!("{name}: -K"))?;
    }
    Ok("20 random divisors per fan: cocycle on all triples, additive in D".into())
}

fn determinism() -> Check {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    for name in ["p2", "hirzebruch_2", "delpezzo6"] {
        let path = data.join(format!("{name}.json"));
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_toric-cox"))
                .args(["verify", "--json"])
                .arg(&path)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.success(), || {
            format!("{name}: exit {:?}", a.status.code())
        })?;
        ensure(a.stdout == b.stdout, || format!("{name}: outputs differ"))?;
    }
    Ok("verify --json byte-identical across two runs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("exactness of the divisor sequence", exactness),
        ("dual-oracle graded dimensions", dual_oracle),
        ("Euler identity", euler_identity),
        ("Leibniz rule", leibniz),
        ("kappa-hat image and surjectivity", surjectivity),
        ("generation transfer", generation),
        ("splitting certificate", splitting),
        ("fan round trip", round_trip),
        ("Cech cocycle", cech),
        ("report determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        match f() {
            Ok(detail) => println!(
                "PASS {:>2} {name}: {detail} [exact, {:.1}s]",
                i + 1,
                start.elapsed().as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
