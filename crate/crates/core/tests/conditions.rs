mod common;

use coexist::conditions::{
    check_comp, check_commu, check_ginf, check_inf, check_inf_detailed, check_jor, check_jor_multi, full_report,
    jordan_general, patterns, verify_witness, Condition, CoexWitness, IMPLICATIONS,
};
use coexist::exemplars::{liu_pair, mixed_commuting_pair, mub_pair, noisy_pair, qubit_effect, rank_one_pair, MubParams};
use coexist::survey::sample_pair;
use coexist::{decide_pair, Complex64, Effect, Error, HermitianMatrix, OracleKind, OracleParams};
use common::{largest_multiple_below, orthogonal_triple, random_effect, random_unit_vector, unbiased};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn eff(diag: &[f64]) -> Effect {
    Effect::new(HermitianMatrix::from_diagonal(diag)).unwrap()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn commutativity_examples() {
    assert!(check_commu(&eff(&[0.2, 0.9]), &eff(&[0.6, 0.1]), TOL).unwrap().holds());
    let (e, f) = mub_pair(&MubParams::new(3, 0.4).unwrap()).unwrap();
    assert!(!check_commu(&e, &f, TOL).unwrap().holds());
    let base = qubit_effect(1.0, [0.3, 0.5, -0.2]).unwrap();
    let (a, b) = mixed_commuting_pair(&base, 0.2, 0.9).unwrap();
    assert!(check_commu(&a, &b, TOL).unwrap().holds());
}

#[test]
fn comparability_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let (e, f) = (random_effect(3, &mut rng), random_effect(3, &mut rng));
        let t = 0.5 * (1.0 - rng.random::<f64>());
        let (a, b) = noisy_pair(&e, &f, t).unwrap();
        assert!(check_comp(&a, &b, TOL).unwrap().holds());
    }
    let (a, b) = mixed_commuting_pair(&eff(&[1.0, 0.0]), 0.3, 0.6).unwrap();
    let v = check_comp(&a, &b, TOL).unwrap();
    assert!(!v.holds());
    assert!(v.certificate.is_none());
    assert!(check_comp(&eff(&[0.3, 0.4]), &Effect::identity(2), TOL).unwrap().holds());
}

#[test]
fn jordan_examples() {
    let base = qubit_effect(1.0, [0.6, 0.0, 0.0]).unwrap();
    let (a, b) = mixed_commuting_pair(&base, 0.3, 0.8).unwrap();
    assert!(check_jor(&a, &b, TOL).unwrap().holds());
    for r in [0.2, 0.5, 0.8] {
        let psi = [c(1.0), c(0.0)];
        let phi = [c(r), c((1.0 - r * r).sqrt())];
        let (e, f) = rank_one_pair(&psi, &phi, 0.5, 0.5).unwrap();
        assert!((e.matrix() + f.matrix()).max_eigenvalue() <= 1.0);
        assert!(!check_jor(&e, &f, TOL).unwrap().holds());
    }
    let at = |lambda| {
        let (e, f) = mub_pair(&MubParams::new(3, lambda).unwrap()).unwrap();
        check_jor(&e, &f, TOL).unwrap().holds()
    };
    assert!(at(0.60));
    assert!(!at(0.63));
}

#[test]
fn generalized_infimum_examples() {
    assert!(check_ginf(&eff(&[0.2, 0.3]), &eff(&[0.5, 0.3]), TOL).unwrap().holds());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let a: f64 = rng.random::<f64>();
        let b = (1.0 - a * a).sqrt() * rng.random::<f64>();
        let [e, f, _] = orthogonal_triple([a, b, 0.0], &mut rng);
        let v = check_ginf(&qubit_effect(1.0, e).unwrap(), &qubit_effect(1.0, f).unwrap(), TOL).unwrap();
        assert!(v.holds());
    }
    let (e, f) = liu_pair(2.0 / 3.0, 2.0 / 3.0, 0.75).unwrap();
    assert!(!check_ginf(&e, &f, TOL).unwrap().holds());
}

#[test]
fn infimum_condition_examples() {
    let (e, f) = (eff(&[0.2, 0.3]), eff(&[0.5, 0.3]));
    let v = check_inf(&e, &f, TOL).unwrap();
    assert!(v.holds());
    let w = v.certificate.unwrap();
    assert!(verify_witness(&e, &f, &w, 1e-10).is_valid());

    // Invertible, and non-comparable in every complement combination.
    let e = qubit_effect(1.0, [0.5, 0.0, 0.0]).unwrap();
    let f = qubit_effect(1.0, [0.0, 0.5, 0.0]).unwrap();
    for (a, b) in [
        (e.clone(), f.clone()),
        (e.clone(), f.complement()),
        (e.complement(), f.clone()),
        (e.complement(), f.complement()),
    ] {
        assert!(!a.leq(&b, TOL).unwrap() && !b.leq(&a, TOL).unwrap());
    }
    let (v, branches) = check_inf_detailed(&e, &f, TOL).unwrap();
    assert!(!v.holds());
    assert!(branches.iter().all(|b| !b.infimum_exists && b.inequality_min.is_none()));
}

/// A rank-one effect `e|ψ⟩⟨ψ|` against an invertible `F` has infimum
/// `min(e, s)|ψ⟩⟨ψ|` with `s = 1/⟨ψ|F⁻¹ψ⟩`; the pair is certified whenever `e ≤ s`.
#[test]
fn rank_one_against_invertible() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let f = random_effect(3, &mut rng);
        let f = Effect::new(&f.matrix().scale(0.8) + &HermitianMatrix::identity(3).scale(0.1)).unwrap();
        let psi = random_unit_vector(3, &mut rng);
        let proj = HermitianMatrix::outer(&psi);
        let s = largest_multiple_below(f.matrix(), &proj, 1.0);
        let e = Effect::new(proj.scale(s * rng.random::<f64>())).unwrap();
        let v = check_inf(&e, &f, TOL).unwrap();
        assert!(v.holds(), "e ≤ s must certify");
        assert!(verify_witness(&e, &f, v.certificate.as_ref().unwrap(), 1e-9).is_valid());
    }
}

/// A projection coexists only with effects it commutes with, so the range
/// condition alone does not certify a rank-one effect.
#[test]
fn rank_one_projection_against_non_commuting_effect() {
    let e = qubit_effect(1.0, [0.0, 0.0, 1.0]).unwrap();
    let f = qubit_effect(1.0, [0.6, 0.0, 0.0]).unwrap();
    let report = full_report(&e, &f, TOL, Some(&OracleParams::default())).unwrap();
    assert!(!report.any_holds());
    let oracle = report.oracle.unwrap();
    assert_eq!(oracle.kind, OracleKind::LikelyInfeasible, "residual {}", oracle.residual);
}

#[test]
fn jordan_general_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let e = random_effect(3, &mut rng);
    let f = random_effect(3, &mut rng);
    assert!(jordan_general(std::slice::from_ref(&e), &[1]).unwrap().distance(e.matrix()).unwrap() < 1e-15);
    let pair = [e.clone(), f.clone()];
    let expected = [
        e.jordan_product(&f).unwrap(),
        e.jordan_product(&f.complement()).unwrap(),
        e.complement().jordan_product(&f).unwrap(),
        e.complement().jordan_product(&f.complement()).unwrap(),
    ];
    for (pattern, want) in patterns(2).iter().zip(&expected) {
        let got = jordan_general(&pair, pattern).unwrap();
        assert!(got.distance(want).unwrap() < 1e-14);
    }
    let nine = vec![e.clone(); 9];
    assert!(matches!(
        check_jor_multi(&nine, TOL),
        Err(Error::CombinatorialLimit { count: 9, limit: 8 })
    ));
}

#[test]
fn jordan_terms_sum_to_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=5 {
        let effects: Vec<Effect> = (0..n).map(|_| random_effect(2, &mut rng)).collect();
        let mut total = HermitianMatrix::zeros(2);
        for p in patterns(n) {
            total = &total + &jordan_general(&effects, &p).unwrap();
        }
        assert!(total.distance(&HermitianMatrix::identity(2)).unwrap() < 1e-12);
    }
}

#[test]
fn orthogonal_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let boundary = 1.0 / 3f64.sqrt();
    let triple = orthogonal_triple([boundary; 3], &mut rng);
    let effects: Vec<Effect> = triple.iter().map(|v| qubit_effect(1.0, *v).unwrap()).collect();
    let v = check_jor_multi(&effects, TOL).unwrap();
    assert!(v.holds());
    assert!(v.margin.abs() < 1e-12);
    assert_eq!(v.witnesses.len(), 8);

    let triple = orthogonal_triple([0.6; 3], &mut rng);
    let effects: Vec<Effect> = triple.iter().map(|v| qubit_effect(1.0, *v).unwrap()).collect();
    let v = check_jor_multi(&effects, TOL).unwrap();
    assert!(!v.holds());
    assert!((v.margin - (1.0 - 1.08f64.sqrt()) / 8.0).abs() < 1e-12);

    let diag: Vec<Effect> = (0..4).map(|k| eff(&[0.1 * k as f64, 0.9 - 0.2 * k as f64, 0.5])).collect();
    assert!(check_jor_multi(&diag, TOL).unwrap().holds());
    assert!(check_jor_multi(&diag[..1], TOL).unwrap().holds());
}

#[test]
fn report_examples() {
    let r = full_report(&eff(&[0.2, 0.8]), &eff(&[0.7, 0.4]), TOL, None).unwrap();
    for cond in [Condition::Commu, Condition::Jor, Condition::Ginf] {
        assert!(r.holds(cond));
    }
    assert!(r.consistent());

    let (e, f) = mub_pair(&MubParams::new(3, 0.65).unwrap()).unwrap();
    let r = full_report(&e, &f, TOL, Some(&OracleParams::default())).unwrap();
    assert!(!r.holds(Condition::Commu) && !r.holds(Condition::Jor));
    assert_eq!(r.oracle.as_ref().unwrap().kind, OracleKind::Feasible);

    let (e, f) = liu_pair(2.0 / 3.0, 2.0 / 3.0, 0.75).unwrap();
    let r = full_report(&e, &f, TOL, Some(&OracleParams::default())).unwrap();
    assert!(!r.any_holds());
    assert_eq!(r.oracle.as_ref().unwrap().kind, OracleKind::Feasible);
}

#[test]
fn witness_rejects_non_comparable_effect() {
    let e = qubit_effect(1.0, [0.5, 0.0, 0.0]).unwrap();
    let f = qubit_effect(1.0, [0.0, 0.5, 0.0]).unwrap();
    let check = verify_witness(&e, &f, &CoexWitness::SingleG { g: e.matrix().clone() }, 1e-9);
    assert!(!check.is_valid());
    assert!(check.violations.iter().any(|w| w.label == "G ≤ F"));
}

fn verdicts(e: &Effect, f: &Effect) -> Vec<(bool, f64)> {
    full_report(e, f, TOL, None)
        .unwrap()
        .verdicts
        .iter()
        .map(|v| (v.holds(), v.margin))
        .collect()
}

fn random_pair(kind: u8, dim: usize, seed: u64) -> (Effect, Effect) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind % 3 {
        0 => sample_pair(dim, seed, 0),
        1 => {
            let (e, f) = (random_effect(dim, &mut rng), random_effect(dim, &mut rng));
            noisy_pair(&e, &f, 0.5 * (1.0 - rng.random::<f64>())).unwrap()
        }
        _ => {
            let (_, e) = unbiased(&mut rng);
            let (_, f) = unbiased(&mut rng);
            (e, f)
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn implications_and_witnesses(kind in 0u8..3, dim in 2usize..=5, seed in any::<u64>()) {
        let (e, f) = random_pair(kind, dim, seed);
        let report = full_report(&e, &f, TOL, None).unwrap();
        for (p, q) in IMPLICATIONS {
            prop_assert!(!report.holds(p) || report.holds(q), "{p} holds without {q}");
        }
        for v in &report.verdicts {
            if v.holds() {
                let w = v.certificate.as_ref().expect("HOLDS carries a certificate");
                let check = verify_witness(&e, &f, w, 1e-8);
                prop_assert!(check.is_valid(), "{}: {:?}", v.condition, check.violations);
            }
        }
    }

    #[test]
    fn verdicts_are_symmetric(kind in 0u8..3, dim in 2usize..=4, seed in any::<u64>()) {
        let (e, f) = random_pair(kind, dim, seed);
        let base = verdicts(&e, &f);
        for other in [verdicts(&f, &e), verdicts(&e.complement(), &f.complement())] {
            for (k, (&(h0, m0), &(h1, _))) in base.iter().zip(other.iter()).enumerate() {
                // Only compare verdicts clear of the decision boundary.
                let clear = if k == 0 { (m0 - TOL).abs() > 1e-7 } else { m0.abs() > 1e-7 };
                if clear {
                    prop_assert_eq!(h0, h1, "{}", Condition::ALL[k]);
                }
            }
        }
    }
}

#[test]
fn holding_conditions_are_never_infeasible() {
    let params = OracleParams::default();
    for seed in 0..60u64 {
        let (e, f) = random_pair(seed as u8, 2 + (seed as usize) % 3, seed);
        let report = full_report(&e, &f, TOL, None).unwrap();
        if report.any_holds() {
            let out = decide_pair(&e, &f, &params).unwrap();
            assert_ne!(out.kind, OracleKind::LikelyInfeasible, "seed {seed}");
        }
    }
}
