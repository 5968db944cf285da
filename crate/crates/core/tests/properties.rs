use gbd_core::gbd::{
    classify, mandel_q, mean, mu_from_radius, pmf_table, radius_from_mu, variance, GbdParams,
    Regime,
};
use gbd_core::specfun::{jacobi, JacobiArgs};
use gbd_core::sphere::{coherent_coeffs, kernel, SpherePoint};
use gbd_core::verify::jacobi_recurrence;
use num_complex::Complex64;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = GbdParams> {
    (0u32..=20, 0u32..=8, 0.0f64..=1.0).prop_map(|(field, level, mu)| GbdParams {
        field,
        level,
        mu,
    })
}

fn point() -> impl Strategy<Value = SpherePoint> {
    (0.0f64..4.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| SpherePoint::from_polar(r, t))
}

proptest! {
    #[test]
    fn pmf_is_a_distribution(p in params()) {
        let table = pmf_table(&p);
        prop_assert!(table.probs.iter().all(|&q| q >= 0.0));
        prop_assert!((table.probs.iter().sum::<f64>() - 1.0).abs() < 1e-11);
        prop_assert!((table.cumulative.last().unwrap() - 1.0).abs() < 1e-11);
    }

    #[test]
    fn moments_match_closed_forms(p in params()) {
        let table = pmf_table(&p);
        prop_assert!((table.mean() - mean(&p)).abs() <= 1e-9 * mean(&p).max(1.0));
        prop_assert!((table.variance() - variance(&p)).abs() <= 1e-9 * variance(&p).max(1.0));
    }

    #[test]
    fn mirror_symmetry(p in params()) {
        let a = pmf_table(&p);
        let b = pmf_table(&GbdParams { mu: 1.0 - p.mu, ..p });
        let n = a.probs.len() - 1;
        for j in 0..=n {
            prop_assert!((a.probs[j] - b.probs[n - j]).abs() < 1e-11);
        }
    }

    #[test]
    fn sampling_inverts_the_cdf(p in params(), u in 0.0f64..1.0) {
        let table = pmf_table(&p);
        let j = table.sample(u) as usize;
        prop_assert!(table.probs[j] > 0.0);
        prop_assert!(table.cumulative[j] >= u - 1e-15);
    }

    #[test]
    fn radius_round_trip(r in 0.0f64..100.0) {
        prop_assert!((radius_from_mu(mu_from_radius(r)) - r).abs() <= 1e-12 * r.max(1.0));
    }

    #[test]
    fn classifier_agrees_with_mandel_sign(field in 0u32..=6, level in 1u32..=4, r in 0.0f64..5.0) {
        let q = mandel_q(&GbdParams { field, level, mu: mu_from_radius(r) }).unwrap();
        match classify(field, level, r) {
            Regime::SubPoissonian => prop_assert!(q < 0.0),
            Regime::SuperPoissonian => prop_assert!(q > 0.0),
            Regime::Poissonian => prop_assert!(q.abs() < 1e-9),
            Regime::Degenerate => prop_assert!(false),
        }
    }

    #[test]
    fn jacobi_matches_recurrence(n in 0u32..=15, a in 0.0f64..12.0, b in 0.0f64..12.0, x in -1.0f64..=1.0) {
        let v = jacobi(JacobiArgs::new(n, a, b, x)).unwrap();
        let r = jacobi_recurrence(n, a, b, x);
        prop_assert!((v - r).abs() <= 1e-11 * r.abs().max(1.0), "{v} vs {r}");
    }

    #[test]
    fn coherent_states_are_normalized(field in 0u32..=6, level in 0u32..=4, z in point()) {
        prop_assert!((coherent_coeffs(field, level, &z).norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_is_hermitian(field in 0u32..=6, level in 0u32..=4, z in point(), w in point()) {
        let k = kernel(field, level, &z, &w);
        let l = kernel(field, level, &w, &z);
        prop_assert!((k - l.conj()).norm() < 1e-12);
        let d = (2 * field + 2 * level + 1) as f64;
        prop_assert!((kernel(field, level, &z, &z) - Complex64::new(d, 0.0)).norm() < 1e-12);
    }
}
