mod common;

use common::{pearson_reference, welch_reference};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symlife::stats::{pearson_significance, student_t_two_tailed, welch_t_test};

fn sample(min_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1000.0f64..1000.0, min_len..40)
}

fn paired(min_len: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (min_len..40usize).prop_flat_map(|n| {
        (
            prop::collection::vec(-1000.0f64..1000.0, n),
            prop::collection::vec(-1000.0f64..1000.0, n),
        )
    })
}

#[test]
fn matches_reference_on_fixed_seed_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let na = rng.gen_range(3..30);
        let nb = rng.gen_range(3..30);
        let shift: f64 = rng.gen_range(-1.0..1.0);
        let a: Vec<f64> = (0..na).map(|_| rng.gen::<f64>()).collect();
        let b: Vec<f64> = (0..nb).map(|_| rng.gen::<f64>() * 1.5 + shift).collect();
        let ours = welch_t_test(&a, &b).unwrap();
        let (t, df, p) = welch_reference(&a, &b);
        assert!((ours.statistic - t).abs() < 1e-6);
        assert!((ours.df - df).abs() < 1e-6);
        assert!((ours.p_value - p).abs() < 1e-6, "welch p {} vs {}", ours.p_value, p);

        let x: Vec<f64> = (0..na).map(|_| rng.gen::<f64>()).collect();
        let y: Vec<f64> = x.iter().map(|v| v * shift + rng.gen::<f64>()).collect();
        let (r, res) = pearson_significance(&x, &y).unwrap();
        let (rr, rt, rp) = pearson_reference(&x, &y);
        assert!((r - rr).abs() < 1e-6);
        assert!((res.statistic - rt).abs() < 1e-6);
        assert!((res.p_value - rp).abs() < 1e-6, "pearson p {} vs {}", res.p_value, rp);
    }
}

proptest! {
    #[test]
    fn welch_is_antisymmetric(a in sample(2), b in sample(2)) {
        let (ab, ba) = (welch_t_test(&a, &b).unwrap(), welch_t_test(&b, &a).unwrap());
        prop_assert_eq!(ab.statistic, -ba.statistic);
        prop_assert_eq!(ab.p_value, ba.p_value);
        prop_assert_eq!(ab.df, ba.df);
        prop_assert!((0.0..=1.0).contains(&ab.p_value));
    }

    #[test]
    fn pearson_is_symmetric_and_affine_invariant(
        (x, y) in paired(3),
        scale in 0.01f64..100.0,
        offset in -100.0f64..100.0,
    ) {
        let Ok((r, res)) = pearson_significance(&x, &y) else { return Ok(()) };
        let (r_yx, _) = pearson_significance(&y, &x).unwrap();
        prop_assert_eq!(r, r_yx);
        prop_assert!((0.0..=1.0).contains(&res.p_value));
        let moved: Vec<f64> = x.iter().map(|v| v * scale + offset).collect();
        let (r_moved, _) = pearson_significance(&moved, &y).unwrap();
        prop_assert!((r - r_moved).abs() < 1e-9, "{} vs {}", r, r_moved);
    }

    #[test]
    fn two_tailed_p_falls_as_t_grows(t1 in 0.0f64..50.0, dt in 0.0f64..50.0, df in 0.5f64..200.0) {
        let (p1, p2) = (student_t_two_tailed(t1, df), student_t_two_tailed(t1 + dt, df));
        prop_assert!((0.0..=1.0).contains(&p1));
        prop_assert!(p2 <= p1);
        prop_assert_eq!(student_t_two_tailed(-t1, df), p1);
    }
}
