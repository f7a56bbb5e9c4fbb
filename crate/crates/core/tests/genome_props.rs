use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symlife::genome::{
    crossover, crossover_at, fission_split, fuse, grow_side, join_side_by_side, mutate_flip, rotate, shrink,
    shrink_side, shuffle, similarity, split_at_line, Cut, Line, SeedGenome, SIDES,
};

fn seed(max: usize) -> impl Strategy<Value = SeedGenome> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(any::<bool>(), r * c).prop_map(move |bits| SeedGenome::from_bits(r, c, bits))
    })
}

/// Two genomes of the same shape.
fn seed_pair(max: usize) -> impl Strategy<Value = (SeedGenome, SeedGenome)> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        (
            prop::collection::vec(any::<bool>(), r * c),
            prop::collection::vec(any::<bool>(), r * c),
        )
            .prop_map(move |(a, b)| (SeedGenome::from_bits(r, c, a), SeedGenome::from_bits(r, c, b)))
    })
}

proptest! {
    #[test]
    fn grow_then_shrink_same_side_is_identity(g in seed(8), side in 0usize..4, density in 0.0f64..=1.0, s in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let side = SIDES[side];
        prop_assert_eq!(shrink_side(&grow_side(&g, side, density, &mut rng), side), g);
    }

    #[test]
    fn shrink_respects_minimum(g in seed(8), min_r in 1usize..5, min_c in 1usize..5, s in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let out = shrink(&g, min_r, min_c, &mut rng);
        let lost = g.area() - out.area();
        prop_assert!(out == g || lost == g.rows() || lost == g.cols());
        if out != g {
            prop_assert!(out.rows() >= min_r.min(g.rows()) && out.cols() >= min_c.min(g.cols()));
        }
    }

    #[test]
    fn fuse_area_and_live_count(a in seed(7), b in seed(7), s in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let whole = fuse(&a, &b, &mut rng);
        prop_assert_eq!(whole.live_count(), a.live_count() + b.live_count());
        // each part is either upright (rows, cols) or on its side (cols, rows)
        let shapes = |g: &SeedGenome| [(g.rows(), g.cols()), (g.cols(), g.rows())];
        let fits = shapes(&a).into_iter().any(|(ha, wa)| {
            shapes(&b)
                .into_iter()
                .any(|(hb, wb)| (whole.rows(), whole.cols()) == (ha.max(hb), wa + 1 + wb))
        });
        prop_assert!(fits);
    }

    #[test]
    fn join_leaves_the_buffer_column_dead(a in seed(7), b in seed(7), ta in 0u8..4, tb in 0u8..4) {
        let (ra, rb) = (rotate(&a, ta), rotate(&b, tb));
        let whole = join_side_by_side(&ra, &rb);
        prop_assert_eq!(whole.rows(), ra.rows().max(rb.rows()));
        prop_assert_eq!(whole.cols(), ra.cols() + 1 + rb.cols());
        prop_assert!((0..whole.rows()).all(|r| !whole.get(r, ra.cols())));
    }

    #[test]
    fn four_quarter_turns_are_identity(g in seed(8)) {
        prop_assert_eq!(rotate(&rotate(&g, 3), 1), g.clone());
        prop_assert_eq!(rotate(&g, 4), g);
    }

    #[test]
    fn shuffle_keeps_shape_and_count(g in seed(10), s in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let out = shuffle(&g, &mut rng);
        prop_assert_eq!((out.rows(), out.cols(), out.live_count()), (g.rows(), g.cols(), g.live_count()));
    }

    #[test]
    fn similarity_properties((a, b) in seed_pair(8), c in seed(8)) {
        prop_assert_eq!(similarity(&a, &b), similarity(&b, &a));
        prop_assert_eq!(similarity(&a, &a), 1.0);
        let s = similarity(&a, &b);
        prop_assert!((0.0..=1.0).contains(&s));
        if (a.rows(), a.cols()) != (c.rows(), c.cols()) {
            prop_assert_eq!(similarity(&a, &c), 0.0);
        }
    }

    #[test]
    fn mutate_flip_changes_something(g in seed(8), rate in 0.0f64..0.2, s in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let out = mutate_flip(&g, rate, &mut rng);
        prop_assert!(out.hamming(&g).unwrap() >= 1);
    }

    #[test]
    fn crossover_takes_lines_verbatim((a, b) in seed_pair(8), s in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let child = crossover(&a, &b, &mut rng).unwrap();
        let rows_ok = (0..=a.rows()).any(|k| crossover_at(&a, &b, Cut::Row(k)).unwrap() == child);
        let cols_ok = (0..=a.cols()).any(|k| crossover_at(&a, &b, Cut::Col(k)).unwrap() == child);
        prop_assert!(rows_ok || cols_ok);
        prop_assert_eq!(crossover(&a, &a, &mut rng).unwrap(), a);
    }

    #[test]
    fn fission_partitions_the_genome(g in seed(8), s in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let split = fission_split(&g, &mut rng).unwrap();
        let (first, second) = split_at_line(&g, split.line);
        prop_assert!(
            (split.kept == first && split.discarded == second) || (split.kept == second && split.discarded == first)
        );
        let line_ones = match split.line {
            Line::Row(r) => {
                prop_assert_eq!(first.rows() + 1 + second.rows(), g.rows());
                (0..g.cols()).filter(|&c| g.get(r, c)).count()
            }
            Line::Col(c) => {
                prop_assert_eq!(first.cols() + 1 + second.cols(), g.cols());
                (0..g.rows()).filter(|&r| g.get(r, c)).count()
            }
        };
        prop_assert_eq!(first.live_count() + second.live_count() + line_ones, g.live_count());
    }

    #[test]
    fn text_forms_round_trip(g in seed(9)) {
        prop_assert_eq!(SeedGenome::from_text(&g.to_text()).unwrap(), g.clone());
        prop_assert_eq!(SeedGenome::from_slashed(g.rows(), g.cols(), &g.body_slashed()).unwrap(), g);
    }
}
