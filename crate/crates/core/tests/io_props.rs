use proptest::prelude::*;
use symlife::evolution::{FusionClass, FusionEvent};
use symlife::records::{parse_rows, write_rows_to, ArchiveRow, FusionRow, MeasureRow, MetricsRow, PatternRow};
use symlife::ExperimentConfig;

fn config() -> impl Strategy<Value = ExperimentConfig> {
    (
        (1u8..=4, 2usize..300, 1usize..5, 0usize..200, 1usize..6, 1usize..6),
        (0usize..4, 0usize..4, 0usize..100, 0usize..100, 0.0f64..=1.0),
        (2.0f64..10.0, 1.0f64..10.0, 0.1f64..10.0, 0.0f64..=1.0, 0.0f64..=1.0),
        (0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..0.5, 0.0f64..0.5, any::<bool>(), any::<bool>()),
        (any::<u64>(), 1usize..20, "[a-z][a-z0-9_/]{0,10}", prop::option::of("[a-z][a-z0-9_]{0,10}")),
    )
        .prop_map(|(a, b, c, d, e)| {
            let (layer, pop, trials, gens, min_x, min_y) = a;
            let (extra_x, extra_y, area_first, area_span, density) = b;
            let (wf, hf, tf, mutation, flip) = c;
            let (sim_a, sim_b, fission, fusion, symbiosis, shuffled) = d;
            let (seed, runs, out, patterns) = e;
            let (s_xspan, s_yspan) = (min_x + extra_x, min_y + extra_y);
            let max_area_first = s_xspan * s_yspan + area_first;
            ExperimentConfig {
                experiment_type_num: layer,
                pop_size: pop,
                num_trials: trials,
                num_generations: gens,
                min_s_xspan: min_x,
                min_s_yspan: min_y,
                s_xspan,
                s_yspan,
                max_area_first,
                max_area_last: max_area_first + area_span,
                seed_density: density,
                width_factor: wf,
                height_factor: hf,
                time_factor: tf,
                tournament_size: 1 + pop / 7,
                elite_size: 1 + pop / 3,
                mutation_rate: mutation,
                prob_flip: flip,
                prob_grow: (1.0 - flip) / 2.0,
                prob_shrink: 1.0 - flip - (1.0 - flip) / 2.0,
                min_similarity: sim_a.min(sim_b),
                max_similarity: sim_a.max(sim_b),
                prob_fission: fission,
                prob_fusion: fusion,
                symbiosis_flag: symbiosis,
                fusion_test_flag: shuffled,
                past_winner_games: 1 + runs,
                rng_seed: seed,
                num_runs: runs,
                output_dir: out.into(),
                pattern_dir: patterns.map(Into::into),
            }
        })
}

fn event() -> impl Strategy<Value = FusionEvent> {
    (
        (0usize..1000, 0usize..100_000, any::<u64>(), any::<u64>()),
        (0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0, 1usize..500),
        (any::<bool>(), 0usize..3, any::<bool>()),
    )
        .prop_map(|(a, b, c)| FusionEvent {
            generation: a.0,
            birth: a.1,
            part_a_id: a.2,
            part_b_id: a.3,
            part_a_fitness: b.0,
            part_b_fitness: b.1,
            whole_fitness: b.2,
            whole_area: b.3,
            shuffled: c.0,
            classification: FusionClass::ALL[c.1],
            accepted: c.2,
        })
}

proptest! {
    #[test]
    fn config_text_round_trips(cfg in config()) {
        prop_assert!(cfg.validate().is_ok());
        let text = cfg.to_text();
        let back = ExperimentConfig::parse(&text).unwrap();
        prop_assert_eq!(&back, &cfg);
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back.hash(), cfg.hash());
    }

    #[test]
    fn config_parser_never_panics(text in "([a-z_]{1,20} ?= ?[-0-9a-z./]{0,8}\n|#.*\n|\n){0,10}") {
        let _ = ExperimentConfig::parse(&text);
    }

    #[test]
    fn fusion_rows_round_trip(events in prop::collection::vec(event(), 0..20), run in 0usize..12) {
        let rows: Vec<FusionRow> = events.iter().map(|e| FusionRow::new("layer4", run, e)).collect();
        let mut buf = Vec::new();
        write_rows_to(&mut buf, &rows).unwrap();
        let back: Vec<FusionRow> = parse_rows(&buf[..]).unwrap();
        let again: Vec<FusionEvent> = back.iter().map(FusionRow::to_event).collect();
        prop_assert_eq!(again, events);
    }

    #[test]
    fn measure_and_pattern_rows_round_trip(
        values in prop::collection::vec((0usize..100, -50.0f64..50.0), 0..20),
        areas in prop::collection::vec(prop::option::of(1usize..10_000), 0..10),
    ) {
        let measures: Vec<MeasureRow> = values
            .iter()
            .map(|&(g, v)| MeasureRow { layer: "layer2".into(), run: 1, generation: g, measure: "vs-random".into(), value: v })
            .collect();
        let mut buf = Vec::new();
        write_rows_to(&mut buf, &measures).unwrap();
        prop_assert_eq!(parse_rows::<MeasureRow, _>(&buf[..]).unwrap(), measures);

        let patterns: Vec<PatternRow> = areas
            .iter()
            .enumerate()
            .map(|(i, &area)| PatternRow { pattern: format!("p{i}"), area, layer: "layer1".into(), games: 20, win_percent: i as f64 * 2.5 })
            .collect();
        let mut buf = Vec::new();
        write_rows_to(&mut buf, &patterns).unwrap();
        prop_assert_eq!(parse_rows::<PatternRow, _>(&buf[..]).unwrap(), patterns);
    }

    #[test]
    fn csv_readers_never_panic(text in "[a-z_,0-9.\n\"/-]{0,200}") {
        let _ = parse_rows::<ArchiveRow, _>(text.as_bytes());
        let _ = parse_rows::<FusionRow, _>(text.as_bytes());
        let _ = parse_rows::<MetricsRow, _>(text.as_bytes());
        let _ = parse_rows::<MeasureRow, _>(text.as_bytes());
        let _ = parse_rows::<PatternRow, _>(text.as_bytes());
    }
}
