//! Property tests for the invariants of every module.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fuzzlens::cluster::{fcm, frb_cluster, FcmConfig, FrbConfig};
use fuzzlens::fuzzy::{default_partition, product_tnorm, Label, LinguisticPartition};
use fuzzlens::ga::{evolve_detailed, fitness, Chromosome, Fitness, GaConfig, Layout};
use fuzzlens::heatmap::{fuse, relevant_area, super_regions, Heatmap};
use fuzzlens::losses::{combined_loss, cross_entropy, smooth_l1, LossConfig};
use fuzzlens::metrics::{BinaryCounts, ConfusionMatrix};
use fuzzlens::rules::{Antecedent, FuzzyRule, Limits, RuleBase, SupportMode};
use fuzzlens::table::{rescale, FeatureTable};
use fuzzlens::text::{bow, tfidf, tokenize};

fn peaks_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..=1.0, 2..6).prop_filter_map("distinct peaks", |mut p| {
        p.sort_by(f64::total_cmp);
        p.dedup();
        (p.len() >= 2 && p.windows(2).all(|w| w[1] - w[0] > 1e-6)).then_some(p)
    })
}

fn table_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = FeatureTable> {
    (1..=max_cols, 1..=max_rows).prop_flat_map(|(d, n)| {
        prop::collection::vec(prop::collection::vec(-100.0f64..100.0, d), n).prop_map(move |rows| {
            FeatureTable::new(rows, (0..d).map(|j| format!("x{j}")).collect(), None).unwrap()
        })
    })
}

/// Labeled table in `[0,1]` with both classes present.
fn unit_labeled(max_rows: usize, d: usize) -> impl Strategy<Value = FeatureTable> {
    prop::collection::vec((prop::collection::vec(0.0f64..=1.0, d), 0usize..2), 4..=max_rows)
        .prop_map(move |rows| {
            let mut labels: Vec<usize> = rows.iter().map(|r| r.1).collect();
            labels[0] = 0;
            labels[1] = 1;
            FeatureTable::new(
                rows.into_iter().map(|r| r.0).collect(),
                (0..d).map(|j| format!("x{j}")).collect(),
                Some(labels),
            )
            .unwrap()
        })
}

proptest! {
    #[test]
    fn partition_memberships_sum_to_one(peaks in peaks_strategy(), x in 0.0f64..=1.0) {
        let p = LinguisticPartition::from_peaks(0, &peaks).unwrap();
        let total: f64 = p.memberships(x).iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(p.memberships(x).iter().all(|m| (0.0..=1.0).contains(m)));
    }

    #[test]
    fn memberships_are_lipschitz(peaks in peaks_strategy(), x in 0.0f64..=1.0, y in 0.0f64..=1.0) {
        let p = LinguisticPartition::from_peaks(0, &peaks).unwrap();
        let l = p.lipschitz();
        for k in 0..p.n_labels() {
            let d = (p.membership(Label(k), x) - p.membership(Label(k), y)).abs();
            prop_assert!(d <= l * (x - y).abs() + 1e-9);
        }
    }

    #[test]
    fn rescale_is_idempotent(t in table_strategy(20, 4)) {
        let (once, _) = rescale(&t).unwrap();
        prop_assert!(once.values().iter().all(|v| (0.0..=1.0).contains(v)));
        let (twice, _) = rescale(&once).unwrap();
        prop_assert_eq!(once.values(), twice.values());
    }

    #[test]
    fn extra_antecedents_never_raise_firing(x in prop::collection::vec(0.0f64..=1.0, 3), labels in prop::collection::vec(0usize..3, 3)) {
        let parts: Vec<LinguisticPartition> = (0..3)
            .map(|v| LinguisticPartition::from_peaks(v, &[0.0, 0.5, 1.0]).unwrap())
            .collect();
        let mut previous = 1.0;
        for n in 1..=3 {
            let ants = (0..n).map(|v| Antecedent::new(v, Label(labels[v]))).collect();
            let w = FuzzyRule::new(ants, 0).unwrap().firing_strength(&x, &parts).unwrap();
            prop_assert!(w <= previous);
            previous = w;
        }
        prop_assert_eq!(product_tnorm([1.0, previous]), previous);
    }

    #[test]
    fn statistics_bounded_and_predictions_scale_free(
        t in unit_labeled(12, 2),
        rule_spec in prop::collection::vec((0usize..2, 0usize..3, 0usize..2), 1..5),
        factor in 0.01f64..100.0,
    ) {
        let rules: Vec<FuzzyRule> = rule_spec
            .iter()
            .map(|&(v, l, c)| FuzzyRule::new(vec![Antecedent::new(v, Label(l))], c).unwrap())
            .collect();
        let parts = vec![default_partition(3).unwrap(), default_partition(3).unwrap().with_domain(0.0, 1.0)];
        let parts: Vec<LinguisticPartition> = parts
            .into_iter()
            .enumerate()
            .map(|(v, mut p)| { p.variable_index = v; p })
            .collect();
        let base = RuleBase::fit(rules, parts, &t, SupportMode::SampleCount, &Limits::default()).unwrap();
        for r in base.rules() {
            prop_assert!((0.0..=1.0).contains(&r.stats.confidence));
            prop_assert!((0.0..=1.0).contains(&r.stats.support));
            prop_assert!(r.stats.dominance_score >= 0.0);
        }
        let mut scaled = base.clone();
        scaled.scale_dominance(factor);
        for x in t.rows() {
            prop_assert_eq!(base.predict(x).unwrap().class, scaled.predict(x).unwrap().class);
        }
    }

    #[test]
    fn mcc_in_range_and_binary_consistent(cells in prop::collection::vec(0u64..40, 4)) {
        let cm = ConfusionMatrix::from_rows(&[vec![cells[0], cells[1]], vec![cells[2], cells[3]]]).unwrap();
        let m = cm.mcc();
        prop_assert!((-1.0..=1.0).contains(&m));
        let b = BinaryCounts::new(cells[3], cells[0], cells[1], cells[2]).mcc();
        prop_assert!((m - b).abs() < 1e-12);
    }

    #[test]
    fn multiclass_mcc_in_range(cells in prop::collection::vec(0u64..20, 9)) {
        let rows: Vec<Vec<u64>> = cells.chunks(3).map(<[u64]>::to_vec).collect();
        let m = ConfusionMatrix::from_rows(&rows).unwrap().mcc();
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&m));
    }

    #[test]
    fn smooth_l1_is_symmetric_and_continuous(a in -10.0f64..10.0, b in -10.0f64..10.0, eps in 0.0f64..1e-6) {
        prop_assert_eq!(smooth_l1(a, b), smooth_l1(b, a));
        prop_assert!(smooth_l1(a, b) >= 0.0);
        prop_assert!((smooth_l1(a, b) - smooth_l1(a, b + eps)).abs() <= eps * 1.000001);
    }

    #[test]
    fn combined_loss_monotone(c in 0.0f64..10.0, e in 0.0f64..10.0, dc in 0.0f64..1.0, alpha in 0.0f64..=1.0) {
        let cfg = LossConfig::new(alpha).unwrap();
        prop_assert!(combined_loss(c + dc, e, &cfg) >= combined_loss(c, e, &cfg));
        prop_assert!(combined_loss(c, e + dc, &cfg) >= combined_loss(c, e, &cfg));
    }

    #[test]
    fn cross_entropy_nonnegative(scores in prop::collection::vec(prop::collection::vec(0.0f64..=1.0, 3), 1..6), hot in prop::collection::vec(0usize..3, 6)) {
        let y: Vec<Vec<f64>> = scores.iter().enumerate().map(|(i, _)| (0..3).map(|j| f64::from(u8::from(j == hot[i]))).collect()).collect();
        prop_assert!(cross_entropy(&y, &scores).unwrap() >= 0.0);
    }

    #[test]
    fn bow_counts_tokens(docs in prop::collection::vec("[a-z ]{0,40}", 1..8)) {
        prop_assume!(docs.iter().any(|d| !tokenize(d).is_empty()));
        let (t, vocab) = bow(&docs, None).unwrap();
        prop_assert!(vocab.terms().windows(2).all(|w| w[0] < w[1]));
        for (i, d) in docs.iter().enumerate() {
            let total: f64 = t.row(i).iter().sum();
            prop_assert_eq!(total, tokenize(d).len() as f64);
        }
        let (w, _) = tfidf(&docs).unwrap();
        prop_assert!(w.values().iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn bow_top_k_is_a_column_subset(docs in prop::collection::vec("[a-e ]{0,30}", 1..8), k in 1usize..6) {
        prop_assume!(docs.iter().any(|d| !tokenize(d).is_empty()));
        let (full, vocab) = bow(&docs, None).unwrap();
        let (top, top_vocab) = bow(&docs, Some(k)).unwrap();
        prop_assert_eq!(top.n_features(), k.min(vocab.len()));
        for (j, term) in top_vocab.terms().iter().enumerate() {
            let src = vocab.index_of(term).unwrap();
            prop_assert_eq!(top.column(j), full.column(src));
        }
    }

    #[test]
    fn heatmap_descriptor_ranges(h in 3usize..20, w in 3usize..20, vals in prop::collection::vec(0.0f64..5.0, 400), grid in 1usize..4) {
        let map = Heatmap::new(h, w, vals[..h * w].to_vec()).unwrap();
        let area = relevant_area(&map);
        prop_assert!((0.0..=1.0).contains(&area));
        prop_assert!(super_regions(&map, grid).unwrap() <= grid * grid);
    }

    #[test]
    fn fuse_is_permutation_invariant(vals in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 16), 1..6), seed in any::<u64>()) {
        let maps: Vec<Heatmap> = vals.into_iter().map(|v| Heatmap::new(4, 4, v).unwrap()).collect();
        let mut shuffled = maps.clone();
        rand::seq::SliceRandom::shuffle(&mut shuffled[..], &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(fuse(&maps).unwrap(), fuse(&shuffled).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fcm_rows_sum_to_one_and_objective_falls(t in table_strategy(30, 3), c in 2usize..4, seed in any::<u64>()) {
        prop_assume!(t.n_samples() >= c);
        let r = fcm(&t, &FcmConfig { n_clusters: c, seed, ..FcmConfig::default() }).unwrap();
        for row in r.embedding.memberships() {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
        prop_assert!(r.objective.windows(2).all(|w| w[1] <= w[0] + 1e-10));
    }

    #[test]
    fn frb_is_permutation_equivariant(rows in prop::collection::vec(prop::collection::vec(0.0f64..=1.0, 2), 1..25), seed in any::<u64>()) {
        let n = rows.len();
        let names = vec!["a".to_string(), "b".to_string()];
        let t = FeatureTable::new(rows.clone(), names.clone(), None).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(&mut order[..], &mut ChaCha8Rng::seed_from_u64(seed));
        let permuted = FeatureTable::new(order.iter().map(|&i| rows[i].clone()).collect(), names, None).unwrap();
        let cfg = FrbConfig { seed: 3, ..FrbConfig::default() };
        let a = frb_cluster(&t, &cfg).unwrap().embedding;
        let b = frb_cluster(&permuted, &cfg).unwrap().embedding;
        prop_assert_eq!(a.n_clusters(), b.n_clusters());
        for (k, &i) in order.iter().enumerate() {
            prop_assert_eq!(a.row(i), b.row(k));
        }
    }

    #[test]
    fn decoded_chromosomes_are_valid(t in unit_labeled(20, 3), seed in any::<u64>(), rate in 0.0f64..1.0) {
        let layout = Layout { n_features: 3, n_classes: 2, n_labels: 3, max_rules: 6, max_antecedents: 2 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Chromosome::random(&layout, &t, &mut rng);
        let b = Chromosome::random(&layout, &t, &mut rng);
        let (mut c, _) = a.crossover(&b, &mut rng);
        c.mutate(rate, &layout, &mut rng);
        let (rules, parts) = c.decode(&layout);
        prop_assert!(rules.len() <= layout.max_rules);
        for r in &rules {
            prop_assert!(!r.antecedents().is_empty() && r.antecedents().len() <= layout.max_antecedents);
            prop_assert!(r.consequent() < 2);
        }
        for p in &parts {
            let peaks = p.peaks();
            prop_assert!(peaks.windows(2).all(|w| w[1] > w[0]));
            prop_assert!(peaks[0] == 0.0 && *peaks.last().unwrap() == 1.0);
        }
        let cfg = GaConfig { max_rules: 6, max_antecedents: 2, ..GaConfig::default() };
        prop_assert_eq!(fitness(&c, &t, &cfg).unwrap(), fitness(&c, &t, &cfg).unwrap());
    }

    #[test]
    fn elitism_keeps_best_fitness(t in unit_labeled(30, 2), seed in any::<u64>()) {
        let cfg = GaConfig { population_size: 12, generations: 15, seed, ..GaConfig::default() };
        let evo = evolve_detailed(&cfg, &t).unwrap();
        prop_assert!(evo.history.windows(2).all(|w| w[1] >= w[0]));
        prop_assert!(evo.history.iter().all(|f| *f >= Fitness::WORST || f.mcc >= -1.0));
    }

    #[test]
    fn fitness_order_is_total(a in -1.0f64..=1.0, b in -1.0f64..=1.0, na in 0usize..10, nb in 0usize..10) {
        let (x, y) = (Fitness { mcc: a, n_rules: na }, Fitness { mcc: b, n_rules: nb });
        prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
        if a == b {
            prop_assert_eq!(x > y, na < nb);
        }
    }
}
