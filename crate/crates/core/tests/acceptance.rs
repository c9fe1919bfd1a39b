//! Acceptance checks. Runs as a plain binary and prints one PASS/FAIL line per
//! criterion; exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command as Process;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fuzzlens::cluster::{fcm, frb_cluster, FcmConfig, FrbConfig};
use fuzzlens::fuzzy::{Label, LinguisticPartition};
use fuzzlens::ga::{evolve, GaConfig};
use fuzzlens::heatmap::{max_gradient, relevant_area, super_regions, Heatmap};
use fuzzlens::losses::{combined_loss, smooth_l1, LossConfig};
use fuzzlens::metrics::{BinaryCounts, ConfusionMatrix};
use fuzzlens::pipeline::{stratified_split, workflow_discriminate, workflow_explain_features, WorkflowConfig};
use fuzzlens::rules::{Antecedent, FuzzyRule, Limits, RuleBase, SupportMode};
use fuzzlens::synth;
use fuzzlens::table::{rescale, FeatureTable};

struct Check {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: impl Into<String>) -> Check {
    Check {
        passed,
        detail: detail.into(),
    }
}

/// Name, time budget in seconds, and the check itself.
type Criterion = (&'static str, u64, fn() -> Check);

fn main() {
    let criteria: [Criterion; 9] = [
        ("rule inference matches brute-force oracle", 10, rule_oracle),
        ("GA two-blob bar", 60, ga_bar),
        ("discrimination workflow bar", 120, discrimination_bar),
        ("FCM properties and grid oracle", 30, fcm_properties),
        ("rule-based clustering", 60, frb_properties),
        ("heatmap analytics", 10, heatmap_analytics),
        ("metrics and losses", 10, metrics_and_losses),
        ("feature-explanation workflow", 180, explain_workflow),
        ("CLI rerun determinism", 120, cli_determinism),
    ];
    let mut failures = 0;
    for (i, (name, budget_s, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            check(false, format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget_s);
        let passed = outcome.passed && in_time;
        if !passed {
            failures += 1;
        }
        println!(
            "[{}] {}. {} ({:.1}s, budget {}s): {}",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            name,
            elapsed.as_secs_f64(),
            budget_s,
            outcome.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------- criterion 1

/// Membership of `x` in label `l` of the strong partition with the given peaks,
/// written directly from the piecewise-linear definition.
fn oracle_membership(peaks: &[f64], l: usize, x: f64) -> f64 {
    let k = peaks.len();
    let p = peaks[l];
    if x == p {
        return 1.0;
    }
    if x < p {
        if l == 0 {
            return 1.0;
        }
        let left = peaks[l - 1];
        if x <= left {
            0.0
        } else {
            (x - left) / (p - left)
        }
    } else {
        if l == k - 1 {
            return 1.0;
        }
        let right = peaks[l + 1];
        if x >= right {
            0.0
        } else {
            (right - x) / (right - p)
        }
    }
}

struct OracleRule {
    antecedents: Vec<(usize, usize)>,
    consequent: usize,
}

fn oracle_firing(rule: &OracleRule, peaks: &[Vec<f64>], x: &[f64]) -> f64 {
    rule.antecedents
        .iter()
        .map(|&(v, l)| oracle_membership(&peaks[v], l, x[v]))
        .product()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12
}

fn rule_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut compared = 0usize;
    for instance in 0..200 {
        let n = rng.random_range(1..=6);
        let d = rng.random_range(1..=3);
        let n_classes = rng.random_range(2..=3);
        let n_rules = rng.random_range(1..=3);
        let peaks: Vec<Vec<f64>> = (0..d)
            .map(|_| {
                let k = rng.random_range(2..=4);
                let mut p: Vec<f64> = (0..k).map(|_| rng.random::<f64>()).collect();
                p.sort_by(f64::total_cmp);
                p.dedup();
                if p.len() < 2 {
                    p = vec![0.0, 1.0];
                }
                p
            })
            .collect();
        let sample = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..d)
                .map(|v| {
                    if rng.random_bool(0.2) {
                        peaks[v][rng.random_range(0..peaks[v].len())]
                    } else {
                        rng.random::<f64>()
                    }
                })
                .collect()
        };
        let rows: Vec<Vec<f64>> = (0..n).map(|_| sample(&mut rng)).collect();
        let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..n_classes)).collect();
        let rules: Vec<OracleRule> = (0..n_rules)
            .map(|_| {
                let mut vars: Vec<usize> = (0..d).collect();
                rand::seq::SliceRandom::shuffle(&mut vars[..], &mut rng);
                vars.truncate(rng.random_range(1..=d));
                OracleRule {
                    antecedents: vars
                        .into_iter()
                        .map(|v| (v, rng.random_range(0..peaks[v].len())))
                        .collect(),
                    consequent: rng.random_range(0..n_classes),
                }
            })
            .collect();
        let mode = if rng.random_bool(0.5) {
            SupportMode::RuleCount
        } else {
            SupportMode::SampleCount
        };

        let table = FeatureTable::new(rows.clone(), (0..d).map(|j| format!("x{j}")).collect(), Some(labels.clone()))
            .and_then(|t| t.with_class_names((0..n_classes).map(|c| format!("c{c}")).collect()))
            .expect("table");
        let partitions: Vec<LinguisticPartition> = peaks
            .iter()
            .enumerate()
            .map(|(v, p)| LinguisticPartition::from_peaks(v, p).expect("partition"))
            .collect();
        let library_rules: Vec<FuzzyRule> = rules
            .iter()
            .map(|r| {
                FuzzyRule::new(
                    r.antecedents.iter().map(|&(v, l)| Antecedent::new(v, Label(l))).collect(),
                    r.consequent,
                )
                .expect("rule")
            })
            .collect();
        let base = RuleBase::fit(library_rules, partitions, &table, mode, &Limits::default()).expect("fit");

        // oracle statistics
        let denominator = match mode {
            SupportMode::RuleCount => n_rules as f64,
            SupportMode::SampleCount => n as f64,
        };
        let mut ds = Vec::new();
        for (i, r) in rules.iter().enumerate() {
            let firing: Vec<f64> = rows.iter().map(|x| oracle_firing(r, &peaks, x)).collect();
            let on_class: f64 = firing.iter().zip(&labels).filter(|(_, &l)| l == r.consequent).map(|(w, _)| w).sum();
            let total: f64 = firing.iter().sum();
            let support = on_class / denominator;
            let confidence = if total == 0.0 { 0.0 } else { on_class / total };
            let stats = base.rules()[i].stats;
            if !close(stats.support, support) || !close(stats.confidence, confidence) || !close(stats.dominance_score, support * confidence) {
                return check(false, format!("instance {instance}, rule {i}: statistics differ"));
            }
            ds.push(support * confidence);
        }
        let mut counts = vec![0usize; n_classes];
        for &l in &labels {
            counts[l] += 1;
        }
        let majority = (0..n_classes).fold(0, |best, c| if counts[c] > counts[best] { c } else { best });

        let queries: Vec<Vec<f64>> = rows.iter().cloned().chain((0..4).map(|_| sample(&mut rng))).collect();
        for x in &queries {
            let assoc: Vec<f64> = rules.iter().zip(&ds).map(|(r, &s)| oracle_firing(r, &peaks, x) * s).collect();
            let mut winner: Option<usize> = None;
            for (i, &a) in assoc.iter().enumerate() {
                if a > winner.map_or(0.0, |w| assoc[w]) {
                    winner = Some(i);
                }
            }
            let expected = winner.map_or(majority, |w| rules[w].consequent);
            let got = base.predict(x).expect("predict");
            let lib_assoc = base.association_degrees(x).expect("association");
            if got.class != expected || got.rule != winner || lib_assoc.iter().zip(&assoc).any(|(a, b)| !close(*a, *b)) {
                return check(false, format!("instance {instance}: prediction differs at {x:?}"));
            }
            compared += 1;
        }
    }
    check(true, format!("200 instances, {compared} predictions identical, statistics within 1e-12"))
}

// ---------------------------------------------------------------- criterion 2

fn ga_bar() -> Check {
    let mut mccs = Vec::new();
    for seed in 0..10u64 {
        let data = synth::blobs(&[vec![0.3, 0.3], vec![0.7, 0.7]], 30, 0.08, 100 + seed);
        let (train_rows, test_rows) = stratified_split(&data, 1.0 / 3.0, seed).expect("split");
        assert_eq!((train_rows.len(), test_rows.len()), (40, 20));
        let (train, bounds) = rescale(&data.select_rows(&train_rows)).expect("rescale");
        let test = bounds.apply(&data.select_rows(&test_rows)).expect("apply");
        let config = GaConfig {
            seed,
            ..GaConfig::default()
        };
        let base = evolve(&config, &train).expect("evolve");
        let predicted = base.classify(&test).expect("classify");
        let cm = ConfusionMatrix::from_predictions(&predicted, test.labels().unwrap(), 2).expect("confusion");
        mccs.push(cm.mcc());
    }
    let good = mccs.iter().filter(|&&m| m >= 0.9).count();
    let shown: Vec<String> = mccs.iter().map(|m| format!("{m:.3}")).collect();
    check(good >= 9, format!("{good}/10 seeds with test MCC >= 0.9 [{}]", shown.join(", ")))
}

// ---------------------------------------------------------------- criterion 3

fn discrimination_bar() -> Check {
    let table = synth::painter_table(186, 186, 10, 2, 0.12, 7);
    let config = WorkflowConfig {
        test_fraction: 81.0 / 372.0,
        seed: 7,
        ..WorkflowConfig::default()
    };
    let model = workflow_discriminate(&table, 0, 1, &config).expect("workflow");
    let (acc, mcc) = (model.test_accuracy(), model.test_mcc());
    check(
        model.train_rows.len() == 291 && model.test_rows.len() == 81 && acc >= 0.88 && mcc >= 0.62,
        format!(
            "{}/{} split, test accuracy {acc:.4} (>= 0.88), MCC {mcc:.4} (>= 0.62)",
            model.train_rows.len(),
            model.test_rows.len()
        ),
    )
}

// ---------------------------------------------------------------- criterion 4

/// Minimum over memberships of J_2 for fixed centroids: sum_k 1 / sum_i d_ik^-2.
fn j2_at(points: &[f64], v: &[f64]) -> f64 {
    points
        .iter()
        .map(|&x| {
            let d2: Vec<f64> = v.iter().map(|&c| (x - c) * (x - c)).collect();
            if d2.contains(&0.0) {
                0.0
            } else {
                1.0 / d2.iter().map(|d| 1.0 / d).sum::<f64>()
            }
        })
        .sum()
}

fn fcm_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..100 {
        let n = rng.random_range(4..80);
        let d = rng.random_range(1..5);
        let c = rng.random_range(2..=4.min(n));
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.random_range(-5.0..5.0)).collect())
            .collect();
        let table = FeatureTable::new(rows, (0..d).map(|j| format!("x{j}")).collect(), None).expect("table");
        let config = FcmConfig {
            n_clusters: c,
            seed: case,
            ..FcmConfig::default()
        };
        let result = fcm(&table, &config).expect("fcm");
        if let Some(w) = result.objective.windows(2).find(|w| w[1] > w[0] + 1e-10) {
            return check(false, format!("case {case}: objective rose from {} to {}", w[0], w[1]));
        }
        if let Some(row) = result.embedding.memberships().iter().find(|r| (r.iter().sum::<f64>() - 1.0).abs() > 1e-9) {
            return check(false, format!("case {case}: membership row sums to {}", row.iter().sum::<f64>()));
        }
    }

    let points = [0.0, 0.1, 0.2, 0.8, 0.9, 1.0];
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=1000 {
        for j in i..=1000 {
            let v = [i as f64 * 1e-3, j as f64 * 1e-3];
            let jm = j2_at(&points, &v);
            if jm < best.0 {
                best = (jm, v[0], v[1]);
            }
        }
    }
    let table = FeatureTable::new(points.iter().map(|&p| vec![p]).collect(), vec!["x".into()], None).expect("table");
    let result = fcm(&table, &FcmConfig::default()).expect("fcm");
    let mut centroids: Vec<f64> = result.centroids.iter().map(|c| c[0]).collect();
    centroids.sort_by(f64::total_cmp);
    let err = (centroids[0] - best.1).abs().max((centroids[1] - best.2).abs());
    check(
        err <= 5e-3,
        format!(
            "100 fuzzed runs monotone with unit rows; six-point centroids ({:.4}, {:.4}) vs grid ({:.3}, {:.3}), error {err:.2e}",
            centroids[0], centroids[1], best.1, best.2
        ),
    )
}

// ---------------------------------------------------------------- criterion 5

fn frb_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut non_unit_rows = false;
    let mut flagged = 0;
    for case in 0..100 {
        let n = rng.random_range(0..120);
        let d = rng.random_range(1..=6);
        let duplicate = rng.random_bool(0.1);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                if duplicate && i > 0 {
                    vec![0.5; d]
                } else {
                    (0..d).map(|_| rng.random::<f64>()).collect()
                }
            })
            .collect();
        let table = FeatureTable::new(rows, (0..d).map(|j| format!("x{j}")).collect(), None).expect("table");
        let config = FrbConfig {
            seed: case,
            ..FrbConfig::default()
        };
        let result = frb_cluster(&table, &config).expect("frb");
        if result.embedding.n_documents() != n || result.embedding.n_clusters() > n {
            return check(false, format!("case {case}: bad embedding shape"));
        }
        if result.flagged() {
            flagged += 1;
        }
        non_unit_rows |= result
            .embedding
            .memberships()
            .iter()
            .any(|r| (r.iter().sum::<f64>() - 1.0).abs() > 1e-9);
    }

    let blobs = synth::shuffled_blobs(&[vec![0.2, 0.2], vec![0.8, 0.8]], 50, 0.05, 11);
    let (scaled, _) = rescale(&blobs).expect("rescale");
    let result = frb_cluster(&scaled, &FrbConfig::default()).expect("frb");
    let e = &result.embedding;
    let labels = blobs.labels().unwrap();
    let assignment: Vec<usize> = (0..e.n_documents()).map(|i| e.argmax(i).unwrap_or(usize::MAX)).collect();
    let mut counts = vec![[0usize; 2]; e.n_clusters()];
    for (a, &l) in assignment.iter().zip(labels) {
        if *a != usize::MAX {
            counts[*a][l] += 1;
        }
    }
    let pure = assignment
        .iter()
        .zip(labels)
        .filter(|(a, &l)| **a != usize::MAX && counts[**a][l] > counts[**a][1 - l])
        .count();
    let purity = pure as f64 / labels.len() as f64;
    check(
        e.n_clusters() >= 2 && purity >= 0.9 && non_unit_rows,
        format!(
            "100 fuzzed inputs terminated ({flagged} flagged); two blobs -> {} clusters, purity {purity:.3}; non-unit row sums observed: {non_unit_rows}",
            e.n_clusters()
        ),
    )
}

// ---------------------------------------------------------------- criterion 6

/// Tile-relevance mask and 4-connected component count computed independently
/// with a union-find over tiles.
fn oracle_regions(map: &[Vec<f64>], grid_n: usize) -> usize {
    let (h, w) = (map.len(), map[0].len());
    let total: f64 = map.iter().flatten().sum();
    let mean = total / (h * w) as f64;
    let bounds = |i: usize, len: usize| {
        let s = len / grid_n;
        (i * s, if i == grid_n - 1 { len } else { (i + 1) * s })
    };
    let mut relevant = vec![false; grid_n * grid_n];
    for ti in 0..grid_n {
        for tj in 0..grid_n {
            let (r0, r1) = bounds(ti, h);
            let (c0, c1) = bounds(tj, w);
            let sum: f64 = (r0..r1).flat_map(|r| (c0..c1).map(move |c| (r, c))).map(|(r, c)| map[r][c]).sum();
            relevant[ti * grid_n + tj] = sum / ((r1 - r0) * (c1 - c0)) as f64 > mean;
        }
    }
    let mut parent: Vec<usize> = (0..relevant.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for t in 0..relevant.len() {
        if !relevant[t] {
            continue;
        }
        let (r, c) = (t / grid_n, t % grid_n);
        for u in [(r + 1 < grid_n).then(|| t + grid_n), (c + 1 < grid_n).then(|| t + 1)].into_iter().flatten() {
            if relevant[u] {
                let (a, b) = (find(&mut parent, t), find(&mut parent, u));
                parent[a] = b;
            }
        }
    }
    (0..relevant.len()).filter(|&t| relevant[t] && find(&mut parent, t) == t).count()
}

fn heatmap_analytics() -> Check {
    let constant = Heatmap::filled(16, 16, 0.37).expect("map");
    let triple = (max_gradient(&constant), relevant_area(&constant), super_regions(&constant, 8).unwrap());
    if triple != (0.0, 0.0, 0) {
        return check(false, format!("constant map gave {triple:?}"));
    }
    for h in [1.0, 0.25, 3.0, 0.1, 7.3] {
        let g = max_gradient(&synth::step_heatmap(10, 12, h));
        if g != 4.0 * h {
            return check(false, format!("step of {h} gave max gradient {g}"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..100 {
        let grid_n = rng.random_range(1..=8);
        let h = rng.random_range(grid_n.max(3)..=40);
        let w = rng.random_range(grid_n.max(3)..=40);
        let p_hot = rng.random::<f64>();
        let hot_tiles: Vec<bool> = (0..grid_n * grid_n).map(|_| rng.random_bool(p_hot)).collect();
        let rows: Vec<Vec<f64>> = (0..h)
            .map(|r| {
                (0..w)
                    .map(|c| {
                        let t = (r * grid_n / h) * grid_n + c * grid_n / w;
                        if hot_tiles[t] {
                            rng.random_range(0.6..1.0)
                        } else {
                            rng.random_range(0.0..0.4)
                        }
                    })
                    .collect()
            })
            .collect();
        let map = Heatmap::from_rows(rows.clone()).expect("map");
        let got = super_regions(&map, grid_n).expect("regions");
        let expected = oracle_regions(&rows, grid_n);
        if got != expected {
            return check(false, format!("pattern {case}: {got} regions, oracle {expected}"));
        }

        let k = rng.random_range(0.1..10.0);
        let c = rng.random_range(0.0..5.0);
        let scaled = map.map(|v| k * v).unwrap();
        let shifted = map.map(|v| v + c).unwrap();
        let g = max_gradient(&map);
        if (max_gradient(&scaled) - k * g).abs() > 1e-12 * (1.0 + k * g) {
            return check(false, format!("pattern {case}: gradient not scale covariant"));
        }
        let area = relevant_area(&map);
        if !(0.0..=1.0).contains(&area) || got > grid_n * grid_n {
            return check(false, format!("pattern {case}: descriptor out of range"));
        }
        for (what, m) in [("scaled", &scaled), ("shifted", &shifted)] {
            if relevant_area(m) != area || super_regions(m, grid_n).unwrap() != got {
                return check(false, format!("pattern {case}: {what} map changed area or regions"));
            }
        }
    }
    check(true, "constant -> (0, 0, 0); step h -> exactly 4h; 100 patterns match union-find oracle with scale/offset invariance")
}

// ---------------------------------------------------------------- criterion 7

fn metrics_and_losses() -> Check {
    let m = BinaryCounts::new(2, 3, 1, 1).mcc();
    if (m - 5.0 / 12.0).abs() > 1e-12 {
        return check(false, format!("MCC(2,3,1,1) = {m}"));
    }
    let eps = 1e-12;
    let knee = [
        smooth_l1(0.0, 1.0 - eps),
        smooth_l1(0.0, 1.0),
        smooth_l1(0.0, 1.0 + eps),
        smooth_l1(3.0, 2.0 - eps),
        smooth_l1(3.0, 2.0 + eps),
    ];
    if knee.iter().any(|v| (v - 0.5).abs() > 1e-9) {
        return check(false, format!("smooth L1 around the knee: {knee:?}"));
    }
    let combined = combined_loss(1.0, 2.0, &LossConfig::new(0.9).unwrap());
    if combined != 1.1 {
        return check(false, format!("combined_loss(1, 2, 0.9) = {combined:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let cells: Vec<u64> = (0..4).map(|_| rng.random_range(0..50)).collect();
        let cm = ConfusionMatrix::from_rows(&[vec![cells[0], cells[1]], vec![cells[2], cells[3]]]).unwrap();
        let multi = cm.mcc();
        let binary = BinaryCounts::new(cells[3], cells[0], cells[1], cells[2]).mcc();
        if (multi - binary).abs() > 1e-12 {
            return check(false, format!("C=2 matrix {cells:?}: multiclass {multi} vs binary {binary}"));
        }
    }
    check(true, format!("MCC {m:.15}; knee continuous; combined {combined}; 1000 C=2 matrices agree"))
}

// ---------------------------------------------------------------- criterion 8

fn explain_workflow() -> Check {
    let config = WorkflowConfig {
        seed: 8,
        ..WorkflowConfig::default()
    };
    let planted = synth::planted_activations(1500, 4, 6, 1, 2, 0.6, 8);
    let result = workflow_explain_features(&planted.activations, &planted.styles, Some(&planted.descriptors), &config)
        .expect("planted run");
    let style = synth::STYLE_NAMES[2];
    let Some(f1) = result.features.iter().find(|e| e.feature == 1) else {
        return check(false, "planted feature was skipped");
    };
    let names_style = f1
        .model
        .report
        .rows
        .iter()
        .any(|r| r.dominance_score > 0.0 && r.antecedent_list.contains(style));

    let null = synth::null_activations(4000, 4, 6, 9);
    let null_result = workflow_explain_features(&null.activations, &null.styles, Some(&null.descriptors), &config)
        .expect("null run");
    let null_mccs: Vec<f64> = null_result.features.iter().map(|e| e.mcc()).collect();
    let null_ok = null_mccs.len() == 4 && null_mccs.iter().all(|m| m.abs() < 0.2);
    let shown: Vec<String> = null_mccs.iter().map(|m| format!("{m:.3}")).collect();
    check(
        f1.mcc() > 0.8 && names_style && null_ok,
        format!(
            "planted feature MCC {:.4}, rule naming '{style}': {names_style}; null MCCs [{}]",
            f1.mcc(),
            shown.join(", ")
        ),
    )
}

// ---------------------------------------------------------------- criterion 9

fn fuzzlens(args: &[&str]) -> Result<(), String> {
    let out = Process::new(env!("CARGO_BIN_EXE_fuzzlens"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))
    }
}

fn csv_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

fn cli_determinism() -> Check {
    match cli_runs() {
        Ok(detail) => check(true, detail),
        Err(e) => check(false, e),
    }
}

fn cli_runs() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let save = |table: &FeatureTable, name: &str| fuzzlens::pipeline::save_table(table, &dir.path().join(name)).map_err(|e| e.to_string());

    std::fs::write(
        p("corpus.txt"),
        "sunflowers in a yellow vase\nstarry night over the village\nyellow wheat field with crows\n\
         tahitian women on the beach\nthe yellow christ\nwomen of tahiti by the sea\n",
    )
    .map_err(|e| e.to_string())?;
    let blobs = synth::shuffled_blobs(&[vec![0.2, 0.2], vec![0.8, 0.8]], 15, 0.05, 1);
    let unlabeled = FeatureTable::from_flat(blobs.values().to_vec(), blobs.feature_names().to_vec(), None).map_err(|e| e.to_string())?;
    save(&unlabeled, "encoded.csv")?;
    std::fs::create_dir(p("maps")).map_err(|e| e.to_string())?;
    for i in 0..3 {
        let m = synth::gaussian_heatmap(24, 24, 0.2 + 0.3 * i as f64, 0.5, 0.15);
        let text: String = (0..24)
            .map(|r| (0..24).map(|c| m.get(r, c).to_string()).collect::<Vec<_>>().join(",") + "\n")
            .collect();
        std::fs::write(dir.path().join("maps").join(format!("img{i}.csv")), text).map_err(|e| e.to_string())?;
    }
    save(&synth::painter_table(40, 40, 6, 2, 0.12, 3), "painters.csv")?;
    let ex = synth::planted_activations(200, 3, 4, 1, 2, 0.6, 4);
    save(&ex.activations, "acts.csv")?;
    save(&ex.styles, "styles.csv")?;
    save(&ex.descriptors, "descs.csv")?;

    let (corpus, encoded, maps, painters, acts, styles, descs) =
        (p("corpus.txt"), p("encoded.csv"), p("maps"), p("painters.csv"), p("acts.csv"), p("styles.csv"), p("descs.csv"));
    let runs: Vec<(&str, Vec<&str>)> = vec![
        ("encode", vec!["encode", "--input", &corpus, "--method", "tfidf"]),
        ("cluster-fcm", vec!["cluster", "--input", &encoded, "--method", "fcm", "--clusters", "3"]),
        ("cluster-frb", vec!["cluster", "--input", &encoded, "--method", "frb"]),
        ("descriptors", vec!["descriptors", "--maps", &maps, "--grid-n", "4"]),
        ("train", vec!["train", "--table", &painters, "--label", "label", "--generations", "40"]),
        ("explain", vec!["explain", "--activations", &acts, "--styles", &styles, "--descriptors", &descs, "--generations", "40"]),
    ];
    let mut compared = 0;
    for (name, args) in runs {
        let first = p(&format!("{name}-1"));
        let second = p(&format!("{name}-2"));
        let mut full = vec!["--seed", "17", "--out", &first];
        full.extend(args);
        fuzzlens(&full)?;
        let config = format!("{first}/config.txt");
        fuzzlens(&["report", "--config", &config, "--out", &second])?;
        let (a, b) = (csv_files(Path::new(&first)), csv_files(Path::new(&second)));
        if a.is_empty() || a != b {
            return Err(format!("{name}: outputs differ after rerun"));
        }
        compared += a.len();
    }
    Ok(format!("6 CLI runs replayed from their config echo; {compared} CSV files byte-identical"))
}
