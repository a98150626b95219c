//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `--nocapture`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use catgen::baselines::{ExemplarModel, PrototypeModel, DEFAULT_SPECIFICITY};
use catgen::bayes::{bayes_curve, HypothesisSpace, Posterior};
use catgen::experiment::{
    run_condition, run_effect_report, write_condition_csv, ConditionResult, ConditionSpec,
};
use catgen::som::{grid_distance, Map, SomConfig};
use catgen::Stimulus;

const ENSEMBLE_SEEDS: u32 = 100;
const SEPARATION: f64 = 3.0;

fn verdict(label: &str, ok: bool, detail: &str) {
    println!("criterion {label}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {label} failed: {detail}");
}

fn stim(x: f64, y: f64) -> Stimulus {
    Stimulus::point2(x, y).unwrap()
}

fn run_preset(name: &str) -> ConditionResult {
    let mut spec = ConditionSpec::preset(name).unwrap();
    spec.n_seeds = ENSEMBLE_SEEDS;
    run_condition(&spec, 0, false).unwrap()
}

fn pooled_separation(mean_a: f64, se_a: f64, mean_b: f64, se_b: f64) -> f64 {
    (mean_a - mean_b) / (se_a * se_a + se_b * se_b).sqrt()
}

#[test]
fn criterion_1_bmu_matches_exhaustive_argmin() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    for case in 0..1000 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let dim = rng.gen_range(1..=3);
        // every third case snaps values to a coarse lattice to force ties
        let coarse = case % 3 == 0;
        let draw = |rng: &mut ChaCha8Rng| -> f64 {
            if coarse {
                rng.gen_range(-2i32..=2) as f64
            } else {
                rng.gen_range(-5.0..5.0)
            }
        };
        let weights: Vec<Vec<f64>> = (0..rows * cols)
            .map(|_| (0..dim).map(|_| draw(&mut rng)).collect())
            .collect();
        let x = Stimulus::new((0..dim).map(|_| draw(&mut rng)).collect()).unwrap();
        let config = SomConfig {
            rows,
            cols,
            ..SomConfig::default()
        };
        let map = Map::with_weights(config, weights.clone()).unwrap();

        // oracle: exhaustive scan, strict less-than keeps the lowest index
        let mut expected = 0;
        let mut best = f64::INFINITY;
        for (idx, w) in weights.iter().enumerate() {
            let d = x
                .values()
                .iter()
                .zip(w)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if d < best {
                best = d;
                expected = idx;
            }
        }
        assert_eq!(
            map.best_matching_unit(&x).unwrap(),
            expected,
            "case {case}: rows={rows} cols={cols} dim={dim}"
        );
    }
    verdict("1 (bmu-oracle)", true, "1000 randomized cases, exact match");
}

#[test]
fn criterion_2_update_rule_unit_cases() {
    let base = vec![stim(50.0, 0.0), stim(60.0, 0.0)];
    let x = stim(55.0, 0.0);

    // eta = 1 with h = 1 snaps the BMU onto the input, exactly
    let mut snap_ok = true;
    for seed in 0..20 {
        let mut map = Map::init(&SomConfig::default().with_seed(seed), &base).unwrap();
        map.train_step(&x, 1.0, 0.5).unwrap();
        let bmu = map.best_matching_unit(&x).unwrap();
        snap_ok &= map.units()[bmu].weight == x.values();
    }

    // eta = 0 leaves the map untouched, exactly
    let before = Map::init(&SomConfig::default().with_seed(3), &base).unwrap();
    let mut after = before.clone();
    after.train_step(&x, 0.0, 0.5).unwrap();
    let noop_ok = before == after;

    // generic step matches per-component arithmetic within 1e-12
    let mut generic_ok = true;
    for seed in 0..20 {
        let before = Map::init(&SomConfig::default().with_seed(seed), &base).unwrap();
        let bmu_coord = before.units()[before.best_matching_unit(&x).unwrap()].coord;
        let mut after = before.clone();
        after.train_step(&x, 0.5, 0.5).unwrap();
        for (ub, ua) in before.units().iter().zip(after.units()) {
            let d = grid_distance(bmu_coord, ub.coord);
            let h = (-d * d / (2.0 * 0.5 * 0.5)).exp();
            for (k, (&wb, &wa)) in ub.weight.iter().zip(&ua.weight).enumerate() {
                let expected = wb + 0.5 * h * (x.values()[k] - wb);
                generic_ok &= (wa - expected).abs() <= 1e-12;
            }
        }
    }

    verdict(
        "2 (update-rule)",
        snap_ok && noop_ok && generic_ok,
        &format!("snap={snap_ok} noop={noop_ok} generic={generic_ok}"),
    );
}

#[test]
fn criterion_3_max_qe_ordering() {
    let base = run_preset("base");
    let numerosity = run_preset("numerosity");
    let variability = run_preset("variability");

    let base_over_num = pooled_separation(
        base.mean_max_qe,
        base.stderr_max_qe,
        numerosity.mean_max_qe,
        numerosity.stderr_max_qe,
    );
    let var_over_base = pooled_separation(
        variability.mean_max_qe,
        variability.stderr_max_qe,
        base.mean_max_qe,
        base.stderr_max_qe,
    );
    let ok = numerosity.mean_max_qe < base.mean_max_qe
        && base.mean_max_qe < variability.mean_max_qe
        && base_over_num > SEPARATION
        && var_over_base > SEPARATION;
    verdict(
        "3 (max-qe-ordering)",
        ok,
        &format!(
            "mean max QE numerosity={:.3} < base={:.3} < variability={:.3}; \
             separations {:.1}, {:.1} pooled SEs",
            numerosity.mean_max_qe,
            base.mean_max_qe,
            variability.mean_max_qe,
            base_over_num,
            var_over_base
        ),
    );
}

#[test]
fn criterion_4_numerosity_effect() {
    let base = run_preset("base");
    let numerosity = run_preset("numerosity");
    let mut min_sep = f64::INFINITY;
    for probe in [65.0, 70.0, 75.0, 80.0] {
        let i = base.spec.probe_grid.index_of(probe).unwrap();
        let sep = pooled_separation(
            numerosity.mean_rd[i],
            numerosity.stderr_rd[i],
            base.mean_rd[i],
            base.stderr_rd[i],
        );
        min_sep = min_sep.min(sep);
    }
    verdict(
        "4 (numerosity-effect)",
        min_sep > SEPARATION,
        &format!("mean RD numerosity > base at 65/70/75/80, min separation {min_sep:.1} pooled SEs"),
    );
}

#[test]
fn criterion_5_variability_effect() {
    let base = run_preset("base");
    let variability = run_preset("variability");
    let mut min_sep = f64::INFINITY;
    for probe in [65.0, 70.0, 80.0] {
        let i = base.spec.probe_grid.index_of(probe).unwrap();
        let sep = pooled_separation(
            base.mean_rd[i],
            base.stderr_rd[i],
            variability.mean_rd[i],
            variability.stderr_rd[i],
        );
        min_sep = min_sep.min(sep);
    }
    verdict(
        "5 (variability-effect)",
        min_sep > SEPARATION,
        &format!("mean RD variability < base at 65/70/80, min separation {min_sep:.1} pooled SEs"),
    );
}

#[test]
fn criterion_6_bayes_reference() {
    // regression constants frozen from an exact rational-arithmetic
    // enumeration of the same grid
    const P70_BASE: f64 = 0.5035601276848231;
    const P70_NUMEROSITY: f64 = 0.049930779515286294;
    const P70_VARIABILITY: f64 = 0.6057319743431826;

    let space = HypothesisSpace::default_grid();
    let sets: [(&str, Vec<f64>); 3] = [
        ("base", vec![50.0, 60.0]),
        ("numerosity", vec![50.0, 53.0, 55.0, 57.0, 59.0, 60.0]),
        ("variability", vec![30.0, 60.0]),
    ];

    let mut norm_ok = true;
    let mut range_ok = true;
    for (_, xs) in &sets {
        let post = Posterior::uniform_prior(&space, xs).unwrap();
        norm_ok &= (post.masses().iter().sum::<f64>() - 1.0).abs() <= 1e-9;
        let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min) as i64;
        let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) as i64;
        for y in lo..=hi {
            range_ok &= (post.generalization_probability(y as f64) - 1.0).abs() <= 1e-9;
        }
    }

    let p = |xs: &[f64]| {
        Posterior::uniform_prior(&space, xs)
            .unwrap()
            .generalization_probability(70.0)
    };
    let p_base = p(&sets[0].1);
    let p_num = p(&sets[1].1);
    let p_var = p(&sets[2].1);

    let pinned_ok = (p_base - P70_BASE).abs() <= 1e-12
        && (p_num - P70_NUMEROSITY).abs() <= 1e-12
        && (p_var - P70_VARIABILITY).abs() <= 1e-12;
    let ordering_ok = p_base > p_num && p_var > p_base;

    verdict(
        "6 (bayes-reference)",
        norm_ok && range_ok && pinned_ok && ordering_ok,
        &format!(
            "normalized={norm_ok} in-range-probability-one={range_ok} \
             p70 base={p_base:.12} numerosity={p_num:.12} variability={p_var:.12}"
        ),
    );
}

#[test]
fn criterion_7_set_position_divergence() {
    // the Bayesian reference cannot tell the two sets apart
    let space = HypothesisSpace::default_grid();
    let probes: Vec<f64> = (0..=100).map(f64::from).collect();
    let bayes1 = bayes_curve(&space, &[30.0, 40.0, 60.0], &probes).unwrap();
    let bayes2 = bayes_curve(&space, &[30.0, 50.0, 60.0], &probes).unwrap();
    let bayes_identical = bayes1
        .values
        .iter()
        .zip(&bayes2.values)
        .all(|(a, b)| a == b);

    // the map can: its curves separate at some probe
    let set1 = run_preset("set1");
    let set2 = run_preset("set2");
    let max_sep = (0..set1.probes.len())
        .map(|i| {
            pooled_separation(
                set1.mean_rd[i],
                set1.stderr_rd[i],
                set2.mean_rd[i],
                set2.stderr_rd[i],
            )
            .abs()
        })
        .fold(0.0f64, f64::max);

    verdict(
        "7 (set-position-divergence)",
        bayes_identical && max_sep > SEPARATION,
        &format!(
            "bayes curves identical={bayes_identical}, max SOM separation {max_sep:.1} pooled SEs"
        ),
    );
}

#[test]
fn criterion_8_baseline_non_effects() {
    let probe = stim(70.0, 0.0);
    let base_set = vec![stim(50.0, 0.0), stim(60.0, 0.0)];
    let numerosity_set: Vec<Stimulus> = [50.0, 53.0, 55.0, 57.0, 59.0, 60.0]
        .iter()
        .map(|&x| stim(x, 0.0))
        .collect();

    let d_base = ExemplarModel::new(base_set.clone(), DEFAULT_SPECIFICITY)
        .unwrap()
        .min_distance(&probe)
        .unwrap();
    let d_num = ExemplarModel::new(numerosity_set, DEFAULT_SPECIFICITY)
        .unwrap()
        .min_distance(&probe)
        .unwrap();
    let exemplar_ok = d_base == 10.0 && d_num == 10.0;

    // prototype-symmetric pairs chosen so the arithmetic stays exact
    let before = PrototypeModel::fit(&base_set).unwrap();
    let mut extended = base_set;
    extended.push(stim(45.0, 0.0));
    extended.push(stim(65.0, 0.0));
    let after = PrototypeModel::fit(&extended).unwrap();
    let prototype_ok = before.prototype() == after.prototype();

    verdict(
        "8 (baseline-non-effects)",
        exemplar_ok && prototype_ok,
        &format!(
            "exemplar min distance base={d_base} numerosity={d_num}; \
             prototype invariant={prototype_ok}"
        ),
    );
}

#[test]
fn criterion_9_csv_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let spec = ConditionSpec::preset("base").unwrap();

    let path_a = dir.path().join("a.csv");
    let path_b = dir.path().join("b.csv");
    write_condition_csv(&run_condition(&spec, 0, false).unwrap(), &path_a).unwrap();
    write_condition_csv(&run_condition(&spec, 0, false).unwrap(), &path_b).unwrap();

    let bytes_a = std::fs::read(&path_a).unwrap();
    let bytes_b = std::fs::read(&path_b).unwrap();
    verdict(
        "9 (csv-determinism)",
        bytes_a == bytes_b,
        &format!("{} bytes, identical reruns", bytes_a.len()),
    );
}

#[test]
fn effect_report_passes_under_defaults() {
    let report = run_effect_report(ENSEMBLE_SEEDS, 0).unwrap();
    for v in &report.verdicts {
        println!(
            "effect report: {} {} (statistic {:.3}, threshold {})",
            if v.pass { "PASS" } else { "FAIL" },
            v.property,
            v.statistic,
            v.threshold
        );
    }
    assert!(report.all_pass());
}
