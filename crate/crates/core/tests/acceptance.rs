//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use agdiag::cai::{cai, cai_table, AreaShareTable, Scope};
use agdiag::diagnostics::{builtin_bihar_tree, evaluate, names, IndicatorSet};
use agdiag::growth_accounting::{decompose, PeriodMode};
use agdiag::market::{coefficient_of_variation, rising_volatility_share, BreakStats};
use agdiag::panel::{CropObservation, CropPanel, InputOutputPanel, IoItem, IoYear, ItemKind};
use agdiag::productivity::{
    avg_annual_growth, build_index, tornqvist_log_growth, weighted_log_change, GrowthMethod, IndexKind,
};

type Outcome = std::result::Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/bihar")
}

// ---------------------------------------------------------------------------
// Decomposition

/// `(area, production, price)` per crop for two years.
fn panel_from(base: &[(f64, f64, f64)], terminal: &[(f64, f64, f64)]) -> CropPanel {
    let mut obs = Vec::new();
    for (year, side) in [(1, base), (2, terminal)] {
        for (i, (a, q, p)) in side.iter().enumerate() {
            obs.push(CropObservation::new(format!("c{i}"), year, *a, *q, *p));
        }
    }
    CropPanel::from_observations(obs).unwrap()
}

fn revenue(side: &[(f64, f64, f64)]) -> f64 {
    side.iter().map(|(_, q, p)| q * p).sum()
}

fn c1_additivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let runs = 2000;
    let mut worst = 0.0f64;
    let mut worst_pct = 0.0f64;
    for _ in 0..runs {
        let n = rng.gen_range(1..=10);
        let mut side = || -> Vec<(f64, f64, f64)> {
            (0..n)
                .map(|_| {
                    let a = rng.gen_range(1.0..1e5);
                    let y = rng.gen_range(0.1..50.0);
                    (a, a * y, rng.gen_range(1.0..1e4))
                })
                .collect()
        };
        let (b, t) = (side(), side());
        let r = decompose(&panel_from(&b, &t), 1, 2, PeriodMode::Endpoint).map_err(|e| e.to_string())?;
        let delta = revenue(&t) - revenue(&b);
        let sum: f64 = r.effects().iter().sum();
        worst = worst.max((sum - delta).abs() / delta.abs().max(revenue(&b)));
        let p = r.percent().ok_or("percent view undefined")?;
        let pct = p.area_effect + p.price_effect + p.yield_effect + p.diversification_effect + p.interaction_effect;
        worst_pct = worst_pct.max((pct - 100.0).abs());
    }
    let elapsed = start.elapsed();
    check(worst <= 1e-9, || format!("worst relative additivity error {worst:e}"))?;
    check(worst_pct <= 1e-6, || format!("worst percent error {worst_pct:e}"))?;
    check(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("{runs} panels, max rel err {worst:.1e}, max pct err {worst_pct:.1e}, {elapsed:.2?}"))
}

fn c2_isolation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let total: f64 = rng.gen_range(100.0..1e5);
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
        let ws: f64 = w.iter().sum();
        let shares: Vec<f64> = w.iter().map(|x| x / ws).collect();
        let yields: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..10.0)).collect();
        let prices: Vec<f64> = (0..n).map(|_| rng.gen_range(10.0..1e3)).collect();
        let build = |total: f64, shares: &[f64], yields: &[f64], prices: &[f64]| -> Vec<(f64, f64, f64)> {
            (0..n)
                .map(|i| {
                    let a = total * shares[i];
                    (a, a * yields[i], prices[i])
                })
                .collect()
        };
        let base = build(total, &shares, &yields, &prices);

        // zero-sum share perturbation: move mass from one crop to another
        let mut moved = shares.clone();
        let d = moved[0].min(moved[1]) * 0.5;
        moved[0] -= d;
        moved[1] += d;
        let mut scale = |v: &[f64]| v.iter().map(|x| x * rng.gen_range(0.5..2.0)).collect::<Vec<_>>();
        let (new_prices, new_yields) = (scale(&prices), scale(&yields));
        let cases: [(usize, Vec<(f64, f64, f64)>); 4] = [
            (0, build(total * 1.3, &shares, &yields, &prices)),
            (1, build(total, &shares, &yields, &new_prices)),
            (2, build(total, &shares, &new_yields, &prices)),
            (3, build(total, &moved, &yields, &prices)),
        ];
        for (factor, terminal) in cases {
            let r = decompose(&panel_from(&base, &terminal), 1, 2, PeriodMode::Endpoint).map_err(|e| e.to_string())?;
            let effects = r.effects();
            let scale = r.total.abs().max(1.0);
            for (k, e) in effects.iter().enumerate() {
                let expect = if k == factor { r.total } else { 0.0 };
                let err = (e - expect).abs() / scale;
                worst = worst.max(err);
                check(err <= 1e-9, || format!("factor {factor}: effect {k} = {e}, expected {expect}"))?;
            }
        }
    }
    Ok(format!("800 single-factor cases, max rel err {worst:.1e}"))
}

// ---------------------------------------------------------------------------
// Productivity

/// Test-side Törnqvist: Σ ½(s₀+s₁)(ln q₁ − ln q₀) over one side.
fn oracle_log_change(from: &BTreeMap<String, IoItem>, to: &BTreeMap<String, IoItem>) -> f64 {
    from.iter()
        .map(|(k, a)| {
            let b = &to[k];
            0.5 * (a.share + b.share) * (b.quantity.ln() - a.quantity.ln())
        })
        .sum()
}

fn random_items(rng: &mut ChaCha8Rng, prefix: &str, n: usize, level: f64) -> BTreeMap<String, IoItem> {
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = w.iter().sum();
    w.iter()
        .enumerate()
        .map(|(i, x)| {
            (
                format!("{prefix}{i}"),
                IoItem {
                    quantity: level * rng.gen_range(0.5..2.0),
                    share: x / s,
                },
            )
        })
        .collect()
}

fn reshare(rng: &mut ChaCha8Rng, items: &mut BTreeMap<String, IoItem>) {
    let w: Vec<f64> = items.keys().map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = w.iter().sum();
    for (item, x) in items.values_mut().zip(w) {
        item.share = x / s;
    }
}

/// 16 years (2000–2015) with heterogeneous outputs and inputs scaled so the
/// oracle TFP log change is `ln(1 + rate)` every year.
fn planted_panel(rng: &mut ChaCha8Rng, rate: f64) -> InputOutputPanel {
    let mut years = BTreeMap::new();
    let mut prev: Option<IoYear> = None;
    for y in 2000..2016 {
        let mut outputs = random_items(rng, "o", 5, 100.0 * (1.0 + 0.01 * f64::from(y - 2000)));
        let mut inputs = match &prev {
            None => random_items(rng, "i", 4, 50.0),
            Some(p) => p.inputs.clone(),
        };
        reshare(rng, &mut inputs);
        if let Some(p) = &prev {
            reshare(rng, &mut outputs);
            let out = oracle_log_change(&p.outputs, &outputs);
            let common = out - (1.0 + rate).ln();
            for item in inputs.values_mut() {
                item.quantity *= common.exp();
            }
        }
        let io = IoYear { outputs, inputs };
        prev = Some(io.clone());
        years.insert(y, io);
    }
    InputOutputPanel::from_years(years).unwrap()
}

fn c3_recovery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let panel = planted_panel(&mut rng, 0.0171);
    let tfp = build_index(&panel, IndexKind::Tfp, 2000).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for method in [GrowthMethod::Loglinear, GrowthMethod::Cagr] {
        let g = avg_annual_growth(&tfp.values, 2000, 2015, method).map_err(|e| e.to_string())?;
        check((g - 1.71).abs() <= 0.01, || format!("{method}: {g:.6} vs 1.71"))?;
        parts.push(format!("{method} {g:.6}"));
    }
    Ok(parts.join(", "))
}

fn two_year_panel(rng: &mut ChaCha8Rng) -> InputOutputPanel {
    let no = rng.gen_range(1..6);
    let ni = rng.gen_range(1..6);
    let y1 = IoYear {
        outputs: random_items(rng, "o", no, 10.0),
        inputs: random_items(rng, "i", ni, 10.0),
    };
    let mut y2 = y1.clone();
    for items in [&mut y2.outputs, &mut y2.inputs] {
        reshare(rng, items);
        for item in items.values_mut() {
            item.quantity *= rng.gen_range(0.5..2.0);
        }
    }
    InputOutputPanel::from_years([(1, y1), (2, y2)].into_iter().collect()).unwrap()
}

fn c4_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let cases = 500;
    for _ in 0..cases {
        let p = two_year_panel(&mut rng);
        let fwd = tornqvist_log_growth(&p, 1, 2).map_err(|e| e.to_string())?;
        let back = tornqvist_log_growth(&p, 2, 1).map_err(|e| e.to_string())?;
        let err = rel_err(fwd, -back);
        worst = worst.max(err);
        check(err <= 1e-9, || format!("time reversal: {fwd} vs {back}"))?;

        // share collapse: every output grows at g
        let g = rng.gen_range(-0.5..0.5);
        let mut years: BTreeMap<i32, IoYear> = p.iter().map(|(y, io)| (y, io.clone())).collect();
        let first = years[&1].outputs.clone();
        for (k, item) in years.get_mut(&2).unwrap().outputs.iter_mut() {
            item.quantity = first[k].quantity * f64::exp(g);
        }
        let collapsed = InputOutputPanel::from_years(years).unwrap();
        let out = weighted_log_change(&collapsed, ItemKind::Output, 1, 2).map_err(|e| e.to_string())?;
        let err = rel_err(out, g);
        worst = worst.max(err);
        check(err <= 1e-9, || format!("share collapse: {out} vs {g}"))?;
    }
    for _ in 0..50 {
        let rate = rng.gen_range(-0.05..0.05);
        let panel = planted_panel(&mut rng, rate);
        let idx = |k| build_index(&panel, k, 2000).map_err(|e| e.to_string());
        let (o, i, t) = (idx(IndexKind::Output)?, idx(IndexKind::Input)?, idx(IndexKind::Tfp)?);
        for (y, v) in &t.values {
            let expect = 100.0 * o.values[y] / i.values[y];
            let err = rel_err(*v, expect);
            worst = worst.max(err);
            check(err <= 1e-9, || format!("tfp identity at {y}: {v} vs {expect}"))?;
        }
    }
    Ok(format!("{cases} two-year panels and 50 chained panels, max rel err {worst:.1e}"))
}

// ---------------------------------------------------------------------------
// CAI and CV

fn c5_cai() -> Outcome {
    let region = AreaShareTable::new(Scope::Region, 2015, [("vegetables".into(), 9.1), ("other".into(), 90.9)].into())
        .map_err(|e| e.to_string())?;
    let nation = AreaShareTable::new(Scope::Nation, 2015, [("vegetables".into(), 5.0), ("other".into(), 95.0)].into())
        .map_err(|e| e.to_string())?;
    let v = cai(&region, &nation, "vegetables").map_err(|e| e.to_string())?;
    check((v - 1.82).abs() <= 1e-9, || format!("cai = {v}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.gen_range(1..8);
        let r: BTreeMap<String, f64> = (0..n).map(|i| (format!("g{i}"), rng.gen_range(0.0..1e4))).collect();
        let nt: BTreeMap<String, f64> = (0..n).map(|i| (format!("g{i}"), rng.gen_range(0.01..1e4))).collect();
        if r.values().sum::<f64>() <= 0.0 {
            continue;
        }
        // k ∈ (0, 1e6], log-uniform so small factors are exercised too
        let k = 10f64.powf(rng.gen_range(-6.0..=6.0));
        let kr = r.iter().map(|(g, a)| (g.clone(), a * k)).collect();
        let nation = AreaShareTable::new(Scope::Nation, 1, nt).unwrap();
        let base = cai_table(&AreaShareTable::new(Scope::Region, 1, r).unwrap(), &nation).map_err(|e| e.to_string())?;
        let scaled = cai_table(&AreaShareTable::new(Scope::Region, 1, kr).unwrap(), &nation).map_err(|e| e.to_string())?;
        for (g, v) in &base {
            let err = rel_err(scaled[g], *v);
            worst = worst.max(err);
            check(err <= 1e-9, || format!("k={k}: {g} {v} vs {}", scaled[g]))?;
        }
    }
    Ok(format!("cai(vegetables) = {v:.12}, scale invariance max rel err {worst:.1e}"))
}

fn c6_cv() -> Outcome {
    let exact = coefficient_of_variation(&[1.0, 2.0, 3.0]).map_err(|e| e.to_string())?;
    check(exact == 50.0, || format!("cv(1,2,3) = {exact}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.gen_range(2..30);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..1e4)).collect();
        let k = 10f64.powf(rng.gen_range(-6.0..6.0));
        let kx: Vec<f64> = x.iter().map(|v| v * k).collect();
        let a = coefficient_of_variation(&x).map_err(|e| e.to_string())?;
        let b = coefficient_of_variation(&kx).map_err(|e| e.to_string())?;
        let err = (a - b).abs() / a.abs().max(1.0);
        worst = worst.max(err);
        check(err <= 1e-12, || format!("k={k}: {a} vs {b}"))?;
    }
    Ok(format!("cv(1,2,3) = {exact}, scale invariance max rel err {worst:.1e}"))
}

// ---------------------------------------------------------------------------
// Diagnostics and reports

fn reference_indicators() -> agdiag::Result<IndicatorSet> {
    let pairs = [("paddy", 11.0, 27.7), ("wheat", 12.2, 14.1), ("maize", 11.2, 24.9)];
    let stats: Vec<BreakStats> = pairs
        .iter()
        .map(|(c, before, after)| BreakStats {
            commodity_id: c.to_string(),
            break_year: 2007,
            n_before: 5,
            n_after: 10,
            mean_before: 1.0,
            mean_after: 1.0,
            cv_before: *before,
            cv_after: *after,
        })
        .collect();
    let mut set = IndicatorSet::new();
    set.insert_scalar(names::AL_RATIO_CHANGE, 0.67 - 0.68, "ratio", "")?;
    set.insert_scalar(names::TFP_GROWTH, 1.71, "percent_per_year", "")?;
    set.insert_scalar(names::TFP_BENCHMARK, 1.60, "percent_per_year", "")?;
    set.insert_scalar(names::PRICE_CV_RISING_SHARE, rising_volatility_share(&stats)?, "fraction", "")?;
    set.insert_scalar(names::MAX_CAI, 1.72, "ratio", "")?;
    set.insert_scalar(names::HIGH_VALUE_AREA_SHARE, 6.2, "percent", "")?;
    set.insert_scalar(names::VALUE_COST_RATIO, 1.2, "ratio", "")?;
    set.insert_scalar(names::GRAIN_FERTILIZER_RATIO, 1.5, "ratio", "")?;
    Ok(set)
}

fn c7_verdict() -> Outcome {
    let expected: Vec<String> = vec!["agricultural_markets".into(), "crop_diversification".into()];
    let set = reference_indicators().map_err(|e| e.to_string())?;
    let report = evaluate(&builtin_bihar_tree(), &set).map_err(|e| e.to_string())?;
    let got: Vec<String> = report.binding_labels().into_iter().collect();
    check(got == expected, || format!("binding set {got:?}"))?;

    // the bundled fixture, end to end
    let cfg = agdiag::pipeline::RunConfig::load(&fixture_dir().join("run.json")).map_err(|e| e.to_string())?;
    let computed = agdiag::pipeline::compute_indicators(&cfg).map_err(|e| e.to_string())?;
    let report = evaluate(&builtin_bihar_tree(), &computed).map_err(|e| e.to_string())?;
    let got: Vec<String> = report.binding_labels().into_iter().collect();
    check(got == expected, || format!("fixture binding set {got:?}"))?;
    Ok(format!("binding = {{{}}}", expected.join(", ")))
}

fn read_dir_bytes(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect()
}

fn c8_determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = fixture_dir().join("run.json");
    let mut dirs = Vec::new();
    for run in ["a", "b"] {
        let out = tmp.path().join(run);
        let status = Command::new(env!("CARGO_BIN_EXE_agdiag"))
            .args(["report", "--config"])
            .arg(&config)
            .arg("--out-dir")
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        check(status.status.success(), || String::from_utf8_lossy(&status.stderr).into_owned())?;
        dirs.push(read_dir_bytes(&out));
    }
    check(!dirs[0].is_empty(), || "no artifacts written".into())?;
    check(dirs[0] == dirs[1], || "artifact directories differ".into())?;
    Ok(format!("{} artifacts byte-identical across two runs", dirs[0].len()))
}

fn main() -> ExitCode {
    let suite = Instant::now();
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("C1 decomposition additivity", c1_additivity),
        ("C2 single-factor isolation", c2_isolation),
        ("C3 planted TFP recovery", c3_recovery),
        ("C4 index identities", c4_identities),
        ("C5 CAI construction and scale invariance", c5_cai),
        ("C6 CV properties", c6_cv),
        ("C7 diagnostic verdict", c7_verdict),
        ("C8 report determinism", c8_determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    // The whole workspace suite is timed by the test runner; this bounds the
    // acceptance workload, the heaviest target.
    let elapsed = suite.elapsed();
    if elapsed < Duration::from_secs(60) {
        println!("PASS C9 runtime: acceptance workload {elapsed:.2?} (< 60 s)");
    } else {
        failed += 1;
        println!("FAIL C9 runtime: acceptance workload {elapsed:.2?}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
