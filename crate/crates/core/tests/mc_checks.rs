use laplace_gof::alternatives::{submodel_grid, AlternativeSpec, SubmodelId};
use laplace_gof::engine::{calibrate_many, estimate_power_many, null_statistics, pvalue_from_null, PowerScenario};
use laplace_gof::harness::{power_curves, run_study, PowerTable, StudyConfig};
use laplace_gof::laplace::Sample;
use laplace_gof::rng::{power_tag, stream};
use laplace_gof::{Direction, TestId};
use statrs::distribution::{ContinuousCDF, Normal};

const SEED: u64 = 77;

fn id(s: &str) -> TestId {
    s.parse().unwrap()
}

struct Published {
    test: TestId,
    n: usize,
    alpha: f64,
    lower: Option<(f64, f64)>,
    upper: Option<(f64, f64)>,
}

/// Value and half of its last printed digit.
fn printed(field: &str) -> Option<(f64, f64)> {
    if field.is_empty() {
        return None;
    }
    let decimals = field.split('.').nth(1).map_or(0, str::len);
    Some((field.parse().unwrap(), 0.5 * 10f64.powi(-(decimals as i32))))
}

fn published() -> Vec<Published> {
    let mut rd = csv::Reader::from_path(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/table_a1.csv")).unwrap();
    rd.records()
        .map(|r| {
            let r = r.unwrap();
            Published {
                test: id(&r[0]),
                n: r[1].parse().unwrap(),
                alpha: r[2].parse().unwrap(),
                lower: printed(&r[3]),
                upper: printed(&r[4]),
            }
        })
        .collect()
}

/// Whether the published bound is a plausible `target` quantile of the sorted
/// null values, allowing for its rounding and 4.5 Monte Carlo standard errors.
fn in_band(sorted: &[f64], (q, h): (f64, f64), target: f64) -> bool {
    let reps = sorted.len() as f64;
    let below = sorted.partition_point(|&v| v < q - h) as f64 / reps;
    let at_or_below = sorted.partition_point(|&v| v <= q + h) as f64 / reps;
    let se = (target * (1.0 - target) / reps).sqrt();
    below - 4.5 * se <= target && target <= at_or_below + 4.5 * se
}

#[test]
fn published_critical_values_at_n20_and_n50() {
    let table = published();
    assert_eq!(table.len(), 480);
    let tests: Vec<TestId> = TestId::all().collect();
    let mut misses = Vec::new();
    for n in [20, 50] {
        let null = null_statistics(&tests, n, 20_000, SEED).unwrap();
        for (t, mut v) in tests.iter().zip(null) {
            v.sort_by(f64::total_cmp);
            for p in table.iter().filter(|p| p.test == *t && p.n == n) {
                let tail = if t.direction() == Direction::TwoSided { p.alpha / 2.0 } else { p.alpha };
                assert_eq!(p.lower.is_some(), t.direction() != Direction::UpperTail, "{t}");
                assert_eq!(p.upper.is_some(), t.direction() != Direction::LowerTail, "{t}");
                if let Some(b) = p.lower {
                    if !in_band(&v, b, tail) {
                        misses.push(format!("{t} n={n} alpha={} lower {}", p.alpha, b.0));
                    }
                }
                if let Some(b) = p.upper {
                    if !in_band(&v, b, 1.0 - tail) {
                        misses.push(format!("{t} n={n} alpha={} upper {}", p.alpha, b.0));
                    }
                }
            }
        }
    }
    assert!(misses.is_empty(), "{misses:#?}");
}

#[test]
fn dlo_z_pvalues_follow_the_normal_approximation_at_n200() {
    let t = id("DLO_Z");
    let null = null_statistics(&[t], 200, 20_000, SEED).unwrap().pop().unwrap();
    let normal = Normal::standard();
    for z in [0.25, 0.5, 1.0, 1.5, 1.96, 2.5, -0.75, -1.96] {
        let mc = pvalue_from_null(t.direction(), &null, z);
        let approx = 2.0 * normal.sf(f64::abs(z));
        assert!((mc - approx).abs() < 0.01, "z = {z}: {mc} vs {approx}");
    }
}

#[test]
fn null_pvalues_are_uniform() {
    let t = id("DLO_Z");
    let n = 200;
    let null = null_statistics(&[t], n, 20_000, SEED).unwrap().pop().unwrap();
    let mut ps: Vec<f64> = (0..500)
        .map(|r| {
            let mut rng = stream(SEED, "pvalue-uniformity", r);
            let s = Sample::new(AlternativeSpec::Laplace.draws(n, &mut rng)).unwrap();
            pvalue_from_null(t.direction(), &null, t.statistic(&s).unwrap())
        })
        .collect();
    ps.sort_by(f64::total_cmp);
    let m = ps.len() as f64;
    let d = ps.iter().enumerate().map(|(i, &p)| (p - i as f64 / m).max((i + 1) as f64 / m - p)).fold(0.0, f64::max);
    // 1% critical value of the Kolmogorov distance at m = 500
    assert!(d < 1.63 / m.sqrt(), "D = {d}");
}

#[test]
fn power_grows_from_first_to_last_case() {
    let tests: Vec<TestId> = TestId::all().collect();
    let n = 50;
    let regions = calibrate_many(&tests, n, &[0.05], 5_000, SEED).unwrap();
    let mut records = Vec::new();
    for m in SubmodelId::ALL {
        let grid = submodel_grid(m, n).unwrap();
        for case in [&grid.cases[0], grid.cases.last().unwrap()] {
            let scenario = PowerScenario {
                spec: case.spec,
                submodel: m.name().to_string(),
                case_index: case.index,
                param_value: case.param,
                n,
                tag: power_tag(m.name(), case.index, n),
            };
            records.extend(estimate_power_many(&regions, &scenario, 1_000, SEED).unwrap());
        }
    }
    let curves = power_curves(&PowerTable { records }).unwrap();
    let at = |t: TestId, j: usize| curves.iter().find(|c| c.test == t && c.case_index == j).unwrap().avg_power;
    let rising: Vec<TestId> = tests.iter().copied().filter(|&t| at(t, 1) < at(t, 20)).collect();
    assert!(rising.len() >= 35, "only {} tests rise: {rising:?}", rising.len());
}

#[test]
fn identical_configs_give_identical_files() {
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = StudyConfig::parse(
            "ns = 20\nalphas = 0.05, 0.1\ncalib_reps = 2000\npower_reps = 1000\nseed = 5\ntests = AD, GV, CK_v\nsubmodels = t_light, G",
        )
        .unwrap();
        cfg.out_dir = dir.path().to_path_buf();
        let out = run_study(&cfg, &mut |_| {}).unwrap();
        let read = |p: &std::path::Path| std::fs::read(p).unwrap();
        (read(&out.power_csv), read(&out.critical_csv))
    };
    assert_eq!(run(), run());
}

#[test]
fn reduced_run_of_wa_against_heavy_normal_mixtures() {
    let regions = calibrate_many(&[id("Wa")], 20, &[0.05], 10_000, SEED).unwrap();
    let m: SubmodelId = "MixN_heavy".parse().unwrap();
    let grid = submodel_grid(m, 20).unwrap();
    let mut total = 0.0;
    for case in &grid.cases {
        let scenario = PowerScenario {
            spec: case.spec,
            submodel: m.name().to_string(),
            case_index: case.index,
            param_value: case.param,
            n: 20,
            tag: power_tag(m.name(), case.index, 20),
        };
        total += estimate_power_many(&regions, &scenario, 10_000, SEED).unwrap()[0].power();
    }
    let avg = 100.0 * total / grid.cases.len() as f64;
    assert!((avg - 80.8).abs() <= 1.5, "average power {avg}");
}

#[test]
fn published_dlo_x_curve_at_n200() {
    let table = PowerTable::load(std::path::Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/published_power.csv"))).unwrap();
    let at: Vec<_> = table.records.iter().filter(|r| r.n == 200 && r.alpha == 0.05).cloned().collect();
    let curves = power_curves(&PowerTable { records: at }).unwrap();
    let dlo = curves.iter().find(|c| c.test == id("DLO_X")).unwrap();
    assert_eq!(dlo.case_index, 1);
    assert!((dlo.avg_power - 81.8).abs() < 0.05, "{}", dlo.avg_power);
}
