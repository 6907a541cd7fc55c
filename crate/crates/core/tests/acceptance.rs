//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::*;
use politrigon::construct::{family_11n11, family_11n9, family_9n6, hexagram};
use politrigon::ds::{
    check_inequality, is_ds2, refute_target, rule_s_violations, self_assemble, upper_bound, AssemblyOutcome,
    LabeledCycle, RefuteError, RefuteOptions, RefuteOutcome,
};
use politrigon::geom::{Point, Triangle};
use politrigon::io::{parse_scene_file, SceneFile};
use politrigon::search::{
    angles_to_scene, canonical_score, near_isosceles_ratios, optimize_canonical, AngleConfig, CanonOptions,
    SearchOutcome,
};
use politrigon::union::{oracle_union, union_boundary, Scene};
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn asset(name: &str) -> SceneFile {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("assets").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_scene_file(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn asset_gaps(f: &SceneFile, n: usize) -> AngleConfig {
    let line = f.comments.iter().find_map(|c| c.trim_start_matches('#').trim().strip_prefix("gaps=")).expect("gaps line");
    AngleConfig::new(n, line.split(',').map(|t| t.trim().parse().unwrap()).collect()).unwrap()
}

const INSCRIBED: [(&str, usize, usize); 9] = [
    ("inscribed-3-22.scene", 3, 22),
    ("inscribed-4-33.scene", 4, 33),
    ("inscribed-5-44.scene", 5, 44),
    ("inscribed-5-45.scene", 5, 45),
    ("inscribed-6-55.scene", 6, 55),
    ("inscribed-6-56.scene", 6, 56),
    ("inscribed-7-67.scene", 7, 67),
    ("inscribed-8-79.scene", 8, 79),
    ("inscribed-8-80.scene", 8, 80),
];

/// Side count from both evaluators, which must agree exactly.
fn certified(s: &Scene) -> Result<usize, String> {
    let a = union_boundary(s);
    let b = oracle_union(s);
    if a != b {
        return Err(format!("evaluators disagree on a {}-triangle scene", s.len()));
    }
    a.sides().ok_or_else(|| format!("rejected: {:?}", a.rejection().map(|r| r.reason)))
}

fn c1_theorem_sequence() -> Check {
    let mut scenes: Vec<(String, Scene, usize)> = vec![
        ("family_9n6(1)".into(), family_9n6(1).unwrap(), 3),
        ("hexagram".into(), hexagram(), 12),
        ("inscribed-3-22".into(), asset("inscribed-3-22.scene").scene, 22),
    ];
    for n in 4..=6 {
        scenes.push((format!("family_11n11({n})"), family_11n11(n).unwrap(), 11 * n - 11));
    }
    scenes.push(("inscribed-7-67".into(), asset("inscribed-7-67.scene").scene, 67));
    scenes.push(("inscribed-8-79".into(), asset("inscribed-8-79.scene").scene, 79));
    let mut got = Vec::new();
    for (name, s, want) in &scenes {
        let t = Instant::now();
        let m = certified(s).map_err(|e| format!("{name}: {e}"))?;
        let dt = t.elapsed();
        if m != *want {
            return Err(format!("{name}: M = {m}, want {want}"));
        }
        if dt > Duration::from_secs(5) {
            return Err(format!("{name}: certification took {dt:.1?}"));
        }
        got.push(m.to_string());
    }
    Ok(format!("M for n=1..8: {}", got.join(", ")))
}

fn c2_families() -> Check {
    let t = Instant::now();
    for n in 1..=20 {
        let m = union_boundary(&family_9n6(n).unwrap()).sides();
        if m != Some(9 * n - 6) {
            return Err(format!("family_9n6({n}) = {m:?}"));
        }
    }
    let t9 = t.elapsed();
    if t9 > Duration::from_secs(30) {
        return Err(format!("family_9n6 for n=1..20 took {t9:.1?}"));
    }
    for n in [1, 2, 5, 10] {
        certified(&family_9n6(n).unwrap())?;
    }
    for n in 4..=16 {
        let m = union_boundary(&family_11n11(n).unwrap()).sides();
        if m != Some(11 * n - 11) {
            return Err(format!("family_11n11({n}) = {m:?}"));
        }
    }
    for n in 9..=20 {
        let m = union_boundary(&family_11n9(n).unwrap()).sides();
        if m != Some(11 * n - 9) {
            return Err(format!("family_11n9({n}) = {m:?}"));
        }
    }
    Ok(format!("9n-6 for n=1..20 in {t9:.1?}, 11n-11 for n=4..16, 11n-9 for n=9..20"))
}

fn c3_upper_bound() -> Check {
    let table = [(2, 12), (3, 22), (4, 33), (5, 45), (8, 80), (9, 91), (17, 187), (18, 198)];
    for (n, want) in table {
        if upper_bound(n) != want {
            return Err(format!("upper_bound({n}) = {}, want {want}", upper_bound(n)));
        }
    }
    for n in 9..=200 {
        let closed = 12 * n - 18 + usize::from((9..=17).contains(&n));
        if upper_bound(n) != closed {
            return Err(format!("upper_bound({n}) = {}, closed form {closed}", upper_bound(n)));
        }
    }
    Ok("table and closed form for n=9..200".into())
}

/// Two random triangles: half on an integer grid, half jittered stars.
fn random_pair(rng: &mut ChaCha8Rng) -> Option<Scene> {
    let star = [[(0, -4), (4, 2), (-4, 2)], [(0, 4), (-4, -2), (4, -2)]];
    let tris: Option<Vec<Triangle>> = if rng.gen_bool(0.5) {
        let g = [3, 6, 12][rng.gen_range(0..3)];
        (0..2)
            .map(|_| {
                let mut p = || Point::from_ints(rng.gen_range(0..=g), rng.gen_range(0..=g));
                Triangle::new(p(), p(), p()).ok()
            })
            .collect()
    } else {
        let d = [8, 16, 64][rng.gen_range(0..3)];
        star.iter()
            .map(|t| {
                let mut p = |(x, y): (i64, i64)| {
                    Point::new(r(x * d + rng.gen_range(-3 * d..=3 * d), d), r(y * d + rng.gen_range(-3 * d..=3 * d), d))
                };
                Triangle::new(p(t[0]), p(t[1]), p(t[2])).ok()
            })
            .collect()
    };
    Scene::new(tris?).ok()
}

fn c4_two_triangles() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    let mut simple = 0;
    let t = Instant::now();
    while simple < 10_000 {
        let Some(s) = random_pair(&mut rng) else { continue };
        if let Some(m) = union_boundary(&s).sides() {
            simple += 1;
            *hist.entry(m).or_default() += 1;
        }
    }
    let shown: Vec<String> = hist.iter().map(|(m, c)| format!("{m}:{c}")).collect();
    let bad: Vec<usize> = hist.keys().copied().filter(|&m| !((3..=10).contains(&m) || m == 12)).collect();
    let dt = t.elapsed();
    if !bad.is_empty() {
        return Err(format!("forbidden side counts {bad:?}; histogram {}", shown.join(" ")));
    }
    if dt > Duration::from_secs(120) {
        return Err(format!("took {dt:.1?}"));
    }
    Ok(format!("histogram {} in {dt:.1?}", shown.join(" ")))
}

fn digits(s: &str) -> Vec<usize> {
    s.bytes().map(|b| (b - b'0') as usize).collect()
}

fn c5_ds_machinery() -> Check {
    if !is_ds2(&digits("123214546417871")) || !is_ds2(&digits("18781654613231")) || is_ds2(&digits("1212")) {
        return Err("is_ds2 examples".into());
    }
    let mut corpus: Vec<(String, Scene)> = INSCRIBED.iter().map(|(f, ..)| (f.to_string(), asset(f).scene)).collect();
    corpus.push(("hexagram".into(), hexagram()));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..60 {
        let n = rng.gen_range(2..=5);
        let c = AngleConfig::new(n, (0..3 * n).map(|_| rng.gen_range(0.5..1.5)).collect()).unwrap();
        corpus.push((format!("random inscribed #{k}"), angles_to_scene(&c).unwrap()));
    }
    let mut checked = 0;
    for (name, s) in &corpus {
        let Some(p) = union_boundary(s).into_polygon() else { continue };
        let rep = check_inequality(s, &p).map_err(|e| format!("{name}: {e}"))?;
        if !rep.holds {
            return Err(format!("{name}: {} > {}", rep.lhs, rep.rhs));
        }
        if !rep.words_ok(s.len()) {
            return Err(format!("{name}: extracted word is not a short DS word"));
        }
        checked += 1;
    }
    Ok(format!("examples ok; {checked} certified scenes pass extraction and the weighted count"))
}

const FIVE_44: &str = "3 11 3 22 33 215 44 55 4 11 4 22 4 33 44 21 55 11 22 154 33 44 3 55";

fn c6_rule_s() -> Check {
    let c = LabeledCycle::parse(5, FIVE_44).map_err(|e| e.to_string())?;
    if c.len() != 44 {
        return Err(format!("word has {} entries", c.len()));
    }
    let v = rule_s_violations(&c).len();
    let a = self_assemble(&[4, 3, 2], 5);
    if v != 2 || a.outcome != AssemblyOutcome::ClosedCycle(90) || a.first_extension != "44 55 432 11 22" {
        return Err(format!("violations {v}, assembly {:?}, first extension {:?}", a.outcome, a.first_extension));
    }
    Ok("2 violations; 432 closes at 90 via 44 55 432 11 22".into())
}

fn refute_line(n: usize, target: usize, limit: Duration) -> Result<String, String> {
    let t = Instant::now();
    let r = refute_target(n, target, &RefuteOptions::for_target(n, target));
    let dt = t.elapsed();
    let report = match r {
        Ok(r) => r,
        Err(RefuteError::BudgetExceeded(r)) => return Err(format!("({n},{target}) budget exceeded after {} nodes", r.nodes)),
        Err(e) => return Err(format!("({n},{target}) {e}")),
    };
    if report.audit_log().lines().count() < 2 {
        return Err(format!("({n},{target}) audit log has no branch lines"));
    }
    match &report.outcome {
        RefuteOutcome::Refuted if dt <= limit => Ok(format!("({n},{target}) refuted, {} nodes, {dt:.1?}", report.nodes)),
        RefuteOutcome::Refuted => Err(format!("({n},{target}) refuted but took {dt:.1?}")),
        RefuteOutcome::Witness(w) => Err(format!("({n},{target}) witness {w}")),
    }
}

fn c7_refutation() -> Check {
    let a = refute_line(5, 45, Duration::from_secs(600));
    let b = refute_line(8, 80, Duration::from_secs(6 * 3600));
    match (a, b) {
        (Ok(a), Ok(b)) => Ok(format!("{a}; {b}")),
        (a, b) => {
            let mut msg = format!("{}; {}", a.unwrap_or_else(|e| e), b.unwrap_or_else(|e| e));
            // geometric cross-check of any witness
            for (f, n, m) in [("inscribed-5-45.scene", 5, 45), ("inscribed-8-80.scene", 8, 80)] {
                if let Ok(got) = certified(&asset(f).scene) {
                    msg.push_str(&format!("; shipped {f} certifies M={got} with n={n} (target {m})"));
                }
            }
            Err(msg)
        }
    }
}

fn c8_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let t = Instant::now();
    let mut simple = 0;
    for k in 0..1000 {
        let n = rng.gen_range(1..=5);
        let s = if k % 4 == 3 {
            let c = AngleConfig::new(n, (0..3 * n).map(|_| rng.gen_range(0.3..2.0)).collect()).unwrap();
            angles_to_scene(&c).unwrap()
        } else {
            let g = [4, 8, 40][k % 3];
            let mut tris = Vec::new();
            while tris.len() < n {
                let mut p = || Point::from_ints(rng.gen_range(0..=g), rng.gen_range(0..=g));
                if let Ok(t) = Triangle::new(p(), p(), p()) {
                    tris.push(t);
                }
            }
            Scene::new(tris).unwrap()
        };
        let a = union_boundary(&s);
        let b = oracle_union(&s);
        if a != b {
            return Err(format!("scene {k} differs: {s:?}"));
        }
        simple += a.polygon().is_some() as usize;
    }
    let dt = t.elapsed();
    if dt > Duration::from_secs(300) {
        return Err(format!("took {dt:.1?}"));
    }
    Ok(format!("1000 scenes agree ({simple} simple) in {dt:.1?}"))
}

fn fail<T: std::fmt::Debug>(name: &str, e: proptest::test_runner::TestError<T>) -> String {
    format!("{name}: {e}")
}

const THETA_REFERENCE: f64 = 0.9709631;

fn c9_canonical() -> Check {
    let mut failures = Vec::new();

    let start = SearchOutcome::certify(asset_gaps(&asset("inscribed-3-22.scene"), 3)).ok_or("22-gon asset")?;
    let r = optimize_canonical(&start, &CanonOptions::default());
    let monotone = r.trace.windows(2).all(|w| w[1] >= w[0]);
    let kept = r.outcome.sides == 22 && union_boundary(&r.outcome.scene).sides() == Some(22);
    if !monotone || !kept {
        failures.push(format!("trace monotone {monotone}, M kept {kept}"));
    }
    let ratios = near_isosceles_ratios(&r.outcome);
    let ratio = ratios.iter().copied().fold(1.0, f64::max);
    if (ratio - 1.009).abs() > 0.002 {
        failures.push(format!("n=3 distinguished ratio {ratio:.4} not within 1.009 +- 0.002"));
    }

    let regular = SearchOutcome::certify(AngleConfig::regular(2)).ok_or("regular star")?;
    let best = canonical_score(&regular.certificate);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut valid = 0;
    let mut beaten = 0;
    while valid < 10_000 {
        let sigma = rng.gen_range(0.001..0.3);
        let gaps = (0..6).map(|_| (rng.gen_range(-sigma..sigma) as f64).exp()).collect();
        let Some(o) = SearchOutcome::certify(AngleConfig::new(2, gaps).unwrap()) else { continue };
        valid += 1;
        if canonical_score(&o.certificate) >= best {
            beaten += 1;
        }
    }
    if beaten > 0 {
        failures.push(format!("{beaten} of 10000 hexagram perturbations score at least the regular star"));
    }

    let summary = format!(
        "n=3 score {:.7}, ratios {:?}; n=2 regular star {best:.7} beats 10000 perturbations: {}; reference theta {THETA_REFERENCE}",
        r.score,
        ratios.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>(),
        beaten == 0
    );
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{}; {summary}", failures.join("; ")))
    }
}

fn c10_properties() -> Check {
    let mut runner = TestRunner::new_with_rng(
        Config { cases: 64, failure_persistence: None, ..Config::default() },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    );
    runner
        .run(&(scene_strategy(4), similarity_strategy()), |(s, g)| check_similarity(&s, &g))
        .map_err(|e| fail("similarity on grid scenes", e))?;
    runner
        .run(&(config_strategy(4), similarity_strategy()), |(c, g)| check_similarity(&angles_to_scene(&c).unwrap(), &g))
        .map_err(|e| fail("similarity on inscribed scenes", e))?;
    runner.run(&scene_strategy(6), |s| check_round_trip(&s)).map_err(|e| fail("scene round trip", e))?;
    let mut slow = TestRunner::new(Config { cases: 6, failure_persistence: None, ..Config::default() });
    slow.run(&(1usize..=3, proptest::prelude::any::<u64>()), |(n, seed)| check_search_determinism(n, seed))
        .map_err(|e| fail("seeded search", e))?;
    if !generators_deterministic() {
        return Err("a generator is not deterministic".into());
    }
    Ok("similarity invariance, scene round trip, deterministic generators and search".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("theorem sequence", c1_theorem_sequence),
        ("families", c2_families),
        ("upper bound", c3_upper_bound),
        ("two-triangle law", c4_two_triangles),
        ("DS machinery", c5_ds_machinery),
        ("Rule S corpus", c6_rule_s),
        ("refutation", c7_refutation),
        ("oracle equivalence", c8_oracle),
        ("canonical metric", c9_canonical),
        ("property suite", c10_properties),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let dt = t.elapsed();
        match result {
            Ok(msg) => println!("criterion {:>2} {name}: PASS [{dt:.1?}] {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL [{dt:.1?}] {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {failed} failing, total {:.1?}", total.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
