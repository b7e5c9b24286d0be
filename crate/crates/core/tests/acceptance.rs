//! Acceptance suite. One test per criterion; each prints a
//! `criterion N: PASS ...` line with its measured values (visible with
//! `cargo test --test acceptance -- --nocapture`) and enforces its stated
//! tolerance and runtime budget.

mod common;

use std::time::{Duration, Instant};

use common::{rand_config, rand_instance, rng};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use qlip_core::{
    certified_lower_bound, g_distance, g_distance_bruteforce, hexagon_instance,
    lower_bound_search, nearest_point_extension, solve_one_point, LowerBoundOptions, Point,
    QConfig, SearchParams, SolveOptions, SolveStatus,
};

fn pass(criterion: u32, elapsed: Duration, detail: &str) {
    println!("criterion {criterion}: PASS [{elapsed:.2?}] {detail}");
}

#[test]
fn criterion_01_domain_distances_equal_sqrt3() {
    let start = Instant::now();
    let map = hexagon_instance();
    let root3 = 3.0_f64.sqrt();
    let mut worst = 0.0_f64;
    for i in 0..3 {
        for j in i + 1..3 {
            let d = map.anchors()[i].point.distance(&map.anchors()[j].point);
            worst = worst.max((d - root3).abs());
        }
    }
    let elapsed = start.elapsed();
    assert!(worst <= 1e-12, "deviation {worst}");
    assert!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    pass(1, elapsed, &format!("max |d - sqrt3| = {worst:.3e}"));
}

#[test]
fn criterion_02_value_distances_equal_sqrt2() {
    let start = Instant::now();
    let map = hexagon_instance();
    let root2 = 2.0_f64.sqrt();
    let mut worst = 0.0_f64;
    for i in 0..3 {
        for j in i + 1..3 {
            let d = g_distance(&map.anchors()[i].value, &map.anchors()[j].value).unwrap();
            worst = worst.max((d - root2).abs());
        }
    }
    let elapsed = start.elapsed();
    assert!(worst <= 1e-12, "deviation {worst}");
    assert!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    pass(2, elapsed, &format!("max |G - sqrt2| = {worst:.3e}"));
}

#[test]
fn criterion_03_lip_constant_equals_sqrt_two_thirds() {
    let start = Instant::now();
    let map = hexagon_instance();
    let lip = map.lip_constant();
    let elapsed = start.elapsed();
    let dev = (lip - (2.0_f64 / 3.0).sqrt()).abs();
    assert!(dev <= 1e-12, "deviation {dev}");
    assert!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    pass(3, elapsed, &format!("lip = {lip:.12}, deviation {dev:.3e}"));
}

#[test]
fn criterion_04_counterexample_certification() {
    let start = Instant::now();
    let map = hexagon_instance();
    let origin = Point::new(vec![0.0, 0.0]).unwrap();

    let solved = solve_one_point(&map, &origin, &SolveOptions::default()).unwrap();
    assert_eq!(
        solved.status,
        SolveStatus::OptimalWithinTolerance,
        "full profile enumeration must run"
    );
    assert!(
        solved.stretch >= 1.0 - 1e-6,
        "optimized stretch {}",
        solved.stretch
    );

    let lb = certified_lower_bound(
        &map,
        &origin,
        0.02,
        &LowerBoundOptions {
            incumbent: Some(solved.stretch),
            ..LowerBoundOptions::default()
        },
    )
    .unwrap();
    assert!(lb >= 1.0 - 1e-3, "certified lower bound {lb}");

    let ratio = solved.stretch / map.lip_constant();
    assert!(
        ratio >= (1.5_f64).sqrt() - 1e-3,
        "extension-constant ratio {ratio}"
    );

    let elapsed = start.elapsed();
    assert!(elapsed <= Duration::from_secs(300), "took {elapsed:?}");
    pass(
        4,
        elapsed,
        &format!("lb = {lb:.6}, stretch = {:.9}, ratio = {ratio:.6}", solved.stretch),
    );
}

#[test]
fn criterion_05_assignment_matches_bruteforce_oracle() {
    let start = Instant::now();
    let mut rng = rng(501);
    let mut worst = 0.0_f64;
    let mut pairs = 0u32;
    for q in 2..=6 {
        for n in 1..=3 {
            for _ in 0..500 {
                let a = rand_config(&mut rng, q, n, -5.0, 5.0);
                let b = rand_config(&mut rng, q, n, -5.0, 5.0);
                let fast = g_distance(&a, &b).unwrap();
                let brute = g_distance_bruteforce(&a, &b).unwrap();
                worst = worst.max((fast - brute).abs());
                pairs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(worst <= 1e-9, "max deviation {worst}");
    assert!(elapsed <= Duration::from_secs(30), "took {elapsed:?}");
    pass(5, elapsed, &format!("{pairs} pairs, max deviation {worst:.3e}"));
}

#[test]
fn criterion_06_metric_axiom_suite() {
    let start = Instant::now();
    let mut rng = rng(601);
    let sample = |rng: &mut ChaCha8Rng| {
        let q = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=3);
        (q, n)
    };

    // symmetry, 1000 pairs at 1e-12
    for _ in 0..1000 {
        let (q, n) = sample(&mut rng);
        let a = rand_config(&mut rng, q, n, -5.0, 5.0);
        let b = rand_config(&mut rng, q, n, -5.0, 5.0);
        assert!(
            (g_distance(&a, &b).unwrap() - g_distance(&b, &a).unwrap()).abs() <= 1e-12
        );
    }
    // permutation invariance of atom order
    for _ in 0..1000 {
        let (q, n) = sample(&mut rng);
        let a = rand_config(&mut rng, q, n, -5.0, 5.0);
        let b = rand_config(&mut rng, q, n, -5.0, 5.0);
        let mut rows: Vec<Vec<f64>> = a.atoms().iter().map(|p| p.coords().to_vec()).collect();
        rows.reverse();
        let a2 = QConfig::from_rows(&rows).unwrap();
        assert_eq!(a, a2);
        assert!((g_distance(&a, &b).unwrap() - g_distance(&a2, &b).unwrap()).abs() <= 1e-12);
    }
    // identity of indiscernibles
    for _ in 0..1000 {
        let (q, n) = sample(&mut rng);
        let a = rand_config(&mut rng, q, n, -5.0, 5.0);
        assert_eq!(g_distance(&a, &a).unwrap(), 0.0);
        let b = rand_config(&mut rng, q, n, -5.0, 5.0);
        if g_distance(&a, &b).unwrap() <= 1e-12 {
            assert!(a.approx_eq(&b, 1e-12));
        }
    }
    // triangle inequality with slack -1e-9
    for _ in 0..1000 {
        let (q, n) = sample(&mut rng);
        let a = rand_config(&mut rng, q, n, -5.0, 5.0);
        let b = rand_config(&mut rng, q, n, -5.0, 5.0);
        let c = rand_config(&mut rng, q, n, -5.0, 5.0);
        let slack = g_distance(&a, &b).unwrap() + g_distance(&b, &c).unwrap()
            - g_distance(&a, &c).unwrap();
        assert!(slack >= -1e-9, "triangle slack {slack}");
    }
    // translation and scaling invariance
    for _ in 0..1000 {
        let (q, n) = sample(&mut rng);
        let a = rand_config(&mut rng, q, n, -5.0, 5.0);
        let b = rand_config(&mut rng, q, n, -5.0, 5.0);
        let shift: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..=10.0)).collect();
        let lambda: f64 = rng.gen_range(0.0..=4.0);
        let d0 = g_distance(&a, &b).unwrap();
        let translate = |c: &QConfig| {
            c.map_atoms(|x| x.iter().zip(&shift).map(|(v, s)| v + s).collect())
                .unwrap()
        };
        let scale = |c: &QConfig| {
            c.map_atoms(|x| x.iter().map(|v| lambda * v).collect()).unwrap()
        };
        assert!((g_distance(&translate(&a), &translate(&b)).unwrap() - d0).abs() <= 1e-9);
        assert!((g_distance(&scale(&a), &scale(&b)).unwrap() - lambda * d0).abs() <= 1e-9);
    }

    let elapsed = start.elapsed();
    assert!(elapsed <= Duration::from_secs(30), "took {elapsed:?}");
    pass(6, elapsed, "symmetry, permutation, identity, triangle, translation, scaling");
}

fn random_extension_instances(count: usize) -> Vec<(qlip_core::AnchoredMap, Point)> {
    let mut rng = rng(708);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=3);
            let q = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=5);
            rand_instance(&mut rng, m, n, q, k)
        })
        .collect()
}

#[test]
fn criterion_07_nearest_point_respects_factor_two() {
    let start = Instant::now();
    let mut worst = f64::NEG_INFINITY;
    for (map, p) in random_extension_instances(200) {
        let lip = map.lip_constant();
        let near = nearest_point_extension(&map, &p).unwrap();
        let slack = near.stretch - 2.0 * lip;
        worst = worst.max(slack);
        assert!(
            slack <= 1e-9,
            "nearest stretch {} exceeds 2 lip {}",
            near.stretch,
            2.0 * lip
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed <= Duration::from_secs(120), "took {elapsed:?}");
    pass(7, elapsed, &format!("200 instances, worst stretch - 2 lip = {worst:.3e}"));
}

#[test]
fn criterion_08_optimizer_dominates_the_heuristic() {
    let start = Instant::now();
    let mut worst = f64::NEG_INFINITY;
    for (map, p) in random_extension_instances(200) {
        let near = nearest_point_extension(&map, &p).unwrap();
        let solved = solve_one_point(&map, &p, &SolveOptions::default()).unwrap();
        let slack = solved.stretch - near.stretch;
        worst = worst.max(slack);
        assert!(
            slack <= 1e-9,
            "optimizer {} lost to nearest {}",
            solved.stretch,
            near.stretch
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed <= Duration::from_secs(120), "took {elapsed:?}");
    pass(8, elapsed, &format!("200 instances, worst optimizer - nearest = {worst:.3e}"));
}

#[test]
fn criterion_09_classical_consistency_at_q1() {
    let start = Instant::now();
    let mut rng = rng(901);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=3);
        let (map, p) = rand_instance(&mut rng, m, n, 1, 2);
        let d1 = p.distance(&map.anchors()[0].point);
        let d2 = p.distance(&map.anchors()[1].point);
        let c1 = map.anchors()[0].value.atoms()[0].coords();
        let c2 = map.anchors()[1].value.atoms()[0].coords();
        let gap: f64 = c1
            .iter()
            .zip(c2)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        // classical weighted one-center value for two points
        let oracle = gap / (d1 + d2);
        let solved = solve_one_point(&map, &p, &SolveOptions::default()).unwrap();
        let dev = (solved.stretch - oracle).abs();
        worst = worst.max(dev);
        assert!(dev <= 1e-8, "solver {} oracle {oracle}", solved.stretch);
    }

    // Classically, real-valued Lipschitz maps on the line extend without
    // inflating the constant, so the searched ratio never exceeds 1.
    let report = lower_bound_search(&SearchParams {
        domain_dim: 1,
        ambient_dim: 1,
        q: 1,
        anchors: 2,
        budget: 400,
        seed: 902,
        initial: None,
    })
    .unwrap();
    assert!(
        report.best_ratio <= 1.0 + 1e-6,
        "line-case ratio {}",
        report.best_ratio
    );

    let elapsed = start.elapsed();
    assert!(elapsed <= Duration::from_secs(120), "took {elapsed:?}");
    pass(
        9,
        elapsed,
        &format!(
            "100 instances, max |solver - oracle| = {worst:.3e}; line-case best ratio {:.9}",
            report.best_ratio
        ),
    );
}

#[test]
fn criterion_10_search_regression_from_the_hexagon() {
    let start = Instant::now();
    let params = SearchParams {
        domain_dim: 2,
        ambient_dim: 2,
        q: 2,
        anchors: 3,
        budget: 60,
        seed: 1001,
        initial: Some((hexagon_instance(), Point::new(vec![0.0, 0.0]).unwrap())),
    };
    let report = lower_bound_search(&params).unwrap();
    assert!(
        report.best_ratio >= (1.5_f64).sqrt() - 1e-6,
        "best ratio {}",
        report.best_ratio
    );
    for w in report.history.windows(2) {
        assert!(w[1].ratio > w[0].ratio, "history not monotone");
    }

    let again = lower_bound_search(&params).unwrap();
    assert_eq!(report.best_ratio.to_bits(), again.best_ratio.to_bits());
    assert_eq!(report.best_stretch.to_bits(), again.best_stretch.to_bits());
    assert_eq!(report.best_lip.to_bits(), again.best_lip.to_bits());
    assert_eq!(report.history, again.history);
    assert_eq!(report.best_map, again.best_map);
    assert_eq!(report.best_point, again.best_point);
    assert_eq!(report.degenerate, again.degenerate);

    let elapsed = start.elapsed();
    assert!(elapsed <= Duration::from_secs(120), "took {elapsed:?}");
    pass(
        10,
        elapsed,
        &format!(
            "best ratio {:.9} over {} improvements, reports identical",
            report.best_ratio,
            report.history.len()
        ),
    );
}
