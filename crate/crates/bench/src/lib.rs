//! Seeded instance generators shared by the benchmarks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qlip_core::{Anchor, AnchoredMap, Point, QConfig};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_config(rng: &mut ChaCha8Rng, q: usize, n: usize) -> QConfig {
    let rows: Vec<Vec<f64>> = (0..q)
        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect())
        .collect();
    QConfig::from_rows(&rows).expect("finite coordinates")
}

pub fn random_instance(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    q: usize,
    k: usize,
) -> (AnchoredMap, Point) {
    let map = loop {
        let anchors: Vec<Anchor> = (0..k)
            .map(|_| {
                let x = Point::new((0..m).map(|_| rng.gen_range(-1.0..=1.0)).collect())
                    .expect("finite");
                Anchor::new(x, random_config(rng, q, n))
            })
            .collect();
        if let Ok(map) = AnchoredMap::new(m, q, n, anchors) {
            break map;
        }
    };
    let point = loop {
        let p = Point::new((0..m).map(|_| rng.gen_range(-1.0..=1.0)).collect())
            .expect("finite");
        let clear = map
            .anchors()
            .iter()
            .map(|a| p.distance(&a.point))
            .fold(f64::INFINITY, f64::min);
        if clear >= 0.05 {
            break p;
        }
    };
    (map, point)
}
