#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qlip_core::{Anchor, AnchoredMap, Point, QConfig};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_point(rng: &mut ChaCha8Rng, dim: usize, lo: f64, hi: f64) -> Point {
    Point::new((0..dim).map(|_| rng.gen_range(lo..=hi)).collect()).unwrap()
}

pub fn rand_config(rng: &mut ChaCha8Rng, q: usize, n: usize, lo: f64, hi: f64) -> QConfig {
    let rows: Vec<Vec<f64>> = (0..q)
        .map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect();
    QConfig::from_rows(&rows).unwrap()
}

/// A valid random map with anchors in `[-1,1]^m` and atoms in `[-1,1]^n`.
pub fn rand_map(rng: &mut ChaCha8Rng, m: usize, n: usize, q: usize, k: usize) -> AnchoredMap {
    loop {
        let anchors: Vec<Anchor> = (0..k)
            .map(|_| {
                Anchor::new(
                    rand_point(rng, m, -1.0, 1.0),
                    rand_config(rng, q, n, -1.0, 1.0),
                )
            })
            .collect();
        if let Ok(map) = AnchoredMap::new(m, q, n, anchors) {
            return map;
        }
    }
}

/// A valid random map plus an extension point at distance >= 0.05 from
/// every anchor.
pub fn rand_instance(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    q: usize,
    k: usize,
) -> (AnchoredMap, Point) {
    let map = rand_map(rng, m, n, q, k);
    loop {
        let p = rand_point(rng, m, -1.0, 1.0);
        let clear = map
            .anchors()
            .iter()
            .map(|a| p.distance(&a.point))
            .fold(f64::INFINITY, f64::min);
        if clear >= 0.05 {
            return (map, p);
        }
    }
}
