//! One-point extensions of anchored maps.
//!
//! Extending a map by a value `T` at a new point `p` costs
//! `stretch = max_i G(T, value_i) / |p - x_i|`. For a fixed choice of atom
//! pairings against every anchor (a *matching profile*), the stretch is the
//! objective of a weighted one-center problem over the stacked atom vector
//! of `T`, which is convex; minimizing over all profiles gives the global
//! optimum. Relabeling `T`'s atoms lets the first anchor's pairing be fixed
//! to the identity, leaving `(Q!)^(k-1)` profiles.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lipmap::AnchoredMap;
use crate::onecenter;
use crate::qspace::{g_distance, optimal_matching, Matching, Point, QConfig};
use crate::tol::{COINCIDENCE_EPS, EQ_TOL, METRIC_SLACK};

/// How a returned extension value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Every matching profile was either solved to tolerance or provably
    /// pruned; the value is globally optimal within the solver tolerance.
    OptimalWithinTolerance,
    /// Produced by a heuristic (nearest anchor, or profile local search);
    /// the certified lower bound may be far from the stretch.
    Heuristic,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolveStatus::OptimalWithinTolerance => write!(f, "optimal-within-tolerance"),
            SolveStatus::Heuristic => write!(f, "heuristic"),
        }
    }
}

/// A candidate extension value together with its certificate data.
#[derive(Debug, Clone)]
pub struct ExtensionResult {
    /// The chosen value at the extension point, canonicalized.
    pub value: QConfig,
    /// `max_i G(value, value_i) / |p - x_i|`, recomputed from the value.
    pub stretch: f64,
    /// One optimal matching of `value`'s atoms against each anchor's atoms.
    pub profile: Vec<Matching>,
    /// Anchor indices attaining the stretch within 1e-9.
    pub active_anchors: Vec<usize>,
    pub status: SolveStatus,
    /// Certified lower bound on the stretch of *every* possible value.
    pub lower_bound: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Subproblem tolerance on the stretch value.
    pub tol: f64,
    /// Full enumeration is used when `(Q!)^(k-1)` is at most this.
    pub profile_cap: u128,
    /// Fall back to profile local search above the cap instead of erroring.
    pub heuristic: bool,
    /// Random profile restarts in heuristic mode.
    pub restarts: u32,
    /// Seed for heuristic restarts.
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            profile_cap: 10_080,
            heuristic: false,
            restarts: 12,
            seed: 0,
        }
    }
}

/// Options for [`certified_lower_bound`].
#[derive(Debug, Clone, Copy)]
pub struct LowerBoundOptions {
    /// Cap on grid configurations evaluated.
    pub max_evals: u64,
    /// Upper bound on the minimal stretch used to size the search region;
    /// computed by the solver when absent.
    pub incumbent: Option<f64>,
}

impl Default for LowerBoundOptions {
    fn default() -> Self {
        Self {
            max_evals: 1_000_000_000,
            incumbent: None,
        }
    }
}

/// Largest per-atom grid size the certificate will hold in memory.
const GRID_POINT_CAP: usize = 4_000_000;

/// Minimizes the stretch over all candidate values.
///
/// Enumerates matching profiles (first anchor fixed to the identity) and
/// solves the convex weighted one-center subproblem of each, pruning
/// profiles whose pairwise lower bound cannot beat the incumbent. Above
/// `opts.profile_cap` profiles, errors unless `opts.heuristic` permits the
/// local-search fallback.
pub fn solve_one_point(
    map: &AnchoredMap,
    p: &Point,
    opts: &SolveOptions,
) -> Result<ExtensionResult> {
    if map.is_empty() {
        return Err(Error::EmptyMap);
    }
    let dists = map.anchor_distances(p)?;
    for (index, &d) in dists.iter().enumerate() {
        if d < COINCIDENCE_EPS {
            return Err(Error::CoincidesWithAnchor { index });
        }
    }

    let q = map.q();
    let k = map.len();
    let lb_pairs = pairwise_value_bound(map, &dists);
    let profiles = profile_count(q, k);
    let full = profiles <= opts.profile_cap;
    if !full && !opts.heuristic {
        return Err(Error::ProfileCapExceeded {
            profiles,
            cap: opts.profile_cap,
        });
    }

    let (best_center, acc_lb, status) = if full {
        let (center, lb) = enumerate_profiles(map, &dists, opts)?;
        (center, lb.max(lb_pairs), SolveStatus::OptimalWithinTolerance)
    } else {
        let center = heuristic_profiles(map, p, &dists, opts)?;
        (center, lb_pairs, SolveStatus::Heuristic)
    };

    let value = unstack(&best_center, q, map.ambient_dim())?;
    finish_result(map, &dists, value, status, acc_lb)
}

/// The value at the anchor nearest to `p` (ties broken by lexicographically
/// smallest anchor point). Its stretch never exceeds twice the map's
/// Lipschitz constant: for the nearest anchor `s` and any other anchor `y`,
/// `|x_s - x_y| <= |x_s - p| + |p - x_y| <= 2 |p - x_y|`.
pub fn nearest_point_extension(map: &AnchoredMap, p: &Point) -> Result<ExtensionResult> {
    if map.is_empty() {
        return Err(Error::EmptyMap);
    }
    let dists = map.anchor_distances(p)?;
    let dmin = dists.iter().cloned().fold(f64::INFINITY, f64::min);
    let selected = (0..map.len())
        .filter(|&i| dists[i] <= dmin + COINCIDENCE_EPS)
        .min_by(|&a, &b| {
            map.anchors()[a]
                .point
                .lex_cmp(&map.anchors()[b].point)
        })
        .expect("at least one anchor");
    let value = map.anchors()[selected].value.clone();
    let lb_pairs = pairwise_value_bound(map, &dists);
    finish_result(map, &dists, value, SolveStatus::Heuristic, lb_pairs)
}

/// A certified lower bound on the stretch of every possible value at `p`.
///
/// Any value whose stretch could beat the incumbent upper bound must keep
/// all atoms within radius `R = max_i (max atom norm of value_i + d_i *
/// incumbent)` of the origin: an atom farther away is farther than
/// `d_i * incumbent` from every atom of every anchor value. The stretch is
/// then evaluated on a step-`grid_step` lattice restricted to that ball,
/// and the covering modulus `sqrt(Q) * grid_step * sqrt(n) / 2 / min_i d_i`
/// is subtracted (the stretch is `1/min_i d_i`-Lipschitz in the value, and
/// every admissible value is within that configuration distance of a kept
/// lattice configuration).
pub fn certified_lower_bound(
    map: &AnchoredMap,
    p: &Point,
    grid_step: f64,
    opts: &LowerBoundOptions,
) -> Result<f64> {
    if !(grid_step.is_finite() && grid_step > 0.0) {
        return Err(Error::InvalidArgument(
            "grid_step must be positive and finite".into(),
        ));
    }
    if map.len() <= 1 {
        // A single value (or none) can always be copied with stretch 0.
        return Ok(0.0);
    }
    let dists = map.anchor_distances(p)?;
    for (index, &d) in dists.iter().enumerate() {
        if d < COINCIDENCE_EPS {
            return Err(Error::CoincidesWithAnchor { index });
        }
    }

    let incumbent = match opts.incumbent {
        Some(s) => s,
        None => default_incumbent(map, p)?,
    };
    let lb_pairs = pairwise_value_bound(map, &dists);
    if incumbent <= EQ_TOL {
        // The minimum stretch is (numerically) zero; no better bound exists.
        return Ok(0.0);
    }

    let q = map.q();
    let n = map.ambient_dim();
    let h = grid_step;

    let radius = map
        .anchors()
        .iter()
        .zip(&dists)
        .map(|(a, d)| a.value.max_atom_norm() + d * incumbent)
        .fold(0.0_f64, f64::max);
    let keep = radius + 0.5 * h * (n as f64).sqrt() + 1e-9;

    let lattice = build_lattice(n, h, keep);
    let points = lattice.len() / n;
    let evals = multiset_count(points, q);
    if evals > opts.max_evals as u128 || points > GRID_POINT_CAP {
        return Err(Error::GridTooLarge {
            evals,
            cap: opts.max_evals as u128,
        });
    }

    let grid_min_sq = grid_min_stretch_sq(map, &dists, &lattice, points)?;
    let min_d = dists.iter().cloned().fold(f64::INFINITY, f64::min);
    let modulus = (q as f64).sqrt() * h * (n as f64).sqrt() / 2.0 / min_d;
    // Values with an atom outside the search ball are only known to stretch
    // beyond the incumbent, so the grid certificate cannot claim more than
    // that; the pairwise bound holds unconditionally.
    let bound = (grid_min_sq.max(0.0).sqrt() - modulus).min(incumbent);
    Ok(bound.max(lb_pairs).max(0.0))
}

fn default_incumbent(map: &AnchoredMap, p: &Point) -> Result<f64> {
    let opts = SolveOptions::default();
    if profile_count(map.q(), map.len()) <= opts.profile_cap {
        Ok(solve_one_point(map, p, &opts)?.stretch)
    } else {
        Ok(nearest_point_extension(map, p)?.stretch)
    }
}

/// `max_{i<j} G(value_i, value_j) / (d_i + d_j)`: any candidate value is at
/// least this stretched against one of the two anchors.
fn pairwise_value_bound(map: &AnchoredMap, dists: &[f64]) -> f64 {
    let mut bound = 0.0_f64;
    for i in 0..map.len() {
        for j in i + 1..map.len() {
            let denom = dists[i] + dists[j];
            if denom < COINCIDENCE_EPS {
                continue;
            }
            let dv = g_distance(&map.anchors()[i].value, &map.anchors()[j].value)
                .expect("anchors validated compatible");
            bound = bound.max(dv / denom);
        }
    }
    bound
}

fn profile_count(q: usize, k: usize) -> u128 {
    let mut fact: u128 = 1;
    for t in 2..=q as u128 {
        fact = fact.saturating_mul(t);
    }
    let mut total: u128 = 1;
    for _ in 1..k {
        total = total.saturating_mul(fact);
    }
    total
}

fn stack(value: &QConfig, perm: &[usize]) -> Vec<f64> {
    let n = value.ambient_dim();
    let mut out = Vec::with_capacity(value.q() * n);
    for &a in perm {
        out.extend_from_slice(value.atoms()[a].coords());
    }
    out
}

fn unstack(center: &[f64], q: usize, n: usize) -> Result<QConfig> {
    let mut atoms = Vec::with_capacity(q);
    for j in 0..q {
        atoms.push(Point::new(center[j * n..(j + 1) * n].to_vec())?);
    }
    QConfig::from_atoms(atoms)
}

fn identity_perm(q: usize) -> Vec<usize> {
    (0..q).collect()
}

fn permutations_lex(q: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let mut current = Vec::with_capacity(q);
    let mut used = vec![false; q];
    fn recurse(
        q: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        all: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == q {
            all.push(current.clone());
            return;
        }
        for j in 0..q {
            if !used[j] {
                used[j] = true;
                current.push(j);
                recurse(q, current, used, all);
                current.pop();
                used[j] = false;
            }
        }
    }
    recurse(q, &mut current, &mut used, &mut all);
    all
}

/// Full enumeration over `(Q!)^(k-1)` profiles with incumbent pruning.
/// Returns the best subproblem center and the accumulated certified lower
/// bound (the minimum over profiles of each profile's certificate).
fn enumerate_profiles(
    map: &AnchoredMap,
    dists: &[f64],
    opts: &SolveOptions,
) -> Result<(Vec<f64>, f64)> {
    let q = map.q();
    let k = map.len();
    let perms = permutations_lex(q);
    let base = stack(&map.anchors()[0].value, &identity_perm(q));

    let mut odometer = vec![0usize; k.saturating_sub(1)];
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut acc_lb = f64::INFINITY;
    loop {
        let mut centers = Vec::with_capacity(k);
        centers.push(base.clone());
        for (slot, &perm_idx) in odometer.iter().enumerate() {
            centers.push(stack(&map.anchors()[slot + 1].value, &perms[perm_idx]));
        }
        let cutoff = best.as_ref().map(|(v, _)| *v);
        match onecenter::solve(&centers, dists, opts.tol, cutoff) {
            onecenter::Outcome::Solved(sol) => {
                acc_lb = acc_lb.min(sol.lower);
                if best.as_ref().is_none_or(|(v, _)| sol.value < *v) {
                    best = Some((sol.value, sol.center));
                }
            }
            onecenter::Outcome::Pruned { lower } => {
                acc_lb = acc_lb.min(lower);
            }
        }

        // advance the odometer
        let mut pos = odometer.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            odometer[pos] += 1;
            if odometer[pos] < perms.len() {
                break;
            }
            odometer[pos] = 0;
            if pos == 0 {
                break;
            }
        }
        if odometer.iter().all(|&d| d == 0) {
            break;
        }
    }
    let (_, center) = best.expect("at least one profile solved");
    Ok((center, acc_lb))
}

/// Local search over profiles: warm starts plus seeded random restarts,
/// hill-climbing by single transpositions of one anchor's matching.
fn heuristic_profiles(
    map: &AnchoredMap,
    p: &Point,
    dists: &[f64],
    opts: &SolveOptions,
) -> Result<Vec<f64>> {
    let q = map.q();
    let k = map.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut starts: Vec<Vec<Vec<usize>>> = Vec::new();
    starts.push(vec![identity_perm(q); k - 1]);

    // Match every anchor against the first one.
    let mut via_first = Vec::with_capacity(k - 1);
    for i in 1..k {
        via_first.push(
            optimal_matching(&map.anchors()[0].value, &map.anchors()[i].value)?
                .permutation()
                .to_vec(),
        );
    }
    starts.push(via_first);

    // Match through the nearest anchor.
    let nearest = nearest_point_extension(map, p)?;
    let near_value = &nearest.value;
    let to_first = optimal_matching(near_value, &map.anchors()[0].value)?;
    let mut inv_first = vec![0usize; q];
    for (a, &b) in to_first.permutation().iter().enumerate() {
        inv_first[b] = a;
    }
    let mut via_nearest = Vec::with_capacity(k - 1);
    for i in 1..k {
        let m = optimal_matching(near_value, &map.anchors()[i].value)?;
        let perm: Vec<usize> = (0..q).map(|j| m.permutation()[inv_first[j]]).collect();
        via_nearest.push(perm);
    }
    starts.push(via_nearest);

    for _ in 0..opts.restarts {
        let mut profile = Vec::with_capacity(k - 1);
        for _ in 1..k {
            let mut perm = identity_perm(q);
            perm.shuffle(&mut rng);
            profile.push(perm);
        }
        starts.push(profile);
    }

    let evaluate = |profile: &[Vec<usize>], cutoff: Option<f64>| {
        let mut centers = Vec::with_capacity(k);
        centers.push(stack(&map.anchors()[0].value, &identity_perm(q)));
        for (slot, perm) in profile.iter().enumerate() {
            centers.push(stack(&map.anchors()[slot + 1].value, perm));
        }
        onecenter::solve(&centers, dists, opts.tol, cutoff)
    };

    // Seed the incumbent with the nearest-anchor value so the heuristic
    // never loses to it.
    let near_center = stack(near_value, &identity_perm(q));
    let near_stretch = map.stretch_at(p, near_value)?;
    let mut best: (f64, Vec<f64>) = (near_stretch, near_center);

    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    for start in starts {
        if !seen.insert(start.clone()) {
            continue;
        }
        let mut profile = start;
        let mut current = match evaluate(&profile, None) {
            onecenter::Outcome::Solved(sol) => sol,
            onecenter::Outcome::Pruned { .. } => unreachable!("no cutoff"),
        };
        if current.value < best.0 {
            best = (current.value, current.center.clone());
        }
        for _ in 0..100 {
            let mut improved = false;
            'neighbors: for slot in 0..k - 1 {
                for s in 0..q {
                    for t in s + 1..q {
                        profile[slot].swap(s, t);
                        let outcome = evaluate(&profile, Some(current.value));
                        if let onecenter::Outcome::Solved(sol) = outcome {
                            if sol.value < current.value - 1e-12 {
                                current = sol;
                                improved = true;
                                if current.value < best.0 {
                                    best = (current.value, current.center.clone());
                                }
                                break 'neighbors;
                            }
                        }
                        profile[slot].swap(s, t);
                    }
                }
            }
            if !improved {
                break;
            }
        }
    }
    Ok(best.1)
}

fn finish_result(
    map: &AnchoredMap,
    dists: &[f64],
    value: QConfig,
    status: SolveStatus,
    lower: f64,
) -> Result<ExtensionResult> {
    let mut stretch = 0.0_f64;
    let mut ratios = Vec::with_capacity(map.len());
    for (anchor, &d) in map.anchors().iter().zip(dists) {
        if d < COINCIDENCE_EPS {
            ratios.push(0.0);
            continue;
        }
        let ratio = g_distance(&value, &anchor.value)? / d;
        ratios.push(ratio);
        stretch = stretch.max(ratio);
    }
    let active_anchors = (0..map.len())
        .filter(|&i| dists[i] >= COINCIDENCE_EPS && ratios[i] >= stretch - METRIC_SLACK)
        .collect();
    let profile = map
        .anchors()
        .iter()
        .map(|a| optimal_matching(&value, &a.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtensionResult {
        stretch,
        profile,
        active_anchors,
        status,
        lower_bound: lower.min(stretch).max(0.0),
        value,
    })
}

fn build_lattice(n: usize, h: f64, keep: f64) -> Vec<f64> {
    struct Walker {
        n: usize,
        h: f64,
        mmax: i64,
        keep_sq: f64,
        coords: Vec<f64>,
        out: Vec<f64>,
    }
    impl Walker {
        fn walk(&mut self, axis: usize, partial: f64) {
            if axis == self.n {
                let row = self.coords.clone();
                self.out.extend_from_slice(&row);
                return;
            }
            for j in -self.mmax..=self.mmax {
                let v = j as f64 * self.h;
                let acc = partial + v * v;
                if acc > self.keep_sq {
                    continue;
                }
                self.coords[axis] = v;
                self.walk(axis + 1, acc);
            }
        }
    }
    let mut walker = Walker {
        n,
        h,
        mmax: (keep / h).floor() as i64,
        keep_sq: keep * keep,
        coords: vec![0.0; n],
        out: Vec::new(),
    };
    walker.walk(0, 0.0);
    walker.out
}

fn multiset_count(points: usize, q: usize) -> u128 {
    // C(points + q - 1, q)
    let mut c: u128 = 1;
    for t in 0..q {
        c = c.saturating_mul((points + q - 1 - t) as u128) / (t as u128 + 1);
    }
    c
}

/// Minimum over all kept lattice configurations of the squared stretch.
fn grid_min_stretch_sq(
    map: &AnchoredMap,
    dists: &[f64],
    lattice: &[f64],
    points: usize,
) -> Result<f64> {
    let q = map.q();
    let n = map.ambient_dim();
    let k = map.len();
    let inv_d2: Vec<f64> = dists.iter().map(|d| 1.0 / (d * d)).collect();

    // Per-point squared distances to every anchor atom, when they fit.
    let table_len = points.saturating_mul(k).saturating_mul(q);
    let table: Option<Vec<f64>> = if table_len <= 32_000_000 {
        let mut t = vec![0.0; table_len];
        for pt in 0..points {
            let g = &lattice[pt * n..(pt + 1) * n];
            for (i, anchor) in map.anchors().iter().enumerate() {
                for (a, atom) in anchor.value.atoms().iter().enumerate() {
                    let mut acc = 0.0;
                    for (gc, ac) in g.iter().zip(atom.coords()) {
                        acc += (gc - ac) * (gc - ac);
                    }
                    t[(pt * k + i) * q + a] = acc;
                }
            }
        }
        Some(t)
    } else {
        None
    };

    let dist2 = |pt: usize, i: usize, a: usize| -> f64 {
        match &table {
            Some(t) => t[(pt * k + i) * q + a],
            None => {
                let g = &lattice[pt * n..(pt + 1) * n];
                let atom = &map.anchors()[i].value.atoms()[a];
                g.iter()
                    .zip(atom.coords())
                    .map(|(gc, ac)| (gc - ac) * (gc - ac))
                    .sum()
            }
        }
    };

    let perms = if q <= 6 { Some(permutations_lex(q)) } else { None };
    let mut run_min = f64::INFINITY;
    let mut idx = vec![0usize; q];
    loop {
        // stretch^2 of the configuration with atoms at lattice[idx]
        let mut worst = 0.0_f64;
        let mut beaten = false;
        for (i, inv) in inv_d2.iter().enumerate() {
            let cost = match &perms {
                Some(perms) => {
                    let mut best_cost = f64::INFINITY;
                    for perm in perms {
                        let mut acc = 0.0;
                        for (j, &a) in perm.iter().enumerate() {
                            acc += dist2(idx[j], i, a);
                        }
                        if acc < best_cost {
                            best_cost = acc;
                        }
                    }
                    best_cost
                }
                None => {
                    let mut cost = vec![0.0; q * q];
                    for j in 0..q {
                        for a in 0..q {
                            cost[j * q + a] = dist2(idx[j], i, a);
                        }
                    }
                    let m = crate::qspace::QConfig::from_rows(
                        &(0..q)
                            .map(|j| lattice[idx[j] * n..(idx[j] + 1) * n].to_vec())
                            .collect::<Vec<_>>(),
                    )?;
                    let d = g_distance(&m, &map.anchors()[i].value)?;
                    d * d
                }
            };
            let ratio_sq = cost * inv;
            if ratio_sq > worst {
                worst = ratio_sq;
            }
            if worst >= run_min {
                beaten = true;
                break;
            }
        }
        if !beaten && worst < run_min {
            run_min = worst;
        }

        // next non-decreasing index tuple
        let mut pos = q;
        loop {
            if pos == 0 {
                return Ok(run_min);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < points {
                let fill = idx[pos];
                for entry in idx.iter_mut().skip(pos + 1) {
                    *entry = fill;
                }
                break;
            } else if pos == 0 {
                return Ok(run_min);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lipmap::Anchor;

    fn point(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    fn config(rows: &[&[f64]]) -> QConfig {
        QConfig::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn two_anchor_classical(x1: f64, x2: f64, v1: f64, v2: f64) -> AnchoredMap {
        AnchoredMap::from_anchors(vec![
            Anchor::new(point(&[x1]), config(&[&[v1]])),
            Anchor::new(point(&[x2]), config(&[&[v2]])),
        ])
        .unwrap()
    }

    #[test]
    fn single_anchor_copies_the_value() {
        let value = config(&[&[1.0, 2.0], &[0.0, 0.5]]);
        let map =
            AnchoredMap::from_anchors(vec![Anchor::new(point(&[0.0, 0.0]), value.clone())])
                .unwrap();
        let res = solve_one_point(&map, &point(&[3.0, 0.0]), &SolveOptions::default()).unwrap();
        assert_eq!(res.status, SolveStatus::OptimalWithinTolerance);
        assert!(res.stretch <= 1e-12);
        assert!(res.value.approx_eq(&value, 1e-9));
    }

    #[test]
    fn classical_two_anchor_matches_formula() {
        let map = two_anchor_classical(0.0, 3.0, 0.0, 6.0);
        let p = point(&[1.0]);
        let res = solve_one_point(&map, &p, &SolveOptions::default()).unwrap();
        // d1 = 1, d2 = 2, |v1 - v2| = 6 -> optimum 6 / 3 = 2
        assert!((res.stretch - 2.0).abs() <= 1e-8, "stretch {}", res.stretch);
        assert!(res.lower_bound >= 2.0 - 1e-8);
    }

    #[test]
    fn coincident_extension_point_is_rejected() {
        let map = two_anchor_classical(0.0, 1.0, 0.0, 1.0);
        assert!(matches!(
            solve_one_point(&map, &point(&[0.0]), &SolveOptions::default()),
            Err(Error::CoincidesWithAnchor { index: 0 })
        ));
        assert!(matches!(
            map.stretch_at(&point(&[1.0]), &config(&[&[0.0]])),
            Err(Error::CoincidesWithAnchor { index: 1 })
        ));
    }

    #[test]
    fn profile_cap_errors_without_heuristic() {
        // Q = 4, k = 4 -> 24^3 = 13824 profiles > default cap 10080.
        let rows: Vec<Vec<f64>> = (0..4).map(|i| vec![i as f64]).collect();
        let value = QConfig::from_rows(&rows).unwrap();
        let anchors: Vec<Anchor> = (0..4)
            .map(|i| Anchor::new(point(&[i as f64, 0.0]), value.clone()))
            .collect();
        let map = AnchoredMap::from_anchors(anchors).unwrap();
        let err = solve_one_point(&map, &point(&[0.5, 1.0]), &SolveOptions::default());
        assert!(matches!(err, Err(Error::ProfileCapExceeded { .. })));

        let opts = SolveOptions {
            heuristic: true,
            restarts: 4,
            ..SolveOptions::default()
        };
        let res = solve_one_point(&map, &point(&[0.5, 1.0]), &opts).unwrap();
        assert_eq!(res.status, SolveStatus::Heuristic);
        // all values identical: copying one is optimal
        assert!(res.stretch <= 1e-9);
    }

    #[test]
    fn nearest_point_takes_lex_smallest_on_ties() {
        let v1 = config(&[&[0.0]]);
        let v2 = config(&[&[1.0]]);
        let map = AnchoredMap::from_anchors(vec![
            Anchor::new(point(&[1.0, 0.0]), v2.clone()),
            Anchor::new(point(&[-1.0, 0.0]), v1.clone()),
        ])
        .unwrap();
        let res = nearest_point_extension(&map, &point(&[0.0, 0.0])).unwrap();
        assert_eq!(res.status, SolveStatus::Heuristic);
        assert!(res.value.approx_eq(&v1, 0.0));
        assert!((res.stretch - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn nearest_point_at_an_anchor_returns_its_value() {
        let v1 = config(&[&[0.0], &[2.0]]);
        let v2 = config(&[&[1.0], &[3.0]]);
        let map = AnchoredMap::from_anchors(vec![
            Anchor::new(point(&[0.0, 0.0]), v1.clone()),
            Anchor::new(point(&[2.0, 0.0]), v2.clone()),
        ])
        .unwrap();
        let res = nearest_point_extension(&map, &point(&[0.0, 0.0])).unwrap();
        assert!(res.value.approx_eq(&v1, 0.0));
        // stretch over the remaining anchor only
        let expected = g_distance(&v1, &v2).unwrap() / 2.0;
        assert!((res.stretch - expected).abs() <= 1e-12);
    }

    #[test]
    fn lower_bound_zero_for_single_anchor_and_equal_values() {
        let value = config(&[&[0.3, 0.4]]);
        let single =
            AnchoredMap::from_anchors(vec![Anchor::new(point(&[0.0, 0.0]), value.clone())])
                .unwrap();
        let lb = certified_lower_bound(
            &single,
            &point(&[1.0, 1.0]),
            0.1,
            &LowerBoundOptions::default(),
        )
        .unwrap();
        assert_eq!(lb, 0.0);

        let multi = AnchoredMap::from_anchors(vec![
            Anchor::new(point(&[0.0, 0.0]), value.clone()),
            Anchor::new(point(&[1.0, 0.0]), value.clone()),
        ])
        .unwrap();
        let lb = certified_lower_bound(
            &multi,
            &point(&[0.5, 1.0]),
            0.1,
            &LowerBoundOptions::default(),
        )
        .unwrap();
        assert_eq!(lb, 0.0);
    }

    #[test]
    fn grid_cap_is_enforced() {
        let map = two_anchor_classical(0.0, 1.0, 0.0, 1.0);
        let err = certified_lower_bound(
            &map,
            &point(&[0.5]),
            1e-7,
            &LowerBoundOptions {
                max_evals: 1000,
                incumbent: Some(1.0),
            },
        );
        assert!(matches!(err, Err(Error::GridTooLarge { .. })));
    }

    #[test]
    fn lower_bound_certifies_classical_instance() {
        // Q = 1: min stretch is |v1-v2|/(d1+d2) = 2 at p = 1.
        let map = two_anchor_classical(0.0, 3.0, 0.0, 6.0);
        let p = point(&[1.0]);
        let lb = certified_lower_bound(&map, &p, 0.05, &LowerBoundOptions::default()).unwrap();
        assert!(lb <= 2.0 + 1e-9);
        assert!(lb >= 2.0 - 0.1, "lb {lb}");
    }
}
