//! Weighted one-center subproblems.
//!
//! Given centers `c_1..c_k` in `R^D` and positive scales `d_1..d_k`, find
//! `y` minimizing `max_i |y - c_i| / d_i`. The objective squared is the
//! maximum of the quadratics `|y - c_i|^2 / d_i^2`, so the problem is
//! convex with a unique minimizer.
//!
//! The solver runs a safeguarded root search on the level value
//! `u = t^2`: the intersection of the balls `B(c_i, t d_i)` is nonempty
//! iff `psi(u) = min_y max_i (|y - c_i|^2 - u d_i^2) <= 0`, and `psi` is
//! convex, strictly decreasing, and piecewise affine in `u`. Each `psi`
//! evaluation is an exact convex QP (same Hessian in every piece), solved
//! by enumerating candidate active sets; the dual multipliers of every
//! attempted active set yield certified lower bounds on the root, which
//! makes the Newton-style update sound from either side of the root.

/// Result of a solved subproblem.
#[derive(Debug, Clone)]
pub(crate) struct OneCenterSolution {
    pub center: Vec<f64>,
    /// `max_i |center - c_i| / d_i`, recomputed at the returned center.
    pub value: f64,
    /// Certified lower bound on the optimal value.
    pub lower: f64,
}

#[derive(Debug, Clone)]
pub(crate) enum Outcome {
    Solved(OneCenterSolution),
    /// The optimum provably cannot beat the caller's cutoff.
    Pruned { lower: f64 },
}

/// Active-set enumeration is capped at this many subsets; beyond it the
/// solver falls back to a certified-upper-bound descent.
const SUBSET_CAP: u128 = 300_000;

const MAX_LEVEL_ITERS: usize = 80;

pub(crate) fn solve(
    centers: &[Vec<f64>],
    scales: &[f64],
    tol: f64,
    cutoff: Option<f64>,
) -> Outcome {
    let k = centers.len();
    assert!(k >= 1 && scales.len() == k);
    if k == 1 {
        return Outcome::Solved(OneCenterSolution {
            center: centers[0].clone(),
            value: 0.0,
            lower: 0.0,
        });
    }

    let plb = pairwise_lower(centers, scales);
    if let Some(cut) = cutoff {
        if plb >= cut {
            return Outcome::Pruned { lower: plb };
        }
    }

    let dim = centers[0].len();
    if subset_count(k, dim) > SUBSET_CAP {
        let y = descent_fallback(centers, scales);
        let value = eval(centers, scales, &y);
        return Outcome::Solved(OneCenterSolution {
            center: y,
            value,
            lower: plb,
        });
    }

    let mut u_lo = plb * plb;
    let mut u_hi = f64::INFINITY;
    let mut best_y: Option<Vec<f64>> = None;
    let mut u = u_lo;

    for _ in 0..MAX_LEVEL_ITERS {
        let level = min_power(centers, scales, u);
        let reached = eval_sq(centers, scales, &level.y);
        if reached < u_hi {
            u_hi = reached;
            best_y = Some(level.y);
        }
        if let Some(root) = level.dual_root {
            let margin = 1e-12 * (1.0 + root.abs());
            u_lo = u_lo.max(root - margin);
        }

        let t_lo = u_lo.max(0.0).sqrt();
        let t_hi = u_hi.max(0.0).sqrt();
        if t_hi - t_lo <= tol {
            break;
        }
        if let Some(cut) = cutoff {
            if t_lo >= cut {
                return Outcome::Pruned { lower: t_lo };
            }
        }

        let mut next = match level.dual_root {
            Some(root) if root.is_finite() => root,
            _ => 0.5 * (u_lo + u_hi),
        };
        if !next.is_finite() || next <= u_lo || next >= u_hi {
            next = 0.5 * (u_lo + u_hi);
        }
        if (next - u).abs() <= f64::EPSILON * (1.0 + u.abs()) {
            // Stalled on a kink; close the bracket by bisection.
            next = 0.5 * (u_lo + u_hi);
        }
        u = next;
    }

    let center = best_y.unwrap_or_else(|| centers[0].clone());
    let value = eval(centers, scales, &center);
    Outcome::Solved(OneCenterSolution {
        center,
        value,
        lower: u_lo.max(0.0).sqrt().min(value),
    })
}

/// `max_{i<j} |c_i - c_j| / (d_i + d_j)`: every feasible value is at least
/// this, by the triangle inequality through any candidate center.
pub(crate) fn pairwise_lower(centers: &[Vec<f64>], scales: &[f64]) -> f64 {
    let mut best = 0.0_f64;
    for i in 0..centers.len() {
        for j in i + 1..centers.len() {
            let d = euclid(&centers[i], &centers[j]);
            best = best.max(d / (scales[i] + scales[j]));
        }
    }
    best
}

pub(crate) fn eval(centers: &[Vec<f64>], scales: &[f64], y: &[f64]) -> f64 {
    centers
        .iter()
        .zip(scales)
        .map(|(c, d)| euclid(c, y) / d)
        .fold(0.0, f64::max)
}

fn eval_sq(centers: &[Vec<f64>], scales: &[f64], y: &[f64]) -> f64 {
    centers
        .iter()
        .zip(scales)
        .map(|(c, d)| sq_dist(c, y) / (d * d))
        .fold(0.0, f64::max)
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    sq_dist(a, b).sqrt()
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn subset_count(k: usize, dim: usize) -> u128 {
    let max_size = k.min(dim + 1);
    let mut total: u128 = 0;
    for s in 1..=max_size {
        let mut c: u128 = 1;
        for t in 0..s {
            c = c.saturating_mul((k - t) as u128) / (t as u128 + 1);
        }
        total = total.saturating_add(c);
    }
    total
}

struct LevelSolution {
    y: Vec<f64>,
    /// Best certified lower bound on the root of `psi` extracted from the
    /// dual multipliers of the attempted active sets.
    dual_root: Option<f64>,
}

/// Exact minimization of `phi_u(y) = max_i (|y - c_i|^2 - u d_i^2)`.
///
/// Every candidate active set `S` yields a stationary point
/// `y = sum_{i in S} lambda_i c_i` with the active powers equal; the
/// multipliers solve a small linear system. KKT-valid candidates locate the
/// optimum; all candidates contribute dual certificates.
fn min_power(centers: &[Vec<f64>], scales: &[f64], u: f64) -> LevelSolution {
    let k = centers.len();
    let dim = centers[0].len();
    let r2: Vec<f64> = scales.iter().map(|d| u * d * d).collect();
    let norms2: Vec<f64> = centers.iter().map(|c| sq_dist(c, &vec![0.0; dim])).collect();

    let mut best_phi = f64::INFINITY;
    let mut best_y: Option<Vec<f64>> = None;
    let mut best_valid_phi = f64::INFINITY;
    let mut best_valid_y: Option<Vec<f64>> = None;
    let mut dual_root: Option<f64> = None;

    let power = |y: &[f64], j: usize| sq_dist(&centers[j], y) - r2[j];

    // Singletons.
    for i in 0..k {
        let y = &centers[i];
        let s = -r2[i];
        let mut phi = s;
        let mut valid = true;
        for j in 0..k {
            if j == i {
                continue;
            }
            let g = power(y, j);
            phi = phi.max(g);
            if g > s + 1e-9 * (1.0 + s.abs() + g.abs()) {
                valid = false;
            }
        }
        if phi < best_phi {
            best_phi = phi;
            best_y = Some(y.clone());
        }
        if valid && phi < best_valid_phi {
            best_valid_phi = phi;
            best_valid_y = Some(y.clone());
        }
    }

    // Larger active sets.
    let max_size = k.min(dim + 1);
    let mut subset: Vec<usize> = Vec::new();
    enumerate_subsets(k, max_size, &mut subset, &mut |s: &[usize]| {
        if s.len() < 2 {
            return;
        }
        let Some(lambda) = solve_active_set(centers, &norms2, &r2, s) else {
            return;
        };

        // Dual certificate from the clamped multipliers.
        let mut clamped = lambda.clone();
        let mut sum = 0.0;
        for l in &mut clamped {
            if *l < 0.0 {
                *l = 0.0;
            }
            sum += *l;
        }
        if sum > 1e-300 {
            let mut y_dual = vec![0.0; dim];
            let mut mass = 0.0;
            let mut g_val = 0.0;
            for (pos, &i) in s.iter().enumerate() {
                let w = clamped[pos] / sum;
                for (yc, cc) in y_dual.iter_mut().zip(&centers[i]) {
                    *yc += w * cc;
                }
                mass += w * scales[i] * scales[i];
                g_val += w * norms2[i];
            }
            let y_dual_norm2: f64 = y_dual.iter().map(|v| v * v).sum();
            if mass > 1e-300 {
                // h(v) = g_val - |y_dual|^2 - v * mass supports psi from below;
                // its root lower-bounds the root of psi.
                let root = (g_val - y_dual_norm2) / mass;
                if dual_root.is_none_or(|r| root > r) {
                    dual_root = Some(root);
                }
            }
        }

        // Primal candidate.
        let mut y = vec![0.0; dim];
        for (pos, &i) in s.iter().enumerate() {
            for (yc, cc) in y.iter_mut().zip(&centers[i]) {
                *yc += lambda[pos] * cc;
            }
        }
        let mut s_active = f64::NEG_INFINITY;
        for &i in s {
            s_active = s_active.max(power(&y, i));
        }
        let mut phi = s_active;
        let mut valid = lambda.iter().all(|&l| l >= -1e-9);
        for j in 0..k {
            if s.contains(&j) {
                continue;
            }
            let g = power(&y, j);
            phi = phi.max(g);
            if g > s_active + 1e-9 * (1.0 + s_active.abs() + g.abs()) {
                valid = false;
            }
        }
        if phi < best_phi {
            best_phi = phi;
            best_y = Some(y.clone());
        }
        if valid && phi < best_valid_phi {
            best_valid_phi = phi;
            best_valid_y = Some(y);
        }
    });

    let y = best_valid_y
        .or(best_y)
        .unwrap_or_else(|| centers[0].clone());
    LevelSolution { y, dual_root }
}

/// Solves for the multipliers of active set `s`: the stationary point
/// `y = sum lambda_i c_i` with all active powers equal and `sum lambda = 1`.
fn solve_active_set(
    centers: &[Vec<f64>],
    norms2: &[f64],
    r2: &[f64],
    s: &[usize],
) -> Option<Vec<f64>> {
    let n = s.len();
    let mut a = vec![0.0; n * n];
    let mut b = vec![0.0; n];
    let base = s[0];
    for row in 1..n {
        let it = s[row];
        for (col, &m) in s.iter().enumerate() {
            a[row * n + col] = 2.0 * (dot(&centers[it], &centers[m]) - dot(&centers[base], &centers[m]));
        }
        b[row] = (norms2[it] - norms2[base]) - (r2[it] - r2[base]);
    }
    for entry in a.iter_mut().take(n) {
        *entry = 1.0; // row 0: sum lambda = 1
    }
    b[0] = 1.0;
    solve_linear(&mut a, &mut b, n)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting; `None` on (near-)singular
/// systems, which simply skips the candidate active set.
fn solve_linear(a: &mut [f64], b: &mut [f64], n: usize) -> Option<Vec<f64>> {
    let scale = a.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1.0);
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if a[row * n + col].abs() > a[pivot * n + col].abs() {
                pivot = row;
            }
        }
        if a[pivot * n + col].abs() <= 1e-13 * scale {
            return None;
        }
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
            b.swap(col, pivot);
        }
        let diag = a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] / diag;
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                a[row * n + j] -= factor * a[col * n + j];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for j in col + 1..n {
            acc -= a[col * n + j] * x[j];
        }
        x[col] = acc / a[col * n + col];
    }
    Some(x)
}

fn enumerate_subsets(
    k: usize,
    max_size: usize,
    current: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    fn recurse(
        start: usize,
        k: usize,
        max_size: usize,
        current: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if !current.is_empty() {
            visit(current);
        }
        if current.len() == max_size {
            return;
        }
        for i in start..k {
            current.push(i);
            recurse(i + 1, k, max_size, current, visit);
            current.pop();
        }
    }
    recurse(0, k, max_size, current, visit);
}

/// Certified-upper-bound fallback for very large instances: pull the
/// iterate toward the worst scaled center with diminishing steps.
fn descent_fallback(centers: &[Vec<f64>], scales: &[f64]) -> Vec<f64> {
    let mut y = centers
        .iter()
        .min_by(|a, b| {
            eval_sq(centers, scales, a)
                .total_cmp(&eval_sq(centers, scales, b))
        })
        .expect("at least one center")
        .clone();
    for step in 0..2000 {
        let mut worst = 0;
        let mut worst_val = f64::NEG_INFINITY;
        for (i, (c, d)) in centers.iter().zip(scales).enumerate() {
            let v = sq_dist(c, &y) / (d * d);
            if v > worst_val {
                worst_val = v;
                worst = i;
            }
        }
        let alpha = 1.0 / (step as f64 + 2.0);
        for (yc, cc) in y.iter_mut().zip(&centers[worst]) {
            *yc += alpha * (cc - *yc);
        }
    }
    y
}
