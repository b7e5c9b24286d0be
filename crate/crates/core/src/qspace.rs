//! Configurations of Q points and the optimal-assignment metric.
//!
//! A [`QConfig`] is an unordered multiset of `Q` points of `R^n`, stored in
//! canonical (lexicographic) atom order. The distance between two
//! configurations is the minimum over all pairings of their atoms of the
//! root-sum-of-squares of the paired Euclidean distances; [`g_distance`]
//! computes it with an exact assignment solver, [`g_distance_bruteforce`]
//! by enumerating all `Q!` pairings.

mod assignment;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::tol::EQ_TOL;

/// A point of `R^d` with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument(
                "a point needs at least one coordinate".into(),
            ));
        }
        for (index, &value) in coords.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteCoordinate { index, value });
            }
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn squared_distance(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    pub fn distance(&self, other: &Point) -> f64 {
        self.squared_distance(other).sqrt()
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Total lexicographic order on coordinate vectors; used for canonical
    /// atom order and for deterministic tie-breaks.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.total_cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }
}

/// An unordered multiset of exactly Q points, kept in canonical order.
///
/// Construction sorts the atoms lexicographically, so two configurations
/// are equal as multisets iff they compare equal with `==`. Repeated atoms
/// are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct QConfig {
    atoms: Vec<Point>,
    ambient_dim: usize,
}

impl QConfig {
    /// Builds a configuration from its atoms, canonicalizing their order.
    pub fn from_atoms(mut atoms: Vec<Point>) -> Result<Self> {
        let ambient_dim = match atoms.first() {
            Some(first) => first.dim(),
            None => return Err(Error::EmptyConfiguration),
        };
        for atom in &atoms {
            if atom.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: atom.dim(),
                });
            }
        }
        atoms.sort_by(|a, b| a.lex_cmp(b));
        Ok(Self { atoms, ambient_dim })
    }

    /// Convenience constructor from coordinate rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let atoms = rows
            .iter()
            .map(|row| Point::new(row.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_atoms(atoms)
    }

    pub fn q(&self) -> usize {
        self.atoms.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn atoms(&self) -> &[Point] {
        &self.atoms
    }

    pub fn max_atom_norm(&self) -> f64 {
        self.atoms.iter().map(Point::norm).fold(0.0, f64::max)
    }

    /// Applies `f` to every atom and re-canonicalizes.
    pub fn map_atoms(&self, mut f: impl FnMut(&[f64]) -> Vec<f64>) -> Result<QConfig> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Point::new(f(a.coords())))
            .collect::<Result<Vec<_>>>()?;
        QConfig::from_atoms(atoms)
    }

    /// Coordinate-wise comparison of canonical forms within `tol`.
    pub fn approx_eq(&self, other: &QConfig, tol: f64) -> bool {
        self.q() == other.q()
            && self.ambient_dim == other.ambient_dim
            && self
                .atoms
                .iter()
                .zip(&other.atoms)
                .all(|(a, b)| {
                    a.coords()
                        .iter()
                        .zip(b.coords())
                        .all(|(x, y)| (x - y).abs() <= tol)
                })
    }

    pub(crate) fn lex_cmp(&self, other: &QConfig) -> Ordering {
        for (a, b) in self.atoms.iter().zip(&other.atoms) {
            match a.lex_cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// A pairing of the atoms of one configuration with the atoms of another,
/// together with its squared-distance cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    perm: Vec<usize>,
    cost: f64,
}

impl Matching {
    /// `permutation()[i]` is the index, in the second configuration's
    /// canonical order, of the atom paired with atom `i` of the first.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Sum over pairs of squared Euclidean distances.
    pub fn cost(&self) -> f64 {
        self.cost
    }
}

fn check_compatible(a: &QConfig, b: &QConfig) -> Result<()> {
    if a.q() != b.q() {
        return Err(Error::SizeMismatch {
            expected: a.q(),
            found: b.q(),
        });
    }
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    Ok(())
}

fn cost_matrix(a: &QConfig, b: &QConfig) -> Vec<f64> {
    let q = a.q();
    let mut cost = vec![0.0; q * q];
    for (i, ai) in a.atoms().iter().enumerate() {
        for (j, bj) in b.atoms().iter().enumerate() {
            cost[i * q + j] = ai.squared_distance(bj);
        }
    }
    cost
}

/// Distance between two configurations: the minimum over atom pairings of
/// `sqrt(sum of squared paired distances)`, found by the assignment solver.
///
/// Symmetric by construction: the two arguments are ordered canonically
/// before the cost matrix is built.
pub fn g_distance(a: &QConfig, b: &QConfig) -> Result<f64> {
    check_compatible(a, b)?;
    let (s, t) = match a.lex_cmp(b) {
        Ordering::Greater => (b, a),
        _ => (a, b),
    };
    let cost = cost_matrix(s, t);
    let (_, total) = assignment::solve(&cost, s.q());
    Ok(total.max(0.0).sqrt())
}

/// Upper bound on Q for [`g_distance_bruteforce`].
pub const BRUTEFORCE_MAX_Q: usize = 8;

/// Exact distance by enumerating all `Q!` pairings; the independent oracle
/// for [`g_distance`]. Refuses Q above [`BRUTEFORCE_MAX_Q`].
pub fn g_distance_bruteforce(a: &QConfig, b: &QConfig) -> Result<f64> {
    check_compatible(a, b)?;
    let q = a.q();
    if q > BRUTEFORCE_MAX_Q {
        return Err(Error::EnumerationLimit {
            q,
            max: BRUTEFORCE_MAX_Q,
        });
    }
    let cost = cost_matrix(a, b);
    let mut perm: Vec<usize> = (0..q).collect();
    let mut best = perm_cost(&cost, q, &perm);
    // Heap's algorithm over the remaining permutations.
    let mut stack = vec![0usize; q];
    let mut i = 0;
    while i < q {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            let total = perm_cost(&cost, q, &perm);
            if total < best {
                best = total;
            }
            stack[i] += 1;
            i = 0;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
    Ok(best.max(0.0).sqrt())
}

fn perm_cost(cost: &[f64], q: usize, perm: &[usize]) -> f64 {
    perm.iter()
        .enumerate()
        .map(|(i, &j)| cost[i * q + j])
        .sum()
}

/// A cost-minimizing pairing between the canonical atoms of `a` and `b`.
///
/// Among pairings whose costs tie within `1e-12`, returns the
/// lexicographically smallest permutation.
pub fn optimal_matching(a: &QConfig, b: &QConfig) -> Result<Matching> {
    check_compatible(a, b)?;
    let q = a.q();
    let cost = cost_matrix(a, b);
    let (_, best) = assignment::solve(&cost, q);

    // Fix columns greedily, smallest index first, keeping completability
    // within the tie tolerance.
    let mut used = vec![false; q];
    let mut perm = Vec::with_capacity(q);
    let mut prefix = 0.0;
    for i in 0..q {
        let mut chosen = None;
        for j in 0..q {
            if used[j] {
                continue;
            }
            let remainder = remaining_min_cost(&cost, q, i + 1, &used, j);
            if prefix + cost[i * q + j] + remainder <= best + EQ_TOL {
                chosen = Some(j);
                break;
            }
        }
        let j = chosen.expect("an optimal completion always exists");
        used[j] = true;
        prefix += cost[i * q + j];
        perm.push(j);
    }

    let total = perm_cost(&cost, q, &perm);
    Ok(Matching { perm, cost: total })
}

/// Minimum assignment cost of rows `from_row..q` onto the unused columns,
/// with column `extra` also treated as used.
fn remaining_min_cost(cost: &[f64], q: usize, from_row: usize, used: &[bool], extra: usize) -> f64 {
    let rows = q - from_row;
    if rows == 0 {
        return 0.0;
    }
    let cols: Vec<usize> = (0..q).filter(|&j| !used[j] && j != extra).collect();
    debug_assert_eq!(cols.len(), rows);
    let mut sub = vec![0.0; rows * rows];
    for r in 0..rows {
        for (c, &j) in cols.iter().enumerate() {
            sub[r * rows + c] = cost[(from_row + r) * q + j];
        }
    }
    let (_, total) = assignment::solve(&sub, rows);
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(rows: &[&[f64]]) -> QConfig {
        QConfig::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rejects_non_finite_coordinates() {
        assert!(matches!(
            Point::new(vec![0.0, f64::NAN]),
            Err(Error::NonFiniteCoordinate { index: 1, .. })
        ));
        assert!(Point::new(vec![0.0, f64::INFINITY]).is_err());
        assert!(Point::new(vec![]).is_err());
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let c = config(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(c.atoms()[0].coords(), &[0.0, 1.0]);
        assert_eq!(c.atoms()[1].coords(), &[1.0, 0.0]);
    }

    #[test]
    fn canonical_order_keeps_repeated_atoms() {
        let c = config(&[&[0.0, 0.0], &[0.0, 0.0]]);
        assert_eq!(c.q(), 2);
        assert_eq!(c.atoms()[0].coords(), &[0.0, 0.0]);
        assert_eq!(c.atoms()[1].coords(), &[0.0, 0.0]);
    }

    #[test]
    fn canonical_order_preserves_sorted_input() {
        let c = config(&[&[0.0, -1.0], &[0.0, 1.0]]);
        assert_eq!(c.atoms()[0].coords(), &[0.0, -1.0]);
        assert_eq!(c.atoms()[1].coords(), &[0.0, 1.0]);
    }

    #[test]
    fn distance_of_singletons_is_euclidean() {
        let a = config(&[&[1.0, 2.0, 3.0]]);
        let b = config(&[&[4.0, 6.0, 3.0]]);
        assert!((g_distance(&a, &b).unwrap() - 5.0).abs() < 1e-15);
        assert!((g_distance_bruteforce(&a, &b).unwrap() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn distance_to_self_is_zero() {
        let a = config(&[&[0.3, -1.2], &[4.0, 0.25], &[0.3, -1.2]]);
        assert_eq!(g_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn hexagon_pair_distance_is_sqrt_two() {
        let root3 = 3.0_f64.sqrt();
        let fa = config(&[&[0.0, 1.0], &[0.0, -1.0]]);
        let fb = config(&[&[root3 / 2.0, 0.5], &[-root3 / 2.0, -0.5]]);
        let d = g_distance(&fa, &fb).unwrap();
        assert!((d - 2.0_f64.sqrt()).abs() <= 1e-12);
        let d_brute = g_distance_bruteforce(&fa, &fb).unwrap();
        assert!((d_brute - 2.0_f64.sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn bruteforce_refuses_large_q() {
        let rows: Vec<Vec<f64>> = (0..9).map(|i| vec![i as f64]).collect();
        let a = QConfig::from_rows(&rows).unwrap();
        assert!(matches!(
            g_distance_bruteforce(&a, &a),
            Err(Error::EnumerationLimit { q: 9, max: 8 })
        ));
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let a = config(&[&[0.0], &[1.0]]);
        let b = config(&[&[0.0]]);
        assert!(matches!(g_distance(&a, &b), Err(Error::SizeMismatch { .. })));
        let c = config(&[&[0.0, 0.0], &[1.0, 1.0]]);
        assert!(matches!(
            g_distance(&a, &c),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn optimal_matching_hexagon_pair() {
        let root3 = 3.0_f64.sqrt();
        let fa = config(&[&[0.0, 1.0], &[0.0, -1.0]]);
        let fb = config(&[&[root3 / 2.0, 0.5], &[-root3 / 2.0, -0.5]]);
        let m = optimal_matching(&fa, &fb).unwrap();
        // Canonical order pairs (0,-1) with (-r/2,-1/2) and (0,1) with (r/2,1/2).
        assert_eq!(m.permutation(), &[0, 1]);
        assert!((m.cost() - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn optimal_matching_identity_on_equal_configs() {
        let a = config(&[&[0.5, 0.5], &[-1.0, 2.0], &[3.0, 0.0]]);
        let m = optimal_matching(&a, &a).unwrap();
        assert_eq!(m.permutation(), &[0, 1, 2]);
        assert_eq!(m.cost(), 0.0);
    }

    #[test]
    fn optimal_matching_tie_break_is_identity() {
        let a = config(&[&[0.0, 0.0], &[0.0, 0.0]]);
        let b = config(&[&[1.0, 0.0], &[1.0, 0.0]]);
        let m = optimal_matching(&a, &b).unwrap();
        assert_eq!(m.permutation(), &[0, 1]);
        assert!((m.cost() - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn optimal_matching_is_lex_smallest_among_cost_ties() {
        // Small-integer atoms force plenty of exact cost ties.
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = move |modulus: usize| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) as usize) % modulus
        };
        for _ in 0..200 {
            let q = 2 + next(4);
            let rows = |next: &mut dyn FnMut(usize) -> usize| -> Vec<Vec<f64>> {
                (0..q)
                    .map(|_| vec![next(3) as f64, next(3) as f64])
                    .collect()
            };
            let a = QConfig::from_rows(&rows(&mut next)).unwrap();
            let b = QConfig::from_rows(&rows(&mut next)).unwrap();
            let m = optimal_matching(&a, &b).unwrap();

            let cost = cost_matrix(&a, &b);
            let mut best = f64::INFINITY;
            let mut optimal_perms: Vec<Vec<usize>> = Vec::new();
            let mut perm: Vec<usize> = (0..q).collect();
            visit_permutations(&mut perm, 0, &mut |p| {
                let total = perm_cost(&cost, q, p);
                if total < best - EQ_TOL {
                    best = total;
                    optimal_perms.clear();
                    optimal_perms.push(p.to_vec());
                } else if total <= best + EQ_TOL {
                    if total < best {
                        best = total;
                    }
                    optimal_perms.push(p.to_vec());
                }
            });
            let lex_min = optimal_perms.iter().min().unwrap();
            assert_eq!(m.permutation(), lex_min.as_slice(), "q={q}");
            assert!((m.cost() - best).abs() <= EQ_TOL);
        }
    }

    fn visit_permutations(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == perm.len() {
            visit(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            visit_permutations(perm, k + 1, visit);
            perm.swap(k, i);
        }
    }

    #[test]
    fn matching_cost_matches_recomputation() {
        let a = config(&[&[0.1, 0.7], &[2.0, -0.3], &[1.0, 1.0], &[0.0, 0.0]]);
        let b = config(&[&[1.1, 0.2], &[-0.4, 0.9], &[0.3, 0.3], &[2.2, 2.0]]);
        let m = optimal_matching(&a, &b).unwrap();
        let recomputed: f64 = m
            .permutation()
            .iter()
            .enumerate()
            .map(|(i, &j)| a.atoms()[i].squared_distance(&b.atoms()[j]))
            .sum();
        assert!((m.cost() - recomputed).abs() <= 1e-12);
        assert!((m.cost().sqrt() - g_distance(&a, &b).unwrap()).abs() <= 1e-12);
    }
}
