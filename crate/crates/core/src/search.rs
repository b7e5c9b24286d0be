//! Seeded randomized search for instances with a large ratio of minimal
//! one-point stretch to Lipschitz constant. Each instance's ratio is a
//! lower bound on any one-point extension constant for its dimensions, so
//! the best ratio found is reported as empirical evidence; the nearest
//! anchor argument caps every ratio at 2.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extend::{solve_one_point, SolveOptions};
use crate::lipmap::{Anchor, AnchoredMap};
use crate::qspace::{Point, QConfig};

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub domain_dim: usize,
    pub ambient_dim: usize,
    pub q: usize,
    pub anchors: usize,
    pub budget: u64,
    pub seed: u64,
    /// Optional starting instance; sampled randomly when absent.
    pub initial: Option<(AnchoredMap, Point)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Improvement {
    pub iteration: u64,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub domain_dim: usize,
    pub ambient_dim: usize,
    pub q: usize,
    pub anchors: usize,
    pub budget: u64,
    pub seed: u64,
    pub best_map: AnchoredMap,
    pub best_point: Point,
    pub best_stretch: f64,
    pub best_lip: f64,
    pub best_ratio: f64,
    /// Strictly improving (iteration, ratio) pairs, in order.
    pub history: Vec<Improvement>,
    /// Iterations discarded as degenerate (coincident anchors, flat maps,
    /// extension point too close to an anchor).
    pub degenerate: u64,
}

/// Minimum distance between the extension point and every anchor.
const POINT_CLEARANCE: f64 = 0.05;

const INITIAL_SIGMA: f64 = 0.1;
const STAGNATION_WINDOW: u64 = 50;
/// Once stagnation has halved sigma below this, every other iteration
/// draws a fresh instance instead of perturbing the incumbent.
const EXPLORATION_SIGMA: f64 = 0.002;

/// Mutable instance representation used while sampling and perturbing.
#[derive(Clone)]
struct Draft {
    anchors: Vec<(Vec<f64>, Vec<Vec<f64>>)>,
    point: Vec<f64>,
}

struct Evaluated {
    map: AnchoredMap,
    point: Point,
    stretch: f64,
    lip: f64,
    ratio: f64,
    draft: Draft,
}

/// Runs the randomized lower-bound search. Deterministic given the seed:
/// identical parameters produce identical reports.
pub fn lower_bound_search(params: &SearchParams) -> Result<SearchReport> {
    if params.domain_dim == 0
        || params.ambient_dim == 0
        || params.q == 0
        || params.anchors == 0
    {
        return Err(Error::InvalidArgument(
            "dimensions, Q, and anchor count must be positive".into(),
        ));
    }
    if params.budget == 0 {
        return Err(Error::InvalidArgument("budget must be positive".into()));
    }
    if let Some((map, p)) = &params.initial {
        if map.domain_dim() != params.domain_dim
            || map.ambient_dim() != params.ambient_dim
            || map.q() != params.q
            || map.len() != params.anchors
            || p.dim() != params.domain_dim
        {
            return Err(Error::InvalidArgument(
                "initial instance does not match the search parameters".into(),
            ));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut best: Option<Evaluated> = None;
    let mut history = Vec::new();
    let mut degenerate = 0u64;
    let mut sigma = INITIAL_SIGMA;
    let mut stagnation = 0u64;

    for iteration in 0..params.budget {
        let draft = match (&best, iteration) {
            (_, 0) => match &params.initial {
                Some((map, p)) => draft_from(map, p),
                None => sample_draft(params, &mut rng),
            },
            (Some(_), _) if sigma < EXPLORATION_SIGMA && iteration % 2 == 0 => {
                sample_draft(params, &mut rng)
            }
            (Some(incumbent), _) => perturb_draft(&incumbent.draft, sigma, &mut rng),
            (None, _) => sample_draft(params, &mut rng),
        };
        let solver_seed = rng.gen::<u64>();
        match evaluate(params, draft, solver_seed)? {
            Some(candidate) => {
                debug_assert!(candidate.ratio <= 2.0 + 1e-6);
                let improved = best
                    .as_ref()
                    .is_none_or(|b| candidate.ratio > b.ratio + 1e-12);
                if improved {
                    history.push(Improvement {
                        iteration,
                        ratio: candidate.ratio,
                    });
                    best = Some(candidate);
                    sigma = INITIAL_SIGMA;
                    stagnation = 0;
                } else {
                    stagnation += 1;
                    if stagnation.is_multiple_of(STAGNATION_WINDOW) {
                        sigma *= 0.5;
                    }
                }
            }
            None => {
                degenerate += 1;
                stagnation += 1;
                if stagnation.is_multiple_of(STAGNATION_WINDOW) {
                    sigma *= 0.5;
                }
            }
        }
    }

    let best = best.ok_or_else(|| {
        Error::InvalidArgument(format!(
            "no non-degenerate instance found within budget {}",
            params.budget
        ))
    })?;
    Ok(SearchReport {
        domain_dim: params.domain_dim,
        ambient_dim: params.ambient_dim,
        q: params.q,
        anchors: params.anchors,
        budget: params.budget,
        seed: params.seed,
        best_map: best.map,
        best_point: best.point,
        best_stretch: best.stretch,
        best_lip: best.lip,
        best_ratio: best.ratio,
        history,
        degenerate,
    })
}

fn draft_from(map: &AnchoredMap, p: &Point) -> Draft {
    Draft {
        anchors: map
            .anchors()
            .iter()
            .map(|a| {
                (
                    a.point.coords().to_vec(),
                    a.value
                        .atoms()
                        .iter()
                        .map(|at| at.coords().to_vec())
                        .collect(),
                )
            })
            .collect(),
        point: p.coords().to_vec(),
    }
}

fn sample_draft(params: &SearchParams, rng: &mut ChaCha8Rng) -> Draft {
    let coord = |rng: &mut ChaCha8Rng| rng.gen_range(-1.0..=1.0);
    let anchors = (0..params.anchors)
        .map(|_| {
            let x: Vec<f64> = (0..params.domain_dim).map(|_| coord(rng)).collect();
            let atoms: Vec<Vec<f64>> = (0..params.q)
                .map(|_| (0..params.ambient_dim).map(|_| coord(rng)).collect())
                .collect();
            (x, atoms)
        })
        .collect();
    let point = (0..params.domain_dim).map(|_| coord(rng)).collect();
    Draft { anchors, point }
}

fn perturb_draft(draft: &Draft, sigma: f64, rng: &mut ChaCha8Rng) -> Draft {
    let mut out = draft.clone();
    let nudge = |v: &mut f64, rng: &mut ChaCha8Rng| {
        *v = (*v + sigma * gaussian(rng)).clamp(-1.0, 1.0);
    };
    for (x, atoms) in &mut out.anchors {
        for c in x.iter_mut() {
            nudge(c, rng);
        }
        for atom in atoms {
            for c in atom.iter_mut() {
                nudge(c, rng);
            }
        }
    }
    for c in out.point.iter_mut() {
        nudge(c, rng);
    }
    out
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// `None` marks a degenerate draft: invalid map, flat map (zero Lipschitz
/// constant), or extension point without clearance.
fn evaluate(params: &SearchParams, draft: Draft, solver_seed: u64) -> Result<Option<Evaluated>> {
    let anchors = draft
        .anchors
        .iter()
        .map(|(x, atoms)| {
            Ok(Anchor::new(
                Point::new(x.clone())?,
                QConfig::from_rows(atoms)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = match AnchoredMap::new(params.domain_dim, params.q, params.ambient_dim, anchors)
    {
        Ok(map) => map,
        Err(Error::NonLipschitz { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let point = Point::new(draft.point.clone())?;
    let clearance = map
        .anchors()
        .iter()
        .map(|a| point.distance(&a.point))
        .fold(f64::INFINITY, f64::min);
    if clearance < POINT_CLEARANCE {
        return Ok(None);
    }
    let lip = map.lip_constant();
    if lip < 1e-9 {
        return Ok(None);
    }
    let opts = SolveOptions {
        heuristic: true,
        restarts: 6,
        seed: solver_seed,
        ..SolveOptions::default()
    };
    let solved = solve_one_point(&map, &point, &opts)?;
    let ratio = solved.stretch / lip;
    Ok(Some(Evaluated {
        map,
        point,
        stretch: solved.stretch,
        lip,
        ratio,
        draft,
    }))
}
