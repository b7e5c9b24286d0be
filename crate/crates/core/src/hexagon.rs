//! The regular-hexagon instance: three anchors on a circle of radius 1
//! whose values are the three antipodal vertex pairs of a side-1 regular
//! hexagon, and a machine-checkable report that no one-point extension at
//! the origin keeps the map's Lipschitz constant.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extend::{certified_lower_bound, solve_one_point, LowerBoundOptions, SolveOptions};
use crate::lipmap::{Anchor, AnchoredMap};
use crate::qspace::{g_distance, Point, QConfig};
use crate::tol::EQ_TOL;

/// One verified claim of the report.
#[derive(Debug, Clone)]
pub struct ClaimCheck {
    pub name: &'static str,
    /// The measured quantity the claim constrains.
    pub measured: f64,
    pub pass: bool,
}

/// Every quantity checked by [`verify_counterexample`].
#[derive(Debug, Clone)]
pub struct HexagonReport {
    /// |A-B|, |A-C|, |B-C|.
    pub domain_distances: [f64; 3],
    /// Configuration distances between the three value pairs.
    pub value_distances: [f64; 3],
    pub lip_f: f64,
    /// Certified lower bound on the stretch of any value at the origin.
    pub min_stretch_lb: f64,
    /// Best stretch found by the optimizer at the origin.
    pub min_stretch_found: f64,
    /// `min_stretch_found / lip_f`.
    pub constant_ratio: f64,
    pub claims: Vec<ClaimCheck>,
    pub verdict: bool,
}

/// The hexagon map: anchors A = (0,1), B = (-r,-1/2), C = (r,-1/2) with
/// r = sqrt(3)/2, and values pairing opposite vertices of the regular
/// side-1 hexagon centered at the origin.
pub fn hexagon_instance() -> AnchoredMap {
    let r = 3.0_f64.sqrt() / 2.0;
    let point = |x: f64, y: f64| Point::new(vec![x, y]).expect("finite");
    let config = |a: [f64; 2], b: [f64; 2]| {
        QConfig::from_rows(&[a.to_vec(), b.to_vec()]).expect("well-formed")
    };
    // Vertices: (0,1), (r,1/2), (r,-1/2), (0,-1), (-r,-1/2), (-r,1/2).
    let value_a = config([0.0, 1.0], [0.0, -1.0]);
    let value_b = config([r, 0.5], [-r, -0.5]);
    let value_c = config([r, -0.5], [-r, 0.5]);
    AnchoredMap::from_anchors(vec![
        Anchor::new(point(0.0, 1.0), value_a),
        Anchor::new(point(-r, -0.5), value_b),
        Anchor::new(point(r, -0.5), value_c),
    ])
    .expect("the hexagon instance is well-formed")
}

/// Checks every numerical claim about the hexagon instance.
///
/// The claims: the three anchor distances equal sqrt(3) and the three value
/// distances equal sqrt(2) to 1e-12; the Lipschitz constant equals
/// sqrt(2/3) to 1e-12; the certified lower bound and the optimized stretch
/// at the origin both reach 1 - tol; and the stretch-to-Lipschitz ratio
/// reaches sqrt(3/2) - tol, so no extension at the origin can stay below
/// that constant.
pub fn verify_counterexample(tol: f64, grid_step: f64) -> Result<HexagonReport> {
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must lie in (0, 1e-3], got {tol}"
        )));
    }
    let map = hexagon_instance();
    let origin = Point::new(vec![0.0, 0.0]).expect("finite");

    let [a, b, c] = [0, 1, 2].map(|i| &map.anchors()[i]);
    let domain_distances = [
        a.point.distance(&b.point),
        a.point.distance(&c.point),
        b.point.distance(&c.point),
    ];
    let value_distances = [
        g_distance(&a.value, &b.value)?,
        g_distance(&a.value, &c.value)?,
        g_distance(&b.value, &c.value)?,
    ];
    let lip_f = map.lip_constant();

    let solved = solve_one_point(&map, &origin, &SolveOptions::default())?;
    let min_stretch_found = solved.stretch;
    let min_stretch_lb = certified_lower_bound(
        &map,
        &origin,
        grid_step,
        &LowerBoundOptions {
            incumbent: Some(min_stretch_found),
            ..LowerBoundOptions::default()
        },
    )?;
    let constant_ratio = min_stretch_found / lip_f;

    let root3 = 3.0_f64.sqrt();
    let root2 = 2.0_f64.sqrt();
    let domain_dev = domain_distances
        .iter()
        .map(|d| (d - root3).abs())
        .fold(0.0_f64, f64::max);
    let value_dev = value_distances
        .iter()
        .map(|d| (d - root2).abs())
        .fold(0.0_f64, f64::max);
    let lip_dev = (lip_f - (2.0_f64 / 3.0).sqrt()).abs();
    let ratio_target = (1.5_f64).sqrt() - tol;

    let claims = vec![
        ClaimCheck {
            name: "domain-distances-sqrt3",
            measured: domain_dev,
            pass: domain_dev <= EQ_TOL,
        },
        ClaimCheck {
            name: "value-distances-sqrt2",
            measured: value_dev,
            pass: value_dev <= EQ_TOL,
        },
        ClaimCheck {
            name: "lip-constant-sqrt-two-thirds",
            measured: lip_f,
            pass: lip_dev <= EQ_TOL,
        },
        ClaimCheck {
            name: "certified-lower-bound-at-origin",
            measured: min_stretch_lb,
            pass: min_stretch_lb >= 1.0 - tol,
        },
        ClaimCheck {
            name: "optimized-stretch-at-origin",
            measured: min_stretch_found,
            pass: min_stretch_found >= 1.0 - tol,
        },
        ClaimCheck {
            name: "extension-constant-ratio",
            measured: constant_ratio,
            pass: constant_ratio >= ratio_target,
        },
    ];
    let verdict = claims.iter().all(|c| c.pass);
    Ok(HexagonReport {
        domain_distances,
        value_distances,
        lip_f,
        min_stretch_lb,
        min_stretch_found,
        constant_ratio,
        claims,
        verdict,
    })
}

/// Samples configurations with both atoms in the lower half plane
/// `y <= 0` (atoms drawn from `[-3,3] x [-3,0]`) and checks that each is at
/// configuration distance at least `1 - 1e-12` from the value at A: both
/// atoms are then at distance >= 1 from the top vertex (0,1).
pub fn half_plane_check(samples: u32, seed: u64) -> bool {
    let map = hexagon_instance();
    let value_a = &map.anchors()[0].value;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let atom = |rng: &mut ChaCha8Rng| {
            vec![rng.gen_range(-3.0..=3.0), rng.gen_range(-3.0..=0.0)]
        };
        let t = QConfig::from_rows(&[atom(&mut rng), atom(&mut rng)]).expect("finite");
        let d = g_distance(&t, value_a).expect("compatible");
        if d < 1.0 - EQ_TOL {
            return false;
        }
    }
    true
}
