//! Maps from finitely many anchor points into configuration space, and
//! their Lipschitz constants (Euclidean distance on the domain, the
//! assignment metric on the codomain).

use crate::error::{Error, Result};
use crate::qspace::{g_distance, Point, QConfig};
use crate::tol::{COINCIDENCE_EPS, EQ_TOL};

/// One anchor: a domain point together with the configuration assigned there.
#[derive(Debug, Clone, PartialEq)]
pub struct Anchor {
    pub point: Point,
    pub value: QConfig,
}

impl Anchor {
    pub fn new(point: Point, value: QConfig) -> Self {
        Self { point, value }
    }
}

/// A map defined on finitely many anchor points of `R^m` with values in the
/// space of Q-point configurations of `R^n`.
///
/// Construction validates dimensions and rejects maps where two coincident
/// anchor points carry different values (such a map has no finite Lipschitz
/// constant).
#[derive(Debug, Clone, PartialEq)]
pub struct AnchoredMap {
    domain_dim: usize,
    q: usize,
    ambient_dim: usize,
    anchors: Vec<Anchor>,
}

impl AnchoredMap {
    pub fn new(
        domain_dim: usize,
        q: usize,
        ambient_dim: usize,
        anchors: Vec<Anchor>,
    ) -> Result<Self> {
        if domain_dim == 0 || q == 0 || ambient_dim == 0 {
            return Err(Error::InvalidArgument(
                "domain dimension, Q, and ambient dimension must be positive".into(),
            ));
        }
        for anchor in &anchors {
            if anchor.point.dim() != domain_dim {
                return Err(Error::DimensionMismatch {
                    expected: domain_dim,
                    found: anchor.point.dim(),
                });
            }
            if anchor.value.q() != q {
                return Err(Error::SizeMismatch {
                    expected: q,
                    found: anchor.value.q(),
                });
            }
            if anchor.value.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: anchor.value.ambient_dim(),
                });
            }
        }
        for i in 0..anchors.len() {
            for j in i + 1..anchors.len() {
                if anchors[i].point.distance(&anchors[j].point) < COINCIDENCE_EPS {
                    let d = g_distance(&anchors[i].value, &anchors[j].value)
                        .expect("values validated compatible");
                    if d > EQ_TOL {
                        return Err(Error::NonLipschitz {
                            first: i,
                            second: j,
                            distance: d,
                        });
                    }
                }
            }
        }
        Ok(Self {
            domain_dim,
            q,
            ambient_dim,
            anchors,
        })
    }

    /// Infers the dimensions from the first anchor.
    pub fn from_anchors(anchors: Vec<Anchor>) -> Result<Self> {
        let first = anchors.first().ok_or(Error::EmptyMap)?;
        let (m, q, n) = (
            first.point.dim(),
            first.value.q(),
            first.value.ambient_dim(),
        );
        Self::new(m, q, n, anchors)
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn anchors(&self) -> &[Anchor] {
        &self.anchors
    }

    pub fn len(&self) -> usize {
        self.anchors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchors.is_empty()
    }

    /// The map extended by one more anchor, revalidated.
    pub fn with_anchor(&self, point: Point, value: QConfig) -> Result<AnchoredMap> {
        let mut anchors = self.anchors.clone();
        anchors.push(Anchor::new(point, value));
        AnchoredMap::new(self.domain_dim, self.q, self.ambient_dim, anchors)
    }

    /// Largest ratio of value distance to anchor distance over anchor pairs;
    /// 0 for maps with fewer than two anchors. Pairs of coincident anchors
    /// are skipped (their values agree by construction).
    pub fn lip_constant(&self) -> f64 {
        let mut lip = 0.0_f64;
        for i in 0..self.anchors.len() {
            for j in i + 1..self.anchors.len() {
                let dx = self.anchors[i].point.distance(&self.anchors[j].point);
                if dx < COINCIDENCE_EPS {
                    continue;
                }
                let dv = g_distance(&self.anchors[i].value, &self.anchors[j].value)
                    .expect("anchors validated compatible");
                lip = lip.max(dv / dx);
            }
        }
        lip
    }

    /// Worst ratio of `candidate`'s distance to an anchor value over the
    /// domain distance from `p` to that anchor. Errors if `p` coincides
    /// with an anchor (the value there is forced).
    pub fn stretch_at(&self, p: &Point, candidate: &QConfig) -> Result<f64> {
        if p.dim() != self.domain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.domain_dim,
                found: p.dim(),
            });
        }
        if candidate.q() != self.q {
            return Err(Error::SizeMismatch {
                expected: self.q,
                found: candidate.q(),
            });
        }
        if candidate.ambient_dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: candidate.ambient_dim(),
            });
        }
        let mut stretch = 0.0_f64;
        for (index, anchor) in self.anchors.iter().enumerate() {
            let d = p.distance(&anchor.point);
            if d < COINCIDENCE_EPS {
                return Err(Error::CoincidesWithAnchor { index });
            }
            let dv = g_distance(candidate, &anchor.value)?;
            stretch = stretch.max(dv / d);
        }
        Ok(stretch)
    }

    /// Euclidean distances from `p` to every anchor point.
    pub(crate) fn anchor_distances(&self, p: &Point) -> Result<Vec<f64>> {
        if p.dim() != self.domain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.domain_dim,
                found: p.dim(),
            });
        }
        Ok(self
            .anchors
            .iter()
            .map(|a| p.distance(&a.point))
            .collect())
    }
}
