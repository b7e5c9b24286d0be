//! The JSON instance file format.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "m": 2, "n": 2, "q": 2,
//!   "anchors": [
//!     { "x": [0.0, 1.0], "value": [[0.0, -1.0], [0.0, 1.0]] }
//!   ],
//!   "point": [0.0, 0.0]
//! }
//! ```
//!
//! Serialization canonicalizes every value's atom order, so
//! parse -> serialize -> parse is the identity on canonical content.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use qlip_core::{Anchor, AnchoredMap, Point, QConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub m: usize,
    pub n: usize,
    pub q: usize,
    pub anchors: Vec<AnchorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnchorEntry {
    pub x: Vec<f64>,
    pub value: Vec<Vec<f64>>,
}

/// Parses and validates an instance file. Errors carry the offending
/// field's path (and line/column for syntax errors).
pub fn parse_instance(text: &str) -> Result<(AnchoredMap, Option<Point>)> {
    let file: InstanceFile =
        serde_json::from_str(text).context("instance file is not valid JSON for the schema")?;
    if file.schema_version != SCHEMA_VERSION {
        bail!(
            "unsupported schema_version {} (expected {})",
            file.schema_version,
            SCHEMA_VERSION
        );
    }
    if file.m == 0 || file.n == 0 || file.q == 0 {
        bail!("m, n, and q must be positive");
    }

    let mut anchors = Vec::with_capacity(file.anchors.len());
    for (i, entry) in file.anchors.iter().enumerate() {
        if entry.x.len() != file.m {
            bail!(
                "anchors[{i}].x: expected m = {} coordinates, found {}",
                file.m,
                entry.x.len()
            );
        }
        if entry.value.len() != file.q {
            bail!(
                "anchors[{i}].value: expected q = {} atoms, found {}",
                file.q,
                entry.value.len()
            );
        }
        for (j, atom) in entry.value.iter().enumerate() {
            if atom.len() != file.n {
                bail!(
                    "anchors[{i}].value[{j}]: expected n = {} coordinates, found {}",
                    file.n,
                    atom.len()
                );
            }
        }
        let point = Point::new(entry.x.clone())
            .map_err(|e| anyhow!("anchors[{i}].x: {e}"))?;
        let value = QConfig::from_rows(&entry.value)
            .map_err(|e| anyhow!("anchors[{i}].value: {e}"))?;
        anchors.push(Anchor::new(point, value));
    }
    let map = AnchoredMap::new(file.m, file.q, file.n, anchors)
        .map_err(|e| anyhow!("anchors: {e}"))?;

    let point = match &file.point {
        Some(coords) => {
            if coords.len() != file.m {
                bail!(
                    "point: expected m = {} coordinates, found {}",
                    file.m,
                    coords.len()
                );
            }
            Some(Point::new(coords.clone()).map_err(|e| anyhow!("point: {e}"))?)
        }
        None => None,
    };
    Ok((map, point))
}

/// The schema representation of a map, values in canonical atom order.
pub fn instance_file(map: &AnchoredMap, point: Option<&Point>) -> InstanceFile {
    InstanceFile {
        schema_version: SCHEMA_VERSION,
        m: map.domain_dim(),
        n: map.ambient_dim(),
        q: map.q(),
        anchors: map
            .anchors()
            .iter()
            .map(|a| AnchorEntry {
                x: a.point.coords().to_vec(),
                value: a
                    .value
                    .atoms()
                    .iter()
                    .map(|atom| atom.coords().to_vec())
                    .collect(),
            })
            .collect(),
        point: point.map(|p| p.coords().to_vec()),
    }
}

/// Serializes a map (and optional extension point) in canonical form.
pub fn serialize_instance(map: &AnchoredMap, point: Option<&Point>) -> String {
    let file = instance_file(map, point);
    let mut text = serde_json::to_string_pretty(&file).expect("schema types always serialize");
    text.push('\n');
    text
}
