//! The shipped catalog of named diagrams. Each entry stores the invariants
//! it is expected to have; loading recomputes all of them and rejects the
//! catalog on any mismatch.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::extreme::extreme_via_lando;
use crate::graph::{Graph, GraphJson};
use crate::lando::lando_graph;
use crate::simplicial::{AbelianGroup, Ring};
use crate::Limits;

const CATALOG: &str = include_str!("../../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog is not valid JSON: {0}")]
    Json(String),
    #[error("entry {name}: {message}")]
    Invalid { name: String, message: String },
    #[error("entry {name}: expected {field} = {expected}, found {actual}")]
    Mismatch {
        name: String,
        field: &'static str,
        expected: String,
        actual: String,
    },
    #[error("no catalog entry named {0}")]
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedJson {
    pub crossings: usize,
    pub negative: usize,
    pub sa_circles: usize,
    pub components: usize,
    pub lando: GraphJson,
    pub j_min: i64,
    /// Integral groups of the `j_min` row keyed by homological degree.
    pub extreme: BTreeMap<i64, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntryJson {
    pub name: String,
    pub description: String,
    pub pd: String,
    /// Built to match stated invariants rather than copied from a picture.
    pub reconstructed: bool,
    pub expected: ExpectedJson,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub reconstructed: bool,
    pub diagram: Diagram,
    pub lando: Graph,
    pub j_min: i64,
    pub extreme: BTreeMap<i64, AbelianGroup>,
    pub json: CatalogEntryJson,
}

fn check<T: PartialEq + std::fmt::Debug>(
    name: &str,
    field: &'static str,
    expected: T,
    actual: T,
) -> Result<(), CatalogError> {
    if expected == actual {
        Ok(())
    } else {
        Err(CatalogError::Mismatch {
            name: name.to_string(),
            field,
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
        })
    }
}

/// Invariants of a diagram in catalog form.
pub fn describe(d: &Diagram, limits: &Limits) -> Result<ExpectedJson, String> {
    let row = extreme_via_lando(d, Ring::Integers, limits).map_err(|e| e.to_string())?;
    Ok(ExpectedJson {
        crossings: d.crossing_count(),
        negative: d.negative(),
        sa_circles: d.resolve(&d.all_a_state()).map_err(|e| e.to_string())?.circle_count(),
        components: d.component_count(),
        lando: lando_graph(d).graph().to_json(),
        j_min: row.j,
        extreme: row.to_json().groups,
    })
}

fn validate(json: CatalogEntryJson, limits: &Limits) -> Result<CatalogEntry, CatalogError> {
    let name = json.name.clone();
    let invalid = |message: String| CatalogError::Invalid {
        name: name.clone(),
        message,
    };
    let diagram: Diagram = json.pd.parse().map_err(|e: crate::diagram::DiagramError| invalid(e.to_string()))?;
    let actual = describe(&diagram, limits).map_err(invalid)?;
    let e = &json.expected;
    check(&name, "crossings", e.crossings, actual.crossings)?;
    check(&name, "negative", e.negative, actual.negative)?;
    check(&name, "sa_circles", e.sa_circles, actual.sa_circles)?;
    check(&name, "components", e.components, actual.components)?;
    check(&name, "j_min", e.j_min, actual.j_min)?;
    let lando = Graph::from_json(&e.lando).map_err(|err| invalid(err.to_string()))?;
    let found = Graph::from_json(&actual.lando).expect("generated graph");
    if !lando.is_isomorphic(&found) {
        return Err(CatalogError::Mismatch {
            name,
            field: "lando",
            expected: format!("{:?}", e.lando),
            actual: format!("{:?}", actual.lando),
        });
    }
    let mut extreme = BTreeMap::new();
    for (&i, g) in &e.extreme {
        let g = AbelianGroup::parse_notation(g).map_err(|err| invalid(err.to_string()))?;
        extreme.insert(i, g);
    }
    let found: BTreeMap<i64, AbelianGroup> = actual
        .extreme
        .iter()
        .map(|(&i, g)| (i, AbelianGroup::parse_notation(g).expect("own notation")))
        .collect();
    check(&name, "extreme", &extreme, &found)?;
    Ok(CatalogEntry {
        name: json.name.clone(),
        description: json.description.clone(),
        reconstructed: json.reconstructed,
        diagram,
        lando,
        j_min: e.j_min,
        extreme,
        json,
    })
}

/// Parses and validates a catalog given as a JSON array.
pub fn load_catalog(text: &str, limits: &Limits) -> Result<Vec<CatalogEntry>, CatalogError> {
    let entries: Vec<CatalogEntryJson> =
        serde_json::from_str(text).map_err(|e| CatalogError::Json(e.to_string()))?;
    entries.into_iter().map(|e| validate(e, limits)).collect()
}

/// The built-in catalog, validated once.
pub fn catalog() -> Result<&'static [CatalogEntry], CatalogError> {
    static LOADED: OnceLock<Result<Vec<CatalogEntry>, CatalogError>> = OnceLock::new();
    LOADED
        .get_or_init(|| load_catalog(CATALOG, &Limits::default()))
        .as_deref()
        .map_err(Clone::clone)
}

pub fn catalog_entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    catalog()?
        .iter()
        .find(|e| e.name == name)
        .cloned()
        .ok_or_else(|| CatalogError::Unknown(name.to_string()))
}
