//! Built-in seed triangulations and the JSON gluing-table format.
//!
//! ```json
//! { "tets": 2,
//!   "gluings": [ {"tet": "A", "face": [1,2,3], "to": "B", "toFace": [2,3,0]} ],
//!   "shapes": ["1/2 + 1/2*sqrt(-3)", "1/2 + 1/2*sqrt(-3)"] }
//! ```
//!
//! Tetrahedron names map to indices in order of first appearance, unless
//! `tets` is given as an explicit list of names. Integer names are taken as
//! indices directly. `shapes` is optional.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quad::{ParseQuadError, QuadExt};
use crate::shapes::ShapeAssignment;
use crate::triangulation::{tet_name, GluingRow, Triangulation, TriangulationError};

const fn row(tet: usize, face: [u8; 3], to: usize, to_face: [u8; 3]) -> GluingRow {
    GluingRow {
        tet,
        face,
        to,
        to_face,
    }
}

/// Two-tetrahedron triangulation of the figure eight knot complement.
pub const FIG8_ROWS: [GluingRow; 8] = [
    row(0, [0, 1, 2], 1, [0, 1, 3]),
    row(0, [0, 1, 3], 1, [3, 2, 1]),
    row(0, [0, 2, 3], 1, [0, 2, 1]),
    row(0, [1, 2, 3], 1, [2, 3, 0]),
    row(1, [0, 1, 2], 0, [0, 3, 2]),
    row(1, [0, 1, 3], 0, [0, 1, 2]),
    row(1, [0, 2, 3], 0, [3, 1, 2]),
    row(1, [1, 2, 3], 0, [3, 1, 0]),
];

/// Two-tetrahedron triangulation of the figure eight sister (m003).
pub const SISTER_ROWS: [GluingRow; 8] = [
    row(0, [0, 1, 2], 1, [3, 0, 1]),
    row(0, [0, 1, 3], 1, [2, 3, 0]),
    row(0, [0, 2, 3], 1, [0, 2, 1]),
    row(0, [1, 2, 3], 1, [1, 3, 2]),
    row(1, [0, 1, 2], 0, [0, 3, 2]),
    row(1, [0, 1, 3], 0, [1, 2, 0]),
    row(1, [0, 2, 3], 0, [3, 0, 1]),
    row(1, [1, 2, 3], 0, [1, 3, 2]),
];

pub fn fig8() -> Triangulation {
    Triangulation::from_gluing_table(2, &FIG8_ROWS).expect("built-in table is valid")
}

pub fn fig8_sister() -> Triangulation {
    Triangulation::from_gluing_table(2, &SISTER_ROWS).expect("built-in table is valid")
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 2] = ["fig8", "fig8-sister"];

/// A triangulation together with (optional) exact shapes.
#[derive(Clone, Debug)]
pub struct Seed {
    pub name: String,
    pub triangulation: Triangulation,
    pub shapes: Option<ShapeAssignment>,
}

/// Both built-in seeds are glued from two regular ideal tetrahedra.
pub fn builtin(name: &str) -> Option<Seed> {
    let triangulation = match name {
        "fig8" => fig8(),
        "fig8-sister" => fig8_sister(),
        _ => return None,
    };
    let shapes = ShapeAssignment::uniform(QuadExt::regular(), triangulation.size());
    Some(Seed {
        name: name.to_string(),
        triangulation,
        shapes: Some(shapes),
    })
}

#[derive(Debug, Error)]
pub enum SeedError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed gluing JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error("bad shape {index}: {source}")]
    Shape {
        index: usize,
        source: ParseQuadError,
    },
    #[error("{0}")]
    Format(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TetRef {
    Index(usize),
    Name(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TetsField {
    Count(usize),
    Names(Vec<String>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GluingEntry {
    pub tet: TetRef,
    pub face: [u8; 3],
    pub to: TetRef,
    pub to_face: [u8; 3],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GluingFile {
    pub tets: TetsField,
    pub gluings: Vec<GluingEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shapes: Option<Vec<String>>,
}

impl GluingFile {
    /// Full table (both directions) of a triangulation, named A, B, C, ...
    pub fn from_triangulation(tri: &Triangulation, shapes: Option<&ShapeAssignment>) -> Self {
        let gluings = tri
            .to_rows()
            .into_iter()
            .map(|r| GluingEntry {
                tet: TetRef::Name(tet_name(r.tet)),
                face: r.face,
                to: TetRef::Name(tet_name(r.to)),
                to_face: r.to_face,
            })
            .collect();
        GluingFile {
            tets: TetsField::Count(tri.size()),
            gluings,
            shapes: shapes.map(|s| s.iter().map(|z| z.to_string()).collect()),
        }
    }

    /// Pretty-printed JSON, newline-terminated.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn into_seed(self, name: &str) -> Result<Seed, SeedError> {
        let mut index: HashMap<String, usize> = HashMap::new();
        let declared = match &self.tets {
            TetsField::Count(n) => *n,
            TetsField::Names(names) => {
                for (i, nm) in names.iter().enumerate() {
                    if index.insert(nm.clone(), i).is_some() {
                        return Err(SeedError::Format(format!(
                            "duplicate tetrahedron name {nm}"
                        )));
                    }
                }
                names.len()
            }
        };
        let fixed_names = matches!(self.tets, TetsField::Names(_));
        let mut resolve = |r: &TetRef| -> Result<usize, SeedError> {
            match r {
                TetRef::Index(i) => Ok(*i),
                TetRef::Name(nm) => {
                    if let Some(&i) = index.get(nm) {
                        Ok(i)
                    } else if fixed_names {
                        Err(SeedError::Format(format!("unknown tetrahedron {nm}")))
                    } else {
                        let i = index.len();
                        index.insert(nm.clone(), i);
                        Ok(i)
                    }
                }
            }
        };
        let mut rows = Vec::with_capacity(self.gluings.len());
        for g in &self.gluings {
            let tet = resolve(&g.tet)?;
            let to = resolve(&g.to)?;
            rows.push(GluingRow {
                tet,
                face: g.face,
                to,
                to_face: g.to_face,
            });
        }
        if index.len() > declared {
            return Err(SeedError::Format(format!(
                "{} tetrahedron names used but tets = {declared}",
                index.len()
            )));
        }
        let triangulation = Triangulation::from_gluing_table(declared, &rows)?;
        let shapes = match self.shapes {
            None => None,
            Some(list) => {
                if list.len() != declared {
                    return Err(SeedError::Format(format!(
                        "{} shapes given for {declared} tetrahedra",
                        list.len()
                    )));
                }
                let mut zs = Vec::with_capacity(list.len());
                for (i, s) in list.iter().enumerate() {
                    zs.push(
                        s.parse::<QuadExt>()
                            .map_err(|source| SeedError::Shape { index: i, source })?,
                    );
                }
                Some(ShapeAssignment::new(zs).map_err(|e| SeedError::Format(e.to_string()))?)
            }
        };
        Ok(Seed {
            name: name.to_string(),
            triangulation,
            shapes,
        })
    }
}

pub fn parse_seed_json(name: &str, text: &str) -> Result<Seed, SeedError> {
    let file: GluingFile = serde_json::from_str(text)?;
    file.into_seed(name)
}

pub fn load_seed_file(path: &Path) -> Result<Seed, SeedError> {
    let text = std::fs::read_to_string(path).map_err(|source| SeedError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "seed".into());
    parse_seed_json(&name, &text)
}
