//! Breadth-first exploration of the Pachner graph with exact shapes.
//!
//! Nodes are isomorphism classes keyed by [`CanonicalSignature`]. Shapes are
//! carried along every move, so each node is classified exactly. A move
//! whose new parameter lands on 0 or 1 marks its target as degenerate; such
//! nodes are recorded but never expanded.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::canon::{canonical_signature_with, CanonError, CanonicalSignature, IsoMode};
use crate::family::TnFamily;
use crate::moves::{enumerate_23_sites, enumerate_32_sites, pachner_23, pachner_32};
use crate::quad::QuadExt;
use crate::shapes::{
    check_edge_consistency, classify, propagate_23, propagate_32, Classification, ShapeAssignment,
    ShapeError,
};
use crate::triangulation::Triangulation;
use crate::volume::volume_total;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ExploreError {
    #[error("max_tets must be at least 2, got {0}")]
    BadPolicy(usize),
    #[error("seed has {shapes} shapes for {tets} tetrahedra")]
    ShapeCount { shapes: usize, tets: usize },
    #[error("seed shapes do not satisfy the edge equations")]
    InconsistentSeed,
    #[error("seed labeling is not coherently oriented (some gluing permutation is even)")]
    NotCoherentlyLabeled,
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Canon(#[from] CanonError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExplorePolicy {
    pub max_depth: usize,
    pub max_tets: usize,
    /// Expand only geometric nodes; other neighbors are still recorded.
    pub geometric_only: bool,
    pub include_32: bool,
    pub iso_mode: IsoMode,
}

impl Default for ExplorePolicy {
    fn default() -> Self {
        ExplorePolicy {
            max_depth: usize::MAX,
            max_tets: usize::MAX,
            geometric_only: true,
            include_32: false,
            iso_mode: IsoMode::All,
        }
    }
}

impl ExplorePolicy {
    pub fn with_depth(max_depth: usize) -> Self {
        ExplorePolicy {
            max_depth,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    TwoThree,
    ThreeTwo,
}

impl MoveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::TwoThree => "2-3",
            MoveKind::ThreeTwo => "3-2",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassifiedNode {
    /// Report name, e.g. `T_{4}` or `N_{5,2}`.
    pub name: String,
    pub signature: CanonicalSignature,
    pub tet_count: usize,
    /// `None` for degenerate nodes.
    pub classification: Option<Classification>,
    /// Labeling-independent shape summary, one entry per tetrahedron.
    pub shape_multiset: Vec<QuadExt>,
    pub depth: usize,
    pub expanded: bool,
    /// A representative labeled triangulation and its shapes.
    pub triangulation: Triangulation,
    pub shapes: Option<ShapeAssignment>,
    pub volume: Option<f64>,
}

impl ClassifiedNode {
    pub fn is_degenerate(&self) -> bool {
        self.classification.is_none()
    }

    /// `G`, `N`, `F` or `D` (degenerate).
    pub fn letter(&self) -> char {
        self.classification.map_or('D', Classification::letter)
    }
}

/// Directed multigraph of moves between isomorphism classes.
#[derive(Clone, Debug, Default)]
pub struct PachnerGraph {
    /// Sorted by (depth, signature); index 0 is the seed.
    pub nodes: Vec<ClassifiedNode>,
    /// (source, target, kind) → number of sites.
    pub edges: BTreeMap<(usize, usize, MoveKind), usize>,
    /// Signatures reached twice with different shape multisets.
    pub shape_conflicts: Vec<CanonicalSignature>,
}

impl PachnerGraph {
    pub fn node_index(&self, sig: &CanonicalSignature) -> Option<usize> {
        self.nodes.iter().position(|n| &n.signature == sig)
    }

    pub fn node_by_name(&self, name: &str) -> Option<&ClassifiedNode> {
        self.nodes.iter().find(|n| n.name == name)
    }

    pub fn seed(&self) -> Option<&ClassifiedNode> {
        self.nodes.first()
    }

    /// Outgoing edges of `node` as (target, kind, multiplicity).
    pub fn neighbors(&self, node: usize) -> Vec<(usize, MoveKind, usize)> {
        self.edges
            .iter()
            .filter(|((s, _, _), _)| *s == node)
            .map(|(&(_, t, k), &m)| (t, k, m))
            .collect()
    }

    /// Total number of 2-3 sites leaving `node`.
    pub fn out_degree_23(&self, node: usize) -> usize {
        self.neighbors(node)
            .into_iter()
            .filter(|(_, k, _)| *k == MoveKind::TwoThree)
            .map(|(_, _, m)| m)
            .sum()
    }
}

struct Pending {
    signature: CanonicalSignature,
    depth: usize,
    expanded: bool,
    triangulation: Triangulation,
    shapes: Option<ShapeAssignment>,
    multiset: Vec<QuadExt>,
}

fn classify_opt(shapes: &Option<ShapeAssignment>) -> Option<Classification> {
    shapes.as_ref().map(classify)
}

/// Explores the Pachner graph from `seed` under `policy`.
pub fn explore(
    seed: &Triangulation,
    seed_shapes: &ShapeAssignment,
    policy: ExplorePolicy,
) -> Result<PachnerGraph, ExploreError> {
    if policy.max_tets < 2 {
        return Err(ExploreError::BadPolicy(policy.max_tets));
    }
    if seed_shapes.len() != seed.size() {
        return Err(ExploreError::ShapeCount {
            shapes: seed_shapes.len(),
            tets: seed.size(),
        });
    }
    if !seed.is_coherently_labeled() {
        return Err(ExploreError::NotCoherentlyLabeled);
    }
    match check_edge_consistency(seed, seed_shapes) {
        Ok(r) if r.all_products_one() => {}
        _ => return Err(ExploreError::InconsistentSeed),
    }
    let mirror = policy.iso_mode == IsoMode::All;
    let seed_sig = canonical_signature_with(seed, policy.iso_mode)?;
    let mut table: HashMap<CanonicalSignature, Pending> = HashMap::new();
    let mut edges: BTreeMap<(CanonicalSignature, CanonicalSignature, MoveKind), usize> =
        BTreeMap::new();
    let mut conflicts = Vec::new();
    table.insert(
        seed_sig.clone(),
        Pending {
            signature: seed_sig.clone(),
            depth: 0,
            expanded: false,
            triangulation: seed.clone(),
            shapes: Some(seed_shapes.clone()),
            multiset: seed_shapes.canonical_multiset(mirror),
        },
    );
    let mut level = vec![seed_sig];
    let mut depth = 0;
    while !level.is_empty() && depth < policy.max_depth {
        let mut next_level = Vec::new();
        level.sort();
        for sig in &level {
            let node = &table[sig];
            let expandable = match classify_opt(&node.shapes) {
                None => false,
                Some(c) => !policy.geometric_only || c == Classification::Geometric,
            };
            if !expandable {
                continue;
            }
            let tri = node.triangulation.clone();
            let shapes = node.shapes.clone().expect("classified node has shapes");
            let mut results: Vec<(Triangulation, Option<ShapeAssignment>, MoveKind)> = Vec::new();
            if tri.size() < policy.max_tets {
                for site in enumerate_23_sites(&tri) {
                    let t = pachner_23(&tri, site).expect("enumerated site");
                    let s = match propagate_23(&tri, &shapes, site) {
                        Ok(s) => Some(s),
                        Err(ShapeError::DegenerateShape { .. }) => None,
                        Err(e) => return Err(e.into()),
                    };
                    results.push((t, s, MoveKind::TwoThree));
                }
            }
            if policy.include_32 && tri.size() > 1 {
                for edge in enumerate_32_sites(&tri) {
                    let t = pachner_32(&tri, &edge).expect("enumerated site");
                    let s = match propagate_32(&tri, &shapes, &edge) {
                        Ok(s) => Some(s),
                        Err(ShapeError::DegenerateShape { .. }) => None,
                        Err(e) => return Err(e.into()),
                    };
                    results.push((t, s, MoveKind::ThreeTwo));
                }
            }
            table.get_mut(sig).unwrap().expanded = true;
            for (t, s, kind) in results {
                let target = canonical_signature_with(&t, policy.iso_mode)?;
                *edges
                    .entry((sig.clone(), target.clone(), kind))
                    .or_default() += 1;
                let multiset = s
                    .as_ref()
                    .map(|s| s.canonical_multiset(mirror))
                    .unwrap_or_default();
                match table.get_mut(&target) {
                    Some(existing) => {
                        if existing.shapes.is_none() && s.is_some() && !existing.expanded {
                            existing.triangulation = t;
                            existing.shapes = s;
                            existing.multiset = multiset;
                        } else if s.is_some()
                            && existing.shapes.is_some()
                            && existing.multiset != multiset
                        {
                            conflicts.push(target.clone());
                        }
                    }
                    None => {
                        table.insert(
                            target.clone(),
                            Pending {
                                signature: target.clone(),
                                depth: depth + 1,
                                expanded: false,
                                triangulation: t,
                                shapes: s,
                                multiset,
                            },
                        );
                        next_level.push(target);
                    }
                }
            }
        }
        level = next_level;
        depth += 1;
    }
    let mut pending: Vec<Pending> = table.into_values().collect();
    pending.sort_by(|a, b| (a.depth, &a.signature).cmp(&(b.depth, &b.signature)));
    let index: HashMap<CanonicalSignature, usize> = pending
        .iter()
        .enumerate()
        .map(|(i, p)| (p.signature.clone(), i))
        .collect();
    let mut nodes: Vec<ClassifiedNode> = pending
        .into_iter()
        .map(|p| {
            let classification = classify_opt(&p.shapes);
            let volume = p.shapes.as_ref().map(volume_total);
            ClassifiedNode {
                name: String::new(),
                tet_count: p.triangulation.size(),
                signature: p.signature,
                classification,
                shape_multiset: p.multiset,
                depth: p.depth,
                expanded: p.expanded,
                triangulation: p.triangulation,
                shapes: p.shapes,
                volume,
            }
        })
        .collect();
    assign_names(&mut nodes, policy.iso_mode);
    let edges = edges
        .into_iter()
        .map(|((s, t, k), m)| ((index[&s], index[&t], k), m))
        .collect();
    conflicts.sort();
    conflicts.dedup();
    Ok(PachnerGraph {
        nodes,
        edges,
        shape_conflicts: conflicts,
    })
}

/// `T_{n}` for members of the figure eight family, otherwise the class
/// letter with (tetrahedra, encounter index).
fn assign_names(nodes: &mut [ClassifiedNode], mode: IsoMode) {
    let max_size = nodes.iter().map(|n| n.tet_count).max().unwrap_or(0);
    let family: HashMap<CanonicalSignature, usize> = if max_size >= 2 {
        TnFamily::new()
            .take(max_size - 1)
            .filter_map(|(t, _)| {
                let n = t.size();
                canonical_signature_with(&t, mode).ok().map(|s| (s, n))
            })
            .collect()
    } else {
        HashMap::new()
    };
    let mut counters: HashMap<(char, usize), usize> = HashMap::new();
    for node in nodes.iter_mut() {
        node.name = match family.get(&node.signature) {
            Some(n) => format!("T_{{{n}}}"),
            None => {
                let letter = node.letter();
                let c = counters.entry((letter, node.tet_count)).or_default();
                *c += 1;
                format!("{letter}_{{{},{}}}", node.tet_count, c)
            }
        };
    }
}
