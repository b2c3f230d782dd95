//! Combinatorial ideal triangulations: tetrahedra with faces glued in pairs.
//!
//! Vertices of each tetrahedron carry the labels `0..=3`, and a face is named
//! by the vertex it omits. A gluing of face `f` of tetrahedron `t` records the
//! target tetrahedron and a [`VertexPerm`] `p`; the target face is `p(f)` and
//! the vertices of face `f` are identified with their images under `p`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::perm::VertexPerm;

/// A face of one tetrahedron, named by the vertex it omits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceSlot {
    pub tet: usize,
    pub face: u8,
}

impl FaceSlot {
    pub fn new(tet: usize, face: u8) -> Self {
        FaceSlot { tet, face }
    }
}

impl fmt::Display for FaceSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts: String = (0..4u8)
            .filter(|&v| v != self.face)
            .map(|v| char::from(b'0' + v))
            .collect();
        write!(f, "{}{}", tet_name(self.tet), verts)
    }
}

/// Letter name used in messages: 0 → A, 1 → B, ..., 26 → T26.
pub fn tet_name(tet: usize) -> String {
    if tet < 26 {
        char::from(b'A' + tet as u8).to_string()
    } else {
        format!("T{tet}")
    }
}

/// Where one face goes: the partner tetrahedron and the vertex identification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: VertexPerm,
}

/// One row of a gluing table: `tet(face) = to(to_face)` with ordered triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GluingRow {
    pub tet: usize,
    pub face: [u8; 3],
    pub to: usize,
    pub to_face: [u8; 3],
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("triangulation has no tetrahedra")]
    Empty,
    #[error("tetrahedron index {tet} out of range for {n} tetrahedra")]
    TetOutOfRange { tet: usize, n: usize },
    #[error("face triple {triple:?} is not an ordered 3-subset of {{0,1,2,3}}")]
    InvalidFaceTriple { triple: [u8; 3] },
    #[error("face {slot} is glued inconsistently from its two sides")]
    NonInvolutive { slot: FaceSlot },
    #[error("face {slot} is not glued to anything")]
    UnpairedFace { slot: FaceSlot },
    #[error("face {slot} is paired with more than one face")]
    DuplicatePairing { slot: FaceSlot },
    #[error("faces {a} and {b} lie on the same tetrahedron")]
    SameTetrahedron { a: FaceSlot, b: FaceSlot },
    #[error("faces {a} and {b} are not glued to each other")]
    NotGlued { a: FaceSlot, b: FaceSlot },
    #[error("invalid 3-2 site: {0}")]
    InvalidSite(String),
    #[error("triangulation is not orientable")]
    NotOrientable,
}

/// A closed ideal triangulation: every face of every tetrahedron is glued
/// to exactly one other face.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    gluings: Vec<[Gluing; 4]>,
}

/// One tetrahedron-edge inside an edge class, oriented along the cycle.
///
/// `ends` are the two endpoint labels, matched consistently from one member
/// to the next. `entry` is the remaining vertex shared with the previous
/// member and `exit` the one shared with the next member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeEmbedding {
    pub tet: usize,
    pub ends: [u8; 2],
    pub entry: u8,
    pub exit: u8,
}

impl EdgeEmbedding {
    /// The unordered vertex pair, smallest first.
    pub fn pair(&self) -> (u8, u8) {
        let [u, v] = self.ends;
        (u.min(v), u.max(v))
    }
}

/// An equivalence class of tetrahedron edges, as the cycle met when walking
/// around the edge through the face gluings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeClass {
    pub members: Vec<EdgeEmbedding>,
    /// `false` when the edge is identified with itself in reverse.
    pub valid: bool,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, tet: usize, u: u8, v: u8) -> bool {
        let key = (u.min(v), u.max(v));
        self.members.iter().any(|m| m.tet == tet && m.pair() == key)
    }
}

/// An ideal vertex class with the Euler characteristic of its link surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspClass {
    pub members: Vec<(usize, u8)>,
    pub link_euler_characteristic: i64,
}

/// The six edges of a tetrahedron as vertex pairs.
pub const EDGES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub(crate) fn edge_index(u: u8, v: u8) -> usize {
    let (a, b) = (u.min(v), u.max(v));
    EDGES
        .iter()
        .position(|&e| e == (a, b))
        .expect("distinct vertices")
}

fn other_two(u: u8, v: u8) -> (u8, u8) {
    let mut rest = (0..4u8).filter(|&w| w != u && w != v);
    (rest.next().unwrap(), rest.next().unwrap())
}

impl Triangulation {
    /// Validates a full gluing array: `gluings[t][f]` describes face `f` of tetrahedron `t`.
    pub fn from_gluings(gluings: Vec<[Gluing; 4]>) -> Result<Self, TriangulationError> {
        let tri = Triangulation { gluings };
        tri.validate()?;
        Ok(tri)
    }

    /// Builds a triangulation from table rows. Rows may list one or both
    /// directions of each pairing; repeated rows must agree.
    pub fn from_gluing_table(n: usize, rows: &[GluingRow]) -> Result<Self, TriangulationError> {
        if n == 0 {
            return Err(TriangulationError::Empty);
        }
        let mut table: BTreeMap<FaceSlot, Gluing> = BTreeMap::new();
        let mut insert = |slot: FaceSlot, g: Gluing| -> Result<(), TriangulationError> {
            match table.get(&slot) {
                None => {
                    table.insert(slot, g);
                    Ok(())
                }
                Some(existing) if *existing == g => Ok(()),
                Some(existing) => {
                    let partner = FaceSlot::new(g.tet, g.perm.apply(slot.face));
                    let old_partner = FaceSlot::new(existing.tet, existing.perm.apply(slot.face));
                    if partner == old_partner {
                        Err(TriangulationError::NonInvolutive { slot })
                    } else {
                        Err(TriangulationError::DuplicatePairing { slot })
                    }
                }
            }
        };
        for row in rows {
            for &t in &[row.tet, row.to] {
                if t >= n {
                    return Err(TriangulationError::TetOutOfRange { tet: t, n });
                }
            }
            let perm = VertexPerm::from_face_triples(row.face, row.to_face).ok_or(
                TriangulationError::InvalidFaceTriple {
                    triple: if VertexPerm::from_face_triples(row.face, row.face).is_none() {
                        row.face
                    } else {
                        row.to_face
                    },
                },
            )?;
            let from = FaceSlot::new(row.tet, (0..4u8).find(|v| !row.face.contains(v)).unwrap());
            let to = FaceSlot::new(row.to, perm.apply(from.face));
            if from == to {
                return Err(TriangulationError::NonInvolutive { slot: from });
            }
            insert(from, Gluing { tet: row.to, perm })?;
            insert(
                to,
                Gluing {
                    tet: row.tet,
                    perm: perm.inverse(),
                },
            )?;
        }
        let mut gluings = Vec::with_capacity(n);
        for tet in 0..n {
            let mut faces = [Gluing {
                tet: 0,
                perm: VertexPerm::IDENTITY,
            }; 4];
            for face in 0..4u8 {
                let slot = FaceSlot::new(tet, face);
                faces[face as usize] = *table
                    .get(&slot)
                    .ok_or(TriangulationError::UnpairedFace { slot })?;
            }
            gluings.push(faces);
        }
        Triangulation::from_gluings(gluings)
    }

    /// Checks range, the involution property and that no face is glued to itself.
    pub fn validate(&self) -> Result<(), TriangulationError> {
        let n = self.gluings.len();
        if n == 0 {
            return Err(TriangulationError::Empty);
        }
        for (tet, faces) in self.gluings.iter().enumerate() {
            for face in 0..4u8 {
                let slot = FaceSlot::new(tet, face);
                let g = faces[face as usize];
                if g.tet >= n {
                    return Err(TriangulationError::TetOutOfRange { tet: g.tet, n });
                }
                let target = FaceSlot::new(g.tet, g.perm.apply(face));
                if target == slot {
                    return Err(TriangulationError::NonInvolutive { slot });
                }
                let back = self.gluings[target.tet][target.face as usize];
                if back.tet != tet || back.perm != g.perm.inverse() {
                    return Err(TriangulationError::NonInvolutive { slot });
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Gluing {
        self.gluings[tet][face as usize]
    }

    /// The face glued to `slot`.
    pub fn partner(&self, slot: FaceSlot) -> FaceSlot {
        let g = self.gluing(slot.tet, slot.face);
        FaceSlot::new(g.tet, g.perm.apply(slot.face))
    }

    pub fn gluings(&self) -> &[[Gluing; 4]] {
        &self.gluings
    }

    /// Each glued pair of faces once, smaller slot first.
    pub fn face_pairs(&self) -> Vec<(FaceSlot, FaceSlot)> {
        let mut out = Vec::with_capacity(2 * self.size());
        for tet in 0..self.size() {
            for face in 0..4u8 {
                let a = FaceSlot::new(tet, face);
                let b = self.partner(a);
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.size()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(t) = queue.pop_front() {
            for g in &self.gluings[t] {
                if !seen[g.tet] {
                    seen[g.tet] = true;
                    count += 1;
                    queue.push_back(g.tet);
                }
            }
        }
        count == self.size()
    }

    /// Walks once around the edge `(u, v)` of `tet`, leaving first through
    /// the face that omits the smaller of the two remaining vertices.
    pub(crate) fn walk_edge(&self, tet: usize, u: u8, v: u8) -> EdgeClass {
        let (a, b) = other_two(u, v);
        let start = EdgeEmbedding {
            tet,
            ends: [u, v],
            entry: a,
            exit: b,
        };
        let mut members = vec![start];
        let mut cur = start;
        let mut valid = true;
        loop {
            // leave through the face containing the edge and `exit`
            let g = self.gluing(cur.tet, cur.entry);
            let next = EdgeEmbedding {
                tet: g.tet,
                ends: [g.perm.apply(cur.ends[0]), g.perm.apply(cur.ends[1])],
                entry: g.perm.apply(cur.exit),
                exit: g.perm.apply(cur.entry),
            };
            if next == start {
                break;
            }
            if members
                .iter()
                .any(|m| m.tet == next.tet && m.pair() == next.pair())
            {
                // the walk came back to a visited tetrahedron-edge in a different
                // state: the edge is identified with itself reversed
                valid = false;
                break;
            }
            members.push(next);
            cur = next;
        }
        EdgeClass { members, valid }
    }

    /// All edge classes, each starting from its lowest (tet, edge) member.
    pub fn edge_classes(&self) -> Vec<EdgeClass> {
        let n = self.size();
        let mut seen = vec![[false; 6]; n];
        let mut out = Vec::new();
        for tet in 0..n {
            for (e, &(u, v)) in EDGES.iter().enumerate() {
                if seen[tet][e] {
                    continue;
                }
                let class = self.walk_edge(tet, u, v);
                for m in &class.members {
                    seen[m.tet][edge_index(m.ends[0], m.ends[1])] = true;
                }
                out.push(class);
            }
        }
        out
    }

    /// The edge class containing edge `(u, v)` of `tet`.
    pub fn edge_class_of(&self, tet: usize, u: u8, v: u8) -> EdgeClass {
        self.edge_classes()
            .into_iter()
            .find(|c| c.contains(tet, u, v))
            .expect("every tetrahedron-edge lies in some class")
    }

    /// Ideal vertex classes with the Euler characteristic of each link.
    pub fn vertex_links(&self) -> Vec<CuspClass> {
        let n = self.size();
        let mut parent: Vec<usize> = (0..4 * n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for tet in 0..n {
            for face in 0..4u8 {
                let g = self.gluing(tet, face);
                for v in (0..4u8).filter(|&v| v != face) {
                    let a = find(&mut parent, 4 * tet + v as usize);
                    let b = find(&mut parent, 4 * g.tet + g.perm.apply(v) as usize);
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<(usize, u8)>> = BTreeMap::new();
        for tet in 0..n {
            for v in 0..4u8 {
                let root = find(&mut parent, 4 * tet + v as usize);
                classes.entry(root).or_default().push((tet, v));
            }
        }
        // link vertices are edge-class ends
        let mut link_vertices: BTreeMap<usize, i64> = BTreeMap::new();
        for class in self.edge_classes() {
            let m = class.members[0];
            for &end in &m.ends {
                let root = find(&mut parent, 4 * m.tet + end as usize);
                *link_vertices.entry(root).or_default() += 1;
            }
        }
        classes
            .into_iter()
            .map(|(root, members)| {
                let triangles = members.len() as i64;
                // each link triangle has three sides, glued in pairs
                let edges = 3 * triangles / 2;
                let vertices = link_vertices.get(&root).copied().unwrap_or(0);
                CuspClass {
                    members,
                    link_euler_characteristic: vertices - edges + triangles,
                }
            })
            .collect()
    }

    /// Consistent orientation signs, tetrahedron 0 fixed to +1.
    ///
    /// Two tetrahedra are coherently oriented across a gluing when the
    /// gluing permutation, read in their sign-adjusted labelings, is odd.
    pub fn orient(&self) -> Result<Vec<i8>, TriangulationError> {
        let n = self.size();
        let mut sign = vec![0i8; n];
        for root in 0..n {
            if sign[root] != 0 {
                continue;
            }
            sign[root] = 1;
            let mut queue = VecDeque::from([root]);
            while let Some(t) = queue.pop_front() {
                for g in &self.gluings[t] {
                    let want = -sign[t] * g.perm.sign();
                    if sign[g.tet] == 0 {
                        sign[g.tet] = want;
                        queue.push_back(g.tet);
                    } else if sign[g.tet] != want {
                        return Err(TriangulationError::NotOrientable);
                    }
                }
            }
        }
        Ok(sign)
    }

    /// `true` when every gluing permutation is odd, i.e. every tetrahedron
    /// is positively oriented in its own labeling.
    pub fn is_coherently_labeled(&self) -> bool {
        self.gluings
            .iter()
            .all(|faces| faces.iter().all(|g| !g.perm.is_even()))
    }

    /// Renames tetrahedron `t` to `tet_map[t]` and its vertex `v` to
    /// `vertex_maps[t](v)`.
    ///
    /// # Panics
    ///
    /// If `tet_map` is not a permutation of `0..n` or the lengths differ.
    pub fn relabel(&self, tet_map: &[usize], vertex_maps: &[VertexPerm]) -> Triangulation {
        let n = self.size();
        assert_eq!(tet_map.len(), n, "tet_map length");
        assert_eq!(vertex_maps.len(), n, "vertex_maps length");
        let mut hit = vec![false; n];
        for &t in tet_map {
            assert!(t < n && !hit[t], "tet_map is not a permutation");
            hit[t] = true;
        }
        let blank = Gluing {
            tet: 0,
            perm: VertexPerm::IDENTITY,
        };
        let mut gluings = vec![[blank; 4]; n];
        for (tet, faces) in self.gluings.iter().enumerate() {
            let sigma = vertex_maps[tet];
            for face in 0..4u8 {
                let g = faces[face as usize];
                let perm = vertex_maps[g.tet].compose(g.perm).compose(sigma.inverse());
                gluings[tet_map[tet]][sigma.apply(face) as usize] = Gluing {
                    tet: tet_map[g.tet],
                    perm,
                };
            }
        }
        Triangulation { gluings }
    }

    /// Rows of the gluing table in the layout of the printed tables:
    /// one row per face, with the vertex triple in increasing order.
    pub fn to_rows(&self) -> Vec<GluingRow> {
        let mut rows = Vec::with_capacity(4 * self.size());
        for tet in 0..self.size() {
            for face in (0..4u8).rev() {
                let g = self.gluing(tet, face);
                let mut triple = [0u8; 3];
                for (k, v) in (0..4u8).filter(|&v| v != face).enumerate() {
                    triple[k] = v;
                }
                rows.push(GluingRow {
                    tet,
                    face: triple,
                    to: g.tet,
                    to_face: triple.map(|v| g.perm.apply(v)),
                });
            }
        }
        rows
    }

    pub(crate) fn from_raw(gluings: Vec<[Gluing; 4]>) -> Triangulation {
        Triangulation { gluings }
    }
}
