//! Pachner 2-3 and 3-2 moves as pure combinatorial operations.
//!
//! # Labeling convention
//!
//! For a 2-3 site, tetrahedron `A` owns the smaller face slot and `B` the
//! other. Write `a` for the apex of `A` (the vertex its face omits), `b` for
//! the apex of `B`, and `p1, p2, p3` for the vertices of the shared face, in
//! `A`'s labels, listed in increasing order and then with the last two
//! swapped if needed so that `(a, p1, p2, p3)` is an even ordering of `A`.
//! For the face `A123 = B230` this is simply `p = (1, 2, 3)`.
//!
//! The two tetrahedra are removed, the survivors keep their relative order,
//! and three new tetrahedra are appended as
//!
//! ```text
//! C = (a, b, p3, p1)    D = (a, b, p1, p2)    E = (a, b, p2, p3)
//! ```
//!
//! so the new central edge is edge `01` of each, the equatorial edge is
//! edge `23`, and the internal faces are `C013 = D012`, `D013 = E012` and
//! `E013 = C012`. With coherently oriented input every new tetrahedron is
//! again positively labeled.
//!
//! The 3-2 move rebuilds `A = (a, q0, q1, q2)` and `B = (q2, b, q0, q1)`
//! glued along `A123 = B230`, where `q0, q1, q2` are the equatorial
//! vertices in the order met walking around the edge, so it undoes the 2-3
//! move label-for-label when applied to its central edge.

use std::collections::HashMap;

use crate::perm::VertexPerm;
use crate::triangulation::{EdgeClass, FaceSlot, Gluing, Triangulation, TriangulationError};

/// An unordered pair of glued faces on two distinct tetrahedra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site23 {
    pub a: FaceSlot,
    pub b: FaceSlot,
}

/// Vertex labels of the bipyramid of a 2-3 site, in the labels of `A` and `B`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Frame23 {
    pub tet_a: usize,
    pub tet_b: usize,
    pub apex_a: u8,
    pub apex_b: u8,
    pub equator_a: [u8; 3],
    pub equator_b: [u8; 3],
}

/// Positions of the two apexes and the equatorial vertices inside each
/// of the three tetrahedra around a degree-3 edge.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Frame32 {
    pub tets: [usize; 3],
    /// Label of `a` in each tetrahedron.
    pub apex_a: [u8; 3],
    /// Label of `b` in each tetrahedron.
    pub apex_b: [u8; 3],
    /// Labels of `(q_{i-1}, q_i)` in tetrahedron `i`.
    pub equator: [[u8; 2]; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Corner {
    ApexA,
    ApexB,
    Equator(usize),
}

/// Corners of the new tetrahedra C, D, E in a 2-3 move.
const NEW_23: [[Corner; 4]; 3] = {
    use Corner::*;
    [
        [ApexA, ApexB, Equator(2), Equator(0)],
        [ApexA, ApexB, Equator(0), Equator(1)],
        [ApexA, ApexB, Equator(1), Equator(2)],
    ]
};

/// Corners of the new tetrahedra A, B in a 3-2 move.
const NEW_32: [[Corner; 4]; 2] = {
    use Corner::*;
    [
        [ApexA, Equator(0), Equator(1), Equator(2)],
        [Equator(2), ApexB, Equator(0), Equator(1)],
    ]
};

/// Equatorial ordering of face `face` so that `(face, p1, p2, p3)` is even.
fn face_order(face: u8) -> [u8; 3] {
    let mut rest = [0u8; 3];
    for (k, v) in (0..4u8).filter(|&v| v != face).enumerate() {
        rest[k] = v;
    }
    let full = VertexPerm::new([face, rest[0], rest[1], rest[2]]).unwrap();
    if !full.is_even() {
        rest.swap(1, 2);
    }
    rest
}

pub(crate) fn frame_23(tri: &Triangulation, site: Site23) -> Result<Frame23, TriangulationError> {
    if site.a.tet >= tri.size() || site.b.tet >= tri.size() {
        return Err(TriangulationError::TetOutOfRange {
            tet: site.a.tet.max(site.b.tet),
            n: tri.size(),
        });
    }
    if site.a.tet == site.b.tet {
        return Err(TriangulationError::SameTetrahedron {
            a: site.a,
            b: site.b,
        });
    }
    if tri.partner(site.a) != site.b {
        return Err(TriangulationError::NotGlued {
            a: site.a,
            b: site.b,
        });
    }
    let perm = tri.gluing(site.a.tet, site.a.face).perm;
    let equator_a = face_order(site.a.face);
    Ok(Frame23 {
        tet_a: site.a.tet,
        tet_b: site.b.tet,
        apex_a: site.a.face,
        apex_b: site.b.face,
        equator_a,
        equator_b: equator_a.map(|v| perm.apply(v)),
    })
}

/// How one face of a new tetrahedron is glued.
enum NewFace {
    /// To face `perm(face)` of new tetrahedron `tet` (local index).
    Internal { tet: usize, perm: VertexPerm },
    /// Replaces the old face `old`; `to_old` maps new labels to old labels.
    External { old: FaceSlot, to_old: VertexPerm },
}

/// Removes `removed`, compacts the survivors and appends `new_tets`.
fn retriangulate(
    tri: &Triangulation,
    removed: &[usize],
    new_tets: Vec<[NewFace; 4]>,
) -> Triangulation {
    let n = tri.size();
    let base = n - removed.len();
    let mut index = vec![usize::MAX; n];
    let mut next = 0;
    for (t, slot) in index.iter_mut().enumerate() {
        if !removed.contains(&t) {
            *slot = next;
            next += 1;
        }
    }
    let mut external: HashMap<FaceSlot, (usize, u8, VertexPerm)> = HashMap::new();
    for (x, faces) in new_tets.iter().enumerate() {
        for (j, nf) in faces.iter().enumerate() {
            if let NewFace::External { old, to_old } = nf {
                external.insert(*old, (base + x, j as u8, *to_old));
            }
        }
    }
    let blank = Gluing {
        tet: 0,
        perm: VertexPerm::IDENTITY,
    };
    let mut gluings = vec![[blank; 4]; base + new_tets.len()];
    for t in (0..n).filter(|t| !removed.contains(t)) {
        for face in 0..4u8 {
            let g = tri.gluing(t, face);
            // faces glued into the removed region are rewritten below
            gluings[index[t]][face as usize] = Gluing {
                tet: if removed.contains(&g.tet) {
                    usize::MAX
                } else {
                    index[g.tet]
                },
                perm: g.perm,
            };
        }
    }
    for (x, faces) in new_tets.iter().enumerate() {
        for (j, nf) in faces.iter().enumerate() {
            let glue = match *nf {
                NewFace::Internal { tet, perm } => Gluing {
                    tet: base + tet,
                    perm,
                },
                NewFace::External { old, to_old } => {
                    let g = tri.gluing(old.tet, old.face);
                    let target = FaceSlot::new(g.tet, g.perm.apply(old.face));
                    match external.get(&target) {
                        Some(&(y, _, to_old_y)) => Gluing {
                            tet: y,
                            perm: to_old_y.inverse().compose(g.perm).compose(to_old),
                        },
                        None => {
                            let perm = g.perm.compose(to_old);
                            let outside = index[g.tet];
                            gluings[outside][target.face as usize] = Gluing {
                                tet: base + x,
                                perm: perm.inverse(),
                            };
                            Gluing { tet: outside, perm }
                        }
                    }
                }
            };
            gluings[base + x][j] = glue;
        }
    }
    let out = Triangulation::from_raw(gluings);
    debug_assert!(
        out.validate().is_ok(),
        "move produced an invalid triangulation"
    );
    out
}

/// Internal gluings between new tetrahedra that share all but one corner.
fn internal_faces(corners: &[[Corner; 4]], x: usize, j: usize) -> Option<NewFace> {
    let mine = corners[x];
    let face: Vec<Corner> = (0..4).filter(|&i| i != j).map(|i| mine[i]).collect();
    for (y, theirs) in corners.iter().enumerate() {
        if y == x || !face.iter().all(|c| theirs.contains(c)) {
            continue;
        }
        let mut images = [0u8; 4];
        let their_extra = (0..4).find(|&i| !face.contains(&theirs[i])).unwrap();
        for i in 0..4 {
            images[i] = if i == j {
                their_extra as u8
            } else {
                theirs.iter().position(|c| *c == mine[i]).unwrap() as u8
            };
        }
        return Some(NewFace::Internal {
            tet: y,
            perm: VertexPerm::new(images).unwrap(),
        });
    }
    None
}

/// All 2-3 sites: glued face pairs on distinct tetrahedra.
pub fn enumerate_23_sites(tri: &Triangulation) -> Vec<Site23> {
    tri.face_pairs()
        .into_iter()
        .filter(|(a, b)| a.tet != b.tet)
        .map(|(a, b)| Site23 { a, b })
        .collect()
}

/// Replaces the two tetrahedra of `site` by three around a new central edge.
pub fn pachner_23(tri: &Triangulation, site: Site23) -> Result<Triangulation, TriangulationError> {
    let fr = frame_23(tri, site)?;
    let to_a = |c: Corner, missing: usize| match c {
        Corner::ApexA => fr.apex_a,
        Corner::Equator(m) => fr.equator_a[m],
        Corner::ApexB => fr.equator_a[missing],
    };
    let to_b = |c: Corner, missing: usize| match c {
        Corner::ApexB => fr.apex_b,
        Corner::Equator(m) => fr.equator_b[m],
        Corner::ApexA => fr.equator_b[missing],
    };
    let mut new_tets = Vec::with_capacity(3);
    for (x, corners) in NEW_23.iter().enumerate() {
        let missing = (0..3)
            .find(|m| !corners.contains(&Corner::Equator(*m)))
            .unwrap();
        let faces: [NewFace; 4] = std::array::from_fn(|j| match corners[j] {
            Corner::ApexB => NewFace::External {
                old: FaceSlot::new(fr.tet_a, fr.equator_a[missing]),
                to_old: VertexPerm::new(corners.map(|c| to_a(c, missing))).unwrap(),
            },
            Corner::ApexA => NewFace::External {
                old: FaceSlot::new(fr.tet_b, fr.equator_b[missing]),
                to_old: VertexPerm::new(corners.map(|c| to_b(c, missing))).unwrap(),
            },
            Corner::Equator(_) => internal_faces(&NEW_23, x, j).expect("shared face"),
        });
        new_tets.push(faces);
    }
    Ok(retriangulate(tri, &[fr.tet_a, fr.tet_b], new_tets))
}

/// The central edge created by [`pachner_23`]: edge `01` of the first new tetrahedron.
pub fn central_edge_after_23(result: &Triangulation) -> EdgeClass {
    result.edge_class_of(result.size() - 3, 0, 1)
}

/// The face pair created by [`pachner_32`]: `A123 = B230` on the two new tetrahedra.
pub fn site_after_32(result: &Triangulation) -> Site23 {
    let n = result.size();
    Site23 {
        a: FaceSlot::new(n - 2, 0),
        b: FaceSlot::new(n - 1, 1),
    }
}

pub(crate) fn frame_32(
    tri: &Triangulation,
    edge: &EdgeClass,
) -> Result<Frame32, TriangulationError> {
    let first = edge
        .members
        .first()
        .ok_or_else(|| TriangulationError::InvalidSite("empty edge class".into()))?;
    if first.tet >= tri.size() {
        return Err(TriangulationError::TetOutOfRange {
            tet: first.tet,
            n: tri.size(),
        });
    }
    let class = tri.walk_edge(first.tet, first.ends[0], first.ends[1]);
    if !class.valid {
        return Err(TriangulationError::InvalidSite(
            "edge is identified with itself in reverse".into(),
        ));
    }
    if class.degree() != 3 {
        return Err(TriangulationError::InvalidSite(format!(
            "edge has degree {}",
            class.degree()
        )));
    }
    let m = &class.members;
    if m[0].tet == m[1].tet || m[1].tet == m[2].tet || m[0].tet == m[2].tet {
        return Err(TriangulationError::InvalidSite(
            "the three tetrahedra around the edge are not distinct".into(),
        ));
    }
    let [u, v] = m[0].ends;
    let swap = !VertexPerm::new([u, v, m[0].entry, m[0].exit])
        .unwrap()
        .is_even();
    let (ai, bi) = if swap { (1, 0) } else { (0, 1) };
    Ok(Frame32 {
        tets: [m[0].tet, m[1].tet, m[2].tet],
        apex_a: [m[0].ends[ai], m[1].ends[ai], m[2].ends[ai]],
        apex_b: [m[0].ends[bi], m[1].ends[bi], m[2].ends[bi]],
        equator: [
            [m[0].entry, m[0].exit],
            [m[1].entry, m[1].exit],
            [m[2].entry, m[2].exit],
        ],
    })
}

/// Degree-3 edges around three distinct tetrahedra.
pub fn enumerate_32_sites(tri: &Triangulation) -> Vec<EdgeClass> {
    tri.edge_classes()
        .into_iter()
        .filter(|c| frame_32(tri, c).is_ok())
        .collect()
}

/// Replaces the three tetrahedra around a degree-3 edge by two.
pub fn pachner_32(
    tri: &Triangulation,
    edge: &EdgeClass,
) -> Result<Triangulation, TriangulationError> {
    let fr = frame_32(tri, edge)?;
    // label of corner `c` inside old tetrahedron `i`; `q_m` is the entry of
    // tetrahedron m+1 and the exit of tetrahedron m
    let label_in = |i: usize, c: Corner, missing: u8| -> u8 {
        match c {
            Corner::ApexA => fr.apex_a[i],
            Corner::ApexB => fr.apex_b[i],
            Corner::Equator(q) => {
                if q == i {
                    fr.equator[i][1]
                } else if (q + 1) % 3 == i {
                    fr.equator[i][0]
                } else {
                    missing
                }
            }
        }
    };
    let mut new_tets = Vec::with_capacity(2);
    for (x, corners) in NEW_32.iter().enumerate() {
        let faces: [NewFace; 4] = std::array::from_fn(|j| match corners[j] {
            Corner::Equator(q) => {
                // tetrahedron i holds q_{i-1} and q_i, so q_q is missing from i = q+2
                let i = (q + 2) % 3;
                let (old_face, missing) = if x == 0 {
                    (fr.apex_b[i], fr.apex_b[i])
                } else {
                    (fr.apex_a[i], fr.apex_a[i])
                };
                NewFace::External {
                    old: FaceSlot::new(fr.tets[i], old_face),
                    to_old: VertexPerm::new(corners.map(|c| label_in(i, c, missing))).unwrap(),
                }
            }
            _ => internal_faces(&NEW_32, x, j).expect("shared face"),
        });
        new_tets.push(faces);
    }
    Ok(retriangulate(tri, &fr.tets, new_tets))
}
