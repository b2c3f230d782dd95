//! Canonical signatures of triangulations up to relabeling.
//!
//! For every starting tetrahedron and every labeling of its vertices, the
//! triangulation is relabeled by breadth-first search: tetrahedra are
//! numbered in the order they are first reached (scanning faces `0..4` of
//! each numbered tetrahedron in turn), and each newly reached tetrahedron is
//! labeled so that the gluing that reached it reads as the identity. The
//! signature is the lexicographically least encoding over all starts.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::perm::{VertexPerm, ALL_PERMS};
use crate::triangulation::Triangulation;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CanonError {
    #[error("triangulation is disconnected")]
    Disconnected,
    #[error("triangulation is not orientable")]
    NotOrientable,
}

/// Which relabelings count as isomorphisms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum IsoMode {
    /// All 24 vertex permutations; mirror images are identified.
    #[default]
    All,
    /// Only relabelings preserving the orientation of [`Triangulation::orient`].
    OrientationPreserving,
}

/// Relabeling-invariant key for an isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalSignature {
    bytes: Vec<u8>,
}

impl CanonicalSignature {
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Lowercase base-36 rendering.
    pub fn to_base36(&self) -> String {
        let mut prefixed = Vec::with_capacity(self.bytes.len() + 1);
        prefixed.push(1u8);
        prefixed.extend_from_slice(&self.bytes);
        BigUint::from_bytes_be(&prefixed).to_str_radix(36)
    }
}

impl fmt::Display for CanonicalSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_base36())
    }
}

/// Encoding of the breadth-first relabeling from `start` with `labels`
/// (old vertex → new vertex). Every number is written big-endian in 4 bytes
/// so byte order agrees with numeric order.
fn encode_from(tri: &Triangulation, start: usize, labels: VertexPerm) -> Vec<u8> {
    let n = tri.size();
    let mut new_index = vec![usize::MAX; n];
    let mut relabel = vec![VertexPerm::IDENTITY; n];
    let mut order = Vec::with_capacity(n);
    new_index[start] = 0;
    relabel[start] = labels;
    order.push(start);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::with_capacity(4 + 32 * n);
    out.extend_from_slice(&(n as u32).to_be_bytes());
    while let Some(t) = queue.pop_front() {
        let sigma = relabel[t];
        let inv = sigma.inverse();
        for new_face in 0..4u8 {
            let old_face = inv.apply(new_face);
            let g = tri.gluing(t, old_face);
            if new_index[g.tet] == usize::MAX {
                new_index[g.tet] = order.len();
                order.push(g.tet);
                relabel[g.tet] = sigma.compose(g.perm.inverse());
                queue.push_back(g.tet);
            }
            let perm = relabel[g.tet].compose(g.perm).compose(inv);
            out.extend_from_slice(&(new_index[g.tet] as u32).to_be_bytes());
            out.push(perm.index() as u8);
        }
    }
    out
}

fn allowed_starts(
    tri: &Triangulation,
    mode: IsoMode,
) -> Result<Vec<(usize, VertexPerm)>, CanonError> {
    let signs = match mode {
        IsoMode::All => None,
        IsoMode::OrientationPreserving => {
            Some(tri.orient().map_err(|_| CanonError::NotOrientable)?)
        }
    };
    let mut starts = Vec::with_capacity(24 * tri.size());
    for t in 0..tri.size() {
        for p in ALL_PERMS {
            let ok = match &signs {
                None => true,
                Some(s) => p.is_even() == (s[t] > 0),
            };
            if ok {
                starts.push((t, p));
            }
        }
    }
    Ok(starts)
}

pub fn canonical_signature_with(
    tri: &Triangulation,
    mode: IsoMode,
) -> Result<CanonicalSignature, CanonError> {
    if !tri.is_connected() {
        return Err(CanonError::Disconnected);
    }
    let bytes = allowed_starts(tri, mode)?
        .into_iter()
        .map(|(t, p)| encode_from(tri, t, p))
        .min()
        .expect("at least one tetrahedron");
    Ok(CanonicalSignature { bytes })
}

/// Signature under [`IsoMode::All`].
pub fn canonical_signature(tri: &Triangulation) -> Result<CanonicalSignature, CanonError> {
    canonical_signature_with(tri, IsoMode::All)
}

/// An explicit isomorphism: tetrahedron `t` of the source goes to
/// `tet_map[t]` with vertex map `vertex_maps[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub tet_map: Vec<usize>,
    pub vertex_maps: Vec<VertexPerm>,
}

impl Isomorphism {
    pub fn preserves_labeling_orientation(&self) -> bool {
        self.vertex_maps.iter().all(|p| p.is_even())
    }
}

/// Tries to extend "tetrahedron 0 of `a` goes to `b_start` via `sigma`" to
/// a full isomorphism by following gluings.
fn extend(
    a: &Triangulation,
    b: &Triangulation,
    b_start: usize,
    sigma: VertexPerm,
) -> Option<Isomorphism> {
    let n = a.size();
    let mut tet_map = vec![usize::MAX; n];
    let mut maps = vec![VertexPerm::IDENTITY; n];
    let mut used = vec![false; n];
    tet_map[0] = b_start;
    maps[0] = sigma;
    used[b_start] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for face in 0..4u8 {
            let ga = a.gluing(t, face);
            let gb = b.gluing(tet_map[t], maps[t].apply(face));
            // the map on the neighbor forced by this gluing
            let forced = gb.perm.compose(maps[t]).compose(ga.perm.inverse());
            if tet_map[ga.tet] == usize::MAX {
                if used[gb.tet] {
                    return None;
                }
                tet_map[ga.tet] = gb.tet;
                maps[ga.tet] = forced;
                used[gb.tet] = true;
                queue.push_back(ga.tet);
            } else if tet_map[ga.tet] != gb.tet || maps[ga.tet] != forced {
                return None;
            }
        }
    }
    if tet_map.contains(&usize::MAX) {
        return None;
    }
    Some(Isomorphism {
        tet_map,
        vertex_maps: maps,
    })
}

/// Exhaustive search over the image of tetrahedron 0. Orientation-preserving
/// mode accepts only maps compatible with both triangulations' orientations.
pub fn find_isomorphism(
    a: &Triangulation,
    b: &Triangulation,
    mode: IsoMode,
) -> Option<Isomorphism> {
    if a.size() != b.size() || !a.is_connected() || !b.is_connected() {
        return None;
    }
    let signs = match mode {
        IsoMode::All => None,
        IsoMode::OrientationPreserving => Some((a.orient().ok()?, b.orient().ok()?)),
    };
    for target in 0..b.size() {
        for sigma in ALL_PERMS {
            if let Some((sa, sb)) = &signs {
                if (sigma.sign() * sa[0]) != sb[target] {
                    continue;
                }
            }
            if let Some(iso) = extend(a, b, target, sigma) {
                return Some(iso);
            }
        }
    }
    None
}

pub fn isomorphic_with(a: &Triangulation, b: &Triangulation, mode: IsoMode) -> bool {
    find_isomorphism(a, b, mode).is_some()
}

pub fn isomorphic(a: &Triangulation, b: &Triangulation) -> bool {
    isomorphic_with(a, b, IsoMode::All)
}
