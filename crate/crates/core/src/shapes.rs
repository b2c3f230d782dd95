//! Shape parameters on labeled tetrahedra and their propagation through
//! Pachner moves.
//!
//! Each tetrahedron carries one parameter `z`, attached to edges `01` and
//! `23`. Edges `02`, `13` carry `z' = 1/(1−z)` and edges `03`, `12` carry
//! `z'' = (z−1)/z`. The convention assumes the labeling is positively
//! oriented; triangulations produced by the moves in [`crate::moves`] keep
//! every tetrahedron positive when the input is coherently labeled.

use std::f64::consts::TAU;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::moves::{frame_23, frame_32, Site23};
use crate::perm::VertexPerm;
use crate::quad::QuadExt;
use crate::triangulation::{EdgeClass, Triangulation, TriangulationError};

/// Tolerance on the winding number of an edge, in turns.
pub const WINDING_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ShapeError {
    #[error("tetrahedron {tet} has degenerate shape {z}")]
    DegenerateShape { tet: usize, z: String },
    #[error("{shapes} shapes for {tets} tetrahedra")]
    LengthMismatch { shapes: usize, tets: usize },
    #[error("edge class {edge} has argument sum {turns} turns, not an integer")]
    NonIntegerWinding { edge: usize, turns: f64 },
    #[error("relabeling of tetrahedron {tet} reverses its orientation")]
    OrientationReversing { tet: usize },
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
}

/// The three edge parameters `(z, 1/(1−z), (z−1)/z)`.
pub fn shape_triple(z: &QuadExt) -> Result<[QuadExt; 3], ShapeError> {
    let one = QuadExt::one(z.d());
    if z.is_zero() || z.is_one() {
        return Err(ShapeError::DegenerateShape {
            tet: usize::MAX,
            z: z.to_string(),
        });
    }
    let z1 = (&one - z).inverse().expect("z != 1");
    let z2 = &(z - &one) / z;
    Ok([z.clone(), z1, z2])
}

/// Which member of the triple sits on edge `(u, v)`: 0 for `z`, 1 for `z'`, 2 for `z''`.
pub fn edge_slot(u: u8, v: u8) -> usize {
    match (u.min(v), u.max(v)) {
        (0, 1) | (2, 3) => 0,
        (0, 2) | (1, 3) => 1,
        (0, 3) | (1, 2) => 2,
        _ => panic!("({u}, {v}) is not an edge"),
    }
}

/// One exact shape per tetrahedron, none equal to 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShapeAssignment {
    z: Vec<QuadExt>,
}

impl ShapeAssignment {
    pub fn new(z: Vec<QuadExt>) -> Result<Self, ShapeError> {
        for (tet, zi) in z.iter().enumerate() {
            if zi.is_zero() || zi.is_one() {
                return Err(ShapeError::DegenerateShape {
                    tet,
                    z: zi.to_string(),
                });
            }
        }
        Ok(ShapeAssignment { z })
    }

    pub fn uniform(z: QuadExt, n: usize) -> Self {
        ShapeAssignment::new(vec![z; n]).expect("non-degenerate shape")
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn get(&self, tet: usize) -> &QuadExt {
        &self.z[tet]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, QuadExt> {
        self.z.iter()
    }

    pub fn as_slice(&self) -> &[QuadExt] {
        &self.z
    }

    pub fn triple(&self, tet: usize) -> [QuadExt; 3] {
        shape_triple(&self.z[tet]).expect("validated on construction")
    }

    /// Shapes after [`Triangulation::relabel`] with the same maps. Only
    /// orientation-preserving (even) vertex maps keep the convention valid.
    pub fn relabel(
        &self,
        tet_map: &[usize],
        vertex_maps: &[VertexPerm],
    ) -> Result<Self, ShapeError> {
        let mut out = vec![None; self.len()];
        for (tet, (&to, sigma)) in tet_map.iter().zip(vertex_maps).enumerate() {
            if !sigma.is_even() {
                return Err(ShapeError::OrientationReversing { tet });
            }
            let inv = sigma.inverse();
            out[to] = Some(edge_parameter(self, tet, inv.apply(0), inv.apply(1)));
        }
        ShapeAssignment::new(
            out.into_iter()
                .map(|z| z.expect("tet_map is a permutation"))
                .collect(),
        )
    }

    /// A labeling-independent summary: for each tetrahedron the least of its
    /// three edge parameters, sorted. With `mirror`, the multiset is also
    /// compared against the mirror image (`w ↦ 1/w̄` on every parameter) and
    /// the smaller of the two is returned.
    pub fn canonical_multiset(&self, mirror: bool) -> Vec<QuadExt> {
        let rep = |f: &dyn Fn(&QuadExt) -> QuadExt| -> Vec<QuadExt> {
            let mut v: Vec<QuadExt> = (0..self.len())
                .map(|t| self.triple(t).iter().map(f).min().unwrap())
                .collect();
            v.sort();
            v
        };
        let direct = rep(&|w| w.clone());
        if !mirror {
            return direct;
        }
        let mirrored = rep(&|w| w.conj().inverse().expect("non-zero"));
        direct.min(mirrored)
    }
}

impl<'a> IntoIterator for &'a ShapeAssignment {
    type Item = &'a QuadExt;
    type IntoIter = std::slice::Iter<'a, QuadExt>;
    fn into_iter(self) -> Self::IntoIter {
        self.z.iter()
    }
}

/// The parameter on edge `(u, v)` of tetrahedron `tet`.
pub fn edge_parameter(shapes: &ShapeAssignment, tet: usize, u: u8, v: u8) -> QuadExt {
    let z = shapes.get(tet);
    let one = QuadExt::one(z.d());
    match edge_slot(u, v) {
        0 => z.clone(),
        1 => (&one - z).inverse().expect("shape is not 1"),
        _ => &(z - &one) / z,
    }
}

/// Per edge class: the exact product of parameters and the winding number.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeReport {
    pub degree: usize,
    pub product: QuadExt,
    /// Sum of principal arguments divided by 2π.
    pub turns: f64,
    pub winding: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeConsistencyReport {
    pub edges: Vec<EdgeReport>,
}

impl EdgeConsistencyReport {
    pub fn all_products_one(&self) -> bool {
        self.edges.iter().all(|e| e.product.is_one())
    }

    /// Products 1 and angle sums 2π on every edge.
    pub fn is_consistent(&self) -> bool {
        self.all_products_one() && self.edges.iter().all(|e| e.winding == 1)
    }
}

pub fn check_edge_consistency(
    tri: &Triangulation,
    shapes: &ShapeAssignment,
) -> Result<EdgeConsistencyReport, ShapeError> {
    if shapes.len() != tri.size() {
        return Err(ShapeError::LengthMismatch {
            shapes: shapes.len(),
            tets: tri.size(),
        });
    }
    let triples: Vec<[QuadExt; 3]> = (0..tri.size()).map(|t| shapes.triple(t)).collect();
    let mut edges = Vec::new();
    for (idx, class) in tri.edge_classes().iter().enumerate() {
        let params: Vec<&QuadExt> = class
            .members
            .iter()
            .map(|m| &triples[m.tet][edge_slot(m.ends[0], m.ends[1])])
            .collect();
        let product = QuadExt::product(params.iter().copied(), shapes.get(0).d());
        let angle: f64 = params.iter().map(|w| w.to_complex().arg()).sum();
        let turns = angle / TAU;
        let winding = turns.round();
        if (turns - winding).abs() > WINDING_TOLERANCE {
            return Err(ShapeError::NonIntegerWinding { edge: idx, turns });
        }
        edges.push(EdgeReport {
            degree: class.degree(),
            product,
            turns,
            winding: winding as i64,
        });
    }
    Ok(EdgeConsistencyReport { edges })
}

fn nondegenerate(tet: usize, z: QuadExt) -> Result<QuadExt, ShapeError> {
    if z.is_zero() || z.is_one() {
        Err(ShapeError::DegenerateShape {
            tet,
            z: z.to_string(),
        })
    } else {
        Ok(z)
    }
}

/// Shapes after [`crate::moves::pachner_23`] at `site`: each new tetrahedron
/// takes the product of the two old parameters on its equatorial edge.
pub fn propagate_23(
    tri: &Triangulation,
    shapes: &ShapeAssignment,
    site: Site23,
) -> Result<ShapeAssignment, ShapeError> {
    if shapes.len() != tri.size() {
        return Err(ShapeError::LengthMismatch {
            shapes: shapes.len(),
            tets: tri.size(),
        });
    }
    let fr = frame_23(tri, site)?;
    let (ea, eb) = (fr.equator_a, fr.equator_b);
    let equatorial = |i: usize, j: usize| {
        &edge_parameter(shapes, fr.tet_a, ea[i], ea[j])
            * &edge_parameter(shapes, fr.tet_b, eb[i], eb[j])
    };
    let mut z: Vec<QuadExt> = shapes
        .iter()
        .enumerate()
        .filter(|(t, _)| *t != fr.tet_a && *t != fr.tet_b)
        .map(|(_, z)| z.clone())
        .collect();
    let base = z.len();
    // C, D, E hold the equatorial edges p3p1, p1p2, p2p3
    for (k, (i, j)) in [(2, 0), (0, 1), (1, 2)].into_iter().enumerate() {
        z.push(nondegenerate(base + k, equatorial(i, j))?);
    }
    Ok(ShapeAssignment { z })
}

/// Shapes after [`crate::moves::pachner_32`] at `edge`: each recovered
/// tetrahedron takes the product of the two old parameters along one of its
/// apex edges.
pub fn propagate_32(
    tri: &Triangulation,
    shapes: &ShapeAssignment,
    edge: &EdgeClass,
) -> Result<ShapeAssignment, ShapeError> {
    if shapes.len() != tri.size() {
        return Err(ShapeError::LengthMismatch {
            shapes: shapes.len(),
            tets: tri.size(),
        });
    }
    let fr = frame_32(tri, edge)?;
    let p = |i: usize, u: u8, v: u8| edge_parameter(shapes, fr.tets[i], u, v);
    // A = (a, q0, q1, q2): edge a-q0 lies in old tetrahedra 0 (as exit) and 1 (as entry)
    let za = &p(0, fr.apex_a[0], fr.equator[0][1]) * &p(1, fr.apex_a[1], fr.equator[1][0]);
    // B = (q2, b, q0, q1): edge q2-b lies in old tetrahedra 0 (as entry) and 2 (as exit)
    let zb = &p(0, fr.apex_b[0], fr.equator[0][0]) * &p(2, fr.apex_b[2], fr.equator[2][1]);
    let mut z: Vec<QuadExt> = shapes
        .iter()
        .enumerate()
        .filter(|(t, _)| !fr.tets.contains(t))
        .map(|(_, z)| z.clone())
        .collect();
    let base = z.len();
    z.push(nondegenerate(base, za)?);
    z.push(nondegenerate(base + 1, zb)?);
    Ok(ShapeAssignment { z })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Classification {
    Geometric,
    Flat,
    NegativelyOriented,
}

impl Classification {
    /// One-letter tag: G, F or N.
    pub fn letter(self) -> char {
        match self {
            Classification::Geometric => 'G',
            Classification::Flat => 'F',
            Classification::NegativelyOriented => 'N',
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Geometric => "geometric",
            Classification::Flat => "flat",
            Classification::NegativelyOriented => "negatively-oriented",
        };
        f.write_str(s)
    }
}

/// Exact sign test on the imaginary parts. A flat tetrahedron takes
/// precedence over a negatively oriented one.
pub fn classify(shapes: &ShapeAssignment) -> Classification {
    if shapes.iter().any(|z| z.is_real()) {
        Classification::Flat
    } else if shapes.iter().any(|z| z.im_coeff().is_negative()) {
        Classification::NegativelyOriented
    } else {
        Classification::Geometric
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{central_edge_after_23, enumerate_23_sites, pachner_23, pachner_32};
    use crate::seeds;

    fn q(a: i64, b: i64, c: i64, e: i64) -> QuadExt {
        QuadExt::from_fractions(a, b, c, e, 3)
    }

    #[test]
    fn regular_triple_is_constant() {
        let z = QuadExt::regular();
        assert_eq!(shape_triple(&z).unwrap(), [z.clone(), z.clone(), z]);
    }

    #[test]
    fn real_triple() {
        assert_eq!(
            shape_triple(&q(2, 1, 0, 1)).unwrap(),
            [q(2, 1, 0, 1), q(-1, 1, 0, 1), q(1, 2, 0, 1)]
        );
    }

    #[test]
    fn cube_root_triple() {
        // z' for z = (−1+√−3)/2, cross-checked in floating point
        let z = q(-1, 2, 1, 2);
        let [_, z1, _] = shape_triple(&z).unwrap();
        assert_eq!(z1, q(3, 6, 1, 6));
        let zc = z.to_complex();
        let expect = (num_complex::Complex64::new(1.0, 0.0) - zc).inv();
        assert!((z1.to_complex() - expect).norm() < 1e-15);
    }

    #[test]
    fn degenerate_shapes_rejected() {
        assert!(shape_triple(&QuadExt::zero(3)).is_err());
        assert!(shape_triple(&QuadExt::one(3)).is_err());
        assert!(matches!(
            ShapeAssignment::new(vec![QuadExt::regular(), QuadExt::one(3)]),
            Err(ShapeError::DegenerateShape { tet: 1, .. })
        ));
    }

    #[test]
    fn edge_parameters() {
        let reg = ShapeAssignment::uniform(QuadExt::regular(), 1);
        assert_eq!(edge_parameter(&reg, 0, 2, 3), QuadExt::regular());
        let two = ShapeAssignment::uniform(q(2, 1, 0, 1), 1);
        assert_eq!(edge_parameter(&two, 0, 1, 3), q(-1, 1, 0, 1));
        assert_eq!(edge_parameter(&two, 0, 1, 2), q(1, 2, 0, 1));
    }

    #[test]
    fn triple_product_is_minus_one() {
        for z in [
            q(2, 1, 0, 1),
            q(-1, 2, 1, 2),
            q(7, 3, -5, 11),
            q(0, 1, 1, 1),
        ] {
            let [a, b, c] = shape_triple(&z).unwrap();
            assert_eq!(&(&a * &b) * &c, QuadExt::from_integer(-1, 3));
        }
    }

    #[test]
    fn regular_seeds_are_consistent() {
        for t in [seeds::fig8(), seeds::fig8_sister()] {
            let s = ShapeAssignment::uniform(QuadExt::regular(), 2);
            let r = check_edge_consistency(&t, &s).unwrap();
            assert_eq!(r.edges.len(), 2);
            assert!(r.is_consistent());
            assert!(r.edges.iter().all(|e| e.degree == 6));
        }
    }

    #[test]
    fn inconsistent_shapes_detected() {
        let t = seeds::fig8();
        let s = ShapeAssignment::uniform(q(2, 1, 0, 1), 2);
        match check_edge_consistency(&t, &s) {
            Ok(r) => assert!(!r.all_products_one()),
            Err(e) => assert!(matches!(e, ShapeError::NonIntegerWinding { .. })),
        }
    }

    #[test]
    fn propagate_regular() {
        let t = seeds::fig8();
        let s = ShapeAssignment::uniform(QuadExt::regular(), 2);
        let site = enumerate_23_sites(&t)[0];
        let out = propagate_23(&t, &s, site).unwrap();
        assert_eq!(
            out.as_slice(),
            &[q(-1, 2, 1, 2), q(-1, 2, 1, 2), q(-1, 2, 1, 2)]
        );
    }

    #[test]
    fn propagate_cube_root_pair() {
        // two tetrahedra of shape (−1+√−3)/2 glued as in the figure eight table
        let t = seeds::fig8();
        let s = ShapeAssignment::uniform(q(-1, 2, 1, 2), 2);
        let site = Site23 {
            a: crate::triangulation::FaceSlot::new(0, 0),
            b: crate::triangulation::FaceSlot::new(1, 1),
        };
        let out = propagate_23(&t, &s, site).unwrap();
        assert_eq!(out.get(0), &q(1, 6, 1, 6));
        assert_eq!(out.get(1), &q(-3, 2, 1, 2));
        assert_eq!(out.get(2), &q(-3, 2, 1, 2));
    }

    #[test]
    fn round_trip_regular() {
        let t = seeds::fig8();
        let s = ShapeAssignment::uniform(QuadExt::regular(), 2);
        let site = enumerate_23_sites(&t)[0];
        let t3 = pachner_23(&t, site).unwrap();
        let s3 = propagate_23(&t, &s, site).unwrap();
        let central = central_edge_after_23(&t3);
        let product: QuadExt = central
            .members
            .iter()
            .map(|m| edge_parameter(&s3, m.tet, m.ends[0], m.ends[1]))
            .fold(QuadExt::one(3), |acc, w| &acc * &w);
        assert!(product.is_one());
        let back = propagate_32(&t3, &s3, &central).unwrap();
        assert_eq!(back, s);
        assert_eq!(pachner_32(&t3, &central).unwrap().size(), 2);
    }

    #[test]
    fn degenerate_recovery_reported() {
        // real shapes from the orbit of 2 make some recovered parameter equal 1
        let t = seeds::fig8();
        let site = enumerate_23_sites(&t)[0];
        let t3 = pachner_23(&t, site).unwrap();
        let central = central_edge_after_23(&t3);
        let orbit = [q(2, 1, 0, 1), q(-1, 1, 0, 1), q(1, 2, 0, 1)];
        let mut degenerate = 0;
        for i in 0..27 {
            let z = vec![
                orbit[i % 3].clone(),
                orbit[i / 3 % 3].clone(),
                orbit[i / 9].clone(),
            ];
            match propagate_32(&t3, &ShapeAssignment::new(z).unwrap(), &central) {
                Ok(_) => {}
                Err(ShapeError::DegenerateShape { .. }) => degenerate += 1,
                Err(e) => panic!("{e}"),
            }
        }
        assert!(degenerate > 0);
    }

    #[test]
    fn classification() {
        let g = ShapeAssignment::uniform(QuadExt::regular(), 2);
        assert_eq!(classify(&g), Classification::Geometric);
        let f = ShapeAssignment::new(vec![QuadExt::regular(), q(1, 2, 0, 1)]).unwrap();
        assert_eq!(classify(&f), Classification::Flat);
        let n = ShapeAssignment::new(vec![QuadExt::regular(), q(1, 2, -1, 2)]).unwrap();
        assert_eq!(classify(&n), Classification::NegativelyOriented);
        let both = ShapeAssignment::new(vec![q(3, 1, 0, 1), q(1, 2, -1, 2)]).unwrap();
        assert_eq!(classify(&both), Classification::Flat);
    }

    #[test]
    fn even_relabel_keeps_consistency() {
        let t = seeds::fig8_sister();
        let s = ShapeAssignment::new(vec![QuadExt::regular(), QuadExt::regular()]).unwrap();
        let maps = [
            VertexPerm::new([1, 2, 0, 3]).unwrap(),
            VertexPerm::new([1, 0, 3, 2]).unwrap(),
        ];
        let rt = t.relabel(&[1, 0], &maps);
        let rs = s.relabel(&[1, 0], &maps).unwrap();
        assert!(check_edge_consistency(&rt, &rs).unwrap().is_consistent());
        assert!(matches!(
            s.relabel(
                &[0, 1],
                &[VertexPerm::transposition(0, 1), VertexPerm::IDENTITY]
            ),
            Err(ShapeError::OrientationReversing { tet: 0 })
        ));
    }
}
