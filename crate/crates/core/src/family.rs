//! The infinite geometric family `T_n` of the figure eight knot complement.
//!
//! `T_2` is the two-tetrahedron table with regular shapes. `T_{n+1}` comes
//! from the 2-3 move through `A123 = B230` of `T_n`, after which the new
//! tetrahedron `E` becomes `A` and `D` becomes `B`. Tetrahedra are ordered
//! `[A, B, C_1, ..., C_k]` where `C_m` was created by the m-th move.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::moves::{pachner_23, Site23};
use crate::perm::VertexPerm;
use crate::quad::QuadExt;
use crate::seeds;
use crate::shapes::{propagate_23, ShapeAssignment};
use crate::triangulation::{FaceSlot, Gluing, Triangulation};
use crate::volume::series_shape;

/// The move site `A123 = B230` for tetrahedra 0 and 1.
pub const FAMILY_SITE: Site23 = Site23 {
    a: FaceSlot { tet: 0, face: 0 },
    b: FaceSlot { tet: 1, face: 1 },
};

/// Iterator over `T_2, T_3, ...` with exact shapes.
#[derive(Clone, Debug)]
pub struct TnFamily {
    next: Option<(Triangulation, ShapeAssignment)>,
}

impl TnFamily {
    pub fn new() -> Self {
        let seed = seeds::builtin("fig8").expect("built-in");
        TnFamily {
            next: Some((seed.triangulation, seed.shapes.expect("built-in shapes"))),
        }
    }
}

impl Default for TnFamily {
    fn default() -> Self {
        TnFamily::new()
    }
}

/// One step of the recursion: move at [`FAMILY_SITE`], then relabel.
pub fn family_step(
    tri: &Triangulation,
    shapes: &ShapeAssignment,
) -> (Triangulation, ShapeAssignment) {
    let moved = pachner_23(tri, FAMILY_SITE).expect("family site is a valid 2-3 site");
    let moved_shapes =
        propagate_23(tri, shapes, FAMILY_SITE).expect("family shapes stay non-degenerate");
    let m = moved.size();
    let k = m - 3;
    // [C_1..C_k, C, D, E] -> [E, D, C_1..C_k, C]
    let mut tet_map: Vec<usize> = (0..k).map(|i| i + 2).collect();
    tet_map.extend([k + 2, 1, 0]);
    let ids = vec![VertexPerm::IDENTITY; m];
    let tri = moved.relabel(&tet_map, &ids);
    let shapes = moved_shapes
        .relabel(&tet_map, &ids)
        .expect("identity vertex maps");
    (tri, shapes)
}

impl Iterator for TnFamily {
    type Item = (Triangulation, ShapeAssignment);

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next.take()?;
        self.next = Some(family_step(&current.0, &current.1));
        Some(current)
    }
}

/// `T_n` with exact shapes.
///
/// # Panics
/// If `n < 2`.
pub fn generate_tn(n: usize) -> (Triangulation, ShapeAssignment) {
    assert!(n >= 2, "T_n is defined for n >= 2");
    TnFamily::new().nth(n - 2).expect("infinite iterator")
}

/// `(1 − 2k + √−3)/2`, the shape of `A` and `B` in `T_{k+2}`.
pub fn apex_shape(k: u64) -> QuadExt {
    let re = BigRational::new(
        BigInt::from(1) - BigInt::from(2) * BigInt::from(k),
        BigInt::from(2),
    );
    QuadExt::new(re, BigRational::new(BigInt::one(), BigInt::from(2)), 3)
}

/// The closed-form shapes of `T_n`, in the family's tetrahedron order.
pub fn tn_closed_form(n: usize) -> Vec<QuadExt> {
    assert!(n >= 2);
    let k = (n - 2) as u64;
    let mut out = vec![apex_shape(k), apex_shape(k)];
    out.extend((1..=k).map(series_shape));
    out
}

/// Outcome of checking the three hypotheses of the inductive step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    /// `A123 = B230` and `A012 = B013`.
    pub identifications: bool,
    /// `z_A = z_B`.
    pub equal_shapes: bool,
    /// `Re z_A < 1`.
    pub real_part_below_one: bool,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.identifications && self.equal_shapes && self.real_part_below_one
    }
}

pub fn verify_lemma_conditions(
    tri: &Triangulation,
    shapes: &ShapeAssignment,
    tet_a: usize,
    tet_b: usize,
) -> LemmaReport {
    assert_ne!(tet_a, tet_b, "the two tetrahedra must differ");
    let glued = |face: u8, from: [u8; 3], to: [u8; 3]| {
        tri.gluing(tet_a, face)
            == Gluing {
                tet: tet_b,
                perm: VertexPerm::from_face_triples(from, to).unwrap(),
            }
    };
    let identifications = glued(0, [1, 2, 3], [2, 3, 0]) && glued(3, [0, 1, 2], [0, 1, 3]);
    let za = shapes.get(tet_a);
    LemmaReport {
        identifications,
        equal_shapes: za == shapes.get(tet_b),
        real_part_below_one: *za.re() < BigRational::one(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{classify, Classification};

    #[test]
    fn t2_is_the_seed() {
        let (t, s) = generate_tn(2);
        assert_eq!(t, seeds::fig8());
        assert!(s.iter().all(|z| *z == QuadExt::regular()));
    }

    #[test]
    fn t3_shapes() {
        let (t, s) = generate_tn(3);
        assert_eq!(t.size(), 3);
        let w = QuadExt::from_fractions(-1, 2, 1, 2, 3);
        assert!(s.iter().all(|z| *z == w));
    }

    #[test]
    fn closed_forms_small() {
        for (i, (t, s)) in TnFamily::new().take(12).enumerate() {
            let n = i + 2;
            assert_eq!(t.size(), n);
            assert_eq!(s.as_slice(), tn_closed_form(n).as_slice());
            assert_eq!(classify(&s), Classification::Geometric);
            assert!(verify_lemma_conditions(&t, &s, 0, 1).all_hold());
        }
    }

    #[test]
    fn counterexample_fails_condition_three() {
        let (t, _) = generate_tn(2);
        let z = QuadExt::from_fractions(2, 1, 1, 1, 3);
        let s = ShapeAssignment::uniform(z, 2);
        let r = verify_lemma_conditions(&t, &s, 0, 1);
        assert!(r.identifications && r.equal_shapes);
        assert!(!r.real_part_below_one);
    }

    #[test]
    fn sister_lacks_identifications() {
        let t = seeds::fig8_sister();
        let s = ShapeAssignment::uniform(QuadExt::regular(), 2);
        assert!(!verify_lemma_conditions(&t, &s, 0, 1).identifications);
    }
}
