//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use pachner_core::perm::{VertexPerm, ALL_PERMS};
use pachner_core::triangulation::Triangulation;

/// `∫₀^θ ln(2 sin t / t) dt` by composite Simpson, `0 ≤ θ ≤ π/2`.
fn smooth_part(theta: f64, intervals: usize) -> f64 {
    let g = |t: f64| {
        if t == 0.0 {
            2f64.ln()
        } else {
            (2.0 * t.sin() / t).ln()
        }
    };
    let h = theta / intervals as f64;
    let mut s = g(0.0) + g(theta);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * g(i as f64 * h);
    }
    s * h / 3.0
}

/// Lobachevsky function `Λ(θ) = −∫₀^θ ln|2 sin t| dt` by quadrature. The
/// logarithmic singularity at 0 is integrated in closed form.
pub fn lobachevsky(theta: f64) -> f64 {
    let mut x = theta.rem_euclid(PI);
    let mut sign = 1.0;
    if x > PI / 2.0 {
        x = PI - x;
        sign = -1.0;
    }
    if x == 0.0 {
        return 0.0;
    }
    let log_part = x * x.ln() - x;
    -sign * (log_part + smooth_part(x, 4000))
}

/// Volume of the ideal tetrahedron with dihedral angles read off `z`.
pub fn quadrature_volume(z: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let angles = [z.arg(), (one / (one - z)).arg(), ((z - one) / z).arg()];
    angles.iter().map(|&a| lobachevsky(a)).sum()
}

/// Every isomorphism `a → b`, each confirmed by relabeling `a` and comparing
/// gluing tables directly.
pub fn all_isomorphisms(
    a: &Triangulation,
    b: &Triangulation,
) -> Vec<(Vec<usize>, Vec<VertexPerm>)> {
    let n = a.size();
    if n != b.size() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for start in 0..n {
        'perm: for sigma in ALL_PERMS {
            let mut tet_map = vec![usize::MAX; n];
            let mut maps = vec![VertexPerm::IDENTITY; n];
            tet_map[0] = start;
            maps[0] = sigma;
            let mut stack = vec![0usize];
            while let Some(t) = stack.pop() {
                for face in 0..4u8 {
                    let ga = a.gluing(t, face);
                    let gb = b.gluing(tet_map[t], maps[t].apply(face));
                    let forced = gb.perm.compose(maps[t]).compose(ga.perm.inverse());
                    if tet_map[ga.tet] == usize::MAX {
                        if tet_map.contains(&gb.tet) {
                            continue 'perm;
                        }
                        tet_map[ga.tet] = gb.tet;
                        maps[ga.tet] = forced;
                        stack.push(ga.tet);
                    }
                }
            }
            if tet_map.contains(&usize::MAX) {
                continue;
            }
            if a.relabel(&tet_map, &maps) == *b {
                out.push((tet_map, maps));
            }
        }
    }
    out
}
