//! Hyperbolic volume of ideal tetrahedra via the Bloch–Wigner dilogarithm
//!
//! `D(z) = Im Li₂(z) + arg(1−z)·ln|z|` is the volume of the ideal
//! tetrahedron of shape `z` (negative for negatively oriented shapes, zero
//! for flat ones). `D` is invariant under `z ↦ 1/(1−z)` and `z ↦ (z−1)/z`
//! and changes sign under `z ↦ 1/z`, `1−z`, `z/(z−1)`. We move `z` to the
//! orbit point of least modulus, where `|w| ≤ 1` and `Re w ≤ 1/2`, and sum
//! the Bernoulli series `Li₂(w) = Σ Bₙ uⁿ⁺¹/(n+1)!` with `u = −ln(1−w)`,
//! `|u| < 1.1`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::quad::QuadExt;
use crate::shapes::ShapeAssignment;

const SERIES_TERMS: usize = 30;

/// `Bₙ/(n+1)!` for `n = 0..SERIES_TERMS`.
fn series_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let n = SERIES_TERMS;
        // binomial rows via Pascal, Bernoulli numbers via Σ C(m+1,k) B_k = 0
        let mut binom = vec![vec![BigInt::zero(); n + 2]; n + 2];
        for i in 0..n + 2 {
            binom[i][0] = BigInt::one();
            for k in 1..=i {
                binom[i][k] = &binom[i - 1][k - 1] + &binom[i - 1][k];
            }
        }
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for m in 1..n {
            let s: BigRational = (0..m)
                .map(|k| &b[k] * BigRational::from_integer(binom[m + 1][k].clone()))
                .fold(BigRational::zero(), |a, x| a + x);
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(n);
        for (k, bk) in b.iter().enumerate() {
            fact *= BigInt::from(k + 1);
            out.push(
                (bk / BigRational::from_integer(fact.clone()))
                    .to_f64()
                    .unwrap(),
            );
        }
        out
    })
}

/// Complex dilogarithm for `|w| ≤ 1`, `Re w ≤ 1/2`.
fn li2_reduced(w: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - w).ln();
    let u2 = u * u;
    let c = series_coefficients();
    // B_1 is the only odd-index nonzero term
    let mut sum = u * c[0] + u2 * c[1];
    let mut power = u;
    for k in (2..c.len()).step_by(2) {
        power *= u2;
        sum += power * c[k];
    }
    sum
}

/// Bloch–Wigner dilogarithm.
pub fn bloch_wigner(z: Complex64) -> f64 {
    if z.im == 0.0 {
        return 0.0;
    }
    let one = Complex64::new(1.0, 0.0);
    let orbit = [
        (z, 1.0),
        (one / (one - z), 1.0),
        ((z - one) / z, 1.0),
        (one / z, -1.0),
        (one - z, -1.0),
        (z / (z - one), -1.0),
    ];
    let (w, sign) = orbit
        .into_iter()
        .min_by(|a, b| a.0.norm().total_cmp(&b.0.norm()))
        .unwrap();
    let li = li2_reduced(w);
    sign * (li.im + (one - w).arg() * w.norm().ln())
}

/// Volume of an ideal tetrahedron of shape `z`; real shapes give exactly 0.
pub fn volume_tet(z: Complex64) -> f64 {
    bloch_wigner(z)
}

/// Signed total volume of all tetrahedra.
pub fn volume_total(shapes: &ShapeAssignment) -> f64 {
    shapes
        .iter()
        .map(|z| {
            if z.is_real() {
                0.0
            } else {
                volume_tet(z.to_complex())
            }
        })
        .sum()
}

/// `(2/(1−2m+√−3))²`, the shape created at the m-th move of the family.
pub fn series_shape(m: u64) -> QuadExt {
    let denom = QuadExt::new(
        BigRational::from_integer(BigInt::from(1) - BigInt::from(2) * BigInt::from(m)),
        BigRational::one(),
        3,
    );
    let base = &QuadExt::from_integer(2, 3) / &denom;
    &base * &base
}

/// `Σ_{m=1}^{terms} Vol((2/(1−2m+√−3))²)`.
pub fn volume_series_partial(terms: u64) -> f64 {
    volume_series_trace(terms).last().copied().unwrap_or(0.0)
}

/// All partial sums for `1..=terms`.
pub fn volume_series_trace(terms: u64) -> Vec<f64> {
    let mut acc = 0.0;
    (1..=terms)
        .map(|m| {
            acc += volume_tet(series_shape(m).to_complex());
            acc
        })
        .collect()
}

/// Formats a volume with 12 digits after the decimal point.
pub fn format_volume(v: f64) -> String {
    format!("{v:.12}")
}

/// Rounds to 12 decimal places, for JSON output.
pub fn round_volume(v: f64) -> f64 {
    (v * 1e12).round() / 1e12
}
