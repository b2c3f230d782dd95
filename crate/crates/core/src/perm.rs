//! Permutations of the four vertex labels of a tetrahedron.

use std::fmt;

/// A bijection on `{0, 1, 2, 3}`, stored as the image of each label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPerm([u8; 4]);

/// All 24 permutations in lexicographic order of their image arrays.
pub const ALL_PERMS: [VertexPerm; 24] = {
    let mut out = [VertexPerm([0, 1, 2, 3]); 24];
    let mut idx = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                if a != b && a != c && b != c {
                    let d = 6 - a - b - c;
                    out[idx] = VertexPerm([a, b, c, d]);
                    idx += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

impl VertexPerm {
    pub const IDENTITY: VertexPerm = VertexPerm([0, 1, 2, 3]);

    /// Builds a permutation from its images, returning `None` unless it is a bijection.
    pub fn new(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(VertexPerm(images))
    }

    /// The permutation sending the ordered face triple `from` onto `to`
    /// elementwise, and the omitted vertex onto the omitted vertex.
    pub fn from_face_triples(from: [u8; 3], to: [u8; 3]) -> Option<Self> {
        let omitted = |t: [u8; 3]| -> Option<u8> {
            let mut seen = [false; 4];
            for &v in &t {
                if v > 3 || seen[v as usize] {
                    return None;
                }
                seen[v as usize] = true;
            }
            seen.iter().position(|s| !s).map(|p| p as u8)
        };
        let f = omitted(from)?;
        let g = omitted(to)?;
        let mut images = [0u8; 4];
        for k in 0..3 {
            images[from[k] as usize] = to[k];
        }
        images[f as usize] = g;
        Some(VertexPerm(images))
    }

    /// Builds the transposition swapping `a` and `b`.
    pub fn transposition(a: u8, b: u8) -> Self {
        let mut images = [0, 1, 2, 3];
        images.swap(a as usize, b as usize);
        VertexPerm(images)
    }

    #[inline]
    pub fn apply(self, v: u8) -> u8 {
        self.0[v as usize]
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: VertexPerm) -> VertexPerm {
        VertexPerm([
            self.apply(other.0[0]),
            self.apply(other.0[1]),
            self.apply(other.0[2]),
            self.apply(other.0[3]),
        ])
    }

    pub fn inverse(self) -> VertexPerm {
        let mut images = [0u8; 4];
        for (i, &v) in self.0.iter().enumerate() {
            images[v as usize] = i as u8;
        }
        VertexPerm(images)
    }

    /// Returns `true` for even permutations.
    pub fn is_even(self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// +1 for even, −1 for odd.
    pub fn sign(self) -> i8 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    /// Position of this permutation in [`ALL_PERMS`].
    pub fn index(self) -> usize {
        let [a, b, c, _] = self.0;
        let (a, b, c) = (a as usize, b as usize, c as usize);
        let b_rank = b - usize::from(b > a);
        let c_rank = c - usize::from(c > a) - usize::from(c > b);
        a * 6 + b_rank * 2 + c_rank
    }
}

impl Default for VertexPerm {
    fn default() -> Self {
        VertexPerm::IDENTITY
    }
}

impl fmt::Display for VertexPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}
