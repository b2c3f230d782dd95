//! Exact arithmetic in the imaginary quadratic field Q(√−d).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// The field parameter used by both built-in seeds.
pub const DEFAULT_D: u64 = 3;

/// The number `re + im·√−d`, i.e. the complex number `re + im·√d·i`.
///
/// Both coefficients are kept in lowest terms by [`BigRational`]. Values
/// from different fields must not be mixed; doing so panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    re: BigRational,
    im: BigRational,
    d: u64,
}

fn rat(n: i64, m: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(m))
}

impl QuadExt {
    pub fn new(re: BigRational, im: BigRational, d: u64) -> Self {
        assert!(d > 0, "d must be positive");
        QuadExt { re, im, d }
    }

    /// `(re_num/re_den) + (im_num/im_den)·√−d`.
    pub fn from_fractions(re_num: i64, re_den: i64, im_num: i64, im_den: i64, d: u64) -> Self {
        QuadExt::new(rat(re_num, re_den), rat(im_num, im_den), d)
    }

    pub fn from_integer(n: i64, d: u64) -> Self {
        QuadExt::new(rat(n, 1), BigRational::zero(), d)
    }

    pub fn from_rational(q: BigRational, d: u64) -> Self {
        QuadExt::new(q, BigRational::zero(), d)
    }

    pub fn zero(d: u64) -> Self {
        QuadExt::from_integer(0, d)
    }

    pub fn one(d: u64) -> Self {
        QuadExt::from_integer(1, d)
    }

    /// `√−d` itself.
    pub fn sqrt_neg_d(d: u64) -> Self {
        QuadExt::new(BigRational::zero(), BigRational::one(), d)
    }

    /// `(1 + √−3)/2`, the shape of a regular ideal tetrahedron.
    pub fn regular() -> Self {
        QuadExt::from_fractions(1, 2, 1, 2, DEFAULT_D)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    /// Coefficient of `√−d`.
    pub fn im_coeff(&self) -> &BigRational {
        &self.im
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Sign of the imaginary part: −1, 0 or +1.
    pub fn im_sign(&self) -> i8 {
        if self.im.is_positive() {
            1
        } else if self.im.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn conj(&self) -> Self {
        QuadExt::new(self.re.clone(), -&self.im, self.d)
    }

    /// `|x|² = re² + d·im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im * BigInt::from(self.d)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadExt::new(&self.re / &n, -&self.im / &n, self.d))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadExt::one(self.d);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Product of `factors`, multiplying cleared numerators pairwise in a
    /// balanced tree and normalizing once at the end.
    pub fn product<'a, I: IntoIterator<Item = &'a QuadExt>>(factors: I, d: u64) -> QuadExt {
        // (a + b√−d)/c with integer a, b, c
        let mut level: Vec<(BigInt, BigInt, BigInt)> = factors
            .into_iter()
            .map(|z| {
                assert_eq!(z.d, d, "mixing Q(sqrt(-d)) values from different fields");
                let c = z.re.denom() * z.im.denom();
                let a = z.re.numer() * z.im.denom();
                let b = z.im.numer() * z.re.denom();
                (a, b, c)
            })
            .collect();
        if level.is_empty() {
            return QuadExt::one(d);
        }
        let dd = BigInt::from(d);
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len().div_ceil(2));
            let mut it = level.into_iter();
            while let Some((a, b, c)) = it.next() {
                match it.next() {
                    Some((e, f, g)) => {
                        next.push((&a * &e - &b * &f * &dd, &a * &f + &b * &e, c * g))
                    }
                    None => next.push((a, b, c)),
                }
            }
            level = next;
        }
        let (a, b, c) = level.pop().unwrap();
        QuadExt::new(BigRational::new(a, c.clone()), BigRational::new(b, c), d)
    }

    pub fn to_complex(&self) -> Complex64 {
        let re = self.re.to_f64().unwrap_or(f64::NAN);
        let im = self.im.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt();
        Complex64::new(re, im)
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(
            self.d, other.d,
            "mixing Q(sqrt(-d)) values from different fields"
        );
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on (real part, imaginary coefficient); used only for
/// canonical ordering, not as a field order.
impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re
            .cmp(&other.re)
            .then_with(|| self.im.cmp(&other.im))
            .then_with(|| self.d.cmp(&other.d))
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        self.check_field(rhs);
        QuadExt::new(&self.re + &rhs.re, &self.im + &rhs.im, self.d)
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        self.check_field(rhs);
        QuadExt::new(&self.re - &rhs.re, &self.im - &rhs.im, self.d)
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        self.check_field(rhs);
        let d = BigInt::from(self.d);
        let re = &self.re * &rhs.re - &self.im * &rhs.im * d;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        QuadExt::new(re, im, self.d)
    }
}

impl<'a> Div<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    /// # Panics
    /// On division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QuadExt) -> QuadExt {
        self * &rhs.inverse().expect("division by zero in Q(sqrt(-d))")
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-&self.re, -&self.im, self.d)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &QuadExt) -> QuadExt { (&self).$m(rhs) }
        }
        impl<'a> $tr<QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

/// Serialized as `"a + b*sqrt(-d)"` (or `"a - b*sqrt(-d)"`), with `a`, `b`
/// printed as lowest-terms `p/q`, or `p` when integral.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, b) = if self.im.is_negative() {
            ("-", -&self.im)
        } else {
            ("+", self.im.clone())
        };
        write!(f, "{} {} {}*sqrt(-{})", self.re, op, b, self.d)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("cannot parse {input:?} as a + b*sqrt(-d): {reason}")]
pub struct ParseQuadError {
    input: String,
    reason: &'static str,
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, m)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let m: BigInt = m.trim().parse().ok()?;
            if m.is_zero() {
                return None;
            }
            Some(BigRational::new(n, m))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Accepts `a`, `b*sqrt(-d)`, `a + b*sqrt(-d)` and `a - b*sqrt(-d)`.
/// A bare rational is placed in the default field.
impl FromStr for QuadExt {
    type Err = ParseQuadError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseQuadError {
            input: input.to_string(),
            reason,
        };
        let s = input.trim();
        let Some(star) = s.find("*sqrt(-") else {
            let re = parse_rational(s).ok_or_else(|| err("bad rational"))?;
            return Ok(QuadExt::from_rational(re, DEFAULT_D));
        };
        let tail = &s[star + "*sqrt(-".len()..];
        let d_str = tail.strip_suffix(')').ok_or_else(|| err("missing ')'"))?;
        let d: u64 = d_str.trim().parse().map_err(|_| err("bad d"))?;
        if d == 0 {
            return Err(err("d must be positive"));
        }
        let head = &s[..star];
        // the separating sign is the last '+' or '-' preceded by a space
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| (c == '+' || c == '-') && i > 0 && head[..i].ends_with(' '));
        let (re, im) = match split {
            Some((i, c)) => {
                let re = parse_rational(&head[..i]).ok_or_else(|| err("bad real part"))?;
                let im = parse_rational(&head[i + 1..]).ok_or_else(|| err("bad imaginary part"))?;
                (re, if c == '-' { -im } else { im })
            }
            None => (
                BigRational::zero(),
                parse_rational(head).ok_or_else(|| err("bad imaginary part"))?,
            ),
        };
        Ok(QuadExt::new(re, im, d))
    }
}
