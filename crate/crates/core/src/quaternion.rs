//! Hamilton quaternions and the complex planes they are built from.
//!
//! A quaternion is stored as four real coefficients `w + x·e₁ + y·e₂ + z·e₃`
//! with `e₁² = e₂² = e₃² = −1` and `e₁e₂ = e₃`, `e₂e₃ = e₁`, `e₃e₁ = e₂`.
//! The transform kernels live in the commutative plane `span{1, e₂}`, which is
//! represented by [`ComplexE2`]: its `re` part is the real coefficient and its
//! `im` part the `e₂` coefficient.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// An element of `span{1, e₂}`; `im` is the `e₂` coefficient.
pub type ComplexE2 = Complex64;

/// A Hamilton quaternion `w + x·e₁ + y·e₂ + z·e₃`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const E1: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const E2: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const E3: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    #[inline]
    pub const fn real(r: f64) -> Self {
        Quaternion::new(r, 0.0, 0.0, 0.0)
    }

    /// Embeds `re + im·e₂` as `(re, 0, im, 0)`.
    #[inline]
    pub const fn from_e2(c: ComplexE2) -> Self {
        Quaternion::new(c.re, 0.0, c.im, 0.0)
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    /// Quaternion conjugate `qᶜ`: negates the three imaginary parts.
    #[inline]
    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// `|q|² = q·qᶜ`.
    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Multiplicative inverse `qᶜ / |q|²`.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(Error::Domain(format!("quaternion {self} has no inverse")));
        }
        Ok(self.conj() / n2)
    }

    /// True when the `e₁` and `e₃` parts vanish to within `tol`.
    #[inline]
    pub fn is_e2_complex(self, tol: f64) -> bool {
        self.x.abs() <= tol && self.z.abs() <= tol
    }

    /// Projection onto `span{1, e₂}`.
    #[inline]
    pub fn e2_part(self) -> ComplexE2 {
        ComplexE2::new(self.w, self.y)
    }

    /// Splits `q = u + e₁·v` with `u, v ∈ span{1, e₂}`.
    ///
    /// `u = w + y·e₂`, `v = x + z·e₂`, since `e₁·(x + z·e₂) = x·e₁ + z·e₃`.
    #[inline]
    pub fn symplectic_split(self) -> (ComplexE2, ComplexE2) {
        (ComplexE2::new(self.w, self.y), ComplexE2::new(self.x, self.z))
    }

    /// Inverse of [`Quaternion::symplectic_split`].
    #[inline]
    pub fn symplectic_join(u: ComplexE2, v: ComplexE2) -> Self {
        Quaternion::new(u.re, v.re, u.im, v.im)
    }

    /// Cayley–Dickson pair `q = z₁ + e₂·z₂` with `z₁, z₂ ∈ span{1, e₁}`.
    ///
    /// The returned complex numbers carry the `e₁` coefficient in `im`:
    /// `z₁ = w + x·e₁` and `z₂ = y − z·e₁` (because `e₂·e₁ = −e₃`).
    #[inline]
    pub fn cayley_dickson(self) -> (Complex64, Complex64) {
        (Complex64::new(self.w, self.x), Complex64::new(self.y, -self.z))
    }

    /// Inverse of [`Quaternion::cayley_dickson`].
    #[inline]
    pub fn from_cayley_dickson(z1: Complex64, z2: Complex64) -> Self {
        Quaternion::new(z1.re, z1.im, z2.re, -z2.im)
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}e1 + {}e2 + {}e3)", self.w, self.x, self.y, self.z)
    }
}

impl From<f64> for Quaternion {
    fn from(r: f64) -> Self {
        Quaternion::real(r)
    }
}

impl From<ComplexE2> for Quaternion {
    fn from(c: ComplexE2) -> Self {
        Quaternion::from_e2(c)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a, b) = (self, o);
        Quaternion::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl MulAssign<f64> for Quaternion {
    #[inline]
    fn mul_assign(&mut self, s: f64) {
        *self = *self * s;
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Quaternion {
        iter.fold(Quaternion::ZERO, |acc, q| acc + q)
    }
}

impl<'a> Sum<&'a Quaternion> for Quaternion {
    fn sum<I: Iterator<Item = &'a Quaternion>>(iter: I) -> Quaternion {
        iter.fold(Quaternion::ZERO, |acc, q| acc + *q)
    }
}
