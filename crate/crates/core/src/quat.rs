//! Quaternion arithmetic, unit pure-quaternion roots of -1, and the
//! commuting/anticommuting split that drives every identity in this crate.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Element of the real quaternion algebra, `w + x*i + y*j + z*k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Quaternion {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub const fn pure(x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(0.0, x, y, z)
    }

    /// S(q): the real part.
    pub fn scalar_part(self) -> f64 {
        self.w
    }

    /// V(q) = q - S(q): the pure part.
    pub fn vector_part(self) -> Quaternion {
        Quaternion::pure(self.x, self.y, self.z)
    }

    /// S(q) - V(q).
    pub fn conj(self) -> Quaternion {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Largest component magnitude; the error metric used by all tolerance checks.
    pub fn abs_max(self) -> f64 {
        self.w
            .abs()
            .max(self.x.abs())
            .max(self.y.abs())
            .max(self.z.abs())
    }

    /// Euclidean dot product of the vector parts.
    pub fn vector_dot(self, other: Quaternion) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, r: Quaternion) {
        self.w += r.w;
        self.x += r.x;
        self.y += r.y;
        self.z += r.z;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    /// The 16-term quaternion product; non-commutative.
    fn mul(self, r: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:+.6}{:+.6}i{:+.6}j{:+.6}k",
            self.w, self.x, self.y, self.z
        )
    }
}

/// A unit pure quaternion, i.e. a square root of -1.
///
/// Construction normalizes, so the invariants (zero scalar part, unit norm)
/// hold for every value of this type.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root(Quaternion);

impl Root {
    pub const I: Root = Root(Quaternion::I);
    pub const J: Root = Root(Quaternion::J);
    pub const K: Root = Root(Quaternion::K);

    /// Normalizes `(b, c, d)` into the root `(b*i + c*j + d*k) / |(b,c,d)|`.
    pub fn new(b: f64, c: f64, d: f64) -> Result<Root> {
        let norm = (b * b + c * c + d * d).sqrt();
        if !(norm >= 1e-300) {
            return Err(Error::ZeroVector);
        }
        Ok(Root(Quaternion::pure(b / norm, c / norm, d / norm)))
    }

    pub fn as_quaternion(self) -> Quaternion {
        self.0
    }

    /// `exp(self * theta) = cos(theta) + self * sin(theta)`; always unit norm.
    pub fn exp(self, theta: f64) -> Quaternion {
        let (sin, cos) = theta.sin_cos();
        Quaternion::new(cos, self.0.x * sin, self.0.y * sin, self.0.z * sin)
    }
}

impl Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(-self.0)
    }
}

/// {mu, nu} = mu*nu + nu*mu = -2 * (vector dot of mu and nu); always real
/// for roots of -1, and zero exactly when the roots are perpendicular.
pub fn anticommutator(mu: Root, nu: Root) -> f64 {
    let m = mu.as_quaternion();
    let n = nu.as_quaternion();
    debug_assert!(
        (m * n + n * m).vector_part().norm() <= 1e-14,
        "anticommutator of roots must be a scalar"
    );
    -2.0 * m.vector_dot(n)
}

/// An ordered pair of roots with its anticommutator cached.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootPair {
    mu: Root,
    nu: Root,
    a: f64,
}

impl RootPair {
    pub fn new(mu: Root, nu: Root) -> RootPair {
        let a = anticommutator(mu, nu);
        debug_assert!(a.abs() <= 2.0 + 1e-12, "roots are unit vectors");
        RootPair { mu, nu, a }
    }

    /// Single-root pair (mu, mu); its anticommutator is -2.
    pub fn equal(mu: Root) -> RootPair {
        RootPair::new(mu, mu)
    }

    pub fn mu(&self) -> Root {
        self.mu
    }

    pub fn nu(&self) -> Root {
        self.nu
    }

    pub fn anticommutator(&self) -> f64 {
        self.a
    }

    /// Pair with axis-wise sign flips applied to the roots.
    pub fn flipped(&self, flip_mu: bool, flip_nu: bool) -> RootPair {
        let mu = if flip_mu { -self.mu } else { self.mu };
        let nu = if flip_nu { -self.nu } else { self.nu };
        RootPair::new(mu, nu)
    }

    pub fn require_perpendicular(&self, limit: f64) -> Result<()> {
        if self.a.abs() > limit {
            Err(Error::RootsNotPerpendicular {
                anticommutator: self.a,
                limit,
            })
        } else {
            Ok(())
        }
    }
}

/// Splits `q` into `(q_minus, q_plus)` with respect to `mu`, where
/// `q_minus * mu = mu * q_minus` and `q_plus * mu = -mu * q_plus`.
/// `q_minus = (q - mu*q*mu)/2`, `q_plus = (q + mu*q*mu)/2`.
pub fn commuting_split(q: Quaternion, mu: Root) -> (Quaternion, Quaternion) {
    let m = mu.as_quaternion();
    let sandwich = m * q * m;
    ((q - sandwich) * 0.5, (q + sandwich) * 0.5)
}

/// The part of `q` commuting with `mu` (index j = 0).
pub fn commuting_part(q: Quaternion, mu: Root) -> Quaternion {
    commuting_split(q, mu).0
}

/// The part of `q` anticommuting with `mu` (index j = 1).
pub fn anticommuting_part(q: Quaternion, mu: Root) -> Quaternion {
    commuting_split(q, mu).1
}
