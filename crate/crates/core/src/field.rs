//! Quaternion-valued functions sampled on cyclic 2-D grids.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Argument-reflection multi-index: `phi1` negates the first grid axis,
/// `phi2` the second. On a cyclic grid, negation is index negation mod n.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ReflectionIndex {
    pub phi1: bool,
    pub phi2: bool,
}

impl ReflectionIndex {
    pub const NONE: ReflectionIndex = ReflectionIndex::new(false, false);
    pub const BOTH: ReflectionIndex = ReflectionIndex::new(true, true);

    pub const fn new(phi1: bool, phi2: bool) -> ReflectionIndex {
        ReflectionIndex { phi1, phi2 }
    }

    /// All four indices in the fixed order (0,0), (0,1), (1,0), (1,1).
    pub fn all() -> [ReflectionIndex; 4] {
        [
            ReflectionIndex::new(false, false),
            ReflectionIndex::new(false, true),
            ReflectionIndex::new(true, false),
            ReflectionIndex::new(true, true),
        ]
    }

    /// Composition of reflections: component-wise parity.
    pub fn compose(self, other: ReflectionIndex) -> ReflectionIndex {
        ReflectionIndex::new(self.phi1 ^ other.phi1, self.phi2 ^ other.phi2)
    }
}

impl fmt::Display for ReflectionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.phi1 as u8, self.phi2 as u8)
    }
}

/// An `n1 x n2` grid of quaternions in row-major order: index `(x1, x2)`
/// lives at `x1 * n2 + x2`. Represents sampled signals and spectra alike.
#[derive(Clone, Debug, PartialEq)]
pub struct QField {
    n1: usize,
    n2: usize,
    data: Vec<Quaternion>,
}

impl QField {
    pub fn new(n1: usize, n2: usize, data: Vec<Quaternion>) -> Result<QField> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidShape(format!(
                "grid dimensions must be positive, got {}x{}",
                n1, n2
            )));
        }
        if data.len() != n1 * n2 {
            return Err(Error::InvalidShape(format!(
                "expected {} samples for a {}x{} grid, got {}",
                n1 * n2,
                n1,
                n2,
                data.len()
            )));
        }
        Ok(QField { n1, n2, data })
    }

    pub fn zeros(n1: usize, n2: usize) -> QField {
        QField::new(n1, n2, vec![Quaternion::ZERO; n1 * n2]).expect("positive dimensions")
    }

    pub fn constant(n1: usize, n2: usize, q: Quaternion) -> QField {
        QField::new(n1, n2, vec![q; n1 * n2]).expect("positive dimensions")
    }

    /// Unit impulse at the origin.
    pub fn delta(n1: usize, n2: usize) -> QField {
        let mut f = QField::zeros(n1, n2);
        f[(0, 0)] = Quaternion::ONE;
        f
    }

    pub fn from_fn(n1: usize, n2: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> QField {
        let mut data = Vec::with_capacity(n1 * n2);
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                data.push(f(x1, x2));
            }
        }
        QField::new(n1, n2, data).expect("positive dimensions")
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Quaternion] {
        &mut self.data
    }

    pub fn same_shape(&self, other: &QField) -> bool {
        self.shape() == other.shape()
    }

    pub(crate) fn ensure_same_shape(&self, other: &QField) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> QField {
        QField {
            n1: self.n1,
            n2: self.n2,
            data: self.data.iter().map(|&q| f(q)).collect(),
        }
    }

    /// Pointwise left multiplication `c * f`; the factor order matters.
    pub fn left_mul(&self, c: Quaternion) -> QField {
        self.map(|q| c * q)
    }

    pub fn scaled(&self, s: f64) -> QField {
        self.map(|q| q * s)
    }

    /// `self += weight * other`. Shapes must agree.
    pub fn accumulate(&mut self, other: &QField, weight: f64) {
        assert_eq!(self.shape(), other.shape(), "accumulate: shape mismatch");
        for (dst, &src) in self.data.iter_mut().zip(&other.data) {
            *dst += src * weight;
        }
    }

    /// Pointwise quaternion product `self(x) * other(x)`, factor order preserved.
    pub fn pointwise_mul(&self, other: &QField) -> Result<QField> {
        self.ensure_same_shape(other)?;
        Ok(QField {
            n1: self.n1,
            n2: self.n2,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a * b)
                .collect(),
        })
    }

    /// Sample of `f((-1)^phi1 x1, (-1)^phi2 x2)` on the cyclic grid.
    /// Involution for each index; fixes 0 and n/2 on even axes.
    pub fn reflect(&self, phi: ReflectionIndex) -> QField {
        QField::from_fn(self.n1, self.n2, |x1, x2| {
            let s1 = if phi.phi1 {
                (self.n1 - x1) % self.n1
            } else {
                x1
            };
            let s2 = if phi.phi2 {
                (self.n2 - x2) % self.n2
            } else {
                x2
            };
            self[(s1, s2)]
        })
    }

    /// Largest component-wise deviation from `other`. Shapes must agree.
    pub fn max_abs_diff(&self, other: &QField) -> f64 {
        assert_eq!(self.shape(), other.shape(), "max_abs_diff: shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).abs_max())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.abs_max()).fold(0.0, f64::max)
    }

    /// Sum of squared component magnitudes over the whole grid.
    pub fn total_norm_sq(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sq()).sum()
    }

    /// Swaps the two grid axes.
    pub(crate) fn transposed(&self) -> QField {
        QField::from_fn(self.n2, self.n1, |x1, x2| self[(x2, x1)])
    }
}

impl Index<(usize, usize)> for QField {
    type Output = Quaternion;
    fn index(&self, (x1, x2): (usize, usize)) -> &Quaternion {
        &self.data[x1 * self.n2 + x2]
    }
}

impl IndexMut<(usize, usize)> for QField {
    fn index_mut(&mut self, (x1, x2): (usize, usize)) -> &mut Quaternion {
        &mut self.data[x1 * self.n2 + x2]
    }
}
