use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::LinalgError;
use crate::scalar::{Field, Scalar};

/// A finite-dimensional space with a labeled basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinSpace {
    field: Field,
    labels: Vec<String>,
}

impl FinSpace {
    pub fn new(field: Field, labels: Vec<String>) -> Result<Self, LinalgError> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if l.is_empty() || l.trim() != l || l.chars().any(char::is_control) {
                return Err(LinalgError::BadLabel(format!("{l:?} is empty, padded or has control characters")));
            }
            if !seen.insert(l.as_str()) {
                return Err(LinalgError::BadLabel(format!("duplicate label {l}")));
            }
        }
        Ok(FinSpace { field, labels })
    }

    /// Space with labels `prefix0, prefix1, ...`.
    pub fn numbered(field: Field, prefix: &str, dim: usize) -> Self {
        FinSpace {
            field,
            labels: (0..dim).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn zero(&self) -> Vector {
        Vector::zeros(self.field, self.dim())
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::unit(self.field, self.dim(), i)
    }

    /// Renders a vector of this space as `c*label + ...`.
    pub fn render(&self, v: &Vector) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.labels[i].clone()
                } else {
                    format!("{c}*{}", self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// Tensor product space, labels `vi⊗wj` in row-major order (`i` outer).
pub fn tensor_space(v: &FinSpace, w: &FinSpace) -> FinSpace {
    let mut labels = Vec::with_capacity(v.dim() * w.dim());
    for a in &v.labels {
        for b in &w.labels {
            labels.push(format!("{a}⊗{b}"));
        }
    }
    FinSpace {
        field: v.field,
        labels,
    }
}

/// Dense coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn zeros(field: Field, n: usize) -> Self {
        Vector(vec![field.zero(); n])
    }

    pub fn unit(field: Field, n: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, n);
        v.0[i] = field.one();
        v
    }

    pub fn from_scalars(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    pub fn from_i64(field: Field, coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    /// Nonzero coordinates as `(index, coefficient)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Scalar, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        if c.is_zero() {
            return;
        }
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            if !y.is_zero() {
                *x = &*x + &(c * y);
            }
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|a| c * a).collect())
    }

    /// Coordinates of the tensor `self ⊗ other` (row-major).
    pub fn tensor(&self, other: &Vector) -> Vector {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.0 {
            for b in &other.0 {
                out.push(a * b);
            }
        }
        Vector(out)
    }

    pub fn check_dim(&self, expected: usize) -> Result<(), LinalgError> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                expected,
                found: self.dim(),
            })
        }
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_dims_and_labels() {
        let q = Field::Rational;
        let v = FinSpace::numbered(q, "v", 2);
        let w = FinSpace::numbered(q, "w", 8);
        let t = tensor_space(&v, &w);
        assert_eq!(t.dim(), 16);
        assert_eq!(t.label(0), "v0⊗w0");
        assert_eq!(t.label(9), "v1⊗w1");

        let one = FinSpace::numbered(q, "v", 1);
        let t = tensor_space(&one, &w);
        assert_eq!(t.dim(), 8);
        assert!(t.labels().iter().enumerate().all(|(j, l)| *l == format!("v0⊗w{j}")));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(FinSpace::new(Field::Rational, vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn render_skips_zeros() {
        let q = Field::Rational;
        let s = FinSpace::numbered(q, "e", 3);
        assert_eq!(s.render(&Vector::from_i64(q, &[1, 0, -2])), "e0 + -2*e2");
        assert_eq!(s.render(&s.zero()), "0");
    }
}
