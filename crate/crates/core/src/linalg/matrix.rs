use crate::error::LinalgError;
use crate::linalg::echelon::Echelon;
use crate::linalg::space::{FinSpace, Vector};
use crate::scalar::{Field, Scalar};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.dim(), rows);
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            debug_assert_eq!(r.dim(), cols);
            for (j, x) in r.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector::from_scalars((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn row(&self, r: usize) -> Vector {
        Vector::from_scalars(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        debug_assert_eq!(v.dim(), self.cols);
        let field = field_of(&self.data, v);
        let mut out = Vector::zeros(field, self.rows);
        for (j, x) in v.support() {
            for i in 0..self.rows {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out[i] = &out[i] + &(a * x);
                }
            }
        }
        out
    }

    /// `self * other`.
    pub fn compose(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let columns: Vec<Vector> = (0..other.cols)
            .map(|j| self.apply(&other.column(j)))
            .collect();
        let field = self
            .data
            .first()
            .or(other.data.first())
            .map(Scalar::field)
            .unwrap_or(Field::Rational);
        Matrix::from_columns(field, self.rows, &columns)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vector> = (0..self.rows).map(|r| self.row(r)).collect();
        Echelon::reduce(self.cols, rows).rank()
    }

    /// Exact inverse by Gauss-Jordan elimination on `[M | I]`.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let field = self.data[0].field();
        let rows: Vec<Vector> = (0..n)
            .map(|r| {
                let mut coords = self.row(r).into_coords();
                coords.extend(Vector::unit(field, n, r).into_coords());
                Vector::from_scalars(coords)
            })
            .collect();
        let ech = Echelon::reduce(2 * n, rows);
        if ech.pivots().len() < n || ech.pivots()[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        let inv_rows: Vec<Vector> = ech
            .rows()
            .iter()
            .take(n)
            .map(|r| Vector::from_scalars(r.coords()[n..].to_vec()))
            .collect();
        Ok(Matrix::from_rows(field, n, &inv_rows))
    }
}

fn field_of(data: &[Scalar], v: &Vector) -> Field {
    data.first()
        .or(v.coords().first())
        .map(Scalar::field)
        .unwrap_or(Field::Rational)
}

/// A linear map between labeled spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    domain: FinSpace,
    codomain: FinSpace,
    matrix: Matrix,
}

impl LinMap {
    pub fn new(domain: FinSpace, codomain: FinSpace, matrix: Matrix) -> Result<Self, LinalgError> {
        if matrix.rows() != codomain.dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: codomain.dim(),
                found: matrix.rows(),
            });
        }
        if matrix.cols() != domain.dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: domain.dim(),
                found: matrix.cols(),
            });
        }
        Ok(LinMap {
            domain,
            codomain,
            matrix,
        })
    }

    /// Builds a map from the images of the domain basis.
    pub fn from_images(domain: FinSpace, codomain: FinSpace, images: &[Vector]) -> Self {
        let m = Matrix::from_columns(domain.field(), codomain.dim(), images);
        LinMap {
            domain,
            codomain,
            matrix: m,
        }
    }

    pub fn identity(space: &FinSpace) -> Self {
        LinMap {
            domain: space.clone(),
            codomain: space.clone(),
            matrix: Matrix::identity(space.field(), space.dim()),
        }
    }

    pub fn domain(&self) -> &FinSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FinSpace {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.matrix.apply(v)
    }

    pub fn image_of_basis(&self, j: usize) -> Vector {
        self.matrix.column(j)
    }

    /// `self ∘ inner`; fails unless `inner.codomain` matches `self.domain`.
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap, LinalgError> {
        if inner.codomain.dim() != self.domain.dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.domain.dim(),
                found: inner.codomain.dim(),
            });
        }
        Ok(LinMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.compose(&inner.matrix),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn inverse(&self) -> Result<LinMap, LinalgError> {
        Ok(LinMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: self.matrix.inverse()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let q = Field::Rational;
        let m = Matrix::from_rows(
            q,
            3,
            &[
                Vector::from_i64(q, &[2, 1, 0]),
                Vector::from_i64(q, &[0, 1, 3]),
                Vector::from_i64(q, &[1, 0, 1]),
            ],
        );
        let inv = m.inverse().unwrap();
        assert!(m.compose(&inv).is_identity());
        assert!(inv.compose(&m).is_identity());
    }

    #[test]
    fn singular_matrix_detected() {
        let q = Field::Rational;
        let m = Matrix::from_rows(
            q,
            2,
            &[Vector::from_i64(q, &[1, 2]), Vector::from_i64(q, &[2, 4])],
        );
        assert_eq!(m.inverse(), Err(LinalgError::Singular));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn composition_requires_matching_spaces() {
        let q = Field::Rational;
        let a = LinMap::identity(&FinSpace::numbered(q, "a", 2));
        let b = LinMap::identity(&FinSpace::numbered(q, "b", 3));
        assert!(a.compose(&b).is_err());
        assert!(a.compose(&a).unwrap().is_identity());
    }
}
