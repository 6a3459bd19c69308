//! Reduced row-echelon machinery: subspaces, quotients, idempotent images
//! and affine system solving.
//!
//! Pivots are always chosen leftmost-first, so every derived basis is the
//! canonical reduced row-echelon basis of its row space and independent of
//! the order in which generators were supplied.

use crate::error::LinalgError;
use crate::linalg::matrix::{LinMap, Matrix};
use crate::linalg::space::{FinSpace, Vector};
use crate::scalar::{Field, Scalar};

/// A reduced row-echelon basis, built incrementally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    width: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn reduce(width: usize, rows: impl IntoIterator<Item = Vector>) -> Self {
        let mut e = Echelon::new(width);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the current basis; the result has zeros in every
    /// pivot column.
    pub fn residue(&self, v: &Vector) -> Vector {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                v.axpy(&c, row);
            }
        }
        v
    }

    /// Adds `v` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        debug_assert_eq!(v.dim(), self.width);
        let mut v = self.residue(&v);
        let Some(lead) = (0..self.width).find(|&j| !v[j].is_zero()) else {
            return false;
        };
        let inv = v[lead].inv().expect("nonzero pivot");
        v = v.scale(&inv);
        for row in &mut self.rows {
            if !row[lead].is_zero() {
                let c = -&row[lead];
                row.axpy(&c, &v);
            }
        }
        let at = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.residue(v).is_zero()
    }
}

/// A subspace of a labeled ambient space, stored by its canonical echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: FinSpace,
    echelon: Echelon,
}

impl Subspace {
    pub fn span(ambient: &FinSpace, generators: &[Vector]) -> Result<Self, LinalgError> {
        for g in generators {
            g.check_dim(ambient.dim())?;
        }
        Ok(Subspace {
            ambient: ambient.clone(),
            echelon: Echelon::reduce(ambient.dim(), generators.iter().cloned()),
        })
    }

    pub fn ambient(&self) -> &FinSpace {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn basis(&self) -> &[Vector] {
        self.echelon.rows()
    }

    pub fn pivots(&self) -> &[usize] {
        self.echelon.pivots()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.echelon.contains(v)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(Vector::from_scalars(
            self.pivots().iter().map(|&p| v[p].clone()).collect(),
        ))
    }
}

/// `ambient / relations` with explicit projection and section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    relations: Subspace,
    quotient: FinSpace,
    /// Ambient basis indices that survive as quotient basis (non-pivot columns).
    kept: Vec<usize>,
    project: LinMap,
    section: LinMap,
}

impl QuotientSpace {
    pub fn ambient(&self) -> &FinSpace {
        self.relations.ambient()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn quotient(&self) -> &FinSpace {
        &self.quotient
    }

    pub fn kept_columns(&self) -> &[usize] {
        &self.kept
    }

    pub fn project(&self) -> &LinMap {
        &self.project
    }

    pub fn section(&self) -> &LinMap {
        &self.section
    }

    pub fn project_vec(&self, v: &Vector) -> Vector {
        let r = self.relations.echelon.residue(v);
        Vector::from_scalars(self.kept.iter().map(|&j| r[j].clone()).collect())
    }
}

/// Quotient of `ambient` by the span of `relation_vectors`. The quotient basis
/// is labeled by the ambient basis elements at non-pivot columns.
pub fn quotient_by(ambient: &FinSpace, relation_vectors: &[Vector]) -> Result<QuotientSpace, LinalgError> {
    let relations = Subspace::span(ambient, relation_vectors)?;
    let n = ambient.dim();
    let kept: Vec<usize> = (0..n).filter(|j| !relations.pivots().contains(j)).collect();
    let quotient = FinSpace::new(
        ambient.field(),
        kept.iter().map(|&j| ambient.label(j).to_string()).collect(),
    )?;
    let field = ambient.field();
    let proj_images: Vec<Vector> = (0..n)
        .map(|j| {
            let r = relations.echelon.residue(&ambient.basis_vector(j));
            Vector::from_scalars(kept.iter().map(|&k| r[k].clone()).collect())
        })
        .collect();
    let project = LinMap::from_images(ambient.clone(), quotient.clone(), &proj_images);
    let sec_images: Vec<Vector> = kept.iter().map(|&j| Vector::unit(field, n, j)).collect();
    let section = LinMap::from_images(quotient.clone(), ambient.clone(), &sec_images);
    Ok(QuotientSpace {
        relations,
        quotient,
        kept,
        project,
        section,
    })
}

/// Image of an idempotent endomorphism `e`, with inclusion and retraction
/// such that `incl ∘ retr = e` and `retr ∘ incl = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentImage {
    pub sub: Subspace,
    pub space: FinSpace,
    pub incl: LinMap,
    pub retr: LinMap,
}

pub fn image_of_idempotent(e: &LinMap) -> Result<IdempotentImage, LinalgError> {
    let n = e.domain().dim();
    if e.codomain().dim() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: n,
            found: e.codomain().dim(),
        });
    }
    let ee = e.matrix().compose(e.matrix());
    if let Some(column) = (0..n).find(|&j| ee.column(j) != e.matrix().column(j)) {
        return Err(LinalgError::NotIdempotent { column });
    }
    let columns: Vec<Vector> = (0..n).map(|j| e.image_of_basis(j)).collect();
    let sub = Subspace::span(e.codomain(), &columns)?;
    let ambient = e.codomain();
    let space = FinSpace::new(
        ambient.field(),
        sub.pivots().iter().map(|&p| ambient.label(p).to_string()).collect(),
    )?;
    let incl = LinMap::from_images(space.clone(), ambient.clone(), sub.basis());
    // The echelon basis has an identity block at the pivot columns, so reading
    // e(x) at the pivots gives its coordinates.
    let retr_images: Vec<Vector> = columns
        .iter()
        .map(|c| Vector::from_scalars(sub.pivots().iter().map(|&p| c[p].clone()).collect()))
        .collect();
    let retr = LinMap::from_images(e.domain().clone(), space.clone(), &retr_images);
    Ok(IdempotentImage {
        sub,
        space,
        incl,
        retr,
    })
}

/// An affine system `row · x = rhs`, reduced incrementally.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: Field,
    unknowns: usize,
    echelon: Echelon,
}

impl LinearSystem {
    pub fn new(field: Field, unknowns: usize) -> Self {
        LinearSystem {
            field,
            unknowns,
            echelon: Echelon::new(unknowns + 1),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn push(&mut self, row: &Vector, rhs: &Scalar) {
        debug_assert_eq!(row.dim(), self.unknowns);
        let mut coords = row.coords().to_vec();
        coords.push(rhs.clone());
        self.echelon.insert(Vector::from_scalars(coords));
    }

    pub fn is_consistent(&self) -> bool {
        self.echelon.pivots().last() != Some(&self.unknowns)
    }

    /// Dimension of the solution space of the homogeneous part.
    pub fn nullity(&self) -> usize {
        let rank = self
            .echelon
            .pivots()
            .iter()
            .filter(|&&p| p < self.unknowns)
            .count();
        self.unknowns - rank
    }

    pub fn free_variables(&self) -> Vec<usize> {
        (0..self.unknowns)
            .filter(|j| !self.echelon.pivots().contains(j))
            .collect()
    }

    /// One exact solution with free variable `j` set to `free(j)`.
    pub fn solution_with(&self, free: impl Fn(usize) -> Scalar) -> Option<Vector> {
        if !self.is_consistent() {
            return None;
        }
        let n = self.unknowns;
        let mut x: Vec<Option<Scalar>> = vec![None; n];
        for j in self.free_variables() {
            x[j] = Some(free(j));
        }
        for (row, &p) in self.echelon.rows().iter().zip(self.echelon.pivots()) {
            let mut v = row[n].clone();
            for (j, c) in row.support() {
                if j != p && j < n {
                    v = &v - &(c * x[j].as_ref().expect("free variable assigned"));
                }
            }
            x[p] = Some(v);
        }
        Some(Vector::from_scalars(
            x.into_iter()
                .map(|c| c.expect("every unknown is pivot or free"))
                .collect(),
        ))
    }

    /// Canonical solution: free variables set to zero.
    pub fn solution(&self) -> Option<Vector> {
        let zero = self.field.zero();
        self.solution_with(|_| zero.clone())
    }
}

/// Solves `row · x = rhs` for every constraint; `None` when inconsistent.
/// Free variables are set to zero.
pub fn solve_linear(unknowns: usize, field: Field, rows: &[(Vector, Scalar)]) -> Option<Vector> {
    let mut sys = LinearSystem::new(field, unknowns);
    for (r, b) in rows {
        sys.push(r, b);
    }
    sys.solution()
}

/// Dense matrix with the generators of `sub` as columns; handy in tests.
pub fn basis_matrix(sub: &Subspace) -> Matrix {
    Matrix::from_columns(sub.ambient().field(), sub.ambient().dim(), sub.basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn empty_relations_give_identity_projection() {
        let amb = FinSpace::numbered(q(), "e", 3);
        let qs = quotient_by(&amb, &[]).unwrap();
        assert_eq!(qs.quotient().dim(), 3);
        assert!(qs.project().is_identity());
    }

    #[test]
    fn one_relation_identifies_basis_vectors() {
        let amb = FinSpace::numbered(q(), "e", 2);
        let qs = quotient_by(&amb, &[Vector::from_i64(q(), &[1, -1])]).unwrap();
        assert_eq!(qs.quotient().dim(), 1);
        assert_eq!(qs.quotient().label(0), "e1");
        assert_eq!(qs.project_vec(&amb.basis_vector(0)), qs.project_vec(&amb.basis_vector(1)));
        let ps = qs.project().compose(qs.section()).unwrap();
        assert!(ps.is_identity());
    }

    #[test]
    fn relation_from_wrong_space_rejected() {
        let amb = FinSpace::numbered(q(), "e", 2);
        assert!(quotient_by(&amb, &[Vector::from_i64(q(), &[1, 0, 0])]).is_err());
    }

    #[test]
    fn idempotent_images() {
        let s = FinSpace::numbered(q(), "e", 3);
        let id = LinMap::identity(&s);
        let img = image_of_idempotent(&id).unwrap();
        assert_eq!(img.sub.dim(), 3);

        let zero = LinMap::from_images(s.clone(), s.clone(), &[s.zero(), s.zero(), s.zero()]);
        let img = image_of_idempotent(&zero).unwrap();
        assert_eq!(img.sub.dim(), 0);

        let not = LinMap::from_images(
            s.clone(),
            s.clone(),
            &[Vector::from_i64(q(), &[2, 0, 0]), s.zero(), s.zero()],
        );
        assert_eq!(
            image_of_idempotent(&not).unwrap_err(),
            LinalgError::NotIdempotent { column: 0 }
        );
    }

    #[test]
    fn projector_onto_diagonal() {
        // e(x, y) = ((x+y)/2, (x+y)/2)
        let s = FinSpace::numbered(q(), "e", 2);
        let h = q().from_fraction(1, 2).unwrap();
        let col = Vector::from_scalars(vec![h.clone(), h]);
        let e = LinMap::from_images(s.clone(), s, &[col.clone(), col]);
        let img = image_of_idempotent(&e).unwrap();
        assert_eq!(img.sub.dim(), 1);
        assert_eq!(img.incl.compose(&img.retr).unwrap(), e);
        assert!(img.retr.compose(&img.incl).unwrap().is_identity());
    }

    #[test]
    fn solver_examples() {
        let f = q();
        assert_eq!(solve_linear(3, f, &[]), Some(Vector::zeros(f, 3)));
        let rows = vec![
            (Vector::from_i64(f, &[1]), f.from_i64(1)),
            (Vector::from_i64(f, &[1]), f.from_i64(2)),
        ];
        assert_eq!(solve_linear(1, f, &rows), None);
        let rows = vec![(Vector::from_i64(f, &[1, 1]), f.from_i64(3))];
        assert_eq!(solve_linear(2, f, &rows), Some(Vector::from_i64(f, &[3, 0])));
    }

    #[test]
    fn seeded_free_variables() {
        let f = q();
        let mut sys = LinearSystem::new(f, 2);
        sys.push(&Vector::from_i64(f, &[1, 1]), &f.from_i64(3));
        assert_eq!(sys.nullity(), 1);
        let x = sys.solution_with(|_| f.from_i64(5)).unwrap();
        assert_eq!(x, Vector::from_i64(f, &[-2, 5]));
    }

    fn small_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-3i64..=3, n)
    }

    proptest! {
        #[test]
        fn quotient_invariants(gens in proptest::collection::vec(small_vec(4), 0..5)) {
            let f = q();
            let amb = FinSpace::numbered(f, "e", 4);
            let rels: Vec<Vector> = gens.iter().map(|g| Vector::from_i64(f, g)).collect();
            let qs = quotient_by(&amb, &rels).unwrap();
            prop_assert_eq!(qs.quotient().dim(), 4 - qs.relations().dim());
            prop_assert!(qs.project().compose(qs.section()).unwrap().is_identity());
            for r in &rels {
                prop_assert!(qs.project_vec(r).is_zero());
            }
            for j in 0..4 {
                let v = amb.basis_vector(j);
                let back = qs.section().apply(&qs.project_vec(&v));
                prop_assert!(qs.relations().contains(&v.sub(&back)));
            }
        }

        #[test]
        fn solutions_satisfy_every_row(
            coeffs in proptest::collection::vec(small_vec(3), 0..6),
            rhs in proptest::collection::vec(-3i64..=3, 6),
        ) {
            let f = q();
            let rows: Vec<(Vector, Scalar)> = coeffs
                .iter()
                .zip(&rhs)
                .map(|(c, b)| (Vector::from_i64(f, c), f.from_i64(*b)))
                .collect();
            if let Some(x) = solve_linear(3, f, &rows) {
                for (r, b) in &rows {
                    let dot = r.iter().zip(x.iter()).fold(f.zero(), |acc, (a, y)| &acc + &(a * y));
                    prop_assert_eq!(&dot, b);
                }
            }
        }

        #[test]
        fn echelon_is_order_independent(gens in proptest::collection::vec(small_vec(4), 1..5)) {
            let f = q();
            let vs: Vec<Vector> = gens.iter().map(|g| Vector::from_i64(f, g)).collect();
            let fwd = Echelon::reduce(4, vs.iter().cloned());
            let rev = Echelon::reduce(4, vs.iter().rev().cloned());
            prop_assert_eq!(fwd, rev);
        }
    }
}
