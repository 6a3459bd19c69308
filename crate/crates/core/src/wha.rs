//! Weak bialgebras and weak Hopf algebras given by structure constants.
//!
//! Every identity is checked on basis tuples; by multilinearity this is the
//! same as checking it on all elements. Sweedler legs are evaluated by
//! contracting the comultiplication constants (`Δ²` is built as
//! `(Δ ⊗ id) ∘ Δ`).

use crate::check::{arg, check_grid};
use crate::error::WhaError;
use crate::linalg::{tensor_space, FinSpace, LinMap, Subspace, Vector};
use crate::report::{ConditionEntry, ConditionReport, Witness};
use crate::scalar::{Field, Scalar};

/// Sparse `Δ(e_i)`: `(left, right, coefficient)`.
pub type Coproduct = Vec<(usize, usize, Scalar)>;
/// Sparse `Δ²(e_i)`.
pub type Coproduct2 = Vec<([usize; 3], Scalar)>;

/// Finite-dimensional unital algebra: `mult[i * n + j] = e_i e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredAlgebra {
    space: FinSpace,
    mult: Vec<Vector>,
    unit: Vector,
}

impl StructuredAlgebra {
    pub fn new(space: FinSpace, mult: Vec<Vector>, unit: Vector) -> Result<Self, WhaError> {
        let n = space.dim();
        if mult.len() != n * n {
            return Err(WhaError::Shape(format!(
                "multiplication table has {} entries, expected {}",
                mult.len(),
                n * n
            )));
        }
        for v in mult.iter().chain(std::iter::once(&unit)) {
            v.check_dim(n)?;
        }
        Ok(StructuredAlgebra { space, mult, unit })
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Vector {
        &self.mult[i * self.dim() + j]
    }

    pub fn table(&self) -> &[Vector] {
        &self.mult
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = self.space.zero();
        for (i, a) in x.support() {
            for (j, b) in y.support() {
                out.axpy(&(a * b), self.mul_basis(i, j));
            }
        }
        out
    }

    /// Associativity and unit laws.
    pub fn verify(&self) -> ConditionReport {
        let n = self.dim();
        let lbl = |i: usize| self.space.label(i).to_string();
        let mut r = ConditionReport::new();
        r.push(check_grid(
            "assoc",
            &[n, n, n],
            |t| {
                let (i, j, k) = (t[0], t[1], t[2]);
                let e = |x| self.space.basis_vector(x);
                (
                    self.mul(self.mul_basis(i, j), &e(k)),
                    self.mul(&e(i), self.mul_basis(j, k)),
                )
            },
            |t| {
                vec![
                    arg("x", t[0].to_string(), lbl(t[0])),
                    arg("y", t[1].to_string(), lbl(t[1])),
                    arg("z", t[2].to_string(), lbl(t[2])),
                ]
            },
        ));
        r.push(check_grid(
            "unit",
            &[n],
            |t| {
                let e = self.space.basis_vector(t[0]);
                (
                    concat(&[self.mul(&self.unit, &e), self.mul(&e, &self.unit)]),
                    concat(&[e.clone(), e]),
                )
            },
            |t| vec![arg("x", t[0].to_string(), lbl(t[0]))],
        ));
        r
    }
}

pub(crate) fn concat(parts: &[Vector]) -> Vector {
    Vector::from_scalars(parts.iter().flat_map(|p| p.coords().iter().cloned()).collect())
}

/// Coalgebra: `comult[i]` lives in `space ⊗ space` (row-major).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredCoalgebra {
    space: FinSpace,
    comult: Vec<Vector>,
    counit: Vec<Scalar>,
}

impl StructuredCoalgebra {
    pub fn new(space: FinSpace, comult: Vec<Vector>, counit: Vec<Scalar>) -> Result<Self, WhaError> {
        let n = space.dim();
        if comult.len() != n || counit.len() != n {
            return Err(WhaError::Shape(format!(
                "coalgebra tables sized {}/{}, expected {n}",
                comult.len(),
                counit.len()
            )));
        }
        for v in &comult {
            v.check_dim(n * n)?;
        }
        Ok(StructuredCoalgebra {
            space,
            comult,
            counit,
        })
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn comult(&self, i: usize) -> &Vector {
        &self.comult[i]
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }
}

/// Raw (unverified) weak bialgebra data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakBialgebra {
    alg: StructuredAlgebra,
    coalg: StructuredCoalgebra,
    delta: Vec<Coproduct>,
}

impl WeakBialgebra {
    pub fn new(alg: StructuredAlgebra, coalg: StructuredCoalgebra) -> Result<Self, WhaError> {
        if alg.space() != coalg.space() {
            return Err(WhaError::Shape(
                "algebra and coalgebra live on different spaces".to_string(),
            ));
        }
        let n = alg.dim();
        let delta = (0..n)
            .map(|i| {
                coalg
                    .comult(i)
                    .support()
                    .map(|(idx, c)| (idx / n, idx % n, c.clone()))
                    .collect()
            })
            .collect();
        Ok(WeakBialgebra { alg, coalg, delta })
    }

    pub fn algebra(&self) -> &StructuredAlgebra {
        &self.alg
    }

    pub fn coalgebra(&self) -> &StructuredCoalgebra {
        &self.coalg
    }

    pub fn space(&self) -> &FinSpace {
        self.alg.space()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn unit(&self) -> &Vector {
        self.alg.unit()
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.alg.mul(x, y)
    }

    pub fn basis(&self, i: usize) -> Vector {
        self.space().basis_vector(i)
    }

    pub fn delta_terms(&self, i: usize) -> &Coproduct {
        &self.delta[i]
    }

    /// Sparse `Δ(x)` for a general element.
    pub fn delta_of(&self, x: &Vector) -> Coproduct {
        let mut out = Vec::new();
        for (i, c) in x.support() {
            for (a, b, d) in &self.delta[i] {
                out.push((*a, *b, c * d));
            }
        }
        out
    }

    /// `Δ²(e_i) = (Δ ⊗ id)Δ(e_i)` as sparse triples.
    pub fn delta2_terms(&self, i: usize) -> Coproduct2 {
        let mut out = Vec::new();
        for (a, b, c) in &self.delta[i] {
            for (p, q, d) in &self.delta[*a] {
                out.push(([*p, *q, *b], c * d));
            }
        }
        out
    }

    pub fn delta2_of(&self, x: &Vector) -> Coproduct2 {
        let mut out = Vec::new();
        for (i, c) in x.support() {
            for (t, d) in self.delta2_terms(i) {
                out.push((t, c * &d));
            }
        }
        out
    }

    pub fn eps(&self, x: &Vector) -> Scalar {
        let mut acc = self.field().zero();
        for (i, c) in x.support() {
            acc = &acc + &(c * &self.coalg.counit()[i]);
        }
        acc
    }

    pub fn eps_basis(&self, i: usize) -> &Scalar {
        &self.coalg.counit()[i]
    }

    fn dense2(&self, terms: &[(usize, usize, Scalar)]) -> Vector {
        let n = self.dim();
        let mut v = Vector::zeros(self.field(), n * n);
        for (a, b, c) in terms {
            v[a * n + b] = &v[a * n + b] + c;
        }
        v
    }

    fn dense3(&self, terms: &[([usize; 3], Scalar)]) -> Vector {
        let n = self.dim();
        let mut v = Vector::zeros(self.field(), n * n * n);
        for (t, c) in terms {
            let idx = (t[0] * n + t[1]) * n + t[2];
            v[idx] = &v[idx] + c;
        }
        v
    }

    /// Componentwise product in `H ⊗ H`.
    fn mul2(&self, x: &[(usize, usize, Scalar)], y: &[(usize, usize, Scalar)]) -> Vector {
        let n = self.dim();
        let mut out = Vector::zeros(self.field(), n * n);
        for (a, b, c) in x {
            for (p, q, d) in y {
                let left = self.alg.mul_basis(*a, *p);
                let right = self.alg.mul_basis(*b, *q);
                let cd = c * d;
                for (i, u) in left.support() {
                    for (j, w) in right.support() {
                        let idx = i * n + j;
                        out[idx] = &out[idx] + &(&cd * &(u * w));
                    }
                }
            }
        }
        out
    }

    fn label(&self, i: usize) -> String {
        self.space().label(i).to_string()
    }

    fn args(&self, roles: &[&str], t: &[usize]) -> Vec<crate::report::WitnessArg> {
        roles
            .iter()
            .zip(t)
            .map(|(r, &i)| arg(r, i.to_string(), self.label(i)))
            .collect()
    }
}

/// Axiom groups of a weak bialgebra: `assoc`, `unit`, `coassoc`, `counit`,
/// `delta-mult`, `eq1` (shape of `Δ²(1)`) and `eq2` (weak multiplicativity
/// of `ε`).
pub fn verify_weak_bialgebra(b: &WeakBialgebra) -> ConditionReport {
    let n = b.dim();
    let f = b.field();
    let mut r = b.algebra().verify();

    r.push(check_grid(
        "coassoc",
        &[n],
        |t| {
            let i = t[0];
            let left = b.dense3(&b.delta2_terms(i));
            let mut right = Vec::new();
            for (a, c, x) in b.delta_terms(i) {
                for (p, q, y) in b.delta_terms(*c) {
                    right.push(([*a, *p, *q], x * y));
                }
            }
            (left, b.dense3(&right))
        },
        |t| b.args(&["h"], t),
    ));

    r.push(check_grid(
        "counit",
        &[n],
        |t| {
            let i = t[0];
            let mut left = b.space().zero();
            let mut right = b.space().zero();
            for (a, c, x) in b.delta_terms(i) {
                left[*c] = &left[*c] + &(x * b.eps_basis(*a));
                right[*a] = &right[*a] + &(x * b.eps_basis(*c));
            }
            let e = b.basis(i);
            (concat(&[left, right]), concat(&[e.clone(), e]))
        },
        |t| b.args(&["h"], t),
    ));

    r.push(check_grid(
        "delta-mult",
        &[n, n],
        |t| {
            let prod = b.algebra().mul_basis(t[0], t[1]);
            (
                b.dense2(&b.delta_of(prod)),
                b.mul2(b.delta_terms(t[0]), b.delta_terms(t[1])),
            )
        },
        |t| b.args(&["h", "l"], t),
    ));

    // Δ²(1) = 1_1 ⊗ 1_2 1_1' ⊗ 1_2' = 1_1 ⊗ 1_1' 1_2 ⊗ 1_2'
    r.push(check_grid(
        "eq1",
        &[1],
        |_| {
            let one = b.unit();
            let d1 = b.delta_of(one);
            let lhs = b.dense3(&b.delta2_of(one));
            let mut mid = Vec::new();
            let mut swapped = Vec::new();
            for (a, c, x) in &d1 {
                for (a2, c2, y) in &d1 {
                    let xy = x * y;
                    for (k, z) in b.algebra().mul_basis(*c, *a2).support() {
                        mid.push(([*a, k, *c2], &xy * z));
                    }
                    for (k, z) in b.algebra().mul_basis(*a2, *c).support() {
                        swapped.push(([*a, k, *c2], &xy * z));
                    }
                }
            }
            (
                concat(&[lhs.clone(), lhs]),
                concat(&[b.dense3(&mid), b.dense3(&swapped)]),
            )
        },
        |_| vec![],
    ));

    // ε(hlm) = ε(h l_1) ε(l_2 m) = ε(h l_2) ε(l_1 m)
    r.push(check_grid(
        "eq2",
        &[n, n, n],
        |t| {
            let (h, l, m) = (b.basis(t[0]), t[1], b.basis(t[2]));
            let hlm = b.eps(&b.mul(b.algebra().mul_basis(t[0], l), &m));
            let mut first = f.zero();
            let mut second = f.zero();
            for (a, c, x) in b.delta_terms(l) {
                let ea = b.basis(*a);
                let ec = b.basis(*c);
                let u = &b.eps(&b.mul(&h, &ea)) * &b.eps(&b.mul(&ec, &m));
                let v = &b.eps(&b.mul(&h, &ec)) * &b.eps(&b.mul(&ea, &m));
                first = &first + &(x * &u);
                second = &second + &(x * &v);
            }
            (
                Vector::from_scalars(vec![hlm.clone(), hlm]),
                Vector::from_scalars(vec![first, second]),
            )
        },
        |t| b.args(&["h", "l", "m"], t),
    ));
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    L,
    R,
}

/// `Π^L(h) = ε(1_1 h) 1_2` or `Π^R(h) = 1_1 ε(h 1_2)` as a matrix.
pub fn canonical_projector(b: &WeakBialgebra, side: Side) -> LinMap {
    let one_terms = b.delta_of(b.unit());
    let images: Vec<Vector> = (0..b.dim())
        .map(|h| {
            let eh = b.basis(h);
            let mut out = b.space().zero();
            for (a, c, x) in &one_terms {
                match side {
                    Side::L => {
                        let e = b.eps(&b.mul(&b.basis(*a), &eh));
                        out[*c] = &out[*c] + &(x * &e);
                    }
                    Side::R => {
                        let e = b.eps(&b.mul(&eh, &b.basis(*c)));
                        out[*a] = &out[*a] + &(x * &e);
                    }
                }
            }
            out
        })
        .collect();
    LinMap::from_images(b.space().clone(), b.space().clone(), &images)
}

/// `H^L = Im Π^L` or `H^R = Im Π^R`, checked to be a unital subalgebra.
pub fn counital_subalgebra(b: &WeakBialgebra, side: Side) -> Result<Subspace, WhaError> {
    let p = canonical_projector(b, side);
    let cols: Vec<Vector> = (0..b.dim()).map(|j| p.image_of_basis(j)).collect();
    let sub = Subspace::span(b.space(), &cols)?;
    if !sub.contains(b.unit()) {
        return Err(WhaError::NotClosed(Box::new(Witness {
            args: vec![arg("unit", "1", b.space().render(b.unit()))],
            lhs: b.unit().coords().to_vec(),
            rhs: vec![],
        })));
    }
    let basis = sub.basis();
    for (i, u) in basis.iter().enumerate() {
        for (j, w) in basis.iter().enumerate() {
            let prod = b.mul(u, w);
            if !sub.contains(&prod) {
                let side_tag = match side {
                    Side::L => "HL",
                    Side::R => "HR",
                };
                return Err(WhaError::NotClosed(Box::new(Witness {
                    args: vec![
                        arg("x", format!("{side_tag}{i}"), b.space().render(u)),
                        arg("y", format!("{side_tag}{j}"), b.space().render(w)),
                    ],
                    lhs: prod.into_coords(),
                    rhs: vec![],
                })));
            }
        }
    }
    Ok(sub)
}

/// Antipode axioms, bijectivity, and the standard consequences
/// (anti-(co)multiplicativity, `S(1) = 1`, `ε ∘ S = ε`). When an explicit
/// inverse is supplied it is cross-checked against the computed one.
pub fn verify_antipode(b: &WeakBialgebra, s: &LinMap, s_inv: Option<&LinMap>) -> ConditionReport {
    let n = b.dim();
    let mut r = ConditionReport::new();
    if s.domain().dim() != n || s.codomain().dim() != n {
        r.push(ConditionEntry::flag(
            "antipode-shape",
            false,
            format!("antipode is {}x{}, expected {n}x{n}", s.codomain().dim(), s.domain().dim()),
        ));
        return r;
    }
    let pi_l = canonical_projector(b, Side::L);
    let pi_r = canonical_projector(b, Side::R);
    let sb = |i: usize| s.image_of_basis(i);

    r.push(check_grid(
        "antipode-left",
        &[n],
        |t| {
            let mut acc = b.space().zero();
            for (a, c, x) in b.delta_terms(t[0]) {
                acc.axpy(x, &b.mul(&b.basis(*a), &sb(*c)));
            }
            (acc, pi_l.image_of_basis(t[0]))
        },
        |t| b.args(&["h"], t),
    ));
    r.push(check_grid(
        "antipode-right",
        &[n],
        |t| {
            let mut acc = b.space().zero();
            for (a, c, x) in b.delta_terms(t[0]) {
                acc.axpy(x, &b.mul(&sb(*a), &b.basis(*c)));
            }
            (acc, pi_r.image_of_basis(t[0]))
        },
        |t| b.args(&["h"], t),
    ));
    r.push(check_grid(
        "antipode-sandwich",
        &[n],
        |t| {
            let mut acc = b.space().zero();
            for ([p, q, w], x) in b.delta2_terms(t[0]) {
                acc.axpy(&x, &b.mul(&b.mul(&sb(p), &b.basis(q)), &sb(w)));
            }
            (acc, sb(t[0]))
        },
        |t| b.args(&["h"], t),
    ));
    let computed_inv = s.inverse().ok();
    r.push(ConditionEntry::flag(
        "antipode-bijective",
        computed_inv.is_some(),
        "S has an exact inverse",
    ));
    if let Some(given) = s_inv {
        let ok = s
            .compose(given)
            .map(|m| m.is_identity())
            .unwrap_or(false)
            && given.compose(s).map(|m| m.is_identity()).unwrap_or(false);
        r.push(ConditionEntry::flag(
            "antipode-inverse-input",
            ok,
            "supplied S^-1 is a two-sided inverse of S",
        ));
    }
    r.push(check_grid(
        "S-antimult",
        &[n, n],
        |t| (s.apply(b.algebra().mul_basis(t[0], t[1])), b.mul(&sb(t[1]), &sb(t[0]))),
        |t| b.args(&["h", "l"], t),
    ));
    r.push(check_grid(
        "S-anticomult",
        &[n],
        |t| {
            let lhs = b.dense2(&b.delta_of(&sb(t[0])));
            let mut rhs = Vector::zeros(b.field(), n * n);
            for (a, c, x) in b.delta_terms(t[0]) {
                rhs.axpy(x, &sb(*c).tensor(&sb(*a)));
            }
            (lhs, rhs)
        },
        |t| b.args(&["h"], t),
    ));
    r.push(check_grid(
        "S-unit",
        &[1],
        |_| (s.apply(b.unit()), b.unit().clone()),
        |_| vec![],
    ));
    r.push(check_grid(
        "S-counit",
        &[n],
        |t| {
            (
                Vector::from_scalars(vec![b.eps(&sb(t[0]))]),
                Vector::from_scalars(vec![b.eps_basis(t[0]).clone()]),
            )
        },
        |t| b.args(&["h"], t),
    ));
    r.extend(projector_report(b, &pi_l, &pi_r));
    r
}

fn projector_report(b: &WeakBialgebra, pi_l: &LinMap, pi_r: &LinMap) -> ConditionReport {
    let n = b.dim();
    let mut r = ConditionReport::new();
    for (id, p) in [("PiL-idempotent", pi_l), ("PiR-idempotent", pi_r)] {
        r.push(check_grid(
            id,
            &[n],
            |t| (p.apply(&p.image_of_basis(t[0])), p.image_of_basis(t[0])),
            |t| b.args(&["h"], t),
        ));
    }
    // Π^L(h_1) h_2 = h
    r.push(check_grid(
        "PiL-absorb",
        &[n],
        |t| {
            let mut acc = b.space().zero();
            for (a, c, x) in b.delta_terms(t[0]) {
                acc.axpy(x, &b.mul(&pi_l.image_of_basis(*a), &b.basis(*c)));
            }
            (acc, b.basis(t[0]))
        },
        |t| b.args(&["h"], t),
    ));
    for (id, side) in [("HL-subalgebra", Side::L), ("HR-subalgebra", Side::R)] {
        r.push(match counital_subalgebra(b, side) {
            Ok(sub) => ConditionEntry::pass(id, sub.dim() * sub.dim()),
            Err(WhaError::NotClosed(w)) => ConditionEntry::fail(id, 1, *w),
            Err(e) => ConditionEntry::flag(id, false, e.to_string()),
        });
    }
    let dl = pi_l.rank();
    let dr = pi_r.rank();
    r.push(
        ConditionEntry::flag("dim-HL-eq-HR", dl == dr, format!("dim H^L = {dl}, dim H^R = {dr}"))
            .observational(),
    );
    r
}

/// A verified weak Hopf algebra with bijective antipode. Only constructible
/// through [`WeakHopfAlgebra::new`], which runs every axiom check.
#[derive(Clone, Debug)]
pub struct WeakHopfAlgebra {
    wb: WeakBialgebra,
    antipode: LinMap,
    antipode_inv: LinMap,
    pi_l: LinMap,
    pi_r: LinMap,
    hl: Subspace,
    hr: Subspace,
    report: ConditionReport,
}

impl WeakHopfAlgebra {
    pub fn new(wb: WeakBialgebra, antipode: LinMap, antipode_inv: Option<LinMap>) -> Result<Self, WhaError> {
        let mut report = verify_weak_bialgebra(&wb);
        report.extend(verify_antipode(&wb, &antipode, antipode_inv.as_ref()));
        if !report.ok() {
            return Err(WhaError::AxiomsFailed(Box::new(report)));
        }
        let inv = antipode.inverse().map_err(|_| WhaError::SingularAntipode)?;
        let pi_l = canonical_projector(&wb, Side::L);
        let pi_r = canonical_projector(&wb, Side::R);
        let hl = counital_subalgebra(&wb, Side::L)?;
        let hr = counital_subalgebra(&wb, Side::R)?;
        Ok(WeakHopfAlgebra {
            wb,
            antipode,
            antipode_inv: antipode_inv.unwrap_or(inv),
            pi_l,
            pi_r,
            hl,
            hr,
            report,
        })
    }

    pub fn bialgebra(&self) -> &WeakBialgebra {
        &self.wb
    }

    pub fn report(&self) -> &ConditionReport {
        &self.report
    }

    pub fn antipode(&self) -> &LinMap {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> &LinMap {
        &self.antipode_inv
    }

    pub fn projector(&self, side: Side) -> &LinMap {
        match side {
            Side::L => &self.pi_l,
            Side::R => &self.pi_r,
        }
    }

    pub fn counital(&self, side: Side) -> &Subspace {
        match side {
            Side::L => &self.hl,
            Side::R => &self.hr,
        }
    }

    pub fn space(&self) -> &FinSpace {
        self.wb.space()
    }

    pub fn dim(&self) -> usize {
        self.wb.dim()
    }

    pub fn field(&self) -> Field {
        self.wb.field()
    }

    pub fn basis(&self, i: usize) -> Vector {
        self.wb.basis(i)
    }

    pub fn unit(&self) -> &Vector {
        self.wb.unit()
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.wb.mul(x, y)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Vector {
        self.wb.algebra().mul_basis(i, j)
    }

    pub fn delta_terms(&self, i: usize) -> &Coproduct {
        self.wb.delta_terms(i)
    }

    pub fn delta_of(&self, x: &Vector) -> Coproduct {
        self.wb.delta_of(x)
    }

    pub fn delta2_terms(&self, i: usize) -> Coproduct2 {
        self.wb.delta2_terms(i)
    }

    pub fn eps(&self, x: &Vector) -> Scalar {
        self.wb.eps(x)
    }

    /// `H ⊗ H` with row-major labels.
    pub fn square_space(&self) -> FinSpace {
        tensor_space(self.space(), self.space())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    /// k[C2] with basis {1, g}.
    fn c2(f: Field) -> (WeakBialgebra, LinMap) {
        let sp = FinSpace::new(f, vec!["1".into(), "g".into()]).unwrap();
        let v = |c: &[i64]| Vector::from_i64(f, c);
        let mult = vec![v(&[1, 0]), v(&[0, 1]), v(&[0, 1]), v(&[1, 0])];
        let alg = StructuredAlgebra::new(sp.clone(), mult, v(&[1, 0])).unwrap();
        let comult = vec![v(&[1, 0, 0, 0]), v(&[0, 0, 0, 1])];
        let coalg = StructuredCoalgebra::new(sp.clone(), comult, vec![f.one(), f.one()]).unwrap();
        let s = LinMap::identity(&sp);
        (WeakBialgebra::new(alg, coalg).unwrap(), s)
    }

    #[test]
    fn group_algebra_is_weak_hopf() {
        let f = Field::Rational;
        let (b, s) = c2(f);
        let r = verify_weak_bialgebra(&b);
        assert!(r.ok(), "{}", r.render_text());
        let r = verify_antipode(&b, &s, None);
        assert!(r.ok(), "{}", r.render_text());
        // Π^L(h) = ε(h)1 on a Hopf algebra.
        let pl = canonical_projector(&b, Side::L);
        for h in 0..2 {
            assert_eq!(pl.image_of_basis(h), b.unit().scale(b.eps_basis(h)));
        }
        assert_eq!(counital_subalgebra(&b, Side::L).unwrap().dim(), 1);
        assert_eq!(counital_subalgebra(&b, Side::R).unwrap().dim(), 1);
        let h = WeakHopfAlgebra::new(b, s, None).unwrap();
        assert!(h.antipode_inv().is_identity());
    }

    #[test]
    fn mismatched_spaces_rejected() {
        let f = Field::Rational;
        let (b, _) = c2(f);
        let other = FinSpace::numbered(f, "x", 2);
        let coalg = StructuredCoalgebra::new(
            other,
            b.coalgebra().comult.clone(),
            b.coalgebra().counit().to_vec(),
        )
        .unwrap();
        assert!(WeakBialgebra::new(b.algebra().clone(), coalg).is_err());
    }

    #[test]
    fn broken_counit_detected() {
        let f = Field::Rational;
        let (b, _) = c2(f);
        let coalg = StructuredCoalgebra::new(
            b.space().clone(),
            b.coalgebra().comult.clone(),
            vec![f.one(), f.from_i64(2)],
        )
        .unwrap();
        let bad = WeakBialgebra::new(b.algebra().clone(), coalg).unwrap();
        let r = verify_weak_bialgebra(&bad);
        assert_eq!(r.verdict("counit"), Some(crate::report::Verdict::Fail));
        let w = r.get("counit").unwrap().witness.as_ref().unwrap();
        assert_eq!(w.args[0].token, "1");
    }
}
