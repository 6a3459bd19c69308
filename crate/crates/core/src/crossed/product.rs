//! The two crossed product constructions.

use crate::check::{arg, check_grid};
use crate::crossed::cocycle::check_bb_cocycle;
use crate::crossed::{check_measuring, CocycleTable, Measuring, Variant};
use crate::error::CrossedError;
use crate::linalg::{image_of_idempotent, quotient_by, tensor_space, FinSpace, IdempotentImage, LinMap, QuotientSpace, Vector};
use crate::report::{ConditionEntry, ConditionReport, Verdict, WitnessArg};
use crate::wha::{concat, Side};

/// The vector space carrying a crossed product, as a subquotient of `A ⊗ H`.
#[derive(Clone, Debug)]
pub enum Carrier {
    /// `A ⊗_{H^L} H`.
    Quotient(QuotientSpace),
    /// Image of `∇_ρ`.
    Image(IdempotentImage),
}

impl Carrier {
    pub fn space(&self) -> &FinSpace {
        match self {
            Carrier::Quotient(q) => q.quotient(),
            Carrier::Image(i) => &i.space,
        }
    }

    /// `A ⊗ H → carrier`.
    pub fn from_ambient(&self, v: &Vector) -> Vector {
        match self {
            Carrier::Quotient(q) => q.project_vec(v),
            Carrier::Image(i) => i.retr.apply(v),
        }
    }

    /// `carrier → A ⊗ H`: the section (quotient) or the inclusion (image).
    pub fn to_ambient(&self, v: &Vector) -> Vector {
        match self {
            Carrier::Quotient(q) => q.section().apply(v),
            Carrier::Image(i) => i.incl.apply(v),
        }
    }
}

/// Structure constants of a product, independent of how it was built. This
/// is what the instance format stores.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    pub variant: Variant,
    pub space: FinSpace,
    /// `mult[i * d + j] = e_i e_j`.
    pub mult: Vec<Vector>,
    pub unit: Vector,
    /// `coaction[i] = δ(e_i) ∈ carrier ⊗ H`, carrier outer.
    pub coaction: Vec<Vector>,
    pub verdicts: Vec<(String, Verdict)>,
}

#[derive(Clone, Debug)]
pub struct CrossedProduct {
    carrier: Carrier,
    table: ProductTable,
    report: ConditionReport,
}

impl CrossedProduct {
    pub fn variant(&self) -> Variant {
        self.table.variant
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn space(&self) -> &FinSpace {
        &self.table.space
    }

    pub fn dim(&self) -> usize {
        self.table.space.dim()
    }

    pub fn table(&self) -> &ProductTable {
        &self.table
    }

    pub fn report(&self) -> &ConditionReport {
        &self.report
    }

    pub fn unit(&self) -> &Vector {
        &self.table.unit
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let d = self.dim();
        let mut out = self.table.space.zero();
        for (i, c) in x.support() {
            for (j, e) in y.support() {
                out.axpy(&(c * e), &self.table.mult[i * d + j]);
            }
        }
        out
    }

    pub fn delta(&self, x: &Vector) -> Vector {
        let dim = self.table.coaction.first().map_or(0, Vector::dim);
        let mut out = Vector::zeros(self.table.space.field(), dim);
        for (i, c) in x.support() {
            out.axpy(c, &self.table.coaction[i]);
        }
        out
    }

    pub fn delta_map(&self, h_space: &FinSpace) -> LinMap {
        LinMap::from_images(
            self.table.space.clone(),
            tensor_space(&self.table.space, h_space),
            &self.table.coaction,
        )
    }

    /// Associative and unital, with a coassociative counital coaction.
    pub fn is_verified(&self) -> bool {
        ["assoc", "unit", "comodule"].iter().all(|id| self.report.passed(id))
    }

    /// First failing associativity or unit verdict.
    pub fn failure(&self) -> Option<&ConditionEntry> {
        ["assoc", "unit"]
            .iter()
            .filter_map(|id| self.report.get(id))
            .find(|e| !e.passed())
    }
}

/// `Σ a(h_1·b)σ(h_2,k_1) ⊗ h_3k_2` on `A ⊗ H` basis vectors `a ⊗ h`, `b ⊗ k`.
fn formula_basis(m: &Measuring, c: &CocycleTable, x: usize, y: usize) -> Vector {
    let n = m.h_dim();
    let (a, h) = (x / n, x % n);
    let (b, k) = (y / n, y % n);
    let hopf = m.hopf();
    let mut out = m.ah_space().zero();
    let ea = m.ab(a);
    for ([p, q, r], s) in hopf.delta2_terms(h) {
        let left = m.amul(&ea, m.act_basis(p, b));
        for (u, v, t) in hopf.delta_terms(k) {
            let coeff = &s * t;
            let av = m.amul(&left, c.get(q, *u));
            if av.is_zero() {
                continue;
            }
            let hv = hopf.mul_basis(r, *v);
            out.axpy(&coeff, &av.tensor(hv));
        }
    }
    out
}

/// Bilinear extension of [`formula_basis`].
fn formula(m: &Measuring, c: &CocycleTable, x: &Vector, y: &Vector) -> Vector {
    let mut out = m.ah_space().zero();
    for (i, s) in x.support() {
        for (j, t) in y.support() {
            out.axpy(&(s * t), &formula_basis(m, c, i, j));
        }
    }
    out
}

/// `a ⊗ h ↦ a ⊗ h_1 ⊗ h_2` on `A ⊗ H`.
fn coaction_ambient(m: &Measuring, x: &Vector) -> Vec<(usize, usize, crate::Scalar)> {
    let n = m.h_dim();
    let mut out = Vec::new();
    for (i, s) in x.support() {
        let (a, h) = (i / n, i % n);
        for (p, q, t) in m.hopf().delta_terms(h) {
            out.push((a * n + p, *q, s * t));
        }
    }
    out
}

fn descend_coaction(m: &Measuring, carrier: &Carrier, x: &Vector) -> Vector {
    let d = carrier.space().dim();
    let n = m.h_dim();
    let amb = m.ah_space();
    let mut out = Vector::zeros(m.field(), d * n);
    for (i, q, s) in coaction_ambient(m, x) {
        let img = carrier.from_ambient(&amb.basis_vector(i));
        out.axpy(&s, &img.tensor(&m.hb(q)));
    }
    out
}

fn ah_arg(m: &Measuring, role: &str, i: usize) -> WitnessArg {
    let amb = m.ah_space();
    arg(role, i.to_string(), amb.label(i))
}

/// Shared verification on the carrier: associativity, unit laws, comodule.
fn verify_table(m: &Measuring, p: &CrossedProduct) -> ConditionReport {
    let d = p.dim();
    let sp = p.space();
    let n = m.h_dim();
    let carg = |role: &str, i: usize| arg(role, i.to_string(), sp.label(i));
    let mut r = ConditionReport::new();
    r.push(check_grid(
        "assoc",
        &[d, d, d],
        |t| {
            let (x, y, z) = (sp.basis_vector(t[0]), sp.basis_vector(t[1]), sp.basis_vector(t[2]));
            (p.mul(&p.mul(&x, &y), &z), p.mul(&x, &p.mul(&y, &z)))
        },
        |t| vec![carg("x", t[0]), carg("y", t[1]), carg("z", t[2])],
    ));
    r.push(check_grid(
        "unit",
        &[d],
        |t| {
            let x = sp.basis_vector(t[0]);
            (concat(&[p.mul(p.unit(), &x), p.mul(&x, p.unit())]), concat(&[x.clone(), x]))
        },
        |t| vec![carg("x", t[0])],
    ));
    // (δ ⊗ id)δ = (id ⊗ Δ)δ and (id ⊗ ε)δ = id, on carrier ⊗ H ⊗ H and carrier
    let hopf = m.hopf();
    r.push(check_grid(
        "comodule",
        &[d],
        |t| {
            let dx = &p.table.coaction[t[0]];
            let mut left = Vector::zeros(m.field(), d * n * n);
            let mut right = Vector::zeros(m.field(), d * n * n);
            let mut counit = sp.zero();
            for (idx, s) in dx.support() {
                let (y, h) = (idx / n, idx % n);
                left.axpy(s, &p.table.coaction[y].tensor(&m.hb(h)));
                for (u, v, w) in hopf.delta_terms(h) {
                    right[(y * n + u) * n + v] = &right[(y * n + u) * n + v] + &(s * w);
                }
                counit.axpy(&(s * hopf.bialgebra().eps_basis(h)), &sp.basis_vector(y));
            }
            let x = sp.basis_vector(t[0]);
            (concat(&[left, counit]), concat(&[right, x]))
        },
        |t| vec![carg("x", t[0])],
    ));
    r
}

fn assemble(m: &Measuring, c: &CocycleTable, variant: Variant, carrier: Carrier, unit_ambient: &Vector) -> CrossedProduct {
    let sp = carrier.space().clone();
    let d = sp.dim();
    let reps: Vec<Vector> = (0..d).map(|i| carrier.to_ambient(&sp.basis_vector(i))).collect();
    let mult: Vec<Vector> = crate::par::map_range(d * d, |idx| {
        carrier.from_ambient(&formula(m, c, &reps[idx / d], &reps[idx % d]))
    });
    let coaction: Vec<Vector> = reps.iter().map(|x| descend_coaction(m, &carrier, x)).collect();
    let unit = carrier.from_ambient(unit_ambient);
    CrossedProduct {
        carrier,
        table: ProductTable {
            variant,
            space: sp,
            mult,
            unit,
            coaction,
            verdicts: Vec::new(),
        },
        report: ConditionReport::new(),
    }
}

fn finish(m: &Measuring, mut p: CrossedProduct, mut report: ConditionReport) -> CrossedProduct {
    report.extend(verify_table(m, &p));
    p.table.verdicts = report.entries().iter().map(|e| (e.id.clone(), e.verdict)).collect();
    p.report = report;
    p
}

/// Relation generators `a(l·1_A) ⊗ h − a ⊗ lh` of `A ⊗_{H^L} H`.
fn balance_relations(m: &Measuring) -> Vec<Vector> {
    let hl = m.counital_basis(Side::L);
    let mut rels = Vec::new();
    for a in 0..m.a_dim() {
        let ea = m.ab(a);
        for l in hl {
            let al = m.amul(&ea, &m.unit_act(l));
            for h in 0..m.h_dim() {
                let hv = m.hb(h);
                rels.push(al.tensor(&hv).sub(&ea.tensor(&m.hmul(l, &hv))));
            }
        }
    }
    rels
}

/// The product on `A ⊗_{H^L} H`. Requires `ρ` to be a measuring (1)–(3),
/// `σ` to be `H^R`-balanced (so that it is a map on `H ⊗_{H^R} H`) and
/// conditions (5), (6); well definedness on the quotient is checked by
/// shifting each argument by every relation generator.
pub fn build_bb(m: &Measuring, c: &CocycleTable) -> Result<CrossedProduct, CrossedError> {
    let meas = check_measuring(m);
    let cond = check_bb_cocycle(m, c);
    let mut pre = ConditionReport::new();
    for id in ["1", "2", "3"] {
        pre.push(meas.get(id).expect("measuring ids present").clone());
    }
    for id in ["balance-R", "5", "6"] {
        pre.push(cond.get(id).expect("cocycle ids present").clone());
    }
    if !pre.ok() {
        return Err(CrossedError::Precondition {
            stage: "(1)-(3), balance-R, (5), (6)",
            report: Box::new(pre),
        });
    }
    build_bb_unchecked(m, c).map(|p| {
        let mut report = pre;
        report.extend(p.report.clone());
        let mut p = p;
        p.table.verdicts = report.entries().iter().map(|e| (e.id.clone(), e.verdict)).collect();
        p.report = report;
        p
    })
}

/// [`build_bb`] without its precondition gate; the well-definedness check still
/// applies.
pub fn build_bb_unchecked(m: &Measuring, c: &CocycleTable) -> Result<CrossedProduct, CrossedError> {
    let amb = m.ah_space();
    let rels = balance_relations(m);
    let q = quotient_by(&amb, &rels)?;
    let total = amb.dim();
    let nr = rels.len();
    // π(F(r, y)) = 0 and π(F(y, r)) = 0 for every generator r and basis y
    let bad = crate::par::find_first(2 * nr * total, |idx| {
        let (side, rest) = (idx / (nr * total), idx % (nr * total));
        let (ri, y) = (rest / total, rest % total);
        let yv = amb.basis_vector(y);
        let v = if side == 0 {
            formula(m, c, &rels[ri], &yv)
        } else {
            formula(m, c, &yv, &rels[ri])
        };
        !q.project_vec(&v).is_zero()
    });
    if let Some(idx) = bad {
        let (side, rest) = (idx / (nr * total), idx % (nr * total));
        let (ri, y) = (rest / total, rest % total);
        let yv = amb.basis_vector(y);
        let v = if side == 0 {
            formula(m, c, &rels[ri], &yv)
        } else {
            formula(m, c, &yv, &rels[ri])
        };
        let hl_dim = m.counital_basis(Side::L).len();
        let n = m.h_dim();
        let (a, l, h) = (ri / (hl_dim * n), (ri / n) % hl_dim, ri % n);
        let slot = if side == 0 { "left" } else { "right" };
        let w = crate::report::Witness {
            args: vec![
                arg("slot", slot, slot),
                m.a_arg("a", a),
                m.sub_arg("l", Side::L, l),
                m.h_arg("h", h),
                ah_arg(m, "y", y),
            ],
            lhs: q.project_vec(&v).into_coords(),
            rhs: q.quotient().zero().into_coords(),
        };
        return Err(CrossedError::NotWellDefined(Box::new(w)));
    }
    let mut report = ConditionReport::new();
    report.push(ConditionEntry::pass("well-defined", 2 * nr * total));
    let carrier = Carrier::Quotient(q);
    let hl_dim = m.counital_basis(Side::L).len();
    let n = m.h_dim();
    let zero = Vector::zeros(m.field(), carrier.space().dim() * n);
    report.push(check_grid(
        "comodule-defined",
        &[nr],
        |t| (descend_coaction(m, &carrier, &rels[t[0]]), zero.clone()),
        |t| {
            let ri = t[0];
            vec![
                m.a_arg("a", ri / (hl_dim * n)),
                m.sub_arg("l", Side::L, (ri / n) % hl_dim),
                m.h_arg("h", ri % n),
            ]
        },
    ));
    let one = m.one_a().tensor(m.hopf().unit());
    let p = assemble(m, c, Variant::Bb, carrier, &one);
    Ok(finish(m, p, report))
}

/// `∇_ρ(a ⊗ h) = a(h_1·1_A) ⊗ h_2` as an endomorphism of `A ⊗ H`.
pub fn nabla(m: &Measuring) -> LinMap {
    let amb = m.ah_space();
    let n = m.h_dim();
    let images: Vec<Vector> = (0..amb.dim())
        .map(|i| {
            let (a, h) = (i / n, i % n);
            let ea = m.ab(a);
            let mut out = amb.zero();
            for (p, q, s) in m.hopf().delta_terms(h) {
                out.axpy(s, &m.amul(&ea, &m.unit_act(&m.hb(*p))).tensor(&m.hb(*q)));
            }
            out
        })
        .collect();
    LinMap::from_images(amb.clone(), amb, &images)
}

/// `ν(1) = ∇_ρ(1_A ⊗ 1)`.
pub fn preunit(m: &Measuring) -> Vector {
    nabla(m).apply(&m.one_a().tensor(m.hopf().unit()))
}

/// The product on the image of `∇_ρ`. Products are computed on `A ⊗ H` from
/// the included representatives and retracted. Failure of associativity or
/// of the unit laws is recorded in the report, not returned as an error.
pub fn build_ag(m: &Measuring, c: &CocycleTable) -> Result<CrossedProduct, CrossedError> {
    let nab = nabla(m);
    let img = image_of_idempotent(&nab)?;
    let amb = m.ah_space();
    let total = amb.dim();
    let mut report = ConditionReport::new();
    report.push(ConditionEntry::pass("nabla-idempotent", total));
    // ∇F(∇x, y) = ∇F(x, y) = ∇F(x, ∇y): the product only depends on ∇ of its arguments
    report.push(check_grid(
        "well-defined",
        &[total, total],
        |t| {
            let (x, y) = (amb.basis_vector(t[0]), amb.basis_vector(t[1]));
            let base = nab.apply(&formula(m, c, &x, &y));
            (
                concat(&[nab.apply(&formula(m, c, &nab.apply(&x), &y)), nab.apply(&formula(m, c, &x, &nab.apply(&y)))]),
                concat(&[base.clone(), base]),
            )
        },
        |t| vec![ah_arg(m, "x", t[0]), ah_arg(m, "y", t[1])],
    ));
    let nu = preunit(m);
    let p = assemble(m, c, Variant::Ag, Carrier::Image(img), &nu);
    Ok(finish(m, p, report))
}
