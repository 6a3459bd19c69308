//! The isomorphism between the two constructions when (1)–(10) hold.

use crate::check::{arg, check_grid};
use crate::crossed::cocycle::check_bb_cocycle;
use crate::crossed::product::Carrier;
use crate::crossed::{build_ag, build_bb, check_equiv_10_12, check_measuring, induce, nabla, CocycleTable, CrossedProduct, Measuring};
use crate::error::CrossedError;
use crate::linalg::{LinMap, Vector};
use crate::report::{ConditionEntry, ConditionReport};

#[derive(Clone, Debug)]
pub struct Comparison {
    /// `ψ = π ∘ i`: image of `∇_ρ` → `A ⊗_{H^L} H`.
    pub psi: LinMap,
    /// Inverse of `ψ`, read off from `∇_ρ` and the quotient's section.
    pub phi: LinMap,
    pub bb: CrossedProduct,
    pub ag: CrossedProduct,
    pub report: ConditionReport,
}

/// Builds both products and compares them. Refuses unless conditions
/// (1)–(10) hold; when only (10) fails, the refusal report carries the
/// verdicts of (10)–(12).
pub fn comparison_iso(m: &Measuring, c: &CocycleTable) -> Result<Comparison, CrossedError> {
    let mut pre = ConditionReport::new();
    let meas = check_measuring(m);
    for id in ["1", "2", "3", "4"] {
        pre.push(meas.get(id).expect("measuring ids present").clone());
    }
    let cond = check_bb_cocycle(m, c);
    for id in ["balance-R", "5", "6", "7", "8", "9"] {
        pre.push(cond.get(id).expect("cocycle ids present").clone());
    }
    if !pre.ok() {
        return Err(CrossedError::Precondition {
            stage: "conditions (1)-(9)",
            report: Box::new(pre),
        });
    }
    let eq = check_equiv_10_12(m, c)?;
    if !eq.passed("10") {
        pre.extend(eq);
        return Err(CrossedError::Precondition {
            stage: "condition (10); see check_equiv_10_12",
            report: Box::new(pre),
        });
    }

    let bb = build_bb(m, c)?;
    let ag = build_ag(m, &induce(c))?;
    let (q, img) = match (bb.carrier(), ag.carrier()) {
        (Carrier::Quotient(q), Carrier::Image(i)) => (q, i),
        _ => unreachable!("build_bb yields a quotient and build_ag an image"),
    };
    let nab = nabla(m);
    let pi = q.project();
    let psi = pi.compose(&img.incl)?;
    let phi = img.retr.compose(q.section())?;

    let mut r = ConditionReport::new();
    r.push(ConditionEntry::flag(
        "i-phi-pi",
        img.incl.compose(&phi)?.compose(pi)? == nab,
        "i ∘ φ ∘ π = ∇_ρ",
    ));
    r.push(ConditionEntry::flag("psi-phi", psi.compose(&phi)?.is_identity(), "ψ ∘ φ = id"));
    r.push(ConditionEntry::flag("phi-psi", phi.compose(&psi)?.is_identity(), "φ ∘ ψ = id"));
    r.push(ConditionEntry::flag("pi-nabla", pi.compose(&nab)? == *pi, "π ∘ ∇_ρ = π"));
    r.push(ConditionEntry::flag("nabla-i", nab.compose(&img.incl)? == img.incl, "∇_ρ ∘ i = i"));

    let d = ag.dim();
    let sp = ag.space();
    let carg = |role: &str, i: usize| arg(role, i.to_string(), sp.label(i));
    r.push(check_grid(
        "multiplicative",
        &[d, d],
        |t| {
            let (x, y) = (sp.basis_vector(t[0]), sp.basis_vector(t[1]));
            (psi.apply(&ag.mul(&x, &y)), bb.mul(&psi.apply(&x), &psi.apply(&y)))
        },
        |t| vec![carg("x", t[0]), carg("y", t[1])],
    ));
    r.push(check_grid(
        "unital",
        &[1],
        |_| (psi.apply(ag.unit()), bb.unit().clone()),
        |_| Vec::new(),
    ));
    // a · x computed in A ⊗ H on representatives
    let left_a = |p: &CrossedProduct, a: usize, x: &Vector| -> Vector {
        let amb = p.carrier().to_ambient(x);
        let n = m.h_dim();
        let mut out = m.ah_space().zero();
        for (i, s) in amb.support() {
            let (b, h) = (i / n, i % n);
            out.axpy(s, &m.amul(&m.ab(a), &m.ab(b)).tensor(&m.hb(h)));
        }
        p.carrier().from_ambient(&out)
    };
    r.push(check_grid(
        "left-A-linear",
        &[m.a_dim(), d],
        |t| {
            let x = sp.basis_vector(t[1]);
            (psi.apply(&left_a(&ag, t[0], &x)), left_a(&bb, t[0], &psi.apply(&x)))
        },
        |t| vec![m.a_arg("a", t[0]), carg("x", t[1])],
    ));
    let n = m.h_dim();
    let psi_id = |v: &Vector| -> Vector {
        let mut out = Vector::zeros(m.field(), bb.dim() * n);
        for (i, s) in v.support() {
            out.axpy(s, &psi.image_of_basis(i / n).tensor(&m.hb(i % n)));
        }
        out
    };
    r.push(check_grid(
        "right-H-colinear",
        &[d],
        |t| {
            let x = sp.basis_vector(t[0]);
            (bb.delta(&psi.apply(&x)), psi_id(&ag.delta(&x)))
        },
        |t| vec![carg("x", t[0])],
    ));
    Ok(Comparison {
        psi,
        phi,
        bb,
        ag,
        report: r,
    })
}
