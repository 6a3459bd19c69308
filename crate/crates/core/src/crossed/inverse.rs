//! Cocycle inverses by a single exact linear solve.
//!
//! Unknowns are the coordinates of `σ̄(e_x, e_y)` (`(x * dim H + y) * dim A + j`).
//! Every defining identity is affine in these, so each identity evaluated on
//! a basis tuple contributes `dim A` rows.

use std::collections::BTreeMap;

use crate::check::check_grid;
use crate::crossed::{CocycleTable, Measuring, Variant};
use crate::error::CrossedError;
use crate::linalg::{LinearSystem, Vector};
use crate::report::{ConditionEntry, ConditionReport};
use crate::scalar::{Field, Scalar};
use crate::wha::{concat, Side};

/// An `A`-valued affine expression in the unknown table: for each unknown pair
/// an `m × m` block (row = output coordinate, column = unknown coordinate),
/// plus a constant.
#[derive(Clone, Debug)]
struct Affine {
    field: Field,
    blocks: BTreeMap<usize, Vec<Vec<Scalar>>>,
    constant: Vector,
}

impl Affine {
    fn constant(field: Field, v: Vector) -> Self {
        Affine {
            field,
            blocks: BTreeMap::new(),
            constant: v,
        }
    }

    /// `σ̄(x, y)` for general `x, y ∈ H`.
    fn bar(m: &Measuring, x: &Vector, y: &Vector) -> Self {
        let ad = m.a_dim();
        let n = m.h_dim();
        let field = m.field();
        let mut out = Affine::constant(field, m.a_zero());
        for (h, c) in x.support() {
            for (k, d) in y.support() {
                let cd = c * d;
                let block = out
                    .blocks
                    .entry(h * n + k)
                    .or_insert_with(|| vec![vec![field.zero(); ad]; ad]);
                for (i, row) in block.iter_mut().enumerate() {
                    row[i] = &row[i] + &cd;
                }
            }
        }
        out
    }

    fn bar_basis(m: &Measuring, h: usize, k: usize) -> Self {
        Affine::bar(m, &m.hb(h), &m.hb(k))
    }

    /// Applies the linear map `v ↦ f(v)` on `A` (given by its matrix) on the left.
    fn map(&self, mat: &[Vec<Scalar>]) -> Self {
        let apply = |block: &Vec<Vec<Scalar>>| -> Vec<Vec<Scalar>> {
            let ad = mat.len();
            let cols = block.first().map_or(0, |r| r.len());
            let mut out = vec![vec![self.field.zero(); cols]; ad];
            for (i, mrow) in mat.iter().enumerate() {
                for (k, mk) in mrow.iter().enumerate() {
                    if mk.is_zero() {
                        continue;
                    }
                    for (j, b) in block[k].iter().enumerate() {
                        if !b.is_zero() {
                            out[i][j] = &out[i][j] + &(mk * b);
                        }
                    }
                }
            }
            out
        };
        let constant = Vector::from_scalars(
            mat.iter()
                .map(|row| {
                    row.iter()
                        .zip(self.constant.iter())
                        .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
                })
                .collect(),
        );
        Affine {
            field: self.field,
            blocks: self.blocks.iter().map(|(&k, b)| (k, apply(b))).collect(),
            constant,
        }
    }

    /// `p · self`.
    fn lmul(&self, m: &Measuring, p: &Vector) -> Self {
        self.map(&mult_matrix(m, p, true))
    }

    /// `self · q`.
    fn rmul(&self, m: &Measuring, q: &Vector) -> Self {
        self.map(&mult_matrix(m, q, false))
    }

    fn scaled(&self, c: &Scalar) -> Self {
        Affine {
            field: self.field,
            blocks: self
                .blocks
                .iter()
                .map(|(&k, b)| (k, b.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()))
                .collect(),
            constant: self.constant.scale(c),
        }
    }

    fn add_assign(&mut self, other: &Affine) {
        for (&k, b) in &other.blocks {
            match self.blocks.get_mut(&k) {
                Some(mine) => {
                    for (r, s) in mine.iter_mut().zip(b) {
                        for (x, y) in r.iter_mut().zip(s) {
                            *x = &*x + y;
                        }
                    }
                }
                None => {
                    self.blocks.insert(k, b.clone());
                }
            }
        }
        self.constant = self.constant.add(&other.constant);
    }

    fn sub(&self, other: &Affine) -> Self {
        let mut out = self.clone();
        out.add_assign(&other.scaled(&-self.field.one()));
        out
    }

    /// Adds the rows `self = 0` to `sys`.
    fn push_zero(&self, sys: &mut LinearSystem, ad: usize) {
        let field = self.field;
        let n_unknowns = sys.unknowns();
        for i in 0..ad {
            let mut row = Vector::zeros(field, n_unknowns);
            let mut any = false;
            for (&pair, block) in &self.blocks {
                for (j, c) in block[i].iter().enumerate() {
                    if !c.is_zero() {
                        row[pair * ad + j] = c.clone();
                        any = true;
                    }
                }
            }
            let rhs = -&self.constant[i];
            if any || !rhs.is_zero() {
                sys.push(&row, &rhs);
            }
        }
    }
}

/// Matrix of `v ↦ p v` (left) or `v ↦ v p` on `A`.
fn mult_matrix(m: &Measuring, p: &Vector, left: bool) -> Vec<Vec<Scalar>> {
    let ad = m.a_dim();
    let cols: Vec<Vector> = (0..ad)
        .map(|j| {
            let e = m.ab(j);
            if left {
                m.amul(p, &e)
            } else {
                m.amul(&e, p)
            }
        })
        .collect();
    (0..ad).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// How free variables are fixed when the system is underdetermined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct InverseOptions {
    /// Free variable `i` is set to `seed * (i + 1)`; `0` gives the canonical
    /// solution.
    pub seed: i64,
}

/// A solved inverse together with the cocycle it inverts.
#[derive(Clone, Debug)]
pub struct CocycleInverse {
    cocycle: CocycleTable,
    table: CocycleTable,
    report: ConditionReport,
    nullity: usize,
}

impl CocycleInverse {
    pub fn cocycle(&self) -> &CocycleTable {
        &self.cocycle
    }

    pub fn table(&self) -> &CocycleTable {
        &self.table
    }

    pub fn variant(&self) -> Variant {
        self.table.variant()
    }

    /// Verdicts for the defining items, evaluated on the solved table.
    pub fn report(&self) -> &ConditionReport {
        &self.report
    }

    /// Dimension of the solution space after adding the normalization
    /// `σ̄(h,k) = σ̄(h_1,k_1)(h_2·(k_2·1_A))`.
    pub fn nullity(&self) -> usize {
        self.nullity
    }

    pub fn is_unique(&self) -> bool {
        self.nullity == 0
    }
}

/// `Σ (h_1k_1·1_A) t(h_2, k_2)` on basis `h, k`.
fn absorb_left(m: &Measuring, t: &CocycleTable, h: usize, k: usize) -> Vector {
    let hopf = m.hopf();
    let mut acc = m.a_zero();
    for (p, q, x) in hopf.delta_terms(h) {
        for (u, v, y) in hopf.delta_terms(k) {
            let l = m.unit_act(hopf.mul_basis(*p, *u));
            acc.axpy(&(x * y), &m.amul(&l, t.get(*q, *v)));
        }
    }
    acc
}

/// `Σ s(h_1, k_1) t(h_2, k_2)` on basis `h, k`.
fn convolve(m: &Measuring, s: &CocycleTable, t: &CocycleTable, h: usize, k: usize) -> Vector {
    let hopf = m.hopf();
    let mut acc = m.a_zero();
    for (p, q, x) in hopf.delta_terms(h) {
        for (u, v, y) in hopf.delta_terms(k) {
            acc.axpy(&(x * y), &m.amul(s.get(*p, *u), t.get(*q, *v)));
        }
    }
    acc
}

fn item13(id: &str, m: &Measuring, bar: &CocycleTable) -> ConditionEntry {
    let n = m.h_dim();
    check_grid(
        id,
        &[n, n],
        |t| (bar.get(t[0], t[1]).clone(), absorb_left(m, bar, t[0], t[1])),
        |t| vec![m.h_arg("h", t[0]), m.h_arg("k", t[1])],
    )
}

/// Items (13)–(16) and `H^L`-balance `σ̄(hl, k) = σ̄(h, lk)` (id `balance-L`).
pub fn check_bb_inverse(m: &Measuring, sigma: &CocycleTable, bar: &CocycleTable) -> ConditionReport {
    let n = m.h_dim();
    let hl = m.counital_basis(Side::L);
    let s_inv = m.hopf().antipode_inv();
    let ad = m.a_dim();
    let mut r = ConditionReport::new();
    r.push(check_grid(
        "balance-L",
        &[n, hl.len(), n],
        |t| {
            let (h, l, k) = (m.hb(t[0]), &hl[t[1]], m.hb(t[2]));
            (bar.eval(&m.hmul(&h, l), &k, ad), bar.eval(&h, &m.hmul(l, &k), ad))
        },
        |t| vec![m.h_arg("h", t[0]), m.sub_arg("l", Side::L, t[1]), m.h_arg("k", t[2])],
    ));
    r.push(item13("13", m, bar));
    r.push(check_grid(
        "14",
        &[hl.len(), n, n],
        |t| {
            let (l, h, k) = (&hl[t[0]], m.hb(t[1]), m.hb(t[2]));
            let l1 = m.unit_act(l);
            let b = bar.get(t[1], t[2]);
            (
                concat(&[
                    bar.eval(&m.hmul(l, &h), &k, ad),
                    bar.eval(&m.hmul(&s_inv.apply(l), &h), &k, ad),
                ]),
                concat(&[m.amul(&l1, b), m.amul(b, &l1)]),
            )
        },
        |t| vec![m.sub_arg("l", Side::L, t[0]), m.h_arg("h", t[1]), m.h_arg("k", t[2])],
    ));
    r.push(check_grid(
        "15",
        &[n, hl.len(), n],
        |t| {
            let (h, l, k) = (t[0], &hl[t[1]], t[2]);
            let l1 = m.unit_act(l);
            let mut lhs = m.a_zero();
            for (p, q, x) in m.hopf().delta_terms(h) {
                lhs.axpy(x, &m.amul(bar.get(*p, k), &m.act(&m.hb(*q), &l1)));
            }
            (lhs, bar.eval(&m.hb(h), &m.hmul(&s_inv.apply(l), &m.hb(k)), ad))
        },
        |t| vec![m.h_arg("h", t[0]), m.sub_arg("l", Side::L, t[1]), m.h_arg("k", t[2])],
    ));
    r.push(check_grid(
        "16",
        &[n, n],
        |t| {
            let (h, k) = (t[0], t[1]);
            (
                concat(&[convolve(m, sigma, bar, h, k), convolve(m, bar, sigma, h, k)]),
                concat(&[
                    m.act(&m.hb(h), &m.unit_act(&m.hb(k))),
                    m.unit_act(m.hopf().mul_basis(h, k)),
                ]),
            )
        },
        |t| vec![m.h_arg("h", t[0]), m.h_arg("k", t[1])],
    ));
    r
}

/// Items (23) and (24).
pub fn check_ag_inverse(m: &Measuring, varsigma: &CocycleTable, bar: &CocycleTable) -> ConditionReport {
    let n = m.h_dim();
    let mut r = ConditionReport::new();
    r.push(item13("23", m, bar));
    r.push(check_grid(
        "24",
        &[n, n],
        |t| {
            let (h, k) = (t[0], t[1]);
            let hk = m.unit_act(m.hopf().mul_basis(h, k));
            (
                concat(&[convolve(m, varsigma, bar, h, k), convolve(m, bar, varsigma, h, k)]),
                concat(&[hk.clone(), hk]),
            )
        },
        |t| vec![m.h_arg("h", t[0]), m.h_arg("k", t[1])],
    ));
    r
}

/// Rows of `t(h,k) − Σ (h_1k_1·1_A) t(h_2,k_2) = 0`.
fn push_absorb(m: &Measuring, sys: &mut LinearSystem) {
    let n = m.h_dim();
    let hopf = m.hopf();
    for h in 0..n {
        for k in 0..n {
            let mut e = Affine::bar_basis(m, h, k);
            for (p, q, x) in hopf.delta_terms(h) {
                for (u, v, y) in hopf.delta_terms(k) {
                    let l = m.unit_act(hopf.mul_basis(*p, *u));
                    let term = Affine::bar_basis(m, *q, *v).lmul(m, &l).scaled(&-(x * y));
                    e.add_assign(&term);
                }
            }
            e.push_zero(sys, m.a_dim());
        }
    }
}

/// Rows of `Σ s(h_1,k_1) t(h_2,k_2) = rhs` (`known_left`: `s` known, `t`
/// unknown; otherwise the reverse).
fn push_convolution(m: &Measuring, sys: &mut LinearSystem, known: &CocycleTable, known_left: bool, rhs: impl Fn(usize, usize) -> Vector) {
    let n = m.h_dim();
    let hopf = m.hopf();
    for h in 0..n {
        for k in 0..n {
            let mut e = Affine::constant(m.field(), rhs(h, k).scale(&-m.field().one()));
            for (p, q, x) in hopf.delta_terms(h) {
                for (u, v, y) in hopf.delta_terms(k) {
                    let xy = x * y;
                    let term = if known_left {
                        Affine::bar_basis(m, *q, *v).lmul(m, known.get(*p, *u))
                    } else {
                        Affine::bar_basis(m, *p, *u).rmul(m, known.get(*q, *v))
                    };
                    e.add_assign(&term.scaled(&xy));
                }
            }
            e.push_zero(sys, m.a_dim());
        }
    }
}

/// Rows of `t(h,k) = Σ t(h_1,k_1)(h_2·(k_2·1_A))`.
fn push_normalization(m: &Measuring, sys: &mut LinearSystem) {
    let n = m.h_dim();
    let hopf = m.hopf();
    for h in 0..n {
        for k in 0..n {
            let mut e = Affine::bar_basis(m, h, k);
            for (p, q, x) in hopf.delta_terms(h) {
                for (u, v, y) in hopf.delta_terms(k) {
                    let w = m.act(&m.hb(*q), &m.unit_act(&m.hb(*v)));
                    e.add_assign(&Affine::bar_basis(m, *p, *u).rmul(m, &w).scaled(&-(x * y)));
                }
            }
            e.push_zero(sys, m.a_dim());
        }
    }
}

fn push_bb_items(m: &Measuring, sigma: &CocycleTable, sys: &mut LinearSystem) {
    let n = m.h_dim();
    let ad = m.a_dim();
    let hl = m.counital_basis(Side::L);
    let s_inv = m.hopf().antipode_inv();
    for l in hl {
        let l1 = m.unit_act(l);
        let sl = s_inv.apply(l);
        for h in 0..n {
            let hv = m.hb(h);
            for k in 0..n {
                let kv = m.hb(k);
                // balance over H^L
                Affine::bar(m, &m.hmul(&hv, l), &kv)
                    .sub(&Affine::bar(m, &hv, &m.hmul(l, &kv)))
                    .push_zero(sys, ad);
                // (14)
                let b = Affine::bar_basis(m, h, k);
                Affine::bar(m, &m.hmul(l, &hv), &kv)
                    .sub(&b.lmul(m, &l1))
                    .push_zero(sys, ad);
                Affine::bar(m, &m.hmul(&sl, &hv), &kv)
                    .sub(&b.rmul(m, &l1))
                    .push_zero(sys, ad);
                // (15)
                let mut e = Affine::bar(m, &hv, &m.hmul(&sl, &kv)).scaled(&-m.field().one());
                for (p, q, x) in m.hopf().delta_terms(h) {
                    let w = m.act(&m.hb(*q), &l1);
                    e.add_assign(&Affine::bar_basis(m, *p, k).rmul(m, &w).scaled(x));
                }
                e.push_zero(sys, ad);
            }
        }
    }
    push_absorb(m, sys);
    let hk_unit = |h: usize, k: usize| m.act(&m.hb(h), &m.unit_act(&m.hb(k)));
    let hk_prod = |h: usize, k: usize| m.unit_act(m.hopf().mul_basis(h, k));
    push_convolution(m, sys, sigma, true, hk_unit);
    push_convolution(m, sys, sigma, false, hk_prod);
}

fn push_ag_items(m: &Measuring, varsigma: &CocycleTable, sys: &mut LinearSystem) {
    push_absorb(m, sys);
    let hk_prod = |h: usize, k: usize| m.unit_act(m.hopf().mul_basis(h, k));
    push_convolution(m, sys, varsigma, true, hk_prod);
    push_convolution(m, sys, varsigma, false, hk_prod);
}

fn solve(
    m: &Measuring,
    c: &CocycleTable,
    variant: Variant,
    opts: InverseOptions,
    push: impl Fn(&Measuring, &CocycleTable, &mut LinearSystem),
) -> Option<(CocycleTable, usize)> {
    let n = m.h_dim();
    let ad = m.a_dim();
    let field = m.field();
    let mut sys = LinearSystem::new(field, n * n * ad);
    push(m, c, &mut sys);
    if !sys.is_consistent() {
        return None;
    }
    let seed = field.from_i64(opts.seed);
    let x = sys.solution_with(|i| &seed * &field.from_i64(i as i64 + 1))?;
    push_normalization(m, &mut sys);
    let nullity = sys.nullity();
    let table: Vec<Vector> = (0..n * n)
        .map(|pair| Vector::from_scalars(x.coords()[pair * ad..(pair + 1) * ad].to_vec()))
        .collect();
    let table = CocycleTable::new(m, variant, table).expect("solution has table shape");
    Some((table, nullity))
}

/// Solves items (13)–(16) together with `H^L`-balance for `σ̄`. Returns `None`
/// when the system is inconsistent. The returned report re-evaluates every
/// item on the solved table.
pub fn invert_bb(m: &Measuring, c: &CocycleTable, opts: InverseOptions) -> Option<CocycleInverse> {
    let (table, nullity) = solve(m, c, Variant::Bb, opts, push_bb_items)?;
    let report = check_bb_inverse(m, c, &table);
    Some(CocycleInverse {
        cocycle: c.clone(),
        table,
        report,
        nullity,
    })
}

/// Solves items (23)–(24) for `ς̄`.
pub fn invert_ag(m: &Measuring, c: &CocycleTable, opts: InverseOptions) -> Option<CocycleInverse> {
    let (table, nullity) = solve(m, c, Variant::Ag, opts, push_ag_items)?;
    let report = check_ag_inverse(m, c, &table);
    Some(CocycleInverse {
        cocycle: c.clone(),
        table,
        report,
        nullity,
    })
}

/// `σ̃(h,k) = (h_1k_1·1_A) σ̄(h_2,k_2)` for a candidate inverse table `bar`
/// of `sigma`. The candidate must satisfy items (14)–(16); the output is
/// checked against (13)–(16) and `H^L`-balance.
pub fn tilde_from_bar(m: &Measuring, sigma: &CocycleTable, bar: &CocycleTable) -> Result<CocycleInverse, CrossedError> {
    let pre = check_bb_inverse(m, sigma, bar);
    let mut needed = ConditionReport::new();
    for id in ["14", "15", "16"] {
        needed.push(pre.get(id).expect("inverse ids present").clone());
    }
    if !needed.ok() {
        return Err(CrossedError::InverseCheck(Box::new(needed)));
    }
    let n = m.h_dim();
    let table: Vec<Vector> = (0..n * n)
        .map(|i| absorb_left(m, bar, i / n, i % n))
        .collect();
    let table = CocycleTable::new(m, Variant::Bb, table)?;
    let report = check_bb_inverse(m, sigma, &table);
    if !report.ok() {
        return Err(CrossedError::InverseCheck(Box::new(report)));
    }
    let mut sys = LinearSystem::new(m.field(), n * n * m.a_dim());
    push_bb_items(m, sigma, &mut sys);
    push_normalization(m, &mut sys);
    Ok(CocycleInverse {
        cocycle: sigma.clone(),
        table,
        report,
        nullity: sys.nullity(),
    })
}
