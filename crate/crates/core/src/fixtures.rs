//! Ready-made instances: the 8-dimensional weak Hopf algebra `K ⊗ k[C₂] ⊗ K`
//! with its action on `K = k × k` and cocycle, the smash product over
//! `k[C₂]`, and pair-groupoid algebras.

use std::collections::BTreeMap;

use crate::crossed::{
    build_ag, build_bb, check_ag_cocycle, check_aux_lemmas, check_bb_cocycle, check_equiv_10_12, check_measuring,
    comparison_iso, induce, invert_ag, invert_bb, CocycleTable, InverseOptions, Measuring, Variant,
};
use crate::error::FixtureError;
use crate::linalg::{FinSpace, LinMap, Vector};
use crate::report::{ConditionReport, Verdict};
use crate::scalar::Field;
use crate::wha::{StructuredAlgebra, StructuredCoalgebra, WeakBialgebra, WeakHopfAlgebra};

/// An instance together with the verdicts it is known to produce.
#[derive(Clone, Debug)]
pub struct FixtureBundle {
    pub name: String,
    /// `false` for instances built only to exercise the toolkit.
    pub from_literature: bool,
    pub measuring: Measuring,
    pub cocycle: CocycleTable,
    pub expected: BTreeMap<String, Verdict>,
}

impl FixtureBundle {
    pub fn hopf(&self) -> &WeakHopfAlgebra {
        self.measuring.hopf()
    }

    pub fn algebra(&self) -> &StructuredAlgebra {
        self.measuring.algebra()
    }

    /// Keys of `expected` whose observed verdict differs.
    pub fn mismatches(&self, observed: &BTreeMap<String, Verdict>) -> Vec<String> {
        self.expected
            .iter()
            .filter(|(k, v)| observed.get(*k) != Some(v))
            .map(|(k, _)| k.clone())
            .collect()
    }
}

fn expect(map: &mut BTreeMap<String, Verdict>, ids: &[&str], v: Verdict) {
    for id in ids {
        map.insert(id.to_string(), v);
    }
}

fn absorb(map: &mut BTreeMap<String, Verdict>, r: &ConditionReport, prefix: &str) {
    for e in r.entries() {
        map.insert(format!("{prefix}{}", e.id), e.verdict);
    }
}

/// Runs the whole pipeline and collects every verdict. Product-level
/// verdicts are prefixed `bb:` / `ag:`, comparison verdicts `compare:`.
pub fn observed_verdicts(b: &FixtureBundle) -> BTreeMap<String, Verdict> {
    let m = &b.measuring;
    let c = &b.cocycle;
    let mut out = BTreeMap::new();
    out.insert("weak-hopf".into(), Verdict::from_bool(m.hopf().report().ok()));
    absorb(&mut out, &check_measuring(m), "");
    absorb(&mut out, &check_bb_cocycle(m, c), "");
    if let Ok(r) = check_equiv_10_12(m, c) {
        absorb(&mut out, &r, "");
    }
    let varsigma = induce(c);
    absorb(&mut out, &check_ag_cocycle(m, &varsigma), "");
    absorb(&mut out, &check_aux_lemmas(m, &varsigma), "");
    match invert_bb(m, c, InverseOptions::default()) {
        Some(inv) => {
            out.insert("bb-inverse".into(), Verdict::from_bool(inv.report().ok()));
            absorb(&mut out, inv.report(), "");
        }
        None => {
            out.insert("bb-inverse".into(), Verdict::Fail);
        }
    }
    match invert_ag(m, &varsigma, InverseOptions::default()) {
        Some(inv) => {
            out.insert("ag-inverse".into(), Verdict::from_bool(inv.report().ok()));
            absorb(&mut out, inv.report(), "");
        }
        None => {
            out.insert("ag-inverse".into(), Verdict::Fail);
        }
    }
    for (tag, built) in [("bb", build_bb(m, c)), ("ag", build_ag(m, &varsigma))] {
        match built {
            Ok(p) => {
                out.insert(format!("{tag}:verified"), Verdict::from_bool(p.is_verified()));
                absorb(&mut out, p.report(), &format!("{tag}:"));
            }
            Err(_) => {
                out.insert(format!("{tag}:verified"), Verdict::Fail);
            }
        }
    }
    match comparison_iso(m, c) {
        Ok(cmp) => {
            out.insert("compare".into(), Verdict::from_bool(cmp.report.ok()));
            absorb(&mut out, &cmp.report, "compare:");
        }
        Err(_) => {
            out.insert("compare".into(), Verdict::NotChecked);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// K ⊗ k[C₂] ⊗ K

const E: [[i64; 2]; 2] = [[1, 0], [0, 1]];

/// Parameters `(a, b, c, d)` of basis element `i` (0–3: λ, 4–7: G).
fn params(i: usize) -> ([i64; 2], [i64; 2]) {
    let j = i % 4;
    (E[j / 2], E[j % 2])
}

/// `λ_{ab}^{cd}` (`grouplike = false`) or `G_{ab}^{cd}`, expanded bilinearly.
fn elem(f: Field, grouplike: bool, ab: [i64; 2], cd: [i64; 2]) -> Vector {
    let mut v = vec![0i64; 8];
    let off = if grouplike { 4 } else { 0 };
    for (x, &p) in ab.iter().enumerate() {
        for (y, &q) in cd.iter().enumerate() {
            v[off + 2 * x + y] = p * q;
        }
    }
    Vector::from_i64(f, &v)
}

fn paper_hopf(f: Field) -> WeakHopfAlgebra {
    let labels: Vec<String> = (0..8)
        .map(|i| {
            let (ab, cd) = params(i);
            let sym = if i < 4 { "λ" } else { "G" };
            format!("{sym}_{{{}{}}}^{{{}{}}}", ab[0], ab[1], cd[0], cd[1])
        })
        .collect();
    let sp = FinSpace::new(f, labels).expect("distinct labels");
    let mut mult = Vec::with_capacity(64);
    for i in 0..8 {
        let ([a, b], [c, d]) = params(i);
        for j in 0..8 {
            let ([a2, b2], [c2, d2]) = params(j);
            mult.push(match (i >= 4, j >= 4) {
                (false, false) => elem(f, false, [a * a2, b * b2], [c * c2, d * d2]),
                (false, true) => elem(f, true, [a * a2, b * b2], [d * c2, c * d2]),
                (true, false) => elem(f, true, [a * b2, b * a2], [c * c2, d * d2]),
                (true, true) => elem(f, false, [a * b2, b * a2], [d * c2, c * d2]),
            });
        }
    }
    let unit = elem(f, false, [1, 1], [1, 1]);
    let alg = StructuredAlgebra::new(sp.clone(), mult, unit).expect("shape");
    let mut comult = Vec::with_capacity(8);
    let mut counit = Vec::with_capacity(8);
    for i in 0..8 {
        let (ab, [c, d]) = params(i);
        let g = i >= 4;
        // Δλ = λ_{ab}^{10} ⊗ λ_{10}^{cd} + λ_{ab}^{01} ⊗ λ_{01}^{cd}
        // ΔG = G_{ab}^{10} ⊗ G_{01}^{cd} + G_{ab}^{01} ⊗ G_{10}^{cd}
        let (r1, r2) = if g { (E[1], E[0]) } else { (E[0], E[1]) };
        let t = elem(f, g, ab, E[0])
            .tensor(&elem(f, g, r1, [c, d]))
            .add(&elem(f, g, ab, E[1]).tensor(&elem(f, g, r2, [c, d])));
        comult.push(t);
        let [a, b] = ab;
        counit.push(f.from_i64(if g { a * d + b * c } else { a * c + b * d }));
    }
    let coalg = StructuredCoalgebra::new(sp.clone(), comult, counit).expect("shape");
    let wb = WeakBialgebra::new(alg, coalg).expect("same space");
    let s_images: Vec<Vector> = (0..8)
        .map(|i| {
            let (ab, cd) = params(i);
            elem(f, i >= 4, cd, ab)
        })
        .collect();
    let s = LinMap::from_images(sp.clone(), sp, &s_images);
    WeakHopfAlgebra::new(wb, s, None).expect("the example is a weak Hopf algebra")
}

/// `K = k × k` with idempotent basis `(1,0)`, `(0,1)`.
fn k_times_k(f: Field) -> StructuredAlgebra {
    let sp = FinSpace::new(f, vec!["(1,0)".into(), "(0,1)".into()]).expect("labels");
    let v = |c: &[i64]| Vector::from_i64(f, c);
    let mult = vec![v(&[1, 0]), v(&[0, 0]), v(&[0, 0]), v(&[0, 1])];
    StructuredAlgebra::new(sp, mult, v(&[1, 1])).expect("shape")
}

/// The 8-dimensional example: `H = K ⊗ k[C₂] ⊗ K`, `A = K`,
/// `λ_{ab}^{cd}·(x,y) = (axc, byd)`, `G_{ab}^{cd}·(x,y) = (axd, byc)`, and the
/// four-case cocycle. It satisfies (1)–(9) with `σ` invertible, but not (10).
pub fn paper_example(f: Field) -> FixtureBundle {
    let hopf = paper_hopf(f);
    let algebra = k_times_k(f);
    let mut action = Vec::with_capacity(16);
    for i in 0..8 {
        let ([a, b], [c, d]) = params(i);
        let (p, q) = if i < 4 { (a * c, b * d) } else { (a * d, b * c) };
        // e_0 = (1,0), e_1 = (0,1)
        action.push(Vector::from_i64(f, &[p, 0]));
        action.push(Vector::from_i64(f, &[0, q]));
    }
    let m = Measuring::new(hopf, algebra, action).expect("shapes");
    let mut table = Vec::with_capacity(64);
    for i in 0..8 {
        let ([a, b], [c, d]) = params(i);
        for j in 0..8 {
            let ([a2, b2], [c2, d2]) = params(j);
            let (x, y) = match (i >= 4, j >= 4) {
                (false, false) => (a * a2 * c * c2, b * b2 * d * d2),
                (false, true) => (a * a2 * c * d2, b * b2 * d * c2),
                (true, false) => (a * a2 * d * d2, b * b2 * c * c2),
                (true, true) => (a * a2 * d * c2, b * b2 * c * d2),
            };
            table.push(Vector::from_i64(f, &[x, y]));
        }
    }
    let cocycle = CocycleTable::new(&m, Variant::Bb, table).expect("shape");
    let mut ex = BTreeMap::new();
    expect(&mut ex, &["weak-hopf", "1", "2", "3", "4", "balance-R", "5", "6", "7", "8", "9", "pese"], Verdict::Pass);
    expect(&mut ex, &["10", "11", "12"], Verdict::Fail);
    expect(&mut ex, &["equiv-10-12", "bb-inverse", "13", "14", "15", "16", "balance-L"], Verdict::Pass);
    expect(&mut ex, &["17", "18", "19", "22"], Verdict::Pass);
    expect(&mut ex, &["bb:verified"], Verdict::Pass);
    // Although (11) fails, the product on the image of ∇_ρ is still
    // associative and unital here; ς = σ∘p has no inverse.
    expect(&mut ex, &["ag:verified"], Verdict::Pass);
    expect(&mut ex, &["ag-inverse"], Verdict::Fail);
    expect(&mut ex, &["compare"], Verdict::NotChecked);
    FixtureBundle {
        name: "paper8".into(),
        from_literature: true,
        measuring: m,
        cocycle,
        expected: ex,
    }
}

/// Every id that a fully positive instance passes.
const ALL_POSITIVE: &[&str] = &[
    "weak-hopf", "1", "2", "3", "4", "HLHR-action", "balance-R", "5", "6", "7", "8", "9", "pese", "10", "11", "12",
    "equiv-10-12", "bb-inverse", "balance-L", "13", "14", "15", "16", "17", "18", "19", "20", "21", "22",
    "normality", "pepe-prime", "ag-inverse", "23", "24", "lemma-k-action", "lemma-unit-absorb", "eps-absorb",
    "bb:verified", "ag:verified", "compare",
];

/// Smash product of `A = k[x]/(x² − 1)` with `k[C₂]`, `g·x = −x`, trivial
/// cocycle. Not available in characteristic 2, where `g` acts trivially.
pub fn hopf_smash_fixture(f: Field) -> Result<FixtureBundle, FixtureError> {
    if f.characteristic() == 2 {
        return Err(FixtureError::Characteristic {
            name: "smash-c2",
            characteristic: 2,
        });
    }
    let v = |c: &[i64]| Vector::from_i64(f, c);
    let hs = FinSpace::new(f, vec!["1".into(), "g".into()]).expect("labels");
    let alg = StructuredAlgebra::new(hs.clone(), vec![v(&[1, 0]), v(&[0, 1]), v(&[0, 1]), v(&[1, 0])], v(&[1, 0]))
        .expect("shape");
    let coalg =
        StructuredCoalgebra::new(hs.clone(), vec![v(&[1, 0, 0, 0]), v(&[0, 0, 0, 1])], vec![f.one(), f.one()])
            .expect("shape");
    let wb = WeakBialgebra::new(alg, coalg).expect("same space");
    let hopf = WeakHopfAlgebra::new(wb, LinMap::identity(&hs), None).expect("k[C2] is a Hopf algebra");
    let as_ = FinSpace::new(f, vec!["1".into(), "x".into()]).expect("labels");
    let a = StructuredAlgebra::new(as_, vec![v(&[1, 0]), v(&[0, 1]), v(&[0, 1]), v(&[1, 0])], v(&[1, 0]))
        .expect("shape");
    let action = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 0]), v(&[0, -1])];
    let m = Measuring::new(hopf, a, action).expect("shapes");
    let cocycle = CocycleTable::new(&m, Variant::Bb, vec![v(&[1, 0]); 4]).expect("shape");
    let mut ex = BTreeMap::new();
    expect(&mut ex, ALL_POSITIVE, Verdict::Pass);
    Ok(FixtureBundle {
        name: "smash-c2".into(),
        from_literature: false,
        measuring: m,
        cocycle,
        expected: ex,
    })
}

/// Algebra of the pair groupoid on `n` objects: arrows `a_{ij}` (index
/// `i * n + j`), `a_{ij} a_{kl} = δ_{jk} a_{il}`, `Δa = a ⊗ a`, `ε = 1`,
/// `S(a_{ij}) = a_{ji}`. It acts on `A = kⁿ` by `a_{ij}·e_m = δ_{jm} e_i`;
/// the cocycle is `σ(h, k) = hk·1_A`.
pub fn groupoid_fixture(f: Field, n: usize) -> Result<FixtureBundle, FixtureError> {
    if !(2..=4).contains(&n) {
        return Err(FixtureError::OutOfRange(n));
    }
    let d = n * n;
    let unit_h = |i: usize| Vector::unit(f, d, i);
    let hs = FinSpace::new(
        f,
        (0..d).map(|x| format!("a{}{}", x / n + 1, x % n + 1)).collect(),
    )
    .expect("labels");
    let mut mult = Vec::with_capacity(d * d);
    for x in 0..d {
        for y in 0..d {
            let (i, j, k, l) = (x / n, x % n, y / n, y % n);
            mult.push(if j == k { unit_h(i * n + l) } else { hs.zero() });
        }
    }
    let mut one = hs.zero();
    for i in 0..n {
        one.axpy(&f.one(), &unit_h(i * n + i));
    }
    let alg = StructuredAlgebra::new(hs.clone(), mult, one).expect("shape");
    let comult: Vec<Vector> = (0..d).map(|x| unit_h(x).tensor(&unit_h(x))).collect();
    let coalg = StructuredCoalgebra::new(hs.clone(), comult, vec![f.one(); d]).expect("shape");
    let wb = WeakBialgebra::new(alg, coalg).expect("same space");
    let s_images: Vec<Vector> = (0..d).map(|x| unit_h((x % n) * n + x / n)).collect();
    let s = LinMap::from_images(hs.clone(), hs, &s_images);
    let hopf = WeakHopfAlgebra::new(wb, s, None).expect("groupoid algebras are weak Hopf algebras");

    let as_ = FinSpace::new(f, (0..n).map(|i| format!("e{}", i + 1)).collect()).expect("labels");
    let unit_a = |i: usize| Vector::unit(f, n, i);
    let mut amult = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            amult.push(if i == j { unit_a(i) } else { as_.zero() });
        }
    }
    let mut one_a = as_.zero();
    for i in 0..n {
        one_a.axpy(&f.one(), &unit_a(i));
    }
    let a = StructuredAlgebra::new(as_.clone(), amult, one_a).expect("shape");
    let mut action = Vec::with_capacity(d * n);
    for x in 0..d {
        for mm in 0..n {
            action.push(if x % n == mm { unit_a(x / n) } else { as_.zero() });
        }
    }
    let m = Measuring::new(hopf, a, action).expect("shapes");
    let table: Vec<Vector> = (0..d * d)
        .map(|idx| m.unit_act(m.hopf().mul_basis(idx / d, idx % d)))
        .collect();
    let cocycle = CocycleTable::new(&m, Variant::Bb, table).expect("shape");
    let mut ex = BTreeMap::new();
    expect(&mut ex, ALL_POSITIVE, Verdict::Pass);
    Ok(FixtureBundle {
        name: format!("groupoid-{n}"),
        from_literature: false,
        measuring: m,
        cocycle,
        expected: ex,
    })
}

/// Looks up a fixture by its CLI name: `paper8`, `smash-c2`, `groupoid-<n>`.
pub fn by_name(name: &str, f: Field) -> Option<Result<FixtureBundle, FixtureError>> {
    match name {
        "paper8" => Some(Ok(paper_example(f))),
        "smash-c2" => Some(hopf_smash_fixture(f)),
        _ => {
            let n: usize = name.strip_prefix("groupoid-")?.parse().ok()?;
            Some(groupoid_fixture(f, n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_basis_facts() {
        let f = Field::Rational;
        let b = paper_example(f);
        let h = b.hopf();
        // ε(G_{10}^{01}) = 1
        assert!(h.eps(&h.basis(5)).is_one());
        // λ_{10}^{10} is idempotent
        assert_eq!(h.mul_basis(0, 0), &h.basis(0));
        // σ(λ_{10}^{10}, G_{10}^{10}) = (0,0)
        assert!(b.cocycle.get(0, 4).is_zero());
        assert_eq!(h.unit(), &Vector::from_i64(f, &[1, 1, 1, 1, 0, 0, 0, 0]));
    }

    #[test]
    fn smash_rejects_characteristic_two() {
        assert!(hopf_smash_fixture(Field::prime(2).unwrap()).is_err());
        assert!(hopf_smash_fixture(Field::prime(3).unwrap()).is_ok());
    }

    #[test]
    fn groupoid_range() {
        assert!(groupoid_fixture(Field::Rational, 1).is_err());
        assert!(groupoid_fixture(Field::Rational, 5).is_err());
        let g = groupoid_fixture(Field::Rational, 2).unwrap();
        assert_eq!(g.hopf().dim(), 4);
        assert_eq!(g.hopf().counital(crate::wha::Side::L).dim(), 2);
    }

    #[test]
    fn names_resolve() {
        assert!(by_name("paper8", Field::Rational).is_some());
        assert!(by_name("groupoid-3", Field::Rational).unwrap().is_ok());
        assert!(by_name("groupoid-x", Field::Rational).is_none());
        assert!(by_name("nope", Field::Rational).is_none());
    }
}
