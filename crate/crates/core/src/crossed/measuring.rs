use crate::check::check_grid;
use crate::crossed::Measuring;
use crate::report::ConditionReport;
use crate::wha::concat;
use crate::wha::Side;

/// Measuring conditions (1)–(3), unitality (4), and the derived identity
/// `h·(k·a) = hk·a` for `h ∈ H^L H^R` (id `HLHR-action`).
pub fn check_measuring(m: &Measuring) -> ConditionReport {
    let n = m.h_dim();
    let ad = m.a_dim();
    let hl = m.counital_basis(Side::L);
    let hr = m.counital_basis(Side::R);
    let pi_l = m.hopf().projector(Side::L);
    let s_inv = m.hopf().antipode_inv();
    let mut r = ConditionReport::new();

    r.push(check_grid(
        "1",
        &[n],
        |t| (m.unit_act(&m.hb(t[0])), m.unit_act(&pi_l.image_of_basis(t[0]))),
        |t| vec![m.h_arg("h", t[0])],
    ));

    r.push(check_grid(
        "2",
        &[n, ad, ad],
        |t| {
            let (h, a, b) = (t[0], t[1], t[2]);
            let lhs = m.act(&m.hb(h), m.algebra().mul_basis(a, b));
            let mut rhs = m.a_zero();
            for (x, y, c) in m.hopf().delta_terms(h) {
                rhs.axpy(c, &m.amul(m.act_basis(*x, a), m.act_basis(*y, b)));
            }
            (lhs, rhs)
        },
        |t| vec![m.h_arg("h", t[0]), m.a_arg("a", t[1]), m.a_arg("a'", t[2])],
    ));

    // S^{-1}(l)h·a = (h·a)(l·1_A) and lh·a = (l·1_A)(h·a)
    r.push(check_grid(
        "3",
        &[hl.len(), n, ad],
        |t| {
            let l = &hl[t[0]];
            let h = m.hb(t[1]);
            let a = m.ab(t[2]);
            let ha = m.act(&h, &a);
            let l1 = m.unit_act(l);
            let lhs = concat(&[
                m.act(&m.hmul(&s_inv.apply(l), &h), &a),
                m.act(&m.hmul(l, &h), &a),
            ]);
            let rhs = concat(&[m.amul(&ha, &l1), m.amul(&l1, &ha)]);
            (lhs, rhs)
        },
        |t| vec![m.sub_arg("l", Side::L, t[0]), m.h_arg("h", t[1]), m.a_arg("a", t[2])],
    ));

    r.push(check_grid(
        "4",
        &[ad],
        |t| (m.act(m.hopf().unit(), &m.ab(t[0])), m.ab(t[0])),
        |t| vec![m.a_arg("a", t[0])],
    ));

    r.push(check_grid(
        "HLHR-action",
        &[hl.len(), hr.len(), n, ad],
        |t| {
            let h = m.hmul(&hl[t[0]], &hr[t[1]]);
            let k = m.hb(t[2]);
            let a = m.ab(t[3]);
            (m.act(&h, &m.act(&k, &a)), m.act(&m.hmul(&h, &k), &a))
        },
        |t| {
            vec![
                m.sub_arg("l", Side::L, t[0]),
                m.sub_arg("r", Side::R, t[1]),
                m.h_arg("k", t[2]),
                m.a_arg("a", t[3]),
            ]
        },
    ));
    r
}
