//! Exhaustive evaluation of an identity over a grid of basis tuples.

use crate::linalg::Vector;
use crate::par;
use crate::report::{ConditionEntry, Witness, WitnessArg};

/// Decodes a flat index into a tuple, last coordinate fastest.
pub(crate) fn unflatten(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

/// Checks `lhs(t) == rhs(t)` for every tuple `t` in `dims[0] × dims[1] × ...`.
/// The reported witness is the first failing tuple in lexicographic order.
pub(crate) fn check_grid<E, A>(id: &str, dims: &[usize], eval: E, args: A) -> ConditionEntry
where
    E: Fn(&[usize]) -> (Vector, Vector) + Sync + Send,
    A: Fn(&[usize]) -> Vec<WitnessArg>,
{
    let total: usize = dims.iter().product();
    let failing = par::find_first(total, |i| {
        let t = unflatten(i, dims);
        let (l, r) = eval(&t);
        l != r
    });
    match failing {
        None => ConditionEntry::pass(id, total),
        Some(i) => {
            let t = unflatten(i, dims);
            let (l, r) = eval(&t);
            ConditionEntry::fail(
                id,
                total,
                Witness {
                    args: args(&t),
                    lhs: l.into_coords(),
                    rhs: r.into_coords(),
                },
            )
        }
    }
}

pub(crate) fn arg(role: &str, token: impl Into<String>, label: impl Into<String>) -> WitnessArg {
    WitnessArg {
        role: role.to_string(),
        token: token.into(),
        label: label.into(),
    }
}
