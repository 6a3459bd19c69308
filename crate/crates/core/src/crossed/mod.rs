//! Measurings, cocycles and the two weak crossed products.
//!
//! Two flavours of cocycle are handled side by side:
//!
//! * [`Variant::Bb`]: `σ` on `H ⊗_{H^R} H`, conditions (1)–(16), product on
//!   the balanced quotient `A ⊗_{H^L} H`;
//! * [`Variant::Ag`]: `ς` on `H ⊗ H`, conditions (2), (4), (11), (17)–(24),
//!   product on the image of `∇_ρ` inside `A ⊗ H`.
//!
//! Numbered condition ids in reports follow the standard numbering of these
//! identities; conditions quantified over `H^L`/`H^R` use the echelon bases
//! of those subalgebras (tokens `HL<i>`/`HR<i>` in witnesses).

mod cocycle;
mod compare;
mod inverse;
mod measuring;
mod product;

pub use cocycle::{
    check_ag_cocycle, check_aux_lemmas, check_bb_cocycle, check_equiv_10_12, descend, induce,
    Descent,
};
pub use compare::{comparison_iso, Comparison};
pub use inverse::{
    check_ag_inverse, check_bb_inverse, invert_ag, invert_bb, tilde_from_bar, CocycleInverse, InverseOptions,
};
pub use measuring::check_measuring;
pub use product::{build_ag, build_bb, build_bb_unchecked, nabla, preunit, Carrier, CrossedProduct, ProductTable};

use crate::check::arg;
use crate::error::CrossedError;
use crate::linalg::{tensor_space, FinSpace, Vector};
use crate::report::WitnessArg;
use crate::scalar::{Field, Scalar};
use crate::wha::{Side, StructuredAlgebra, WeakHopfAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Cocycle on `H ⊗_{H^R} H`.
    Bb,
    /// Cocycle on `H ⊗ H`.
    Ag,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Bb => "bb",
            Variant::Ag => "ag",
        }
    }
}

/// A weak Hopf algebra `H`, an algebra `A` and a map `ρ: H ⊗ A → A`
/// (`action[h * dim A + a] = e_h · e_a`).
#[derive(Clone, Debug)]
pub struct Measuring {
    hopf: WeakHopfAlgebra,
    algebra: StructuredAlgebra,
    action: Vec<Vector>,
}

impl Measuring {
    pub fn new(hopf: WeakHopfAlgebra, algebra: StructuredAlgebra, action: Vec<Vector>) -> Result<Self, CrossedError> {
        if hopf.field() != algebra.field() {
            return Err(CrossedError::Shape("H and A are over different fields".into()));
        }
        let (n, m) = (hopf.dim(), algebra.dim());
        if action.len() != n * m {
            return Err(CrossedError::Shape(format!(
                "action table has {} entries, expected {}",
                action.len(),
                n * m
            )));
        }
        for v in &action {
            v.check_dim(m)?;
        }
        Ok(Measuring {
            hopf,
            algebra,
            action,
        })
    }

    pub fn hopf(&self) -> &WeakHopfAlgebra {
        &self.hopf
    }

    pub fn algebra(&self) -> &StructuredAlgebra {
        &self.algebra
    }

    pub fn action_table(&self) -> &[Vector] {
        &self.action
    }

    /// Same `H` and `A`, different action table.
    pub fn with_action(&self, action: Vec<Vector>) -> Result<Self, CrossedError> {
        Measuring::new(self.hopf.clone(), self.algebra.clone(), action)
    }

    pub fn field(&self) -> Field {
        self.hopf.field()
    }

    pub fn h_dim(&self) -> usize {
        self.hopf.dim()
    }

    pub fn a_dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn one_a(&self) -> &Vector {
        self.algebra.unit()
    }

    pub fn act_basis(&self, h: usize, a: usize) -> &Vector {
        &self.action[h * self.a_dim() + a]
    }

    /// `x · y` for general `x ∈ H`, `y ∈ A`.
    pub fn act(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = self.algebra.space().zero();
        for (h, c) in x.support() {
            for (a, d) in y.support() {
                out.axpy(&(c * d), self.act_basis(h, a));
            }
        }
        out
    }

    /// `x · 1_A`.
    pub fn unit_act(&self, x: &Vector) -> Vector {
        self.act(x, self.one_a())
    }

    pub fn amul(&self, x: &Vector, y: &Vector) -> Vector {
        self.algebra.mul(x, y)
    }

    pub fn hmul(&self, x: &Vector, y: &Vector) -> Vector {
        self.hopf.mul(x, y)
    }

    pub fn hb(&self, i: usize) -> Vector {
        self.hopf.basis(i)
    }

    pub fn ab(&self, i: usize) -> Vector {
        self.algebra.space().basis_vector(i)
    }

    pub fn a_zero(&self) -> Vector {
        self.algebra.space().zero()
    }

    /// Echelon basis of `H^L` or `H^R`.
    pub fn counital_basis(&self, side: Side) -> &[Vector] {
        self.hopf.counital(side).basis()
    }

    /// `A ⊗ H`, `A` outer.
    pub fn ah_space(&self) -> FinSpace {
        tensor_space(self.algebra.space(), self.hopf.space())
    }

    pub(crate) fn h_arg(&self, role: &str, i: usize) -> WitnessArg {
        arg(role, i.to_string(), self.hopf.space().label(i))
    }

    pub(crate) fn a_arg(&self, role: &str, i: usize) -> WitnessArg {
        arg(role, i.to_string(), self.algebra.space().label(i))
    }

    pub(crate) fn sub_arg(&self, role: &str, side: Side, i: usize) -> WitnessArg {
        let tag = match side {
            Side::L => "HL",
            Side::R => "HR",
        };
        let v = &self.counital_basis(side)[i];
        arg(role, format!("{tag}{i}"), self.hopf.space().render(v))
    }
}

/// `σ` or `ς` as a table `table[h * dim H + k] = σ(e_h, e_k) ∈ A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CocycleTable {
    variant: Variant,
    h_dim: usize,
    table: Vec<Vector>,
}

impl CocycleTable {
    pub fn new(m: &Measuring, variant: Variant, table: Vec<Vector>) -> Result<Self, CrossedError> {
        let n = m.h_dim();
        if table.len() != n * n {
            return Err(CrossedError::Shape(format!(
                "cocycle table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        for v in &table {
            v.check_dim(m.a_dim())?;
        }
        Ok(CocycleTable {
            variant,
            h_dim: n,
            table,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn table(&self) -> &[Vector] {
        &self.table
    }

    pub fn h_dim(&self) -> usize {
        self.h_dim
    }

    pub fn get(&self, h: usize, k: usize) -> &Vector {
        &self.table[h * self.h_dim() + k]
    }

    pub fn retag(&self, variant: Variant) -> Self {
        CocycleTable {
            variant,
            ..self.clone()
        }
    }

    /// Replaces one table entry.
    pub fn with_entry(&self, h: usize, k: usize, value: Vector) -> Self {
        let mut t = self.clone();
        let n = self.h_dim();
        t.table[h * n + k] = value;
        t
    }

    /// Bilinear extension `σ(x, y)`.
    pub fn eval(&self, x: &Vector, y: &Vector, a_dim: usize) -> Vector {
        let field = x.coords().first().map(Scalar::field).unwrap_or(Field::Rational);
        let mut out = Vector::zeros(field, a_dim);
        for (h, c) in x.support() {
            for (k, d) in y.support() {
                out.axpy(&(c * d), self.get(h, k));
            }
        }
        out
    }
}
