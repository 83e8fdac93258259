//! q-integers, q-factorials, q-binomial coefficients, and the q-binomial
//! formula verified symbolically in the algebra generated by y, z with
//! zy = qyz.
//!
//! q-binomials are computed by the Pascal-type recurrence
//! binom(k,i) = binom(k-1,i-1) + q^i * binom(k-1,i), which is division-free
//! and therefore well-defined at roots of unity where the factorial quotient
//! degenerates to 0/0.

use std::collections::BTreeMap;

use crate::check::{CheckResult, Counterexample};
use crate::scalar::{MulOrder, Scalar};

/// A nonzero deformation parameter together with its multiplicative order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QContext {
    q: Scalar,
    ell: MulOrder,
}

impl QContext {
    /// Panics on q = 0; the order is computed, never trusted from a caller.
    pub fn new(q: Scalar) -> Self {
        let ell = q
            .multiplicative_order()
            .expect("deformation parameter must be nonzero");
        QContext { q, ell }
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn order(&self) -> MulOrder {
        self.ell
    }

    /// The truncation order of exp_q: ell when q is a primitive ell-th root
    /// of unity with ell >= 2, otherwise none (series bounded by nilpotency
    /// or an explicit cap).
    pub fn root_of_unity_order(&self) -> Option<u64> {
        match self.ell {
            MulOrder::Finite(l) if l >= 2 => Some(l),
            _ => None,
        }
    }

    pub fn q_pow(&self, k: i64) -> Scalar {
        self.q.pow(k).expect("q is invertible")
    }

    /// The context for q^-1.
    pub fn inverse(&self) -> QContext {
        QContext::new(self.q.inv().expect("q is invertible"))
    }
}

/// (i)_q = 1 + q + ... + q^{i-1}, with (0)_q = 0.
pub fn q_integer(ctx: &QContext, i: u64) -> Scalar {
    let field = ctx.q.field();
    let mut acc = field.zero();
    let mut pw = field.one();
    for _ in 0..i {
        acc = acc.add(&pw);
        pw = pw.mul(&ctx.q);
    }
    acc
}

/// (i)_q! = (i)_q (i-1)_q ... (1)_q, with (0)_q! = 1.
pub fn q_factorial(ctx: &QContext, i: u64) -> Scalar {
    let mut acc = ctx.q.field().one();
    for j in 1..=i {
        acc = acc.mul(&q_integer(ctx, j));
    }
    acc
}

/// Gaussian binomial coefficient binom(k,i)_q for k >= i >= 0.
pub fn q_binomial(ctx: &QContext, k: u64, i: u64) -> Scalar {
    assert!(k >= i, "q-binomial requires k >= i >= 0");
    let field = ctx.q.field();
    // row-by-row recurrence; row r holds binom(r, 0..=i)
    let mut row: Vec<Scalar> = vec![field.one()];
    for r in 1..=k {
        let top = (r.min(i)) as usize;
        let mut next: Vec<Scalar> = Vec::with_capacity(top + 1);
        next.push(field.one());
        for c in 1..=top {
            let up = row.get(c).cloned().unwrap_or_else(|| field.zero());
            let upleft = row[c - 1].clone();
            next.push(upleft.add(&ctx.q_pow(c as i64).mul(&up)));
        }
        row = next;
    }
    row.get(i as usize)
        .cloned()
        .unwrap_or_else(|| field.zero())
}

/// Polynomial in the two-variable quantum plane: basis y^a z^b with the
/// commutation rule z y = q y z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPlanePoly {
    ctx: QContext,
    terms: BTreeMap<(u64, u64), Scalar>,
}

impl QPlanePoly {
    pub fn zero(ctx: &QContext) -> Self {
        QPlanePoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn term(ctx: &QContext, ypow: u64, zpow: u64, coef: Scalar) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(ypow, zpow, coef);
        p
    }

    fn add_term(&mut self, ypow: u64, zpow: u64, coef: Scalar) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry((ypow, zpow));
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&coef);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &QPlanePoly) -> QPlanePoly {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, c.clone());
        }
        out
    }

    /// (y^a z^b)(y^c z^d) = q^{bc} y^{a+c} z^{b+d}.
    pub fn mul(&self, other: &QPlanePoly) -> QPlanePoly {
        let mut out = Self::zero(&self.ctx);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let twist = self.ctx.q_pow((b1 * a2) as i64);
                out.add_term(a1 + a2, b1 + b2, c1.mul(c2).mul(&twist));
            }
        }
        out
    }

    pub fn pow(&self, k: u64) -> QPlanePoly {
        let mut acc = QPlanePoly::term(&self.ctx, 0, 0, self.ctx.q.field().one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Checks (y+z)^k = sum_i binom(k,i)_q y^i z^{k-i} in the quantum plane.
pub fn q_binomial_formula_check(ctx: &QContext, k: u64) -> CheckResult {
    let field = ctx.q().field();
    let y = QPlanePoly::term(ctx, 1, 0, field.one());
    let z = QPlanePoly::term(ctx, 0, 1, field.one());
    let lhs = y.add(&z).pow(k);
    let mut rhs = QPlanePoly::zero(ctx);
    for i in 0..=k {
        rhs = rhs.add(&QPlanePoly::term(ctx, i, k - i, q_binomial(ctx, k, i)));
    }
    if lhs == rhs {
        Ok(())
    } else {
        Err(Counterexample::new(
            format!("q-binomial formula at k={k}"),
            format!("{:?}", lhs.terms),
            format!("{:?}", rhs.terms),
        ))
    }
}
