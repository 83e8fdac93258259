//! Finite abelian groups acting diagonally on the polynomial generators,
//! multiplicative two-cocycles, and cocycle/coboundary tests.
//!
//! A group is a product of cyclic factors Z/m_1 x ... x Z/m_k; generator j
//! scales the coordinate x_i by zeta_N^{A[j][i]} for an integer matrix A.
//! Only diagonal actions are supported: every monomial is then a
//! simultaneous eigenvector, which is what makes the later sweeps exact and
//! cheap.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::check::{CheckResult, Counterexample};
use crate::scalar::{Scalar, ScalarField};

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group needs a cyclotomic scalar field, not {0}")]
    NotCyclotomic(ScalarField),
    #[error("cyclic order {order} of generator {gen} does not divide the root order {root}")]
    OrderMismatch { gen: usize, order: u64, root: u64 },
    #[error("generator {gen} does not have order dividing {order} on coordinate {coord}")]
    ActionOrder {
        gen: usize,
        order: u64,
        coord: usize,
    },
    #[error("action matrix row {row} has length {len}, expected the dimension {dim}")]
    ActionShape { row: usize, len: usize, dim: usize },
    #[error("action matrix has {rows} rows but the group has {gens} generators")]
    ActionRows { rows: usize, gens: usize },
    #[error("bicharacter matrix must be {k}x{k}")]
    BicharacterShape { k: usize },
    #[error("cocycle table is missing the pair ({0}, {1})")]
    TableIncomplete(GroupElement, GroupElement),
    #[error("cocycle table contains a zero value at ({0}, {1})")]
    TableZero(GroupElement, GroupElement),
    #[error("cocycle is not normalized or violates the two-cocycle identity: {0}")]
    NotACocycle(Counterexample),
    #[error("group order {0} too large for an exhaustive sweep")]
    TooLarge(u64),
}

/// A finite abelian group with a fixed diagonal representation.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpec {
    orders: Vec<u64>,
    dim: usize,
    action: Vec<Vec<i64>>,
    field: ScalarField,
}

/// Element of the group in exponent coordinates, reduced mod the cyclic
/// orders.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    exps: Vec<u64>,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g(")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl GroupElement {
    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

impl GroupSpec {
    pub fn new(
        orders: Vec<u64>,
        dim: usize,
        action: Vec<Vec<i64>>,
        field: ScalarField,
    ) -> Result<Self, GroupError> {
        let root = field
            .root_order()
            .ok_or_else(|| GroupError::NotCyclotomic(field.clone()))?;
        for (j, &m) in orders.iter().enumerate() {
            if m == 0 || root % m != 0 {
                return Err(GroupError::OrderMismatch {
                    gen: j,
                    order: m,
                    root,
                });
            }
        }
        if action.len() != orders.len() {
            return Err(GroupError::ActionRows {
                rows: action.len(),
                gens: orders.len(),
            });
        }
        for (row, r) in action.iter().enumerate() {
            if r.len() != dim {
                return Err(GroupError::ActionShape {
                    row,
                    len: r.len(),
                    dim,
                });
            }
        }
        // Generator j must have order dividing m_j on every coordinate:
        // zeta^{m_j * A[j][i]} = 1, i.e. N | m_j * A[j][i].
        for (j, r) in action.iter().enumerate() {
            for (i, &a) in r.iter().enumerate() {
                if ((orders[j] as i64) * a).rem_euclid(root as i64) != 0 {
                    return Err(GroupError::ActionOrder {
                        gen: j,
                        order: orders[j],
                        coord: i,
                    });
                }
            }
        }
        Ok(GroupSpec {
            orders,
            dim,
            action,
            field,
        })
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            exps: vec![0; self.orders.len()],
        }
    }

    /// Builds an element from arbitrary integer exponents, reducing mod the
    /// cyclic orders.
    pub fn element(&self, raw: &[i64]) -> GroupElement {
        assert_eq!(raw.len(), self.orders.len(), "exponent count mismatch");
        GroupElement {
            exps: raw
                .iter()
                .zip(&self.orders)
                .map(|(&e, &m)| e.rem_euclid(m as i64) as u64)
                .collect(),
        }
    }

    pub fn generator(&self, j: usize) -> GroupElement {
        let mut raw = vec![0i64; self.orders.len()];
        raw[j] = 1;
        self.element(&raw)
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            exps: a
                .exps
                .iter()
                .zip(&b.exps)
                .zip(&self.orders)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            exps: a
                .exps
                .iter()
                .zip(&self.orders)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        }
    }

    /// All group elements in lexicographic exponent order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.identity()];
        for (j, &m) in self.orders.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for e in 0..m {
                for base in &out {
                    let mut exps = base.exps.clone();
                    exps[j] = e;
                    next.push(GroupElement { exps });
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// The eigenvalue x_i(h) of h on the coordinate x_i (0-based index).
    pub fn character_value(&self, h: &GroupElement, coord: usize) -> Scalar {
        assert!(coord < self.dim);
        let mut e: i64 = 0;
        for (j, &a) in h.exps.iter().enumerate() {
            e += a as i64 * self.action[j][coord];
        }
        self.field.zeta_power(e).expect("cyclotomic field")
    }

    /// The eigenvalue of h on a monomial with the given exponents.
    pub fn monomial_eigenvalue(&self, h: &GroupElement, exps: &[u32]) -> Scalar {
        let mut e: i64 = 0;
        for (i, &k) in exps.iter().enumerate() {
            if k == 0 {
                continue;
            }
            for (j, &a) in h.exps.iter().enumerate() {
                e += a as i64 * self.action[j][i] * k as i64;
            }
        }
        self.field.zeta_power(e).expect("cyclotomic field")
    }

    /// det of h as an operator on V: the product of all coordinate
    /// eigenvalues.
    pub fn determinant(&self, h: &GroupElement) -> Scalar {
        let exps = vec![1u32; self.dim];
        self.monomial_eigenvalue(h, &exps)
    }

    /// Coordinates fixed by h.
    pub fn fixed_coordinates(&self, h: &GroupElement) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| self.character_value(h, i).is_one())
            .collect()
    }
}

/// A normalized multiplicative two-cocycle on the group.
#[derive(Debug, Clone, PartialEq)]
pub enum TwoCocycle {
    /// alpha(g^a, g^b) = zeta_N^{a^T B b} for an integer matrix B.
    Bicharacter(Vec<Vec<i64>>),
    /// An explicit total table, validated at construction.
    Table(BTreeMap<(GroupElement, GroupElement), Scalar>),
}

impl TwoCocycle {
    pub fn trivial(group: &GroupSpec) -> Self {
        let k = group.generator_count();
        TwoCocycle::Bicharacter(vec![vec![0; k]; k])
    }

    pub fn bicharacter(group: &GroupSpec, matrix: Vec<Vec<i64>>) -> Result<Self, GroupError> {
        let k = group.generator_count();
        if matrix.len() != k || matrix.iter().any(|r| r.len() != k) {
            return Err(GroupError::BicharacterShape { k });
        }
        Ok(TwoCocycle::Bicharacter(matrix))
    }

    /// Builds a table cocycle; the two-cocycle identity, normalization, and
    /// totality are checked exhaustively here.
    pub fn table(
        group: &GroupSpec,
        entries: BTreeMap<(GroupElement, GroupElement), Scalar>,
    ) -> Result<Self, GroupError> {
        for g in group.elements() {
            for h in group.elements() {
                match entries.get(&(g.clone(), h.clone())) {
                    None => return Err(GroupError::TableIncomplete(g, h)),
                    Some(v) if v.is_zero() => return Err(GroupError::TableZero(g, h)),
                    _ => {}
                }
            }
        }
        let cocycle = TwoCocycle::Table(entries);
        cocycle_check(&cocycle, group).map_err(GroupError::NotACocycle)?;
        Ok(cocycle)
    }

    pub fn value(&self, group: &GroupSpec, g: &GroupElement, h: &GroupElement) -> Scalar {
        match self {
            TwoCocycle::Bicharacter(b) => {
                let mut e: i64 = 0;
                for (j, &a) in g.exps.iter().enumerate() {
                    for (l, &c) in h.exps.iter().enumerate() {
                        e += a as i64 * b[j][l] * c as i64;
                    }
                }
                group.field.zeta_power(e).expect("cyclotomic field")
            }
            TwoCocycle::Table(t) => t
                .get(&(g.clone(), h.clone()))
                .expect("table validated total at construction")
                .clone(),
        }
    }

    /// alpha(g,h) * alpha(h,g)^{-1}; multiplicative commutator of the twist.
    pub fn skew(&self, group: &GroupSpec, g: &GroupElement, h: &GroupElement) -> Scalar {
        self.value(group, g, h)
            .div(&self.value(group, h, g))
            .expect("cocycle values are nonzero")
    }
}

const SWEEP_LIMIT: u64 = 512;

/// Exhaustive sweep of the two-cocycle identity
/// alpha(g,h) alpha(gh,k) = alpha(g,hk) alpha(h,k) plus normalization.
pub fn cocycle_check(alpha: &TwoCocycle, group: &GroupSpec) -> CheckResult {
    assert!(
        group.order() <= SWEEP_LIMIT,
        "{}",
        GroupError::TooLarge(group.order())
    );
    let one = group.identity();
    for g in group.elements() {
        let a = alpha.value(group, &one, &g);
        let b = alpha.value(group, &g, &one);
        if !a.is_one() || !b.is_one() {
            return Err(Counterexample::new(format!("normalization at {g}"), a, b));
        }
    }
    let elems = group.elements();
    for g in &elems {
        for h in &elems {
            let gh = group.mul(g, h);
            let a_gh = alpha.value(group, g, h);
            for k in &elems {
                let hk = group.mul(h, k);
                let lhs = a_gh.mul(&alpha.value(group, &gh, k));
                let rhs = alpha.value(group, g, &hk).mul(&alpha.value(group, h, k));
                if lhs != rhs {
                    return Err(Counterexample::new(
                        format!("two-cocycle identity at ({g}, {h}, {k})"),
                        lhs,
                        rhs,
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Symmetry sweep. For a finite abelian group a two-cocycle is a coboundary
/// iff it is symmetric, so a failure here certifies a nontrivial class.
pub fn is_symmetric(alpha: &TwoCocycle, group: &GroupSpec) -> CheckResult {
    let elems = group.elements();
    for g in &elems {
        for h in &elems {
            let a = alpha.value(group, g, h);
            let b = alpha.value(group, h, g);
            if a != b {
                return Err(Counterexample::new(format!("symmetry at ({g}, {h})"), a, b));
            }
        }
    }
    Ok(())
}

/// Searches for beta: G -> <zeta_N> with
/// alpha(g,h) = beta(g) beta(h) beta(gh)^{-1}. Only zeta-power-valued beta
/// are tried: generator values are enumerated and propagated, so the search
/// is exhaustive over that value range for groups within the sweep limit.
pub fn coboundary_witness(
    alpha: &TwoCocycle,
    group: &GroupSpec,
) -> Option<BTreeMap<GroupElement, Scalar>> {
    let root = group.field().root_order().expect("cyclotomic field");
    let k = group.generator_count();
    let assignments = (root as u128).checked_pow(k as u32)?;
    if assignments > 1_000_000 || group.order() > SWEEP_LIMIT {
        return None;
    }
    let elems = group.elements();
    let mut gen_values = vec![0i64; k];
    loop {
        if let Some(beta) = propagate_beta(alpha, group, &gen_values, &elems) {
            return Some(beta);
        }
        // odometer over generator exponents
        let mut j = 0;
        loop {
            if j == k {
                return None;
            }
            gen_values[j] += 1;
            if gen_values[j] < root as i64 {
                break;
            }
            gen_values[j] = 0;
            j += 1;
        }
    }
}

fn propagate_beta(
    alpha: &TwoCocycle,
    group: &GroupSpec,
    gen_values: &[i64],
    elems: &[GroupElement],
) -> Option<BTreeMap<GroupElement, Scalar>> {
    let field = group.field();
    let mut beta: BTreeMap<GroupElement, Scalar> = BTreeMap::new();
    beta.insert(group.identity(), field.one());
    // beta(g * gen_j) is forced by beta(g), the generator value, and alpha.
    for (j, &v) in gen_values.iter().enumerate() {
        let gen = group.generator(j);
        let bg = field.zeta_power(v).expect("cyclotomic");
        let known: Vec<(GroupElement, Scalar)> =
            beta.iter().map(|(g, s)| (g.clone(), s.clone())).collect();
        for (g, s) in known {
            let mut cur_g = g;
            let mut cur_s = s;
            for _ in 1..group.orders()[j] {
                let next = group.mul(&cur_g, &gen);
                let val = cur_s
                    .mul(&bg)
                    .div(&alpha.value(group, &cur_g, &gen))
                    .expect("cocycle values nonzero");
                beta.insert(next.clone(), val.clone());
                cur_g = next;
                cur_s = val;
            }
        }
    }
    // verify all pairs
    for g in elems {
        for h in elems {
            let gh = group.mul(g, h);
            let lhs = alpha.value(group, g, h);
            let rhs = beta[g].mul(&beta[h]).div(&beta[&gh]).unwrap();
            if lhs != rhs {
                return None;
            }
        }
    }
    Some(beta)
}

/// The diagonal-group fixture on n coordinates with a cyclic order ell:
/// generators g_1..g_{n-1} scale adjacent coordinate pairs by (q, q^{-1}),
/// the closing element g_n = g_1^{-1}...g_{n-1}^{-1} pairs the last
/// coordinate with the first, and the bicharacter has B[k][k+1] = -1.
#[derive(Debug, Clone)]
pub struct DiagonalPairFixture {
    pub group: GroupSpec,
    pub cocycle: TwoCocycle,
    /// The n distinguished central elements with their ordered coordinate
    /// pairs (0-based) and eigenvalues q.
    pub seeds: Vec<(GroupElement, (usize, usize), Scalar)>,
}

pub fn example51_fixture(n: usize, ell: u64) -> DiagonalPairFixture {
    assert!(n >= 3 && ell >= 2);
    let field = ScalarField::cyclotomic(ell);
    let k = n - 1;
    let mut action = vec![vec![0i64; n]; k];
    for (j, row) in action.iter_mut().enumerate() {
        row[j] = 1;
        row[j + 1] = -1;
    }
    let group = GroupSpec::new(vec![ell; k], n, action, field.clone()).expect("valid fixture");
    let mut b = vec![vec![0i64; k]; k];
    for j in 0..k.saturating_sub(1) {
        b[j][j + 1] = -1;
    }
    let cocycle = TwoCocycle::bicharacter(&group, b).expect("valid shape");
    let q = field.zeta().expect("cyclotomic");
    let mut seeds = Vec::with_capacity(n);
    for j in 0..k {
        seeds.push((group.generator(j), (j, j + 1), q.clone()));
    }
    // closing element: the inverse of the product of the generators,
    // pairing the last coordinate with the first
    let mut closing = group.identity();
    for j in 0..k {
        closing = group.mul(&closing, &group.generator(j));
    }
    let closing = group.inverse(&closing);
    seeds.push((closing, (n - 1, 0), q));
    DiagonalPairFixture {
        group,
        cocycle,
        seeds,
    }
}

/// Trivial group acting on n coordinates over the rationals; hosts the
/// classical (q = 1) specialization.
pub fn trivial_group(n: usize) -> (GroupSpec, TwoCocycle) {
    let field = ScalarField::cyclotomic(1);
    let group = GroupSpec::new(Vec::new(), n, Vec::new(), field).expect("trivial group");
    let cocycle = TwoCocycle::trivial(&group);
    (group, cocycle)
}
