//! Finite-dimensional associative algebras by structure constants: the
//! four-dimensional path algebra of the two-vertex, two-arrow quiver with
//! its skew-primitive action, first-order star deformation, and
//! nontriviality certificates through radical and center dimensions.
//!
//! The radical is computed as the kernel of the trace form of the left
//! regular representation, which equals the Jacobson radical in
//! characteristic zero; the center is a plain linear solve. Both are exact.

use std::fmt;

use thiserror::Error;

use crate::check::{CheckResult, Counterexample};
use crate::scalar::{Scalar, ScalarField};

#[derive(Debug, Error)]
pub enum FinDimError {
    #[error("structure constants are not associative: {0}")]
    NotAssociative(Counterexample),
    #[error("the designated unit is not a two-sided identity: {0}")]
    BadUnit(Counterexample),
    #[error("structure tensor has the wrong shape")]
    BadShape,
}

/// An associative algebra given by a basis, structure constants
/// c[i][j][k] (coefficient of e_k in e_i e_j), and a unit vector.
/// Associativity and the unit axioms are checked exhaustively at
/// construction.
#[derive(Debug, Clone)]
pub struct FinDimAlgebra {
    field: ScalarField,
    labels: Vec<String>,
    structure: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

impl FinDimAlgebra {
    pub fn new(
        field: ScalarField,
        labels: Vec<String>,
        structure: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self, FinDimError> {
        let dim = labels.len();
        if structure.len() != dim
            || structure
                .iter()
                .any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim))
            || unit.len() != dim
        {
            return Err(FinDimError::BadShape);
        }
        let alg = FinDimAlgebra {
            field,
            labels,
            structure,
            unit,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), FinDimError> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let eij = self.mul_basis(i, j);
                for k in 0..dim {
                    // (e_i e_j) e_k vs e_i (e_j e_k)
                    let lhs = self.mul(&eij, &self.basis_vector(k));
                    let rhs = self.mul(&self.basis_vector(i), &self.mul_basis(j, k));
                    if lhs != rhs {
                        return Err(FinDimError::NotAssociative(Counterexample::new(
                            format!(
                                "({} {}) {} vs {} ({} {})",
                                self.labels[i],
                                self.labels[j],
                                self.labels[k],
                                self.labels[i],
                                self.labels[j],
                                self.labels[k]
                            ),
                            self.show(&lhs),
                            self.show(&rhs),
                        )));
                    }
                }
            }
        }
        for i in 0..dim {
            let e = self.basis_vector(i);
            let left = self.mul(&self.unit, &e);
            let right = self.mul(&e, &self.unit);
            if left != e || right != e {
                return Err(FinDimError::BadUnit(Counterexample::new(
                    format!("unit on {}", self.labels[i]),
                    self.show(&left),
                    self.show(&right),
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    fn mul_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.structure[i][j].clone()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        let mut out = vec![self.field.zero(); dim];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let c = ca.mul(cb);
                for (k, s) in self.structure[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] = out[k].add(&c.mul(s));
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by the vector, columns indexed by the
    /// basis.
    pub fn left_mul_matrix(&self, a: &[Scalar]) -> Vec<Vec<Scalar>> {
        let dim = self.dim();
        let mut m = vec![vec![self.field.zero(); dim]; dim];
        for j in 0..dim {
            let col = self.mul(a, &self.basis_vector(j));
            for (i, v) in col.into_iter().enumerate() {
                m[i][j] = v;
            }
        }
        m
    }

    pub fn show(&self, v: &[Scalar]) -> String {
        let parts: Vec<String> = v
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| {
                if c.is_one() {
                    l.clone()
                } else {
                    format!("({c}) {l}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// A linear operator on the algebra in the chosen basis; entry (i, j) is
/// the e_i-coefficient of the image of e_j.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: Vec<Vec<Scalar>>,
}

impl OperatorMatrix {
    pub fn new(entries: Vec<Vec<Scalar>>) -> Self {
        let n = entries.len();
        assert!(entries.iter().all(|r| r.len() == n), "square matrix");
        OperatorMatrix { entries }
    }

    pub fn zero(field: &ScalarField, n: usize) -> Self {
        OperatorMatrix {
            entries: vec![vec![field.zero(); n]; n],
        }
    }

    pub fn identity(field: &ScalarField, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.entries[i][i] = field.one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i][j] = v;
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let field = self.entries[0][0].field().clone();
        let mut out = vec![field.zero(); n];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                if !self.entries[i][j].is_zero() {
                    out[i] = out[i].add(&self.entries[i][j].mul(c));
                }
            }
        }
        out
    }

    pub fn compose(&self, other: &OperatorMatrix) -> OperatorMatrix {
        let n = self.dim();
        let field = self.entries[0][0].field().clone();
        let mut out = Self::zero(&field, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = field.zero();
                for k in 0..n {
                    if !self.entries[i][k].is_zero() && !other.entries[k][j].is_zero() {
                        acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j]));
                    }
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> OperatorMatrix {
        OperatorMatrix {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|v| v.mul(s)).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|v| v.is_zero()))
    }
}

impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The path algebra of the quiver with two vertices and two opposite
/// arrows, relations cutting all paths of length two: basis
/// s0, s1 (vertex idempotents) and gamma0, gamma1 (arrows), with
///   s_i s_i = s_i, s_i s_{i+1} = 0,
///   s_{i+1} gamma_i = gamma_i, gamma_i s_i = gamma_i,
///   all other products of the listed generators zero,
/// and unit s0 + s1. The operators realize
///   sigma(s_i) = s_{i+1}, sigma(gamma_i) = -gamma_{i+1},
///   D1(gamma_i) = s_{i+1}, D2(gamma_i) = s_i, D1(s_j) = D2(s_j) = 0.
pub fn taft_fixture(
    field: &ScalarField,
) -> (FinDimAlgebra, OperatorMatrix, OperatorMatrix, OperatorMatrix) {
    let labels = vec![
        "s0".to_string(),
        "s1".to_string(),
        "gamma0".to_string(),
        "gamma1".to_string(),
    ];
    let dim = 4;
    let zero = || field.zero();
    let mut structure = vec![vec![vec![zero(); dim]; dim]; dim];
    let mut set = |i: usize, j: usize, k: usize, v: i64| {
        structure[i][j][k] = field.from_integer(v);
    };
    // s_i s_j
    set(0, 0, 0, 1);
    set(1, 1, 1, 1);
    // s_{i+1} gamma_i = gamma_i : s1 gamma0 = gamma0, s0 gamma1 = gamma1
    set(1, 2, 2, 1);
    set(0, 3, 3, 1);
    // gamma_i s_i = gamma_i : gamma0 s0 = gamma0, gamma1 s1 = gamma1
    set(2, 0, 2, 1);
    set(3, 1, 3, 1);
    let unit = vec![field.one(), field.one(), field.zero(), field.zero()];
    let algebra =
        FinDimAlgebra::new(field.clone(), labels, structure, unit).expect("fixture is associative");

    let minus_one = field.from_integer(-1);
    let mut sigma = OperatorMatrix::zero(field, dim);
    sigma.set(1, 0, field.one()); // s0 -> s1
    sigma.set(0, 1, field.one()); // s1 -> s0
    sigma.set(3, 2, minus_one.clone()); // gamma0 -> -gamma1
    sigma.set(2, 3, minus_one); // gamma1 -> -gamma0
    let mut d1 = OperatorMatrix::zero(field, dim);
    d1.set(1, 2, field.one()); // gamma0 -> s1
    d1.set(0, 3, field.one()); // gamma1 -> s0
    let mut d2 = OperatorMatrix::zero(field, dim);
    d2.set(0, 2, field.one()); // gamma0 -> s0
    d2.set(1, 3, field.one()); // gamma1 -> s1
    (algebra, sigma, d1, d2)
}

/// The generator relations at q = -1 (D1 D2 = D2 D1, -sigma Di = Di sigma,
/// Di^2 = 0, sigma^2 = 1) as matrix identities, the module-algebra law on
/// all basis pairs, and the unit conditions.
pub fn check_hminus1_module_algebra(
    algebra: &FinDimAlgebra,
    sigma: &OperatorMatrix,
    d1: &OperatorMatrix,
    d2: &OperatorMatrix,
) -> CheckResult {
    let field = algebra.field();
    let n = algebra.dim();
    let minus_one = field.from_integer(-1);
    let commute = d1.compose(d2);
    let commute_rev = d2.compose(d1);
    if commute != commute_rev {
        return Err(Counterexample::new("D1 D2 = D2 D1", commute, commute_rev));
    }
    for (name, di) in [("D1", d1), ("D2", d2)] {
        let lhs = sigma.compose(di).scale(&minus_one);
        let rhs = di.compose(sigma);
        if lhs != rhs {
            return Err(Counterexample::new(
                format!("-sigma {name} = {name} sigma"),
                lhs,
                rhs,
            ));
        }
        let sq = di.compose(di);
        if !sq.is_zero() {
            return Err(Counterexample::new(format!("{name}^2 = 0"), sq, "0"));
        }
    }
    let sigma_sq = sigma.compose(sigma);
    let id = OperatorMatrix::identity(field, n);
    if sigma_sq != id {
        return Err(Counterexample::new("sigma^2 = 1", sigma_sq, id));
    }
    // module-algebra law on basis pairs
    for i in 0..n {
        for j in 0..n {
            let a = algebra.basis_vector(i);
            let b = algebra.basis_vector(j);
            let ab = algebra.mul(&a, &b);
            let loc = format!("({}, {})", algebra.labels()[i], algebra.labels()[j]);
            let lhs = sigma.apply(&ab);
            let rhs = algebra.mul(&sigma.apply(&a), &sigma.apply(&b));
            if lhs != rhs {
                return Err(Counterexample::new(
                    format!("sigma multiplicativity at {loc}"),
                    algebra.show(&lhs),
                    algebra.show(&rhs),
                ));
            }
            let lhs = d1.apply(&ab);
            let rhs = add_vec(
                field,
                &algebra.mul(&d1.apply(&a), &sigma.apply(&b)),
                &algebra.mul(&a, &d1.apply(&b)),
            );
            if lhs != rhs {
                return Err(Counterexample::new(
                    format!("D1 skew rule at {loc}"),
                    algebra.show(&lhs),
                    algebra.show(&rhs),
                ));
            }
            let lhs = d2.apply(&ab);
            let rhs = add_vec(
                field,
                &algebra.mul(&d2.apply(&a), &b),
                &algebra.mul(&sigma.apply(&a), &d2.apply(&b)),
            );
            if lhs != rhs {
                return Err(Counterexample::new(
                    format!("D2 skew rule at {loc}"),
                    algebra.show(&lhs),
                    algebra.show(&rhs),
                ));
            }
        }
    }
    let one = algebra.unit().to_vec();
    if !d1.apply(&one).iter().all(|c| c.is_zero()) || !d2.apply(&one).iter().all(|c| c.is_zero()) {
        return Err(Counterexample::new(
            "unit condition D1(1) = 0 = D2(1)",
            algebra.show(&d1.apply(&one)),
            algebra.show(&d2.apply(&one)),
        ));
    }
    if sigma.apply(&one) != one {
        return Err(Counterexample::new(
            "unit condition sigma(1) = 1",
            algebra.show(&sigma.apply(&one)),
            algebra.show(&one),
        ));
    }
    Ok(())
}

fn add_vec(field: &ScalarField, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let _ = field;
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

/// First-order deformation a * b = ab + t0 D1(a) D2(b), re-validated as an
/// associative algebra at construction.
pub fn findim_star(
    algebra: &FinDimAlgebra,
    d1: &OperatorMatrix,
    d2: &OperatorMatrix,
    t0: &Scalar,
) -> Result<FinDimAlgebra, FinDimError> {
    let dim = algebra.dim();
    let mut structure = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::with_capacity(dim);
        for j in 0..dim {
            let classical = algebra.mul(&algebra.basis_vector(i), &algebra.basis_vector(j));
            let defect = algebra.mul(
                &d1.apply(&algebra.basis_vector(i)),
                &d2.apply(&algebra.basis_vector(j)),
            );
            let combined: Vec<Scalar> = classical
                .iter()
                .zip(&defect)
                .map(|(c, d)| c.add(&t0.mul(d)))
                .collect();
            row.push(combined);
        }
        structure.push(row);
    }
    FinDimAlgebra::new(
        algebra.field().clone(),
        algebra.labels().to_vec(),
        structure,
        algebra.unit().to_vec(),
    )
}

/// Rank of a matrix over the exact field by Gaussian elimination.
fn rank(field: &ScalarField, mut m: Vec<Vec<Scalar>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("pivot nonzero");
        for c in col..cols {
            m[row][c] = m[row][c].mul(&inv);
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let v = m[r][c].sub(&factor.mul(&m[row][c]));
                    m[r][c] = v;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    let _ = field;
    rank
}

/// Dimension of {x : trace(L_x L_y) = 0 for all basis y}: the kernel of
/// the trace form of the left regular representation, which is the
/// Jacobson radical in characteristic zero.
pub fn radical_dimension(algebra: &FinDimAlgebra) -> usize {
    let field = algebra.field();
    let dim = algebra.dim();
    let left: Vec<OperatorMatrix> = (0..dim)
        .map(|i| OperatorMatrix::new(algebra.left_mul_matrix(&algebra.basis_vector(i))))
        .collect();
    let mut gram = vec![vec![field.zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let prod = left[i].compose(&left[j]);
            let mut tr = field.zero();
            for k in 0..dim {
                tr = tr.add(&prod.entries[k][k]);
            }
            gram[i][j] = tr;
        }
    }
    dim - rank(field, gram)
}

/// Dimension of {x : xy = yx for all y}.
pub fn center_dimension(algebra: &FinDimAlgebra) -> usize {
    let field = algebra.field();
    let dim = algebra.dim();
    // stack the linear conditions (L_{e_j} - R_{e_j}) x = 0 over all j
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        let ej = algebra.basis_vector(j);
        // row block: for each output coordinate k, sum_i x_i (c_{ij}^k - c_{ji}^k)
        for k in 0..dim {
            let mut row = Vec::with_capacity(dim);
            for i in 0..dim {
                let ei = algebra.basis_vector(i);
                let left = algebra.mul(&ei, &ej);
                let right = algebra.mul(&ej, &ei);
                row.push(left[k].sub(&right[k]));
            }
            rows.push(row);
        }
    }
    dim - rank(field, rows)
}
