//! Graded vector spaces carrying `n` commuting automorphisms, i.e. the action
//! of `Z^n` on `H^*(F)` induced by the generators of the group.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::{commute_check, rank, Matrix};
use crate::scalar::Scalar;

/// Default bound used when checking operators for finite order.
pub const DEFAULT_MAX_ORDER: usize = 24;

/// The `n` operators acting on one cohomological degree.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreePiece<F> {
    dim: usize,
    operators: Vec<Matrix<F>>,
}

impl<F: Scalar> DegreePiece<F> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[Matrix<F>] {
        &self.operators
    }
}

/// A finite family of degrees `q -> (dim, n operators)`. Degrees of dimension
/// zero are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedRep<F> {
    n_ops: usize,
    pieces: BTreeMap<usize, DegreePiece<F>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("degree {degree}: expected {expected} operators, found {found}")]
    WrongOperatorCount {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("degree {degree}: operator {op} is {rows}x{cols}, expected {dim}x{dim}")]
    WrongOperatorShape {
        degree: usize,
        op: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("representation has no operators")]
    EmptyOperatorList,
}

/// A hard failure of [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotInvertible {
        degree: usize,
        op: usize,
    },
    NonCommuting {
        degree: usize,
        first: usize,
        second: usize,
    },
}

/// Messages number operators from 1; the fields are 0-based indices.
impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotInvertible { degree, op } => {
                write!(f, "degree {degree}: operator {} is not invertible", op + 1)
            }
            Violation::NonCommuting {
                degree,
                first,
                second,
            } => write!(
                f,
                "degree {degree}: operators {} and {} do not commute",
                first + 1,
                second + 1
            ),
        }
    }
}

/// Operator without finite order up to the configured bound. Such inputs are
/// outside the regime where the mapping-torus splitting is known to be
/// equivariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrderWarning {
    pub degree: usize,
    pub op: usize,
    pub bound: usize,
}

impl fmt::Display for FiniteOrderWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree {}: operator {} has no finite order <= {}",
            self.degree,
            self.op + 1,
            self.bound
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Validation {
    pub violations: Vec<Violation>,
    pub warnings: Vec<FiniteOrderWarning>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<F: Scalar> GradedRep<F> {
    /// Builds a representation from `degree -> operators`. Every piece must
    /// carry exactly `n_ops` square operators of a common size; pieces of size
    /// zero are dropped.
    pub fn new(
        n_ops: usize,
        pieces: impl IntoIterator<Item = (usize, usize, Vec<Matrix<F>>)>,
    ) -> Result<Self, RepError> {
        let mut out = BTreeMap::new();
        for (degree, dim, operators) in pieces {
            if operators.len() != n_ops {
                return Err(RepError::WrongOperatorCount {
                    degree,
                    expected: n_ops,
                    found: operators.len(),
                });
            }
            for (op, m) in operators.iter().enumerate() {
                if m.rows() != dim || m.cols() != dim {
                    return Err(RepError::WrongOperatorShape {
                        degree,
                        op,
                        rows: m.rows(),
                        cols: m.cols(),
                        dim,
                    });
                }
            }
            if dim > 0 {
                out.insert(degree, DegreePiece { dim, operators });
            }
        }
        Ok(Self { n_ops, pieces: out })
    }

    pub fn n_ops(&self) -> usize {
        self.n_ops
    }

    pub fn pieces(&self) -> &BTreeMap<usize, DegreePiece<F>> {
        &self.pieces
    }

    pub fn piece(&self, degree: usize) -> Option<&DegreePiece<F>> {
        self.pieces.get(&degree)
    }

    /// Dimension in degree `q`; absent degrees have dimension zero.
    pub fn dim(&self, degree: usize) -> usize {
        self.pieces.get(&degree).map_or(0, |p| p.dim)
    }

    /// Nonzero dimensions, keyed by degree.
    pub fn dims(&self) -> BTreeMap<usize, usize> {
        self.pieces.iter().map(|(&q, p)| (q, p.dim)).collect()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.pieces.keys().next_back().copied()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.pieces
            .iter()
            .map(|(&q, p)| {
                if q % 2 == 0 {
                    p.dim as i64
                } else {
                    -(p.dim as i64)
                }
            })
            .sum()
    }

    /// True when degree 0 is one-dimensional with trivial action, which is
    /// what the cohomology of a path-connected space looks like.
    pub fn is_connected_shape(&self) -> bool {
        self.piece(0)
            .is_some_and(|p| p.dim == 1 && p.operators.iter().all(Matrix::is_identity))
    }

    /// Reorders the operators: new operator `i` is old operator `order[i]`.
    pub fn permute_operators(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.n_ops, "operator permutation length");
        let pieces = self
            .pieces
            .iter()
            .map(|(&q, p)| {
                let ops = order.iter().map(|&i| p.operators[i].clone()).collect();
                (
                    q,
                    DegreePiece {
                        dim: p.dim,
                        operators: ops,
                    },
                )
            })
            .collect();
        Self {
            n_ops: self.n_ops,
            pieces,
        }
    }
}

/// Checks invertibility and pairwise commutation of every operator, and flags
/// operators of infinite (or very large) order.
pub fn validate<F: Scalar>(rep: &GradedRep<F>) -> Validation {
    validate_with(rep, DEFAULT_MAX_ORDER)
}

pub fn validate_with<F: Scalar>(rep: &GradedRep<F>, max_order: usize) -> Validation {
    let mut out = Validation::default();
    for (&degree, piece) in &rep.pieces {
        for (op, m) in piece.operators.iter().enumerate() {
            if rank(m) != piece.dim {
                out.violations.push(Violation::NotInvertible { degree, op });
            } else if m.finite_order(max_order).is_none() {
                out.warnings.push(FiniteOrderWarning {
                    degree,
                    op,
                    bound: max_order,
                });
            }
        }
        for first in 0..piece.operators.len() {
            for second in first + 1..piece.operators.len() {
                let a = &piece.operators[first];
                let b = &piece.operators[second];
                if commute_check(a, b) != Ok(true) {
                    out.violations.push(Violation::NonCommuting {
                        degree,
                        first,
                        second,
                    });
                }
            }
        }
    }
    out
}

/// Every operator is the identity.
pub fn trivial_rep<F: Scalar>(n_ops: usize, dims: &BTreeMap<usize, usize>) -> GradedRep<F> {
    GradedRep::new(
        n_ops,
        dims.iter()
            .map(|(&q, &d)| (q, d, vec![Matrix::identity(d); n_ops])),
    )
    .expect("identity operators always have the right shape")
}

/// Splits off the first operator of every degree.
pub fn drop_first_operator<F: Scalar>(
    rep: &GradedRep<F>,
) -> Result<(BTreeMap<usize, Matrix<F>>, GradedRep<F>), RepError> {
    if rep.n_ops == 0 {
        return Err(RepError::EmptyOperatorList);
    }
    let mut first = BTreeMap::new();
    let mut rest = BTreeMap::new();
    for (&q, p) in &rep.pieces {
        let mut ops = p.operators.clone();
        first.insert(q, ops.remove(0));
        rest.insert(
            q,
            DegreePiece {
                dim: p.dim,
                operators: ops,
            },
        );
    }
    Ok((
        first,
        GradedRep {
            n_ops: rep.n_ops - 1,
            pieces: rest,
        },
    ))
}

/// One summand `H^p(Z^n; H^q(F))` of total degree `p + q`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Summand {
    pub p: usize,
    pub q: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DegreeBreakdown {
    pub summands: Vec<Summand>,
    pub total: usize,
}

/// Per total degree `k`, the summands with `p + q = k` and their sum.
#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize)]
pub struct BettiBreakdown {
    pub degrees: BTreeMap<usize, DegreeBreakdown>,
}

impl BettiBreakdown {
    pub fn total(&self, k: usize) -> usize {
        self.degrees.get(&k).map_or(0, |d| d.total)
    }

    pub fn summand(&self, p: usize, q: usize) -> usize {
        self.degrees
            .get(&(p + q))
            .and_then(|d| d.summands.iter().find(|s| s.p == p && s.q == q))
            .map_or(0, |s| s.dim)
    }

    /// Nonzero totals, keyed by degree.
    pub fn totals(&self) -> BTreeMap<usize, usize> {
        self.degrees
            .iter()
            .filter(|(_, d)| d.total > 0)
            .map(|(&k, d)| (k, d.total))
            .collect()
    }
}
