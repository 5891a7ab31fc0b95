//! Equivariant cohomology by iterated mapping tori.
//!
//! For the first operator `A` of a representation, the mapping torus `E` of
//! the corresponding diffeomorphism has
//!
//! ```text
//! H^q(E) = ker(A_q - I)  ⊕  H^{q-1} / im(A_{q-1} - I)
//! ```
//!
//! (invariants of `H^q` plus derivations modulo principal derivations of
//! `H^{q-1}`, the latter identified with coinvariants via `f -> f(1)`). Every
//! other operator commutes with `A` and so acts block-diagonally on the two
//! summands. Repeating the step `n` times yields the cohomology of the Borel
//! construction of the `Z^n`-action.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graded_rep::{drop_first_operator, validate, GradedRep, RepError, Violation};
use crate::linalg::{
    image_basis, induced_on_quotient, kernel_basis, restrict_to_subspace, Matrix, QuotientSpace,
    Subspace,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("representation has no operators left to split off")]
    EmptyOperatorList,
    #[error("invalid representation: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidRep(Vec<Violation>),
    #[error("degree {degree}: operator {op} does not preserve the {part} of the monodromy")]
    NotInvariant {
        degree: usize,
        op: usize,
        part: &'static str,
    },
}

impl From<RepError> for TorusError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::EmptyOperatorList => TorusError::EmptyOperatorList,
            // drop_first_operator only fails on an empty operator list
            other => unreachable!("unexpected shape error {other}"),
        }
    }
}

/// Origin of a basis vector of the new degree-`q` piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    /// `j`-th basis vector of the invariant subspace of old degree `q`.
    Invariant(usize),
    /// Class of the old degree-`q-1` coordinate vector `e_i`.
    Coinvariant(usize),
}

/// How one degree of the mapping torus is assembled.
#[derive(Debug, Clone, PartialEq)]
pub struct StepPiece<F> {
    /// Fixed vectors of the monodromy in old degree `q`.
    pub inv_part: Subspace<F>,
    /// Coinvariants of the monodromy in old degree `q - 1`.
    pub coinv_part: QuotientSpace<F>,
    pub labels: Vec<BasisLabel>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorusStepResult<F> {
    pub new_rep: GradedRep<F>,
    /// Keyed by new degree; only degrees of positive dimension appear.
    pub pieces: BTreeMap<usize, StepPiece<F>>,
}

/// `ker(a - I)`.
pub fn invariants<F: Scalar>(a: &Matrix<F>) -> Subspace<F> {
    kernel_basis(&a.minus_identity())
}

/// `V / im(a - I)`.
pub fn coinvariants<F: Scalar>(a: &Matrix<F>) -> QuotientSpace<F> {
    QuotientSpace::new(image_basis(&a.minus_identity()))
}

/// Splits off the first operator, replacing the representation by that of the
/// remaining operators on the cohomology of the mapping torus.
///
/// Assumes the input passed [`validate`]; a non-commuting pair surfaces as
/// [`TorusError::NotInvariant`].
pub fn torus_step<F: Scalar>(rep: &GradedRep<F>) -> Result<TorusStepResult<F>, TorusError> {
    let (monodromy, rest) = drop_first_operator(rep)?;
    let remaining = rest.n_ops();

    let inv: BTreeMap<usize, Subspace<F>> =
        monodromy.iter().map(|(&q, a)| (q, invariants(a))).collect();
    let coinv: BTreeMap<usize, QuotientSpace<F>> = monodromy
        .iter()
        .map(|(&q, a)| (q, coinvariants(a)))
        .collect();

    let mut degrees: Vec<usize> = monodromy.keys().flat_map(|&q| [q, q + 1]).collect();
    degrees.sort_unstable();
    degrees.dedup();

    let mut pieces = BTreeMap::new();
    let mut new_pieces = Vec::new();
    for q in degrees {
        let inv_part = inv.get(&q).cloned().unwrap_or_else(|| Subspace::zero(0));
        let coinv_part = q
            .checked_sub(1)
            .and_then(|p| coinv.get(&p))
            .cloned()
            .unwrap_or_else(|| QuotientSpace::new(Subspace::zero(0)));
        let dim = inv_part.dim() + coinv_part.dim();
        if dim == 0 {
            continue;
        }

        let mut ops = Vec::with_capacity(remaining);
        for op in 0..remaining {
            let top = match rest.piece(q) {
                Some(p) => restrict_to_subspace(&p.operators()[op], &inv_part).map_err(|_| {
                    TorusError::NotInvariant {
                        degree: q,
                        op: op + 1,
                        part: "invariants",
                    }
                })?,
                None => Matrix::zeros(0, 0),
            };
            let bottom = match q.checked_sub(1).and_then(|p| rest.piece(p)) {
                Some(p) => induced_on_quotient(&p.operators()[op], &coinv_part).map_err(|_| {
                    TorusError::NotInvariant {
                        degree: q - 1,
                        op: op + 1,
                        part: "image of A - I",
                    }
                })?,
                None => Matrix::zeros(0, 0),
            };
            ops.push(Matrix::block_diag(&top, &bottom));
        }

        let labels = (0..inv_part.dim())
            .map(BasisLabel::Invariant)
            .chain(
                coinv_part
                    .rep_coords()
                    .iter()
                    .copied()
                    .map(BasisLabel::Coinvariant),
            )
            .collect();
        new_pieces.push((q, dim, ops));
        pieces.insert(
            q,
            StepPiece {
                inv_part,
                coinv_part,
                labels,
            },
        );
    }

    let new_rep = GradedRep::new(remaining, new_pieces)
        .expect("block-diagonal operators match the assembled dimensions");
    Ok(TorusStepResult { new_rep, pieces })
}

/// Result of running [`torus_step`] until no operators remain.
#[derive(Debug, Clone, PartialEq)]
pub struct Recursion<F> {
    /// `stages[0]` is the input, `stages[i]` the representation after `i`
    /// steps; the last stage has no operators.
    pub stages: Vec<GradedRep<F>>,
    pub steps: Vec<TorusStepResult<F>>,
    /// Nonzero Betti numbers of the Borel construction.
    pub betti: BTreeMap<usize, usize>,
}

pub fn recurse<F: Scalar>(rep: &GradedRep<F>) -> Result<Recursion<F>, TorusError> {
    let v = validate(rep);
    if !v.is_valid() {
        return Err(TorusError::InvalidRep(v.violations));
    }
    let mut stages = vec![rep.clone()];
    let mut steps = Vec::with_capacity(rep.n_ops());
    for _ in 0..rep.n_ops() {
        let step = torus_step(stages.last().expect("non-empty"))?;
        stages.push(step.new_rep.clone());
        steps.push(step);
    }
    let betti = stages.last().expect("non-empty").dims();
    Ok(Recursion {
        stages,
        steps,
        betti,
    })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Degrees `k` where `betti[k] < binom(n, k)`. For a path-connected fiber the
/// cohomology of `Z^n` injects into the equivariant cohomology, so this is
/// empty.
pub fn lower_bound_violations(n_ops: usize, betti: &BTreeMap<usize, usize>) -> Vec<usize> {
    (0..=n_ops)
        .filter(|&k| betti.get(&k).copied().unwrap_or(0) < binomial(n_ops, k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::f8_z3;
    use crate::graded_rep::trivial_rep;
    use crate::{QGradedRep, QMatrix, QSubspace, Rational};

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn map(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn invariants_examples() {
        assert_eq!(invariants(&QMatrix::identity(4)), QSubspace::full(4));
        // (1,2)(3,4) on span{x1..x8}: lambda1 = lambda2, lambda3 = lambda4
        let r1 = QMatrix::permutation(&[1, 0, 3, 2, 4, 5, 6, 7]);
        assert_eq!(invariants(&r1).dim(), 6);
    }

    #[test]
    fn r1_invariants_on_h2_f8() {
        let rep: QGradedRep = f8_z3();
        let r1 = &rep.piece(2).unwrap().operators()[0];
        let inv = invariants(r1);
        let expected = QSubspace::span(
            7,
            &[
                qv(&[1, 1, 0, 0, 0, 0, 0]),
                qv(&[0, 0, 1, 1, 0, 0, 0]),
                qv(&[0, 0, 0, 0, 1, 0, 0]),
                qv(&[0, 0, 0, 0, 0, 1, 0]),
                qv(&[0, 0, 0, 0, 0, 0, 1]),
            ],
        );
        assert_eq!(inv, expected);
    }

    #[test]
    fn coinvariants_examples() {
        assert_eq!(coinvariants(&QMatrix::identity(3)).dim(), 3);
        let swap = QMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(coinvariants(&swap).dim(), 1);
        assert_eq!(coinvariants(&QMatrix::identity(0)).dim(), 0);
    }

    #[test]
    fn circle_from_point() {
        let point: QGradedRep = trivial_rep(1, &map(&[(0, 1)]));
        let step = torus_step(&point).unwrap();
        assert_eq!(step.new_rep.dims(), map(&[(0, 1), (1, 1)]));
        assert_eq!(step.new_rep.n_ops(), 0);
        assert_eq!(step.pieces[&1].labels, vec![BasisLabel::Coinvariant(0)]);
    }

    #[test]
    fn f8_first_step() {
        let step = torus_step(&f8_z3::<Rational>()).unwrap();
        let dims = step.new_rep.dims();
        assert_eq!(dims, map(&[(0, 1), (1, 1), (2, 5), (3, 5)]));
        assert_eq!(step.pieces[&2].inv_part.dim(), 5);
        assert_eq!(step.pieces[&2].coinv_part.dim(), 0);
        assert_eq!(step.pieces[&1].inv_part.dim(), 0);
        assert_eq!(step.pieces[&1].coinv_part.dim(), 1);
        assert!(validate(&step.new_rep).is_valid());
    }

    #[test]
    fn f8_second_step() {
        let first = torus_step(&f8_z3::<Rational>()).unwrap();
        let second = torus_step(&first.new_rep).unwrap();
        assert_eq!(second.pieces[&2].inv_part.dim(), 4);
        assert_eq!(second.pieces[&2].coinv_part.dim(), 1);
        assert_eq!(second.new_rep.dim(2), 5);
    }

    #[test]
    fn recurse_examples() {
        let point: QGradedRep = trivial_rep(3, &map(&[(0, 1)]));
        let r = recurse(&point).unwrap();
        assert_eq!(r.betti, map(&[(0, 1), (1, 3), (2, 3), (3, 1)]));
        assert_eq!(r.stages.len(), 4);

        let r = recurse(&f8_z3::<Rational>()).unwrap();
        assert_eq!(r.betti[&0], 1);
        assert_eq!(r.betti[&1], 3);
        assert_eq!(r.betti[&2], 5);

        let bare: QGradedRep = trivial_rep(0, &map(&[(0, 1), (2, 7)]));
        assert_eq!(recurse(&bare).unwrap().betti, map(&[(0, 1), (2, 7)]));
    }

    #[test]
    fn recurse_rejects_non_commuting() {
        let swap = QMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let flip = QMatrix::from_ints(&[&[1, 0], &[0, -1]]);
        let rep = QGradedRep::new(2, [(0, 2, vec![swap, flip])]).unwrap();
        assert!(matches!(recurse(&rep), Err(TorusError::InvalidRep(_))));
        // skipping validation trips the block-structure check instead
        assert!(matches!(
            torus_step(&rep),
            Err(TorusError::NotInvariant { .. })
        ));
    }

    #[test]
    fn empty_operator_list() {
        let rep: QGradedRep = trivial_rep(0, &map(&[(0, 1)]));
        assert_eq!(torus_step(&rep).unwrap_err(), TorusError::EmptyOperatorList);
    }

    #[test]
    fn binomials() {
        assert_eq!(
            (0..=5).map(|k| binomial(5, k)).collect::<Vec<_>>(),
            vec![1, 5, 10, 10, 5, 1]
        );
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn lower_bound_check() {
        assert!(lower_bound_violations(3, &map(&[(0, 1), (1, 3), (2, 5)])).contains(&3));
        assert!(lower_bound_violations(3, &map(&[(0, 1), (1, 3), (2, 5), (3, 1)])).is_empty());
    }
}
