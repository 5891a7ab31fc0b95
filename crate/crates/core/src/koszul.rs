//! Group cohomology `H^p(Z^n; V)` via the Koszul complex of the commuting
//! operators `A_i - I`, and the resulting decomposition of equivariant
//! cohomology into `⊕_{p+q=k} H^p(Z^n; H^q(F))`.
//!
//! `C^p = ⊕_{|S|=p} V`, indexed by the `p`-subsets `S ⊂ {0..n}` in
//! lexicographic order, with
//!
//! ```text
//! d(v at S) = Σ_{i ∉ S} (-1)^{#{s ∈ S : s < i}} (A_i - I) v  at S ∪ {i}.
//! ```

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graded_rep::{validate, BettiBreakdown, DegreeBreakdown, GradedRep, Summand, Violation};
use crate::linalg::{commute_check, image_basis, kernel_basis, Matrix, Subspace};
use crate::mapping_torus::binomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KoszulError {
    #[error("operators {first} and {second} do not commute")]
    NonCommuting { first: usize, second: usize },
    #[error("operator {op} is not {dim}x{dim}")]
    WrongShape { op: usize, dim: usize },
    #[error("degree {p} is outside 0..={n}")]
    DegreeOutOfRange { p: usize, n: usize },
    #[error("consecutive differentials out of degree {p} do not compose to zero")]
    NotAComplex { p: usize },
    #[error("invalid representation: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidRep(Vec<Violation>),
}

/// All `p`-subsets of `{0..n}` as sorted vectors, in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < left {
                break;
            }
            cur.push(i);
            go(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        go(0, n, p, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct KoszulComplex<F> {
    n: usize,
    dim_v: usize,
    /// `differentials[p]` maps `C^p -> C^{p+1}` for `p` in `0..n`.
    differentials: Vec<Matrix<F>>,
}

/// Cohomology of the complex in one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupCohomology<F> {
    pub dim: usize,
    /// Cocycles spanning a complement of the coboundaries: the kernel of
    /// `d^p` intersected with the coordinate subspace vanishing on the pivot
    /// rows of `im d^{p-1}`.
    pub basis: Subspace<F>,
}

pub fn build_koszul<F: Scalar>(
    dim_v: usize,
    ops: &[Matrix<F>],
) -> Result<KoszulComplex<F>, KoszulError> {
    let n = ops.len();
    for (op, a) in ops.iter().enumerate() {
        if a.rows() != dim_v || a.cols() != dim_v {
            return Err(KoszulError::WrongShape { op, dim: dim_v });
        }
    }
    for first in 0..n {
        for second in first + 1..n {
            if commute_check(&ops[first], &ops[second]) != Ok(true) {
                return Err(KoszulError::NonCommuting { first, second });
            }
        }
    }
    let shifted: Vec<Matrix<F>> = ops.iter().map(Matrix::minus_identity).collect();

    let mut differentials = Vec::with_capacity(n);
    for p in 0..n {
        let sources = subsets(n, p);
        let targets = subsets(n, p + 1);
        let target_index: BTreeMap<&[usize], usize> = targets
            .iter()
            .enumerate()
            .map(|(k, t)| (t.as_slice(), k))
            .collect();
        let mut d = Matrix::zeros(targets.len() * dim_v, sources.len() * dim_v);
        for (si, s) in sources.iter().enumerate() {
            for (i, block) in shifted.iter().enumerate() {
                if s.contains(&i) {
                    continue;
                }
                let below = s.iter().filter(|&&x| x < i).count();
                let mut t = s.clone();
                t.push(i);
                t.sort_unstable();
                let ti = target_index[t.as_slice()];
                for r in 0..dim_v {
                    for c in 0..dim_v {
                        let v = block.get(r, c);
                        if v.is_zero() {
                            continue;
                        }
                        let v = if below % 2 == 0 {
                            v.clone()
                        } else {
                            -v.clone()
                        };
                        d.set(ti * dim_v + r, si * dim_v + c, v);
                    }
                }
            }
        }
        differentials.push(d);
    }

    for p in 0..n.saturating_sub(1) {
        if !(&differentials[p + 1] * &differentials[p]).is_zero() {
            return Err(KoszulError::NotAComplex { p });
        }
    }
    Ok(KoszulComplex {
        n,
        dim_v,
        differentials,
    })
}

impl<F: Scalar> KoszulComplex<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn cochain_dim(&self, p: usize) -> usize {
        self.dim_v * binomial(self.n, p)
    }

    pub fn differentials(&self) -> &[Matrix<F>] {
        &self.differentials
    }

    /// `d^p : C^p -> C^{p+1}`, with the zero map out of the top degree.
    pub fn differential(&self, p: usize) -> Matrix<F> {
        match self.differentials.get(p) {
            Some(d) => d.clone(),
            None => Matrix::zeros(self.cochain_dim(p + 1), self.cochain_dim(p)),
        }
    }
}

pub fn group_cohomology<F: Scalar>(
    kc: &KoszulComplex<F>,
    p: usize,
) -> Result<GroupCohomology<F>, KoszulError> {
    if p > kc.n {
        return Err(KoszulError::DegreeOutOfRange { p, n: kc.n });
    }
    let cocycles = kernel_basis(&kc.differential(p));
    let coboundaries = match p.checked_sub(1) {
        Some(prev) => image_basis(&kc.differential(prev)),
        None => Subspace::zero(kc.cochain_dim(0)),
    };
    let reduced: Vec<Vec<F>> = cocycles
        .basis()
        .columns()
        .iter()
        .map(|c| coboundaries.reduce(c))
        .collect();
    let basis = Subspace::span(kc.cochain_dim(p), &reduced);
    let dim = cocycles.dim() - coboundaries.dim();
    debug_assert_eq!(basis.dim(), dim);
    Ok(GroupCohomology { dim, basis })
}

/// `H^k_{Z^n}(F) = ⊕_{p+q=k} H^p(Z^n; H^q(F))`, for every `k` from 0 to
/// `max degree + n`.
pub fn borel_total<F: Scalar>(rep: &GradedRep<F>) -> Result<BettiBreakdown, KoszulError> {
    let v = validate(rep);
    if !v.is_valid() {
        return Err(KoszulError::InvalidRep(v.violations));
    }
    let n = rep.n_ops();
    let mut dims: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&q, piece) in rep.pieces() {
        let kc = build_koszul(piece.dim(), piece.operators())?;
        for p in 0..=n {
            dims.insert((p, q), group_cohomology(&kc, p)?.dim);
        }
    }
    let mut out = BettiBreakdown::default();
    let Some(top) = rep.max_degree() else {
        return Ok(out);
    };
    for k in 0..=top + n {
        let summands: Vec<Summand> = (0..=n.min(k))
            .map(|p| Summand {
                p,
                q: k - p,
                dim: dims.get(&(p, k - p)).copied().unwrap_or(0),
            })
            .collect();
        let total = summands.iter().map(|s| s.dim).sum();
        out.degrees.insert(k, DegreeBreakdown { summands, total });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::f8_z3;
    use crate::graded_rep::trivial_rep;
    use crate::linalg::induced_on_quotient;
    use crate::mapping_torus::{coinvariants, invariants};
    use crate::{QGradedRep, QMatrix, QSubspace, Rational};
    use proptest::prelude::*;

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter()
            .map(|&x| Rational::from_integer(x.into()))
            .collect()
    }

    #[test]
    fn subsets_lexicographic() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn single_operator_is_inv_and_coinv() {
        let a = QMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let kc = build_koszul(3, std::slice::from_ref(&a)).unwrap();
        assert_eq!(kc.differentials(), &[a.minus_identity()]);
        let h0 = group_cohomology(&kc, 0).unwrap();
        assert_eq!(h0.basis, invariants(&a));
        assert_eq!(
            group_cohomology(&kc, 1).unwrap().dim,
            coinvariants(&a).dim()
        );
    }

    #[test]
    fn trivial_coefficients_give_torus() {
        let one = QMatrix::identity(1);
        let kc = build_koszul(1, &[one.clone(), one.clone(), one]).unwrap();
        assert!(kc.differentials().iter().all(Matrix::is_zero));
        let dims: Vec<usize> = (0..=3)
            .map(|p| group_cohomology(&kc, p).unwrap().dim)
            .collect();
        assert_eq!(dims, vec![1, 3, 3, 1]);
    }

    #[test]
    fn swap_and_identity_complex() {
        let swap = QMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let kc = build_koszul(2, &[swap, QMatrix::identity(2)]).unwrap();
        assert_eq!(kc.differentials().len(), 2);
        assert!((&kc.differentials()[1] * &kc.differentials()[0]).is_zero());
        // H^*(Z; span{(1,1)}) ⊗ H^*(Z): 1, 2, 1 with the swap factor contributing 1 in p=0,1
        let dims: Vec<usize> = (0..=2)
            .map(|p| group_cohomology(&kc, p).unwrap().dim)
            .collect();
        assert_eq!(dims, vec![1, 2, 1]);
    }

    #[test]
    fn errors() {
        let swap = QMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let shear = QMatrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            build_koszul(2, &[swap.clone(), shear]).unwrap_err(),
            KoszulError::NonCommuting {
                first: 0,
                second: 1
            }
        );
        assert!(matches!(
            build_koszul(3, std::slice::from_ref(&swap)),
            Err(KoszulError::WrongShape { .. })
        ));
        let kc = build_koszul(2, &[swap]).unwrap();
        assert_eq!(
            group_cohomology(&kc, 2).unwrap_err(),
            KoszulError::DegreeOutOfRange { p: 2, n: 1 }
        );
    }

    #[test]
    fn f8_pieces() {
        let rep: QGradedRep = f8_z3();
        let h2 = rep.piece(2).unwrap();
        let kc = build_koszul(h2.dim(), h2.operators()).unwrap();
        let h = group_cohomology(&kc, 0).unwrap();
        assert_eq!(h.dim, 2);
        // x1+x2+x3+x4 and x5+x6+x8 = -(x1+..+x4) - x7 in the basis x1..x7
        let expected = QSubspace::span(
            7,
            &[qv(&[1, 1, 1, 1, 0, 0, 0]), qv(&[-1, -1, -1, -1, 0, 0, -1])],
        );
        assert_eq!(h.basis, expected);

        let h0 = rep.piece(0).unwrap();
        let kc0 = build_koszul(h0.dim(), h0.operators()).unwrap();
        assert_eq!(group_cohomology(&kc0, 2).unwrap().dim, 3);

        let kc1 = build_koszul::<Rational>(0, &vec![QMatrix::identity(0); 3]).unwrap();
        assert_eq!(group_cohomology(&kc1, 1).unwrap().dim, 0);
    }

    #[test]
    fn f8_breakdown() {
        let b = borel_total(&f8_z3::<Rational>()).unwrap();
        assert_eq!(b.summand(0, 2), 2);
        assert_eq!(b.summand(1, 1), 0);
        assert_eq!(b.summand(2, 0), 3);
        assert_eq!(b.total(2), 5);
        assert_eq!(b.total(0), 1);
        assert_eq!(b.total(1), 3);
        let k2 = &b.degrees[&2];
        assert_eq!(k2.summands.len(), 3);
    }

    #[test]
    fn point_breakdown() {
        let rep: QGradedRep = trivial_rep(3, &[(0, 1)].into_iter().collect());
        let b = borel_total(&rep).unwrap();
        let totals: Vec<usize> = (0..=3).map(|k| b.total(k)).collect();
        assert_eq!(totals, vec![1, 3, 3, 1]);
    }

    #[test]
    fn invalid_rep_rejected() {
        let swap = QMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let flip = QMatrix::from_ints(&[&[1, 0], &[0, -1]]);
        let rep = QGradedRep::new(2, [(0, 2, vec![swap, flip])]).unwrap();
        assert!(matches!(borel_total(&rep), Err(KoszulError::InvalidRep(_))));
    }

    fn commuting_perms(m: usize, n: usize) -> impl Strategy<Value = Vec<QMatrix>> {
        // powers of one permutation always commute
        (
            Just((0..m).collect::<Vec<usize>>()).prop_shuffle(),
            prop::collection::vec(0usize..4, n),
        )
            .prop_map(|(base, powers)| {
                let b = QMatrix::permutation(&base);
                powers
                    .into_iter()
                    .map(|k| (0..k).fold(QMatrix::identity(b.rows()), |acc, _| &acc * &b))
                    .collect()
            })
    }

    proptest! {
        #[test]
        fn d_squared_zero_and_euler(ops in (1usize..5, 1usize..4).prop_flat_map(|(m, n)| commuting_perms(m, n))) {
            let dim = ops[0].rows();
            let kc = build_koszul(dim, &ops).unwrap();
            for p in 0..kc.n().saturating_sub(1) {
                prop_assert!((&kc.differentials()[p + 1] * &kc.differentials()[p]).is_zero());
            }
            let euler: i64 = (0..=kc.n())
                .map(|p| {
                    let d = group_cohomology(&kc, p).unwrap().dim as i64;
                    if p % 2 == 0 { d } else { -d }
                })
                .sum();
            prop_assert_eq!(euler, 0);
        }

        #[test]
        fn extreme_degrees(ops in (1usize..5, 1usize..4).prop_flat_map(|(m, n)| commuting_perms(m, n))) {
            let dim = ops[0].rows();
            let kc = build_koszul(dim, &ops).unwrap();

            // p = 0: vectors fixed by every operator
            let fixed: Vec<QSubspace> = ops.iter().map(invariants).collect();
            let common = kernel_basis(&stack(dim, &fixed));
            prop_assert_eq!(group_cohomology(&kc, 0).unwrap().basis, common);

            // p = n: coinvariants taken one operator at a time
            let mut current = ops.clone();
            for i in 0..ops.len() {
                let qs = coinvariants(&current[i]);
                current = current
                    .iter()
                    .map(|b| induced_on_quotient(b, &qs).unwrap())
                    .collect();
            }
            prop_assert_eq!(group_cohomology(&kc, kc.n()).unwrap().dim, current[0].rows());
        }
    }

    /// Matrix whose kernel is the intersection of the given subspaces: rows
    /// are a basis of each annihilator.
    fn stack(dim: usize, spaces: &[QSubspace]) -> QMatrix {
        let mut rows = Vec::new();
        for s in spaces {
            let ann = kernel_basis(&s.basis().transpose());
            rows.extend(ann.basis().columns());
        }
        QMatrix::from_rows(dim, rows)
    }
}
