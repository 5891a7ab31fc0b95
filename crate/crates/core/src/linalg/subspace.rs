use super::{rref, LinalgError, Matrix};
use crate::scalar::Scalar;

/// A subspace of `F^ambient_dim` in reduced column-echelon form.
///
/// Column `j` of `basis` has a one in row `pivot_rows[j]` and zeros in every
/// other pivot row, and `pivot_rows` is strictly increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    ambient_dim: usize,
    basis: Matrix<F>,
    pivot_rows: Vec<usize>,
}

impl<F: Scalar> Subspace<F> {
    /// Span of an arbitrary generating set.
    pub fn span(ambient_dim: usize, vectors: &[Vec<F>]) -> Self {
        let generators = Matrix::from_rows(ambient_dim, vectors.to_vec());
        let r = rref(&generators);
        let columns: Vec<Vec<F>> = (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect();
        Self {
            ambient_dim,
            basis: Matrix::from_columns(ambient_dim, &columns),
            pivot_rows: r.pivots,
        }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix<F>) -> Self {
        Self::span(m.rows(), &m.columns())
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::zeros(ambient_dim, 0),
            pivot_rows: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivot_rows: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vector(&self, j: usize) -> Vec<F> {
        self.basis.column(j)
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    /// Subtracts from `v` its component along the basis, leaving zeros in
    /// every pivot row.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let mut out = v.to_vec();
        for (j, &p) in self.pivot_rows.iter().enumerate() {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let b = self.basis.get(i, j);
                if !b.is_zero() {
                    *o = o.clone() - c.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in the
    /// subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivot_rows.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.basis.columns().iter().all(|c| other.contains(c))
    }

    /// True when `a` maps the subspace into itself.
    pub fn is_invariant_under(&self, a: &Matrix<F>) -> bool {
        (0..self.dim()).all(|j| self.contains(&a.apply(&self.basis_vector(j))))
    }
}

/// `F^ambient_dim / killed`, represented by the coordinates not used as pivots
/// of `killed`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientSpace<F> {
    ambient_dim: usize,
    killed: Subspace<F>,
    rep_coords: Vec<usize>,
}

impl<F: Scalar> QuotientSpace<F> {
    pub fn new(killed: Subspace<F>) -> Self {
        let ambient_dim = killed.ambient_dim();
        let mut is_pivot = vec![false; ambient_dim];
        for &p in killed.pivot_rows() {
            is_pivot[p] = true;
        }
        let rep_coords = (0..ambient_dim).filter(|&i| !is_pivot[i]).collect();
        Self {
            ambient_dim,
            killed,
            rep_coords,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rep_coords.len()
    }

    pub fn killed(&self) -> &Subspace<F> {
        &self.killed
    }

    pub fn rep_coords(&self) -> &[usize] {
        &self.rep_coords
    }

    /// Quotient coordinates of the class of `v`.
    pub fn project(&self, v: &[F]) -> Vec<F> {
        let reduced = self.killed.reduce(v);
        self.rep_coords
            .iter()
            .map(|&i| reduced[i].clone())
            .collect()
    }

    /// The representative vector of the given quotient coordinates.
    pub fn lift(&self, coords: &[F]) -> Vec<F> {
        assert_eq!(
            coords.len(),
            self.dim(),
            "quotient coordinate length mismatch"
        );
        let mut v = vec![F::zero(); self.ambient_dim];
        for (&i, c) in self.rep_coords.iter().zip(coords) {
            v[i] = c.clone();
        }
        v
    }
}

fn require_square<F: Scalar>(a: &Matrix<F>) -> Result<(), LinalgError> {
    if a.is_square() {
        Ok(())
    } else {
        Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

fn require_ambient<F: Scalar>(a: &Matrix<F>, ambient: usize) -> Result<(), LinalgError> {
    if a.rows() == ambient {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch {
            expected: format!("{ambient}x{ambient} operator"),
            found: format!("{}x{}", a.rows(), a.cols()),
        })
    }
}

/// Matrix of `a` restricted to an invariant subspace, in that subspace's
/// basis.
pub fn restrict_to_subspace<F: Scalar>(
    a: &Matrix<F>,
    s: &Subspace<F>,
) -> Result<Matrix<F>, LinalgError> {
    require_square(a)?;
    require_ambient(a, s.ambient_dim())?;
    let columns = (0..s.dim())
        .map(|j| {
            s.coordinates(&a.apply(&s.basis_vector(j)))
                .ok_or(LinalgError::NotInvariant)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_columns(s.dim(), &columns))
}

/// Matrix of the map induced by `a` on a quotient whose killed subspace `a`
/// preserves.
pub fn induced_on_quotient<F: Scalar>(
    a: &Matrix<F>,
    qs: &QuotientSpace<F>,
) -> Result<Matrix<F>, LinalgError> {
    require_square(a)?;
    require_ambient(a, qs.ambient_dim())?;
    if !qs.killed().is_invariant_under(a) {
        return Err(LinalgError::NotInvariant);
    }
    let columns: Vec<Vec<F>> = qs
        .rep_coords()
        .iter()
        .map(|&r| qs.project(&a.column(r)))
        .collect();
    Ok(Matrix::from_columns(qs.dim(), &columns))
}

/// Exact test of `a b = b a`.
pub fn commute_check<F: Scalar>(a: &Matrix<F>, b: &Matrix<F>) -> Result<bool, LinalgError> {
    require_square(a)?;
    require_square(b)?;
    if a.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: format!("{0}x{0}", a.rows()),
            found: format!("{0}x{0}", b.rows()),
        });
    }
    Ok(a * b == b * a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::image_basis;
    use crate::Rational;
    use proptest::prelude::*;

    type M = Matrix<Rational>;
    type S = Subspace<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn swap() -> M {
        M::from_ints(&[&[0, 1], &[1, 0]])
    }

    #[test]
    fn span_is_column_echelon() {
        let s = S::span(3, &[qv(&[2, 4, 0]), qv(&[1, 2, 1]), qv(&[3, 6, 1])]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivot_rows(), &[0, 2]);
        assert_eq!(s.basis_vector(0), qv(&[1, 2, 0]));
        assert_eq!(s.basis_vector(1), qv(&[0, 0, 1]));
    }

    #[test]
    fn restrict_examples() {
        let fixed = S::span(2, &[qv(&[1, 1])]);
        let anti = S::span(2, &[qv(&[1, -1])]);
        assert_eq!(
            restrict_to_subspace(&swap(), &fixed).unwrap(),
            M::from_ints(&[&[1]])
        );
        assert_eq!(
            restrict_to_subspace(&swap(), &anti).unwrap(),
            M::from_ints(&[&[-1]])
        );
        assert_eq!(
            restrict_to_subspace(&M::identity(2), &anti).unwrap(),
            M::identity(1)
        );
        let axis = S::span(2, &[qv(&[1, 0])]);
        assert_eq!(
            restrict_to_subspace(&swap(), &axis),
            Err(LinalgError::NotInvariant)
        );
    }

    #[test]
    fn restrict_shape_errors() {
        let s = S::full(3);
        assert!(matches!(
            restrict_to_subspace(&M::identity(2), &s),
            Err(LinalgError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            restrict_to_subspace(&M::zeros(3, 2), &s),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn quotient_examples() {
        let qs = QuotientSpace::new(S::span(2, &[qv(&[1, 1])]));
        assert_eq!(qs.rep_coords(), &[1]);
        // (0,1) -> (1,0) = -(0,1) mod (1,1)
        assert_eq!(
            induced_on_quotient(&swap(), &qs).unwrap(),
            M::from_ints(&[&[-1]])
        );
        assert_eq!(
            induced_on_quotient(&M::identity(2), &qs).unwrap(),
            M::identity(1)
        );

        let all = QuotientSpace::new(S::full(2));
        assert_eq!(induced_on_quotient(&swap(), &all).unwrap(), M::zeros(0, 0));

        let axis = QuotientSpace::new(S::span(2, &[qv(&[1, 0])]));
        assert_eq!(
            induced_on_quotient(&swap(), &axis),
            Err(LinalgError::NotInvariant)
        );
    }

    #[test]
    fn project_lift_roundtrip() {
        let qs = QuotientSpace::new(S::span(3, &[qv(&[1, 1, 0])]));
        let v = qv(&[3, 5, 7]);
        let back = qs.lift(&qs.project(&v));
        let diff: Vec<_> = v.iter().zip(&back).map(|(a, b)| a - b).collect();
        assert!(qs.killed().contains(&diff));
    }

    #[test]
    fn commute_examples() {
        let a = M::from_ints(&[&[2, 3], &[5, 7]]);
        assert_eq!(commute_check(&a, &M::identity(2)), Ok(true));
        let shear = M::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(commute_check(&swap(), &shear), Ok(false));
        assert!(matches!(
            commute_check(&swap(), &M::identity(3)),
            Err(LinalgError::DimensionMismatch { .. })
        ));
        // (1,2)(3,4) and (1,3)(2,4) on eight points
        let r1 = M::permutation(&[1, 0, 3, 2, 4, 5, 6, 7]);
        let r2 = M::permutation(&[2, 3, 0, 1, 4, 5, 6, 7]);
        assert_eq!(commute_check(&r1, &r2), Ok(true));
    }

    fn vectors(dim: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        prop::collection::vec(prop::collection::vec((-2i64..=2).prop_map(q), dim), 0..5)
    }

    fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn canonical_under_change_of_generators(
            gens in vectors(4),
            mix in prop::collection::vec((-3i64..=3).prop_map(q), 25),
        ) {
            let s = S::span(4, &gens);
            // random combinations of the generators, plus the generators themselves
            let mut other: Vec<Vec<Rational>> = (0..5).map(|k| {
                let mut v = vec![q(0); 4];
                for (g, w) in gens.iter().zip(&mix[k * 5..]) {
                    for (x, y) in v.iter_mut().zip(g) {
                        *x = x.clone() + w.clone() * y.clone();
                    }
                }
                v
            }).collect();
            other.extend(gens.iter().rev().cloned());
            prop_assert_eq!(S::span(4, &other), s.clone());
            for g in &gens {
                prop_assert!(s.contains(g));
            }
        }

        #[test]
        fn induced_maps_compose(p in perm(4), r in perm(4)) {
            // killed = span of the all-ones vector, preserved by every permutation
            let qs = QuotientSpace::new(S::span(4, &[qv(&[1, 1, 1, 1])]));
            let a = M::permutation(&p);
            let b = M::permutation(&r);
            let ia = induced_on_quotient(&a, &qs).unwrap();
            let ib = induced_on_quotient(&b, &qs).unwrap();
            prop_assert_eq!(&ia * &ib, induced_on_quotient(&(&a * &b), &qs).unwrap());
        }

        #[test]
        fn quotient_dim_is_codim(gens in vectors(5)) {
            let s = S::span(5, &gens);
            let qs = QuotientSpace::new(s.clone());
            prop_assert_eq!(qs.dim() + s.dim(), 5);
            let m = M::from_columns(5, &gens);
            prop_assert_eq!(image_basis(&m), s);
        }
    }
}
