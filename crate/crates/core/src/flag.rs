//! Permutation actions on the low-degree cohomology of complete flag
//! manifolds `F_n = U(n)/T^n`.
//!
//! `H^2(F_n)` is spanned by the line classes `x_1, ..., x_n` subject to
//! `x_1 + ... + x_n = 0`, and a permutation of the lines acts by
//! `x_i -> x_{p(i)}`. We use `{x_1, ..., x_{n-1}}` as the basis, rewriting
//! `x_n = -(x_1 + ... + x_{n-1})`. `H^1(F_n) = 0` and `H^0` is trivial.

use std::fmt;

use thiserror::Error;

use crate::graded_rep::GradedRep;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A bijection of `{0, ..., n-1}`; displayed and parsed in 1-based cycle
/// notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error("not a bijection of 1..={0}")]
    NotBijective(usize),
    #[error("malformed cycle notation: {0}")]
    Syntax(String),
    #[error("generator {index} acts on {found} points, expected {expected}")]
    WrongSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("generators {first} and {second} do not commute")]
    NonCommutingGenerators { first: usize, second: usize },
    #[error("generator {index} is an odd permutation and reverses orientation")]
    OddPermutation { index: usize },
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// `images[i]` is the image of `i` (0-based).
    pub fn from_images(images: Vec<usize>) -> Result<Self, FlagError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(FlagError::NotBijective(n));
            }
        }
        Ok(Self { images })
    }

    /// Product of disjoint or overlapping cycles on `1..=n`, written 1-based.
    /// Cycles are composed right to left.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, FlagError> {
        let mut p = Self::identity(n);
        for cycle in cycles.iter().rev() {
            let mut sorted = cycle.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cycle.len() {
                return Err(FlagError::NotBijective(n));
            }
            let mut images: Vec<usize> = (0..n).collect();
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(FlagError::NotBijective(n));
                }
                images[a - 1] = b - 1;
            }
            let c = Self::from_images(images)?;
            p = c.compose(&p);
        }
        Ok(p)
    }

    /// Parses e.g. `"(1,2)(3,4)"`; `"()"` or `""` is the identity.
    pub fn parse(n: usize, s: &str) -> Result<Self, FlagError> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| FlagError::Syntax(s.to_string()))?;
            let entries = body.0.trim();
            if !entries.is_empty() {
                let cycle = entries
                    .split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| FlagError::Syntax(s.to_string()))?;
                cycles.push(cycle);
            }
            rest = body.1.trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "permutation size mismatch");
        Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.compose(other) == other.compose(self)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles()
            .iter()
            .fold(1, |acc, c| acc / gcd(acc, c.len()) * c.len())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let items: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", items.join(","))?;
        }
        Ok(())
    }
}

/// `+1` for even permutations, `-1` for odd ones.
pub fn sign(p: &Permutation) -> i8 {
    let transpositions: usize = p.cycles().iter().map(|c| c.len() - 1).sum();
    if transpositions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The top class of `F_n` changes sign exactly under odd permutations, so the
/// orientation-preserving permutations form the alternating group.
pub fn orientation_preserving(p: &Permutation) -> bool {
    sign(p) == 1
}

/// Matrix of `p` on `H^2(F_n)` in the basis `x_1, ..., x_{n-1}`. For `n < 2`
/// the space is zero and the result is `0 x 0`.
pub fn h2_action_matrix<F: Scalar>(n: usize, p: &Permutation) -> Matrix<F> {
    assert_eq!(
        p.degree(),
        n,
        "permutation acts on the wrong number of lines"
    );
    let dim = n.saturating_sub(1);
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        let j = p.apply(i);
        if j == dim {
            for r in 0..dim {
                m.set(r, i, -F::one());
            }
        } else {
            m.set(j, i, F::one());
        }
    }
    m
}

/// Commuting permutations acting on `F_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagRepSpec {
    pub n: usize,
    pub generators: Vec<Permutation>,
    pub require_orientation: bool,
}

/// The action on `H^0(F_n) ⊕ H^2(F_n)` of the given generators.
pub fn build_flag_rep<F: Scalar>(spec: &FlagRepSpec) -> Result<GradedRep<F>, FlagError> {
    for (index, g) in spec.generators.iter().enumerate() {
        if g.degree() != spec.n {
            return Err(FlagError::WrongSize {
                index,
                expected: spec.n,
                found: g.degree(),
            });
        }
    }
    for (first, a) in spec.generators.iter().enumerate() {
        for (second, b) in spec.generators.iter().enumerate().skip(first + 1) {
            if !a.commutes_with(b) {
                return Err(FlagError::NonCommutingGenerators { first, second });
            }
        }
    }
    if spec.require_orientation {
        if let Some(index) = spec
            .generators
            .iter()
            .position(|g| !orientation_preserving(g))
        {
            return Err(FlagError::OddPermutation { index });
        }
    }
    let k = spec.generators.len();
    let h2: Vec<Matrix<F>> = spec
        .generators
        .iter()
        .map(|g| h2_action_matrix(spec.n, g))
        .collect();
    let rep = GradedRep::new(
        k,
        [
            (0, 1, vec![Matrix::identity(1); k]),
            (2, spec.n.saturating_sub(1), h2),
        ],
    )
    .expect("flag operators have consistent shapes");
    Ok(rep)
}

/// `R_1 = (1,2)(3,4)`, `R_2 = (1,3)(2,4)`, `R_3 = (5,8,6)` acting on `F_8`.
pub fn f8_z3_spec() -> FlagRepSpec {
    let gens = [
        &[&[1, 2][..], &[3, 4]][..],
        &[&[1, 3], &[2, 4]],
        &[&[5, 8, 6]],
    ];
    FlagRepSpec {
        n: 8,
        generators: gens
            .iter()
            .map(|c| Permutation::from_cycles(8, c).expect("valid cycles"))
            .collect(),
        require_orientation: true,
    }
}

pub fn f8_z3<F: Scalar>() -> GradedRep<F> {
    build_flag_rep(&f8_z3_spec()).expect("the F_8 generators commute and are even")
}
