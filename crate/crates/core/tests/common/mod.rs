//! Random commuting representations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use borel::flag::{h2_action_matrix, Permutation};
use borel::{QGradedRep, QMatrix, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

/// `n` commuting permutations of `0..m`: the points are cut into blocks and
/// every generator rotates each block by its own power.
pub fn commuting_permutations<R: Rng>(rng: &mut R, m: usize, n: usize) -> Vec<Permutation> {
    let mut points: Vec<usize> = (0..m).collect();
    points.shuffle(rng);
    let mut blocks = Vec::new();
    let mut rest = points.as_slice();
    while !rest.is_empty() {
        let len = rng.gen_range(1..=rest.len());
        blocks.push(&rest[..len]);
        rest = &rest[len..];
    }
    (0..n)
        .map(|_| {
            let mut images: Vec<usize> = (0..m).collect();
            for block in &blocks {
                let shift = rng.gen_range(0..block.len());
                for (j, &x) in block.iter().enumerate() {
                    images[x] = block[(j + shift) % block.len()];
                }
            }
            Permutation::from_images(images).expect("block rotations are bijective")
        })
        .collect()
}

/// A random invertible integer matrix together with its inverse, as a product
/// of elementary row operations.
pub fn random_change_of_basis<R: Rng>(rng: &mut R, dim: usize) -> (QMatrix, QMatrix) {
    let mut p = QMatrix::identity(dim);
    let mut p_inv = QMatrix::identity(dim);
    if dim < 2 {
        return (p, p_inv);
    }
    for _ in 0..dim {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = rng.gen_range(-2..=2);
        let mut e = QMatrix::identity(dim);
        e.set(i, j, Rational::from_integer(c.into()));
        let mut e_inv = QMatrix::identity(dim);
        e_inv.set(i, j, Rational::from_integer((-c).into()));
        p = &e * &p;
        p_inv = &p_inv * &e_inv;
    }
    (p, p_inv)
}

/// Random representation of `Z^n` (n <= 3) on up to three nonzero degrees,
/// each a permutation representation of at most 8 points or its reduced
/// quotient by the sum vector, possibly written in a scrambled basis. When
/// `connected` is set, degree 0 is a trivial line.
pub fn random_rep<R: Rng>(rng: &mut R, connected: bool) -> QGradedRep {
    let n = rng.gen_range(1..=3);
    let mut degrees: Vec<usize> = (0..=4).collect();
    degrees.shuffle(rng);
    let count = rng.gen_range(1..=3);
    let mut chosen: Vec<usize> = degrees.into_iter().take(count).collect();
    if connected {
        chosen.retain(|&q| q != 0);
        chosen.truncate(2);
    }
    let mut pieces: BTreeMap<usize, Vec<QMatrix>> = BTreeMap::new();
    if connected {
        pieces.insert(0, vec![QMatrix::identity(1); n]);
    }
    for q in chosen {
        let m = rng.gen_range(1..=8);
        let perms = commuting_permutations(rng, m, n);
        let reduced = m >= 2 && rng.gen_bool(0.5);
        let mut ops: Vec<QMatrix> = perms
            .iter()
            .map(|p| {
                if reduced {
                    h2_action_matrix(m, p)
                } else {
                    QMatrix::permutation(p.images())
                }
            })
            .collect();
        if rng.gen_bool(0.5) {
            let (p, p_inv) = random_change_of_basis(rng, ops[0].rows());
            ops = ops.iter().map(|a| &(&p * a) * &p_inv).collect();
        }
        pieces.insert(q, ops);
    }
    QGradedRep::new(
        n,
        pieces.into_iter().map(|(q, ops)| (q, ops[0].rows(), ops)),
    )
    .expect("operators have matching shapes")
}
