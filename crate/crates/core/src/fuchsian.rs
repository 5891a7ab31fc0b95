//! Fixed points and derivatives of hyperbolic Möbius transformations
//! `t -> (a t + b) / (c t + d)` with `ad - bc = 1`, computed exactly in
//! `Q(sqrt(Δ))`, `Δ = (a + d)^2 - 4`.
//!
//! At a finite fixed point `x` the derivative is `(c x + d)^-2`. For a
//! hyperbolic map it is never `±1`, so no metric on the circle at infinity
//! can make such a map an isometry.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoebiusError {
    #[error("ad - bc = {0}, expected 1")]
    NotUnimodular(String),
    #[error("transformation is not hyperbolic (|trace| <= 2)")]
    NotHyperbolic,
}

/// `r + s * sqrt(disc)`.
///
/// Whenever `s != 0`, `disc` is not the square of a scalar, so two surds over
/// the same discriminant are equal iff their coefficients are.
#[derive(Clone, Debug)]
pub struct QuadraticSurd<F> {
    r: F,
    s: F,
    disc: F,
}

impl<F: Scalar> QuadraticSurd<F> {
    /// Panics if `disc < 0`. A perfect-square discriminant is folded into the
    /// rational part.
    pub fn new(r: F, s: F, disc: F) -> Self {
        assert!(disc >= F::zero(), "negative discriminant");
        if s.is_zero() {
            return Self { r, s, disc };
        }
        match disc.exact_sqrt() {
            Some(root) => Self {
                r: r + s * root,
                s: F::zero(),
                disc,
            },
            None => Self { r, s, disc },
        }
    }

    pub fn rational(r: F) -> Self {
        Self {
            r,
            s: F::zero(),
            disc: F::zero(),
        }
    }

    pub fn rational_part(&self) -> &F {
        &self.r
    }

    pub fn surd_part(&self) -> &F {
        &self.s
    }

    pub fn disc(&self) -> &F {
        &self.disc
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero()
    }

    /// `r - s * sqrt(disc)`.
    pub fn conjugate(&self) -> Self {
        Self {
            r: self.r.clone(),
            s: -self.s.clone(),
            disc: self.disc.clone(),
        }
    }

    /// `r^2 - s^2 disc`, the product with the conjugate.
    pub fn norm(&self) -> F {
        self.r.clone() * self.r.clone() - self.s.clone() * self.s.clone() * self.disc.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    /// `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self {
            r: self.r.clone() / n.clone(),
            s: -self.s.clone() / n,
            disc: self.disc.clone(),
        })
    }

    fn common_disc(&self, other: &Self) -> F {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.disc.clone(),
            (_, true) => self.disc.clone(),
            _ => {
                assert!(
                    self.disc == other.disc,
                    "surds over different discriminants {} and {}",
                    self.disc,
                    other.disc
                );
                self.disc.clone()
            }
        }
    }
}

impl<F: Scalar> PartialEq for QuadraticSurd<F> {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.s == other.s && (self.s.is_zero() || self.disc == other.disc)
    }
}

impl<F: Scalar> Add for &QuadraticSurd<F> {
    type Output = QuadraticSurd<F>;

    fn add(self, rhs: Self) -> QuadraticSurd<F> {
        let disc = self.common_disc(rhs);
        QuadraticSurd::new(
            self.r.clone() + rhs.r.clone(),
            self.s.clone() + rhs.s.clone(),
            disc,
        )
    }
}

impl<F: Scalar> Neg for &QuadraticSurd<F> {
    type Output = QuadraticSurd<F>;

    fn neg(self) -> QuadraticSurd<F> {
        QuadraticSurd {
            r: -self.r.clone(),
            s: -self.s.clone(),
            disc: self.disc.clone(),
        }
    }
}

impl<F: Scalar> Sub for &QuadraticSurd<F> {
    type Output = QuadraticSurd<F>;

    fn sub(self, rhs: Self) -> QuadraticSurd<F> {
        self + &(-rhs)
    }
}

impl<F: Scalar> Mul for &QuadraticSurd<F> {
    type Output = QuadraticSurd<F>;

    fn mul(self, rhs: Self) -> QuadraticSurd<F> {
        let disc = self.common_disc(rhs);
        let r = self.r.clone() * rhs.r.clone() + self.s.clone() * rhs.s.clone() * disc.clone();
        let s = self.r.clone() * rhs.s.clone() + self.s.clone() * rhs.r.clone();
        QuadraticSurd::new(r, s, disc)
    }
}

impl<F: Scalar> Div for &QuadraticSurd<F> {
    type Output = QuadraticSurd<F>;

    /// Panics on division by zero.
    fn div(self, rhs: Self) -> QuadraticSurd<F> {
        self * &rhs.recip().expect("division by zero surd")
    }
}

impl<F: Scalar> fmt::Display for QuadraticSurd<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_zero() {
            return write!(f, "{}", self.r);
        }
        let (sign, mag) = if self.s < F::zero() {
            ("-", -self.s.clone())
        } else {
            ("+", self.s.clone())
        };
        let coeff = if mag.is_one() {
            String::new()
        } else {
            format!("{mag}*")
        };
        if self.r.is_zero() {
            let lead = if sign == "-" { "-" } else { "" };
            write!(f, "{lead}{coeff}sqrt({})", self.disc)
        } else {
            write!(f, "{} {sign} {coeff}sqrt({})", self.r, self.disc)
        }
    }
}

/// An element of `SL(2)` over the scalar field.
#[derive(Clone, Debug, PartialEq)]
pub struct MoebiusMatrix<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: Scalar> MoebiusMatrix<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Result<Self, MoebiusError> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if !det.is_one() {
            return Err(MoebiusError::NotUnimodular(det.to_string()));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn trace(&self) -> F {
        self.a.clone() + self.d.clone()
    }

    /// `trace^2 - 4`.
    pub fn discriminant(&self) -> F {
        let t = self.trace();
        t.clone() * t - F::from_int(4)
    }

    /// `(a x + b) / (c x + d)`, or `None` when `x` is the pole.
    pub fn apply(&self, x: &QuadraticSurd<F>) -> Option<QuadraticSurd<F>> {
        let lift = |v: &F| QuadraticSurd::rational(v.clone());
        let num = &(&lift(&self.a) * x) + &lift(&self.b);
        let den = &(&lift(&self.c) * x) + &lift(&self.d);
        den.recip().map(|inv| &num * &inv)
    }

    /// `(c x + d)^-2`, the derivative at `x`.
    pub fn derivative_at(&self, x: &QuadraticSurd<F>) -> Option<QuadraticSurd<F>> {
        let den = &(&QuadraticSurd::rational(self.c.clone()) * x)
            + &QuadraticSurd::rational(self.d.clone());
        (&den * &den).recip()
    }
}

pub fn is_hyperbolic<F: Scalar>(m: &MoebiusMatrix<F>) -> bool {
    m.discriminant() > F::zero()
}

/// The fixed points on the real projective line.
#[derive(Clone, Debug)]
pub enum FixedPoints<F> {
    /// `c != 0`: `(a - d ± sqrt(Δ)) / 2c`, the `+` root first.
    Finite([QuadraticSurd<F>; 2]),
    /// `c = 0`: the finite point `-b / (a - d)` and the point at infinity.
    FiniteAndInfinity(F),
}

impl<F: Scalar> PartialEq for FixedPoints<F> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => a == b,
            (Self::FiniteAndInfinity(a), Self::FiniteAndInfinity(b)) => a == b,
            _ => false,
        }
    }
}

pub fn fixed_points<F: Scalar>(m: &MoebiusMatrix<F>) -> Result<FixedPoints<F>, MoebiusError> {
    if !is_hyperbolic(m) {
        return Err(MoebiusError::NotHyperbolic);
    }
    let diff = m.a.clone() - m.d.clone();
    if m.c.is_zero() {
        // hyperbolic with c = 0 forces a != d
        return Ok(FixedPoints::FiniteAndInfinity(-m.b.clone() / diff));
    }
    let two_c = F::from_int(2) * m.c.clone();
    let r = diff / two_c.clone();
    let s = F::one() / two_c;
    let disc = m.discriminant();
    Ok(FixedPoints::Finite([
        QuadraticSurd::new(r.clone(), s.clone(), disc.clone()),
        QuadraticSurd::new(r, -s, disc),
    ]))
}

/// Derivatives at the two fixed points, in the order of [`fixed_points`].
///
/// For `c != 0` these are `4 / (trace ± sqrt(Δ))^2`. For `c = 0` the finite
/// point has derivative `d^-2` and the point at infinity is reported with the
/// reciprocal `d^2`.
pub fn derivative_at_fixed_points<F: Scalar>(
    m: &MoebiusMatrix<F>,
) -> Result<[QuadraticSurd<F>; 2], MoebiusError> {
    if !is_hyperbolic(m) {
        return Err(MoebiusError::NotHyperbolic);
    }
    if m.c.is_zero() {
        let d2 = m.d.clone() * m.d.clone();
        return Ok([
            QuadraticSurd::rational(F::one() / d2.clone()),
            QuadraticSurd::rational(d2),
        ]);
    }
    let disc = m.discriminant();
    let four = QuadraticSurd::rational(F::from_int(4));
    let mut out = Vec::with_capacity(2);
    for sign in [F::one(), -F::one()] {
        let base = QuadraticSurd::new(m.trace(), sign, disc.clone());
        out.push(&four / &(&base * &base));
    }
    let second = out.pop().expect("two roots");
    let first = out.pop().expect("two roots");
    Ok([first, second])
}

/// True when neither derivative at a fixed point is `1` or `-1`.
pub fn derivatives_avoid_unit<F: Scalar>(m: &MoebiusMatrix<F>) -> Result<bool, MoebiusError> {
    let one = QuadraticSurd::rational(F::one());
    let minus_one = QuadraticSurd::rational(-F::one());
    Ok(derivative_at_fixed_points(m)?
        .iter()
        .all(|l| *l != one && *l != minus_one))
}
