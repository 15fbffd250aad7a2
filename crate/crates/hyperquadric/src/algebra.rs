//! The two-dimensional commutative algebra 𝔄^δ.
//!
//! An element is the matrix `[[a, δb], [b, a]]` with complex `a`, `b`; we store the
//! pair `(a, b)`. For δ = +1 this is the algebra of double (split-complex) numbers
//! tensored with ℂ, for δ = -1 the bicomplex numbers. Multiplication is
//! `(a, b)(c, d) = (ac + δbd, ad + bc)` and the "conjugation" is entrywise
//! complex conjugation, so `Re 𝔄^δ` is the set of elements with real `a`, `b`.
//!
//! The split basis diagonalizes the algebra: for δ = +1 it is `(a + b, a - b)`, for
//! δ = -1 it is `(a + ib, a - ib)`; multiplication is componentwise there.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use thiserror::Error;

use crate::scalar::{Cyclotomic, Gaussian, Scalar};

/// The sign δ selecting the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Delta {
    /// δ = +1 (hyperbolic case).
    Plus,
    /// δ = -1 (elliptic case).
    Minus,
}

impl Delta {
    pub fn sign(self) -> i64 {
        match self {
            Delta::Plus => 1,
            Delta::Minus => -1,
        }
    }

    pub fn from_sign(s: i64) -> Option<Delta> {
        match s {
            1 => Some(Delta::Plus),
            -1 => Some(Delta::Minus),
            _ => None,
        }
    }

    pub const BOTH: [Delta; 2] = [Delta::Plus, Delta::Minus];
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.sign())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("element is a zero divisor (determinant zero)")]
    NotInvertible,
    #[error("operands belong to different algebras (delta {0} vs {1})")]
    DeltaMismatch(Delta, Delta),
    #[error("element is not in the admissible cone")]
    NotInCone,
    #[error("element is not real")]
    NotReal,
    #[error("the square root is not representable exactly")]
    NotExact,
}

/// An element `(a, b)` of 𝔄^δ over the scalar field `S`.
#[derive(Clone, PartialEq)]
pub struct AElem<S> {
    pub delta: Delta,
    pub a: S,
    pub b: S,
}

pub type ExactElem = AElem<Gaussian>;
pub type NumElem = AElem<Complex64>;

impl<S: Scalar> AElem<S> {
    pub fn new(delta: Delta, a: S, b: S) -> Self {
        AElem { delta, a, b }
    }

    pub fn zero(delta: Delta) -> Self {
        AElem::new(delta, S::zero(), S::zero())
    }

    /// The identity `E`.
    pub fn one(delta: Delta) -> Self {
        AElem::new(delta, S::one(), S::zero())
    }

    /// The generator `J = [[0, δ], [1, 0]]`, with `J² = δE`.
    pub fn j(delta: Delta) -> Self {
        AElem::new(delta, S::zero(), S::one())
    }

    pub fn scalar(delta: Delta, s: S) -> Self {
        AElem::new(delta, s, S::zero())
    }

    fn d(&self) -> S {
        S::from_i64(self.delta.sign())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        AElem::new(self.delta, self.a.conj(), self.b.conj())
    }

    /// `a² - δb²`, the determinant of the 2×2 representation.
    pub fn det(&self) -> S {
        self.a.clone() * self.a.clone() - self.d() * self.b.clone() * self.b.clone()
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        let di = self.det().inv().ok_or(AlgebraError::NotInvertible)?;
        Ok(AElem::new(self.delta, self.a.clone() * di.clone(), -self.b.clone() * di))
    }

    pub fn scale(&self, s: &S) -> Self {
        AElem::new(self.delta, self.a.clone() * s.clone(), self.b.clone() * s.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = AElem::one(self.delta);
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// Membership in `Re 𝔄^δ` (both entries real).
    pub fn is_real(&self) -> bool {
        self.a.is_real() && self.b.is_real()
    }

    /// `(X + X̄)/2`.
    pub fn re(&self) -> Self {
        AElem::new(self.delta, self.a.re(), self.b.re())
    }

    /// `(X - X̄)/2i`.
    pub fn im(&self) -> Self {
        AElem::new(self.delta, self.a.im(), self.b.im())
    }

    /// Coordinates in the split basis, where multiplication is componentwise.
    pub fn split(&self) -> (S, S) {
        match self.delta {
            Delta::Plus => (self.a.clone() + self.b.clone(), self.a.clone() - self.b.clone()),
            Delta::Minus => {
                let ib = S::i() * self.b.clone();
                (self.a.clone() + ib.clone(), self.a.clone() - ib)
            }
        }
    }

    /// Inverse of [`AElem::split`].
    pub fn from_split(delta: Delta, p: S, q: S) -> Self {
        let half = S::from_frac(1, 2);
        let a = (p.clone() + q.clone()) * half.clone();
        let diff = (p - q) * half;
        let b = match delta {
            Delta::Plus => diff,
            Delta::Minus => diff * -S::i(),
        };
        AElem::new(delta, a, b)
    }

    /// The square root of an element of the admissible cone, computed
    /// componentwise in the split basis.
    ///
    /// For δ = +1 the cone is the set of real elements with both split
    /// coordinates positive; for δ = -1 it is every nonzero real element, and the
    /// principal complex root is taken.
    pub fn sqrt_positive(&self) -> Result<Self, AlgebraError> {
        if !self.is_real() {
            return Err(AlgebraError::NotReal);
        }
        if !self.is_in_cone() {
            return Err(AlgebraError::NotInCone);
        }
        let (p, q) = self.split();
        let (rp, rq) = match self.delta {
            Delta::Plus => (p.sqrt(), q.sqrt()),
            Delta::Minus => {
                let rp = p.sqrt();
                let rq = rp.as_ref().map(|r| r.conj());
                (rp, rq)
            }
        };
        match (rp, rq) {
            (Some(rp), Some(rq)) => Ok(AElem::from_split(self.delta, rp, rq)),
            _ => Err(AlgebraError::NotExact),
        }
    }

    /// Whether the element lies in the domain of [`AElem::sqrt_positive`].
    pub fn is_in_cone(&self) -> bool {
        if !self.is_real() {
            return false;
        }
        match self.delta {
            Delta::Plus => {
                let (p, q) = self.split();
                p.real_sign() == Some(Ordering::Greater) && q.real_sign() == Some(Ordering::Greater)
            }
            Delta::Minus => !self.is_zero(),
        }
    }

    pub fn to_c64(&self) -> NumElem {
        AElem::new(self.delta, self.a.to_c64(), self.b.to_c64())
    }

    pub fn check_same(&self, o: &Self) -> Result<(), AlgebraError> {
        if self.delta == o.delta {
            Ok(())
        } else {
            Err(AlgebraError::DeltaMismatch(self.delta, o.delta))
        }
    }
}

impl AElem<Gaussian> {
    pub fn to_cyclotomic(&self) -> AElem<Cyclotomic> {
        AElem::new(self.delta, self.a.clone().into(), self.b.clone().into())
    }

    /// Small integers for cheap literals: `(a_re + a_im i, b_re + b_im i)`.
    pub fn from_ints(delta: Delta, a: (i64, i64), b: (i64, i64)) -> Self {
        AElem::new(delta, Gaussian::new(a.0, a.1, 1), Gaussian::new(b.0, b.1, 1))
    }
}

impl NumElem {
    /// Largest absolute value of an entry.
    pub fn norm_max(&self) -> f64 {
        self.a.norm().max(self.b.norm())
    }

    /// `exp(X)` computed in the split basis.
    pub fn exp(&self) -> Self {
        let (p, q) = self.split();
        AElem::from_split(self.delta, p.exp(), q.exp())
    }

    /// `exp(i(sE + tJ))`, a parametrization of the elements with `C C̄ = E`.
    pub fn unit(delta: Delta, s: f64, t: f64) -> Self {
        let x = AElem::new(delta, Complex64::new(0.0, s), Complex64::new(0.0, t));
        x.exp()
    }

    /// Entrywise comparison to within `tol`.
    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        (self.clone() - o.clone()).norm_max() <= tol
    }
}

/// The group 𝔄̂^δ = {λ ∈ 𝔄^δ : λ λ̄ = E, λ³ = E}, exactly.
///
/// For δ = -1 these are the three scalar cube roots of unity. For δ = +1 the
/// split coordinates of λ are independent cube roots of unity, giving nine
/// elements: the three scalar ones and `a(E ± i√3 J)` with `a³ = -1/8`.
pub fn lambda_set(delta: Delta) -> Vec<AElem<Cyclotomic>> {
    let w = Cyclotomic::omega();
    let roots = [Cyclotomic::one(), w.clone(), w.clone() * w];
    let mut out = Vec::new();
    match delta {
        Delta::Minus => {
            for r in &roots {
                out.push(AElem::scalar(delta, r.clone()));
            }
        }
        Delta::Plus => {
            for p in &roots {
                for q in &roots {
                    out.push(AElem::from_split(delta, p.clone(), q.clone()));
                }
            }
        }
    }
    out
}

/// Numeric copy of [`lambda_set`].
pub fn lambda_set_numeric(delta: Delta) -> Vec<NumElem> {
    lambda_set(delta).iter().map(AElem::to_c64).collect()
}

impl<S: Scalar> Add for AElem<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.delta, o.delta);
        AElem::new(self.delta, self.a + o.a, self.b + o.b)
    }
}

impl<S: Scalar> Sub for AElem<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.delta, o.delta);
        AElem::new(self.delta, self.a - o.a, self.b - o.b)
    }
}

impl<S: Scalar> Neg for AElem<S> {
    type Output = Self;
    fn neg(self) -> Self {
        AElem::new(self.delta, -self.a, -self.b)
    }
}

impl<S: Scalar> Mul for AElem<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.delta, o.delta);
        let d = self.d();
        AElem::new(
            self.delta,
            self.a.clone() * o.a.clone() + d * self.b.clone() * o.b.clone(),
            self.a * o.b + self.b * o.a,
        )
    }
}

impl<S: Scalar> AddAssign for AElem<S> {
    fn add_assign(&mut self, o: Self) {
        self.a += o.a;
        self.b += o.b;
    }
}

impl<S: Scalar> SubAssign for AElem<S> {
    fn sub_assign(&mut self, o: Self) {
        self.a -= o.a;
        self.b -= o.b;
    }
}

impl<S: Scalar> MulAssign for AElem<S> {
    fn mul_assign(&mut self, o: Self) {
        *self = self.clone() * o;
    }
}

impl<S: fmt::Debug> fmt::Debug for AElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}; {:?}]_{}", self.a, self.b, self.delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> Gaussian {
        Gaussian::new(re, im, 1)
    }

    fn elem(d: Delta) -> impl Strategy<Value = ExactElem> {
        (-9i64..9, -9i64..9, -9i64..9, -9i64..9, 1i64..5)
            .prop_map(move |(a, b, c, e, den)| AElem::new(d, Gaussian::new(a, b, den), Gaussian::new(c, e, 1)))
    }

    fn delta() -> impl Strategy<Value = Delta> {
        prop_oneof![Just(Delta::Plus), Just(Delta::Minus)]
    }

    #[test]
    fn product_matches_worked_example() {
        let x = AElem::new(Delta::Plus, g(1, 0), g(2, 0));
        let y = AElem::new(Delta::Plus, g(3, 0), g(-1, 0));
        assert_eq!(x * y, AElem::new(Delta::Plus, g(1, 0), g(5, 0)));
    }

    #[test]
    fn j_squares_to_delta() {
        for d in Delta::BOTH {
            let j = ExactElem::j(d);
            assert_eq!(j.clone() * j, ExactElem::scalar(d, Gaussian::from_i64(d.sign())));
        }
    }

    #[test]
    fn split_conjugation_swaps_for_minus() {
        let c = AElem::new(Delta::Minus, g(1, 2), g(-3, 1));
        let (alpha, beta) = c.split();
        let (p, q) = c.conj().split();
        assert_eq!(p, beta.conj());
        assert_eq!(q, alpha.conj());
    }

    #[test]
    fn lambda_set_sizes_and_equations() {
        for (d, n) in [(Delta::Minus, 3), (Delta::Plus, 9)] {
            let set = lambda_set(d);
            assert_eq!(set.len(), n);
            for l in &set {
                assert!(l.pow(3).is_one());
                assert!((l.clone() * l.conj()).is_one());
            }
        }
    }

    #[test]
    fn lambda_set_contains_the_non_scalar_family() {
        // a (E ± i√3 J) with a³ = -1/8.
        let set = lambda_set(Delta::Plus);
        let i_sqrt3 = Cyclotomic::i() * Cyclotomic::sqrt3();
        let mut found = 0;
        for l in &set {
            if l.b.is_zero() {
                continue;
            }
            let ratio = l.b.clone() * l.a.inv().unwrap();
            assert!(ratio == i_sqrt3 || ratio == -i_sqrt3.clone());
            assert_eq!(l.a.pow(3), Cyclotomic::from_frac(-1, 8));
            found += 1;
        }
        assert_eq!(found, 6);
    }

    #[test]
    fn sqrt_positive_examples() {
        let x = AElem::new(Delta::Plus, Gaussian::from_frac(5, 2), Gaussian::from_frac(3, 2));
        let r = x.sqrt_positive().unwrap();
        assert_eq!(r, AElem::new(Delta::Plus, Gaussian::from_frac(3, 2), Gaussian::from_frac(1, 2)));
        let bad = AElem::new(Delta::Plus, g(1, 0), g(2, 0));
        assert_eq!(bad.sqrt_positive(), Err(AlgebraError::NotInCone));
        // δ = -1: split (3 + 4i, 3 - 4i) has root (2 + i, 2 - i).
        let y = AElem::new(Delta::Minus, g(3, 0), g(4, 0));
        let ry = y.sqrt_positive().unwrap();
        assert_eq!(ry.clone() * ry, y);
    }

    #[test]
    fn unit_exponential_has_unit_norm() {
        for d in Delta::BOTH {
            let c = NumElem::unit(d, 0.3, -0.7);
            assert!((c.clone() * c.conj()).approx_eq(&NumElem::one(d), 1e-14));
        }
    }

    proptest! {
        #[test]
        fn multiplication_is_commutative_and_associative(
            d in delta(),
            (a, b, c) in (elem(Delta::Plus), elem(Delta::Plus), elem(Delta::Plus)),
        ) {
            let (x, y, z) = (AElem { delta: d, ..a }, AElem { delta: d, ..b }, AElem { delta: d, ..c });
            prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
            prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x * (y * z));
        }

        #[test]
        fn split_is_a_ring_isomorphism(x in elem(Delta::Plus), y in elem(Delta::Plus), z in elem(Delta::Minus), w in elem(Delta::Minus)) {
            for (x, y) in [(x, y), (z, w)] {
                let (p1, q1) = x.split();
                let (p2, q2) = y.split();
                prop_assert_eq!((x.clone() * y.clone()).split(), (p1.clone() * p2.clone(), q1.clone() * q2.clone()));
                prop_assert_eq!(AElem::from_split(x.delta, p1, q1), x);
            }
        }

        #[test]
        fn determinant_is_multiplicative(x in elem(Delta::Plus), y in elem(Delta::Plus), z in elem(Delta::Minus), w in elem(Delta::Minus)) {
            for (x, y) in [(x, y), (z, w)] {
                prop_assert_eq!((x.clone() * y.clone()).det(), x.det() * y.det());
                if x.is_invertible() {
                    prop_assert!((x.clone() * x.inv().unwrap()).is_one());
                }
            }
        }

        #[test]
        fn squares_of_cone_elements_have_exact_roots(p in 1i64..30, q in 1i64..30, a in -20i64..20, b in -20i64..20) {
            let x = AElem::from_split(Delta::Plus, Gaussian::from_frac(p, 7), Gaussian::from_frac(q, 3));
            let sq = x.clone() * x.clone();
            prop_assert_eq!(sq.sqrt_positive().unwrap(), x);
            // δ = -1: roots with positive real split part are principal.
            let r = AElem::from_split(Delta::Minus, Gaussian::new(a.abs() + 1, b, 1), Gaussian::new(a.abs() + 1, -b, 1));
            let sq = r.clone() * r.clone();
            prop_assert_eq!(sq.sqrt_positive().unwrap(), r);
        }
    }
}
