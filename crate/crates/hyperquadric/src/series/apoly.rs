//! Polynomials with values in 𝔄^δ, i.e. pairs `(a, b)` standing for
//! `[[a, δb], [b, a]]`.

use crate::algebra::{AElem, Delta};
use crate::scalar::Gaussian;
use crate::scalar::Scalar;

use super::poly::Poly;

pub type P = Poly<Gaussian>;

#[derive(Clone, Debug, PartialEq)]
pub struct APoly {
    pub delta: Delta,
    pub a: P,
    pub b: P,
}

impl APoly {
    pub fn new(delta: Delta, a: P, b: P) -> Self {
        APoly { delta, a, b }
    }

    pub fn zero(delta: Delta) -> Self {
        Self::new(delta, P::zero(), P::zero())
    }

    pub fn constant(x: &AElem<Gaussian>) -> Self {
        Self::new(x.delta, P::constant(x.a.clone()), P::constant(x.b.clone()))
    }

    /// The algebra variable whose entries sit in slots `i` and `j`.
    pub fn var(delta: Delta, i: usize, j: usize) -> Self {
        Self::new(delta, P::var(i), P::var(j))
    }

    /// `Z = (z₁, z₂)`.
    pub fn z(delta: Delta) -> Self {
        Self::var(delta, 0, 1)
    }

    /// `Z̄ = (z̄₁, z̄₂)`.
    pub fn zbar(delta: Delta) -> Self {
        Self::var(delta, 2, 3)
    }

    /// `U = (u₁, u₂)`, or the holomorphic `W` when used inside a jet.
    pub fn u(delta: Delta) -> Self {
        Self::var(delta, 4, 5)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.delta, self.a.clone() + o.a.clone(), self.b.clone() + o.b.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.delta, self.a.clone() - o.a.clone(), self.b.clone() - o.b.clone())
    }

    pub fn mul(&self, o: &Self, bound: u32) -> Self {
        let d = Gaussian::from_i64(self.delta.sign());
        let a = self.a.mul_trunc(&o.a, bound) + self.b.mul_trunc(&o.b, bound).scale(&d);
        let b = self.a.mul_trunc(&o.b, bound) + self.b.mul_trunc(&o.a, bound);
        Self::new(self.delta, a, b)
    }

    pub fn mul_elem(&self, x: &AElem<Gaussian>) -> Self {
        let d = Gaussian::from_i64(self.delta.sign());
        let a = self.a.scale(&x.a) + self.b.scale(&(x.b.clone() * d));
        let b = self.a.scale(&x.b) + self.b.scale(&x.a);
        Self::new(self.delta, a, b)
    }

    pub fn pow(&self, n: u32, bound: u32) -> Self {
        let mut acc = Self::constant(&AElem::one(self.delta));
        for _ in 0..n {
            acc = acc.mul(self, bound);
        }
        acc
    }

    /// Entrywise conjugation `Z ↦ Z̄` of the function.
    pub fn bar(&self) -> Self {
        Self::new(self.delta, self.a.bar(), self.b.bar())
    }

    /// `(E - X)⁻¹ = Σ Xᵏ` for `X` without constant term.
    pub fn geometric_inverse(x: &Self, bound: u32) -> Self {
        debug_assert!(x.a.min_weight().unwrap_or(1) >= 1 && x.b.min_weight().unwrap_or(1) >= 1);
        let mut acc = Self::constant(&AElem::one(x.delta));
        let mut p = acc.clone();
        for _ in 0..bound {
            p = p.mul(x, bound);
            if p.a.is_zero() && p.b.is_zero() {
                break;
            }
            acc = acc.add(&p);
        }
        acc
    }
}
