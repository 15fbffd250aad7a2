//! ℝ²-valued Hermitian forms `H = (H₁, H₂)` on ℂ².
//!
//! Convention: `H_k(z, z') = Σ h_ij z_i z̄'_j = zᵀ H_k z̄'`, so a change of
//! variables `z = Aζ` replaces `H_k` by `Aᵀ H_k Ā`.
//!
//! The class is read off exactly from the binary quadratic form
//! `q(x, y) = det(x H₁ + y H₂)`: two real isotropic directions (hyperbolic), none
//! (elliptic) or a double one (parabolic). The equivalence witness is built from
//! the singular members of the pencil and is numeric.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

use crate::scalar::{Gaussian, Scalar};
use crate::series::{Mono, SurfaceSeries};

pub type HMat<S> = [[S; 2]; 2];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HermitianError {
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("series has a nonzero constant or linear part")]
    MalformedSeries,
    #[error("discriminant {0:e} is within the tolerance band; decide with exact input")]
    ToleranceBand(f64),
    #[error("no equivalence witness found")]
    NoWitness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Class {
    Hyperbolic,
    Elliptic,
    Parabolic,
    Degenerate,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianForm2 {
    pub h1: HMat<Gaussian>,
    pub h2: HMat<Gaussian>,
}

/// `(A, B)` with `H_can,k = Σ_l B_kl Aᵀ H_l Ā`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub a: HMat<Complex64>,
    pub b: HMat<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub class: Class,
    pub witness: Option<Witness>,
    /// Largest entrywise deviation of the transformed form from the canonical one.
    pub residual: Option<f64>,
}

fn is_hermitian<S: Scalar>(h: &HMat<S>) -> bool {
    (0..2).all(|i| (0..2).all(|j| h[i][j] == h[j][i].conj()))
}

fn g(n: i64) -> Gaussian {
    Gaussian::from_i64(n)
}

impl HermitianForm2 {
    pub fn new(h1: HMat<Gaussian>, h2: HMat<Gaussian>) -> Result<Self, HermitianError> {
        if !is_hermitian(&h1) || !is_hermitian(&h2) {
            return Err(HermitianError::NotHermitian);
        }
        Ok(HermitianForm2 { h1, h2 })
    }

    /// `H¹ = (|z₁|² + |z₂|², 2 Re z₁z̄₂)`, `H⁻¹ = (|z₁|² - |z₂|², 2 Re z₁z̄₂)`,
    /// `H⁰ = (|z₁|², 2 Re z₁z̄₂)`.
    pub fn canonical(c: Class) -> Option<Self> {
        let h2 = [[g(0), g(1)], [g(1), g(0)]];
        let h1 = match c {
            Class::Hyperbolic => [[g(1), g(0)], [g(0), g(1)]],
            Class::Elliptic => [[g(1), g(0)], [g(0), g(-1)]],
            Class::Parabolic => [[g(1), g(0)], [g(0), g(0)]],
            Class::Degenerate => return None,
        };
        Some(HermitianForm2 { h1, h2 })
    }

    pub fn parts(&self) -> [&HMat<Gaussian>; 2] {
        [&self.h1, &self.h2]
    }

    /// `H_k ↦ Σ_l B_kl Aᵀ H_l Ā`.
    pub fn congruence(&self, a: &HMat<Gaussian>, b: &HMat<Gaussian>) -> Self {
        let t: Vec<HMat<Gaussian>> = self.parts().iter().map(|h| sandwich(a, h)).collect();
        let comb = |k: usize| -> HMat<Gaussian> {
            std::array::from_fn(|i| std::array::from_fn(|j| b[k][0].clone() * t[0][i][j].clone() + b[k][1].clone() * t[1][i][j].clone()))
        };
        HermitianForm2 { h1: comb(0), h2: comb(1) }
    }

    /// Coefficients `(a, b, c)` of `q(x, y) = a x² + b xy + c y² = det(xH₁ + yH₂)`.
    pub fn pencil_quadratic(&self) -> [Gaussian; 3] {
        let (p, q) = (&self.h1, &self.h2);
        let det = |m: &HMat<Gaussian>| m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
        let mixed = p[0][0].clone() * q[1][1].clone() + p[1][1].clone() * q[0][0].clone()
            - p[0][1].clone() * q[1][0].clone()
            - p[1][0].clone() * q[0][1].clone();
        [det(p), mixed, det(q)]
    }

    pub fn discriminant(&self) -> Gaussian {
        let [a, b, c] = self.pencil_quadratic();
        b.clone() * b - g(4) * a * c
    }

    /// (i) `H₁`, `H₂` are ℝ-independent and (ii) they have no common kernel.
    pub fn is_nondegenerate(&self) -> bool {
        let real_vec = |h: &HMat<Gaussian>| [h[0][0].re(), h[1][1].re(), h[0][1].re(), h[0][1].im()];
        let (u, v) = (real_vec(&self.h1), real_vec(&self.h2));
        let independent =
            (0..4).any(|i| (i + 1..4).any(|j| !(u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone()).is_zero()));
        // zᵀ[H₁ H₂] = 0 has a nonzero solution iff every 2×2 minor vanishes
        let cols: Vec<[Gaussian; 2]> = self
            .parts()
            .iter()
            .flat_map(|h| (0..2).map(move |j| [h[0][j].clone(), h[1][j].clone()]))
            .collect();
        let no_kernel = (0..4).any(|i| {
            (i + 1..4).any(|j| !(cols[i][0].clone() * cols[j][1].clone() - cols[j][0].clone() * cols[i][1].clone()).is_zero())
        });
        independent && no_kernel
    }

    /// The exact label.
    pub fn label(&self) -> Class {
        if !self.is_nondegenerate() {
            return Class::Degenerate;
        }
        match self.discriminant().real_sign().expect("discriminant is real") {
            Ordering::Greater => Class::Hyperbolic,
            Ordering::Less => Class::Elliptic,
            Ordering::Equal => Class::Parabolic,
        }
    }

    pub fn to_c64(&self) -> [HMat<Complex64>; 2] {
        let f = |h: &HMat<Gaussian>| h.clone().map(|r| r.map(|x| x.to_c64()));
        [f(&self.h1), f(&self.h2)]
    }
}

fn sandwich<S: Scalar>(a: &HMat<S>, h: &HMat<S>) -> HMat<S> {
    // (Aᵀ H Ā)_ij = Σ a_pi h_pq conj(a_qj)
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = S::zero();
            for p in 0..2 {
                for q in 0..2 {
                    acc += a[p][i].clone() * h[p][q].clone() * a[q][j].conj();
                }
            }
            acc
        })
    })
}

/// Classify with an equivalence witness.
pub fn classify(h: &HermitianForm2) -> Classification {
    let class = h.label();
    let Some(can) = HermitianForm2::canonical(class) else {
        return Classification { class, witness: None, residual: None };
    };
    let can = can.to_c64();
    // Precondition with fixed exact congruences if the direct construction is
    // ill-conditioned; the attempts are deterministic.
    let pre: [(HMat<i64>, HMat<i64>); 4] = [
        ([[1, 0], [0, 1]], [[1, 0], [0, 1]]),
        ([[1, 1], [0, 1]], [[1, 0], [1, 1]]),
        ([[2, 1], [1, 1]], [[1, 1], [0, 1]]),
        ([[1, 0], [1, 3]], [[2, 1], [1, 1]]),
    ];
    for (a0, b0) in pre {
        let a0g = a0.map(|r| r.map(g));
        let b0g = b0.map(|r| r.map(g));
        let h0 = h.congruence(&a0g, &b0g);
        if let Some(w) = construct_witness(&h0.to_c64(), class) {
            // compose: first (A₀, B₀), then (A₁, B₁)  →  (A₀A₁, B₁B₀)
            let a0c = a0.map(|r| r.map(|x| Complex64::new(x as f64, 0.0)));
            let b0f = b0.map(|r| r.map(|x| x as f64));
            let w = Witness { a: mat_mul(&a0c, &w.a), b: mat_mul(&w.b, &b0f) };
            let r = witness_residual(&h.to_c64(), &w, &can);
            if r < 1e-9 {
                return Classification { class, witness: Some(w), residual: Some(r) };
            }
        }
    }
    Classification { class, witness: None, residual: None }
}

fn mat_mul<T: Copy + std::ops::Mul<Output = T> + std::ops::Add<Output = T>>(x: &HMat<T>, y: &HMat<T>) -> HMat<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][0] * y[0][j] + x[i][1] * y[1][j]))
}

/// `max |H_can - B·(Aᵀ H Ā)|`.
pub fn witness_residual(h: &[HMat<Complex64>; 2], w: &Witness, can: &[HMat<Complex64>; 2]) -> f64 {
    let t = [sandwich(&w.a, &h[0]), sandwich(&w.a, &h[1])];
    let mut worst = 0.0f64;
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                let v = t[0][i][j] * w.b[k][0] + t[1][i][j] * w.b[k][1];
                worst = worst.max((v - can[k][i][j]).norm());
            }
        }
    }
    worst
}

fn inv2(m: &HMat<Complex64>) -> Option<HMat<Complex64>> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.norm() < 1e-14 {
        return None;
    }
    Some([[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]])
}

/// `P = ε v v*` for a rank-one Hermitian `P`.
fn rank_one_hermitian(p: &HMat<Complex64>) -> Option<(f64, [Complex64; 2])> {
    let j = if p[0][0].norm() >= p[1][1].norm() { 0 } else { 1 };
    let d = p[j][j].re;
    if d.abs() < 1e-14 {
        return None;
    }
    let s = d.abs().sqrt();
    Some((d.signum(), [p[0][j] / s, p[1][j] / s]))
}

fn pencil(h: &[HMat<Complex64>; 2], x: Complex64, y: Complex64) -> HMat<Complex64> {
    std::array::from_fn(|i| std::array::from_fn(|j| h[0][i][j] * x + h[1][i][j] * y))
}

fn construct_witness(h: &[HMat<Complex64>; 2], class: Class) -> Option<Witness> {
    let det = |m: &HMat<Complex64>| (m[0][0] * m[1][1] - m[0][1] * m[1][0]).re;
    let a = det(&h[0]);
    let c = det(&h[1]);
    let b = det(&pencil(h, 1.0.into(), 1.0.into())) - a - c;
    let one = Complex64::new(1.0, 0.0);
    match class {
        Class::Hyperbolic => {
            // real isotropic directions of q
            let disc = (b * b - 4.0 * a * c).sqrt();
            let dirs: [(f64, f64); 2] = if c.abs() >= a.abs() {
                if c.abs() < 1e-300 {
                    [(1.0, 0.0), (0.0, 1.0)]
                } else {
                    [(1.0, (-b + disc) / (2.0 * c)), (1.0, (-b - disc) / (2.0 * c))]
                }
            } else {
                [((-b + disc) / (2.0 * a), 1.0), ((-b - disc) / (2.0 * a), 1.0)]
            };
            let mut rows = [[Complex64::default(); 2]; 2];
            let mut eps = [0.0; 2];
            for (k, (x, y)) in dirs.iter().enumerate() {
                let (e, v) = rank_one_hermitian(&pencil(h, (*x).into(), (*y).into()))?;
                eps[k] = e;
                rows[k] = v;
            }
            let target = [[one, one], [one, -one]];
            let amat = mat_mul(&inv2(&rows)?, &target);
            let m = [[dirs[0].0, dirs[0].1], [dirs[1].0, dirs[1].1]];
            let em = [[eps[0] * m[0][0], eps[0] * m[0][1]], [eps[1] * m[1][0], eps[1] * m[1][1]]];
            let bmat = mat_mul(&[[0.5, 0.5], [0.5, -0.5]], &em);
            Some(Witness { a: amat, b: bmat })
        }
        Class::Elliptic => {
            let root = Complex64::new(-b, (4.0 * a * c - b * b).sqrt()) / (2.0 * c);
            let p = pencil(h, one, root);
            let (mut i0, mut j0) = (0, 0);
            for i in 0..2 {
                for j in 0..2 {
                    if p[i][j].norm() > p[i0][j0].norm() {
                        i0 = i;
                        j0 = j;
                    }
                }
            }
            let av = [p[0][j0], p[1][j0]];
            let bv = [(p[i0][0] / p[i0][j0]).conj(), (p[i0][1] / p[i0][j0]).conj()];
            let ii = Complex64::i();
            let amat = mat_mul(&inv2(&[av, bv])?, &[[one, ii], [one, -ii]]);
            Some(Witness { a: amat, b: [[1.0, root.re], [0.0, root.im]] })
        }
        Class::Parabolic => {
            let (x0, y0) = if c.abs() >= a.abs() { (1.0, -b / (2.0 * c)) } else { (-b / (2.0 * a), 1.0) };
            let (eps, v) = rank_one_hermitian(&pencil(h, x0.into(), y0.into()))?;
            let q = pencil(h, (-y0).into(), x0.into());
            let w = if v[1].norm() >= v[0].norm() { [one, Complex64::default()] } else { [Complex64::default(), one] };
            let a1 = inv2(&[v, w])?;
            let qp = sandwich(&a1, &q);
            let q12 = qp[0][1];
            if q12.norm() < 1e-12 {
                return None;
            }
            let q11 = qp[0][0].re;
            let amat = mat_mul(&a1, &[[one, Complex64::default()], [Complex64::default(), one / q12.conj()]]);
            let bmat = [[eps * x0, eps * y0], [-y0 - q11 * eps * x0, x0 - q11 * eps * y0]];
            Some(Witness { a: amat, b: bmat })
        }
        Class::Degenerate => None,
    }
}

/// Label from floating-point data; a discriminant within `tol` of zero is
/// reported as [`HermitianError::ToleranceBand`] rather than guessed.
pub fn classify_numeric(h: &[HMat<Complex64>; 2], tol: f64) -> Result<Class, HermitianError> {
    let det = |m: &HMat<Complex64>| (m[0][0] * m[1][1] - m[0][1] * m[1][0]).re;
    let a = det(&h[0]);
    let c = det(&h[1]);
    let b = det(&pencil(h, 1.0.into(), 1.0.into())) - a - c;
    let disc = b * b - 4.0 * a * c;
    if disc.abs() <= tol {
        return Err(HermitianError::ToleranceBand(disc));
    }
    Ok(if disc > 0.0 { Class::Hyperbolic } else { Class::Elliptic })
}

/// The Levi form at the origin: the `z_i z̄_j` coefficients of both components.
pub fn levi_form_at_origin(s: &SurfaceSeries) -> Result<HermitianForm2, HermitianError> {
    let low = s.v.iter().any(|p| p.terms().any(|(m, _)| m.weight() < 2 || (m.weight() == 2 && m.get(4) + m.get(5) > 0)));
    if low {
        return Err(HermitianError::MalformedSeries);
    }
    let read = |k: usize| -> HMat<Gaussian> {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut e = [0u8; 6];
                e[i] += 1;
                e[2 + j] += 1;
                s.v[k].coeff(Mono::new(e))
            })
        })
    };
    HermitianForm2::new(read(0), read(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Delta;

    #[test]
    fn canonical_forms_classify_with_identity_witness_quality() {
        for c in [Class::Hyperbolic, Class::Elliptic, Class::Parabolic] {
            let h = HermitianForm2::canonical(c).unwrap();
            let r = classify(&h);
            assert_eq!(r.class, c);
            assert!(r.residual.unwrap() < 1e-12);
        }
    }

    #[test]
    fn discriminant_of_canonical_pencils() {
        // q = x² - y², -x² - y², -y²
        let q = |c| HermitianForm2::canonical(c).unwrap().pencil_quadratic();
        assert_eq!(q(Class::Hyperbolic), [g(1), g(0), g(-1)]);
        assert_eq!(q(Class::Elliptic), [g(-1), g(0), g(-1)]);
        assert_eq!(q(Class::Parabolic), [g(0), g(0), g(-1)]);
    }

    #[test]
    fn degenerate_examples() {
        let id = [[g(1), g(0)], [g(0), g(1)]];
        assert!(!HermitianForm2::new(id.clone(), id).unwrap().is_nondegenerate());
        let h = HermitianForm2::new([[g(1), g(0)], [g(0), g(0)]], [[g(2), g(0)], [g(0), g(0)]]).unwrap();
        assert_eq!(h.label(), Class::Degenerate);
        // independent but with a common kernel
        let h = HermitianForm2::new([[g(1), g(0)], [g(0), g(0)]], [[Gaussian::zero(), Gaussian::i()], [-Gaussian::i(), g(0)]]);
        assert!(h.unwrap().is_nondegenerate());
    }

    #[test]
    fn numeric_refuses_parabolic() {
        let h = HermitianForm2::canonical(Class::Parabolic).unwrap().to_c64();
        assert!(matches!(classify_numeric(&h, 1e-9), Err(HermitianError::ToleranceBand(_))));
        let h = HermitianForm2::canonical(Class::Elliptic).unwrap().to_c64();
        assert_eq!(classify_numeric(&h, 1e-9), Ok(Class::Elliptic));
    }

    #[test]
    fn levi_form_of_quadrics() {
        for (d, c) in [(Delta::Plus, Class::Hyperbolic), (Delta::Minus, Class::Elliptic)] {
            let mut s = SurfaceSeries::quadric(d, 8);
            assert_eq!(levi_form_at_origin(&s).unwrap(), HermitianForm2::canonical(c).unwrap());
            s.add_real_term(0, Mono::new([4, 0, 2, 0, 0, 0]), g(1));
            assert_eq!(levi_form_at_origin(&s).unwrap(), HermitianForm2::canonical(c).unwrap());
        }
    }
}
