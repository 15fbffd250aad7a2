//! The group SU^δ(2,1) and its action on the quadric `Im W = Z Z̄`.
//!
//! Conventions (fixed here and relied upon everywhere else):
//!
//! * a point `(Z, W) ∈ 𝔄² ` is the row vector `(E, Z, W)`;
//! * a group element acts by right multiplication `x ↦ x·U`;
//! * the image is read off by dividing by the **first** coordinate, and is
//!   [`Action::AtInfinity`] when that coordinate is a zero divisor.
//!
//! With these conventions [`translation`] reproduces `z ↦ z + z₀`,
//! `w ↦ w + w₀ + 2i z z̄₀`, and [`isotropy`] gives the fractional-linear
//! automorphisms fixing the origin.

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{lambda_set, AElem, AlgebraError, Delta, NumElem};
use crate::lie::hermitian_form;
use crate::matrix::{Mat3, Mat4};
use crate::scalar::{Cyclotomic, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("point (Z, W) is not on the quadric Im W = Z Z̄")]
    NotOnQuadric,
    #[error("R must lie in Re 𝔄")]
    NotReal,
    #[error("σ does not satisfy σσ̄CC̄ = E and σ³C²C̄ = E")]
    SigmaEquations,
    #[error("C must satisfy C C̄ = E")]
    NotUnitary,
    #[error("matrix is not of the isotropy form")]
    NotIsotropy,
    #[error("no exact solution could be reconstructed; use numeric mode")]
    NotExact,
}

/// Result of acting on a point.
#[derive(Clone, Debug, PartialEq)]
pub enum Action<S> {
    Point { z: AElem<S>, w: AElem<S> },
    /// The first homogeneous coordinate is not invertible.
    AtInfinity,
}

/// `U J U* = J` and `det U = E`.
pub fn is_member<S: Scalar>(u: &Mat3<S>) -> bool {
    let j = hermitian_form::<S>(u.delta);
    u.clone() * j.clone() * u.adjoint() == j && u.det().is_one()
}

/// Numeric membership test.
pub fn is_member_approx(u: &Mat3<Complex64>, tol: f64) -> bool {
    let j = hermitian_form::<Complex64>(u.delta);
    let lhs = u.clone() * j.clone() * u.adjoint() - j;
    lhs.norm_max() <= tol && (u.det() - NumElem::one(u.delta)).norm_max() <= tol
}

/// The product that acts as "first `a`, then `b`" on row vectors.
pub fn compose<S: Scalar>(a: &Mat3<S>, b: &Mat3<S>) -> Mat3<S> {
    a.clone() * b.clone()
}

/// Group inverse, `J U* J⁻¹`.
pub fn inverse<S: Scalar>(u: &Mat3<S>) -> Mat3<S> {
    let j = hermitian_form::<S>(u.delta);
    let ji = j.inverse().expect("the form is invertible");
    j * u.adjoint() * ji
}

/// `Ad(g) M = g M g⁻¹`.
pub fn adjoint_action<S: Scalar>(g: &Mat3<S>, m: &Mat3<S>) -> Mat3<S> {
    g.clone() * m.clone() * inverse(g)
}

pub fn on_quadric<S: Scalar>(z: &AElem<S>, w: &AElem<S>) -> bool {
    w.im() == z.clone() * z.conj()
}

/// The translation moving the origin to `(z0, w0)`, a point of the quadric.
pub fn translation<S: Scalar>(z0: &AElem<S>, w0: &AElem<S>) -> Result<Mat3<S>, GroupError> {
    z0.check_same(w0)?;
    if !on_quadric(z0, w0) {
        return Err(GroupError::NotOnQuadric);
    }
    Ok(translation_pq(z0, &w0.re()))
}

/// `[[E, P, Q + iPP̄], [0, E, 2iP̄], [0, 0, E]]` for `P ∈ 𝔄`, `Q ∈ Re 𝔄`.
pub fn translation_pq<S: Scalar>(p: &AElem<S>, q: &AElem<S>) -> Mat3<S> {
    let d = p.delta;
    let i = AElem::scalar(d, S::i());
    let mut m = Mat3::identity(d);
    m.set(0, 1, p.clone());
    m.set(0, 2, q.clone() + i.clone() * p.clone() * p.conj());
    m.set(1, 2, i.scale(&S::from_i64(2)) * p.conj());
    m
}

/// Parameters of an element fixing the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotropyParams<S> {
    pub sigma: AElem<S>,
    pub c: AElem<S>,
    pub a: AElem<S>,
    pub r: AElem<S>,
}

/// `σσ̄CC̄ = E` and `σ³C²C̄ = E`.
pub fn sigma_equations_hold<S: Scalar>(sigma: &AElem<S>, c: &AElem<S>) -> bool {
    (sigma.clone() * sigma.conj() * c.clone() * c.conj()).is_one()
        && (sigma.pow(3) * c.pow(2) * c.conj()).is_one()
}

/// The matrix `σ·[[E, 0, 0], [-2iĀ, C, 0], [-(R + iAĀ), CA, CC̄]]`.
pub fn isotropy<S: Scalar>(p: &IsotropyParams<S>) -> Result<Mat3<S>, GroupError> {
    if !p.r.is_real() {
        return Err(GroupError::NotReal);
    }
    if !sigma_equations_hold(&p.sigma, &p.c) {
        return Err(GroupError::SigmaEquations);
    }
    Ok(isotropy_projective(&p.c, &p.a, &p.r).scale(&p.sigma))
}

/// The isotropy matrix without the normalizing factor σ; it has the same
/// action on points but is not unimodular.
pub fn isotropy_projective<S: Scalar>(c: &AElem<S>, a: &AElem<S>, r: &AElem<S>) -> Mat3<S> {
    let d = c.delta;
    let i = AElem::scalar(d, S::i());
    let mut m = Mat3::zero(d);
    m.set(0, 0, AElem::one(d));
    m.set(1, 0, -(i.scale(&S::from_i64(2)) * a.conj()));
    m.set(1, 1, c.clone());
    m.set(2, 0, -(r.clone() + i * a.clone() * a.conj()));
    m.set(2, 1, c.clone() * a.clone());
    m.set(2, 2, c.clone() * c.conj());
    m
}

/// Recover `(σ, C, A, R)` from a matrix of isotropy form.
pub fn isotropy_params<S: Scalar>(u: &Mat3<S>) -> Result<IsotropyParams<S>, GroupError> {
    let sigma = u.get(0, 0).clone();
    let si = sigma.inv()?;
    if !(u.get(0, 1).is_zero() && u.get(0, 2).is_zero() && u.get(1, 2).is_zero()) {
        return Err(GroupError::NotIsotropy);
    }
    let c = u.get(1, 1).clone() * si.clone();
    let ci = c.inv()?;
    let a = u.get(2, 1).clone() * si.clone() * ci;
    let i = AElem::scalar(sigma.delta, S::i());
    let r = -(u.get(2, 0).clone() * si.clone()) - i * a.clone() * a.conj();
    let p = IsotropyParams { sigma, c, a, r };
    if isotropy(&p)? != *u {
        return Err(GroupError::NotIsotropy);
    }
    Ok(p)
}

/// Act on the point `(z, w)`.
pub fn act<S: Scalar>(u: &Mat3<S>, z: &AElem<S>, w: &AElem<S>) -> Action<S> {
    let x = u.apply_row(&[AElem::one(u.delta), z.clone(), w.clone()]);
    match x[0].inv() {
        Ok(n) => Action::Point { z: x[1].clone() * n.clone(), w: x[2].clone() * n },
        Err(_) => Action::AtInfinity,
    }
}

/// The faithful 4×4 representation χ of the isotropy group:
///
/// ```text
/// [ N        0        0       0 ]
/// [ -2AN     C⁻¹      0       0 ]
/// [ -2ĀN     0        C̄⁻¹     0 ]
/// [ -4RN     -2iĀC⁻¹  2iAC̄⁻¹  E ]      N = C⁻¹C̄⁻¹
/// ```
///
/// It is a homomorphism for the matrix product: `χ(U₁U₂) = χ(U₁)χ(U₂)`.
pub fn chi<S: Scalar>(c: &AElem<S>, a: &AElem<S>, r: &AElem<S>) -> Result<Mat4<S>, GroupError> {
    let d = c.delta;
    let ci = c.inv()?;
    let cbi = c.conj().inv()?;
    let n = ci.clone() * cbi.clone();
    let two = S::from_i64(2);
    let two_i = AElem::scalar(d, S::i() * two.clone());
    let mut m = Mat4::zero(d);
    m.set(0, 0, n.clone());
    m.set(1, 0, -(a.scale(&two) * n.clone()));
    m.set(1, 1, ci.clone());
    m.set(2, 0, -(a.conj().scale(&two) * n.clone()));
    m.set(2, 2, cbi.clone());
    m.set(3, 0, -(r.scale(&S::from_i64(4)) * n));
    m.set(3, 1, -(two_i.clone() * a.conj() * ci));
    m.set(3, 2, two_i * a.clone() * cbi);
    m.set(3, 3, AElem::one(d));
    Ok(m)
}

/// All σ solving `σσ̄CC̄ = E`, `σ³C²C̄ = E`, computed numerically.
///
/// The two equations are equivalent to `σ̄σ⁻² = C`, which decouples in the split
/// basis.
pub fn solve_sigma_numeric(c: &NumElem) -> Result<Vec<NumElem>, GroupError> {
    let d = c.delta;
    if !c.is_invertible() {
        return Err(AlgebraError::NotInvertible.into());
    }
    let (alpha, beta) = c.split();
    let cube_roots = |z: Complex64| -> Vec<Complex64> {
        let r = z.norm().cbrt();
        let t = z.arg() / 3.0;
        (0..3).map(|k| Complex64::from_polar(r, t + 2.0 * std::f64::consts::PI * k as f64 / 3.0)).collect()
    };
    // Solutions of x̄ = a x² for a single split coordinate (δ = +1).
    let unit_solutions = |a: Complex64| -> Vec<Complex64> {
        // x = ρ e^{iθ} with ρ = 1/|a| and e^{-3iθ} = a/|a|.
        let rho = 1.0 / a.norm();
        cube_roots((a / a.norm()).conj()).into_iter().map(|u| u * rho).collect()
    };
    let mut out = Vec::new();
    match d {
        Delta::Plus => {
            for x in unit_solutions(alpha) {
                for y in unit_solutions(beta) {
                    out.push(AElem::from_split(d, x, y));
                }
            }
        }
        Delta::Minus => {
            // ȳ = αx², x̄ = βy²  ⇒  x̄³ = 1/(βᾱ²), y = ᾱ x̄².
            let target = (beta * alpha.conj() * alpha.conj()).inv();
            for xb in cube_roots(target) {
                let x = xb.conj();
                let y = alpha.conj() * xb * xb;
                out.push(AElem::from_split(d, x, y));
            }
        }
    }
    Ok(out)
}

/// Exact solutions of the σ equations over ℚ(i, √3).
///
/// One solution is found numerically and reconstructed exactly (using the Galois
/// conjugate to separate the `√3` part); the rest are its multiples by
/// [`lambda_set`]. Every returned σ is checked exactly.
pub fn solve_sigma(c: &AElem<Cyclotomic>) -> Result<Vec<AElem<Cyclotomic>>, GroupError> {
    let d = c.delta;
    c.inv()?;
    let galois = |x: &AElem<Cyclotomic>| AElem::new(d, x.a.galois(), x.b.galois());
    let numeric = solve_sigma_numeric(&c.to_c64())?;
    let conjugate = solve_sigma_numeric(&galois(c).to_c64())?;
    let seed = numeric
        .iter()
        .flat_map(|s| conjugate.iter().map(move |t| (s, t)))
        .find_map(|(s, t)| {
            let a = Cyclotomic::reconstruct(s.a, t.a, 1 << 20)?;
            let b = Cyclotomic::reconstruct(s.b, t.b, 1 << 20)?;
            let cand = AElem::new(d, a, b);
            sigma_equations_hold(&cand, c).then_some(cand)
        })
        .ok_or(GroupError::NotExact)?;
    let sols: Vec<_> = lambda_set(d).into_iter().map(|l| l * seed.clone()).collect();
    debug_assert!(sols.iter().all(|s| sigma_equations_hold(s, c)));
    Ok(sols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExactElem;
    use crate::scalar::Gaussian;

    fn e(d: Delta, a: (i64, i64), b: (i64, i64)) -> ExactElem {
        ExactElem::from_ints(d, a, b)
    }

    #[test]
    fn translation_reproduces_the_affine_formula() {
        for d in Delta::BOTH {
            let z0 = e(d, (1, 2), (0, -1));
            let w0 = e(d, (3, 0), (1, 0)) + AElem::scalar(d, Gaussian::i()) * z0.clone() * z0.conj();
            let t = translation(&z0, &w0).unwrap();
            assert!(is_member(&t));
            let z = e(d, (2, -1), (1, 1));
            let w = e(d, (0, 3), (-2, 1));
            let two_i = AElem::scalar(d, Gaussian::new(0, 2, 1));
            let expect_w = w.clone() + w0.clone() + two_i * z.clone() * z0.conj();
            assert_eq!(act(&t, &z, &w), Action::Point { z: z + z0.clone(), w: expect_w });
        }
    }

    #[test]
    fn isotropy_linear_part() {
        for d in Delta::BOTH {
            let c = e(d, (1, 1), (2, 0));
            let u = isotropy_projective(&c, &ExactElem::zero(d), &ExactElem::zero(d));
            let z = e(d, (1, 0), (0, 1));
            let w = e(d, (2, 1), (1, 1));
            let cc = c.clone() * c.conj();
            assert_eq!(act(&u, &z, &w), Action::Point { z: c * z, w: cc * w });
        }
    }

    #[test]
    fn plus_isotropy_can_send_points_to_infinity() {
        let d = Delta::Plus;
        let u = isotropy_projective(&ExactElem::one(d), &ExactElem::zero(d), &ExactElem::one(d));
        let half = Gaussian::from_frac(1, 2);
        let w = AElem::new(d, half.clone(), half);
        assert_eq!(act(&u, &ExactElem::zero(d), &w), Action::AtInfinity);
    }

    #[test]
    fn unimodular_isotropy_with_sigma() {
        for d in Delta::BOTH {
            let s = e(d, (2, 1), (1, -1));
            let c = s.conj() * s.pow(2).inv().unwrap();
            let p = IsotropyParams { sigma: s, c, a: e(d, (1, -1), (0, 2)), r: e(d, (3, 0), (-1, 0)) };
            let u = isotropy(&p).unwrap();
            assert!(is_member(&u));
            assert_eq!(isotropy_params(&u).unwrap(), p);
            assert!(is_member(&inverse(&u)));
            assert_eq!(compose(&u, &inverse(&u)), Mat3::identity(d));
        }
    }

    #[test]
    fn sigma_solution_counts() {
        for (d, n) in [(Delta::Plus, 9), (Delta::Minus, 3)] {
            let s = e(d, (1, 2), (-1, 1)).to_cyclotomic();
            let c = s.conj() * s.pow(2).inv().unwrap();
            let sols = solve_sigma(&c).unwrap();
            assert_eq!(sols.len(), n);
            for x in &sols {
                assert!(sigma_equations_hold(x, &c));
            }
            let num = solve_sigma_numeric(&c.to_c64()).unwrap();
            assert_eq!(num.len(), n);
        }
    }
}
