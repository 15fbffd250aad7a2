//! Truncated weighted power series for surfaces `v = Φ(z, z̄, u)` in ℂ⁴, and
//! their transformation under holomorphic maps.
//!
//! Weights: `z`, `z̄` have weight 1 and `u` weight 2. A series of bound `n` is
//! exact through weight `n` and stores nothing above it.

pub mod apoly;
pub mod jet;
pub mod poly;

use thiserror::Error;

use crate::algebra::{AElem, Delta};
use crate::scalar::{Gaussian, Scalar};

pub use apoly::APoly;
pub use jet::{model_chart, model_chart_inverse, HoloJet};
pub use poly::{Mono, Poly, SLOTS, SLOT_WEIGHT};

type P = Poly<Gaussian>;

pub const DEFAULT_BOUND: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series bounds differ ({0} vs {1})")]
    BoundMismatch(u32, u32),
    #[error("series component is not real-valued")]
    NotReal,
    #[error("map components must be holomorphic in (z, w)")]
    NotHolomorphic,
    #[error("the linear part of the map is not invertible")]
    NonInvertibleLinearPart,
    #[error("the w-block of the linear part must be real and invertible")]
    NonRealWBlock,
    #[error("implicit solve did not converge by weight {0}")]
    ImplicitSolveFailure(u32),
    #[error("map has bound {0} below the series bound {1}")]
    JetTooShort(u32, u32),
    #[error("delta mismatch")]
    DeltaMismatch,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

/// The graph `v = Φ(z, z̄, u)`, `Φ = (Φ₁, Φ₂)` real.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceSeries {
    pub delta: Delta,
    pub bound: u32,
    pub v: [P; 2],
}

impl SurfaceSeries {
    /// Validates reality and drops terms above `bound`.
    pub fn new(delta: Delta, bound: u32, v: [P; 2]) -> Result<Self, SeriesError> {
        let v = v.map(|p| p.truncate(bound));
        if v.iter().any(|p| p.bar() != *p) {
            return Err(SeriesError::NotReal);
        }
        Ok(SurfaceSeries { delta, bound, v })
    }

    /// `V = Z Z̄`, i.e. `v₁ = |z₁|² + δ|z₂|²`, `v₂ = 2 Re z₁z̄₂`.
    pub fn quadric(delta: Delta, bound: u32) -> Self {
        let zz = APoly::z(delta).mul(&APoly::zbar(delta), bound);
        SurfaceSeries { delta, bound, v: [zz.a, zz.b] }
    }

    /// `V = Z Z̄ + Σ (A Z^k Z̄^l U^m + Ā Z^l Z̄^k U^m)`, a surface whose
    /// coefficients lie in 𝔄^δ.
    pub fn matrix_surface(delta: Delta, bound: u32, terms: &[((u32, u32, u32), AElem<Gaussian>)]) -> Self {
        let mut s = Self::quadric(delta, bound);
        let (z, zb, u) = (APoly::z(delta), APoly::zbar(delta), APoly::u(delta));
        for ((k, l, m), a) in terms {
            let mono = z.pow(*k, bound).mul(&zb.pow(*l, bound), bound).mul(&u.pow(*m, bound), bound);
            let t = mono.mul_elem(a);
            let t = t.add(&t.bar());
            s.v[0] = s.v[0].clone() + t.a;
            s.v[1] = s.v[1].clone() + t.b;
        }
        s
    }

    /// Add `c·m + c̄·m̄` to component `k` (so the result stays real).
    pub fn add_real_term(&mut self, k: usize, m: Mono, c: Gaussian) {
        if m.weight() > self.bound {
            return;
        }
        let mut t = P::term(m, c);
        t = t.clone() + t.bar();
        self.v[k] = self.v[k].clone() + t;
    }

    pub fn weight_part(&self, w: u32) -> [P; 2] {
        [self.v[0].weight_part(w), self.v[1].weight_part(w)]
    }

    pub fn truncate(&self, bound: u32) -> Self {
        SurfaceSeries { delta: self.delta, bound: bound.min(self.bound), v: self.v.clone().map(|p| p.truncate(bound)) }
    }

    /// The defining series of `map(M)`, where `M` is this surface.
    ///
    /// Two cases are supported:
    /// * affine maps whose inverse has `z`-part independent of `w` and a real
    ///   `w`-block (translations, the linear charts) — solved in closed form,
    ///   treating the stored series as an exact polynomial;
    /// * maps fixing the origin and preserving the weight filtration with a real
    ///   `w`-block — solved weight by weight.
    pub fn regraph(&self, map: &HoloJet) -> Result<SurfaceSeries, SeriesError> {
        if map.delta != self.delta {
            return Err(SeriesError::DeltaMismatch);
        }
        if map.bound < self.bound {
            return Err(SeriesError::JetTooShort(map.bound, self.bound));
        }
        let g = map.invert()?;
        let rho = g.w_block().ok_or(SeriesError::NonRealWBlock)?;
        let rho_inv = real_inverse(&rho).ok_or(SeriesError::NonRealWBlock)?;
        let z_free_of_w = (0..2).all(|k| g.comps[k].terms().all(|(m, _)| m.get(4) == 0 && m.get(5) == 0));
        if map.is_affine() && z_free_of_w {
            // one pass is exact: nothing on the right depends on Φ*
            let zero = [P::zero(), P::zero()];
            let out = regraph_step(&self.v, &g, &rho, &rho_inv, &zero, self.bound);
            return SurfaceSeries::new(self.delta, self.bound, out);
        }
        if !map.is_admissible() {
            return Err(SeriesError::Unsupported("map moves the origin or lowers weights"));
        }
        let mut phi = [P::zero(), P::zero()];
        for b in 0..=self.bound {
            phi = regraph_step(&self.v, &g, &rho, &rho_inv, &phi, b);
        }
        Ok(SurfaceSeries { delta: self.delta, bound: self.bound, v: phi })
    }

    pub fn to_json(&self) -> serde_json::Value {
        crate::json::series_to_json(self)
    }
}

pub(crate) fn real_inverse(m: &[[Gaussian; 2]; 2]) -> Option<[[Gaussian; 2]; 2]> {
    let det = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
    let di = det.inv()?;
    Some([
        [m[1][1].clone() * di.clone(), -(m[0][1].clone() * di.clone())],
        [-(m[1][0].clone() * di.clone()), m[0][0].clone() * di],
    ])
}

/// One pass of the implicit solve for the image surface:
///
/// `Φ*_new = ρ⁻¹ [ Φ(g_z, ḡ_z, Re g_w) - (Im g_w - ρΦ*) ]`, everything evaluated at
/// `(z, u + iΦ*)` with `g` the inverse map. If `phi_star` is exact below weight
/// `bound`, the result is exact through `bound`.
pub(crate) fn regraph_step(
    phi: &[P; 2],
    g: &HoloJet,
    rho: &[[Gaussian; 2]; 2],
    rho_inv: &[[Gaussian; 2]; 2],
    phi_star: &[P; 2],
    bound: u32,
) -> [P; 2] {
    let i = P::constant(Gaussian::i());
    let w = |k: usize| (P::var(4 + k) + phi_star[k].mul_trunc(&i, bound)).truncate(bound);
    let subs = [P::var(0), P::var(1), P::zero(), P::zero(), w(0), w(1)];
    let gc = P::compose_many(&g.comps.iter().collect::<Vec<_>>(), &subs, bound);
    let outer = [gc[0].clone(), gc[1].clone(), gc[0].bar(), gc[1].bar(), gc[2].real_part(), gc[3].real_part()];
    let vals = P::compose_many(&[&phi[0], &phi[1]], &outer, bound);
    let rhs: Vec<P> = (0..2)
        .map(|k| {
            let rho_phi = phi_star[0].scale(&rho[k][0]) + phi_star[1].scale(&rho[k][1]);
            vals[k].clone() - (gc[2 + k].imag_part() - rho_phi)
        })
        .collect();
    std::array::from_fn(|k| (rhs[0].scale(&rho_inv[k][0]) + rhs[1].scale(&rho_inv[k][1])).truncate(bound))
}

/// Hyperbolic product splitting: the surface in the split chart, where a matrix
/// surface becomes a pair of hypersurfaces `v_j = Φ_j(z_j, z̄_j, u_j)`.
pub fn split_transform(s: &SurfaceSeries) -> Result<SurfaceSeries, SeriesError> {
    if s.delta != Delta::Plus {
        return Err(SeriesError::DeltaMismatch);
    }
    s.regraph(&model_chart(s.delta, s.bound))
}

pub fn split_transform_inverse(s: &SurfaceSeries) -> Result<SurfaceSeries, SeriesError> {
    if s.delta != Delta::Plus {
        return Err(SeriesError::DeltaMismatch);
    }
    s.regraph(&model_chart_inverse(s.delta, s.bound))
}

/// The elliptic chart written as one complex function
/// `𝒱 = v₁ + iv₂ = 𝒩(z, z̄, 𝒰, 𝒰̄)` with `𝒰 = u₁ + iu₂`; slots 4, 5 of the
/// result hold `𝒰`, `𝒰̄`. The quadric becomes `𝒱 = z₁z̄₂`.
pub fn elliptic_transform(s: &SurfaceSeries) -> Result<P, SeriesError> {
    if s.delta != Delta::Minus {
        return Err(SeriesError::DeltaMismatch);
    }
    let m = s.regraph(&model_chart(s.delta, s.bound))?;
    Ok(complexify(&m))
}

pub fn elliptic_transform_inverse(v: &P, bound: u32) -> Result<SurfaceSeries, SeriesError> {
    let m = decomplexify(v, Delta::Minus, bound)?;
    m.regraph(&model_chart_inverse(Delta::Minus, bound))
}

/// `(v₁, v₂) ↦ v₁ + iv₂` with `u₁ = (𝒰 + 𝒰̄)/2`, `u₂ = (𝒰 - 𝒰̄)/2i`.
pub fn complexify(s: &SurfaceSeries) -> P {
    let half = Gaussian::from_frac(1, 2);
    let mhalf_i = Gaussian::new(0, -1, 2);
    let subs = [
        P::var(0),
        P::var(1),
        P::var(2),
        P::var(3),
        (P::var(4) + P::var(5)).scale(&half),
        (P::var(4) - P::var(5)).scale(&mhalf_i),
    ];
    let v = s.v[0].clone() + s.v[1].scale(&Gaussian::i());
    v.compose(&subs, s.bound)
}

/// Inverse of [`complexify`].
pub fn decomplexify(v: &P, delta: Delta, bound: u32) -> Result<SurfaceSeries, SeriesError> {
    let iu2 = P::var(5).scale(&Gaussian::i());
    let subs = [P::var(0), P::var(1), P::var(2), P::var(3), P::var(4) + iu2.clone(), P::var(4) - iu2];
    let vb = v.bar_all();
    let v1 = (v.clone() + vb.clone()).scale(&Gaussian::from_frac(1, 2));
    let v2 = (v.clone() - vb).scale(&Gaussian::new(0, -1, 2));
    let out = P::compose_many(&[&v1, &v2], &subs, bound);
    SurfaceSeries::new(delta, bound, [out[0].clone(), out[1].clone()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_surface(d: Delta) -> SurfaceSeries {
        let mut s = SurfaceSeries::quadric(d, 6);
        s.add_real_term(0, Mono::new([2, 1, 0, 0, 1, 0]), Gaussian::new(1, -1, 2));
        s.add_real_term(1, Mono::new([0, 1, 3, 0, 0, 0]), Gaussian::new(0, 3, 1));
        s.add_real_term(0, Mono::new([1, 0, 1, 0, 0, 1]), Gaussian::from_i64(2));
        s
    }

    #[test]
    fn quadric_in_model_charts() {
        let q = split_transform(&SurfaceSeries::quadric(Delta::Plus, 6)).unwrap();
        assert_eq!(q.v[0], P::var(0).mul_trunc(&P::var(2), 6));
        assert_eq!(q.v[1], P::var(1).mul_trunc(&P::var(3), 6));
        let e = elliptic_transform(&SurfaceSeries::quadric(Delta::Minus, 6)).unwrap();
        assert_eq!(e, P::term(Mono::new([1, 0, 0, 1, 0, 0]), Gaussian::one()));
    }

    #[test]
    fn transforms_round_trip() {
        let s = sample_surface(Delta::Plus);
        assert_eq!(split_transform_inverse(&split_transform(&s).unwrap()).unwrap(), s);
        let s = sample_surface(Delta::Minus);
        assert_eq!(elliptic_transform_inverse(&elliptic_transform(&s).unwrap(), 6).unwrap(), s);
    }

    #[test]
    fn linear_automorphism_and_translation_preserve_quadric() {
        for d in Delta::BOTH {
            let q = SurfaceSeries::quadric(d, 6);
            let c = AElem::from_ints(d, (2, 1), (1, -1));
            assert_eq!(q.regraph(&HoloJet::linear_automorphism(&c, 6)).unwrap(), q);
            let z0 = AElem::from_ints(d, (1, 0), (0, 1));
            let w0 = AElem::from_ints(d, (3, 0), (1, 0)) + AElem::scalar(d, Gaussian::i()) * z0.clone() * z0.conj();
            assert_eq!(q.regraph(&HoloJet::translation(&z0, &w0, 6)).unwrap(), q);
            let iso = HoloJet::isotropy(&c, &AElem::from_ints(d, (0, 1), (1, 0)), &AElem::from_ints(d, (1, 0), (2, 0)), 6);
            assert_eq!(q.regraph(&iso).unwrap(), q);
        }
    }

    #[test]
    fn regraph_is_functorial() {
        for d in Delta::BOTH {
            let s = sample_surface(d);
            let c = AElem::from_ints(d, (1, 1), (0, 1));
            let f = HoloJet::isotropy(&c, &AElem::from_ints(d, (1, 0), (0, -1)), &AElem::from_ints(d, (0, 0), (1, 0)), 6);
            let mut h = HoloJet::identity(d, 6);
            h.comps[0] = h.comps[0].clone() + P::term(Mono::new([1, 0, 0, 0, 1, 0]), Gaussian::new(1, 1, 1));
            h.comps[3] = h.comps[3].clone() + P::term(Mono::new([2, 1, 0, 0, 0, 0]), Gaussian::new(0, 2, 1));
            let two_step = s.regraph(&f).unwrap().regraph(&h).unwrap();
            assert_eq!(two_step, s.regraph(&h.compose(&f)).unwrap());
        }
    }
}
