//! Truncated holomorphic maps `(z, w) ↦ (z*, w*)` of ℂ⁴.

use crate::algebra::{AElem, Delta};
use crate::linalg;
use crate::scalar::{Gaussian, Scalar};

use super::apoly::{APoly, P};
use super::poly::{Mono, SLOTS};
use super::SeriesError;

/// Slots holding the jet variables `z₁, z₂, w₁, w₂`.
pub const JET_SLOTS: [usize; 4] = [0, 1, 4, 5];

/// A polynomial map truncated at weight `bound` (weight 1 for `z`, 2 for `w`).
///
/// Components are `z₁*, z₂*, w₁*, w₂*`, polynomials in slots 0, 1, 4, 5.
#[derive(Clone, Debug, PartialEq)]
pub struct HoloJet {
    pub delta: Delta,
    pub bound: u32,
    pub comps: [P; 4],
}

impl HoloJet {
    pub fn new(delta: Delta, bound: u32, comps: [P; 4]) -> Result<Self, SeriesError> {
        for c in &comps {
            if c.terms().any(|(m, _)| !m.supported_in(&JET_SLOTS)) {
                return Err(SeriesError::NotHolomorphic);
            }
        }
        Ok(HoloJet { delta, bound, comps: comps.map(|c| c.truncate(bound)) })
    }

    pub fn identity(delta: Delta, bound: u32) -> Self {
        HoloJet { delta, bound, comps: JET_SLOTS.map(P::var) }
    }

    /// Build from algebra-valued components `Z* = z`, `W* = w`.
    pub fn from_algebra(z: &APoly, w: &APoly, bound: u32) -> Result<Self, SeriesError> {
        Self::new(z.delta, bound, [z.a.clone(), z.b.clone(), w.a.clone(), w.b.clone()])
    }

    /// The translation `Z ↦ Z + Z₀`, `W ↦ W + W₀ + 2i Z Z̄₀`.
    pub fn translation(z0: &AElem<Gaussian>, w0: &AElem<Gaussian>, bound: u32) -> Self {
        let d = z0.delta;
        let z = APoly::z(d);
        let two_i = AElem::scalar(d, Gaussian::new(0, 2, 1));
        let zs = z.add(&APoly::constant(z0));
        let ws = APoly::u(d).add(&APoly::constant(w0)).add(&z.mul_elem(&(two_i * z0.conj())));
        Self::from_algebra(&zs, &ws, bound).expect("holomorphic")
    }

    /// The fractional-linear isotropy map
    /// `Z* = C(Z + AW)/Δ`, `W* = CC̄W/Δ`, `Δ = E - 2iĀZ - (R + iAĀ)W`.
    pub fn isotropy(c: &AElem<Gaussian>, a: &AElem<Gaussian>, r: &AElem<Gaussian>, bound: u32) -> Self {
        let d = c.delta;
        let i = AElem::scalar(d, Gaussian::i());
        let z = APoly::z(d);
        let w = APoly::u(d);
        let x = z
            .mul_elem(&(i.scale(&Gaussian::from_i64(2)) * a.conj()))
            .add(&w.mul_elem(&(r.clone() + i * a.clone() * a.conj())));
        let inv = APoly::geometric_inverse(&x, bound);
        let zs = z.add(&w.mul_elem(a)).mul_elem(c).mul(&inv, bound);
        let ws = w.mul_elem(&(c.clone() * c.conj())).mul(&inv, bound);
        Self::from_algebra(&zs, &ws, bound).expect("holomorphic")
    }

    /// Linear maps `Z* = CZ`, `W* = CC̄W`.
    pub fn linear_automorphism(c: &AElem<Gaussian>, bound: u32) -> Self {
        let d = c.delta;
        Self::from_algebra(&APoly::z(d).mul_elem(c), &APoly::u(d).mul_elem(&(c.clone() * c.conj())), bound)
            .expect("holomorphic")
    }

    pub fn truncate(&self, bound: u32) -> HoloJet {
        HoloJet { delta: self.delta, bound: bound.min(self.bound), comps: self.comps.clone().map(|c| c.truncate(bound)) }
    }

    /// The substitution array putting the components in slots 0, 1, 4, 5.
    pub fn subs(&self) -> [P; SLOTS] {
        let c = &self.comps;
        [c[0].clone(), c[1].clone(), P::zero(), P::zero(), c[2].clone(), c[3].clone()]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &HoloJet) -> HoloJet {
        let bound = self.bound.min(inner.bound);
        let outs = P::compose_many(&self.comps.iter().collect::<Vec<_>>(), &inner.subs(), bound);
        HoloJet { delta: self.delta, bound, comps: outs.try_into().expect("four components") }
    }

    pub fn constant_part(&self) -> [Gaussian; 4] {
        std::array::from_fn(|k| self.comps[k].coeff(Mono::ONE))
    }

    pub fn has_constant(&self) -> bool {
        self.constant_part().iter().any(|c| !c.is_zero())
    }

    /// Ordinary linear part: `lin[k][j]` is the coefficient of variable `j` in component `k`.
    pub fn linear_part(&self) -> Vec<Vec<Gaussian>> {
        (0..4).map(|k| JET_SLOTS.iter().map(|&s| self.comps[k].coeff(Mono::var(s))).collect()).collect()
    }

    /// All components have degree at most one.
    pub fn is_affine(&self) -> bool {
        self.comps.iter().all(|c| c.terms().all(|(m, _)| m.degree() <= 1))
    }

    /// Origin-preserving and weight-filtration preserving: no constants and no
    /// `z`-linear terms in the `w` components.
    pub fn is_admissible(&self) -> bool {
        !self.has_constant() && (2..4).all(|k| (0..2).all(|s| self.comps[k].coeff(Mono::var(s)).is_zero()))
    }

    /// The real 2×2 matrix `ρ` with `w* = ρw + …`, if the `w`-block is real.
    pub fn w_block(&self) -> Option<[[Gaussian; 2]; 2]> {
        let lin = self.linear_part();
        let m = [[lin[2][2].clone(), lin[2][3].clone()], [lin[3][2].clone(), lin[3][3].clone()]];
        m.iter().flatten().all(|x| x.is_real()).then_some(m)
    }

    /// The inverse jet, for maps with invertible linear part fixing the origin;
    /// affine maps with constants are inverted exactly.
    pub fn invert(&self) -> Result<HoloJet, SeriesError> {
        let lin = self.linear_part();
        let li = linalg::inverse(&lin).ok_or(SeriesError::NonInvertibleLinearPart)?;
        let apply_li = |v: [P; 4]| -> [P; 4] {
            std::array::from_fn(|k| {
                (0..4).fold(P::zero(), |acc, j| acc + v[j].scale(&li[k][j]))
            })
        };
        let vars = JET_SLOTS.map(P::var);
        if self.is_affine() {
            let c = self.constant_part();
            let shifted: [P; 4] = std::array::from_fn(|k| vars[k].clone() - P::constant(c[k].clone()));
            return Ok(HoloJet { delta: self.delta, bound: self.bound, comps: apply_li(shifted) });
        }
        if self.has_constant() {
            return Err(SeriesError::Unsupported("inverting a non-affine map that moves the origin"));
        }
        // nonlinear part N = F - Λ;  G = Λ⁻¹(y - N∘G)
        let nonlin: [P; 4] = std::array::from_fn(|k| self.comps[k].filter(|m| m.degree() >= 2));
        let nl = HoloJet { delta: self.delta, bound: self.bound, comps: nonlin };
        let mut g = HoloJet { delta: self.delta, bound: self.bound, comps: apply_li(vars.clone()) };
        for _ in 0..=self.bound + 1 {
            let ng = nl.compose(&g);
            let next: [P; 4] = std::array::from_fn(|k| vars[k].clone() - ng.comps[k].clone());
            let next = HoloJet { delta: self.delta, bound: self.bound, comps: apply_li(next) };
            if next == g {
                break;
            }
            g = next;
        }
        Ok(g)
    }

    pub fn to_json(&self) -> serde_json::Value {
        crate::json::jet_to_json(self)
    }
}

/// Linear charts used by the normal forms.
///
/// For δ = +1 both `z` and `w` are written in the split basis
/// (`z₁* = z₁ + z₂`, `z₂* = z₁ - z₂`, likewise `w`), turning `V = ZZ̄` into the
/// product of two hyperquadrics `v_j = |z_j|²`. For δ = -1 only `z` changes,
/// `z₁* = z₁ + iz₂`, `z₂* = z₁ - iz₂`, and `v₁ + iv₂ = z₁* z̄₂*`.
pub fn model_chart(delta: Delta, bound: u32) -> HoloJet {
    let v = |i| P::var(i);
    let comps = match delta {
        Delta::Plus => [v(0) + v(1), v(0) - v(1), v(4) + v(5), v(4) - v(5)],
        Delta::Minus => {
            let iz2 = v(1).scale(&Gaussian::i());
            [v(0) + iz2.clone(), v(0) - iz2, v(4), v(5)]
        }
    };
    HoloJet { delta, bound, comps }
}

pub fn model_chart_inverse(delta: Delta, bound: u32) -> HoloJet {
    model_chart(delta, bound).invert().expect("invertible chart")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotropy_jet_inverts() {
        for d in Delta::BOTH {
            let c = AElem::from_ints(d, (1, 1), (0, 1));
            let a = AElem::from_ints(d, (0, 1), (1, 0));
            let r = AElem::from_ints(d, (2, 0), (-1, 0));
            let f = HoloJet::isotropy(&c, &a, &r, 6);
            let g = f.invert().unwrap();
            assert_eq!(f.compose(&g), HoloJet::identity(d, 6));
            assert_eq!(g.compose(&f), HoloJet::identity(d, 6));
        }
    }

    #[test]
    fn translation_inverse_is_exact() {
        let d = Delta::Plus;
        let z0 = AElem::from_ints(d, (1, 0), (0, 2));
        let w0 = AElem::from_ints(d, (0, 1), (3, 0));
        let t = HoloJet::translation(&z0, &w0, 5);
        assert_eq!(t.compose(&t.invert().unwrap()), HoloJet::identity(d, 5));
    }

    #[test]
    fn charts_are_mutually_inverse() {
        for d in Delta::BOTH {
            let t = model_chart(d, 4);
            assert_eq!(t.compose(&model_chart_inverse(d, 4)), HoloJet::identity(d, 4));
        }
    }
}
