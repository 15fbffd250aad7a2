//! The flat parallelism of the quadric's 16-dimensional frame bundle.
//!
//! A point of the bundle carries a base point `(Z, U)` of the quadric
//! (`V = ZZ̄`) and fiber coordinates `D` (real, positive), `T`, `C` (with
//! `CC̄ = E`) and `S` (real). `C = exp(i(sE + tJ))`, so the sixteen real
//! coordinates are
//!
//! ```text
//! Z: 0..4   U: 4..6   D: 6..8   T: 8..12   (s, t): 12..14   S: 14..16
//! ```
//!
//! The form ω is assembled from the one-forms
//!
//! ```text
//! θ̂  = ½D(dU - iZ̄dZ + iZdZ̄)
//! ω̂  = Tθ̂ + C√D dZ
//! φ  = Sθ̂ + iCT̄√D dZ - iC̄T√D dZ̄ - D⁻¹dD
//! φ' = ½(S - 3iTT̄)θ̂ + 2iT̄ω̂ + iTω̄̂ - C̄dC - ½D⁻¹dD
//! μ  = iT²T̄θ̂ + ½(S - iTT̄)ω̂ - iT²ω̄̂ - dT + C̄T dC - ½TD⁻¹dD
//! ψ  = ½(S² - 3T²T̄²)θ̂ + (iST̄ + TT̄²)ω̂ + (-iST + T²T̄)ω̄̂ - dS
//!      - iT̄dT + iTdT̄ + 2iC̄TT̄ dC - SD⁻¹dD
//! ```
//!
//! into the su^δ(2,1)-valued matrix
//!
//! ```text
//! [ -(φ' + φ)/3   ω̂              2θ̂          ]
//! [ -iμ̄           (2φ' - φ)/3    2iω̄̂        ]
//! [ -ψ/4          μ/2            (φ̄' + φ)/3  ]
//! ```

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::algebra::{AElem, Delta, NumElem};
use crate::group;
use crate::lie::{self, Blocks};
use crate::matrix::Mat3;

pub const DIM: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    #[error("D is not in the positive cone")]
    NotPositive,
    #[error("frame is degenerate (|det| = {0:e})")]
    DegenerateFrame(f64),
}

/// A point of the frame bundle in the sixteen real coordinates above.
#[derive(Clone, Debug, PartialEq)]
pub struct P2Point {
    pub delta: Delta,
    pub x: [f64; DIM],
}

fn elem(d: Delta, a: Complex64, b: Complex64) -> NumElem {
    AElem::new(d, a, b)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl P2Point {
    pub fn new(delta: Delta, x: [f64; DIM]) -> Result<Self, FrameError> {
        let p = P2Point { delta, x };
        if !p.d().is_in_cone() {
            return Err(FrameError::NotPositive);
        }
        Ok(p)
    }

    /// The identity frame over the origin: `Z = U = T = S = 0`, `D = C = E`.
    pub fn origin(delta: Delta) -> Self {
        let mut x = [0.0; DIM];
        x[6] = 1.0;
        P2Point { delta, x }
    }

    pub fn z(&self) -> NumElem {
        elem(self.delta, c(self.x[0], self.x[1]), c(self.x[2], self.x[3]))
    }
    pub fn u(&self) -> NumElem {
        elem(self.delta, c(self.x[4], 0.0), c(self.x[5], 0.0))
    }
    pub fn d(&self) -> NumElem {
        elem(self.delta, c(self.x[6], 0.0), c(self.x[7], 0.0))
    }
    pub fn t(&self) -> NumElem {
        elem(self.delta, c(self.x[8], self.x[9]), c(self.x[10], self.x[11]))
    }
    pub fn c(&self) -> NumElem {
        NumElem::unit(self.delta, self.x[12], self.x[13])
    }
    pub fn s(&self) -> NumElem {
        elem(self.delta, c(self.x[14], 0.0), c(self.x[15], 0.0))
    }
    /// `W = U + iZZ̄`.
    pub fn w(&self) -> NumElem {
        let z = self.z();
        self.u() + AElem::scalar(self.delta, Complex64::i()) * z.clone() * z.conj()
    }

    fn with_x(&self, x: [f64; DIM]) -> Self {
        P2Point { delta: self.delta, x }
    }

    /// Random point in the box used by the tests: all coordinates in
    /// `[-0.5, 0.5]` except `D = (1 + [0, 0.3]) E + [-0.3, 0.3] J`.
    pub fn random<R: Rng>(delta: Delta, r: &mut R) -> Self {
        let mut x: [f64; DIM] = std::array::from_fn(|_| r.gen_range(-0.5..0.5));
        x[6] = 1.0 + r.gen_range(0.0..0.3);
        x[7] = r.gen_range(-0.3..0.3);
        P2Point { delta, x }
    }
}

/// Coefficients of the model that a negative control may alter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameCoefficients {
    /// Coefficient of `S²θ̂` in ψ.
    pub psi_s2: f64,
}

impl Default for FrameCoefficients {
    fn default() -> Self {
        FrameCoefficients { psi_s2: 0.5 }
    }
}

/// The sixteen matrix values `ω(∂/∂x_k)`.
pub fn omega_matrices(p: &P2Point, k: FrameCoefficients) -> Vec<Mat3<Complex64>> {
    let d = p.delta;
    let sc = |re: f64, im: f64| AElem::scalar(d, c(re, im));
    let i = sc(0.0, 1.0);
    let e1 = AElem::one(d);
    let j = AElem::j(d);
    let zero = AElem::zero(d);
    let (z, dd, t, cc, s) = (p.z(), p.d(), p.t(), p.c(), p.s());
    let (zb, tb, cb) = (z.conj(), t.conj(), cc.conj());
    let sd = dd.sqrt_positive().expect("D in the positive cone");
    let di = dd.inv().expect("D invertible");
    let half = sc(0.5, 0.0);

    let mut out = Vec::with_capacity(DIM);
    for kk in 0..DIM {
        let unit = |base: usize| -> NumElem {
            match kk - base {
                0 => e1.clone(),
                1 => i.clone(),
                2 => j.clone(),
                _ => i.clone() * j.clone(),
            }
        };
        let dz = if kk < 4 { unit(0) } else { zero.clone() };
        let du = match kk {
            4 => e1.clone(),
            5 => j.clone(),
            _ => zero.clone(),
        };
        let ddd = match kk {
            6 => e1.clone(),
            7 => j.clone(),
            _ => zero.clone(),
        };
        let dt = if (8..12).contains(&kk) { unit(8) } else { zero.clone() };
        let dc = match kk {
            12 => cc.clone() * i.clone(),
            13 => cc.clone() * i.clone() * j.clone(),
            _ => zero.clone(),
        };
        let ds = match kk {
            14 => e1.clone(),
            15 => j.clone(),
            _ => zero.clone(),
        };
        let (dzb, dtb) = (dz.conj(), dt.conj());
        let did = di.clone() * ddd;

        let th = half.clone() * dd.clone() * (du - i.clone() * zb.clone() * dz.clone() + i.clone() * z.clone() * dzb.clone());
        let th = th.re();
        let om = t.clone() * th.clone() + cc.clone() * sd.clone() * dz.clone();
        let omb = om.conj();
        let ph = s.clone() * th.clone() + i.clone() * cc.clone() * tb.clone() * sd.clone() * dz.clone()
            - i.clone() * cb.clone() * t.clone() * sd.clone() * dzb.clone()
            - did.clone();
        let ph = ph.re();
        let ttb = t.clone() * tb.clone();
        let pp = half.clone() * (s.clone() - sc(0.0, 3.0) * ttb.clone()) * th.clone()
            + sc(0.0, 2.0) * tb.clone() * om.clone()
            + i.clone() * t.clone() * omb.clone()
            - cb.clone() * dc.clone()
            - half.clone() * did.clone();
        let mu = i.clone() * t.clone() * ttb.clone() * th.clone() + half.clone() * (s.clone() - i.clone() * ttb.clone()) * om.clone()
            - i.clone() * t.clone() * t.clone() * omb.clone()
            - dt.clone()
            + cb.clone() * t.clone() * dc.clone()
            - half.clone() * t.clone() * did.clone();
        let psi = (sc(k.psi_s2, 0.0) * s.clone() * s.clone() - sc(1.5, 0.0) * ttb.clone() * ttb.clone()) * th.clone()
            + (i.clone() * s.clone() * tb.clone() + ttb.clone() * tb.clone()) * om.clone()
            + (t.clone() * ttb.clone() - i.clone() * s.clone() * t.clone()) * omb.clone()
            - ds
            - i.clone() * tb.clone() * dt.clone()
            + i.clone() * t.clone() * dtb
            + sc(0.0, 2.0) * cb.clone() * ttb.clone() * dc
            - s.clone() * did;
        let psi = psi.re();

        let third = sc(1.0 / 3.0, 0.0);
        let blocks = Blocks {
            x: -(third.clone() * (pp + ph)),
            y: om,
            zc: sc(2.0, 0.0) * th,
            w: -(i.clone() * mu.conj()),
            v: -(sc(0.25, 0.0) * psi),
        };
        out.push(lie::from_blocks(&blocks).expect("real blocks are real by construction"));
    }
    out
}

/// Real coordinates in the fixed basis of [`lie::basis`].
fn lie_coords(m: &Mat3<Complex64>) -> [f64; DIM] {
    let b = lie::blocks(m);
    let mut out = [0.0; DIM];
    let mut n = 0;
    for blk in lie::Block::ALL {
        let x = b.get(blk);
        let mut vals = vec![x.a.re, x.b.re];
        if !blk.is_real() {
            vals.extend([x.a.im, x.b.im]);
        }
        for v in vals {
            out[n] = v;
            n += 1;
        }
    }
    out
}

/// The 16×16 matrix of ω: column `k` holds the Lie-algebra coordinates of
/// `ω(∂/∂x_k)`.
pub fn omega_at(p: &P2Point) -> Result<DMatrix<f64>, FrameError> {
    let cols = omega_matrices(p, FrameCoefficients::default());
    let m = DMatrix::from_fn(DIM, DIM, |r, k| lie_coords(&cols[k])[r]);
    let det = m.clone().determinant();
    if det.abs() < 1e-12 || !det.is_finite() {
        return Err(FrameError::DegenerateFrame(det));
    }
    Ok(m)
}

fn max_abs(m: &Mat3<Complex64>) -> f64 {
    m.norm_max()
}

/// `max_{i<j} |∂_i ω_j - ∂_j ω_i - [ω_i, ω_j]|` with central differences of step `h`.
pub fn maurer_cartan_residual_with(p: &P2Point, h: f64, k: FrameCoefficients) -> f64 {
    let w = omega_matrices(p, k);
    let dw: Vec<Vec<Mat3<Complex64>>> = (0..DIM)
        .map(|i| {
            let mut xp = p.x;
            let mut xm = p.x;
            xp[i] += h;
            xm[i] -= h;
            let (a, b) = (omega_matrices(&p.with_x(xp), k), omega_matrices(&p.with_x(xm), k));
            let inv2h = AElem::scalar(p.delta, c(0.5 / h, 0.0));
            a.into_iter().zip(b).map(|(a, b)| (a - b).scale(&inv2h)).collect()
        })
        .collect();
    let mut worst = 0.0f64;
    for i in 0..DIM {
        for j in i + 1..DIM {
            let r = dw[i][j].clone() - dw[j][i].clone() - w[i].commutator(&w[j]);
            worst = worst.max(max_abs(&r));
        }
    }
    worst
}

pub fn maurer_cartan_residual(p: &P2Point, h: f64) -> f64 {
    maurer_cartan_residual_with(p, h, FrameCoefficients::default())
}

/// Transformations of the bundle used for the invariance check.
#[derive(Clone, Debug, PartialEq)]
pub enum BundleMap {
    /// The translation by `(Z₀, W₀ = U₀ + iZ₀Z̄₀)`, acting on the base point.
    Translation { z0: NumElem, u0: NumElem },
    /// The isotropy element with unimodular `C = exp(i(sE + tJ))` and `A`, `R`,
    /// acting on the fiber:
    /// `T ↦ C⁻¹T - 2A`, `C ↦ C⁻¹C`, `S ↦ S - 2iC⁻¹ĀT + 2iC̄⁻¹AT̄ - 4R`.
    Isotropy { s: f64, t: f64, a: NumElem, r: NumElem },
}

impl BundleMap {
    pub fn apply(&self, p: &P2Point) -> P2Point {
        let d = p.delta;
        let i = AElem::scalar(d, Complex64::i());
        let mut x = p.x;
        match self {
            BundleMap::Translation { z0, u0 } => {
                let z = p.z();
                let w0 = u0.clone() + i.clone() * z0.clone() * z0.conj();
                let w = p.w() + w0 + AElem::scalar(d, c(0.0, 2.0)) * z.clone() * z0.conj();
                let zn = z + z0.clone();
                x[0..4].copy_from_slice(&[zn.a.re, zn.a.im, zn.b.re, zn.b.im]);
                x[4] = w.a.re;
                x[5] = w.b.re;
            }
            BundleMap::Isotropy { s, t, a, r } => {
                let cg = NumElem::unit(d, *s, *t);
                let ci = cg.inv().expect("unit");
                let cbi = cg.conj().inv().expect("unit");
                let tt = p.t();
                let two = AElem::scalar(d, c(2.0, 0.0));
                let tn = ci.clone() * tt.clone() - two * a.clone();
                let sn = p.s() - AElem::scalar(d, c(0.0, 2.0)) * ci * a.conj() * tt.clone()
                    + AElem::scalar(d, c(0.0, 2.0)) * cbi * a.clone() * tt.conj()
                    - AElem::scalar(d, c(4.0, 0.0)) * r.clone();
                x[8..12].copy_from_slice(&[tn.a.re, tn.a.im, tn.b.re, tn.b.im]);
                x[12] -= s;
                x[13] -= t;
                x[14] = sn.a.re;
                x[15] = sn.b.re;
            }
        }
        p.with_x(x)
    }

    /// The matrix by which ω is conjugated: identity for translations,
    /// `[[E, 0, 0], [-2iĀ, C, 0], [-(R + iAĀ), CA, CC̄]]` for the isotropy.
    pub fn adjoint_matrix(&self, d: Delta) -> Mat3<Complex64> {
        match self {
            BundleMap::Translation { .. } => Mat3::identity(d),
            BundleMap::Isotropy { s, t, a, r } => group::isotropy_projective(&NumElem::unit(d, *s, *t), a, r),
        }
    }
}

/// `max_k |(F*ω)_k - g ω_k g⁻¹|`, the pullback computed with central
/// differences of step `1e-5`.
pub fn mc_left_invariance_check(p: &P2Point, map: &BundleMap) -> f64 {
    let h = 1e-5;
    let fp = map.apply(p);
    let wf = omega_matrices(&fp, FrameCoefficients::default());
    let w = omega_matrices(p, FrameCoefficients::default());
    let g = map.adjoint_matrix(p.delta);
    let gi = g.inverse().expect("group element");
    let mut worst = 0.0f64;
    for k in 0..DIM {
        let mut xp = p.x;
        let mut xm = p.x;
        xp[k] += h;
        xm[k] -= h;
        let (a, b) = (map.apply(&p.with_x(xp)).x, map.apply(&p.with_x(xm)).x);
        let mut pulled = Mat3::zero(p.delta);
        for l in 0..DIM {
            let jac = (a[l] - b[l]) / (2.0 * h);
            if jac != 0.0 {
                pulled = pulled + wf[l].scale(&AElem::scalar(p.delta, c(jac, 0.0)));
            }
        }
        let expected = g.clone() * w[k].clone() * gi.clone();
        worst = worst.max(max_abs(&(pulled - expected)));
    }
    worst
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct FlatnessReport {
    pub delta: i64,
    pub points: usize,
    pub step: f64,
    pub max_residual: f64,
    pub max_residual_half_step: f64,
    /// Smallest ratio residual(h) / residual(h/2) over the sample.
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// Largest residual with the perturbed `S²θ̂` coefficient: the detection
    /// statistic, comparable with `max_residual`.
    pub negative_control_max: f64,
    /// Smallest perturbed residual; small wherever `S ≈ 0`, since the
    /// perturbation is proportional to `S²`.
    pub negative_control_min: f64,
}

/// Flatness scan over `points` random bundle points.
pub fn flatness_report<R: Rng>(delta: Delta, points: usize, step: f64, r: &mut R) -> FlatnessReport {
    let wrong = FrameCoefficients { psi_s2: 1.5 };
    let mut rep = FlatnessReport {
        delta: delta.sign(),
        points,
        step,
        max_residual: 0.0,
        max_residual_half_step: 0.0,
        min_ratio: f64::INFINITY,
        max_ratio: 0.0,
        negative_control_max: 0.0,
        negative_control_min: f64::INFINITY,
    };
    for _ in 0..points {
        let p = P2Point::random(delta, r);
        let a = maurer_cartan_residual(&p, step);
        let b = maurer_cartan_residual(&p, step / 2.0);
        rep.max_residual = rep.max_residual.max(a);
        rep.max_residual_half_step = rep.max_residual_half_step.max(b);
        rep.min_ratio = rep.min_ratio.min(a / b);
        rep.max_ratio = rep.max_ratio.max(a / b);
        let n = maurer_cartan_residual_with(&p, step, wrong);
        rep.negative_control_max = rep.negative_control_max.max(n);
        rep.negative_control_min = rep.negative_control_min.min(n);
    }
    rep
}
