//! Chains: the distinguished real 2-dimensional curves of the quadric and of
//! matrix surfaces.
//!
//! On the quadric every chain through the origin is `{Z = AW} ∩ Q`. Along the
//! chain `W = U + iV` with `V = AĀ(U² + V²)`, solved for the branch with
//! `V(0) = 0`.
//!
//! The chain distribution on the frame bundle is `ω̂ = Tθ̂ + C√D dZ = 0`,
//! `dT = iT²T̄θ̂`; with `D`, `C` frozen it integrates to
//!
//! ```text
//! dZ = -c (E + i(c̄Z - cZ̄))⁻¹ dU,   c = ½(C√D)⁻¹TD.
//! ```
//!
//! Along solutions `G = C - iT√DZ̄` satisfies `GḠ = const` and `TDG⁻¹ = const`,
//! and the base path is the chain `Z' = AW'` with `A = -½T√DC⁻¹` in
//! coordinates centred at the starting point.

use num_complex::Complex64;
use ode_solvers::{Dopri5, SVector, System};
use thiserror::Error;

use crate::algebra::{AElem, Delta, NumElem};
use crate::group::{self, Action};
use crate::matrix::Mat3;
use crate::normalform::{self, NormalFormError};
use crate::quadric_frame::P2Point;
use crate::scalar::Gaussian;
use crate::series::{HoloJet, Poly, SurfaceSeries};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error("no real solution branch through V = 0 at grid point {0}")]
    NoRealBranch(usize),
    #[error("integration failed: {0}")]
    StepFailure(String),
    #[error("G = C - iT√DZ̄ is not invertible")]
    SingularG,
    #[error("the U direction must be real")]
    NotReal,
    #[error("surface is not in matrix normal form")]
    NotMatrixNormalForm,
    #[error(transparent)]
    NormalForm(#[from] NormalFormError),
}

fn sc(d: Delta, re: f64, im: f64) -> NumElem {
    AElem::scalar(d, Complex64::new(re, im))
}

/// A chain through the origin of the quadric, `Z = AW`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSpec {
    pub a: NumElem,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainPoint {
    pub u: NumElem,
    pub v: NumElem,
    pub z: NumElem,
    pub w: NumElem,
}

impl ChainPoint {
    /// `max(|Z - AW|, |V - ZZ̄|)`.
    pub fn residuals(&self, a: &NumElem) -> (f64, f64) {
        let r1 = (self.z.clone() - a.clone() * self.w.clone()).norm_max();
        let r2 = (self.v.clone() - self.z.clone() * self.z.conj()).norm_max();
        (r1, r2)
    }
}

/// Newton's method for `AĀV² - V + AĀU² = 0` from `V = 0`.
pub fn solve_v(aa: &NumElem, u: &NumElem) -> Option<NumElem> {
    let d = aa.delta;
    let e = AElem::one(d);
    let mut v = AElem::zero(d);
    let c0 = aa.clone() * u.clone() * u.clone();
    for _ in 0..60 {
        let f = aa.clone() * v.clone() * v.clone() - v.clone() + c0.clone();
        if f.norm_max() < 1e-15 {
            return Some(v);
        }
        let df = sc(d, 2.0, 0.0) * aa.clone() * v.clone() - e.clone();
        v = v - f * df.inv().ok()?;
        if !v.norm_max().is_finite() || v.norm_max() > 1e6 {
            return None;
        }
    }
    let f = aa.clone() * v.clone() * v.clone() - v.clone() + c0;
    (f.norm_max() < 1e-12).then_some(v)
}

/// `V = (E - √(E - 4(AĀ)²U²)) / 2AĀ`, when `AĀ` is invertible and the
/// discriminant lies in the positive cone.
pub fn solve_v_closed_form(aa: &NumElem, u: &NumElem) -> Option<NumElem> {
    let d = aa.delta;
    let disc = AElem::one(d) - sc(d, 4.0, 0.0) * aa.clone() * aa.clone() * u.clone() * u.clone();
    let disc = disc.re();
    let root = disc.sqrt_positive().ok()?;
    // choose the root continuous with E at U = 0
    let root = if root.a.re < 0.0 { -root } else { root };
    let inv = (sc(d, 2.0, 0.0) * aa.clone()).inv().ok()?;
    Some((AElem::one(d) - root) * inv)
}

/// Sample the chain at real `U` values.
pub fn chain_on_quadric(spec: &ChainSpec, grid: &[NumElem]) -> Vec<Result<ChainPoint, ChainError>> {
    let aa = (spec.a.clone() * spec.a.conj()).re();
    grid.iter()
        .enumerate()
        .map(|(k, u)| {
            let u = u.re();
            let v = solve_v(&aa, &u).ok_or(ChainError::NoRealBranch(k))?.re();
            let w = u.clone() + sc(u.delta, 0.0, 1.0) * v.clone();
            let z = spec.a.clone() * w.clone();
            Ok(ChainPoint { u, v, z, w })
        })
        .collect()
}

/// Map sampled chain points by `g` and fit the image to `Z' = A'W'`.
///
/// Returns `A'` (from the first point with invertible `W'`) and the largest
/// deviation `|Z' - A'W'|` over the sample.
pub fn image_slope(g: &Mat3<Complex64>, points: &[ChainPoint]) -> Result<(NumElem, f64), ChainError> {
    let mut image = Vec::new();
    for (k, p) in points.iter().enumerate() {
        match group::act(g, &p.z, &p.w) {
            Action::Point { z, w } => image.push((z, w)),
            Action::AtInfinity => return Err(ChainError::NoRealBranch(k)),
        }
    }
    let slope = image
        .iter()
        .find_map(|(z, w)| (w.det().norm() > 1e-6).then(|| w.inv().ok().map(|wi| z.clone() * wi)).flatten())
        .ok_or(ChainError::NotReal)?;
    let dev = image.iter().map(|(z, w)| (z.clone() - slope.clone() * w.clone()).norm_max()).fold(0.0, f64::max);
    Ok((slope, dev))
}

type State = SVector<f64, 8>;

fn pack(z: &NumElem, t: &NumElem) -> State {
    State::from_column_slice(&[z.a.re, z.a.im, z.b.re, z.b.im, t.a.re, t.a.im, t.b.re, t.b.im])
}

fn unpack(d: Delta, y: &State) -> (NumElem, NumElem) {
    let e = |k: usize| Complex64::new(y[k], y[k + 1]);
    (AElem::new(d, e(0), e(2)), AElem::new(d, e(4), e(6)))
}

struct Distribution {
    delta: Delta,
    c: NumElem,
    d: NumElem,
    sqrt_d: NumElem,
    dir: NumElem,
}

impl Distribution {
    fn rates(&self, z: &NumElem, t: &NumElem) -> Option<(NumElem, NumElem)> {
        let dl = self.delta;
        let i = sc(dl, 0.0, 1.0);
        let k = (self.c.clone() * self.sqrt_d.clone()).inv().ok()? * t.clone();
        let cc = sc(dl, 0.5, 0.0) * k * self.d.clone();
        let det = AElem::one(dl) + i.clone() * (cc.conj() * z.clone() - cc.clone() * z.conj());
        let dz = -(cc * det.inv().ok()? * self.dir.clone());
        let th = sc(dl, 0.5, 0.0)
            * self.d.clone()
            * (self.dir.clone() - i.clone() * z.conj() * dz.clone() + i.clone() * z.clone() * dz.conj());
        let dt = i * t.clone() * t.clone() * t.conj() * th;
        Some((dz, dt))
    }
}

impl System<f64, State> for Distribution {
    fn system(&self, _s: f64, y: &State, dy: &mut State) {
        let (z, t) = unpack(self.delta, y);
        match self.rates(&z, &t) {
            Some((dz, dt)) => *dy = pack(&dz, &dt),
            None => dy.fill(f64::NAN),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathPoint {
    pub s: f64,
    pub z: NumElem,
    pub u: NumElem,
    pub t: NumElem,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainPath {
    pub points: Vec<PathPoint>,
    /// `A = -½T√DC⁻¹` at the start.
    pub slope: NumElem,
    /// `max_s |TDG⁻¹(s) - TDG⁻¹(0)|`.
    pub drift_tdg: f64,
    /// `max_s |GḠ(s) - GḠ(0)|`.
    pub drift_ggbar: f64,
    /// `max_s |Z' - AW'|` in coordinates centred at the start.
    pub projection_residual: f64,
}

/// Integrate the chain distribution along `U(s) = U₀ + s·dir`, `0 ≤ s ≤ length`.
pub fn integrate_chain_distribution(start: &P2Point, dir: &NumElem, length: f64, samples: usize) -> Result<ChainPath, ChainError> {
    let dl = start.delta;
    if !dir.is_real() {
        return Err(ChainError::NotReal);
    }
    let (c, d) = (start.c(), start.d());
    let sqrt_d = d.sqrt_positive().map_err(|_| ChainError::StepFailure("D is not positive".into()))?;
    let i = sc(dl, 0.0, 1.0);
    let g_of = |z: &NumElem, t: &NumElem| c.clone() - i.clone() * t.clone() * sqrt_d.clone() * z.conj();
    let (z0, t0) = (start.z(), start.t());
    let g0 = g_of(&z0, &t0);
    let g0_inv = g0.inv().map_err(|_| ChainError::SingularG)?;
    let q0 = t0.clone() * d.clone() * g0_inv;
    let gg0 = g0.clone() * g0.conj();

    let sys = Distribution { delta: dl, c: c.clone(), d: d.clone(), sqrt_d: sqrt_d.clone(), dir: dir.clone() };
    let dx = length / samples.max(1) as f64;
    let mut solver = Dopri5::new(sys, 0.0, length, dx, pack(&z0, &t0), 1e-12, 1e-13);
    solver.integrate().map_err(|e| ChainError::StepFailure(format!("{e:?}")))?;

    let slope = -(sc(dl, 0.5, 0.0) * t0.clone() * sqrt_d.clone() * c.inv().map_err(|_| ChainError::SingularG)?);
    let u0 = start.u();
    let w0 = start.w();
    let mut path = ChainPath { points: Vec::new(), slope: slope.clone(), drift_tdg: 0.0, drift_ggbar: 0.0, projection_residual: 0.0 };
    for (s, y) in solver.x_out().iter().zip(solver.y_out()) {
        if y.iter().any(|v| !v.is_finite()) {
            return Err(ChainError::StepFailure(format!("non-finite state at s = {s}")));
        }
        let (z, t) = unpack(dl, y);
        let g = g_of(&z, &t);
        let q = t.clone() * d.clone() * g.inv().map_err(|_| ChainError::SingularG)?;
        path.drift_tdg = path.drift_tdg.max((q - q0.clone()).norm_max());
        path.drift_ggbar = path.drift_ggbar.max((g.clone() * g.conj() - gg0.clone()).norm_max());
        let u = u0.clone() + dir.clone() * sc(dl, *s, 0.0);
        let w = u.clone() + i.clone() * z.clone() * z.conj();
        let zp = z.clone() - z0.clone();
        let wp = w - w0.clone() - sc(dl, 0.0, 2.0) * zp.clone() * z0.conj();
        path.projection_residual = path.projection_residual.max((zp - slope.clone() * wp).norm_max());
        path.points.push(PathPoint { s: *s, z, u, t });
    }
    Ok(path)
}

/// The chain `{z = 0, v = 0}` of a matrix normal form, carried back to the
/// original coordinates: polynomials in the real parameter `u` (slots 4, 5).
#[derive(Clone, Debug, PartialEq)]
pub struct ChainGerm {
    pub delta: Delta,
    pub bound: u32,
    pub z: [Poly<Gaussian>; 2],
    pub w: [Poly<Gaussian>; 2],
}

/// `map` takes the original surface to `normal_form`; the chain is the image of
/// the `u`-plane under `map⁻¹`.
pub fn chain_in_normal_coordinates(normal_form: &SurfaceSeries, map: &HoloJet) -> Result<ChainGerm, ChainError> {
    let r = normalform::check(normal_form)?;
    if !(r.satisfied && r.matrix_flag) {
        return Err(ChainError::NotMatrixNormalForm);
    }
    let back = map.invert().map_err(|e| ChainError::NormalForm(e.into()))?;
    let bound = normal_form.bound.min(back.bound);
    let plane = HoloJet {
        delta: normal_form.delta,
        bound,
        comps: [Poly::zero(), Poly::zero(), Poly::var(4), Poly::var(5)],
    };
    let g = back.compose(&plane);
    let [z1, z2, w1, w2] = g.comps;
    Ok(ChainGerm { delta: normal_form.delta, bound, z: [z1, z2], w: [w1, w2] })
}

/// `Im w(u) - Φ(z(u), z̄(u), Re w(u))`, zero through `bound` when the germ lies on
/// the surface.
pub fn germ_residual(surface: &SurfaceSeries, germ: &ChainGerm) -> [Poly<Gaussian>; 2] {
    let b = germ.bound.min(surface.bound);
    let subs = [
        germ.z[0].clone(),
        germ.z[1].clone(),
        germ.z[0].bar(),
        germ.z[1].bar(),
        germ.w[0].real_part(),
        germ.w[1].real_part(),
    ];
    let vals = Poly::compose_many(&[&surface.v[0], &surface.v[1]], &subs, b);
    [germ.w[0].imag_part().truncate(b) - vals[0].clone(), germ.w[1].imag_part().truncate(b) - vals[1].clone()]
}
