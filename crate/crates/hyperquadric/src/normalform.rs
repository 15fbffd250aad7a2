//! Normal forms for surfaces `v = H^δ(z, z̄) + …` in ℂ⁴.
//!
//! Both normal forms are read in the model chart of [`model_chart`]:
//!
//! * δ = +1: the surface is a pair of real equations `v_j = z_j z̄_j + N_j`; the
//!   matrix part of `N_j` involves only `(z_j, z̄_j, u_j)` and must be in the
//!   Chern–Moser shape, the rest is the non-matrix part;
//! * δ = -1: the surface is one complex equation `𝒱 = z₁z̄₂ + N` in
//!   `(z, z̄, 𝒰, 𝒰̄)`; the matrix part depends only on `(z₁, z̄₂, 𝒰)`.
//!
//! Every condition says that one coefficient vanishes, so a check is a scan
//! over monomials and normalization is a sequence of exact linear solves, one per
//! weight.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::{AElem, Delta};
use crate::hermitian::{levi_form_at_origin, Class, HermitianError, HermitianForm2};
use crate::linalg::{self, SparseRow};
use crate::scalar::{Gaussian, Scalar};
use crate::series::jet::JET_SLOTS;
use crate::series::{complexify, model_chart, model_chart_inverse, regraph_step, HoloJet, Mono, Poly, SeriesError, SurfaceSeries};

type P = Poly<Gaussian>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NormalFormError {
    #[error("Levi form at the origin is not the model form for this delta")]
    WrongLeviForm,
    #[error(transparent)]
    Malformed(#[from] HermitianError),
    #[error("series is not in normal form")]
    NotInNormalForm,
    #[error("no normalizing correction exists at weight {0}")]
    LinearSolveSingular(u32),
    #[error("invalid initial data: {0}")]
    BadInitialData(&'static str),
    #[error("weight bound {0} exceeds the series bound {1}")]
    BoundTooLarge(u32, u32),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Which vanishing condition a coefficient violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// Matrix-part monomial outside the allowed Chern–Moser bidegrees.
    MatrixPart,
    /// Non-matrix term without any `z` or `z̄`.
    PureU,
    /// Bidegree `(k, 0)`, `k ≥ 1`.
    Holomorphic,
    /// Bidegree `(0, l)`.
    Antiholomorphic,
    /// Bidegree `(1, 1)`.
    Bidegree11,
    /// Bidegree `(k, 1)`, `k ≥ 2`, containing the distinguished conjugate variable.
    LinearInConjugate,
    /// Bidegree `(1, l)`, `l ≥ 2`, containing the distinguished variable.
    LinearInVariable,
    /// `z₁z₂` times one conjugate variable.
    Mixed21,
    /// One variable times `z̄₁z̄₂`.
    Mixed12,
    /// `z₁z₂z̄₁z̄₂`.
    Mixed22,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::MatrixPart => "matrix-part-shape",
            Condition::PureU => "pure-u",
            Condition::Holomorphic => "bidegree-k-0",
            Condition::Antiholomorphic => "bidegree-0-l",
            Condition::Bidegree11 => "bidegree-1-1",
            Condition::LinearInConjugate => "bidegree-k-1-conjugate",
            Condition::LinearInVariable => "bidegree-1-l-variable",
            Condition::Mixed21 => "mixed-2-1",
            Condition::Mixed12 => "mixed-1-2",
            Condition::Mixed22 => "mixed-2-2",
        };
        f.write_str(s)
    }
}

/// Allowed bidegrees of the matrix part: `(4,2)`, `(2,4)` and `k, l ≥ 2` with
/// `k + l ≥ 7`, any `u`-dependence.
pub fn chern_moser_allowed(k: u32, l: u32) -> bool {
    matches!((k, l), (4, 2) | (2, 4)) || (k >= 2 && l >= 2 && k + l >= 7)
}

/// Condition violated by monomial `m` in component `j` of the split chart.
pub fn hyperbolic_condition(m: Mono, j: usize) -> Option<Condition> {
    let e = m.exps().map(u32::from);
    let o = 1 - j;
    let z = [e[0], e[1]];
    let zb = [e[2], e[3]];
    if z[o] == 0 && zb[o] == 0 && e[4 + o] == 0 {
        return (!chern_moser_allowed(z[j], zb[j])).then_some(Condition::MatrixPart);
    }
    let (k, l) = (z[0] + z[1], zb[0] + zb[1]);
    let c = match (k, l) {
        (0, 0) => Condition::PureU,
        (_, 0) => Condition::Holomorphic,
        (0, _) => Condition::Antiholomorphic,
        (1, 1) => Condition::Bidegree11,
        (_, 1) if zb[j] > 0 => Condition::LinearInConjugate,
        (1, _) if z[j] > 0 => Condition::LinearInVariable,
        (2, 1) if z == [1, 1] => Condition::Mixed21,
        (1, 2) if zb == [1, 1] => Condition::Mixed12,
        (2, 2) if z == [1, 1] && zb == [1, 1] => Condition::Mixed22,
        _ => return None,
    };
    Some(c)
}

/// Condition violated by monomial `m` of `𝒱` in `(z₁, z₂, z̄₁, z̄₂, 𝒰, 𝒰̄)`.
pub fn elliptic_condition(m: Mono) -> Option<Condition> {
    let e = m.exps().map(u32::from);
    if e[1] == 0 && e[2] == 0 && e[5] == 0 {
        return (!chern_moser_allowed(e[0], e[3])).then_some(Condition::MatrixPart);
    }
    let (k, l) = (e[0] + e[1], e[2] + e[3]);
    let c = match (k, l) {
        (0, _) => Condition::Antiholomorphic,
        (_, 0) => Condition::Holomorphic,
        (1, 1) => Condition::Bidegree11,
        (_, 1) if e[3] > 0 => Condition::LinearInConjugate,
        (2, 1) if e[0] == 1 && e[1] == 1 => Condition::Mixed21,
        (2, 2) if e[..4].iter().all(|&x| x == 1) => Condition::Mixed22,
        (1, _) if e[0] > 0 => Condition::LinearInVariable,
        (1, 2) if e[2] == 1 && e[3] == 1 => Condition::Mixed12,
        _ => return None,
    };
    Some(c)
}

/// Monomial belongs to the non-matrix part of component `j` (split chart).
pub fn hyperbolic_non_matrix(m: Mono, j: usize) -> bool {
    let o = 1 - j;
    m.get(o) + m.get(2 + o) + m.get(4 + o) > 0
}

/// Monomial of `𝒱` belongs to the non-matrix part: contains `z₂`, `z̄₁` or `𝒰̄`.
pub fn elliptic_non_matrix(m: Mono) -> bool {
    m.get(1) + m.get(2) + m.get(5) > 0
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub condition: Condition,
    /// Component of the split chart (δ = +1); always 0 for the complex equation.
    pub component: usize,
    pub mono: Mono,
    pub coeff: Gaussian,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormReport {
    pub delta: Delta,
    pub satisfied: bool,
    pub violations: Vec<Violation>,
    /// The non-matrix part vanishes up to the series bound.
    pub matrix_flag: bool,
    pub kappa: BigRational,
    pub nu: Option<u32>,
}

/// The deviation from the quadric in the model chart: `[N₁, N₂]` with
/// `v_j* = z_j z̄_j + N_j` for δ = +1, `[N, 0]` with `𝒱 = z₁z̄₂ + N` for δ = -1.
pub fn chart_form(s: &SurfaceSeries) -> Result<[P; 2], NormalFormError> {
    let chart = model_chart(s.delta, s.bound);
    let m = s.regraph(&chart)?;
    let q = SurfaceSeries::quadric(s.delta, s.bound).regraph(&chart)?;
    Ok(match s.delta {
        Delta::Plus => [m.v[0].clone() - q.v[0].clone(), m.v[1].clone() - q.v[1].clone()],
        Delta::Minus => [complexify(&m) - complexify(&q), P::zero()],
    })
}

fn non_matrix_weight(delta: Delta, chart: &[P; 2]) -> Option<u32> {
    match delta {
        Delta::Plus => (0..2).flat_map(|j| chart[j].terms().filter(move |(m, _)| hyperbolic_non_matrix(*m, j))).map(|(m, _)| m.weight()).min(),
        Delta::Minus => chart[0].terms().filter(|(m, _)| elliptic_non_matrix(*m)).map(|(m, _)| m.weight()).min(),
    }
}

fn violations(delta: Delta, chart: &[P; 2]) -> Vec<Violation> {
    let mut out = Vec::new();
    match delta {
        Delta::Plus => {
            for (j, p) in chart.iter().enumerate() {
                // conjugate monomials carry conjugate coefficients; report one of each pair
                for (m, c) in p.terms().filter(|(m, _)| *m <= m.bar()) {
                    if let Some(condition) = hyperbolic_condition(m, j) {
                        out.push(Violation { condition, component: j, mono: m, coeff: c.clone() });
                    }
                }
            }
        }
        Delta::Minus => {
            for (m, c) in chart[0].terms() {
                if let Some(condition) = elliptic_condition(m) {
                    out.push(Violation { condition, component: 0, mono: m, coeff: c.clone() });
                }
            }
        }
    }
    out
}

fn require_model_levi(s: &SurfaceSeries) -> Result<(), NormalFormError> {
    let expected = match s.delta {
        Delta::Plus => Class::Hyperbolic,
        Delta::Minus => Class::Elliptic,
    };
    if levi_form_at_origin(s)? != HermitianForm2::canonical(expected).expect("nondegenerate class") {
        return Err(NormalFormError::WrongLeviForm);
    }
    Ok(())
}

fn report(delta: Delta, chart: &[P; 2]) -> NormalFormReport {
    let violations = violations(delta, chart);
    let nu = non_matrix_weight(delta, chart);
    NormalFormReport {
        delta,
        satisfied: violations.is_empty(),
        violations,
        matrix_flag: nu.is_none(),
        kappa: nu.map_or_else(|| BigRational::from_integer(BigInt::from(0)), |n| BigRational::new(1.into(), n.into())),
        nu,
    }
}

/// Check the hyperbolic normal form.
pub fn check_hyperbolic(s: &SurfaceSeries) -> Result<NormalFormReport, NormalFormError> {
    if s.delta != Delta::Plus {
        return Err(NormalFormError::WrongLeviForm);
    }
    check(s)
}

/// Check the elliptic normal form.
pub fn check_elliptic(s: &SurfaceSeries) -> Result<NormalFormReport, NormalFormError> {
    if s.delta != Delta::Minus {
        return Err(NormalFormError::WrongLeviForm);
    }
    check(s)
}

/// Check the normal form matching the surface's δ.
pub fn check(s: &SurfaceSeries) -> Result<NormalFormReport, NormalFormError> {
    require_model_levi(s)?;
    Ok(report(s.delta, &chart_form(s)?))
}

/// `κ = 1/ν` for the smallest weight `ν` of the non-matrix part, 0 for a
/// matrix normal form.
pub fn kappa(s: &SurfaceSeries) -> Result<BigRational, NormalFormError> {
    let r = check(s)?;
    if !r.satisfied {
        return Err(NormalFormError::NotInNormalForm);
    }
    Ok(r.kappa)
}

/// The chart equations separate into the matrix shape (exact coefficient scan).
pub fn is_matrix_surface(s: &SurfaceSeries) -> Result<bool, NormalFormError> {
    Ok(non_matrix_weight(s.delta, &chart_form(s)?).is_none())
}

/// Initial data `(C, A, R)` of a normalization: the isotropy map they define
/// is applied first.
#[derive(Clone, Debug, PartialEq)]
pub struct InitialData {
    pub c: AElem<Gaussian>,
    pub a: AElem<Gaussian>,
    pub r: AElem<Gaussian>,
}

impl InitialData {
    pub fn identity(delta: Delta) -> Self {
        InitialData { c: AElem::one(delta), a: AElem::zero(delta), r: AElem::zero(delta) }
    }

    fn validate(&self, delta: Delta) -> Result<(), NormalFormError> {
        if [&self.c, &self.a, &self.r].iter().any(|x| x.delta != delta) {
            return Err(NormalFormError::BadInitialData("delta mismatch"));
        }
        if !self.c.is_invertible() {
            return Err(NormalFormError::BadInitialData("C is not invertible"));
        }
        if !self.r.is_real() {
            return Err(NormalFormError::BadInitialData("R is not real"));
        }
        Ok(())
    }
}

/// Real-valued linear functionals whose vanishing is the normal form at one
/// weight, evaluated on a chart-side correction `dv`. Keys are
/// `(component, monomial, 0 = real part | 1 = imaginary part)`.
fn functionals(delta: Delta, dv: &[P; 2], bound: u32) -> Vec<((usize, Mono, u8), Gaussian)> {
    let mut out = Vec::new();
    match delta {
        Delta::Plus => {
            for (j, p) in dv.iter().enumerate() {
                for (m, c) in p.terms() {
                    let mb = m.bar();
                    if m > mb || hyperbolic_condition(m, j).is_none() {
                        continue;
                    }
                    out.push(((j, m, 0), c.re()));
                    if m != mb {
                        out.push(((j, m, 1), c.im()));
                    }
                }
            }
        }
        Delta::Minus => {
            let s = SurfaceSeries { delta, bound, v: dv.clone() };
            for (m, c) in complexify(&s).terms() {
                if elliptic_condition(m).is_some() {
                    out.push(((0, m, 0), c.re()));
                    out.push(((0, m, 1), c.im()));
                }
            }
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Holomorphic monomials of the given weight in `(z₁, z₂, w₁, w₂)`.
fn holomorphic_monomials(weight: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for b1 in 0..=weight / 2 {
        for b2 in 0..=(weight / 2 - b1) {
            let rest = weight - 2 * (b1 + b2);
            for a1 in 0..=rest {
                out.push(Mono::new([a1 as u8, (rest - a1) as u8, 0, 0, b1 as u8, b2 as u8]));
            }
        }
    }
    out
}

/// One unknown of the weight-`μ` correction: `coeff · mono` added to jet
/// component `target` (0, 1: `z`; 2, 3: `w`).
struct Column {
    target: usize,
    mono: Mono,
    coeff: Gaussian,
    effect: [P; 2],
}

fn correction_columns(model: &[P; 2], mu: u32) -> Vec<Column> {
    let i = P::constant(Gaussian::i());
    let wsub = |k: usize| P::var(4 + k) + model[k].mul_trunc(&i, mu);
    let subs = [P::var(0), P::var(1), P::zero(), P::zero(), wsub(0), wsub(1)];
    let mut cols = Vec::new();
    for target in 0..4 {
        let weight = if target < 2 { mu - 1 } else { mu };
        for mono in holomorphic_monomials(weight) {
            let x = P::term(mono, Gaussian::one()).compose(&subs, mu);
            for coeff in [Gaussian::one(), Gaussian::i()] {
                let cx = x.scale(&coeff);
                let effect = if target >= 2 {
                    let mut e = [P::zero(), P::zero()];
                    e[target - 2] = cx.imag_part();
                    e
                } else {
                    let k = target;
                    std::array::from_fn(|j| {
                        let t = model[j].derivative(k).mul_trunc(&cx, mu) + model[j].derivative(2 + k).mul_trunc(&cx.bar(), mu);
                        -t
                    })
                };
                cols.push(Column { target, mono, coeff: coeff.clone(), effect });
            }
        }
    }
    cols
}

/// The result of [`normalize`].
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization {
    pub normal_form: SurfaceSeries,
    /// The normalizing map, taking the input surface onto `normal_form`.
    pub map: HoloJet,
}

/// Bring `s` to normal form through weight `bound`, using the isotropy map with
/// the given initial data as the first step.
///
/// At each weight `μ ≥ 3` the violated coefficients are removed by a map
/// `id + h` with `h` homogeneous (`z`-part of weight `μ-1`, `w`-part of weight
/// `μ`); `h` solves an exact linear system whose free variables are set to zero,
/// which makes the result deterministic.
pub fn normalize(s: &SurfaceSeries, init: &InitialData, bound: u32) -> Result<Normalization, NormalFormError> {
    if bound > s.bound {
        return Err(NormalFormError::BoundTooLarge(bound, s.bound));
    }
    let delta = s.delta;
    require_model_levi(s)?;
    init.validate(delta)?;
    let s = s.truncate(bound);
    let chart = model_chart(delta, bound);
    let model = SurfaceSeries::quadric(delta, bound).regraph(&chart)?.v;

    let mut f = chart.compose(&HoloJet::isotropy(&init.c, &init.a, &init.r, bound));
    // the regraph step wants the w-block of the inverse map
    let rho_inv = f.w_block().ok_or(SeriesError::NonRealWBlock)?;
    let rho = crate::series::real_inverse(&rho_inv).ok_or(SeriesError::NonRealWBlock)?;
    let mut nf = model.clone();

    for mu in 3..=bound {
        let g = f.truncate(mu).invert()?;
        let phi = regraph_step(&s.v, &g, &rho, &rho_inv, &nf, mu);
        let n_mu: [P; 2] = [phi[0].weight_part(mu), phi[1].weight_part(mu)];

        let cols = correction_columns(&model, mu);
        let mut rows: BTreeMap<(usize, Mono, u8), (SparseRow<Gaussian>, Gaussian)> = BTreeMap::new();
        for (key, val) in functionals(delta, &n_mu, mu) {
            rows.entry(key).or_insert_with(|| (SparseRow::new(), Gaussian::zero())).1 = -val;
        }
        for (ci, col) in cols.iter().enumerate() {
            for (key, val) in functionals(delta, &col.effect, mu) {
                rows.entry(key).or_insert_with(|| (SparseRow::new(), Gaussian::zero())).0.insert(ci, val);
            }
        }
        let system: Vec<_> = rows.into_values().collect();
        let x = linalg::solve_sparse(&system, cols.len()).map_err(|_| NormalFormError::LinearSolveSingular(mu))?;

        let mut h: [P; 4] = Default::default();
        let mut new_mu = n_mu;
        for (col, xi) in cols.iter().zip(&x) {
            if xi.is_zero() {
                continue;
            }
            h[col.target].add_term(col.mono, col.coeff.clone() * xi.clone());
            for j in 0..2 {
                new_mu[j] = new_mu[j].clone() + col.effect[j].scale(xi);
            }
        }
        if !functionals(delta, &new_mu, mu).is_empty() {
            return Err(NormalFormError::LinearSolveSingular(mu));
        }
        for j in 0..2 {
            nf[j] = nf[j].clone() + new_mu[j].clone();
        }
        if h.iter().any(|p| !p.is_zero()) {
            let step = HoloJet { delta, bound, comps: std::array::from_fn(|k| P::var(JET_SLOTS[k]) + h[k].clone()) };
            f = step.compose(&f);
        }
    }

    let back = model_chart_inverse(delta, bound);
    let normal_form = SurfaceSeries::new(delta, bound, nf)?.regraph(&back)?;
    Ok(Normalization { normal_form, map: back.compose(&f) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> Gaussian {
        Gaussian::from_i64(n)
    }

    fn chart_surface(delta: Delta, bound: u32, terms: &[(usize, Mono, Gaussian)]) -> SurfaceSeries {
        // build in the model chart, then pull back to the original coordinates
        let chart = model_chart(delta, bound);
        let mut m = SurfaceSeries::quadric(delta, bound).regraph(&chart).unwrap();
        for (k, mono, c) in terms {
            m.add_real_term(*k, *mono, c.clone());
        }
        m.regraph(&model_chart_inverse(delta, bound)).unwrap()
    }

    #[test]
    fn quadric_is_normal_with_zero_kappa() {
        for d in Delta::BOTH {
            let r = check(&SurfaceSeries::quadric(d, 8)).unwrap();
            assert!(r.satisfied && r.matrix_flag);
            assert_eq!(r.kappa, BigRational::from_integer(0.into()));
        }
    }

    #[test]
    fn allowed_chern_moser_term_passes() {
        let s = chart_surface(Delta::Plus, 8, &[(0, Mono::new([4, 0, 2, 0, 0, 0]), g(3))]);
        let r = check_hyperbolic(&s).unwrap();
        assert!(r.satisfied && r.matrix_flag, "{:?}", r.violations);
    }

    #[test]
    fn mixed_weight_two_term_is_reported() {
        let mut s = SurfaceSeries::quadric(Delta::Plus, 6);
        s.add_real_term(0, Mono::new([1, 0, 0, 1, 0, 0]), Gaussian::new(1, 0, 3));
        // the Levi form changed, so the check refuses
        assert_eq!(check_hyperbolic(&s), Err(NormalFormError::WrongLeviForm));
        let s = chart_surface(Delta::Plus, 6, &[(0, Mono::new([1, 0, 0, 1, 0, 0]), g(1))]);
        let r = report(Delta::Plus, &chart_form(&s).unwrap());
        assert!(r.violations.iter().any(|v| v.condition == Condition::Bidegree11 && v.component == 0));
    }

    #[test]
    fn elliptic_conjugate_term_gives_kappa_one_fifth() {
        // z₁² z̄₁ z̄₂ 𝒰̄^0 ... choose z₁³ z̄₁ z̄₂: k = 3, l = 2, contains z̄₁
        let m = Mono::new([3, 0, 1, 1, 0, 0]);
        assert!(elliptic_condition(m).is_none() && elliptic_non_matrix(m));
        let mut v = SurfaceSeries::quadric(Delta::Minus, 6).regraph(&model_chart(Delta::Minus, 6)).unwrap();
        let mut cv = complexify(&v);
        cv.add_term(m, g(2));
        v = crate::series::decomplexify(&cv, Delta::Minus, 6).unwrap();
        let s = v.regraph(&model_chart_inverse(Delta::Minus, 6)).unwrap();
        let r = check_elliptic(&s).unwrap();
        assert!(r.satisfied, "{:?}", r.violations);
        assert_eq!(r.nu, Some(5));
        assert_eq!(kappa(&s).unwrap(), BigRational::new(1.into(), 5.into()));
    }

    #[test]
    fn kappa_takes_the_minimum_weight() {
        // non-matrix allowed terms in component 0 at weights 6 and 7
        let a = Mono::new([2, 0, 1, 1, 1, 0]); // z₁² z̄₁ z̄₂ u₁, weight 6
        let b = Mono::new([2, 1, 2, 2, 0, 0]); // weight 7
        assert!(hyperbolic_condition(a, 0).is_none() && hyperbolic_condition(b, 0).is_none());
        let s = chart_surface(Delta::Plus, 8, &[(0, b, g(1)), (0, a, g(1))]);
        let r = check_hyperbolic(&s).unwrap();
        assert!(r.satisfied);
        assert_eq!(r.nu, Some(6));
    }

    #[test]
    fn quadric_normalizes_to_itself() {
        for d in Delta::BOTH {
            let q = SurfaceSeries::quadric(d, 6);
            let n = normalize(&q, &InitialData::identity(d), 6).unwrap();
            assert_eq!(n.normal_form, q);
            assert_eq!(n.map, HoloJet::identity(d, 6));
        }
    }

    #[test]
    fn normalizing_a_perturbed_surface() {
        for d in Delta::BOTH {
            let mut s = SurfaceSeries::quadric(d, 6);
            s.add_real_term(0, Mono::new([2, 1, 0, 0, 0, 0]), g(1));
            s.add_real_term(1, Mono::new([1, 0, 1, 0, 1, 0]), Gaussian::new(1, 1, 2));
            s.add_real_term(1, Mono::new([0, 2, 3, 0, 0, 0]), g(-1));
            let init = InitialData { c: AElem::from_ints(d, (1, 1), (0, 0)), a: AElem::from_ints(d, (0, 1), (1, 0)), r: AElem::from_ints(d, (1, 0), (0, 0)) };
            let n = normalize(&s, &init, 6).unwrap();
            let r = check(&n.normal_form).unwrap();
            assert!(r.satisfied, "{:?}", r.violations);
            assert_eq!(s.regraph(&n.map).unwrap(), n.normal_form);
            let again = normalize(&n.normal_form, &InitialData::identity(d), 6).unwrap();
            assert_eq!(again.normal_form, n.normal_form);
        }
    }
}
