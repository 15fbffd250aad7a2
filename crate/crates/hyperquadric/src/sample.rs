//! Seeded random test objects with small exact coefficients.
//!
//! Everything draws from a caller-supplied RNG so runs are reproducible from a
//! single seed; [`rng`] builds the standard one.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AElem, Delta};
use crate::group::IsotropyParams;
use crate::hermitian::HMat;
use crate::normalform::{elliptic_condition, elliptic_non_matrix, hyperbolic_condition, hyperbolic_non_matrix, InitialData};
use crate::scalar::{Gaussian, Scalar};
use crate::series::{decomplexify, model_chart, model_chart_inverse, Mono, Poly, SurfaceSeries};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(a + bi)/d` with `|a|, |b| ≤ range` and `d ∈ {1, 2}`.
pub fn gaussian<R: Rng>(r: &mut R, range: i64) -> Gaussian {
    Gaussian::new(r.gen_range(-range..=range), r.gen_range(-range..=range), r.gen_range(1..=2))
}

pub fn nonzero_gaussian<R: Rng>(r: &mut R, range: i64) -> Gaussian {
    loop {
        let g = gaussian(r, range);
        if !g.is_zero() {
            return g;
        }
    }
}

pub fn rational<R: Rng>(r: &mut R, range: i64) -> Gaussian {
    Gaussian::new(r.gen_range(-range..=range), 0, r.gen_range(1..=2))
}

pub fn aelem<R: Rng>(r: &mut R, delta: Delta, range: i64) -> AElem<Gaussian> {
    AElem::new(delta, gaussian(r, range), gaussian(r, range))
}

pub fn invertible_aelem<R: Rng>(r: &mut R, delta: Delta, range: i64) -> AElem<Gaussian> {
    loop {
        let x = aelem(r, delta, range);
        if x.is_invertible() {
            return x;
        }
    }
}

pub fn real_aelem<R: Rng>(r: &mut R, delta: Delta, range: i64) -> AElem<Gaussian> {
    AElem::new(delta, rational(r, range), rational(r, range))
}

/// `C = X / X̄`, so that `CC̄ = E` exactly.
pub fn unimodular_aelem<R: Rng>(r: &mut R, delta: Delta, range: i64) -> AElem<Gaussian> {
    let x = invertible_aelem(r, delta, range);
    x.clone() * x.conj().inv().expect("conjugate of an invertible element")
}

/// Isotropy parameters with `C = σ̄σ⁻²`, which satisfies the σ-equations.
pub fn isotropy_params<R: Rng>(r: &mut R, delta: Delta, range: i64) -> IsotropyParams<Gaussian> {
    let sigma = invertible_aelem(r, delta, range);
    let c = sigma.conj() * sigma.pow(2).inv().expect("invertible");
    IsotropyParams { sigma, c, a: aelem(r, delta, range), r: real_aelem(r, delta, range) }
}

pub fn initial_data<R: Rng>(r: &mut R, delta: Delta, range: i64) -> InitialData {
    InitialData { c: invertible_aelem(r, delta, range), a: aelem(r, delta, range), r: real_aelem(r, delta, range) }
}

/// A point `(Z, U + iZZ̄)` of the quadric.
pub fn quadric_point<R: Rng>(r: &mut R, delta: Delta, range: i64) -> (AElem<Gaussian>, AElem<Gaussian>) {
    let z = aelem(r, delta, range);
    let u = real_aelem(r, delta, range);
    let w = u + AElem::scalar(delta, Gaussian::i()) * z.clone() * z.conj();
    (z, w)
}

pub fn invertible_2x2<R: Rng>(r: &mut R, range: i64, real: bool) -> HMat<Gaussian> {
    loop {
        let mut e = || if real { rational(r, range) } else { gaussian(r, range) };
        let m = [[e(), e()], [e(), e()]];
        let det = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
        if !det.is_zero() {
            return m;
        }
    }
}

/// Matrix surface with `terms` random 𝔄-valued terms `A Z^k Z̄^l U^m` of
/// weight 3..=bound.
pub fn matrix_surface<R: Rng>(r: &mut R, delta: Delta, bound: u32, terms: usize) -> SurfaceSeries {
    let mut list = Vec::new();
    while list.len() < terms {
        let (k, l, m) = (r.gen_range(0..=bound), r.gen_range(0..=bound), r.gen_range(0..=bound / 2));
        let w = k + l + 2 * m;
        if (3..=bound).contains(&w) {
            list.push(((k, l, m), aelem(r, delta, 2)));
        }
    }
    SurfaceSeries::matrix_surface(delta, bound, &list)
}

/// A random matrix surface plus one chart-side term of the given weight that
/// lies in the non-matrix part and violates no normal-form condition, so the
/// normal form has `ν = weight`.
pub fn non_matrix_surface<R: Rng>(r: &mut R, delta: Delta, bound: u32, weight: u32) -> SurfaceSeries {
    let s = matrix_surface(r, delta, bound, 3);
    let mut chart = s.regraph(&model_chart(delta, bound)).expect("linear chart");
    loop {
        let e: [u8; 6] = std::array::from_fn(|i| r.gen_range(0..=if i < 4 { weight } else { weight / 2 }) as u8);
        let m = Mono::new(e);
        if m.weight() != weight {
            continue;
        }
        let c = nonzero_gaussian(r, 2);
        match delta {
            Delta::Plus => {
                let k = r.gen_range(0..2);
                if !hyperbolic_non_matrix(m, k) || hyperbolic_condition(m, k).is_some() {
                    continue;
                }
                chart.add_real_term(k, m, c);
            }
            Delta::Minus => {
                if !elliptic_non_matrix(m) || elliptic_condition(m).is_some() {
                    continue;
                }
                let t = decomplexify(&Poly::term(m, c), delta, bound).expect("real by construction");
                chart.v = [chart.v[0].clone() + t.v[0].clone(), chart.v[1].clone() + t.v[1].clone()];
            }
        }
        return chart.regraph(&model_chart_inverse(delta, bound)).expect("linear chart");
    }
}
