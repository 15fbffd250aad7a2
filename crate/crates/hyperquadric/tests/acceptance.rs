//! Acceptance suite: nine criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are always printed; the
//! process exits non-zero if any criterion fails.

use std::time::Instant;

use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use hyperquadric::algebra::{lambda_set, AElem, Delta, ExactElem, NumElem};
use hyperquadric::chains::{chain_on_quadric, integrate_chain_distribution, ChainSpec};
use hyperquadric::group::{self, Action};
use hyperquadric::hermitian::{classify, Class, HermitianForm2};
use hyperquadric::lie;
use hyperquadric::matrix::Mat3;
use hyperquadric::normalform::{check, normalize, InitialData};
use hyperquadric::quadric_frame::{flatness_report, P2Point};
use hyperquadric::sample;
use hyperquadric::scalar::{Gaussian, Scalar};
use hyperquadric::series::{
    elliptic_transform, elliptic_transform_inverse, split_transform, split_transform_inverse, HoloJet, Mono, Poly, SurfaceSeries,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lie_element(r: &mut ChaCha8Rng, d: Delta) -> Mat3<Gaussian> {
    let c: Vec<Gaussian> = (0..16).map(|_| sample::rational(r, 5)).collect();
    lie::from_coordinates(d, &c)
}

fn isotropy_projective(r: &mut ChaCha8Rng, d: Delta) -> (ExactElem, ExactElem, ExactElem) {
    (sample::invertible_aelem(r, d, 2), sample::aelem(r, d, 2), sample::real_aelem(r, d, 2))
}

/// `(C, A, R)` of a product of projective isotropy matrices.
fn isotropy_parts(m: &Mat3<Gaussian>) -> (ExactElem, ExactElem, ExactElem) {
    let d = m.delta;
    let c = m.get(1, 1).clone();
    let a = m.get(2, 1).clone() * c.inv().unwrap();
    let r = -m.get(2, 0).clone() - AElem::scalar(d, Gaussian::i()) * a.clone() * a.conj();
    (c, a, r)
}

fn c1_dimensions() -> Outcome {
    for d in Delta::BOTH {
        let dims = lie::grade_dims(d);
        ensure(dims == vec![(-2, 2), (-1, 4), (0, 4), (1, 4), (2, 2)], || format!("{d:?}: graded {dims:?}"))?;
        let basis = lie::basis::<Gaussian>(d);
        // the basis is read off by the coordinate map, so it is independent
        for (k, e) in basis.iter().enumerate() {
            let c = lie::coordinates(&e.matrix).map_err(|e| e.to_string())?;
            ensure(c.iter().enumerate().all(|(i, x)| if i == k { x.is_one() } else { x.is_zero() }), || format!("{d:?}: basis {k}"))?;
        }
        let positive: usize = dims.iter().filter(|x| x.0 > 0).map(|x| x.1).sum();
        ensure(basis.len() == 16 && positive == 6, || format!("{d:?}: dim {} positive {positive}", basis.len()))?;
    }
    Ok("dim 16, graded (2,4,4,4,2), dim g¹⊕g² = 6 for both δ".into())
}

fn c2_lambda() -> Outcome {
    for (d, n) in [(Delta::Minus, 3), (Delta::Plus, 9)] {
        let l = lambda_set(d);
        ensure(l.len() == n, || format!("{d:?}: |Λ| = {}", l.len()))?;
        for (i, x) in l.iter().enumerate() {
            ensure((x.clone() * x.conj()).is_one() && x.pow(3).is_one(), || format!("{d:?}: element {i} fails λλ̄ = λ³ = E"))?;
            ensure(l[..i].iter().all(|y| y != x), || format!("{d:?}: repeated element"))?;
        }
    }
    Ok("|Λ⁻¹| = 3, |Λ¹| = 9, all with λλ̄ = λ³ = E".into())
}

fn c3_axioms() -> Outcome {
    let mut r = sample::rng(3);
    let n = 50;
    for d in Delta::BOTH {
        let lam = lambda_set(d).len();
        for k in 0..n {
            let (x, y, z) = (lie_element(&mut r, d), lie_element(&mut r, d), lie_element(&mut r, d));
            let jac = lie::bracket(&x, &lie::bracket(&y, &z)) + lie::bracket(&y, &lie::bracket(&z, &x)) + lie::bracket(&z, &lie::bracket(&x, &y));
            ensure(jac.is_zero(), || format!("{d:?} #{k}: Jacobi"))?;
            ensure(lie::is_member(&lie::bracket(&x, &y)), || format!("{d:?} #{k}: bracket closure"))?;
            let (i, j) = (r.gen_range(-2..=2), r.gen_range(-2..=2));
            let b = lie::bracket(&lie::grade_component(&x, i).unwrap(), &lie::grade_component(&y, j).unwrap());
            let graded = if (-2..=2).contains(&(i + j)) { lie::grade_component(&b, i + j).unwrap() == b } else { b.is_zero() };
            ensure(graded, || format!("{d:?} #{k}: [g{i}, g{j}] ⊄ g{}", i + j))?;

            let (c1, a1, r1) = isotropy_projective(&mut r, d);
            let (c2, a2, r2) = isotropy_projective(&mut r, d);
            let u1 = group::isotropy_projective(&c1, &a1, &r1);
            let u2 = group::isotropy_projective(&c2, &a2, &r2);
            let (c, a, rr) = isotropy_parts(&(u1.clone() * u2.clone()));
            ensure(group::isotropy_projective(&c, &a, &rr) == u1 * u2, || format!("{d:?} #{k}: isotropy product"))?;
            let lhs = group::chi(&c, &a, &rr).map_err(|e| e.to_string())?;
            let rhs = group::chi(&c1, &a1, &r1).unwrap() * group::chi(&c2, &a2, &r2).unwrap();
            ensure(lhs == rhs, || format!("{d:?} #{k}: χ is not multiplicative"))?;

            let p = sample::isotropy_params(&mut r, d, 2);
            let (z0, w0) = sample::quadric_point(&mut r, d, 2);
            let g = group::compose(&group::isotropy(&p).unwrap(), &group::translation(&z0, &w0).unwrap());
            ensure(group::is_member(&g) && group::is_member(&group::inverse(&g)), || format!("{d:?} #{k}: group closure"))?;
            let sols = group::solve_sigma(&p.c.to_cyclotomic()).map_err(|e| format!("{d:?} #{k}: {e}"))?;
            ensure(sols.len() == lam, || format!("{d:?} #{k}: {} σ solutions", sols.len()))?;
            ensure(sols.iter().all(|s| group::sigma_equations_hold(s, &p.c.to_cyclotomic())), || format!("{d:?} #{k}: σ check"))?;
        }
    }
    Ok(format!("Jacobi, closure, grading, χ, σ-count on {n} instances per δ"))
}

fn c4_quadric_invariance() -> Outcome {
    let mut r = sample::rng(4);
    let mut log = Vec::new();
    for d in Delta::BOTH {
        let mut at_infinity = 0;
        for k in 0..100 {
            let mut g = Mat3::identity(d);
            for _ in 0..r.gen_range(1..=4) {
                let f = if r.gen_bool(0.5) {
                    let (z0, w0) = sample::quadric_point(&mut r, d, 2);
                    group::translation(&z0, &w0).unwrap()
                } else {
                    group::isotropy(&sample::isotropy_params(&mut r, d, 2)).unwrap()
                };
                g = group::compose(&g, &f);
            }
            let (z, w) = sample::quadric_point(&mut r, d, 2);
            match group::act(&g, &z, &w) {
                Action::Point { z, w } => ensure(group::on_quadric(&z, &w), || format!("{d:?} #{k}: image leaves the quadric"))?,
                Action::AtInfinity => at_infinity += 1,
            }
        }
        ensure(d == Delta::Plus || at_infinity == 0, || format!("{d:?}: {at_infinity} points at infinity"))?;
        log.push(format!("{d:?}: {at_infinity} at infinity"));
    }
    Ok(format!("100 products per δ keep Im W = ZZ̄ ({})", log.join(", ")))
}

fn c5_hermitian() -> Outcome {
    let mut r = sample::rng(5);
    for class in [Class::Hyperbolic, Class::Elliptic, Class::Parabolic] {
        let h = HermitianForm2::canonical(class).unwrap();
        let c = classify(&h);
        ensure(c.class == class, || format!("canonical {class} labelled {}", c.class))?;
        for k in 0..100 {
            let a = sample::invertible_2x2(&mut r, 2, false);
            let b = sample::invertible_2x2(&mut r, 2, true);
            let t = h.congruence(&a, &b);
            ensure(t.label() == class, || format!("{class} #{k}: labelled {}", t.label()))?;
        }
    }
    Ok("canonical forms and 100 congruences each keep their label".into())
}

fn c6_flatness() -> Outcome {
    let mut r = sample::rng(6);
    let mut out = Vec::new();
    for d in Delta::BOTH {
        let rep = flatness_report(d, 20, 1e-4, &mut r);
        ensure(rep.max_residual <= 1e-6, || format!("{d:?}: residual {:.3e}", rep.max_residual))?;
        ensure(rep.min_ratio >= 3.5 && rep.max_ratio <= 4.5, || format!("{d:?}: ratio [{}, {}]", rep.min_ratio, rep.max_ratio))?;
        ensure(rep.negative_control_max >= 1e-2, || format!("{d:?}: negative control {:.3e}", rep.negative_control_max))?;
        out.push(format!(
            "{d:?}: max {:.1e}, ratio [{:.3}, {:.3}], control max {:.1e} (min {:.1e})",
            rep.max_residual, rep.min_ratio, rep.max_ratio, rep.negative_control_max, rep.negative_control_min
        ));
    }
    Ok(out.join("; "))
}

fn num(r: &mut ChaCha8Rng, d: Delta, s: f64) -> NumElem {
    let mut c = || Complex64::new(r.gen_range(-s..s), r.gen_range(-s..s));
    AElem::new(d, c(), c())
}

fn c7_chains() -> Outcome {
    let mut r = sample::rng(7);
    let (mut q, mut drift, mut proj) = (0.0f64, 0.0f64, 0.0f64);
    for d in Delta::BOTH {
        for k in 0..10 {
            let a = num(&mut r, d, 0.4);
            // the real branch exists while E - 4(AĀ)²U² stays in the positive cone;
            // split coordinates are bounded by twice the largest entry
            let m = (a.clone() * a.conj()).norm_max();
            let amp = (0.9 / (8.0 * m)).min(0.75);
            let grid: Vec<NumElem> =
                (-5..=5).map(|t| AElem::new(d, (amp * t as f64 / 5.0).into(), (amp * r.gen_range(-1.0..1.0) * t as f64 / 5.0).into())).collect();
            for p in chain_on_quadric(&ChainSpec { a: a.clone() }, &grid) {
                let p = p.map_err(|e| format!("{d:?} #{k}: {e}"))?;
                let (l, v) = p.residuals(&a);
                ensure(l == 0.0, || format!("{d:?} #{k}: |Z - AW| = {l:e}"))?;
                q = q.max(v);
            }
            let start = P2Point::random(d, &mut r);
            let dir = AElem::new(d, r.gen_range(-1.0..1.0).into(), r.gen_range(-1.0..1.0).into());
            let path = integrate_chain_distribution(&start, &dir, 1.0, 20).map_err(|e| format!("{d:?} #{k}: {e}"))?;
            drift = drift.max(path.drift_tdg).max(path.drift_ggbar);
            proj = proj.max(path.projection_residual);
        }
    }
    ensure(q <= 1e-10, || format!("|V - ZZ̄| = {q:e}"))?;
    ensure(drift <= 1e-8, || format!("drift {drift:e}"))?;
    ensure(proj <= 1e-7, || format!("projection {proj:e}"))?;
    Ok(format!("|V - ZZ̄| ≤ {q:.1e}, drift ≤ {drift:.1e}, projection ≤ {proj:.1e}"))
}

fn c8_normal_forms() -> Outcome {
    let mut r = sample::rng(8);
    let mut kappas = Vec::new();
    for d in Delta::BOTH {
        let q = check(&SurfaceSeries::quadric(d, 8)).map_err(|e| e.to_string())?;
        ensure(q.satisfied && q.kappa.is_zero(), || format!("{d:?}: quadric not normal"))?;

        for k in 0..5 {
            let s = sample::matrix_surface(&mut r, d, 8, 4);
            let n = normalize(&s, &sample::initial_data(&mut r, d, 2), 8).map_err(|e| format!("{d:?} matrix #{k}: {e}"))?;
            let rep = check(&n.normal_form).map_err(|e| e.to_string())?;
            ensure(rep.satisfied && rep.matrix_flag, || format!("{d:?} matrix #{k}: satisfied {} matrix {}", rep.satisfied, rep.matrix_flag))?;
            let again = normalize(&n.normal_form, &InitialData::identity(d), 8).map_err(|e| e.to_string())?;
            ensure(again.normal_form == n.normal_form, || format!("{d:?} matrix #{k}: not idempotent"))?;
        }

        for k in 0..5 {
            let weight = 5 + (k % 2) as u32;
            let s = sample::non_matrix_surface(&mut r, d, 6, weight);
            let mut seen = None;
            for t in 0..10 {
                let n = normalize(&s, &sample::initial_data(&mut r, d, 2), 6).map_err(|e| format!("{d:?} non-matrix #{k}: {e}"))?;
                let rep = check(&n.normal_form).map_err(|e| e.to_string())?;
                ensure(rep.satisfied && !rep.matrix_flag, || format!("{d:?} non-matrix #{k}/{t}: not a non-matrix normal form"))?;
                match &seen {
                    None => seen = Some(rep.kappa.clone()),
                    Some(x) => ensure(*x == rep.kappa, || format!("{d:?} non-matrix #{k}: κ {x} vs {}", rep.kappa))?,
                }
                if t == 0 {
                    let again = normalize(&n.normal_form, &InitialData::identity(d), 6).map_err(|e| e.to_string())?;
                    ensure(again.normal_form == n.normal_form, || format!("{d:?} non-matrix #{k}: not idempotent"))?;
                }
            }
            kappas.push(seen.unwrap().to_string());
        }
    }
    Ok(format!("quadric κ = 0; matrix normal forms; κ stable ({}); idempotent", kappas.join(" ")))
}

fn random_series(r: &mut ChaCha8Rng, d: Delta, bound: u32) -> SurfaceSeries {
    let mut s = SurfaceSeries::quadric(d, bound);
    for _ in 0..6 {
        let e: [u8; 6] = std::array::from_fn(|i| r.gen_range(0..=if i < 4 { 3 } else { 1 }));
        let m = Mono::new(e);
        if (3..=bound).contains(&m.weight()) {
            s.add_real_term(r.gen_range(0..2), m, sample::gaussian(r, 3));
        }
    }
    s
}

fn random_jet(r: &mut ChaCha8Rng, d: Delta, bound: u32) -> HoloJet {
    let mut h = HoloJet::isotropy(&sample::invertible_aelem(r, d, 2), &sample::aelem(r, d, 2), &sample::real_aelem(r, d, 2), bound);
    for _ in 0..3 {
        let e = [r.gen_range(0..3), r.gen_range(0..3), 0, 0, r.gen_range(0..2), r.gen_range(0..2)];
        let m = Mono::new(e);
        let k = r.gen_range(0..4);
        // z-components from weight 2, w-components from weight 3
        if m.weight() >= if k < 2 { 2 } else { 3 } && m.weight() <= bound {
            h.comps[k] = h.comps[k].clone() + Poly::term(m, sample::gaussian(r, 2));
        }
    }
    h
}

fn c9_round_trips() -> Outcome {
    let mut r = sample::rng(9);
    let bound = 6;
    for k in 0..10 {
        let s = random_series(&mut r, Delta::Plus, bound);
        let t = split_transform(&s).map_err(|e| e.to_string())?;
        ensure(split_transform_inverse(&t).map_err(|e| e.to_string())? == s, || format!("split #{k}"))?;
        let s = random_series(&mut r, Delta::Minus, bound);
        let t = elliptic_transform(&s).map_err(|e| e.to_string())?;
        ensure(elliptic_transform_inverse(&t, bound).map_err(|e| e.to_string())? == s, || format!("elliptic #{k}"))?;
        for d in Delta::BOTH {
            let s = random_series(&mut r, d, bound);
            let (f, h) = (random_jet(&mut r, d, bound), random_jet(&mut r, d, bound));
            let two = s.regraph(&f).and_then(|x| x.regraph(&h)).map_err(|e| e.to_string())?;
            let one = s.regraph(&h.compose(&f)).map_err(|e| e.to_string())?;
            let residual = [two.v[0].clone() - one.v[0].clone(), two.v[1].clone() - one.v[1].clone()];
            ensure(residual.iter().all(Poly::is_zero), || format!("{d:?} regraph #{k}: nonzero residual"))?;
        }
    }
    Ok(format!("10 split, 10 elliptic, 20 regraph compositions exact through weight {bound}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 lie dimensions", c1_dimensions),
        ("2 cube roots of unity", c2_lambda),
        ("3 algebra and group axioms", c3_axioms),
        ("4 quadric invariance", c4_quadric_invariance),
        ("5 hermitian trichotomy", c5_hermitian),
        ("6 flatness", c6_flatness),
        ("7 chains", c7_chains),
        ("8 normal forms", c8_normal_forms),
        ("9 round trips", c9_round_trips),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let res = f();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("PASS  {name:<28} {msg} [{secs:.1}s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name:<28} {msg} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
