//! Chains on the quadric and integral curves of the chain distribution.
use hyperquadric::algebra::{AElem, Delta};
use hyperquadric::chains::{chain_on_quadric, integrate_chain_distribution, ChainSpec};
use hyperquadric::quadric_frame::P2Point;
use hyperquadric::sample;
use num_complex::Complex64;

fn main() {
    let d = Delta::Plus;
    let a = AElem::new(d, Complex64::new(0.3, 0.1), Complex64::new(0.1, -0.2));
    let grid: Vec<_> = (0..5).map(|k| AElem::new(d, (0.1 * k as f64).into(), 0.0.into())).collect();
    for p in chain_on_quadric(&ChainSpec { a: a.clone() }, &grid) {
        let p = p.unwrap();
        println!("U = {:?}  V = {:?}  residuals {:?}", p.u.a.re, p.v, p.residuals(&a));
    }
    let start = P2Point::random(d, &mut sample::rng(2));
    let path = integrate_chain_distribution(&start, &AElem::one(d), 1.0, 10).unwrap();
    println!("drift {:.1e} {:.1e}, projection residual {:.1e}", path.drift_tdg, path.drift_ggbar, path.projection_residual);
}
