//! Translations and isotropies acting on the quadric, with the σ normalizers.
use hyperquadric::algebra::{AElem, Delta};
use hyperquadric::group::{self, Action, IsotropyParams};
use hyperquadric::scalar::Gaussian;

fn main() {
    let d = Delta::Minus;
    let z0 = AElem::from_ints(d, (1, 0), (0, 1));
    let w0 = AElem::from_ints(d, (2, 0), (1, 0)) + AElem::scalar(d, Gaussian::new(0, 1, 1)) * z0.clone() * z0.conj();
    let t = group::translation(&z0, &w0).unwrap();
    let sigma = AElem::from_ints(d, (2, 1), (1, -1));
    let c = sigma.conj() * sigma.pow(2).inv().unwrap();
    let iso = group::isotropy(&IsotropyParams { sigma, c: c.clone(), a: AElem::from_ints(d, (0, 1), (1, 0)), r: AElem::from_ints(d, (1, 0), (0, 0)) }).unwrap();
    let g = group::compose(&iso, &t);
    println!("member: {}", group::is_member(&g));
    match group::act(&g, &AElem::zero(d), &AElem::zero(d)) {
        Action::Point { z, w } => println!("origin ↦ ({z:?}, {w:?}), on quadric: {}", group::on_quadric(&z, &w)),
        Action::AtInfinity => println!("origin ↦ infinity"),
    }
    println!("σ solutions: {}", group::solve_sigma(&c.to_cyclotomic()).unwrap().len());
}
