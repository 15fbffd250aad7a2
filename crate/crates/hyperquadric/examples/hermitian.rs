//! Classify a pair of Hermitian forms and show the equivalence witness.
use hyperquadric::hermitian::{classify, Class, HermitianForm2};
use hyperquadric::scalar::Gaussian;

fn main() {
    let g = |re, im| Gaussian::new(re, im, 1);
    let h = HermitianForm2::canonical(Class::Elliptic).unwrap();
    let a = [[g(1, 1), g(2, 0)], [g(0, -1), g(1, 0)]];
    let b = [[g(2, 0), g(1, 0)], [g(1, 0), g(1, 0)]];
    let t = h.congruence(&a, &b);
    let c = classify(&t);
    println!("label {} (discriminant {}), witness residual {:?}", c.class, t.discriminant(), c.residual);
}
