//! Normalize a random surface and read off κ and the matrix flag.
use hyperquadric::algebra::Delta;
use hyperquadric::normalform::{check, normalize};
use hyperquadric::sample;

fn main() {
    let mut r = sample::rng(1);
    for d in Delta::BOTH {
        let s = sample::non_matrix_surface(&mut r, d, 6, 5);
        let n = normalize(&s, &sample::initial_data(&mut r, d, 2), 6).unwrap();
        let rep = check(&n.normal_form).unwrap();
        println!("δ = {}: satisfied {}, matrix {}, κ = {}, ν = {:?}", d.sign(), rep.satisfied, rep.matrix_flag, rep.kappa, rep.nu);
        let s = sample::matrix_surface(&mut r, d, 6, 3);
        let rep = check(&normalize(&s, &sample::initial_data(&mut r, d, 2), 6).unwrap().normal_form).unwrap();
        println!("  matrix surface: matrix {}, κ = {}", rep.matrix_flag, rep.kappa);
    }
}
