//! Structure-equation residual of the Cartan connection on the quadric.
use hyperquadric::algebra::Delta;
use hyperquadric::quadric_frame::flatness_report;
use hyperquadric::sample;

fn main() {
    let mut r = sample::rng(0);
    for d in Delta::BOTH {
        let rep = flatness_report(d, 20, 1e-4, &mut r);
        println!("{}", serde_json::to_string(&rep).unwrap());
    }
}
