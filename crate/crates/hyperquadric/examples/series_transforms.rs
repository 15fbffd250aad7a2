//! Model charts of a defining series and their inverses.
use hyperquadric::algebra::{AElem, Delta};
use hyperquadric::series::{elliptic_transform, elliptic_transform_inverse, split_transform, SurfaceSeries};

fn main() {
    let s = SurfaceSeries::matrix_surface(Delta::Plus, 6, &[((2, 1, 1), AElem::from_ints(Delta::Plus, (1, 0), (0, 1)))]);
    let t = split_transform(&s).unwrap();
    println!("split chart:\n  v1* = {:?}\n  v2* = {:?}", t.v[0], t.v[1]);
    let s = SurfaceSeries::matrix_surface(Delta::Minus, 6, &[((2, 2, 1), AElem::from_ints(Delta::Minus, (1, 0), (0, 0)))]);
    let v = elliptic_transform(&s).unwrap();
    println!("complex chart: 𝒱 = {v:?}");
    println!("round trip exact: {}", elliptic_transform_inverse(&v, 6).unwrap() == s);
}
