//! Graded dimensions and a bracket in the symmetry algebra.
use hyperquadric::algebra::Delta;
use hyperquadric::lie;
use hyperquadric::scalar::Gaussian;

fn main() {
    for d in Delta::BOTH {
        println!("δ = {}: {:?}", d.sign(), lie::grade_dims(d));
        let b = lie::basis::<Gaussian>(d);
        let (x, y) = (&b[0], &b[b.len() - 1]);
        let br = lie::bracket(&x.matrix, &y.matrix);
        println!("  [{}{}, {}{}] has degree {:?}", x.block, x.unit, y.block, y.unit, lie::homogeneous_grade(&br));
    }
}
