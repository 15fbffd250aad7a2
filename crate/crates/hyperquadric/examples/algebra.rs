//! Arithmetic in 𝔄^δ and the cube roots of unity.
use hyperquadric::algebra::{lambda_set, AElem, Delta};

fn main() {
    for d in Delta::BOTH {
        let x = AElem::from_ints(d, (1, 2), (0, -1));
        let y = AElem::from_ints(d, (3, 0), (1, 1));
        println!("δ = {}: x·y = {:?}, x⁻¹ = {:?}", d.sign(), x.clone() * y, x.inv().ok());
        let l = lambda_set(d);
        println!("  {} elements with λλ̄ = λ³ = E", l.iter().filter(|x| ((*x).clone() * x.conj()).is_one() && x.pow(3).is_one()).count());
    }
}
