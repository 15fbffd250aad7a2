//! Scalar fields used by the algebra layer.
//!
//! Three fields implement [`Scalar`]:
//!
//! * [`Gaussian`] — exact elements of ℚ(i), stored as `(re + im·i) / den` with a
//!   machine-word fast path that promotes to big integers on overflow;
//! * [`Cyclotomic`] — exact elements of ℚ(i, √3), stored as `a + b·√3` with
//!   Gaussian `a`, `b`; needed because the cube roots of unity are not Gaussian;
//! * [`Complex64`] — IEEE doubles for the numeric code paths.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative field with complex conjugation.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    /// `true` for the exact fields.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    /// The imaginary unit.
    fn i() -> Self;
    fn from_frac(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn to_c64(&self) -> Complex64;
    /// Principal square root when it exists in the field.
    fn sqrt(&self) -> Option<Self>;
    /// Sign of a real value; `None` when the value is not real.
    fn real_sign(&self) -> Option<Ordering>;

    fn from_i64(n: i64) -> Self {
        Self::from_frac(n, 1)
    }
    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }
    fn re(&self) -> Self {
        (self.clone() + self.conj()) * Self::from_frac(1, 2)
    }
    /// `(x - x̄) / 2i`.
    fn im(&self) -> Self {
        (self.clone() - self.conj()) * Self::i() * Self::from_frac(-1, 2)
    }
    fn is_real(&self) -> bool {
        self.im().is_zero()
    }
    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|o| self.clone() * o)
    }
    fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc *= self.clone();
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Small { re: i64, im: i64, den: i64 },
    Big { re: BigInt, im: BigInt, den: BigInt },
}

/// An exact element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gaussian(Repr);

impl Gaussian {
    /// `(re + im·i) / den`; panics if `den == 0`.
    pub fn new(re: i64, im: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(re as i128, im as i128, den as i128)
    }

    /// `re_num/re_den + (im_num/im_den)·i`.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::from_big_parts(
            BigInt::from(re_num),
            BigInt::from(re_den),
            BigInt::from(im_num),
            BigInt::from(im_den),
        )
        .expect("zero denominator")
    }

    pub fn from_big_parts(rn: BigInt, rd: BigInt, inum: BigInt, id: BigInt) -> Option<Self> {
        if rd.is_zero() || id.is_zero() {
            return None;
        }
        let den = &rd * &id;
        Some(Self::from_big(rn * id, inum * rd, den))
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational) -> Self {
        Self::from_big_parts(
            re.numer().clone(),
            re.denom().clone(),
            im.numer().clone(),
            im.denom().clone(),
        )
        .expect("rational with zero denominator")
    }

    fn from_i128(re: i128, im: i128, den: i128) -> Self {
        let (mut re, mut im, mut den) = (re, im, den);
        if den < 0 {
            match (re.checked_neg(), im.checked_neg(), den.checked_neg()) {
                (Some(a), Some(b), Some(c)) => {
                    re = a;
                    im = b;
                    den = c;
                }
                _ => return Self::from_big(re.into(), im.into(), den.into()),
            }
        }
        let g = re.gcd(&im).gcd(&den);
        if g > 1 {
            re /= g;
            im /= g;
            den /= g;
        }
        if re == 0 && im == 0 {
            den = 1;
        }
        match (i64::try_from(re), i64::try_from(im), i64::try_from(den)) {
            (Ok(re), Ok(im), Ok(den)) => Gaussian(Repr::Small { re, im, den }),
            _ => Gaussian(Repr::Big { re: re.into(), im: im.into(), den: den.into() }),
        }
    }

    fn from_big(re: BigInt, im: BigInt, den: BigInt) -> Self {
        let (mut re, mut im, mut den) = (re, im, den);
        if den.is_negative() {
            re = -re;
            im = -im;
            den = -den;
        }
        let g = re.gcd(&im).gcd(&den);
        if !g.is_one() && !g.is_zero() {
            re /= &g;
            im /= &g;
            den /= &g;
        }
        if re.is_zero() && im.is_zero() {
            den = BigInt::one();
        }
        match (re.to_i64(), im.to_i64(), den.to_i64()) {
            (Some(re), Some(im), Some(den)) => Gaussian(Repr::Small { re, im, den }),
            _ => Gaussian(Repr::Big { re, im, den }),
        }
    }

    fn big(&self) -> (BigInt, BigInt, BigInt) {
        match &self.0 {
            Repr::Small { re, im, den } => ((*re).into(), (*im).into(), (*den).into()),
            Repr::Big { re, im, den } => (re.clone(), im.clone(), den.clone()),
        }
    }

    pub fn re_rational(&self) -> BigRational {
        let (re, _, den) = self.big();
        BigRational::new(re, den)
    }

    pub fn im_rational(&self) -> BigRational {
        let (_, im, den) = self.big();
        BigRational::new(im, den)
    }

    /// Real and imaginary parts as reduced `(num, den)` pairs.
    pub fn parts(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        let re = self.re_rational();
        let im = self.im_rational();
        (re.numer().clone(), re.denom().clone(), im.numer().clone(), im.denom().clone())
    }

    /// Nearest Gaussian rational with both denominators at most `max_den`.
    pub fn approximate(z: Complex64, max_den: i64) -> Option<Self> {
        let (rn, rd) = best_rational(z.re, max_den)?;
        let (inum, id) = best_rational(z.im, max_den)?;
        Some(Self::from_parts(rn, rd, inum, id))
    }

    /// Size of the stored integers, used to keep random tests cheap.
    pub fn height(&self) -> u64 {
        match &self.0 {
            Repr::Small { re, im, den } => re.unsigned_abs().max(im.unsigned_abs()).max(den.unsigned_abs()),
            Repr::Big { .. } => u64::MAX,
        }
    }
}

/// Continued-fraction approximation of `x` with denominator at most `max_den`.
fn best_rational(x: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        let ai = a as i64;
        let p2 = ai.checked_mul(p1)?.checked_add(p0)?;
        let q2 = ai.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        None
    } else {
        Some((p1, q1))
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        if let (Repr::Small { re: a, im: b, den: d }, Repr::Small { re: c, im: e, den: f }) = (&self.0, &o.0) {
            let (a, b, d, c, e, f) = (*a as i128, *b as i128, *d as i128, *c as i128, *e as i128, *f as i128);
            if d == f {
                return Gaussian::from_i128(a + c, b + e, d);
            }
            return Gaussian::from_i128(a * f + c * d, b * f + e * d, d * f);
        }
        let (a, b, d) = self.big();
        let (c, e, f) = o.big();
        Gaussian::from_big(&a * &f + &c * &d, &b * &f + &e * &d, d * f)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        self + (-o)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        match self.0 {
            Repr::Small { re, im, den } if re != i64::MIN && im != i64::MIN => {
                Gaussian(Repr::Small { re: -re, im: -im, den })
            }
            _ => {
                let (a, b, d) = self.big();
                Gaussian::from_big(-a, -b, d)
            }
        }
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        if let (Repr::Small { re: a, im: b, den: d }, Repr::Small { re: c, im: e, den: f }) = (&self.0, &o.0) {
            let (a, b, d, c, e, f) = (*a as i128, *b as i128, *d as i128, *c as i128, *e as i128, *f as i128);
            let re = (a * c).checked_sub(b * e);
            let im = (a * e).checked_add(b * c);
            if let (Some(re), Some(im)) = (re, im) {
                return Gaussian::from_i128(re, im, d * f);
            }
        }
        let (a, b, d) = self.big();
        let (c, e, f) = o.big();
        Gaussian::from_big(&a * &c - &b * &e, &a * &e + &b * &c, d * f)
    }
}

impl AddAssign for Gaussian {
    fn add_assign(&mut self, o: Gaussian) {
        *self = std::mem::take(self) + o;
    }
}
impl SubAssign for Gaussian {
    fn sub_assign(&mut self, o: Gaussian) {
        *self = std::mem::take(self) - o;
    }
}
impl MulAssign for Gaussian {
    fn mul_assign(&mut self, o: Gaussian) {
        *self = std::mem::take(self) * o;
    }
}

impl Default for Gaussian {
    fn default() -> Self {
        Gaussian(Repr::Small { re: 0, im: 0, den: 1 })
    }
}

impl Scalar for Gaussian {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Gaussian(Repr::Small { re: 1, im: 0, den: 1 })
    }
    fn i() -> Self {
        Gaussian(Repr::Small { re: 0, im: 1, den: 1 })
    }
    fn from_frac(num: i64, den: i64) -> Self {
        Gaussian::new(num, 0, den)
    }
    fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small { re, im, .. } => *re == 0 && *im == 0,
            Repr::Big { .. } => false,
        }
    }
    fn conj(&self) -> Self {
        match &self.0 {
            Repr::Small { re, im, den } if *im != i64::MIN => Gaussian(Repr::Small { re: *re, im: -im, den: *den }),
            _ => {
                let (a, b, d) = self.big();
                Gaussian::from_big(a, -b, d)
            }
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Repr::Small { re, im, den } = &self.0 {
            let (r, s, d) = (*re as i128, *im as i128, *den as i128);
            if let (Some(n2), Some(a), Some(b)) = (
                (r * r).checked_add(s * s),
                d.checked_mul(r),
                d.checked_mul(s).and_then(|x| x.checked_neg()),
            ) {
                return Some(Gaussian::from_i128(a, b, n2));
            }
        }
        let (r, s, d) = self.big();
        Some(Gaussian::from_big(&d * &r, -(&d * &s), &r * &r + &s * &s))
    }
    fn to_c64(&self) -> Complex64 {
        match &self.0 {
            Repr::Small { re, im, den } => Complex64::new(*re as f64 / *den as f64, *im as f64 / *den as f64),
            Repr::Big { .. } => Complex64::new(
                self.re_rational().to_f64().unwrap_or(f64::NAN),
                self.im_rational().to_f64().unwrap_or(f64::NAN),
            ),
        }
    }
    fn sqrt(&self) -> Option<Self> {
        let re = self.re_rational();
        let im = self.im_rational();
        let modulus = rational_sqrt(&(&re * &re + &im * &im))?;
        let half = BigRational::new(1.into(), 2.into());
        let x = rational_sqrt(&((&modulus + &re) * &half))?;
        let mut y = rational_sqrt(&((&modulus - &re) * &half))?;
        if im.is_negative() {
            y = -y;
        }
        Some(Gaussian::from_rationals(&x, &y))
    }
    fn real_sign(&self) -> Option<Ordering> {
        match &self.0 {
            Repr::Small { re, im, .. } => (*im == 0).then(|| re.cmp(&0)),
            Repr::Big { re, im, .. } => im.is_zero().then(|| re.sign().cmp(&num_bigint::Sign::NoSign)),
        }
    }
}

impl fmt::Debug for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = self.re_rational();
        let im = self.im_rational();
        match (re.is_zero(), im.is_zero()) {
            (_, true) => write!(f, "{re}"),
            (true, false) => write!(f, "{im}i"),
            (false, false) if im.is_negative() => write!(f, "{re}-{}i", -im),
            _ => write!(f, "{re}+{im}i"),
        }
    }
}

// ---------------------------------------------------------------------------
// ℚ(i, √3)

/// An exact element `a + b·√3` of ℚ(i, √3), the twelfth cyclotomic field.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclotomic {
    pub a: Gaussian,
    pub b: Gaussian,
}

impl Cyclotomic {
    pub fn new(a: Gaussian, b: Gaussian) -> Self {
        Cyclotomic { a, b }
    }

    /// √3 itself.
    pub fn sqrt3() -> Self {
        Cyclotomic { a: Gaussian::zero(), b: Gaussian::one() }
    }

    /// The primitive cube root of unity `(-1 + i√3)/2`.
    pub fn omega() -> Self {
        Cyclotomic { a: Gaussian::from_frac(-1, 2), b: Gaussian::new(0, 1, 2) }
    }

    /// The field automorphism fixing `i` and sending `√3 ↦ -√3`.
    pub fn galois(&self) -> Self {
        Cyclotomic { a: self.a.clone(), b: -self.b.clone() }
    }

    /// The numeric value of the Galois conjugate.
    pub fn galois_c64(&self) -> Complex64 {
        self.galois().to_c64()
    }

    /// Rebuild an element from approximate values of `x` and `galois(x)`.
    pub fn reconstruct(x: Complex64, x_galois: Complex64, max_den: i64) -> Option<Self> {
        let a = Gaussian::approximate((x + x_galois) * 0.5, max_den)?;
        let b = Gaussian::approximate((x - x_galois) / (2.0 * 3f64.sqrt()), max_den)?;
        Some(Cyclotomic { a, b })
    }
}

impl From<Gaussian> for Cyclotomic {
    fn from(a: Gaussian) -> Self {
        Cyclotomic { a, b: Gaussian::zero() }
    }
}

impl Add for Cyclotomic {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cyclotomic { a: self.a + o.a, b: self.b + o.b }
    }
}
impl Sub for Cyclotomic {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cyclotomic { a: self.a - o.a, b: self.b - o.b }
    }
}
impl Neg for Cyclotomic {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclotomic { a: -self.a, b: -self.b }
    }
}
impl Mul for Cyclotomic {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.b.is_zero() && o.b.is_zero() {
            return Cyclotomic { a: self.a * o.a, b: Gaussian::zero() };
        }
        let three = Gaussian::from_i64(3);
        Cyclotomic {
            a: self.a.clone() * o.a.clone() + three * self.b.clone() * o.b.clone(),
            b: self.a * o.b + self.b * o.a,
        }
    }
}
impl AddAssign for Cyclotomic {
    fn add_assign(&mut self, o: Self) {
        *self = std::mem::take(self) + o;
    }
}
impl SubAssign for Cyclotomic {
    fn sub_assign(&mut self, o: Self) {
        *self = std::mem::take(self) - o;
    }
}
impl MulAssign for Cyclotomic {
    fn mul_assign(&mut self, o: Self) {
        *self = std::mem::take(self) * o;
    }
}

impl Scalar for Cyclotomic {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Gaussian::one().into()
    }
    fn i() -> Self {
        Gaussian::i().into()
    }
    fn from_frac(num: i64, den: i64) -> Self {
        Gaussian::from_frac(num, den).into()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn conj(&self) -> Self {
        Cyclotomic { a: self.a.conj(), b: self.b.conj() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (a + b√3)(a - b√3) = a² - 3b², nonzero because √3 ∉ ℚ(i).
        let norm = self.a.clone() * self.a.clone() - Gaussian::from_i64(3) * self.b.clone() * self.b.clone();
        let ni = norm.inv()?;
        Some(Cyclotomic { a: self.a.clone() * ni.clone(), b: -self.b.clone() * ni })
    }
    fn to_c64(&self) -> Complex64 {
        self.a.to_c64() + self.b.to_c64() * 3f64.sqrt()
    }
    fn sqrt(&self) -> Option<Self> {
        if self.b.is_zero() {
            self.a.sqrt().map(Into::into)
        } else {
            None
        }
    }
    fn real_sign(&self) -> Option<Ordering> {
        if !self.a.is_real() || !self.b.is_real() {
            return None;
        }
        let v = self.to_c64().re;
        if self.is_zero() {
            Some(Ordering::Equal)
        } else {
            v.partial_cmp(&0.0)
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({}) + ({})√3", self.a, self.b)
        }
    }
}

// ---------------------------------------------------------------------------
// Doubles

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_frac(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        (!Scalar::is_zero(self)).then(|| Complex64::inv(self))
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn sqrt(&self) -> Option<Self> {
        Some(Complex64::sqrt(*self))
    }
    fn real_sign(&self) -> Option<Ordering> {
        (self.im == 0.0).then(|| self.re.partial_cmp(&0.0)).flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_fast_path_promotes_on_overflow() {
        let big = Gaussian::new(i64::MAX, 3, 1);
        let sq = big.clone() * big.clone();
        assert!(matches!(sq.0, Repr::Big { .. }));
        let back = sq * big.inv().unwrap();
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
    }

    #[test]
    fn gaussian_is_canonical() {
        assert_eq!(Gaussian::new(2, 4, 6), Gaussian::new(-1, -2, -3));
        assert_eq!(Gaussian::new(0, 0, 7), Gaussian::zero());
        assert_eq!(Gaussian::from_parts(1, 2, 1, 3), Gaussian::new(3, 2, 6));
    }

    #[test]
    fn gaussian_inverse_and_sqrt() {
        let z = Gaussian::new(3, -4, 5);
        assert!((z.clone() * z.inv().unwrap()).is_one());
        let w = Gaussian::new(3, 4, 1); // (2 + i)²
        assert_eq!(w.sqrt(), Some(Gaussian::new(2, 1, 1)));
        assert_eq!(Gaussian::from_i64(2).sqrt(), None);
        assert_eq!(Gaussian::from_i64(-4).sqrt(), Some(Gaussian::new(0, 2, 1)));
    }

    #[test]
    fn omega_is_a_primitive_cube_root_of_unity() {
        let w = Cyclotomic::omega();
        assert!(!w.is_one());
        assert!(w.pow(3).is_one());
        assert!((w.clone() * w.conj()).is_one());
        let s = Cyclotomic::sqrt3();
        assert_eq!(s.clone() * s, Cyclotomic::from_i64(3));
    }

    #[test]
    fn cyclotomic_reconstruction_roundtrip() {
        let x = Cyclotomic::new(Gaussian::new(1, -2, 7), Gaussian::new(3, 1, 4));
        let y = Cyclotomic::reconstruct(x.to_c64(), x.galois_c64(), 1000).unwrap();
        assert_eq!(x, y);
    }
}
