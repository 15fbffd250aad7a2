//! Sparse polynomials in six weighted slots.
//!
//! Surface series use the slots `(z₁, z₂, z̄₁, z̄₂, u₁, u₂)`; holomorphic jets
//! reuse the same type with `(z₁, z₂, ·, ·, w₁, w₂)`. Slots 0–3 have weight 1 and
//! slots 4–5 weight 2.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::scalar::Scalar;

pub const SLOTS: usize = 6;
pub const SLOT_WEIGHT: [u32; SLOTS] = [1, 1, 1, 1, 2, 2];

/// Exponent vector packed eight bits per slot, slot 0 most significant, so the
/// derived order is lexicographic in the exponents.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn new(e: [u8; SLOTS]) -> Self {
        let mut x = 0u64;
        for (i, &k) in e.iter().enumerate() {
            debug_assert!(k < 128, "exponent overflow");
            x |= (k as u64) << Self::shift(i);
        }
        Mono(x)
    }

    fn shift(i: usize) -> u32 {
        8 * (SLOTS - 1 - i) as u32
    }

    pub fn var(i: usize) -> Self {
        Mono(1 << Self::shift(i))
    }

    pub fn get(self, i: usize) -> u8 {
        (self.0 >> Self::shift(i)) as u8
    }

    pub fn exps(self) -> [u8; SLOTS] {
        std::array::from_fn(|i| self.get(i))
    }

    pub fn weight(self) -> u32 {
        (0..SLOTS).map(|i| self.get(i) as u32 * SLOT_WEIGHT[i]).sum()
    }

    pub fn degree(self) -> u32 {
        (0..SLOTS).map(|i| self.get(i) as u32).sum()
    }

    pub fn mul(self, o: Mono) -> Mono {
        Mono(self.0 + o.0)
    }

    /// `self / x_i`, if `x_i` divides.
    pub fn lower(self, i: usize) -> Option<Mono> {
        (self.get(i) > 0).then(|| Mono(self.0 - (1 << Self::shift(i))))
    }

    /// Exchange `z_k ↔ z̄_k`.
    pub fn bar(self) -> Mono {
        let e = self.exps();
        Mono::new([e[2], e[3], e[0], e[1], e[4], e[5]])
    }

    /// Exchange `z_k ↔ z̄_k` and the two last slots.
    pub fn bar_all(self) -> Mono {
        let e = self.exps();
        Mono::new([e[2], e[3], e[0], e[1], e[5], e[4]])
    }

    /// Only the given slots occur.
    pub fn supported_in(self, slots: &[usize]) -> bool {
        (0..SLOTS).all(|i| self.get(i) == 0 || slots.contains(&i))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; SLOTS] = ["z1", "z2", "zb1", "zb2", "u1", "u2"];
        if *self == Mono::ONE {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, k) in self.exps().iter().enumerate() {
            if *k > 0 {
                if !first {
                    write!(f, "·")?;
                }
                first = false;
                write!(f, "{}", NAMES[i])?;
                if *k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// A polynomial with coefficients in `S`. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct Poly<S> {
    terms: BTreeMap<Mono, S>,
}

impl<S: Scalar> Default for Poly<S> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: S) -> Self {
        Self::term(Mono::ONE, c)
    }

    pub fn var(i: usize) -> Self {
        Self::term(Mono::var(i), S::one())
    }

    pub fn term(m: Mono, c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, S)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn coeff(&self, m: Mono) -> S {
        self.terms.get(&m).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono, &S)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_weight(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.weight()).min()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.weight()).max()
    }

    pub fn filter(&self, mut keep: impl FnMut(Mono) -> bool) -> Self {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(**m)).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn truncate(&self, bound: u32) -> Self {
        self.filter(|m| m.weight() <= bound)
    }

    pub fn weight_part(&self, w: u32) -> Self {
        self.filter(|m| m.weight() == w)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (*m, x.clone() * c.clone())).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&S) -> S) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn map_monos(&self, f: impl Fn(Mono) -> Mono) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(*m), c.clone())))
    }

    /// Complex conjugate of the function when slots 4, 5 are real variables.
    pub fn bar(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.bar(), c.conj())).collect() }
    }

    /// Complex conjugate when slot 5 is the conjugate of slot 4.
    pub fn bar_all(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.bar_all(), c.conj())).collect() }
    }

    /// `(p + p̄)/2`.
    pub fn real_part(&self) -> Self {
        (self.clone() + self.bar()).scale(&S::from_frac(1, 2))
    }

    /// `(p - p̄)/2i`.
    pub fn imag_part(&self) -> Self {
        (self.clone() - self.bar()).scale(&(S::i() * S::from_frac(-1, 2)))
    }

    pub fn derivative(&self, slot: usize) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let k = m.get(slot);
            m.lower(slot).map(|l| (l, c.clone() * S::from_i64(k as i64)))
        }))
    }

    /// Product truncated to weight `bound`.
    pub fn mul_trunc(&self, o: &Self, bound: u32) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut buckets: Vec<Vec<(Mono, &S)>> = vec![Vec::new(); bound as usize + 1];
        for (m, c) in &o.terms {
            let w = m.weight();
            if w <= bound {
                buckets[w as usize].push((*m, c));
            }
        }
        let mut acc: HashMap<Mono, S> = HashMap::new();
        for (m, c) in &self.terms {
            let wa = m.weight();
            if wa > bound {
                continue;
            }
            for bucket in &buckets[..=(bound - wa) as usize] {
                for (m2, c2) in bucket {
                    let x = c.clone() * (*c2).clone();
                    match acc.get_mut(&m.mul(*m2)) {
                        Some(y) => *y += x,
                        None => {
                            acc.insert(m.mul(*m2), x);
                        }
                    }
                }
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow_trunc(&self, n: u32, bound: u32) -> Self {
        let mut acc = Self::constant(S::one());
        for _ in 0..n {
            acc = acc.mul_trunc(self, bound);
        }
        acc
    }

    /// Substitute `subs[i]` for slot `i`, truncating at `bound`.
    pub fn compose(&self, subs: &[Poly<S>; SLOTS], bound: u32) -> Self {
        Self::compose_many(&[self], subs, bound).pop().expect("one output")
    }

    /// [`Poly::compose`] for several outer polynomials sharing one substitution.
    ///
    /// Monomial powers are built incrementally and shared between all terms, so
    /// the cost is one truncated product per distinct monomial prefix.
    pub fn compose_many(outers: &[&Self], subs: &[Poly<S>; SLOTS], bound: u32) -> Vec<Self> {
        let mut cache: HashMap<Mono, Poly<S>> = HashMap::new();
        cache.insert(Mono::ONE, Self::constant(S::one()));
        let mut needed: Vec<Mono> = Vec::new();
        let mut seen: HashSet<Mono> = HashSet::new();
        for p in outers {
            for m in p.terms.keys() {
                let mut cur = *m;
                while cur != Mono::ONE && seen.insert(cur) {
                    needed.push(cur);
                    let s = (0..SLOTS).find(|&i| cur.get(i) > 0).expect("non-constant");
                    cur = cur.lower(s).expect("slot present");
                }
            }
        }
        needed.sort_by_key(|m| m.degree());
        for m in needed {
            let s = (0..SLOTS).find(|&i| m.get(i) > 0).expect("non-constant");
            let prev = m.lower(s).expect("slot present");
            let p = cache[&prev].mul_trunc(&subs[s], bound);
            cache.insert(m, p);
        }
        outers
            .iter()
            .map(|p| {
                let mut acc: HashMap<Mono, S> = HashMap::new();
                for (m, c) in &p.terms {
                    for (m2, c2) in &cache[m].terms {
                        let x = c.clone() * c2.clone();
                        match acc.get_mut(m2) {
                            Some(y) => *y += x,
                            None => {
                                acc.insert(*m2, x);
                            }
                        }
                    }
                }
                Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
            })
            .collect()
    }

    pub fn to_c64(&self) -> Poly<num_complex::Complex64> {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.to_c64())).collect() }
    }

    /// Evaluate at a point given by the six slot values.
    pub fn eval(&self, x: &[S; SLOTS]) -> S {
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, xi) in x.iter().enumerate() {
                t *= xi.pow(m.get(i) as u32);
            }
            acc += t;
        }
        acc
    }
}

impl<S: Scalar> std::ops::Add for Poly<S> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<S: Scalar> std::ops::Sub for Poly<S> {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        for (m, c) in o.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<S: Scalar> std::ops::Neg for Poly<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})·{m:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gaussian;

    type P = Poly<Gaussian>;

    #[test]
    fn packing_and_weight() {
        let m = Mono::new([1, 0, 2, 0, 1, 3]);
        assert_eq!(m.exps(), [1, 0, 2, 0, 1, 3]);
        assert_eq!(m.weight(), 1 + 2 + 2 + 6);
        assert_eq!(m.bar().exps(), [2, 0, 1, 0, 1, 3]);
        assert!(Mono::new([1, 0, 0, 0, 0, 0]) > Mono::new([0, 5, 0, 0, 0, 0]));
    }

    #[test]
    fn truncated_product_drops_high_weight() {
        let p = P::var(0) + P::var(4);
        let sq = p.mul_trunc(&p, 3);
        assert_eq!(sq.coeff(Mono::new([2, 0, 0, 0, 0, 0])), Gaussian::one());
        assert_eq!(sq.coeff(Mono::new([1, 0, 0, 0, 1, 0])), Gaussian::from_i64(2));
        assert!(sq.coeff(Mono::new([0, 0, 0, 0, 2, 0])).is_zero());
        assert_eq!(P::var(0).mul_trunc(&P::var(2), 2).max_weight(), Some(2));
    }

    #[test]
    fn compose_matches_direct_powers() {
        let x = P::var(0) + P::var(1).scale(&Gaussian::i()) + P::var(4);
        let y = P::var(2) - P::var(5).scale(&Gaussian::from_i64(3));
        let outer = P::term(Mono::new([2, 0, 0, 0, 1, 0]), Gaussian::from_i64(5))
            + P::term(Mono::new([1, 0, 0, 0, 0, 0]), Gaussian::one());
        let subs = [x.clone(), P::var(1), P::var(2), P::var(3), y.clone(), P::var(5)];
        let got = outer.compose(&subs, 6);
        let want = (x.pow_trunc(2, 6).mul_trunc(&y, 6)).scale(&Gaussian::from_i64(5)) + x;
        assert_eq!(got, want.truncate(6));
    }

    #[test]
    fn bar_is_an_involution() {
        let p = P::term(Mono::new([1, 0, 0, 2, 1, 0]), Gaussian::new(1, 2, 3));
        assert_eq!(p.bar().bar(), p);
        assert_eq!(p.bar_all().bar_all(), p);
        let r = p.clone() + p.bar();
        assert_eq!(r.real_part(), r);
        assert!(r.imag_part().is_zero());
    }
}
