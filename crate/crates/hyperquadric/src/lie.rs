//! The Lie algebra su^δ(2,1) of infinitesimal automorphisms of the quadric.
//!
//! Elements are 3×3 matrices over 𝔄^δ of the block form
//!
//! ```text
//! [ X   Y          Zc ]
//! [ W   -2i Im X   2iȲ ]
//! [ V   -(i/2)W̄    -X̄ ]
//! ```
//!
//! with `X, Y, W ∈ 𝔄^δ` and `Zc, V ∈ Re 𝔄^δ`, equivalently the traceless `M` with
//! `M J + J M* = 0` for the form [`hermitian_form`].
//!
//! The grading is by matrix position: entry `(r, c)` has degree `r - c`. Under the
//! row-vector action used throughout the crate the translations of the quadric are
//! generated by the `Y` and `Zc` blocks, so they span the negative part
//! `g₋₂ ⊕ g₋₁` and `V` spans `g₂`.

use std::fmt;

use thiserror::Error;

use crate::algebra::{AElem, Delta};
use crate::matrix::Mat3;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("block {0} must lie in Re 𝔄")]
    NotReal(Block),
    #[error("matrix is not in su(2,1)")]
    NotMember,
    #[error("grade {0} is outside -2..=2")]
    BadGrade(i32),
}

/// Names of the five blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Zc,
    Y,
    X,
    W,
    V,
}

impl Block {
    /// Degree of the block in the grading.
    pub fn grade(self) -> i32 {
        match self {
            Block::Zc => -2,
            Block::Y => -1,
            Block::X => 0,
            Block::W => 1,
            Block::V => 2,
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Block::Zc | Block::V)
    }

    pub const ALL: [Block; 5] = [Block::Zc, Block::Y, Block::X, Block::W, Block::V];
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Block::Zc => "Z",
            Block::Y => "Y",
            Block::X => "X",
            Block::W => "W",
            Block::V => "V",
        };
        f.write_str(s)
    }
}

/// The five blocks of an element.
#[derive(Clone, Debug, PartialEq)]
pub struct Blocks<S> {
    pub x: AElem<S>,
    pub y: AElem<S>,
    pub zc: AElem<S>,
    pub w: AElem<S>,
    pub v: AElem<S>,
}

impl<S: Scalar> Blocks<S> {
    pub fn get(&self, b: Block) -> &AElem<S> {
        match b {
            Block::Zc => &self.zc,
            Block::Y => &self.y,
            Block::X => &self.x,
            Block::W => &self.w,
            Block::V => &self.v,
        }
    }
}

/// The form `J = [[0, 0, -(i/2)E], [0, E, 0], [(i/2)E, 0, 0]]`; a point `x` lies on
/// the quadric iff `x J x* = 0`.
pub fn hermitian_form<S: Scalar>(delta: Delta) -> Mat3<S> {
    let mut j = Mat3::zero(delta);
    let half_i = S::i() * S::from_frac(1, 2);
    j.set(0, 2, AElem::scalar(delta, -half_i.clone()));
    j.set(1, 1, AElem::one(delta));
    j.set(2, 0, AElem::scalar(delta, half_i));
    j
}

/// Assemble a matrix from its blocks.
pub fn from_blocks<S: Scalar>(b: &Blocks<S>) -> Result<Mat3<S>, LieError> {
    for blk in [Block::Zc, Block::V] {
        if !b.get(blk).is_real() {
            return Err(LieError::NotReal(blk));
        }
    }
    let d = b.x.delta;
    let two_i = AElem::scalar(d, S::i() * S::from_i64(2));
    let half_i = AElem::scalar(d, S::i() * S::from_frac(1, 2));
    let mut m = Mat3::zero(d);
    m.set(0, 0, b.x.clone());
    m.set(0, 1, b.y.clone());
    m.set(0, 2, b.zc.clone());
    m.set(1, 0, b.w.clone());
    m.set(1, 1, b.x.conj() - b.x.clone());
    m.set(1, 2, two_i * b.y.conj());
    m.set(2, 0, b.v.clone());
    m.set(2, 1, -(half_i * b.w.conj()));
    m.set(2, 2, -b.x.conj());
    Ok(m)
}

/// Read the free blocks of a matrix (no membership check).
pub fn blocks<S: Scalar>(m: &Mat3<S>) -> Blocks<S> {
    Blocks {
        x: m.get(0, 0).clone(),
        y: m.get(0, 1).clone(),
        zc: m.get(0, 2).clone(),
        w: m.get(1, 0).clone(),
        v: m.get(2, 0).clone(),
    }
}

/// `M J + J M* = 0` and `tr M = 0`.
pub fn is_member<S: Scalar>(m: &Mat3<S>) -> bool {
    let j = hermitian_form::<S>(m.delta);
    (m.clone() * j.clone() + j * m.adjoint()).is_zero() && m.trace().is_zero()
}

pub fn bracket<S: Scalar>(a: &Mat3<S>, b: &Mat3<S>) -> Mat3<S> {
    a.commutator(b)
}

/// Degree of the matrix position `(r, c)`.
pub fn entry_grade(r: usize, c: usize) -> i32 {
    r as i32 - c as i32
}

/// The degree-`k` part of `m`.
pub fn grade_component<S: Scalar>(m: &Mat3<S>, k: i32) -> Result<Mat3<S>, LieError> {
    if !(-2..=2).contains(&k) {
        return Err(LieError::BadGrade(k));
    }
    Ok(Mat3::from_fn(m.delta, |r, c| if entry_grade(r, c) == k { m.get(r, c).clone() } else { AElem::zero(m.delta) }))
}

/// The degree of a nonzero homogeneous element.
pub fn homogeneous_grade<S: Scalar>(m: &Mat3<S>) -> Option<i32> {
    let mut found = None;
    for r in 0..3 {
        for c in 0..3 {
            if !m.get(r, c).is_zero() {
                let g = entry_grade(r, c);
                match found {
                    None => found = Some(g),
                    Some(h) if h != g => return None,
                    _ => {}
                }
            }
        }
    }
    found
}

/// A basis vector together with its provenance.
#[derive(Clone, Debug)]
pub struct BasisElem<S> {
    pub block: Block,
    /// Which of `E, J, iE, iJ` (or `E, J` for real blocks) fills the block.
    pub unit: &'static str,
    pub matrix: Mat3<S>,
}

impl<S> BasisElem<S> {
    pub fn grade(&self) -> i32 {
        self.block.grade()
    }
}

fn units<S: Scalar>(delta: Delta, real: bool) -> Vec<(&'static str, AElem<S>)> {
    let e = AElem::one(delta);
    let j = AElem::j(delta);
    let i = AElem::scalar(delta, S::i());
    let mut out = vec![("E", e.clone()), ("J", j.clone())];
    if !real {
        out.push(("iE", i.clone() * e));
        out.push(("iJ", i * j));
    }
    out
}

/// The fixed 16-element real basis, ordered by degree `-2, -1, 0, 1, 2`.
pub fn basis<S: Scalar>(delta: Delta) -> Vec<BasisElem<S>> {
    let mut out = Vec::with_capacity(16);
    for blk in Block::ALL {
        for (unit, val) in units::<S>(delta, blk.is_real()) {
            let z = AElem::zero(delta);
            let mut b = Blocks { x: z.clone(), y: z.clone(), zc: z.clone(), w: z.clone(), v: z };
            match blk {
                Block::Zc => b.zc = val,
                Block::Y => b.y = val,
                Block::X => b.x = val,
                Block::W => b.w = val,
                Block::V => b.v = val,
            }
            let matrix = from_blocks(&b).expect("basis blocks are real where required");
            out.push(BasisElem { block: blk, unit, matrix });
        }
    }
    out
}

/// Real dimensions of the graded pieces, as `(degree, dim)` pairs.
pub fn grade_dims(delta: Delta) -> Vec<(i32, usize)> {
    let b = basis::<crate::scalar::Gaussian>(delta);
    (-2..=2).map(|k| (k, b.iter().filter(|e| e.grade() == k).count())).collect()
}

/// Real coordinates of a member in the basis of [`basis`].
pub fn coordinates<S: Scalar>(m: &Mat3<S>) -> Result<Vec<S>, LieError> {
    if !is_member(m) {
        return Err(LieError::NotMember);
    }
    let b = blocks(m);
    let mut out = Vec::with_capacity(16);
    for blk in Block::ALL {
        let x = b.get(blk);
        out.push(x.a.re());
        out.push(x.b.re());
        if !blk.is_real() {
            out.push(x.a.im());
            out.push(x.b.im());
        }
    }
    Ok(out)
}

/// Rebuild an element from real coordinates.
pub fn from_coordinates<S: Scalar>(delta: Delta, coords: &[S]) -> Mat3<S> {
    basis::<S>(delta)
        .iter()
        .zip(coords)
        .fold(Mat3::zero(delta), |acc, (e, c)| acc + e.matrix.scale(&AElem::scalar(delta, c.clone())))
}
