//! The ring `K[β]/(β² − a_p β + p^{2k−1})` holding Satake-root expressions.
//!
//! `β = p^{(2k−1)/2} α_p` is an algebraic integer root of the Hecke
//! polynomial at `p`, so no formal square roots of `p` are needed.

use std::ops::{Add, Mul};

use num_bigint::BigInt;

use super::{QuadScalar, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaRing {
    pub p: u64,
    pub k: u32,
    pub a_p: QuadScalar,
    norm: QuadScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaRingElem {
    ring: AlphaRing,
    pub c0: QuadScalar,
    pub c1: QuadScalar,
}

impl AlphaRing {
    /// Ring for a weight-`2k` eigenform with `T(p)`-eigenvalue `a_p`.
    pub fn new(p: u64, k: u32, a_p: QuadScalar) -> Self {
        let norm = QuadScalar::from(BigInt::from(p).pow(2 * k - 1));
        Self { p, k, a_p, norm }
    }

    pub fn elem(&self, c0: QuadScalar, c1: QuadScalar) -> AlphaRingElem {
        AlphaRingElem { ring: self.clone(), c0, c1 }
    }

    pub fn scalar(&self, c: QuadScalar) -> AlphaRingElem {
        self.elem(c, QuadScalar::zero())
    }

    pub fn rational(&self, r: Rational) -> AlphaRingElem {
        self.scalar(r.into())
    }

    pub fn beta(&self) -> AlphaRingElem {
        self.elem(QuadScalar::zero(), QuadScalar::one())
    }

    /// The other root `a_p − β = p^{2k−1}/β`.
    pub fn beta_conj(&self) -> AlphaRingElem {
        self.elem(self.a_p.clone(), -QuadScalar::one())
    }

    /// `β β̄ = p^{2k−1}`.
    pub fn root_product(&self) -> &QuadScalar {
        &self.norm
    }
}

impl AlphaRingElem {
    pub fn ring(&self) -> &AlphaRing {
        &self.ring
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = self.ring.scalar(QuadScalar::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &QuadScalar) -> Self {
        self.ring.elem(&self.c0 * c, &self.c1 * c)
    }

    /// Applies the root swap `β ↦ a_p − β`.
    pub fn swap_roots(&self) -> Self {
        self.ring.elem(&self.c0 + &(&self.c1 * &self.ring.a_p), -&self.c1)
    }

    pub fn is_symmetric(&self) -> bool {
        self.c1.is_zero()
    }
}

impl<'a> Add<&'a AlphaRingElem> for &'a AlphaRingElem {
    type Output = AlphaRingElem;
    fn add(self, o: &AlphaRingElem) -> AlphaRingElem {
        assert_eq!(self.ring, o.ring, "mixing alpha rings");
        self.ring.elem(&self.c0 + &o.c0, &self.c1 + &o.c1)
    }
}

impl<'a> Mul<&'a AlphaRingElem> for &'a AlphaRingElem {
    type Output = AlphaRingElem;
    fn mul(self, o: &AlphaRingElem) -> AlphaRingElem {
        assert_eq!(self.ring, o.ring, "mixing alpha rings");
        let hi = &self.c1 * &o.c1;
        let c0 = &(&self.c0 * &o.c0) - &(&hi * &self.ring.norm);
        let c1 = &(&(&self.c0 * &o.c1) + &(&self.c1 * &o.c0)) + &(&hi * &self.ring.a_p);
        self.ring.elem(c0, c1)
    }
}

/// Returns the β-free value of a completed local factor.
pub fn alpha_symmetrize(e: &AlphaRingElem) -> Result<QuadScalar> {
    if !e.c1.is_zero() {
        return Err(Error::NonRationalLocalFactor(format!(
            "p = {}: {} + ({})·β",
            e.ring.p, e.c0, e.c1
        )));
    }
    Ok(e.c0.clone())
}
