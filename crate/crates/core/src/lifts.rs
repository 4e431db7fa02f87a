//! Fourier coefficients of the genus-4 Duke–Imamoğlu–Ikeda lift and of its
//! Ikeda–Miyawaki restriction to genus 3.

use rayon::prelude::*;

use crate::kernel::arith::factorize;
use crate::kernel::{alpha_symmetrize, AlphaRing, QuadScalar};
use crate::modforms::{cusp_dim, Eigenform, PlusForm};
use crate::qforms::{enumerate_r_block, HalfIntMat};
use crate::siegel::fp_polynomial;
use crate::{Error, Result};

/// Half the genus of the lift minus one: the lift lives on `Sp_{2n+2}`.
const N: u32 = 1;

/// A Shimura-matched pair `(h, f)` with `c_h(1) = 1`.
#[derive(Clone, Debug)]
pub struct LiftContext {
    k: u32,
    h: PlusForm,
    f: Eigenform,
}

impl LiftContext {
    pub fn new(h: PlusForm, f: Eigenform) -> Result<Self> {
        let k = h.k();
        if f.weight() != 2 * k {
            return Err(Error::Domain(format!("f has weight {}, expected {}", f.weight(), 2 * k)));
        }
        Ok(Self { k, h, f })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn h(&self) -> &PlusForm {
        &self.h
    }

    pub fn f(&self) -> &Eigenform {
        &self.f
    }

    /// The same lift of `c · h`.
    pub fn with_scaled_h(&self, c: &QuadScalar) -> Self {
        Self { k: self.k, h: self.h.scale(c), f: self.f.clone() }
    }

    /// Both forms conjugated by `√d ↦ −√d`.
    pub fn conj(&self) -> Self {
        Self { k: self.k, h: self.h.conj(), f: self.f.conj() }
    }
}

/// `c_{I₄(h)}(T) = c_h(|𝔡_T|) 𝔣_T^{k−1/2} Π_{p | 𝔣_T} α_p^{−ord_p 𝔣_T} F_p(T, p^{−5/2} α_p)`.
///
/// With `β = p^{k−1/2} α_p` each local factor equals
/// `β̄^e Σ_j c_j β^j p^{−j(k+2)}`, which is symmetric in `β ↔ β̄`.
pub fn ikeda_fc(t: &HalfIntMat, ctx: &LiftContext) -> Result<QuadScalar> {
    if t.size() != 2 * N as usize + 2 {
        return Err(Error::Domain(format!("lift coefficient needs size 4, got {}", t.size())));
    }
    if !t.is_pd() {
        return Err(Error::NotPsd);
    }
    let split = t.disc_split()?;
    let disc = split.disc.unsigned_abs() as usize;
    if disc > ctx.h.q().prec() {
        return Err(Error::InsufficientPrecision(format!("c_h({disc}) beyond stored range")));
    }
    let mut value = ctx.h.coeff(disc).clone();
    for (p, e) in factorize(split.conductor) {
        let ring = AlphaRing::new(p, ctx.k, ctx.f.a(p).clone());
        let poly = fp_polynomial(t, p)?;
        let local = &ring.beta_conj().pow(e) * &poly.evaluate_alpha(&ring, N);
        value *= &alpha_symmetrize(&local)?;
    }
    Ok(value)
}

/// `c_{F̃}(A) = Σ_r c_{I₄(h)}([[A, r/2], [ᵗr/2, 1]])`, valid when
/// `S_{k+2}(SL₂(ℤ))` is spanned by one form.
pub fn miyawaki_fc(a: &HalfIntMat, ctx: &LiftContext) -> Result<QuadScalar> {
    if a.size() != 2 * N as usize + 1 || !a.is_pd() {
        return Err(Error::Domain(format!("{a} must be positive definite of size 3")));
    }
    let g_weight = ctx.k + N + 1;
    if cusp_dim(g_weight) != 1 {
        return Err(Error::Unsupported(format!(
            "restriction formula needs dim S_{g_weight} = 1, found {}",
            cusp_dim(g_weight)
        )));
    }
    let one = HalfIntMat::diag(&[1]);
    enumerate_r_block(a, &one)
        .into_par_iter()
        .map(|r| {
            let t = HalfIntMat::from_blocks(a, &r, &one);
            if t.is_pd() {
                ikeda_fc(&t, ctx)
            } else {
                Ok(QuadScalar::zero())
            }
        })
        .try_reduce(QuadScalar::zero, |x, y| Ok(x + y))
}
