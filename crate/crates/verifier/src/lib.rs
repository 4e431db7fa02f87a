//! Assembly of the period constant `C_{h,g}` for the Ikeda–Miyawaki lift of
//! degree three, from computed values and curated external constants.
//!
//! With `c_h(1) = 1` and `l = k − 3` the identity solved is
//!
//! `X = ε 2^{k−1} C (|c_F(A)|²/|c_h(1)|²) Π L_alg(·,·;f) L_alg(l,g,St) / (L_alg(2k+2n, g⊗g⊗f) Π ξ̃(2i))`
//!
//! where `X = |c_F(A)|² L_alg(l, F, St)` comes from the doubling extraction
//! and `ε = (−1)^{n+[(n+1)/2]}`.

mod curated;
mod report;
#[cfg(test)]
mod tests;

pub use curated::{CuratedStore, CuratedTable, CuratedValue, Embedding, UNVERIFIED};
pub use report::{Intermediate, Report, Source};

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use liftperiod::kernel::{xi_tilde_even, Matrix, QuadScalar, Rational};
use liftperiod::lifts::{miyawaki_fc, LiftContext};
use liftperiod::modforms::{eigenforms, plus_space_eigenforms, Eigenform, PLUS_PRECISION};
use liftperiod::pullback::{extract_std_l, product_hecke_l, BasisTable};
use liftperiod::qforms::HalfIntMat;
use liftperiod::{Error, Result};

/// Coefficients used when solving for Hecke L-value products.
pub const HECKE_PRECISION: usize = 60;

/// The matrix `A` shared by both cases; `2A` is shown.
pub fn default_a() -> HalfIntMat {
    HalfIntMat::from_twice(vec![vec![2, 0, 1], vec![0, 2, 1], vec![1, 1, 2]]).expect("valid matrix")
}

#[derive(Clone, Debug)]
pub struct CaseConfig {
    pub name: String,
    pub k: u32,
    pub n: u32,
    pub a: HalfIntMat,
    pub embedding: Embedding,
    pub curated: CuratedStore,
    /// Curated eigenbasis table; `None` when `S_{k+2}(Sp₃(ℤ))` is spanned by the lift.
    pub basis_table: Option<String>,
    pub plus_precision: usize,
    pub hecke_precision: usize,
    /// Multiplier applied to `h`.
    pub h_scale: Rational,
    /// Multiplier applied to one column of the basis table.
    pub basis_scale: Option<(usize, QuadScalar)>,
}

/// Optional JSON configuration accepted by the CLI.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub overrides: CuratedStore,
    pub plus_precision: Option<usize>,
    pub hecke_precision: Option<usize>,
}

impl CaseConfig {
    pub fn new(k: u32, embedding: Embedding) -> Result<Self> {
        if k != 10 && k != 14 {
            return Err(Error::Unsupported(format!("no curated data for k = {k}")));
        }
        Ok(Self {
            name: format!("k{k}"),
            k,
            n: 1,
            a: default_a(),
            embedding,
            curated: CuratedStore::builtin(),
            basis_table: (k == 14).then(|| "k14.basis".to_string()),
            plus_precision: PLUS_PRECISION,
            hecke_precision: HECKE_PRECISION,
            h_scale: Rational::one(),
            basis_scale: None,
        })
    }

    /// `k10` or `k14`.
    pub fn named(case: &str, embedding: Embedding) -> Result<Self> {
        match case {
            "k10" => Self::new(10, embedding),
            "k14" => Self::new(14, embedding),
            other => Err(Error::Domain(format!("unknown case `{other}`"))),
        }
    }

    pub fn apply_config(mut self, cfg: ConfigFile, allow_unverified: bool) -> Result<Self> {
        self.curated = self.curated.with_overrides(cfg.overrides, allow_unverified)?;
        if let Some(p) = cfg.plus_precision {
            self.plus_precision = p;
        }
        if let Some(p) = cfg.hecke_precision {
            self.hecke_precision = p;
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let (k, n) = (self.k, self.n);
        if n != 1 {
            return Err(Error::Unsupported(format!("only n = 1 is assembled, got n = {n}")));
        }
        if k <= n || (k + n) % 2 == 0 {
            return Err(Error::Domain(format!("need k > n and k + n odd, got k = {k}, n = {n}")));
        }
        if self.a.size() != (2 * n + 1) as usize || !self.a.is_pd() {
            return Err(Error::Domain(format!("A = {} must be positive definite of size {}", self.a, 2 * n + 1)));
        }
        Ok(())
    }

    fn key(&self, what: &str) -> String {
        format!("{}.{what}", self.name)
    }

    fn table(&self) -> Result<BasisTable> {
        let table = match &self.basis_table {
            Some(key) => self.curated.table(key)?.basis_table(self.embedding)?,
            None => BasisTable::new(vec![self.a.clone()], Matrix::from_rows(vec![vec![QuadScalar::one()]]))?,
        };
        Ok(match &self.basis_scale {
            Some((j, c)) => table.scale_column(*j, c),
            None => table,
        })
    }
}

struct Recorder<'a> {
    case: &'a CaseConfig,
    items: Vec<Intermediate>,
    timings: BTreeMap<String, u64>,
}

impl<'a> Recorder<'a> {
    fn computed(&mut self, name: impl Into<String>, value: &QuadScalar, checkpoint: Option<&str>) {
        let reference = checkpoint
            .and_then(|key| self.case.curated.checkpoint(&self.case.key(key)))
            .and_then(|c| c.scalar(self.case.embedding).ok());
        self.items.push(Intermediate {
            name: name.into(),
            value: value.to_string(),
            source: Source::Computed,
            provenance: None,
            matches_reference: reference.as_ref().map(|r| r == value),
            reference: reference.map(|r| r.to_string()),
        });
    }

    fn curated(&mut self, what: &str) -> Result<QuadScalar> {
        let entry = self.case.curated.value(&self.case.key(what))?;
        let value = entry.scalar(self.case.embedding)?;
        self.items.push(Intermediate {
            name: entry.name.clone(),
            value: value.to_string(),
            source: Source::Curated,
            provenance: Some(entry.provenance.clone()),
            reference: None,
            matches_reference: None,
        });
        Ok(value)
    }

    fn time(&mut self, stage: &str, start: Instant) {
        self.timings.insert(stage.to_string(), start.elapsed().as_millis() as u64);
    }
}

/// Eigenforms of weight `2k` with `f` moved to the front.
fn basis_led_by(f: &Eigenform, prec: usize) -> Result<Vec<Eigenform>> {
    let mut forms = eigenforms(f.weight(), prec)?;
    let i = forms
        .iter()
        .position(|g| (1..=3).all(|m| g.coeff(m) == f.coeff(m)))
        .ok_or_else(|| Error::Assertion("f is not in the computed eigenbasis".into()))?;
    forms.swap(0, i);
    Ok(forms)
}

/// Solves for `C_{h,g}` and records every intermediate.
pub fn assemble_c(case: &CaseConfig) -> Result<(QuadScalar, Report)> {
    case.validate()?;
    let (k, n) = (case.k, case.n);
    let l = k - n - 2;
    let mut rec = Recorder { case, items: Vec::new(), timings: BTreeMap::new() };

    let start = Instant::now();
    let mut pairs = plus_space_eigenforms(k, case.plus_precision)?;
    let idx = if case.embedding == Embedding::Minus && pairs.len() > 1 { 1 } else { 0 };
    if pairs.is_empty() {
        return Err(Error::Domain(format!("no plus-space eigenforms of weight {k}+1/2")));
    }
    let (h, f) = pairs.swap_remove(idx);
    let ctx = LiftContext::new(h, f)?.with_scaled_h(&QuadScalar::from(case.h_scale.clone()));
    let c_h1 = ctx.h().coeff(1).clone();
    rec.computed("c_h(1)", &c_h1, None);
    rec.computed("c_f(2)", ctx.f().coeff(2), None);
    rec.time("plus_space", start);

    let start = Instant::now();
    let c_lift = miyawaki_fc(&case.a, &ctx)?;
    let checkpoint = case.h_scale.is_one().then_some("c_lift");
    rec.computed("c_F(A)", &c_lift, checkpoint);
    rec.time("lift", start);

    let start = Instant::now();
    let lhs = extract_std_l(k, &case.table()?, &case.a)?;
    rec.computed(format!("|c_F(A)|^2 L_alg({l}, F, St)"), &lhs, Some("lhs"));
    rec.time("extraction", start);

    let start = Instant::now();
    let forms = basis_led_by(ctx.f(), case.hecke_precision)?;
    let mut hecke = QuadScalar::one();
    let mut label = Vec::new();
    for (l1, l2) in [(l + k, k), (l + k - 1, k + 1)] {
        let v = product_hecke_l(l1, l2, &forms)?;
        label.push(format!("L_alg({l1},{l2};f)"));
        rec.computed(format!("L_alg({l1},{l2};f)"), &v, None);
        hecke *= &v;
    }
    rec.computed(label.join(" "), &hecke, Some("hecke_product"));
    rec.time("hecke", start);

    let triple = rec.curated("triple")?;
    let g_std = rec.curated("g_std")?;
    let xi: Rational = (1..=n as usize).map(xi_tilde_even).product();
    rec.computed(format!("prod xi~(2i), i <= {n}"), &QuadScalar::from(xi.clone()), None);

    let sign = if (n + n.div_ceil(2)) % 2 == 0 { 1 } else { -1 };
    let numer = (&lhs * &triple * (&c_h1 * &c_h1)).scale(&(xi * Rational::from_integer(sign.into())));
    let denom = (&c_lift * &c_lift * &hecke * &g_std).scale(&Rational::from_integer(BigInt::from(2).pow(k - 1)));
    if denom.is_zero() {
        return Err(Error::Singular("a factor of the assembly identity vanishes".into()));
    }
    let c = &numer * &denom.inv();
    let expected = QuadScalar::from(BigInt::from(2).pow((2 * n - 1) * k + 4 * n));

    let mut report = Report {
        case: case.name.clone(),
        k,
        n,
        embedding: case.embedding,
        intermediates: rec.items,
        c_value: c.to_string(),
        expected: expected.to_string(),
        rational: c.is_rational(),
        pass: c == expected,
        first_divergence: None,
        timings_ms: rec.timings,
    };
    report.first_divergence = report.locate_divergence();
    Ok((c, report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaleCheck {
    pub name: String,
    pub c_value: String,
    pub pass: bool,
}

/// Reruns the assembly with `h ↦ 7h`, `F₁ ↦ 3F₁` and a doubled curated
/// value; the first two must leave `C` unchanged, the last must move it.
pub fn scale_invariance_suite(case: &CaseConfig) -> Result<Vec<ScaleCheck>> {
    let (base, _) = assemble_c(case)?;
    let mut out = Vec::new();

    let mut h7 = case.clone();
    h7.h_scale = &case.h_scale * Rational::from_integer(7.into());
    let (c, _) = assemble_c(&h7)?;
    out.push(ScaleCheck { name: "h -> 7h".into(), pass: c == base, c_value: c.to_string() });

    let mut f3 = case.clone();
    f3.basis_scale = Some((0, QuadScalar::from_int(3)));
    let (c, _) = assemble_c(&f3)?;
    out.push(ScaleCheck { name: "F1 -> 3F1".into(), pass: c == base, c_value: c.to_string() });

    let mut neg = case.clone();
    let key = case.key("triple");
    let entry = neg.curated.value_mut(&key)?;
    entry.value = (QuadScalar::parse(&entry.value)? * QuadScalar::from_int(2)).to_string();
    entry.provenance = "negative control: published value doubled".into();
    let (c, _) = assemble_c(&neg)?;
    out.push(ScaleCheck { name: format!("{key} doubled (must change C)"), pass: c != base, c_value: c.to_string() });
    Ok(out)
}
