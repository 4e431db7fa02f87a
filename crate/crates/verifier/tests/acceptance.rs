//! Acceptance suite: nine criteria, each checked exactly and printed as one
//! PASS/FAIL line. Failing sub-checks are listed beneath their criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use liftperiod::eisenstein::{z_norm, EisensteinSpec};
use liftperiod::kernel::arith::sigma;
use liftperiod::kernel::{QuadScalar, Rational};
use liftperiod::lifts::{miyawaki_fc, LiftContext};
use liftperiod::modforms::{char_poly, delta_l, eigenforms, hecke_matrix, plus_space_eigenforms, PLUS_PRECISION};
use liftperiod::pullback::{big_c, extract_std_l, product_hecke_l};
use liftperiod::qforms::{e8_pair_count, enumerate_r_block, reduce_nondegenerate, HalfIntMat};
use liftperiod::qseries::QSeries;
use liftperiod::siegel::{bp_series, brute_bp, fp_polynomial, stratum_sum_rank1, SiegelPoly};
use liftperiod::Result;
use liftperiod_verifier::{assemble_c, default_a, scale_invariance_suite, CaseConfig, CuratedStore, Embedding};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const D: i64 = 18209;

fn pow2(e: u32) -> BigInt {
    BigInt::from(2).pow(e)
}

fn frac(n: BigInt, d: i64) -> Rational {
    Rational::new(n, BigInt::from(d))
}

/// `a + bλ` with `λ = √18209`.
fn lam(a: i64, b: i64) -> QuadScalar {
    QuadScalar::new(Rational::from_integer(a.into()), Rational::from_integer(b.into()), D)
}

#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
    count: usize,
}

impl Checks {
    fn eq<T: PartialEq + std::fmt::Display>(&mut self, what: &str, got: &T, want: &T) {
        self.count += 1;
        if got != want {
            self.failures.push(format!("{what}: got {got}, want {want}"));
        }
    }

    fn holds(&mut self, what: &str, ok: bool) {
        self.count += 1;
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn ok<T>(&mut self, what: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.count += 1;
                self.failures.push(format!("{what}: error {e}"));
                None
            }
        }
    }
}

fn plus_space(c: &mut Checks) {
    if let Some(h) = c.ok("delta_10", delta_l(10, 40).and_then(|h| h.normalize_at(1))) {
        let want = [0, 1, 0, 0, -56, 360, 0, 0, -13680];
        for (n, w) in want.into_iter().enumerate() {
            c.eq(&format!("k=10 h q^{n}"), h.coeff(n), &QuadScalar::from_int(w));
        }
    }
    if let Some(pairs) = c.ok("k=14 plus space", plus_space_eigenforms(14, PLUS_PRECISION)) {
        c.eq("k=14 eigenform count", &pairs.len(), &2);
        for (s, (h, _)) in [1, -1].into_iter().zip(&pairs) {
            let tag = if s == 1 { "h+" } else { "h-" };
            c.eq(&format!("{tag} q^1"), h.coeff(1), &QuadScalar::one());
            c.eq(&format!("{tag} q^4"), h.coeff(4), &lam(-12332, 108 * s));
            c.eq(&format!("{tag} q^5"), h.coeff(5), &lam(123360, -1080 * s));
            c.eq(&format!("{tag} q^8"), h.coeff(8), &lam(1126824, -10152 * s));
        }
    }
}

fn elliptic(c: &mut Checks) {
    if let Some(fs) = c.ok("S_20", eigenforms(20, 20)) {
        c.eq("dim S_20", &fs.len(), &1);
        c.eq("c_f(2)", fs[0].a(2), &QuadScalar::from_int(456));
    }
    if let Some(m) = c.ok("T(2) on S_28", hecke_matrix(28, 2, 60)) {
        let want: Vec<Rational> = [-195250176i64, 8280, 1].iter().map(|&x| Rational::from_integer(x.into())).collect();
        let got = char_poly(&m);
        c.holds(&format!("T(2) charpoly coefficients {got:?}"), got == want);
    }
}

/// Positive definite `B` of size at most two with the entries of `2B` in `[0, 8]`.
fn sweep_forms() -> Vec<HalfIntMat> {
    let mut out = Vec::new();
    for a in (2..=8).step_by(2) {
        out.push(HalfIntMat::from_twice(vec![vec![a]]).unwrap());
    }
    for a in (2..=8).step_by(2) {
        for e in (2..=8).step_by(2) {
            for t in 0..=8 {
                let b = HalfIntMat::from_twice(vec![vec![a, t], vec![t, e]]).unwrap();
                if b.is_pd() {
                    out.push(b);
                }
            }
        }
    }
    out
}

fn siegel_series(c: &mut Checks) {
    let a = default_a();
    for r in [[0, 0, 1], [1, 1, 1], [1, -1, 0]] {
        let b = HalfIntMat::from_blocks(&a, &r, &HalfIntMat::identity(1));
        if let Some(f) = c.ok("F_2 of block matrix", fp_polynomial(&b, 2)) {
            let want: Vec<BigInt> = [1, -12, 32].into_iter().map(BigInt::from).collect();
            c.holds(&format!("F_2({b}) = {f}, want 1-12X+32X^2"), f.coeffs == want);
        }
    }
    let forms = sweep_forms();
    for b in &forms {
        for p in [2u64, 3] {
            let level = if b.size() == 1 { 6 } else { 4 };
            let brute = brute_bp(b, p, level);
            let engine = bp_series(b, p, level as usize);
            match (brute, engine) {
                (Ok(x), Ok(y)) => c.holds(&format!("b_p mismatch at p = {p} for {b}"), x == y),
                (Err(e), _) | (_, Err(e)) => c.holds(&format!("{b} at p = {p}: {e}"), false),
            }
        }
    }
    c.notes.push(format!("{} forms, {} comparisons", forms.len(), 2 * forms.len()));
}

fn siegel_weil(c: &mut Checks) {
    let mut forms = 0;
    for a in 0..=4i64 {
        for e in 0..=(4 - a) {
            for t in -8..=8 {
                let m = HalfIntMat::from_twice(vec![vec![2 * a, t], vec![t, 2 * e]]).unwrap();
                if !m.is_psd() {
                    continue;
                }
                forms += 1;
                let engine = EisensteinSpec::new(2, 4).and_then(|s| s.coefficient(&m)).map(|x| x / z_norm(2, 4));
                if let (Some(x), Some(n)) = (c.ok("c_{2,4}", engine), c.ok("e8 count", e8_pair_count(&m))) {
                    c.eq(&format!("E8 pairs for {m}"), &x, &Rational::from_integer(n.into()));
                }
            }
        }
    }
    for l in [4u32, 8, 10] {
        let Some(spec) = c.ok("genus one", EisensteinSpec::new(1, l)) else { continue };
        for m in 1..=50u64 {
            if let Some(x) = c.ok("c_{1,l}", spec.coefficient(&HalfIntMat::diag(&[m as i64]))) {
                c.eq(&format!("c_(1,{l})({m})"), &x, &Rational::from_integer(sigma(l - 1, m) * 2));
            }
        }
    }
    c.notes.push(format!("{forms} genus-two forms"));
}

fn decomposition(ctx: &LiftContext) -> QuadScalar {
    let k = ctx.k();
    let h = ctx.h();
    let tail = ctx.f().a(2) - QuadScalar::from(pow2(k - 1) * 3);
    h.coeff(8) + h.coeff(5) * QuadScalar::from_int(8) + tail * QuadScalar::from_int(6)
}

fn lift_layer(c: &mut Checks) {
    let a = default_a();
    let want14 = lam(-107, 1) * QuadScalar::from_int(-32 * 567);
    for (k, wants) in [(10, vec![QuadScalar::from_int(-17280)]), (14, vec![want14.clone(), want14.conj()])] {
        let Some(pairs) = c.ok("plus space", plus_space_eigenforms(k, PLUS_PRECISION)) else { continue };
        c.eq(&format!("k={k} eigenform count"), &pairs.len(), &wants.len());
        for ((h, f), want) in pairs.into_iter().zip(wants) {
            let Some(ctx) = c.ok("lift context", LiftContext::new(h, f)) else { continue };
            if let Some(v) = c.ok("c_F(A)", miyawaki_fc(&a, &ctx)) {
                c.eq(&format!("k={k} c_F(A)"), &v, &want);
                c.eq(&format!("k={k} decomposition"), &v, &decomposition(&ctx));
            }
        }
    }
}

fn hecke_products(c: &mut Checks) {
    let cases = [
        (20, (17, 10), (16, 11), QuadScalar::from(frac(pow2(34) * 13, 81 * 5 * 289))),
        (28, (25, 14), (24, 15), lam(26136063, 188401).scale(&frac(pow2(48), 27962195625))),
    ];
    for (w, (a1, a2), (b1, b2), want) in cases {
        let Some(fs) = c.ok("eigenforms", eigenforms(w, 60)) else { continue };
        let prod = product_hecke_l(a1, a2, &fs).and_then(|x| Ok(x * product_hecke_l(b1, b2, &fs)?));
        if let Some(v) = c.ok("Hecke product", prod) {
            c.eq(&format!("weight {w} product"), &v, &want);
        }
    }
}

fn extraction(c: &mut Checks) {
    let a = default_a();
    if let Some(v) = c.ok("k=10 doubling", big_c(10, &a, &a)) {
        c.eq("k=10 |c(A)|^2 L_alg(7)", &v, &frac(pow2(37) * (9 * 11 * 13), 17));
    }
    let table = CuratedStore::builtin().table("k14.basis").and_then(|t| t.basis_table(Embedding::Plus));
    if let Some(table) = c.ok("k=14 basis table", table) {
        if let Some(v) = c.ok("k=14 extraction", extract_std_l(14, &table, &a)) {
            let want = lam(-222920204581, 1281418453).scale(&frac(pow2(49) * 34862967, 633217975));
            c.eq("k=14 Cramer extraction", &v, &want);
        }
    }
}

fn end_to_end(c: &mut Checks) {
    for (name, emb, e) in [("k10", Embedding::Plus, 14), ("k14", Embedding::Plus, 18), ("k14", Embedding::Minus, 18)] {
        let run = CaseConfig::named(name, emb).and_then(|case| assemble_c(&case));
        if let Some((v, report)) = c.ok(name, run) {
            c.eq(&format!("{name} ({}) C", emb.name()), &v, &QuadScalar::from(pow2(e)));
            if let Some(d) = report.first_divergence {
                c.holds(&format!("{name} ({}) first divergence: {d}", emb.name()), false);
            }
        }
    }
}

fn fe_and_overdetermination(c: &mut Checks, f: &SiegelPoly, b: &HalfIntMat, degree_one: &mut usize) {
    c.holds(&format!("FE symmetry of F_{}({b})", f.p), f.satisfies_functional_equation());
    if f.degree() != 1 || f.m.is_multiple_of(2) {
        return;
    }
    *degree_one += 1;
    let Some((bt, _)) = c.ok("reduce", reduce_nondegenerate(b)) else { return };
    let p = BigInt::from(f.p);
    let from_fe = p.pow((f.m as u32).div_ceil(2)) * f.fe_sign;
    let from_strata = stratum_sum_rank1(&bt, f.p) + 1;
    c.eq(&format!("c_1 by FE for {b}"), &f.coeffs[1], &from_fe);
    c.eq(&format!("c_1 by strata for {b}"), &f.coeffs[1], &from_strata);
}

fn properties(c: &mut Checks) {
    let a = default_a();
    let mut forms = sweep_forms();
    for x in 0..=2 {
        for y in 0..=2 {
            for z in 0..=2 {
                for d in [2, 4, 6] {
                    let b = HalfIntMat::from_twice(vec![vec![2, x, y], vec![x, 4, z], vec![y, z, d]]).unwrap();
                    if b.is_pd() {
                        forms.push(b);
                    }
                }
            }
        }
    }
    forms.push(a.clone());
    let one = HalfIntMat::identity(1);
    for r in enumerate_r_block(&a, &one) {
        let t = HalfIntMat::from_blocks(&a, &r, &one);
        if t.is_pd() {
            forms.push(t);
        }
    }
    let mut degree_one = 0;
    for b in &forms {
        for p in [2u64, 3] {
            if let Some(f) = c.ok(&format!("F_{p}({b})"), fp_polynomial(b, p)) {
                fe_and_overdetermination(c, &f, b, &mut degree_one);
            }
        }
    }
    c.holds("degree-one odd-size cases were exercised", degree_one > 0);
    c.notes.push(format!("{} polynomials, {degree_one} overdetermined", 2 * forms.len()));

    let series = |prec: usize| {
        proptest::collection::vec((-20i64..20, -5i64..5, 1i64..6), prec + 1).prop_map(move |v| {
            let cs = v.into_iter().map(|(x, y, z)| QuadScalar::new(frac(x.into(), z), frac(y.into(), z), D)).collect();
            QSeries::new(cs, prec)
        })
    };
    let mut runner = TestRunner::new(Config { cases: 64, failure_persistence: None, ..Config::default() });
    let ring = runner.run(&(series(8), series(8), series(8)), |(x, y, z)| {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x + &y, &y + &x);
        Ok(())
    });
    c.holds(&format!("q-series ring axioms: {ring:?}"), ring.is_ok());

    for (name, emb) in [("k10", Embedding::Plus), ("k14", Embedding::Plus), ("k14", Embedding::Minus)] {
        let suite = CaseConfig::named(name, emb).and_then(|case| scale_invariance_suite(&case));
        if let Some(checks) = c.ok("scale suite", suite) {
            for s in checks {
                c.holds(&format!("{name} ({}) {}: C = {}", emb.name(), s.name, s.c_value), s.pass);
            }
        }
    }
}

struct Criterion {
    title: &'static str,
    budget: Duration,
    run: fn(&mut Checks),
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { title: "plus-space eigenforms", budget: secs(10), run: plus_space },
        Criterion { title: "elliptic eigenforms and T(2)", budget: secs(10), run: elliptic },
        Criterion { title: "Siegel series against enumeration", budget: secs(300), run: siegel_series },
        Criterion { title: "Siegel-Weil and genus-one oracles", budget: secs(300), run: siegel_weil },
        Criterion { title: "lift coefficients and decomposition", budget: secs(60), run: lift_layer },
        Criterion { title: "Hecke L-value products", budget: secs(60), run: hecke_products },
        Criterion { title: "genus-3 doubling extraction", budget: secs(7200), run: extraction },
        Criterion { title: "end-to-end period constant", budget: secs(7200), run: end_to_end },
        Criterion { title: "property suites", budget: secs(600), run: properties },
    ];
    let mut failed = 0;
    for (i, crit) in criteria.iter().enumerate() {
        let mut checks = Checks::default();
        let start = Instant::now();
        (crit.run)(&mut checks);
        let elapsed = start.elapsed();
        if elapsed > crit.budget {
            checks.failures.push(format!("took {elapsed:.1?}, budget {:?}", crit.budget));
        }
        let pass = checks.failures.is_empty();
        failed += usize::from(!pass);
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict}  {} ({} checks, {elapsed:.1?})", i + 1, crit.title, checks.count);
        for note in &checks.notes {
            println!("    ({note})");
        }
        for f in &checks.failures {
            println!("    - {f}");
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
