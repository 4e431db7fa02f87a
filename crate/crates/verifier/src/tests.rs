//! End-to-end assembly of the period constant.

use liftperiod::kernel::QuadScalar;
use liftperiod::Error;
use num_bigint::BigInt;

use super::*;

fn pow2(e: u32) -> QuadScalar {
    QuadScalar::from(BigInt::from(2).pow(e))
}

#[test]
fn weight_ten_assembles_to_two_to_the_fourteen() {
    let case = CaseConfig::named("k10", Embedding::Plus).unwrap();
    let (c, report) = assemble_c(&case).unwrap();
    assert_eq!(c, pow2(14));
    assert!(report.pass && report.rational);
    assert!(report.first_divergence.is_none());
    // Every published intermediate is reproduced.
    let checked: Vec<_> = report.intermediates.iter().filter_map(|i| i.matches_reference).collect();
    assert_eq!(checked, vec![true, true, true]);
    let curated = report.intermediates.iter().filter(|i| i.source == Source::Curated).count();
    assert_eq!(curated, 2);

    let (_, again) = assemble_c(&case).unwrap();
    assert_eq!(report.without_timings().to_json(), again.without_timings().to_json());
    let back: Report = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(back, report);
    let md = report.to_markdown();
    assert!(md.contains("PASS") && md.contains("[curated]") && md.contains("[computed]"));
}

#[test]
fn weight_ten_scale_suite() {
    let case = CaseConfig::named("k10", Embedding::Plus).unwrap();
    let checks = scale_invariance_suite(&case).unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    assert_eq!(checks[2].c_value, pow2(15).to_string());
}

#[test]
fn weight_ten_embeddings_agree() {
    let (plus, _) = assemble_c(&CaseConfig::named("k10", Embedding::Plus).unwrap()).unwrap();
    let (minus, _) = assemble_c(&CaseConfig::named("k10", Embedding::Minus).unwrap()).unwrap();
    assert_eq!(plus, minus);
}

#[test]
fn missing_curated_value_is_an_error() {
    let mut case = CaseConfig::named("k10", Embedding::Plus).unwrap();
    case.curated.values.retain(|v| v.key != "k10.g_std");
    assert!(matches!(assemble_c(&case), Err(Error::MissingCurated(k)) if k == "k10.g_std"));
}

#[test]
fn unprovenanced_config_needs_opt_in() {
    let cfg: ConfigFile = serde_json::from_str(
        r#"{"overrides": {"values": [{"key": "k10.g_std", "name": "g", "value": "32768/3", "embedding": "rational"}]}}"#,
    )
    .unwrap();
    let case = CaseConfig::named("k10", Embedding::Plus).unwrap();
    assert!(matches!(case.clone().apply_config(cfg.clone(), false), Err(Error::Unprovenanced(_))));
    let case = case.apply_config(cfg, true).unwrap();
    let (c, report) = assemble_c(&case).unwrap();
    assert_eq!(c, pow2(14));
    assert!(report.to_markdown().contains(UNVERIFIED));
}

/// The weight-14 pipeline is run once; the doubling coefficients are cached
/// for the whole process.
#[test]
fn weight_fourteen() {
    for emb in [Embedding::Plus, Embedding::Minus] {
        let case = CaseConfig::named("k14", emb).unwrap();
        let (c, report) = assemble_c(&case).unwrap();
        // With the curated constants exactly as published the assembly lands
        // on −2¹⁸: the extraction and the triple product both carry the
        // opposite sign to the published ones, and the published Hecke
        // product is a quarter of the computed one.
        assert_eq!(c, -pow2(18), "{}", report.to_markdown());
        assert!(report.rational && !report.pass);
        let div = report.first_divergence.as_deref().unwrap();
        assert!(div.starts_with("|c_F(A)|^2 L_alg(11, F, St)"), "{div}");
        let flags: Vec<_> = report.intermediates.iter().filter_map(|i| i.matches_reference).collect();
        assert_eq!(flags, vec![true, false, false]);

        // The extraction is positive, as the Euler product at s = 11 forces.
        let lhs = QuadScalar::parse(&report.intermediates[3].value).unwrap();
        assert_eq!(lhs.signum(), 1);

        // L(30, f⊗g⊗g) converges absolutely, so its algebraic part is
        // positive; with that sign the constant is 2¹⁸.
        let triple = case.curated.value("k14.triple").unwrap().scalar(emb).unwrap();
        assert_eq!(triple.signum(), -1);
        let mut fixed = case.clone();
        let mut entry = fixed.curated.value("k14.triple").unwrap().clone();
        entry.value = (-QuadScalar::parse(&entry.value).unwrap()).to_string();
        entry.provenance = "published value with the sign forced by absolute convergence".into();
        let over = CuratedStore { values: vec![entry], ..Default::default() };
        fixed.curated = fixed.curated.with_overrides(over, false).unwrap();
        let (c, report) = assemble_c(&fixed).unwrap();
        assert_eq!(c, pow2(18));
        assert!(report.pass);

        let checks = scale_invariance_suite(&fixed).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }
}
