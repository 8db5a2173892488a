mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use sopq_core::curve::{pluri_basis, PluriSection};
use sopq_core::exact::{mat_det, mat_pfaffian, Poly};
use sopq_core::hitchin::{seeded_input, HitchinInput};
use sopq_core::invariants::{sw2_of_split_orthogonal, SectorLabel, Z2Class};
use sopq_core::model::{
    build_exotic_model, deserialize_model, model_charpoly, serialize_model, verify_model,
    CheckStatus, HiggsModel, OrthogonalSplitBundle, TwistedPair,
};
use sopq_core::Error;

fn sample_models() -> Vec<HiggsModel> {
    let c2 = common::curve(2);
    let c3 = common::curve(3);
    vec![
        common::random_model(&c2, 2, 3, 0, 1),
        common::random_model(&c2, 3, 4, 1, 2),
        common::random_model(&c2, 3, 5, 1, 3),
        common::random_model(&c2, 4, 6, 1, 4),
        common::random_model(&c3, 3, 3, 0, 5),
        common::random_model(&c3, 2, 6, 2, 6),
    ]
}

#[test]
fn round_trip_is_byte_identical() {
    for m in sample_models() {
        let text = serialize_model(&m);
        let back = deserialize_model(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(serialize_model(&back), text);
    }
}

#[test]
fn canonical_layout() {
    let text = serialize_model(&sample_models()[1]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["curve", "eta", "p", "q", "sector", "version", "w0"]);
    assert_eq!(v["version"], "1");
    assert!(text.ends_with("}\n"));
    assert!(!text.contains('.'), "no floating point in the model file");
    assert!(v["curve"]["f"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s.as_str().unwrap().contains('/')));
}

#[test]
fn empty_input_is_a_parse_error() {
    assert!(matches!(deserialize_model(""), Err(Error::Parse(_))));
    assert!(matches!(
        deserialize_model("{\"curve\":"),
        Err(Error::Parse(_))
    ));
}

#[test]
fn renamed_field_is_a_schema_error() {
    let text = serialize_model(&sample_models()[0]);
    let renamed = text.replacen("\"sector\"", "\"sektor\"", 1);
    match deserialize_model(&renamed) {
        Err(Error::Schema(msg)) => assert!(msg.contains("sektor"), "{msg}"),
        other => panic!("expected schema error, got {other:?}"),
    }
    let renamed = text.replacen("\"hyperbolic_twists\"", "\"twists\"", 1);
    match deserialize_model(&renamed) {
        Err(Error::Schema(msg)) => assert!(msg.contains("twists"), "{msg}"),
        other => panic!("expected schema error, got {other:?}"),
    }
}

#[test]
fn built_models_pass_every_check() {
    for m in sample_models() {
        let report = verify_model(&m);
        assert!(report.all_passed(), "{report}");
        assert_eq!(
            report.status("polystability"),
            Some(CheckStatus::NotChecked)
        );
    }
}

#[test]
fn zeroed_raising_entry_is_flagged() {
    let mut m = sample_models()[2].clone();
    // The σ block starts after the q−p+1 columns of W₀; (1, n) is its first unit entry.
    let n = m.q() - m.p() + 1;
    assert!(m.eta().get(1, n).is_constant() && !m.eta().get(1, n).is_zero());
    let zero = PluriSection::zero(m.curve(), 0);
    m.eta_mut().set(1, n, zero).unwrap();
    let report = verify_model(&m);
    assert_eq!(report.status("entry_twists"), Some(CheckStatus::Pass));
    assert_eq!(report.status("orthogonality"), Some(CheckStatus::Pass));
    assert_eq!(report.status("non_vanishing"), Some(CheckStatus::Pass));
    assert_eq!(report.failed(), vec!["section_block"]);
}

#[test]
fn degree_bound_violation_is_flagged() {
    let m = sample_models()[1].clone();
    let mut v: Value = serde_json::from_str(&serialize_model(&m)).unwrap();
    // η_p component 0 has twist p − e; give its A part one degree too many.
    let entry = &mut v["eta"]["entries"][0][0];
    let twist = entry["twist"].as_i64().unwrap();
    let too_long = (twist + 2) as usize;
    entry["a"] = Value::Array((0..=too_long).map(|_| Value::from("1/1")).collect());
    let corrupted = deserialize_model(&serde_json::to_string(&v).unwrap()).unwrap();
    let report = verify_model(&corrupted);
    assert_eq!(report.status("entry_twists"), Some(CheckStatus::Fail));
    assert!(!report.all_passed());
}

#[test]
fn mu_below_top_row_is_flagged() {
    let m = sample_models()[2].clone();
    let mut v: Value = serde_json::from_str(&serialize_model(&m)).unwrap();
    // row 1 of μ has twist p−2; K^1 sections are available.
    v["eta"]["entries"][1][0]["a"] = Value::Array(vec![Value::from("1/1")]);
    let corrupted = deserialize_model(&serde_json::to_string(&v).unwrap()).unwrap();
    let report = verify_model(&corrupted);
    assert_eq!(report.status("mu_column"), Some(CheckStatus::Fail));
}

#[test]
fn wrong_stored_sector_is_flagged() {
    let mut m = sample_models()[0].clone();
    m.set_sector(SectorLabel::new(Z2Class::zero(2), 0, 1).unwrap());
    assert_eq!(verify_model(&m).failed(), vec!["sector"]);
}

#[test]
fn sectors_of_built_models() {
    for m in sample_models() {
        let g = m.curve().genus();
        assert_eq!(
            m.sector(),
            &SectorLabel::new(Z2Class::zero(g), 0, 0).unwrap()
        );
        // V = K_p: pairs K^j ⊕ K^{−j} of degree j(2g−2).
        let v_degrees: Vec<i64> = m
            .v_twists()
            .iter()
            .filter(|&&t| t > 0)
            .map(|t| t * (2 * g as i64 - 2))
            .collect();
        assert_eq!(sw2_of_split_orthogonal(&v_degrees), 0);
    }
}

#[test]
fn every_model_has_a_unit_entry() {
    let c = common::curve(2);
    for p in 2..=4 {
        for q in p..=p + 3 {
            let m = common::random_model(&c, p, q, 1, (p * 10 + q) as u64);
            let eta = m.eta();
            let units = eta
                .entries()
                .iter()
                .flatten()
                .filter(|e| e.is_constant() && !e.is_zero())
                .count();
            assert!(units >= p - 1, "p={p} q={q}");
        }
    }
}

#[test]
fn pfaffian_squares_to_determinant() {
    let c = common::curve(2);
    let mut checked = 0;
    for p in 2..=6 {
        for q in p..=12 - p {
            if (p + q) % 2 != 0 {
                continue;
            }
            let m = common::random_model(&c, p, q, 1, (p * 100 + q) as u64);
            let phi = m.field().unwrap();
            let qphi = phi.left_mul_rational(&m.form()).unwrap();
            assert!(qphi.is_skew());
            let pf = mat_pfaffian(&qphi).unwrap();
            assert_eq!(
                pf.try_mul(&pf).unwrap(),
                mat_det(&qphi).unwrap(),
                "p={p} q={q}"
            );
            let inv = model_charpoly(&m).unwrap();
            assert_eq!(
                inv.pfaffian.unwrap().len(),
                sopq_core::curve::pluri_dim(2, (p + q) as i64 / 2)
            );
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

#[test]
fn trivial_w0_with_single_mu_entry() {
    let c = common::curve(2);
    let s = pluri_basis(&c, 3)[2].clone();
    let w0 = OrthogonalSplitBundle::trivial(3, 2);
    let eta_p = vec![
        s.clone(),
        PluriSection::zero(&c, 3),
        PluriSection::zero(&c, 3),
    ];
    let pair = TwistedPair::new(&c, 3, w0, eta_p).unwrap();
    let m = build_exotic_model(&pair, &HitchinInput::zero(&c, 3).unwrap(), 5).unwrap();
    let nonzero: Vec<_> = m
        .mu_block()
        .entries()
        .iter()
        .flatten()
        .filter(|e| !e.is_zero())
        .cloned()
        .collect();
    assert_eq!(nonzero, vec![s]);
    assert!(verify_model(&m).all_passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn distinct_eta_p_give_distinct_entries(seed in any::<u64>(), which in 0usize..3, bump in 1i64..5) {
        let c = common::curve(2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w0 = OrthogonalSplitBundle::new(vec![1], 1, Z2Class::zero(2)).unwrap();
        let eta_p: Vec<PluriSection> = TwistedPair::component_twists(3, &w0)
            .into_iter()
            .map(|m| common::random_section(&mut rng, &c, m))
            .collect();
        let mut other = eta_p.clone();
        let s = &other[which];
        let bumped = PluriSection::new(&c, s.twist(), s.a() + &Poly::from_ints(&[bump]), s.b().clone()).unwrap();
        other[which] = bumped;
        let diffs = seeded_input(&c, 3, seed).unwrap();
        let m1 = build_exotic_model(&TwistedPair::new(&c, 3, w0.clone(), eta_p).unwrap(), &diffs, 5).unwrap();
        let m2 = build_exotic_model(&TwistedPair::new(&c, 3, w0, other).unwrap(), &diffs, 5).unwrap();
        for i in 0..m1.eta().rows().len() {
            for j in 0..m1.eta().cols().len() {
                let differs = m1.eta().get(i, j) != m2.eta().get(i, j);
                prop_assert_eq!(differs, (i, j) == (0, which));
            }
        }
    }
}
