use proptest::prelude::*;
use wmha::groupoid::{preset, validate_groupoid, ModelKind};
use wmha::report::{export_groupoid, load_input, verify, Options, Status, Subject};

fn component() -> impl Strategy<Value = String> {
    prop_oneof![
        (1usize..=2).prop_map(|n| format!("pair:{n}")),
        (1usize..=3).prop_map(|n| format!("group:cyclic:{n}")),
        (1usize..=2).prop_map(|k| format!("bundle:cyclic:2:{k}")),
    ]
}

fn small_preset() -> impl Strategy<Value = String> {
    proptest::collection::vec(component(), 1..=2)
        .prop_filter("at most 8 morphisms", |parts| {
            preset(&parts.join("+")).unwrap().finite().unwrap().len() <= 8
        })
        .prop_map(|parts| parts.join("+"))
}

fn model() -> impl Strategy<Value = ModelKind> {
    prop_oneof![Just(ModelKind::Function), Just(ModelKind::Convolution)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn finite_groupoids_give_weak_hopf_algebras(name in small_preset(), kind in model()) {
        let g = preset(&name).unwrap().finite().unwrap();
        prop_assert!(validate_groupoid(&g).ok());
        let r = verify(&Subject::from_preset(&name, kind).unwrap(), "sha256:0", &Options::default());
        prop_assert!(r.passed(), "{name} {kind}: {:?}", r.failures().next());
        prop_assert_eq!(r.check("paths.agree").map(|c| c.status), Some(Status::Pass));
        prop_assert_eq!(r.classification.weak_hopf, Some(true));
        let hopf = g.units().len() == 1;
        prop_assert_eq!(r.classification.hopf, Some(hopf));
    }

    #[test]
    fn exported_groupoids_verify_identically(name in small_preset(), kind in model()) {
        let g = preset(&name).unwrap().finite().unwrap();
        let bytes = serde_json::to_vec(&export_groupoid(&g, kind)).unwrap();
        let opts = Options::default();
        let a = verify(&load_input(&bytes).unwrap(), "sha256:0", &opts);
        let b = verify(&Subject::from_preset(&name, kind).unwrap(), "sha256:0", &opts);
        prop_assert_eq!(a, b);
    }
}
