mod oracle;

use std::sync::Arc;

use causalteam::enumerate::function_components;
use causalteam::gen::{Fragment, Gen};
use causalteam::io::{model_from_json, model_to_json};
use causalteam::rescaling::{canonical, is_rescaling, scale};
use causalteam::sem::{multiteam_to_sem, sem_to_multiteam};
use causalteam::transforms::normal_form;
use causalteam::{parse_pco, satisfies, FunctionComponent, Signature};
use proptest::prelude::*;

fn sigs() -> Vec<(Arc<Signature>, Vec<FunctionComponent>)> {
    let a = Arc::new(Signature::new([("X", vec!["0", "1"]), ("Y", vec!["0", "1", "2"])]).unwrap());
    let b = Arc::new(
        Signature::new([("A", vec!["lo", "hi"]), ("B", vec!["0", "1"]), ("C", vec!["0", "1"])]).unwrap(),
    );
    [a, b].into_iter().map(|s| (Arc::clone(&s), function_components(&s, 1_000_000).unwrap())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_formulas_parse_back(seed in any::<u64>(), which in 0usize..2) {
        let (s, _) = &sigs()[which];
        let mut g = Gen::new(seed, Arc::clone(s));
        let f = g.pco(4, Fragment::Sugar);
        prop_assert_eq!(parse_pco(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn verdicts_match_reference(seed in any::<u64>(), which in 0usize..2) {
        let (s, fcs) = &sigs()[which];
        let mut g = Gen::new(seed, Arc::clone(s));
        let f = g.pco(4, Fragment::Core);
        let m = g.model(fcs, 0, 6);
        let expected = oracle::pco(&oracle::OModel::of(&m), &f);
        prop_assert_eq!(satisfies(&m, &f).unwrap().verdict, expected, "{} on {}", f, m);
        let nf = normal_form(&f).unwrap().to_formula();
        prop_assert_eq!(satisfies(&m, &nf).unwrap().verdict, expected, "{} on {}", nf, m);
    }

    #[test]
    fn scaling_preserves_verdicts(seed in any::<u64>(), n in 1u64..8) {
        let (s, fcs) = &sigs()[1];
        let mut g = Gen::new(seed, Arc::clone(s));
        let f = g.pco(3, Fragment::Core);
        let m = g.model(fcs, 1, 5);
        let big = scale(&m, n);
        prop_assert!(is_rescaling(&m, &big).unwrap());
        prop_assert_eq!(canonical(&big), canonical(&m));
        prop_assert_eq!(satisfies(&m, &f).unwrap().verdict, satisfies(&big, &f).unwrap().verdict);
    }

    #[test]
    fn model_files_round_trip(seed in any::<u64>(), which in 0usize..2) {
        let (s, fcs) = &sigs()[which];
        let m = Gen::new(seed, Arc::clone(s)).model(fcs, 0, 6);
        let text = serde_json::to_string(&model_to_json(&m)).unwrap();
        let back = model_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn sem_round_trip_is_a_rescaling(seed in any::<u64>(), which in 0usize..2) {
        let (s, fcs) = &sigs()[which];
        let m = Gen::new(seed, Arc::clone(s)).model(fcs, 1, 6);
        let back = sem_to_multiteam(&multiteam_to_sem(&m).unwrap()).unwrap();
        prop_assert!(is_rescaling(&m, &back).unwrap());
    }
}
