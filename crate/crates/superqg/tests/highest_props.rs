use proptest::prelude::*;
use superqg::cartan::{preset as datum, Weight};
use superqg::highest::character::{nilpotency_check, weyl_kac_char};
use superqg::highest::gauge::gauge_transform;
use superqg::highest::{build_hw, VermaContext};
use superqg::params::{lift_tilde, preset};
use superqg::uminus::Word;

fn dominant() -> impl Strategy<Value = (&'static str, Vec<i64>)> {
    prop_oneof![
        (0i64..3).prop_map(|a| ("A1odd", vec![a])),
        (0i64..4).prop_map(|a| ("A1", vec![a])),
        (0i64..2, 0i64..2).prop_map(|(a, b)| ("A2", vec![a, b])),
        (0i64..2, 0i64..2).prop_map(|(a, b)| ("B2", vec![a, b])),
        (0i64..2, 0i64..3).prop_map(|(a, b)| ("B2odd", vec![a, 2 * (b / 2)])),
    ]
}

fn ctx(d: &str, p: &str, l: &[i64]) -> VermaContext {
    let d = datum(d).unwrap();
    VermaContext::new(&d, &preset(p, &d).unwrap(), &Weight(l.to_vec())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dimensions_follow_the_character_formula((d, l) in dominant()) {
        let c = ctx(d, "Uqsg", &l);
        let hw = build_hw(&c, 3).unwrap();
        let ch = weyl_kac_char(&c.datum, &Weight(l.clone()), 3).unwrap();
        for (beta, dim) in hw.dims() {
            prop_assert_eq!(dim as i64, ch[&beta], "{} {:?} at {:?}", d, l, beta);
        }
        prop_assert!(nilpotency_check(&hw));
        prop_assert!(hw.check_ef().unwrap().ok);
    }

    #[test]
    fn verma_form_is_symmetric((d, l) in dominant(), seed in any::<u64>()) {
        let c = ctx(d, "Uqsg", &l);
        let rank = c.datum.rank;
        for w in superqg::uminus::random_words(rank, 6, 3, seed).chunks(2) {
            let (a, b) = (&w[0], &w[1]);
            prop_assert_eq!(c.verma_form(a, b), c.verma_form(b, a));
        }
        prop_assert_eq!(c.verma_form(&Word::empty(), &Word::empty()), superqg::params::Lsp::q_pow(0));
    }

    #[test]
    fn gauge_transforms_preserve_dimensions((d, l) in dominant()) {
        let c = ctx(d, "Uqsg", &l);
        let fam = preset("Uqsg", &c.datum).unwrap();
        let hw = build_hw(&c, 3).unwrap().to_f_form(&lift_tilde(&fam.tilde().unwrap(), &c.datum).unwrap()).unwrap();
        for target in ["boldU", "BKM"] {
            let to = preset(target, &c.datum).unwrap().theta_p(&c.datum).unwrap();
            let moved = gauge_transform(&hw, &to).unwrap();
            prop_assert_eq!(moved.dims(), hw.dims());
            prop_assert!(moved.check_ef().unwrap().ok, "{} {:?} -> {}", d, l, target);
        }
    }
}
