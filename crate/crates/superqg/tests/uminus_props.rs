use proptest::prelude::*;
use superqg::cartan::preset as datum;
use superqg::params::{preset, Lsp};
use superqg::ring::Ring;
use superqg::uminus::{words_of_weight, Boson, UMinusElt, Word};

fn boson(d: &str, p: &str) -> Boson {
    let d = datum(d).unwrap();
    Boson::new(&d, &preset(p, &d).unwrap()).unwrap()
}

fn word(rank: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..rank, 0..=max).prop_map(Word)
}

fn setting() -> impl Strategy<Value = (&'static str, &'static str)> {
    (prop::sample::select(vec!["A2", "B2", "B2odd", "A1affine"]), prop::sample::select(vec!["Uqsg", "BKM", "boldU"]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `e_i′(uv) = e_i′(u)v + θ̃(u,i) u e_i′(v)` with `θ̃(u,i) = Π θ̃_{u_l i}`.
    #[test]
    fn eprime_is_a_twisted_derivation((d, p) in setting(), u in word(2, 4), v in word(2, 4), i in 0usize..2) {
        let b = boson(d, p);
        let (x, y) = (UMinusElt::word(u.clone()), UMinusElt::word(v));
        let twist = u.0.iter().fold(Lsp::one(), |acc, &j| acc.mul(&b.tt.ttheta[j][i]));
        let rhs = b.eprime(i, &x).mul(&y).add(&x.mul(&b.eprime(i, &y)).scale(&twist));
        prop_assert_eq!(b.eprime(i, &x.mul(&y)), rhs);
    }

    #[test]
    fn form_is_adjoint_to_left_multiplication((d, p) in setting(), u in word(2, 4), v in word(2, 3), i in 0usize..2) {
        let b = boson(d, p);
        let x = UMinusElt::word(u);
        let y = UMinusElt::word(v);
        let fy = UMinusElt::letters(&[i]).mul(&y);
        prop_assert_eq!(b.form(&x, &fy), b.form(&b.eprime(i, &x), &y));
    }

    #[test]
    fn symmetric_families_give_symmetric_forms(d in prop::sample::select(vec!["A2", "B2", "B2odd", "A1affine"]), u in word(2, 4), v in word(2, 4)) {
        let b = boson(d, "Uqsg");
        let (x, y) = (UMinusElt::word(u.clone()), UMinusElt::word(v.clone()));
        prop_assert_eq!(b.form(&x, &y), b.form(&y, &x));
        if u.content(2) != v.content(2) {
            prop_assert!(b.form(&x, &y).is_zero());
        }
    }

    #[test]
    fn scans_agree((d, p) in setting(), u in word(2, 6), i in 0usize..2) {
        let b = boson(d, p);
        prop_assert_eq!(b.estar_word(i, &u), b.estar_word_right(i, &u));
    }
}

#[test]
fn gram_ranks_match_the_product_formula() {
    for (d, p, top) in [("A2", "Uqsg", 4), ("B2", "Uqsg", 4), ("B2odd", "Uqsg", 4), ("A2", "BKM", 3), ("B2odd", "boldU", 3)] {
        let b = boson(d, p);
        for a in 0..=top {
            for c in 0..=top - a {
                b.weight_dim(&[a, c]).unwrap_or_else(|e| panic!("{d}/{p} [{a},{c}]: {e}"));
                assert!(b.gram_rank(&[a, c]).unwrap() <= words_of_weight(&[a, c]).len());
            }
        }
    }
}

#[test]
fn radical_equals_serre_ideal_up_to_height_five() {
    for d in ["A2", "B2", "B2odd"] {
        let b = boson(d, "Uqsg");
        for a in 0..=5i64 {
            for c in 0..=5 - a {
                let (corank, dim, inside) = b.radical_vs_serre(&[a, c]).unwrap();
                assert!(inside && corank == dim, "{d} [{a},{c}]: corank {corank}, ideal {dim}");
            }
        }
    }
}
