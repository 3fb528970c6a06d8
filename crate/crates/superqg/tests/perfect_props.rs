use proptest::prelude::*;
use superqg::cartan::{preset as datum, Weight};
use superqg::coeffs::{LaurentPi, RatFuncPi};
use superqg::highest::VermaContext;
use superqg::params::preset;
use superqg::perfect::{from_verma, BasedModule, BasisKind, HVector};
use superqg::ring::Ring;

fn module(d: &str, l: &[i64], cutoff: usize, kind: BasisKind) -> BasedModule {
    let d = datum(d).unwrap();
    let c = VermaContext::new(&d, &preset("Uqsg", &d).unwrap(), &Weight(l.to_vec())).unwrap();
    from_verma(&c, cutoff, kind).unwrap()
}

fn unit(sign: bool, pi: i64, m: i64) -> RatFuncPi {
    let u = RatFuncPi::from_laurent(&LaurentPi::pi_q(pi, m));
    if sign {
        u.neg()
    } else {
        u
    }
}

fn rescale(m: &BasedModule, units: &[(bool, i64, i64)]) -> BasedModule {
    let mut out = m.clone();
    for (b, &(s, p, e)) in out.basis.iter_mut().zip(units.iter().cycle()) {
        let c = unit(s, p, e);
        *b = HVector { beta: b.beta.clone(), coords: b.coords.iter().map(|x| x.mul(&c)).collect() };
    }
    out
}

fn cases() -> Vec<(&'static str, Vec<i64>, usize)> {
    vec![("A1odd", vec![2], 3), ("A1", vec![3], 4), ("A2", vec![1, 1], 4), ("B2odd", vec![0, 2], 3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn unit_rescaling_keeps_the_crystal_graph(k in 0usize..4, units in prop::collection::vec((any::<bool>(), 0i64..2, -3i64..=3), 1..6)) {
        let (d, l, cut) = cases()[k].clone();
        let m = module(d, &l, cut, BasisKind::DualDivided);
        let base = m.check_strong().unwrap();
        let moved = rescale(&m, &units).check_strong().unwrap();
        prop_assert!(base.perfect && moved.perfect);
        prop_assert_eq!(base.strong, moved.strong);
        let graph = |r: &superqg::perfect::PerfectReport| r.entries.iter().map(|e| (e.b, e.i, e.epsilon, e.etilde)).collect::<Vec<_>>();
        prop_assert_eq!(graph(&base), graph(&moved));
    }

    #[test]
    fn preorder_is_antisymmetric(k in 0usize..4, a in 0usize..16, b in 0usize..16) {
        let (d, l, cut) = cases()[k].clone();
        let m = module(d, &l, cut, BasisKind::DualDivided);
        let (v, w) = (&m.basis[a % m.basis.len()], &m.basis[b % m.basis.len()]);
        let seq = m.full_sequence();
        prop_assert_eq!(m.preorder(&seq, v, w).unwrap(), m.preorder(&seq, w, v).unwrap().reverse());
    }
}

#[test]
fn highest_basis_spans_the_highest_space() {
    for (d, l, cut) in cases() {
        let kinds = if l.len() == 1 { vec![BasisKind::DividedWords, BasisKind::DualDivided] } else { vec![BasisKind::DualDivided] };
        for kind in kinds {
            let m = module(d, &l, cut, kind);
            assert!(m.check_perfect().unwrap().perfect, "{d} {kind:?}");
            let top = m.highest_basis().unwrap();
            let [p, q] = m.highest_space_dim().unwrap();
            assert_eq!((top.len(), top.len()), (p, q), "{d} {kind:?}");
        }
    }
}
