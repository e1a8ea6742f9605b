use degenga_core::group::{self, Unit};
use degenga_core::lie::{self, lie_algebra_of};
use degenga_core::sample::{self, SampleConfig};
use degenga_core::{parse, print, Blade, GroupId, Multivector, Scalar, Signature, SubspaceKind, SubspaceSpec};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn signature(max_n: usize) -> impl Strategy<Value = Signature> {
    (0..=max_n, 0..=max_n, 0..=max_n)
        .prop_filter("1 <= n <= max_n", move |(p, q, r)| (1..=max_n).contains(&(p + q + r)))
        .prop_map(|(p, q, r)| Signature::new(p, q, r).unwrap())
}

fn element(sig: Signature) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((-4i64..=4, 1i64..=3), sig.blade_count()).prop_map(move |cs| {
        let terms = sig
            .blades()
            .zip(cs)
            .map(|(b, (n, d))| (b, Scalar::from_ratio(n, d)));
        Multivector::from_terms(sig, terms).unwrap()
    })
}

fn sig_and(k: usize, max_n: usize) -> impl Strategy<Value = (Signature, Vec<Multivector>)> {
    signature(max_n).prop_flat_map(move |sig| (Just(sig), prop::collection::vec(element(sig), k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative_and_distributive((_, v) in sig_and(3, 4)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(&(a + b) * c, &(a * c) + &(b * c));
    }

    #[test]
    fn generators_satisfy_clifford_relations(sig in signature(6)) {
        for a in 1..=sig.n() {
            for b in 1..=sig.n() {
                let ea = Multivector::generator(sig, a).unwrap();
                let eb = Multivector::generator(sig, b).unwrap();
                let anti = &(&ea * &eb) + &(&eb * &ea);
                let eta = if a == b { sig.eta(a).unwrap() } else { 0 };
                prop_assert_eq!(anti, Multivector::scalar(sig, Scalar::from_int(2 * i64::from(eta))));
            }
        }
    }

    #[test]
    fn grade_involution_is_an_automorphism((_, v) in sig_and(2, 4)) {
        let (a, b) = (&v[0], &v[1]);
        prop_assert_eq!((a * b).grade_involution(), &a.grade_involution() * &b.grade_involution());
        prop_assert_eq!(a.grade_involution().grade_involution(), a.clone());
    }

    #[test]
    fn left_regular_matrix_is_multiplicative((_, v) in sig_and(2, 3)) {
        let (a, b) = (&v[0], &v[1]);
        prop_assert_eq!((a * b).left_regular_matrix(), &a.left_regular_matrix() * &b.left_regular_matrix());
    }

    #[test]
    fn parity_is_a_grading((_, v) in sig_and(2, 4)) {
        let (a, b) = (&v[0], &v[1]);
        for (x, px) in [(a.even_part(), 0u8), (a.odd_part(), 1)] {
            for (y, py) in [(b.even_part(), 0u8), (b.odd_part(), 1)] {
                let prod = &x * &y;
                let expected = SubspaceSpec::new(a.signature(), SubspaceKind::Parity((px + py) % 2)).unwrap();
                prop_assert!(expected.contains(&prod).unwrap());
            }
        }
        prop_assert_eq!(&a.even_part() + &a.odd_part(), a.clone());
    }

    #[test]
    fn inverse_is_two_sided_and_solve_agrees((_, v) in sig_and(1, 4)) {
        let a = &v[0];
        match a.inverse() {
            Some(inv) => {
                prop_assert_eq!(a * &inv, Multivector::one(a.signature()));
                prop_assert_eq!(&inv * a, Multivector::one(a.signature()));
                prop_assert_eq!(a.inverse_by_solve(), Some(inv));
            }
            None => prop_assert!(!a.left_regular_matrix().is_nonsingular()),
        }
    }

    #[test]
    fn scalar_plus_radical_invertible_iff_scalar_part_nonzero(sig in signature(5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = SubspaceSpec::new(sig, SubspaceKind::G0plusRad).unwrap();
        let t = sample::random_element(&spec, &mut rng, 3);
        prop_assert_eq!(t.is_invertible(), !t.scalar_part().is_zero());
    }

    #[test]
    fn e_plus_radical_product_invertible(sig in signature(5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rad = SubspaceSpec::new(sig, SubspaceKind::Rad).unwrap();
        let x = sample::random_element(&rad, &mut rng, 3);
        let y = sample::random_with(sig, &mut rng, 3, |_| true);
        prop_assert!((&Multivector::one(sig) + &(&x * &y)).is_invertible());
    }

    #[test]
    fn print_then_parse_is_identity((sig, v) in sig_and(1, 6)) {
        let u = &v[0];
        prop_assert_eq!(parse(&print(u), sig).unwrap(), u.clone());
    }

    #[test]
    fn complex_round_trip(p in 0usize..3, r in 0usize..3, seed in any::<u64>()) {
        prop_assume!(p + r > 0);
        let sig = Signature::complex(p, 0, r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = sample::random_with(sig, &mut rng, 3, |_| true);
        prop_assert_eq!(parse(&print(&u), sig).unwrap(), u);
    }

    #[test]
    fn canonical_preserves_span(sig in signature(5)) {
        for kind in [
            SubspaceKind::Center, SubspaceKind::S, SubspaceKind::LambdaPlusGn,
            SubspaceKind::LambdaEvenPlusGn, SubspaceKind::G0nPlusRadEven, SubspaceKind::G0plusRadEven,
        ] {
            let spec = SubspaceSpec::new(sig, kind).unwrap();
            prop_assert_eq!(spec.canonical().basis(), spec.basis());
            prop_assert_eq!(spec.canonical().canonical(), spec.canonical());
        }
    }

    #[test]
    fn group_samples_are_members_and_closed(sig in signature(4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = SampleConfig::default();
        for g in GroupId::P_FAMILY {
            let a = group::sample_group_element(g, sig, &mut rng, cfg).unwrap();
            let b = group::sample_group_element(g, sig, &mut rng, cfg).unwrap();
            prop_assert!(group::member(g, &a).member, "{} {}", g, a);
            prop_assert!(group::member(g, &(&a * &b)).member);
            prop_assert!(group::member(g, &a.inverse().unwrap()).member);
        }
    }

    #[test]
    fn alternative_targets_agree(sig in signature(4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = sample::random_full_unit(sig, &mut rng, SampleConfig::default()).unwrap();
        let unit = Unit::new(t).unwrap();
        for g in GroupId::P_FAMILY {
            let base = group::member_by_target(&unit, &g.target(sig).unwrap()).unwrap();
            for alt in g.alternative_targets(sig) {
                prop_assert_eq!(group::member_by_target(&unit, &alt).unwrap(), base, "{} {}", g, alt);
            }
        }
    }

    #[test]
    fn lie_algebras_close_under_commutator(sig in signature(4)) {
        for g in GroupId::P_FAMILY {
            prop_assert!(lie::check_commutator_closure(&lie_algebra_of(g, sig).unwrap()));
        }
    }
}

#[test]
fn blade_names_round_trip_above_nine() {
    let sig = Signature::new(6, 3, 3).unwrap();
    let b = Blade::from_indices(&[2, 10, 12]).unwrap();
    let u = Multivector::blade(sig, b).unwrap();
    assert_eq!(print(&u), "e[2,10,12]");
    assert_eq!(parse("e[2,10,12]", sig).unwrap(), u);
}
