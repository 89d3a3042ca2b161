use flagchern::chern::{ChernEngine, ChernMonomial, Oracle};
use flagchern::flagmodel::{FlagManifold, InvariantACS, ManifoldSpec};
use flagchern::polyring::Polynomial;
use num_bigint::BigInt;
use proptest::prelude::*;

fn flag(name: &str) -> FlagManifold {
    ManifoldSpec::parse(name).unwrap().build().unwrap()
}

const SMALL: [&str; 6] = ["F(4)", "F(5;1,2,2)", "FD(3;1,2)", "G2-long", "SO(5)/T", "FD(4;1,3)"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugation_parity(which in 0..SMALL.len(), mask in any::<u64>(), pick in any::<usize>()) {
        let f = flag(SMALL[which]);
        let s = f.num_summands();
        let a = InvariantACS::from_mask(s, mask % (1 << s));
        let mons = ChernMonomial::partitions(f.complex_dim());
        let m = &mons[pick % mons.len()];
        let x = ChernEngine::new(&f, &a, Oracle::Weyl, 1).unwrap().number(m).unwrap();
        let y = ChernEngine::new(&f, &a.conjugate(), Oracle::Weyl, 1).unwrap().number(m).unwrap();
        let sign = if f.complex_dim().is_multiple_of(2) { 1 } else { -1 };
        prop_assert_eq!(y, x * sign);
    }

    #[test]
    fn oracles_agree(which in 0..SMALL.len(), mask in any::<u64>(), pick in any::<usize>()) {
        let f = flag(SMALL[which]);
        let s = f.num_summands();
        let a = InvariantACS::from_mask(s, mask % (1 << s));
        let mons = ChernMonomial::partitions(f.complex_dim());
        let m = &mons[pick % mons.len()];
        let (w, g) = ChernEngine::new(&f, &a, Oracle::Both, 1).unwrap().number_by(m).unwrap();
        prop_assert!(w.is_some());
        prop_assert_eq!(w, g);
    }

    #[test]
    fn top_class_is_euler_characteristic_up_to_sign(which in 0..SMALL.len(), mask in any::<u64>()) {
        // c_top of any structure is the Euler class of the same real bundle.
        let f = flag(SMALL[which]);
        let s = f.num_summands();
        let a = InvariantACS::from_mask(s, mask % (1 << s));
        let top = ChernEngine::new(&f, &a, Oracle::Weyl, 1).unwrap().number(&ChernMonomial::class(f.complex_dim())).unwrap();
        let chi = BigInt::from(f.euler_characteristic());
        prop_assert!(top == chi || top == -chi);
    }

    #[test]
    fn acs_text_round_trip(signs in prop::collection::vec(prop::bool::ANY, 1..12)) {
        let a = InvariantACS::new(signs.iter().map(|&b| if b { 1 } else { -1 }).collect()).unwrap();
        let back: InvariantACS = a.to_string().parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(InvariantACS::from_mask(a.len(), a.mask()), a.clone());
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn monomial_text_round_trip(parts in prop::collection::vec(1usize..9, 0..8)) {
        let m = ChernMonomial::from_parts(&parts);
        prop_assert_eq!(m.weight(), parts.iter().sum::<usize>());
        if !parts.is_empty() {
            let back: ChernMonomial = m.to_string().parse().unwrap();
            prop_assert_eq!(back, m);
        }
    }

    #[test]
    fn polynomial_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        let names = Polynomial::default_names(3);
        prop_assert_eq!(Polynomial::parse(&a.to_text(&names), &names).unwrap(), a.clone());
        prop_assert_eq!(Polynomial::from_json(3, &a.to_json()).unwrap(), a);
    }
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -9i64..10, 1i64..4), 0..5).prop_map(|terms| {
        let names = Polynomial::default_names(3);
        let text: Vec<String> =
            terms.iter().map(|(i, j, k, n, d)| format!("({n}/{d})*x1^{i}*x2^{j}*x3^{k}")).collect();
        if text.is_empty() {
            Polynomial::zero(3)
        } else {
            Polynomial::parse(&text.join(" + "), &names).unwrap()
        }
    })
}
