use flagchern::chern::{chern_number, ChernMonomial, Oracle};
use flagchern::flagmodel::{InvariantACS, ManifoldSpec};
use num_bigint::BigInt;

#[test]
fn euler_characteristic_is_the_top_chern_number() {
    for (name, chi) in [
        ("F(6;1,2,3)", 60),
        ("F(7;1,2,4)", 105),
        ("F(4)", 24),
        ("F(5)", 120),
        ("G2/T", 12),
        ("SO(8)/U(4)", 8),
        ("FD(4;1,3)", 32),
        ("Sp(3)/T", 48),
        ("G2-long", 6),
        ("G2-short", 6),
    ] {
        let f = ManifoldSpec::parse(name).unwrap().build().unwrap();
        assert_eq!(f.euler_characteristic(), chi, "{name}");
        let top = chern_number(&f, &InvariantACS::all_plus(f.num_summands()), &ChernMonomial::class(f.complex_dim()), Oracle::Both)
            .unwrap();
        assert_eq!(top, BigInt::from(chi), "{name}");
    }
}

#[test]
fn projective_spaces() {
    for n in 1..=5u32 {
        let f = ManifoldSpec::parse(&format!("CP({n})")).unwrap().build().unwrap();
        let j = InvariantACS::all_plus(1);
        assert_eq!(f.euler_characteristic(), u64::from(n) + 1);
        let c1n = chern_number(&f, &j, &ChernMonomial::c1_power(n), Oracle::Both).unwrap();
        assert_eq!(c1n, BigInt::from(n + 1).pow(n));
        // c(CP^n) = (1+h)^(n+1), so c1^a c_b integrates to (n+1)^a C(n+1,b).
        if n >= 2 {
            let m: ChernMonomial = format!("c1^{}c2", n - 2).parse().unwrap();
            let want = BigInt::from(n + 1).pow(n - 2) * BigInt::from((n + 1) * n / 2);
            assert_eq!(chern_number(&f, &j, &m, Oracle::Both).unwrap(), want, "CP^{n}");
        }
    }
}

#[test]
fn aliases_agree_with_block_names() {
    for (alias, name) in [("SO(8)/U(4)", "FD(4;4)"), ("Sp(3)/T", "FC(3;1,1,1)"), ("G2/U(2)", "G2-long")] {
        let a = ManifoldSpec::parse(alias).unwrap();
        let b = ManifoldSpec::parse(name).unwrap();
        assert_eq!((a.family, a.rank, &a.theta), (b.family, b.rank, &b.theta));
    }
}

#[test]
fn three_summand_family_dimensions() {
    for (name, dim, dims) in [("F(6;1,2,3)", 11, [2, 6, 3]), ("F(8;1,3,4)", 19, [3, 12, 4]), ("F(5;1,2,2)", 8, [2, 4, 2])] {
        let f = ManifoldSpec::parse(name).unwrap().build().unwrap();
        assert_eq!(f.complex_dim(), dim);
        let mut got: Vec<usize> = f.summands().iter().map(|s| s.dim_complex()).collect();
        let mut want = dims.to_vec();
        got.sort_unstable();
        want.sort_unstable();
        assert_eq!(got, want, "{name}");
    }
}
