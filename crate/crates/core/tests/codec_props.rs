use proptest::prelude::*;
use sfclab_core::codec::{
    dilate, generate_layout_oracle, mh_decode, mh_encode, morton_encode, rm_encode, undilate,
    HilbertTables,
};
use sfclab_core::{
    counted_decode, counted_encode, CartesianIndex, DilationProfile, HilbertPattern, LayoutSpec,
    LinearIndex,
};

fn binary_specs(m: u32) -> Vec<LayoutSpec> {
    let mut v = vec![
        LayoutSpec::row_major(m).unwrap(),
        LayoutSpec::morton(m).unwrap(),
    ];
    v.extend(
        HilbertPattern::ALL
            .iter()
            .map(|&p| LayoutSpec::hilbert(m).unwrap().with_initial_pattern(p)),
    );
    v.extend((0..=m).map(|b| LayoutSpec::morton_hybrid(m, b).unwrap()));
    v
}

#[test]
fn oracle_agreement_beyond_minimum_sizes() {
    for m in 0..=5 {
        for spec in binary_specs(m) {
            let grid = generate_layout_oracle(&spec).unwrap();
            let n = spec.side();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(
                        spec.encode(CartesianIndex::new(i, j)).unwrap().0,
                        grid[(i * n + j) as usize],
                        "{spec}"
                    );
                }
            }
        }
    }
    for m in 0..=4 {
        let spec = LayoutSpec::peano(m).unwrap();
        let grid = generate_layout_oracle(&spec).unwrap();
        let n = spec.side();
        for (k, &z) in grid.iter().enumerate() {
            let k = k as u64;
            assert_eq!(spec.encode(CartesianIndex::new(k / n, k % n)).unwrap().0, z);
        }
    }
}

#[test]
fn counted_matches_uncounted_exhaustive_small() {
    for spec in binary_specs(4)
        .into_iter()
        .chain([LayoutSpec::peano(2).unwrap()])
    {
        for z in 0..spec.len() {
            let idx = spec.decode(LinearIndex(z)).unwrap();
            assert_eq!(counted_encode(idx, &spec).unwrap().0, LinearIndex(z));
            assert_eq!(counted_decode(LinearIndex(z), &spec).unwrap().0, idx);
        }
    }
}

#[test]
fn hilbert_counts_grow_linearly() {
    let at = |m: u32| {
        let s = LayoutSpec::hilbert(m).unwrap();
        (
            counted_encode(CartesianIndex::new(0, 0), &s).unwrap().1,
            counted_decode(LinearIndex(0), &s).unwrap().1,
        )
    };
    for m in 1..16 {
        let ((e0, d0), (e1, d1)) = (at(m), at(m + 1));
        assert_eq!(e1.bit_ops - e0.bit_ops, 6);
        assert_eq!(d1.bit_ops - d0.bit_ops, 8);
        assert_eq!(e1.table_lookups - e0.table_lookups, 2);
        assert_eq!(d1.table_lookups - d0.table_lookups, 2);
    }
    assert_eq!(at(10).0.table_lookups, 20);
}

#[test]
fn hilbert_tables_agree_with_refinement_rules() {
    use sfclab_core::codec::oracle::{hilbert_next_pattern, hilbert_order};
    let t = &HilbertTables::STANDARD;
    for rho in HilbertPattern::ALL {
        let next = hilbert_next_pattern(rho);
        let order = hilbert_order(rho);
        for v in 0..4 {
            let (a, b) = (v / 2, v % 2);
            assert_eq!(t.t_p[rho as usize][v], next[a][b]);
            assert_eq!(t.t_v[rho as usize][v] as u64, order[a][b]);
            let h = order[a][b] as usize;
            assert_eq!(t.t_p_prime[rho as usize][h], next[a][b]);
            assert_eq!(t.t_v_prime[rho as usize][h] as usize, v);
        }
    }
}

fn any_binary_spec(max_m: u32, profile: DilationProfile) -> impl Strategy<Value = LayoutSpec> {
    (0..=max_m, 0u8..4, 0u32..=max_m).prop_map(move |(m, kind, beta)| {
        let base = match kind {
            0 => LayoutSpec::row_major(m.min(16)).unwrap(),
            1 => LayoutSpec::hilbert(m.min(16)).unwrap(),
            2 => LayoutSpec::morton(m.min(16)).unwrap(),
            _ => LayoutSpec::morton_hybrid(m.min(16), beta.min(m.min(16))).unwrap(),
        };
        let spec = base.with_profile(profile).unwrap();
        if profile == DilationProfile::Wide32 {
            let mut s = spec.with_m(m).unwrap();
            s.beta = beta.min(m);
            s.validate().unwrap();
            s
        } else {
            spec
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn round_trip_paper16(spec in any_binary_spec(16, DilationProfile::Paper16), i in any::<u64>(), j in any::<u64>()) {
        let n = spec.side();
        let idx = CartesianIndex::new(i % n, j % n);
        let z = spec.encode(idx).unwrap();
        prop_assert!(z.0 < spec.len());
        prop_assert_eq!(spec.decode(z).unwrap(), idx);
    }

    #[test]
    fn round_trip_wide32(spec in any_binary_spec(32, DilationProfile::Wide32), i in any::<u64>(), j in any::<u64>()) {
        let n = spec.side();
        let idx = CartesianIndex::new(i % n, j % n);
        let z = spec.encode(idx).unwrap();
        prop_assert_eq!(spec.decode(z).unwrap(), idx);
    }

    #[test]
    fn round_trip_peano(m in 0u32..=20, i in any::<u64>(), j in any::<u64>()) {
        let spec = LayoutSpec::peano(m).unwrap();
        let n = spec.side();
        let idx = CartesianIndex::new(i % n, j % n);
        let z = spec.encode(idx).unwrap();
        prop_assert!(z.0 < spec.len());
        prop_assert_eq!(spec.decode(z).unwrap(), idx);
    }

    #[test]
    fn dilation_round_trip(x in 0u64..(1 << 32)) {
        let d = dilate(x, DilationProfile::Wide32).unwrap();
        prop_assert_eq!(d & 0xAAAA_AAAA_AAAA_AAAA, 0);
        prop_assert_eq!(undilate(d, DilationProfile::Wide32), x);
    }

    #[test]
    fn hybrid_degenerates(m in 0u32..=16, i in any::<u64>(), j in any::<u64>()) {
        let n = 1u64 << m;
        let idx = CartesianIndex::new(i % n, j % n);
        let lo = LayoutSpec::morton_hybrid(m, 0).unwrap();
        let hi = LayoutSpec::morton_hybrid(m, m).unwrap();
        prop_assert_eq!(mh_encode(idx, &lo).unwrap(), morton_encode(idx, &LayoutSpec::morton(m).unwrap()).unwrap());
        prop_assert_eq!(mh_encode(idx, &hi).unwrap(), rm_encode(idx, &LayoutSpec::row_major(m).unwrap()).unwrap());
        let z = mh_encode(idx, &lo).unwrap();
        prop_assert_eq!(mh_decode(z, &lo).unwrap(), idx);
    }

    #[test]
    fn hilbert_steps_are_adjacent(m in 1u32..=16, z in any::<u64>()) {
        let spec = LayoutSpec::hilbert(m).unwrap();
        let z = z % (spec.len() - 1);
        let a = spec.decode(LinearIndex(z)).unwrap();
        let b = spec.decode(LinearIndex(z + 1)).unwrap();
        prop_assert_eq!(a.i.abs_diff(b.i) + a.j.abs_diff(b.j), 1);
    }

    #[test]
    fn peano_steps_are_adjacent(m in 1u32..=20, z in any::<u64>()) {
        let spec = LayoutSpec::peano(m).unwrap();
        let z = z % (spec.len() - 1);
        let a = spec.decode(LinearIndex(z)).unwrap();
        let b = spec.decode(LinearIndex(z + 1)).unwrap();
        prop_assert_eq!(a.i.abs_diff(b.i) + a.j.abs_diff(b.j), 1);
    }

    #[test]
    fn out_of_range_rejected(m in 0u32..=10, extra in 0u64..1000) {
        for spec in binary_specs(m) {
            let n = spec.side();
            prop_assert!(spec.encode(CartesianIndex::new(n + extra, 0)).is_err());
            prop_assert!(spec.encode(CartesianIndex::new(0, n + extra)).is_err());
            prop_assert!(spec.decode(LinearIndex(spec.len() + extra)).is_err());
        }
    }
}
