use proptest::prelude::*;

use hyperb_core::bcoloring::{coset_coloring, validate_coloring, PowerGraph};
use hyperb_core::bounds::{bound_report, upper_new, upper_old, upper_rough};
use hyperb_core::compression::{compress, compress_fully, is_compressed};
use hyperb_core::neighborhoods::common_closed;
use hyperb_core::notation::{parse_family, IntRange};
use hyperb_core::subset::{rank_bits, simplicial_cmp_bits, unrank_bits, MAX_GROUND};
use hyperb_core::{Family, GroundSet};

fn family_strategy(max_n: usize) -> impl Strategy<Value = Family> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::btree_set(0u64..1 << n, 0..=(1usize << n)).prop_map(move |set| {
            let ground = GroundSet::standard(n).unwrap();
            Family::from_bits(&ground, set.into_iter().collect()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn rank_round_trip(size in 0usize..=MAX_GROUND, raw in any::<u64>()) {
        let bits = if size == 0 { 0 } else { raw & ((1u64 << size) - 1) };
        let r = rank_bits(size, bits);
        prop_assert_eq!(unrank_bits(size, r), Ok(bits));
    }

    #[test]
    fn rank_is_monotone(size in 1usize..=20, a in any::<u64>(), b in any::<u64>()) {
        let mask = (1u64 << size) - 1;
        let (x, y) = (a & mask, b & mask);
        prop_assert_eq!(simplicial_cmp_bits(x, y), rank_bits(size, x).cmp(&rank_bits(size, y)));
    }

    #[test]
    fn family_display_round_trips(f in family_strategy(5)) {
        let text = f.to_string();
        prop_assert_eq!(Family::parse(&text, f.ground()).unwrap(), f);
    }

    #[test]
    fn compression_preserves_size_and_never_shrinks_neighborhoods(f in family_strategy(5), p in 1u32..5) {
        for &i in f.ground().labels() {
            let c = compress(&f, i).unwrap();
            prop_assert_eq!(c.len(), f.len());
            prop_assert!(is_compressed(&c, i).unwrap());
            prop_assert!(common_closed(&c, p).unwrap().len() >= common_closed(&f, p).unwrap().len());
        }
    }

    #[test]
    fn full_compression_is_a_fixpoint(f in family_strategy(5)) {
        let (fixed, _) = compress_fully(&f);
        prop_assert_eq!(fixed.len(), f.len());
        for &i in f.ground().labels() {
            prop_assert!(is_compressed(&fixed, i).unwrap());
        }
    }

    #[test]
    fn adjacency_is_symmetric_and_matches_binary_hamming(n in 1u32..=10, p in 1u32..=10, u in any::<u64>(), v in any::<u64>()) {
        let q = PowerGraph::hypercube(n, p).unwrap();
        let h = PowerGraph::hamming(n, 2, p).unwrap();
        let (u, v) = (u % q.vertex_count(), v % q.vertex_count());
        prop_assert_eq!(q.adjacent(u, v).unwrap(), q.adjacent(v, u).unwrap());
        prop_assert!(!q.adjacent(u, u).unwrap());
        let (hu, hv) = (q.tuple(u).unwrap().index(), q.tuple(v).unwrap().index());
        prop_assert_eq!(q.adjacent(u, v).unwrap(), h.adjacent(hu, hv).unwrap());
    }

    #[test]
    fn coset_coloring_is_proper_below_n(n in 1u32..=5, q in 2u32..=4, p in 0u32..5) {
        prop_assume!(p < n && (q as u64).pow(n) <= 1024);
        let g = PowerGraph::hamming(n, q, p).unwrap();
        let cert = validate_coloring(&g, &coset_coloring(n, q).unwrap()).unwrap();
        prop_assert!(cert.valid_proper);
    }

    #[test]
    fn parsers_never_panic(text in "\\PC{0,40}") {
        let _ = parse_family(&text);
        let _ = text.parse::<IntRange>();
        let ground = GroundSet::standard(6).unwrap();
        let _ = Family::parse(&text, &ground);
    }

    #[test]
    fn structured_noise_never_panics(text in "[{},0-9 .=]{0,30}") {
        let _ = parse_family(&text);
        let _ = text.parse::<IntRange>();
    }
}

#[test]
fn gates_mirror_quoted_ranges() {
    for n in 0..=40u32 {
        for p in 0..=n + 1 {
            let old = n >= 2 && n / 2 < p && p + 1 < n;
            assert_eq!(upper_old(n, p).is_applicable(), old, "old n={n} p={p}");
            let odd = n % 2 == 1 && n >= 5 && n.div_ceil(2) <= p && p + 2 <= n;
            let even = n % 2 == 0 && n >= 6 && n / 2 < p && p + 2 <= n;
            assert_eq!(upper_rough(n, p).is_applicable(), odd || even, "rough n={n} p={p}");
            assert_eq!(upper_new(n, p).is_applicable(), odd || even, "new n={n} p={p}");
        }
    }
}

#[test]
fn report_order_holds_on_grid() {
    for n in 2..=30u32 {
        for p in 1..=n {
            let r = bound_report(n, p).unwrap();
            let uppers: Vec<u128> = [r.upper_new, r.upper_rough, r.upper_old]
                .iter()
                .filter_map(|c| c.value())
                .collect();
            assert!(uppers.windows(2).all(|w| w[0] <= w[1]), "n={n} p={p}");
            if let (Some(lo), Some(&hi)) = (r.lower.value(), uppers.first()) {
                assert!(lo <= hi, "n={n} p={p}");
            }
        }
    }
}
