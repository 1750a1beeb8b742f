//! Randomized invariants: structural laws that must hold on every input,
//! exercised over generated graphs, matrices, and bit patterns.

use idxcode::code::{self, VerifyMode};
use idxcode::coloring;
use idxcode::gf2::{self, BitVector, MinrankOutcome};
use idxcode::graph::gen_bounded_minrank_instance;
use idxcode::rounding;
use idxcode::spectral::{self, SymmetricMatrix};
use idxcode::{Graph, VertexSet};
use proptest::prelude::*;

/// A graph on 1..=max_n vertices with each pair flipped independently.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut next = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[next] {
                        g.add_edge(i, j);
                    }
                    next += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_is_an_involution(g in arb_graph(12)) {
        let gc = g.complement();
        for i in 0..g.n() {
            for j in 0..g.n() {
                if i != j {
                    prop_assert_ne!(g.has_edge(i, j), gc.has_edge(i, j));
                }
            }
        }
        prop_assert_eq!(gc.complement(), g);
    }

    #[test]
    fn induced_subgraphs_preserve_adjacency(g in arb_graph(12), mask in any::<u16>()) {
        let set =
            VertexSet::from_members(g.n(), (0..g.n()).filter(|&v| mask >> v & 1 == 1));
        let (h, map) = g.induced_subgraph(&set).unwrap();
        prop_assert_eq!(h.n(), map.len());
        prop_assert!(map.windows(2).all(|w| w[0] < w[1]));
        for (a, &va) in map.iter().enumerate() {
            prop_assert!(set.contains(va));
            for (b, &vb) in map.iter().enumerate() {
                if a != b {
                    prop_assert_eq!(h.has_edge(a, b), g.has_edge(va, vb));
                }
            }
        }
    }

    #[test]
    fn greedy_colorings_are_proper(g in arb_graph(16)) {
        let col = coloring::greedy_coloring(&g);
        prop_assert!(col.is_proper(&g));
        prop_assert!(col.colors.iter().all(|&c| c < col.count));
        prop_assert_eq!(col.class_sizes().iter().sum::<usize>(), g.n());
    }

    #[test]
    fn bit_strings_round_trip(width in 1usize..=64, raw in any::<u64>()) {
        let value = if width == 64 { raw } else { raw & ((1u64 << width) - 1) };
        let v = BitVector::from_u64(width, value);
        let back = BitVector::from_bit_string(&v.to_bit_string()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn tail_inversion_round_trips(s in 0.0f64..6.0) {
        let back = rounding::inverse_normal_tail(rounding::normal_tail(s)).unwrap();
        prop_assert!((back - s).abs() <= 1e-9, "s = {s}, back = {back}");
    }

    #[test]
    fn eigenvalue_sums_match_the_trace(
        n in 1usize..=8,
        cells in prop::collection::vec(-4i8..=4, 64),
    ) {
        let mut rows = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            for j in i..n {
                let x = cells[i * n + j] as f64;
                rows[i][j] = x;
                rows[j][i] = x;
            }
        }
        let trace: f64 = (0..n).map(|i| rows[i][i]).sum();
        let m = SymmetricMatrix::from_rows(&rows).unwrap();
        let values = spectral::eigenvalues_sym(&m, 1e-12).unwrap();
        let sum: f64 = values.iter().sum();
        prop_assert!((sum - trace).abs() <= 1e-8 * n as f64, "sum {sum} vs trace {trace}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn adding_an_edge_never_raises_minrank(g in arb_graph(6)) {
        let n = g.n();
        let missing = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !g.has_edge(i, j));
        prop_assume!(missing.is_some());
        let (i, j) = missing.unwrap();
        let before = match gf2::minrank_oracle(&g, 6).0 {
            MinrankOutcome::Exact(v) => v,
            other => return Err(TestCaseError::fail(format!("baseline: {other:?}"))),
        };
        let mut denser = g.clone();
        denser.add_edge(i, j);
        let after = match gf2::minrank_oracle(&denser, 6).0 {
            MinrankOutcome::Exact(v) => v,
            other => return Err(TestCaseError::fail(format!("denser: {other:?}"))),
        };
        prop_assert!(after <= before, "adding ({i},{j}) raised minrank {before} -> {after}");
    }

    #[test]
    fn generated_instances_respect_the_declared_bound(
        n in 1usize..=10,
        k in 1usize..=3,
        p in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let g = gen_bounded_minrank_instance(n, k, p, seed);
        match gf2::minrank_oracle(&g.complement(), k).0 {
            MinrankOutcome::Exact(v) => prop_assert!(v <= k, "bound {k}, oracle {v}"),
            other => return Err(TestCaseError::fail(format!("oracle: {other:?}"))),
        }
    }

    #[test]
    fn coloring_codes_decode_every_word(g in arb_graph(8)) {
        let col = coloring::greedy_coloring(&g.complement());
        let built = code::code_from_coloring(&g, &col).unwrap();
        prop_assert_eq!(built.length, col.count);
        let outcome = code::verify_code(&g, &built, VerifyMode::Exhaustive).unwrap();
        prop_assert!(outcome.pass, "counterexample: {:?}", outcome.counterexample);
    }

    #[test]
    fn encoders_are_linear_maps(g in arb_graph(8), a in any::<u64>(), b in any::<u64>()) {
        let n = g.n();
        let col = coloring::greedy_coloring(&g.complement());
        let built = code::code_from_coloring(&g, &col).unwrap();
        let keep = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let x = BitVector::from_u64(n, a & keep);
        let y = BitVector::from_u64(n, b & keep);
        let mut xy = x.clone();
        xy.xor_assign(&y);
        let mut sum = code::encode(&built, &x).unwrap();
        sum.xor_assign(&code::encode(&built, &y).unwrap());
        prop_assert_eq!(code::encode(&built, &xy).unwrap(), sum);
    }
}
