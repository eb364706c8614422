//! Cross-module invariants that tie the solver, the bound chain, the
//! closed-form catalog, and the independent brute-force oracle together on
//! every graph class small enough to enumerate.

use sumdex_core::bounds::{haslegrave_bound, known_formula, sum_index_bounds, CHROMATIC_NODE_BUDGET};
use sumdex_core::extremal::{build_table, enumerate_graphs, ubeg_bound};
use sumdex_core::family::FamilySpec;
use sumdex_core::graph::Graph;
use sumdex_core::graph6::encode_graph6;
use sumdex_core::labeling::validate_labeling;
use sumdex_core::solver::{brute_force_min_sums, sum_index_exact, CertificateStatus, SolverConfig};

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn solve(g: &Graph) -> usize {
    sum_index_exact(g, &cfg()).unwrap().sum_index.expect("solvable at this scale")
}

#[test]
fn solver_agrees_with_bounds_and_oracle_up_to_n6() {
    for n in 2..=6usize {
        for g in enumerate_graphs(n).unwrap() {
            if g.edge_count() == 0 {
                assert_eq!(solve(&g), 0);
                continue;
            }
            let value = solve(&g) as i64;
            let tag = encode_graph6(&g);
            assert!(value >= g.max_degree() as i64, "{tag}: below max degree");
            assert!(value >= haslegrave_bound(&g).unwrap(), "{tag}: below the degree bound");
            assert!(value <= 2 * n as i64 - 3, "{tag}: above 2n-3");
            let (oracle, witness) = brute_force_min_sums(&g, n + 3).unwrap();
            assert!(validate_labeling(&g, &witness).is_ok());
            assert!(value <= oracle as i64, "{tag}: solver {value} above oracle {oracle}");
            // the oracle search range is wide enough to be exact here
            assert_eq!(value, oracle as i64, "{tag}: oracle disagrees");
        }
    }
}

#[test]
fn certificates_validate_everywhere() {
    for n in 2..=5usize {
        for g in enumerate_graphs(n).unwrap() {
            let cert = sum_index_exact(&g, &cfg()).unwrap();
            assert_eq!(cert.status, CertificateStatus::Exact);
            let value = cert.sum_index.unwrap();
            if value == 0 {
                continue;
            }
            let witness = cert.witness.expect("positive value has a witness");
            let (wg, wf) = witness.decode().unwrap();
            assert_eq!(wg, g);
            assert!(validate_labeling(&wg, &wf).is_ok());
            assert_eq!(witness.sum_count, value);
            let report = sum_index_bounds(&g, CHROMATIC_NODE_BUDGET);
            assert!(g.max_degree() <= report.chromatic_index_lower);
            assert!(report.chromatic_index_lower <= report.best_lower);
            assert!(report.best_lower <= value && value <= report.best_upper);
            assert_eq!(report.best_upper, 2 * g.n() - 3);
        }
    }
}

#[test]
fn edge_addition_lipschitz_up_to_n6() {
    for n in [6usize] {
        for g in enumerate_graphs(n).unwrap() {
            let base = solve(&g);
            for (u, v) in g.non_edges() {
                let grown = solve(&g.with_edge(u, v).unwrap());
                assert!(
                    base <= grown && grown <= base + 1,
                    "{}: adding ({u},{v}) moved {base} -> {grown}",
                    encode_graph6(&g)
                );
            }
        }
    }
}

#[test]
fn catalog_families_up_to_n6_match_the_solver() {
    let mut specs: Vec<FamilySpec> = vec![
        FamilySpec::hypercube(1).unwrap(),
        FamilySpec::hypercube(2).unwrap(),
    ];
    for n in 2..=6 {
        specs.push(FamilySpec::complete(n).unwrap());
    }
    for len in 3..=6 {
        specs.push(FamilySpec::cycle(len).unwrap());
    }
    for m in 1..=3usize {
        for n in m..=5usize {
            if m + n <= 6 {
                specs.push(FamilySpec::complete_bipartite(m, n).unwrap());
            }
        }
    }
    for parts in [vec![2, 2, 2], vec![3, 2, 1], vec![2, 2, 1, 1], vec![1, 1, 1, 1]] {
        specs.push(FamilySpec::complete_multipartite(parts).unwrap());
    }
    for (copies, size) in [(1usize, 2usize), (2, 2), (3, 2), (1, 3), (2, 3), (1, 4)] {
        specs.push(FamilySpec::cluster(copies, size).unwrap());
    }
    for spec in specs {
        let g = spec.generate();
        assert!(g.n() <= 6);
        let expected = known_formula(&spec).expect("catalog family") as usize;
        assert_eq!(solve(&g), expected, "{}", spec.tag());
    }
}

#[test]
fn petersen_graph_is_certified_at_the_regular_bound() {
    // 3-regular, so the degree bound gives S >= 5; the solver finds a
    // 5-sum witness, so both sides of the value are verified independently
    let petersen = Graph::new(
        10,
        [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ],
    )
    .unwrap();
    let cert = sum_index_exact(&petersen, &cfg()).unwrap();
    assert_eq!(cert.sum_index, Some(5));
    assert_eq!(haslegrave_bound(&petersen).unwrap(), 5);
    let (wg, wf) = cert.witness.unwrap().decode().unwrap();
    assert_eq!(sumdex_core::labeling::rank_sums(&wg, &wf).unwrap().count(), 5);
}

#[test]
fn family_generation_is_deterministic() {
    let specs = [
        FamilySpec::complete(6).unwrap(),
        FamilySpec::complete_multipartite(vec![3, 2, 2]).unwrap(),
        FamilySpec::cycle(9).unwrap(),
        FamilySpec::path(7).unwrap(),
        FamilySpec::hypercube(5).unwrap(),
        FamilySpec::cluster(3, 4).unwrap(),
        FamilySpec::ladder(8).unwrap(),
        FamilySpec::threshold_tail(6).unwrap(),
        FamilySpec::join_family(vec![3, 2, 2]).unwrap(),
    ];
    for spec in specs {
        let a = spec.generate();
        let b = spec.generate();
        assert_eq!(a, b, "{}", spec.tag());
        assert_eq!(encode_graph6(&a), encode_graph6(&b));
    }
}

#[test]
fn seven_vertex_classes_count() {
    assert_eq!(enumerate_graphs(7).unwrap().len(), 1044);
}

#[test]
fn graph6_decoder_never_panics() {
    use rand::{RngExt, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let len = rng.random_range(0..20usize);
        let bytes: Vec<u8> = (0..len).map(|_| rng.random_range(0..=127u8)).collect();
        if let Ok(text) = String::from_utf8(bytes) {
            let _ = sumdex_core::graph6::decode_graph6(&text); // Ok or Err, never a panic
        }
    }
}

#[test]
fn budget_cutoff_mid_scan_keeps_exhaustion_evidence() {
    use sumdex_core::solver::LowerEvidence;
    // 2K_3 exhausts k = 3 in 30 nodes and needs ~2 more to certify k = 4;
    // a budget in between must report unknown with the exhaustion recorded
    let g = FamilySpec::cluster(2, 3).unwrap().generate();
    let full = sum_index_exact(&g, &cfg()).unwrap();
    assert_eq!(full.sum_index, Some(4));
    let LowerEvidence::Exhaustion { colorings_examined, .. } = &full.lower_evidence else {
        panic!("expected exhaustion evidence");
    };
    let k3_nodes = colorings_examined[0];
    let tight = SolverConfig { max_nodes: k3_nodes + 1, ..cfg() };
    let cut = sum_index_exact(&g, &tight).unwrap();
    assert_eq!(cut.status, CertificateStatus::Unknown);
    let [lo, hi] = cut.bracket.unwrap();
    assert_eq!(lo, 4, "k = 3 was exhausted, so the bracket starts above it");
    assert!(hi >= lo);
    match cut.lower_evidence {
        LowerEvidence::Exhaustion { ref k_range, .. } => assert_eq!(k_range, &vec![3]),
        ref other => panic!("expected exhaustion evidence, got {other:?}"),
    }
}

#[test]
fn table_is_independent_of_worker_count() {
    let one = build_table(5, &cfg(), 1).unwrap();
    let four = build_table(5, &cfg(), 4).unwrap();
    assert_eq!(one.to_json_string(), four.to_json_string());
    assert_eq!(one.to_csv(), four.to_csv());
}

#[test]
fn complete_graph_row_is_consistent_with_ubeg() {
    // at N = 2n-3 only the complete graph attains the maximum edge count
    let table = build_table(6, &cfg(), 1).unwrap();
    for n in 2..=6usize {
        let target = 2 * n - 3;
        let e = table.entry(n, target).expect("complete graph row");
        assert_eq!(e.max_edges, n * (n - 1) / 2, "n = {n}");
        assert!(e.max_edges as u64 <= ubeg_bound(n, target).unwrap());
    }
}
