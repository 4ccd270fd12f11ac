//! The four published constructions, checked end to end.

mod common;

use std::time::Instant;

use common::fixture;
use orbit_codes::code::{neighbourhood_min, Neighbourhood};
use orbit_codes::perm::PermError;
use orbit_codes::{
    assemble_code, compose, parse_cycles, PermutationGroup, build_graph, extend_parity, is_doubleword_compatible, max_weight_clique_exact,
    max_weight_clique_heuristic, shorten_best, verify_code, Budget, Distance, HeuristicParams, NoClock,
    VerifyMode,
};

#[test]
fn generators_parse_and_are_compatible() {
    for (name, degree) in [("18_4", 34), ("24_4", 48), ("24_10", 48), ("25_6", 48)] {
        let f = fixture(name);
        assert_eq!(f.group.degree(), degree, "{name}");
        for g in f.group.generators() {
            assert!(is_doubleword_compatible(g, degree / 2).unwrap(), "{name}: {g}");
        }
        for x in &f.reps {
            assert_eq!(x.len(), degree);
        }
    }
}

#[test]
fn printed_24_4_generator_needs_one_more_transposition() {
    let printed = "(1 35)(2 36)(3 9 27 33)(4 34 28 10)(5 8)(6 7)(11 25)(12 26)(13 47)(14 48)\
                   (15 21 39 45)(16 46 40 22)(17 20)(18 19)(24 38)(29 32)(30 31)(41 44)(42 43)";
    let p = parse_cycles(printed, 48).unwrap();
    assert!(!is_doubleword_compatible(&p, 24).unwrap());
    let group = PermutationGroup::new(vec![p.clone()]).unwrap();
    assert_eq!(
        group.check_doubleword_compatible(24),
        Err(PermError::Incompatible { generator: 1, point: 13 })
    );
    let repaired = compose(&p, &parse_cycles("(23 37)", 48).unwrap()).unwrap();
    assert!(is_doubleword_compatible(&repaired, 24).unwrap());
    assert_eq!(&repaired, &fixture("24_4").group.generators()[1]);
}

#[test]
fn degree_34_group_fixes_coordinates_1_and_18() {
    let f = fixture("18_4");
    for g in f.group.generators() {
        assert_eq!(g.image(1), 1);
        assert_eq!(g.image(18), 18);
    }
}

#[test]
fn code_18_4() {
    let t = Instant::now();
    let f = fixture("18_4");
    let a = f.action();
    let asm = assemble_code(&a, &f.reps).unwrap();
    assert_eq!(asm.code.length(), 17);
    assert_eq!(asm.code.size(), 5632);
    for o in &asm.orbits {
        assert!(o.intra.at_least(3));
    }
    let full = verify_code(&asm.code, VerifyMode::Pairwise).unwrap();
    let reduced = verify_code(&asm.code, VerifyMode::OrbitReduced { action: &a, reps: &f.reps }).unwrap();
    assert_eq!(full.min_distance, Distance::Finite(3));
    assert_eq!(reduced.min_distance, full.min_distance);
    assert!(full.witness_holds(&asm.code) && reduced.witness_holds(&asm.code));

    let ext = extend_parity(&asm.code, &full).unwrap();
    assert_eq!((ext.length(), ext.size()), (18, 5632));
    let r = verify_code(&ext, VerifyMode::Pairwise).unwrap();
    assert_eq!(r.min_distance, Distance::Finite(4));
    eprintln!("18_4: {:?}", t.elapsed());
}

#[test]
fn code_24_4_and_shortenings() {
    let t = Instant::now();
    let f = fixture("24_4");
    let a = f.action();
    let asm = assemble_code(&a, &f.reps).unwrap();
    assert_eq!((asm.code.length(), asm.code.size()), (24, 327680));
    let reduced = verify_code(&asm.code, VerifyMode::OrbitReduced { action: &a, reps: &f.reps }).unwrap();
    assert_eq!(reduced.min_distance, Distance::Finite(4));
    assert!(reduced.witness_holds(&asm.code));
    eprintln!("24_4 reduced: {:?}", t.elapsed());

    // independent route: probe radius-3 spheres around every word
    match neighbourhood_min(&asm.code, u64::MAX).unwrap() {
        Neighbourhood::Found(d, _, _) => assert_eq!(d, 4),
        other => panic!("{other:?}"),
    }
    eprintln!("24_4 spheres: {:?}", t.elapsed());

    let mut code = asm.code;
    for (length, at_least) in [(23, 163840), (22, 81920), (21, 40960)] {
        let s = shorten_best(&code).unwrap();
        code = s.code;
        assert_eq!(code.length(), length);
        assert!(code.size() >= at_least, "{} < {at_least}", code.size());
        let r = verify_code(&code, VerifyMode::Exhaustive).unwrap();
        assert!(r.meets(4), "{length}: {}", r.min_distance);
        eprintln!("shortened to {length}: size {} d {} {:?}", code.size(), r.min_distance, t.elapsed());
    }
}

#[test]
fn code_24_10() {
    let f = fixture("24_10");
    let a = f.action();
    let asm = assemble_code(&a, &f.reps).unwrap();
    assert_eq!((asm.code.length(), asm.code.size()), (24, 136));
    let r = verify_code(&asm.code, VerifyMode::Pairwise).unwrap();
    assert_eq!(r.min_distance, Distance::Finite(10));

    // the six orbits form a clique of weight 136 in the compatibility graph
    let orbits: Vec<_> = f.reps.iter().map(|&x| a.compute_orbit(x, true).unwrap()).collect();
    let g = build_graph(&a, &orbits, 10).unwrap();
    assert_eq!(g.node_count(), 6);
    assert_eq!(g.graph.edge_count(), 15);
    let best = max_weight_clique_exact(&g.graph, Budget::unlimited(), &NoClock);
    assert_eq!(best.weight, 136);
    assert!(best.optimal);
}

#[test]
fn code_25_6() {
    let t = Instant::now();
    let f = fixture("25_6");
    let a = f.action();
    let asm = assemble_code(&a, &f.reps).unwrap();
    assert_eq!((asm.code.length(), asm.code.size()), (24, 17920));
    let full = verify_code(&asm.code, VerifyMode::Pairwise).unwrap();
    assert_eq!(full.min_distance, Distance::Finite(5));
    let reduced = verify_code(&asm.code, VerifyMode::OrbitReduced { action: &a, reps: &f.reps }).unwrap();
    assert_eq!(reduced.min_distance, Distance::Finite(5));
    let ext = extend_parity(&asm.code, &full).unwrap();
    let r = verify_code(&ext, VerifyMode::Exhaustive).unwrap();
    assert_eq!((ext.length(), ext.size(), r.min_distance), (25, 17920, Distance::Finite(6)));
    eprintln!("25_6: {:?}", t.elapsed());
}

#[test]
fn orbit_sizes_sum_to_published_sizes() {
    for (name, total) in [("18_4", 5632), ("24_4", 327680), ("24_10", 136), ("25_6", 17920)] {
        let f = fixture(name);
        let a = f.action();
        let sum: usize = f.reps.iter().map(|&x| a.compute_orbit(x, false).unwrap().size).sum();
        assert_eq!(sum, total, "{name}");
    }
}

#[test]
fn graph_of_the_24_4_orbits_is_a_clique() {
    let f = fixture("24_4");
    let a = f.action();
    let orbits: Vec<_> = f.reps.iter().map(|&x| a.compute_orbit(x, true).unwrap()).collect();
    let g = build_graph(&a, &orbits, 4).unwrap();
    assert_eq!(g.node_count(), 16);
    assert_eq!(g.graph.edge_count(), 120);
    let h = max_weight_clique_heuristic(&g.graph, HeuristicParams { iterations: 10, rng_seed: 1 });
    assert_eq!(h.weight, 327680);
}
