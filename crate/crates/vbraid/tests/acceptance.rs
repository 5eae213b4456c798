//! Acceptance gate: one test per criterion, each printing a PASS line with
//! the checked quantities (visible with `cargo test -- --nocapture`).
//!
//! Run with `cargo test --test acceptance`.

mod common;

use common::{random_gauss, random_word, word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use vbraid::braiding::braid_from_gauss;
use vbraid::gauss::{gauss_of_closure, GaussData};
use vbraid::invariant::q_invariant;
use vbraid::laurent::LaurentPoly;
use vbraid::moves::{
    apply_step, conjugate, destabilize_left, destabilize_right, stabilize_left, stabilize_right,
    verify_witness, welded_exchange_witness, MoveSet, MoveStep, StabDir, StabKind,
};
use vbraid::rewrite::{applicable_rewrites, apply_rewrite, GroupFlavor};
use vbraid::search::{equiv_search, SearchLimits};
use vbraid::word::{BraidWord, Generator};

fn q2(w: &BraidWord) -> LaurentPoly {
    q_invariant(w, 2, 0).expect("built-in table evaluates")
}

fn poly(text: &str) -> LaurentPoly {
    text.parse().expect("test polynomial parses")
}

const FIGURE7: &str = "\
crossing v1 +
crossing v2 +
crossing v3 -
arc v3.3 -> v1.1
arc v1.3 -> v2.2
arc v2.4 -> v3.2
arc v3.4 -> v2.1
arc v2.3 -> v1.2
arc v1.4 -> v3.1
loops 0
";

/// Criterion 1: the seven published values of the invariant at N=2, α=0
/// reproduce exactly.
#[test]
fn criterion_1_golden_values() {
    let cases = [
        ("degree 3; t1 S1 t2 t1 s1 t2", "0"),
        ("degree 3; t1 S1 S2 t1 s1 s2", "q^-3 - q^-1 - q + q^3"),
        ("degree 3; S2 t1 S2 t1", "q^-7 - q^-5 - q^-3 + 2 q^-1 + q"),
        ("degree 3; S2 S1 S2 s1", "q^-1 + q"),
        ("degree 2; t1 S1", "1 - q^-2"),
        ("degree 3; t2 S2 s1", "-1 + q^2"),
        ("degree 3; t2 S2 S1", "1 + q^-6 - 2 q^-4"),
    ];
    for (text, expected) in cases {
        assert_eq!(q2(&word(text)), poly(expected), "Q_2,0 of {text}");
    }
    println!("criterion 1 PASS: all 7 golden Q_2,0 values exact");
}

/// Criterion 2: 200 randomized (word, move) pairs with moves drawn from the
/// rewrite/conjugation/right-stabilization vocabulary leave the invariant
/// unchanged exactly.
#[test]
fn criterion_2_move_invariance() {
    let mut rng = StdRng::seed_from_u64(0x6_1_2024);
    let mut counts = [0usize; 3];
    for case in 0..200 {
        let w = random_word(&mut rng, 4, 10);
        let before = q2(&w);

        // candidate moves: VM0 rewrites, VM1 single-generator conjugations,
        // VM2 stabilizations and destabilizations
        let mut steps: Vec<MoveStep> = applicable_rewrites(&w, GroupFlavor::Vb)
            .into_iter()
            .map(MoveStep::Rewrite)
            .collect();
        let rewrite_count = steps.len();
        for i in 1..w.degree() {
            for g in [
                Generator::Sigma(i),
                Generator::SigmaInv(i),
                Generator::Tau(i),
            ] {
                steps.push(MoveStep::Conjugate(
                    BraidWord::new(w.degree(), vec![g]).unwrap(),
                ));
            }
        }
        let conj_count = steps.len() - rewrite_count;
        for kind in [StabKind::Positive, StabKind::Negative, StabKind::Virtual] {
            steps.push(MoveStep::StabRight {
                kind,
                dir: StabDir::Stabilize,
            });
        }
        if let Ok((_, kind)) = destabilize_right(&w) {
            steps.push(MoveStep::StabRight {
                kind,
                dir: StabDir::Destabilize,
            });
        }

        let pick = rng.random_range(0..steps.len());
        let step = &steps[pick];
        counts[if pick < rewrite_count {
            0
        } else if pick < rewrite_count + conj_count {
            1
        } else {
            2
        }] += 1;
        let moved = apply_step(&w, step).expect("candidate move applies");
        assert_eq!(q2(&moved), before, "case {case}: {w} under {step}");
    }
    println!(
        "criterion 2 PASS: Q_2,0 unchanged across 200 random moves \
         ({} rewrites, {} conjugations, {} stabilizations)",
        counts[0], counts[1], counts[2]
    );
}

/// Criterion 3: the exchange-move pairs are separated by the invariant, the
/// left positive/negative stabilization pairs likewise, and bounded search
/// without VM3 is inconclusive on both exchange pairs at depth 8.
#[test]
fn criterion_3_separation() {
    let b1 = word("degree 3; t1 S1 t2 t1 s1 t2");
    let b2 = word("degree 3; t1 S1 S2 t1 s1 s2");
    let b3 = word("degree 3; S2 t1 S2 t1");
    let b4 = word("degree 3; S2 S1 S2 s1");
    assert_ne!(q2(&b1), q2(&b2), "right exchange pair must separate");
    assert_ne!(q2(&b3), q2(&b4), "left exchange pair must separate");

    let base = word("degree 2; t1 S1");
    for kind in [StabKind::Positive, StabKind::Negative] {
        let stabbed = stabilize_left(&base, kind);
        assert_ne!(q2(&base), q2(&stabbed), "left {kind:?} stabilization");
    }

    // depth 8 at the default degree/length caps
    let limits = SearchLimits::default();
    assert_eq!(limits.max_depth(), 8);
    assert!(
        equiv_search(&b1, &b2, MoveSet::VbStrict, limits).is_none(),
        "search must be INCONCLUSIVE on the right exchange pair"
    );
    assert!(
        equiv_search(&b3, &b4, MoveSet::VbStrict, limits).is_none(),
        "search must be INCONCLUSIVE on the left exchange pair"
    );
    println!(
        "criterion 3 PASS: exchange and left-stabilization pairs separated; \
         vb-strict search inconclusive at depth 8"
    );
}

/// Criterion 4: braiding round trips — words re-braid to the same Gauss data
/// and the same invariant; abstract data round-trips through a braid.
#[test]
fn criterion_4_braiding_round_trip() {
    let mut rng = StdRng::seed_from_u64(0x6_4_2024);
    for case in 0..100 {
        let w = random_word(&mut rng, 4, 10);
        let g = gauss_of_closure(&w);
        let braid = braid_from_gauss(&g).expect("closure data braids");
        assert!(
            gauss_of_closure(&braid).same_gauss_data(&g),
            "case {case}: gauss round trip of {w}"
        );
        assert_eq!(q2(&braid), q2(&w), "case {case}: Q through re-braiding of {w}");
    }
    for case in 0..50 {
        let g = random_gauss(&mut rng, 5);
        let braid = braid_from_gauss(&g).expect("abstract data braids");
        let back = gauss_of_closure(&braid);
        assert!(back.same_gauss_data(&g), "case {case}: abstract round trip");
        let again = braid_from_gauss(&back).expect("round-tripped data braids");
        assert_eq!(
            q2(&again),
            q2(&braid),
            "case {case}: Q stable under re-braiding"
        );
    }
    println!(
        "criterion 4 PASS: 100 word and 50 abstract Gauss round trips, \
         invariant preserved"
    );
}

/// Criterion 5: the three-crossing two-component example datum parses,
/// canonicalizes stably, braids, and round-trips.
#[test]
fn criterion_5_figure_data_fidelity() {
    let g: GaussData = FIGURE7.parse().expect("listing parses");
    assert_eq!(g.crossing_count(), 3);
    assert_eq!(g.mu(), 2);
    let signs: Vec<_> = g.crossings().values().copied().collect();
    assert_eq!(
        signs,
        vec![
            vbraid::word::Sign::Plus,
            vbraid::word::Sign::Plus,
            vbraid::word::Sign::Minus
        ]
    );

    // canonical form is stable across relabelings and pinned
    let relabeled: GaussData = FIGURE7
        .replace("v1", "x7")
        .replace("v2", "x1")
        .replace("v3", "x4")
        .parse()
        .unwrap();
    assert_eq!(g.canonical_code(), relabeled.canonical_code());
    assert_eq!(
        g.canonical_code(),
        "+1.1,-2.1,+3.1,-2.2|+1.2,+3.2|loops:0",
        "golden canonical code"
    );

    // emit/parse round trip is the identity on canonical text
    let emitted = g.to_string();
    assert_eq!(emitted.parse::<GaussData>().unwrap(), g);

    let braid = braid_from_gauss(&g).expect("figure data braids");
    assert_eq!(
        braid.letters().iter().filter(|l| l.is_real()).count(),
        3,
        "three real crossings"
    );
    assert!(gauss_of_closure(&braid).same_gauss_data(&g));
    println!(
        "criterion 5 PASS: figure data parses, canonical code pinned, braids \
         and round-trips (braid degree {}, length {})",
        braid.degree(),
        braid.len()
    );
}

/// Criterion 6: the hard-coded welded derivation of the right exchange move
/// replays step by step under the welded vocabulary.
#[test]
fn criterion_6_welded_witness() {
    let b1 = word("degree 2; t1 S1");
    let b2 = word("degree 2; t1 s1");
    let witness = welded_exchange_witness(&b1, &b2).expect("chain builds");
    assert_eq!(witness.start, word("degree 3; t1 S1 S2 t1 s1 s2"));
    assert_eq!(witness.end, word("degree 3; t1 S1 t2 t1 s1 t2"));
    verify_witness(&witness, GroupFlavor::Wb).expect("every step legal under WB");
    assert!(
        verify_witness(&witness, GroupFlavor::Vb).is_err(),
        "the chain must actually use the welded relation"
    );
    println!(
        "criterion 6 PASS: welded exchange witness replays ({} steps, \
         degrees up to {})",
        witness.steps.len(),
        witness.start.degree() + 1
    );
}

/// Criterion 7: structural invariants — permutation and writhe under 500
/// random rewrites, Gauss data under virtual right stabilization, and
/// destabilize ∘ stabilize = identity for all three types.
#[test]
fn criterion_7_structural_invariants() {
    let mut rng = StdRng::seed_from_u64(0x6_7_2024);
    let mut checked = 0;
    while checked < 500 {
        let w = random_word(&mut rng, 4, 10);
        let rewrites = applicable_rewrites(&w, GroupFlavor::Vb);
        if rewrites.is_empty() {
            continue;
        }
        let r = &rewrites[rng.random_range(0..rewrites.len())];
        let moved = apply_rewrite(&w, r).expect("enumerated rewrite applies");
        assert_eq!(moved.permutation(), w.permutation(), "{w} under {r}");
        assert_eq!(moved.writhe(), w.writhe(), "{w} under {r}");
        checked += 1;
    }

    for _ in 0..100 {
        let w = random_word(&mut rng, 4, 8);
        let stabbed = stabilize_right(&w, StabKind::Virtual);
        assert!(
            gauss_of_closure(&w).same_gauss_data(&gauss_of_closure(&stabbed)),
            "virtual stabilization must preserve Gauss data: {w}"
        );
        for kind in [StabKind::Positive, StabKind::Negative] {
            let g = gauss_of_closure(&stabilize_right(&w, kind));
            assert_eq!(
                g.crossing_count(),
                gauss_of_closure(&w).crossing_count() + 1,
                "real stabilization adds one crossing: {w}"
            );
        }
        for kind in [StabKind::Positive, StabKind::Negative, StabKind::Virtual] {
            let (back, k) = destabilize_right(&stabilize_right(&w, kind)).unwrap();
            assert_eq!((back, k), (w.clone(), kind));
            let (back, k) = destabilize_left(&stabilize_left(&w, kind)).unwrap();
            assert_eq!((back, k), (w.clone(), kind));
        }
        // conjugation-invariance of the permutation's cycle structure
        let g = BraidWord::new(
            w.degree(),
            random_word(&mut rng, w.degree(), 3).letters().to_vec(),
        )
        .expect("conjugator letters fit the degree");
        let conj = conjugate(&w, &g).unwrap();
        assert_eq!(
            conj.permutation().cycle_count(),
            w.permutation().cycle_count()
        );
    }
    println!(
        "criterion 7 PASS: 500 rewrites preserve permutation and writhe; \
         stabilizations behave on Gauss data and invert exactly"
    );
}
