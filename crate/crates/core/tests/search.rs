mod common;

use avoidance::detectors::Pattern;
use avoidance::search::{longest_avoiding, longest_avoiding_custom, Limits, SearchConfig};
use avoidance::table::golden;
use avoidance::Error;
use common::*;

fn config(r: usize, k: u32) -> SearchConfig {
    SearchConfig::new(r, k)
}

#[test]
fn witness_is_lexicographically_least_and_maximal() {
    // full enumeration of lengths l and l + 1
    for (r, k) in [(2, 2), (2, 3), (3, 2)] {
        let res = longest_avoiding(&config(r, k)).unwrap();
        assert!(res.complete);
        let first = all_words(res.l, k)
            .find(|w| naive_congruential(w, r, k).is_none())
            .unwrap();
        assert_eq!(res.witness.letters(), &first[..], "r={r} k={k}");
        assert!(all_words(res.l + 1, k).all(|w| naive_congruential(&w, r, k).is_some()));
    }
}

#[test]
fn golden_rows() {
    for (r, k) in [(2, 2), (2, 3), (2, 4), (3, 2)] {
        let res = longest_avoiding(&config(r, k)).unwrap();
        let (l, w) = golden(r, k).unwrap();
        assert_eq!(
            (res.l, &res.witness, res.complete),
            (l, &w, true),
            "r={r} k={k}"
        );
    }
}

#[test]
fn deterministic_including_node_counts() {
    let a = longest_avoiding(&config(2, 4)).unwrap();
    let b = longest_avoiding(&config(2, 4)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn parallel_and_symmetric_runs_agree_with_serial() {
    for (r, k) in [(2, 3), (2, 4), (3, 2), (2, 5)] {
        let serial = longest_avoiding(&config(r, k)).unwrap();
        for depth in [1, 3, 6] {
            for symmetry in [false, true] {
                let cfg = SearchConfig {
                    parallel_depth: depth,
                    threads: 3,
                    symmetry,
                    ..config(r, k)
                };
                let res = longest_avoiding(&cfg).unwrap();
                assert_eq!(
                    (res.l, &res.witness, res.complete),
                    (serial.l, &serial.witness, true)
                );
            }
        }
        let sym = longest_avoiding(&SearchConfig {
            symmetry: true,
            ..config(r, k)
        })
        .unwrap();
        assert_eq!((sym.l, &sym.witness), (serial.l, &serial.witness));
        assert!(sym.nodes_explored <= serial.nodes_explored);
    }
}

#[test]
fn max_len_caps() {
    let full = longest_avoiding(&config(2, 4)).unwrap();
    // one more than l leaves the result exact
    let cfg = SearchConfig {
        max_len: Some(full.l + 1),
        ..config(2, 4)
    };
    let res = longest_avoiding(&cfg).unwrap();
    assert_eq!((res.l, res.complete), (full.l, true));
    // at l the tree is cut, so nothing is certified
    let cfg = SearchConfig {
        max_len: Some(full.l),
        ..config(2, 4)
    };
    let res = longest_avoiding(&cfg).unwrap();
    assert_eq!(
        (res.l, &res.witness, res.complete),
        (full.l, &full.witness, false)
    );
    let cfg = SearchConfig {
        max_len: Some(5),
        ..config(2, 4)
    };
    let res = longest_avoiding(&cfg).unwrap();
    assert_eq!((res.l, res.complete), (5, false));
    let least = all_words(5, 4)
        .find(|w| naive_congruential(w, 2, 4).is_none())
        .unwrap();
    assert_eq!(res.witness.letters(), &least[..]);
}

#[test]
fn budget_gives_lower_bound() {
    let cfg = SearchConfig {
        node_budget: Some(1000),
        ..config(2, 5)
    };
    let res = longest_avoiding(&cfg).unwrap();
    assert!(!res.complete);
    assert!(res.l > 0 && res.l <= 33);
    assert!(naive_congruential(&res.witness, 2, 5).is_none());
}

#[test]
fn invalid_configs() {
    for cfg in [
        config(1, 3),
        config(2, 1),
        config(2, 200),
        SearchConfig {
            threads: 0,
            ..config(2, 3)
        },
        SearchConfig {
            max_len: Some(0),
            ..config(2, 3)
        },
    ] {
        assert!(
            matches!(longest_avoiding(&cfg), Err(Error::Argument(_))),
            "{cfg:?}"
        );
    }
}

#[test]
fn custom_binary_squares() {
    let res = longest_avoiding_custom(&[0, 1], Pattern::Square, Limits::default()).unwrap();
    assert_eq!(
        (res.l, res.witness.to_string(), res.complete),
        (3, "010".to_string(), true)
    );
}

#[test]
fn custom_ternary_squares_hit_the_cap() {
    let limits = Limits {
        max_len: Some(50),
        node_budget: None,
    };
    let res = longest_avoiding_custom(&[0, 1, 2], Pattern::Square, limits).unwrap();
    assert_eq!((res.l, res.complete), (50, false));
    assert!(naive_square(&res.witness).is_none());
    assert!(res.witness.to_string().starts_with("0102012021"));
}

#[test]
fn custom_sum_squares_over_signed_letters() {
    // every abelian square is a sum-square, so three letters force one
    let limits = Limits {
        max_len: Some(30),
        node_budget: Some(1_000_000),
    };
    let res = longest_avoiding_custom(&[-1, 0, 1], Pattern::SumSquare, limits).unwrap();
    assert!(res.complete);
    assert_eq!(res.witness.letters(), &[-1, 0, -1, 1, -1, 0, -1]);
    assert!(naive_sum_square(&res.witness).is_none());
}

#[test]
fn custom_search_order_follows_alphabet() {
    let res = longest_avoiding_custom(&[1, 0], Pattern::Square, Limits::default()).unwrap();
    assert_eq!(res.witness.letters(), &[1, 0, 1]);
    let res =
        longest_avoiding_custom(&[0, 1, 2], Pattern::Abelian { r: 2 }, Limits::default()).unwrap();
    assert_eq!((res.l, res.complete), (7, true));
    assert!(naive_abelian(&res.witness, 2).is_none());
    let res = longest_avoiding_custom(
        &[0, 1],
        Pattern::Congruential { r: 2, k: 2 },
        Limits::default(),
    )
    .unwrap();
    assert_eq!(res.witness.to_string(), "010");
}

#[test]
fn custom_adjacent_sums() {
    let limits = Limits {
        max_len: Some(40),
        node_budget: None,
    };
    let res = longest_avoiding_custom(&[-1, 0, 1], Pattern::AdjacentEqualSum, limits).unwrap();
    assert!(naive_adjacent(&res.witness).is_none());
}

#[test]
fn custom_needs_caps_when_unbounded() {
    for (alphabet, pattern) in [
        (&[0, 1, 2][..], Pattern::Square),
        (&[-1, 0, 1][..], Pattern::AdjacentEqualSum),
        (&[0, 1, 2, 3][..], Pattern::Abelian { r: 2 }),
    ] {
        assert!(matches!(
            longest_avoiding_custom(alphabet, pattern, Limits::default()),
            Err(Error::Argument(_))
        ));
    }
    assert!(longest_avoiding_custom(&[0, 0], Pattern::Square, Limits::default()).is_err());
    assert!(longest_avoiding_custom(&[], Pattern::Square, Limits::default()).is_err());
}
