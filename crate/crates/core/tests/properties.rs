//! Metric-level laws checked exhaustively on small spaces and by
//! randomized sweeps on larger ones.

use fcc_bsymbol::metric::{
    b_distance, b_weight, hamming_distance, read_vector, Alphabet, Word,
};
use fcc_bsymbol::Limits;
use proptest::prelude::*;

fn space(q: u32, k: usize) -> Vec<Word> {
    let alphabet = Alphabet::new(q).unwrap();
    (0..(q as u64).pow(k as u32))
        .map(|i| Word::from_index(alphabet, k, i).unwrap())
        .collect()
}

#[test]
fn metric_axioms_exhaustive() {
    for q in [2u32, 3] {
        for k in 2..=5usize {
            let words = space(q, k);
            for b in 1..=4usize.min(k) {
                for x in &words {
                    for y in &words {
                        let d = b_distance(x, y, b).unwrap();
                        // identity of indiscernibles
                        assert_eq!(d == 0, x == y);
                        // symmetry
                        assert_eq!(d, b_distance(y, x, b).unwrap());
                        // triangle inequality via the read-vector view
                        for z in &words {
                            let dz = b_distance(x, z, b).unwrap();
                            let zy = b_distance(z, y, b).unwrap();
                            assert!(d <= dz + zy, "q={q} k={k} b={b} x={x} y={y} z={z}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn distance_range_by_hamming_regime() {
    for q in [2u32, 3] {
        for k in 4..=6usize {
            let words = space(q, k);
            for b in 2..=4usize.min(k) {
                for x in &words {
                    for y in &words {
                        let dh = hamming_distance(x, y).unwrap();
                        let d = b_distance(x, y, b).unwrap();
                        if dh == 0 {
                            assert_eq!(d, 0);
                        } else if dh <= k - (b - 1) {
                            assert!(dh + b - 1 <= d && d <= b * dh, "q={q} k={k} b={b} {x} {y}");
                        } else {
                            assert_eq!(d, k);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn widening_the_window_never_shrinks_distance() {
    for q in [2u32, 3] {
        for k in 3..=6usize {
            let words = space(q, k);
            for b in 1..k {
                for x in &words {
                    for y in &words {
                        assert!(
                            b_distance(x, y, b).unwrap() <= b_distance(x, y, b + 1).unwrap(),
                            "q={q} k={k} b={b} {x} {y}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn unit_window_reduces_to_hamming() {
    for q in [2u32, 3] {
        for k in 1..=6usize {
            for x in space(q, k) {
                for y in space(q, k) {
                    assert_eq!(
                        b_distance(&x, &y, 1).unwrap(),
                        hamming_distance(&x, &y).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn translation_invariance() {
    // over a prime alphabet, shifting both words by any constant vector
    // leaves the distance unchanged
    for q in [2u32, 3] {
        let k = 4usize;
        let alphabet = Alphabet::new(q).unwrap();
        let words = space(q, k);
        for b in 1..=3usize {
            for x in &words {
                for y in &words {
                    let d = b_distance(x, y, b).unwrap();
                    for shift in &words {
                        let add = |w: &Word| {
                            let symbols = w
                                .symbols()
                                .iter()
                                .zip(shift.symbols())
                                .map(|(&a, &s)| (a + s) % q)
                                .collect();
                            Word::new(alphabet, symbols).unwrap()
                        };
                        assert_eq!(d, b_distance(&add(x), &add(y), b).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn weight_is_distance_to_zero() {
    for q in [2u32, 3] {
        for k in 3..=6usize {
            let zero = Word::zero(Alphabet::new(q).unwrap(), k).unwrap();
            for b in 1..=k {
                for x in space(q, k) {
                    assert_eq!(
                        b_weight(&x, b).unwrap(),
                        b_distance(&x, &zero, b).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn weight_image_has_the_documented_gap() {
    // nonzero weights lie in {b, ..., k}; every such value is attained
    for q in [2u32, 3] {
        for k in 4..=6usize {
            for b in 2..k {
                let mut seen = std::collections::BTreeSet::new();
                for x in space(q, k) {
                    seen.insert(b_weight(&x, b).unwrap());
                }
                let expected: std::collections::BTreeSet<usize> =
                    std::iter::once(0).chain(b..=k).collect();
                assert_eq!(seen, expected, "q={q} k={k} b={b}");
            }
        }
    }
}

#[test]
fn ball_sizes_are_center_independent() {
    use fcc_bsymbol::spheres::{sphere_profile_around, sphere_profile_patterns};
    let limits = Limits::default();
    for q in [2u32, 3] {
        let k = 5usize;
        for b in 2..=3usize {
            let reference = sphere_profile_patterns(k, q, b, &limits).unwrap();
            for idx in [0u64, 1, 7, 19] {
                let center = Word::from_index(Alphabet::new(q).unwrap(), k, idx).unwrap();
                let profile = sphere_profile_around(&center, b, &limits).unwrap();
                assert_eq!(profile.sizes, reference.sizes);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_larger_words_respect_the_range_lemma(
        xs in prop::collection::vec(0u32..2, 12),
        ys in prop::collection::vec(0u32..2, 12),
        b in 2usize..6,
    ) {
        let alphabet = Alphabet::new(2).unwrap();
        let x = Word::new(alphabet, xs).unwrap();
        let y = Word::new(alphabet, ys).unwrap();
        let dh = hamming_distance(&x, &y).unwrap();
        let d = b_distance(&x, &y, b).unwrap();
        let k = 12usize;
        if dh == 0 {
            prop_assert_eq!(d, 0);
        } else if dh <= k - (b - 1) {
            prop_assert!(dh + b - 1 <= d && d <= b * dh);
        } else {
            prop_assert_eq!(d, k);
        }
    }

    #[test]
    fn random_read_vectors_round_trip_distance(
        xs in prop::collection::vec(0u32..3, 9),
        ys in prop::collection::vec(0u32..3, 9),
        b in 1usize..5,
    ) {
        let alphabet = Alphabet::new(3).unwrap();
        let x = Word::new(alphabet, xs).unwrap();
        let y = Word::new(alphabet, ys).unwrap();
        let direct = b_distance(&x, &y, b).unwrap();
        let via_rv = read_vector(&x, b).unwrap().hamming(&read_vector(&y, b).unwrap()).unwrap();
        prop_assert_eq!(direct, via_rv);
    }
}
